//! Report rendering: human-readable text, JSON records with stable field
//! order, and RFC-4180 CSV.

use std::io::Write;
use std::path::Path;

use solitary_core::chains::{tables, Chain, ChainStatus, Coverage, EliminationReport, P6Range};
use solitary_core::conditions::{FilterReport, SearchSummary, Verdict};
use solitary_core::KitConfig;

use crate::Format;

pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, String> {
    match path {
        Some(p) => std::fs::File::create(p)
            .map(|f| Box::new(std::io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => Ok(Box::new(std::io::BufWriter::new(std::io::stdout()))),
    }
}

pub fn print_filter_report(report: &FilterReport) {
    let verdict = match report.verdict {
        Verdict::Pass => "PASS (no necessary condition excludes this candidate)",
        Verdict::Reject => "REJECT",
    };
    println!("candidate: {} = {}", report.candidate_expr, report.candidate_value);
    println!("verdict:   {verdict}");
    for (name, witness) in &report.rejections {
        println!("  reject {name}: {witness}");
    }
    for (name, reason) in &report.skipped {
        println!("  skip   {name}: {reason}");
    }
    let rejected: Vec<&str> = report.rejections.iter().map(|(n, _)| n.as_str()).collect();
    let skipped: Vec<&str> = report.skipped.iter().map(|(n, _)| n.as_str()).collect();
    let passed: Vec<&str> = report
        .checked
        .iter()
        .map(String::as_str)
        .filter(|n| !rejected.contains(n) && !skipped.contains(n))
        .collect();
    println!("  passed: {}", passed.join(", "));
}

pub fn one_line_report(report: &FilterReport) -> String {
    let verdict = match report.verdict {
        Verdict::Pass => "pass",
        Verdict::Reject => "reject",
    };
    let reasons: Vec<String> = report
        .rejections
        .iter()
        .map(|(n, w)| format!("{n}: {w}"))
        .collect();
    format!(
        "{} {} [{}]",
        report.candidate_value,
        verdict,
        reasons.join("; ")
    )
}

pub fn csv_record(report: &FilterReport) -> Vec<String> {
    let verdict = match report.verdict {
        Verdict::Pass => "pass",
        Verdict::Reject => "reject",
    };
    let rejections: Vec<String> = report
        .rejections
        .iter()
        .map(|(n, w)| format!("{n}: {w}"))
        .collect();
    let skipped: Vec<String> = report
        .skipped
        .iter()
        .map(|(n, r)| format!("{n}: {r}"))
        .collect();
    vec![
        report.candidate_value.clone(),
        report.candidate_expr.clone(),
        verdict.to_string(),
        rejections.join("; "),
        skipped.join("; "),
    ]
}

pub fn print_search_summary(summary: &SearchSummary) {
    println!(
        "searched N = 5^2a * m^2 up to {}: {} candidates examined",
        summary.max_n, summary.examined
    );
    if summary.friends.is_empty() {
        println!("0 friends found");
    } else {
        println!("FRIENDS FOUND: {:?}", summary.friends);
    }
    println!(
        "sampled {} candidates for the exact test; {} false rejections",
        summary.sample_checked, summary.false_rejections
    );
    println!("rejections by condition:");
    for (name, count) in &summary.rejections_by_condition {
        println!("  {name:>18}: {count}");
    }
}

fn range_text(range: &P6Range) -> String {
    match range {
        P6Range::Bounded { lo, hi } => format!("[{lo}, {hi}]"),
        P6Range::Unbounded { lo } => format!("[{lo}, inf)"),
    }
}

pub fn emit_chain_list(
    out: &mut dyn Write,
    format: Format,
    chains: &[Chain],
) -> Result<(), String> {
    match format {
        Format::Json => {
            for chain in chains {
                serde_json::to_writer(&mut *out, chain).map_err(|e| e.to_string())?;
                writeln!(out).map_err(|e| e.to_string())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "fixed_primes", "p6_lo", "p6_hi"])
                .map_err(|e| e.to_string())?;
            for chain in chains {
                let fixed = chain
                    .fixed
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let (lo, hi) = match chain.p6 {
                    P6Range::Bounded { lo, hi } => (lo.to_string(), hi.to_string()),
                    P6Range::Unbounded { lo } => (lo.to_string(), "inf".into()),
                };
                w.write_record([chain.id.to_string(), fixed, lo, hi])
                    .map_err(|e| e.to_string())?;
            }
            w.flush().map_err(|e| e.to_string())?;
        }
        Format::Text => {
            for chain in chains {
                let fixed = chain
                    .fixed
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                writeln!(
                    out,
                    "chain {:2}: {{{fixed}}}, p6 in {}",
                    chain.id,
                    range_text(&chain.p6)
                )
                .map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(())
}

pub fn emit_elimination(
    out: &mut dyn Write,
    format: Format,
    reports: &[EliminationReport],
) -> Result<(), String> {
    match format {
        Format::Json => {
            for report in reports {
                serde_json::to_writer(&mut *out, report).map_err(|e| e.to_string())?;
                writeln!(out).map_err(|e| e.to_string())?;
            }
        }
        _ => {
            for report in reports {
                let fixed = report
                    .chain
                    .fixed
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let status = match &report.status {
                    ChainStatus::Eliminated => "ELIMINATED".to_string(),
                    ChainStatus::Open { uncovered } => {
                        format!("OPEN (uncovered: {})", uncovered.join(", "))
                    }
                };
                writeln!(
                    out,
                    "chain {:2} {{{fixed}}} p6 in {}: {status}",
                    report.chain.id,
                    range_text(&report.chain.p6)
                )
                .map_err(|e| e.to_string())?;
                for step in &report.steps {
                    let coverage = match &step.coverage {
                        Coverage::WholeChain => "all p6".to_string(),
                        Coverage::AllButP6 { keep } => format!("all p6 except {keep}"),
                        Coverage::P6Set { values } if values.len() <= 8 => values
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(","),
                        Coverage::P6Set { values } => {
                            format!("{} values", values.len())
                        }
                    };
                    writeln!(out, "    [{}] ({coverage}) {}", step.tactic, step.description)
                        .map_err(|e| e.to_string())?;
                }
            }
        }
    }
    Ok(())
}

pub fn emit_tables(out: &mut dyn Write, format: Format, cfg: &KitConfig) -> Result<(), String> {
    let f_rows = tables::table4_default();
    let companions = tables::regenerate_companion_tables(cfg);
    match format {
        Format::Json => {
            for row in &f_rows {
                serde_json::to_writer(&mut *out, row).map_err(|e| e.to_string())?;
                writeln!(out).map_err(|e| e.to_string())?;
            }
            serde_json::to_writer(&mut *out, &companions).map_err(|e| e.to_string())?;
            writeln!(out).map_err(|e| e.to_string())?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["table", "p", "layer", "q", "f"])
                .map_err(|e| e.to_string())?;
            for row in &f_rows {
                w.write_record([
                    "f-values".to_string(),
                    row.p.to_string(),
                    row.layer.to_string(),
                    row.q.to_string(),
                    row.f.map(|f| f.to_string()).unwrap_or_else(|| "none".into()),
                ])
                .map_err(|e| e.to_string())?;
            }
            w.write_record(["table", "p6", "class", "q", "companion"])
                .map_err(|e| e.to_string())?;
            for row in &companions.rows {
                w.write_record([
                    "companions".to_string(),
                    row.p6.to_string(),
                    row.class_mod_390.to_string(),
                    row.q.to_string(),
                    row.companion.to_string(),
                ])
                .map_err(|e| e.to_string())?;
            }
            w.flush().map_err(|e| e.to_string())?;
        }
        Format::Text => {
            writeln!(out, "f values (subscript p^layer):").map_err(|e| e.to_string())?;
            for row in &f_rows {
                let sub = if row.layer == 1 {
                    row.p.to_string()
                } else {
                    format!("{}^{}", row.p, row.layer)
                };
                let f = row
                    .f
                    .map(|f| f.to_string())
                    .unwrap_or_else(|| "none".into());
                writeln!(out, "  f[{sub}]({}) = {f}", row.q).map_err(|e| e.to_string())?;
            }
            writeln!(
                out,
                "companion rows for the chain {{5,7,11,13,29}} (classes {:?} mod {}):",
                companions.classes, companions.modulus
            )
            .map_err(|e| e.to_string())?;
            for row in &companions.rows {
                writeln!(
                    out,
                    "  p6 = {:>5} (class {:>3}): {} | sigma(p6^2a) forces {}",
                    row.p6, row.class_mod_390, row.q, row.companion
                )
                .map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(())
}
