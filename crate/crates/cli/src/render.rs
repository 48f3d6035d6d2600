//! Text, JSON, CSV and LaTeX output. Every JSON document carries
//! `"schema": "1"`.

use clap::ValueEnum;
use fgl_core::genera::KernelBasis;
use fgl_core::report::{Outcome, Report};
use fgl_core::series::Series1;
use fgl_core::table::GenusTable;
use fgl_core::twovalued::{CosetClass, CyclicProduct};
use serde::Serialize;
use serde_json::json;

use crate::{CliError, CliResult};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "latex",
        }
    }
}

fn unsupported(what: &str, f: Format) -> CliError {
    CliError::usage(format!("{what} cannot be rendered as {}", f.name()))
}

fn csv_doc<R: Serialize>(rows: &[R]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

fn latex_label(label: &str) -> String {
    if let Some(n) = label.strip_prefix("Theta_") {
        format!("$\\Theta_{{{n}}}$")
    } else if let Some(n) = label.strip_prefix("CP^") {
        format!("$\\mathbb{{CP}}^{{{n}}}$")
    } else {
        label.to_string()
    }
}

pub fn table(t: &GenusTable, f: Format) -> CliResult<String> {
    let rows = t.rows();
    Ok(match f {
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "genus": t.genus, "rows": rows });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            // weight serializes as an empty cell for inhomogeneous values
            csv_doc(&rows)?
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{ll}\n");
            out.push_str(&format!("$X$ & ${}(X)$ \\\\\n\\hline\n", t.genus));
            for (row, v) in rows.iter().zip(&t.values()[1..]) {
                out.push_str(&format!("{} & ${}$ \\\\\n", latex_label(&row.generator), v.to_latex()));
            }
            out.push_str("\\end{tabular}\n");
            out
        }
        Format::Text => rows
            .iter()
            .map(|r| format!("{}({}) = {}\n", t.genus, r.generator, r.value))
            .collect(),
    })
}

#[derive(Serialize)]
struct KernelRow {
    index: usize,
    element: String,
}

pub fn kernel(k: &KernelBasis, f: Format) -> CliResult<String> {
    let rows: Vec<KernelRow> = k
        .basis
        .iter()
        .enumerate()
        .map(|(i, b)| KernelRow {
            index: i + 1,
            element: b.to_string(),
        })
        .collect();
    Ok(match f {
        Format::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "degree": k.degree,
                "monomials": k.monomials.len(),
                "rank": k.rank,
                "dimension": k.dimension(),
                "rows": rows,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => csv_doc(&rows)?,
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{ll}\n$i$ & basis element \\\\\n\\hline\n");
            for (r, b) in rows.iter().zip(&k.basis) {
                out.push_str(&format!("{} & ${}$ \\\\\n", r.index, b.to_latex()));
            }
            out.push_str("\\end{tabular}\n");
            out
        }
        Format::Text => {
            let mut out = format!(
                "degree {}: {} monomials, rank {}, kernel dimension {}\n",
                k.degree,
                k.monomials.len(),
                k.rank,
                k.dimension()
            );
            for r in &rows {
                out.push_str(&format!("  {}\n", r.element));
            }
            out
        }
    })
}

pub fn series(name: &str, var: &str, s: &Series1, f: Format) -> CliResult<String> {
    Ok(match f {
        Format::Json => {
            let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_text()).collect();
            let doc = json!({
                "schema": SCHEMA,
                "series": name,
                "variable": var,
                "order": s.order(),
                "coefficients": coeffs,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                power: usize,
                coefficient: String,
            }
            let rows: Vec<Row> = s
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| Row {
                    power: k,
                    coefficient: c.to_text(),
                })
                .collect();
            csv_doc(&rows)?
        }
        Format::Latex => {
            let mut parts = Vec::new();
            for (k, c) in s.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{{{k}}}"),
                };
                parts.push(match (c.len(), mono.is_empty()) {
                    (_, true) => c.to_latex(),
                    (1, false) if c.to_text() == "1" => mono,
                    (1, false) if c.to_text() == "-1" => format!("-{mono}"),
                    _ => format!("\\left({}\\right){mono}", c.to_latex()),
                });
            }
            let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            format!("{} + O({var}^{{{}}})\n", body.replace("+ -", "- "), s.order() + 1)
        }
        Format::Text => format!("{name} = {}\n", s.to_text(var)),
    })
}

pub fn cayley(group: &CyclicProduct, rows: &[(CosetClass, CosetClass, [CosetClass; 2])], f: Format) -> CliResult<String> {
    #[derive(Serialize)]
    struct Row {
        left: String,
        right: String,
        first: String,
        second: String,
    }
    let rows: Vec<Row> = rows
        .iter()
        .map(|(a, b, [c, d])| Row {
            left: a.to_string(),
            right: b.to_string(),
            first: c.to_string(),
            second: d.to_string(),
        })
        .collect();
    Ok(match f {
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "group": group.to_string(), "rows": rows });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => csv_doc(&rows)?,
        Format::Text => {
            let mut out = format!("two-valued coset group of {group}\n");
            for r in &rows {
                out.push_str(&format!("{} * {} = {} + {}\n", r.left, r.right, r.first, r.second));
            }
            out
        }
        Format::Latex => return Err(unsupported("a Cayley table", f)),
    })
}

pub fn report(title: &str, r: &Report, f: Format) -> CliResult<String> {
    Ok(match f {
        Format::Json => {
            let doc = json!({ "schema": SCHEMA, "check": title, "holds": r.holds(), "results": r.checks });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for v in &r.checks {
                let tag = match v.outcome {
                    Outcome::Holds => "ok",
                    Outcome::Fails { .. } => "FAIL",
                    Outcome::Note { .. } => "note",
                };
                out.push_str(&format!("[{tag}] {v}\n"));
            }
            out
        }
        _ => return Err(unsupported("a verification report", f)),
    })
}
