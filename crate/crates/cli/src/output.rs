//! Report emission: JSON envelope, flat CSV and a text table.

use std::io::Write;

use burgess_core::report::{Param, Status};
use burgess_core::VerificationReport;
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::CliError;

pub struct Row {
    pub report: VerificationReport,
    pub runtime_ms: Option<u64>,
}

/// Rounds to 12 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

fn text_num(x: f64) -> String {
    match num(x) {
        Value::Number(n) => n.to_string(),
        _ => format!("{x}"),
    }
}

fn param_json(p: &Param) -> Value {
    match p {
        Param::Int(v) => json!(v),
        Param::Float(v) => num(*v),
        Param::Text(v) => json!(v),
        Param::Bool(v) => json!(v),
        Param::List(v) => json!(v),
    }
}

fn param_text(p: &Param) -> String {
    match p {
        Param::Float(v) => text_num(*v),
        other => other.to_string(),
    }
}

fn row_json(row: &Row, seed: u64) -> Value {
    let r = &row.report;
    let params: Map<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), param_json(v))).collect();
    json!({
        "claim_id": r.claim_id,
        "module": r.module,
        "params": params,
        "status": r.status.as_str(),
        "margin_lo": num(r.margin_lo),
        "margin_hi": num(r.margin_hi),
        "mode": r.mode,
        "runtime_ms": row.runtime_ms,
        "seed": seed,
        "method": r.method,
        "notes": r.notes,
    })
}

#[derive(Default, Clone, Copy)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

pub fn summarize(rows: &[Row]) -> Summary {
    let mut s = Summary::default();
    for r in rows {
        match r.report.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Inconclusive => s.inconclusive += 1,
        }
    }
    s
}

pub fn render(format: Format, rows: &[Row], seed: u64, subcommand: &str, config: &Value) -> Result<Vec<u8>, CliError> {
    let s = summarize(rows);
    match format {
        Format::Json => {
            let doc = json!({
                "tool": "burgess",
                "version": env!("CARGO_PKG_VERSION"),
                "subcommand": subcommand,
                "seed": seed,
                "config": config,
                "summary": {"total": rows.len(), "pass": s.pass, "fail": s.fail, "inconclusive": s.inconclusive},
                "reports": rows.iter().map(|r| row_json(r, seed)).collect::<Vec<_>>(),
            });
            let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => render_csv(rows, seed),
        Format::Text => Ok(render_text(rows, seed, subcommand, s).into_bytes()),
    }
}

fn render_csv(rows: &[Row], seed: u64) -> Result<Vec<u8>, CliError> {
    // union of parameter keys, in order of first appearance
    let mut keys: Vec<&str> = Vec::new();
    for r in rows {
        for (k, _) in &r.report.params {
            if !keys.contains(&k.as_str()) {
                keys.push(k);
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> =
        ["claim_id", "module", "status", "margin_lo", "margin_hi", "mode", "runtime_ms", "seed", "method"].map(String::from).to_vec();
    header.extend(keys.iter().map(|k| format!("param.{k}")));
    header.push("notes".into());
    w.write_record(&header).map_err(|e| CliError::Io(e.to_string()))?;
    for row in rows {
        let r = &row.report;
        let mut rec = vec![
            r.claim_id.clone(),
            r.module.to_string(),
            r.status.as_str().to_string(),
            csv_num(r.margin_lo),
            csv_num(r.margin_hi),
            r.mode.clone(),
            row.runtime_ms.map(|v| v.to_string()).unwrap_or_default(),
            seed.to_string(),
            r.method.clone(),
        ];
        for k in &keys {
            rec.push(r.get_param(k).map(param_text).unwrap_or_default());
        }
        rec.push(r.notes.join("; "));
        w.write_record(&rec).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn csv_num(x: f64) -> String {
    if x.is_finite() {
        text_num(x)
    } else {
        String::new()
    }
}

fn render_text(rows: &[Row], seed: u64, subcommand: &str, s: Summary) -> String {
    let mut out = format!("burgess {subcommand} (seed {seed})\n");
    let id_w = rows.iter().map(|r| r.report.claim_id.len()).max().unwrap_or(8).max(8);
    out += &format!("{:<12} {:<id_w$} {:>20} {:>20}  params\n", "status", "claim", "margin_lo", "margin_hi");
    for row in rows {
        let r = &row.report;
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", param_text(v))).collect();
        out += &format!(
            "{:<12} {:<id_w$} {:>20} {:>20}  {}\n",
            r.status.as_str(),
            r.claim_id,
            csv_num(r.margin_lo),
            csv_num(r.margin_hi),
            params.join(" ")
        );
        for n in &r.notes {
            out += &format!("{:<12} {:<id_w$}   note: {n}\n", "", "");
        }
    }
    out += &format!("total {}: {} pass, {} fail, {} inconclusive\n", rows.len(), s.pass, s.fail, s.inconclusive);
    out
}

pub fn write(bytes: &[u8], path: Option<&std::path::Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::Io(e.to_string())),
    }
}
