use std::io::Write;

use clap::ValueEnum;
use projcert::{Error, Result};
use serde_json::{json, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Result of one subcommand in every output format.
pub struct Outcome {
    pub exit: u8,
    pub json: Value,
    pub text: String,
    pub table: Option<Table>,
}

pub fn emit(o: &Outcome, format: Format) -> Result<()> {
    let mut out = std::io::stdout().lock();
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write output: {e}"));
    match format {
        Format::Json => {
            let s = serde_json::to_string_pretty(&o.json).expect("reports serialize");
            writeln!(out, "{s}").map_err(io)
        }
        Format::Text => write!(out, "{}", o.text).map_err(io),
        Format::Csv => {
            let table = o.table.as_ref().ok_or_else(|| {
                Error::InvalidArgument(
                    "csv output is available for epsilon sweeps and `bound --examples`; use json or text".into(),
                )
            })?;
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| Error::InvalidArgument(format!("cannot write csv: {e}"));
            w.write_record(&table.headers).map_err(csv_err)?;
            for row in &table.rows {
                w.write_record(row).map_err(csv_err)?;
            }
            w.flush().map_err(io)
        }
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut body = json!({ "kind": e.kind(), "message": e.to_string() });
    if let Error::Parse { location, .. } = e {
        body["location"] = serde_json::to_value(location).expect("location serializes");
    }
    json!({ "error": body })
}

pub fn report_error(e: &Error, format: Format) {
    let mut err = std::io::stderr().lock();
    let _ = match format {
        Format::Text => writeln!(err, "error: {e}"),
        _ => writeln!(err, "{}", serde_json::to_string_pretty(&error_json(e)).expect("serializes")),
    };
}

pub fn report_usage_error(message: &str) {
    let body = json!({ "error": { "kind": "usage", "message": message.trim_end() } });
    let _ = writeln!(std::io::stderr().lock(), "{}", serde_json::to_string_pretty(&body).expect("serializes"));
}
