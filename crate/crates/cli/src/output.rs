//! Report emission: one record computed once, rendered as JSON or CSV with
//! identical numeric values (both go through the serde_json formatter).

use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;

pub struct Report {
    pub json: Value,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<Value>>,
}

pub struct OutputTarget {
    pub csv: bool,
    pub out: Option<PathBuf>,
}

pub fn emit(report: &Report, target: &OutputTarget) -> Result<(), String> {
    let text = if target.csv {
        render_csv(report)?
    } else {
        let mut s = serde_json::to_string_pretty(&report.json).map_err(|e| e.to_string())?;
        s.push('\n');
        s
    };
    match &target.out {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| e.to_string())?;
        }
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
        }
    }
    Ok(())
}

fn render_csv(report: &Report) -> Result<String, String> {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer
        .write_record(&report.csv_header)
        .map_err(|e| e.to_string())?;
    for row in &report.csv_rows {
        let cells: Vec<String> = row.iter().map(cell_text).collect();
        writer.write_record(&cells).map_err(|e| e.to_string())?;
    }
    let bytes = writer.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

/// Strings render bare; every other value uses its JSON serialization, so a
/// CSV cell and the matching JSON field always agree digit for digit.
fn cell_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
