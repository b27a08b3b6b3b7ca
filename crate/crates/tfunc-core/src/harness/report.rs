//! Report persistence: JSON with 17 significant digits on every float,
//! and the points.csv / ratefit.json companions.
//!
//! serde_json's default float printing is shortest-roundtrip; the report
//! contract pins 17 significant digits instead, so a small custom writer
//! walks the `Value` tree and formats floats as `{:.16e}` (which is valid
//! JSON and parses back bit-identically).

use std::fs;
use std::io::Write;
use std::path::Path;

use super::compare::ComparisonTable;
use super::estimate::EstimateReport;
use super::fit::RateFit;
use super::HarnessError;

/// Format one float with 17 significant digits.
pub fn float17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no non-finite literals.
        "null".into()
    }
}

/// Serialize a JSON value with every float at 17 significant digits.
pub fn to_json_17(value: &serde_json::Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(value: &serde_json::Value, indent: usize, out: &mut String) {
    match value {
        serde_json::Value::Null => out.push_str("null"),
        serde_json::Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        serde_json::Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = num.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&float17(num.as_f64().unwrap_or(f64::NAN)));
            }
        }
        serde_json::Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("string serializes"));
        }
        serde_json::Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(indent + 1, out);
                write_value(item, indent + 1, out);
            }
            newline(indent, out);
            out.push(']');
        }
        serde_json::Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(indent + 1, out);
                out.push_str(&serde_json::to_string(key).expect("key serializes"));
                out.push_str(": ");
                write_value(item, indent + 1, out);
            }
            newline(indent, out);
            out.push('}');
        }
    }
}

fn newline(indent: usize, out: &mut String) {
    out.push('\n');
    for _ in 0..indent {
        out.push_str("  ");
    }
}

/// points.csv: one row per N with the empirical estimate and, when a
/// comparison table is supplied, the predictions and z-score.
pub fn points_csv(report: &EstimateReport, comparison: Option<&ComparisonTable>) -> String {
    let mut out = String::from("N,mean,se,prediction1,prediction2,z\n");
    for (i, row) in report.per_n.iter().enumerate() {
        let (p1, p2, z) = match comparison.and_then(|c| c.rows.get(i)) {
            Some(c) => (float17(c.one_term), float17(c.two_term), float17(c.z_score)),
            None => (String::new(), String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{p1},{p2},{z}\n",
            row.n_points,
            float17(row.mean),
            float17(row.std_error),
        ));
    }
    out
}

/// Write report.json, points.csv and (when present) ratefit.json.
pub fn write_report_files(
    report: &EstimateReport,
    fit: Option<&RateFit>,
    comparison: Option<&ComparisonTable>,
    out_dir: &Path,
) -> Result<(), HarnessError> {
    fs::create_dir_all(out_dir)?;
    let mut report_value = serde_json::to_value(report)?;
    if let Some(c) = comparison {
        report_value["comparison"] = serde_json::to_value(c)?;
    }
    let mut f = fs::File::create(out_dir.join("report.json"))?;
    f.write_all(to_json_17(&report_value).as_bytes())?;

    let mut csv = fs::File::create(out_dir.join("points.csv"))?;
    csv.write_all(points_csv(report, comparison).as_bytes())?;

    if let Some(fit) = fit {
        let mut rf = fs::File::create(out_dir.join("ratefit.json"))?;
        rf.write_all(to_json_17(&serde_json::to_value(fit)?).as_bytes())?;
    }
    Ok(())
}
