//! Report rendering (plain key/value and JSON) and matrix parsing.
//!
//! Numbers are printed with Rust's shortest round-trip formatting, so a
//! matrix written by `construct` and re-read by `verify` is reproduced
//! bit-for-bit. Plain `construct` output keeps the matrix rows bare and
//! prefixes metadata with `#`, which the matrix parser skips.

use bniep5::{ConstructionResult, FeasibilityReport, Mat5, Spectrum};
use serde_json::{json, Value};

pub fn join_floats(xs: &[f64]) -> String {
    xs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn matrix_rows(m: &Mat5) -> Vec<String> {
    m.rows().iter().map(|row| join_floats(row)).collect()
}

fn matrix_json(m: &Mat5) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|v| json!(v)).collect()))
            .collect(),
    )
}

pub fn check_plain(s: &Spectrum, r: &FeasibilityReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("spectrum: {}\n", join_floats(&s.values())));
    out.push_str(&format!("trace: {}\n", s.trace()));
    out.push_str(&format!("verdict: {}\n", r.verdict));
    out.push_str(&format!("case: {}\n", r.case));
    out.push_str(&format!("perron_ok: {}\n", r.perron_ok));
    out.push_str(&format!("trace_ok: {}\n", r.trace_ok));
    out.push_str(&format!("loewy_mcdonald_ok: {}\n", r.loewy_mcdonald_ok));
    out.push_str(&format!("cube_sum: {}\n", r.cube_sum));
    out.push_str(&format!("cube_sum_ok: {}\n", r.cube_sum_ok));
    if let Some(v) = r.violated {
        out.push_str(&format!("violated: {v}\n"));
    }
    out
}

pub fn check_json(s: &Spectrum, r: &FeasibilityReport) -> Value {
    json!({
        "spectrum": s.values().to_vec(),
        "trace": s.trace(),
        "verdict": r.verdict.to_string(),
        "case": r.case.to_string(),
        "conditions": {
            "perron_ok": r.perron_ok,
            "trace_ok": r.trace_ok,
            "loewy_mcdonald_ok": r.loewy_mcdonald_ok,
            "cube_sum_ok": r.cube_sum_ok,
        },
        "cube_sum": r.cube_sum,
        "violated": r.violated.map(|v| v.to_string()),
    })
}

pub fn construction_plain(s: &Spectrum, built: &ConstructionResult) -> String {
    let mut out = String::new();
    out.push_str("# verdict: feasible\n");
    out.push_str(&format!("# case: {}\n", built.case));
    out.push_str(&format!("# target: {}\n", join_floats(&s.values())));
    out.push_str(&format!(
        "# achieved: {}\n",
        join_floats(&built.achieved_spectrum)
    ));
    out.push_str(&format!("# max_eig_error: {}\n", built.max_eig_error));
    out.push_str(&format!("# min_entry: {}\n", built.min_entry));
    for row in matrix_rows(&built.matrix) {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn construction_json(s: &Spectrum, r: &FeasibilityReport, built: &ConstructionResult) -> Value {
    let mut value = check_json(s, r);
    let obj = value.as_object_mut().expect("check_json yields an object");
    obj.insert("matrix".into(), matrix_json(&built.matrix));
    obj.insert("spectrum_target".into(), json!(s.values().to_vec()));
    obj.insert(
        "spectrum_achieved".into(),
        json!(built.achieved_spectrum.to_vec()),
    );
    obj.insert(
        "residuals".into(),
        json!({
            "max_eig_error": built.max_eig_error,
            "min_entry": built.min_entry,
        }),
    );
    value
}

/// Parses a 5×5 matrix from text: five data rows of five whitespace-separated
/// decimals, with blank lines and `#` comment lines skipped.
pub fn parse_matrix(text: &str) -> Result<Mat5, String> {
    let mut rows = [[0.0f64; 5]; 5];
    let mut count = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if count == 5 {
            return Err(format!("unexpected extra data row on line {}", lineno + 1));
        }
        let entries: Vec<f64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|e| format!("line {}: bad number {tok:?}: {e}", lineno + 1))
                    .and_then(|v| {
                        if v.is_finite() {
                            Ok(v)
                        } else {
                            Err(format!("line {}: non-finite entry {tok}", lineno + 1))
                        }
                    })
            })
            .collect::<Result<_, _>>()?;
        if entries.len() != 5 {
            return Err(format!(
                "line {}: expected 5 entries, got {}",
                lineno + 1,
                entries.len()
            ));
        }
        rows[count].copy_from_slice(&entries);
        count += 1;
    }
    if count != 5 {
        return Err(format!("expected 5 matrix rows, got {count}"));
    }
    Ok(Mat5::from_rows(rows))
}
