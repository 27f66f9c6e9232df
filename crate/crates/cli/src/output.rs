//! Output assembly for the CLI: exact values as `p/q` strings in text, JSON
//! (one record per line) and CSV. Floats appear only behind `--decimal`,
//! and only as an extra display field; nothing exact ever round-trips
//! through them.

use num::{BigRational, ToPrimitive};
use serde_json::{json, Value};

use halfhex_core::{Configuration, EnsembleSpec, ExactMatrix};

pub fn spec_json(spec: &EnsembleSpec) -> Value {
    json!({
        "walkers": spec.walkers(),
        "steps": spec.steps(),
        "ends": spec.ends(),
    })
}

pub fn rational_str(value: &BigRational) -> String {
    value.to_string()
}

pub fn decimal_of(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn ends_field(spec: &EnsembleSpec) -> String {
    spec.ends()
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn matrix_strings(matrix: &ExactMatrix) -> Vec<Vec<String>> {
    (1..=matrix.rows())
        .map(|i| {
            (1..=matrix.cols())
                .map(|j| matrix.entry(i, j).to_string())
                .collect()
        })
        .collect()
}

pub fn positions_json(config: &Configuration) -> Value {
    let rows: Vec<Vec<i64>> = (0..=config.steps())
        .map(|t| config.slice(t).to_vec())
        .collect();
    json!(rows)
}

/// CSV rows for one configuration: `label,t,positions` with positions
/// space-separated (fields hold no commas, so no quoting is needed).
pub fn config_csv_rows(label: &str, config: &Configuration, out: &mut String) {
    for t in 0..=config.steps() {
        let row: Vec<String> = config.slice(t).iter().map(i64::to_string).collect();
        out.push_str(&format!("{label},{t},{}\n", row.join(" ")));
    }
}
