//! Machine-readable output: deterministic complex-number formatting and
//! versioned JSON/CSV schemas for modular data, fusion tables, and
//! character tables.

use serde_json::{json, Value};

use crate::linalg::{C64, CMat};
use crate::mackey::Classification;
use crate::modular::{FusionTable, ModularData};

/// Schema version tag present in every JSON document.
pub const FORMAT_TAG: &str = "dgd-modular-v1";

/// Format a real number to 12 significant digits; values below 1e-12 in
/// magnitude print as "0".
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < 1e-12 {
        return "0".to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - mag);
    let rounded = (x * scale).round() / scale;
    // Shortest round-trip display of the rounded value.
    format!("{rounded}")
}

/// Format a complex number as "a+bi" with both parts at 12 significant
/// digits (e.g. "0.5-0.866025403784i", "1+0i").
pub fn format_complex(z: C64) -> String {
    let re = format_real(z.re);
    let im = format_real(z.im);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn matrix_value(m: &CMat) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| {
            let row: Vec<Value> =
                (0..m.ncols()).map(|j| Value::String(format_complex(m[(i, j)]))).collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

fn labels_value(data: &ModularData) -> Value {
    let rows: Vec<Value> = data
        .labels
        .iter()
        .zip(&data.dims)
        .map(|(l, d)| json!({"class": l.class_index, "irrep": l.irrep_index, "dim": d}))
        .collect();
    Value::Array(rows)
}

/// JSON document for the S, T, and Fourier matrices.
pub fn modular_json(group: &str, data: &ModularData) -> Value {
    json!({
        "format": FORMAT_TAG,
        "group": group,
        "labels": labels_value(data),
        "s": matrix_value(&data.s),
        "t": matrix_value(&data.t),
        "ft": matrix_value(&data.ft),
    })
}

/// JSON document for a fusion tensor. `source` names how it was computed
/// ("bruteforce" or "verlinde").
pub fn fusion_json(group: &str, data: &ModularData, table: &FusionTable, source: &str) -> Value {
    json!({
        "format": FORMAT_TAG,
        "group": group,
        "source": source,
        "labels": labels_value(data),
        "n": table.n,
        "residual": format_real(table.residual),
    })
}

/// Long-form CSV for the modular matrices: one entry per line.
pub fn modular_csv(data: &ModularData) -> String {
    let mut out = String::from("matrix,row,col,value\n");
    for (name, m) in [("s", &data.s), ("t", &data.t), ("ft", &data.ft)] {
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out.push_str(&format!("{name},{i},{j},{}\n", format_complex(m[(i, j)])));
            }
        }
    }
    out
}

/// Long-form CSV for a fusion tensor.
pub fn fusion_csv(table: &FusionTable) -> String {
    let mut out = String::from("i,j,k,n\n");
    let l = table.size();
    for i in 0..l {
        for j in 0..l {
            for k in 0..l {
                out.push_str(&format!("{i},{j},{k},{}\n", table.get(i, j, k)));
            }
        }
    }
    out
}

/// Character table CSV: one row per irreducible label, one column per
/// commuting-pair orbit representative.
pub fn characters_csv(cl: &Classification) -> String {
    let chars = cl.all_characters();
    let mut out = String::from("class,irrep,dim");
    for &(h, g) in &cl.orbits.reps {
        out.push_str(&format!(",({h};{g})"));
    }
    out.push('\n');
    for (label, chi) in cl.labels.iter().zip(&chars) {
        out.push_str(&format!(
            "{},{},{}",
            label.class_index,
            label.irrep_index,
            cl.module_dimension(*label)
        ));
        for v in &chi.values {
            out.push_str(&format!(",{}", format_complex(*v)));
        }
        out.push('\n');
    }
    out
}

/// Character table JSON.
pub fn characters_json(group: &str, cl: &Classification) -> Value {
    let chars = cl.all_characters();
    let labels: Vec<Value> = cl
        .labels
        .iter()
        .zip(&chars)
        .map(|(l, chi)| {
            let values: Vec<String> = chi.values.iter().map(|&v| format_complex(v)).collect();
            json!({
                "class": l.class_index,
                "irrep": l.irrep_index,
                "dim": cl.module_dimension(*l),
                "values": values,
            })
        })
        .collect();
    let reps: Vec<Value> = cl
        .orbits
        .reps
        .iter()
        .map(|&(h, g)| json!({"h": h, "g": g}))
        .collect();
    json!({
        "format": FORMAT_TAG,
        "group": group,
        "orbit_representatives": reps,
        "labels": labels,
    })
}

/// Render any JSON document deterministically (2-space indent, key order
/// as constructed).
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}
