//! wasm-bindgen bindings for the browser page in `www/`.
//!
//! Every export returns a JSON string. Failures come back as `{"error": "..."}`
//! so the page never has to catch exceptions.

use serde_json::{json, Value};
use springer_core::partitions::{enumerate_XN, enumerate_tilde_XN};
use springer_core::restriction::restriction_table;
use springer_core::springer::enumerate_spin_series;
use springer_core::tables::{sl_series_table, spin_series_table, Y0Table};
use wasm_bindgen::prelude::*;

const MAX_N: u32 = 40;

fn finish(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn bounded(n: u32) -> Result<u32, String> {
    if n > MAX_N {
        Err(format!("N is capped at {MAX_N} in the browser"))
    } else {
        Ok(n)
    }
}

/// X_N (or all orthogonal Jordan types) plus the spin series of N.
#[wasm_bindgen]
pub fn spin_overview(n: u32, tilde: bool) -> String {
    finish(bounded(n).map(|n| {
        let list = if tilde { enumerate_tilde_XN(n) } else { enumerate_XN(n) };
        json!({
            "classes": list.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "series": enumerate_spin_series(n),
        })
    }))
}

/// Two-step branching rows for S_{n/d}.
#[wasm_bindgen]
pub fn restriction(n: u32, d: u32) -> String {
    finish((|| {
        bounded(n)?;
        if d == 0 {
            return Err("d must be positive".to_string());
        }
        let rows = restriction_table(n, d).map_err(|e| e.to_string())?;
        Ok(json!(rows
            .iter()
            .map(|r| json!({
                "lambda": r.lambda.to_string(),
                "lambda_p": r.lambda_p.to_string(),
                "mu": r.mu.to_string(),
                "mu_p": r.mu_p.to_string(),
                "multiplicity": r.multiplicity,
                "table_value": r.table_value,
            }))
            .collect::<Vec<_>>()))
    })())
}

fn table_value(t: &Y0Table) -> Value {
    json!({
        "q": t.q,
        "rows": t.rows.iter().map(|r| json!({
            "lambda": r.lambda.to_string(),
            "rho": r.rho,
            "dimension": r.dimension,
            "a0": r.exponents.a0,
            "r": r.exponents.r,
            "classes": r.classes.iter().map(|c| c.rep.clone()).collect::<Vec<_>>(),
            "values": r.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

/// Y0 table: `group` is "sl" (with `xi_order`) or "spin" (split Frobenius).
#[wasm_bindgen]
pub fn y0_table(group: &str, n: u32, xi_order: u32, q: u32) -> String {
    finish((|| {
        let n = bounded(n)?;
        let t = match group {
            "sl" => sl_series_table(n, xi_order, q),
            "spin" => spin_series_table(n, None, q, true),
            other => return Err(format!("unknown group {other:?}")),
        };
        t.map(|t| table_value(&t)).map_err(|e| e.to_string())
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overview_n5() {
        let v: Value = serde_json::from_str(&spin_overview(5, false)).unwrap();
        assert_eq!(v["classes"], json!(["(5)", "(1,2,2)"]));
    }

    #[test]
    fn errors_are_json() {
        let v: Value = serde_json::from_str(&y0_table("gl", 4, 2, 5)).unwrap();
        assert!(v["error"].is_string());
        let v: Value = serde_json::from_str(&restriction(4, 0)).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn sl_table_rows() {
        let v: Value = serde_json::from_str(&y0_table("sl", 4, 2, 5)).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    }
}
