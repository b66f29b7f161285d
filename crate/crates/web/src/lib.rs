//! Browser bindings for three small computations: plethystic exponentials,
//! MacMahon counts via the vertex-operator transfer matrix, and the `T*P^1`
//! R-matrix checks.
//!
//! Each binding returns a JSON string. The plain functions are callable
//! from native code and tests.

use kenum::fock::{or_formula_lhs, univariate_coefficients, DiagonalSpec};
use kenum::harness::pleth_command;
use kenum::lattice::text::{format_factored, format_polynomial};
use kenum::lattice::{VariableSet, ZeroTestConfig};
use kenum::partition::enumerate_plane_partitions;
use kenum::stable::{r_matrix, r_matrix_entries_check, unitarity_check, yang_baxter_check, MATRIX_VARS};
use serde_json::json;
use wasm_bindgen::prelude::*;

pub const MAX_ORDER: usize = 8;
pub const MAX_CUTOFF: usize = 10;

/// `S•` (or `log` for its inverse) of a polynomial in `z` and other variables.
pub fn pleth_json(expr: &str, order: usize, log: bool) -> Result<String, String> {
    if order > MAX_ORDER {
        return Err(format!("order {order} exceeds {MAX_ORDER}"));
    }
    let (vars, coeffs) = pleth_command(expr, order, log).map_err(|e| e.to_string())?;
    let lines: Vec<String> = coeffs.iter().map(|c| format_polynomial(&vars, c)).collect();
    Ok(json!({ "vars": vars.names(), "coefficients": lines }).to_string())
}

/// Plane-partition counts through `q^cutoff`, from the transfer matrix and
/// from direct enumeration.
pub fn macmahon_json(cutoff: usize) -> Result<String, String> {
    if cutoff == 0 || cutoff > MAX_CUTOFF {
        return Err(format!("cutoff must be between 1 and {MAX_CUTOFF}"));
    }
    let series = or_formula_lhs(&DiagonalSpec::macmahon(cutoff - 1), cutoff).map_err(|e| e.to_string())?;
    let transfer: Vec<String> = univariate_coefficients(&series, cutoff)
        .iter()
        .map(|c| c.to_string())
        .collect();
    let mut enumerated = Vec::with_capacity(cutoff + 1);
    for n in 0..=cutoff {
        let count = enumerate_plane_partitions(n).map_err(|e| e.to_string())?.len();
        enumerated.push(count.to_string());
    }
    let agree = transfer == enumerated;
    Ok(json!({ "transfer": transfer, "enumerated": enumerated, "agree": agree }).to_string())
}

/// Entries of `R(u) = Stab_-^{-1} Stab_+` and the exact identity checks.
pub fn r_matrix_json() -> Result<String, String> {
    let cfg = ZeroTestConfig::default();
    let vars = VariableSet::new(&MATRIX_VARS);
    let r = r_matrix().map_err(|e| e.to_string())?;
    let entries: Vec<String> = r
        .entries_factored()
        .iter()
        .map(|f| format_factored(&vars, f))
        .collect();
    let closed_form = r_matrix_entries_check(&cfg).map_err(|e| e.to_string())?;
    let unitarity = unitarity_check(&cfg).map_err(|e| e.to_string())?;
    let yang_baxter = yang_baxter_check(&cfg).is_ok();
    Ok(json!({
        "entries": entries,
        "closed_form": closed_form,
        "unitarity": unitarity,
        "yang_baxter": yang_baxter,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn pleth(expr: &str, order: usize, log: bool) -> Result<String, JsError> {
    pleth_json(expr, order, log).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn macmahon(cutoff: usize) -> Result<String, JsError> {
    macmahon_json(cutoff).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn rmatrix() -> Result<String, JsError> {
    r_matrix_json().map_err(|e| JsError::new(&e))
}
