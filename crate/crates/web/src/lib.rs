//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every export returns a JSON string; exact numbers are decimal strings.

use braidkl::eqkl::{specht_table as table, EQ_MAX_N};
use braidkl::klcore::kl_braid;
use braidkl::specseq::ratio_diagnostic;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `n` the page offers for the KL table.
pub const KL_MAX_N: usize = 40;
/// Largest `n` for the ratio curve.
pub const RATIO_MAX_N: usize = 60;

fn coeff_strings(r: &braidkl::polyseries::Poly) -> Vec<String> {
    r.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn kl_polynomial_json(n: usize) -> Result<String, String> {
    if n > KL_MAX_N {
        return Err(format!("n is capped at {KL_MAX_N} in the browser"));
    }
    let p = kl_braid(n).map_err(|e| e.to_string())?;
    Ok(json!({"n": n, "coefficients": coeff_strings(&p), "display": p.fmt_var("t")}).to_string())
}

pub fn ratio_curve_json(i: usize, max_n: usize) -> Result<String, String> {
    if i == 0 || i > 4 {
        return Err("i must be between 1 and 4".into());
    }
    if max_n > RATIO_MAX_N {
        return Err(format!("max n is capped at {RATIO_MAX_N} in the browser"));
    }
    let rows: Vec<Value> = ratio_diagnostic(i, 1..=max_n)
        .into_iter()
        .map(|r| {
            json!({
                "n": r.n,
                "d_ratio": r.d_ratio.to_string(),
                "b_ratio": r.b_ratio.to_string(),
                // for plotting only
                "d_approx": approx(&r.d_ratio),
                "b_approx": approx(&r.b_ratio),
            })
        })
        .collect();
    Ok(json!({"i": i, "rows": rows}).to_string())
}

fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn specht_table_json(n: usize) -> Result<String, String> {
    if n == 0 || n > EQ_MAX_N {
        return Err(format!("n must be between 1 and {EQ_MAX_N}"));
    }
    let degrees: Vec<Value> = table(n)
        .map_err(|e| e.to_string())?
        .iter()
        .enumerate()
        .map(|(i, dec)| {
            let terms: Vec<Value> =
                dec.iter().map(|(l, m)| json!({"partition": l.to_string(), "multiplicity": m.to_string()})).collect();
            json!({"i": i, "specht": terms})
        })
        .collect();
    Ok(json!({"n": n, "degrees": degrees}).to_string())
}

#[wasm_bindgen]
pub fn kl_polynomial(n: usize) -> Result<String, JsError> {
    kl_polynomial_json(n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ratio_curve(i: usize, max_n: usize) -> Result<String, JsError> {
    ratio_curve_json(i, max_n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn specht_table(n: usize) -> Result<String, JsError> {
    specht_table_json(n).map_err(|e| JsError::new(&e))
}
