//! Browser bindings for three interactive operations: the signature census
//! next to its closed form, Tutte evaluations by formula and by enumeration,
//! and point counts with the fitted quasi-polynomial.
//!
//! Each operation returns a JSON string. The plain functions are usable
//! from Rust; the `wasm_bindgen` wrappers turn errors into JS exceptions.

use num_bigint::BigInt;
use rootsig::json::big_to_json;
use rootsig::quasi::{complement_count, fit_counts, format_poly, lcm_period_exact, period_as_u64};
use rootsig::{
    census_bruteforce, tutte11_bruteforce, tutte11_formula, CensusOptions, DeformationSpec, Family,
    Method, Mode, SignatureTable,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest rank offered for the census in the page.
pub const MAX_CENSUS_N: usize = 6;
/// Largest modulus offered for point counting in the page.
pub const MAX_QMAX: u64 = 60;

fn spec(n: usize, family: &str, l: i64, m: i64) -> Result<DeformationSpec, String> {
    let family: Family = family.parse().map_err(|e: rootsig::Error| e.to_string())?;
    Ok(DeformationSpec::from_family(family, n, l, m))
}

/// Census and closed form side by side, with a per-entry match flag.
pub fn census_report(n: usize, method: &str) -> Result<String, String> {
    if n > MAX_CENSUS_N {
        return Err(format!(
            "n = {n} is too large for the page; the limit is {MAX_CENSUS_N}"
        ));
    }
    let method: Method = method.parse().map_err(|e: rootsig::Error| e.to_string())?;
    let opts = CensusOptions {
        method,
        workers: 1,
        ..Default::default()
    };
    let census = census_bruteforce(n, &opts).map_err(|e| e.to_string())?;
    let table = census.table();
    let formula = SignatureTable::from_formula(n);
    let rows: Vec<Value> = formula
        .entries
        .iter()
        .map(|(s, f)| {
            let c = table.get(s.a(), s.b());
            json!({"a": s.a(), "b": s.b(), "census": big_to_json(&c), "formula": big_to_json(f), "match": &c == f})
        })
        .collect();
    let out = json!({
        "n": n,
        "subsets": census.total(),
        "degenerate": census.degenerate,
        "rows": rows,
        "triangle": table.to_text(),
    });
    Ok(out.to_string())
}

/// Formula (in the given mode) and enumeration for the `[l, m]` cone.
pub fn tutte_report(n: usize, l: i64, m: i64, mode: &str) -> Result<String, String> {
    if n > 3 {
        return Err("enumeration in the page is limited to n <= 3".into());
    }
    let mode: Mode = mode.parse().map_err(|e: rootsig::Error| e.to_string())?;
    let formula = tutte11_formula(n, l, m, mode).map_err(|e| e.to_string())?;
    let dm = rootsig::build_uniform(n, l, m).map_err(|e| e.to_string())?;
    let brute = tutte11_bruteforce(&dm, 1).map_err(|e| e.to_string())?;
    let out = json!({
        "formula": formula.to_json(),
        "bruteforce": brute.to_json(),
        "match": formula.same_values(&brute),
    });
    Ok(out.to_string())
}

/// Point counts for `q = 1..=qmax` and the quasi-polynomial fitted with the
/// exact lcm period.
pub fn quasi_report(n: usize, family: &str, l: i64, m: i64, qmax: u64) -> Result<String, String> {
    if n > 2 {
        return Err("point counting in the page is limited to n <= 2".into());
    }
    if qmax > MAX_QMAX {
        return Err(format!("qmax is limited to {MAX_QMAX}"));
    }
    let dm = spec(n, family, l, m)?.build().map_err(|e| e.to_string())?;
    let rho = lcm_period_exact(dm.matrix(), 22, 1).map_err(|e| e.to_string())?;
    let rho = period_as_u64(&rho).map_err(|e| e.to_string())?;
    let counts: Vec<BigInt> = (1..=qmax)
        .map(|q| BigInt::from(complement_count(dm.matrix(), q, 1)))
        .collect();
    let fit = fit_counts(&counts, dm.n() + 1, rho);
    let (fit_json, labels) = match &fit {
        Ok(qp) => (
            qp.to_json(),
            qp.constituents
                .iter()
                .map(|c| Value::String(format_poly(c, "q")))
                .collect(),
        ),
        Err(e) => (Value::String(e.to_string()), Vec::new()),
    };
    let out = json!({
        "period": rho,
        "counts": counts.iter().map(big_to_json).collect::<Vec<_>>(),
        "fit": fit_json,
        "fit_ok": fit.is_ok(),
        "constituents_text": labels,
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn census(n: u32, method: &str) -> Result<String, JsValue> {
    census_report(n as usize, method).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn tutte(n: u32, l: i32, m: i32, mode: &str) -> Result<String, JsValue> {
    tutte_report(n as usize, l.into(), m.into(), mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn quasi(n: u32, family: &str, l: i32, m: i32, qmax: u32) -> Result<String, JsValue> {
    quasi_report(n as usize, family, l.into(), m.into(), qmax.into())
        .map_err(|e| JsValue::from_str(&e))
}
