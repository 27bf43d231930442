use std::io::Write;

use gapn_core::diff::spectrum;
use gapn_core::dual_arc::{build_arc, greedy_cap_set, verify_dual_arc, MuNuConfig};
use gapn_core::function::algebraic_degree;
use gapn_core::report::{arc_json, cyclotomic_json, fourier_sum_json, FunctionRepr};
use gapn_core::search::monomial_sweep;
use gapn_core::walsh::{gapn_fourier_sum, walsh_summary};
use gapn_core::{Error, Result};
use serde_json::{json, Value};

use crate::config::{MuNu, RunConfig};

pub fn check(config: &RunConfig) -> Result<Value> {
    let function = config.function()?;
    let table = function.table();
    let spec = spectrum(&table);
    let walsh = walsh_summary(&table);
    let fourier = gapn_fourier_sum(&table)?;
    let degree = match algebraic_degree(&function.polynomial()?) {
        Ok(d) => Some(d),
        Err(Error::ZeroFunction) => None,
        Err(e) => return Err(e),
    };
    let multiset: serde_json::Map<String, Value> =
        spec.multiset.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let values: Vec<Value> = walsh.value_set.iter().map(cyclotomic_json).collect();
    Ok(json!({
        "field": config.field.to_string(),
        "function": function.to_json(),
        "is_gapn": spec.is_gapn,
        "is_gab": walsh.is_gab,
        "degree": degree,
        "max_count": spec.max_count,
        "multiset": multiset,
        "value_set": values,
        "fourier_sum": fourier_sum_json(&fourier),
    }))
}

/// Streams one JSON line per coset to `out`.
pub fn search(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    monomial_sweep(&config.field, |record| {
        let line = serde_json::to_string(&record).expect("records serialize");
        writeln!(out, "{line}").map_err(|e| Error::VerificationFailed(format!("writing output: {e}")))
    })
}

fn munu_config(munu: MuNu, function: &FunctionRepr) -> Result<MuNuConfig> {
    match munu {
        MuNu::GoldIdentity => Ok(MuNuConfig::GoldIdentity),
        MuNu::MonomialInverse => {
            let poly = function.polynomial()?;
            let terms = poly.coeffs();
            match terms.iter().next() {
                Some((&d, c)) if terms.len() == 1 && c.0 == 1 => Ok(MuNuConfig::MonomialInverse { d: d as u64 }),
                _ => Err(Error::HypothesisFailed("monomial-inverse needs a monomial x^d".into())),
            }
        }
    }
}

/// Builds and verifies the arc. The report is returned alongside the
/// verification outcome so it can be emitted either way.
pub fn dualarc(config: &RunConfig, munu: MuNu) -> Result<(Value, Result<()>)> {
    let function = config.function()?;
    let cfg = munu_config(munu, &function)?;
    let m = match &config.m_set {
        Some(m) => m.clone(),
        None => greedy_cap_set(&config.field, config.seed),
    };
    let arc = build_arc(&function.table(), cfg, &m)?;
    let verification = verify_dual_arc(&arc);
    let report = arc_json(&arc, &verification, &function);
    Ok((report, verification.into_result().map(|_| ())))
}
