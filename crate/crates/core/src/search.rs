//! Monomial sweeps over exponents `d ∈ [2, q - 1)`, one record per
//! p-cyclotomic coset `{d p^k mod (q - 1)}`.

use serde::Serialize;

use crate::diff::is_gapn_monomial;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::function::p_weight;
use crate::par;
use crate::walsh::walsh_summary_monomial;

/// Largest field size for a full sweep (`3^7`).
pub const SEARCH_FIELD_LIMIT: usize = 2187;

/// Exponents processed per parallel batch before records are emitted.
const BATCH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialRecord {
    /// Smallest exponent of the coset in `[2, q - 1)`.
    pub d: u64,
    /// The whole coset, ascending.
    pub coset: Vec<u64>,
    pub is_gapn: bool,
    pub is_gab: bool,
    pub degree: usize,
}

/// The cosets `{d p^k mod (q - 1)}` meeting `[2, q - 1)`, each ascending and
/// ordered by their least member in that range. The coset of 1 (the
/// Frobenius powers) is included.
pub fn cyclotomic_cosets(field: &Field) -> Vec<Vec<u64>> {
    let order = field.size() as u64 - 1;
    let p = field.p() as u64;
    if order <= 2 {
        return Vec::new();
    }
    let mut seen = vec![false; order as usize];
    let mut out = Vec::new();
    for d in 2..order {
        if seen[d as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut e = d;
        while !seen[e as usize] {
            seen[e as usize] = true;
            coset.push(e);
            e = e * p % order;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out
}

/// Classifies `x^d` for one coset. The degree of `x^d` with `0 < d < q` is
/// the p-weight of `d`.
pub fn classify(field: &Field, coset: Vec<u64>) -> MonomialRecord {
    let d = *coset.iter().find(|&&d| d >= 2).expect("coset meets [2, q - 1)");
    MonomialRecord {
        d,
        is_gapn: is_gapn_monomial(field, d),
        is_gab: walsh_summary_monomial(field, d).is_gab,
        degree: p_weight(d, field.p()),
        coset,
    }
}

/// Runs the sweep, handing records to `emit` in coset order.
pub fn monomial_sweep<F>(field: &Field, mut emit: F) -> Result<()>
where
    F: FnMut(MonomialRecord) -> Result<()>,
{
    if field.size() > SEARCH_FIELD_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "monomial sweeps are limited to fields of size {SEARCH_FIELD_LIMIT}"
        )));
    }
    let cosets = cyclotomic_cosets(field);
    for chunk in cosets.chunks(BATCH) {
        for record in par::map(chunk.len(), |k| classify(field, chunk[k].clone())) {
            emit(record)?;
        }
    }
    Ok(())
}
