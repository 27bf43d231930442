//! JSON forms of functions and analysis reports.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::cyclotomic::CyclotomicInt;
use crate::diff::SpectrumReport;
use crate::dual_arc::{hyperoval_size, ArcVerification, DualArc};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::function::{FunctionTable, PolynomialForm};
use crate::walsh::FourierSum;

/// A function as given: by coefficients or by lookup table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionRepr {
    Poly(PolynomialForm),
    Lut(FunctionTable),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionJson {
    field: String,
    poly: Option<Vec<(u64, u64)>>,
    lut: Option<Vec<u64>>,
}

impl FunctionRepr {
    pub fn field(&self) -> &Field {
        match self {
            FunctionRepr::Poly(p) => p.field(),
            FunctionRepr::Lut(t) => t.field(),
        }
    }

    pub fn table(&self) -> FunctionTable {
        match self {
            FunctionRepr::Poly(p) => p.tabulate(),
            FunctionRepr::Lut(t) => t.clone(),
        }
    }

    /// The polynomial form, interpolating a lookup table if needed.
    pub fn polynomial(&self) -> Result<PolynomialForm> {
        match self {
            FunctionRepr::Poly(p) => Ok(p.clone()),
            FunctionRepr::Lut(t) => t.interpolate(),
        }
    }

    pub fn to_json(&self) -> Value {
        let field = self.field().to_string();
        match self {
            FunctionRepr::Poly(p) => {
                let terms: Vec<Value> = p.coeffs().iter().map(|(&d, c)| json!([d, c.0])).collect();
                json!({ "field": field, "poly": terms })
            }
            FunctionRepr::Lut(t) => {
                let values: Vec<u32> = t.values().iter().map(|v| v.0).collect();
                json!({ "field": field, "lut": values })
            }
        }
    }

    pub fn from_json(value: &Value) -> Result<FunctionRepr> {
        let raw: FunctionJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("function JSON: {e}")))?;
        let field: Field = raw.field.parse()?;
        match (raw.poly, raw.lut) {
            (Some(terms), None) => {
                let terms = terms
                    .into_iter()
                    .map(|(d, c)| Ok((d, field.elem(c)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FunctionRepr::Poly(PolynomialForm::from_terms(&field, &terms)?))
            }
            (None, Some(values)) => {
                let values = values.into_iter().map(|v| field.elem(v)).collect::<Result<Vec<_>>>()?;
                Ok(FunctionRepr::Lut(FunctionTable::new(&field, values)?))
            }
            _ => Err(Error::Parse("function JSON needs exactly one of \"poly\" or \"lut\"".into())),
        }
    }

    pub fn from_json_str(text: &str) -> Result<FunctionRepr> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("function JSON: {e}")))?;
        FunctionRepr::from_json(&value)
    }
}

/// Rational values as JSON numbers, others as `"c0+c1ζ+..."` strings.
pub fn cyclotomic_json(w: &CyclotomicInt) -> Value {
    match w.as_integer() {
        Some(v) => json!(v),
        None => json!(w.to_string()),
    }
}

fn multiset_json<K: ToString, V: Into<Value> + Copy>(entries: impl Iterator<Item = (K, V)>) -> Value {
    Value::Object(entries.map(|(k, v)| (k.to_string(), v.into())).collect::<Map<_, _>>())
}

pub fn spectrum_json(report: &SpectrumReport, function: &FunctionRepr) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| json!({ "a": row.a.0, "counts": multiset_json(row.counts.iter().map(|&(b, c)| (b, c))) }))
        .collect();
    json!({
        "field": report.field.to_string(),
        "function": function.to_json(),
        "rows": rows,
        "multiset": multiset_json(report.multiset.iter().map(|(&k, &v)| (k, v))),
        "is_gapn": report.is_gapn,
    })
}

pub fn fourier_sum_json(sum: &FourierSum) -> Value {
    json!({
        "value": sum.value.to_string(),
        "threshold": sum.threshold.to_string(),
        "equality": sum.equality,
    })
}

pub fn walsh_json<'a>(
    function: &FunctionRepr,
    value_set: impl IntoIterator<Item = &'a CyclotomicInt>,
    is_gab: bool,
    fourier_sum: &FourierSum,
) -> Value {
    let values: Vec<Value> = value_set.into_iter().map(cyclotomic_json).collect();
    json!({
        "field": function.field().to_string(),
        "function": function.to_json(),
        "value_set": values,
        "is_gab": is_gab,
        "fourier_sum": fourier_sum_json(fourier_sum),
    })
}

pub fn arc_json(arc: &DualArc, verification: &ArcVerification, function: &FunctionRepr) -> Value {
    let subspaces: Vec<Value> =
        arc.subspaces.iter().map(|s| json!({ "a": s.a.0, "basis": s.rows })).collect();
    let m_set: Vec<u32> = arc.m_set.iter().map(|a| a.0).collect();
    let mut out = json!({
        "field": arc.field.to_string(),
        "function": function.to_json(),
        "munu": arc.config.name(),
        "m_set": m_set,
        "subspaces": subspaces,
        "pairwise_ok": verification.pairwise_ok,
        "triples_ok": verification.triples_ok,
        "distinct_ok": verification.distinct_ok,
        "rank_ok": verification.all_rank_n,
        "pairs_checked": verification.pairs_checked,
        "triples_checked": verification.triples_checked,
    });
    if arc.field.p() == 2 {
        out["hyperoval_size"] = json!(hyperoval_size(&arc.field));
    }
    out
}

/// Parses `"i,i,..."` into field elements.
pub fn parse_elements(field: &Field, text: &str) -> Result<Vec<Elem>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let v: u64 = s.parse().map_err(|_| Error::Parse(format!("bad element index {s:?}")))?;
            field.elem(v)
        })
        .collect()
}

/// Parses `"d:c,d:c"` into a polynomial.
pub fn parse_poly(field: &Field, text: &str) -> Result<PolynomialForm> {
    let mut terms = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (d, c) = part.split_once(':').ok_or_else(|| Error::Parse(format!("term {part:?} is not d:c")))?;
        let d: u64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?;
        let c: u64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient in {part:?}")))?;
        terms.push((d, field.elem(c)?));
    }
    PolynomialForm::from_terms(field, &terms)
}
