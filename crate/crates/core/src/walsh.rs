//! Exact Walsh analysis over `Z[ζ_p]`: components `f_b = Tr(b f)`, the
//! character sum `F(g) = Σ_x ζ^{g(x)}`, Walsh coefficients
//! `W_f(a, b) = F(Tr(a·) + f_b)`, the GAB test, the Fourier-sum
//! characterization of GAPN functions and the `S^(m)` solution counts.
//!
//! Full Walsh rows use a p-ary fast transform. `Tr(ax) = ⟨L(a), x⟩` where
//! `L(a) = (Tr(a α^i))_i` and `x` is read as its digit vector, so the row
//! `a ↦ W_f(a, b)` is the ordinary F_p^n character transform of `ζ^{f_b}`
//! read through the bijection `L`.

use std::collections::BTreeSet;

use crate::cyclotomic::{rational_part, CyclotomicInt};
use crate::diff::d_tilde;
use crate::error::{Error, Result};
use crate::field::{gcd, Elem, Field};
use crate::function::FunctionTable;
use crate::par;

/// Largest `(p^n)^2 · p` for which [`walsh_report`] stores every coefficient.
pub const WALSH_STORE_LIMIT: usize = 1 << 25;
/// Largest field for the cubic `S^(3)` routines.
pub const S3_FIELD_LIMIT: usize = 1 << 12;

/// `x ↦ Tr(b f(x))`.
pub fn component(f: &FunctionTable, b: Elem) -> Vec<u32> {
    let field = f.field();
    f.values().iter().map(|&v| field.trace(field.mul(b, v))).collect()
}

/// `F(g) = Σ_x ζ^{g(x)}` from the p-bin histogram of `g`.
pub fn fourier(p: u32, g: &[u32]) -> CyclotomicInt {
    let mut hist = vec![0i64; p as usize];
    for &v in g {
        hist[(v % p) as usize] += 1;
    }
    CyclotomicInt::from_coords(hist)
}

/// `W_f(a, b)` by direct histogram over x.
pub fn walsh_coefficient(f: &FunctionTable, a: Elem, b: Elem) -> CyclotomicInt {
    let field = f.field();
    let p = field.p();
    let g: Vec<u32> = field
        .elements()
        .map(|x| (field.trace(field.mul(a, x)) + field.trace(field.mul(b, f.at(x)))) % p)
        .collect();
    fourier(p, &g)
}

/// Index of `L(a) = (Tr(a α^i))_i` for every `a`.
fn trace_coordinates(field: &Field) -> Vec<u32> {
    let basis: Vec<Elem> = (0..field.n()).map(|i| Elem(field.p_pow(i))).collect();
    par::map(field.size(), |k| {
        let a = Elem(k as u32);
        let digits: Vec<u32> = basis.iter().map(|&e| field.trace(field.mul(a, e))).collect();
        field.from_digits(&digits).0
    })
}

/// In-place `H[u] = Σ_y v[y] ζ^{⟨u, y⟩}` over F_p^n; `data` holds `p`
/// coordinates per point.
fn pary_transform(p: usize, n: u32, data: &mut [i64]) {
    let q = data.len() / p;
    let mut stride = 1usize;
    let mut input = vec![0i64; p * p];
    for _ in 0..n {
        let block = stride * p;
        for base in (0..q).step_by(block) {
            for off in 0..stride {
                let start = base + off;
                for k in 0..p {
                    let at = (start + k * stride) * p;
                    input[k * p..(k + 1) * p].copy_from_slice(&data[at..at + p]);
                }
                for v in 0..p {
                    let at = (start + v * stride) * p;
                    let out = &mut data[at..at + p];
                    out.fill(0);
                    for k in 0..p {
                        let shift = v * k % p;
                        let src = &input[k * p..(k + 1) * p];
                        for (c, &x) in src.iter().enumerate() {
                            out[(c + shift) % p] += x;
                        }
                    }
                }
            }
        }
        stride = block;
    }
}

/// `a ↦ W_f(a, b)` for every `a` (index order), via the fast transform.
fn walsh_row(f: &FunctionTable, b: Elem, coords: &[u32]) -> Vec<CyclotomicInt> {
    let field = f.field();
    let p = field.p() as usize;
    let mut data = vec![0i64; field.size() * p];
    for (x, &v) in f.values().iter().enumerate() {
        let g = field.trace(field.mul(b, v)) as usize;
        data[x * p + g] += 1;
    }
    pary_transform(p, field.n(), &mut data);
    coords
        .iter()
        .map(|&u| {
            let u = u as usize;
            CyclotomicInt::from_coords(data[u * p..(u + 1) * p].to_vec())
        })
        .collect()
}

/// `W ∈ {0, ±p^{(n+1)/2}}`, decided as `W = 0` or (`W` real and
/// `W² = p^{n+1}`).
pub fn is_gab_value(w: &CyclotomicInt, field: &Field) -> bool {
    if w.is_zero() {
        return true;
    }
    let target = (field.p() as i128).pow(field.n() + 1);
    w.is_real() && (w * w).as_integer().map(i128::from) == Some(target)
}

/// Walsh coefficients `W_f(a, b)` for all `a` and `b ≠ 0`.
#[derive(Clone, Debug)]
pub struct WalshReport {
    pub field: Field,
    /// rows[b - 1][a]
    rows: Vec<Vec<CyclotomicInt>>,
    pub value_set: BTreeSet<CyclotomicInt>,
    pub is_gab: bool,
}

impl WalshReport {
    pub fn coefficient(&self, a: Elem, b: Elem) -> Option<&CyclotomicInt> {
        if b.is_zero() {
            return None;
        }
        self.rows.get(b.index() - 1)?.get(a.index())
    }
}

pub fn walsh_report(f: &FunctionTable) -> Result<WalshReport> {
    let field = f.field();
    let q = field.size();
    if q * q * field.p() as usize > WALSH_STORE_LIMIT {
        return Err(Error::GuardExceeded(format!("storing all Walsh coefficients of a field of size {q}")));
    }
    let coords = trace_coordinates(field);
    let rows = par::map(q - 1, |k| walsh_row(f, Elem(k as u32 + 1), &coords));
    let value_set: BTreeSet<CyclotomicInt> = rows.iter().flatten().cloned().collect();
    let is_gab = value_set.iter().all(|w| is_gab_value(w, field));
    Ok(WalshReport { field: field.clone(), rows, value_set, is_gab })
}

/// Value set and GAB verdict without storing the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSummary {
    pub value_set: BTreeSet<CyclotomicInt>,
    pub is_gab: bool,
}

fn summarize_rows(f: &FunctionTable, bs: &[Elem]) -> WalshSummary {
    let field = f.field();
    let coords = trace_coordinates(field);
    let sets = par::map(bs.len(), |k| walsh_row(f, bs[k], &coords).into_iter().collect::<BTreeSet<_>>());
    let value_set: BTreeSet<CyclotomicInt> = sets.into_iter().flatten().collect();
    let is_gab = value_set.iter().all(|w| is_gab_value(w, field));
    WalshSummary { value_set, is_gab }
}

pub fn walsh_summary(f: &FunctionTable) -> WalshSummary {
    let bs: Vec<Elem> = f.field().nonzero_elements().collect();
    summarize_rows(f, &bs)
}

pub fn is_gab(f: &FunctionTable) -> bool {
    walsh_summary(f).is_gab
}

/// Walsh summary of `x^d` from one row per coset of the d-th powers:
/// `W(a, b c^d) = W(a c^{-1}, b)`, so rows in the same coset share values.
pub fn walsh_summary_monomial(field: &Field, d: u64) -> WalshSummary {
    let f = crate::function::monomial(field, d).tabulate();
    let order = field.size() as u64 - 1;
    let g = gcd(d % order, order).max(1);
    let gamma = field.primitive_element();
    let bs: Vec<Elem> = (0..g).map(|j| field.pow(gamma, j)).collect();
    summarize_rows(&f, &bs)
}

/// `Σ_{a∈F, b≠0} |F((D̃_a f)_b)|²` and its comparison with
/// `p^{2n+1}(p^n - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourierSum {
    pub value: i128,
    pub threshold: i128,
    /// `value == threshold`, which holds exactly for GAPN functions.
    pub equality: bool,
}

fn fourier_threshold(field: &Field) -> i128 {
    let p = field.p() as i128;
    let q = field.size() as i128;
    p.pow(2 * field.n() + 1) * (q - 1)
}

/// Fast route: for each `a`, transform the histogram `y ↦ Ñ_f(a, y)`; the
/// transform at `L(b)` is `F((D̃_a f)_b)`.
pub fn gapn_fourier_sum(f: &FunctionTable) -> Result<FourierSum> {
    let field = f.field();
    let p = field.p() as usize;
    let q = field.size();
    let per_a: Vec<Vec<i128>> = par::map(q, |k| {
        let table = d_tilde(f, Elem(k as u32));
        let mut data = vec![0i64; q * p];
        for v in table.values() {
            data[v.index() * p] += 1;
        }
        pary_transform(p, field.n(), &mut data);
        let mut acc = vec![0i128; p];
        for u in 1..q {
            CyclotomicInt::from_coords(data[u * p..(u + 1) * p].to_vec()).add_norm_into(&mut acc);
        }
        acc
    });
    finish_sum(field, per_a)
}

/// Direct route: every component of every `D̃_a f` through [`fourier`].
pub fn gapn_fourier_sum_direct(f: &FunctionTable) -> Result<FourierSum> {
    let field = f.field();
    let q = field.size();
    let per_a: Vec<Vec<i128>> = par::map(q, |k| {
        let table = d_tilde(f, Elem(k as u32));
        let mut acc = vec![0i128; field.p() as usize];
        for b in field.nonzero_elements() {
            fourier(field.p(), &component(&table, b)).add_norm_into(&mut acc);
        }
        acc
    });
    finish_sum(field, per_a)
}

fn finish_sum(field: &Field, per_a: Vec<Vec<i128>>) -> Result<FourierSum> {
    let mut acc = vec![0i128; field.p() as usize];
    for v in per_a {
        for (s, x) in acc.iter_mut().zip(v) {
            *s += x;
        }
    }
    let value = rational_part(&acc).ok_or(Error::NonRationalSum)?;
    let threshold = fourier_threshold(field);
    Ok(FourierSum { value, threshold, equality: value == threshold })
}

/// `S^(m)_{a,b} = #{(x_1..x_m) : Σ x_i = a, Σ f(x_i) = b}` for m ∈ {1, 2, 3}.
pub fn s_count(f: &FunctionTable, m: usize, a: Elem, b: Elem) -> Result<u64> {
    let field = f.field();
    match m {
        1 => Ok(u64::from(f.at(a) == b)),
        2 => Ok(field
            .elements()
            .filter(|&x| field.add(f.at(x), f.at(field.sub(a, x))) == b)
            .count() as u64),
        3 => {
            if field.size() > S3_FIELD_LIMIT {
                return Err(Error::GuardExceeded(format!("S^(3) limited to fields of size {S3_FIELD_LIMIT}")));
            }
            Ok(par::sum_u64(field.size(), |k| {
                let x = Elem(k as u32);
                let rest_a = field.sub(a, x);
                let rest_b = field.sub(b, f.at(x));
                field
                    .elements()
                    .filter(|&y| field.add(f.at(y), f.at(field.sub(rest_a, y))) == rest_b)
                    .count() as u64
            }))
        }
        _ => Err(Error::GuardExceeded(format!("S^(m) is provided for m <= 3, got {m}"))),
    }
}

/// Outcome of comparing `S^(3)` with the GAB pattern cell by cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Report {
    /// Every cell matches `p^n - p` (`f(a) ≠ b`) or `(p+1)p^n - p` (`f(a) = b`).
    pub is_gab: bool,
    pub mismatches: u64,
    /// `(a, b, observed, expected)` for the first mismatching cell.
    pub first_mismatch: Option<(Elem, Elem, u64, u64)>,
}

/// Full `S^(3)` matrix: `S^(2)` by one pass over pairs, then
/// `S^(3)_{a,b} = Σ_z S^(2)_{a-z, b-f(z)}`.
pub fn gab_via_s3(f: &FunctionTable) -> Result<S3Report> {
    let field = f.field();
    let q = field.size();
    if q > S3_FIELD_LIMIT {
        return Err(Error::GuardExceeded(format!("S^(3) limited to fields of size {S3_FIELD_LIMIT}")));
    }
    let mut s2 = vec![0u32; q * q];
    for x in field.elements() {
        for y in field.elements() {
            let s = field.add(x, y).index();
            let t = field.add(f.at(x), f.at(y)).index();
            s2[s * q + t] += 1;
        }
    }
    let p = field.p() as u64;
    let qq = q as u64;
    let off = qq - p;
    let on = (p + 1) * qq - p;
    let rows = par::map(q, |k| {
        let a = Elem(k as u32);
        let mut row = vec![0u64; q];
        for z in field.elements() {
            let s = field.sub(a, z).index();
            let fz = f.at(z);
            for t in 0..q {
                let c = s2[s * q + t];
                if c != 0 {
                    row[field.add(Elem(t as u32), fz).index()] += c as u64;
                }
            }
        }
        let mut bad = 0u64;
        let mut first = None;
        for (bi, &observed) in row.iter().enumerate() {
            let b = Elem(bi as u32);
            let expected = if f.at(a) == b { on } else { off };
            if observed != expected {
                bad += 1;
                first.get_or_insert((a, b, observed, expected));
            }
        }
        (bad, first)
    });
    let mismatches = rows.iter().map(|r| r.0).sum();
    let first_mismatch = rows.iter().find_map(|r| r.1);
    Ok(S3Report { is_gab: mismatches == 0, mismatches, first_mismatch })
}
