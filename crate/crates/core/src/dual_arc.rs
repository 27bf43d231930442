//! Dual arcs from GAPN functions of algebraic degree p.
//!
//! For a twisted form `B̃_{f,μ,ν}(x, a) = μ_a(B̃_f(x, ν(a)))` that is
//! bilinear, each `a` gives the n-dimensional subspace
//! `X(a) = {(x, B̃_{f,μ,ν}(x, a))}` of `F ⊕ F`. Over a set `M` with no three
//! points on an F_p-line, the subspaces `X(a)`, `a ∈ M`, meet pairwise in
//! dimension 1 and triple-wise in 0.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diff::{b_tilde, d_tilde, is_gapn};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::function::{algebraic_degree_of_table, FunctionTable};
use crate::linalg;
use crate::par;

/// Largest field for which the full `q × q` table of `B̃_{f,μ,ν}` is built.
pub const BILINEAR_FIELD_LIMIT: usize = 2048;

/// The two `(μ, ν)` families with a known bilinear twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuNuConfig {
    /// `μ_a(x) = a^{2-p} x`, `ν(a) = a`; bilinear for generalized Gold functions.
    GoldIdentity,
    /// `μ_a(x) = a^d x`, `ν(a) = a^{-1}` (with `ν(0) = 0`); bilinear for `x^d`
    /// of degree at most p.
    MonomialInverse { d: u64 },
}

impl MuNuConfig {
    pub fn nu(&self, field: &Field, a: Elem) -> Elem {
        match self {
            MuNuConfig::GoldIdentity => a,
            MuNuConfig::MonomialInverse { .. } => field.inv_or_zero(a),
        }
    }

    /// The scalar by which `μ_a` multiplies, for `a ≠ 0`.
    pub fn mu_scalar(&self, field: &Field, a: Elem) -> Elem {
        let order = field.size() as u64 - 1;
        match *self {
            MuNuConfig::GoldIdentity => {
                // a^{2-p} = a^{(2-p) mod (q-1)}
                let p = field.p() as u64;
                let e = (2 + order * p - p) % order;
                field.pow(a, e)
            }
            MuNuConfig::MonomialInverse { d } => field.pow(a, d),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MuNuConfig::GoldIdentity => "gold-identity",
            MuNuConfig::MonomialInverse { .. } => "monomial-inverse",
        }
    }
}

/// `B̃_{f,μ,ν}(x, a)`, zero when `a = 0`.
pub fn b_tilde_mu_nu(f: &FunctionTable, cfg: MuNuConfig, x: Elem, a: Elem) -> Elem {
    if a.is_zero() {
        return Elem::ZERO;
    }
    let field = f.field();
    field.mul(cfg.mu_scalar(field, a), b_tilde(f, x, cfg.nu(field, a)))
}

/// Row `x ↦ B̃_{f,μ,ν}(x, a)`.
fn twisted_row(f: &FunctionTable, cfg: MuNuConfig, a: Elem) -> Vec<Elem> {
    let field = f.field();
    if a.is_zero() {
        return vec![Elem::ZERO; field.size()];
    }
    let d = d_tilde(f, cfg.nu(field, a));
    let base = d.at(Elem::ZERO);
    let mu = cfg.mu_scalar(field, a);
    d.values().iter().map(|&v| field.mul(mu, field.sub(v, base))).collect()
}

fn twisted_table(f: &FunctionTable, cfg: MuNuConfig) -> Result<Vec<Vec<Elem>>> {
    let q = f.field().size();
    if q > BILINEAR_FIELD_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "bilinearity table limited to fields of size {BILINEAR_FIELD_LIMIT}"
        )));
    }
    Ok(par::map(q, |k| twisted_row(f, cfg, Elem(k as u32))))
}

/// `T(x + e) = T(x) + T(e)` for every x and basis vector e, in each slot.
/// Over F_p this is equivalent to additivity on all pairs.
fn table_is_bilinear(field: &Field, table: &[Vec<Elem>]) -> bool {
    let basis: Vec<Elem> = (0..field.n()).map(|i| Elem(field.p_pow(i))).collect();
    par::all(field.size(), |k| {
        let u = Elem(k as u32);
        basis.iter().all(|&e| {
            let ue = field.add(u, e);
            field.elements().all(|v| {
                // additive in x along row u, and in a along column u
                table[v.index()][ue.index()] == field.add(table[v.index()][u.index()], table[v.index()][e.index()])
                    && table[ue.index()][v.index()] == field.add(table[u.index()][v.index()], table[e.index()][v.index()])
            })
        })
    })
}

pub fn check_bilinear(f: &FunctionTable, cfg: MuNuConfig) -> Result<bool> {
    let table = twisted_table(f, cfg)?;
    Ok(table_is_bilinear(f.field(), &table))
}

/// `{x : B̃_{f,μ,ν}(x, a) = 0} = F_p ν(a)` for every `a ≠ 0`.
pub fn kernel_identity(f: &FunctionTable, cfg: MuNuConfig) -> Result<bool> {
    let field = f.field();
    let table = twisted_table(f, cfg)?;
    Ok(field.nonzero_elements().all(|a| {
        let kernel: HashSet<Elem> = field.elements().filter(|x| table[a.index()][x.index()].is_zero()).collect();
        kernel == line(field, cfg.nu(field, a))
    }))
}

/// `F_p v`.
pub fn line(field: &Field, v: Elem) -> HashSet<Elem> {
    (0..field.p()).map(|i| field.scale(i, v)).collect()
}

/// Whether mutually distinct `a, b, c` lie on one F_p-line, i.e. `a - b`
/// and `a - c` are F_p-dependent.
pub fn collinear(field: &Field, a: Elem, b: Elem, c: Elem) -> Result<bool> {
    if a == b || a == c || b == c {
        return Err(Error::NotDistinct);
    }
    let u = field.sub(a, b);
    let v = field.sub(a, c);
    Ok((1..field.p()).any(|i| field.scale(i, v) == u))
}

/// Points of the line through `u` and `v` other than `u` and `v`.
fn third_points(field: &Field, u: Elem, v: Elem) -> impl Iterator<Item = Elem> + '_ {
    let step = field.sub(v, u);
    (2..field.p()).map(move |i| field.add(u, field.scale(i, step)))
}

/// Greedy cap set: scan F in a seeded shuffled order, keeping each element
/// that is not on a line through two kept ones.
pub fn greedy_cap_set(field: &Field, seed: u64) -> Vec<Elem> {
    let mut order: Vec<Elem> = field.elements().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut blocked = vec![false; field.size()];
    let mut chosen: Vec<Elem> = Vec::new();
    for e in order {
        if blocked[e.index()] {
            continue;
        }
        for &u in &chosen {
            for w in third_points(field, u, e) {
                blocked[w.index()] = true;
            }
        }
        chosen.push(e);
    }
    chosen
}

/// Checks that `m` is a set of distinct field elements with no collinear
/// triple; the error names the first offence.
pub fn validate_cap_set(field: &Field, m: &[Elem]) -> Result<()> {
    let mut members = HashSet::new();
    for &a in m {
        if !field.contains(a) {
            return Err(Error::HypothesisFailed(format!("M contains {a}, which is not a field element")));
        }
        if !members.insert(a) {
            return Err(Error::HypothesisFailed(format!("M repeats {a}")));
        }
    }
    for (i, &u) in m.iter().enumerate() {
        for &v in &m[i + 1..] {
            if let Some(w) = third_points(field, u, v).find(|w| members.contains(w)) {
                return Err(Error::HypothesisFailed(format!("M contains the collinear triple {u}, {v}, {w}")));
            }
        }
    }
    Ok(())
}

/// Row-reduced basis of `X(a) ⊂ F_p^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub a: Elem,
    pub rows: Vec<Vec<u32>>,
    pub rank: usize,
}

/// `X(a)` spanned by `(α^i, B̃_{f,μ,ν}(α^i, a))`.
pub fn subspace(f: &FunctionTable, cfg: MuNuConfig, a: Elem) -> SubspaceBasis {
    let field = f.field();
    let row = twisted_row(f, cfg, a);
    let mut rows: Vec<Vec<u32>> = (0..field.n())
        .map(|i| {
            let x = Elem(field.p_pow(i));
            let mut v = field.digits(x);
            v.extend(field.digits(row[x.index()]));
            v
        })
        .collect();
    let rank = linalg::row_reduce(&mut rows, field.p());
    SubspaceBasis { a, rows, rank }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualArc {
    pub field: Field,
    pub config: MuNuConfig,
    pub m_set: Vec<Elem>,
    pub subspaces: Vec<SubspaceBasis>,
}

/// Checks every hypothesis of the construction, then builds one subspace
/// per element of `m`.
pub fn build_arc(f: &FunctionTable, cfg: MuNuConfig, m: &[Elem]) -> Result<DualArc> {
    let field = f.field();
    let p = field.p() as usize;
    if field.n() < 2 {
        return Err(Error::HypothesisFailed("the construction needs n >= 2".into()));
    }
    if !is_gapn(f) {
        return Err(Error::HypothesisFailed("f is not GAPN".into()));
    }
    let degree = match algebraic_degree_of_table(f) {
        Err(Error::ZeroFunction) => 0,
        other => other?,
    };
    if degree != p {
        return Err(Error::HypothesisFailed(format!("f has algebraic degree {degree}, expected {p}")));
    }
    if !check_bilinear(f, cfg)? {
        return Err(Error::HypothesisFailed(format!("B̃_(f,μ,ν) is not bilinear for {}", cfg.name())));
    }
    validate_cap_set(field, m)?;
    let subspaces = par::map(m.len(), |k| subspace(f, cfg, m[k]));
    Ok(DualArc { field: field.clone(), config: cfg, m_set: m.to_vec(), subspaces })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcVerification {
    pub all_rank_n: bool,
    pub pairwise_ok: bool,
    pub triples_ok: bool,
    pub distinct_ok: bool,
    /// `(a, b, dim(X(a) ∩ X(b)))` for the first pair with dimension ≠ 1.
    pub bad_pair: Option<(Elem, Elem, usize)>,
    /// First triple with a nonzero common intersection.
    pub bad_triple: Option<(Elem, Elem, Elem)>,
    pub pairs_checked: usize,
    pub triples_checked: usize,
}

impl ArcVerification {
    pub fn ok(&self) -> bool {
        self.all_rank_n && self.pairwise_ok && self.triples_ok && self.distinct_ok
    }

    pub fn into_result(self) -> Result<ArcVerification> {
        if self.ok() {
            return Ok(self);
        }
        let detail = if let Some((a, b, d)) = self.bad_pair {
            format!("X({a}) ∩ X({b}) has dimension {d}")
        } else if let Some((a, b, c)) = self.bad_triple {
            format!("X({a}) ∩ X({b}) ∩ X({c}) is nonzero")
        } else if !self.all_rank_n {
            "a subspace has rank below n".to_string()
        } else {
            "two subspaces coincide".to_string()
        };
        Err(Error::VerificationFailed(detail))
    }
}

/// Exhaustive check of the dual-arc axioms: ranks, pairwise intersection
/// dimension 1 via `dim X + dim Y - rank(X | Y)`, trivial triple
/// intersections and distinctness.
pub fn verify_dual_arc(arc: &DualArc) -> ArcVerification {
    let p = arc.field.p();
    let n = arc.field.n() as usize;
    let subs = &arc.subspaces;
    let k = subs.len();
    let all_rank_n = subs.iter().all(|s| s.rank == n);

    let pair_rows = par::map(k, |i| {
        let mut bad = None;
        let mut same = false;
        for j in i + 1..k {
            let mut stacked = subs[i].rows.clone();
            stacked.extend(subs[j].rows.iter().cloned());
            let dim = subs[i].rank + subs[j].rank - linalg::rank(&stacked, p);
            same |= subs[i].rows == subs[j].rows;
            if dim != 1 && bad.is_none() {
                bad = Some((subs[i].a, subs[j].a, dim));
            }
        }
        (bad, same)
    });
    let bad_pair = pair_rows.iter().find_map(|r| r.0);
    let distinct_ok = !pair_rows.iter().any(|r| r.1);

    let triple_rows = par::map(k, |i| {
        for j in i + 1..k {
            let ij = linalg::intersection(&subs[i].rows, &subs[j].rows, p);
            if ij.is_empty() {
                continue;
            }
            for l in j + 1..k {
                if !linalg::intersection(&ij, &subs[l].rows, p).is_empty() {
                    return Some((subs[i].a, subs[j].a, subs[l].a));
                }
            }
        }
        None
    });
    let bad_triple = triple_rows.into_iter().flatten().next();

    ArcVerification {
        all_rank_n,
        pairwise_ok: bad_pair.is_none(),
        triples_ok: bad_triple.is_none(),
        distinct_ok,
        bad_pair,
        bad_triple,
        pairs_checked: k * k.saturating_sub(1) / 2,
        triples_checked: k * k.saturating_sub(1) * k.saturating_sub(2) / 6,
    }
}

/// `(q^m - q)/(q - 1) + 1` with `q = p` and `m = n`, the size of a dual
/// hyperoval of n-dimensional subspaces.
pub fn hyperoval_size(field: &Field) -> u64 {
    let q = field.p() as u64;
    let qm = q.pow(field.n());
    (qm - q) / (q - 1) + 1
}
