//! Functions `F → F` as lookup tables and as sparse polynomials, the named
//! constructions (monomials, inverse permutation, generalized Gold,
//! binomials), affine maps, the m-fold difference `[f]^m` and algebraic
//! degree.

use std::collections::BTreeMap;

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{gcd, Elem, Field};
use crate::{linalg, par};

/// Largest `m` accepted by [`m_fold_difference`].
pub const M_FOLD_MAX: usize = 12;
/// Largest field [`FunctionTable::interpolate`] accepts.
pub const INTERPOLATE_MAX: usize = 1 << 14;

/// A function `F → F` stored as its full value table in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable {
    field: Field,
    values: Vec<Elem>,
}

/// A function `F → F` as `Σ c_d x^d` with `d < p^n` and no zero
/// coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialForm {
    field: Field,
    coeffs: BTreeMap<u32, Elem>,
}

impl FunctionTable {
    pub fn new(field: &Field, values: Vec<Elem>) -> Result<FunctionTable> {
        if values.len() != field.size() {
            return Err(Error::BadParameters(format!(
                "table has {} entries, field has {}",
                values.len(),
                field.size()
            )));
        }
        if let Some(v) = values.iter().find(|v| !field.contains(**v)) {
            return Err(Error::BadParameters(format!("value {v} outside the field")));
        }
        Ok(FunctionTable { field: field.clone(), values })
    }

    pub fn from_fn<F>(field: &Field, f: F) -> FunctionTable
    where
        F: Fn(Elem) -> Elem + Sync + Send,
    {
        let values = par::map(field.size(), |i| f(Elem(i as u32)));
        FunctionTable { field: field.clone(), values }
    }

    pub fn identity(field: &Field) -> FunctionTable {
        FunctionTable::from_fn(field, |x| x)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: Elem) -> Elem {
        self.values[x.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `f(-x) = -f(x)` for every x.
    pub fn is_odd(&self) -> bool {
        let f = &self.field;
        f.elements().all(|x| self.at(f.neg(x)) == f.neg(self.at(x)))
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.values.len()];
        for v in &self.values {
            if std::mem::replace(&mut seen[v.index()], true) {
                return false;
            }
        }
        true
    }

    pub fn invert_permutation(&self) -> Result<FunctionTable> {
        if !self.is_permutation() {
            return Err(Error::NotPermutation);
        }
        let mut inv = vec![Elem::ZERO; self.values.len()];
        for (i, v) in self.values.iter().enumerate() {
            inv[v.index()] = Elem(i as u32);
        }
        Ok(FunctionTable { field: self.field.clone(), values: inv })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FunctionTable) -> Result<FunctionTable> {
        self.field.same(&inner.field)?;
        let values = inner.values.iter().map(|&x| self.at(x)).collect();
        Ok(FunctionTable { field: self.field.clone(), values })
    }

    /// Pointwise sum.
    pub fn add(&self, other: &FunctionTable) -> Result<FunctionTable> {
        self.field.same(&other.field)?;
        let f = &self.field;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(FunctionTable { field: f.clone(), values })
    }

    /// The unique polynomial of degree `< p^n` agreeing with the table:
    /// `c_0 = f(0)`, `c_d = -Σ_{x≠0} f(x) x^{-d}` for `0 < d < q-1` and
    /// `c_{q-1} = -Σ_x f(x)`.
    pub fn interpolate(&self) -> Result<PolynomialForm> {
        let f = &self.field;
        let q = f.size();
        if q > INTERPOLATE_MAX {
            return Err(Error::GuardExceeded(format!("interpolation limited to fields of size {INTERPOLATE_MAX}")));
        }
        let mut coeffs = BTreeMap::new();
        if !self.at(Elem::ZERO).is_zero() {
            coeffs.insert(0, self.at(Elem::ZERO));
        }
        let g = f.primitive_element();
        let order = (q - 1) as u64;
        let middle = par::map(q.saturating_sub(2), |k| {
            let d = k as u64 + 1;
            let step = f.pow(g, order - d);
            let mut power = Elem::ONE; // (g^k)^{-d}
            let mut x = Elem::ONE; // g^k
            let mut acc = Elem::ZERO;
            for _ in 0..order {
                acc = f.add(acc, f.mul(self.at(x), power));
                x = f.mul(x, g);
                power = f.mul(power, step);
            }
            f.neg(acc)
        });
        for (k, c) in middle.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(k as u32 + 1, c);
            }
        }
        let top = self.values.iter().fold(Elem::ZERO, |acc, &v| f.add(acc, v));
        if !top.is_zero() {
            coeffs.insert(q as u32 - 1, f.neg(top));
        }
        Ok(PolynomialForm { field: f.clone(), coeffs })
    }
}

/// Reduces an exponent into `[0, q)` without changing the function
/// `x ↦ x^d` (with `0^0 = 1`).
pub fn reduce_exponent(d: u64, q: u64) -> u64 {
    if d < q {
        d
    } else {
        (d - 1) % (q - 1) + 1
    }
}

impl PolynomialForm {
    pub fn zero(field: &Field) -> PolynomialForm {
        PolynomialForm { field: field.clone(), coeffs: BTreeMap::new() }
    }

    /// Builds from `(exponent, coefficient)` terms. Exponents are reduced
    /// into `[0, q)` and like terms are combined.
    pub fn from_terms(field: &Field, terms: &[(u64, Elem)]) -> Result<PolynomialForm> {
        let mut coeffs: BTreeMap<u32, Elem> = BTreeMap::new();
        for &(d, c) in terms {
            if !field.contains(c) {
                return Err(Error::BadParameters(format!("coefficient {c} outside the field")));
            }
            let d = reduce_exponent(d, field.size() as u64) as u32;
            let entry = coeffs.entry(d).or_insert(Elem::ZERO);
            *entry = field.add(*entry, c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(PolynomialForm { field: field.clone(), coeffs })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Elem> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .fold(Elem::ZERO, |acc, (&d, &c)| f.add(acc, f.mul(c, f.pow(x, d as u64))))
    }

    pub fn tabulate(&self) -> FunctionTable {
        FunctionTable::from_fn(&self.field, |x| self.eval(x))
    }

    /// Largest p-weight among exponents `d > 0` with a nonzero coefficient
    /// (0 when there are none).
    pub fn max_weight(&self) -> usize {
        let p = self.field.p();
        self.coeffs.keys().filter(|&&d| d > 0).map(|&d| p_weight(d as u64, p)).max().unwrap_or(0)
    }

    /// `x ↦ f(-x) = -f(x)`: holds iff only odd exponents appear (p odd).
    pub fn only_odd_exponents(&self) -> bool {
        self.coeffs.keys().all(|&d| d % 2 == 1)
    }
}

/// Sum of the base-p digits of `d`.
pub fn p_weight(mut d: u64, p: u32) -> usize {
    let p = p as u64;
    let mut w = 0;
    while d > 0 {
        w += (d % p) as usize;
        d /= p;
    }
    w
}

pub fn monomial(field: &Field, d: u64) -> PolynomialForm {
    PolynomialForm::from_terms(field, &[(d, Elem::ONE)]).expect("1 lies in every field")
}

/// `x^{p^n - 2}`, i.e. `x^{-1}` with `0 ↦ 0`.
pub fn inverse_permutation(field: &Field) -> PolynomialForm {
    if field.size() == 2 {
        return monomial(field, 1);
    }
    monomial(field, field.size() as u64 - 2)
}

fn check_gold_index(field: &Field, i: u32) -> Result<()> {
    if i == 0 {
        return Err(Error::BadParameters("i must be positive".into()));
    }
    if gcd(i as u64, field.n() as u64) != 1 {
        return Err(Error::BadParameters(format!("gcd(i, n) = gcd({i}, {}) must be 1", field.n())));
    }
    Ok(())
}

fn gold_exponent(field: &Field, i: u32) -> u64 {
    let p = field.p() as u64;
    field.p_pow(i % field.n()) as u64 + p - 1
}

/// Generalized Gold function `x^{p^i + p - 1}` with `i > 0`, `gcd(i, n) = 1`.
pub fn generalized_gold(field: &Field, i: u32) -> Result<PolynomialForm> {
    check_gold_index(field, i)?;
    Ok(monomial(field, gold_exponent(field, i)))
}

/// `x^{1 + p^{i_2} + ... + p^{i_p}}` together with whether the kernel
/// `{x : x + x^{p^{i_2}} + ... + x^{p^{i_p}} = 0}` is exactly F_p.
pub fn general_gold(field: &Field, shifts: &[u32]) -> Result<(PolynomialForm, bool)> {
    let p = field.p();
    if shifts.len() != p as usize - 1 {
        return Err(Error::BadParameters(format!("expected {} shifts (p - 1), got {}", p - 1, shifts.len())));
    }
    if shifts.iter().all(|&s| s == 0) {
        return Err(Error::BadParameters("shifts must not all be zero".into()));
    }
    let d: u64 = 1 + shifts.iter().map(|&s| field.p_pow(s % field.n()) as u64).sum::<u64>();
    let kernel_size = field
        .elements()
        .filter(|&x| {
            let sum = shifts.iter().fold(x, |acc, &s| field.add(acc, field.frobenius(x, s)));
            sum.is_zero()
        })
        .count();
    // the kernel always contains F_p, so equality is a size check
    let hypothesis = kernel_size == p as usize;
    Ok((monomial(field, d), hypothesis))
}

/// `x^{p^i + p - 1} - x^{p^{n-i} + p - 1}` for odd p, odd n, `gcd(i, n) = 1`.
pub fn binomial(field: &Field, i: u32) -> Result<PolynomialForm> {
    if field.p() == 2 {
        return Err(Error::BadParameters("p must be odd".into()));
    }
    if field.n().is_multiple_of(2) {
        return Err(Error::BadParameters("n must be odd".into()));
    }
    check_gold_index(field, i)?;
    let n = field.n();
    let j = (n - i % n) % n;
    let minus_one = field.neg(Elem::ONE);
    PolynomialForm::from_terms(
        field,
        &[(gold_exponent(field, i), Elem::ONE), (gold_exponent(field, j), minus_one)],
    )
}

/// `[f]^m(x_1..x_m) = Σ_{I ⊆ [m]} (-1)^{m-|I|} f(Σ_{i∈I} x_i)`;
/// `[f]^0 = f(0)`.
pub fn m_fold_difference(f: &FunctionTable, xs: &[Elem]) -> Result<Elem> {
    if xs.len() > M_FOLD_MAX {
        return Err(Error::GuardExceeded(format!("m = {} exceeds {M_FOLD_MAX}", xs.len())));
    }
    Ok(m_fold_unchecked(f, xs))
}

pub(crate) fn m_fold_unchecked(f: &FunctionTable, xs: &[Elem]) -> Elem {
    let field = f.field();
    let m = xs.len();
    let mut sums = vec![Elem::ZERO; 1 << m];
    let mut acc = Elem::ZERO;
    for mask in 0usize..(1 << m) {
        if mask > 0 {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = field.add(sums[mask & (mask - 1)], xs[low]);
        }
        let v = f.at(sums[mask]);
        if (m - mask.count_ones() as usize).is_multiple_of(2) {
            acc = field.add(acc, v);
        } else {
            acc = field.sub(acc, v);
        }
    }
    acc
}

/// How the algebraic degree was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMethod {
    /// A random tuple witnessed `[f]^m ≠ 0` at the p-weight bound.
    RandomWitness,
    /// `[f]^m` at the bound is multilinear, so a basis tuple witnessed it.
    BasisWitness,
    /// The bound was not attained; found by descending exhaustive search.
    Fallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub weight_bound: usize,
    pub method: DegreeMethod,
}

const DEGREE_SEED: u64 = 0x5eed_d0c5;
const RANDOM_TUPLES: usize = 64;
const FALLBACK_BUDGET: u128 = 1 << 24;

/// Algebraic degree of the function given by its polynomial form.
pub fn algebraic_degree_report(poly: &PolynomialForm) -> Result<DegreeReport> {
    if poly.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let bound = poly.max_weight();
    if bound == 0 {
        return Ok(DegreeReport { degree: 0, weight_bound: 0, method: DegreeMethod::RandomWitness });
    }
    let table = poly.tabulate();
    let field = poly.field();
    let mut rng = ChaCha8Rng::seed_from_u64(DEGREE_SEED);
    let q = field.size() as u32;
    for _ in 0..RANDOM_TUPLES {
        let xs: Vec<Elem> = (0..bound).map(|_| Elem(rng.gen_range(0..q))).collect();
        if !m_fold_unchecked(&table, &xs).is_zero() {
            return Ok(DegreeReport { degree: bound, weight_bound: bound, method: DegreeMethod::RandomWitness });
        }
    }
    // [f]^{bound+1} = 0, so [f]^bound is additive in every slot and symmetric:
    // it vanishes iff it vanishes on all multisets of basis vectors.
    let basis: Vec<Elem> = (0..field.n()).map(|i| Elem(field.p_pow(i))).collect();
    if basis_multisets(basis.len(), bound)
        .into_iter()
        .any(|idx| !m_fold_unchecked(&table, &idx.iter().map(|&i| basis[i]).collect::<Vec<_>>()).is_zero())
    {
        return Ok(DegreeReport { degree: bound, weight_bound: bound, method: DegreeMethod::BasisWitness });
    }
    warn!("p-weight bound {bound} not attained for a function over {field}; searching downward");
    for m in (1..bound).rev() {
        let total = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if total > FALLBACK_BUDGET {
            return Err(Error::GuardExceeded(format!("exhaustive degree search over {q}^{m} tuples")));
        }
        let mut xs = vec![Elem::ZERO; m];
        for t in 0..total {
            let mut v = t;
            for x in xs.iter_mut() {
                *x = Elem((v % q as u128) as u32);
                v /= q as u128;
            }
            if !m_fold_unchecked(&table, &xs).is_zero() {
                return Ok(DegreeReport { degree: m, weight_bound: bound, method: DegreeMethod::Fallback });
            }
        }
    }
    Ok(DegreeReport { degree: 0, weight_bound: bound, method: DegreeMethod::Fallback })
}

pub fn algebraic_degree(poly: &PolynomialForm) -> Result<usize> {
    algebraic_degree_report(poly).map(|r| r.degree)
}

/// Degree of a tabulated function, via interpolation.
pub fn algebraic_degree_of_table(f: &FunctionTable) -> Result<usize> {
    algebraic_degree(&f.interpolate()?)
}

/// All nondecreasing index tuples of length `m` over `0..k`.
fn basis_multisets(k: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m];
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..m).rev().find(|&i| cur[i] + 1 < k) else {
            return out;
        };
        let v = cur[pos] + 1;
        for c in cur[pos..].iter_mut() {
            *c = v;
        }
    }
}

/// An affine map `x ↦ L(x) + c` with `L` an F_p-linear map on digit
/// vectors (row-major `n × n` matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    field: Field,
    linear: Vec<Vec<u32>>,
    constant: Elem,
    permutation: bool,
}

impl AffineMap {
    pub fn new(field: &Field, linear: Vec<Vec<u32>>, constant: Elem) -> Result<AffineMap> {
        let n = field.n() as usize;
        if linear.len() != n || linear.iter().any(|r| r.len() != n) {
            return Err(Error::BadParameters(format!("linear part must be {n}×{n}")));
        }
        if linear.iter().flatten().any(|&c| c >= field.p()) || !field.contains(constant) {
            return Err(Error::BadParameters("entries must lie in F_p".into()));
        }
        let permutation = linalg::rank(&linear, field.p()) == n;
        Ok(AffineMap { field: field.clone(), linear, constant, permutation })
    }

    pub fn identity(field: &Field) -> AffineMap {
        let n = field.n() as usize;
        let linear = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        AffineMap { field: field.clone(), linear, constant: Elem::ZERO, permutation: true }
    }

    /// The constant map `x ↦ c`.
    pub fn constant(field: &Field, c: Elem) -> AffineMap {
        let n = field.n() as usize;
        AffineMap { field: field.clone(), linear: vec![vec![0; n]; n], constant: c, permutation: n == 0 }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn linear_part(&self) -> &[Vec<u32>] {
        &self.linear
    }

    pub fn constant_term(&self) -> Elem {
        self.constant
    }

    pub fn is_permutation(&self) -> bool {
        self.permutation
    }

    pub fn apply(&self, x: Elem) -> Elem {
        let f = &self.field;
        let y = linalg::mat_vec(&self.linear, &f.digits(x), f.p());
        f.add(f.from_digits(&y), self.constant)
    }

    pub fn to_table(&self) -> FunctionTable {
        FunctionTable::from_fn(&self.field, |x| self.apply(x))
    }
}
