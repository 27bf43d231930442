//! The generalized derivative `D̃_a f(x) = Σ_{i∈F_p} f(x + ia)`, the counts
//! `Ñ_f(a, b)`, the GAPN test and the algebraic criteria for functions of
//! algebraic degree at most p.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{gcd, Elem, Field};
use crate::function::{algebraic_degree, m_fold_unchecked, FunctionTable};
use crate::par;

/// `i·a` for `i = 0..p`.
fn multiples(field: &Field, a: Elem) -> Vec<Elem> {
    (0..field.p()).map(|i| field.scale(i, a)).collect()
}

#[inline]
fn d_tilde_with(f: &FunctionTable, mults: &[Elem], x: Elem) -> Elem {
    let field = f.field();
    mults.iter().fold(Elem::ZERO, |acc, &ia| field.add(acc, f.at(field.add(x, ia))))
}

/// `D̃_a f(x)` at a single point.
pub fn d_tilde_at(f: &FunctionTable, a: Elem, x: Elem) -> Elem {
    d_tilde_with(f, &multiples(f.field(), a), x)
}

/// The table of `x ↦ Σ_{i∈F_p} f(x + ia)`.
pub fn d_tilde(f: &FunctionTable, a: Elem) -> FunctionTable {
    let mults = multiples(f.field(), a);
    FunctionTable::from_fn(f.field(), |x| d_tilde_with(f, &mults, x))
}

/// Histogram of `D̃_a f` indexed by `b`.
fn row_histogram(f: &FunctionTable, a: Elem) -> Vec<u32> {
    let field = f.field();
    let mults = multiples(field, a);
    let mut hist = vec![0u32; field.size()];
    for x in field.elements() {
        hist[d_tilde_with(f, &mults, x).index()] += 1;
    }
    hist
}

/// `Ñ_f(a, b) = #{x : D̃_a f(x) = b}`.
pub fn n_tilde(f: &FunctionTable, a: Elem, b: Elem) -> usize {
    let mults = multiples(f.field(), a);
    f.field().elements().filter(|&x| d_tilde_with(f, &mults, x) == b).count()
}

/// One row of the spectrum: the nonzero counts `b ↦ Ñ_f(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRow {
    pub a: Elem,
    pub counts: Vec<(Elem, u32)>,
}

/// All counts `Ñ_f(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub field: Field,
    /// Rows for `a ≠ 0`, in index order.
    pub rows: Vec<SpectrumRow>,
    /// The `a = 0` row, reported apart from the GAPN criterion.
    pub zero_row: SpectrumRow,
    /// `count ↦ #{(a, b) : a ≠ 0, Ñ_f(a, b) = count}`, zero counts included.
    pub multiset: BTreeMap<u32, u64>,
    pub max_count: u32,
    pub is_gapn: bool,
}

fn sparse_row(a: Elem, hist: &[u32]) -> SpectrumRow {
    let counts = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(b, &c)| (Elem(b as u32), c))
        .collect();
    SpectrumRow { a, counts }
}

/// Exhaustive spectrum; one pass per `a`, parallel over `a`.
pub fn spectrum(f: &FunctionTable) -> SpectrumReport {
    let field = f.field();
    let q = field.size();
    let rows: Vec<SpectrumRow> = par::map(q - 1, |k| {
        let a = Elem(k as u32 + 1);
        sparse_row(a, &row_histogram(f, a))
    });
    let zero_row = sparse_row(Elem::ZERO, &row_histogram(f, Elem::ZERO));
    let mut multiset: BTreeMap<u32, u64> = BTreeMap::new();
    let mut nonzero_cells = 0u64;
    for row in &rows {
        for &(_, c) in &row.counts {
            *multiset.entry(c).or_default() += 1;
            nonzero_cells += 1;
        }
    }
    let zero_cells = (q as u64 - 1) * q as u64 - nonzero_cells;
    if zero_cells > 0 {
        multiset.insert(0, zero_cells);
    }
    let max_count = multiset.keys().next_back().copied().unwrap_or(0);
    SpectrumReport {
        field: field.clone(),
        rows,
        zero_row,
        multiset,
        max_count,
        is_gapn: max_count <= field.p(),
    }
}

/// `Ñ_f(a, b) ≤ p` for all `a ≠ 0`; stops at the first bad row.
pub fn is_gapn(f: &FunctionTable) -> bool {
    let field = f.field();
    let p = field.p();
    par::all(field.size() - 1, |k| {
        row_histogram(f, Elem(k as u32 + 1)).iter().all(|&c| c <= p)
    })
}

/// GAPN test for `x^d` from the single row `a = 1`: for a monomial,
/// `D̃_a f(x) = a^d D̃_1 f(x/a)`, so every row is a relabelling of row 1.
pub fn is_gapn_monomial(field: &Field, d: u64) -> bool {
    let f = crate::function::monomial(field, d).tabulate();
    row_histogram(&f, Elem::ONE).iter().all(|&c| c <= field.p())
}

/// `B̃_f(x, a) = D̃_a f(x) - D̃_a f(0)`.
pub fn b_tilde(f: &FunctionTable, x: Elem, a: Elem) -> Elem {
    let mults = multiples(f.field(), a);
    f.field().sub(d_tilde_with(f, &mults, x), d_tilde_with(f, &mults, Elem::ZERO))
}

/// `B̃_f(x, a)` by its definition `[f]^p(x, a, ..., a)`.
pub fn b_tilde_by_definition(f: &FunctionTable, x: Elem, a: Elem) -> Elem {
    let p = f.field().p() as usize;
    let mut xs = vec![a; p];
    xs[0] = x;
    m_fold_unchecked(f, &xs)
}

/// Degree of a table, with the zero function counted as degree 0.
fn degree_or_zero(f: &FunctionTable) -> Result<usize> {
    if f.is_zero() {
        return Ok(0);
    }
    algebraic_degree(&f.interpolate()?)
}

fn require_low_degree(f: &FunctionTable) -> Result<()> {
    let p = f.field().p();
    let degree = degree_or_zero(f)?;
    if degree > p as usize {
        return Err(Error::DegreeTooHigh { degree, p });
    }
    Ok(())
}

/// For `d°(f) ≤ p`: GAPN iff `{x : B̃_f(x, a) = 0} = F_p a` for every
/// `a ≠ 0`.
pub fn gapn_kernel_test(f: &FunctionTable) -> Result<bool> {
    require_low_degree(f)?;
    let field = f.field();
    let p = field.p() as usize;
    Ok(par::all(field.size() - 1, |k| {
        let a = Elem(k as u32 + 1);
        let mults = multiples(field, a);
        let base = d_tilde_with(f, &mults, Elem::ZERO);
        let mut kernel = 0usize;
        for x in field.elements() {
            if d_tilde_with(f, &mults, x) == base {
                // F_p a is always inside the kernel; anything more is a failure
                kernel += 1;
                if kernel > p {
                    return false;
                }
            }
        }
        kernel == p
    }))
}

/// For `d°(f) ≤ p`, every nonzero count in row `a` equals
/// `Ñ_f(a, D̃_a f(0))`. Checks that structure and returns the verdict
/// `Ñ_f(a, D̃_a f(0)) ≤ p` for all `a ≠ 0`.
pub fn translation_criterion_test(f: &FunctionTable) -> Result<bool> {
    require_low_degree(f)?;
    let field = f.field();
    let p = field.p();
    let rows = par::map(field.size() - 1, |k| {
        let a = Elem(k as u32 + 1);
        let hist = row_histogram(f, a);
        let anchor = hist[d_tilde_at(f, a, Elem::ZERO).index()];
        let uniform = hist.iter().all(|&c| c == 0 || c == anchor);
        (a, uniform, anchor)
    });
    if let Some((a, _, _)) = rows.iter().find(|r| !r.1) {
        return Err(Error::CriterionViolated(format!(
            "row a = {a} has a nonzero count different from Ñ_f(a, D̃_a f(0))"
        )));
    }
    Ok(rows.iter().all(|&(_, _, anchor)| anchor <= p))
}

/// Fibre structure of `φ(a) = a^{p^i - 1} - a^{p^{n-i} - 1}` on `F^×`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldReport {
    /// Every image point has exactly `p - 1` preimages.
    pub holds: bool,
    pub image_size: usize,
}

pub fn binomial_fold_test(field: &Field, i: u32) -> Result<FoldReport> {
    let (p, n) = (field.p(), field.n());
    if p == 2 || n % 2 == 0 || i == 0 || gcd(i as u64, n as u64) != 1 {
        return Err(Error::BadParameters(format!(
            "fold test needs odd p, odd n, i > 0 and gcd(i, n) = 1 (p={p}, n={n}, i={i})"
        )));
    }
    let e1 = field.p_pow(i % n) as u64 - 1;
    let e2 = field.p_pow((n - i % n) % n) as u64 - 1;
    let mut hist = vec![0u32; field.size()];
    for a in field.nonzero_elements() {
        let v = field.sub(field.pow(a, e1), field.pow(a, e2));
        hist[v.index()] += 1;
    }
    let image: Vec<u32> = hist.into_iter().filter(|&c| c > 0).collect();
    Ok(FoldReport { holds: image.iter().all(|&c| c == p - 1), image_size: image.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{generalized_gold, inverse_permutation, monomial};

    fn reference_field() -> Field {
        Field::new(3, 5, &[1, 2, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn d_tilde_small_cases() {
        let f2 = Field::with_default_modulus(2, 3).unwrap();
        let t = monomial(&f2, 3).tabulate();
        for a in f2.elements() {
            let d = d_tilde(&t, a);
            for x in f2.elements() {
                assert_eq!(d.at(x), f2.add(t.at(x), t.at(f2.add(x, a))));
            }
        }
        let f = reference_field();
        let t = monomial(&f, 17).tabulate();
        assert!(d_tilde(&t, Elem::ZERO).is_zero());
        for a in f.elements() {
            assert_eq!(d_tilde_at(&t, a, Elem::ZERO), Elem::ZERO);
        }
    }

    #[test]
    fn x17_counts() {
        let f = reference_field();
        let t = monomial(&f, 17).tabulate();
        assert_eq!(n_tilde(&t, Elem::ONE, Elem::ZERO), 3);
        assert_eq!(n_tilde(&t, Elem::ONE, Elem(49)), 6);
        assert!(!is_gapn(&t));
        // solutions are 2α + j and α^4 + α^3 + j
        let d = d_tilde(&t, Elem::ONE);
        let mut sols: Vec<Elem> = f.elements().filter(|&x| d.at(x) == Elem(49)).collect();
        sols.sort();
        let mut expected: Vec<Elem> = (0..3)
            .flat_map(|j| [f.add(Elem(6), Elem(j)), f.add(Elem(81 + 27), Elem(j))])
            .collect();
        expected.sort();
        assert_eq!(sols, expected);
    }

    #[test]
    fn linear_counts() {
        let f = Field::with_default_modulus(3, 3).unwrap();
        let t = FunctionTable::from_fn(&f, |x| f.add(x, f.frobenius(x, 1)));
        let s = spectrum(&t);
        for row in &s.rows {
            assert_eq!(row.counts, vec![(Elem::ZERO, 27)]);
        }
        assert!(!s.is_gapn);
    }

    #[test]
    fn inverse_permutation_verdicts() {
        let f = Field::with_default_modulus(3, 3).unwrap();
        assert!(is_gapn(&inverse_permutation(&f).tabulate()));
        let f24 = Field::with_default_modulus(2, 4).unwrap();
        assert!(!is_gapn(&inverse_permutation(&f24).tabulate()));
        let f23 = Field::with_default_modulus(2, 3).unwrap();
        assert!(is_gapn(&inverse_permutation(&f23).tabulate()));
    }

    #[test]
    fn spectrum_invariants() {
        let f = reference_field();
        for d in [11u64, 17, 241, 2, 5] {
            let t = monomial(&f, d).tabulate();
            let s = spectrum(&t);
            for row in &s.rows {
                assert_eq!(row.counts.iter().map(|c| c.1 as usize).sum::<usize>(), 243);
                assert!(row.counts.iter().all(|c| c.1 % 3 == 0));
            }
            assert_eq!(s.multiset.values().sum::<u64>(), 242 * 243);
            assert_eq!(s.is_gapn, is_gapn(&t));
            assert_eq!(s.is_gapn, is_gapn_monomial(&f, d));
            assert_eq!(s.zero_row.counts, vec![(Elem::ZERO, 243)]);
        }
    }

    #[test]
    fn b_tilde_routes_agree() {
        let f = Field::with_default_modulus(3, 3).unwrap();
        let t = monomial(&f, 13).tabulate();
        for x in f.elements() {
            for a in f.elements() {
                assert_eq!(b_tilde(&t, x, a), b_tilde_by_definition(&t, x, a));
            }
        }
    }

    #[test]
    fn gold_b_tilde_closed_form() {
        // B̃_f(x, a) = -a^{p-1} x^{p^i} + a^{p^i + p - 2} x for x^{p^i + p - 1}
        let f = Field::with_default_modulus(3, 3).unwrap();
        let t = generalized_gold(&f, 1).unwrap().tabulate();
        for x in f.elements() {
            for a in f.nonzero_elements() {
                let expected = f.add(
                    f.neg(f.mul(f.pow(a, 2), f.frobenius(x, 1))),
                    f.mul(f.pow(a, 4), x),
                );
                assert_eq!(b_tilde(&t, x, a), expected);
            }
        }
    }

    #[test]
    fn kernel_and_translation_examples() {
        let f = reference_field();
        assert!(gapn_kernel_test(&monomial(&f, 11).tabulate()).unwrap());
        assert!(gapn_kernel_test(&monomial(&f, 19).tabulate()).unwrap());
        let lin = FunctionTable::identity(&f);
        assert!(!gapn_kernel_test(&lin).unwrap());
        assert!(translation_criterion_test(&monomial(&f, 11).tabulate()).unwrap());
        assert!(matches!(
            translation_criterion_test(&monomial(&f, 17).tabulate()),
            Err(Error::DegreeTooHigh { degree: 5, p: 3 })
        ));
    }

    #[test]
    fn fold_examples() {
        let f = reference_field();
        let r = binomial_fold_test(&f, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.image_size, 121);
        assert!(binomial_fold_test(&Field::with_default_modulus(3, 3).unwrap(), 1).unwrap().holds);
        assert!(binomial_fold_test(&Field::with_default_modulus(3, 4).unwrap(), 1).is_err());
        assert!(binomial_fold_test(&f, 5).is_err());
    }
}
