//! EA-equivalence `g = A_1 ∘ f ∘ A_2 + A_0` and the invariance of the
//! spectrum multiset and algebraic degree under it.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diff::spectrum;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::function::{algebraic_degree_of_table, AffineMap, FunctionTable};
use crate::linalg;

/// Draws allowed before [`random_affine_permutation`] gives up on finding an
/// invertible matrix.
pub const MAX_DRAWS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EATransform {
    a1: AffineMap,
    a2: AffineMap,
    a0: AffineMap,
}

impl EATransform {
    pub fn new(a1: AffineMap, a2: AffineMap, a0: AffineMap) -> Result<EATransform> {
        a1.field().same(a2.field())?;
        a1.field().same(a0.field())?;
        if !a1.is_permutation() || !a2.is_permutation() {
            return Err(Error::NotPermutation);
        }
        Ok(EATransform { a1, a2, a0 })
    }

    pub fn identity(field: &Field) -> EATransform {
        EATransform {
            a1: AffineMap::identity(field),
            a2: AffineMap::identity(field),
            a0: AffineMap::constant(field, Elem::ZERO),
        }
    }

    pub fn field(&self) -> &Field {
        self.a1.field()
    }

    pub fn outer(&self) -> &AffineMap {
        &self.a1
    }

    pub fn inner(&self) -> &AffineMap {
        &self.a2
    }

    pub fn offset(&self) -> &AffineMap {
        &self.a0
    }

    /// `x ↦ A_1(f(A_2(x))) + A_0(x)`.
    pub fn apply(&self, f: &FunctionTable) -> Result<FunctionTable> {
        let field = f.field();
        field.same(self.field())?;
        Ok(FunctionTable::from_fn(field, |x| {
            field.add(self.a1.apply(f.at(self.a2.apply(x))), self.a0.apply(x))
        }))
    }
}

fn random_matrix(field: &Field, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let n = field.n() as usize;
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..field.p())).collect()).collect()
}

fn random_constant(field: &Field, rng: &mut ChaCha8Rng) -> Elem {
    Elem(rng.gen_range(0..field.size() as u32))
}

/// Invertible matrix by rejection on rank, with the number of draws used.
fn invertible_matrix(field: &Field, rng: &mut ChaCha8Rng) -> Result<(Vec<Vec<u32>>, usize)> {
    for draw in 1..=MAX_DRAWS {
        let m = random_matrix(field, rng);
        if linalg::rank(&m, field.p()) == field.n() as usize {
            return Ok((m, draw));
        }
    }
    Err(Error::GuardExceeded(format!("no invertible matrix in {MAX_DRAWS} draws")))
}

/// A seeded affine permutation and the number of matrix draws it took.
pub fn random_affine_permutation_with_draws(field: &Field, seed: u64) -> Result<(AffineMap, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, draws) = invertible_matrix(field, &mut rng)?;
    let c = random_constant(field, &mut rng);
    Ok((AffineMap::new(field, m, c)?, draws))
}

pub fn random_affine_permutation(field: &Field, seed: u64) -> Result<AffineMap> {
    random_affine_permutation_with_draws(field, seed).map(|(m, _)| m)
}

/// A seeded affine map with arbitrary linear part.
pub fn random_affine_map(field: &Field, seed: u64) -> Result<AffineMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_matrix(field, &mut rng);
    let c = random_constant(field, &mut rng);
    AffineMap::new(field, m, c)
}

pub fn random_ea_transform(field: &Field, seed: u64) -> Result<EATransform> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: [u64; 3] = rng.gen();
    EATransform::new(
        random_affine_permutation(field, seeds[0])?,
        random_affine_permutation(field, seeds[1])?,
        random_affine_map(field, seeds[2])?,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub spectrum_f: BTreeMap<u32, u64>,
    pub spectrum_g: BTreeMap<u32, u64>,
    pub spectrum_equal: bool,
    pub degree_f: usize,
    pub degree_g: usize,
    /// Degree is only compared when `d°(f) ≥ 2`; otherwise `None`.
    pub degree_equal: Option<bool>,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.spectrum_equal && self.degree_equal != Some(false)
    }
}

pub fn check_invariance(f: &FunctionTable, t: &EATransform) -> Result<InvarianceReport> {
    let g = t.apply(f)?;
    let spectrum_f = spectrum(f).multiset;
    let spectrum_g = spectrum(&g).multiset;
    let degree_f = degree_or_zero(f)?;
    let degree_g = degree_or_zero(&g)?;
    Ok(InvarianceReport {
        spectrum_equal: spectrum_f == spectrum_g,
        spectrum_f,
        spectrum_g,
        degree_f,
        degree_g,
        degree_equal: (degree_f >= 2).then_some(degree_f == degree_g),
    })
}

fn degree_or_zero(f: &FunctionTable) -> Result<usize> {
    match algebraic_degree_of_table(f) {
        Err(Error::ZeroFunction) => Ok(0),
        other => other,
    }
}

/// GAPN status of a permutation and of its compositional inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InversePair {
    pub f_gapn: bool,
    pub inverse_gapn: bool,
}

/// The graph of `f^{-1}` is a coordinate swap of the graph of `f`, so the
/// two are CCZ-equivalent; this reports whether GAPN survives the swap.
pub fn ccz_inverse_check(f: &FunctionTable) -> Result<InversePair> {
    let inv = f.invert_permutation()?;
    Ok(InversePair { f_gapn: crate::diff::is_gapn(f), inverse_gapn: crate::diff::is_gapn(&inv) })
}
