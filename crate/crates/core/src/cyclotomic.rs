//! Exact elements of `Z[ζ_p]`.
//!
//! A value is `Σ_{j<p} c_j ζ^j`, stored canonically with `c_{p-1} = 0` (the
//! relation `Σ_j ζ^j = 0` lets any coordinate vector be shifted by a
//! constant). Canonical coordinates are unique, so equality is coordinate
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    coords: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> CyclotomicInt {
        CyclotomicInt { coords: vec![0; p as usize] }
    }

    pub fn from_int(p: u32, v: i64) -> CyclotomicInt {
        let mut z = CyclotomicInt::zero(p);
        z.coords[0] = v;
        z
    }

    /// `ζ^k`.
    pub fn zeta_pow(p: u32, k: u64) -> CyclotomicInt {
        let mut z = CyclotomicInt::zero(p);
        z.coords[(k % p as u64) as usize] = 1;
        z.canonicalize()
    }

    /// `Σ_j hist[j] ζ^j`.
    pub fn from_coords(coords: Vec<i64>) -> CyclotomicInt {
        assert!(!coords.is_empty(), "need at least one coordinate");
        CyclotomicInt { coords }.canonicalize()
    }

    fn canonicalize(mut self) -> CyclotomicInt {
        let last = *self.coords.last().expect("p >= 2");
        if last != 0 {
            for c in self.coords.iter_mut() {
                *c -= last;
            }
        }
        self
    }

    pub fn p(&self) -> u32 {
        self.coords.len() as u32
    }

    /// Canonical coordinates `c_0..c_{p-1}` (with `c_{p-1} = 0`).
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coords[1..].iter().all(|&c| c == 0).then_some(self.coords[0])
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CyclotomicInt {
        let p = self.coords.len();
        let coords = (0..p).map(|j| self.coords[(p - j) % p]).collect();
        CyclotomicInt { coords }.canonicalize()
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `|z|² = z · conj(z)` as a rational integer, computed in i128. `None`
    /// when the product is not rational (possible for p >= 5).
    pub fn norm_squared(&self) -> Option<i128> {
        let mut acc = vec![0i128; self.coords.len()];
        self.add_norm_into(&mut acc);
        rational_part(&acc)
    }

    /// Adds the coordinates of `z · conj(z)` to `acc`, uncanonicalized.
    pub(crate) fn add_norm_into(&self, acc: &mut [i128]) {
        let p = self.coords.len();
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in self.coords.iter().enumerate() {
                // conj(z) has b at exponent -j
                acc[(i + p - j) % p] += a as i128 * b as i128;
            }
        }
    }
}

/// The integer `Σ_j acc[j] ζ^j` equals, if it is rational.
pub(crate) fn rational_part(acc: &[i128]) -> Option<i128> {
    let p = acc.len();
    let last = acc[p - 1];
    acc.iter().take(p - 1).skip(1).all(|&c| c == last).then_some(acc[0] - last)
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p(), rhs.p(), "mixed cyclotomic rings");
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        CyclotomicInt { coords }.canonicalize()
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p(), rhs.p(), "mixed cyclotomic rings");
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        CyclotomicInt { coords }.canonicalize()
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p(), rhs.p(), "mixed cyclotomic rings");
        let p = self.coords.len();
        let mut coords = vec![0i64; p];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coords.iter().enumerate() {
                coords[(i + j) % p] += a * b;
            }
        }
        CyclotomicInt { coords }.canonicalize()
    }
}

impl PartialOrd for CyclotomicInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rational values first, ordered numerically; then the rest by coordinates.
impl Ord for CyclotomicInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.as_integer(), other.as_integer()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.coords.cmp(&other.coords),
        }
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (j, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first && c > 0 {
                write!(f, "+")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}ζ")?,
                _ => write!(f, "{c}ζ^{j}")?,
            }
        }
        Ok(())
    }
}
