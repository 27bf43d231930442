//! Exact arithmetic in F_{p^n} presented by an explicit monic irreducible
//! modulus.
//!
//! Elements are encoded by their index `Σ d_i p^i`, where `d_0..d_{n-1}` are
//! the coordinates in the power basis `1, α, ..., α^{n-1}` and `α` is a root
//! of the modulus. Fields up to `2^16` elements get log/antilog tables;
//! larger fields multiply by polynomial reduction.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp_poly;

/// Largest field any exhaustive routine will accept.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;
/// Fields at most this large use log/antilog, negation and trace tables.
pub const TABLE_LIMIT: u64 = 1 << 16;
/// Fields at most this large get a full `q × q` addition table (u16 entries).
const ADD_TABLE_LIMIT: u64 = 2896;

/// An element of a [`Field`], identified by its index in `[0, p^n)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    /// p^i for i in 0..=n
    pows: Vec<u32>,
    generator: Elem,
    trace_basis: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Option<Vec<u32>>,
    log: Option<Vec<u32>>,
    /// exp[k] = γ^k for k in 0..2(q-1)
    exp: Option<Vec<u32>>,
    trace: Option<Vec<u32>>,
}

/// The finite field F_{p^n}. Cheap to clone; immutable and shareable across
/// threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "p={},n={},mod={}", self.0.p, self.0.n, coeffs.join(","))
    }
}

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division, ascending.
pub fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            while x.is_multiple_of(d) {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Rabin's test: `m | x^{p^n} - x` and `gcd(x^{p^{n/r}} - x, m) = 1` for
/// every prime `r | n`.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let n = modulus.len() - 1;
    if n == 1 {
        return true;
    }
    let x: Vec<u32> = vec![0, 1];
    // frob[k] = x^{p^k} mod m
    let mut frob = vec![fp_poly::rem(&x, modulus, p)];
    for k in 1..=n {
        let next = fp_poly::pow_mod_poly(&frob[k - 1], p as u64, modulus, p);
        frob.push(next);
    }
    if fp_poly::sub(&frob[n], &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for r in prime_factors(n as u64) {
        let h = fp_poly::sub(&frob[n / r as usize], &x, p);
        if fp_poly::gcd(modulus, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

fn checked_size(p: u32, n: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q.checked_mul(p as u64)?;
        if q > u32::MAX as u64 {
            return None;
        }
    }
    Some(q)
}

impl Field {
    /// Builds F_{p^n} from an ascending coefficient list `c_0..c_n` with
    /// `c_n = 1`.
    pub fn new(p: u32, n: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::BadModulus("degree must be positive".into()));
        }
        if modulus.len() != n as usize + 1 {
            return Err(Error::BadModulus(format!(
                "expected {} coefficients, got {}",
                n + 1,
                modulus.len()
            )));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::BadModulus(format!("coefficient {c} is not reduced mod {p}")));
        }
        if modulus[n as usize] != 1 {
            return Err(Error::BadModulus("modulus is not monic".into()));
        }
        let q = match checked_size(p, n) {
            Some(q) if q <= MAX_FIELD_SIZE => q,
            Some(q) => return Err(Error::TooLarge { size: q, limit: MAX_FIELD_SIZE }),
            None => return Err(Error::TooLarge { size: u64::MAX, limit: MAX_FIELD_SIZE }),
        };
        if !is_irreducible(p, modulus) {
            return Err(Error::Reducible(modulus.to_vec()));
        }
        let pows: Vec<u32> = (0..=n).map(|i| p.pow(i)).collect();
        let mut inner = Inner {
            p,
            n,
            q: q as u32,
            modulus: modulus.to_vec(),
            pows,
            generator: Elem::ONE,
            trace_basis: Vec::new(),
            add: None,
            neg: None,
            log: None,
            exp: None,
            trace: None,
        };
        inner.generator = find_generator(&inner);
        inner.trace_basis = (0..n)
            .map(|i| {
                let alpha_i = Elem(inner.pows[i as usize]);
                let mut acc = Elem::ZERO;
                let mut y = alpha_i;
                for _ in 0..n {
                    acc = add_digits(&inner, acc, y);
                    y = pow_slow(&inner, y, p as u64);
                }
                // the trace lies in F_p, i.e. has index < p
                debug_assert!(acc.0 < p);
                acc.0
            })
            .collect();
        if q <= TABLE_LIMIT {
            build_tables(&mut inner);
        }
        Ok(Field(Arc::new(inner)))
    }

    /// The field with [`Field::default_modulus`].
    pub fn with_default_modulus(p: u32, n: u32) -> Result<Field> {
        let m = Field::default_modulus(p, n)?;
        Field::new(p, n, &m)
    }

    /// Smallest monic irreducible of degree `n` in lexicographic order of the
    /// ascending coefficient vector `(c_0, c_1, ..., c_{n-1})`.
    pub fn default_modulus(p: u32, n: u32) -> Result<Vec<u32>> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::BadModulus("degree must be positive".into()));
        }
        match checked_size(p, n) {
            Some(q) if q <= MAX_FIELD_SIZE => {}
            Some(q) => return Err(Error::TooLarge { size: q, limit: MAX_FIELD_SIZE }),
            None => return Err(Error::TooLarge { size: u64::MAX, limit: MAX_FIELD_SIZE }),
        }
        let mut digits = vec![0u32; n as usize];
        loop {
            let mut m = digits.clone();
            m.push(1);
            if is_irreducible(p, &m) {
                return Ok(m);
            }
            // increment with c_{n-1} varying fastest
            let mut k = n as usize;
            loop {
                if k == 0 {
                    unreachable!("irreducible polynomials exist in every degree");
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn n(&self) -> u32 {
        self.0.n
    }
    /// Field size p^n.
    #[inline]
    pub fn size(&self) -> usize {
        self.0.q as usize
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    /// p^i for `i <= n`.
    #[inline]
    pub fn p_pow(&self, i: u32) -> u32 {
        self.0.pows[i as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.0.q).map(Elem)
    }

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.0.q as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::Parse(format!("element index {index} out of range for {self}")))
        }
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.0.q
    }

    /// The prime-field element `i mod p`.
    #[inline]
    pub fn fp(&self, i: u32) -> Elem {
        Elem(i % self.0.p)
    }

    /// The class of the indeterminate, a root of the modulus.
    pub fn alpha(&self) -> Elem {
        if self.0.n == 1 {
            Elem((self.0.p - self.0.modulus[0]) % self.0.p)
        } else {
            Elem(self.0.p)
        }
    }

    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut out = vec![0; self.0.n as usize];
        self.digits_into(x, &mut out);
        out
    }

    pub fn digits_into(&self, x: Elem, out: &mut [u32]) {
        let p = self.0.p;
        let mut v = x.0;
        for d in out.iter_mut() {
            *d = v % p;
            v /= p;
        }
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let mut acc = 0u32;
        for &d in digits.iter().rev() {
            acc = acc * self.0.p + d % self.0.p;
        }
        Elem(acc)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if let Some(t) = &inner.add {
            return Elem(t[a.index() * inner.q as usize + b.index()] as u32);
        }
        add_digits(inner, a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        if let Some(t) = &inner.neg {
            return Elem(t[a.index()]);
        }
        neg_digits(inner, a)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        match (&inner.log, &inner.exp) {
            (Some(log), Some(exp)) => Elem(exp[(log[a.index()] + log[b.index()]) as usize]),
            _ => mul_slow(inner, a, b),
        }
    }

    /// `i · x` for an integer scalar `i` (taken mod p).
    #[inline]
    pub fn scale(&self, i: u32, x: Elem) -> Elem {
        self.mul(self.fp(i), x)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    /// Inverse with the convention `0^{-1} := 0`.
    #[inline]
    pub fn inv_or_zero(&self, a: Elem) -> Elem {
        if a.0 == 0 {
            Elem::ZERO
        } else {
            self.pow(a, self.0.q as u64 - 2)
        }
    }

    /// `x^e`, with `0^0 = 1`. Exponents are reduced mod `p^n - 1` for a
    /// nonzero base.
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        let order = inner.q as u64 - 1;
        match (&inner.log, &inner.exp) {
            (Some(log), Some(exp)) => {
                let k = (log[x.index()] as u64 * (e % order)) % order;
                Elem(exp[k as usize])
            }
            _ => pow_slow(inner, x, e % order),
        }
    }

    /// Absolute trace, returned as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: Elem) -> u32 {
        let inner = &*self.0;
        if let Some(t) = &inner.trace {
            return t[x.index()];
        }
        trace_linear(inner, x)
    }

    /// `x^{p^i}`.
    pub fn frobenius(&self, x: Elem, i: u32) -> Elem {
        let k = i % self.0.n;
        self.pow(x, self.0.pows[k as usize] as u64)
    }

    /// A generator of the multiplicative group. It is the first element, in
    /// index order, whose order is `p^n - 1`.
    pub fn primitive_element(&self) -> Elem {
        self.0.generator
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Elem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.0.q as u64 - 1;
        for r in prime_factors(ord) {
            while ord.is_multiple_of(r) && self.pow(x, ord / r) == Elem::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Renders `x` as a polynomial in `α`, highest degree first.
    pub fn render(&self, x: Elem) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let digits = self.digits(x);
        let mut terms = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let coeff = if d == 1 && i > 0 { String::new() } else { d.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "α".to_string(),
                _ => format!("α^{i}"),
            };
            terms.push(format!("{coeff}{var}"));
        }
        terms.join("+")
    }

    pub(crate) fn same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Parses `p=3,n=5,mod=1,2,0,0,0,1`; `mod` may be omitted to use the
    /// default modulus.
    fn from_str(s: &str) -> Result<Field> {
        let mut p = None;
        let mut n = None;
        let mut modulus: Option<Vec<u32>> = None;
        let mut in_mod = false;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some((key, value)) = tok.split_once('=') {
                in_mod = false;
                let value = value.trim();
                match key.trim() {
                    "p" => p = Some(parse_u32(value)?),
                    "n" => n = Some(parse_u32(value)?),
                    "mod" => {
                        modulus = Some(vec![parse_u32(value)?]);
                        in_mod = true;
                    }
                    other => return Err(Error::Parse(format!("unknown field key {other:?}"))),
                }
            } else if in_mod {
                modulus.as_mut().expect("set above").push(parse_u32(tok)?);
            } else {
                return Err(Error::Parse(format!("stray token {tok:?} in field spec")));
            }
        }
        let p = p.ok_or_else(|| Error::Parse("field spec is missing p".into()))?;
        let n = n.ok_or_else(|| Error::Parse("field spec is missing n".into()))?;
        match modulus {
            Some(m) => Field::new(p, n, &m),
            None => Field::with_default_modulus(p, n),
        }
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    s.parse().map_err(|_| Error::Parse(format!("expected an unsigned integer, got {s:?}")))
}

fn add_digits(inner: &Inner, a: Elem, b: Elem) -> Elem {
    let p = inner.p;
    let (mut x, mut y) = (a.0, b.0);
    let mut acc = 0u32;
    for i in 0..inner.n as usize {
        let d = (x % p + y % p) % p;
        acc += d * inner.pows[i];
        x /= p;
        y /= p;
    }
    Elem(acc)
}

fn neg_digits(inner: &Inner, a: Elem) -> Elem {
    let p = inner.p;
    let mut x = a.0;
    let mut acc = 0u32;
    for i in 0..inner.n as usize {
        let d = (p - x % p) % p;
        acc += d * inner.pows[i];
        x /= p;
    }
    Elem(acc)
}

fn to_poly(inner: &Inner, x: Elem) -> Vec<u32> {
    let mut out = Vec::with_capacity(inner.n as usize);
    let mut v = x.0;
    for _ in 0..inner.n {
        out.push(v % inner.p);
        v /= inner.p;
    }
    out
}

fn from_poly(inner: &Inner, poly: &[u32]) -> Elem {
    let mut acc = 0u32;
    for (i, &c) in poly.iter().enumerate() {
        acc += c * inner.pows[i];
    }
    Elem(acc)
}

fn mul_slow(inner: &Inner, a: Elem, b: Elem) -> Elem {
    let prod = fp_poly::mul_mod(&to_poly(inner, a), &to_poly(inner, b), &inner.modulus, inner.p);
    from_poly(inner, &prod)
}

fn pow_slow(inner: &Inner, x: Elem, mut e: u64) -> Elem {
    let mut acc = Elem::ONE;
    let mut base = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(inner, acc, base);
        }
        base = mul_slow(inner, base, base);
        e >>= 1;
    }
    acc
}

fn trace_linear(inner: &Inner, x: Elem) -> u32 {
    let p = inner.p as u64;
    let mut v = x.0;
    let mut acc = 0u64;
    for &t in &inner.trace_basis {
        acc += (v % inner.p) as u64 * t as u64;
        v /= inner.p;
    }
    (acc % p) as u32
}

fn find_generator(inner: &Inner) -> Elem {
    let order = inner.q as u64 - 1;
    let factors = prime_factors(order);
    (1..inner.q)
        .map(Elem)
        .find(|&g| factors.iter().all(|&r| pow_slow(inner, g, order / r) != Elem::ONE))
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(inner: &mut Inner) {
    let q = inner.q as usize;
    let order = q - 1;
    let mut exp = vec![0u32; 2 * order.max(1)];
    let mut log = vec![0u32; q];
    let mut cur = Elem::ONE;
    for (k, slot) in exp[..order].iter_mut().enumerate() {
        *slot = cur.0;
        log[cur.index()] = k as u32;
        cur = mul_slow(inner, cur, inner.generator);
    }
    exp.copy_within(0..order, order);
    inner.neg = Some((0..q as u32).map(|x| neg_digits(inner, Elem(x)).0).collect());
    inner.trace = Some((0..q as u32).map(|x| trace_linear(inner, Elem(x))).collect());
    if (q as u64) <= ADD_TABLE_LIMIT && inner.p != 2 {
        let mut table = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                table[a * q + b] = add_digits(inner, Elem(a as u32), Elem(b as u32)).0 as u16;
            }
        }
        inner.add = Some(table);
    }
    inner.log = Some(log);
    inner.exp = Some(exp);
}
