//! Polynomials over GF(2), cyclotomic polynomials and the factorization of
//! `Phi_p(x)` into irreducibles indexed by 2-cyclotomic cosets.
//!
//! Coefficients are packed lowest degree first into 64-bit words. The textual
//! form is a little-endian 0/1 string, so `x^3 + x + 1` is `"1101"`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{ensure_odd_prime, multiplicative_order};
use crate::error::{Error, Result};
use crate::gf2ext::{FieldCtx, FieldElem, MAX_EXTENSION_DEGREE};

/// A polynomial over GF(2). The zero polynomial has no words; otherwise the
/// highest word is nonzero.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    words: Vec<u64>,
}

fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let (word_shift, bit_shift) = (shift / 64, shift % 64);
    let needed = src.len() + word_shift + 1;
    if dst.len() < needed {
        dst.resize(needed, 0);
    }
    for (i, &w) in src.iter().enumerate() {
        dst[i + word_shift] ^= w << bit_shift;
        if bit_shift != 0 {
            dst[i + word_shift + 1] ^= w >> (64 - bit_shift);
        }
    }
}

fn degree_of(words: &[u64]) -> Option<usize> {
    let top = words.iter().rposition(|&w| w != 0)?;
    Some(64 * top + 63 - words[top].leading_zeros() as usize)
}

impl Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(n: usize) -> Self {
        let mut words = vec![0; n / 64 + 1];
        words[n / 64] = 1 << (n % 64);
        Self { words }
    }

    fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn from_u128(bits: u128) -> Self {
        Self::from_words(vec![bits as u64, (bits >> 64) as u64])
    }

    /// The packed coefficients, or `None` if the degree exceeds 127.
    pub fn to_u128(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }

    /// Builds a polynomial from coefficients listed lowest degree first.
    pub fn from_coeffs<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        let mut words = Vec::new();
        for (i, c) in coeffs.into_iter().enumerate() {
            if i % 64 == 0 {
                words.push(0);
            }
            if c {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::from_words(words)
    }

    /// `1 + x + ... + x^(n-1)`.
    pub fn all_ones(n: usize) -> Self {
        Self::from_coeffs(std::iter::repeat_n(true, n))
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        degree_of(&self.words)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Exponents with a nonzero coefficient, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| (w >> b) & 1 == 1).map(move |b| 64 * wi + b))
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn square(&self) -> Self {
        let mut out = vec![0u64; 2 * self.words.len()];
        for (i, &w) in self.words.iter().enumerate() {
            for b in 0..64 {
                if (w >> b) & 1 == 1 {
                    let k = 2 * (64 * i + b);
                    out[k / 64] |= 1 << (k % 64);
                }
            }
        }
        Self::from_words(out)
    }

    /// Quotient and remainder with `self = q * m + r`, `deg r < deg m`.
    pub fn divrem(&self, m: &Poly) -> Result<(Poly, Poly)> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.words.clone();
        let mut q = Vec::new();
        while let Some(dr) = degree_of(&r).filter(|&dr| dr >= dm) {
            let shift = dr - dm;
            xor_shifted(&mut r, &m.words, shift);
            if q.len() <= shift / 64 {
                q.resize(shift / 64 + 1, 0);
            }
            q[shift / 64] ^= 1 << (shift % 64);
        }
        Ok((Poly::from_words(q), Poly::from_words(r)))
    }

    pub fn rem(&self, m: &Poly) -> Result<Poly> {
        Ok(self.divrem(m)?.1)
    }

    /// Monic gcd by Euclid's algorithm.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, mut exp: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one().rem(m)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            base = base.square().rem(m)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Evaluates the polynomial at a field element.
    pub fn eval(&self, at: FieldElem) -> FieldElem {
        let ctx = at.ctx();
        let mut acc = ctx.zero();
        if let Some(deg) = self.degree() {
            for i in (0..=deg).rev() {
                acc *= at;
                if self.coeff(i) {
                    acc += ctx.one();
                }
            }
        }
        acc
    }

    /// `x^(2^k) mod m`.
    fn frobenius_power_of_x(k: usize, m: &Poly) -> Result<Poly> {
        let mut r = Poly::x().rem(m)?;
        for _ in 0..k {
            r = r.square().rem(m)?;
        }
        Ok(r)
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree().filter(|&n| n >= 1) else {
            return false;
        };
        if n == 1 {
            return true;
        }
        let Ok(top) = Self::frobenius_power_of_x(n, self) else {
            return false;
        };
        if top != Poly::x().rem(self).unwrap_or_default() {
            return false;
        }
        let mut prime_divisors: Vec<usize> =
            (2..=n).filter(|q| n % q == 0 && crate::arith::is_prime(*q as u64)).collect();
        prime_divisors.dedup();
        prime_divisors.into_iter().all(|q| {
            let xq = Self::frobenius_power_of_x(n / q, self).unwrap_or_default();
            self.gcd(&(&xq + &Poly::x())).map(|g| g.is_one()).unwrap_or(false)
        })
    }

    /// An irreducible factor of least degree. Returns `self` when irreducible.
    pub fn smallest_factor(&self) -> Result<Poly> {
        let n = self
            .degree()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse("constant polynomials have no irreducible factors".into()))?;
        let mut xpow = Poly::x().rem(self)?;
        for i in 1..=n / 2 {
            xpow = xpow.square().rem(self)?;
            let g = self.gcd(&(&xpow + &Poly::x()))?;
            if !g.is_one() {
                return Ok(split_equal_degree(g, i));
            }
        }
        Ok(self.clone())
    }

    /// The first irreducible polynomial of the given degree in increasing
    /// order of integer encoding.
    pub fn first_irreducible(degree: usize) -> Result<Poly> {
        if degree == 0 || degree > MAX_EXTENSION_DEGREE {
            return Err(Error::UnsupportedDegree { degree: Some(degree), max: MAX_EXTENSION_DEGREE });
        }
        let lead = 1u128 << degree;
        let mut low = 1u128;
        loop {
            let cand = Poly::from_u128(lead | low);
            if cand.is_irreducible() {
                return Ok(cand);
            }
            low += 2;
        }
    }
}

// `g` is a product of distinct irreducibles of degree `d` (or the square-free
// part collapsed to one factor). Splits with trace maps until one factor remains.
fn split_equal_degree(g: Poly, d: usize) -> Poly {
    if g.degree() == Some(d) {
        return g;
    }
    let mut seed = 2u128;
    loop {
        let a = Poly::from_u128(seed).rem(&g).expect("g is nonzero");
        let mut term = a.clone();
        let mut trace = a;
        for _ in 1..d {
            term = term.square().rem(&g).expect("g is nonzero");
            trace = &trace + &term;
        }
        let h = g.gcd(&trace).expect("g is nonzero");
        if !h.is_one() && h != g {
            let (q, _) = g.divrem(&h).expect("h is nonzero");
            let smaller = if h.degree() <= q.degree() { h } else { q };
            return split_equal_degree(smaller, d);
        }
        seed += 1;
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut words = self.words.clone();
        if words.len() < rhs.words.len() {
            words.resize(rhs.words.len(), 0);
        }
        for (w, r) in words.iter_mut().zip(&rhs.words) {
            *w ^= r;
        }
        Poly::from_words(words)
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Vec::new();
        for i in rhs.support() {
            xor_shifted(&mut out, &self.words, i);
        }
        Poly::from_words(out)
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree() {
            None => f.write_str("0"),
            Some(d) => (0..=d).try_for_each(|i| f.write_str(if self.coeff(i) { "1" } else { "0" })),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).rev().filter(|&i| self.coeff(i)) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("invalid coefficient {c:?} in polynomial string {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Poly::from_coeffs)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One orbit of multiplication by 2 on the nonzero residues mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coset {
    /// Sorted residues.
    pub elements: Vec<u64>,
    pub representative: u64,
}

impl Coset {
    pub fn contains(&self, r: u64) -> bool {
        self.elements.binary_search(&r).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The coset `{p - c : c in self}`.
    pub fn negated(&self, p: u64) -> Coset {
        let mut elements: Vec<u64> = self.elements.iter().map(|&c| p - c).collect();
        elements.sort_unstable();
        Coset { representative: elements[0], elements }
    }
}

/// Partition of `{1, ..., p-1}` into 2-cyclotomic cosets, ordered by representative.
pub fn cyclotomic_cosets(p: u64) -> Result<Vec<Coset>> {
    ensure_odd_prime(p)?;
    let mut seen = vec![false; p as usize];
    let mut out = Vec::new();
    for r in 1..p {
        if seen[r as usize] {
            continue;
        }
        let mut elements = Vec::new();
        let mut c = r;
        while !seen[c as usize] {
            seen[c as usize] = true;
            elements.push(c);
            c = c * 2 % p;
        }
        elements.sort_unstable();
        out.push(Coset { representative: r, elements });
    }
    Ok(out)
}

/// `Phi_p(x) = 1 + x + ... + x^(p-1)` for prime `p`.
pub fn cyclotomic_polynomial(p: u64) -> Result<Poly> {
    ensure_odd_prime(p)?;
    Ok(Poly::all_ones(p as usize))
}

/// An irreducible factor of `Phi_p(x)` over GF(2) together with the exponent
/// coset of its roots relative to the fixed primitive root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactor {
    pub poly: Poly,
    pub coset: Coset,
}

/// Field and primitive `p`-th root of unity from which the cyclotomic
/// factors are expanded.
#[derive(Debug, Clone)]
pub struct CyclotomicSplitting {
    pub p: u64,
    pub d: usize,
    pub field: FieldCtx,
    /// Element of multiplicative order `p` in `GF(2^d)`.
    pub zeta: FieldElem,
    pub factors: Vec<CyclotomicFactor>,
}

/// Factors `Phi_p(x)` over GF(2) by expanding `prod_{c in C} (x - zeta^c)`
/// for every coset `C`, with `zeta` a fixed element of order `p` in `GF(2^d)`.
pub fn split_cyclotomic(p: u64) -> Result<CyclotomicSplitting> {
    let d = multiplicative_order(2, p)? as usize;
    if d > MAX_EXTENSION_DEGREE {
        return Err(Error::UnsupportedDegree { degree: Some(d), max: MAX_EXTENSION_DEGREE });
    }
    let field = FieldCtx::new(&Poly::first_irreducible(d)?)?;
    let cofactor = field.group_order() / p as u128;
    let zeta = (2u128..)
        .map(|rep| field.elem(rep).pow(cofactor))
        .find(|z| !z.is_one())
        .expect("GF(2^d)* is cyclic of order divisible by p");
    let factors = cyclotomic_cosets(p)?
        .into_iter()
        .map(|coset| {
            let roots: Vec<FieldElem> = coset.elements.iter().map(|&c| zeta.pow(c as u128)).collect();
            let poly =
                crate::gf2ext::product_of_linear_factors(&field, &roots).expect("coset products are Frobenius stable");
            CyclotomicFactor { poly, coset }
        })
        .collect();
    Ok(CyclotomicSplitting { p, d, field, zeta, factors })
}

/// Irreducible factors of `Phi_p(x)` over GF(2), ordered by coset representative.
pub fn factor_cyclotomic(p: u64) -> Result<Vec<CyclotomicFactor>> {
    Ok(split_cyclotomic(p)?.factors)
}
