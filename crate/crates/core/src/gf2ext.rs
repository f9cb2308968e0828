//! Extension fields `GF(2^t)` in a polynomial basis.
//!
//! A [`FieldCtx`] is a validated irreducible modulus of degree at most 127;
//! elements are packed into a `u128` and carry their (copyable) context, so
//! the usual operators work on them directly.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub};

use serde::{Serialize, Serializer};

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::gf2poly::Poly;

pub const MAX_EXTENSION_DEGREE: usize = 127;

/// Largest extension degree for which element orders are computed.
pub const MAX_ORDER_DEGREE: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    modulus: u128,
    degree: u32,
}

impl FieldCtx {
    /// Validates `modulus` and builds `GF(2)[x] / (modulus)`.
    pub fn new(modulus: &Poly) -> Result<Self> {
        let degree = modulus.degree();
        let bits = modulus
            .to_u128()
            .filter(|_| matches!(degree, Some(1..=MAX_EXTENSION_DEGREE)))
            .ok_or(Error::UnsupportedDegree { degree, max: MAX_EXTENSION_DEGREE })?;
        if !modulus.is_irreducible() {
            return Err(Error::ReducibleModulus { modulus: modulus.clone(), factor: modulus.smallest_factor()? });
        }
        Ok(Self { modulus: bits, degree: degree.unwrap() as u32 })
    }

    /// `GF(2)` itself, modulus `x`.
    pub fn prime_field() -> Self {
        Self { modulus: 0b10, degree: 1 }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn modulus(&self) -> Poly {
        Poly::from_u128(self.modulus)
    }

    /// `2^t - 1`.
    pub fn group_order(&self) -> u128 {
        (1u128 << self.degree) - 1
    }

    pub fn elem(&self, rep: u128) -> FieldElem {
        let reduced = if rep >> self.degree == 0 {
            rep
        } else {
            Poly::from_u128(rep).rem(&self.modulus()).unwrap().to_u128().unwrap()
        };
        FieldElem { ctx: *self, rep: reduced }
    }

    /// The residue class of a polynomial.
    pub fn from_poly(&self, poly: &Poly) -> FieldElem {
        let r = poly.rem(&self.modulus()).expect("modulus is nonzero");
        FieldElem { ctx: *self, rep: r.to_u128().unwrap() }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { ctx: *self, rep: 0 }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { ctx: *self, rep: 1 }
    }

    /// The class of `x`, i.e. a root of the modulus.
    pub fn root(&self) -> FieldElem {
        self.elem(0b10)
    }

    /// Every element in increasing order of encoding. Only sensible for small `t`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..=self.group_order()).map(|rep| FieldElem { ctx: *self, rep })
    }

    /// The first element (by encoding) whose multiplicative order is `2^t - 1`.
    pub fn find_generator(&self) -> Result<FieldElem> {
        if self.degree() > MAX_ORDER_DEGREE {
            return Err(Error::OrderUnsupported(self.degree()));
        }
        let target = self.group_order();
        let primes: Vec<u128> = factorize(target as u64).into_iter().map(|(q, _)| q as u128).collect();
        Ok((1..=target)
            .map(|rep| self.elem(rep))
            .find(|e| primes.iter().all(|&q| !e.pow(target / q).is_one()))
            .expect("the multiplicative group of a finite field is cyclic"))
    }

    /// Parses a little-endian bit string of at most `t` characters.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let poly: Poly = s.parse()?;
        if poly.degree().is_some_and(|d| d >= self.degree()) {
            return Err(Error::Parse(format!("{s:?} is not reduced modulo {}", self.modulus())));
        }
        Ok(self.from_poly(&poly))
    }

    fn mul_reps(&self, a: u128, b: u128) -> u128 {
        let t = self.degree;
        let mut acc = 0u128;
        for i in (0..t).rev() {
            acc <<= 1;
            if (acc >> t) & 1 == 1 {
                acc ^= self.modulus;
            }
            if (b >> i) & 1 == 1 {
                acc ^= a;
            }
        }
        acc
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:?}", self.degree, self.modulus())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ctx: FieldCtx,
    rep: u128,
}

impl FieldElem {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    /// Coefficients in the polynomial basis, packed lowest degree first.
    pub fn rep(&self) -> u128 {
        self.rep
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_u128(self.rep)
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    pub fn is_one(&self) -> bool {
        self.rep == 1
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn pow(self, mut exp: u128) -> Self {
        let mut base = self;
        let mut acc = self.ctx.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(self.ctx.group_order() - 1))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.inv()?)
    }

    /// Multiplicative order; a divisor of `2^t - 1`.
    pub fn element_order(self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.ctx.degree() > MAX_ORDER_DEGREE {
            return Err(Error::OrderUnsupported(self.ctx.degree()));
        }
        let mut order = self.ctx.group_order();
        for (q, _) in factorize(order as u64) {
            let q = q as u128;
            while order.is_multiple_of(q) && self.pow(order / q).is_one() {
                order /= q;
            }
        }
        Ok(order)
    }

    /// `{e, e^2, e^4, ...}` up to the first repetition.
    pub fn frobenius_orbit(self) -> Vec<Self> {
        let mut orbit = vec![self];
        let mut next = self.square();
        while next != self {
            orbit.push(next);
            next = next.square();
        }
        orbit
    }

    /// Monic polynomial of least degree over GF(2) vanishing at `self`,
    /// computed as the product of `x - c` over the Frobenius orbit.
    pub fn minimal_polynomial(self) -> Poly {
        product_of_linear_factors(&self.ctx, &self.frobenius_orbit())
            .expect("Frobenius orbits give polynomials over GF(2)")
    }
}

/// Expands `prod (x - r)` and returns it if every coefficient lies in GF(2).
pub fn product_of_linear_factors(ctx: &FieldCtx, roots: &[FieldElem]) -> Option<Poly> {
    let mut coeffs = vec![ctx.one()];
    for &r in roots {
        coeffs.push(ctx.zero());
        for i in (0..coeffs.len()).rev() {
            let lower = if i > 0 { coeffs[i - 1] } else { ctx.zero() };
            coeffs[i] = lower + r * coeffs[i];
        }
    }
    coeffs
        .iter()
        .map(|c| match c.rep {
            0 => Some(false),
            1 => Some(true),
            _ => None,
        })
        .collect::<Option<Vec<bool>>>()
        .map(Poly::from_coeffs)
}

impl Add for FieldElem {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.ctx, rhs.ctx);
        Self { ctx: self.ctx, rep: self.rep ^ rhs.rep }
    }
}

impl Sub for FieldElem {
    type Output = Self;

    // characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        self + rhs
    }
}

impl AddAssign for FieldElem {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Mul for FieldElem {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.ctx, rhs.ctx);
        Self { ctx: self.ctx, rep: self.ctx.mul_reps(self.rep, rhs.rep) }
    }
}

impl MulAssign for FieldElem {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// Little-endian bit string of exactly `t` characters.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (0..self.ctx.degree).try_for_each(|i| f.write_str(if (self.rep >> i) & 1 == 1 { "1" } else { "0" }))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
