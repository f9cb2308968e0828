//! The group algebra `F2[D_2p]` with `D_2p = <a, b | a^p = b^2 = 1, b^-1 a b = a^-1>`.
//!
//! An element is a pair of `p`-bit masks: bit `i` of `alpha` is the
//! coefficient of `a^i`, bit `i` of `beta` the coefficient of `a^i b`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Serialize, Serializer};

use crate::arith::ensure_odd_prime;
use crate::error::{Error, Result};
use crate::linalg::{BitVector, Echelon};

/// Largest prime for which algebra elements fit the packed representation.
pub const MAX_PRIME: u64 = 127;

pub fn ensure_supported_prime(p: u64) -> Result<()> {
    ensure_odd_prime(p)?;
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge { p, max: MAX_PRIME });
    }
    Ok(())
}

/// `a^rot b^refl`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    p: u32,
    rot: u32,
    refl: bool,
}

impl GroupElem {
    pub fn new(p: u32, rot: u32, refl: bool) -> Self {
        Self { p, rot: rot % p, refl }
    }

    pub fn identity(p: u32) -> Self {
        Self::new(p, 0, false)
    }

    /// `a^i`.
    pub fn rotation(p: u32, i: u32) -> Self {
        Self::new(p, i, false)
    }

    /// `a^i b`.
    pub fn reflection(p: u32, i: u32) -> Self {
        Self::new(p, i, true)
    }

    /// All `2p` elements in basis order: `a^0, ..., a^(p-1), b, ab, ..., a^(p-1) b`.
    pub fn all(p: u32) -> impl Iterator<Item = GroupElem> {
        (0..2 * p).map(move |i| Self::from_index(p, i))
    }

    pub fn from_index(p: u32, index: u32) -> Self {
        Self::new(p, index % p, index >= p)
    }

    pub fn index(&self) -> u32 {
        self.rot + if self.refl { self.p } else { 0 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rot(&self) -> u32 {
        self.rot
    }

    pub fn is_reflection(&self) -> bool {
        self.refl
    }

    pub fn inverse(&self) -> Self {
        if self.refl {
            *self
        } else {
            Self::rotation(self.p, self.p - self.rot)
        }
    }

    pub fn order(&self) -> u32 {
        match (self.refl, self.rot) {
            (true, _) => 2,
            (false, 0) => 1,
            (false, _) => self.p,
        }
    }
}

impl Mul for GroupElem {
    type Output = GroupElem;

    fn mul(self, rhs: GroupElem) -> GroupElem {
        debug_assert_eq!(self.p, rhs.p);
        // a^i b^e a^j b^f = a^(i + (-1)^e j) b^(e+f)
        let j = if self.refl { self.p - rhs.rot } else { rhs.rot };
        GroupElem::new(self.p, self.rot + j, self.refl ^ rhs.refl)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rot, self.refl) {
            (0, false) => f.write_str("1"),
            (0, true) => f.write_str("b"),
            (1, r) => write!(f, "a{}", if r { "b" } else { "" }),
            (i, r) => write!(f, "a^{i}{}", if r { "b" } else { "" }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElem {
    p: u32,
    alpha: u128,
    beta: u128,
}

fn mask(p: u32) -> u128 {
    (1u128 << p) - 1
}

// bit j -> bit (j + i) mod p
fn rotate(x: u128, i: u32, p: u32) -> u128 {
    if i == 0 {
        x
    } else {
        ((x << i) | (x >> (p - i))) & mask(p)
    }
}

// bit j -> bit (-j) mod p
fn reflect(x: u128, p: u32) -> u128 {
    let r = x.reverse_bits() >> (127 - p);
    (r & mask(p) & !1) | (x & 1)
}

impl AlgebraElem {
    pub fn zero(p: u32) -> Self {
        Self { p, alpha: 0, beta: 0 }
    }

    pub fn one(p: u32) -> Self {
        Self { p, alpha: 1, beta: 0 }
    }

    pub fn from_blocks(p: u32, alpha: u128, beta: u128) -> Self {
        Self { p, alpha: alpha & mask(p), beta: beta & mask(p) }
    }

    /// The element whose coefficient vector is the binary expansion of
    /// `index` (bits `0..p` the `a^i`, bits `p..2p` the `a^i b`). Requires `2p <= 64`.
    pub fn from_index(p: u32, index: u64) -> Self {
        debug_assert!(2 * p <= 64);
        Self::from_blocks(p, index as u128, (index >> p) as u128)
    }

    pub fn to_index(&self) -> u128 {
        self.alpha | self.beta << self.p
    }

    pub fn from_group(g: GroupElem) -> Self {
        let bit = 1u128 << g.rot;
        if g.refl {
            Self { p: g.p, alpha: 0, beta: bit }
        } else {
            Self { p: g.p, alpha: bit, beta: 0 }
        }
    }

    pub fn a(p: u32) -> Self {
        Self::from_group(GroupElem::rotation(p, 1))
    }

    pub fn b(p: u32) -> Self {
        Self::from_group(GroupElem::reflection(p, 0))
    }

    /// Sum of all `2p` group elements.
    pub fn group_sum(p: u32) -> Self {
        Self { p, alpha: mask(p), beta: mask(p) }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn alpha(&self) -> u128 {
        self.alpha
    }

    pub fn beta(&self) -> u128 {
        self.beta
    }

    pub fn is_zero(&self) -> bool {
        self.alpha == 0 && self.beta == 0
    }

    pub fn is_one(&self) -> bool {
        self.alpha == 1 && self.beta == 0
    }

    pub fn coeff(&self, g: GroupElem) -> bool {
        let block = if g.refl { self.beta } else { self.alpha };
        (block >> g.rot) & 1 == 1
    }

    pub fn support(&self) -> impl Iterator<Item = GroupElem> + '_ {
        GroupElem::all(self.p).filter(|&g| self.coeff(g))
    }

    /// Sum of the coefficients (image under the trivial representation).
    pub fn augmentation(&self) -> bool {
        (self.alpha.count_ones() + self.beta.count_ones()) % 2 == 1
    }

    /// `g * self`.
    pub fn left_mul_group(&self, g: GroupElem) -> Self {
        let p = self.p;
        if g.refl {
            Self { p, alpha: rotate(reflect(self.beta, p), g.rot, p), beta: rotate(reflect(self.alpha, p), g.rot, p) }
        } else {
            Self { p, alpha: rotate(self.alpha, g.rot, p), beta: rotate(self.beta, g.rot, p) }
        }
    }

    /// `self * g`.
    pub fn right_mul_group(&self, g: GroupElem) -> Self {
        let p = self.p;
        let back = (p - g.rot) % p;
        if g.refl {
            Self { p, alpha: rotate(self.beta, back, p), beta: rotate(self.alpha, g.rot, p) }
        } else {
            Self { p, alpha: rotate(self.alpha, g.rot, p), beta: rotate(self.beta, back, p) }
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.p != rhs.p {
            return Err(Error::MismatchedPrime(self.p, rhs.p));
        }
        let p = self.p;
        let (ra, rb) = (reflect(rhs.alpha, p), reflect(rhs.beta, p));
        let mut out = Self::zero(p);
        let mut bits = self.alpha;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            out.alpha ^= rotate(rhs.alpha, i, p);
            out.beta ^= rotate(rhs.beta, i, p);
        }
        let mut bits = self.beta;
        while bits != 0 {
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            out.alpha ^= rotate(rb, i, p);
            out.beta ^= rotate(ra, i, p);
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u128) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// The canonical involution, the linear extension of `g -> g^-1`.
    pub fn involution(&self) -> Self {
        Self { p: self.p, alpha: reflect(self.alpha, self.p), beta: self.beta }
    }

    /// Inverse, found by solving `self * y = 1` on the left regular representation.
    /// `None` when the representation is singular.
    pub fn inverse(&self) -> Option<Self> {
        let p = self.p;
        let mut echelon: Echelon<Self, Self> = Echelon::new();
        for g in GroupElem::all(p) {
            echelon.insert(self.right_mul_group(g), Self::from_group(g));
        }
        if echelon.rank() < 2 * p as usize {
            return None;
        }
        echelon.solve(Self::one(p), Self::zero(p))
    }

    pub fn is_unit(&self) -> bool {
        if 2 * self.p <= 64 {
            let mut echelon: Echelon<u64, ()> = Echelon::new();
            GroupElem::all(self.p).all(|g| echelon.insert(self.right_mul_group(g).to_index() as u64, ()).is_none())
        } else {
            self.inverse().is_some()
        }
    }

    /// A unit inverted by the involution: `x x* = 1`.
    pub fn is_unitary(&self) -> bool {
        (*self * self.involution()).is_one()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        *self * *other == *other * *self
    }

    /// Parses a `2p`-character 0/1 string, `alpha` block first.
    pub fn parse(s: &str) -> Result<Self> {
        let n = s.len();
        if !n.is_multiple_of(2) {
            return Err(Error::Parse(format!("algebra element string has odd length {n}")));
        }
        let p = (n / 2) as u64;
        ensure_supported_prime(p)?;
        let p = p as u32;
        let mut out = Self::zero(p);
        for (i, c) in s.chars().enumerate() {
            let bit = match c {
                '0' => false,
                '1' => true,
                _ => return Err(Error::Parse(format!("invalid character {c:?} in algebra element"))),
            };
            if bit {
                out += Self::from_group(GroupElem::from_index(p, i as u32));
            }
        }
        Ok(out)
    }
}

impl From<GroupElem> for AlgebraElem {
    fn from(g: GroupElem) -> Self {
        Self::from_group(g)
    }
}

/// `g-hat`, the sum of the cyclic subgroup generated by `g`.
pub fn hat(g: GroupElem) -> AlgebraElem {
    let mut acc = AlgebraElem::zero(g.p);
    let mut h = GroupElem::identity(g.p);
    for _ in 0..g.order() {
        acc += AlgebraElem::from_group(h);
        h = h * g;
    }
    acc
}

/// The bicyclic unit `u_{g,h} = 1 + (g - 1) h g-hat`.
pub fn bicyclic_unit(g: GroupElem, h: GroupElem) -> AlgebraElem {
    let p = g.p;
    let one = AlgebraElem::one(p);
    one + (AlgebraElem::from_group(g) + one) * AlgebraElem::from_group(h) * hat(g)
}

/// Every ordered pair `(g, h)` together with its bicyclic unit.
pub fn all_bicyclic_units(p: u32) -> impl Iterator<Item = ((GroupElem, GroupElem), AlgebraElem)> {
    GroupElem::all(p).flat_map(move |g| GroupElem::all(p).map(move |h| ((g, h), bicyclic_unit(g, h))))
}

/// Distinct nontrivial bicyclic units, sorted.
pub fn distinct_bicyclic_units(p: u32) -> Vec<AlgebraElem> {
    let mut units: Vec<AlgebraElem> = all_bicyclic_units(p).map(|(_, u)| u).filter(|u| !u.is_one()).collect();
    units.sort_unstable();
    units.dedup();
    units
}

/// A formal product of bicyclic units `u_{g1,h1} u_{g2,h2} ...`, kept so
/// membership in the bicyclic subgroup can be checked structurally.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct BicyclicWord(pub Vec<(GroupElem, GroupElem)>);

impl BicyclicWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self, p: u32) -> AlgebraElem {
        self.0.iter().fold(AlgebraElem::one(p), |acc, &(g, h)| acc * bicyclic_unit(g, h))
    }

    /// Bicyclic units are involutions in characteristic 2, so the inverse
    /// word is the reversed word.
    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn extend(&mut self, other: &BicyclicWord) {
        self.0.extend_from_slice(&other.0);
    }
}

/// `u_{a^j b, a} u_{a^j b, a^2} ... u_{a^j b, a^l}` with `l = (p-1)/2`,
/// which equals `a^j b (1 + D-hat)`.
pub fn reflection_word(p: u32, j: u32) -> BicyclicWord {
    let g = GroupElem::reflection(p, j);
    BicyclicWord((1..=(p - 1) / 2).map(|i| (g, GroupElem::rotation(p, i))).collect())
}

/// `a = u_{ab,a} ... u_{ab,a^l} u_{b,a^l} ... u_{b,a}`.
pub fn rotation_word(p: u32) -> BicyclicWord {
    let mut word = reflection_word(p, 1);
    word.extend(&reflection_word(p, 0).inverse());
    word
}

impl Serialize for GroupElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl BitVector for AlgebraElem {
    fn xor_assign(&mut self, other: &Self) {
        self.alpha ^= other.alpha;
        self.beta ^= other.beta;
    }

    fn lowest_set_bit(&self) -> Option<usize> {
        if self.alpha != 0 {
            Some(self.alpha.trailing_zeros() as usize)
        } else if self.beta != 0 {
            Some((self.p + self.beta.trailing_zeros()) as usize)
        } else {
            None
        }
    }

    fn bit(&self, i: usize) -> bool {
        let i = i as u32;
        if i < self.p {
            (self.alpha >> i) & 1 == 1
        } else {
            (self.beta >> (i - self.p)) & 1 == 1
        }
    }
}

impl Add for AlgebraElem {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "operands belong to different algebras");
        Self { p: self.p, alpha: self.alpha ^ rhs.alpha, beta: self.beta ^ rhs.beta }
    }
}

impl AddAssign for AlgebraElem {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Mul for AlgebraElem {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("operands belong to different algebras")
    }
}

impl fmt::Display for AlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in [self.alpha, self.beta] {
            for i in 0..self.p {
                f.write_str(if (block >> i) & 1 == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.support().map(|g| g.to_string()).collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Serialize for AlgebraElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(p: u32, i: u32) -> AlgebraElem {
        GroupElem::rotation(p, i).into()
    }

    fn ab(p: u32, i: u32) -> AlgebraElem {
        GroupElem::reflection(p, i).into()
    }

    // Product computed from the group multiplication table, term by term.
    fn naive_mul(x: &AlgebraElem, y: &AlgebraElem) -> AlgebraElem {
        let mut out = AlgebraElem::zero(x.p);
        for g in x.support() {
            for h in y.support() {
                out += (g * h).into();
            }
        }
        out
    }

    #[test]
    fn group_relations() {
        for p in [3u32, 5, 7, 11] {
            let a1 = GroupElem::rotation(p, 1);
            let b = GroupElem::reflection(p, 0);
            assert_eq!(a1 * b, GroupElem::reflection(p, 1));
            assert_eq!(b * a1, GroupElem::reflection(p, p - 1));
            assert_eq!(b * b, GroupElem::identity(p));
            assert_eq!(b.inverse() * a1 * b, a1.inverse());
            let mut x = GroupElem::identity(p);
            for _ in 0..p {
                x = x * a1;
            }
            assert_eq!(x, GroupElem::identity(p));
        }
    }

    #[test]
    fn mul_examples() {
        let p = 5;
        assert_eq!(AlgebraElem::a(p) * AlgebraElem::b(p), ab(p, 1));
        assert_eq!(AlgebraElem::b(p) * AlgebraElem::a(p), ab(p, p - 1));
        let ahat = hat(GroupElem::rotation(p, 1));
        assert!((ahat * (AlgebraElem::a(p) + AlgebraElem::one(p))).is_zero());
        let v = AlgebraElem::one(p) + AlgebraElem::group_sum(p);
        assert!((v * v).is_one());
        assert_eq!(AlgebraElem::one(3).checked_mul(&AlgebraElem::one(5)), Err(Error::MismatchedPrime(3, 5)));
    }

    #[test]
    fn involution_examples() {
        let p = 7;
        assert_eq!(AlgebraElem::a(p).involution(), a(p, p - 1));
        for i in 0..p {
            assert_eq!(ab(p, i).involution(), ab(p, i));
        }
        let x = AlgebraElem::one(p) + a(p, 1) + ab(p, 1);
        assert_eq!(x.involution(), AlgebraElem::one(p) + a(p, p - 1) + ab(p, 1));
    }

    #[test]
    fn hat_examples() {
        let p = 7;
        assert_eq!(hat(GroupElem::rotation(p, 1)), AlgebraElem::from_blocks(p, mask(p), 0));
        assert_eq!(hat(GroupElem::reflection(p, 0)), AlgebraElem::one(p) + AlgebraElem::b(p));
        assert_eq!(hat(GroupElem::identity(p)), AlgebraElem::one(p));
    }

    #[test]
    fn bicyclic_examples() {
        assert!(bicyclic_unit(GroupElem::rotation(5, 1), GroupElem::reflection(5, 0)).is_one());
        let p = 3;
        let u = bicyclic_unit(GroupElem::reflection(p, 0), GroupElem::rotation(p, 1));
        let expected = AlgebraElem::one(p) + a(p, 1) + a(p, 2) + ab(p, 1) + ab(p, 2);
        assert_eq!(u, expected);
        assert_eq!(u, AlgebraElem::b(p) * (AlgebraElem::one(p) + AlgebraElem::group_sum(p)));
    }

    #[test]
    fn closed_dihedral_form() {
        // u_{a^j b, a^i} = 1 + (a^i + a^-i)(1 + a^j b)
        for p in [3u32, 5, 7, 11] {
            for i in 0..p {
                for j in 0..p {
                    let u = bicyclic_unit(GroupElem::reflection(p, j), GroupElem::rotation(p, i));
                    let closed = AlgebraElem::one(p) + (a(p, i) + a(p, p - i)) * (AlgebraElem::one(p) + ab(p, j));
                    assert_eq!(u, closed);
                }
            }
        }
    }

    #[test]
    fn unit_examples() {
        for p in [3u32, 5, 7] {
            let v = AlgebraElem::one(p) + AlgebraElem::group_sum(p);
            assert_eq!(v.inverse(), Some(v));
            assert!(!AlgebraElem::group_sum(p).is_unit());
            for g in GroupElem::all(p) {
                assert_eq!(AlgebraElem::from_group(g).inverse(), Some(g.inverse().into()));
                assert!(AlgebraElem::from_group(g).is_unitary());
            }
        }
    }

    #[test]
    fn bicyclic_units_are_unitary_and_involutive() {
        for p in [3u32, 5, 7] {
            for ((g, h), u) in all_bicyclic_units(p) {
                assert!((u * u).is_one(), "u({g},{h})^2 != 1");
                assert!(u.is_unitary());
            }
        }
    }

    #[test]
    fn bicyclic_trivial_iff_normalizer() {
        for p in [3u32, 5, 7, 11] {
            for ((g, h), u) in all_bicyclic_units(p) {
                let normalizes = !g.is_reflection() || h == GroupElem::identity(p) || h == g;
                assert_eq!(u.is_one(), normalizes, "p={p} g={g} h={h}");
            }
        }
    }

    #[test]
    fn associativity_exhaustive_p3() {
        let p = 3;
        let all: Vec<AlgebraElem> = (0..64).map(|i| AlgebraElem::from_index(p, i)).collect();
        for x in &all {
            for y in &all {
                let xy = *x * *y;
                assert_eq!(xy, naive_mul(x, y));
                assert_eq!((xy).involution(), y.involution() * x.involution());
                for z in all.iter().step_by(5) {
                    assert_eq!(xy * *z, *x * (*y * *z));
                }
            }
        }
    }

    #[test]
    fn product_identities() {
        for p in [3u32, 5, 7, 11, 13] {
            let v = AlgebraElem::one(p) + AlgebraElem::group_sum(p);
            assert_eq!(reflection_word(p, 0).evaluate(p), AlgebraElem::b(p) * v);
            assert_eq!(reflection_word(p, 1).evaluate(p), ab(p, 1) * v);
            assert_eq!(rotation_word(p).evaluate(p), AlgebraElem::a(p));
            assert_eq!(rotation_word(p).inverse().evaluate(p), a(p, p - 1));
        }
    }

    #[test]
    fn string_form() {
        let p = 3;
        let x = AlgebraElem::one(p) + ab(p, 2);
        assert_eq!(x.to_string(), "100001");
        assert_eq!(AlgebraElem::parse("100001").unwrap(), x);
        assert!(AlgebraElem::parse("10000").is_err());
        assert!(AlgebraElem::parse("10000000").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_elem(p: u32) -> impl Strategy<Value = AlgebraElem> {
            (any::<u128>(), any::<u128>()).prop_map(move |(x, y)| AlgebraElem::from_blocks(p, x, y))
        }

        fn arb_triple() -> impl Strategy<Value = (AlgebraElem, AlgebraElem, AlgebraElem)> {
            prop_oneof![Just(5u32), Just(7), Just(11), Just(101)]
                .prop_flat_map(|p| (arb_elem(p), arb_elem(p), arb_elem(p)))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(2000))]

            #[test]
            fn ring_axioms((x, y, z) in arb_triple()) {
                prop_assert_eq!(x * y, naive_mul(&x, &y));
                prop_assert_eq!((x * y) * z, x * (y * z));
                prop_assert_eq!(x * (y + z), x * y + x * z);
                prop_assert_eq!((x + y) * z, x * z + y * z);
                prop_assert_eq!(x * AlgebraElem::one(x.p()), x);
            }

            #[test]
            fn involution_is_anti_automorphism((x, y, _z) in arb_triple()) {
                prop_assert_eq!((x * y).involution(), y.involution() * x.involution());
                prop_assert_eq!(x.involution().involution(), x);
            }

            #[test]
            fn inverse_is_two_sided((x, _y, _z) in arb_triple()) {
                if let Some(inv) = x.inverse() {
                    prop_assert!((x * inv).is_one());
                    prop_assert!((inv * x).is_one());
                }
            }

            #[test]
            fn string_round_trip((x, _y, _z) in arb_triple()) {
                prop_assert_eq!(AlgebraElem::parse(&x.to_string()).unwrap(), x);
            }
        }
    }
}
