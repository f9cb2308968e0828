//! The explicit map `T'` from `F2[D_2p]` onto `F2 + M2(K_1) + ... + M2(K_k)`,
//! where each `K_i = F2(gamma_i + gamma_i^-1)`.
//!
//! Block `i` sends `a` to `[[0, 1], [1, beta_i]]` and `b` to
//! `[[1, 0], [beta_i, 1]]` with `beta_i = gamma_i + gamma_i^-1`. The field
//! `K_i` is realised as `GF(2)[x] / (f'_i)` where `f'_i` is the minimal
//! polynomial of `beta_i`, so `beta_i` is the class of `x`. The roots
//! `gamma_i` live in `GF(2^d)`; `beta_i` is embedded there by evaluation.
//!
//! On top of the map this module builds preimages of elementary matrices as
//! explicit products of bicyclic units, and the central units `z_i`.

use std::fmt;
use std::ops::{Add, Mul};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::multiplicative_order;
use crate::dihedral::{
    bicyclic_unit, ensure_supported_prime, reflection_word, rotation_word, AlgebraElem, BicyclicWord, GroupElem,
};
use crate::error::Result;
use crate::gf2ext::{FieldCtx, FieldElem};
use crate::gf2poly::{split_cyclotomic, CyclotomicFactor, Poly};
use crate::linalg::{BitVec, Echelon};

/// A 2x2 matrix over a binary field, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[FieldElem; 2]; 2]);

impl Mat2 {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn scalar(c: FieldElem) -> Self {
        let z = c.ctx().zero();
        Self::new(c, z, z, c)
    }

    pub fn identity(ctx: FieldCtx) -> Self {
        Self::scalar(ctx.one())
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        Self::scalar(ctx.zero())
    }

    /// `[[1, 0], [u, 1]]`.
    pub fn lower(u: FieldElem) -> Self {
        let ctx = u.ctx();
        Self::new(ctx.one(), ctx.zero(), u, ctx.one())
    }

    /// `[[1, u], [0, 1]]`.
    pub fn upper(u: FieldElem) -> Self {
        let ctx = u.ctx();
        Self::new(ctx.one(), u, ctx.zero(), ctx.one())
    }

    pub fn ctx(&self) -> FieldCtx {
        self.0[0][0].ctx()
    }

    pub fn det(&self) -> FieldElem {
        self.0[0][0] * self.0[1][1] + self.0[0][1] * self.0[1][0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ctx())
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.det().inv().ok()?;
        let [[a, b], [c, d]] = self.0;
        Some(Self::new(d * inv, b * inv, c * inv, a * inv))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.ctx());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Applies a ring map to every entry.
    pub fn map(&self, f: impl Fn(FieldElem) -> FieldElem) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self::new(f(a), f(b), f(c), f(d))
    }

    fn entries(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.0.iter().flatten().copied()
    }
}

impl Add for Mat2 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Self::new(a + e, b + f, c + g, d + h)
    }
}

impl Mul for Mat2 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Self::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries().map(|e| e.to_string()))
    }
}

/// An element of `F2 + M2(K_1) + ... + M2(K_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemisimpleElem {
    pub scalar: bool,
    pub blocks: Vec<Mat2>,
}

impl SemisimpleElem {
    pub fn is_zero(&self) -> bool {
        !self.scalar && self.blocks.iter().all(Mat2::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar && self.blocks.iter().all(Mat2::is_identity)
    }
}

impl Add for &SemisimpleElem {
    type Output = SemisimpleElem;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &SemisimpleElem) -> SemisimpleElem {
        SemisimpleElem {
            scalar: self.scalar ^ rhs.scalar,
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(x, y)| *x + *y).collect(),
        }
    }
}

impl Mul for &SemisimpleElem {
    type Output = SemisimpleElem;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &SemisimpleElem) -> SemisimpleElem {
        SemisimpleElem {
            scalar: self.scalar & rhs.scalar,
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(x, y)| *x * *y).collect(),
        }
    }
}

impl Serialize for SemisimpleElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SemisimpleElem", 2)?;
        st.serialize_field("scalar", &u8::from(self.scalar))?;
        st.serialize_field("blocks", &self.blocks)?;
        st.end()
    }
}

/// One two-dimensional block of the decomposition.
#[derive(Debug, Clone)]
pub struct Representation {
    pub index: usize,
    /// Position of the factor `f_i` of `Phi_p` this block is built from.
    pub factor: usize,
    /// For odd `d`, the factor whose roots are the inverses of the roots of `f_i`.
    pub paired_factor: Option<usize>,
    /// `gamma_i` in `GF(2^d)`: the root of `f_i` with the smallest encoding.
    pub gamma: FieldElem,
    /// `beta_i = gamma_i + gamma_i^-1` in `GF(2^d)`.
    pub beta_lifted: FieldElem,
    /// `f'_i`, the minimal polynomial of `beta_i`; modulus of `field`.
    pub beta_minpoly: Poly,
    pub field: FieldCtx,
    /// `beta_i` in `field`.
    pub beta: FieldElem,
    pub a_image: Mat2,
    pub b_image: Mat2,
    /// `M_i = [[1, 1], [gamma_i, gamma_i^-1]]` over `GF(2^d)`.
    pub conjugator: Mat2,
    // images of a^0..a^(p-1), b..a^(p-1)b in basis order
    group_images: Vec<Mat2>,
}

impl Representation {
    pub fn image_of(&self, g: GroupElem) -> Mat2 {
        self.group_images[g.index() as usize]
    }

    /// Embeds an element of `K_i` into `GF(2^d)` by `beta_i -> beta_lifted`.
    pub fn lift(&self, e: FieldElem) -> FieldElem {
        e.to_poly().eval(self.beta_lifted)
    }

    /// Checks `T(g) M = M S(g)` for `g` in `{a, b}`, with `S(a) = diag(gamma, gamma^-1)`
    /// and `S(b)` the antidiagonal ones matrix, all in `GF(2^d)`.
    pub fn verify_diagonal_form(&self) -> bool {
        let big = self.gamma.ctx();
        let (zero, one) = (big.zero(), big.one());
        let Ok(gamma_inv) = self.gamma.inv() else {
            return false;
        };
        let m = self.conjugator;
        if m.det().is_zero() {
            return false;
        }
        let s_a = Mat2::new(self.gamma, zero, zero, gamma_inv);
        let s_b = Mat2::new(zero, one, one, zero);
        let t_a = self.a_image.map(|e| self.lift(e));
        let t_b = self.b_image.map(|e| self.lift(e));
        t_a * m == m * s_a && t_b * m == m * s_b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Elementary {
    /// `[[1, 0], [u, 1]]`
    Lower,
    /// `[[1, u], [0, 1]]`
    Upper,
}

/// An element of the bicyclic subgroup together with a word in bicyclic
/// units that evaluates to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preimage {
    pub element: AlgebraElem,
    pub word: BicyclicWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralUnit {
    pub element: AlgebraElem,
    /// Generator of `K_i^*`.
    pub eta: FieldElem,
    /// `h'_i` with `h'_i(beta_i) = eta_i` and `h'_i(beta_j) = 0` for `j != i`.
    pub h_poly: Poly,
    /// Whether `y_0(a + a^-1)` was added to fix the trivial component.
    pub added_y0: bool,
}

/// The data of the decomposition for one prime.
#[derive(Debug, Clone)]
pub struct DecompositionPlan {
    pub p: u32,
    /// Multiplicative order of 2 mod p.
    pub d: usize,
    /// Degree of each block field: `d/2` for even `d`, `d` for odd `d`.
    pub t: usize,
    /// `GF(2^d)`, where the roots of `Phi_p` live.
    pub root_field: FieldCtx,
    /// Fixed element of order `p` from which the factors were expanded.
    pub zeta: FieldElem,
    pub factors: Vec<CyclotomicFactor>,
    pub blocks: Vec<Representation>,
    /// `g_i = prod_{j != i} f'_j`.
    pub interpolants: Vec<Poly>,
    /// `y_i = g_i(beta_i)`, nonzero.
    pub interpolant_values: Vec<FieldElem>,
    /// `y_0 = prod_j f'_j`.
    pub y0: Poly,
    // (y0 + 1) / x, which takes the value beta_j^-1 at every beta_j
    inverse_of_x: Poly,
}

fn symmetric_sum(p: u32) -> AlgebraElem {
    AlgebraElem::a(p) + AlgebraElem::from_group(GroupElem::rotation(p, p - 1))
}

/// Evaluates `poly` at `x` inside the group algebra.
pub fn eval_in_algebra(poly: &Poly, x: AlgebraElem) -> AlgebraElem {
    let p = x.p();
    let mut acc = AlgebraElem::zero(p);
    if let Some(deg) = poly.degree() {
        for i in (0..=deg).rev() {
            acc = acc * x;
            if poly.coeff(i) {
                acc += AlgebraElem::one(p);
            }
        }
    }
    acc
}

impl DecompositionPlan {
    /// Builds the blocks for `p`: one per factor of `Phi_p` when `d` is even,
    /// one per pair `{f, f*}` of mutually reciprocal factors when `d` is odd.
    pub fn build(p: u64) -> Result<Self> {
        ensure_supported_prime(p)?;
        let d = multiplicative_order(2, p)? as usize;
        let splitting = split_cyclotomic(p)?;
        let p32 = p as u32;
        let d_even = d.is_multiple_of(2);
        let t = if d_even { d / 2 } else { d };

        let mut chosen: Vec<(usize, Option<usize>)> = Vec::new();
        let mut taken = vec![false; splitting.factors.len()];
        for (i, f) in splitting.factors.iter().enumerate() {
            if taken[i] {
                continue;
            }
            taken[i] = true;
            if d_even {
                chosen.push((i, None));
            } else {
                let neg = f.coset.negated(p);
                let j = splitting.factors.iter().position(|g| g.coset == neg).expect("cosets partition the residues");
                taken[j] = true;
                chosen.push((i, Some(j)));
            }
        }

        let big = splitting.field;
        let blocks = chosen
            .into_iter()
            .enumerate()
            .map(|(index, (factor, paired_factor))| {
                let coset = &splitting.factors[factor].coset;
                let gamma =
                    coset.elements.iter().map(|&c| splitting.zeta.pow(c as u128)).min_by_key(|e| e.rep()).unwrap();
                let gamma_inv = gamma.inv()?;
                let beta_lifted = gamma + gamma_inv;
                let beta_minpoly = beta_lifted.minimal_polynomial();
                let field = FieldCtx::new(&beta_minpoly)?;
                let beta = field.root();
                let (zero, one) = (field.zero(), field.one());
                let a_image = Mat2::new(zero, one, one, beta);
                let b_image = Mat2::new(one, zero, beta, one);
                let mut group_images = Vec::with_capacity(2 * p as usize);
                let mut power = Mat2::identity(field);
                for _ in 0..p {
                    group_images.push(power);
                    power = power * a_image;
                }
                for i in 0..p as usize {
                    group_images.push(group_images[i] * b_image);
                }
                Ok(Representation {
                    index,
                    factor,
                    paired_factor,
                    gamma,
                    beta_lifted,
                    beta_minpoly,
                    field,
                    beta,
                    a_image,
                    b_image,
                    conjugator: Mat2::new(big.one(), big.one(), gamma, gamma_inv),
                    group_images,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let y0 = blocks.iter().fold(Poly::one(), |acc, r| &acc * &r.beta_minpoly);
        let interpolants: Vec<Poly> = (0..blocks.len())
            .map(|i| {
                blocks
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .fold(Poly::one(), |acc, (_, r)| &acc * &r.beta_minpoly)
            })
            .collect();
        let interpolant_values = interpolants.iter().zip(&blocks).map(|(g, r)| g.eval(r.beta)).collect();
        // y0 has constant term 1, so y0 + 1 is divisible by x
        let inverse_of_x = (&y0 + &Poly::one()).divrem(&Poly::x())?.0;

        Ok(Self {
            p: p32,
            d,
            t,
            root_field: big,
            zeta: splitting.zeta,
            factors: splitting.factors,
            blocks,
            interpolants,
            interpolant_values,
            y0,
            inverse_of_x,
        })
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn d_is_even(&self) -> bool {
        self.d.is_multiple_of(2)
    }

    /// `l = (p - 1) / 2`.
    pub fn half(&self) -> u32 {
        (self.p - 1) / 2
    }

    /// The image of `x` under `T'`.
    pub fn apply(&self, x: &AlgebraElem) -> SemisimpleElem {
        debug_assert_eq!(x.p(), self.p);
        let blocks = self
            .blocks
            .iter()
            .map(|rep| x.support().fold(Mat2::zero(rep.field), |acc, g| acc + rep.image_of(g)))
            .collect();
        SemisimpleElem { scalar: x.augmentation(), blocks }
    }

    pub fn identity(&self) -> SemisimpleElem {
        SemisimpleElem { scalar: true, blocks: self.blocks.iter().map(|r| Mat2::identity(r.field)).collect() }
    }

    /// Identity everywhere except `block` at position `i`.
    pub fn identity_except(&self, i: usize, block: Mat2) -> SemisimpleElem {
        let mut out = self.identity();
        out.blocks[i] = block;
        out
    }

    /// Dimension over GF(2) of the target algebra, `1 + 4 * sum t_i`.
    pub fn target_dimension(&self) -> usize {
        1 + 4 * self.blocks.iter().map(|r| r.field.degree()).sum::<usize>()
    }

    fn flatten(&self, x: &SemisimpleElem) -> BitVec {
        let mut v = BitVec::zeros(self.target_dimension());
        v.set(0, x.scalar);
        let mut offset = 1;
        for (m, rep) in x.blocks.iter().zip(&self.blocks) {
            let t = rep.field.degree();
            for e in m.entries() {
                for bit in 0..t {
                    v.set(offset + bit, (e.rep() >> bit) & 1 == 1);
                }
                offset += t;
            }
        }
        v
    }

    /// A basis of the kernel of `T'`, by elimination on the images of the
    /// `2p` group elements.
    pub fn kernel_basis(&self) -> Vec<AlgebraElem> {
        let mut echelon: Echelon<BitVec, AlgebraElem> = Echelon::new();
        GroupElem::all(self.p)
            .filter_map(|g| {
                let g = AlgebraElem::from_group(g);
                echelon.insert(self.flatten(&self.apply(&g)), g)
            })
            .collect()
    }

    /// Preimage under `T'` of the elementary matrix with entry `u` in block
    /// `i` (identity in every other block, scalar 1), as a product of
    /// bicyclic units.
    ///
    /// Lower targets: write `u = y_i h(beta_i)`, form `u'(x) = g_i(x) h(x)`
    /// which vanishes at every other `beta_j`, and treat each monomial `x^m`
    /// of `u'` separately. With `c_m(x) = x^(m-1)` (or `x^-1 mod y_0` for
    /// `m = 0`) the symmetric element `c_m(a + a^-1) = b_0 + sum_s b_s (a^s + a^-s)`
    /// gives `1 + c_m(a + a^-1)(1 + b)`, which is `prod_{b_s = 1} u_{b,a^s}`
    /// times `b` when `b_0 = 1`; that `b` is replaced by `b(1 + D-hat)`.
    ///
    /// Upper targets are the lower ones conjugated by `a`, since
    /// `T(a)^-1 [[1,0],[u,1]] T(a) = [[1,u],[0,1]]` in every block.
    pub fn sl2_preimage(&self, i: usize, kind: Elementary, u: FieldElem) -> Result<Preimage> {
        let p = self.p;
        let rep = &self.blocks[i];
        debug_assert_eq!(u.ctx(), rep.field);
        let mut word = BicyclicWord::default();
        if !u.is_zero() {
            let h = u.checked_div(self.interpolant_values[i])?.to_poly();
            let u_prime = &self.interpolants[i] * &h;
            let s = symmetric_sum(p);
            for m in u_prime.support() {
                let c = if m == 0 { self.inverse_of_x.clone() } else { Poly::monomial(m - 1) };
                let sym = eval_in_algebra(&c, s);
                debug_assert!(sym.beta() == 0 && sym.involution() == sym);
                let b = GroupElem::reflection(p, 0);
                for s in 1..=self.half() {
                    if (sym.alpha() >> s) & 1 == 1 {
                        word.0.push((b, GroupElem::rotation(p, s)));
                    }
                }
                if sym.alpha() & 1 == 1 {
                    word.extend(&reflection_word(p, 0));
                }
            }
        }
        if kind == Elementary::Upper {
            let a = rotation_word(p);
            let mut conj = a.inverse();
            conj.extend(&word);
            conj.extend(&a);
            word = conj;
        }
        Ok(Preimage { element: word.evaluate(p), word })
    }

    /// The target of [`Self::sl2_preimage`].
    pub fn elementary_target(&self, i: usize, kind: Elementary, u: FieldElem) -> SemisimpleElem {
        let block = match kind {
            Elementary::Lower => Mat2::lower(u),
            Elementary::Upper => Mat2::upper(u),
        };
        self.identity_except(i, block)
    }

    fn h_poly(&self, i: usize, eta: FieldElem) -> Result<Poly> {
        let h = eta.checked_div(self.interpolant_values[i])?.to_poly();
        Ok(&self.interpolants[i] * &h)
    }

    /// Central units `z_1, ..., z_k`: `z_i` maps to `eta_i I` in block `i`,
    /// the identity in every other block, and 1 in the trivial component.
    pub fn central_units(&self) -> Result<Vec<CentralUnit>> {
        let p = self.p;
        let s = symmetric_sum(p);
        let exponent = (1u128 << self.t) - 1;
        let etas = self.blocks.iter().map(|r| r.field.find_generator()).collect::<Result<Vec<_>>>()?;
        let h_polys = etas.iter().enumerate().map(|(i, &e)| self.h_poly(i, e)).collect::<Result<Vec<_>>>()?;
        let h_values: Vec<AlgebraElem> = h_polys.iter().map(|h| eval_in_algebra(h, s)).collect();
        let powered: Vec<AlgebraElem> = h_values.iter().map(|h| h.pow(exponent)).collect();
        let y0 = eval_in_algebra(&self.y0, s);
        Ok((0..self.k())
            .map(|i| {
                let mut z = h_values[i];
                for (j, hp) in powered.iter().enumerate() {
                    if j != i {
                        z += *hp;
                    }
                }
                let added_y0 = !self.apply(&z).scalar;
                if added_y0 {
                    z += y0;
                }
                CentralUnit { element: z, eta: etas[i], h_poly: h_polys[i].clone(), added_y0 }
            })
            .collect())
    }

    /// The expected image of `z_i`.
    pub fn central_target(&self, i: usize, eta: FieldElem) -> SemisimpleElem {
        self.identity_except(i, Mat2::scalar(eta))
    }

    /// Determinant of every block of `T'(x)`.
    pub fn block_determinants(&self, x: &AlgebraElem) -> Vec<FieldElem> {
        self.apply(x).blocks.iter().map(Mat2::det).collect()
    }

    pub fn summary(&self) -> PlanSummary {
        PlanSummary {
            p: self.p,
            d: self.d,
            d_even: self.d_is_even(),
            t: self.t,
            k: self.k(),
            root_field_modulus: self.root_field.modulus(),
            factors: self
                .factors
                .iter()
                .map(|f| FactorSummary {
                    representative: f.coset.representative,
                    coset: f.coset.elements.clone(),
                    poly: f.poly.clone(),
                })
                .collect(),
            blocks: self
                .blocks
                .iter()
                .map(|r| BlockSummary {
                    index: r.index,
                    factor: r.factor,
                    paired_factor: r.paired_factor,
                    gamma: r.gamma.to_string(),
                    beta_minpoly: r.beta_minpoly.clone(),
                    a_image: r.a_image,
                    b_image: r.b_image,
                })
                .collect(),
        }
    }
}

/// Bicyclic unit `u_{g,h}` image, used by the determinant checks.
pub fn bicyclic_image(plan: &DecompositionPlan, g: GroupElem, h: GroupElem) -> SemisimpleElem {
    plan.apply(&bicyclic_unit(g, h))
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorSummary {
    pub representative: u64,
    pub coset: Vec<u64>,
    pub poly: Poly,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockSummary {
    pub index: usize,
    pub factor: usize,
    pub paired_factor: Option<usize>,
    /// Relative to `root_field_modulus`.
    pub gamma: String,
    /// Modulus of the block field; `beta` is the class of `x`.
    pub beta_minpoly: Poly,
    pub a_image: Mat2,
    pub b_image: Mat2,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanSummary {
    pub p: u32,
    pub d: usize,
    pub d_even: bool,
    pub t: usize,
    pub k: usize,
    pub root_field_modulus: Poly,
    pub factors: Vec<FactorSummary>,
    pub blocks: Vec<BlockSummary>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(p: u64) -> DecompositionPlan {
        DecompositionPlan::build(p).unwrap()
    }

    #[test]
    fn build_examples() {
        let p3 = plan(3);
        assert_eq!((p3.k(), p3.t), (1, 1));
        let r = &p3.blocks[0];
        assert!(r.beta.is_one());
        let f = r.field;
        assert_eq!(r.a_image, Mat2::new(f.zero(), f.one(), f.one(), f.one()));
        assert_eq!(r.b_image, Mat2::new(f.one(), f.zero(), f.one(), f.one()));

        let p7 = plan(7);
        assert_eq!((p7.k(), p7.t), (1, 3));
        assert_eq!(p7.blocks[0].beta_minpoly, "1011".parse().unwrap());
        assert_eq!(p7.blocks[0].paired_factor, Some(1));

        let p17 = plan(17);
        assert_eq!((p17.d, p17.k(), p17.t), (8, 2, 4));
        assert!(DecompositionPlan::build(9).is_err());
        assert!(DecompositionPlan::build(131).is_err());
    }

    #[test]
    fn representation_relations() {
        for p in [3u64, 5, 7, 11, 13, 17, 31] {
            let pl = plan(p);
            for r in &pl.blocks {
                let (a, b) = (r.a_image, r.b_image);
                assert!(a.pow(p).is_identity());
                assert!((b * b).is_identity());
                assert_eq!(b * a * b, a.inverse().unwrap());
                assert!(a.det().is_one() && b.det().is_one());
                assert!(r.verify_diagonal_form(), "p={p}");
            }
        }
    }

    #[test]
    fn apply_examples() {
        for p in [3u64, 5, 7] {
            let pl = plan(p);
            let p32 = p as u32;
            assert!(pl.apply(&AlgebraElem::group_sum(p32)).is_zero());
            assert!(pl.apply(&AlgebraElem::one(p32)).is_identity());
        }
        let pl = plan(3);
        let u = bicyclic_unit(GroupElem::reflection(3, 0), GroupElem::rotation(3, 1));
        let image = pl.apply(&u);
        assert!(image.scalar);
        assert!(image.blocks[0].det().is_one());
        // u_{b,a} = b(1 + D-hat) maps to T(b)
        assert_eq!(image.blocks[0], pl.blocks[0].b_image);
    }

    #[test]
    fn kernel_is_group_sum() {
        for p in [3u64, 5, 7, 11, 13, 17, 31] {
            let pl = plan(p);
            assert_eq!(pl.kernel_basis(), vec![AlgebraElem::group_sum(p as u32)]);
            assert_eq!(pl.target_dimension(), 2 * p as usize - 1);
        }
    }

    #[test]
    fn interpolant_examples() {
        for p in [3u64, 5, 7] {
            let pl = plan(p);
            assert!(pl.interpolants[0].is_one());
            assert_eq!(pl.y0, pl.blocks[0].beta_minpoly);
        }
        let pl = plan(17);
        assert_eq!(pl.interpolants[0], pl.blocks[1].beta_minpoly);
        assert!(pl.interpolants[0].eval(pl.blocks[1].beta).is_zero());
        assert!(!pl.interpolant_values[0].is_zero());
        let pl = plan(31);
        assert_eq!((pl.k(), pl.t), (3, 5));
        assert!(pl.y0.coeff(0));
        for r in &pl.blocks {
            assert!(pl.y0.eval(r.beta).is_zero());
        }
    }

    #[test]
    fn preimage_examples() {
        let pl = plan(3);
        let f = pl.blocks[0].field;
        let zero = pl.sl2_preimage(0, Elementary::Lower, f.zero()).unwrap();
        assert!(zero.element.is_one() && zero.word.is_empty());
        let pre = pl.sl2_preimage(0, Elementary::Lower, f.one()).unwrap();
        assert_eq!(pl.apply(&pre.element), pl.elementary_target(0, Elementary::Lower, f.one()));

        let pl = plan(7);
        let beta = pl.blocks[0].beta;
        let pre = pl.sl2_preimage(0, Elementary::Lower, beta).unwrap();
        assert_eq!(pl.apply(&pre.element).blocks[0], Mat2::lower(beta));
        let pre = pl.sl2_preimage(0, Elementary::Upper, beta).unwrap();
        assert_eq!(pl.apply(&pre.element), pl.elementary_target(0, Elementary::Upper, beta));
        assert_eq!(pre.word.evaluate(7), pre.element);
    }

    #[test]
    fn central_unit_examples() {
        let z = plan(3).central_units().unwrap();
        assert!(z[0].element.is_one());

        for (p, order) in [(5u64, 3u128), (7, 7)] {
            let pl = plan(p);
            let z = &pl.central_units().unwrap()[0];
            let p32 = p as u32;
            assert!(z.element.commutes_with(&AlgebraElem::a(p32)));
            assert!(z.element.commutes_with(&AlgebraElem::b(p32)));
            assert!(z.element.pow(order).is_one());
            assert!(!z.element.is_one());
            assert_eq!(pl.apply(&z.element), pl.central_target(0, z.eta));
            assert_eq!(z.eta.element_order().unwrap(), order);
        }
        assert!(!plan(5).central_units().unwrap()[0].element.is_unitary());
    }
}
