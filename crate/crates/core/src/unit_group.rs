//! Verification of the structure of `U(F2[D_2p])`, the bicyclic subgroup
//! `B`, the unitary subgroup `U_*` and the central subgroup `W`, both by
//! brute force (small `p`) and through the explicit decomposition (any
//! supported `p`).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{ensure_odd_prime, factorize, multiplicative_order};
use crate::dihedral::{
    all_bicyclic_units, distinct_bicyclic_units, reflection_word, rotation_word, AlgebraElem, GroupElem,
};
use crate::error::{Error, Result};
use crate::gf2poly::{cyclotomic_polynomial, Poly};
use crate::wedderburn::{DecompositionPlan, Elementary};

/// Exhaustive scans up to this many bits run without being forced.
pub const UNFORCED_MAX_BITS: u32 = 14;
/// Ceiling for forced exhaustive scans (`p = 11`).
pub const FORCED_MAX_BITS: u32 = 22;

/// Fields of the block algebras with at most this degree have every
/// elementary preimage checked; larger ones only a basis.
pub const FULL_PREIMAGE_DEGREE: usize = 6;

fn serialize_big<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// Predicted orders of `U`, `B`, `U_*` and `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoreticalOrders {
    #[serde(serialize_with = "serialize_big")]
    pub units: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub bicyclic: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub unitary: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub central: BigUint,
}

/// `(d, t, k)` for `p`: the order of 2 mod `p`, the block field degree and the block count.
pub fn block_shape(p: u64) -> Result<(u64, u64, u64)> {
    let d = multiplicative_order(2, p)?;
    Ok(if d % 2 == 0 { (d, d / 2, (p - 1) / d) } else { (d, d, (p - 1) / (2 * d)) })
}

/// `|U| = 2 |GL_2(2^t)|^k`, `|B| = |SL_2(2^t)|^k`, `|U_*| = 2|B|`, `|W| = (2^t - 1)^k`.
pub fn theoretical_orders(p: u64) -> Result<TheoreticalOrders> {
    let (_, t, k) = block_shape(p)?;
    let q = BigUint::from(1u8) << t as usize;
    let q2 = &q * &q;
    let one = BigUint::from(1u8);
    let k = k as u32;
    let gl2 = (&q2 - &one) * (&q2 - &q);
    let sl2 = &q * (&q2 - &one);
    let bicyclic = sl2.pow(k);
    Ok(TheoreticalOrders {
        units: BigUint::from(2u8) * gl2.pow(k),
        unitary: BigUint::from(2u8) * &bicyclic,
        bicyclic,
        central: (&q - &one).pow(k),
    })
}

/// Bound on the number of coefficient bits `2p` an exhaustive scan may cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimit {
    pub max_bits: u32,
}

impl Default for EnumerationLimit {
    fn default() -> Self {
        Self { max_bits: UNFORCED_MAX_BITS }
    }
}

impl EnumerationLimit {
    pub fn forced() -> Self {
        Self { max_bits: FORCED_MAX_BITS }
    }

    pub fn check(&self, p: u32) -> Result<()> {
        let bits = 2 * p;
        if bits > self.max_bits || bits > 62 {
            return Err(Error::EnumerationTooLarge { bits, max_bits: self.max_bits });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnitCensus {
    pub units: u64,
    pub unitary: u64,
}

/// Counts units and unitary units among all `2^(2p)` elements.
pub fn enumerate_units(p: u64, limit: EnumerationLimit) -> Result<UnitCensus> {
    ensure_odd_prime(p)?;
    let p = p as u32;
    limit.check(p)?;
    let (units, unitary) = (0..1u64 << (2 * p))
        .into_par_iter()
        .map(|i| {
            let x = AlgebraElem::from_index(p, i);
            if x.is_unitary() {
                (1u64, 1u64)
            } else {
                (u64::from(x.is_unit()), 0)
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(UnitCensus { units, unitary })
}

/// All unitary units, by exhaustive scan.
pub fn unitary_units(p: u64, limit: EnumerationLimit) -> Result<HashSet<AlgebraElem>> {
    ensure_odd_prime(p)?;
    let p = p as u32;
    limit.check(p)?;
    Ok((0..1u64 << (2 * p))
        .into_par_iter()
        .map(|i| AlgebraElem::from_index(p, i))
        .filter(AlgebraElem::is_unitary)
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// The image of `x` under the algebra map induced by `D_2p -> <g | g^2 = 1>`,
/// `a -> 1`, `b -> g`, as (coefficient of 1, coefficient of g).
pub fn parity_hom(x: &AlgebraElem) -> (bool, bool) {
    (x.alpha().count_ones() % 2 == 1, x.beta().count_ones() % 2 == 1)
}

/// A finite group of units given by its elements and an irredundant
/// generating set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub elements: HashSet<AlgebraElem>,
    pub generators: Vec<AlgebraElem>,
    p: u32,
}

impl Subgroup {
    pub fn trivial(p: u32) -> Self {
        Self { elements: HashSet::from([AlgebraElem::one(p)]), generators: Vec::new(), p }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &AlgebraElem) -> bool {
        self.elements.contains(x)
    }

    /// Adds a generator and extends the closure breadth-first. Returns
    /// `false` if `g` was already an element.
    fn adjoin(&mut self, g: AlgebraElem, cap: usize) -> Result<bool> {
        if self.elements.contains(&g) {
            return Ok(false);
        }
        self.generators.push(g);
        let mut frontier: Vec<AlgebraElem> = Vec::new();
        for h in &self.elements {
            let x = *h * g;
            if !self.elements.contains(&x) {
                frontier.push(x);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in frontier {
                if !self.elements.insert(x) {
                    continue;
                }
                if self.elements.len() > cap {
                    return Err(Error::ClosureTooLarge(cap));
                }
                for s in &self.generators {
                    let y = x * *s;
                    if !self.elements.contains(&y) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(true)
    }

    /// `x H x^-1 = H`, checked on generators.
    pub fn is_normalized_by(&self, x: &AlgebraElem) -> bool {
        let Some(inv) = x.inverse() else {
            return false;
        };
        self.generators.iter().all(|h| self.contains(&(*x * *h * inv)))
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }
}

pub const DEFAULT_CLOSURE_CAP: usize = 1 << 24;

/// The subgroup generated by `generators` (all of which must be units).
pub fn group_closure(p: u32, generators: &[AlgebraElem], cap: usize) -> Result<Subgroup> {
    let mut group = Subgroup::trivial(p);
    for g in generators {
        if g.p() != p {
            return Err(Error::MismatchedPrime(p, g.p()));
        }
        if !g.is_unit() {
            return Err(Error::NonUnitGenerator(g.to_string()));
        }
        group.adjoin(*g, cap)?;
    }
    Ok(group)
}

/// Commutator subgroup: the normal closure in `group` of the commutators of
/// its generators.
pub fn derived_subgroup(group: &Subgroup, cap: usize) -> Result<Subgroup> {
    let p = group.p;
    let gens = &group.generators;
    let inverses: Vec<AlgebraElem> = gens.iter().map(|g| g.inverse().expect("generators are units")).collect();
    let mut derived = Subgroup::trivial(p);
    for (i, (g, gi)) in gens.iter().zip(&inverses).enumerate() {
        for (h, hi) in gens.iter().zip(&inverses).skip(i + 1) {
            derived.adjoin(*gi * *hi * *g * *h, cap)?;
        }
    }
    loop {
        let mut grew = false;
        let current = derived.generators.clone();
        for (g, gi) in gens.iter().zip(&inverses) {
            for c in &current {
                grew |= derived.adjoin(*g * *c * *gi, cap)?;
            }
        }
        if !grew {
            return Ok(derived);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Exhaustive,
    Structural,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Self::Exhaustive),
            "structural" => Ok(Self::Structural),
            _ => Err(Error::Parse(format!("unknown verification level {s:?}"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exhaustive => "exhaustive",
            Self::Structural => "structural",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MeasuredOrders {
    pub units: Option<u64>,
    pub unitary: Option<u64>,
    pub bicyclic: Option<u64>,
    pub unitary_closure: Option<u64>,
    pub central: Option<u64>,
    pub commutator: Option<u64>,
    pub unitary_commutator: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub p: u32,
    pub d: usize,
    pub k: usize,
    pub t: usize,
    pub level: Level,
    pub predicted: TheoreticalOrders,
    pub measured: MeasuredOrders,
    pub claims: Vec<Claim>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub level: Level,
    pub limit: EnumerationLimit,
    /// Random pairs used to test that the representation is multiplicative.
    pub samples: usize,
    pub seed: u64,
    pub closure_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            level: Level::Structural,
            limit: EnumerationLimit::default(),
            samples: 10_000,
            seed: 0x5eed,
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

struct Claims(Vec<Claim>);

impl Claims {
    fn push(&mut self, id: &'static str, passed: bool, detail: impl Into<String>) {
        self.0.push(Claim { id, passed, detail: detail.into() });
    }
}

fn to_u64(n: &BigUint) -> Option<u64> {
    u64::try_from(n).ok()
}

pub fn random_element(rng: &mut impl Rng, p: u32) -> AlgebraElem {
    AlgebraElem::from_blocks(p, rng.gen(), rng.gen())
}

/// Claims checkable from the decomposition alone, without enumeration.
fn structural_claims(plan: &DecompositionPlan, opts: &VerifyOptions, claims: &mut Claims) -> Result<()> {
    let p = plan.p;
    let p64 = p as u64;
    let one = AlgebraElem::one(p);
    let group_sum = AlgebraElem::group_sum(p);

    // factorization of Phi_p
    let product = plan.factors.iter().fold(Poly::one(), |acc, f| &acc * &f.poly);
    let count_ok = plan.factors.len() as u64 * plan.d as u64 == p64 - 1;
    let degrees_ok = plan.factors.iter().all(|f| f.poly.degree() == Some(plan.d));
    claims.push(
        "intro.factor-count",
        count_ok && degrees_ok && product == cyclotomic_polynomial(p64)?,
        format!("{} factors of degree {}", plan.factors.len(), plan.d),
    );

    let lem1 = plan.factors.iter().all(|f| (f.coset.negated(p64) == f.coset) == plan.d_is_even())
        && plan.blocks.iter().all(|r| {
            let gi = r.gamma.inv().expect("gamma is nonzero");
            (r.gamma.minimal_polynomial() == gi.minimal_polynomial()) == plan.d_is_even()
        });
    claims.push(
        "lem1.inverse-roots",
        lem1,
        format!("d = {} is {}", plan.d, if plan.d_is_even() { "even" } else { "odd" }),
    );

    let lem2 = plan.blocks.iter().all(|r| r.beta_minpoly.degree() == Some(plan.t));
    claims.push("lem2.subfield-degree", lem2, format!("deg minpoly(beta) = {}", plan.t));

    let mut minpolys: Vec<&Poly> = plan.blocks.iter().map(|r| &r.beta_minpoly).collect();
    minpolys.sort();
    minpolys.dedup();
    claims.push(
        "lem4.distinct-minpolys",
        minpolys.len() == plan.k(),
        format!("{} distinct of {}", minpolys.len(), plan.k()),
    );

    let expected_k = if plan.d_is_even() { (p64 - 1) / plan.d as u64 } else { (p64 - 1) / (2 * plan.d as u64) };
    let paired_ok = plan.d_is_even() || {
        let mut seen: Vec<usize> =
            plan.blocks.iter().flat_map(|r| [r.factor, r.paired_factor.unwrap_or(r.factor)]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == plan.factors.len()
    };
    claims.push(
        "thm1.shape",
        plan.k() as u64 == expected_k && paired_ok,
        format!("k = {} blocks M2(GF(2^{}))", plan.k(), plan.t),
    );

    claims.push(
        "thm1.dimension",
        plan.target_dimension() == 2 * p as usize - 1,
        format!("1 + 4 sum t = {}, 2p - 1 = {}", plan.target_dimension(), 2 * p - 1),
    );

    claims.push(
        "thm1.diagonal-form",
        plan.blocks.iter().all(|r| r.verify_diagonal_form()),
        "T(g) = M S(g) M^-1 for g in {a, b}",
    );

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ p64);
    let unital = plan.apply(&one).is_identity();
    let hom_ok = (0..opts.samples).all(|_| {
        let x = random_element(&mut rng, p);
        let y = random_element(&mut rng, p);
        let (tx, ty) = (plan.apply(&x), plan.apply(&y));
        plan.apply(&(x * y)) == &tx * &ty && plan.apply(&(x + y)) == &tx + &ty
    });
    claims.push("thm1.homomorphism", unital && hom_ok, format!("{} random pairs", opts.samples));

    let kernel = plan.kernel_basis();
    claims.push("thm1.kernel", kernel == vec![group_sum], format!("kernel dimension {}", kernel.len()));

    let det_ok = all_bicyclic_units(p).all(|(_, u)| {
        let image = plan.apply(&u);
        image.scalar && image.blocks.iter().all(|m| m.det().is_one())
    });
    claims.push("thm2.determinant", det_ok, "every bicyclic unit lands in the product of SL2 blocks");

    let mut preimages_ok = true;
    let mut checked = 0usize;
    for (i, rep) in plan.blocks.iter().enumerate() {
        let values: Vec<_> = if rep.field.degree() <= FULL_PREIMAGE_DEGREE {
            rep.field.elements().collect()
        } else {
            (0..rep.field.degree()).map(|j| rep.beta.pow(j as u128)).collect()
        };
        for u in values {
            for kind in [Elementary::Lower, Elementary::Upper] {
                let pre = plan.sl2_preimage(i, kind, u)?;
                checked += 1;
                preimages_ok &= pre.word.evaluate(p) == pre.element
                    && plan.apply(&pre.element) == plan.elementary_target(i, kind, u);
            }
        }
    }
    claims.push("thm2.preimages", preimages_ok, format!("{checked} elementary targets"));

    let central = plan.central_units()?;
    let n = (1u128 << plan.t) - 1;
    let primes: Vec<u128> = factorize(n as u64).into_iter().map(|(q, _)| q as u128).collect();
    let (a, b) = (AlgebraElem::a(p), AlgebraElem::b(p));
    let central_ok = central.iter().enumerate().all(|(i, z)| {
        let x = z.element;
        x.commutes_with(&a)
            && x.commutes_with(&b)
            && x.pow(n).is_one()
            && primes.iter().all(|q| !x.pow(n / q).is_one())
            && plan.apply(&x) == plan.central_target(i, z.eta)
    });
    claims.push("thm3.central-units", central_ok, format!("{} central units of order {n}", central.len()));

    // T' is injective on the span of the rotations, and each z_i is
    // non-identity only in its own block, so the <z_i> are independent.
    let rotations_injective = kernel.iter().all(|x| x.beta() != 0);
    let supports_ok = central
        .iter()
        .enumerate()
        .all(|(i, z)| plan.apply(&z.element).blocks.iter().enumerate().all(|(j, m)| (j == i) || m.is_identity()));
    claims.push("thm3.central-independence", rotations_injective && supports_ok, "distinct block supports");

    let orders = theoretical_orders(p64)?;
    claims.push(
        "thm3.order-identity",
        &orders.central * &orders.unitary == orders.units && orders.unitary == BigUint::from(2u8) * &orders.bicyclic,
        "|W| |U_*| = |U| and |U_*| = 2|B|",
    );

    let parity_ok = all_bicyclic_units(p).all(|(_, u)| parity_hom(&u) == (true, false))
        && parity_hom(&AlgebraElem::b(p)) == (false, true);
    claims.push("lem.parity-obstruction", parity_ok, "bicyclic units map to 1, b maps to g");

    let v = one + group_sum;
    let identities = reflection_word(p, 0).evaluate(p) == b * v && rotation_word(p).evaluate(p) == a;
    claims.push("lem.product-identities", identities, "u_{b,a}...u_{b,a^l} = b(1 + D) and a as bicyclic product");
    Ok(())
}

/// Checks every structure claim for `p` at the requested level.
pub fn verify_structure(p: u64, opts: &VerifyOptions) -> Result<StructureReport> {
    let plan = DecompositionPlan::build(p)?;
    let p32 = plan.p;
    if opts.level == Level::Exhaustive {
        opts.limit.check(p32)?;
    }
    let predicted = theoretical_orders(p)?;
    let mut claims = Claims(Vec::new());
    let mut measured = MeasuredOrders::default();
    structural_claims(&plan, opts, &mut claims)?;
    if opts.level == Level::Exhaustive {
        exhaustive_claims(&plan, opts, &predicted, &mut measured, &mut claims)?;
    }
    Ok(StructureReport {
        p: p32,
        d: plan.d,
        k: plan.k(),
        t: plan.t,
        level: opts.level,
        predicted,
        measured,
        claims: claims.0,
    })
}

fn exhaustive_claims(
    plan: &DecompositionPlan,
    opts: &VerifyOptions,
    predicted: &TheoreticalOrders,
    measured: &mut MeasuredOrders,
    claims: &mut Claims,
) -> Result<()> {
    let p = plan.p;
    let p64 = p as u64;
    let cap = opts.closure_cap;
    let one = AlgebraElem::one(p);
    let (a, b) = (AlgebraElem::a(p), AlgebraElem::b(p));
    let group_sum = AlgebraElem::group_sum(p);

    let census = enumerate_units(p64, opts.limit)?;
    measured.units = Some(census.units);
    claims.push(
        "thm1.order",
        Some(census.units) == to_u64(&predicted.units),
        format!("{} units enumerated, {} predicted", census.units, predicted.units),
    );

    let kernel_scan = (0..1u64 << (2 * p)).into_par_iter().all(|i| {
        let x = AlgebraElem::from_index(p, i);
        plan.apply(&x).is_zero() == (x.is_zero() || x == group_sum)
    });
    claims.push("thm1.kernel-scan", kernel_scan, "T'(x) = 0 exactly for x in {0, D}");

    let bicyclic_gens = distinct_bicyclic_units(p);
    let bgroup = group_closure(p, &bicyclic_gens, cap)?;
    measured.bicyclic = Some(bgroup.order() as u64);
    claims.push(
        "thm2.order",
        Some(bgroup.order() as u64) == to_u64(&predicted.bicyclic),
        format!("|B| = {} measured, {} predicted", bgroup.order(), predicted.bicyclic),
    );

    let mut membership = true;
    for (i, rep) in plan.blocks.iter().enumerate() {
        for u in rep.field.elements() {
            for kind in [Elementary::Lower, Elementary::Upper] {
                membership &= bgroup.contains(&plan.sl2_preimage(i, kind, u)?.element);
            }
        }
    }
    claims.push("thm2.preimage-membership", membership, "every elementary preimage lies in B");

    let unitary = unitary_units(p64, opts.limit)?;
    measured.unitary = Some(unitary.len() as u64);
    claims.push(
        "thm3.unitary-order",
        Some(unitary.len() as u64) == to_u64(&predicted.unitary) && unitary.len() == 2 * bgroup.order(),
        format!("{} unitary units, 2|B| = {}", unitary.len(), 2 * bgroup.order()),
    );

    let mut ustar_gens = bicyclic_gens.clone();
    ustar_gens.push(b);
    let ustar = group_closure(p, &ustar_gens, cap)?;
    measured.unitary_closure = Some(ustar.order() as u64);
    let semidirect = ustar.elements == unitary && !bgroup.contains(&b) && bgroup.is_normalized_by(&b);
    claims.push(
        "thm3.semidirect",
        semidirect,
        format!("closure(B, b) has {} elements; b in B: {}", ustar.order(), bgroup.contains(&b)),
    );

    let central = plan.central_units()?;
    let z: Vec<AlgebraElem> = central.iter().map(|c| c.element).collect();
    let w = group_closure(p, &z, cap)?;
    measured.central = Some(w.order() as u64);
    let w_central = z.iter().all(|x| x.commutes_with(&a) && x.commutes_with(&b));
    let w_meets_ustar = w.elements.iter().filter(|x| ustar.contains(x)).count();
    let product_ok = Some(w.order() as u64) == to_u64(&predicted.central)
        && w_central
        && w_meets_ustar == 1
        && (w.order() as u64) * (ustar.order() as u64) == census.units;
    claims.push(
        "thm3.direct-product",
        product_ok,
        format!("|W| = {}, |W cap U_*| = {w_meets_ustar}, |W||U_*| = {}", w.order(), w.order() * ustar.order()),
    );

    let independent = (0..z.len()).all(|i| {
        let others: Vec<AlgebraElem> = z.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| *x).collect();
        let rest = group_closure(p, &others, cap).expect("central units are units");
        let own = group_closure(p, &z[i..=i], cap).expect("central units are units");
        own.elements.iter().filter(|x| rest.contains(x)).count() == 1
    });
    claims.push("thm3.central-independence-scan", independent, "<z_i> meets <z_j : j != i> trivially");

    let rotations: HashSet<AlgebraElem> = (0..p).map(|i| GroupElem::rotation(p, i).into()).collect();
    let cap_d: HashSet<AlgebraElem> = GroupElem::all(p).map(AlgebraElem::from).filter(|g| bgroup.contains(g)).collect();
    claims.push("lem.D-cap-B", cap_d == rotations, format!("|D cap B| = {}", cap_d.len()));

    let unitary_ok = all_bicyclic_units(p).all(|(_, u)| u.is_unitary());
    claims.push("intro.bicyclic-unitary", unitary_ok, "every bicyclic unit is unitary");

    let mut ugens = z.clone();
    ugens.extend_from_slice(&ustar_gens);
    let normal = ugens.iter().all(|x| bgroup.is_normalized_by(x) && ustar.is_normalized_by(x));
    claims.push("cor1.normal", normal, "B and U_* are normalized by generators of U");

    // U = W x U_*, so its generators are those of W and U_*
    let u_gens = {
        let mut g = ustar.clone();
        g.generators.splice(0..0, w.generators.iter().copied());
        g
    };
    let u_derived = derived_subgroup(&u_gens, cap)?;
    let ustar_derived = derived_subgroup(&ustar, cap)?;
    measured.commutator = Some(u_derived.order() as u64);
    measured.unitary_commutator = Some(ustar_derived.order() as u64);
    let cor2 = u_derived.elements == ustar_derived.elements
        && u_derived.is_subset_of(&bgroup)
        && bgroup.generators.iter().all(|x| u_derived.is_normalized_by(x));
    let relation = if u_derived.order() == bgroup.order() { "U' = B" } else { "U' proper in B" };
    claims.push(
        "cor2.commutator",
        cor2,
        format!("|U'| = {}, |U_*'| = {}, {relation}", u_derived.order(), ustar_derived.order()),
    );
    let _ = one;
    Ok(())
}
