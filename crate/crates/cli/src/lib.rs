//! Report documents and command implementations behind the `f2d2p` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use f2d2p::arith::ensure_odd_prime;
use f2d2p::dihedral::{distinct_bicyclic_units, ensure_supported_prime};
use f2d2p::gf2poly::factor_cyclotomic;
use f2d2p::unit_group::{
    block_shape, group_closure, theoretical_orders, verify_structure, EnumerationLimit, MeasuredOrders, VerifyOptions,
};
use f2d2p::{AlgebraElem, DecompositionPlan, Error, Level, Mat2, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `p` accepted by `factor`.
pub const FACTOR_MAX_PRIME: u64 = (1 << 31) - 1;
/// Largest number of cyclotomic factors `factor` will list.
pub const FACTOR_MAX_COUNT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub command: String,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<Level>,
    pub force: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_bits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub set: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub representative: u64,
    pub coset: Vec<u64>,
    /// Little-endian coefficient string.
    pub poly: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub index: usize,
    pub factor: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub paired_factor: Option<usize>,
    pub gamma: String,
    pub beta_minpoly: String,
    pub a_image: [String; 4],
    pub b_image: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub d: u64,
    pub d_even: bool,
    pub t: u64,
    pub k: u64,
    /// `k` copies of `GL_2(GF(2^t))`, as text.
    pub shape: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub root_field_modulus: Option<String>,
    #[serde(default)]
    pub blocks: Vec<BlockEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSet {
    pub units: String,
    pub bicyclic: String,
    pub unitary: String,
    pub central: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub units: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bicyclic: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unitary: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unitary_closure: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub central: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub commutator: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unitary_commutator: Option<u64>,
}

impl From<&MeasuredOrders> for Measured {
    fn from(m: &MeasuredOrders) -> Self {
        Self {
            units: m.units,
            bicyclic: m.bicyclic,
            unitary: m.unitary,
            unitary_closure: m.unitary_closure,
            central: m.central,
            commutator: m.commutator,
            unitary_commutator: m.unitary_commutator,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orders {
    pub predicted: OrderSet,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub measured: Option<Measured>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimEntry {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureEntry {
    pub size: u64,
    pub generators: u64,
    pub irredundant_generators: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub plan: Option<PlanEntry>,
    pub factors: Vec<FactorEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orders: Option<Orders>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub claims: Option<Vec<ClaimEntry>>,
    /// Claim id to outcome.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub outcomes: Option<BTreeMap<String, bool>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closure: Option<ClosureEntry>,
    pub timing: Timing,
}

impl ReportDocument {
    /// Exit status: 1 if any claim failed.
    pub fn exit_code(&self) -> i32 {
        match &self.claims {
            Some(claims) if claims.iter().any(|c| !c.passed) => 1,
            _ => 0,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let p = self.params.p;
        if let Some(plan) = &self.plan {
            let parity = if plan.d_even { "even" } else { "odd" };
            let _ = writeln!(out, "p = {p}: d = {} ({parity}), t = {}, k = {}", plan.d, plan.t, plan.k);
            let _ = writeln!(out, "shape: {}", plan.shape);
        }
        if !self.factors.is_empty() {
            let _ = writeln!(out, "factors of Phi_{p} over GF(2):");
            for f in &self.factors {
                let coset: Vec<String> = f.coset.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "  {} {{{}}}", f.poly, coset.join(","));
            }
        }
        if let Some(plan) = &self.plan {
            for b in &plan.blocks {
                let _ = writeln!(
                    out,
                    "block {}: factor {}{}, minpoly(beta) = {}, gamma = {}",
                    b.index,
                    b.factor,
                    b.paired_factor.map_or(String::new(), |j| format!(" paired with {j}")),
                    b.beta_minpoly,
                    b.gamma
                );
            }
        }
        if let Some(orders) = &self.orders {
            let pr = &orders.predicted;
            let m = orders.measured.clone().unwrap_or_default();
            let row = |name: &str, pred: &str, meas: Option<u64>| match meas {
                Some(v) => format!("  |{name}| = {pred} (measured {v})\n"),
                None => format!("  |{name}| = {pred}\n"),
            };
            out.push_str("orders:\n");
            out.push_str(&row("U", &pr.units, m.units));
            out.push_str(&row("B", &pr.bicyclic, m.bicyclic));
            out.push_str(&row("U_*", &pr.unitary, m.unitary));
            out.push_str(&row("W", &pr.central, m.central));
            if let Some(c) = m.commutator {
                let _ = writeln!(out, "  |U'| = {c}, |U_*'| = {}", m.unitary_commutator.unwrap_or_default());
            }
        }
        if let Some(c) = &self.closure {
            let _ = writeln!(
                out,
                "closure of {} generators ({} irredundant): {} elements",
                c.generators, c.irredundant_generators, c.size
            );
        }
        if let Some(claims) = &self.claims {
            let passed = claims.iter().filter(|c| c.passed).count();
            let _ = writeln!(out, "claims ({passed}/{} passed):", claims.len());
            for c in claims {
                let _ = writeln!(out, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.id, c.detail);
            }
        }
        let _ = writeln!(out, "elapsed: {:.1} ms", self.timing.elapsed_us as f64 / 1e3);
        out
    }
}

fn shape(k: u64, t: u64) -> String {
    let group = format!("GL2(F_{})", 1u128 << t);
    if k == 1 {
        group
    } else {
        format!("{k} x {group}")
    }
}

fn mat_entries(m: &Mat2) -> [String; 4] {
    let [[a, b], [c, d]] = m.0;
    [a.to_string(), b.to_string(), c.to_string(), d.to_string()]
}

fn plan_entry(plan: &DecompositionPlan) -> PlanEntry {
    let s = plan.summary();
    PlanEntry {
        d: s.d as u64,
        d_even: s.d_even,
        t: s.t as u64,
        k: s.k as u64,
        shape: shape(s.k as u64, s.t as u64),
        root_field_modulus: Some(s.root_field_modulus.to_string()),
        blocks: s
            .blocks
            .iter()
            .map(|b| BlockEntry {
                index: b.index,
                factor: b.factor,
                paired_factor: b.paired_factor,
                gamma: b.gamma.clone(),
                beta_minpoly: b.beta_minpoly.to_string(),
                a_image: mat_entries(&b.a_image),
                b_image: mat_entries(&b.b_image),
            })
            .collect(),
    }
}

fn factor_entries(plan: &DecompositionPlan) -> Vec<FactorEntry> {
    plan.factors
        .iter()
        .map(|f| FactorEntry {
            representative: f.coset.representative,
            coset: f.coset.elements.clone(),
            poly: f.poly.to_string(),
        })
        .collect()
}

fn predicted(p: u64) -> Result<OrderSet> {
    let o = theoretical_orders(p)?;
    Ok(OrderSet {
        units: o.units.to_string(),
        bicyclic: o.bicyclic.to_string(),
        unitary: o.unitary.to_string(),
        central: o.central.to_string(),
    })
}

fn document(params: Params, start: Instant) -> ReportDocument {
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        params,
        plan: None,
        factors: Vec::new(),
        orders: None,
        claims: None,
        outcomes: None,
        closure: None,
        timing: Timing { elapsed_us: 0 },
    }
    .timed(start)
}

impl ReportDocument {
    fn timed(mut self, start: Instant) -> Self {
        self.timing.elapsed_us = start.elapsed().as_micros() as u64;
        self
    }
}

fn params(command: &str, p: u64) -> Params {
    Params { command: command.into(), p, level: None, force: false, max_bits: None, set: None }
}

/// Factorization of `Phi_p` over GF(2), for `p < 2^31` with `d <= 127`.
pub fn cmd_factor(p: u64) -> Result<ReportDocument> {
    let start = Instant::now();
    ensure_odd_prime(p)?;
    if p > FACTOR_MAX_PRIME {
        return Err(Error::PrimeTooLarge { p, max: FACTOR_MAX_PRIME });
    }
    let (d, t, k) = block_shape(p)?;
    let count = (p - 1) / d;
    if count > FACTOR_MAX_COUNT {
        return Err(Error::Parse(format!("Phi_{p} has {count} factors, more than the limit {FACTOR_MAX_COUNT}")));
    }
    let factors = factor_cyclotomic(p)?
        .into_iter()
        .map(|f| FactorEntry {
            representative: f.coset.representative,
            coset: f.coset.elements,
            poly: f.poly.to_string(),
        })
        .collect();
    let mut doc = document(params("factor", p), start);
    doc.plan = Some(PlanEntry {
        d,
        d_even: d % 2 == 0,
        t,
        k,
        shape: shape(k, t),
        root_field_modulus: None,
        blocks: Vec::new(),
    });
    doc.factors = factors;
    Ok(doc.timed(start))
}

/// Decomposition plan and predicted orders.
pub fn cmd_report(p: u64) -> Result<ReportDocument> {
    let start = Instant::now();
    ensure_odd_prime(p)?;
    ensure_supported_prime(p)?;
    let plan = DecompositionPlan::build(p)?;
    let mut doc = document(params("report", p), start);
    doc.plan = Some(plan_entry(&plan));
    doc.factors = factor_entries(&plan);
    doc.orders = Some(Orders { predicted: predicted(p)?, measured: None });
    Ok(doc.timed(start))
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyArgs {
    pub level: Level,
    pub force: bool,
    pub max_bits: Option<u32>,
}

pub fn enumeration_limit(force: bool, max_bits: Option<u32>) -> EnumerationLimit {
    match max_bits {
        Some(max_bits) => EnumerationLimit { max_bits },
        None if force => EnumerationLimit::forced(),
        None => EnumerationLimit::default(),
    }
}

/// Runs every claim at the requested level.
pub fn cmd_verify(p: u64, args: VerifyArgs) -> Result<ReportDocument> {
    let start = Instant::now();
    let opts = VerifyOptions {
        level: args.level,
        limit: enumeration_limit(args.force, args.max_bits),
        ..VerifyOptions::default()
    };
    let report = verify_structure(p, &opts)?;
    let plan = DecompositionPlan::build(p)?;
    let mut prm = params("verify", p);
    prm.level = Some(args.level);
    prm.force = args.force;
    prm.max_bits = args.max_bits;
    let mut doc = document(prm, start);
    doc.plan = Some(plan_entry(&plan));
    doc.factors = factor_entries(&plan);
    doc.orders = Some(Orders {
        predicted: predicted(p)?,
        measured: (args.level == Level::Exhaustive).then(|| Measured::from(&report.measured)),
    });
    doc.claims = Some(
        report
            .claims
            .iter()
            .map(|c| ClaimEntry { id: c.id.to_string(), passed: c.passed, detail: c.detail.clone() })
            .collect(),
    );
    doc.outcomes = Some(report.claims.iter().map(|c| (c.id.to_string(), c.passed)).collect());
    Ok(doc.timed(start))
}

/// Named generating sets for `closure`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSet {
    Bicyclic,
    Unitary,
    Central,
    Units,
}

impl GeneratorSet {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Bicyclic => "bicyclic",
            Self::Unitary => "unitary",
            Self::Central => "central",
            Self::Units => "units",
        }
    }
}

pub fn generators(p: u64, set: GeneratorSet) -> Result<Vec<AlgebraElem>> {
    ensure_odd_prime(p)?;
    ensure_supported_prime(p)?;
    let p32 = p as u32;
    let mut gens = Vec::new();
    if matches!(set, GeneratorSet::Central | GeneratorSet::Units) {
        let plan = DecompositionPlan::build(p)?;
        gens.extend(plan.central_units()?.into_iter().map(|z| z.element));
    }
    if matches!(set, GeneratorSet::Bicyclic | GeneratorSet::Unitary | GeneratorSet::Units) {
        gens.extend(distinct_bicyclic_units(p32));
    }
    if matches!(set, GeneratorSet::Unitary | GeneratorSet::Units) {
        gens.push(AlgebraElem::b(p32));
    }
    Ok(gens)
}

/// Closure of a named generating set plus any explicit generators.
pub fn cmd_closure(p: u64, set: Option<GeneratorSet>, extra: &[String], cap: usize) -> Result<ReportDocument> {
    let start = Instant::now();
    ensure_odd_prime(p)?;
    ensure_supported_prime(p)?;
    let p32 = p as u32;
    let mut gens = match set {
        Some(s) => generators(p, s)?,
        None => Vec::new(),
    };
    for s in extra {
        let x = AlgebraElem::parse(s)?;
        if x.p() != p32 {
            return Err(Error::MismatchedPrime(p32, x.p()));
        }
        gens.push(x);
    }
    let group = group_closure(p32, &gens, cap)?;
    let mut prm = params("closure", p);
    prm.set = Some(match set {
        Some(s) => s.name().to_string(),
        None => "explicit".to_string(),
    });
    let mut doc = document(prm, start);
    doc.orders = Some(Orders { predicted: predicted(p)?, measured: None });
    doc.closure = Some(ClosureEntry {
        size: group.order() as u64,
        generators: gens.len() as u64,
        irredundant_generators: group.generators.len() as u64,
    });
    Ok(doc.timed(start))
}
