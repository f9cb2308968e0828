//! Exact computation of the unit group of the group algebra `F2[D_2p]` over
//! the two-element field, for odd primes `p`.
//!
//! The crate is layered bottom-up:
//!
//! * [`gf2poly`]: polynomials over GF(2) and the factorization of the
//!   cyclotomic polynomial `Phi_p` through 2-cyclotomic cosets;
//! * [`gf2ext`]: extension fields `GF(2^t)`, minimal polynomials, generators;
//! * [`dihedral`]: the group algebra itself, bicyclic units, units and
//!   unitary units;
//! * [`wedderburn`]: the explicit map onto `F2 + sum M2(GF(2^t))`, preimages
//!   of elementary matrices as products of bicyclic units and central units;
//! * [`unit_group`]: brute-force and structural verification of the order
//!   and structure claims.

pub mod arith;
pub mod dihedral;
pub mod error;
pub mod gf2ext;
pub mod gf2poly;
pub mod linalg;
pub mod unit_group;
pub mod wedderburn;

pub use dihedral::{AlgebraElem, GroupElem};
pub use error::{Error, Result};
pub use gf2ext::{FieldCtx, FieldElem};
pub use gf2poly::{Coset, CyclotomicFactor, Poly};
pub use unit_group::{Claim, Level, StructureReport, TheoreticalOrders};
pub use wedderburn::{DecompositionPlan, Mat2, Representation, SemisimpleElem};
