//! Exact symbolic computation for twisted generalized Weyl algebras (TGWAs):
//! construction from defining data, consistency and Cartan-type verification,
//! fixed rings under diagonal automorphisms, normal-form arithmetic in types
//! (A₁)ⁿ and A₂ (localized), and simple weight modules with restriction.
//!
//! All arithmetic is exact, over a cyclotomic field ℚ(ζ_N) fixed per
//! computation.

pub mod aut;
pub mod datum;
pub mod error;
pub mod invariant;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use aut::{Point, RingAut};
pub use datum::{CartanReport, CartanType, ConsistencyReport, TgwaDatum, VDim};
pub use error::{Error, Result};
pub use invariant::{FixedSubring, SubringKind};
pub use poly::{Poly, PolyRing};
pub use scalar::{CycloField, Rat, Scalar};
