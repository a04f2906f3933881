//! Exact combinatorics for torsors on nodal curves and their degenerations.
//!
//! The crate covers root data and the Weyl alcove, cyclic local types
//! `Gamma_d -> T`, the A-type McKay correspondence, fiber weights of the
//! two-dimensional Bruhat-Tits group schemes on a resolved `A_{d-1}`
//! singularity, degrees of laced parabolic bundles, Schmitt slopes and
//! semistability verdicts, and monomial atlases of expanded degenerations.
//!
//! All arithmetic is exact ([`Rational`] wraps an arbitrary precision
//! fraction). Nothing in the crate uses floating point.

pub mod alcove;
pub mod bt_fibers;
pub mod charts;
pub mod cyclic_types;
pub mod error;
pub mod laced;
pub mod mckay;
pub mod rational;
pub mod root_datum;
pub mod selftest;
pub mod semistability;

pub use alcove::{ApartmentPoint, Facet};
pub use bt_fibers::{barycentric, fiber_description, group_characters, BarycentricCoords, FiberDescription};
pub use charts::{ChainBundleReport, ChartCheck, MonomialMap};
pub use cyclic_types::{Admissibility, CyclicType, RepresentationWeights};
pub use error::{Error, Result};
pub use laced::{BalancedWeights, LacedBundleData, Lacing, LocalType, Rank1NodalSheaf};
pub use mckay::McKayData;
pub use rational::Rational;
pub use root_datum::{Family, LieType, RootDatum};
pub use semistability::{
    CounterexampleReport, Mode, OneParamSubgroup, TfVerdict, WeightedFiltration,
};
