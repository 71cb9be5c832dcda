//! Exact integral cohomology rings of truncated polynomial presentations,
//! the two-row spectral sequence of a circle bundle, and the homotopy
//! bookkeeping needed to tell spaces apart.

pub mod abelian;
pub mod catalog;
pub mod distinguish;
pub mod grading;
pub mod gysin;
pub mod homotopy;
pub mod serde_int;

pub use abelian::{AbelianError, FgAbelianGroup, IntMatrix, PresentedHom};
pub use catalog::{CatalogError, Provenance, SpaceData, SpaceId, SpaceSpec, Variant};
pub use distinguish::{ComparisonReport, DistinguishError, InvariantVector, IsoWitness, PowerIndex};
pub use grading::{GradedRing, GradingError, PolynomialExpr, RingElement, RingPresentation};
pub use gysin::{D2Constraint, GysinError, GysinRun, SSPage, Verdict};
pub use homotopy::{FibrationSpec, HomotopyError, PiEntry, PiTable};
