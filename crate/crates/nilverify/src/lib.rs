//! Exact-arithmetic verification engine for a six-dimensional quotient
//! construction: Chevalley–Eilenberg cohomology of a nilpotent Lie algebra
//! with explicit representatives, invariant cohomology under a finite
//! diagonal action, symplectic and complex-structure certificates,
//! Lefschetz-kernel certificates, and the exact fixed-point stratification
//! of the action on the Heisenberg nilmanifold.
//!
//! All arithmetic is exact over the cyclotomic field Q(zeta_12); there is
//! no floating point anywhere. Every positivity or rank claim is decided
//! by an algebraic certificate.

pub mod ce;
pub mod config;
pub mod equivariance;
pub mod exterior;
pub mod fixed_locus;
pub mod geometry;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod scalar;

pub use ce::{AlgebraSpec, CohomologyBasis, FlatnessCertificate};
pub use config::ManifoldConfig;
pub use equivariance::ActionSpec;
pub use exterior::{Form, GeneratorSet, Monomial};
pub use geometry::Orientation;
pub use scalar::{CycloScalar, Rational, Sign};
