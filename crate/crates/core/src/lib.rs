//! Exact-arithmetic engine for the Morse-Bott (split) symplectic homology
//! chain complex of a divisor complement.
//!
//! The pipeline runs entirely over the integers and rationals: a validated
//! [`model::GeometrySpec`] (Morse data plus Gromov-Witten coefficient tables)
//! is turned into a graded complex by [`complex_builder`], the differential is
//! assembled in closed form by [`differential`], and [`homology`] reports
//! per-degree free ranks and torsion via Smith normal form. Companion
//! calculators live in [`index_calculus`] (spectra, Conley-Zehnder and
//! Riemann-Roch indices, lift counts) and [`orientation_algebra`] (fibre-sum
//! and preimage orientation signs).

pub mod complex_builder;
pub mod differential;
pub mod exact_linalg;
pub mod hamiltonian;
pub mod homology;
pub mod index_calculus;
pub mod model;
pub mod orientation_algebra;
pub mod specgen;

/// Exact rational scalar used for gradings, areas and monotonicity constants.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer scalar used by all matrices.
pub type Int = num_bigint::BigInt;

pub use complex_builder::{Decoration, Generator, GeneratorKind, GradedComplex, TrustedRange};
pub use exact_linalg::{HomologyGroup, IntMatrix, SmithDecomposition};
pub use homology::{CoefficientRing, ConeData, ExactnessReport, HomologyReport};
pub use model::{GeometrySpec, ValidationReport};

/// Builds a rational from an integer, saving a few characters at call sites.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}
