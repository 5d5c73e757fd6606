//! Exact enumeration of modular knots, the primitive hyperbolic conjugacy
//! classes of `PSL(2, Z)`, together with three independent computations of
//! the Rademacher symbol and the distribution statistics built on top of it.
//!
//! Integer matrix algebra is generic over [`ExactInt`] (machine integers or
//! [`BigInt`]), floating-point machinery over [`Real`] (`f32`/`f64`). The
//! aliases below fix the concrete types used by enumeration output and the
//! command-line front end.

pub mod enumeration;
pub mod error;
pub mod scalar;
pub mod sl2;
pub mod statistics;
pub mod symbols;
pub mod verify;
pub mod winding;

pub use num_bigint::BigInt;

pub use enumeration::{
    are_conjugate_oracle, brute_force_classes, classes_by_length, enumerate_classes,
    enumerate_classes_with, ClassRecord, EnumerationParams, SearchStrategy,
};
pub use error::{Error, Result};
pub use scalar::{ExactInt, Real};
pub use sl2::{
    canonical_necklace, conjugate, spectral, word_to_matrix, Letter, LRNecklace, LRWord, Mat2,
    RealMat2, SpectralData,
};
pub use statistics::{
    cauchy_cdf, cauchy_cdf_compare, cauchy_mass, convergence_trend, density_mod_m, CauchyBin,
    CauchyReport, DensityReport,
};
pub use symbols::{
    dedekind_sum, dedekind_sum_naive, delta_q, log_delta, phi, phi_numeric_oracle, psi,
    psi_from_word, symbol_record, SymbolRecord,
};
pub use winding::{axis_frame, orbit_samples, winding_psi, OrbitSampling, TangentPoint, Winding};

/// Arbitrary-precision element of `SL(2, Z)`.
pub type Mat2Z = Mat2<BigInt>;
/// Machine-word element of `SL(2, Z)`, for small searches and oracles.
pub type Mat2I64 = Mat2<i64>;
/// Exact rational with arbitrary-precision parts.
pub type Rational = num_rational::Ratio<BigInt>;
/// Double-precision complex number.
pub type ComplexVal = num_complex::Complex<f64>;
/// Double-precision real `SL(2, R)` frame.
pub type Frame = RealMat2<f64>;
