//! Exact inversion of polynomial maps `F = Id + H` over the rationals.
//!
//! For each coordinate `i` the inverter iterates `P_0 = X_i`,
//! `P_k = P_{k-1}(F) - P_{k-1}`. When every sequence reaches the zero
//! polynomial, the alternating sum of its earlier terms is the `i`-th
//! component of `F^{-1}`. Every inverse this crate reports has been checked
//! by exact composition in both directions.
//!
//! The crate is split into three layers:
//!
//! * [`polyring`]: sparse multivariate polynomials with `BigRational`
//!   coefficients, composition, truncation and homogeneous components.
//! * [`polymap`]: polynomial maps, Jacobians, determinants, the `Id + H`
//!   decomposition, affine normalization and Drużkowski maps.
//! * [`inverter`]: the sequences themselves, inverse assembly and
//!   verification, invariants, quasi-translations and the filtration level.
//!
//! With the default `parallel` feature the heavy inner loops (large
//! products, composition and the per-coordinate sequences) run on rayon.
//! Without it everything runs on the calling thread, and the results are
//! identical.

pub mod inverter;
mod par;
pub mod polymap;
pub mod polyring;

pub use inverter::{
    assemble_inverse, build_sequence, extract_invariants, filtration_level, invert, is_quasi_translation,
    iteration_cap, max_inverse_degree, telescoping_check, verify_inverse, FiltrationLevel, InversionReport,
    InversionStatus, InvertError, InvertOptions, NotInvertibleReason, QuasiTranslationReport, SequenceOptions,
    SequenceRecord, StopIndex, Truncation,
};
pub use polymap::{AffineCertificate, Decomposition, JacobianMatrix, MapError, PolynomialMap, RationalMatrix};
pub use polyring::{Degrees, Monomial, PolyError, Polynomial, Rational};
