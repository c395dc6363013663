//! The inversion algorithm and the classifications built on it.
//!
//! For `F = Id + H` and a polynomial `P`, the sequence `P_0 = P`,
//! `P_k = P_{k-1}(F) - P_{k-1}` telescopes:
//! `P = sum_{l<m} (-1)^l P_l(F) + (-1)^m P_m`. Started from `P = X_i`, a
//! vanishing `P_m` makes the alternating sum the `i`-th component of the
//! inverse. If `F` is invertible this always happens. The lower degree of
//! `P_k` grows by at least `d - 1` per step, where `d >= 2` is the minimal
//! lower degree of `H`, so every term above the inverse degree can be
//! discarded during the iteration.

mod bounds;
mod invert;
mod quasi;
mod sequence;

pub use bounds::{iteration_cap, max_inverse_degree};
pub use invert::{
    assemble_inverse, invert, verify_inverse, Attempt, CoordinateStats, Diagnostics, InversionReport, InversionStatus,
    InvertOptions, NotInvertibleReason, Truncation,
};
pub use quasi::{is_quasi_translation, QuasiTranslationReport};
pub use sequence::{
    build_sequence, extract_invariants, filtration_level, telescoping_check, FiltrationLevel, SequenceOptions,
    SequenceRecord, StopIndex,
};

use thiserror::Error;

use crate::polymap::MapError;
use crate::polyring::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvertError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the map is constant, so it has no inverse degree bound")]
    ConstantMap,
    #[error("coordinate {} out of range for dimension {dimension}", .coordinate + 1)]
    CoordinateOutOfRange { coordinate: usize, dimension: usize },
    #[error("sequence for coordinate {} exhausted its iteration cap", .coordinate + 1)]
    ExhaustedRecord { coordinate: usize },
    #[error("expected one sequence record per coordinate, in order")]
    RecordLayout,
    #[error("resource limit: computing P_{step} for coordinate {} reached {terms} terms (limit {limit})", .coordinate + 1)]
    ResourceLimit {
        coordinate: usize,
        step: usize,
        terms: usize,
        limit: usize,
    },
    #[error("P_(m-1) for coordinate {} is not invariant under F; was the record truncated?", .coordinate + 1)]
    InvariantCheckFailed { coordinate: usize },
    #[error("quasi-translation criteria disagree (sequence: {via_sequence}, JH*H: {via_jacobian})")]
    QuasiTranslationDisagreement { via_sequence: bool, via_jacobian: bool },
}
