use std::fmt;

use super::InvertError;
use crate::par;
use crate::polymap::PolynomialMap;
use crate::polyring::{Composer, PolyError, Polynomial};

/// First index at which a sequence vanished, or that it never did within
/// its cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StopIndex {
    Stopped(usize),
    Exhausted,
}

impl StopIndex {
    pub fn index(self) -> Option<usize> {
        match self {
            StopIndex::Stopped(m) => Some(m),
            StopIndex::Exhausted => None,
        }
    }
}

impl fmt::Display for StopIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopIndex::Stopped(m) => write!(f, "{m}"),
            StopIndex::Exhausted => f.write_str("exhausted"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceOptions {
    /// Discard terms of total degree above this bound after every step.
    pub truncation: Option<u32>,
    /// Maximum number of steps `k`.
    pub cap: usize,
    /// Abort once a single `P_k` has more terms than this.
    pub max_terms: Option<usize>,
}

impl SequenceOptions {
    pub fn untruncated(cap: usize) -> Self {
        SequenceOptions {
            truncation: None,
            cap,
            max_terms: None,
        }
    }
}

/// Trace of `P_0^i, P_1^i, ...` for one coordinate.
///
/// When `stop` is `Stopped(m)`, `terms[m]` is the zero polynomial and every
/// earlier term is nonzero. When exhausted, `terms` holds `P_0 ..= P_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRecord {
    pub coordinate: usize,
    pub truncation: Option<u32>,
    pub terms: Vec<Polynomial>,
    pub stop: StopIndex,
    pub iteration_cap: usize,
}

impl SequenceRecord {
    /// `sum_{l<m} (-1)^l P_l`, if the sequence stopped.
    pub fn alternating_sum(&self) -> Option<Polynomial> {
        let m = self.stop.index()?;
        let nvars = self.terms[0].nvars();
        Some(
            self.terms[..m]
                .iter()
                .enumerate()
                .fold(
                    Polynomial::zero(nvars),
                    |acc, (l, p)| {
                        if l % 2 == 0 {
                            &acc + p
                        } else {
                            &acc - p
                        }
                    },
                ),
        )
    }

    /// Number of computed steps (`P_1` onwards).
    pub fn steps(&self) -> usize {
        self.terms.len() - 1
    }
}

/// Iterates `P_k = trunc(P_{k-1}(F) - P_{k-1})` from `start` until zero or
/// `cap` steps. `coordinate` only labels resource-limit errors.
pub(crate) fn iterate(
    f: &PolynomialMap,
    start: Polynomial,
    coordinate: usize,
    opts: &SequenceOptions,
) -> Result<(Vec<Polynomial>, StopIndex), InvertError> {
    let mut composer = Composer::new(f.components(), opts.truncation)?.with_limit(opts.max_terms);
    let mut terms = vec![start];
    for k in 1..=opts.cap {
        let prev = terms.last().expect("nonempty");
        let image = composer.compose(prev).map_err(|e| match e {
            PolyError::TooLarge { terms, limit } => InvertError::ResourceLimit {
                coordinate,
                step: k,
                terms,
                limit,
            },
            other => other.into(),
        })?;
        let next = &image - prev;
        if let Some(limit) = opts.max_terms {
            if next.len() > limit {
                return Err(InvertError::ResourceLimit {
                    coordinate,
                    step: k,
                    terms: next.len(),
                    limit,
                });
            }
        }
        let done = next.is_zero();
        terms.push(next);
        if done {
            return Ok((terms, StopIndex::Stopped(k)));
        }
    }
    Ok((terms, StopIndex::Exhausted))
}

/// Builds the sequence started from `P_0 = X_coordinate` (0-based).
pub fn build_sequence(
    f: &PolynomialMap,
    coordinate: usize,
    opts: &SequenceOptions,
) -> Result<SequenceRecord, InvertError> {
    f.decompose()?;
    let n = f.dimension();
    if coordinate >= n {
        return Err(InvertError::CoordinateOutOfRange {
            coordinate,
            dimension: n,
        });
    }
    let start = Polynomial::var(n, coordinate);
    let (terms, stop) = iterate(f, start, coordinate, opts)?;
    Ok(SequenceRecord {
        coordinate,
        truncation: opts.truncation,
        terms,
        stop,
        iteration_cap: opts.cap,
    })
}

/// One record per listed coordinate, built independently.
pub(crate) fn build_sequences(
    f: &PolynomialMap,
    coordinates: &[usize],
    opts: &SequenceOptions,
) -> Result<Vec<SequenceRecord>, InvertError> {
    par::map_collect(coordinates, |&i| build_sequence(f, i, opts))
        .into_iter()
        .collect()
}

/// Checks `p = sum_{l<m} (-1)^l P_l(F) + (-1)^m P_m` with the untruncated
/// sequence started from `p`.
pub fn telescoping_check(f: &PolynomialMap, p: &Polynomial, m: usize) -> Result<bool, InvertError> {
    f.decompose()?;
    if p.nvars() != f.dimension() {
        return Err(InvertError::Poly(crate::PolyError::DimensionMismatch {
            expected: f.dimension(),
            found: p.nvars(),
        }));
    }
    let mut composer = Composer::new(f.components(), None)?;
    let mut seq = vec![p.clone()];
    for _ in 0..m {
        let prev = seq.last().expect("nonempty");
        let next = &composer.compose(prev)? - prev;
        seq.push(next);
    }
    let mut rhs = if m.is_multiple_of(2) { seq[m].clone() } else { -&seq[m] };
    for (l, pl) in seq[..m].iter().enumerate() {
        let image = composer.compose(pl)?;
        rhs = if l % 2 == 0 { &rhs + &image } else { &rhs - &image };
    }
    Ok(rhs == *p)
}

/// `P_{m_i - 1}^i` for every record that stopped; each is checked to
/// satisfy `P(F) = P` before it is returned.
pub fn extract_invariants(f: &PolynomialMap, records: &[SequenceRecord]) -> Result<Vec<Polynomial>, InvertError> {
    let mut composer = Composer::new(f.components(), None)?;
    let mut out = Vec::new();
    for record in records {
        let Some(m) = record.stop.index() else {
            continue;
        };
        let candidate = &record.terms[m - 1];
        if composer.compose(candidate)? != *candidate {
            return Err(InvertError::InvariantCheckFailed {
                coordinate: record.coordinate,
            });
        }
        out.push(candidate.clone());
    }
    Ok(out)
}

/// Position of a map in the filtration by the first index at which all
/// untruncated sequences vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationLevel {
    Level(usize),
    AboveCap,
}

impl fmt::Display for FiltrationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationLevel::Level(k) => write!(f, "{k}"),
            FiltrationLevel::AboveCap => f.write_str("above cap"),
        }
    }
}

/// Smallest `k <= cap` with `P_k^i = 0` for every `i` (untruncated).
///
/// If all sequences vanish, the alternating sums form a left inverse `G`
/// of `F`, and then `det J(G)(F) * det J(F) = 1` forces a constant
/// Jacobian determinant. A nonconstant determinant therefore answers
/// `AboveCap` without iterating.
pub fn filtration_level(
    f: &PolynomialMap,
    cap: usize,
    max_terms: Option<usize>,
) -> Result<FiltrationLevel, InvertError> {
    let dec = f.decompose()?;
    if dec.is_zero() {
        return Ok(if cap >= 1 {
            FiltrationLevel::Level(1)
        } else {
            FiltrationLevel::AboveCap
        });
    }
    if f.jacobian().determinant().as_constant().is_none() {
        return Ok(FiltrationLevel::AboveCap);
    }
    let coords: Vec<usize> = (0..f.dimension()).collect();
    let opts = SequenceOptions {
        truncation: None,
        cap,
        max_terms,
    };
    let records = build_sequences(f, &coords, &opts)?;
    let mut level = 0;
    for r in &records {
        match r.stop {
            StopIndex::Stopped(m) => level = level.max(m),
            StopIndex::Exhausted => return Ok(FiltrationLevel::AboveCap),
        }
    }
    Ok(FiltrationLevel::Level(level))
}
