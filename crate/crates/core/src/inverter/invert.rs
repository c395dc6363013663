use num_traits::Zero;

use super::sequence::{build_sequence, build_sequences, SequenceOptions, SequenceRecord, StopIndex};
use super::{iteration_cap, max_inverse_degree, InvertError};
use crate::polymap::{Decomposition, MapError, PolynomialMap};
use crate::polyring::{Composer, Polynomial, Rational};

/// How terms above a degree bound are discarded while iterating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Start at `deg F`, verify, and double the bound on failure up to
    /// `(deg F)^(n-1)`.
    Adaptive,
    /// One pass at the given bound.
    Fixed(u32),
    /// One pass without truncation; caps come from `(deg F)^(n-1)`.
    Untruncated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertOptions {
    pub truncation: Truncation,
    /// Upper limit for adaptive doubling below the full inverse-degree bound.
    /// Failing below the full bound yields `BoundExhausted`, never a
    /// negative verdict.
    pub max_truncation: Option<u32>,
    /// Solve a coordinate as `G_i = Y_i - H_i(G)` once every variable of
    /// `H_i` has a solved inverse component; sequences are only built for
    /// the remaining coordinates.
    pub back_substitution: bool,
    /// Also run the untruncated sequences of the sequence-solved
    /// coordinates and record their stop indices.
    pub record_untruncated: bool,
    /// Term-count ceiling per sequence element.
    pub max_terms: Option<usize>,
}

impl Default for InvertOptions {
    fn default() -> Self {
        InvertOptions {
            truncation: Truncation::Adaptive,
            max_truncation: None,
            back_substitution: false,
            record_untruncated: false,
            max_terms: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotInvertibleReason {
    /// `det J(F)` is not a constant.
    NonconstantJacobian,
    /// `det J(F)` is the constant 0.
    ZeroJacobianConstant,
    /// At the full inverse-degree bound the sequences produced no inverse.
    SequenceExhausted,
}

impl NotInvertibleReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotInvertibleReason::NonconstantJacobian => "NonconstantJacobian",
            NotInvertibleReason::ZeroJacobianConstant => "ZeroJacobianConstant",
            NotInvertibleReason::SequenceExhausted => "SequenceExhausted",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InversionStatus {
    Inverted,
    NotInvertible(NotInvertibleReason),
    /// A user-imposed truncation limit was reached before an inverse was found.
    BoundExhausted,
}

/// One pass of the adaptive loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub truncation: Option<u32>,
    pub iteration_cap: usize,
    pub stop_indices: Vec<Option<usize>>,
    pub verified: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoordinateStats {
    /// Largest total degree among the computed `P_k^i`.
    pub max_degree: Option<u32>,
    /// Largest term count among the computed `P_k^i`.
    pub max_terms: usize,
    /// `deg G_i`.
    pub inverse_degree: Option<u32>,
    pub inverse_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub jacobian_determinant: Polynomial,
    /// Whether the input was first brought to `Id + H` form.
    pub normalized: bool,
    pub degree: Option<u32>,
    pub inverse_degree_bound: Option<u64>,
    pub attempts: Vec<Attempt>,
    /// Total number of `P_k` computed (0 when the Jacobian pre-check decides).
    pub sequence_steps: usize,
    /// Coordinates solved by back-substitution, 0-based.
    pub back_substituted: Vec<usize>,
    pub coordinates: Vec<CoordinateStats>,
    /// Stop indices of the untruncated sequences, if requested; `None`
    /// entries are back-substituted coordinates.
    pub untruncated_stop_indices: Option<Vec<Option<StopIndex>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionReport {
    pub status: InversionStatus,
    /// Present iff `status` is `Inverted`; always verified.
    pub inverse: Option<PolynomialMap>,
    /// `m_i` per coordinate; `None` for back-substituted or exhausted ones.
    pub stop_indices: Vec<Option<usize>>,
    /// Truncation degree of the final pass (`None` when untruncated).
    pub truncation_used: Option<u32>,
    pub verification: bool,
    pub diagnostics: Diagnostics,
}

/// `G_i = sum_{l < m_i} (-1)^l P_l^i` from one stopped record per coordinate.
pub fn assemble_inverse(records: &[SequenceRecord]) -> Result<PolynomialMap, InvertError> {
    if records.iter().enumerate().any(|(i, r)| r.coordinate != i) {
        return Err(InvertError::RecordLayout);
    }
    let components = records
        .iter()
        .map(|r| {
            r.alternating_sum().ok_or(InvertError::ExhaustedRecord {
                coordinate: r.coordinate,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolynomialMap::new(components)?)
}

/// Deterministic rational test points for the cheap rejection pass.
fn probe_points(n: usize) -> Vec<Vec<Rational>> {
    (0..2i64)
        .map(|t| {
            (0..n as i64)
                .map(|j| Rational::new((2 + 3 * j + 5 * t).into(), (7 + j + 2 * t).into()))
                .collect()
        })
        .collect()
}

fn fixes_point(outer: &PolynomialMap, inner: &PolynomialMap, point: &[Rational]) -> bool {
    inner
        .evaluate(point)
        .and_then(|y| outer.evaluate(&y))
        .is_ok_and(|z| z == point)
}

/// `g o f = Id` and `f o g = Id`, both by exact composition.
///
/// Candidates that already fail at a rational test point are rejected
/// before any symbolic work.
pub fn verify_inverse(f: &PolynomialMap, g: &PolynomialMap) -> bool {
    if f.dimension() != g.dimension() {
        return false;
    }
    let points = probe_points(f.dimension());
    if !points.iter().all(|p| fixes_point(f, g, p) && fixes_point(g, f, p)) {
        return false;
    }
    let forward = f.compose(g).is_ok_and(|c| c.is_identity());
    forward && g.compose(f).is_ok_and(|c| c.is_identity())
}

struct Solved {
    components: Option<Vec<Polynomial>>,
    stops: Vec<Option<usize>>,
    stats: Vec<CoordinateStats>,
    steps: usize,
    back_substituted: Vec<usize>,
}

fn record_stats(record: &SequenceRecord) -> CoordinateStats {
    CoordinateStats {
        max_degree: record.terms.iter().filter_map(Polynomial::total_degree).max(),
        max_terms: record.terms.iter().map(Polynomial::len).max().unwrap_or(0),
        ..CoordinateStats::default()
    }
}

/// Runs one pass at a fixed truncation and assembles a candidate inverse
/// of the `Id + H` map `f`.
fn solve(
    f: &PolynomialMap,
    dec: &Decomposition,
    opts: &SequenceOptions,
    back_substitution: bool,
) -> Result<Solved, InvertError> {
    let n = f.dimension();
    let mut acc = Solved {
        components: None,
        stops: vec![None; n],
        stats: vec![CoordinateStats::default(); n],
        steps: 0,
        back_substituted: Vec::new(),
    };
    let mut g: Vec<Option<Polynomial>> = vec![None; n];
    let mut exhausted = false;
    let mut absorb = |record: SequenceRecord, acc: &mut Solved, g: &mut Vec<Option<Polynomial>>| {
        let i = record.coordinate;
        acc.steps += record.steps();
        acc.stats[i] = record_stats(&record);
        acc.stops[i] = record.stop.index();
        match record.alternating_sum() {
            Some(sum) => g[i] = Some(sum),
            None => exhausted = true,
        }
        !exhausted
    };

    if !back_substitution {
        let coords: Vec<usize> = (0..n).collect();
        for record in build_sequences(f, &coords, opts)? {
            absorb(record, &mut acc, &mut g);
        }
    } else {
        let deps: Vec<Vec<bool>> = dec.h.components().iter().map(Polynomial::variables_used).collect();
        let mut alive = true;
        for (i, hi) in dec.h.components().iter().enumerate() {
            if hi.is_zero() {
                alive &= absorb(build_sequence(f, i, opts)?, &mut acc, &mut g);
            }
        }
        while alive && g.iter().any(Option::is_none) {
            let ready: Vec<usize> = (0..n)
                .filter(|&i| g[i].is_none() && deps[i].iter().zip(&g).all(|(&d, gj)| !d || gj.is_some()))
                .collect();
            if ready.is_empty() {
                // The unsolved variable that the most unsolved H_j depend on.
                let pick = (0..n)
                    .filter(|&i| g[i].is_none())
                    .max_by_key(|&i| {
                        let users = (0..n).filter(|&j| g[j].is_none() && deps[j][i]).count();
                        (users, std::cmp::Reverse(i))
                    })
                    .expect("an unsolved coordinate exists");
                alive &= absorb(build_sequence(f, pick, opts)?, &mut acc, &mut g);
                continue;
            }
            let images: Vec<Polynomial> = g
                .iter()
                .map(|gj| gj.clone().unwrap_or_else(|| Polynomial::zero(n)))
                .collect();
            let mut composer = Composer::new(&images, opts.truncation)?.with_limit(opts.max_terms);
            for i in ready {
                let h_of_g = composer.compose(&dec.h.components()[i])?;
                g[i] = Some(&Polynomial::var(n, i) - &h_of_g);
                acc.back_substituted.push(i);
            }
        }
    }

    if g.iter().all(Option::is_some) {
        acc.components = Some(g.into_iter().flatten().collect());
    }
    Ok(acc)
}

fn early_report(status: InversionStatus, n: usize, det: Polynomial) -> InversionReport {
    InversionReport {
        status,
        inverse: None,
        stop_indices: vec![None; n],
        truncation_used: None,
        verification: false,
        diagnostics: Diagnostics {
            jacobian_determinant: det,
            normalized: false,
            degree: None,
            inverse_degree_bound: None,
            attempts: Vec::new(),
            sequence_steps: 0,
            back_substituted: Vec::new(),
            coordinates: vec![CoordinateStats::default(); n],
            untruncated_stop_indices: None,
        },
    }
}

/// Full pipeline: Jacobian pre-check, normalization to `Id + H` if needed,
/// sequence passes with (adaptive) truncation, assembly, and exact
/// verification against the original map.
pub fn invert(f: &PolynomialMap, options: &InvertOptions) -> Result<InversionReport, InvertError> {
    let n = f.dimension();
    let det = f.jacobian().determinant();
    match det.as_constant() {
        None => {
            return Ok(early_report(
                InversionStatus::NotInvertible(NotInvertibleReason::NonconstantJacobian),
                n,
                det,
            ))
        }
        Some(c) if c.is_zero() => {
            return Ok(early_report(
                InversionStatus::NotInvertible(NotInvertibleReason::ZeroJacobianConstant),
                n,
                det,
            ))
        }
        Some(_) => {}
    }

    let (normal, certificate) = match f.decompose() {
        Ok(_) => (f.clone(), None),
        Err(MapError::NotIdPlusH { .. }) => {
            let (normal, cert) = f.normalize_affine()?;
            (normal, Some(cert))
        }
        Err(e) => return Err(e.into()),
    };
    let dec = normal.decompose()?;
    let target = certificate.as_ref().map(|c| c.target_map()).transpose()?;
    let finish = |g_normal: PolynomialMap| -> Result<PolynomialMap, InvertError> {
        Ok(match &target {
            Some(t) => g_normal.compose(t)?,
            None => g_normal,
        })
    };

    let mut diagnostics = Diagnostics {
        jacobian_determinant: det,
        normalized: certificate.is_some(),
        degree: normal.degree(),
        inverse_degree_bound: None,
        attempts: Vec::new(),
        sequence_steps: 0,
        back_substituted: Vec::new(),
        coordinates: vec![CoordinateStats::default(); n],
        untruncated_stop_indices: None,
    };

    if dec.is_zero() {
        let g = finish(PolynomialMap::identity(n))?;
        let verification = verify_inverse(f, &g);
        diagnostics.inverse_degree_bound = Some(1);
        diagnostics.sequence_steps = n;
        diagnostics.attempts.push(Attempt {
            truncation: None,
            iteration_cap: 1,
            stop_indices: vec![Some(1); n],
            verified: verification,
        });
        return Ok(InversionReport {
            status: InversionStatus::Inverted,
            inverse: Some(g),
            stop_indices: vec![Some(1); n],
            truncation_used: None,
            verification,
            diagnostics,
        });
    }

    let full_bound = max_inverse_degree(&normal)?;
    diagnostics.inverse_degree_bound = Some(full_bound);
    let full_bound_u32 = u32::try_from(full_bound).unwrap_or(u32::MAX);
    let ceiling = options.max_truncation.map_or(full_bound_u32, |m| m.min(full_bound_u32));
    let schedule: Vec<Option<u32>> = match options.truncation {
        Truncation::Untruncated => vec![None],
        Truncation::Fixed(b) => vec![Some(b)],
        Truncation::Adaptive => {
            let mut b = diagnostics.degree.unwrap_or(1).min(ceiling).max(1);
            let mut s = vec![Some(b)];
            while b < ceiling {
                b = b.saturating_mul(2).min(ceiling);
                s.push(Some(b));
            }
            s
        }
    };

    let mut last_stops = vec![None; n];
    let mut last_truncation = None;
    let mut success: Option<(PolynomialMap, Solved)> = None;
    for truncation in schedule {
        let cap = iteration_cap(&normal, truncation.map_or(full_bound, u64::from))?;
        let opts = SequenceOptions {
            truncation,
            cap,
            max_terms: options.max_terms,
        };
        let solved = solve(&normal, &dec, &opts, options.back_substitution)?;
        diagnostics.sequence_steps += solved.steps;
        let candidate = match &solved.components {
            Some(components) => Some(finish(PolynomialMap::new(components.clone())?)?),
            None => None,
        };
        let verified = candidate.as_ref().is_some_and(|g| verify_inverse(f, g));
        diagnostics.attempts.push(Attempt {
            truncation,
            iteration_cap: cap,
            stop_indices: solved.stops.clone(),
            verified,
        });
        last_stops = solved.stops.clone();
        last_truncation = truncation;
        if verified {
            success = Some((candidate.expect("verified candidate exists"), solved));
            break;
        }
    }

    let Some((g, solved)) = success else {
        let authoritative = match last_truncation {
            None => true,
            Some(b) => u64::from(b) >= full_bound,
        };
        let status = if authoritative {
            InversionStatus::NotInvertible(NotInvertibleReason::SequenceExhausted)
        } else {
            InversionStatus::BoundExhausted
        };
        return Ok(InversionReport {
            status,
            inverse: None,
            stop_indices: last_stops,
            truncation_used: last_truncation,
            verification: false,
            diagnostics,
        });
    };

    let mut stats = solved.stats;
    for (s, gi) in stats.iter_mut().zip(g.components()) {
        s.inverse_degree = gi.total_degree();
        s.inverse_terms = gi.len();
    }
    diagnostics.coordinates = stats;
    diagnostics.back_substituted = solved.back_substituted.clone();

    if options.record_untruncated {
        let cap = iteration_cap(&normal, full_bound)?;
        let opts = SequenceOptions {
            truncation: None,
            cap,
            max_terms: options.max_terms,
        };
        let coords: Vec<usize> = (0..n).filter(|i| !solved.back_substituted.contains(i)).collect();
        let records = build_sequences(&normal, &coords, &opts)?;
        let mut untruncated = vec![None; n];
        for r in records {
            untruncated[r.coordinate] = Some(r.stop);
        }
        diagnostics.untruncated_stop_indices = Some(untruncated);
    }

    Ok(InversionReport {
        status: InversionStatus::Inverted,
        inverse: Some(g),
        stop_indices: solved.stops,
        truncation_used: last_truncation,
        verification: true,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn planar() -> PolynomialMap {
        let inner = &x(2, 1) + &x(2, 0).pow(3);
        PolynomialMap::new(vec![&x(2, 0) + &inner.pow(2), inner]).unwrap()
    }

    fn planar_inverse() -> PolynomialMap {
        let g1 = &x(2, 0) - &x(2, 1).pow(2);
        let g2 = &x(2, 1) - &g1.pow(3);
        PolynomialMap::new(vec![g1, g2]).unwrap()
    }

    // X + (X2 - X3)^3 * (1, 1, 0) type map: H(F) = H, so G = X - H.
    fn quasi_translation() -> PolynomialMap {
        let w = (&x(3, 0) - &x(3, 1)).pow(3);
        PolynomialMap::new(vec![&x(3, 0) + &w.scale(&q(1)), &x(3, 1) + &w, x(3, 2)]).unwrap()
    }

    #[test]
    fn planar_example_inverts() {
        let report = invert(&planar(), &InvertOptions::default()).unwrap();
        assert_eq!(report.status, InversionStatus::Inverted);
        assert!(report.verification);
        assert_eq!(report.stop_indices, vec![Some(5), Some(5)]);
        assert_eq!(report.truncation_used, Some(6));
        assert_eq!(report.inverse.unwrap(), planar_inverse());
    }

    #[test]
    fn assembled_from_records() {
        let opts = SequenceOptions {
            truncation: Some(6),
            cap: 36,
            max_terms: None,
        };
        let records: Vec<_> = (0..2).map(|i| build_sequence(&planar(), i, &opts).unwrap()).collect();
        assert_eq!(assemble_inverse(&records).unwrap(), planar_inverse());

        let id = PolynomialMap::identity(2);
        let records: Vec<_> = (0..2)
            .map(|i| build_sequence(&id, i, &SequenceOptions::untruncated(1)).unwrap())
            .collect();
        assert!(assemble_inverse(&records).unwrap().is_identity());

        let shear = PolynomialMap::new(vec![&x(2, 0) + &x(2, 1).pow(3), x(2, 1)]).unwrap();
        let records: Vec<_> = (0..2)
            .map(|i| build_sequence(&shear, i, &SequenceOptions::untruncated(5)).unwrap())
            .collect();
        assert_eq!(records[0].stop, StopIndex::Stopped(2));
        assert_eq!(records[1].stop, StopIndex::Stopped(1));
        let g = assemble_inverse(&records).unwrap();
        assert_eq!(g.components(), &[&x(2, 0) - &x(2, 1).pow(3), x(2, 1)]);

        let bad = PolynomialMap::new(vec![&x(2, 0) + &x(2, 0).pow(3), x(2, 1)]).unwrap();
        let exhausted = build_sequence(&bad, 0, &SequenceOptions::untruncated(2)).unwrap();
        let ok = build_sequence(&bad, 1, &SequenceOptions::untruncated(2)).unwrap();
        assert_eq!(
            assemble_inverse(&[exhausted, ok]),
            Err(InvertError::ExhaustedRecord { coordinate: 0 })
        );
    }

    #[test]
    fn verification() {
        assert!(verify_inverse(&planar(), &planar_inverse()));
        assert!(verify_inverse(&PolynomialMap::identity(2), &PolynomialMap::identity(2)));
        assert!(!verify_inverse(&planar(), &PolynomialMap::identity(2)));
        assert!(!verify_inverse(&planar(), &PolynomialMap::identity(3)));
    }

    #[test]
    fn nonconstant_jacobian_rejected_up_front() {
        let f = PolynomialMap::new(vec![&x(2, 0) + &x(2, 0).pow(2), x(2, 1)]).unwrap();
        let report = invert(&f, &InvertOptions::default()).unwrap();
        assert_eq!(
            report.status,
            InversionStatus::NotInvertible(NotInvertibleReason::NonconstantJacobian)
        );
        assert_eq!(report.diagnostics.sequence_steps, 0);
        assert!(report.inverse.is_none() && !report.verification);

        let degenerate = PolynomialMap::new(vec![x(2, 0), Polynomial::zero(2)]).unwrap();
        let report = invert(&degenerate, &InvertOptions::default()).unwrap();
        assert_eq!(
            report.status,
            InversionStatus::NotInvertible(NotInvertibleReason::ZeroJacobianConstant)
        );
    }

    #[test]
    fn identity_inverts_to_identity() {
        let report = invert(&PolynomialMap::identity(3), &InvertOptions::default()).unwrap();
        assert_eq!(report.status, InversionStatus::Inverted);
        assert_eq!(report.stop_indices, vec![Some(1); 3]);
        assert!(report.inverse.unwrap().is_identity());
    }

    #[test]
    fn affine_input_is_normalized() {
        // 2 X1 + X2^3 + 1, X2 - 4
        let f = PolynomialMap::new(vec![
            &(&x(2, 0).scale(&q(2)) + &x(2, 1).pow(3)) + &Polynomial::one(2),
            &x(2, 1) - &Polynomial::constant(2, q(4)),
        ])
        .unwrap();
        let report = invert(&f, &InvertOptions::default()).unwrap();
        assert_eq!(report.status, InversionStatus::Inverted);
        assert!(report.diagnostics.normalized);
        let g = report.inverse.unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn truncation_modes_agree() {
        for truncation in [Truncation::Fixed(6), Truncation::Fixed(9), Truncation::Adaptive] {
            let opts = InvertOptions {
                truncation,
                ..InvertOptions::default()
            };
            let report = invert(&planar(), &opts).unwrap();
            assert_eq!(report.inverse.unwrap(), planar_inverse(), "{truncation:?}");
        }
        let cubic = quasi_translation();
        for truncation in [Truncation::Untruncated, Truncation::Fixed(3), Truncation::Adaptive] {
            let opts = InvertOptions {
                truncation,
                ..InvertOptions::default()
            };
            let report = invert(&cubic, &opts).unwrap();
            assert!(report.verification, "{truncation:?}");
            assert_eq!(report.stop_indices, vec![Some(2), Some(2), Some(1)]);
        }
    }

    #[test]
    fn low_fixed_truncation_is_not_a_verdict() {
        let opts = InvertOptions {
            truncation: Truncation::Fixed(3),
            ..InvertOptions::default()
        };
        let report = invert(&planar(), &opts).unwrap();
        assert_eq!(report.status, InversionStatus::BoundExhausted);
        let opts = InvertOptions {
            max_truncation: Some(4),
            ..InvertOptions::default()
        };
        assert_eq!(
            invert(&planar(), &opts).unwrap().status,
            InversionStatus::BoundExhausted
        );
    }

    #[test]
    fn back_substitution_matches_sequences() {
        let opts = InvertOptions {
            back_substitution: true,
            record_untruncated: true,
            ..InvertOptions::default()
        };
        // X1 + X2^2, X2 + X3^3, X3: only the last coordinate needs a sequence.
        let f = PolynomialMap::new(vec![&x(3, 0) + &x(3, 1).pow(2), &x(3, 1) + &x(3, 2).pow(3), x(3, 2)]).unwrap();
        let report = invert(&f, &opts).unwrap();
        assert!(report.verification);
        assert_eq!(report.diagnostics.back_substituted, vec![1, 0]);
        assert_eq!(report.stop_indices, vec![None, None, Some(1)]);
        let untruncated = report.diagnostics.untruncated_stop_indices.unwrap();
        assert_eq!(untruncated, vec![None, None, Some(StopIndex::Stopped(1))]);

        let report = invert(
            &planar(),
            &InvertOptions {
                back_substitution: true,
                ..InvertOptions::default()
            },
        )
        .unwrap();
        assert_eq!(report.inverse.unwrap(), planar_inverse());
        assert_eq!(report.diagnostics.back_substituted, vec![1]);
        assert_eq!(report.stop_indices, vec![Some(5), None]);
    }

    #[test]
    fn resource_limit_surfaces_as_error() {
        let opts = InvertOptions {
            max_terms: Some(2),
            ..InvertOptions::default()
        };
        assert!(matches!(
            invert(&planar(), &opts),
            Err(InvertError::ResourceLimit { .. })
        ));
    }
}
