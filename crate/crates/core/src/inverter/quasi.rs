use super::InvertError;
use crate::polymap::PolynomialMap;
use crate::polyring::Composer;

/// The two independent quasi-translation tests for `F = Id + H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuasiTranslationReport {
    /// `P_2^i = H_i(F) - H_i = 0` for every `i`, untruncated.
    pub via_sequence: bool,
    /// `JH * H = 0`.
    pub via_jacobian: bool,
    /// Always `true` in a returned report; a disagreement is an error.
    pub agree: bool,
    /// For positives: whether `(Id - H) o (Id + H) = Id` exactly.
    pub inverse_is_id_minus_h: Option<bool>,
}

impl QuasiTranslationReport {
    pub fn is_quasi_translation(&self) -> bool {
        self.via_sequence && self.via_jacobian
    }
}

pub fn is_quasi_translation(f: &PolynomialMap) -> Result<QuasiTranslationReport, InvertError> {
    let dec = f.decompose()?;
    let h = dec.h.components();

    let mut composer = Composer::new(f.components(), None)?;
    let mut via_sequence = true;
    for hi in h {
        if composer.compose(hi)? != *hi {
            via_sequence = false;
            break;
        }
    }

    let jh = dec.h.jacobian();
    let via_jacobian = jh.mul_vector(h)?.iter().all(|p| p.is_zero());

    if via_sequence != via_jacobian {
        return Err(InvertError::QuasiTranslationDisagreement {
            via_sequence,
            via_jacobian,
        });
    }
    let inverse_is_id_minus_h = if via_sequence {
        let g = PolynomialMap::identity_minus(&dec.h);
        Some(g.compose(f)?.is_identity())
    } else {
        None
    };
    Ok(QuasiTranslationReport {
        via_sequence,
        via_jacobian,
        agree: true,
        inverse_is_id_minus_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Polynomial;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(2, i)
    }

    #[test]
    fn simple_quasi_translation() {
        let f = PolynomialMap::new(vec![&x(0) + &x(1).pow(2), x(1)]).unwrap();
        let r = is_quasi_translation(&f).unwrap();
        assert!(r.via_sequence && r.via_jacobian && r.agree);
        assert_eq!(r.inverse_is_id_minus_h, Some(true));
    }

    #[test]
    fn not_a_quasi_translation() {
        let f = PolynomialMap::new(vec![&x(0) + &x(0).pow(3), x(1)]).unwrap();
        let r = is_quasi_translation(&f).unwrap();
        assert!(!r.via_sequence && !r.via_jacobian);
        assert_eq!(r.inverse_is_id_minus_h, None);
    }

    #[test]
    fn identity_is_one() {
        let r = is_quasi_translation(&PolynomialMap::identity(3)).unwrap();
        assert!(r.is_quasi_translation());
    }
}
