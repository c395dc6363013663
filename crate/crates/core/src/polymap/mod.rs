//! Polynomial maps `F: K^n -> K^n` and their structural predicates.

mod jacobian;
mod matrix;

pub use jacobian::JacobianMatrix;
pub use matrix::RationalMatrix;

use num_traits::Zero;
use thiserror::Error;

use crate::par;
use crate::polyring::{Composer, Monomial, PolyError, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("a polynomial map needs at least one component")]
    Empty,
    #[error("component {} lives in {found} variables, expected {expected}", .component + 1)]
    ComponentDimension {
        component: usize,
        expected: usize,
        found: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix of shape {rows}x{cols} cannot hold {entries} entries")]
    MatrixShape { rows: usize, cols: usize, entries: usize },
    #[error("component {} is not X{} plus terms of degree >= 2: offending term {coefficient} * {monomial:?}", .component + 1, .component + 1)]
    NotIdPlusH {
        component: usize,
        monomial: Monomial,
        coefficient: Rational,
    },
    #[error("the linear part at the origin is singular, so the map cannot be invertible")]
    SingularLinearPart,
    #[error("matrix A does not satisfy A^2 = 0")]
    NotNilpotentOfIndexTwo,
}

/// An ordered `n`-tuple of polynomials in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolynomialMap {
    components: Vec<Polynomial>,
}

/// `F - Id` together with the lower degree of each of its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub h: PolynomialMap,
    /// `None` marks a zero component, which has no degree.
    pub lower_degrees: Vec<Option<u32>>,
    /// Minimum over the nonzero components; `None` when `H = 0`.
    pub min_lower_degree: Option<u32>,
}

impl Decomposition {
    pub fn is_zero(&self) -> bool {
        self.min_lower_degree.is_none()
    }

    /// Whether every component of `H` is zero or homogeneous of degree 3.
    pub fn is_cubic_homogeneous(&self) -> bool {
        !self.is_zero()
            && self
                .h
                .components()
                .iter()
                .all(|p| p.degrees().is_none_or(|d| d.total == 3 && d.lower == 3))
    }
}

/// What [`PolynomialMap::normalize_affine`] removed: `f = L * normalized + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCertificate {
    pub constant: Vec<Rational>,
    pub linear: RationalMatrix,
}

impl AffineCertificate {
    pub fn is_trivial(&self) -> bool {
        self.constant.iter().all(Zero::is_zero) && self.linear == RationalMatrix::identity(self.linear.rows())
    }

    /// Rebuilds `f` from the normalized map.
    pub fn reconstruct(&self, normalized: &PolynomialMap) -> Result<PolynomialMap, MapError> {
        let n = normalized.dimension();
        if self.linear.rows() != n || self.constant.len() != n {
            return Err(MapError::DimensionMismatch {
                expected: self.linear.rows(),
                found: n,
            });
        }
        let components = (0..n)
            .map(|i| {
                let linear = combine(self.linear.row(i), normalized.components(), n);
                &linear + &Polynomial::constant(n, self.constant[i].clone())
            })
            .collect();
        PolynomialMap::new(components)
    }

    /// The affine map `y -> L^{-1} (y - c)`, which undoes the normalization
    /// on the target side: if `G'` inverts the normalized map then
    /// `G' o (L^{-1}(y - c))` inverts `f`.
    pub fn target_map(&self) -> Result<PolynomialMap, MapError> {
        let n = self.constant.len();
        let inv = self.linear.inverse().ok_or(MapError::SingularLinearPart)?;
        let shifted: Vec<Polynomial> = (0..n)
            .map(|i| &Polynomial::var(n, i) - &Polynomial::constant(n, self.constant[i].clone()))
            .collect();
        PolynomialMap::new((0..n).map(|i| combine(inv.row(i), &shifted, n)).collect())
    }
}

fn combine(coefficients: &[Rational], polys: &[Polynomial], nvars: usize) -> Polynomial {
    coefficients
        .iter()
        .zip(polys)
        .filter(|(c, _)| !c.is_zero())
        .fold(Polynomial::zero(nvars), |acc, (c, p)| &acc + &p.scale(c))
}

impl PolynomialMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, MapError> {
        let n = components.len();
        if n == 0 {
            return Err(MapError::Empty);
        }
        if let Some((component, p)) = components.iter().enumerate().find(|(_, p)| p.nvars() != n) {
            return Err(MapError::ComponentDimension {
                component,
                expected: n,
                found: p.nvars(),
            });
        }
        Ok(PolynomialMap { components })
    }

    /// `(X_1, ..., X_n)`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        PolynomialMap {
            components: (0..n).map(|i| Polynomial::var(n, i)).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    /// Maximum total degree over the components; `None` if all are zero.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::total_degree).max()
    }

    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, p)| *p == Polynomial::var(self.dimension(), i))
    }

    /// `self o g`: component `i` is `self_i(g_1, ..., g_n)`.
    pub fn compose(&self, g: &PolynomialMap) -> Result<PolynomialMap, MapError> {
        if self.dimension() != g.dimension() {
            return Err(MapError::DimensionMismatch {
                expected: self.dimension(),
                found: g.dimension(),
            });
        }
        Ok(PolynomialMap {
            components: compose_all(&self.components, g.components(), None)?,
        })
    }

    pub fn jacobian(&self) -> JacobianMatrix {
        JacobianMatrix::of(self)
    }

    /// `det J(F) == 1` exactly.
    pub fn is_keller(&self) -> bool {
        self.jacobian().determinant().is_one()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>, MapError> {
        self.components
            .iter()
            .map(|p| p.evaluate(point).map_err(MapError::from))
            .collect()
    }

    /// Splits `F = Id + H` and checks that every nonzero `H_i` has lower
    /// degree at least 2.
    pub fn decompose(&self) -> Result<Decomposition, MapError> {
        let n = self.dimension();
        let mut h = Vec::with_capacity(n);
        let mut lower_degrees = Vec::with_capacity(n);
        for (i, fi) in self.components.iter().enumerate() {
            let hi = fi - &Polynomial::var(n, i);
            if let Some((m, c)) = hi.terms().next().filter(|(m, _)| m.degree() <= 1) {
                return Err(MapError::NotIdPlusH {
                    component: i,
                    monomial: m.clone(),
                    coefficient: c.clone(),
                });
            }
            lower_degrees.push(hi.lower_degree());
            h.push(hi);
        }
        let min_lower_degree = lower_degrees.iter().flatten().copied().min();
        Ok(Decomposition {
            h: PolynomialMap { components: h },
            lower_degrees,
            min_lower_degree,
        })
    }

    /// Constant terms `f(0)` and the matrix of the degree-1 part.
    pub fn affine_part(&self) -> (Vec<Rational>, RationalMatrix) {
        let n = self.dimension();
        let constant = self
            .components
            .iter()
            .map(|p| p.coefficient(&Monomial::one(n)))
            .collect();
        let mut linear = Vec::with_capacity(n * n);
        for p in &self.components {
            for j in 0..n {
                linear.push(p.coefficient(&Monomial::var(n, j)));
            }
        }
        let linear = RationalMatrix::new(n, n, linear).expect("n*n entries");
        (constant, linear)
    }

    /// Returns `L^{-1} (f - f(0))`, which is of the form `Id + H`, together
    /// with `(f(0), L)`.
    pub fn normalize_affine(&self) -> Result<(PolynomialMap, AffineCertificate), MapError> {
        let n = self.dimension();
        let (constant, linear) = self.affine_part();
        let inv = linear.inverse().ok_or(MapError::SingularLinearPart)?;
        let shifted: Vec<Polynomial> = self
            .components
            .iter()
            .zip(&constant)
            .map(|(p, c)| p - &Polynomial::constant(n, c.clone()))
            .collect();
        let components = (0..n).map(|i| combine(inv.row(i), &shifted, n)).collect();
        Ok((PolynomialMap { components }, AffineCertificate { constant, linear }))
    }

    /// `F_i = X_i + (sum_j a_ij X_j)^3`. Refuses `A` with `A^2 != 0` unless
    /// `force` is set.
    pub fn druzkowski(a: &RationalMatrix, force: bool) -> Result<PolynomialMap, MapError> {
        if !a.is_square() {
            return Err(MapError::MatrixShape {
                rows: a.rows(),
                cols: a.cols(),
                entries: a.rows() * a.cols(),
            });
        }
        if a.rows() == 0 {
            return Err(MapError::Empty);
        }
        if !force && !a.mul(a)?.is_zero() {
            return Err(MapError::NotNilpotentOfIndexTwo);
        }
        let n = a.rows();
        let vars: Vec<Polynomial> = (0..n).map(|j| Polynomial::var(n, j)).collect();
        let components = (0..n)
            .map(|i| {
                let linear = combine(a.row(i), &vars, n);
                &vars[i] + &linear.pow(3)
            })
            .collect();
        Ok(PolynomialMap { components })
    }

    /// `H`-part helper: `Id + h`.
    pub fn identity_plus(h: &PolynomialMap) -> PolynomialMap {
        let n = h.dimension();
        PolynomialMap {
            components: h
                .components
                .iter()
                .enumerate()
                .map(|(i, p)| p + &Polynomial::var(n, i))
                .collect(),
        }
    }

    /// `Id - h`.
    pub fn identity_minus(h: &PolynomialMap) -> PolynomialMap {
        let n = h.dimension();
        PolynomialMap {
            components: h
                .components
                .iter()
                .enumerate()
                .map(|(i, p)| &Polynomial::var(n, i) - p)
                .collect(),
        }
    }
}

/// Composes every polynomial in `outer` with `images`, sharing one power
/// table; components are independent and run in parallel.
pub(crate) fn compose_all(
    outer: &[Polynomial],
    images: &[Polynomial],
    bound: Option<u32>,
) -> Result<Vec<Polynomial>, PolyError> {
    let mut composer = Composer::new(images, bound)?;
    let mut max_exps = vec![0u32; images.len()];
    for p in outer {
        if p.nvars() != images.len() {
            return Err(PolyError::ArityMismatch {
                expected: p.nvars(),
                found: images.len(),
            });
        }
        for (m, _) in p.terms() {
            for (slot, &e) in max_exps.iter_mut().zip(m.exponents()) {
                *slot = (*slot).max(e);
            }
        }
    }
    composer.prepare(&max_exps)?;
    par::map_collect(outer, |p| composer.apply(p)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
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

    fn matrix(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_and_composition() {
        let id = PolynomialMap::identity(2);
        assert_eq!(id.components(), &[x(2, 0), x(2, 1)]);
        let f = planar();
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert!(planar_inverse().compose(&f).unwrap().is_identity());
        let shear = PolynomialMap::new(vec![&x(2, 0) + &x(2, 1).pow(3), x(2, 1)]).unwrap();
        let unshear = PolynomialMap::new(vec![&x(2, 0) - &x(2, 1).pow(3), x(2, 1)]).unwrap();
        assert!(shear.compose(&unshear).unwrap().is_identity());
        assert!(f.compose(&PolynomialMap::identity(3)).is_err());
    }

    #[test]
    fn component_dimension_checked() {
        assert!(matches!(
            PolynomialMap::new(vec![x(3, 0), x(3, 1)]),
            Err(MapError::ComponentDimension { component: 0, .. })
        ));
        assert_eq!(PolynomialMap::new(vec![]), Err(MapError::Empty));
    }

    #[test]
    fn jacobians_and_determinants() {
        let j = planar().jacobian();
        let inner = &x(2, 1) + &x(2, 0).pow(3);
        let six_x1_sq = x(2, 0).pow(2).scale(&q(6));
        assert_eq!(*j.get(0, 0), &Polynomial::one(2) + &(&six_x1_sq * &inner));
        assert_eq!(*j.get(0, 1), inner.scale(&q(2)));
        assert_eq!(*j.get(1, 0), x(2, 0).pow(2).scale(&q(3)));
        assert!(j.get(1, 1).is_one());
        assert!(j.determinant().is_one());
        assert!(planar().is_keller());

        assert!(PolynomialMap::identity(3).jacobian().is_identity());
        assert!(JacobianMatrix::identity(3).determinant().is_one());

        let shear = PolynomialMap::new(vec![&x(2, 0) + &x(2, 1).pow(3), x(2, 1)]).unwrap();
        let js = shear.jacobian();
        assert_eq!(*js.get(0, 1), x(2, 1).pow(2).scale(&q(3)));
        assert!(js.get(1, 0).is_zero());

        let bad = PolynomialMap::new(vec![&x(2, 0) + &x(2, 0).pow(2), x(2, 1)]).unwrap();
        let det = bad.jacobian().determinant();
        assert_eq!(det, &Polynomial::one(2) + &x(2, 0).scale(&q(2)));
        assert!(!bad.is_keller());
        assert!(PolynomialMap::identity(2).is_keller());
    }

    #[test]
    fn bareiss_needs_row_swaps() {
        // zero in the (0,0) slot forces a pivot search
        let p = |v: i64| Polynomial::constant(2, q(v));
        let m = JacobianMatrix::from_entries(3, vec![p(0), x(2, 0), p(1), x(2, 1), p(2), p(0), p(1), p(1), x(2, 0)])
            .unwrap();
        assert_eq!(m.determinant_bareiss(), m.determinant_cofactor());
        let singular = JacobianMatrix::from_entries(2, vec![x(2, 0), x(2, 1), x(2, 0), x(2, 1)]).unwrap();
        assert!(singular.determinant_bareiss().is_zero());
    }

    #[test]
    fn decomposition() {
        let d = planar().decompose().unwrap();
        let inner = &x(2, 1) + &x(2, 0).pow(3);
        assert_eq!(d.h.components(), &[inner.pow(2), x(2, 0).pow(3)]);
        assert_eq!(d.lower_degrees, vec![Some(2), Some(3)]);
        assert_eq!(d.min_lower_degree, Some(2));

        let id = PolynomialMap::identity(3).decompose().unwrap();
        assert!(id.is_zero());
        assert_eq!(id.lower_degrees, vec![None, None, None]);

        let linear = PolynomialMap::new(vec![&x(2, 0) + &x(2, 1), x(2, 1)]).unwrap();
        match linear.decompose() {
            Err(MapError::NotIdPlusH {
                component,
                monomial,
                coefficient,
            }) => {
                assert_eq!(component, 0);
                assert_eq!(monomial, Monomial::var(2, 1));
                assert_eq!(coefficient, q(1));
            }
            other => panic!("expected NotIdPlusH, got {other:?}"),
        }
    }

    #[test]
    fn affine_normalization() {
        let f = planar();
        let (n, cert) = f.normalize_affine().unwrap();
        assert_eq!(n, f);
        assert!(cert.is_trivial());

        // f = (2 X1 + X2^3 + 1, X2): L = diag(2, 1), c = (1, 0)
        let f = PolynomialMap::new(vec![
            &(&x(2, 0).scale(&q(2)) + &x(2, 1).pow(3)) + &Polynomial::one(2),
            x(2, 1),
        ])
        .unwrap();
        let (n, cert) = f.normalize_affine().unwrap();
        let half = Rational::new(1.into(), 2.into());
        let expected = PolynomialMap::new(vec![&x(2, 0) + &x(2, 1).pow(3).scale(&half), x(2, 1)]).unwrap();
        assert_eq!(n, expected);
        assert_eq!(cert.constant, vec![q(1), q(0)]);
        assert_eq!(cert.linear, matrix(&[&[2, 0], &[0, 1]]));
        assert_eq!(cert.reconstruct(&n).unwrap(), f);

        let singular = PolynomialMap::new(vec![&x(2, 0) + &x(2, 1), &x(2, 0) + &x(2, 1)]).unwrap();
        assert_eq!(singular.normalize_affine(), Err(MapError::SingularLinearPart));
    }

    #[test]
    fn druzkowski_maps() {
        let f = PolynomialMap::druzkowski(&matrix(&[&[0, 1], &[0, 0]]), false).unwrap();
        assert_eq!(f.components(), &[&x(2, 0) + &x(2, 1).pow(3), x(2, 1)]);

        let zero = PolynomialMap::druzkowski(&RationalMatrix::zero(3, 3), false).unwrap();
        assert!(zero.is_identity());

        let f = PolynomialMap::druzkowski(&matrix(&[&[1, 1], &[-1, -1]]), false).unwrap();
        let cube = (&x(2, 0) + &x(2, 1)).pow(3);
        assert_eq!(f.components(), &[&x(2, 0) + &cube, &x(2, 1) - &cube]);
        assert!(f.is_keller());

        let not_nilpotent = matrix(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            PolynomialMap::druzkowski(&not_nilpotent, false),
            Err(MapError::NotNilpotentOfIndexTwo)
        );
        let forced = PolynomialMap::druzkowski(&not_nilpotent, true).unwrap();
        assert!(!forced.is_keller());
    }

    #[test]
    fn point_evaluation() {
        assert_eq!(
            PolynomialMap::identity(2).evaluate(&[q(3), q(5)]).unwrap(),
            vec![q(3), q(5)]
        );
        assert_eq!(planar().evaluate(&[q(0), q(1)]).unwrap(), vec![q(1), q(1)]);
        let f = PolynomialMap::druzkowski(&matrix(&[&[0, 1], &[0, 0]]), false).unwrap();
        assert_eq!(f.evaluate(&[q(1), q(2)]).unwrap(), vec![q(9), q(2)]);
        assert!(f.evaluate(&[q(1)]).is_err());
    }
}
