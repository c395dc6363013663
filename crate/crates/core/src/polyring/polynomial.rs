use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::intpoly::IntPoly;
use super::{Composer, Monomial, PolyError, Rational};

/// Total and lower degree of a nonzero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Degrees {
    /// Largest total degree among the terms.
    pub total: u32,
    /// Smallest total degree among the terms.
    pub lower: u32,
}

/// Sparse polynomial in `nvars` variables with exact rational coefficients.
///
/// Terms are kept sorted in ascending monomial order (see [`Monomial`]) with
/// no zero coefficients, so structural equality is polynomial equality. The
/// zero polynomial has no terms and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_monomial(Monomial::one(nvars), c)
    }

    /// The variable `X_index`, 0-based.
    ///
    /// # Panics
    /// If `index >= nvars`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(
            index < nvars,
            "variable index {index} out of range for {nvars} variables"
        );
        Self::from_monomial(Monomial::var(nvars, index), Rational::one())
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from arbitrary terms, combining repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::DimensionMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Ok(Polynomial {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Terms must have distinct monomials; zero coefficients are dropped.
    pub(crate) fn from_unsorted_distinct(nvars: usize, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { nvars, terms }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(t, _)| t.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Largest term under the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    /// `(total degree, lower degree)`, or `None` for the zero polynomial.
    pub fn degrees(&self) -> Option<Degrees> {
        // sorted by degree first
        Some(Degrees {
            total: self.terms.last()?.0.degree(),
            lower: self.terms.first()?.0.degree(),
        })
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.degrees().map(|d| d.total)
    }

    pub fn lower_degree(&self) -> Option<u32> {
        self.degrees().map(|d| d.lower)
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// For each variable, whether it occurs in some term.
    pub fn variables_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(m.exponents()) {
                *u |= e > 0;
            }
        }
        used
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.merge_with(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.merge_with(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.mul_truncated(other, None))
    }

    fn merge_with(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Less => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let c = if negate { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((ma.clone(), ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Product with every term of total degree above `bound` dropped.
    pub fn mul_truncated(&self, other: &Polynomial, bound: Option<u32>) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "dimension mismatch in product");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let (a, da) = IntPoly::scaled_from(self);
        let (b, db) = IntPoly::scaled_from(other);
        a.mul(&b, bound).into_polynomial(self.nvars, &(da * db))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `self^e`, with `self^0 = 1` (also for the zero polynomial).
    pub fn pow(&self, e: u32) -> Polynomial {
        self.pow_truncated(e, None)
    }

    pub fn pow_truncated(&self, e: u32, bound: Option<u32>) -> Polynomial {
        if e == 0 {
            return Polynomial::one(self.nvars).truncate_opt(bound);
        }
        if self.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return Polynomial::from_monomial(m.pow(e), Pow::pow(c, e)).truncate_opt(bound);
        }
        let (base, den) = IntPoly::scaled_from(self);
        let mut result: Option<IntPoly> = None;
        let mut square = base;
        let mut k = e;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => square.clone().truncated(bound),
                    Some(r) => r.mul(&square, bound),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            square = square.mul(&square, bound);
        }
        let den = Pow::pow(&den, e);
        result.unwrap_or_default().into_polynomial(self.nvars, &den)
    }

    /// Formal partial derivative with respect to `X_index` (0-based).
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial, PolyError> {
        if index >= self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(index) > 0)
            .map(|(m, c)| (m.lowered(index), c * BigInt::from(m.exponent(index))))
            .collect();
        Ok(Polynomial::from_unsorted_distinct(self.nvars, terms))
    }

    /// Drops every term of total degree greater than `bound`.
    pub fn truncate_above(&self, bound: u32) -> Polynomial {
        let keep = self.terms.partition_point(|(m, _)| m.degree() <= bound);
        Polynomial {
            nvars: self.nvars,
            terms: self.terms[..keep].to_vec(),
        }
    }

    pub(crate) fn truncate_opt(self, bound: Option<u32>) -> Polynomial {
        match bound {
            Some(b) if self.total_degree().is_some_and(|d| d > b) => self.truncate_above(b),
            _ => self,
        }
    }

    /// Sum of the terms of total degree exactly `degree`.
    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        let start = self.terms.partition_point(|(m, _)| m.degree() < degree);
        let end = self.terms.partition_point(|(m, _)| m.degree() <= degree);
        Polynomial {
            nvars: self.nvars,
            terms: self.terms[start..end].to_vec(),
        }
    }

    /// All nonzero homogeneous components, keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .terms
                .push((m.clone(), c.clone()));
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().is_none_or(|d| d.total == d.lower)
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (j, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[j];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[j];
                    table.push(next);
                }
                value *= &table[e as usize];
            }
            sum += value;
        }
        Ok(sum)
    }

    /// `self(images[0], ..., images[n-1])`. All images must share one
    /// dimension, which becomes the dimension of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let mut composer = Composer::new(images, None)?;
        composer.compose(self)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lead_m.divides(&m) {
                return None;
            }
            let qm = lead_m.quotient_of(&m);
            let qc = c / lead_c;
            for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                let key = dm.mul(&qm);
                let delta = &qc * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Some(Polynomial::from_unsorted_distinct(self.nvars, quotient))
    }

    /// Largest absolute numerator or denominator, in bits; a size diagnostic.
    pub fn coefficient_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// # Panics
    /// On a dimension mismatch; use [`Polynomial::try_add`] to get an error.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
