//! Composition `p(F_1, ..., F_n)`.
//!
//! The images are scaled to integer polynomials once, their powers are
//! cached, and `p` is evaluated Horner-style one variable at a time so
//! every distinct exponent prefix costs one product. Sibling branches of the
//! recursion are independent and run in parallel when large enough.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intpoly::{Accumulator, IntPoly};
use super::{PolyError, Polynomial};
use crate::par;

/// A run of leaves sharing the exponent of the current variable.
type Group<'a, 'b> = (u32, &'a [(&'b [u32], BigInt)]);

/// Reusable substitution context for a fixed list of images.
///
/// An optional degree bound truncates every intermediate product, which is
/// exact for the truncated result because total degrees only add up. An
/// optional term limit aborts once any intermediate polynomial, or the power
/// tables together, grow past it.
pub(crate) struct Composer {
    nvars_out: usize,
    images: Vec<IntPoly>,
    dens: Vec<BigInt>,
    powers: Vec<Vec<IntPoly>>,
    den_powers: Vec<Vec<BigInt>>,
    bound: Option<u32>,
    limit: Option<usize>,
    table_terms: usize,
}

impl Composer {
    pub(crate) fn new(images: &[Polynomial], bound: Option<u32>) -> Result<Self, PolyError> {
        let nvars_out = images.first().map_or(0, Polynomial::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars() != nvars_out) {
            return Err(PolyError::DimensionMismatch {
                expected: nvars_out,
                found: bad.nvars(),
            });
        }
        let (images, dens): (Vec<_>, Vec<_>) = images.iter().map(IntPoly::scaled_from).unzip();
        let powers = images
            .iter()
            .map(|_| vec![IntPoly::constant(nvars_out, BigInt::one())])
            .collect();
        let den_powers = images.iter().map(|_| vec![BigInt::one()]).collect();
        Ok(Composer {
            nvars_out,
            images,
            dens,
            powers,
            den_powers,
            bound,
            limit: None,
            table_terms: 0,
        })
    }

    pub(crate) fn with_limit(mut self, limit: Option<usize>) -> Self {
        self.limit = limit;
        self
    }

    fn check(&self, terms: usize) -> Result<(), PolyError> {
        match self.limit {
            Some(limit) if terms > limit => Err(PolyError::TooLarge { terms, limit }),
            _ => Ok(()),
        }
    }

    pub(crate) fn compose(&mut self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        if p.nvars() != self.images.len() {
            return Err(PolyError::ArityMismatch {
                expected: p.nvars(),
                found: self.images.len(),
            });
        }
        let mut max_exps = vec![0u32; p.nvars()];
        for (m, _) in p.terms() {
            for (slot, &e) in max_exps.iter_mut().zip(m.exponents()) {
                *slot = (*slot).max(e);
            }
        }
        self.prepare(&max_exps)?;
        self.apply(p)
    }

    /// Extends the power tables so `images[j]^e` exists for `e <= max_exps[j]`.
    pub(crate) fn prepare(&mut self, max_exps: &[u32]) -> Result<(), PolyError> {
        for (j, &e) in max_exps.iter().enumerate() {
            while self.powers[j].len() <= e as usize {
                let next = self.powers[j]
                    .last()
                    .expect("power table starts at 1")
                    .mul(&self.images[j], self.bound);
                self.table_terms += next.len();
                self.check(self.table_terms)?;
                self.powers[j].push(next);
                let next_den = self.den_powers[j].last().expect("den table starts at 1") * &self.dens[j];
                self.den_powers[j].push(next_den);
            }
        }
        Ok(())
    }

    /// Composition for a polynomial whose exponents are covered by the
    /// prepared power tables.
    pub(crate) fn apply(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        if p.is_zero() {
            return Ok(Polynomial::zero(self.nvars_out));
        }
        // Common denominator of every term after substitution.
        let term_dens: Vec<BigInt> = p
            .terms()
            .map(|(m, c)| {
                let mut d = c.denom().clone();
                for (j, &e) in m.exponents().iter().enumerate() {
                    if e > 0 && !self.dens[j].is_one() {
                        d *= &self.den_powers[j][e as usize];
                    }
                }
                d
            })
            .collect();
        let common = term_dens.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
        let mut leaves: Vec<(&[u32], BigInt)> = p
            .terms()
            .zip(&term_dens)
            .map(|((m, c), d)| (m.exponents(), c.numer() * (&common / d)))
            .collect();
        leaves.sort_unstable_by(|a, b| a.0.cmp(b.0));
        let num = self.horner(&leaves, 0)?;
        Ok(num.truncated(self.bound).into_polynomial(self.nvars_out, &common))
    }

    fn horner(&self, leaves: &[(&[u32], BigInt)], var: usize) -> Result<IntPoly, PolyError> {
        if var == self.images.len() {
            let sum = leaves.iter().fold(BigInt::zero(), |acc, (_, k)| acc + k);
            return Ok(IntPoly::constant(self.nvars_out, sum));
        }
        let mut groups: Vec<Group> = Vec::new();
        let mut start = 0;
        for i in 1..=leaves.len() {
            if i == leaves.len() || leaves[i].0[var] != leaves[start].0[var] {
                groups.push((leaves[start].0[var], &leaves[start..i]));
                start = i;
            }
        }
        if let [(0, only)] = groups.as_slice() {
            return self.horner(only, var + 1);
        }
        let branch = |&(e, group): &Group| -> Result<IntPoly, PolyError> {
            let inner = self.horner(group, var + 1)?;
            if e == 0 {
                return Ok(inner);
            }
            let product = self.powers[var][e as usize].mul(&inner, self.bound);
            self.check(product.len())?;
            Ok(product)
        };
        let parts: Vec<Result<IntPoly, PolyError>> = if groups.len() > 1 && par::worth_splitting(leaves.len() << 8) {
            par::map_collect(&groups, branch)
        } else {
            groups.iter().map(branch).collect()
        };
        let sum = sum_parts(parts.into_iter().collect::<Result<_, _>>()?);
        self.check(sum.len())?;
        Ok(sum)
    }
}

fn sum_parts(mut parts: Vec<IntPoly>) -> IntPoly {
    if parts.len() == 1 {
        return parts.pop().expect("one part");
    }
    let Some(largest) = (0..parts.len()).max_by_key(|&i| parts[i].len()) else {
        return IntPoly::default();
    };
    let mut acc = Accumulator::default();
    parts.swap_remove(largest).add_owned_into(&mut acc);
    for part in parts {
        part.add_owned_into(&mut acc);
    }
    IntPoly::from_accumulator(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_limit_aborts_large_compositions() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let images = [&x + &y, &y - &x];
        let p = x.pow(6);
        let mut open = Composer::new(&images, None).unwrap();
        assert_eq!(open.compose(&p).unwrap().len(), 7);
        let mut tight = Composer::new(&images, None).unwrap().with_limit(Some(5));
        assert!(matches!(tight.compose(&p), Err(PolyError::TooLarge { limit: 5, .. })));
        let mut truncated = Composer::new(&images, Some(0)).unwrap().with_limit(Some(5));
        assert!(truncated.compose(&p).unwrap().is_zero());
    }
}
