//! Integer-coefficient kernel behind multiplication and composition.
//!
//! Rational polynomials are scaled to a common denominator before heavy
//! work so the inner loops only add and multiply `BigInt`s; gcd reduction
//! happens once, when the result is turned back into a [`Polynomial`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::{Monomial, Polynomial};
use crate::par;

pub(crate) type Accumulator = FxHashMap<Monomial, BigInt>;

/// Integer polynomial with distinct monomials and no zero coefficients.
/// Term order is unspecified.
#[derive(Clone, Debug, Default)]
pub(crate) struct IntPoly {
    pub(crate) terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    pub(crate) fn constant(nvars: usize, c: BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::default();
        }
        IntPoly {
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub(crate) fn from_accumulator(acc: Accumulator) -> IntPoly {
        IntPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Splits a rational polynomial into `(numerators, denominator)` with
    /// the denominator the lcm of all coefficient denominators.
    pub(crate) fn scaled_from(p: &Polynomial) -> (IntPoly, BigInt) {
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        (IntPoly { terms }, den)
    }

    /// Divides through by `den` and returns the canonical rational polynomial.
    pub(crate) fn into_polynomial(self, nvars: usize, den: &BigInt) -> Polynomial {
        let terms = self
            .terms
            .into_iter()
            .map(|(m, c)| (m, BigRational::new(c, den.clone())))
            .collect();
        Polynomial::from_unsorted_distinct(nvars, terms)
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub(crate) fn add_owned_into(self, acc: &mut Accumulator) {
        for (m, c) in self.terms {
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
    }

    pub(crate) fn truncated(mut self, bound: Option<u32>) -> IntPoly {
        if let Some(b) = bound {
            self.terms.retain(|(m, _)| m.degree() <= b);
        }
        self
    }

    /// Product, dropping every term of total degree above `bound`.
    pub(crate) fn mul(&self, other: &IntPoly, bound: Option<u32>) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        if self.is_one() {
            return other.clone().truncated(bound);
        }
        if other.is_one() {
            return self.clone().truncated(bound);
        }
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let small_deg: Vec<u32> = small.terms.iter().map(|(m, _)| m.degree()).collect();
        let min_small = small_deg.iter().copied().min().unwrap_or(0);

        let chunk_product = |chunk: &[(Monomial, BigInt)]| -> Accumulator {
            let mut acc = Accumulator::default();
            acc.reserve(chunk.len().saturating_mul(small.len()).min(1 << 20));
            for (ma, ca) in chunk {
                let da = ma.degree();
                if let Some(b) = bound {
                    if da + min_small > b {
                        continue;
                    }
                }
                for ((mb, cb), &db) in small.terms.iter().zip(&small_deg) {
                    if let Some(b) = bound {
                        if da + db > b {
                            continue;
                        }
                    }
                    let prod = ca * cb;
                    match acc.entry(ma.mul(mb)) {
                        std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(prod);
                        }
                    }
                }
            }
            acc
        };

        let work = big.len().saturating_mul(small.len());
        if !par::worth_splitting(work) {
            return IntPoly::from_accumulator(chunk_product(&big.terms));
        }
        let pieces = (work >> 14).clamp(2, 64).min(big.len());
        let chunk_len = big.len().div_ceil(pieces);
        let chunks: Vec<&[(Monomial, BigInt)]> = big.terms.chunks(chunk_len).collect();
        let partials = par::map_collect(&chunks, |c| chunk_product(c));
        IntPoly::from_accumulator(merge(partials))
    }
}

/// Sums accumulators, reusing the largest one.
pub(crate) fn merge(mut parts: Vec<Accumulator>) -> Accumulator {
    let Some(largest) = (0..parts.len()).max_by_key(|&i| parts[i].len()) else {
        return Accumulator::default();
    };
    let mut acc = parts.swap_remove(largest);
    for part in parts {
        for (m, c) in part {
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
    }
    acc
}
