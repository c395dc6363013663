//! Parameter binding: folds expression trees into exact polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use polyinv::{Polynomial, PolynomialMap, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::document::{Expr, MapDocument};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BindError {
    #[error("parameter `{0}` has no value")]
    Unbound(String),
    #[error("parameter `{0}` is bound to zero but divides")]
    DivisionByZeroParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("binding for undeclared parameter `{0}`")]
    UnknownParameter(String),
    #[error("random range must be at least 1")]
    EmptyRange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomBinding {
    pub seed: u64,
    /// Numerators are drawn from `[-range, range]`, denominators from `[1, range]`.
    pub range: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BindSpec {
    pub random: Option<RandomBinding>,
    /// Explicit values; these win over file `bind` lines and random draws.
    pub explicit: Vec<(String, Rational)>,
}

/// Draws one value per declared parameter, in declaration order. Zero draws
/// are redrawn for parameters that occur in a denominator.
pub fn random_values(doc: &MapDocument, random: RandomBinding) -> Result<Vec<Rational>, BindError> {
    if random.range == 0 {
        return Err(BindError::EmptyRange);
    }
    let range = i64::from(random.range);
    let divisors = doc.denominator_parameters();
    let mut rng = ChaCha8Rng::seed_from_u64(random.seed);
    Ok((0..doc.parameters.len())
        .map(|i| loop {
            let num = rng.gen_range(-range..=range);
            let den = rng.gen_range(1..=range);
            if num != 0 || !divisors.contains(&i) {
                break Rational::new(BigInt::from(num), BigInt::from(den));
            }
        })
        .collect())
}

/// Resolves every parameter's value: random draws, then file `bind` lines,
/// then explicit values. Parameters that are never used may stay unbound.
pub fn resolve(doc: &MapDocument, spec: &BindSpec) -> Result<BTreeMap<String, Rational>, BindError> {
    let mut values = BTreeMap::new();
    if let Some(random) = spec.random {
        for (name, v) in doc.parameters.iter().zip(random_values(doc, random)?) {
            values.insert(name.clone(), v);
        }
    }
    for (name, v) in &doc.bindings {
        values.insert(name.clone(), v.clone());
    }
    for (name, v) in &spec.explicit {
        if !doc.parameters.contains(name) {
            return Err(BindError::UnknownParameter(name.clone()));
        }
        values.insert(name.clone(), v.clone());
    }
    Ok(values)
}

struct Folder<'a> {
    nvars: usize,
    names: &'a [String],
    values: Vec<Option<Rational>>,
}

impl Folder<'_> {
    fn fold(&self, e: &Expr) -> Result<Polynomial, BindError> {
        Ok(match e {
            Expr::Num(v) => Polynomial::constant(self.nvars, v.clone()),
            Expr::Var(i) => Polynomial::var(self.nvars, *i),
            Expr::Param(i) => Polynomial::constant(self.nvars, self.value(*i)?),
            Expr::Neg(a) => -self.fold(a)?,
            Expr::Add(a, b) => &self.fold(a)? + &self.fold(b)?,
            Expr::Sub(a, b) => &self.fold(a)? - &self.fold(b)?,
            Expr::Mul(a, b) => &self.fold(a)? * &self.fold(b)?,
            Expr::Pow(a, k) => self.fold(a)?.pow(*k),
            Expr::Div(a, b) => {
                let den = self
                    .fold(b)?
                    .as_constant()
                    .expect("the parser keeps variables out of denominators");
                if den.is_zero() {
                    let mut ps = Vec::new();
                    b.params(&mut ps);
                    let culprit = ps
                        .iter()
                        .find(|&&i| self.values[i].as_ref().is_some_and(Zero::is_zero))
                        .or(ps.first());
                    return Err(match culprit {
                        Some(&i) => BindError::DivisionByZeroParameter(self.names[i].clone()),
                        None => BindError::DivisionByZero,
                    });
                }
                self.fold(a)?.scale(&(Rational::from_integer(1.into()) / den))
            }
        })
    }

    fn value(&self, i: usize) -> Result<Rational, BindError> {
        self.values[i]
            .clone()
            .ok_or_else(|| BindError::Unbound(self.names[i].clone()))
    }
}

/// Folds the document with the given parameter values.
pub fn bind(doc: &MapDocument, values: &BTreeMap<String, Rational>) -> Result<PolynomialMap, BindError> {
    let folder = Folder {
        nvars: doc.dimension(),
        names: &doc.parameters,
        values: doc.parameters.iter().map(|p| values.get(p).cloned()).collect(),
    };
    let components = doc
        .components
        .iter()
        .map(|c| folder.fold(c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolynomialMap::new(components).expect("one component per variable"))
}
