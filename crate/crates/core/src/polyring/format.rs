use std::fmt;

use num_traits::{One, Signed};

use super::{Polynomial, Rational};

/// Text rendering of a polynomial with caller-supplied variable names.
///
/// Terms appear in ascending monomial order, e.g. `Y1 - Y2^2` or
/// `2*X1^3*X2 + X1^6`. The output is accepted by the map-file expression
/// grammar, so it round-trips.
pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl Polynomial {
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolynomialDisplay<'a> {
        assert_eq!(names.len(), self.nvars(), "one name per variable");
        PolynomialDisplay { poly: self, names }
    }
}

fn write_magnitude(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer().abs())
    } else {
        write!(f, "{}/{}", c.numer().abs(), c.denom())
    }
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = c.abs().is_one();
            let mut first = true;
            if !unit || m.is_one() {
                write_magnitude(f, c)?;
                first = false;
            }
            for (name, &e) in self.names.iter().zip(m.exponents()) {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(name)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    /// Uses the names `X1, ..., Xn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("X{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars(), self)
    }
}
