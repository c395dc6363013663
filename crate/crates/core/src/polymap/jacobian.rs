use super::{MapError, PolynomialMap};
use crate::polyring::{Polynomial, Rational};

/// Square grid of polynomials; entry `(i, j)` of a Jacobian is `dF_i/dX_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMatrix {
    size: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl JacobianMatrix {
    /// Row-major entries; all must live in the same ring.
    pub fn from_entries(size: usize, entries: Vec<Polynomial>) -> Result<Self, MapError> {
        if entries.len() != size * size {
            return Err(MapError::MatrixShape {
                rows: size,
                cols: size,
                entries: entries.len(),
            });
        }
        let nvars = entries.first().map_or(size, Polynomial::nvars);
        if let Some(bad) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(MapError::DimensionMismatch {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        Ok(JacobianMatrix { size, nvars, entries })
    }

    pub fn identity(size: usize) -> Self {
        let entries = (0..size * size)
            .map(|k| {
                if k / size == k % size {
                    Polynomial::one(size)
                } else {
                    Polynomial::zero(size)
                }
            })
            .collect();
        JacobianMatrix {
            size,
            nvars: size,
            entries,
        }
    }

    pub fn of(f: &PolynomialMap) -> Self {
        let n = f.dimension();
        let entries = f
            .components()
            .iter()
            .flat_map(|fi| (0..n).map(move |j| fi.partial_derivative(j).expect("index below dimension")))
            .collect();
        JacobianMatrix {
            size: n,
            nvars: n,
            entries,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == JacobianMatrix::identity(self.size)
    }

    /// Matrix product.
    pub fn mul(&self, other: &JacobianMatrix) -> Result<JacobianMatrix, MapError> {
        if self.size != other.size || self.nvars != other.nvars {
            return Err(MapError::DimensionMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        let n = self.size;
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(Polynomial::zero(self.nvars), |acc, l| {
                    &acc + &(self.get(i, l) * other.get(l, j))
                })
            })
            .collect();
        Ok(JacobianMatrix {
            size: n,
            nvars: self.nvars,
            entries,
        })
    }

    /// Matrix-vector product, e.g. `JH * H`.
    pub fn mul_vector(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>, MapError> {
        if v.len() != self.size {
            return Err(MapError::DimensionMismatch {
                expected: self.size,
                found: v.len(),
            });
        }
        Ok((0..self.size)
            .map(|i| {
                v.iter().enumerate().fold(Polynomial::zero(self.nvars), |acc, (j, vj)| {
                    &acc + &(self.get(i, j) * vj)
                })
            })
            .collect())
    }

    /// Every entry composed with `g`.
    pub fn substitute(&self, g: &PolynomialMap) -> Result<JacobianMatrix, MapError> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.substitute(g.components()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(JacobianMatrix {
            size: self.size,
            nvars: g.dimension(),
            entries,
        })
    }

    /// Exact determinant: cofactor expansion up to 3x3, fraction-free
    /// elimination above.
    pub fn determinant(&self) -> Polynomial {
        if self.size <= 3 {
            self.determinant_cofactor()
        } else {
            self.determinant_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn determinant_cofactor(&self) -> Polynomial {
        let rows: Vec<usize> = (0..self.size).collect();
        let cols: Vec<usize> = (0..self.size).collect();
        self.minor(&rows, &cols)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        match cols.len() {
            0 => Polynomial::one(self.nvars),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut det = Polynomial::zero(self.nvars);
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.minor(&rows[1..], &rest);
                    det = if k % 2 == 0 { &det + &term } else { &det - &term };
                }
                det
            }
        }
    }

    /// Bareiss elimination: every division by the previous pivot is exact,
    /// so entries stay polynomials throughout.
    pub fn determinant_bareiss(&self) -> Polynomial {
        let n = self.size;
        if n == 0 {
            return Polynomial::one(self.nvars);
        }
        let mut m = self.entries.clone();
        let mut negate = false;
        let mut prev = Polynomial::one(self.nvars);
        for k in 0..n.saturating_sub(1) {
            let Some(pivot) = (k..n).find(|&r| !m[r * n + k].is_zero()) else {
                return Polynomial::zero(self.nvars);
            };
            if pivot != k {
                for j in 0..n {
                    m.swap(pivot * n + j, k * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let cross = &(&m[i * n + j] * &m[k * n + k]) - &(&m[i * n + k] * &m[k * n + j]);
                    m[i * n + j] = cross.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i * n + k] = Polynomial::zero(self.nvars);
            }
            prev = m[k * n + k].clone();
        }
        let det = m[n * n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Entry-wise evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>, MapError> {
        self.entries
            .iter()
            .map(|p| p.evaluate(point).map_err(MapError::from))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }
}
