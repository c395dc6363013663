#![allow(dead_code)]

use polyinv::{Monomial, Polynomial, PolynomialMap, Rational, RationalMatrix};
use proptest::prelude::*;

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn x(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| q(a, b))
}

pub fn nonzero_int() -> impl Strategy<Value = Rational> {
    prop_oneof![-3i64..=-1, 1i64..=3].prop_map(|a| q(a, 1))
}

/// Sum of up to `max_terms` random terms of degree at most `max_degree`.
pub fn poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=max_degree, n), rational());
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
            .fold(Polynomial::zero(n), |acc, (e, c)| {
                &acc + &Polynomial::from_monomial(Monomial::from_exponents(e), c)
            })
    })
}

/// Polynomial whose terms all have degree in `2..=3`, small integer coefficients.
pub fn cubic_tail(n: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0u32..=3, n), 2u32..=3, nonzero_int());
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        terms.into_iter().fold(Polynomial::zero(n), |acc, (e, d, c)| {
            // Redistribute the exponents to total exactly `d`.
            let mut exps = vec![0u32; n];
            let mut left = d;
            for (i, w) in e.iter().enumerate().cycle().take(4 * n) {
                if left == 0 {
                    break;
                }
                let take = (*w).min(left);
                exps[i] += take;
                left -= take;
            }
            exps[0] += left;
            &acc + &Polynomial::from_monomial(Monomial::from_exponents(exps), c)
        })
    })
}

/// `Id + H` with `H` of lower degree >= 2 and degree <= 3.
pub fn id_plus_cubic(n: usize, max_terms: usize) -> impl Strategy<Value = PolynomialMap> {
    prop::collection::vec(cubic_tail(n, max_terms), n)
        .prop_map(|h| PolynomialMap::identity_plus(&PolynomialMap::new(h).expect("square")))
}

fn permutation(n: usize, seed: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for (i, s) in seed.iter().enumerate().take(n) {
        p.swap(i, i + s % (n - i));
    }
    p
}

/// `A` with `A^2 = 0` of the form `P [[0, B], [0, 0]] P^T`; `X + (AX)^3` is
/// then triangular after a coordinate permutation, hence Keller.
pub fn block_nilpotent(n: usize) -> impl Strategy<Value = RationalMatrix> {
    (
        1..n,
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec(0usize..64, n),
    )
        .prop_map(move |(k, entries, perm)| {
            let p = permutation(n, &perm);
            let mut rows = vec![vec![q(0, 1); n]; n];
            for r in 0..k {
                for c in k..n {
                    rows[p[r]][p[c]] = q(entries[r * n + c], 1);
                }
            }
            RationalMatrix::from_rows(rows).expect("square")
        })
}

/// Cubic homogeneous `Id + H` obtained by conjugating a block Drużkowski map
/// with a unimodular linear change of variables.
pub fn conjugated_druzkowski(n: usize) -> impl Strategy<Value = PolynomialMap> {
    (block_nilpotent(n), prop::collection::vec(-2i64..=2, n * n)).prop_map(move |(a, shear)| {
        let f = PolynomialMap::druzkowski(&a, false).expect("A^2 = 0");
        // T = unit upper triangular, T^{-1} computed exactly.
        let mut t = vec![vec![q(0, 1); n]; n];
        for i in 0..n {
            t[i][i] = q(1, 1);
            for j in i + 1..n {
                t[i][j] = q(shear[i * n + j], 1);
            }
        }
        let t = RationalMatrix::from_rows(t).expect("square");
        let t_inv = t.inverse().expect("unimodular");
        let linear = |m: &RationalMatrix| {
            PolynomialMap::new(
                (0..n)
                    .map(|i| (0..n).fold(Polynomial::zero(n), |acc, j| &acc + &x(n, j).scale(m.get(i, j))))
                    .collect(),
            )
            .expect("square")
        };
        linear(&t_inv).compose(&f.compose(&linear(&t)).unwrap()).unwrap()
    })
}
