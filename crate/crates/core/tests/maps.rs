mod common;

use common::{block_nilpotent, poly, q, rational, x};
use polyinv::{JacobianMatrix, MapError, Polynomial, PolynomialMap, RationalMatrix};
use proptest::prelude::*;

/// Determinant as the signed sum over all permutations.
fn leibniz_determinant(m: &JacobianMatrix) -> Polynomial {
    fn permutations(items: Vec<usize>) -> Vec<(Vec<usize>, bool)> {
        if items.len() <= 1 {
            return vec![(items, true)];
        }
        let mut out = Vec::new();
        for (pos, &head) in items.iter().enumerate() {
            let rest: Vec<usize> = items.iter().copied().filter(|&v| v != head).collect();
            for (mut tail, even) in permutations(rest) {
                tail.insert(0, head);
                out.push((tail, even == (pos % 2 == 0)));
            }
        }
        out
    }
    let n = m.size();
    let nvars = m.get(0, 0).nvars();
    permutations((0..n).collect())
        .into_iter()
        .fold(Polynomial::zero(nvars), |acc, (perm, even)| {
            let prod = perm
                .iter()
                .enumerate()
                .fold(Polynomial::one(nvars), |p, (i, &j)| &p * m.get(i, j));
            if even {
                &acc + &prod
            } else {
                &acc - &prod
            }
        })
}

fn square_matrix(size: usize) -> impl Strategy<Value = JacobianMatrix> {
    prop::collection::vec(poly(2, 2, 3), size * size)
        .prop_map(move |entries| JacobianMatrix::from_entries(size, entries).unwrap())
}

fn small_map(n: usize) -> impl Strategy<Value = PolynomialMap> {
    prop::collection::vec(poly(n, 2, 3), n).prop_map(|c| PolynomialMap::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_matches_permutation_sum(m in (1usize..=4).prop_flat_map(square_matrix)) {
        let oracle = leibniz_determinant(&m);
        prop_assert_eq!(m.determinant_bareiss(), oracle.clone());
        prop_assert_eq!(m.determinant(), oracle);
    }

    #[test]
    fn chain_rule(f in small_map(2), g in small_map(2)) {
        let lhs = f.compose(&g).unwrap().jacobian();
        let rhs = f.jacobian().substitute(&g).unwrap().mul(&g.jacobian()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_commutes_with_composition(f in small_map(2), g in small_map(2), pt in prop::collection::vec(rational(), 2)) {
        let composed = f.compose(&g).unwrap().evaluate(&pt).unwrap();
        prop_assert_eq!(composed, f.evaluate(&g.evaluate(&pt).unwrap()).unwrap());
    }

    #[test]
    fn block_druzkowski_maps_are_keller(a in (2usize..=5).prop_flat_map(block_nilpotent)) {
        prop_assert!(a.mul(&a).unwrap().is_zero());
        let f = PolynomialMap::druzkowski(&a, false).unwrap();
        prop_assert!(f.is_keller());
        let dec = f.decompose().unwrap();
        prop_assert!(dec.is_zero() || dec.is_cubic_homogeneous());
    }

    #[test]
    fn normalization_round_trip(
        h in prop::collection::vec(common::cubic_tail(2, 3), 2),
        shift in prop::collection::vec(rational(), 2),
        lin in prop::collection::vec(-3i64..=3, 4),
    ) {
        let l = RationalMatrix::from_rows(vec![
            vec![q(lin[0], 1), q(lin[1], 1)],
            vec![q(lin[2], 1), q(lin[3], 1)],
        ]).unwrap();
        prop_assume!(l.inverse().is_some());
        let comps: Vec<Polynomial> = (0..2)
            .map(|i| {
                let affine = (0..2).fold(Polynomial::constant(2, shift[i].clone()), |acc, j| {
                    &acc + &x(2, j).scale(l.get(i, j))
                });
                &affine + &h[i]
            })
            .collect();
        let f = PolynomialMap::new(comps).unwrap();
        let (normal, cert) = f.normalize_affine().unwrap();
        prop_assert!(normal.decompose().is_ok());
        prop_assert_eq!(cert.reconstruct(&normal).unwrap(), f.clone());
        // target_map undoes the affine part: normal = target o f.
        prop_assert_eq!(cert.target_map().unwrap().compose(&f).unwrap(), normal);
    }
}

#[test]
fn nilpotent_matrix_need_not_give_keller_map() {
    // A = u v^T with v.u = 0 but sum v_i u_i^3 != 0.
    let a = RationalMatrix::from_rows(vec![vec![q(2, 1), q(-1, 1)], vec![q(4, 1), q(-2, 1)]]).unwrap();
    assert!(a.mul(&a).unwrap().is_zero());
    let f = PolynomialMap::druzkowski(&a, false).unwrap();
    assert!(f.jacobian().determinant().as_constant().is_none());
}

#[test]
fn druzkowski_rejects_non_nilpotent_unless_forced() {
    let a = RationalMatrix::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(0, 1)]]).unwrap();
    assert_eq!(
        PolynomialMap::druzkowski(&a, false),
        Err(MapError::NotNilpotentOfIndexTwo)
    );
    let f = PolynomialMap::druzkowski(&a, true).unwrap();
    assert_eq!(f.component(0), &(&x(2, 0) + &x(2, 0).pow(3)));
}
