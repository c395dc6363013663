mod common;

use common::{poly, rational, x};
use polyinv::{Polynomial, PolynomialMap, Rational};
use proptest::prelude::*;

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

fn canonical(p: &Polynomial) -> bool {
    let terms: Vec<_> = p.terms().collect();
    terms.windows(2).all(|w| w[0].0 < w[1].0) && terms.iter().all(|(_, c)| **c != Rational::from_integer(0.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(3, 3, 5), b in poly(3, 3, 5), c in poly(3, 3, 5)) {
        let zero = Polynomial::zero(3);
        let one = Polynomial::one(3);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a.clone());
    }

    #[test]
    fn results_are_canonical(a in poly(3, 4, 6), b in poly(3, 4, 6)) {
        prop_assert!(canonical(&(&a + &b)));
        prop_assert!(canonical(&(&a - &b)));
        prop_assert!(canonical(&(&a * &b)));
        prop_assert!(canonical(&a.pow(3)));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(3, 3, 5), b in poly(3, 3, 5), pt in point(3)) {
        let ea = a.evaluate(&pt).unwrap();
        let eb = b.evaluate(&pt).unwrap();
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &ea * &eb);
    }

    #[test]
    fn leibniz_rule(a in poly(3, 3, 5), b in poly(3, 3, 5), i in 0usize..3) {
        let lhs = (&a * &b).partial_derivative(i).unwrap();
        let rhs = &(&a.partial_derivative(i).unwrap() * &b) + &(&a * &b.partial_derivative(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_components_partition(a in poly(3, 5, 8), bound in 0u32..6) {
        let parts = a.homogeneous_components();
        let sum = parts.values().fold(Polynomial::zero(3), |acc, p| &acc + p);
        prop_assert_eq!(&sum, &a);
        for (d, p) in &parts {
            prop_assert!(p.is_homogeneous());
            prop_assert_eq!(p.total_degree(), Some(*d));
        }
        let low = a.truncate_above(bound);
        let high = &a - &low;
        prop_assert!(low.total_degree().is_none_or(|d| d <= bound));
        prop_assert!(high.lower_degree().is_none_or(|d| d > bound));
    }

    #[test]
    fn truncated_product_matches_truncation(a in poly(2, 4, 6), b in poly(2, 4, 6), bound in 0u32..8) {
        prop_assert_eq!(a.mul_truncated(&b, Some(bound)), (&a * &b).truncate_above(bound));
        prop_assert_eq!(a.pow_truncated(3, Some(bound)), a.pow(3).truncate_above(bound));
    }

    #[test]
    fn degrees_multiply(a in poly(2, 4, 5), b in poly(2, 4, 5)) {
        let prod = &a * &b;
        match (a.degrees(), b.degrees()) {
            (Some(da), Some(db)) => {
                let dp = prod.degrees().unwrap();
                prop_assert_eq!(dp.total, da.total + db.total);
                prop_assert_eq!(dp.lower, da.lower + db.lower);
            }
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in poly(2, 3, 5),
        g in prop::collection::vec(poly(3, 2, 4), 2),
        pt in point(3),
    ) {
        let composed = p.substitute(&g).unwrap();
        let inner: Vec<Rational> = g.iter().map(|gi| gi.evaluate(&pt).unwrap()).collect();
        prop_assert_eq!(composed.evaluate(&pt).unwrap(), p.evaluate(&inner).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map(
        a in poly(2, 3, 4),
        b in poly(2, 3, 4),
        g in prop::collection::vec(poly(2, 2, 3), 2),
    ) {
        let sa = a.substitute(&g).unwrap();
        let sb = b.substitute(&g).unwrap();
        prop_assert_eq!((&a + &b).substitute(&g).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).substitute(&g).unwrap(), &sa * &sb);
    }

    #[test]
    fn substituting_variables_is_identity(a in poly(3, 4, 6)) {
        let vars: Vec<Polynomial> = (0..3).map(|i| x(3, i)).collect();
        prop_assert_eq!(a.substitute(&vars).unwrap(), a);
    }

    #[test]
    fn map_composition_is_associative(
        f in prop::collection::vec(poly(2, 2, 3), 2),
        g in prop::collection::vec(poly(2, 2, 3), 2),
        h in prop::collection::vec(poly(2, 2, 3), 2),
    ) {
        let f = PolynomialMap::new(f).unwrap();
        let g = PolynomialMap::new(g).unwrap();
        let h = PolynomialMap::new(h).unwrap();
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn exact_division_recovers_factor(a in poly(3, 3, 4), b in poly(3, 3, 4)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }
}
