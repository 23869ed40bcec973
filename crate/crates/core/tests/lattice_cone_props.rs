mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rootsub_core::cone::Cone;
use rootsub_core::linalg::{hnf, in_rational_span, in_sublattice, primitive as lib_primitive};
use rootsub_core::{IntegerMatrix, LatticeVector};

fn cone_of(n: usize, gens: &[Vec<i64>]) -> Cone {
    Cone::new(n, gens.iter().map(|g| lv(g)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn primitive_is_idempotent(v in vec_strategy(4, -20, 20)) {
        prop_assume!(v.iter().any(|x| *x != 0));
        let p = lib_primitive(&lv(&v)).unwrap();
        prop_assert_eq!(lib_primitive(&p).unwrap(), p.clone());
        prop_assert_eq!(to_i64(&p), primitive(&v));
    }

    #[test]
    fn hnf_is_unimodular_and_triangular((n, rows) in gens_strategy(1..=4, 5, -6, 6)) {
        let m = IntegerMatrix::new(rows.iter().map(|r| lv(r)).collect(), n).unwrap();
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert_eq!(u.determinant().unwrap().abs(), BigInt::from(1));
        let mut last_pivot: Option<usize> = None;
        for row in h.rows() {
            match row.coords().iter().position(|x| !x.is_zero()) {
                None => last_pivot = Some(usize::MAX),
                Some(p) => {
                    prop_assert!(last_pivot.is_none_or(|q| q != usize::MAX && p > q));
                    prop_assert!(row.coords()[p].is_positive());
                    last_pivot = Some(p);
                }
            }
        }
    }

    #[test]
    fn sublattice_implies_span((n, rows) in gens_strategy(2..=3, 3, -3, 3), v in vec_strategy(3, -4, 4)) {
        prop_assume!(rank_of(&rows, n) == rows.len());
        let v = lv(&v[..n]);
        let basis = IntegerMatrix::new(rows.iter().map(|r| lv(r)).collect(), n).unwrap();
        if in_sublattice(&v, &basis).unwrap() {
            prop_assert!(in_rational_span(&v, basis.rows()));
        }
    }

    #[test]
    fn contains_matches_caratheodory((n, gens) in gens_strategy(1..=3, 5, -3, 3)) {
        let c = cone_of(n, &gens);
        for g in &gens {
            prop_assert!(c.contains_point(&lv(g)).unwrap());
        }
        for p in box_points(n, 3) {
            prop_assert_eq!(c.contains_point(&lv(&p)).unwrap(), cone_contains(&gens, &p), "point {:?}", p);
        }
    }

    #[test]
    fn dual_rays_match_facet_normals((n, gens) in gens_strategy(1..=4, 6, -3, 3)) {
        prop_assume!(rank_of(&gens, n) == n);
        let c = cone_of(n, &gens);
        let rays: Vec<Vec<i64>> = c.dual_rays().unwrap().iter().map(to_i64).collect();
        prop_assert_eq!(&rays, &facet_normals(&gens, n));
        for r in &rays {
            let tight: Vec<Vec<i64>> = gens.iter().filter(|g| dot(r, g) == 0).cloned().collect();
            prop_assert!(gens.iter().all(|g| dot(r, g) >= 0));
            prop_assert_eq!(rank_of(&tight, n), n - 1);
        }
    }

    #[test]
    fn duality_is_an_involution((n, gens) in gens_strategy(1..=4, 6, -3, 3)) {
        let c = cone_of(n, &gens);
        prop_assume!(c.is_full_dimensional() && c.is_strictly_convex());
        let back = c.dual_cone().dual_cone();
        prop_assert_eq!(back.rays().unwrap(), c.rays().unwrap());
        prop_assert!(back.same_set(&c).unwrap());
    }
}

#[test]
fn strictly_convex_rays_are_extremal() {
    let c = cone_of(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
    let rays: Vec<LatticeVector> = c.rays().unwrap().into_vec();
    assert_eq!(rays, vec![lv(&[0, 0, 1]), lv(&[0, 1, 0]), lv(&[1, 0, 0])]);
}
