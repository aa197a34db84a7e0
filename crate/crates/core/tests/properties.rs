mod common;

use std::collections::BTreeSet;

use lattice_castelnuovo::castelnuovo::{self, verdict, Verdict};
use lattice_castelnuovo::counting::{self, ScanLimits};
use lattice_castelnuovo::hull::{self, classify_point, PointLocation};
use lattice_castelnuovo::lattice::affine_rank;
use lattice_castelnuovo::linalg;
use lattice_castelnuovo::unimodular::UnimodularMap;
use lattice_castelnuovo::{LatticePoint, LatticePolytope};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lim() -> ScanLimits {
    ScanLimits::default()
}

fn point_set(dim: usize, range: i64, min: usize, max: usize) -> impl Strategy<Value = Vec<LatticePoint>> {
    prop::collection::btree_set(prop::collection::vec(-range..=range, dim), min..=max)
        .prop_map(|set| set.into_iter().map(|p| LatticePoint::from_i64s(&p)).collect())
}

fn polytope(dim: usize, range: i64, max: usize) -> impl Strategy<Value = LatticePolytope> {
    point_set(dim, range, dim + 1, max).prop_filter_map("not full-dimensional", move |pts| LatticePolytope::new(dim, pts).ok())
}

fn random_map(dim: usize, seed: u64) -> UnimodularMap {
    UnimodularMap::random(dim, 6, 4, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_matches_leibniz(m in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 4)) {
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        prop_assert_eq!(linalg::determinant(&big), BigInt::from(common::det(&small)));
    }

    #[test]
    fn affine_rank_invariances(pts in point_set(4, 3, 1, 7), seed in any::<u64>()) {
        let r = affine_rank(&pts).unwrap();
        let mut rev = pts.clone();
        rev.reverse();
        prop_assert_eq!(affine_rank(&rev).unwrap(), r);
        let map = random_map(4, seed);
        let image: Vec<LatticePoint> = pts.iter().map(|p| map.apply(p)).collect();
        prop_assert_eq!(affine_rank(&image).unwrap(), r);
        prop_assert_eq!(LatticePolytope::new(4, pts.clone()).is_ok(), r == 4);
    }

    #[test]
    fn input_points_never_outside(p in polytope(3, 3, 8)) {
        let facets = hull::enumerate_facets(&p);
        prop_assert!(facets.len() >= 4);
        for x in p.points() {
            prop_assert_ne!(classify_point(&facets, x).unwrap(), PointLocation::Outside);
        }
        for v in hull::hull_vertices(&p, &facets) {
            prop_assert_eq!(classify_point(&facets, &v).unwrap(), PointLocation::Boundary);
        }
    }

    #[test]
    fn facets_independent_of_point_order(p in polytope(3, 3, 8)) {
        let mut rev = p.points().to_vec();
        rev.reverse();
        let q = LatticePolytope::new(3, rev).unwrap();
        prop_assert_eq!(hull::enumerate_facets(&p), hull::enumerate_facets(&q));
    }

    #[test]
    fn facets_match_oracle(p in polytope(3, 3, 7)) {
        use num_traits::ToPrimitive;
        let ours: BTreeSet<(Vec<i128>, i128)> = hull::enumerate_facets(&p)
            .iter()
            .map(|f| (f.normal().iter().map(|a| a.to_i128().unwrap()).collect(), f.offset().to_i128().unwrap()))
            .collect();
        prop_assert_eq!(ours, common::facets(&common::to_i128(&p)));
    }

    #[test]
    fn classification_is_unimodular_equivariant(p in polytope(3, 2, 7), seed in any::<u64>(), x in prop::collection::vec(-3i64..=3, 3)) {
        let map = random_map(3, seed);
        let q = map.apply_polytope(&p).unwrap();
        let x = LatticePoint::from_i64s(&x);
        prop_assert_eq!(
            classify_point(&hull::enumerate_facets(&p), &x).unwrap(),
            classify_point(&hull::enumerate_facets(&q), &map.apply(&x)).unwrap()
        );
    }

    #[test]
    fn counts_match_oracle(p in polytope(3, 2, 6)) {
        let (b, c, nvol) = common::profile(&p);
        let prof = counting::profile(&p, lim()).unwrap();
        prop_assert_eq!((prof.b, prof.c, prof.nvol), (b, c, BigInt::from(nvol)));
    }

    #[test]
    fn reciprocity_and_dilation(p in polytope(3, 3, 8)) {
        let a = counting::analyze(&p, lim()).unwrap();
        prop_assert_eq!(a.interior_by_reciprocity, a.profile.c);
        let l = a.ehrhart.values();
        prop_assert_eq!(l[0], 1);
        prop_assert_eq!(l[1], a.profile.b + a.profile.c);
        prop_assert!(l.windows(2).all(|w| w[0] <= w[1]));
        if a.profile.c > 0 {
            prop_assert!(a.profile.nvol >= castelnuovo::lower_bound_nvol(a.profile.b, a.profile.c, 3).unwrap());
        }
        let doubled = counting::normalized_volume(&p.dilate(2).unwrap(), lim()).unwrap();
        prop_assert_eq!(doubled, a.profile.nvol * 8);
    }

    #[test]
    fn pick_is_exact(p in polytope(2, 8, 8)) {
        let prof = counting::profile(&p, lim()).unwrap();
        prop_assert_eq!(prof.nvol.clone(), BigInt::from(2 * prof.c + prof.b) - 2);
        let expected = if prof.c == 0 { Verdict::Undefined } else { Verdict::Castelnuovo };
        prop_assert_eq!(verdict(&prof), expected);
    }

    #[test]
    fn profile_is_unimodular_invariant(p in polytope(3, 3, 8), seed in any::<u64>()) {
        let q = random_map(3, seed).apply_polytope(&p).unwrap();
        let a = counting::profile(&p, lim()).unwrap();
        let b = counting::profile(&q, lim()).unwrap();
        prop_assert_eq!(verdict(&a), verdict(&b));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn four_dimensional_profile_invariant(p in polytope(4, 2, 7), seed in any::<u64>()) {
        let q = random_map(4, seed).apply_polytope(&p).unwrap();
        let a = counting::analyze(&p, lim()).unwrap();
        prop_assert_eq!(a.interior_by_reciprocity, a.profile.c);
        prop_assert_eq!(a.profile, counting::profile(&q, lim()).unwrap());
    }

    #[test]
    fn json_round_trip(p in polytope(3, 5, 8), shift in any::<i64>()) {
        let big = LatticePolytope::new(
            3,
            p.points().iter().map(|x| x.add(&LatticePoint::new(vec![BigInt::from(shift) * BigInt::from(shift); 3]))).collect(),
        ).unwrap();
        prop_assert_eq!(LatticePolytope::from_json(&big.to_json()).unwrap(), big);
    }
}
