//! Randomized structural properties of the exact-geometry layer. Each
//! property either pins an algorithm against an independent brute-force
//! oracle or states an invariant that must hold for every valid input.

use proptest::prelude::*;

use abx_core::antiblocking::{abdual, down_closure, AntiBlockingBody};
use abx_core::corpus;
use abx_core::geom::ops::{minkowski_sum, mixed_volume_pair_all};
use abx_core::geom::point::{ptq, Point};
use abx_core::geom::polytope::{brute_force_facets, Polytope};
use abx_core::geom::volume::volume;
use abx_core::posets::{count_linear_extensions, count_linear_extensions_brute};
use abx_core::rat::{binomial_rat, rat};

fn body(n: usize, salt: u64) -> impl Strategy<Value = AntiBlockingBody> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = corpus::stream(seed, salt, 0);
        corpus::random_antiblocking(n, &mut rng).expect("generator retries degenerate draws")
    })
}

fn body_pair(n: usize) -> impl Strategy<Value = (AntiBlockingBody, AntiBlockingBody)> {
    (body(n, 991), body(n, 992))
}

/// Random point clouds with small rational coordinates, occasionally
/// degenerate on purpose.
fn point_cloud(n: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(
        prop::collection::vec((0i64..=3, 1i64..=2), n),
        n + 1..=n + 4,
    )
    .prop_map(|rows| rows.into_iter().map(|row| ptq(&row)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn abdual_is_an_involution(k in body(2, 990).boxed().prop_union(body(3, 990).boxed())) {
        let dual = abdual(&k).unwrap();
        let back = abdual(&dual).unwrap();
        prop_assert_eq!(back.polytope(), k.polytope());
    }

    #[test]
    fn abdual_reverses_inclusion((k, t) in body_pair(2)) {
        let join = down_closure(2, &[k.generators(), t.generators()].concat()).unwrap();
        let dual_join = abdual(&join).unwrap();
        let dual_k = abdual(&k).unwrap();
        prop_assert!(k.contains(&dual_join) || !k.contains(&join) || dual_k.contains(&dual_join));
        // the unconditional statement: K <= join, so A(join) <= A(K)
        prop_assert!(dual_k.polytope().contains(dual_join.polytope()));
    }

    #[test]
    fn hull_agrees_with_brute_force(pts in point_cloud(2).boxed().prop_union(point_cloud(3).boxed())) {
        let n = pts[0].dim();
        let p = Polytope::hull(n, &pts).unwrap();
        if p.is_full_dim() {
            let mut expected = brute_force_facets(n, &pts).unwrap();
            expected.sort();
            let mut got = p.facets().to_vec();
            got.sort();
            prop_assert_eq!(got, expected);
        } else {
            // hull tolerates flat input, the exponential oracle rejects it
            prop_assert!(brute_force_facets(n, &pts).is_err());
        }
    }

    #[test]
    fn volume_is_translation_and_reflection_invariant(k in body(3, 993),
                                                      shift in prop::collection::vec((-3i64..=3, 1i64..=2), 3)) {
        let p = k.polytope();
        let t = ptq(&shift);
        prop_assert_eq!(volume(&p.translate(&t)), volume(p));
        prop_assert_eq!(volume(&p.neg()), volume(p));
    }

    #[test]
    fn volume_scales_with_degree_n(k in body(2, 994), num in 1i64..=4, den in 1i64..=4) {
        let c = rat(num, den);
        let p = k.polytope();
        let expected = volume(p) * &c * &c;
        prop_assert_eq!(volume(&p.scale(&c)), expected);
    }

    #[test]
    fn antiblocking_is_closed_under_meet_join_sum((k, t) in body_pair(2)) {
        let n = 2;
        // meet: intersect via stacked facet systems
        let mut ineqs: Vec<_> = k.polytope().facets().iter().map(|f| (Point::new(f.normal.coords().to_vec()), f.offset.clone())).collect();
        ineqs.extend(t.polytope().facets().iter().map(|f| (Point::new(f.normal.coords().to_vec()), f.offset.clone())));
        let meet = Polytope::from_hrep(n, &ineqs).unwrap();
        prop_assert!(AntiBlockingBody::new(meet).is_ok());

        // join: down closure of the union of generators
        let join = down_closure(n, &[k.generators(), t.generators()].concat()).unwrap();
        prop_assert!(join.polytope().contains(k.polytope()));
        prop_assert!(join.polytope().contains(t.polytope()));

        // Minkowski sum
        let sum = minkowski_sum(k.polytope(), t.polytope()).unwrap();
        prop_assert!(AntiBlockingBody::new(sum).is_ok());
    }

    #[test]
    fn rogers_shephard_difference_bound(k in body(2, 995).boxed().prop_union(body(3, 995).boxed())) {
        let p = k.polytope();
        let n = p.dim();
        let diff = minkowski_sum(p, &p.neg()).unwrap();
        let bound = binomial_rat(2 * n, n) * volume(p);
        prop_assert!(volume(&diff) <= bound);
    }

    #[test]
    fn mixed_volumes_are_symmetric((k, t) in body_pair(2)) {
        let a = mixed_volume_pair_all(k.polytope(), t.polytope()).unwrap();
        let mut b = mixed_volume_pair_all(t.polytope(), k.polytope()).unwrap();
        b.reverse();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mixed_volumes_sum_to_the_minkowski_volume((k, t) in body_pair(2)) {
        // binomial expansion of vol(K + T) in two dimensions
        let mv = mixed_volume_pair_all(k.polytope(), t.polytope()).unwrap();
        let total = volume(&minkowski_sum(k.polytope(), t.polytope()).unwrap());
        let expansion = &mv[0] + rat(2, 1) * &mv[1] + &mv[2];
        prop_assert_eq!(expansion, total);
    }

    #[test]
    fn extension_counting_matches_brute_force(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = corpus::stream(seed, 996, 0);
        let p = corpus::random_poset(n, &mut rng);
        prop_assert_eq!(count_linear_extensions(&p), count_linear_extensions_brute(&p));
    }
}
