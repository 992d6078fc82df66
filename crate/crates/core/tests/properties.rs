mod common;

use proptest::prelude::*;

use common::{sequence_value, union_find_components};
use uflab::graph::{parse_graph, graph_to_json, FiniteGraph, GraphPresentation};
use uflab::index::{compressed_index, LineOperator, Stabilized};
use uflab::sobolev::{torus_schatten_norm, TorusEmbeddingSpec};
use uflab::specops::{chebyshev_coefficients, chebyshev_eval};
use uflab::ufh::{homology_finite, smith_diagonal, EventuallyPeriodicSequence, Side};

fn graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..20).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..40)))
}

fn sequence() -> impl Strategy<Value = EventuallyPeriodicSequence> {
    let block = |n| prop::collection::vec(-3i64..=3, 0..n);
    (block(6), -5i64..5, block(4), block(4)).prop_map(|(c, s, l, r)| EventuallyPeriodicSequence::new(c, s, l, r))
}

proptest! {
    #[test]
    fn homology_matches_euler_characteristic((n, edges) in graph()) {
        let g = FiniteGraph::new(n, edges.clone()).unwrap();
        let h = homology_finite(&g).unwrap();
        let c = union_find_components(n, &edges);
        prop_assert_eq!(h.h0, c);
        prop_assert_eq!(h.h0 as i64 - h.h1 as i64, n as i64 - edges.len() as i64);
        prop_assert!(h.torsion.is_empty());
    }

    #[test]
    fn finite_graph_json_round_trip((n, edges) in graph()) {
        let pres = GraphPresentation::Finite(FiniteGraph::new(n, edges).unwrap());
        let text = graph_to_json(&pres).unwrap();
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(graph_to_json(&back).unwrap(), text);
    }

    #[test]
    fn smith_factors_form_a_divisibility_chain(a in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..5)) {
        let d = smith_diagonal(a).unwrap();
        prop_assert!(d.iter().all(|&x| x > 0));
        for w in d.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn normalization_preserves_values(s in sequence()) {
        let n = s.normalized();
        for i in -40..40 {
            prop_assert_eq!(sequence_value(&n, i), sequence_value(&s, i));
        }
        prop_assert_eq!(&n, &s);
    }

    #[test]
    fn s_is_a_subgroup(a in sequence(), b in sequence()) {
        for side in [Side::Left, Side::Right, Side::Both] {
            if a.in_s(side).member && b.in_s(side).member {
                prop_assert!(a.sub(&b).in_s(side).member);
            }
        }
        // Partial sums of b − Sb telescope, so they stay bounded.
        prop_assert!(a.shift_difference().in_s(Side::Both).member);
    }

    #[test]
    fn schatten_norm_decreases_in_p(t in 0.6f64..3.0, dp in 0.1f64..3.0) {
        let p = (1.0 / t).max(1.0) + 0.2;
        let spec = |p| TorusEmbeddingSpec { n: 1, r: 5.0, m: 1, t, p, cutoff: 200 };
        let a = torus_schatten_norm(&spec(p)).unwrap();
        let b = torus_schatten_norm(&spec(p + dp)).unwrap();
        prop_assert!(b.value().unwrap() <= a.value().unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn chebyshev_reproduces_polynomials(c in prop::collection::vec(-2.0f64..2.0, 1..6), x in -1.0f64..1.0) {
        let p = |y: f64| c.iter().rev().fold(0.0, |s, &a| s * y + a);
        let coeffs = chebyshev_coefficients(p, c.len() - 1, -1.0, 1.0);
        prop_assert!((chebyshev_eval(&coeffs, x, -1.0, 1.0) - p(x)).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn shift_powers_compose(j in -2i64..=2, k in -2i64..=2) {
        let sum = LineOperator::<f64>::shift(j).direct_sum(&LineOperator::shift(k));
        let r = compressed_index(&sum, &[24, 48, 96]).unwrap();
        prop_assert_eq!(r.stabilized_index, Stabilized::Index(-j - k));
    }
}
