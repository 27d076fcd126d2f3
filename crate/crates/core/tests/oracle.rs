mod common;

use kantorovich::measure::split_into_probabilities;
use kantorovich::metric::all_pairs_shortest_paths;
use kantorovich::oracle::{kb_norm, kb_transport, primal_lp_distance, support_is_forest, transport, verify_coupling};
use kantorovich::rational::int;
use kantorovich::{Measure, ProbabilityFunction, Rational};
use num_traits::Zero;
use rand::Rng;

#[test]
fn transport_matches_basic_solution_enumeration() {
    let mut rng = common::rng(101);
    for _ in 0..150 {
        let n = rng.gen_range(2..=5);
        let g = common::connected_graph(&mut rng, n, 8);
        let d = all_pairs_shortest_paths(&g);
        let xi = common::zero_mass(&mut rng, n);
        let supply = xi.measure().positive_part();
        let demand = xi.measure().negative_part();
        let expected = common::transport_by_basic_solutions(&d, supply.values(), demand.values());
        let got = transport(&d, &supply, &demand).unwrap();
        assert_eq!(got.value, expected);
        let shipped: Rational = got.shipments.iter().map(|s| d.get(s.from, s.to) * &s.mass).sum();
        assert_eq!(shipped, expected);
    }
}

#[test]
fn transport_with_overlapping_supports() {
    let mut rng = common::rng(102);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let g = common::connected_graph(&mut rng, n, 6);
        let d = all_pairs_shortest_paths(&g);
        let mu = common::positive_probability(&mut rng, n);
        let nu = common::positive_probability(&mut rng, n);
        let expected = common::transport_by_basic_solutions(&d, mu.values(), nu.values());
        let (value, gamma) = primal_lp_distance(&d, &mu, &nu).unwrap();
        assert_eq!(value, expected);
        let check = verify_coupling(&gamma, &d);
        assert!(check.feasible);
        assert_eq!(check.cost, value);
        assert!(support_is_forest(&gamma));
    }
}

#[test]
fn primal_value_is_a_metric_on_probabilities() {
    let mut rng = common::rng(103);
    for _ in 0..60 {
        let n = rng.gen_range(2..=7);
        let g = common::connected_graph(&mut rng, n, 12);
        let d = all_pairs_shortest_paths(&g);
        let p: Vec<ProbabilityFunction> = (0..3).map(|_| common::positive_probability(&mut rng, n)).collect();
        let w = |a: &ProbabilityFunction, b: &ProbabilityFunction| primal_lp_distance(&d, a, b).unwrap().0;
        assert!(w(&p[0], &p[0]).is_zero());
        assert_eq!(w(&p[0], &p[1]), w(&p[1], &p[0]));
        assert!(w(&p[0], &p[2]) <= w(&p[0], &p[1]) + w(&p[1], &p[2]));
    }
}

#[test]
fn dirac_distance_is_the_metric() {
    let g = common::cycle(vec![int(1), int(2), int(3), int(4), int(5)]);
    let d = all_pairs_shortest_paths(&g);
    for x in 0..5 {
        for y in 0..5 {
            let (value, _) =
                primal_lp_distance(&d, &ProbabilityFunction::delta(5, x), &ProbabilityFunction::delta(5, y)).unwrap();
            assert_eq!(&value, d.get(x, y));
        }
    }
}

#[test]
fn norm_scales_and_splits_consistently() {
    let mut rng = common::rng(104);
    for _ in 0..60 {
        let n = rng.gen_range(2..=7);
        let g = common::connected_graph(&mut rng, n, 12);
        let d = all_pairs_shortest_paths(&g);
        let xi = common::zero_mass(&mut rng, n);
        let c = common::weight(&mut rng);
        assert_eq!(kb_norm(&d, &xi.scale(&c)).unwrap(), c.clone() * kb_norm(&d, &xi).unwrap());
        let split = split_into_probabilities(&xi);
        let (value, _) = primal_lp_distance(&d, &split.mu, &split.nu).unwrap();
        assert_eq!(value * split.scale, kb_norm(&d, &xi).unwrap());
        let plan = kb_transport(&d, &xi).unwrap();
        let mut net = vec![Rational::zero(); n];
        for s in &plan.shipments {
            net[s.from] += &s.mass;
            net[s.to] -= &s.mass;
        }
        assert_eq!(net, xi.values());
    }
}

#[test]
fn rejects_unbalanced_and_negative_input() {
    let g = common::unit_path(3);
    let d = all_pairs_shortest_paths(&g);
    let a = Measure::new(vec![int(1), int(0), int(0)]);
    let b = Measure::new(vec![int(0), int(0), int(2)]);
    assert!(transport(&d, &a, &b).is_err());
    let neg = Measure::new(vec![int(-1), int(1), int(1)]);
    assert!(transport(&d, &neg, &a).is_err());
    let empty = Measure::zeros(3);
    assert!(transport(&d, &empty, &empty).unwrap().value.is_zero());
}
