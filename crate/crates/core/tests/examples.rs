mod common;

use kantorovich::cut::{cut_distance, cut_norm, discrete_pairs};
use kantorovich::graph_norm::{cycle_graph_norm, decomposed_norm, envelope_norm};
use kantorovich::io::{format_coupling, parse_coupling, parse_cuts, parse_graph, parse_measure};
use kantorovich::measure::zero_mass_from_pair;
use kantorovich::metric::{all_pairs_shortest_paths, close_pairs};
use kantorovich::oracle::{kb_norm, primal_lp_distance};
use kantorovich::plan::{barycenter, optimal_tree_coupling};
use kantorovich::rational::{int, ratio};
use kantorovich::spanning::DEFAULT_TREE_LIMIT;
use kantorovich::tree::root_tree;
use kantorovich::tree_norm::tree_norm;
use kantorovich::{Error, ProbabilityFunction, ZeroMassVector};

fn probability(text: &str, g: &kantorovich::WeightedGraph) -> ProbabilityFunction {
    ProbabilityFunction::new(parse_measure(text, g).unwrap()).unwrap()
}

fn zero_mass(text: &str, g: &kantorovich::WeightedGraph) -> ZeroMassVector {
    ZeroMassVector::new(parse_measure(text, g).unwrap()).unwrap()
}

#[test]
fn path_dirac_distance() {
    let g = parse_graph("a b 1\nb c 1\n").unwrap();
    let mu = probability("a 1\n", &g);
    let nu = probability("c 1\n", &g);
    let t = root_tree(&g, 0).unwrap();
    let xi = zero_mass_from_pair(&mu, &nu).unwrap();
    assert_eq!(tree_norm(&t, &xi).unwrap().value, int(2));
    let (value, gamma) = primal_lp_distance(&all_pairs_shortest_paths(&g), &mu, &nu).unwrap();
    assert_eq!(value, int(2));
    assert_eq!(format_coupling(&gamma, &g), "a c 1\n");
}

#[test]
fn path_plan_moves_only_the_difference() {
    let g = parse_graph("1 2 1\n2 3 1\n").unwrap();
    let mu = probability("1 1/2\n2 3/10\n3 1/5\n", &g);
    let nu = probability("1 1/5\n2 3/10\n3 1/2\n", &g);
    let t = root_tree(&g, 0).unwrap();
    let plan = optimal_tree_coupling(&t, &mu, &nu).unwrap();
    assert_eq!(plan.cost, ratio(3, 5));
    assert_eq!(plan.coupling.get(0, 1), ratio(3, 10));
    assert_eq!(plan.coupling.get(1, 2), ratio(3, 10));
    assert_eq!(plan.coupling.get(0, 0), ratio(1, 5));
    let text = format_coupling(&plan.coupling, &g);
    let back = parse_coupling(&text, &g, mu.measure().clone(), nu.measure().clone()).unwrap();
    assert_eq!(back, plan.coupling);
}

#[test]
fn plan_refuses_disjoint_diracs() {
    let g = parse_graph("1 2 1\n2 3 1\n").unwrap();
    let t = root_tree(&g, 0).unwrap();
    let err = optimal_tree_coupling(&t, &ProbabilityFunction::delta(3, 0), &ProbabilityFunction::delta(3, 2));
    assert!(matches!(err, Err(Error::PlanCondition { .. })));
}

#[test]
fn square_with_diagonal() {
    let g = parse_graph("1 2 1\n2 3 1\n3 4 1\n4 1 1\n2 4 1\n").unwrap();
    let xi = zero_mass("1 1\n3 -1\n", &g);
    let env = envelope_norm(&g, &xi, DEFAULT_TREE_LIMIT).unwrap();
    assert_eq!(env.value, int(2));
    assert_eq!(kb_norm(&all_pairs_shortest_paths(&g), &xi).unwrap(), int(2));
}

#[test]
fn two_triangles_through_a_cut_vertex() {
    let g = parse_graph("1 2 1\n2 3 1\n3 4 1\n4 2 1\n2 5 1\n5 1 1\n").unwrap();
    let xi = zero_mass("1 1\n5 1\n3 -1\n4 -1\n", &g);
    // ½(1 + 1 + 2 + 1 + 1 + 2)
    assert_eq!(decomposed_norm(&g, &xi, DEFAULT_TREE_LIMIT).unwrap(), int(4));
    assert_eq!(kb_norm(&all_pairs_shortest_paths(&g), &xi).unwrap(), int(4));
}

#[test]
fn weighted_cycle() {
    let g = parse_graph("a b 1\nb c 2\nc d 3\nd a 4\n").unwrap();
    let xi = zero_mass("a 1\nc -1\n", &g);
    let c = cycle_graph_norm(&g, &xi).unwrap();
    assert_eq!(c.value, int(3));
    assert_eq!(c.value, kb_norm(&all_pairs_shortest_paths(&g), &xi).unwrap());
}

#[test]
fn barycenter_of_a_path() {
    let g = parse_graph("1 2 1\n2 3 1\n").unwrap();
    let mu = probability("1 1/5\n2 3/10\n3 1/2\n", &g);
    let b = barycenter(&all_pairs_shortest_paths(&g), &mu).unwrap();
    assert_eq!(b.vertex, 1);
    assert_eq!(b.value, ratio(7, 10));
}

#[test]
fn discrete_pair_cuts_on_k4() {
    let g = common::complete(4);
    let c = discrete_pairs(4).unwrap();
    let dc = cut_distance(&c);
    assert!(dc.unseparated.is_empty());
    assert_eq!(dc.matrix, all_pairs_shortest_paths(&g));
    let xi = ZeroMassVector::new(kantorovich::Measure::new(vec![int(1), int(1), int(-1), int(-1)])).unwrap();
    assert_eq!(cut_norm(&c, &xi).unwrap().value, int(1));
    assert_eq!(kb_norm(&dc.matrix, &xi).unwrap(), int(2));
}

#[test]
fn cut_file_round_trip() {
    let g = parse_graph("a b 1\nb c 1\n").unwrap();
    let c = parse_cuts("1 : a\n1 : a b\n", &g).unwrap();
    let xi = zero_mass("a 1\nc -1\n", &g);
    assert_eq!(cut_norm(&c, &xi).unwrap().value, int(2));
}

#[test]
fn close_pairs_of_a_cycle() {
    let g = common::unit_cycle(5);
    let d = all_pairs_shortest_paths(&g);
    assert_eq!(close_pairs(&g, &d).len(), 5);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let err = parse_graph("a b 1\na c\n").unwrap_err();
    assert!(err.to_string().starts_with("line 2:"), "{err}");
    let g = parse_graph("a b 1\n").unwrap();
    assert!(parse_measure("z 1\n", &g).is_err());
    assert!(parse_measure("a 1\na 1\n", &g).is_err());
}
