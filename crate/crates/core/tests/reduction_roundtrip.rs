//! Every generator is checked in both directions against its oracle at
//! small sizes: feasible instances must extract to checked solutions and
//! solvable sources must give feasible instances.

use mecsr_core::instance::evaluate;
use mecsr_core::oracles;
use mecsr_core::reductions::{
    extract, from_3sat, from_dominating_set, from_multicolor_clique, oracle, reduce, Cnf3,
    ColoredGraph, Extraction, Graph, Params, ReductionKind, SourceInstance, TripleSystem,
    ValueMultiset,
};
use mecsr_core::scoring::{build_tensor, Profile, RuleSpec};
use mecsr_core::solvers::{
    rule_types, solve_brute, solve_min_subsets, solve_subset_fpt, Budgets, Method,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1 << 22;

fn roundtrip(kind: ReductionKind, source: &SourceInstance, params: Params) {
    let inst = reduce(kind, source, params).unwrap();
    assert!(inst.validate().is_empty());
    let verdict = oracle(kind, source, params).unwrap();
    let solved = solve_brute(&inst, BUDGET).unwrap();
    assert_eq!(solved.feasible, verdict.solvable, "{kind} on {source:?} with {params:?}");
    if let Some(a) = solved.assignment {
        assert!(evaluate(&inst, &a).unwrap().feasible);
        extract(kind, source, params, &inst, &a).unwrap();
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

#[test]
fn dominating_set_both_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let g = SourceInstance::Graph(random_graph(&mut rng, n, 0.4));
        for k in 1..=n {
            roundtrip(ReductionKind::DominatingSet, &g, Params { k: Some(k), force: false });
        }
    }
}

#[test]
fn set_packing_both_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let m = rng.gen_range(3..=7);
        let count = rng.gen_range(1..=4);
        let universe: Vec<usize> = (0..m).collect();
        let triples = (0..count)
            .map(|_| {
                let pick: Vec<usize> = universe.choose_multiple(&mut rng, 3).copied().collect();
                [pick[0], pick[1], pick[2]]
            })
            .collect();
        let ts = SourceInstance::Triples(TripleSystem::new(m, triples).unwrap());
        for k in 1..=count {
            roundtrip(ReductionKind::SetPacking, &ts, Params { k: Some(k), force: false });
        }
    }
}

#[test]
fn partition_both_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..80 {
        let len = rng.gen_range(1..=7);
        let values: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=9)).collect();
        let src = SourceInstance::Values(ValueMultiset { values });
        roundtrip(ReductionKind::Partition, &src, Params { k: None, force: true });
    }
}

#[test]
fn three_sat_both_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..80 {
        let vars = rng.gen_range(1..=5);
        let clauses = (0..rng.gen_range(1..=8))
            .map(|_| {
                [0; 3].map(|_| {
                    let v = rng.gen_range(1..=vars) as i64;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
            })
            .collect();
        let src = SourceInstance::Cnf3(Cnf3::new(vars, clauses).unwrap());
        roundtrip(ReductionKind::ThreeSat, &src, Params::default());
    }
}

fn random_colored(rng: &mut ChaCha8Rng, k: usize, q: usize, p: f64) -> ColoredGraph {
    let n = k * q;
    let color: Vec<usize> = (0..n).map(|v| v / q).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if color[u] != color[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    ColoredGraph::new(Graph::new(n, edges).unwrap(), k, q, color).unwrap()
}

#[test]
fn multicolor_clique_both_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..60 {
        let (k, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let g = SourceInstance::ColoredGraph(random_colored(&mut rng, k, q, 0.6));
        roundtrip(ReductionKind::MulticolorClique, &g, Params { k: Some(k), force: false });
    }
}

/// Second clique enumeration: all vertex subsets, keeping rainbow cliques.
fn rainbow_clique_exists(g: &ColoredGraph) -> bool {
    let n = g.graph.n;
    let adj = g.graph.adjacency();
    (0u32..1 << n).any(|mask| {
        let members: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let mut colors: Vec<usize> = members.iter().map(|&v| g.color[v]).collect();
        colors.sort_unstable();
        colors == (0..g.k).collect::<Vec<_>>()
            && members
                .iter()
                .all(|&u| members.iter().all(|&v| u == v || adj[u * n + v]))
    })
}

#[test]
fn clique_oracle_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let q = rng.gen_range(1..=10 / k);
        let g = random_colored(&mut rng, k, q, 0.5);
        assert_eq!(
            oracles::multicolor_clique(&g, k).unwrap().solvable,
            rainbow_clique_exists(&g)
        );
    }
}

#[test]
fn generators_are_deterministic() {
    let g = SourceInstance::Graph(Graph::cycle(5));
    let params = Params { k: Some(2), force: false };
    for kind in [ReductionKind::DominatingSet, ReductionKind::DominatingSetTwoRules] {
        assert_eq!(reduce(kind, &g, params).unwrap(), reduce(kind, &g, params).unwrap());
    }
}

#[test]
fn monotone_in_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n, 0.3);
        let verdicts: Vec<bool> = (0..=n)
            .map(|k| oracles::dominating_set(&g, k).unwrap().solvable)
            .collect();
        assert!(verdicts.windows(2).all(|w| !w[0] || w[1]));
    }
}

#[test]
fn subset_fpt_on_three_sat_examples() {
    let sat = Cnf3::new(3, vec![[1, 2, 3], [-1, 2, -3]]).unwrap();
    let unsat = Cnf3::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
    assert!(oracles::sat3(&sat).unwrap().solvable);
    assert!(!oracles::sat3(&unsat).unwrap().solvable);
    let r = solve_subset_fpt(&from_3sat(&sat).unwrap(), 20).unwrap();
    assert!(r.feasible);
    assert!(!solve_subset_fpt(&from_3sat(&unsat).unwrap(), 20).unwrap().feasible);
}

#[test]
fn satisfiable_cnf_extracts_a_model() {
    // 4 variables, 6 clauses, satisfied by x = (T, F, T, F)
    let f = Cnf3::new(
        4,
        vec![[1, 2, 3], [-2, 3, 4], [1, -3, -4], [-1, 3, -2], [2, -4, 1], [-2, -4, 3]],
    )
    .unwrap();
    assert!(oracles::check_satisfies(&f, &[true, false, true, false]));
    let src = SourceInstance::Cnf3(f.clone());
    let inst = from_3sat(&f).unwrap();
    let r = solve_brute(&inst, BUDGET).unwrap();
    match extract(ReductionKind::ThreeSat, &src, Params::default(), &inst, &r.assignment.unwrap()) {
        Ok(Extraction::Truth(t)) => assert!(oracles::check_satisfies(&f, &t)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn min_subsets_on_two_color_graphs() {
    let color = vec![0, 0, 1, 1];
    // exactly one adjacent pair across the colours
    let one_pair = ColoredGraph::new(Graph::new(4, vec![(1, 2)]).unwrap(), 2, 2, color.clone()).unwrap();
    let none = ColoredGraph::new(Graph::new(4, vec![]).unwrap(), 2, 2, color).unwrap();
    for g in [one_pair, none] {
        let inst = from_multicolor_clique(&g, 2).unwrap();
        let r = solve_min_subsets(&inst, 24).unwrap();
        assert_eq!(r.feasible, oracles::multicolor_clique(&g, 2).unwrap().solvable);
        assert_eq!(r.feasible, solve_brute(&inst, BUDGET).unwrap().feasible);
    }
}

#[test]
fn triangle_has_one_rule_type_per_layer() {
    let inst = from_dominating_set(&Graph::complete(3), 2).unwrap();
    for layer in 0..inst.t {
        let types = rule_types(&inst, layer);
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].members, vec![0, 1, 2]);
        assert_eq!(types[0].mask.count(), 3);
    }
}

#[test]
fn auto_dispatch_on_generated_instances() {
    let g = SourceInstance::Graph(Graph::complete(3));
    let params = Params { k: Some(1), force: false };
    let inst = reduce(ReductionKind::DominatingSet, &g, params).unwrap();
    let r = mecsr_core::solvers::solve(&inst, Default::default(), &Budgets::default()).unwrap();
    assert!(r.feasible);
    assert_ne!(r.method, Method::MinUnanimous);
}

/// Naive rescoring: walk the ranking and count positions by hand.
fn rescan(rule: RuleSpec, ranking: &[usize], p: usize) -> u64 {
    let m = ranking.len();
    let mut above = 0;
    for &c in ranking {
        if c == p {
            break;
        }
        above += 1;
    }
    match rule {
        RuleSpec::Borda => (0..m).filter(|&pos| pos > above).count() as u64,
        RuleSpec::Plurality => (above == 0) as u64,
        RuleSpec::Veto => (above + 1 != m) as u64,
        RuleSpec::KApproval(k) => (above < k) as u64,
    }
}

#[test]
fn tensor_matches_naive_rescoring() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let rules = [RuleSpec::Borda, RuleSpec::Plurality, RuleSpec::Veto, RuleSpec::KApproval(2)];
    for _ in 0..20 {
        let (n, t, m) = (rng.gen_range(1..=4), rng.gen_range(1..=3), 3);
        let rankings: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|_| {
                (0..t)
                    .map(|_| {
                        let mut r: Vec<usize> = (0..m).collect();
                        r.shuffle(&mut rng);
                        r
                    })
                    .collect()
            })
            .collect();
        let profile = Profile { m, p: rng.gen_range(0..m), rankings };
        let tensor = build_tensor(&profile, &rules).unwrap();
        for i in 0..n {
            for j in 0..t {
                for (k, &rule) in rules.iter().enumerate() {
                    assert_eq!(tensor.get(i, j, k), rescan(rule, &profile.rankings[i][j], profile.p));
                }
            }
        }
        let inst = tensor.into_instance(mecsr_core::Model::Sum, 1, 1).unwrap();
        assert!(inst.validate().is_empty());
    }
}
