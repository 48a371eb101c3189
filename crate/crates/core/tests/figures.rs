mod common;

use common::*;
use nmroute_core::baselines::{ebfs, edijkstra, ibf, shortest_path, Metric};
use nmroute_core::csp::{backward_pass, build_neighborhoods, extend_neighborhoods, solve_csp};
use nmroute_core::fast::{predecessor_levels, solve_l, solve_l1, ForwardEnd};
use nmroute_core::{
    dominates, path_distance, path_feasible, BoundKind, ConstraintSpec, EdgeAttr, Error, Graph, Objective, Outcome,
    PathLabel, SearchOptions, VertexId,
};

fn lab(path: &[f64], cost: f64) -> PathLabel {
    PathLabel {
        vertices: vec![VertexId(0)],
        edges: vec![],
        cost,
        path_dist: path.to_vec(),
    }
}

#[test]
fn dominance_of_running_example_vectors() {
    assert!(dominates(&lab(&[2.0], 5.0), &lab(&[6.0], 5.0)));
    assert!(!dominates(&lab(&[2.0], 5.0), &lab(&[2.0], 5.0)));
    assert!(!dominates(&lab(&[1.0], 9.0), &lab(&[2.0], 5.0)));
    assert!(!dominates(&lab(&[2.0], 5.0), &lab(&[1.0], 9.0)));
}

#[test]
fn two_hop_paths_of_running_example() {
    let g = figure3();
    let relaxed = figure3_spec(3.0, 5.0, 5.0);
    let xay = path_distance(&g, &[X, A, Y], &relaxed).unwrap();
    let xby = path_distance(&g, &[X, B, Y], &relaxed).unwrap();
    assert_eq!(xay.path_dist, vec![6.0, 5.0]);
    assert_eq!(xby.path_dist, vec![2.0, 5.0]);
    assert!(dominates(&xby, &xay));
    // delay 6 > 5, and X-B-Y needs a 3-unit link under a 5-unit demand
    assert!(!path_feasible(&xay, &relaxed).unwrap());
    let full = figure3_spec(5.0, 5.0, 5.0);
    let mask = g.feasible_edges(&full).unwrap();
    assert!(!xby.edges.iter().all(|e| mask[e.index()]));
    let xbay = path_distance(&g, &[X, B, A, Y], &full).unwrap();
    assert_eq!(xbay.path_dist, vec![4.0, 4.0]);
    assert!(path_feasible(&xbay, &full).unwrap());
}

#[test]
fn first_forward_pass_reaches_destination_in_two_levels() {
    let g = figure3();
    let opts = SearchOptions::plain();
    let nh = build_neighborhoods(&g, X, Y, &figure3_spec(5.0, 5.0, 5.0), &opts).unwrap();
    assert_eq!(nh.hops(), 2);
    assert_eq!(nh.level(0), &[X]);
    assert_eq!(nh.level(1), &[A, B]);
    assert!(nh.contains(2, Y));
}

#[test]
fn backward_pass_two_levels() {
    let g = figure3();
    // With a demand every link carries, both 2-hop paths come back and
    // neither meets the delay and cost bounds together with the demand.
    let relaxed = figure3_spec(3.0, 5.0, 5.0);
    let nh = build_neighborhoods(&g, X, Y, &relaxed, &SearchOptions::plain()).unwrap();
    let cands = backward_pass(&nh, &g).unwrap();
    let seqs: Vec<_> = cands.iter().map(|c| c.vertices.clone()).collect();
    assert_eq!(seqs, vec![path(&[X, A, Y]), path(&[X, B, Y])]);
    let full = figure3_spec(5.0, 5.0, 5.0);
    let mask = g.feasible_edges(&full).unwrap();
    for c in &cands {
        let ok = c.edges.iter().all(|e| mask[e.index()]) && path_feasible(c, &full).unwrap();
        assert!(!ok);
    }
    // Under the full request the weak B-Y link is gone.
    let nh = build_neighborhoods(&g, X, Y, &full, &SearchOptions::plain()).unwrap();
    let cands = backward_pass(&nh, &g).unwrap();
    assert_eq!(cands.len(), 1);
    assert_eq!(cands[0].vertices, path(&[X, A, Y]));
}

#[test]
fn third_level_yields_optimal_path() {
    let g = figure3();
    let spec = figure3_spec(5.0, 5.0, 5.0);
    let mut nh = build_neighborhoods(&g, X, Y, &spec, &SearchOptions::plain()).unwrap();
    extend_neighborhoods(&mut nh, &g).unwrap();
    assert_eq!(nh.hops(), 3);
    let cands = backward_pass(&nh, &g).unwrap();
    assert!(cands.iter().any(|c| c.vertices == path(&[X, B, A, Y])));
}

#[test]
fn solve_csp_running_example() {
    let g = figure3();
    let spec = figure3_spec(5.0, 5.0, 5.0);
    for dominance in [false, true] {
        for look_back in [false, true] {
            let opts = SearchOptions::default().with_dominance(dominance).with_look_back(look_back);
            let r = solve_csp(&g, X, Y, &spec, &opts).unwrap();
            assert_eq!(r.outcome, Outcome::Found);
            let p = r.path().unwrap();
            assert_eq!(p.vertices, path(&[X, B, A, Y]));
            assert_eq!(p.cost, 4.0);
            assert_eq!(p.path_dist, vec![4.0, 4.0]);
        }
    }
}

#[test]
fn look_back_prunes_the_a_to_y_suffix() {
    let g = figure3();
    // Only the two path bounds; every link carries the demand.
    let spec = figure3_spec(3.0, 5.0, 5.0);
    let opts = SearchOptions::plain().with_look_back(true);
    let nh = build_neighborhoods(&g, X, Y, &spec, &opts).unwrap();
    assert_eq!(nh.hops(), 2);
    // Best delay from X to A in one hop is 5; the suffix A->Y adds 1.
    assert_eq!(nh.best_from_source(1, A), Some(&[5.0, 4.0][..]));
    let ay = g.out_arcs(A).iter().find(|a| a.vertex == Y).unwrap().edge;
    assert_eq!(g.edge(ay).attr.path_metrics[0], 1.0);
    let cands = backward_pass(&nh, &g).unwrap();
    assert_eq!(cands.len(), 1);
    assert_eq!(cands[0].vertices, path(&[X, B, Y]));
    let plain = build_neighborhoods(&g, X, Y, &spec, &SearchOptions::plain()).unwrap();
    assert_eq!(backward_pass(&plain, &g).unwrap().len(), 2);
    let r = solve_csp(&g, X, Y, &spec, &opts).unwrap();
    assert!(r.counters.infeasibility_pruned >= 1);
    assert_eq!(r.path().unwrap().vertices, path(&[X, B, A, Y]));
}

#[test]
fn look_back_excludes_vertices_over_a_bound() {
    let g = figure3();
    let spec = figure3_spec(5.0, 4.0, 5.0);
    let opts = SearchOptions::plain().with_look_back(true);
    let nh = build_neighborhoods(&g, X, Y, &spec, &opts).unwrap();
    // A is 5 delay units away in one hop, above the bound of 4.
    assert_eq!(nh.level(1), &[B]);
}

#[test]
fn solve_l1_running_example_trace() {
    let g = figure3();
    let spec = ConstraintSpec::new(5.0)
        .unwrap()
        .with_link_bound(0, BoundKind::AtLeast, 5.0)
        .with_path_bounds(vec![5.0, f64::INFINITY])
        .unwrap();
    let (levels, end) = predecessor_levels(&g, X, Y, &spec).unwrap();
    assert_eq!(end, ForwardEnd::Reached);
    assert_eq!(levels.len(), 4);
    let l1: Vec<_> = levels.level(1).iter().map(|e| (e.vertex, e.dist)).collect();
    assert_eq!(l1, vec![(A, 5.0), (B, 1.0)]);
    let l2: Vec<_> = levels.level(2).iter().map(|e| (e.vertex, e.dist, e.pred.unwrap().0)).collect();
    assert_eq!(l2, vec![(A, 3.0, B)]);
    let l3: Vec<_> = levels.level(3).iter().map(|e| (e.vertex, e.dist, e.pred.unwrap().0)).collect();
    assert_eq!(l3, vec![(Y, 4.0, A)]);

    let r = solve_l1(&g, X, Y, &spec).unwrap();
    let p = r.path().unwrap();
    assert_eq!(p.vertices, path(&[X, B, A, Y]));
    assert_eq!(p.path_dist[0], 4.0);
    assert_eq!(ibf(&g, X, Y, &spec).unwrap().path().unwrap().vertices, p.vertices);
}

#[test]
fn solve_l_min_hop_on_running_example() {
    let g = figure3();
    let spec = ConstraintSpec::new(5.0).unwrap().with_link_bound(0, BoundKind::AtLeast, 5.0);
    let r = solve_l(&g, X, Y, &spec, Objective::Hops).unwrap();
    assert_eq!(r.path().unwrap().vertices, path(&[X, A, Y]));
    let r = solve_l(&g, X, Y, &spec, Objective::Cost).unwrap();
    assert_eq!(r.path().unwrap().vertices, path(&[X, B, A, Y]));
}

#[test]
fn ebfs_matches_on_running_example() {
    let g = figure3();
    let spec = figure3_spec(5.0, 5.0, 5.0);
    for la in [false, true] {
        let r = ebfs(&g, X, Y, &spec, &SearchOptions::default().with_look_ahead(la)).unwrap();
        assert_eq!(r.path().unwrap().vertices, path(&[X, B, A, Y]));
    }
    // From X, A is at delay 5 and still needs at least 1 more to reach Y.
    let r = ebfs(&g, X, Y, &spec, &SearchOptions::plain().with_look_ahead(true)).unwrap();
    assert!(r.counters.infeasibility_pruned >= 1);
}

fn figure1() -> Graph {
    // A=0, B=1, C=2; capacity 10 everywhere, path metric is the delay
    let mut g = Graph::new(false, 3, 0, 1);
    g.add_edge(0, 1, EdgeAttr::new(10.0, vec![], vec![15.0], 1.0)).unwrap();
    g.add_edge(0, 2, EdgeAttr::new(10.0, vec![], vec![4.0], 1.0)).unwrap();
    g.add_edge(2, 1, EdgeAttr::new(10.0, vec![], vec![4.0], 1.0)).unwrap();
    g
}

#[test]
fn min_hop_dijkstra_ignores_latency() {
    let g = figure1();
    let (a, b) = (VertexId(0), VertexId(1));
    let spec = ConstraintSpec::new(10.0).unwrap().with_path_bounds(vec![10.0]).unwrap();
    let p = shortest_path(&g, a, b, &spec, Metric::Hops).unwrap().unwrap();
    assert_eq!(p.vertices, vec![a, b]);
    assert_eq!(edijkstra(&g, a, b, &spec, Metric::Hops).unwrap().outcome, Outcome::NoFeasiblePath);
    let r = edijkstra(&g, a, b, &spec, Metric::PathMetric).unwrap();
    assert_eq!(r.path().unwrap().vertices, vec![a, VertexId(2), b]);
    assert_eq!(solve_l1(&g, a, b, &spec).unwrap().path().unwrap().hop_count(), 2);
}

#[test]
fn trivial_and_disconnected_queries() {
    let g = figure3();
    let spec = figure3_spec(5.0, 5.0, 5.0);
    let r = solve_csp(&g, X, X, &spec, &SearchOptions::default()).unwrap();
    assert_eq!(r.path().unwrap().hop_count(), 0);
    assert_eq!(r.path().unwrap().cost, 0.0);

    let mut h = Graph::new(false, 4, 0, 1);
    h.add_edge(0, 1, EdgeAttr::new(1.0, vec![], vec![1.0], 1.0)).unwrap();
    h.add_edge(2, 3, EdgeAttr::new(1.0, vec![], vec![1.0], 1.0)).unwrap();
    let spec = ConstraintSpec::new(1.0).unwrap();
    let (s, t) = (VertexId(0), VertexId(3));
    assert_eq!(
        build_neighborhoods(&h, s, t, &spec, &SearchOptions::default()).unwrap_err(),
        Error::Unreachable
    );
    assert_eq!(solve_csp(&h, s, t, &spec, &SearchOptions::default()).unwrap().outcome, Outcome::Unreachable);
    assert_eq!(solve_l1(&h, s, t, &spec).unwrap().outcome, Outcome::Unreachable);
    assert_eq!(solve_l(&h, s, t, &spec, Objective::Hops).unwrap().outcome, Outcome::Unreachable);
    assert_eq!(ibf(&h, s, t, &spec).unwrap().outcome, Outcome::Unreachable);
    assert_eq!(edijkstra(&h, s, t, &spec, Metric::Cost).unwrap().outcome, Outcome::Unreachable);
    assert_eq!(ebfs(&h, s, t, &spec, &SearchOptions::default()).unwrap().outcome, Outcome::Unreachable);
    let pruned = ConstraintSpec::new(2.0).unwrap();
    let (s, t) = (VertexId(0), VertexId(1));
    assert_eq!(solve_l(&h, s, t, &pruned, Objective::Hops).unwrap().outcome, Outcome::Unreachable);
}

#[test]
fn adjacent_destination_needs_one_level() {
    let g = figure3();
    let spec = figure3_spec(5.0, 10.0, 10.0);
    let nh = build_neighborhoods(&g, X, A, &spec, &SearchOptions::default()).unwrap();
    assert_eq!(nh.hops(), 1);
    let r = solve_l(&g, X, A, &ConstraintSpec::new(5.0).unwrap(), Objective::Hops).unwrap();
    assert_eq!(r.path().unwrap().hop_count(), 1);
}

#[test]
fn star_graph_single_candidate() {
    let mut g = Graph::new(false, 5, 0, 1);
    for leaf in 1..5 {
        g.add_edge(0, leaf, EdgeAttr::new(1.0, vec![], vec![1.0], 1.0)).unwrap();
    }
    let spec = ConstraintSpec::new(1.0).unwrap();
    let nh = build_neighborhoods(&g, VertexId(0), VertexId(3), &spec, &SearchOptions::default()).unwrap();
    assert_eq!(nh.hops(), 1);
    let cands = backward_pass(&nh, &g).unwrap();
    assert_eq!(cands.len(), 1);
    assert_eq!(cands[0].vertices, vec![VertexId(0), VertexId(3)]);
}

#[test]
fn clique_extension_hits_the_level_cap() {
    let n = 5;
    let mut g = Graph::new(false, n, 0, 0);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v, EdgeAttr::new(1.0, vec![], vec![], 1.0)).unwrap();
        }
    }
    let spec = ConstraintSpec::new(1.0).unwrap();
    let mut nh = build_neighborhoods(&g, VertexId(0), VertexId(1), &spec, &SearchOptions::default()).unwrap();
    let mut created = nh.hops();
    let err = loop {
        match extend_neighborhoods(&mut nh, &g) {
            Ok(()) => created += 1,
            Err(e) => break e,
        }
    };
    assert_eq!(err, Error::MaxLengthExceeded);
    assert_eq!(created, n - 1);
    assert_eq!(nh.level(n - 1).len(), n - 1);
}

#[test]
fn negative_cycle_is_reported() {
    let mut g = Graph::new(true, 4, 0, 1);
    g.add_edge(0, 1, EdgeAttr::new(1.0, vec![], vec![1.0], 1.0)).unwrap();
    g.add_edge(1, 2, EdgeAttr::new(1.0, vec![], vec![-3.0], 1.0)).unwrap();
    g.add_edge(2, 1, EdgeAttr::new(1.0, vec![], vec![1.0], 1.0)).unwrap();
    g.add_edge(1, 3, EdgeAttr::new(1.0, vec![], vec![100.0], 1.0)).unwrap();
    let spec = ConstraintSpec::new(1.0).unwrap().with_path_bounds(vec![5.0]).unwrap();
    let r = solve_l1(&g, VertexId(0), VertexId(3), &spec).unwrap();
    assert_eq!(r.outcome, Outcome::NegativeCycle);
    assert!(matches!(
        solve_csp(&g, VertexId(0), VertexId(3), &spec, &SearchOptions::default()),
        Err(Error::Config(_))
    ));
}

#[test]
fn k_best_on_four_cycle() {
    // 0-1-2-3-0 with a chord 0-2
    let mut g = Graph::new(false, 4, 0, 1);
    let edges = [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 2.0), (3, 0, 2.0), (0, 2, 3.0)];
    for (u, v, c) in edges {
        g.add_edge(u, v, EdgeAttr::new(1.0, vec![], vec![c], c)).unwrap();
    }
    let spec = ConstraintSpec::new(1.0).unwrap().with_path_bounds(vec![100.0]).unwrap();
    let (s, t) = (VertexId(0), VertexId(2));
    let want: Vec<Vec<VertexId>> = oracle_ranked(feasible_paths(&g, s, t, &spec))
        .into_iter()
        .take(3)
        .map(|w| w.vertices)
        .collect();
    assert_eq!(want.len(), 3);
    let opts = SearchOptions::default().with_k(3);
    let nm: Vec<_> = solve_csp(&g, s, t, &spec, &opts).unwrap().paths.into_iter().map(|p| p.vertices).collect();
    let bfs: Vec<_> = ebfs(&g, s, t, &spec, &opts).unwrap().paths.into_iter().map(|p| p.vertices).collect();
    assert_eq!(nm, want);
    assert_eq!(bfs, want);
}

#[test]
fn zero_k_is_a_config_error() {
    let g = figure3();
    let spec = figure3_spec(5.0, 5.0, 5.0);
    let opts = SearchOptions::default().with_k(0);
    assert!(matches!(solve_csp(&g, X, Y, &spec, &opts), Err(Error::Config(_))));
}
