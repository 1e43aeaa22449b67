use proptest::prelude::*;

use ppr_core::bidir::{bippr_avg_pair, Correction};
use ppr_core::exact::{exact_single_source, exact_single_target, DEFAULT_EPS};
use ppr_core::experiment::{fit_scaling, read_csv, write_csv, ExperimentRecord};
use ppr_core::instances::{apply_swap, gen_family, FamilyId};
use ppr_core::mc::mc_single_source;
use ppr_core::push::{backwards_push, backwards_push_avg, NeighborScan};
use ppr_core::{AccessModel, EstimatorConfig, Graph, Oracle, Session};

/// Simple graphs on up to 24 vertices, edges in generated order.
fn graph() -> impl Strategy<Value = Graph> {
    (1usize..24).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> =
                pairs.into_iter().filter(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v)))).collect();
            Graph::from_edges(n, &edges).expect("simple by construction")
        })
    })
}

fn cfg() -> EstimatorConfig {
    EstimatorConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversibility(g in graph()) {
        let pi: Vec<_> = (0..g.n())
            .map(|t| exact_single_target(&g, &cfg(), t, DEFAULT_EPS).unwrap())
            .collect();
        for u in 0..g.n() {
            for v in 0..g.n() {
                let lhs = g.degree(u) as f64 * pi[v].get(u);
                let rhs = g.degree(v) as f64 * pi[u].get(v);
                prop_assert!((lhs - rhs).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn source_vector_is_a_distribution(g in graph(), s in 0usize..24) {
        let s = s % g.n();
        let x = exact_single_source(&g, &cfg(), s, DEFAULT_EPS).unwrap();
        prop_assert!((x.values.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(x.values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn push_bounds(g in graph(), t in 0usize..24, r_max in 0.005f64..0.5) {
        let t = t % g.n();
        let pi = exact_single_target(&g, &cfg(), t, DEFAULT_EPS).unwrap();
        let mut o = Session::new(&g, AccessModel::BASE, 0);
        let st = backwards_push(&mut o, t, r_max, &cfg()).unwrap();
        let avg = backwards_push_avg(&mut o, t, r_max, &cfg(), NeighborScan::Full).unwrap();
        for u in 0..g.n() {
            let gap = pi.get(u) - st.p.get(u);
            prop_assert!(gap >= -1e-12 && gap <= r_max + 1e-12, "bp gap {gap} at {u}");
            let gap = pi.get(u) - avg.state.p.get(u);
            prop_assert!(gap >= -1e-12 && gap <= 2.0 * r_max + 1e-12, "bp-avg gap {gap} at {u}");
        }
        prop_assert!(st.r.iter().all(|(_, r)| r <= r_max));
    }

    #[test]
    fn text_round_trip(g in graph()) {
        let h = Graph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(h.lists(), g.lists());
    }

    #[test]
    fn counters_add_up_and_only_grow(g in graph(), s in 0usize..24, seed in any::<u64>()) {
        let s = s % g.n();
        let cfg = EstimatorConfig { delta: 0.5, ..cfg() };
        let mut o = Session::new(&g, AccessModel::BASE, seed);
        let before = o.counts();
        let est = mc_single_source(&mut o, s, &cfg).unwrap();
        let after = o.counts();
        prop_assert!(after.deg >= before.deg && after.neigh >= before.neigh);
        prop_assert_eq!(after.total(), after.deg + after.neigh + after.sorted + after.jump + after.adj);
        prop_assert_eq!(after.jump + after.adj + after.sorted, 0);
        prop_assert!((est.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bippr_corrections_agree(g in graph(), s in 0usize..24, t in 0usize..24, seed in any::<u64>()) {
        let (s, t) = (s % g.n(), t % g.n());
        let cfg = EstimatorConfig { delta: 0.3, ..cfg() };
        let mut a = Session::new(&g, AccessModel::ALL, seed);
        let mut b = Session::new(&g, AccessModel::ALL, seed);
        let eager = bippr_avg_pair(&mut a, s, t, &cfg, Correction::Eager).unwrap();
        let lazy = bippr_avg_pair(&mut b, s, t, &cfg, Correction::Lazy).unwrap();
        prop_assert!((eager - lazy).abs() <= 1e-12, "eager {eager} lazy {lazy}");
    }

    #[test]
    fn swaps_preserve_degrees_and_indices(
        fam_idx in 0usize..16,
        n in 8usize..20,
        ratio in 1usize..4,
        pick in any::<u64>(),
    ) {
        let id = FamilyId::ALL[fam_idx];
        let fam = gen_family(id, n, n * ratio * 2, 0.1, &cfg()).unwrap();
        let q = fam.quads.nth(pick % fam.quads.len()).unwrap();
        let g = &fam.graph;
        let h = apply_swap(g, &q).unwrap();
        for v in 0..g.n() {
            prop_assert_eq!(g.degree(v), h.degree(v));
            let touched: Vec<_> = q.pairs().iter().flat_map(|&(a, b)| [a, b]).collect();
            for (i, &u) in g.neighbors(v).iter().enumerate() {
                let moved = touched.contains(&v) && touched.contains(&u)
                    && q.removed().iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
                if !moved {
                    prop_assert_eq!(h.neighbors(v)[i], u);
                }
            }
        }
        for (a, b) in q.added() {
            prop_assert!(h.has_edge(a, b));
        }
    }

    #[test]
    fn fit_recovers_power_laws(b in -2.0f64..2.0, a in 0.1f64..100.0, k in 3usize..8) {
        let xs: Vec<f64> = (0..k).map(|i| 2f64.powi(i as i32 + 1)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| a * x.powf(b)).collect();
        let fit = fit_scaling(&xs, &ys).unwrap();
        prop_assert!((fit.slope - b).abs() < 1e-9);
        prop_assert!((fit.intercept - a.ln()).abs() < 1e-9);
    }

    #[test]
    fn csv_rows_round_trip(
        fam in "[a-z,\" ]{0,12}",
        counts in prop::array::uniform5(0u64..1_000_000),
        est in prop::option::of(0.0f64..1.0),
        exact in prop::option::of(0.0f64..1.0),
        seed in any::<u64>(),
    ) {
        let abs_err = est.zip(exact).map(|(e, x)| (e - x).abs());
        let rec = ExperimentRecord {
            family: fam,
            n: 10,
            m: 20,
            delta: 0.05,
            algo: "mc".into(),
            model_flags: "jump,adj".into(),
            trial: 3,
            seed,
            queries_deg: counts[0],
            queries_neigh: counts[1],
            queries_sorted: counts[2],
            queries_jump: counts[3],
            queries_adj: counts[4],
            queries_total: counts.iter().sum(),
            estimate: est,
            exact,
            abs_err,
            rel_err: abs_err.zip(exact).map(|(a, x)| a / x.max(0.05)),
            wall_ns: 0,
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, std::slice::from_ref(&rec)).unwrap();
        let back = read_csv(&buf[..]).unwrap();
        prop_assert_eq!(back, vec![rec]);
    }
}

#[test]
fn session_reports_its_graph() {
    let g = Graph::parse("3 2\n0 1\n1 2").unwrap();
    let mut o = Session::new(&g, AccessModel::BASE, 1);
    assert_eq!((o.n(), o.m()), (3, 2));
    assert_eq!(o.deg(1).unwrap(), 2);
    assert_eq!(o.counts().deg, 1);
}
