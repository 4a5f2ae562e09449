//! Acceptance run: one `criterion N: PASS|FAIL` line per criterion, each
//! with its pinned wall-clock limit. Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use disthom::construction::{
    gs_prefix, prefix_rigidity_check, run_with, verify_state, BranchSpec, Branch, ConstructionState, DumpPair,
    StateDump,
};
use disthom::graph::{join, make_complete, make_cycle, make_path, Graph};
use disthom::hom::{
    compose, count_homomorphisms, find_homomorphism, fixation, is_homomorphism,
    is_uniquely_h_colourable, VertexMap,
};
use disthom::oracle::{
    fresh_common_neighbor, rado_oracle, random_bipartite_oracle, random_h_colourable_oracle, sample_check,
    FiniteOracle, GraphOracle, Oracle, PerturbedOracle, WitnessBudget,
};
use disthom::symmetry::lemma1::{default_corpus, lemma1_property_checks};
use disthom::symmetry::{
    automorphism_group, distinguishing_chromatic_number, find_distinguishing, is_distinguishing, is_isomorphic,
    is_preserving, non_composition_witness, DEFAULT_GROUP_CAP,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(n: usize) -> Graph {
    make_cycle(n).unwrap()
}

fn lemma1_suite() -> Outcome {
    let corpus = default_corpus();
    ensure(corpus.len() >= 30, || format!("corpus has only {} cases", corpus.len()))?;
    ensure(corpus.iter().all(|case| case.g.order() <= 8), || "corpus graph over 8 vertices".into())?;
    let report = lemma1_property_checks(&corpus, DEFAULT_GROUP_CAP, 4).map_err(|e| e.to_string())?;
    for item in ["L1-1", "L1-3", "L1-4", "L1-5"] {
        ensure(report.count(item) > 0, || format!("no {item} entries"))?;
    }
    if let Some(bad) = report.failures().next() {
        return Err(format!("{} failed on {}", bad.item, bad.case));
    }
    Ok(format!("{} cases, {} checks", corpus.len(), report.entries.len()))
}

fn non_composition() -> Outcome {
    let w = non_composition_witness(8).ok_or("no witness within the default budget")?;
    ensure(w.graph.is_connected() && w.graph.order() <= 8, || "witness graph out of range".into())?;
    ensure(w.mid == c(5) && w.target == make_complete(3), || "wrong targets".into())?;
    let d1 = is_distinguishing(&w.graph, &w.mid, &w.first).map_err(|e| e.to_string())?;
    let d2 = is_distinguishing(&w.mid, &w.target, &w.second).map_err(|e| e.to_string())?;
    ensure(d1.is_distinguishing() && d2.is_distinguishing(), || "factors not distinguishing".into())?;
    ensure(compose(&w.first, &w.second).map_err(|e| e.to_string())? == w.composite, || "bad composite".into())?;
    let aut = automorphism_group(&w.graph, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
    ensure(!w.certificate.is_identity() && aut.contains(&w.certificate), || "certificate not an automorphism".into())?;
    ensure(is_preserving(&w.certificate, &w.composite).map_err(|e| e.to_string())?, || {
        "certificate does not preserve the composite".into()
    })?;
    Ok(format!("{} vertices, {} edges, certificate {:?}", w.graph.order(), w.graph.edge_count(), w.certificate.image()))
}

fn c7_into_c5() -> Outcome {
    let (c7, c5) = (c(7), c(5));
    let f = find_distinguishing(&c7, &c5).ok_or("no distinguishing map C7 -> C5")?;
    ensure(is_distinguishing(&c7, &c5, &f).map_err(|e| e.to_string())?.is_distinguishing(), || {
        "certificate fails re-verification".into()
    })?;
    // closed walks of length 7 in C5: tr(A^7) = 70
    let count = count_homomorphisms(&c7, &c5);
    ensure(count == 70, || format!("{count} homomorphisms, expected 70"))?;
    Ok(format!("map {:?}, {count} homomorphisms", f.image()))
}

/// Every graph on at most `n` labelled vertices, plus a few larger named ones.
fn small_graphs() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
            out.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    let g = |n, e: &[(usize, usize)]| Graph::from_edges(n, e.iter().copied()).unwrap();
    out.extend([
        c(6),
        c(7),
        make_path(6),
        g(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]),
        g(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (3, 4), (5, 6)]),
        g(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (3, 6)]),
        g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]),
    ]);
    out
}

fn fixations_are_uniquely_colourable() -> Outcome {
    let mut cases = 0;
    for h in [make_complete(2), make_complete(3), c(5)] {
        for g in small_graphs() {
            let Some(f) = find_homomorphism(&g, &h) else { continue };
            let fx = fixation(&g, &f, &h).map_err(|e| e.to_string())?;
            let expected = g.edge_count() + h.edge_count() + g.vertices().map(|x| h.degree(f.apply(x))).sum::<usize>();
            ensure(fx.graph.edge_count() == expected, || {
                format!("|E| = {} for {:?}, expected {expected}", fx.graph.edge_count(), g.edges().collect::<Vec<_>>())
            })?;
            ensure(is_homomorphism(&fx.graph, &h, &fx.canonical).map_err(|e| e.to_string())?, || {
                "canonical map is not a homomorphism".into()
            })?;
            ensure(is_uniquely_h_colourable(&fx.graph, &h), || {
                format!("fixation of {:?} into {} vertices is not uniquely colourable", g.edges().collect::<Vec<_>>(), h.order())
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} fixations"))
}

fn chi_d_fixtures() -> Outcome {
    for n in 1..=5 {
        let k = distinguishing_chromatic_number(&make_complete(n));
        ensure(k == n, || format!("chi_D(K{n}) = {k}"))?;
    }
    let (c4, c5) = (distinguishing_chromatic_number(&c(4)), distinguishing_chromatic_number(&c(5)));
    ensure(c4 == 4 && c5 == 3, || format!("chi_D(C4) = {c4}, chi_D(C5) = {c5}"))?;
    let graphs: Vec<Graph> = {
        let mut seen: Vec<Graph> = Vec::new();
        for case in default_corpus() {
            if !seen.contains(&case.g) {
                seen.push(case.g);
            }
        }
        seen
    };
    let mut twos = 0;
    for g in &graphs {
        if distinguishing_chromatic_number(g) == 2 {
            twos += 1;
            let order = automorphism_group(g, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?.order();
            ensure(order <= 2, || format!("chi_D = 2 but |Aut| = {order} for {:?}", g.edges().collect::<Vec<_>>()))?;
        }
    }
    Ok(format!("{} corpus graphs, {twos} with chi_D = 2", graphs.len()))
}

fn oracle_soundness() -> Outcome {
    let k3 = make_complete(3);
    let oracles: Vec<(&str, GraphOracle)> = vec![
        ("rado-bit", rado_oracle()),
        ("random-bipartite", random_bipartite_oracle(42)),
        ("random-h-colourable", random_h_colourable_oracle(k3, 7).map_err(|e| e.to_string())?),
    ];
    for (name, o) in &oracles {
        for (window, seed) in [(64, 1), (1 << 20, 2), (u64::MAX, 3)] {
            sample_check(o, 10_000, window, seed).map_err(|e| format!("{name}: {e}"))?;
        }
        let again = o.spec().ok_or("oracle without spec")?.build().map_err(|e| e.to_string())?;
        for u in 0..100u64 {
            for v in 0..100u64 {
                ensure(o.adjacent(u, v) == again.adjacent(u, v), || format!("{name}: rebuilt oracle disagrees at {u}, {v}"))?;
            }
            ensure(o.colour(u) == again.colour(u), || format!("{name}: colour of {u} changed"))?;
        }
    }
    let w = fresh_common_neighbor(&rado_oracle(), 0, 2, &BTreeSet::from([1]), WitnessBudget::default())
        .map_err(|e| e.to_string())?;
    ensure(w == 5, || format!("fresh_common_neighbor(0, 2, {{1}}) = {w}"))?;
    Ok("3 oracles x 30000 sampled pairs; rado witness 5".into())
}

fn construction_run(oracle: Arc<dyn Oracle>) -> Outcome {
    let mut reached = 0;
    let result = run_with(oracle, BranchSpec::Odd, 12, WitnessBudget::new(1_000_000).unwrap(), |s| {
        reached = s.t();
    });
    match result {
        Ok(state) => {
            let report = verify_state(&state);
            ensure(report.all_pass(), || format!("final state fails {:?}", report.failed_names()))?;
            Ok(format!("t = {}, {} branches", state.t(), state.branches().len()))
        }
        Err(failure) => Err(format!("stopped after verified t = {reached}: {}", failure.error)),
    }
}

fn rado_run() -> Outcome {
    construction_run(Arc::new(rado_oracle()))
}

fn bipartite_run() -> Outcome {
    construction_run(Arc::new(random_bipartite_oracle(42)))
}

fn three_steps(spec: &str) -> Result<ConstructionState, String> {
    let spec = BranchSpec::parse(spec).map_err(|e| e.to_string())?;
    run_with(Arc::new(random_bipartite_oracle(42)), spec, 3, WitnessBudget::default(), |_| {})
        .map_err(|f| f.to_string())
}

fn gs_prefix_is_rigid() -> Outcome {
    let k2 = make_complete(2);
    let state = three_steps("odd")?;
    let gs = gs_prefix(&state, &k2).map_err(|e| e.to_string())?;
    let (window, _, colours) = gs.window(state.oracle().as_ref());
    let k4 = join(&k2, &k2);
    let map = VertexMap::between(colours, &window, &k4).map_err(|e| e.to_string())?;
    ensure(is_homomorphism(&window, &k4, &map).map_err(|e| e.to_string())?, || "window does not map into K2 v K2".into())?;
    let rigid = prefix_rigidity_check(&state, &gs, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
    ensure(rigid.pass(), || format!("{rigid:?}"))?;
    let other = three_steps("arith:2,3")?;
    let gs_other = gs_prefix(&other, &k2).map_err(|e| e.to_string())?;
    let (a, b) = (gs.k2_window(state.oracle().as_ref()), gs_other.k2_window(other.oracle().as_ref()));
    ensure(!is_isomorphic(&a, &b), || "odd and arith:2,3 give isomorphic K2-fibre trees".into())?;
    Ok(format!(
        "window {} vertices, {} preserving automorphism(s); tree shapes {} vs {} vertices",
        rigid.window_order,
        rigid.preserving_automorphisms,
        a.order(),
        b.order()
    ))
}

/// Root 0 with two branches of length 3 and the pair {7, 8} hanging off
/// their first vertices: reflecting the branches fixes every fibre.
fn equal_branches_mock() -> Result<ConstructionState, String> {
    let g = Graph::from_edges(9, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (7, 1), (8, 4)]).unwrap();
    let colours = vec![0, 1, 0, 1, 1, 0, 1, 0, 0];
    let oracle = FiniteOracle::new(g).with_colouring(colours, make_complete(2));
    let dump = StateDump {
        t: 1,
        root: 0,
        branches: vec![Branch { len: 3, vertices: vec![1, 2, 3] }, Branch { len: 3, vertices: vec![4, 5, 6] }],
        good_pairs: vec![DumpPair { pair: [7, 8], witness: Some(1) }],
        bad_vertices: (0..7).collect(),
        oracle: None,
        s: "odd".into(),
    };
    ConstructionState::from_dump(&dump, Arc::new(oracle), WitnessBudget::default()).map_err(|e| e.to_string())
}

fn negative_controls() -> Outcome {
    let state = three_steps("odd")?;
    ensure(verify_state(&state).all_pass(), || "unperturbed state fails".into())?;
    let oracle = Arc::clone(state.oracle());

    let mut dump = state.to_dump();
    dump.good_pairs[1].witness = None;
    let no_witness = ConstructionState::from_dump(&dump, Arc::clone(&oracle), WitnessBudget::default())
        .map_err(|e| e.to_string())?;
    let r = verify_state(&no_witness);
    ensure(!r.passed("invariant-2"), || "deleted witness not caught".into())?;

    let b = &state.branches()[1].vertices;
    let flipped: Arc<dyn Oracle> = Arc::new(PerturbedOracle::new(Arc::clone(&oracle), [(b[0], b[2])]));
    let chord = ConstructionState::from_dump(&state.to_dump(), flipped, WitnessBudget::default())
        .map_err(|e| e.to_string())?;
    let r = verify_state(&chord);
    ensure(!r.passed("induced-tree"), || "flipped B adjacency not caught".into())?;

    let z = state.good_pairs()[1].witness.unwrap();
    let p = state.good_pairs()[1];
    let unseparated: Arc<dyn Oracle> = Arc::new(PerturbedOracle::new(Arc::clone(&oracle), [(z, p.x)]));
    let blurred = ConstructionState::from_dump(&state.to_dump(), unseparated, WitnessBudget::default())
        .map_err(|e| e.to_string())?;
    ensure(!verify_state(&blurred).passed("separation"), || "unseparated pair not caught".into())?;

    let mock = equal_branches_mock()?;
    ensure(!verify_state(&mock).passed("branch-lengths"), || "equal branch lengths not caught".into())?;
    let gs = gs_prefix(&mock, &make_complete(2)).map_err(|e| e.to_string())?;
    let rigid = prefix_rigidity_check(&mock, &gs, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
    ensure(!rigid.b_fixed_pointwise, || "reflected branches not caught".into())?;
    ensure(!rigid.pairs_not_swapped && !rigid.pass(), || "swapped pair not caught".into())?;
    Ok("deleted witness, B chord, broken separator and equal branches all rejected".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1", Duration::from_secs(60), lemma1_suite),
        ("2", Duration::from_secs(300), non_composition),
        ("3", Duration::from_secs(10), c7_into_c5),
        ("4", Duration::from_secs(120), fixations_are_uniquely_colourable),
        ("5", Duration::from_secs(60), chi_d_fixtures),
        ("6", Duration::from_secs(10), oracle_soundness),
        ("7 (rado-bit)", Duration::from_secs(120), rado_run),
        ("7 (random-bipartite 42)", Duration::from_secs(120), bipartite_run),
        ("8", Duration::from_secs(120), gs_prefix_is_rigid),
        ("9", Duration::from_secs(120), negative_controls),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail}; {elapsed:.2?} of {limit:?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why}; {elapsed:.2?} of {limit:?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion check(s) failed");
        std::process::exit(1);
    }
}
