use std::collections::BTreeSet;

use disthom::construction::{pair_enumeration, pair_index, tree_with_branches, BranchSpec};
use disthom::graph::{emit_graph, induced_subgraph, join, parse_graph, Graph, GraphFormat, VertexSubset};
use disthom::hom::{compose, enumerate_homomorphisms, is_homomorphism, restrict, VertexMap};
use disthom::oracle::{
    fresh_common_neighbor, fresh_neighbor, random_bipartite_oracle, random_h_colourable_oracle, Oracle,
    WitnessBudget,
};
use disthom::symmetry::{
    automorphism_group, chromatic_number, distinguishing_chromatic_number, distinguishing_number,
    is_isomorphic, preserving_subgroup, DEFAULT_GROUP_CAP,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.order(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(g in graph(9)) {
        let back = parse_graph(emit_graph(&g, GraphFormat::Json).as_bytes()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn enumerated_maps_are_homomorphisms(g in graph(5), h in graph(4)) {
        let mut seen = BTreeSet::new();
        for f in enumerate_homomorphisms(&g, &h) {
            prop_assert!(is_homomorphism(&g, &h, &f).unwrap());
            prop_assert!(seen.insert(f.image().to_vec()));
        }
    }

    #[test]
    fn composites_of_homomorphisms(g in graph(5), h in graph(4), k in graph(3)) {
        let (Some(f1), Some(f2)) = (enumerate_homomorphisms(&g, &h).next(), enumerate_homomorphisms(&h, &k).next()) else {
            return Ok(());
        };
        prop_assert!(is_homomorphism(&g, &k, &compose(&f1, &f2).unwrap()).unwrap());
    }

    #[test]
    fn restriction_stays_a_homomorphism(g in graph(6), keep in proptest::collection::vec(any::<bool>(), 6)) {
        let h = join(&Graph::from_edges(2, [(0, 1)]).unwrap(), &Graph::empty(1));
        let Some(f) = enumerate_homomorphisms(&g, &h).next() else { return Ok(()) };
        let members: Vec<usize> = g.vertices().filter(|&v| keep[v]).collect();
        let s = VertexSubset::new(&g, members.clone()).unwrap();
        let part = restrict(&f, &s).unwrap();
        let (sub, ids) = induced_subgraph(&g, &s).unwrap();
        prop_assert_eq!(&ids, &members);
        let image: Vec<usize> = ids.iter().map(|v| part.entries[v]).collect();
        let fs = VertexMap::between(image, &sub, &h).unwrap();
        prop_assert!(is_homomorphism(&sub, &h, &fs).unwrap());
    }

    #[test]
    fn automorphism_groups_are_groups(g in graph(7)) {
        let aut = automorphism_group(&g, DEFAULT_GROUP_CAP).unwrap();
        prop_assert!(aut.satisfies_subgroup_axioms());
        for a in aut.elements() {
            prop_assert!(g.edges().all(|(u, v)| g.has_edge(a.apply(u), a.apply(v))));
        }
    }

    #[test]
    fn group_order_is_an_isomorphism_invariant((g, perm) in graph(7).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), permutation(n))
    })) {
        let h = relabel(&g, &perm);
        prop_assert!(is_isomorphic(&g, &h));
        let (a, b) = (automorphism_group(&g, DEFAULT_GROUP_CAP).unwrap(), automorphism_group(&h, DEFAULT_GROUP_CAP).unwrap());
        prop_assert_eq!(a.order(), b.order());
        prop_assert_eq!(chromatic_number(&g), chromatic_number(&h));
        prop_assert_eq!(distinguishing_chromatic_number(&g), distinguishing_chromatic_number(&h));
    }

    #[test]
    fn preserving_subgroups_are_subgroups(g in graph(6), h in graph(3)) {
        let Some(f) = enumerate_homomorphisms(&g, &h).next() else { return Ok(()) };
        let aut = automorphism_group(&g, DEFAULT_GROUP_CAP).unwrap();
        let sub = preserving_subgroup(&g, &f, DEFAULT_GROUP_CAP).unwrap();
        prop_assert!(sub.satisfies_subgroup_axioms());
        prop_assert_eq!(aut.order() % sub.order(), 0);
        for a in sub.elements() {
            prop_assert!(aut.contains(a));
            prop_assert!(g.vertices().all(|v| f.apply(a.apply(v)) == f.apply(v)));
        }
    }

    #[test]
    fn invariant_chain(g in graph(6)) {
        let (chi, d, chi_d) = (chromatic_number(&g), distinguishing_number(&g), distinguishing_chromatic_number(&g));
        prop_assert!(chi <= chi_d && d <= chi_d && chi_d <= g.order());
    }

    #[test]
    fn pair_order_is_a_bijection(i in 1u64..100_000) {
        let (x, y) = pair_enumeration(i);
        prop_assert!(x < y);
        prop_assert_eq!(pair_index(x, y), i);
    }

    #[test]
    fn oracle_adjacency_is_symmetric(seed in any::<u64>(), u in any::<u64>(), v in any::<u64>()) {
        let o = random_bipartite_oracle(seed);
        prop_assert_eq!(o.adjacent(u, v), o.adjacent(v, u));
        prop_assert!(!o.adjacent(u, u));
        if o.adjacent(u, v) {
            prop_assert_ne!(o.colour(u), o.colour(v));
        }
    }

    #[test]
    fn witnesses_meet_their_contract(seed in 0u64..1000, u in 0u64..50, v in 0u64..50, avoid in proptest::collection::btree_set(0u64..60, 0..4)) {
        let o = random_h_colourable_oracle(disthom::graph::make_complete(3), seed).unwrap();
        let avoid: BTreeSet<u64> = avoid.into_iter().filter(|&a| a != u && a != v).collect();
        let b = WitnessBudget::new(1 << 16).unwrap();
        if let Ok(w) = fresh_neighbor(&o, u, &avoid, b) {
            prop_assert!(o.adjacent(u, w) && !avoid.contains(&w) && w != u);
            prop_assert!(avoid.iter().all(|&a| !o.adjacent(a, w)));
        }
        if u != v && !o.adjacent(u, v) {
            if let Ok(w) = fresh_common_neighbor(&o, u, v, &avoid, b) {
                prop_assert!(o.adjacent(u, w) && o.adjacent(v, w));
                prop_assert!(avoid.iter().all(|&a| a != w && !o.adjacent(a, w)));
            }
        }
    }

    #[test]
    fn distinct_lengths_give_rigid_trees(lengths in proptest::collection::btree_set(1usize..8, 3..5)) {
        let lengths: Vec<usize> = lengths.into_iter().collect();
        let t = tree_with_branches(&lengths);
        prop_assert_eq!(t.edge_count() + 1, t.order());
        prop_assert!(automorphism_group(&t, DEFAULT_GROUP_CAP).unwrap().is_trivial());
    }

    #[test]
    fn branch_specs_round_trip(a in 1usize..20, d in 2usize..9) {
        let s = BranchSpec::Arith { a, d };
        prop_assert_eq!(BranchSpec::parse(&s.to_string()).unwrap(), s.clone());
        prop_assert!(s.iter().take(10).all(|l| s.contains(l)));
    }
}
