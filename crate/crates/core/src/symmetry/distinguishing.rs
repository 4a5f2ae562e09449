use crate::graph::{make_complete, make_cycle, Graph};
use crate::hom::{compose, enumerate_homomorphisms, require_homomorphism, VertexMap};

use super::{coloured_automorphism_group, search, PermGroup, Permutation, SymmetryError};

fn check_sizes(alpha: &Permutation, f: &VertexMap) -> Result<(), SymmetryError> {
    if alpha.len() != f.domain_order() {
        return Err(SymmetryError::SizeMismatch { perm: alpha.len(), map: f.domain_order() });
    }
    Ok(())
}

/// `alpha` stabilises every fibre of `f` setwise, checked cell by cell.
pub fn is_preserving_by_fibres(alpha: &Permutation, f: &VertexMap) -> Result<bool, SymmetryError> {
    check_sizes(alpha, f)?;
    let fibres = f.fibres();
    let stable = fibres.nonempty().all(|cell| {
        let mut moved: Vec<usize> = cell.iter().map(|&v| alpha.apply(v)).collect();
        moved.sort_unstable();
        moved == cell
    });
    Ok(stable)
}

/// `alpha` is preserving relative to `f`: `f ∘ alpha = f`.
pub fn is_preserving(alpha: &Permutation, f: &VertexMap) -> Result<bool, SymmetryError> {
    check_sizes(alpha, f)?;
    let by_composition = (0..alpha.len()).all(|v| f.apply(alpha.apply(v)) == f.apply(v));
    debug_assert_eq!(Ok(by_composition), is_preserving_by_fibres(alpha, f));
    Ok(by_composition)
}

/// The automorphisms of `g` that are preserving relative to `f`.
pub fn preserving_subgroup(g: &Graph, f: &VertexMap, cap: usize) -> Result<PermGroup, SymmetryError> {
    if f.domain_order() != g.order() {
        return Err(SymmetryError::SizeMismatch { perm: g.order(), map: f.domain_order() });
    }
    coloured_automorphism_group(g, Some(f.image()), cap)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinction {
    Distinguishing,
    /// A nontrivial preserving automorphism, lexicographically first.
    Preserved { witness: Permutation },
}

impl Distinction {
    pub fn is_distinguishing(&self) -> bool {
        matches!(self, Distinction::Distinguishing)
    }

    pub fn witness(&self) -> Option<&Permutation> {
        match self {
            Distinction::Distinguishing => None,
            Distinction::Preserved { witness } => Some(witness),
        }
    }
}

/// Decides whether the homomorphism `f: g → h` is distinguishing.
pub fn is_distinguishing(g: &Graph, h: &Graph, f: &VertexMap) -> Result<Distinction, SymmetryError> {
    require_homomorphism(g, h, f)?;
    Ok(distinction(g, f))
}

fn distinction(g: &Graph, f: &VertexMap) -> Distinction {
    match search::first_nontrivial_automorphism(g, Some(f.image())) {
        None => Distinction::Distinguishing,
        Some(witness) => Distinction::Preserved { witness },
    }
}

/// First distinguishing homomorphism `g → h` in lexicographic order.
pub fn find_distinguishing(g: &Graph, h: &Graph) -> Option<VertexMap> {
    enumerate_homomorphisms(g, h).find(|f| distinction(g, f).is_distinguishing())
}

/// Two distinguishing homomorphisms `g → mid → target` whose composite is
/// not distinguishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCompositionWitness {
    pub graph: Graph,
    pub mid: Graph,
    pub target: Graph,
    pub first: VertexMap,
    pub second: VertexMap,
    pub composite: VertexMap,
    /// Nontrivial automorphism of `graph` preserving the composite.
    pub certificate: Permutation,
    pub graphs_examined: usize,
}

/// Maximum number of labelled graphs examined by [`non_composition_witness`].
pub const DEFAULT_NON_COMPOSITION_BUDGET: usize = 5_000_000;

/// Searches connected graphs on at most `max_order` vertices, in increasing
/// order and by edge bitmask, for maps into C₅ and then K₃.
pub fn non_composition_witness(max_order: usize) -> Option<NonCompositionWitness> {
    let c5 = make_cycle(5).expect("C5");
    non_composition_witness_in(&c5, &make_complete(3), max_order, DEFAULT_NON_COMPOSITION_BUDGET)
}

pub fn non_composition_witness_in(
    mid: &Graph,
    target: &Graph,
    max_order: usize,
    budget: usize,
) -> Option<NonCompositionWitness> {
    let seconds: Vec<VertexMap> = enumerate_homomorphisms(mid, target)
        .filter(|f| distinction(mid, f).is_distinguishing())
        .collect();
    if seconds.is_empty() {
        return None;
    }
    let mut examined = 0;
    for n in 1..=max_order.min(11) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..(1u64 << pairs.len()) {
            if examined == budget {
                return None;
            }
            examined += 1;
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
            let g = Graph::from_edges(n, edges).expect("mask edges are valid");
            if !g.is_connected() {
                continue;
            }
            for first in enumerate_homomorphisms(&g, mid) {
                if !distinction(&g, &first).is_distinguishing() {
                    continue;
                }
                for second in &seconds {
                    let composite = compose(&first, second).expect("maps chain through mid");
                    if let Distinction::Preserved { witness } = distinction(&g, &composite) {
                        return Some(NonCompositionWitness {
                            graph: g,
                            mid: mid.clone(),
                            target: target.clone(),
                            first,
                            second: second.clone(),
                            composite,
                            certificate: witness,
                            graphs_examined: examined,
                        });
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_path;
    use crate::hom::{find_homomorphism, is_homomorphism};
    use crate::symmetry::{automorphism_group, DEFAULT_GROUP_CAP};

    fn c4_bipartition() -> (Graph, VertexMap) {
        (make_cycle(4).unwrap(), VertexMap::new(vec![0, 1, 0, 1], 2).unwrap())
    }

    #[test]
    fn identity_preserves_everything() {
        let f = VertexMap::new(vec![2, 0, 2, 1, 1], 3).unwrap();
        assert!(is_preserving(&Permutation::identity(5), &f).unwrap());
    }

    #[test]
    fn c4_rotations() {
        let (_, f) = c4_bipartition();
        let rot2 = Permutation::new(vec![2, 3, 0, 1]).unwrap();
        let rot1 = Permutation::new(vec![1, 2, 3, 0]).unwrap();
        assert!(is_preserving(&rot2, &f).unwrap());
        assert!(is_preserving_by_fibres(&rot2, &f).unwrap());
        assert!(!is_preserving(&rot1, &f).unwrap());
        assert!(!is_preserving_by_fibres(&rot1, &f).unwrap());
        assert_eq!(
            is_preserving(&Permutation::identity(3), &f),
            Err(SymmetryError::SizeMismatch { perm: 3, map: 4 })
        );
    }

    #[test]
    fn preserving_subgroup_examples() {
        let (c4, f) = c4_bipartition();
        let sub = preserving_subgroup(&c4, &f, DEFAULT_GROUP_CAP).unwrap();
        let expected: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1], vec![2, 1, 0, 3], vec![2, 3, 0, 1]];
        assert_eq!(sub.elements().iter().map(|p| p.image().to_vec()).collect::<Vec<_>>(), expected);
        assert!(sub.satisfies_subgroup_axioms());

        let c5 = make_cycle(5).unwrap();
        assert!(preserving_subgroup(&c5, &VertexMap::identity(5), DEFAULT_GROUP_CAP).unwrap().is_trivial());

        let one_fibre = VertexMap::constant(5, 1, 0).unwrap();
        assert_eq!(preserving_subgroup(&c5, &one_fibre, DEFAULT_GROUP_CAP).unwrap().order(), 10);
    }

    #[test]
    fn subgroup_matches_filtering_full_group() {
        let c6 = make_cycle(6).unwrap();
        let full = automorphism_group(&c6, DEFAULT_GROUP_CAP).unwrap();
        for f in enumerate_homomorphisms(&c6, &make_complete(3)).take(40) {
            let filtered: Vec<_> =
                full.elements().iter().filter(|a| is_preserving(a, &f).unwrap()).cloned().collect();
            assert_eq!(preserving_subgroup(&c6, &f, DEFAULT_GROUP_CAP).unwrap().elements(), filtered.as_slice());
        }
    }

    #[test]
    fn distinguishing_examples() {
        let c5 = make_cycle(5).unwrap();
        for f in enumerate_homomorphisms(&c5, &c5) {
            assert!(is_distinguishing(&c5, &c5, &f).unwrap().is_distinguishing());
        }
        let (c4, f) = c4_bipartition();
        let k2 = make_complete(2);
        let verdict = is_distinguishing(&c4, &k2, &f).unwrap();
        let witness = verdict.witness().unwrap();
        assert!(!witness.is_identity() && is_preserving(witness, &f).unwrap());
        assert!(find_distinguishing(&c4, &k2).is_none());

        let bad = VertexMap::constant(4, 2, 0).unwrap();
        assert!(matches!(is_distinguishing(&c4, &k2, &bad), Err(SymmetryError::Hom(_))));
    }

    #[test]
    fn fig1_style_c7_to_c5() {
        let c7 = make_cycle(7).unwrap();
        let c5 = make_cycle(5).unwrap();
        let f = find_distinguishing(&c7, &c5).unwrap();
        assert_eq!(f.image(), &[0, 1, 0, 1, 2, 3, 4]);
        assert!(is_homomorphism(&c7, &c5, &f).unwrap());
        assert!(is_distinguishing(&c7, &c5, &f).unwrap().is_distinguishing());
    }

    #[test]
    fn complete_graphs_trivially() {
        for n in 1..=5 {
            let k = make_complete(n);
            assert_eq!(find_distinguishing(&k, &k).unwrap(), VertexMap::identity(n));
        }
    }

    #[test]
    fn non_composition_search() {
        let w = non_composition_witness(8).unwrap();
        assert!(w.graph.is_connected());
        assert!(is_distinguishing(&w.graph, &w.mid, &w.first).unwrap().is_distinguishing());
        assert!(is_distinguishing(&w.mid, &w.target, &w.second).unwrap().is_distinguishing());
        let verdict = is_distinguishing(&w.graph, &w.target, &w.composite).unwrap();
        assert_eq!(verdict.witness(), Some(&w.certificate));
        assert!(!w.certificate.is_identity());
        assert!(is_preserving(&w.certificate, &w.composite).unwrap());
    }

    #[test]
    fn injective_maps_are_distinguishing() {
        let p = make_path(3);
        let c5 = make_cycle(5).unwrap();
        let f = find_homomorphism(&p, &c5).unwrap();
        if f.is_injective() {
            assert!(is_distinguishing(&p, &c5, &f).unwrap().is_distinguishing());
        }
    }
}
