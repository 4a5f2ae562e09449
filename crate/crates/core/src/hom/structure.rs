use crate::graph::Graph;

use super::{enumerate_homomorphisms, require_homomorphism, HomError, VertexMap};

/// Every endomorphism of `h` is a bijection.
pub fn is_core(h: &Graph) -> bool {
    enumerate_homomorphisms(h, h).all(|f| f.is_injective())
}

/// Recovers the unique `β` with `f = β ∘ base` (requires `base` onto) and
/// checks that it is an automorphism of `h`.
fn relating_automorphism(h: &Graph, base: &VertexMap, f: &VertexMap) -> Option<Vec<usize>> {
    let mut beta = vec![usize::MAX; h.order()];
    for (&b, &x) in base.image().iter().zip(f.image()) {
        if beta[b] == usize::MAX {
            beta[b] = x;
        } else if beta[b] != x {
            return None;
        }
    }
    let relabel = VertexMap::new(beta.clone(), h.order()).ok()?;
    if !relabel.is_injective() || h.edges().any(|(u, v)| !h.has_edge(beta[u], beta[v])) {
        return None;
    }
    Some(beta)
}

/// `g` is H-colourable, every homomorphism `g → h` is onto, and any two are
/// related by post-composition with an automorphism of `h`.
pub fn is_uniquely_h_colourable(g: &Graph, h: &Graph) -> bool {
    let mut homs = enumerate_homomorphisms(g, h);
    let Some(base) = homs.next() else {
        return false;
    };
    if !base.is_surjective() {
        return false;
    }
    homs.all(|f| f.is_surjective() && relating_automorphism(h, &base, &f).is_some())
}

/// The fixation `G(f)`: `g` on ids `0..|V(g)|`, then `h`, with `x ∈ V(g)`
/// joined to every `y ∈ V(h)` adjacent to `f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixation {
    pub graph: Graph,
    /// `f` on the `g` part, identity on the `h` part.
    pub canonical: VertexMap,
}

pub fn fixation(g: &Graph, f: &VertexMap, h: &Graph) -> Result<Fixation, HomError> {
    require_homomorphism(g, h, f)?;
    let offset = g.order();
    let cross = g
        .vertices()
        .flat_map(|x| h.neighbours(f.apply(x)).iter().map(move |&y| (x, offset + y)));
    let edges = g
        .edges()
        .chain(h.edges().map(|(u, v)| (offset + u, offset + v)))
        .chain(cross);
    let graph = Graph::from_edges(offset + h.order(), edges)?;
    let image = f.image().iter().copied().chain(h.vertices()).collect();
    let canonical = VertexMap::new(image, h.order())?;
    Ok(Fixation { graph, canonical })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, make_complete, make_cycle, make_path};
    use crate::hom::{find_homomorphism, is_homomorphism};

    #[test]
    fn core_examples() {
        assert!(is_core(&make_cycle(5).unwrap()));
        assert!(is_core(&make_complete(3)));
        assert!(!is_core(&make_path(2)));
        assert!(!is_core(&make_cycle(6).unwrap()));
    }

    #[test]
    fn unique_colourability_examples() {
        let k2 = make_complete(2);
        assert!(is_uniquely_h_colourable(&make_path(3), &k2));
        assert!(!is_uniquely_h_colourable(&disjoint_union(&k2, &k2), &k2));
        let c5 = make_cycle(5).unwrap();
        assert!(is_uniquely_h_colourable(&c5, &c5));
        assert!(!is_uniquely_h_colourable(&c5, &k2));
        // onto fails: a single edge into K3 misses a colour
        assert!(!is_uniquely_h_colourable(&k2, &make_complete(3)));
    }

    #[test]
    fn fixation_of_c7_by_c5() {
        let c7 = make_cycle(7).unwrap();
        let c5 = make_cycle(5).unwrap();
        let f = find_homomorphism(&c7, &c5).unwrap();
        let fix = fixation(&c7, &f, &c5).unwrap();
        assert_eq!(fix.graph.order(), 12);
        assert_eq!(fix.graph.edge_count(), 7 + 5 + 14);
        assert!(is_homomorphism(&fix.graph, &c5, &fix.canonical).unwrap());
        assert!(is_uniquely_h_colourable(&fix.graph, &c5));
    }

    #[test]
    fn fixation_degenerate_and_invalid() {
        let c5 = make_cycle(5).unwrap();
        let empty = Graph::empty(0);
        let fix = fixation(&empty, &VertexMap::new(vec![], 5).unwrap(), &c5).unwrap();
        assert_eq!(fix.graph, c5);
        let bad = VertexMap::constant(5, 5, 0).unwrap();
        assert!(matches!(fixation(&c5, &bad, &c5), Err(HomError::NotHomomorphism { .. })));
    }
}
