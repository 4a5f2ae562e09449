use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::oracle::{Oracle, Vertex};
use crate::symmetry::coloured_automorphism_group;

use super::{ConstructionError, ConstructionState};

/// A vertex of `H ∨ K₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    H(usize),
    /// 1 or 2.
    K2(u8),
}

impl Label {
    /// Adjacency in `H ∨ K₂`.
    pub fn adjacent(self, other: Label, h: &Graph) -> bool {
        match (self, other) {
            (Label::H(a), Label::H(b)) => h.has_edge(a, b),
            (Label::K2(a), Label::K2(b)) => a != b,
            _ => true,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::H(i) => write!(f, "H:{i}"),
            Label::K2(i) => write!(f, "K2:{i}"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let bad = || serde::de::Error::custom(format!("bad label {text:?}"));
        match text.split_once(':') {
            Some(("H", i)) => i.parse().map(Label::H).map_err(|_| bad()),
            Some(("K2", "1")) => Ok(Label::K2(1)),
            Some(("K2", "2")) => Ok(Label::K2(2)),
            _ => Err(bad()),
        }
    }
}

/// A finite map from oracle vertices into `H ∨ K₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialHom {
    assignments: BTreeMap<Vertex, Label>,
    h: Graph,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialHomJson {
    assignments: Vec<(Vertex, Label)>,
}

impl PartialHom {
    pub fn label(&self, v: Vertex) -> Option<Label> {
        self.assignments.get(&v).copied()
    }

    pub fn assignments(&self) -> &BTreeMap<Vertex, Label> {
        &self.assignments
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.assignments.keys().copied()
    }

    /// First in-domain oracle edge whose images are not adjacent in `H ∨ K₂`.
    pub fn violation(&self, o: &dyn Oracle) -> Option<(Vertex, Vertex)> {
        let items: Vec<(Vertex, Label)> = self.assignments.iter().map(|(&v, &l)| (v, l)).collect();
        for (i, &(u, lu)) in items.iter().enumerate() {
            for &(v, lv) in &items[i + 1..] {
                if o.adjacent(u, v) && !lu.adjacent(lv, &self.h) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// The graph the oracle induces on the domain, vertices in increasing
    /// id order, with label classes as colours.
    pub fn window(&self, o: &dyn Oracle) -> (Graph, Vec<Vertex>, Vec<usize>) {
        let ids: Vec<Vertex> = self.assignments.keys().copied().collect();
        let m = self.h.order();
        let colours = self
            .assignments
            .values()
            .map(|l| match *l {
                Label::H(i) => i,
                Label::K2(i) => m + i as usize - 1,
            })
            .collect();
        (induced(o, &ids), ids, colours)
    }

    /// The graph induced on the `K₂`-labelled vertices.
    pub fn k2_window(&self, o: &dyn Oracle) -> Graph {
        let ids: Vec<Vertex> =
            self.assignments.iter().filter(|(_, l)| matches!(l, Label::K2(_))).map(|(&v, _)| v).collect();
        induced(o, &ids)
    }

    pub fn to_json(&self) -> String {
        let json = PartialHomJson { assignments: self.assignments.iter().map(|(&v, &l)| (v, l)).collect() };
        serde_json::to_string(&json).expect("partial map is serializable")
    }

    pub fn from_json(bytes: &[u8], h: &Graph) -> Result<Self, ConstructionError> {
        let json: PartialHomJson =
            serde_json::from_slice(bytes).map_err(|e| ConstructionError::Malformed(e.to_string()))?;
        let mut assignments = BTreeMap::new();
        for (v, l) in json.assignments {
            if matches!(l, Label::H(i) if i >= h.order()) {
                return Err(ConstructionError::Malformed(format!("label {l} is outside H")));
            }
            if assignments.insert(v, l).is_some() {
                return Err(ConstructionError::Malformed(format!("vertex {v} assigned twice")));
            }
        }
        Ok(PartialHom { assignments, h: h.clone() })
    }
}

fn induced(o: &dyn Oracle, ids: &[Vertex]) -> Graph {
    let edges = (0..ids.len()).flat_map(|i| (i + 1..ids.len()).map(move |j| (i, j)));
    let edges: Vec<(usize, usize)> = edges.filter(|&(i, j)| o.adjacent(ids[i], ids[j])).collect();
    Graph::from_edges(ids.len(), edges).expect("induced edges are valid")
}

/// Tree vertices by parity of distance from the root (root ↦ 1, its
/// neighbours ↦ 2, …); pair vertices by the oracle's colour map into `h`.
pub fn gs_prefix(state: &ConstructionState, h: &Graph) -> Result<PartialHom, ConstructionError> {
    if state.t() == 0 {
        return Err(ConstructionError::EmptyState);
    }
    let o = state.oracle.as_ref();
    let mut assignments = BTreeMap::new();
    assignments.insert(state.root, Label::K2(1));
    for b in &state.branches {
        for (j, &v) in b.vertices.iter().enumerate() {
            assignments.insert(v, Label::K2(if j % 2 == 0 { 2 } else { 1 }));
        }
    }
    for v in state.a_vertices() {
        let c = o.colour(v).ok_or(ConstructionError::MissingColourMap)?;
        if c >= h.order() {
            return Err(ConstructionError::ColourOutOfRange { v, colour: c });
        }
        assignments.insert(v, Label::H(c));
    }
    let gs = PartialHom { assignments, h: h.clone() };
    if let Some((u, v)) = gs.violation(o) {
        return Err(ConstructionError::ColourViolation { u, v });
    }
    Ok(gs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub window_order: usize,
    pub preserving_automorphisms: usize,
    pub b_fixed_pointwise: bool,
    pub pairs_not_swapped: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub moved_tree_vertices: Vec<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub swapped_pairs: Vec<[Vertex; 2]>,
}

impl RigidityReport {
    pub fn pass(&self) -> bool {
        self.b_fixed_pointwise && self.pairs_not_swapped
    }
}

/// Every automorphism of the finite window that keeps each `gs`-fibre must
/// fix the tree pointwise and map no processed-good `x` to its `y`.
pub fn prefix_rigidity_check(
    state: &ConstructionState,
    gs: &PartialHom,
    cap: usize,
) -> Result<RigidityReport, ConstructionError> {
    let (window, ids, colours) = gs.window(state.oracle.as_ref());
    let group = coloured_automorphism_group(&window, Some(&colours), cap)?;
    let pos: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let tree: Vec<usize> = state.tree_vertices().iter().filter_map(|v| pos.get(v).copied()).collect();
    let mut moved = std::collections::BTreeSet::new();
    let mut swapped = std::collections::BTreeSet::new();
    for alpha in group.elements() {
        moved.extend(tree.iter().filter(|&&i| alpha.apply(i) != i).map(|&i| ids[i]));
        for p in &state.good {
            if let (Some(&x), Some(&y)) = (pos.get(&p.x), pos.get(&p.y)) {
                if alpha.apply(x) == y || alpha.apply(y) == x {
                    swapped.insert([p.x, p.y]);
                }
            }
        }
    }
    Ok(RigidityReport {
        window_order: window.order(),
        preserving_automorphisms: group.order(),
        b_fixed_pointwise: moved.is_empty(),
        pairs_not_swapped: swapped.is_empty(),
        moved_tree_vertices: moved.into_iter().collect(),
        swapped_pairs: swapped.into_iter().collect(),
    })
}
