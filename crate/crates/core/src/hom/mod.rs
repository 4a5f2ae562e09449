//! Vertex maps between finite graphs and homomorphism machinery.

mod search;
mod structure;

pub use search::{enumerate_homomorphisms, find_homomorphism, count_homomorphisms, Homomorphisms};
pub use structure::{fixation, is_core, is_uniquely_h_colourable, Fixation};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSubset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomError {
    #[error("map has {got} entries but the domain has {expected} vertices")]
    DomainSize { got: usize, expected: usize },
    #[error("image {image} of vertex {vertex} is outside a codomain of order {order}")]
    ImageOutOfRange { vertex: usize, image: usize, order: usize },
    #[error("map codomain has order {got}, expected {expected}")]
    CodomainSize { got: usize, expected: usize },
    #[error("cannot compose: first map lands in a graph of order {left}, second starts from order {right}")]
    CompositionMismatch { left: usize, right: usize },
    #[error("edge ({u}, {v}) maps to the non-edge ({fu}, {fv})")]
    NotHomomorphism { u: usize, v: usize, fu: usize, fv: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed map input: {0}")]
    Malformed(String),
}

/// Total map `V(G) → V(H)`; the domain order is `image.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap {
    image: Vec<usize>,
    codomain_order: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    map: Vec<usize>,
}

impl VertexMap {
    pub fn new(image: Vec<usize>, codomain_order: usize) -> Result<Self, HomError> {
        if let Some((vertex, &image)) = image.iter().enumerate().find(|(_, &i)| i >= codomain_order) {
            return Err(HomError::ImageOutOfRange { vertex, image, order: codomain_order });
        }
        Ok(VertexMap { image, codomain_order })
    }

    /// Validates the map against both graphs.
    pub fn between(image: Vec<usize>, g: &Graph, h: &Graph) -> Result<Self, HomError> {
        if image.len() != g.order() {
            return Err(HomError::DomainSize { got: image.len(), expected: g.order() });
        }
        VertexMap::new(image, h.order())
    }

    pub fn identity(n: usize) -> Self {
        VertexMap { image: (0..n).collect(), codomain_order: n }
    }

    pub fn constant(domain: usize, codomain_order: usize, value: usize) -> Result<Self, HomError> {
        VertexMap::new(vec![value; domain], codomain_order)
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn domain_order(&self) -> usize {
        self.image.len()
    }

    pub fn codomain_order(&self) -> usize {
        self.codomain_order
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain_order];
        self.image.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain_order];
        for &i in &self.image {
            seen[i] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn fibres(&self) -> FibrePartition {
        FibrePartition::of(self)
    }

    pub(crate) fn check_against(&self, g: &Graph, h: &Graph) -> Result<(), HomError> {
        if self.domain_order() != g.order() {
            return Err(HomError::DomainSize { got: self.domain_order(), expected: g.order() });
        }
        if self.codomain_order != h.order() {
            return Err(HomError::CodomainSize { got: self.codomain_order, expected: h.order() });
        }
        Ok(())
    }

    /// `{"map": [img(0), img(1), ...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MapJson { map: self.image.clone() }).expect("map JSON is serializable")
    }

    pub fn from_json(bytes: &[u8], g: &Graph, h: &Graph) -> Result<Self, HomError> {
        let raw: MapJson =
            serde_json::from_slice(bytes).map_err(|e| HomError::Malformed(e.to_string()))?;
        VertexMap::between(raw.map, g, h)
    }
}

/// The cells `f⁻¹(h)` for every codomain vertex `h`, possibly empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrePartition {
    cells: Vec<Vec<usize>>,
}

impl FibrePartition {
    pub fn of(f: &VertexMap) -> Self {
        let mut cells = vec![Vec::new(); f.codomain_order];
        for (v, &i) in f.image.iter().enumerate() {
            cells[i].push(v);
        }
        FibrePartition { cells }
    }

    pub fn cell(&self, h: usize) -> &[usize] {
        &self.cells[h]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn nonempty(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.iter().filter(|c| !c.is_empty()).map(Vec::as_slice)
    }
}

/// First domain edge whose image is not an edge of `h`, or `None` if `f` is a
/// homomorphism.
pub fn first_violation(g: &Graph, h: &Graph, f: &VertexMap) -> Result<Option<(usize, usize)>, HomError> {
    f.check_against(g, h)?;
    Ok(g.edges().find(|&(u, v)| !h.has_edge(f.image[u], f.image[v])))
}

pub fn is_homomorphism(g: &Graph, h: &Graph, f: &VertexMap) -> Result<bool, HomError> {
    Ok(first_violation(g, h, f)?.is_none())
}

/// Like [`is_homomorphism`] but reports the offending edge as an error.
pub fn require_homomorphism(g: &Graph, h: &Graph, f: &VertexMap) -> Result<(), HomError> {
    match first_violation(g, h, f)? {
        None => Ok(()),
        Some((u, v)) => Err(HomError::NotHomomorphism { u, v, fu: f.image[u], fv: f.image[v] }),
    }
}

/// `v ↦ second(first(v))`.
pub fn compose(first: &VertexMap, second: &VertexMap) -> Result<VertexMap, HomError> {
    if first.codomain_order != second.domain_order() {
        return Err(HomError::CompositionMismatch {
            left: first.codomain_order,
            right: second.domain_order(),
        });
    }
    Ok(VertexMap {
        image: first.image.iter().map(|&i| second.image[i]).collect(),
        codomain_order: second.codomain_order,
    })
}

/// Restriction `f↾S` as explicit `(vertex, image)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialMap {
    pub entries: BTreeMap<usize, usize>,
}

pub fn restrict(f: &VertexMap, s: &VertexSubset) -> Result<PartialMap, HomError> {
    if let Some(&vertex) = s.members().last() {
        if vertex >= f.domain_order() {
            return Err(GraphError::VertexOutOfRange { vertex, n: f.domain_order() }.into());
        }
    }
    Ok(PartialMap { entries: s.members().iter().map(|&v| (v, f.image[v])).collect() })
}
