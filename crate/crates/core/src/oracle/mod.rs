//! Countable graphs on the naturals given by an adjacency predicate.
//!
//! Nothing here materialises the graph. Witness searches scan vertex ids
//! upwards to an explicit budget, so a failed search means "not found below
//! the cap", never "does not exist".

mod cec;
mod witness;

pub use cec::is_cec_bounded;
pub(crate) use witness::fresh_neighbor_from;
pub use witness::{cec_witness_path, fresh_common_neighbor, fresh_neighbor, WitnessBudget, DEFAULT_CAP};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub type Vertex = u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("no witness found among vertex ids up to {cap}")]
    SearchExhausted { cap: u64 },
    #[error("endpoints {u} and {v} are adjacent")]
    AdjacentEndpoints { u: Vertex, v: Vertex },
    #[error("vertex {0} is in the avoid set")]
    EndpointAvoided(Vertex),
    #[error("witness budget must be at least 1")]
    ZeroBudget,
    #[error("colour target must be connected with at least 2 vertices")]
    TrivialTarget,
    #[error("adjacency predicate is not symmetric at ({u}, {v})")]
    Asymmetric { u: Vertex, v: Vertex },
    #[error("adjacency predicate has a loop at {0}")]
    Reflexive(Vertex),
    #[error("colour map sends edge ({u}, {v}) to a non-edge")]
    ColourViolation { u: Vertex, v: Vertex },
    #[error("malformed oracle spec: {0}")]
    Malformed(String),
}

impl OracleError {
    pub fn is_exhausted(&self) -> bool {
        matches!(self, OracleError::SearchExhausted { .. })
    }
}

/// A countable graph with decidable adjacency on `0, 1, 2, …`.
pub trait Oracle: Send + Sync + fmt::Debug {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool;

    /// Canonical homomorphism to [`Oracle::codomain`], when the oracle has one.
    fn colour(&self, _v: Vertex) -> Option<usize> {
        None
    }

    fn codomain(&self) -> Option<&Graph> {
        None
    }

    /// Serializable description, when the oracle is one of the built-ins.
    fn spec(&self) -> Option<OracleSpec> {
        None
    }
}

/// `{"kind":"rado-bit"} | {"kind":"random-bipartite","seed":..} |
/// {"kind":"random-h-colourable","seed":..,"h":<graph>}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OracleSpec {
    RadoBit {},
    RandomBipartite { seed: u64 },
    RandomHColourable { seed: u64, h: Graph },
}

impl OracleSpec {
    pub fn parse(bytes: &[u8]) -> Result<Self, OracleError> {
        serde_json::from_slice(bytes).map_err(|e| OracleError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("oracle spec is serializable")
    }

    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            OracleSpec::RadoBit {} => OracleSpec::RadoBit {},
            OracleSpec::RandomBipartite { .. } => OracleSpec::RandomBipartite { seed },
            OracleSpec::RandomHColourable { h, .. } => OracleSpec::RandomHColourable { seed, h },
        }
    }

    pub fn build(&self) -> Result<GraphOracle, OracleError> {
        match self {
            OracleSpec::RadoBit {} => Ok(rado_oracle()),
            OracleSpec::RandomBipartite { seed } => Ok(random_bipartite_oracle(*seed)),
            OracleSpec::RandomHColourable { seed, h } => random_h_colourable_oracle(h.clone(), *seed),
        }
    }
}

/// One of the built-in presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOracle {
    spec: OracleSpec,
    codomain: Option<Graph>,
}

pub fn rado_oracle() -> GraphOracle {
    GraphOracle { spec: OracleSpec::RadoBit {}, codomain: None }
}

pub fn random_bipartite_oracle(seed: u64) -> GraphOracle {
    GraphOracle { spec: OracleSpec::RandomBipartite { seed }, codomain: Some(crate::graph::make_complete(2)) }
}

pub fn random_h_colourable_oracle(h: Graph, seed: u64) -> Result<GraphOracle, OracleError> {
    if h.order() < 2 || !h.is_connected() {
        return Err(OracleError::TrivialTarget);
    }
    Ok(GraphOracle { spec: OracleSpec::RandomHColourable { seed, h: h.clone() }, codomain: Some(h) })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Keyed hash of an unordered pair; a coin with probability 1/2 per pair.
pub(crate) fn pair_coin(seed: u64, u: Vertex, v: Vertex) -> bool {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    splitmix(splitmix(splitmix(seed) ^ a) ^ b) & 1 == 0
}

impl Oracle for GraphOracle {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        match &self.spec {
            OracleSpec::RadoBit {} => {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                a < 64 && (b >> a) & 1 == 1
            }
            OracleSpec::RandomBipartite { seed } => (u ^ v) & 1 == 1 && pair_coin(*seed, u, v),
            OracleSpec::RandomHColourable { seed, h } => {
                let m = h.order() as u64;
                h.has_edge((u % m) as usize, (v % m) as usize) && pair_coin(*seed, u, v)
            }
        }
    }

    fn colour(&self, v: Vertex) -> Option<usize> {
        match &self.spec {
            OracleSpec::RadoBit {} => None,
            OracleSpec::RandomBipartite { .. } => Some((v & 1) as usize),
            OracleSpec::RandomHColourable { h, .. } => Some((v % h.order() as u64) as usize),
        }
    }

    fn codomain(&self) -> Option<&Graph> {
        self.codomain.as_ref()
    }

    fn spec(&self) -> Option<OracleSpec> {
        Some(self.spec.clone())
    }
}

/// A finite graph viewed as an oracle; ids past its order are isolated.
#[derive(Clone, Debug)]
pub struct FiniteOracle {
    graph: Graph,
    colouring: Option<(Vec<usize>, Graph)>,
}

impl FiniteOracle {
    pub fn new(graph: Graph) -> Self {
        FiniteOracle { graph, colouring: None }
    }

    pub fn with_colouring(mut self, colours: Vec<usize>, h: Graph) -> Self {
        self.colouring = Some((colours, h));
        self
    }
}

impl Oracle for FiniteOracle {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let n = self.graph.order() as u64;
        u < n && v < n && self.graph.has_edge(u as usize, v as usize)
    }

    fn colour(&self, v: Vertex) -> Option<usize> {
        self.colouring.as_ref().and_then(|(c, _)| c.get(v as usize).copied())
    }

    fn codomain(&self) -> Option<&Graph> {
        self.colouring.as_ref().map(|(_, h)| h)
    }
}

/// Wraps another oracle and flips the answer on a fixed set of pairs.
#[derive(Clone, Debug)]
pub struct PerturbedOracle {
    inner: Arc<dyn Oracle>,
    flips: BTreeSet<(Vertex, Vertex)>,
}

impl PerturbedOracle {
    pub fn new(inner: Arc<dyn Oracle>, flips: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let flips = flips.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        PerturbedOracle { inner, flips }
    }
}

impl Oracle for PerturbedOracle {
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.inner.adjacent(u, v) ^ self.flips.contains(&(u.min(v), u.max(v)))
    }

    fn colour(&self, v: Vertex) -> Option<usize> {
        self.inner.colour(v)
    }

    fn codomain(&self) -> Option<&Graph> {
        self.inner.codomain()
    }
}

/// Spot-checks symmetry, irreflexivity and colour-map soundness on `samples`
/// pseudo-random pairs with ids below `window`.
pub fn sample_check<O: Oracle + ?Sized>(o: &O, samples: usize, window: u64, seed: u64) -> Result<(), OracleError> {
    let window = window.max(2);
    let mut state = seed;
    let mut next = || {
        state = splitmix(state);
        state % window
    };
    for _ in 0..samples {
        let (u, v) = (next(), next());
        if o.adjacent(u, u) {
            return Err(OracleError::Reflexive(u));
        }
        let a = o.adjacent(u, v);
        if a != o.adjacent(v, u) {
            return Err(OracleError::Asymmetric { u, v });
        }
        if let (true, Some(h), Some(cu), Some(cv)) = (a, o.codomain(), o.colour(u), o.colour(v)) {
            if !h.has_edge(cu, cv) {
                return Err(OracleError::ColourViolation { u, v });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_path, Graph};

    #[test]
    fn rado_bit_examples() {
        let r = rado_oracle();
        assert!(r.adjacent(0, 1));
        assert!(!r.adjacent(0, 2));
        assert!(!r.adjacent(1, 5));
        assert!(r.adjacent(2, 5));
        assert!(r.adjacent(5, 2));
        assert!(!r.adjacent(3, 3));
        assert!(r.colour(3).is_none());
    }

    #[test]
    fn bipartite_structure() {
        let o = random_bipartite_oracle(42);
        for u in 0..200 {
            for v in (u % 2..200).step_by(2) {
                assert!(!o.adjacent(u, v));
            }
        }
        assert_eq!(o.colour(7), Some(1));
        sample_check(&o, 10_000, 1 << 20, 1).unwrap();
    }

    #[test]
    fn h_colourable_respects_target() {
        let c5 = make_cycle(5).unwrap();
        let o = random_h_colourable_oracle(c5.clone(), 9).unwrap();
        assert!((0..500).all(|k| !o.adjacent(5 * k, 5 * k + 2)));
        sample_check(&o, 10_000, 1 << 20, 2).unwrap();
        assert_eq!(random_h_colourable_oracle(Graph::empty(1), 0), Err(OracleError::TrivialTarget));
        assert_eq!(random_h_colourable_oracle(Graph::empty(2), 0), Err(OracleError::TrivialTarget));
        assert!(random_h_colourable_oracle(make_path(2), 0).is_ok());
    }

    #[test]
    fn spec_json_forms() {
        assert_eq!(OracleSpec::parse(br#"{"kind":"rado-bit"}"#).unwrap(), OracleSpec::RadoBit {});
        assert!(OracleSpec::parse(br#"{"kind":"rado-bit","seed":1}"#).is_err());
        assert_eq!(OracleSpec::RadoBit {}.to_json(), r#"{"kind":"rado-bit"}"#);
        assert_eq!(
            OracleSpec::parse(br#"{"kind":"random-bipartite","seed":42}"#).unwrap(),
            OracleSpec::RandomBipartite { seed: 42 }
        );
        let h = OracleSpec::parse(br#"{"kind":"random-h-colourable","seed":1,"h":{"n":2,"edges":[[0,1]]}}"#).unwrap();
        assert_eq!(h, OracleSpec::RandomHColourable { seed: 1, h: make_complete(2) });
        assert_eq!(OracleSpec::parse(h.to_json().as_bytes()).unwrap(), h);
        assert!(OracleSpec::parse(br#"{"kind":"petersen"}"#).is_err());
    }

    #[test]
    fn perturbation_flips_one_pair() {
        let base: Arc<dyn Oracle> = Arc::new(rado_oracle());
        let p = PerturbedOracle::new(base, [(2, 0)]);
        assert!(p.adjacent(0, 2) && p.adjacent(2, 0));
        assert!(p.adjacent(0, 1));
    }

    #[test]
    fn finite_oracle_window() {
        let o = FiniteOracle::new(make_cycle(4).unwrap());
        assert!(o.adjacent(0, 3) && !o.adjacent(0, 2) && !o.adjacent(3, 4));
    }
}
