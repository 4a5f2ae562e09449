//! Automorphism groups, fibre-preserving automorphisms and distinguishing
//! homomorphisms, plus exact solvers for χ, D and χ_D on small graphs.

mod distinguishing;
mod invariants;
pub mod lemma1;
mod perm;
mod search;

pub use distinguishing::{
    find_distinguishing, is_distinguishing, is_preserving, is_preserving_by_fibres, non_composition_witness,
    non_composition_witness_in, preserving_subgroup, Distinction, NonCompositionWitness,
    DEFAULT_NON_COMPOSITION_BUDGET,
};
pub use invariants::{chromatic_number, distinguishing_chromatic_number, distinguishing_number};
pub use perm::{PermGroup, Permutation};

use thiserror::Error;

use crate::graph::Graph;
use crate::hom::HomError;

/// Largest group the explicit-element representation will hold by default.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("automorphism group has more than {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("permutation of {perm} points cannot act on a map with domain of order {map}")]
    SizeMismatch { perm: usize, map: usize },
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// All automorphisms of `g`, refusing groups larger than `cap`.
pub fn automorphism_group(g: &Graph, cap: usize) -> Result<PermGroup, SymmetryError> {
    coloured_automorphism_group(g, None, cap)
}

/// Automorphisms that also preserve a vertex colouring.
pub fn coloured_automorphism_group(
    g: &Graph,
    colours: Option<&[usize]>,
    cap: usize,
) -> Result<PermGroup, SymmetryError> {
    let elements = search::automorphisms(g, colours, cap).map_err(|()| SymmetryError::GroupTooLarge { cap })?;
    Ok(PermGroup::from_elements(g.order(), elements))
}

/// Lexicographically first automorphism other than the identity that keeps
/// every vertex colour, if any.
pub fn first_nontrivial_automorphism(g: &Graph, colours: Option<&[usize]>) -> Option<Permutation> {
    search::first_nontrivial_automorphism(g, colours)
}

/// Some isomorphism `left → right` as an image array.
pub fn find_isomorphism(left: &Graph, right: &Graph) -> Option<Vec<usize>> {
    search::first_isomorphism(left, right)
}

pub fn is_isomorphic(left: &Graph, right: &Graph) -> bool {
    find_isomorphism(left, right).is_some()
}
