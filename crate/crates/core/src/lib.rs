//! Graph homomorphisms and the symmetry they break.
//!
//! Finite side: exact homomorphism search, automorphism groups, distinguishing
//! homomorphisms, χ / D / χ_D, cores, unique H-colourability and fixation.
//! Infinite side: graphs on the naturals behind an adjacency [`oracle`], and a
//! step-by-step [`construction`] of a rigid separating tree inside them.

mod bitset;
pub mod cli;
pub mod construction;
pub mod graph;
pub mod hom;
pub mod oracle;
pub mod symmetry;
