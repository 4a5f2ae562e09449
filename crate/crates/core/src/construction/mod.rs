//! The streaming pair-separation construction over an oracle: a rooted tree
//! of pendant paths with pairwise distinct lengths grows one pair at a time
//! until every processed pair is split by some tree vertex.

mod branch;
mod gs;
mod pairs;
mod state;
mod verify;

pub use branch::{build_ts_prefix, tree_with_branches, BranchSpec};
pub use gs::{gs_prefix, prefix_rigidity_check, Label, PartialHom, RigidityReport};
pub use pairs::{pair_enumeration, pair_index};
pub use state::{resume, resume_with, run, run_with, Branch, ConstructionState, DumpPair, GoodPair, RunFailure, StateDump};
pub use verify::{verify_state, Check, VerifyReport, CHECK_NAMES};

use thiserror::Error;

use crate::oracle::{OracleError, Vertex};
use crate::symmetry::SymmetryError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("branch spec {0} has no further lengths")]
    BranchSpecExhausted(String),
    #[error("bad branch spec {0:?}: expected odd, even, arith:<a>,<d> with d >= 2, or set:<increasing lengths>")]
    BadBranchSpec(String),
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("state has no processed pairs")]
    EmptyState,
    #[error("oracle has no colour map")]
    MissingColourMap,
    #[error("colour {colour} of vertex {v} is not a vertex of H")]
    ColourOutOfRange { v: Vertex, colour: usize },
    #[error("edge {u}–{v} maps to a non-edge")]
    ColourViolation { u: Vertex, v: Vertex },
    #[error("verification failed at t = {t}: {failed}")]
    InvariantViolated { t: usize, failed: String },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("malformed state: {0}")]
    Malformed(String),
}

impl ConstructionError {
    pub fn is_exhausted(&self) -> bool {
        matches!(self, ConstructionError::Oracle(OracleError::SearchExhausted { .. }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_complete;
    use crate::oracle::{rado_oracle, random_bipartite_oracle, Oracle, PerturbedOracle, WitnessBudget};
    use crate::symmetry::DEFAULT_GROUP_CAP;
    use std::sync::Arc;

    fn rado() -> Arc<dyn Oracle> {
        Arc::new(rado_oracle())
    }

    #[test]
    fn init_on_rado() {
        let s = ConstructionState::init(rado(), BranchSpec::Odd, WitnessBudget::default()).unwrap();
        assert_eq!(s.root(), 5);
        assert_eq!(s.t(), 1);
        let g = s.good_pairs()[0];
        assert_eq!((g.x, g.y, g.witness), (0, 1, Some(5)));
        assert!(verify_state(&s).all_pass());
        assert_eq!(verify_state(&s).checks.len(), CHECK_NAMES.len());
    }

    #[test]
    fn single_step_on_rado() {
        let mut s = ConstructionState::init(rado(), BranchSpec::Odd, WitnessBudget::default()).unwrap();
        s.step().unwrap();
        let report = verify_state(&s);
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(s.t(), 2);
        assert_eq!(s.branches().len(), 2);
        assert!(s.used_lengths().contains(&1));
        let p = s.good_pairs()[1];
        let z = p.witness.unwrap();
        assert!(s.oracle().adjacent(z, p.x) != s.oracle().adjacent(z, p.y));
    }

    fn bipartite() -> Arc<dyn Oracle> {
        Arc::new(random_bipartite_oracle(42))
    }

    #[test]
    fn failed_steps_leave_state_alone() {
        let mut s = ConstructionState::init(bipartite(), BranchSpec::Odd, WitnessBudget::default()).unwrap();
        s = s.with_budget(WitnessBudget::new(6).unwrap());
        let before = s.to_dump();
        assert!(s.step().unwrap_err().is_exhausted());
        assert_eq!(s.to_dump(), before);
        s = s.with_budget(WitnessBudget::default());
        s.step().unwrap();
        assert_eq!(s.t(), 2);
    }

    #[test]
    fn dump_round_trip() {
        let s = run(Arc::new(random_bipartite_oracle(42)), BranchSpec::Odd, 2, WitnessBudget::default()).unwrap();
        let dump = s.to_dump();
        let back = StateDump::parse(dump.to_json().as_bytes()).unwrap();
        assert_eq!(back, dump);
        let rebuilt = ConstructionState::from_dump_builtin(&back, WitnessBudget::default()).unwrap();
        assert_eq!(rebuilt.to_dump(), dump);
        assert_eq!(rebuilt.cursor(), s.cursor());
        assert!(verify_state(&rebuilt).all_pass());
    }

    #[test]
    fn finite_sets_run_out() {
        let spec = BranchSpec::parse("set:1").unwrap();
        let err = run(bipartite(), spec, 2, WitnessBudget::default()).unwrap_err();
        assert!(matches!(err.error, ConstructionError::BranchSpecExhausted(_)));
        assert_eq!(err.state.unwrap().t(), 1);
    }

    #[test]
    fn two_branches_make_a_path() {
        // root + branches of lengths 1 and q is a path, which reverses
        let s = run(bipartite(), BranchSpec::Odd, 2, WitnessBudget::default()).unwrap();
        let gs = gs_prefix(&s, &make_complete(2)).unwrap();
        let tree = gs.k2_window(s.oracle().as_ref());
        assert_eq!(tree.edge_count() + 1, tree.order());
        assert!(tree.vertices().all(|v| tree.degree(v) <= 2));
    }

    #[test]
    fn gs_on_bipartite() {
        let s = run(bipartite(), BranchSpec::Odd, 3, WitnessBudget::default()).unwrap();
        let k2 = make_complete(2);
        let gs = gs_prefix(&s, &k2).unwrap();
        assert_eq!(gs.label(s.root()), Some(Label::K2(1)));
        for b in s.branches() {
            assert_eq!(gs.label(b.vertices[0]), Some(Label::K2(2)));
        }
        assert!(gs.violation(s.oracle().as_ref()).is_none());
        let back = PartialHom::from_json(gs.to_json().as_bytes(), &k2).unwrap();
        assert_eq!(back, gs);
        let r = prefix_rigidity_check(&s, &gs, DEFAULT_GROUP_CAP).unwrap();
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn gs_needs_colour_map() {
        let s = ConstructionState::init(rado(), BranchSpec::Odd, WitnessBudget::default()).unwrap();
        assert_eq!(gs_prefix(&s, &make_complete(2)), Err(ConstructionError::MissingColourMap));
    }

    #[test]
    fn chord_is_caught() {
        let s = run(bipartite(), BranchSpec::Odd, 2, WitnessBudget::default()).unwrap();
        let tip = *s.branches()[1].vertices.last().unwrap();
        let bent: Arc<dyn Oracle> = Arc::new(PerturbedOracle::new(bipartite(), [(s.root(), tip)]));
        let mocked = ConstructionState::from_dump(&s.to_dump(), bent, WitnessBudget::default()).unwrap();
        let report = verify_state(&mocked);
        assert!(!report.passed("induced-tree"));
    }

    #[test]
    fn label_json() {
        let json = r#"{"assignments":[[3,"H:0"],[5,"K2:1"],[8,"K2:2"]]}"#;
        let gs = PartialHom::from_json(json.as_bytes(), &make_complete(2)).unwrap();
        assert_eq!(gs.to_json(), json);
        assert!(PartialHom::from_json(br#"{"assignments":[[3,"K2:3"]]}"#, &make_complete(2)).is_err());
        assert!(PartialHom::from_json(br#"{"assignments":[[3,"H:2"]]}"#, &make_complete(2)).is_err());
    }
}
