use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::oracle::{cec_witness_path, fresh_neighbor, fresh_neighbor_from, Oracle, OracleSpec, Vertex, WitnessBudget};

use super::pairs::{pair_enumeration, pair_index};
use super::verify::verify_state;
use super::{BranchSpec, ConstructionError};

/// Candidates for the separator's first vertex tried per step.
pub const SEPARATOR_ATTEMPTS: usize = 64;

/// A pendant path at the root, listed from the root's neighbour to the tip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Branch {
    pub len: usize,
    pub vertices: Vec<Vertex>,
}

/// A processed pair that stayed good, with the tree vertex separating it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoodPair {
    pub x: Vertex,
    pub y: Vertex,
    pub index: u64,
    /// Always set by the algorithm; `None` only in hand-edited dumps.
    pub witness: Option<Vertex>,
}

#[derive(Clone)]
pub struct ConstructionState {
    pub(super) oracle: Arc<dyn Oracle>,
    pub(super) spec: BranchSpec,
    pub(super) budget: WitnessBudget,
    pub(super) root: Vertex,
    pub(super) branches: Vec<Branch>,
    pub(super) good: Vec<GoodPair>,
    pub(super) poisoned: BTreeSet<Vertex>,
    pub(super) cursor: u64,
}

impl fmt::Debug for ConstructionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstructionState")
            .field("s", &self.spec.to_string())
            .field("t", &self.t())
            .field("root", &self.root)
            .field("branches", &self.branches)
            .field("good", &self.good)
            .finish_non_exhaustive()
    }
}

/// A failed [`run`]: the error and the last state that passed verification.
#[derive(Debug)]
pub struct RunFailure {
    pub state: Option<Box<ConstructionState>>,
    pub error: ConstructionError,
}

impl fmt::Display for RunFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.state {
            Some(s) => write!(f, "{} (after t = {})", self.error, s.t()),
            None => write!(f, "{}", self.error),
        }
    }
}

impl std::error::Error for RunFailure {}

impl ConstructionState {
    /// Processes pair #1: the root is a fresh neighbour of `x₁` avoiding `y₁`.
    pub fn init(oracle: Arc<dyn Oracle>, spec: BranchSpec, budget: WitnessBudget) -> Result<Self, ConstructionError> {
        let (x, y) = pair_enumeration(1);
        let root = fresh_neighbor(oracle.as_ref(), x, &BTreeSet::from([y]), budget)?;
        Ok(ConstructionState {
            oracle,
            spec,
            budget,
            root,
            branches: Vec::new(),
            good: vec![GoodPair { x, y, index: 1, witness: Some(root) }],
            poisoned: BTreeSet::from([root]),
            cursor: 1,
        })
    }

    pub fn t(&self) -> usize {
        self.good.len()
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn good_pairs(&self) -> &[GoodPair] {
        &self.good
    }

    pub fn poisoned(&self) -> &BTreeSet<Vertex> {
        &self.poisoned
    }

    /// Index of the last processed pair.
    pub fn cursor(&self) -> u64 {
        self.cursor
    }

    pub fn spec(&self) -> &BranchSpec {
        &self.spec
    }

    pub fn oracle(&self) -> &Arc<dyn Oracle> {
        &self.oracle
    }

    pub fn budget(&self) -> WitnessBudget {
        self.budget
    }

    /// Continue with a different scan cap, e.g. after `SearchExhausted`.
    pub fn with_budget(mut self, budget: WitnessBudget) -> Self {
        self.budget = budget;
        self
    }

    /// Root and all branch vertices.
    pub fn tree_vertices(&self) -> BTreeSet<Vertex> {
        std::iter::once(self.root).chain(self.branches.iter().flat_map(|b| b.vertices.iter().copied())).collect()
    }

    /// Vertices of processed-good pairs.
    pub fn a_vertices(&self) -> BTreeSet<Vertex> {
        self.good.iter().flat_map(|p| [p.x, p.y]).collect()
    }

    pub fn is_bad(&self, u: Vertex, v: Vertex) -> bool {
        self.poisoned.contains(&u) || self.poisoned.contains(&v)
    }

    pub fn used_lengths(&self) -> BTreeSet<usize> {
        self.branches.iter().map(|b| b.len).collect()
    }

    fn next_good_pair(&self) -> (u64, Vertex, Vertex) {
        let mut i = self.cursor + 1;
        loop {
            let (x, y) = pair_enumeration(i);
            if !self.is_bad(x, y) {
                return (i, x, y);
            }
            i += 1;
        }
    }

    /// Processes the next good pair: a new branch of the shortest unused
    /// length, then a separating branch through a neighbour of `x`. Leaves
    /// `self` untouched on error.
    pub fn step(&mut self) -> Result<(), ConstructionError> {
        let o = self.oracle.as_ref();
        let b = self.budget;
        let (index, x, y) = self.next_good_pair();
        let used = self.used_lengths();
        let k = self.spec.least(|l| !used.contains(&l))?;

        let mut t1: BTreeSet<Vertex> = self.a_vertices();
        t1.extend(self.tree_vertices());
        t1.extend([x, y]);

        let new_branch = grow(o, self.root, k, &t1, b)?;

        let mut t2 = t1.clone();
        t2.extend(&new_branch);
        t2.remove(&self.root);
        let mut t3 = t2.clone();
        t3.insert(self.root);
        t3.remove(&x);

        // The least fresh neighbour of the root can be a dead end (in the
        // BIT presentation every id ≥ 64 has only small neighbours, so the
        // separator path or its extension can stall), so a few are tried in
        // increasing order.
        let separator = |z1: Vertex| -> Result<(Vec<Vertex>, Vertex, usize), ConstructionError> {
            // path = z1, …, z, x
            let path = cec_witness_path(o, z1, x, &t3, b)?;
            let mut q: Vec<Vertex> = path[..path.len() - 1].to_vec();
            let z = *q.last().expect("path has an internal vertex");
            let chain = q.len();
            let q_len = self.spec.least(|l| l > chain && l != k && !used.contains(&l))?;
            let mut t4 = t3.clone();
            t4.extend(&q);
            t4.insert(x);
            let tail = grow(o, z, q_len - chain, &t4, b)?;
            q.extend(tail);
            Ok((q, z, q_len))
        };
        let mut from = 0;
        let mut attempt = 1;
        let (q, z, q_len) = loop {
            let z1 = fresh_neighbor_from(o, self.root, &t2, b, from)?;
            match separator(z1) {
                Err(e) if e.is_exhausted() && attempt < SEPARATOR_ATTEMPTS && z1 < b.cap() => {
                    attempt += 1;
                    from = z1 + 1;
                }
                done => break done?,
            }
        };

        self.poisoned.extend(new_branch.iter().chain(&q).copied());
        self.branches.push(Branch { len: k, vertices: new_branch });
        self.branches.push(Branch { len: q_len, vertices: q });
        self.good.push(GoodPair { x, y, index, witness: Some(z) });
        self.cursor = index;
        Ok(())
    }

    /// Serializable snapshot. The oracle is recorded only for built-ins.
    pub fn to_dump(&self) -> StateDump {
        StateDump {
            t: self.t(),
            root: self.root,
            branches: self.branches.clone(),
            good_pairs: self.good.iter().map(|p| DumpPair { pair: [p.x, p.y], witness: p.witness }).collect(),
            bad_vertices: self.poisoned.iter().copied().collect(),
            oracle: self.oracle.spec(),
            s: self.spec.to_string(),
        }
    }

    /// Rebuilds a state from a dump, against the given oracle. The dump is
    /// not verified; use [`verify_state`] for that.
    pub fn from_dump(
        dump: &StateDump,
        oracle: Arc<dyn Oracle>,
        budget: WitnessBudget,
    ) -> Result<Self, ConstructionError> {
        if dump.t != dump.good_pairs.len() {
            return Err(ConstructionError::Malformed(format!(
                "t = {} but {} good pairs",
                dump.t,
                dump.good_pairs.len()
            )));
        }
        let mut good = Vec::with_capacity(dump.good_pairs.len());
        for p in &dump.good_pairs {
            let [x, y] = p.pair;
            if x == y {
                return Err(ConstructionError::Malformed(format!("pair [{x}, {y}] is a loop")));
            }
            good.push(GoodPair { x: x.min(y), y: x.max(y), index: pair_index(x, y), witness: p.witness });
        }
        Ok(ConstructionState {
            oracle,
            spec: BranchSpec::parse(&dump.s)?,
            budget,
            root: dump.root,
            branches: dump.branches.clone(),
            cursor: good.iter().map(|p| p.index).max().unwrap_or(0),
            good,
            poisoned: dump.bad_vertices.iter().copied().collect(),
        })
    }

    /// [`ConstructionState::from_dump`] with the oracle the dump names.
    pub fn from_dump_builtin(dump: &StateDump, budget: WitnessBudget) -> Result<Self, ConstructionError> {
        let spec = dump.oracle.as_ref().ok_or_else(|| ConstructionError::Malformed("dump names no oracle".into()))?;
        Self::from_dump(dump, Arc::new(spec.build()?), budget)
    }
}

/// Pendant path of `len` fresh vertices hung from `at`, each joined only to
/// its predecessor among `avoid` and the earlier path vertices.
fn grow<O: Oracle + ?Sized>(
    o: &O,
    at: Vertex,
    len: usize,
    avoid: &BTreeSet<Vertex>,
    b: WitnessBudget,
) -> Result<Vec<Vertex>, ConstructionError> {
    let mut local = avoid.clone();
    let mut tip = at;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        local.remove(&tip);
        let w = fresh_neighbor(o, tip, &local, b)?;
        local.insert(tip);
        out.push(w);
        tip = w;
    }
    Ok(out)
}

/// `init` then `steps - 1` steps, verifying after each.
pub fn run(
    oracle: Arc<dyn Oracle>,
    spec: BranchSpec,
    steps: usize,
    budget: WitnessBudget,
) -> Result<ConstructionState, RunFailure> {
    run_with(oracle, spec, steps, budget, |_| {})
}

/// [`run`], reporting each verified state to `progress`.
pub fn run_with(
    oracle: Arc<dyn Oracle>,
    spec: BranchSpec,
    steps: usize,
    budget: WitnessBudget,
    progress: impl FnMut(&ConstructionState),
) -> Result<ConstructionState, RunFailure> {
    if steps == 0 {
        return Err(RunFailure { state: None, error: ConstructionError::ZeroCount });
    }
    let state =
        ConstructionState::init(oracle, spec, budget).map_err(|error| RunFailure { state: None, error })?;
    resume_with(state, steps, progress)
}

/// Steps an existing (verified) state until `t = steps`.
pub fn resume(state: ConstructionState, steps: usize) -> Result<ConstructionState, RunFailure> {
    resume_with(state, steps, |_| {})
}

pub fn resume_with(
    mut state: ConstructionState,
    steps: usize,
    mut progress: impl FnMut(&ConstructionState),
) -> Result<ConstructionState, RunFailure> {
    let check = |s: &ConstructionState| {
        let report = verify_state(s);
        if report.all_pass() {
            Ok(())
        } else {
            Err(ConstructionError::InvariantViolated { t: s.t(), failed: report.failed_names().join(", ") })
        }
    };
    check(&state).map_err(|error| RunFailure { state: None, error })?;
    progress(&state);
    while state.t() < steps {
        let before = state.clone();
        if let Err(error) = state.step().and_then(|()| check(&state)) {
            return Err(RunFailure { state: Some(Box::new(before)), error });
        }
        progress(&state);
    }
    Ok(state)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpPair {
    pub pair: [Vertex; 2],
    pub witness: Option<Vertex>,
}

/// JSON form of a [`ConstructionState`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDump {
    pub t: usize,
    pub root: Vertex,
    pub branches: Vec<Branch>,
    pub good_pairs: Vec<DumpPair>,
    pub bad_vertices: Vec<Vertex>,
    pub oracle: Option<OracleSpec>,
    pub s: String,
}

impl StateDump {
    pub fn parse(bytes: &[u8]) -> Result<Self, ConstructionError> {
        serde_json::from_slice(bytes).map_err(|e| ConstructionError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dump is serializable")
    }
}
