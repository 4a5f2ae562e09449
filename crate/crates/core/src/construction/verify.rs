use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::oracle::Vertex;

use super::pairs::{pair_enumeration, pair_index};
use super::ConstructionState;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub t: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.pass)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect()
    }

    fn push(&mut self, name: &'static str, failure: Option<String>) {
        self.checks.push(Check { name, pass: failure.is_none(), detail: failure });
    }
}

pub const CHECK_NAMES: [&str; 8] = [
    "invariant-1",
    "invariant-2",
    "invariant-3",
    "invariant-4",
    "invariant-5",
    "induced-tree",
    "branch-lengths",
    "separation",
];

/// Re-checks the state against its oracle; every failure is reported.
pub fn verify_state(state: &ConstructionState) -> VerifyReport {
    let o = state.oracle.as_ref();
    let tree = state.tree_vertices();
    let mut report = VerifyReport { t: state.t(), ..Default::default() };

    // (1) the first pairs up to the cursor are all processed
    report.push("invariant-1", {
        let good_at: BTreeMap<u64, (Vertex, Vertex)> = state.good.iter().map(|p| (p.index, (p.x, p.y))).collect();
        if state.t() == 0 {
            Some("no processed pairs".into())
        } else if let Some(p) = state.good.iter().find(|p| p.index != pair_index(p.x, p.y)) {
            Some(format!("pair {{{}, {}}} recorded at index {}", p.x, p.y, p.index))
        } else if state.good.windows(2).any(|w| w[0].index >= w[1].index) {
            Some("processed-good pairs out of enumeration order".into())
        } else if state.cursor < state.t() as u64 || state.good.iter().any(|p| p.index > state.cursor) {
            Some(format!("cursor {} behind the processed pairs", state.cursor))
        } else {
            (1..=state.cursor).find_map(|i| {
                let (x, y) = pair_enumeration(i);
                (!good_at.contains_key(&i) && !tree.contains(&x) && !tree.contains(&y))
                    .then(|| format!("pair #{i} {{{x}, {y}}} skipped while good"))
            })
        }
    });

    // (2) each processed-good pair has a recorded witness in the tree
    report.push(
        "invariant-2",
        state.good.iter().find_map(|p| match p.witness {
            None => Some(format!("pair {{{}, {}}} has no witness", p.x, p.y)),
            Some(z) if !tree.contains(&z) => Some(format!("witness {z} of {{{}, {}}} is not in B", p.x, p.y)),
            Some(z) if o.adjacent(z, p.x) == o.adjacent(z, p.y) => {
                Some(format!("witness {z} does not separate {{{}, {}}}", p.x, p.y))
            }
            Some(_) => None,
        }),
    );

    // (3) B contains branches of the first t − 1 lengths (B₁ is the root alone)
    report.push("invariant-3", {
        let used = state.used_lengths();
        match state.spec.prefix(state.t().saturating_sub(1)) {
            Err(e) => Some(e.to_string()),
            Ok(need) => need
                .iter()
                .find(|l| !used.contains(l))
                .map(|l| format!("no branch of length {l} at t = {}", state.t())),
        }
    });

    // (4) bad pairs are exactly those meeting B
    report.push(
        "invariant-4",
        (state.poisoned != tree).then(|| {
            let extra: Vec<_> = state.poisoned.difference(&tree).collect();
            let missing: Vec<_> = tree.difference(&state.poisoned).collect();
            format!("poisoned but not in B: {extra:?}; in B but not poisoned: {missing:?}")
        }),
    );

    // (5) B is disjoint from the processed-good pairs
    report.push(
        "invariant-5",
        state.good.iter().flat_map(|p| [p.x, p.y]).find(|v| tree.contains(v)).map(|v| format!("{v} is in B and in a good pair")),
    );

    report.push("induced-tree", induced_tree_failure(state));

    report.push("branch-lengths", {
        let mut seen = BTreeSet::new();
        state.branches.iter().find_map(|b| {
            if !state.spec.contains(b.len) {
                Some(format!("length {} is not in {}", b.len, state.spec))
            } else if !seen.insert(b.len) {
                Some(format!("length {} used twice", b.len))
            } else {
                None
            }
        })
    });

    report.push(
        "separation",
        state.good.iter().find_map(|p| {
            let z = p.witness?;
            (o.adjacent(z, p.x) == o.adjacent(z, p.y))
                .then(|| format!("{z} is joined to both or neither of {{{}, {}}}", p.x, p.y))
        }),
    );

    report
}

/// B must induce exactly root-plus-branches: every pair of B vertices is
/// queried.
fn induced_tree_failure(state: &ConstructionState) -> Option<String> {
    let o = state.oracle.as_ref();
    let mut edges = BTreeSet::new();
    let mut verts = vec![state.root];
    for b in &state.branches {
        if b.vertices.len() != b.len {
            return Some(format!("branch of length {} has {} vertices", b.len, b.vertices.len()));
        }
        let mut prev = state.root;
        for &v in &b.vertices {
            edges.insert((prev.min(v), prev.max(v)));
            verts.push(v);
            prev = v;
        }
    }
    let distinct: BTreeSet<_> = verts.iter().collect();
    if distinct.len() != verts.len() {
        return Some("tree vertices repeat".into());
    }
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            let want = edges.contains(&(u.min(v), u.max(v)));
            if o.adjacent(u, v) != want {
                let what = if want { "missing edge" } else { "chord" };
                return Some(format!("{what} {u}–{v}"));
            }
        }
    }
    None
}
