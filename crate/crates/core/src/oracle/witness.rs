use std::collections::BTreeSet;

use super::{Oracle, OracleError, Vertex};

pub const DEFAULT_CAP: u64 = 1_000_000;

/// Longest internal chain tried by [`cec_witness_path`] before giving up.
const MAX_PATH_LEN: usize = 6;

/// Largest vertex id a witness search may return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessBudget {
    cap: u64,
}

impl WitnessBudget {
    pub fn new(cap: u64) -> Result<Self, OracleError> {
        if cap == 0 {
            return Err(OracleError::ZeroBudget);
        }
        Ok(WitnessBudget { cap })
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget { cap: DEFAULT_CAP }
    }
}

fn scan<O: Oracle + ?Sized>(
    o: &O,
    anchors: &[Vertex],
    avoid: &BTreeSet<Vertex>,
    b: WitnessBudget,
    from: Vertex,
) -> Result<Vertex, OracleError> {
    (from..=b.cap)
        .find(|&w| {
            !anchors.contains(&w)
                && anchors.iter().all(|&a| o.adjacent(a, w))
                && !avoid.contains(&w)
                && avoid.iter().all(|&t| !o.adjacent(t, w))
        })
        .ok_or(OracleError::SearchExhausted { cap: b.cap })
}

/// Least `w ≤ cap` joined to `u`, outside `avoid`, and joined to nothing in it.
pub fn fresh_neighbor<O: Oracle + ?Sized>(
    o: &O,
    u: Vertex,
    avoid: &BTreeSet<Vertex>,
    b: WitnessBudget,
) -> Result<Vertex, OracleError> {
    fresh_neighbor_from(o, u, avoid, b, 0)
}

/// [`fresh_neighbor`] restricted to ids `≥ from`.
pub(crate) fn fresh_neighbor_from<O: Oracle + ?Sized>(
    o: &O,
    u: Vertex,
    avoid: &BTreeSet<Vertex>,
    b: WitnessBudget,
    from: Vertex,
) -> Result<Vertex, OracleError> {
    if avoid.contains(&u) {
        return Err(OracleError::EndpointAvoided(u));
    }
    scan(o, &[u], avoid, b, from)
}

/// Least `w ≤ cap` joined to both `u` and `v`, outside `avoid`, and joined to
/// nothing in it.
pub fn fresh_common_neighbor<O: Oracle + ?Sized>(
    o: &O,
    u: Vertex,
    v: Vertex,
    avoid: &BTreeSet<Vertex>,
    b: WitnessBudget,
) -> Result<Vertex, OracleError> {
    for x in [u, v] {
        if avoid.contains(&x) {
            return Err(OracleError::EndpointAvoided(x));
        }
    }
    if u == v {
        return fresh_neighbor(o, u, avoid, b);
    }
    scan(o, &[u, v], avoid, b, 0)
}

/// A path `u, w₁, …, v` of length at least 2 whose internal vertices are
/// outside `avoid` and joined to nothing in it. With `u == v` the path is
/// closed and has length at least 3.
///
/// Internal vertices are chosen greedily, each joined to no earlier path
/// vertex but its predecessor and, before the last, not to `v` either, so
/// the path is induced apart from the closing edge. Lengths are tried from
/// shortest upwards.
pub fn cec_witness_path<O: Oracle + ?Sized>(
    o: &O,
    u: Vertex,
    v: Vertex,
    avoid: &BTreeSet<Vertex>,
    b: WitnessBudget,
) -> Result<Vec<Vertex>, OracleError> {
    for x in [u, v] {
        if avoid.contains(&x) {
            return Err(OracleError::EndpointAvoided(x));
        }
    }
    if u != v && o.adjacent(u, v) {
        return Err(OracleError::AdjacentEndpoints { u, v });
    }
    let shortest = if u == v { 3 } else { 2 };
    for len in shortest..=MAX_PATH_LEN {
        match chain(o, u, v, len, avoid, b) {
            Ok(path) => return Ok(path),
            Err(OracleError::SearchExhausted { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(OracleError::SearchExhausted { cap: b.cap })
}

fn chain<O: Oracle + ?Sized>(
    o: &O,
    u: Vertex,
    v: Vertex,
    len: usize,
    avoid: &BTreeSet<Vertex>,
    b: WitnessBudget,
) -> Result<Vec<Vertex>, OracleError> {
    let mut path = vec![u];
    for _ in 1..len - 1 {
        let prev = *path.last().expect("path starts at u");
        let mut local: BTreeSet<Vertex> = avoid.iter().chain(&path).copied().collect();
        local.insert(v);
        local.remove(&prev);
        path.push(fresh_neighbor(o, prev, &local, b)?);
    }
    let prev = *path.last().expect("path starts at u");
    let mut local: BTreeSet<Vertex> = avoid.iter().chain(&path).copied().collect();
    local.remove(&prev);
    local.remove(&v);
    path.push(fresh_common_neighbor(o, prev, v, &local, b)?);
    path.push(v);
    Ok(path)
}
