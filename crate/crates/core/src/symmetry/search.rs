//! Individualization-refinement backtracking over vertex bijections.
//!
//! Both sides carry a colouring that is refined in lockstep with a shared
//! colour naming, so a mismatch in cell sizes prunes the branch. The vertex
//! individualized at each node is the smallest one in a non-singleton cell
//! and its candidates are tried in increasing order; this makes the stream of
//! bijections lexicographic in the image array.

use std::ops::ControlFlow;

use crate::graph::Graph;

use super::Permutation;

type Colours = Vec<u32>;

struct Matcher<'a> {
    left: &'a Graph,
    right: &'a Graph,
}

impl Matcher<'_> {
    /// Refines both colourings to the coarsest equitable partitions with a
    /// shared naming. Returns false when the two sides stop agreeing.
    fn refine(&self, lc: &mut Colours, rc: &mut Colours) -> bool {
        let n = lc.len();
        let mut classes = distinct(lc);
        loop {
            let ls = signatures(self.left, lc);
            let rs = signatures(self.right, rc);
            let mut table: Vec<&(u32, Vec<u32>)> = ls.iter().chain(rs.iter()).collect();
            table.sort_unstable();
            table.dedup();
            let name = |sig: &(u32, Vec<u32>)| table.binary_search(&sig).expect("signature is tabled") as u32;
            let mut counts = vec![0i64; table.len()];
            for v in 0..n {
                let l = name(&ls[v]);
                let r = name(&rs[v]);
                counts[l as usize] += 1;
                counts[r as usize] -= 1;
                lc[v] = l;
                rc[v] = r;
            }
            if counts.iter().any(|&c| c != 0) {
                return false;
            }
            if table.len() == classes {
                return true;
            }
            classes = table.len();
        }
    }

    fn descend<F>(&self, lc: Colours, rc: Colours, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(Vec<usize>) -> ControlFlow<()>,
    {
        let n = lc.len();
        let k = distinct(&lc);
        let mut size = vec![0usize; k];
        for &c in &lc {
            size[c as usize] += 1;
        }
        let Some(v) = (0..n).find(|&v| size[lc[v] as usize] > 1) else {
            let mut by_colour = vec![0; n];
            for (w, &c) in rc.iter().enumerate() {
                by_colour[c as usize] = w;
            }
            let map: Vec<usize> = lc.iter().map(|&c| by_colour[c as usize]).collect();
            if self.left.edges().all(|(a, b)| self.right.has_edge(map[a], map[b])) {
                return visit(map);
            }
            return ControlFlow::Continue(());
        };
        let cell = lc[v];
        for w in (0..n).filter(|&w| rc[w] == cell) {
            let mut l2 = lc.clone();
            let mut r2 = rc.clone();
            l2[v] = k as u32;
            r2[w] = k as u32;
            if self.refine(&mut l2, &mut r2) {
                self.descend(l2, r2, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn signatures(g: &Graph, c: &[u32]) -> Vec<(u32, Vec<u32>)> {
    g.vertices()
        .map(|v| {
            let mut ns: Vec<u32> = g.neighbours(v).iter().map(|&w| c[w]).collect();
            ns.sort_unstable();
            (c[v], ns)
        })
        .collect()
}

/// Dense shared naming for the two initial colourings.
fn normalise(left: &[usize], right: &[usize]) -> Option<(Colours, Colours)> {
    let mut table: Vec<usize> = left.iter().chain(right).copied().collect();
    table.sort_unstable();
    table.dedup();
    let name = |c: &usize| table.binary_search(c).unwrap() as u32;
    let lc: Colours = left.iter().map(name).collect();
    let rc: Colours = right.iter().map(name).collect();
    let mut a = lc.clone();
    let mut b = rc.clone();
    a.sort_unstable();
    b.sort_unstable();
    (a == b).then_some((lc, rc))
}

/// Calls `visit` on every colour-preserving isomorphism `left → right`, in
/// lexicographic order of the image array, until it breaks.
pub(crate) fn for_each_isomorphism<F>(
    left: &Graph,
    right: &Graph,
    left_colours: Option<&[usize]>,
    right_colours: Option<&[usize]>,
    mut visit: F,
) where
    F: FnMut(Vec<usize>) -> ControlFlow<()>,
{
    let n = left.order();
    if n != right.order() || left.edge_count() != right.edge_count() {
        return;
    }
    let zeros = vec![0; n];
    let Some((mut lc, mut rc)) =
        normalise(left_colours.unwrap_or(&zeros), right_colours.unwrap_or(&zeros))
    else {
        return;
    };
    let m = Matcher { left, right };
    if m.refine(&mut lc, &mut rc) {
        let _ = m.descend(lc, rc, &mut visit);
    }
}

/// Colour-preserving automorphisms of `g`, at most `cap` of them. `Err(())`
/// signals that there are more than `cap`.
pub(crate) fn automorphisms(g: &Graph, colours: Option<&[usize]>, cap: usize) -> Result<Vec<Permutation>, ()> {
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_isomorphism(g, g, colours, colours, |map| {
        if out.len() == cap {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(Permutation::from_vec_unchecked(map));
        ControlFlow::Continue(())
    });
    if overflow {
        Err(())
    } else {
        Ok(out)
    }
}

/// Lexicographically first colour-preserving automorphism other than the
/// identity.
pub(crate) fn first_nontrivial_automorphism(g: &Graph, colours: Option<&[usize]>) -> Option<Permutation> {
    let mut found = None;
    for_each_isomorphism(g, g, colours, colours, |map| {
        if map.iter().enumerate().any(|(i, &j)| i != j) {
            found = Some(Permutation::from_vec_unchecked(map));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

pub(crate) fn first_isomorphism(left: &Graph, right: &Graph) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(left, right, None, None, |map| {
        found = Some(map);
        ControlFlow::Break(())
    });
    found
}
