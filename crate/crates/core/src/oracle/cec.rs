use crate::graph::Graph;

/// Whether the finite graph `g` satisfies the c.e.c. condition for every
/// non-adjacent `u, v` (possibly equal) and every `T` of size at most
/// `t_max` avoiding them. The graph with no vertices is not.
pub fn is_cec_bounded(g: &Graph, t_max: usize) -> bool {
    let n = g.order();
    if n == 0 {
        return false;
    }
    for u in 0..n {
        for v in u..n {
            if u != v && g.has_edge(u, v) {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
            let mut ok = true;
            for_each_subset(&others, t_max, &mut |t| {
                ok = has_path(g, u, v, t);
                ok
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Calls `f` on every subset of `items` of size at most `k` until it
/// returns false.
fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if !f(cur) {
            return false;
        }
        if cur.len() == k {
            return true;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            let go = rec(items, k, i + 1, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(items, k, 0, &mut Vec::new(), f);
}

/// Path of length ≥ 2 from `u` to `v` (a cycle through `u` when equal) whose
/// internal vertices lie outside `t` and its neighbourhood.
fn has_path(g: &Graph, u: usize, v: usize, t: &[usize]) -> bool {
    let n = g.order();
    let mut allowed = vec![true; n];
    allowed[u] = false;
    allowed[v] = false;
    for &x in t {
        allowed[x] = false;
        for &y in g.neighbours(x) {
            allowed[y] = false;
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if !allowed[s] || comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = next;
        while let Some(x) = stack.pop() {
            for &y in g.neighbours(x) {
                if allowed[y] && comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    let near_u: Vec<usize> = g.neighbours(u).iter().filter(|&&w| allowed[w]).map(|&w| comp[w]).collect();
    if u == v {
        // two distinct neighbours of u in one component close a cycle
        let mut seen = near_u;
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    } else {
        g.neighbours(v).iter().any(|&w| allowed[w] && near_u.contains(&comp[w]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, make_complete, make_cycle};

    #[test]
    fn small_cases() {
        assert!(!is_cec_bounded(&Graph::empty(0), 1));
        assert!(!is_cec_bounded(&Graph::empty(3), 0));
        assert!(!is_cec_bounded(&disjoint_union(&make_complete(4), &Graph::empty(1)), 0));
        assert!(is_cec_bounded(&make_complete(4), 0));
        assert!(!is_cec_bounded(&make_complete(4), 1));
        assert!(is_cec_bounded(&make_cycle(5).unwrap(), 0));
        assert!(!is_cec_bounded(&make_cycle(5).unwrap(), 1));
    }
}
