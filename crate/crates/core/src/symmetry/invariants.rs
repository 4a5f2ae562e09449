use crate::graph::Graph;

use super::search::first_nontrivial_automorphism;

/// χ(g) by branch and bound: vertices in degree-descending order, a new
/// colour is only ever the next unused one.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    (1..=n).find(|&k| colourable(g, &order, k)).expect("n colours always suffice")
}

fn colourable(g: &Graph, order: &[usize], k: usize) -> bool {
    fn rec(g: &Graph, order: &[usize], k: usize, depth: usize, used: usize, colour: &mut [usize]) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for c in 0..k.min(used + 1) {
            if g.neighbours(v).iter().all(|&w| colour[w] != c) {
                colour[v] = c;
                if rec(g, order, k, depth + 1, used.max(c + 1), colour) {
                    return true;
                }
            }
        }
        colour[v] = usize::MAX;
        false
    }
    let mut colour = vec![usize::MAX; g.order()];
    rec(g, order, k, 0, 0, &mut colour)
}

/// Visits colourings of `g` with at most `k` colours, one per orbit of colour
/// renaming (vertex `v` only opens colour `max(earlier) + 1`), until `stop`.
fn any_colouring(g: &Graph, k: usize, proper: bool, stop: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        g: &Graph,
        k: usize,
        proper: bool,
        v: usize,
        used: usize,
        colour: &mut Vec<usize>,
        stop: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if v == g.order() {
            return stop(colour);
        }
        for c in 0..k.min(used + 1) {
            if proper && g.neighbours(v).iter().any(|&w| w < v && colour[w] == c) {
                continue;
            }
            colour[v] = c;
            if rec(g, k, proper, v + 1, used.max(c + 1), colour, stop) {
                return true;
            }
        }
        false
    }
    let mut colour = vec![0; g.order()];
    rec(g, k, proper, 0, 0, &mut colour, stop)
}

fn least_distinguishing(g: &Graph, proper: bool, start: usize) -> usize {
    let n = g.order();
    (start..=n.max(start))
        .find(|&k| any_colouring(g, k, proper, &mut |c| first_nontrivial_automorphism(g, Some(c)).is_none()))
        .expect("all-distinct colouring is distinguishing")
}

/// D(g): fewest colours in a colouring, proper or not, fixed by no
/// nontrivial automorphism.
pub fn distinguishing_number(g: &Graph) -> usize {
    least_distinguishing(g, false, 1)
}

/// χ_D(g): fewest colours in a distinguishing proper colouring.
pub fn distinguishing_chromatic_number(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    least_distinguishing(g, true, chromatic_number(g))
}
