use crate::oracle::Vertex;

/// Number of pairs `{a, b}` with `a < b` and `a + b < s`.
fn before_sum(s: u64) -> u64 {
    s * s / 4
}

/// The `i`-th unordered pair (1-based), pairs `{a, b}` with `a < b` sorted by
/// `(a + b, a)`. Returned as `(a, b)`.
pub fn pair_enumeration(i: u64) -> (Vertex, Vertex) {
    assert!(i >= 1, "pair indices start at 1");
    // largest s with before_sum(s) < i; start from 2√i and walk.
    let mut s = ((4.0 * i as f64).sqrt() as u64).max(1);
    while before_sum(s) >= i {
        s -= 1;
    }
    while before_sum(s + 1) < i {
        s += 1;
    }
    let a = i - before_sum(s) - 1;
    (a, s - a)
}

/// Inverse of [`pair_enumeration`]; the endpoints may come in either order.
pub fn pair_index(u: Vertex, v: Vertex) -> u64 {
    assert_ne!(u, v, "pairs have distinct endpoints");
    let a = u.min(v);
    before_sum(u + v) + a + 1
}
