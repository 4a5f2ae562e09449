use std::fmt;
use std::str::FromStr;

use crate::graph::Graph;

use super::ConstructionError;

/// An infinite-co-infinite set of branch lengths, or a finite prefix of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchSpec {
    Odd,
    Even,
    /// `a, a + d, a + 2d, …` with `d ≥ 2`.
    Arith { a: usize, d: usize },
    /// Explicit increasing lengths; runs that need more fail.
    Set(Vec<usize>),
}

impl BranchSpec {
    /// `odd | even | arith:<a>,<d> | set:<l1>,<l2>,…`
    pub fn parse(text: &str) -> Result<Self, ConstructionError> {
        let bad = || ConstructionError::BadBranchSpec(text.to_string());
        let numbers = |rest: &str| -> Result<Vec<usize>, ConstructionError> {
            rest.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        let spec = match text.trim().split_once(':') {
            None if text.trim() == "odd" => BranchSpec::Odd,
            None if text.trim() == "even" => BranchSpec::Even,
            Some(("arith", rest)) => match numbers(rest)?.as_slice() {
                &[a, d] if a >= 1 && d >= 2 => BranchSpec::Arith { a, d },
                _ => return Err(bad()),
            },
            Some(("set", rest)) => {
                let ls = numbers(rest)?;
                if ls.is_empty() || ls[0] == 0 || ls.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(bad());
                }
                BranchSpec::Set(ls)
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }

    pub fn contains(&self, len: usize) -> bool {
        match self {
            BranchSpec::Odd => len % 2 == 1,
            BranchSpec::Even => len >= 2 && len.is_multiple_of(2),
            BranchSpec::Arith { a, d } => len >= *a && (len - a).is_multiple_of(*d),
            BranchSpec::Set(ls) => ls.binary_search(&len).is_ok(),
        }
    }

    /// The `i`-th length, 0-based.
    pub fn nth(&self, i: usize) -> Option<usize> {
        match self {
            BranchSpec::Odd => Some(2 * i + 1),
            BranchSpec::Even => Some(2 * i + 2),
            BranchSpec::Arith { a, d } => Some(a + i * d),
            BranchSpec::Set(ls) => ls.get(i).copied(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..).map_while(|i| self.nth(i))
    }

    /// First `count` lengths, or `BranchSpecExhausted`.
    pub fn prefix(&self, count: usize) -> Result<Vec<usize>, ConstructionError> {
        let out: Vec<usize> = self.iter().take(count).collect();
        if out.len() < count {
            return Err(ConstructionError::BranchSpecExhausted(self.to_string()));
        }
        Ok(out)
    }

    /// Least length satisfying `pred`; finite sets may run out.
    pub(crate) fn least(&self, mut pred: impl FnMut(usize) -> bool) -> Result<usize, ConstructionError> {
        self.iter().find(|&l| pred(l)).ok_or_else(|| ConstructionError::BranchSpecExhausted(self.to_string()))
    }
}

impl fmt::Display for BranchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchSpec::Odd => f.write_str("odd"),
            BranchSpec::Even => f.write_str("even"),
            BranchSpec::Arith { a, d } => write!(f, "arith:{a},{d}"),
            BranchSpec::Set(ls) => {
                let joined: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                write!(f, "set:{}", joined.join(","))
            }
        }
    }
}

impl FromStr for BranchSpec {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BranchSpec::parse(s)
    }
}

/// Root 0 plus pendant paths of the given lengths, numbered branch by branch
/// from the root outwards.
pub fn tree_with_branches(lengths: &[usize]) -> Graph {
    let n = 1 + lengths.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in lengths {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(n, edges).expect("tree edges are valid")
}

/// The finite tree on the first `count` lengths of `s`.
pub fn build_ts_prefix(s: &BranchSpec, count: usize) -> Result<Graph, ConstructionError> {
    if count == 0 {
        return Err(ConstructionError::ZeroCount);
    }
    Ok(tree_with_branches(&s.prefix(count)?))
}
