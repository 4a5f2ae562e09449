use crate::bitset::BitSet;
use crate::graph::Graph;

use super::VertexMap;

/// Backtracking homomorphism stream.
///
/// Domain vertices are assigned in a fixed order; the candidates for a vertex
/// are the codomain vertices adjacent to the images of all of its
/// already-assigned neighbours. With the identity order the stream is
/// lexicographic in the image array.
pub struct Homomorphisms {
    order: Vec<usize>,
    // For each position, the domain vertices assigned earlier that are adjacent to it.
    earlier: Vec<Vec<usize>>,
    target_adj: Vec<BitSet>,
    target_order: usize,
    image: Vec<usize>,
    stack: Vec<(Vec<usize>, usize)>,
    state: StreamState,
}

#[derive(PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    Done,
}

impl Homomorphisms {
    fn with_order(g: &Graph, h: &Graph, order: Vec<usize>) -> Self {
        let mut position = vec![0; g.order()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(i, &v)| g.neighbours(v).iter().copied().filter(|&w| position[w] < i).collect())
            .collect();
        let target_adj = h
            .vertices()
            .map(|x| {
                let mut s = BitSet::new(h.order());
                for &y in h.neighbours(x) {
                    s.insert(y);
                }
                s
            })
            .collect();
        Homomorphisms {
            order,
            earlier,
            target_adj,
            target_order: h.order(),
            image: vec![0; g.order()],
            stack: Vec::new(),
            state: StreamState::Fresh,
        }
    }

    fn candidates(&self, depth: usize) -> Vec<usize> {
        let mut set = BitSet::full(self.target_order);
        for &w in &self.earlier[depth] {
            set.intersect_with(&self.target_adj[self.image[w]]);
        }
        set.iter().collect()
    }

    fn current(&self) -> VertexMap {
        VertexMap { image: self.image.clone(), codomain_order: self.target_order }
    }
}

impl Iterator for Homomorphisms {
    type Item = VertexMap;

    fn next(&mut self) -> Option<VertexMap> {
        let n = self.order.len();
        match self.state {
            StreamState::Done => return None,
            StreamState::Fresh => {
                self.state = StreamState::Running;
                if n == 0 {
                    self.state = StreamState::Done;
                    return Some(self.current());
                }
                let first = self.candidates(0);
                self.stack.push((first, 0));
            }
            StreamState::Running => {}
        }
        while let Some((cands, next)) = self.stack.last_mut() {
            if *next == cands.len() {
                self.stack.pop();
                continue;
            }
            let c = cands[*next];
            *next += 1;
            let depth = self.stack.len() - 1;
            self.image[self.order[depth]] = c;
            if depth + 1 == n {
                return Some(self.current());
            }
            let cands = self.candidates(depth + 1);
            self.stack.push((cands, 0));
        }
        self.state = StreamState::Done;
        None
    }
}

/// All homomorphisms `g → h`, lexicographic in the image array.
pub fn enumerate_homomorphisms(g: &Graph, h: &Graph) -> Homomorphisms {
    Homomorphisms::with_order(g, h, g.vertices().collect())
}

pub fn count_homomorphisms(g: &Graph, h: &Graph) -> usize {
    enumerate_homomorphisms(g, h).count()
}

/// Some homomorphism `g → h`, searching high-degree vertices first.
/// `None` means none exists; the search is complete.
pub fn find_homomorphism(g: &Graph, h: &Graph) -> Option<VertexMap> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    Homomorphisms::with_order(g, h, order).next()
}
