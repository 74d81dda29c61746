use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Edge, Hypergraph, Vertex};
use crate::error::{Error, Result};

/// Vertex count of a shortest 3-path, or `Infinite` when none exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn at_least(self, d: u32) -> bool {
        match self {
            Distance::Finite(x) => x >= d,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    /// Last two positions of the linear order, plus every vertex placed so far.
    Window {
        y: Vertex,
        z: Vertex,
        used: Vec<Vertex>,
    },
    Goal,
}

impl Hypergraph {
    /// `dist_H(e, f)`: the fewest vertices over all 3-paths with ends `e` and `f`.
    ///
    /// A 3-path is a sequence of distinct edges whose union admits a linear
    /// order in which each edge occupies three consecutive positions and
    /// consecutive edges intersect. Any such path contains a sub-path whose
    /// positions strictly increase by 1 or 2 per edge, so the search only
    /// walks forward: a step of 1 reuses the last two placed vertices, a step
    /// of 2 reuses the last one, and new vertices must not have been placed.
    /// `dist(e, e) = 3`.
    pub fn path_distance(&self, e: &Edge, f: &Edge) -> Result<Distance> {
        Ok(match self.shortest_path_within(e, f, u32::MAX)? {
            Some(d) => Distance::Finite(d),
            None => Distance::Infinite,
        })
    }

    /// Like [`Hypergraph::path_distance`] but gives up on paths longer than
    /// `max_vertices`; `None` then means "no path with at most that many".
    pub fn shortest_path_within(
        &self,
        e: &Edge,
        f: &Edge,
        max_vertices: u32,
    ) -> Result<Option<u32>> {
        if self.r != 3 {
            return Err(Error::UniformityMismatch {
                expected: 3,
                got: self.r,
            });
        }
        for g in [e, f] {
            if !self.edges.contains(g) {
                return Err(Error::UnknownEdge(g.clone()));
            }
        }
        if e == f {
            return Ok((max_vertices >= 3).then_some(3));
        }

        let mut incidence: Vec<Vec<&Edge>> = vec![Vec::new(); self.n];
        for g in &self.edges {
            for &v in g.vertices() {
                incidence[v as usize].push(g);
            }
        }

        let mut heap: BinaryHeap<Reverse<(u32, Node)>> = BinaryHeap::new();
        let mut seen: HashSet<Node> = HashSet::new();
        let ev = e.vertices();
        for (i, j) in [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)] {
            let node = Node::Window {
                y: ev[i],
                z: ev[j],
                used: ev.to_vec(),
            };
            heap.push(Reverse((3, node)));
        }

        while let Some(Reverse((cost, node))) = heap.pop() {
            let (y, z, used) = match node {
                Node::Goal => return Ok(Some(cost)),
                Node::Window { y, z, ref used } => (y, z, used.clone()),
            };
            if !seen.insert(node) {
                continue;
            }
            let is_new = |v: Vertex| used.binary_search(&v).is_err();
            for g in &incidence[z as usize] {
                let others: Vec<Vertex> =
                    g.vertices().iter().copied().filter(|&v| v != z).collect();
                let (a, b) = (others[0], others[1]);
                // Step of one: g = {y, z, w} with w fresh.
                let w = if a == y {
                    Some(b)
                } else if b == y {
                    Some(a)
                } else {
                    None
                };
                if let Some(w) = w {
                    if is_new(w) && cost < max_vertices {
                        if *g == f {
                            heap.push(Reverse((cost + 1, Node::Goal)));
                        } else {
                            let mut next = used.clone();
                            insert_sorted(&mut next, w);
                            heap.push(Reverse((
                                cost + 1,
                                Node::Window {
                                    y: z,
                                    z: w,
                                    used: next,
                                },
                            )));
                        }
                    }
                }
                // Step of two: g = {z, w1, w2} with both fresh.
                if is_new(a) && is_new(b) && cost + 2 <= max_vertices {
                    if *g == f {
                        heap.push(Reverse((cost + 2, Node::Goal)));
                    } else {
                        let mut next = used.clone();
                        insert_sorted(&mut next, a);
                        insert_sorted(&mut next, b);
                        heap.push(Reverse((
                            cost + 2,
                            Node::Window {
                                y: a,
                                z: b,
                                used: next.clone(),
                            },
                        )));
                        heap.push(Reverse((
                            cost + 2,
                            Node::Window {
                                y: b,
                                z: a,
                                used: next,
                            },
                        )));
                    }
                }
            }
        }
        Ok(None)
    }
}

fn insert_sorted(v: &mut Vec<Vertex>, x: Vertex) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(edges: &[[Vertex; 3]], n: usize) -> Hypergraph {
        Hypergraph::from_edges(3, n, edges).unwrap()
    }

    #[test]
    fn same_edge_is_three() {
        let g = h(&[[0, 1, 2]], 3);
        let e = Edge::of(&[0, 1, 2]);
        assert_eq!(g.path_distance(&e, &e).unwrap(), Distance::Finite(3));
    }

    #[test]
    fn one_shared_vertex_is_five() {
        let g = h(&[[0, 1, 2], [2, 3, 4]], 5);
        let d = g
            .path_distance(&Edge::of(&[0, 1, 2]), &Edge::of(&[2, 3, 4]))
            .unwrap();
        assert_eq!(d, Distance::Finite(5));
    }

    #[test]
    fn two_shared_vertices_is_four() {
        let g = h(&[[0, 1, 2], [1, 2, 3]], 4);
        let d = g
            .path_distance(&Edge::of(&[0, 1, 2]), &Edge::of(&[1, 2, 3]))
            .unwrap();
        assert_eq!(d, Distance::Finite(4));
    }

    #[test]
    fn disconnected_is_infinite() {
        let g = h(&[[0, 1, 2], [3, 4, 5]], 6);
        let d = g
            .path_distance(&Edge::of(&[0, 1, 2]), &Edge::of(&[3, 4, 5]))
            .unwrap();
        assert_eq!(d, Distance::Infinite);
        assert!(g
            .path_distance(&Edge::of(&[0, 1, 3]), &Edge::of(&[3, 4, 5]))
            .is_err());
    }

    #[test]
    fn reused_vertex_blocks_path() {
        // {0,1,2} -> {2,3,4} -> {4,5,0} would revisit 0; the direct route has 5 vertices.
        let g = h(&[[0, 1, 2], [2, 3, 4], [0, 4, 5]], 6);
        let d = g
            .path_distance(&Edge::of(&[0, 1, 2]), &Edge::of(&[0, 4, 5]))
            .unwrap();
        assert_eq!(d, Distance::Finite(5));
    }

    #[test]
    fn loose_chain_length() {
        let g = h(&[[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 8]], 9);
        let d = g
            .path_distance(&Edge::of(&[0, 1, 2]), &Edge::of(&[6, 7, 8]))
            .unwrap();
        assert_eq!(d, Distance::Finite(9));
        assert_eq!(
            g.shortest_path_within(&Edge::of(&[0, 1, 2]), &Edge::of(&[6, 7, 8]), 8)
                .unwrap(),
            None
        );
    }

    #[test]
    fn tight_path_prefers_single_steps() {
        let g = h(&[[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 5]], 6);
        let d = g
            .path_distance(&Edge::of(&[0, 1, 2]), &Edge::of(&[3, 4, 5]))
            .unwrap();
        assert_eq!(d, Distance::Finite(6));
    }
}
