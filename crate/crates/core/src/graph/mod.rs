//! Undirected simple graphs, independent-set solutions and their checks.

mod generate;
mod io;

pub use generate::{gen_barabasi_albert, gen_erdos_renyi, gen_watts_strogatz, GraphFamilySpec};
pub use io::{parse_instance, write_instance, ParseError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {n_vertices} vertices")]
    VertexOutOfRange { vertex: VertexId, n_vertices: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}

/// Immutable undirected simple graph.
///
/// Edges are stored once as `(min, max)` pairs in lexicographic order, and
/// every adjacency list is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge list. Both orientations and repeated pairs
    /// collapse to one edge; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n_vertices: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut canonical = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n_vertices {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n_vertices });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        canonical.dedup();

        let mut adjacency = vec![Vec::new(); n_vertices];
        for &(u, v) in &canonical {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { n_vertices, edges: canonical, adjacency })
    }

    pub fn empty(n_vertices: usize) -> Self {
        Self { n_vertices, edges: Vec::new(), adjacency: vec![Vec::new(); n_vertices] }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, sorted by `(min endpoint, max endpoint)`.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n_vertices && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n_vertices
    }
}

/// Vertex ids sorted by ascending degree, ties by ascending id.
pub fn degree_order(g: &Graph) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order
}

/// A set of vertices; the score of an independent set is its cardinality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Solution {
    vertices: Vec<VertexId>,
}

impl Solution {
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        let mut vertices: Vec<_> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn score(&self) -> usize {
        self.vertices.len()
    }

    /// Sorted member ids.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl From<Vec<VertexId>> for Solution {
    fn from(vertices: Vec<VertexId>) -> Self {
        Self::new(vertices)
    }
}

impl From<Solution> for Vec<VertexId> {
    fn from(s: Solution) -> Self {
        s.vertices
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionCheck {
    pub feasible: bool,
    pub maximal: bool,
}

/// Checks independence and maximality of `s` in `g`.
pub fn check_solution(g: &Graph, s: &Solution) -> Result<SolutionCheck, GraphError> {
    let n = g.n_vertices();
    let mut member = vec![false; n];
    for &v in s.vertices() {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n_vertices: n });
        }
        member[v] = true;
    }
    let feasible = s.vertices().iter().all(|&v| g.neighbors(v).iter().all(|&u| !member[u]));
    let maximal = feasible && g.vertices().filter(|&v| !member[v]).all(|v| g.neighbors(v).iter().any(|&u| member[u]));
    Ok(SolutionCheck { feasible, maximal })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    pub fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn edges_are_deduplicated_and_symmetric() {
        let g = Graph::from_edges(4, [(1, 0), (0, 1), (2, 3), (3, 2), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.degrees(), vec![1, 2, 2, 1]);
        assert!(g.has_edge(2, 1) && g.has_edge(1, 2));
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.n_edges());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n_vertices: 2 }));
    }

    #[test]
    fn degree_order_examples() {
        assert_eq!(degree_order(&path3()), vec![0, 2, 1]);
        assert_eq!(degree_order(&complete(4)), vec![0, 1, 2, 3]);
        let star = Graph::from_edges(4, [(3, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(degree_order(&star), vec![0, 1, 2, 3]);
    }

    #[test]
    fn check_solution_examples() {
        let ok = |feasible, maximal| SolutionCheck { feasible, maximal };
        assert_eq!(check_solution(&triangle(), &Solution::new([0])).unwrap(), ok(true, true));
        assert_eq!(check_solution(&path3(), &Solution::new([0, 2])).unwrap(), ok(true, true));
        assert_eq!(check_solution(&path3(), &Solution::new([0])).unwrap(), ok(true, false));
        assert_eq!(check_solution(&path3(), &Solution::new([0, 1])).unwrap(), ok(false, false));
        assert!(check_solution(&path3(), &Solution::new([3])).is_err());
    }

    #[test]
    fn solution_score_is_cardinality() {
        let s = Solution::new([4, 1, 4, 2]);
        assert_eq!(s.vertices(), &[1, 2, 4]);
        assert_eq!(s.score(), 3);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[1,2,4]");
        assert_eq!(serde_json::from_str::<Solution>(&json).unwrap(), s);
    }
}
