//! Simple connected graphs on vertices `1..=n` with a dense all-pairs
//! hop-distance matrix.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An unordered edge, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected: vertex {unreachable} is unreachable from vertex 1")]
    DisconnectedGraph { unreachable: usize },
    #[error("edge {{{0}, {1}}} is not an edge of the graph")]
    NotAnEdge(usize, usize),
}

/// Immutable simple graph. Vertices are `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
    adj: Vec<Vec<usize>>,
    dist: Vec<u32>,
    diam: u32,
}

/// Normalizes an edge so the smaller endpoint comes first.
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are collapsed; the
    /// result must be connected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert(edge(u, v));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
        let dist = bfs_all_pairs(n, &adj);
        if let Some(pos) = dist[..n].iter().position(|&d| d == u32::MAX) {
            return Err(GraphError::DisconnectedGraph {
                unreachable: pos + 1,
            });
        }
        let diam = dist.iter().copied().max().unwrap_or(0);
        Ok(Graph {
            n,
            edges: set,
            adj,
            dist,
            diam,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn diameter(&self) -> u32 {
        self.diam
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&edge(u, v))
    }

    /// Neighbours of `v`, 1-based.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v - 1].iter().map(|&w| w + 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Hop distance between `u` and `v`.
    pub fn distance(&self, u: usize, v: usize) -> Result<u32, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.dist(u, v))
    }

    /// Unchecked hop distance; panics on an out-of-range vertex.
    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[(u - 1) * self.n + (v - 1)]
    }

    /// Row-major `n × n` distance matrix indexed from 0.
    pub fn distance_matrix(&self) -> &[u32] {
        &self.dist
    }

    /// Largest distance from `v` to any vertex.
    pub fn eccentricity(&self, v: usize) -> u32 {
        let row = &self.dist[(v - 1) * self.n..v * self.n];
        row.iter().copied().max().unwrap_or(0)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Connected components (as sorted 1-based vertex lists) of the graph with
    /// `removed` deleted.
    pub fn components_without(&self, removed: &BTreeSet<Edge>) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start + 1];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX && !removed.contains(&edge(u + 1, w + 1)) {
                        comp[w] = id;
                        members.push(w + 1);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Sizes `(V1, V2)` with `V1 <= V2` of the two components left after
    /// deleting `cut`, or `None` when the deletion does not leave exactly two
    /// components.
    pub fn edge_cut_components(&self, cut: &[Edge]) -> Result<Option<(usize, usize)>, GraphError> {
        let mut removed = BTreeSet::new();
        for &(u, v) in cut {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            if !self.has_edge(u, v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
            removed.insert(edge(u, v));
        }
        let comps = self.components_without(&removed);
        if comps.len() != 2 {
            return Ok(None);
        }
        let (a, b) = (comps[0].len(), comps[1].len());
        Ok(Some((a.min(b), a.max(b))))
    }

    /// Whether `e` is a bridge.
    pub fn is_bridge(&self, e: Edge) -> bool {
        matches!(self.edge_cut_components(&[e]), Ok(Some(_)))
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        Graph::new(
            self.n,
            self.edges().map(|(u, v)| (perm[u - 1], perm[v - 1])),
        )
    }

    /// Undirected DOT rendering with vertex ids as node names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in self.vertices() {
            if self.degree(v) == 0 {
                let _ = writeln!(out, "  {v};");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

/// Wire form: `{"n": <int>, "edges": [[u, v], ...]}`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(value: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(value.n, value.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

fn bfs_all_pairs(n: usize, adj: &[Vec<usize>]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for &w in &adj[u] {
                if row[w] == u32::MAX {
                    row[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

/// Path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i, i + 1))).expect("paths are connected")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (1..=n).map(|i| (i, i % n + 1))).expect("cycles are connected")
}
