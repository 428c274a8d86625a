//! Labeled bipartite graphs and the family/graph correspondence.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::bitset::{ElemSet, MAX_UNIVERSE};
use crate::error::{Error, Result};
use crate::family::SetFamily;

/// Global vertex id. Class X occupies `0..nx`, class Y occupies `nx..nx + ny`.
pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// A bipartite graph with classes X and Y. Edges only run between classes.
///
/// `x_adj[i]` is the set of Y-indices adjacent to X-vertex `i`; `y_adj` is its
/// transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    x_labels: Vec<String>,
    y_labels: Vec<String>,
    x_adj: Vec<FixedBitSet>,
    y_adj: Vec<FixedBitSet>,
}

impl BipartiteGraph {
    /// `edges` are `(x_index, y_index)` pairs. Repeated edges are merged.
    pub fn new(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let nx = x_labels.len();
        let ny = y_labels.len();
        let mut seen = HashMap::with_capacity(nx + ny);
        for label in x_labels.iter().chain(&y_labels) {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(Error::arg(format!("duplicate vertex label {label:?}")));
            }
        }
        let mut x_adj = vec![FixedBitSet::with_capacity(ny); nx];
        let mut y_adj = vec![FixedBitSet::with_capacity(nx); ny];
        for &(x, y) in edges {
            if x >= nx || y >= ny {
                return Err(Error::arg(format!(
                    "edge ({x}, {y}) outside a {nx}+{ny} graph"
                )));
            }
            x_adj[x].insert(y);
            y_adj[y].insert(x);
        }
        Ok(BipartiteGraph {
            x_labels,
            y_labels,
            x_adj,
            y_adj,
        })
    }

    /// X labelled `x0..`, Y labelled `y0..`.
    pub fn with_default_labels(nx: usize, ny: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let xs = (0..nx).map(|i| format!("x{i}")).collect();
        let ys = (0..ny).map(|j| format!("y{j}")).collect();
        Self::new(xs, ys, edges)
    }

    /// Builds a graph from label pairs `(x_label, y_label)`.
    pub fn from_labeled_edges(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        edges: &[(String, String)],
    ) -> Result<Self> {
        let xi: HashMap<&str, usize> = x_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let yi: HashMap<&str, usize> = y_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let x = *xi
                .get(a.as_str())
                .ok_or_else(|| Error::arg(format!("edge endpoint {a:?} is not an X label")))?;
            let y = *yi
                .get(b.as_str())
                .ok_or_else(|| Error::arg(format!("edge endpoint {b:?} is not a Y label")))?;
            idx_edges.push((x, y));
        }
        Self::new(x_labels, y_labels, &idx_edges)
    }

    pub fn nx(&self) -> usize {
        self.x_labels.len()
    }

    pub fn ny(&self) -> usize {
        self.y_labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.nx() + self.ny()
    }

    pub fn side(&self, v: Vertex) -> Side {
        debug_assert!(v < self.vertex_count());
        if v < self.nx() {
            Side::X
        } else {
            Side::Y
        }
    }

    pub fn x_vertex(&self, i: usize) -> Vertex {
        i
    }

    pub fn y_vertex(&self, j: usize) -> Vertex {
        self.nx() + j
    }

    /// Global ids of one class.
    pub fn class(&self, side: Side) -> std::ops::Range<Vertex> {
        match side {
            Side::X => 0..self.nx(),
            Side::Y => self.nx()..self.vertex_count(),
        }
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn y_labels(&self) -> &[String] {
        &self.y_labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        match self.side(v) {
            Side::X => &self.x_labels[v],
            Side::Y => &self.y_labels[v - self.nx()],
        }
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.x_labels.iter().position(|l| l == label).or_else(|| {
            self.y_labels
                .iter()
                .position(|l| l == label)
                .map(|j| self.nx() + j)
        })
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (self.side(u), self.side(v)) {
            (Side::X, Side::Y) => self.x_adj[u].contains(v - self.nx()),
            (Side::Y, Side::X) => self.x_adj[v].contains(u - self.nx()),
            _ => false,
        }
    }

    /// Neighbors of `v` as global ids, ascending.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let nx = self.nx();
        match self.side(v) {
            Side::X => self.x_adj[v].ones().map(|j| nx + j).collect(),
            Side::Y => self.y_adj[v - nx].ones().collect(),
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match self.side(v) {
            Side::X => self.x_adj[v].count_ones(..),
            Side::Y => self.y_adj[v - self.nx()].count_ones(..),
        }
    }

    /// Y-indices adjacent to X-vertex `i`.
    pub fn x_neighborhood(&self, i: usize) -> &FixedBitSet {
        &self.x_adj[i]
    }

    /// X-indices adjacent to Y-vertex `j`: `N(y_j)`.
    pub fn y_neighborhood(&self, j: usize) -> &FixedBitSet {
        &self.y_adj[j]
    }

    /// Edges as `(x_index, y_index)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.x_adj
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
            .collect()
    }

    /// Edges as global vertex pairs.
    pub fn global_edges(&self) -> Vec<(Vertex, Vertex)> {
        let nx = self.nx();
        self.edges().into_iter().map(|(i, j)| (i, nx + j)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.x_adj.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.degree(v) == 0)
    }

    /// Adjacency as `u128` masks over global ids, for graphs of at most 128 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u128>> {
        let v = self.vertex_count();
        if v > 128 {
            return Err(Error::ResourceLimit {
                what: "vertices for bitset kernels",
                cap: 128,
            });
        }
        let mut masks = vec![0u128; v];
        for (a, b) in self.global_edges() {
            masks[a] |= 1u128 << b;
            masks[b] |= 1u128 << a;
        }
        Ok(masks)
    }
}

/// Incidence graph of a family: X = universe `0..u`, Y = one vertex per indexed member.
///
/// X vertices are labelled by their element, Y vertices `S0, S1, ...`.
pub fn incidence_graph(family: &SetFamily) -> BipartiteGraph {
    let xs = (0..family.universe_size()).map(|x| x.to_string()).collect();
    let ys = (0..family.len()).map(|i| format!("S{i}")).collect();
    let edges: Vec<(usize, usize)> = family
        .members()
        .iter()
        .enumerate()
        .flat_map(|(j, m)| m.iter().map(move |x| (x, j)))
        .collect();
    BipartiteGraph::new(xs, ys, &edges).expect("incidence labels are unique")
}

/// `F^X = {N(y) : y ∈ Y}` over universe X (or the mirror image for `Side::Y`),
/// kept as an indexed family.
pub fn incidence_family(graph: &BipartiteGraph, side: Side) -> Result<SetFamily> {
    let (universe, rows) = match side {
        Side::X => (graph.nx(), &graph.y_adj),
        Side::Y => (graph.ny(), &graph.x_adj),
    };
    if universe > MAX_UNIVERSE {
        return Err(Error::arg(format!(
            "class of size {universe} exceeds the supported universe of {MAX_UNIVERSE}"
        )));
    }
    let members = rows.iter().map(|r| r.ones().collect::<ElemSet>()).collect();
    SetFamily::new(universe, members, true)
}
