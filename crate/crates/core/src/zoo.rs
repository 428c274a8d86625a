//! Generators for grid-like bipartite graphs and their class-swapping maps.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Vertex};
use crate::limits::Limits;
use crate::stable::maximal_stable_sets_with;
use crate::symmetry::VertexBijection;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GridSpec {
    /// `P_m × P_n`
    Grid { m: usize, n: usize },
    /// `C_m × P_n`
    Cylinder { m: usize, n: usize },
    /// `C_m × C_n`
    Torus { m: usize, n: usize },
    /// `Q_d` on bitstrings of length `d`
    Hypercube { d: usize },
    /// `K_{n,n}` minus a perfect matching
    Crown { n: usize },
    /// `C_n` plus the `n/2` antipodal chords
    Moebius { n: usize },
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GridSpec::Grid { m, n } => write!(f, "grid({m},{n})"),
            GridSpec::Cylinder { m, n } => write!(f, "cylinder({m},{n})"),
            GridSpec::Torus { m, n } => write!(f, "torus({m},{n})"),
            GridSpec::Hypercube { d } => write!(f, "hypercube({d})"),
            GridSpec::Crown { n } => write!(f, "crown({n})"),
            GridSpec::Moebius { n } => write!(f, "moebius({n})"),
        }
    }
}

impl GridSpec {
    /// Rejects degenerate and non-bipartite parameters.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Argument(format!("{self}: {msg}")));
        match *self {
            GridSpec::Grid { m, n } if m == 0 || n == 0 => {
                bad("path lengths must be at least 1".into())
            }
            GridSpec::Cylinder { m, n } => {
                if m < 3 || n == 0 {
                    bad("needs a cycle of length >= 3 and a path of length >= 1".into())
                } else if m % 2 == 1 {
                    bad(format!(
                        "C_m x P_n is bipartite only when m is even (m = {m})"
                    ))
                } else {
                    Ok(())
                }
            }
            GridSpec::Torus { m, n } => {
                if m < 3 || n < 3 {
                    bad("both cycles need length >= 3".into())
                } else if m % 2 == 1 || n % 2 == 1 {
                    bad(format!(
                        "C_m x C_n is bipartite only when m and n are both even (m = {m}, n = {n})"
                    ))
                } else {
                    Ok(())
                }
            }
            GridSpec::Hypercube { d } if d == 0 || d > 16 => {
                bad("dimension must be in 1..=16".into())
            }
            GridSpec::Crown { n: 0 } => bad("needs n >= 1".into()),
            GridSpec::Moebius { n } => {
                if n < 4 || n % 2 == 1 {
                    bad("needs an even number of vertices >= 4".into())
                } else if (n / 2) % 2 == 0 {
                    bad(format!("the Moebius ladder on n vertices is bipartite only when n/2 is odd (n = {n})"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

pub fn grid_label(i: usize, j: usize) -> String {
    format!("({i},{j})")
}

/// Vertices with a parity bit (true = class X) and an edge list over them.
struct Raw {
    labels: Vec<String>,
    even: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

fn product(m: usize, n: usize, cyclic_i: bool, cyclic_j: bool) -> Raw {
    let id = |i: usize, j: usize| i * n + j;
    let mut raw = Raw {
        labels: Vec::new(),
        even: Vec::new(),
        edges: Vec::new(),
    };
    for i in 0..m {
        for j in 0..n {
            raw.labels.push(grid_label(i, j));
            raw.even.push((i + j) % 2 == 0);
            if j + 1 < n {
                raw.edges.push((id(i, j), id(i, j + 1)));
            } else if cyclic_j {
                raw.edges.push((id(i, j), id(i, 0)));
            }
            if i + 1 < m {
                raw.edges.push((id(i, j), id(i + 1, j)));
            } else if cyclic_i {
                raw.edges.push((id(i, j), id(0, j)));
            }
        }
    }
    raw
}

fn raw_graph(spec: &GridSpec) -> Raw {
    match *spec {
        GridSpec::Grid { m, n } => product(m, n, false, false),
        GridSpec::Cylinder { m, n } => product(m, n, true, false),
        GridSpec::Torus { m, n } => product(m, n, true, true),
        GridSpec::Hypercube { d } => {
            let count = 1usize << d;
            let labels = (0..count).map(|v| format!("{v:0d$b}")).collect();
            let even = (0..count)
                .map(|v: usize| v.count_ones().is_multiple_of(2))
                .collect();
            let edges = (0..count)
                .flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))))
                .filter(|&(a, b)| a < b)
                .collect();
            Raw {
                labels,
                even,
                edges,
            }
        }
        GridSpec::Crown { n } => {
            let labels = (0..n)
                .map(|i| format!("u{i}"))
                .chain((0..n).map(|i| format!("v{i}")))
                .collect();
            let even = (0..2 * n).map(|v| v < n).collect();
            let edges = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j)))
                .collect();
            Raw {
                labels,
                even,
                edges,
            }
        }
        GridSpec::Moebius { n } => {
            let labels = (0..n).map(|i| i.to_string()).collect();
            let even = (0..n).map(|i| i % 2 == 0).collect();
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend((0..n / 2).map(|i| (i, i + n / 2)));
            Raw {
                labels,
                even,
                edges,
            }
        }
    }
}

/// Builds the graph. X holds the even-parity vertices, Y the odd ones, each in
/// generation order.
pub fn generate(spec: &GridSpec) -> Result<BipartiteGraph> {
    spec.validate()?;
    let raw = raw_graph(spec);
    let mut local = vec![0usize; raw.labels.len()];
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (v, label) in raw.labels.iter().enumerate() {
        if raw.even[v] {
            local[v] = xs.len();
            xs.push(label.clone());
        } else {
            local[v] = ys.len();
            ys.push(label.clone());
        }
    }
    let mut edges = Vec::with_capacity(raw.edges.len());
    for &(a, b) in &raw.edges {
        match (raw.even[a], raw.even[b]) {
            (true, false) => edges.push((local[a], local[b])),
            (false, true) => edges.push((local[b], local[a])),
            _ => return Err(Error::arg(format!("{spec}: parity coloring is not proper"))),
        }
    }
    BipartiteGraph::new(xs, ys, &edges)
}

fn label_index(graph: &BipartiteGraph) -> HashMap<&str, Vertex> {
    (0..graph.vertex_count())
        .map(|v| (graph.label(v), v))
        .collect()
}

/// The explicit map for cylinders and tori, `(i, j) ↦ ((i + 1) mod m, j)`, and
/// for grids the reflection along an even side. Acts on `generate(spec)`.
pub fn canonical_swap_map(spec: &GridSpec) -> Result<VertexBijection> {
    let graph = generate(spec)?;
    let target: Box<dyn Fn(usize, usize) -> (usize, usize)> = match *spec {
        GridSpec::Cylinder { m, .. } | GridSpec::Torus { m, .. } => {
            Box::new(move |i, j| ((i + 1) % m, j))
        }
        GridSpec::Grid { m, .. } if m % 2 == 0 => Box::new(move |i, j| (m - 1 - i, j)),
        GridSpec::Grid { n, .. } if n % 2 == 0 => Box::new(move |i, j| (i, n - 1 - j)),
        GridSpec::Grid { .. } => {
            return Err(Error::arg(format!(
                "{spec}: reflection swaps classes only along an even side"
            )))
        }
        _ => {
            return Err(Error::arg(format!(
                "{spec}: no canonical swap map; use the automorphism search"
            )))
        }
    };
    let (m, n) = match *spec {
        GridSpec::Grid { m, n } | GridSpec::Cylinder { m, n } | GridSpec::Torus { m, n } => (m, n),
        _ => unreachable!(),
    };
    let index = label_index(&graph);
    let mut forward = vec![0; graph.vertex_count()];
    for i in 0..m {
        for j in 0..n {
            let (ti, tj) = target(i, j);
            forward[index[grid_label(i, j).as_str()]] = index[grid_label(ti, tj).as_str()];
        }
    }
    VertexBijection::new(forward)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTwoReport {
    pub degree_two: Vec<Vertex>,
    /// `(degree-2 vertex, neighbor)` pairs whose neighbor is not rare.
    pub violations: Vec<(Vertex, Vertex)>,
    /// No degree-2 vertex exists.
    pub vacuous: bool,
}

pub fn degree_two_neighbor_rare_check(graph: &BipartiteGraph) -> Result<DegreeTwoReport> {
    degree_two_neighbor_rare_check_with(graph, &Limits::default())
}

/// Checks that both neighbors of every degree-2 vertex are rare.
pub fn degree_two_neighbor_rare_check_with(
    graph: &BipartiteGraph,
    limits: &Limits,
) -> Result<DegreeTwoReport> {
    let degree_two: Vec<Vertex> = (0..graph.vertex_count())
        .filter(|&v| graph.degree(v) == 2)
        .collect();
    if degree_two.is_empty() {
        return Ok(DegreeTwoReport {
            degree_two,
            violations: Vec::new(),
            vacuous: true,
        });
    }
    let mis = maximal_stable_sets_with(graph, limits)?;
    let violations = degree_two
        .iter()
        .flat_map(|&v| graph.neighbors(v).into_iter().map(move |w| (v, w)))
        .filter(|&(_, w)| !mis.is_rare(w))
        .collect();
    Ok(DegreeTwoReport {
        degree_two,
        violations,
        vacuous: false,
    })
}
