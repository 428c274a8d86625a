//! Class-swapping automorphisms of bipartite graphs.
//!
//! An automorphism `f` with `f(X) = Y` and `f(Y) = X` carries a rare vertex of
//! one class to a rare vertex of the other, so finding one settles the graph
//! formulation of the conjecture for that graph.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, Vertex};
use crate::limits::Limits;
use crate::stable::maximal_stable_sets_with;

/// A permutation of a graph's global vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexBijection {
    forward: Vec<Vertex>,
}

impl VertexBijection {
    pub fn new(forward: Vec<Vertex>) -> Result<Self> {
        let n = forward.len();
        let mut hit = vec![false; n];
        for &w in &forward {
            if w >= n || std::mem::replace(&mut hit[w], true) {
                return Err(Error::arg("vertex map is not a bijection"));
            }
        }
        Ok(VertexBijection { forward })
    }

    pub fn identity(n: usize) -> Self {
        VertexBijection {
            forward: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: Vertex) -> Vertex {
        self.forward[v]
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.forward
    }

    pub fn inverse(&self) -> VertexBijection {
        let mut inv = vec![0; self.forward.len()];
        for (v, &w) in self.forward.iter().enumerate() {
            inv[w] = v;
        }
        VertexBijection { forward: inv }
    }
}

fn check_domain(graph: &BipartiteGraph, f: &VertexBijection) -> Result<()> {
    if f.len() != graph.vertex_count() {
        return Err(Error::arg(format!(
            "map covers {} vertices but the graph has {}",
            f.len(),
            graph.vertex_count()
        )));
    }
    Ok(())
}

/// `uv ∈ E ⟺ f(u)f(v) ∈ E`, checked as `f(N(u)) = N(f(u))` for every `u`.
pub fn is_automorphism(graph: &BipartiteGraph, f: &VertexBijection) -> Result<bool> {
    check_domain(graph, f)?;
    for u in 0..graph.vertex_count() {
        let mut image: Vec<Vertex> = graph.neighbors(u).into_iter().map(|w| f.apply(w)).collect();
        image.sort_unstable();
        if image != graph.neighbors(f.apply(u)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn maps_classes_across(graph: &BipartiteGraph, f: &VertexBijection) -> bool {
    (0..graph.vertex_count()).all(|v| graph.side(f.apply(v)) != graph.side(v))
}

pub fn is_swap_automorphism(graph: &BipartiteGraph, f: &VertexBijection) -> Result<bool> {
    check_domain(graph, f)?;
    Ok(maps_classes_across(graph, f) && is_automorphism(graph, f)?)
}

/// Result of a completed swap-automorphism search. Running out of budget is an
/// error, not one of these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwapSearch {
    Found(VertexBijection),
    /// `|X| ≠ |Y|`.
    ClassSizesDiffer {
        nx: usize,
        ny: usize,
    },
    /// The degree multisets of X and Y differ.
    DegreesDiffer,
    /// Backtracking finished without a witness.
    Exhausted {
        nodes: u64,
    },
}

impl SwapSearch {
    pub fn witness(&self) -> Option<&VertexBijection> {
        match self {
            SwapSearch::Found(f) => Some(f),
            _ => None,
        }
    }
}

pub fn find_swap_automorphism(graph: &BipartiteGraph) -> Result<SwapSearch> {
    find_swap_automorphism_with(graph, &Limits::default())
}

/// Backtracking over class-swapping assignments, pruned by degree and
/// neighbor-degree signatures and by adjacency consistency with the vertices
/// already placed. Vertices are placed in breadth-first order.
pub fn find_swap_automorphism_with(graph: &BipartiteGraph, limits: &Limits) -> Result<SwapSearch> {
    let (nx, ny) = (graph.nx(), graph.ny());
    if nx != ny {
        return Ok(SwapSearch::ClassSizesDiffer { nx, ny });
    }
    let n = graph.vertex_count();
    let signature: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = graph
                .neighbors(v)
                .into_iter()
                .map(|w| graph.degree(w))
                .collect();
            nd.sort_unstable();
            (graph.degree(v), nd)
        })
        .collect();
    let mut xs: Vec<usize> = graph.class(Side::X).map(|v| graph.degree(v)).collect();
    let mut ys: Vec<usize> = graph.class(Side::Y).map(|v| graph.degree(v)).collect();
    xs.sort_unstable();
    ys.sort_unstable();
    if xs != ys {
        return Ok(SwapSearch::DegreesDiffer);
    }
    let adj = graph.adjacency_masks()?;

    let order = placement_order(graph);
    let candidates: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            graph
                .class(graph.side(v).other())
                .filter(|&w| signature[w] == signature[v])
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(SwapSearch::Exhausted { nodes: 0 });
    }

    let mut state = Backtrack {
        adj: &adj,
        order: &order,
        candidates: &candidates,
        image: vec![usize::MAX; n],
        placed: 0,
        used: 0,
        nodes: 0,
        budget: limits.search_budget,
    };
    if state.place(0)? {
        let f = VertexBijection::new(state.image).expect("search yields a permutation");
        debug_assert!(is_swap_automorphism(graph, &f).unwrap());
        Ok(SwapSearch::Found(f))
    } else {
        Ok(SwapSearch::Exhausted { nodes: state.nodes })
    }
}

fn placement_order(graph: &BipartiteGraph) -> Vec<Vertex> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut starts: Vec<Vertex> = (0..n).collect();
    // highest degree first, ties by id
    starts.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in graph.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Backtrack<'a> {
    adj: &'a [u128],
    order: &'a [Vertex],
    candidates: &'a [Vec<Vertex>],
    image: Vec<Vertex>,
    /// Bitmask of vertices whose image is fixed.
    placed: u128,
    /// Bitmask of vertices already used as images.
    used: u128,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn place(&mut self, depth: usize) -> Result<bool> {
        let Some(&v) = self.order.get(depth) else {
            return Ok(true);
        };
        let placed_nbrs = self.adj[v] & self.placed;
        let mut mapped_nbrs = 0u128;
        let mut rest = placed_nbrs;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            mapped_nbrs |= 1u128 << self.image[u];
        }
        for &w in &self.candidates[v] {
            if self.used >> w & 1 == 1 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::ResourceLimit {
                    what: "swap automorphism search nodes",
                    cap: self.budget as usize,
                });
            }
            // w must see exactly the images of v's placed neighbors among used images
            if self.adj[w] & self.used != mapped_nbrs {
                continue;
            }
            self.image[v] = w;
            self.placed |= 1u128 << v;
            self.used |= 1u128 << w;
            if self.place(depth + 1)? {
                return Ok(true);
            }
            self.placed &= !(1u128 << v);
            self.used &= !(1u128 << w);
            self.image[v] = usize::MAX;
        }
        Ok(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RarePair {
    pub x: Vertex,
    pub y: Vertex,
    pub count_x: usize,
    pub count_y: usize,
    pub total_sets: usize,
}

pub fn rare_pair_via_swap(graph: &BipartiteGraph, f: &VertexBijection) -> Result<RarePair> {
    rare_pair_via_swap_with(graph, f, &Limits::default())
}

/// Takes the least rare `a ∈ X` and returns `(a, f(a))`, both confirmed rare by
/// enumeration.
pub fn rare_pair_via_swap_with(
    graph: &BipartiteGraph,
    f: &VertexBijection,
    limits: &Limits,
) -> Result<RarePair> {
    if !is_swap_automorphism(graph, f)? {
        return Err(Error::arg("map is not a class-swapping automorphism"));
    }
    if graph.edge_count() == 0 {
        return Err(Error::arg("the graph formulation needs at least one edge"));
    }
    let mis = maximal_stable_sets_with(graph, limits)?;
    let a = *mis
        .rare_in(Side::X)
        .first()
        .ok_or_else(|| Error::arg("no rare vertex in class X"))?;
    let b = f.apply(a);
    if !mis.is_rare(b) {
        return Err(Error::arg(format!(
            "image {b} of rare vertex {a} is not rare"
        )));
    }
    Ok(RarePair {
        x: a,
        y: b,
        count_x: mis.count(a),
        count_y: mis.count(b),
        total_sets: mis.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> BipartiteGraph {
        BipartiteGraph::with_default_labels(1, 1, &[(0, 0)]).unwrap()
    }

    fn path4() -> BipartiteGraph {
        // a-b-c-d: X = {a, c} = {0, 1}, Y = {b, d} = {2, 3}
        BipartiteGraph::new(
            vec!["a".into(), "c".into()],
            vec!["b".into(), "d".into()],
            &[(0, 0), (1, 0), (1, 1)],
        )
        .unwrap()
    }

    #[test]
    fn bijection_validation() {
        assert!(VertexBijection::new(vec![0, 0]).is_err());
        assert!(VertexBijection::new(vec![1, 2]).is_err());
        let f = VertexBijection::new(vec![2, 0, 1]).unwrap();
        assert_eq!(f.inverse().as_slice(), &[1, 2, 0]);
    }

    #[test]
    fn identity_and_swap() {
        let g = path4();
        assert!(is_automorphism(&g, &VertexBijection::identity(4)).unwrap());
        assert!(!is_swap_automorphism(&g, &VertexBijection::identity(4)).unwrap());

        let e = single_edge();
        let swap = VertexBijection::new(vec![1, 0]).unwrap();
        assert!(is_swap_automorphism(&e, &swap).unwrap());
        assert!(!is_swap_automorphism(&e, &VertexBijection::identity(2)).unwrap());
    }

    #[test]
    fn partial_swap_breaks_edges() {
        // swap a (0) and b (2) only
        let f = VertexBijection::new(vec![2, 1, 0, 3]).unwrap();
        assert!(!is_automorphism(&path4(), &f).unwrap());
        // reversal a<->d, b<->c is a swap automorphism
        let rev = VertexBijection::new(vec![3, 2, 1, 0]).unwrap();
        assert!(is_swap_automorphism(&path4(), &rev).unwrap());
    }

    #[test]
    fn wrong_domain_is_an_error() {
        assert!(is_automorphism(&path4(), &VertexBijection::identity(3)).is_err());
    }

    #[test]
    fn search_outcomes() {
        let found = find_swap_automorphism(&single_edge()).unwrap();
        assert_eq!(found.witness().unwrap().as_slice(), &[1, 0]);

        // star: center x, leaves y0, y1
        let star = BipartiteGraph::with_default_labels(1, 2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(
            find_swap_automorphism(&star).unwrap(),
            SwapSearch::ClassSizesDiffer { nx: 1, ny: 2 }
        );

        // x0 has degree 2, y degrees are 1 and 1
        let g = BipartiteGraph::with_default_labels(2, 2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(
            find_swap_automorphism(&g).unwrap(),
            SwapSearch::DegreesDiffer
        );
    }

    #[test]
    fn exhausted_search() {
        // first 4+4 pattern with equal degree multisets but no swap
        let mut hit = None;
        for edges in ucc_oracle::all_bipartite_patterns(4, 4) {
            let local: Vec<_> = edges.iter().map(|&(x, y)| (x, y - 4)).collect();
            let g = BipartiteGraph::with_default_labels(4, 4, &local).unwrap();
            if let SwapSearch::Exhausted { .. } = find_swap_automorphism(&g).unwrap() {
                hit = Some(g);
                break;
            }
        }
        let g = hit.expect("some 4+4 graph has matching degrees but no swap");
        assert!(!ucc_oracle::swap_automorphism_exists(
            4,
            4,
            &g.global_edges()
        ));
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        let edges: Vec<_> = (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).collect();
        let k44 = BipartiteGraph::with_default_labels(4, 4, &edges).unwrap();
        let limits = Limits {
            search_budget: 3,
            ..Limits::default()
        };
        assert!(find_swap_automorphism_with(&k44, &limits)
            .unwrap_err()
            .is_resource_limit());
    }

    #[test]
    fn rare_pair() {
        let e = single_edge();
        let swap = VertexBijection::new(vec![1, 0]).unwrap();
        let p = rare_pair_via_swap(&e, &swap).unwrap();
        assert_eq!((p.x, p.y), (0, 1));
        assert!(rare_pair_via_swap(&e, &VertexBijection::identity(2)).is_err());
    }
}
