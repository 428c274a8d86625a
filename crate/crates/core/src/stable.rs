//! Maximal stable sets of bipartite graphs, rare vertices, and the
//! rare-versus-abundant cross check.

use serde::Serialize;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::family::{element_frequency, union_closure_with_cap};
use crate::graph::{incidence_family, BipartiteGraph, Side, Vertex};
use crate::limits::Limits;

/// Every maximal stable set of a graph, in canonical order, with per-vertex
/// membership counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSetCollection {
    nx: usize,
    vertex_count: usize,
    sets: Vec<ElemSet>,
    counts: Vec<usize>,
}

impl StableSetCollection {
    /// Sets of global vertex ids, sorted lexicographically by their element lists.
    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Number of maximal stable sets containing `v`.
    pub fn count(&self, v: Vertex) -> usize {
        self.counts[v]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// In at most half of the sets: `2 * count <= total`.
    pub fn is_rare(&self, v: Vertex) -> bool {
        2 * self.counts[v] <= self.sets.len()
    }

    pub fn rare_in(&self, side: Side) -> Vec<Vertex> {
        let range = match side {
            Side::X => 0..self.nx,
            Side::Y => self.nx..self.vertex_count,
        };
        range.filter(|&v| self.is_rare(v)).collect()
    }
}

pub fn maximal_stable_sets(graph: &BipartiteGraph) -> Result<StableSetCollection> {
    maximal_stable_sets_with(graph, &Limits::default())
}

/// Enumerates maximal stable sets by branching on an undominated vertex:
/// some vertex of its closed neighborhood must join the set. This is
/// Bron–Kerbosch with pivoting run on the complement graph.
pub fn maximal_stable_sets_with(
    graph: &BipartiteGraph,
    limits: &Limits,
) -> Result<StableSetCollection> {
    let v = graph.vertex_count();
    let cap = limits.vertex_cap.min(128);
    if v > cap {
        return Err(Error::ResourceLimit {
            what: "vertices for maximal stable set enumeration",
            cap,
        });
    }
    let adj = graph.adjacency_masks()?;
    let closed: Vec<u128> = adj
        .iter()
        .enumerate()
        .map(|(i, &m)| m | 1u128 << i)
        .collect();
    let all = if v == 128 {
        u128::MAX
    } else {
        (1u128 << v) - 1
    };

    let mut search = Search {
        closed: &closed,
        out: Vec::new(),
        cap: limits.set_count_cap,
    };
    search.extend(0, all, 0)?;

    let mut sets = search.out;
    sets.sort_by(|a, b| a.lex_cmp(*b));
    let mut counts = vec![0usize; v];
    for s in &sets {
        for u in s.iter() {
            counts[u] += 1;
        }
    }
    Ok(StableSetCollection {
        nx: graph.nx(),
        vertex_count: v,
        sets,
        counts,
    })
}

struct Search<'a> {
    closed: &'a [u128],
    out: Vec<ElemSet>,
    cap: usize,
}

impl Search<'_> {
    /// `current` is stable, `candidates` are the vertices still addable,
    /// `excluded` are addable vertices whose branches are already done.
    fn extend(&mut self, current: u128, mut candidates: u128, mut excluded: u128) -> Result<()> {
        if candidates == 0 {
            if excluded == 0 {
                if self.out.len() == self.cap {
                    return Err(Error::ResourceLimit {
                        what: "maximal stable set count",
                        cap: self.cap,
                    });
                }
                self.out.push(ElemSet(current));
            }
            return Ok(());
        }
        // pivot with the fewest candidates in its closed neighborhood
        let mut pivot_branch = candidates;
        let mut best = u32::MAX;
        for u in ElemSet(candidates | excluded).iter() {
            let branch = candidates & self.closed[u];
            let n = branch.count_ones();
            if n < best {
                best = n;
                pivot_branch = branch;
                if n <= 1 {
                    break;
                }
            }
        }
        for w in ElemSet(pivot_branch).iter() {
            let bit = 1u128 << w;
            let keep = !self.closed[w];
            self.extend(current | bit, candidates & keep, excluded & keep)?;
            candidates &= !bit;
            excluded |= bit;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RareVertices {
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
    pub total_sets: usize,
    pub counts: Vec<usize>,
}

pub fn rare_vertices(graph: &BipartiteGraph) -> Result<RareVertices> {
    rare_vertices_with(graph, &Limits::default())
}

pub fn rare_vertices_with(graph: &BipartiteGraph, limits: &Limits) -> Result<RareVertices> {
    if graph.vertex_count() == 0 {
        return Err(Error::arg("graph has no vertices"));
    }
    let mis = maximal_stable_sets_with(graph, limits)?;
    Ok(RareVertices {
        x: mis.rare_in(Side::X),
        y: mis.rare_in(Side::Y),
        total_sets: mis.len(),
        counts: mis.counts().to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphUccReport {
    pub holds: bool,
    /// Least rare vertex of each class, when one exists.
    pub witness_x: Option<Vertex>,
    pub witness_y: Option<Vertex>,
    pub total_sets: usize,
}

pub fn graph_satisfies_ucc(graph: &BipartiteGraph) -> Result<GraphUccReport> {
    graph_satisfies_ucc_with(graph, &Limits::default())
}

/// Both classes must contain a rare vertex. Requires at least one edge.
pub fn graph_satisfies_ucc_with(graph: &BipartiteGraph, limits: &Limits) -> Result<GraphUccReport> {
    if graph.edge_count() == 0 {
        return Err(Error::arg("the graph formulation needs at least one edge"));
    }
    let rare = rare_vertices_with(graph, limits)?;
    let witness_x = rare.x.first().copied();
    let witness_y = rare.y.first().copied();
    Ok(GraphUccReport {
        holds: witness_x.is_some() && witness_y.is_some(),
        witness_x,
        witness_y,
        total_sets: rare.total_sets,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop1Report {
    pub vertex: Vertex,
    pub rare: bool,
    pub abundant_in_closure: bool,
    pub agrees: bool,
    pub stable_set_count: usize,
    pub closure_size: usize,
}

pub fn check_prop1(graph: &BipartiteGraph, x: Vertex) -> Result<Prop1Report> {
    Ok(check_prop1_all_with(graph, &Limits::default())?.swap_remove(checked_x(graph, x)?))
}

fn checked_x(graph: &BipartiteGraph, x: Vertex) -> Result<usize> {
    if x >= graph.nx() {
        return Err(Error::arg(format!("vertex {x} is not in class X")));
    }
    Ok(x)
}

pub fn check_prop1_with(graph: &BipartiteGraph, x: Vertex, limits: &Limits) -> Result<Prop1Report> {
    let x = checked_x(graph, x)?;
    Ok(check_prop1_all_with(graph, limits)?.swap_remove(x))
}

/// Rarity of every X vertex (by stable-set enumeration) against its abundance
/// in `<F^X>` (by union closure). Rejects graphs with an isolated vertex.
pub fn check_prop1_all_with(graph: &BipartiteGraph, limits: &Limits) -> Result<Vec<Prop1Report>> {
    if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.degree(v) == 0) {
        return Err(Error::arg(format!(
            "vertex {:?} is isolated; the rare/abundant correspondence is only checked for minimum degree >= 1",
            graph.label(v)
        )));
    }
    let mis = maximal_stable_sets_with(graph, limits)?;
    let closure = union_closure_with_cap(&incidence_family(graph, Side::X)?, limits.closure_cap)?;
    (0..graph.nx())
        .map(|x| {
            let rare = mis.is_rare(x);
            let abundant_in_closure = 2 * element_frequency(&closure, x)? >= closure.len();
            Ok(Prop1Report {
                vertex: x,
                rare,
                abundant_in_closure,
                agrees: rare == abundant_in_closure,
                stable_set_count: mis.len(),
                closure_size: closure.len(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn single_edge() -> BipartiteGraph {
        BipartiteGraph::with_default_labels(1, 1, &[(0, 0)]).unwrap()
    }

    /// a-b-c-d with X = {a, c} (ids 0, 1) and Y = {b, d} (ids 2, 3)
    fn path4() -> BipartiteGraph {
        BipartiteGraph::new(
            vec!["a".into(), "c".into()],
            vec!["b".into(), "d".into()],
            &[(0, 0), (1, 0), (1, 1)],
        )
        .unwrap()
    }

    fn c6() -> BipartiteGraph {
        // X = {0, 2, 4}, Y = {1, 3, 5}; x_i ~ y_i and x_{i+1} ~ y_i
        BipartiteGraph::new(
            vec!["0".into(), "2".into(), "4".into()],
            vec!["1".into(), "3".into(), "5".into()],
            &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)],
        )
        .unwrap()
    }

    fn label_sets(g: &BipartiteGraph, mis: &StableSetCollection) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = mis
            .sets()
            .iter()
            .map(|s| {
                let mut v: Vec<String> = s.iter().map(|u| g.label(u).to_string()).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn single_edge_sets() {
        let mis = maximal_stable_sets(&single_edge()).unwrap();
        assert_eq!(
            mis.sets(),
            &[ElemSet::from_elems([0]), ElemSet::from_elems([1])]
        );
    }

    #[test]
    fn path_sets_and_rarity() {
        let g = path4();
        let mis = maximal_stable_sets(&g).unwrap();
        assert_eq!(
            label_sets(&g, &mis),
            vec![vec!["a", "c"], vec!["a", "d"], vec!["b", "d"]]
        );
        let rare = rare_vertices(&g).unwrap();
        // counts a:2, c:1, b:1, d:2 out of 3
        assert_eq!(rare.counts, vec![2, 1, 1, 2]);
        assert_eq!(rare.x, vec![1]);
        assert_eq!(rare.y, vec![2]);
        let r = graph_satisfies_ucc(&g).unwrap();
        assert!(r.holds);
        assert_eq!((r.witness_x, r.witness_y), (Some(1), Some(2)));
    }

    #[test]
    fn six_cycle_sets() {
        let g = c6();
        let mis = maximal_stable_sets(&g).unwrap();
        assert_eq!(
            label_sets(&g, &mis),
            vec![
                vec!["0", "2", "4"],
                vec!["0", "3"],
                vec!["1", "3", "5"],
                vec!["1", "4"],
                vec!["2", "5"]
            ]
        );
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let mis = maximal_stable_sets(&c6()).unwrap();
        for w in mis.sets().windows(2) {
            assert_eq!(w[0].lex_cmp(w[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn single_vertex_is_not_rare() {
        let g = BipartiteGraph::with_default_labels(1, 0, &[]).unwrap();
        let r = rare_vertices(&g).unwrap();
        assert_eq!(r.total_sets, 1);
        assert!(r.x.is_empty());
        assert!(matches!(graph_satisfies_ucc(&g), Err(Error::Argument(_))));
        let empty = BipartiteGraph::with_default_labels(0, 0, &[]).unwrap();
        assert!(rare_vertices(&empty).is_err());
    }

    #[test]
    fn caps_are_errors() {
        let limits = Limits {
            vertex_cap: 3,
            ..Limits::default()
        };
        let e = maximal_stable_sets_with(&path4(), &limits).unwrap_err();
        assert!(e.is_resource_limit());
        let limits = Limits {
            set_count_cap: 4,
            ..Limits::default()
        };
        assert!(maximal_stable_sets_with(&c6(), &limits)
            .unwrap_err()
            .is_resource_limit());
    }

    #[test]
    fn prop1_small_cases() {
        let r = check_prop1(&single_edge(), 0).unwrap();
        assert!(r.rare && r.abundant_in_closure && r.agrees);

        let c4 =
            BipartiteGraph::with_default_labels(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        for x in 0..2 {
            assert!(check_prop1(&c4, x).unwrap().agrees);
        }
        assert!(check_prop1(&c4, 2).is_err());
    }

    #[test]
    fn prop1_rejects_isolated() {
        let g = BipartiteGraph::with_default_labels(2, 1, &[(0, 0)]).unwrap();
        assert!(matches!(check_prop1(&g, 0), Err(Error::Argument(_))));
    }

    fn arb_graph(max: usize) -> impl Strategy<Value = BipartiteGraph> {
        (1..=max, 1..=max).prop_flat_map(|(nx, ny)| {
            proptest::collection::vec(any::<bool>(), nx * ny).prop_map(move |bits| {
                let edges: Vec<_> = (0..nx * ny)
                    .filter(|&b| bits[b])
                    .map(|b| (b / ny, b % ny))
                    .collect();
                BipartiteGraph::with_default_labels(nx, ny, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(g in arb_graph(7)) {
            let mis = maximal_stable_sets(&g).unwrap();
            let oracle = ucc_oracle::maximal_stable_sets(g.vertex_count(), &g.global_edges());
            let mine: Vec<Vec<usize>> = mis.sets().iter().map(|s| s.to_vec()).collect();
            let theirs: Vec<Vec<usize>> = oracle.iter().map(|s| s.iter().copied().collect()).collect();
            prop_assert_eq!(mine, theirs);
        }

        #[test]
        fn every_edge_has_a_rare_end(g in arb_graph(7)) {
            let mis = maximal_stable_sets(&g).unwrap();
            for (a, b) in g.global_edges() {
                prop_assert!(mis.is_rare(a) || mis.is_rare(b));
            }
        }
    }
}
