//! Brute-force reference computations.
//!
//! Everything here works on plain `Vec`/`BTreeSet` values and enumerates the
//! whole search space. Nothing in this crate shares code with `ucc-core`, so
//! it can serve as an independent check of the bitset kernels there.

use std::collections::BTreeSet;

pub type Set = BTreeSet<usize>;

/// All unions of all subcollections of `sets` (including the empty one),
/// by iterating the `2^m` subcollection masks.
pub fn closure_by_subcollections(sets: &[Vec<usize>]) -> BTreeSet<Set> {
    let m = sets.len();
    assert!(
        m < 24,
        "oracle closure is exponential in the number of sets"
    );
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << m) {
        let mut acc = Set::new();
        for (i, s) in sets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc.extend(s.iter().copied());
            }
        }
        out.insert(acc);
    }
    out
}

/// Number of members of `family` containing each element `0..universe`.
pub fn frequencies<'a, I>(family: I, universe: usize) -> Vec<usize>
where
    I: IntoIterator<Item = &'a Set>,
{
    let mut counts = vec![0; universe];
    for s in family {
        for &x in s {
            counts[x] += 1;
        }
    }
    counts
}

pub fn abundant(family: &BTreeSet<Set>, universe: usize) -> Set {
    frequencies(family, universe)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| 2 * c >= family.len())
        .map(|(x, _)| x)
        .collect()
}

fn adjacency(vertices: usize, edges: &[(usize, usize)]) -> Vec<Set> {
    let mut adj = vec![Set::new(); vertices];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    adj
}

/// Maximal stable sets by checking every one of the `2^V` vertex subsets.
pub fn maximal_stable_sets(vertices: usize, edges: &[(usize, usize)]) -> Vec<Set> {
    assert!(vertices <= 24, "oracle enumeration is exponential in V");
    let adj = adjacency(vertices, edges);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << vertices) {
        let s: Set = (0..vertices).filter(|&v| mask >> v & 1 == 1).collect();
        let stable = s.iter().all(|v| adj[*v].is_disjoint(&s));
        if !stable {
            continue;
        }
        let maximal = (0..vertices).all(|v| s.contains(&v) || !adj[v].is_disjoint(&s));
        if maximal {
            out.push(s);
        }
    }
    out.sort();
    out
}

pub fn membership_counts(vertices: usize, sets: &[Set]) -> Vec<usize> {
    let mut counts = vec![0; vertices];
    for s in sets {
        for &v in s {
            counts[v] += 1;
        }
    }
    counts
}

/// Rare vertices: in at most half of the maximal stable sets.
pub fn rare_vertices(vertices: usize, edges: &[(usize, usize)]) -> Set {
    let mis = maximal_stable_sets(vertices, edges);
    let counts = membership_counts(vertices, &mis);
    (0..vertices)
        .filter(|&v| 2 * counts[v] <= mis.len())
        .collect()
}

fn edge_set(edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}

/// Compares the mapped edge set against the original edge set.
pub fn is_automorphism(edges: &[(usize, usize)], perm: &[usize]) -> bool {
    let original = edge_set(edges);
    let mapped: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    edge_set(&mapped) == original
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

/// Vertices `0..nx` form class X and `nx..nx+ny` form class Y. Returns whether
/// some permutation of all vertices is an automorphism exchanging the classes.
pub fn swap_automorphism_exists(nx: usize, ny: usize, edges: &[(usize, usize)]) -> bool {
    let v = nx + ny;
    permutations(v).into_iter().any(|p| {
        (0..nx).all(|x| p[x] >= nx) && (nx..v).all(|y| p[y] < nx) && is_automorphism(edges, &p)
    })
}

/// Every bipartite edge pattern between `nx` X-vertices (ids `0..nx`) and `ny`
/// Y-vertices (ids `nx..nx+ny`), in mask order.
pub fn all_bipartite_patterns(nx: usize, ny: usize) -> Vec<Vec<(usize, usize)>> {
    let slots = nx * ny;
    assert!(slots < 20);
    (0u32..(1u32 << slots))
        .map(|mask| {
            (0..slots)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (b / ny, nx + b % ny))
                .collect()
        })
        .collect()
}

/// Translate `set` by `shift` in Z_n.
pub fn translate(set: &Set, shift: usize, n: usize) -> Set {
    set.iter().map(|&x| (x + shift) % n).collect()
}

/// Number of distinct translates of `set` in Z_n, by listing all n of them.
pub fn distinct_translates(set: &Set, n: usize) -> usize {
    (0..n)
        .map(|g| translate(set, g, n))
        .collect::<BTreeSet<_>>()
        .len()
}
