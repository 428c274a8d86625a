//! Parameter sweeps. Each instance is checked independently in parallel and
//! outcomes are collected in the instance order, so reports do not depend on
//! scheduling.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::limits::Limits;
use crate::stable::{check_prop1_all_with, graph_satisfies_ucc_with, maximal_stable_sets_with};
use crate::symmetry::{is_swap_automorphism, rare_pair_via_swap_with};
use crate::translates::{
    apply_shift, cyclic_translates, enumerate_suitable, standard_shift_index, validate_suitable,
    verify_shifted, verify_translates, SuitableIndex,
};
use crate::zoo::{canonical_swap_map, generate, GridSpec};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_SAMPLE: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub sweep: &'static str,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

impl SweepReport {
    fn from_outcomes(sweep: &'static str, outcomes: Vec<Option<String>>) -> Self {
        let failed = outcomes.iter().filter(|o| o.is_some()).count();
        SweepReport {
            sweep,
            instances: outcomes.len(),
            passed: outcomes.len() - failed,
            failed,
            first_counterexample: outcomes.into_iter().flatten().next(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Runs `f` on a single thread when `deterministic` is set, else on the global pool.
pub fn with_threads<R: Send>(deterministic: bool, f: impl FnOnce() -> R + Send) -> R {
    if !deterministic {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn run<T: Sync>(
    sweep: &'static str,
    instances: &[T],
    check: impl Fn(&T) -> Result<Option<String>> + Sync + Send,
) -> Result<SweepReport> {
    let outcomes = instances
        .par_iter()
        .map(check)
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport::from_outcomes(sweep, outcomes))
}

fn graph_from_mask(nx: usize, ny: usize, mask: u64) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = (0..nx * ny)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b / ny, b % ny))
        .collect();
    BipartiteGraph::with_default_labels(nx, ny, &edges).expect("pattern edges are in range")
}

/// Every adjacency pattern with `1 ≤ |X| ≤ max_x` and `1 ≤ |Y| ≤ max_y`.
pub fn all_patterns(max_x: usize, max_y: usize) -> Result<Vec<BipartiteGraph>> {
    if max_x * max_y > 20 {
        return Err(Error::ResourceLimit {
            what: "cells in an exhaustive pattern sweep",
            cap: 20,
        });
    }
    let mut out = Vec::new();
    for nx in 1..=max_x {
        for ny in 1..=max_y {
            for mask in 0..1u64 << (nx * ny) {
                out.push(graph_from_mask(nx, ny, mask));
            }
        }
    }
    Ok(out)
}

fn describe(g: &BipartiteGraph) -> String {
    format!("{}+{} graph with edges {:?}", g.nx(), g.ny(), g.edges())
}

/// Rare ⟺ abundant in the incidence closure, for every X vertex of every
/// pattern without isolated vertices.
pub fn sweep_prop1(max_x: usize, max_y: usize, limits: &Limits) -> Result<SweepReport> {
    let graphs: Vec<_> = all_patterns(max_x, max_y)?
        .into_iter()
        .filter(|g| !g.has_isolated_vertex())
        .collect();
    run("prop1", &graphs, |g| {
        let bad = check_prop1_all_with(g, limits)?
            .into_iter()
            .find(|r| !r.agrees);
        Ok(bad.map(|r| {
            format!(
                "{}: vertex {} rare={} abundant={}",
                describe(g),
                r.vertex,
                r.rare,
                r.abundant_in_closure
            )
        }))
    })
}

fn edge_violation(g: &BipartiteGraph, limits: &Limits) -> Result<Option<String>> {
    let mis = maximal_stable_sets_with(g, limits)?;
    Ok(g.global_edges()
        .into_iter()
        .find(|&(u, v)| !mis.is_rare(u) && !mis.is_rare(v))
        .map(|(u, v)| format!("{}: edge ({u}, {v}) has no rare endpoint", describe(g))))
}

/// Seeded random graphs with both classes of size `1..=max_side` and each
/// edge present with a density drawn per graph.
pub fn random_graphs(count: usize, max_side: usize, seed: u64) -> Vec<BipartiteGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let nx = rng.gen_range(1..=max_side);
            let ny = rng.gen_range(1..=max_side);
            let p: f64 = rng.gen_range(0.1..0.9);
            let edges: Vec<(usize, usize)> = (0..nx)
                .flat_map(|i| (0..ny).map(move |j| (i, j)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            BipartiteGraph::with_default_labels(nx, ny, &edges).expect("random edges are in range")
        })
        .collect()
}

/// Every edge has a rare endpoint: exhaustively up to `max_exhaustive` per
/// class, then on `random` seeded graphs up to `max_random` per class.
pub fn sweep_edge_rarity(
    max_exhaustive: usize,
    random: usize,
    max_random: usize,
    seed: u64,
    limits: &Limits,
) -> Result<SweepReport> {
    let mut graphs = all_patterns(max_exhaustive, max_exhaustive)?;
    graphs.extend(random_graphs(random, max_random, seed));
    run("edge-rarity", &graphs, |g| edge_violation(g, limits))
}

/// Each grid's canonical map is a swap automorphism, its rare pair survives
/// full enumeration, and the graph satisfies the graph formulation.
pub fn sweep_swap_specs(specs: &[GridSpec], limits: &Limits) -> Result<SweepReport> {
    run("swap-maps", specs, |spec| {
        let g = generate(spec)?;
        let f = canonical_swap_map(spec)?;
        if !is_swap_automorphism(&g, &f)? {
            return Ok(Some(format!(
                "{spec}: canonical map is not a swap automorphism"
            )));
        }
        let pair = match rare_pair_via_swap_with(&g, &f, limits) {
            Ok(p) => p,
            Err(e) if e.is_resource_limit() => return Err(e),
            Err(e) => return Ok(Some(format!("{spec}: {e}"))),
        };
        let mis = maximal_stable_sets_with(&g, limits)?;
        if !mis.is_rare(pair.x) || !mis.is_rare(pair.y) {
            return Ok(Some(format!(
                "{spec}: pair ({}, {}) is not rare",
                pair.x, pair.y
            )));
        }
        if !graph_satisfies_ucc_with(&g, limits)?.holds {
            return Ok(Some(format!("{spec}: graph formulation fails")));
        }
        Ok(None)
    })
}

fn mask_elems(mask: u128) -> Vec<usize> {
    ElemSet(mask).to_vec()
}

fn fmt_set(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Every nonempty `R ⊆ Z_n` for `n ≤ max_n`: the translate count divides `n`,
/// the copy map is a swap automorphism and the generated family is UCC.
pub fn sweep_translates(max_n: usize, limits: &Limits) -> Result<SweepReport> {
    if max_n > 12 {
        return Err(Error::ResourceLimit {
            what: "modulus in the translate sweep",
            cap: 12,
        });
    }
    let instances: Vec<(usize, u128)> = (1..=max_n)
        .flat_map(|n| (1..1u128 << n).map(move |m| (n, m)))
        .collect();
    run("translates", &instances, |&(n, mask)| {
        let r = mask_elems(mask);
        let t = cyclic_translates(&r, n, r[0])?;
        if n % t.k() != 0 {
            return Ok(Some(format!(
                "n={n} R={}: k={} does not divide n",
                fmt_set(&r),
                t.k()
            )));
        }
        let report = verify_translates(&t, limits)?;
        Ok((!report.all_pass).then(|| {
            format!(
                "n={n} R={}: automorphism={} graph={} family={}",
                fmt_set(&r),
                report.automorphism_ok,
                report.graph.holds,
                report.family.holds
            )
        }))
    })
}

/// Subsets of `Z_n` whose `n` translates are pairwise distinct.
pub fn full_orbit_sets(n: usize) -> Result<Vec<ElemSet>> {
    if n > 20 {
        return Err(Error::ResourceLimit {
            what: "modulus for full-orbit enumeration",
            cap: 20,
        });
    }
    Ok((1..1u128 << n)
        .map(ElemSet)
        .filter(|&s| (1..n).all(|g| s.translate(g, n) != s))
        .collect())
}

/// `sample` elements chosen by a seeded generator, kept in their original order.
/// Returns everything when there are at most `sample`.
pub fn seeded_sample<T: Clone>(items: &[T], sample: usize, seed: u64) -> Vec<T> {
    if items.len() <= sample {
        return items.to_vec();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, items.len(), sample).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| items[i].clone()).collect()
}

/// Which standard indices a shift sweep covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftGrid {
    pub n: usize,
    pub sets: Vec<ElemSet>,
    /// `None` means every `l ∈ 1..=n`.
    pub l: Option<usize>,
    /// `None` means every `m ∈ 0..l`.
    pub m: Option<usize>,
}

impl ShiftGrid {
    /// All full-orbit sets, or a seeded sample of `sample` of them.
    pub fn sampled(n: usize, sample: usize, seed: u64) -> Result<Self> {
        let sets = seeded_sample(&full_orbit_sets(n)?, sample, seed);
        Ok(ShiftGrid {
            n,
            sets,
            l: None,
            m: None,
        })
    }

    fn instances(&self) -> Vec<(ElemSet, usize, usize)> {
        let ls: Vec<usize> = self.l.map_or_else(|| (1..=self.n).collect(), |l| vec![l]);
        let mut out = Vec::new();
        for &s in &self.sets {
            for &l in &ls {
                let ms: Vec<usize> = self.m.map_or_else(|| (0..l).collect(), |m| vec![m]);
                out.extend(ms.into_iter().map(|m| (s, l, m)));
            }
        }
        out
    }
}

/// The standard index validates, the explicit map is a swap automorphism of
/// the shifted incidence graph, and the shifted family is UCC. Sets are
/// anchored at their least element.
pub fn sweep_shift(grid: &ShiftGrid, limits: &Limits) -> Result<SweepReport> {
    let instances = grid.instances();
    run("shift", &instances, |&(s, l, m)| {
        let r = s.to_vec();
        let label = format!("n={} R={} l={l} m={m}", grid.n, fmt_set(&r));
        let t = cyclic_translates(&r, grid.n, r[0])?;
        let index = match standard_shift_index(grid.n, l, m) {
            Ok(i) => i,
            Err(e) => return Ok(Some(format!("{label}: standard index rejected: {e}"))),
        };
        let shifted = match apply_shift(&t, &index) {
            Ok(sf) => sf,
            Err(e) => return Ok(Some(format!("{label}: {e}"))),
        };
        let report = verify_shifted(&shifted, limits)?;
        Ok((!report.all_pass).then(|| {
            format!(
                "{label}: automorphism={} graph={} family={}",
                report.automorphism_ok, report.graph.holds, report.family.holds
            )
        }))
    })
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every `(I, q, r)` with `|I| ≤ max_l` accepted by the validator.
pub fn suitable_by_validation(n: usize, max_l: usize) -> Result<BTreeSet<SuitableIndex>> {
    let mut out = BTreeSet::new();
    for mask in 0..1u128 << n {
        let indices = mask_elems(mask);
        if indices.len() > max_l {
            continue;
        }
        let mut images = indices.clone();
        loop {
            let q = indices
                .iter()
                .copied()
                .zip(images.iter().copied())
                .collect();
            for r in 0..n {
                match validate_suitable(n, &indices, &q, r) {
                    Ok(idx) => {
                        out.insert(idx);
                    }
                    Err(Error::Suitability(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            if !next_permutation(&mut images) {
                break;
            }
        }
    }
    Ok(out)
}

/// The enumerator and the validator agree on every `n ≤ max_n`, and each
/// standard index with `l ≤ max_l` is among the enumerated ones.
pub fn sweep_suitable(max_n: usize, max_l: usize) -> Result<SweepReport> {
    if max_n > 8 {
        return Err(Error::ResourceLimit {
            what: "modulus in the suitable-index sweep",
            cap: 8,
        });
    }
    let ns: Vec<usize> = (1..=max_n).collect();
    run("suitable", &ns, |&n| {
        let enumerated: BTreeSet<_> = enumerate_suitable(n, max_l.min(n))?.into_iter().collect();
        let validated = suitable_by_validation(n, max_l.min(n))?;
        if enumerated != validated {
            let extra = enumerated.symmetric_difference(&validated).next();
            return Ok(Some(format!(
                "n={n}: enumeration and validation differ, e.g. at {extra:?}"
            )));
        }
        for l in 1..=max_l.min(n) {
            for m in 0..l {
                let std = standard_shift_index(n, l, m)?;
                if !enumerated.contains(&std) {
                    return Ok(Some(format!("n={n}: standard index l={l} m={m} missing")));
                }
            }
        }
        Ok(None)
    })
}
