//! Families of cyclic translates over `Z_n`, suitable indices, the anchor
//! shift `P_{I,q}`, and the explicit class-swapping automorphisms of their
//! incidence graphs.
//!
//! A translate family is built from a base tuple `A` whose position 0 holds the
//! anchor. Member `i` is the tuple `(A(j) + i) mod n`. The shift replaces the
//! anchor of member `i ∈ I` by the anchor of member `q(i)`, which keeps the
//! incidence graph symmetric whenever `(I, q)` is `r`-suitable:
//!
//! - `I = r - I`
//! - `r - i = q(r - q(i))` for every `i ∈ I`
//!
//! (all arithmetic mod `n`).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bitset::{ElemSet, MAX_UNIVERSE};
use crate::error::{Error, Result};
use crate::family::{verify_ucc_with_cap, SetFamily, UccReport};
use crate::graph::{incidence_graph, BipartiteGraph};
use crate::limits::Limits;
use crate::stable::{graph_satisfies_ucc_with, GraphUccReport};
use crate::symmetry::{is_swap_automorphism, VertexBijection};

#[inline]
fn sub_mod(a: usize, b: usize, n: usize) -> usize {
    (a + n - b % n) % n
}

fn check_modulus(n: usize) -> Result<()> {
    if n == 0 || n > MAX_UNIVERSE {
        return Err(Error::arg(format!(
            "modulus must be in 1..={MAX_UNIVERSE}, got {n}"
        )));
    }
    Ok(())
}

/// The distinct cyclic translates `A, A+1, ..., A+(k-1)` of a base tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateFamily {
    n: usize,
    base: Vec<usize>,
    k: usize,
}

impl TranslateFamily {
    pub fn modulus(&self) -> usize {
        self.n
    }

    /// The tuple `A`; position 0 is the anchor.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn anchor(&self) -> usize {
        self.base[0]
    }

    /// Number of distinct translates.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base_set(&self) -> ElemSet {
        self.base.iter().copied().collect()
    }

    /// `(A + i)(j) = A(j) + i`.
    pub fn member_tuple(&self, i: usize) -> Vec<usize> {
        self.base.iter().map(|&a| (a + i) % self.n).collect()
    }

    pub fn member_set(&self, i: usize) -> ElemSet {
        self.base_set().translate(i % self.n, self.n)
    }

    /// The `k` members as an indexed family over `Z_n`.
    pub fn to_family(&self) -> SetFamily {
        let members = (0..self.k).map(|i| self.member_set(i)).collect();
        SetFamily::new(self.n, members, true).expect("translates stay inside Z_n")
    }
}

/// Translates of `set` in `Z_n`. The base tuple is `set` ascending, rotated so
/// that `anchor` comes first.
pub fn cyclic_translates(set: &[usize], n: usize, anchor: usize) -> Result<TranslateFamily> {
    check_modulus(n)?;
    if let Some(&element) = set.iter().find(|&&e| e >= n) {
        return Err(Error::Range {
            element,
            universe: n,
        });
    }
    let elems: ElemSet = set.iter().copied().collect();
    if elems.is_empty() {
        return Err(Error::arg("the translated set must be nonempty"));
    }
    if !elems.contains(anchor) {
        return Err(Error::arg(format!(
            "anchor {anchor} is not an element of the set"
        )));
    }
    let sorted = elems.to_vec();
    let at = sorted.iter().position(|&e| e == anchor).unwrap();
    let base: Vec<usize> = sorted[at..].iter().chain(&sorted[..at]).copied().collect();
    let k = (1..=n).find(|&k| elems.translate(k, n) == elems).unwrap();
    debug_assert_eq!(n % k, 0);
    Ok(TranslateFamily { n, base, k })
}

/// Which suitability condition failed, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SuitabilityFailure {
    /// `i ∈ I` but `r - i ∉ I`.
    Reflection { i: usize, reflected: usize },
    /// `r - i ≠ q(r - q(i))`.
    Involution {
        i: usize,
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for SuitabilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuitabilityFailure::Reflection { i, reflected } => {
                write!(
                    f,
                    "I != r - I: {i} is in I but r - {i} = {reflected} is not"
                )
            }
            SuitabilityFailure::Involution { i, expected, got } => {
                write!(
                    f,
                    "r - i != q(r - q(i)) at i = {i}: expected {expected}, got {got}"
                )
            }
        }
    }
}

/// A validated `r`-suitable index `(I, q)` over `Z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuitableIndex {
    n: usize,
    indices: ElemSet,
    q: BTreeMap<usize, usize>,
    r: usize,
}

impl SuitableIndex {
    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> ElemSet {
        self.indices
    }

    pub fn q(&self) -> &BTreeMap<usize, usize> {
        &self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(i)
    }

    /// `q(i)`, or `None` when `i ∉ I`.
    pub fn map(&self, i: usize) -> Option<usize> {
        self.q.get(&i).copied()
    }

    pub fn is_identity(&self) -> bool {
        self.q.iter().all(|(a, b)| a == b)
    }
}

/// Checks that `q` is a bijection on `I` and both suitability conditions hold.
pub fn validate_suitable(
    n: usize,
    indices: &[usize],
    q: &BTreeMap<usize, usize>,
    r: usize,
) -> Result<SuitableIndex> {
    check_modulus(n)?;
    if let Some(&element) = indices.iter().find(|&&i| i >= n) {
        return Err(Error::Range {
            element,
            universe: n,
        });
    }
    if r >= n {
        return Err(Error::Range {
            element: r,
            universe: n,
        });
    }
    let set: ElemSet = indices.iter().copied().collect();
    let domain: ElemSet = q.keys().copied().collect();
    let image: ElemSet = q.values().copied().collect();
    if domain != set || image != set || q.len() != set.len() {
        return Err(Error::arg("q must be a bijection from I onto I"));
    }
    for i in set.iter() {
        let reflected = sub_mod(r, i, n);
        if !set.contains(reflected) {
            return Err(Error::Suitability(SuitabilityFailure::Reflection {
                i,
                reflected,
            }));
        }
    }
    for i in set.iter() {
        let expected = sub_mod(r, i, n);
        let got = q[&sub_mod(r, q[&i], n)];
        if got != expected {
            return Err(Error::Suitability(SuitabilityFailure::Involution {
                i,
                expected,
                got,
            }));
        }
    }
    Ok(SuitableIndex {
        n,
        indices: set,
        q: q.clone(),
        r,
    })
}

/// Every suitable `(I, q, r)` over `Z_n` with `|I| <= max_l`, by exhaustive
/// search. Order: `I` by bitmask, then `q` lexicographically, then `r`.
pub fn enumerate_suitable(n: usize, max_l: usize) -> Result<Vec<SuitableIndex>> {
    if n > 8 {
        return Err(Error::ResourceLimit {
            what: "modulus for suitable-index enumeration",
            cap: 8,
        });
    }
    if max_l > n {
        return Err(Error::ResourceLimit {
            what: "index set size for suitable-index enumeration",
            cap: n,
        });
    }
    check_modulus(n)?;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        if members.len() > max_l {
            continue;
        }
        for r in 0..n {
            // condition 1 on the bitmask of r - I
            let reflected = members
                .iter()
                .fold(0u32, |acc, &i| acc | 1 << ((r + n - i) % n));
            if reflected != mask {
                continue;
            }
            for_each_permutation(&members, &mut |images| {
                // q as a full table over Z_n; only entries in I are read
                let mut table = vec![usize::MAX; n];
                for (&i, &qi) in members.iter().zip(images) {
                    table[i] = qi;
                }
                let ok = members
                    .iter()
                    .all(|&i| table[(r + n - table[i]) % n] == (r + n - i) % n);
                if ok {
                    let q = members
                        .iter()
                        .copied()
                        .zip(images.iter().copied())
                        .collect();
                    out.push(SuitableIndex {
                        n,
                        indices: ElemSet(mask as u128),
                        q,
                        r,
                    });
                }
            });
        }
    }
    out.sort_by(|a, b| {
        (a.indices.0, a.q.values().collect::<Vec<_>>(), a.r).cmp(&(
            b.indices.0,
            b.q.values().collect(),
            b.r,
        ))
    });
    Ok(out)
}

/// Visits the permutations of `items` in lexicographic order of positions.
fn for_each_permutation(items: &[usize], visit: &mut impl FnMut(&[usize])) {
    fn go(rest: &mut Vec<usize>, acc: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if rest.is_empty() {
            visit(acc);
            return;
        }
        for idx in 0..rest.len() {
            let x = rest.remove(idx);
            acc.push(x);
            go(rest, acc, visit);
            acc.pop();
            rest.insert(idx, x);
        }
    }
    go(
        &mut items.to_vec(),
        &mut Vec::with_capacity(items.len()),
        visit,
    );
}

/// `I = {0, ..., l-1}`, `q(i) = (i + m) mod l`, `r = l - 1`.
pub fn standard_shift_index(n: usize, l: usize, m: usize) -> Result<SuitableIndex> {
    check_modulus(n)?;
    if l == 0 || l > n {
        return Err(Error::arg(format!("l must be in 1..={n}, got {l}")));
    }
    if m >= n {
        return Err(Error::arg(format!("m must be in 0..{n}, got {m}")));
    }
    let indices: Vec<usize> = (0..l).collect();
    let q = (0..l).map(|i| (i, (i + m) % l)).collect();
    validate_suitable(n, &indices, &q, l - 1)
}

/// Translates with some anchors permuted by a suitable index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedFamily {
    source: TranslateFamily,
    index: SuitableIndex,
    tuples: Vec<Vec<usize>>,
}

impl ShiftedFamily {
    pub fn source(&self) -> &TranslateFamily {
        &self.source
    }

    pub fn index(&self) -> &SuitableIndex {
        &self.index
    }

    pub fn modulus(&self) -> usize {
        self.source.n
    }

    /// Member tuples; a tuple may repeat an element after the shift.
    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn member_set(&self, i: usize) -> ElemSet {
        self.tuples[i].iter().copied().collect()
    }

    /// The `n` members (set view) as an indexed family.
    pub fn to_family(&self) -> SetFamily {
        let members = (0..self.tuples.len()).map(|i| self.member_set(i)).collect();
        SetFamily::new(self.source.n, members, true).expect("shifted members stay inside Z_n")
    }

    /// Index pairs `i < j` whose members coincide as sets.
    pub fn collisions(&self) -> Vec<(usize, usize)> {
        let sets: Vec<ElemSet> = (0..self.tuples.len()).map(|i| self.member_set(i)).collect();
        let mut out = Vec::new();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i] == sets[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `P_{I,q}`: for `i ∈ I` the anchor of member `i` becomes `A(0) + q(i)`.
/// Requires all `n` translates to be distinct.
pub fn apply_shift(family: &TranslateFamily, index: &SuitableIndex) -> Result<ShiftedFamily> {
    let n = family.n;
    if family.k != n {
        return Err(Error::Precondition(format!(
            "the shift needs n = {n} distinct translates, the set has {}",
            family.k
        )));
    }
    if index.n != n {
        return Err(Error::arg(format!(
            "index is over Z_{} but the family is over Z_{n}",
            index.n
        )));
    }
    let anchor = family.anchor();
    let tuples = (0..n)
        .map(|i| {
            let mut t = family.member_tuple(i);
            if let Some(qi) = index.map(i) {
                t[0] = (anchor + qi) % n;
            }
            t
        })
        .collect();
    Ok(ShiftedFamily {
        source: family.clone(),
        index: index.clone(),
        tuples,
    })
}

/// The incidence graph of the shifted family: X = `Z_n` (ids `0..n`), Y = the
/// `n` indexed members (ids `n..2n`).
pub fn shifted_incidence_graph(family: &ShiftedFamily) -> BipartiteGraph {
    incidence_graph(&family.to_family())
}

/// `f(member i) = r + A(0) - i` and `f(a) = member (r + A(0) - a)`, on
/// [`shifted_incidence_graph`].
pub fn thm_automorphism(family: &ShiftedFamily) -> VertexBijection {
    let n = family.modulus();
    let shift = family.index.r + family.source.anchor();
    let mut forward = vec![0; 2 * n];
    for i in 0..n {
        forward[n + i] = sub_mod(shift, i, n);
    }
    for (a, image) in forward.iter_mut().enumerate().take(n) {
        *image = n + sub_mod(shift, a, n);
    }
    VertexBijection::new(forward).expect("reflection of Z_n is a bijection")
}

/// Copies per translate so that both classes have `n` vertices.
pub fn copies_per_translate(family: &TranslateFamily) -> usize {
    family.n / family.k
}

/// X = `Z_n`; Y = `(A+i)_c` for `i < k`, `c = 1..=n/k`, each copy inheriting the
/// neighborhood of `A+i`. Y vertex `(i, c)` has id `n + i*(n/k) + (c-1)`.
pub fn augmented_incidence_graph(family: &TranslateFamily) -> BipartiteGraph {
    let n = family.n;
    let copies = copies_per_translate(family);
    let xs = (0..n).map(|a| a.to_string()).collect();
    let mut ys = Vec::with_capacity(n);
    let mut edges = Vec::new();
    for i in 0..family.k {
        let set = family.member_set(i);
        for c in 1..=copies {
            let y = ys.len();
            ys.push(format!("A+{i}#{c}"));
            edges.extend(set.iter().map(|a| (a, y)));
        }
    }
    BipartiteGraph::new(xs, ys, &edges).expect("augmented labels are unique")
}

/// `f((A+i)_c) = c*k - i` and `f(a) = (A - a mod k)_{floor(a/k) + 1}`, on
/// [`augmented_incidence_graph`]. `A - a_r` is the translate with index
/// `(k - a_r) mod k`, since `A + k = A`.
pub fn prop4_automorphism(family: &TranslateFamily) -> VertexBijection {
    let (n, k) = (family.n, family.k);
    let copies = copies_per_translate(family);
    let y_id = |i: usize, c: usize| n + i * copies + (c - 1);
    let mut forward = vec![0; 2 * n];
    for i in 0..k {
        for c in 1..=copies {
            forward[y_id(i, c)] = sub_mod(c * k, i, n);
        }
    }
    for (a, image) in forward.iter_mut().enumerate().take(n) {
        *image = y_id((k - a % k) % k, a / k + 1);
    }
    VertexBijection::new(forward).expect("copy map is a bijection")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub kind: &'static str,
    pub modulus: usize,
    /// The explicit map passes the swap-automorphism check.
    pub automorphism_ok: bool,
    pub graph: GraphUccReport,
    pub family: UccReport,
    /// Set-view cardinality of each indexed member.
    pub member_cardinalities: Vec<usize>,
    /// Indexed members that coincide as sets.
    pub collisions: Vec<(usize, usize)>,
    pub all_pass: bool,
}

/// Checks the explicit automorphism, the graph formulation on the copy-augmented
/// incidence graph, and brute-force UCC on the generated family.
pub fn verify_translates(family: &TranslateFamily, limits: &Limits) -> Result<ConstructionReport> {
    let graph = augmented_incidence_graph(family);
    let automorphism_ok = is_swap_automorphism(&graph, &prop4_automorphism(family))?;
    let graph_report = graph_satisfies_ucc_with(&graph, limits)?;
    let family_report = verify_ucc_with_cap(&family.to_family(), limits.closure_cap)?;
    let member_cardinalities = (0..family.k).map(|i| family.member_set(i).len()).collect();
    Ok(ConstructionReport {
        kind: "translates",
        modulus: family.n,
        all_pass: automorphism_ok && graph_report.holds && family_report.holds,
        automorphism_ok,
        graph: graph_report,
        family: family_report,
        member_cardinalities,
        collisions: Vec::new(),
    })
}

/// Same three checks for a shifted family on its plain incidence graph.
pub fn verify_shifted(family: &ShiftedFamily, limits: &Limits) -> Result<ConstructionReport> {
    let graph = shifted_incidence_graph(family);
    let automorphism_ok = is_swap_automorphism(&graph, &thm_automorphism(family))?;
    let graph_report = graph_satisfies_ucc_with(&graph, limits)?;
    let family_report = verify_ucc_with_cap(&family.to_family(), limits.closure_cap)?;
    let member_cardinalities = (0..family.modulus())
        .map(|i| family.member_set(i).len())
        .collect();
    Ok(ConstructionReport {
        kind: "shifted",
        modulus: family.modulus(),
        all_pass: automorphism_ok && graph_report.holds && family_report.holds,
        automorphism_ok,
        graph: graph_report,
        family: family_report,
        member_cardinalities,
        collisions: family.collisions(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The worked example: {1,2,4,7} in Z_7 with labels 1..7, 7 stored as 0.
    fn z7_example() -> TranslateFamily {
        cyclic_translates(&[1, 2, 4, 0], 7, 1).unwrap()
    }

    fn qmap(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn z7_translates() {
        let t = z7_example();
        assert_eq!(t.base(), &[1, 2, 4, 0]);
        assert_eq!(t.k(), 7);
        assert_eq!(t.member_tuple(1), vec![2, 3, 5, 1]);
        assert_eq!(t.member_tuple(6), vec![0, 1, 3, 6]);
    }

    #[test]
    fn translate_edge_cases() {
        assert_eq!(cyclic_translates(&[0, 1, 2, 3, 4], 5, 2).unwrap().k(), 1);
        let t = cyclic_translates(&[0, 2], 4, 0).unwrap();
        assert_eq!(t.k(), 2);
        assert_eq!(t.to_family().to_lists(), vec![vec![0, 2], vec![1, 3]]);
        assert!(matches!(
            cyclic_translates(&[], 4, 0),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            cyclic_translates(&[1], 4, 0),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            cyclic_translates(&[4], 4, 4),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn k_divides_n_exhaustively() {
        for n in 1..=8 {
            for mask in 1u32..(1 << n) {
                let set: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
                let t = cyclic_translates(&set, n, set[0]).unwrap();
                assert_eq!(n % t.k(), 0);
                assert_eq!(t.member_set(t.k()), t.base_set());
                let distinct: std::collections::HashSet<_> =
                    (0..t.k()).map(|i| t.member_set(i)).collect();
                assert_eq!(distinct.len(), t.k());
            }
        }
    }

    #[test]
    fn suitable_examples() {
        let s = validate_suitable(7, &[0, 1, 2], &qmap(&[(0, 1), (1, 2), (2, 0)]), 2).unwrap();
        assert_eq!(s.r(), 2);
        assert!(validate_suitable(5, &[], &BTreeMap::new(), 3).is_ok());
        let err = validate_suitable(4, &[0, 1], &qmap(&[(0, 0), (1, 1)]), 0).unwrap_err();
        assert_eq!(
            err,
            Error::Suitability(SuitabilityFailure::Reflection { i: 1, reflected: 3 })
        );
    }

    #[test]
    fn suitable_condition_two_failure() {
        // I = {0, 1, 2} = 2 - I, but the transposition (0 1) breaks condition 2 at i = 0:
        // r - q(0) = 1, q(1) = 0, expected r - 0 = 2
        let err =
            validate_suitable(5, &[0, 1, 2], &qmap(&[(0, 1), (1, 0), (2, 2)]), 2).unwrap_err();
        assert_eq!(
            err,
            Error::Suitability(SuitabilityFailure::Involution {
                i: 0,
                expected: 2,
                got: 0
            })
        );
    }

    #[test]
    fn q_must_be_a_bijection() {
        let err = validate_suitable(5, &[0, 1], &qmap(&[(0, 1), (1, 1)]), 1).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
        let err = validate_suitable(5, &[0, 1], &qmap(&[(0, 1)]), 1).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }

    #[test]
    fn standard_indices() {
        let s = standard_shift_index(7, 3, 1).unwrap();
        assert_eq!(s.indices().to_vec(), vec![0, 1, 2]);
        assert_eq!(s.q(), &qmap(&[(0, 1), (1, 2), (2, 0)]));
        assert_eq!(s.r(), 2);

        let s = standard_shift_index(9, 1, 5).unwrap();
        assert_eq!(s.q(), &qmap(&[(0, 0)]));
        assert_eq!(s.r(), 0);

        assert!(standard_shift_index(6, 4, 2).is_ok());
        assert!(standard_shift_index(6, 0, 0).is_err());
        assert!(standard_shift_index(6, 7, 0).is_err());
        assert!(standard_shift_index(6, 3, 6).is_err());
    }

    #[test]
    fn enumeration_contains_the_standard_instance() {
        let all = enumerate_suitable(7, 3).unwrap();
        assert!(all.contains(&standard_shift_index(7, 3, 1).unwrap()));
        let n3 = enumerate_suitable(3, 0).unwrap();
        assert_eq!(n3.len(), 3);
        assert!(n3.iter().all(|s| s.indices().is_empty()));
        assert!(enumerate_suitable(9, 2).unwrap_err().is_resource_limit());
        assert!(enumerate_suitable(5, 6).unwrap_err().is_resource_limit());
    }

    #[test]
    fn shift_reproduces_the_worked_example() {
        let sf = apply_shift(&z7_example(), &standard_shift_index(7, 3, 1).unwrap()).unwrap();
        assert_eq!(sf.tuples()[0], vec![2, 2, 4, 0]);
        assert_eq!(sf.tuples()[1], vec![3, 3, 5, 1]);
        assert_eq!(sf.tuples()[2], vec![1, 4, 6, 2]);
        let sets = sf.to_family().to_lists();
        assert_eq!(
            sets,
            vec![
                vec![0, 2, 4],
                vec![1, 3, 5],
                vec![1, 2, 4, 6],
                vec![0, 3, 4, 5],
                vec![1, 4, 5, 6],
                vec![0, 2, 5, 6],
                vec![0, 1, 3, 6],
            ]
        );
        assert!(sf.collisions().is_empty());
    }

    #[test]
    fn trivial_shifts_are_identity() {
        let t = z7_example();
        let empty = validate_suitable(7, &[], &BTreeMap::new(), 4).unwrap();
        assert_eq!(apply_shift(&t, &empty).unwrap().to_family(), t.to_family());
        let id = standard_shift_index(7, 5, 0).unwrap();
        assert!(id.is_identity());
        assert_eq!(apply_shift(&t, &id).unwrap().to_family(), t.to_family());
    }

    #[test]
    fn shift_preconditions() {
        let t = cyclic_translates(&[0, 2], 4, 0).unwrap();
        let s = standard_shift_index(4, 2, 1).unwrap();
        assert!(matches!(apply_shift(&t, &s), Err(Error::Precondition(_))));
        let t = cyclic_translates(&[0, 1], 5, 0).unwrap();
        assert!(matches!(apply_shift(&t, &s), Err(Error::Argument(_))));
    }

    #[test]
    fn theorem_map_uses_the_anchor_value() {
        let sf = apply_shift(&z7_example(), &standard_shift_index(7, 3, 1).unwrap()).unwrap();
        let g = shifted_incidence_graph(&sf);
        let f = thm_automorphism(&sf);
        // anchor value 1: f(member i) = 3 - i, f(a) = member 3 - a
        assert_eq!(f.apply(7), 3);
        assert_eq!(f.apply(0), 7 + 3);
        assert!(is_swap_automorphism(&g, &f).unwrap());
        // treating the anchor as 0 does not give an automorphism
        let wrong: Vec<usize> = (0..7)
            .map(|a| 7 + (2 + 7 - a) % 7)
            .chain((0..7).map(|i| (2 + 7 - i) % 7))
            .collect();
        assert!(!is_swap_automorphism(&g, &VertexBijection::new(wrong).unwrap()).unwrap());
    }

    #[test]
    fn theorem_map_small_cases() {
        let t = z7_example();
        let empty = validate_suitable(7, &[], &BTreeMap::new(), 0).unwrap();
        let sf = apply_shift(&t, &empty).unwrap();
        assert!(
            is_swap_automorphism(&shifted_incidence_graph(&sf), &thm_automorphism(&sf)).unwrap()
        );

        let t = cyclic_translates(&[0, 2], 5, 0).unwrap();
        assert_eq!(t.k(), 5);
        let sf = apply_shift(&t, &standard_shift_index(5, 2, 1).unwrap()).unwrap();
        assert!(
            is_swap_automorphism(&shifted_incidence_graph(&sf), &thm_automorphism(&sf)).unwrap()
        );
    }

    #[test]
    fn augmented_graph_shapes() {
        let t = cyclic_translates(&[0, 2], 4, 0).unwrap();
        let g = augmented_incidence_graph(&t);
        assert_eq!(g.y_labels(), &["A+0#1", "A+0#2", "A+1#1", "A+1#2"]);
        assert_eq!(g.edge_count(), 8);

        let t = z7_example();
        assert_eq!(
            augmented_incidence_graph(&t).edges(),
            incidence_graph(&t.to_family()).edges()
        );

        let t = cyclic_translates(&[0], 3, 0).unwrap();
        let g = augmented_incidence_graph(&t);
        assert_eq!(g.edge_count(), 3);
        assert!((0..6).all(|v| g.degree(v) == 1));
    }

    #[test]
    fn prop4_maps() {
        let t = cyclic_translates(&[0, 2], 4, 0).unwrap();
        let f = prop4_automorphism(&t);
        // (A+i)_c -> 2c - i mod 4
        assert_eq!(f.apply(4), 2); // (A+0)_1
        assert_eq!(f.apply(5), 0); // (A+0)_2
        assert_eq!(f.apply(6), 1); // (A+1)_1
        assert_eq!(f.apply(7), 3); // (A+1)_2
        assert!(is_swap_automorphism(&augmented_incidence_graph(&t), &f).unwrap());

        for (set, n) in [(vec![0, 1, 2], 3), (vec![0], 1), (vec![0, 1, 3], 7)] {
            let t = cyclic_translates(&set, n, 0).unwrap();
            let g = augmented_incidence_graph(&t);
            assert!(
                is_swap_automorphism(&g, &prop4_automorphism(&t)).unwrap(),
                "{set:?} {n}"
            );
        }
    }

    #[test]
    fn section3_reports() {
        let limits = Limits::default();
        let sf = apply_shift(&z7_example(), &standard_shift_index(7, 3, 1).unwrap()).unwrap();
        let r = verify_shifted(&sf, &limits).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.member_cardinalities, vec![3, 3, 4, 4, 4, 4, 4]);

        let full = cyclic_translates(&[0, 1, 2, 3], 4, 0).unwrap();
        let r = verify_translates(&full, &limits).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.family.abundant, vec![0, 1, 2, 3]);
    }
}
