//! Set families over small universes and brute-force UCC verification.

use std::collections::HashSet;

use serde::Serialize;

use crate::bitset::{ElemSet, MAX_UNIVERSE};
use crate::error::{Error, Result};

/// Default cap on the number of sets a closure may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 22;

/// A finite family of subsets of `{0, ..., universe_size - 1}`.
///
/// With `allow_duplicates` the family is indexed: members keep insertion order
/// and equal members stay distinct. Otherwise it is a set of sets, deduplicated
/// and ordered by bitset value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    universe_size: usize,
    members: Vec<ElemSet>,
    allow_duplicates: bool,
}

impl SetFamily {
    pub fn new(
        universe_size: usize,
        members: Vec<ElemSet>,
        allow_duplicates: bool,
    ) -> Result<Self> {
        if universe_size > MAX_UNIVERSE {
            return Err(Error::arg(format!(
                "universe size {universe_size} exceeds the supported maximum of {MAX_UNIVERSE}"
            )));
        }
        let range = ElemSet::full(universe_size);
        for m in &members {
            if !m.is_subset(range) {
                let element = m.difference(range).first().unwrap();
                return Err(Error::Range {
                    element,
                    universe: universe_size,
                });
            }
        }
        let mut family = SetFamily {
            universe_size,
            members,
            allow_duplicates,
        };
        if !allow_duplicates {
            family.members.sort_unstable();
            family.members.dedup();
        }
        Ok(family)
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn members(&self) -> &[ElemSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn allow_duplicates(&self) -> bool {
        self.allow_duplicates
    }

    /// `U(F)`: every element occurring in some member.
    pub fn universe(&self) -> ElemSet {
        self.members
            .iter()
            .fold(ElemSet::EMPTY, |acc, &m| acc.union(m))
    }

    pub fn contains(&self, set: ElemSet) -> bool {
        self.members.contains(&set)
    }

    /// The same members viewed as a set of sets.
    pub fn deduplicated(&self) -> SetFamily {
        SetFamily::new(self.universe_size, self.members.clone(), false).unwrap()
    }

    /// Members as ascending element lists.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|m| m.to_vec()).collect()
    }
}

/// Builds a family from element lists. Repeated elements inside one list collapse.
pub fn make_family(
    sets: &[Vec<usize>],
    universe_size: usize,
    allow_duplicates: bool,
) -> Result<SetFamily> {
    if universe_size > MAX_UNIVERSE {
        return Err(Error::arg(format!(
            "universe size {universe_size} exceeds the supported maximum of {MAX_UNIVERSE}"
        )));
    }
    let mut members = Vec::with_capacity(sets.len());
    for s in sets {
        if let Some(&element) = s.iter().find(|&&e| e >= universe_size) {
            return Err(Error::Range {
                element,
                universe: universe_size,
            });
        }
        members.push(ElemSet::from_elems(s.iter().copied()));
    }
    SetFamily::new(universe_size, members, allow_duplicates)
}

/// `<F>` with the default cap.
pub fn union_closure(family: &SetFamily) -> Result<SetFamily> {
    union_closure_with_cap(family, DEFAULT_CLOSURE_CAP)
}

/// `<F>`: every union of every subcollection of `family`, the empty union included.
///
/// Adding a generator `g` to a closed family `C` gives `C ∪ {c ∪ g : c ∈ C}`, so
/// the closure is built one generator at a time.
pub fn union_closure_with_cap(family: &SetFamily, cap: usize) -> Result<SetFamily> {
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut known: Vec<ElemSet> = vec![ElemSet::EMPTY];
    seen.insert(ElemSet::EMPTY);
    if cap == 0 {
        return Err(Error::ResourceLimit {
            what: "union closure size",
            cap,
        });
    }
    for &g in family.members() {
        // a closed family already containing g is closed under union with g
        if seen.contains(&g) {
            continue;
        }
        let existing = known.len();
        for idx in 0..existing {
            let u = known[idx].union(g);
            if seen.insert(u) {
                if known.len() == cap {
                    return Err(Error::ResourceLimit {
                        what: "union closure size",
                        cap,
                    });
                }
                known.push(u);
            }
        }
    }
    SetFamily::new(family.universe_size(), known, false)
}

/// Number of members containing `x`.
pub fn element_frequency(family: &SetFamily, x: usize) -> Result<usize> {
    if x >= family.universe_size() {
        return Err(Error::Range {
            element: x,
            universe: family.universe_size(),
        });
    }
    Ok(family.members().iter().filter(|m| m.contains(x)).count())
}

/// Frequencies of every element of the universe.
pub fn frequencies(family: &SetFamily) -> Vec<usize> {
    let mut counts = vec![0usize; family.universe_size()];
    for m in family.members() {
        for x in m.iter() {
            counts[x] += 1;
        }
    }
    counts
}

/// Elements in at least half the members: `2 * count >= |F|`.
pub fn abundant_elements(family: &SetFamily) -> ElemSet {
    let total = family.len();
    frequencies(family)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| 2 * c >= total)
        .map(|(x, _)| x)
        .collect()
}

pub fn is_union_closed(family: &SetFamily) -> bool {
    let members: HashSet<ElemSet> = family.members().iter().copied().collect();
    let list: Vec<ElemSet> = members.iter().copied().collect();
    for (i, &s) in list.iter().enumerate() {
        for &t in &list[i + 1..] {
            if !members.contains(&s.union(t)) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UccReport {
    pub closure_size: usize,
    /// Frequency of each element `0..universe_size` over the closure.
    pub frequencies: Vec<usize>,
    pub abundant: Vec<usize>,
    pub holds: bool,
    /// Set when the closure is `{∅}`, the case the conjecture excludes.
    pub vacuous: bool,
}

pub fn verify_ucc(family: &SetFamily) -> Result<UccReport> {
    verify_ucc_with_cap(family, DEFAULT_CLOSURE_CAP)
}

pub fn verify_ucc_with_cap(family: &SetFamily, cap: usize) -> Result<UccReport> {
    let closure = union_closure_with_cap(family, cap)?;
    Ok(report_for_closed(&closure))
}

/// Builds the report for an already union-closed family.
pub fn report_for_closed(closure: &SetFamily) -> UccReport {
    let vacuous = closure.members().iter().all(|m| m.is_empty());
    let abundant = abundant_elements(closure).to_vec();
    UccReport {
        closure_size: closure.len(),
        frequencies: frequencies(closure),
        holds: vacuous || !abundant.is_empty(),
        abundant,
        vacuous,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fam(sets: &[&[usize]], u: usize) -> SetFamily {
        let v: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        make_family(&v, u, false).unwrap()
    }

    #[test]
    fn make_family_collapses_repeats() {
        let f = make_family(&[vec![2, 2, 4, 0]], 7, false).unwrap();
        assert_eq!(f.to_lists(), vec![vec![0, 2, 4]]);
        let empty = make_family(&[], 5, false).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.universe_size(), 5);
        let dedup = make_family(&[vec![0], vec![0]], 1, false).unwrap();
        assert_eq!(dedup.len(), 1);
        let indexed = make_family(&[vec![0], vec![0]], 1, true).unwrap();
        assert_eq!(indexed.len(), 2);
    }

    #[test]
    fn make_family_errors() {
        assert_eq!(
            make_family(&[vec![0, 7]], 7, false),
            Err(Error::Range {
                element: 7,
                universe: 7
            })
        );
        assert!(matches!(
            make_family(&[], 129, false),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let c = union_closure(&fam(&[&[]], 3)).unwrap();
        assert_eq!(c.to_lists(), vec![Vec::<usize>::new()]);

        let c = union_closure(&fam(&[&[1], &[2]], 3)).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.contains(ElemSet::from_elems([1, 2])));

        let c = union_closure(&fam(&[&[1, 2], &[2, 3], &[3, 4]], 5)).unwrap();
        let mut lists = c.to_lists();
        lists.sort();
        assert_eq!(
            lists,
            vec![
                vec![],
                vec![1, 2],
                vec![1, 2, 3],
                vec![1, 2, 3, 4],
                vec![2, 3],
                vec![2, 3, 4],
                vec![3, 4],
            ]
        );
    }

    #[test]
    fn closure_cap_is_an_error() {
        let f = fam(&[&[0], &[1], &[2]], 3);
        let err = union_closure_with_cap(&f, 7).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceLimit {
                what: "union closure size",
                cap: 7
            }
        );
        assert_eq!(union_closure_with_cap(&f, 8).unwrap().len(), 8);
    }

    #[test]
    fn frequency_and_abundance() {
        let c = union_closure(&fam(&[&[1], &[2]], 3)).unwrap();
        assert_eq!(element_frequency(&c, 1), Ok(2));
        assert_eq!(abundant_elements(&c).to_vec(), vec![1, 2]);

        // frequencies frozen from the subcollection oracle: [0, 3, 5, 5, 3]
        let c = union_closure(&fam(&[&[1, 2], &[2, 3], &[3, 4]], 5)).unwrap();
        assert_eq!(element_frequency(&c, 2), Ok(5));
        assert_eq!(frequencies(&c), vec![0, 3, 5, 5, 3]);
        assert_eq!(abundant_elements(&c).to_vec(), vec![2, 3]);

        let empty = make_family(&[], 1, false).unwrap();
        assert_eq!(element_frequency(&empty, 0), Ok(0));
        assert!(matches!(
            element_frequency(&empty, 1),
            Err(Error::Range { .. })
        ));

        let only_empty = fam(&[&[]], 2);
        assert!(abundant_elements(&only_empty).is_empty());
    }

    #[test]
    fn half_is_abundant() {
        // {∅, {0}}: 2 * 1 >= 2
        let f = fam(&[&[], &[0]], 1);
        assert_eq!(abundant_elements(&f).to_vec(), vec![0]);
    }

    #[test]
    fn union_closed_checks() {
        assert!(is_union_closed(&fam(&[&[], &[1], &[1, 2]], 3)));
        assert!(!is_union_closed(&fam(&[&[1], &[2]], 3)));
    }

    #[test]
    fn verify_examples() {
        let r = verify_ucc(&fam(&[&[1]], 2)).unwrap();
        assert!(r.holds && !r.vacuous);
        assert_eq!(r.abundant, vec![1]);

        let r = verify_ucc(&make_family(&[], 4, false).unwrap()).unwrap();
        assert_eq!(r.closure_size, 1);
        assert!(r.holds && r.vacuous);
    }

    fn arb_family() -> impl Strategy<Value = SetFamily> {
        (1usize..=8).prop_flat_map(|u| {
            proptest::collection::vec(0u128..(1u128 << u), 0..8).prop_map(move |bits| {
                SetFamily::new(u, bits.into_iter().map(ElemSet).collect(), true).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn closure_properties(f in arb_family()) {
            let c = union_closure(&f).unwrap();
            prop_assert!(is_union_closed(&c));
            prop_assert!(c.contains(ElemSet::EMPTY));
            for &m in f.members() {
                prop_assert!(c.contains(m));
            }
            prop_assert_eq!(union_closure(&c).unwrap(), c.clone());

            let oracle = ucc_oracle::closure_by_subcollections(&f.to_lists());
            prop_assert_eq!(c.len(), oracle.len());
            prop_assert_eq!(frequencies(&c), ucc_oracle::frequencies(&oracle, f.universe_size()));
        }

        #[test]
        fn abundance_is_the_definitional_count(f in arb_family()) {
            let a = abundant_elements(&f);
            for x in 0..f.universe_size() {
                let count = element_frequency(&f, x).unwrap();
                prop_assert_eq!(a.contains(x), 2 * count >= f.len());
            }
        }
    }
}
