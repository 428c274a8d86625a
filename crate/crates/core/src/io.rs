//! File formats for families, graphs, vertex maps and suitable indices.
//!
//! Families: JSON `{"universe": u, "one_based": bool, "sets": [[...], ...]}` or
//! plain text with one whitespace-separated set per line and `#` comments.
//! With `one_based`, labels run `1..=u` and label `u` stands for element 0.
//!
//! Graphs: JSON `{"x": [...], "y": [...], "edges": [[x, y], ...]}` or an edge
//! list headed by `bipartite <|X|> <|Y|>`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::graph::BipartiteGraph;
use crate::symmetry::VertexBijection;
use crate::translates::{
    apply_shift, cyclic_translates, validate_suitable, ShiftedFamily, SuitableIndex,
    TranslateFamily,
};

/// Maps between stored elements `0..u` and displayed labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Labels {
    pub universe: usize,
    pub one_based: bool,
}

impl Labels {
    pub fn new(universe: usize, one_based: bool) -> Self {
        Labels {
            universe,
            one_based,
        }
    }

    pub fn display(&self, e: usize) -> usize {
        if self.one_based && e == 0 {
            self.universe
        } else {
            e
        }
    }

    pub fn parse(&self, label: usize) -> Result<usize> {
        if self.one_based {
            if label == 0 || label > self.universe {
                return Err(Error::Range {
                    element: label,
                    universe: self.universe,
                });
            }
            Ok(label % self.universe)
        } else if label >= self.universe {
            Err(Error::Range {
                element: label,
                universe: self.universe,
            })
        } else {
            Ok(label)
        }
    }

    /// Sorted display labels of a stored set.
    pub fn display_set(&self, elems: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut v: Vec<usize> = elems.into_iter().map(|e| self.display(e)).collect();
        v.sort_unstable();
        v
    }

    /// `{a, b, c}` in the given order, repeats dropped after their first occurrence.
    pub fn brace(&self, tuple: &[usize]) -> String {
        let mut seen = Vec::with_capacity(tuple.len());
        for &e in tuple {
            let d = self.display(e);
            if !seen.contains(&d) {
                seen.push(d);
            }
        }
        let inner: Vec<String> = seen.iter().map(|d| d.to_string()).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuitableIndexFile {
    pub n: usize,
    #[serde(rename = "I")]
    pub indices: Vec<usize>,
    pub q: BTreeMap<String, usize>,
    pub r: usize,
}

impl SuitableIndexFile {
    pub fn from_index(index: &SuitableIndex) -> Self {
        SuitableIndexFile {
            n: index.modulus(),
            indices: index.indices().to_vec(),
            q: index.q().iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            r: index.r(),
        }
    }

    pub fn to_index(&self) -> Result<SuitableIndex> {
        let mut q = BTreeMap::new();
        for (k, &v) in &self.q {
            let key = k
                .parse()
                .map_err(|_| Error::Parse(format!("q key {k:?} is not an integer")))?;
            q.insert(key, v);
        }
        validate_suitable(self.n, &self.indices, &q, self.r)
    }
}

/// How an indexed family was built, so it can be rebuilt from a file.
/// Elements here are display labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Construction {
    Translates {
        n: usize,
        base: Vec<usize>,
    },
    Shifted {
        n: usize,
        base: Vec<usize>,
        index: SuitableIndexFile,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub universe: usize,
    #[serde(default)]
    pub one_based: bool,
    pub sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
}

impl FamilyFile {
    /// Sets sorted ascending; the list itself is sorted only for set-of-sets
    /// families, since indexed families carry meaning in their order.
    pub fn from_family(family: &SetFamily, one_based: bool) -> Self {
        let labels = Labels::new(family.universe_size(), one_based);
        let mut sets: Vec<Vec<usize>> = family
            .members()
            .iter()
            .map(|m| labels.display_set(m.iter()))
            .collect();
        if !family.allow_duplicates() {
            sets.sort();
        }
        FamilyFile {
            universe: family.universe_size(),
            one_based,
            sets,
            construction: None,
        }
    }

    pub fn from_translates(family: &TranslateFamily, one_based: bool) -> Self {
        let labels = Labels::new(family.modulus(), one_based);
        let mut file = FamilyFile::from_family(&family.to_family(), one_based);
        file.construction = Some(Construction::Translates {
            n: family.modulus(),
            base: family.base().iter().map(|&e| labels.display(e)).collect(),
        });
        file
    }

    pub fn from_shifted(family: &ShiftedFamily, one_based: bool) -> Self {
        let labels = Labels::new(family.modulus(), one_based);
        let mut file = FamilyFile::from_family(&family.to_family(), one_based);
        file.construction = Some(Construction::Shifted {
            n: family.modulus(),
            base: family
                .source()
                .base()
                .iter()
                .map(|&e| labels.display(e))
                .collect(),
            index: SuitableIndexFile::from_index(family.index()),
        });
        file
    }

    pub fn labels(&self) -> Labels {
        Labels::new(self.universe, self.one_based)
    }

    /// The sets as an indexed family in file order.
    pub fn to_family(&self) -> Result<SetFamily> {
        let labels = self.labels();
        let sets = self
            .sets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&l| labels.parse(l))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        crate::family::make_family(&sets, self.universe, true)
    }

    /// Rebuilds a translate family. Without construction metadata the first set
    /// is taken as the base; `anchor` (a display label) overrides the stored one.
    pub fn to_translates(&self, anchor: Option<usize>) -> Result<TranslateFamily> {
        let labels = self.labels();
        let (n, base) = match &self.construction {
            Some(Construction::Translates { n, base })
            | Some(Construction::Shifted { n, base, .. }) => (*n, base.clone()),
            None => {
                let first = self
                    .sets
                    .first()
                    .ok_or_else(|| Error::arg("family has no sets"))?;
                (self.universe, first.clone())
            }
        };
        if n != self.universe {
            return Err(Error::Parse(format!(
                "construction modulus {n} differs from universe {}",
                self.universe
            )));
        }
        let elems = base
            .iter()
            .map(|&l| labels.parse(l))
            .collect::<Result<Vec<_>>>()?;
        let anchor = match anchor {
            Some(a) => labels.parse(a)?,
            None => *elems.first().ok_or_else(|| Error::arg("empty base set"))?,
        };
        let family = cyclic_translates(&elems, n, anchor)?;
        if matches!(
            self.construction,
            None | Some(Construction::Translates { .. })
        ) {
            let mut expected = family.to_family().deduplicated().to_lists();
            let mut found = self.to_family()?.deduplicated().to_lists();
            expected.sort();
            found.sort();
            if expected != found {
                return Err(Error::arg(
                    "the sets are not the cyclic translates of the first set",
                ));
            }
        }
        Ok(family)
    }

    pub fn to_shifted(&self) -> Result<ShiftedFamily> {
        let Some(Construction::Shifted { index, .. }) = &self.construction else {
            return Err(Error::arg("family file carries no shift construction"));
        };
        let shifted = apply_shift(&self.to_translates(None)?, &index.to_index()?)?;
        if shifted.to_family() != self.to_family()? {
            return Err(Error::arg(
                "the sets do not match their recorded shift construction",
            ));
        }
        Ok(shifted)
    }
}

/// Plain text: one set per line, `#` starts a comment, braces and commas are
/// ignored, `{}` is the empty set. A comment of the form
/// `# universe=<u> [one-based]` supplies defaults for the arguments; without
/// any universe the largest label decides it.
pub fn parse_family_text(
    text: &str,
    universe: Option<usize>,
    one_based: bool,
) -> Result<FamilyFile> {
    let mut sets = Vec::new();
    let (mut header_universe, mut header_one_based) = (None, false);
    for (lineno, raw) in text.lines().enumerate() {
        let (line, comment) = raw.split_once('#').unwrap_or((raw, ""));
        for token in comment.split_whitespace() {
            if let Some(u) = token.strip_prefix("universe=") {
                header_universe = Some(u.parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {}: bad universe {u:?}", lineno + 1))
                })?);
            } else if token == "one-based" {
                header_one_based = true;
            }
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let set = line
            .split(|c: char| c.is_whitespace() || matches!(c, ',' | '{' | '}'))
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {}: {t:?} is not an element", lineno + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        sets.push(set);
    }
    let one_based = one_based || header_one_based;
    let max = sets.iter().flatten().copied().max();
    let universe = match (universe.or(header_universe), max) {
        (Some(u), _) => u,
        (None, Some(m)) if one_based => m,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    Ok(FamilyFile {
        universe,
        one_based,
        sets,
        construction: None,
    })
}

/// The text form read by [`parse_family_text`]: a header comment, then one
/// braced set per line. Tuples are shown in their own order with repeats
/// dropped.
pub fn family_text(labels: &Labels, tuples: &[Vec<usize>]) -> String {
    let mut out = format!("# universe={}", labels.universe);
    if labels.one_based {
        out.push_str(" one-based");
    }
    out.push('\n');
    for t in tuples {
        out.push_str(&labels.brace(t));
        out.push('\n');
    }
    out
}

/// JSON when the text starts with `{` (after whitespace), else plain text.
pub fn parse_family(text: &str, universe: Option<usize>, one_based: bool) -> Result<FamilyFile> {
    let t = text.trim_start();
    if t.starts_with('{') && t[1..].trim_start().starts_with('"') {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("family JSON: {e}")))
    } else {
        parse_family_text(text, universe, one_based)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelRepr {
    Text(String),
    Number(i64),
}

impl LabelRepr {
    fn into_string(self) -> String {
        match self {
            LabelRepr::Text(s) => s,
            LabelRepr::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub x: Vec<LabelRepr>,
    pub y: Vec<LabelRepr>,
    pub edges: Vec<(LabelRepr, LabelRepr)>,
}

impl GraphFile {
    pub fn from_graph(graph: &BipartiteGraph) -> Self {
        let text = |s: &String| LabelRepr::Text(s.clone());
        GraphFile {
            x: graph.x_labels().iter().map(text).collect(),
            y: graph.y_labels().iter().map(text).collect(),
            edges: graph
                .edges()
                .into_iter()
                .map(|(i, j)| (text(&graph.x_labels()[i]), text(&graph.y_labels()[j])))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<BipartiteGraph> {
        let xs = self.x.iter().cloned().map(LabelRepr::into_string).collect();
        let ys = self.y.iter().cloned().map(LabelRepr::into_string).collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .cloned()
            .map(|(a, b)| (a.into_string(), b.into_string()))
            .collect();
        BipartiteGraph::from_labeled_edges(xs, ys, &edges)
    }
}

/// Edge-list text: header `bipartite <nx> <ny>`, then `x_label y_label` per
/// line. Labels are collected in order of first appearance and their counts
/// must match the header.
pub fn parse_graph_text(text: &str) -> Result<BipartiteGraph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let (nx, ny) = match parts.as_slice() {
        ["bipartite", a, b] => (
            a.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad |X| in header {header:?}")))?,
            b.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad |Y| in header {header:?}")))?,
        ),
        _ => {
            return Err(Error::Parse(format!(
                "expected `bipartite <|X|> <|Y|>`, got {header:?}"
            )))
        }
    };
    let (mut xs, mut ys): (Vec<String>, Vec<String>) = (Vec::new(), Vec::new());
    let mut edges = Vec::new();
    for line in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = tokens.as_slice() else {
            return Err(Error::Parse(format!(
                "expected `x_label y_label`, got {line:?}"
            )));
        };
        if !xs.iter().any(|l| l == a) {
            xs.push(a.to_string());
        }
        if !ys.iter().any(|l| l == b) {
            ys.push(b.to_string());
        }
        edges.push((a.to_string(), b.to_string()));
    }
    if xs.len() != nx || ys.len() != ny {
        return Err(Error::Parse(format!(
            "header declares {nx}+{ny} vertices but the edges use {}+{}",
            xs.len(),
            ys.len()
        )));
    }
    BipartiteGraph::from_labeled_edges(xs, ys, &edges)
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    if text.trim_start().starts_with('{') {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        file.to_graph()
    } else {
        parse_graph_text(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionFile {
    pub map: BTreeMap<String, String>,
}

impl BijectionFile {
    pub fn from_bijection(graph: &BipartiteGraph, f: &VertexBijection) -> Self {
        let map = (0..f.len())
            .map(|v| {
                (
                    graph.label(v).to_string(),
                    graph.label(f.apply(v)).to_string(),
                )
            })
            .collect();
        BijectionFile { map }
    }

    pub fn to_bijection(&self, graph: &BipartiteGraph) -> Result<VertexBijection> {
        let ids: HashMap<&str, usize> = (0..graph.vertex_count())
            .map(|v| (graph.label(v), v))
            .collect();
        let lookup = |l: &str| {
            ids.get(l)
                .copied()
                .ok_or_else(|| Error::arg(format!("unknown vertex label {l:?}")))
        };
        if self.map.len() != graph.vertex_count() {
            return Err(Error::arg(
                "vertex map must cover every vertex exactly once",
            ));
        }
        let mut forward = vec![0; graph.vertex_count()];
        for (from, to) in &self.map {
            forward[lookup(from)?] = lookup(to)?;
        }
        VertexBijection::new(forward)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::translates::standard_shift_index;
    use crate::zoo::{canonical_swap_map, generate, GridSpec};
    use proptest::prelude::*;

    #[test]
    fn one_based_labels() {
        let l = Labels::new(7, true);
        assert_eq!(l.parse(7), Ok(0));
        assert_eq!(l.parse(1), Ok(1));
        assert!(l.parse(0).is_err());
        assert_eq!(l.display(0), 7);
        assert_eq!(l.brace(&[2, 2, 4, 0]), "{2, 4, 7}");
        assert!(Labels::new(3, false).parse(3).is_err());
    }

    #[test]
    fn text_family() {
        let f = parse_family("# comment\n1 2\n2 3 # trailing\n\n{}\n", None, false).unwrap();
        assert_eq!(f.universe, 4);
        assert_eq!(f.sets, vec![vec![1, 2], vec![2, 3], vec![]]);
        assert!(parse_family("1 x\n", None, false).is_err());
        let braced = parse_family(
            "# universe=7 one-based\n{2, 4, 7}\n{3, 5, 1}\n",
            None,
            false,
        )
        .unwrap();
        assert_eq!((braced.universe, braced.one_based), (7, true));
        assert_eq!(braced.sets[1], vec![3, 5, 1]);
        let labels = Labels::new(7, true);
        let text = family_text(&labels, &[vec![2, 2, 4, 0], vec![]]);
        assert_eq!(text, "# universe=7 one-based\n{2, 4, 7}\n{}\n");
        let back = parse_family(&text, None, false).unwrap();
        assert_eq!(
            back.to_family().unwrap().to_lists(),
            vec![vec![0, 2, 4], vec![]]
        );
        let one = parse_family("1 2 4 7\n", None, true).unwrap();
        assert_eq!(one.universe, 7);
        assert_eq!(one.to_family().unwrap().to_lists(), vec![vec![0, 1, 2, 4]]);
    }

    #[test]
    fn canonical_json_sorting() {
        let fam = crate::family::make_family(&[vec![3, 1], vec![0, 2]], 4, false).unwrap();
        let file = FamilyFile::from_family(&fam, false);
        assert_eq!(file.sets, vec![vec![0, 2], vec![1, 3]]);
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(
            json,
            r#"{"universe":4,"one_based":false,"sets":[[0,2],[1,3]]}"#
        );
    }

    #[test]
    fn translates_roundtrip_through_json() {
        let t = cyclic_translates(&[1, 2, 4, 0], 7, 1).unwrap();
        let file = FamilyFile::from_translates(&t, true);
        assert_eq!(file.sets[0], vec![1, 2, 4, 7]);
        assert_eq!(file.sets[1], vec![1, 2, 3, 5]);
        let back: FamilyFile =
            serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back.to_translates(None).unwrap(), t);

        let bare = FamilyFile {
            construction: None,
            ..file.clone()
        };
        assert_eq!(bare.to_translates(Some(1)).unwrap(), t);
        let mut broken = bare.clone();
        broken.sets[3] = vec![1, 2, 3];
        assert!(broken.to_translates(Some(1)).is_err());
    }

    #[test]
    fn shifted_roundtrip() {
        let t = cyclic_translates(&[1, 2, 4, 0], 7, 1).unwrap();
        let sf = apply_shift(&t, &standard_shift_index(7, 3, 1).unwrap()).unwrap();
        let file = FamilyFile::from_shifted(&sf, true);
        assert_eq!(file.sets[0], vec![2, 4, 7]);
        let back: FamilyFile =
            serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back.to_shifted().unwrap(), sf);
    }

    #[test]
    fn suitable_index_json() {
        let text = r#"{"n":7,"I":[0,1,2],"q":{"0":1,"1":2,"2":0},"r":2}"#;
        let file: SuitableIndexFile = serde_json::from_str(text).unwrap();
        let idx = file.to_index().unwrap();
        assert_eq!(idx, standard_shift_index(7, 3, 1).unwrap());
        assert_eq!(
            serde_json::to_string(&SuitableIndexFile::from_index(&idx)).unwrap(),
            text
        );
    }

    #[test]
    fn graph_formats() {
        let g = generate(&GridSpec::Cylinder { m: 4, n: 2 }).unwrap();
        let json = serde_json::to_string(&GraphFile::from_graph(&g)).unwrap();
        assert_eq!(parse_graph(&json).unwrap(), g);

        let numeric = r#"{"x":[0,2],"y":[1,3],"edges":[[0,1],[2,1],[2,3],[0,3]]}"#;
        assert_eq!(parse_graph(numeric).unwrap().edge_count(), 4);

        let text = "bipartite 2 2\na b\nc b\nc d\n";
        let p = parse_graph(text).unwrap();
        assert_eq!(p.x_labels(), &["a", "c"]);
        assert_eq!(p.edge_count(), 3);
        assert!(parse_graph("bipartite 3 2\na b\n").is_err());
        assert!(parse_graph("graph 1 1\n").is_err());
        assert!(parse_graph("bipartite 1 1\na a\n").is_err());
    }

    #[test]
    fn bijection_format() {
        let spec = GridSpec::Torus { m: 4, n: 4 };
        let g = generate(&spec).unwrap();
        let f = canonical_swap_map(&spec).unwrap();
        let file = BijectionFile::from_bijection(&g, &f);
        assert_eq!(file.map["(0,0)"], "(1,0)");
        let back: BijectionFile =
            serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(back.to_bijection(&g).unwrap(), f);
    }

    proptest! {
        #[test]
        fn family_json_roundtrip(u in 1usize..12, sets in proptest::collection::vec(any::<u16>(), 0..6), one_based: bool) {
            let mask = (1u128 << u) - 1;
            let fam = SetFamily::new(u, sets.iter().map(|&b| crate::ElemSet(b as u128 & mask)).collect(), true).unwrap();
            let file = FamilyFile::from_family(&fam, one_based);
            let back: FamilyFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
            prop_assert_eq!(back.to_family().unwrap(), fam);
        }
    }
}
