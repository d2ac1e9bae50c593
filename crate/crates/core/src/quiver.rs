//! Finite quivers with relations, and paths in them.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::scalar::Scalar;

/// Suffix reserved for the reversed copy of an arrow in a doubled quiver.
pub const STAR: char = '*';

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` uses unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    NoSuchVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow name `{0}` ends with the reserved character `*`")]
    ReservedName(String),
    #[error("quiver must have at least one vertex")]
    NoVertices,
    #[error("`{0}` is not a path: consecutive arrows do not compose")]
    NotComposable(String),
    #[error("relation {index}: path `{path}` has length {len}, relations need length at least 2")]
    RelationTooShort {
        index: usize,
        path: String,
        len: usize,
    },
    #[error("relation {index}: paths are not parallel (same start and end vertex required)")]
    RelationNotParallel { index: usize },
    #[error("relation {index}: paths of different lengths (relations must be homogeneous)")]
    RelationInhomogeneous { index: usize },
    #[error("relation {index}: path `{path}` appears twice")]
    RelationDuplicateTerm { index: usize, path: String },
    #[error("relation {index}: zero coefficient")]
    RelationZeroCoefficient { index: usize },
    #[error("relation {index} is empty")]
    RelationEmpty { index: usize },
    #[error("quiver has an oriented cycle")]
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

impl Arrow {
    pub fn new(
        name: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Arrow {
            name: name.into(),
            source: source.into(),
            target: target.into(),
        }
    }
}

/// A path, written as in composition: `[a_n, ..., a_1]` with `a_1` applied
/// first. Endpoints are never stored; ask the owning [`Quiver`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    /// The trivial path `e_v` at a vertex.
    Trivial(String),
    /// A non-empty sequence of arrow names, leftmost applied last.
    Arrows(Vec<String>),
}

impl Path {
    pub fn trivial(v: impl Into<String>) -> Self {
        Path::Trivial(v.into())
    }

    /// Builds a path from names in written order. An empty list is not a
    /// path; use [`Path::trivial`].
    pub fn arrows<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        let v: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!v.is_empty(), "use Path::trivial for the empty path");
        Path::Arrows(v)
    }

    #[allow(clippy::len_without_is_empty)] // never empty; see `is_trivial`
    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn arrow_names(&self) -> &[String] {
        match self {
            Path::Trivial(_) => &[],
            Path::Arrows(a) => a,
        }
    }

    /// Label used in dumps and reports: `e<v>` for trivial paths, arrow names
    /// joined by `.` otherwise.
    pub fn label(&self) -> String {
        match self {
            Path::Trivial(v) => format!("e{v}"),
            Path::Arrows(a) => a.join("."),
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A linear combination of parallel paths of equal length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn monomial(path: Path) -> Self {
        Relation {
            terms: vec![(crate::scalar::one(), path)],
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Common length of the terms.
    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(_, p)| p.len())
    }
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.relations == other.relations
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Validates and builds a user quiver. Arrow names may not end in `*`.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
    ) -> Result<Self, QuiverError> {
        if let Some(a) = arrows.iter().find(|a| a.name.ends_with(STAR)) {
            return Err(QuiverError::ReservedName(a.name.clone()));
        }
        Self::build(vertices, arrows, relations)
    }

    /// Like [`Quiver::new`] but admits starred names; used for doubled quivers.
    pub(crate) fn build(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
    ) -> Result<Self, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::NoVertices);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut arrow_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            for v in [&a.source, &a.target] {
                if !vertex_index.contains_key(v) {
                    return Err(QuiverError::UnknownVertex {
                        arrow: a.name.clone(),
                        vertex: v.clone(),
                    });
                }
            }
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(QuiverError::DuplicateArrow(a.name.clone()));
            }
        }
        let q = Quiver {
            vertices,
            arrows,
            relations: Vec::new(),
            vertex_index,
            arrow_index,
        };
        for (index, r) in relations.iter().enumerate() {
            q.check_relation(index, r)?;
        }
        Ok(Quiver { relations, ..q })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_position(&self, v: &str) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn arrow(&self, name: &str) -> Option<&Arrow> {
        self.arrow_index.get(name).map(|&i| &self.arrows[i])
    }

    /// Same quiver, different relations (validated).
    pub fn with_relations(&self, relations: Vec<Relation>) -> Result<Self, QuiverError> {
        Self::build(self.vertices.clone(), self.arrows.clone(), relations)
    }

    pub(crate) fn check_relation(&self, index: usize, r: &Relation) -> Result<(), QuiverError> {
        if r.terms.is_empty() {
            return Err(QuiverError::RelationEmpty { index });
        }
        let mut seen = HashSet::new();
        let mut ends: Option<(String, String)> = None;
        let mut len: Option<usize> = None;
        for (k, p) in &r.terms {
            use num_traits::Zero;
            if k.is_zero() {
                return Err(QuiverError::RelationZeroCoefficient { index });
            }
            self.check_path(p)?;
            if p.len() < 2 {
                return Err(QuiverError::RelationTooShort {
                    index,
                    path: p.label(),
                    len: p.len(),
                });
            }
            if !seen.insert(p.clone()) {
                return Err(QuiverError::RelationDuplicateTerm {
                    index,
                    path: p.label(),
                });
            }
            let pe = (self.source(p).to_string(), self.target(p).to_string());
            match &ends {
                None => ends = Some(pe),
                Some(e) if *e != pe => return Err(QuiverError::RelationNotParallel { index }),
                _ => {}
            }
            match len {
                None => len = Some(p.len()),
                Some(l) if l != p.len() => {
                    return Err(QuiverError::RelationInhomogeneous { index })
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Checks that every arrow exists and consecutive arrows compose.
    pub fn check_path(&self, p: &Path) -> Result<(), QuiverError> {
        match p {
            Path::Trivial(v) => {
                if self.vertex_index.contains_key(v) {
                    Ok(())
                } else {
                    Err(QuiverError::NoSuchVertex(v.clone()))
                }
            }
            Path::Arrows(names) => {
                let arrows = names
                    .iter()
                    .map(|n| {
                        self.arrow(n)
                            .ok_or_else(|| QuiverError::UnknownArrow(n.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                // written order: arrows[i] is applied right after arrows[i + 1]
                if arrows.windows(2).all(|w| w[0].source == w[1].target) {
                    Ok(())
                } else {
                    Err(QuiverError::NotComposable(p.label()))
                }
            }
        }
    }

    /// `s(p)`. Panics on arrows foreign to this quiver.
    pub fn source<'a>(&'a self, p: &'a Path) -> &'a str {
        match p {
            Path::Trivial(v) => v,
            Path::Arrows(a) => &self.arrow(a.last().unwrap()).expect("foreign arrow").source,
        }
    }

    /// `e(p)`. Panics on arrows foreign to this quiver.
    pub fn target<'a>(&'a self, p: &'a Path) -> &'a str {
        match p {
            Path::Trivial(v) => v,
            Path::Arrows(a) => &self.arrow(&a[0]).expect("foreign arrow").target,
        }
    }

    /// The concatenation `x·y` (first `y`, then `x`), or `None` when
    /// `e(y) != s(x)`.
    pub fn compose(&self, x: &Path, y: &Path) -> Option<Path> {
        if self.target(y) != self.source(x) {
            return None;
        }
        Some(match (x, y) {
            (Path::Trivial(_), _) => y.clone(),
            (_, Path::Trivial(_)) => x.clone(),
            (Path::Arrows(a), Path::Arrows(b)) => {
                Path::Arrows(a.iter().chain(b).cloned().collect())
            }
        })
    }

    /// Canonical order: by length, then arrow names lexicographically, then
    /// (for trivial paths) vertex declaration order.
    pub fn path_cmp(&self, a: &Path, b: &Path) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| match (a, b) {
            (Path::Trivial(u), Path::Trivial(v)) => {
                self.vertex_position(u).cmp(&self.vertex_position(v))
            }
            _ => a.arrow_names().cmp(b.arrow_names()),
        })
    }

    pub fn sources(&self) -> Vec<&str> {
        self.vertices
            .iter()
            .filter(|v| !self.arrows.iter().any(|a| &a.target == *v))
            .map(String::as_str)
            .collect()
    }

    pub fn is_source(&self, v: &str) -> bool {
        self.vertex_index.contains_key(v) && !self.arrows.iter().any(|a| a.target == v)
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.arrows {
            let s = find(&mut parent, self.vertex_index[&a.source]);
            let t = find(&mut parent, self.vertex_index[&a.target]);
            parent[s] = t;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }
}

/// True iff no nontrivial path starts and ends at the same vertex.
pub fn validate_acyclic(q: &Quiver) -> bool {
    // Kahn's algorithm on the arrow digraph; loops count as cycles.
    let n = q.vertices.len();
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in &q.arrows {
        let s = q.vertex_index[&a.source];
        let t = q.vertex_index[&a.target];
        out[s].push(t);
        indegree[t] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &t in &out[v] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                stack.push(t);
            }
        }
    }
    seen == n
}

pub fn star_name(name: &str) -> String {
    format!("{name}{STAR}")
}

/// The quiver `(Γ₀, Γ₁ ∪ Γ₁*)`, where `α: j → i` contributes `α*: i → j`.
/// Relations are not carried over.
pub fn double_quiver(q: &Quiver) -> Result<Quiver, QuiverError> {
    if !validate_acyclic(q) {
        return Err(QuiverError::Cyclic);
    }
    let mut arrows = q.arrows.clone();
    arrows.extend(
        q.arrows
            .iter()
            .map(|a| Arrow::new(star_name(&a.name), a.target.clone(), a.source.clone())),
    );
    Quiver::build(q.vertices.clone(), arrows, Vec::new())
}

/// Every path of length at most `max_len`, in canonical order.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = q
        .vertices
        .iter()
        .map(|v| Path::Trivial(v.clone()))
        .collect();
    let mut layer: Vec<Path> = Vec::new();
    for len in 1..=max_len {
        let next: Vec<Path> = if len == 1 {
            q.arrows
                .iter()
                .map(|a| Path::Arrows(vec![a.name.clone()]))
                .collect()
        } else {
            // extend on the left: new arrow applied last
            layer
                .iter()
                .flat_map(|p| {
                    let end = q.target(p);
                    q.arrows
                        .iter()
                        .filter(move |a| a.source == end)
                        .map(move |a| {
                            let mut names = vec![a.name.clone()];
                            names.extend_from_slice(p.arrow_names());
                            Path::Arrows(names)
                        })
                })
                .collect()
        };
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort_by(|a, b| q.path_cmp(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        Quiver::new(
            vs.iter().map(|s| s.to_string()).collect(),
            arrows
                .iter()
                .map(|(n, s, t)| Arrow::new(*n, *s, *t))
                .collect(),
            vec![],
        )
        .unwrap()
    }

    fn two_arrows() -> Quiver {
        quiver(&["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "3", "2")])
    }

    #[test]
    fn acyclicity() {
        assert!(validate_acyclic(&two_arrows()));
        assert!(!validate_acyclic(&quiver(&["1"], &[("a", "1", "1")])));
        let a2 = quiver(&["1", "2"], &[("alpha", "1", "2")]);
        let doubled = double_quiver(&a2).unwrap();
        assert!(!validate_acyclic(&doubled));
    }

    #[test]
    fn doubling() {
        let a2 = quiver(&["1", "2"], &[("alpha", "1", "2")]);
        let d = double_quiver(&a2).unwrap();
        assert_eq!(d.arrows()[1], Arrow::new("alpha*", "2", "1"));
        assert_eq!(
            double_quiver(&quiver(&["x"], &[])).unwrap().arrows().len(),
            0
        );
        let triangle = quiver(
            &["1", "2", "3"],
            &[("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "1", "3")],
        );
        assert_eq!(double_quiver(&triangle).unwrap().arrows().len(), 6);
        let loop_q = quiver(&["1"], &[("a", "1", "1")]);
        assert_eq!(double_quiver(&loop_q), Err(QuiverError::Cyclic));
    }

    #[test]
    fn path_enumeration() {
        let a2 = quiver(&["1", "2"], &[("alpha", "1", "2")]);
        let labels: Vec<String> = enumerate_paths(&a2, 5).iter().map(Path::label).collect();
        assert_eq!(labels, ["e1", "e2", "alpha"]);
        let labels: Vec<String> = enumerate_paths(&two_arrows(), 2)
            .iter()
            .map(Path::label)
            .collect();
        assert_eq!(labels, ["e1", "e2", "e3", "alpha", "beta"]);
        assert_eq!(enumerate_paths(&two_arrows(), 0).len(), 3);
    }

    #[test]
    fn composition_follows_written_order() {
        let q = quiver(&["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "2", "3")]);
        let a = Path::arrows(["alpha"]);
        let b = Path::arrows(["beta"]);
        assert_eq!(q.compose(&b, &a), Some(Path::arrows(["beta", "alpha"])));
        assert_eq!(q.compose(&a, &b), None);
        assert_eq!(q.compose(&a, &Path::trivial("1")), Some(a.clone()));
        assert_eq!(q.compose(&Path::trivial("1"), &a), None);
        assert_eq!(q.source(&Path::arrows(["beta", "alpha"])), "1");
        assert_eq!(q.target(&Path::arrows(["beta", "alpha"])), "3");
    }

    #[test]
    fn rejects_bad_relations() {
        let q = quiver(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")],
        );
        let short = Relation::monomial(Path::arrows(["c"]));
        assert!(matches!(
            q.with_relations(vec![short]),
            Err(QuiverError::RelationTooShort { .. })
        ));
        let mixed = Relation {
            terms: vec![
                (crate::scalar::one(), Path::arrows(["b", "a"])),
                (crate::scalar::one(), Path::arrows(["c"])),
            ],
        };
        assert!(q.with_relations(vec![mixed]).is_err());
        let bad = Relation::monomial(Path::arrows(["a", "b"]));
        assert!(matches!(
            q.with_relations(vec![bad]),
            Err(QuiverError::NotComposable(_))
        ));
    }

    #[test]
    fn sources_and_connectivity() {
        assert_eq!(two_arrows().sources(), ["1", "3"]);
        assert!(two_arrows().is_connected());
        assert!(!quiver(&["1", "2"], &[]).is_connected());
    }
}
