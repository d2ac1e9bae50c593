//! Finite-dimensional quotients of path algebras with exact structure
//! constants.
//!
//! The quotient `KΓ/⟨ρ⟩` is built degree by degree. Relations are
//! homogeneous, so the ideal is graded and its degree-`ℓ` part is spanned by
//! the degree-`ℓ` relations together with arrow multiples of the degree
//! `ℓ-1` part. Paths containing a path that is itself in the ideal are zero
//! and never become columns; the remaining paths are row reduced with pivots
//! taken in canonical path order, and the non-pivot paths form the basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{sparse_from_dense, sparse_from_map, Rref, SparseRow};
use crate::quiver::{Path, Quiver, QuiverError, Relation};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("not finite-dimensional within length bound {0}")]
    NotFiniteDimensional(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("multiplication is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("malformed algebra dump: {0}")]
    Dump(String),
}

/// Coefficient vector over the basis of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.0[i] = Scalar::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        Element(coeffs)
    }

    pub fn from_sparse(dim: usize, row: &SparseRow) -> Self {
        let mut e = Self::zero(dim);
        for (i, v) in row {
            e.0[*i] = v.clone();
        }
        e
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_sparse(&self) -> SparseRow {
        sparse_from_dense(&self.0)
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        Element(self.0.iter().map(|x| x * k).collect())
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| !self.0[i].is_zero())
            .collect()
    }
}

impl std::ops::Index<usize> for Element {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim());
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim());
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Scalar> for &Element {
    type Output = Element;
    fn mul(self, k: &Scalar) -> Element {
        self.scale(k)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    quiver: Quiver,
    basis: Vec<Path>,
    /// `table[i][j]` is `b_i · b_j`.
    table: Vec<Vec<SparseRow>>,
    unit: Element,
    vertex_idempotents: Vec<usize>,
    source: Vec<usize>,
    target: Vec<usize>,
}

impl FiniteDimAlgebra {
    /// Assembles an algebra from explicit structure constants without
    /// checking associativity. Every vertex must contribute its trivial path
    /// to the basis.
    pub fn from_structure_constants(
        quiver: Quiver,
        basis: Vec<Path>,
        table: Vec<Vec<SparseRow>>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis.len();
        if table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::Dump("table is not dim × dim".into()));
        }
        if table
            .iter()
            .flatten()
            .flatten()
            .any(|(k, v)| *k >= dim || v.is_zero())
        {
            return Err(AlgebraError::Dump("structure constant out of range".into()));
        }
        for p in &basis {
            quiver.check_path(p)?;
        }
        let mut vertex_idempotents = Vec::new();
        for v in quiver.vertices() {
            let t = Path::trivial(v.clone());
            let i = basis
                .iter()
                .position(|p| *p == t)
                .ok_or_else(|| AlgebraError::Dump(format!("missing trivial path e{v}")))?;
            vertex_idempotents.push(i);
        }
        let mut unit = Element::zero(dim);
        for &i in &vertex_idempotents {
            unit.0[i] = Scalar::one();
        }
        let pos = |v: &str| quiver.vertex_position(v).unwrap();
        let source = basis.iter().map(|p| pos(quiver.source(p))).collect();
        let target = basis.iter().map(|p| pos(quiver.target(p))).collect();
        Ok(FiniteDimAlgebra {
            quiver,
            basis,
            table,
            unit,
            vertex_idempotents,
            source,
            target,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(Path::label).collect()
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.basis.iter().position(|b| b == p)
    }

    /// Index of the basis path with this label.
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label() == label)
    }

    pub fn element(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    /// Parses `Σ k·label` style input built from `(coefficient, label)` pairs.
    pub fn combination(&self, terms: &[(i64, &str)]) -> Option<Element> {
        let mut e = Element::zero(self.dim());
        for (k, label) in terms {
            let i = self.index_of_label(label)?;
            e.0[i] += scalar::int(*k);
        }
        Some(e)
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    /// Basis index of `e_v` for each vertex, in vertex order.
    pub fn vertex_idempotents(&self) -> &[usize] {
        &self.vertex_idempotents
    }

    pub fn vertex_idempotent(&self, v: &str) -> Option<Element> {
        let pos = self.quiver.vertex_position(v)?;
        Some(self.element(self.vertex_idempotents[pos]))
    }

    /// Vertex positions `(s(b_i), e(b_i))`.
    pub fn endpoints(&self, i: usize) -> (usize, usize) {
        (self.source[i], self.target[i])
    }

    pub fn is_trivial(&self, i: usize) -> bool {
        self.basis[i].is_trivial()
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> &SparseRow {
        &self.table[i][j]
    }

    fn check_dim(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            })
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.mul(x, y))
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket(x, y))
    }

    /// Product; panics on a dimension mismatch.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        assert_eq!(x.dim(), self.dim());
        assert_eq!(y.dim(), self.dim());
        let mut out = Element::zero(self.dim());
        let ys = y.support();
        for i in x.support() {
            for &j in &ys {
                let c = &x.0[i] * &y.0[j];
                for (k, v) in &self.table[i][j] {
                    out.0[k.to_owned()] += &c * v;
                }
            }
        }
        out
    }

    /// `xy - yx`; panics on a dimension mismatch.
    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        &self.mul(x, y) - &self.mul(y, x)
    }

    /// `b_i · b_j` as an element.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        Element::from_sparse(self.dim(), &self.table[i][j])
    }

    pub fn check_associativity(&self) -> bool {
        self.first_nonassociative_triple().is_none()
    }

    pub fn first_nonassociative_triple(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &self.element(k));
                    let jk = self.basis_product(j, k);
                    let right = self.mul(&self.element(i), &jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Human-readable form of an element, e.g. `2 e1 - alpha*.alpha`.
    pub fn format_element(&self, x: &Element) -> String {
        format_with_labels(&self.labels(), x)
    }

    pub fn to_dump(&self) -> AlgebraDump {
        let d = self.dim();
        let mut table = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if !self.table[i][j].is_empty() {
                    let entries = self.table[i][j]
                        .iter()
                        .map(|(k, v)| (*k, scalar::to_fraction_string(v)))
                        .collect();
                    table.push((i, j, entries));
                }
            }
        }
        AlgebraDump {
            basis: self.labels(),
            dim: d,
            table,
        }
    }

    /// Rebuilds an algebra from a dump, reading labels as paths of `quiver`.
    /// Associativity is not checked.
    pub fn from_dump(dump: &AlgebraDump, quiver: Quiver) -> Result<Self, AlgebraError> {
        if dump.basis.len() != dump.dim {
            return Err(AlgebraError::Dump(format!(
                "dim {} but {} basis labels",
                dump.dim,
                dump.basis.len()
            )));
        }
        let basis = dump
            .basis
            .iter()
            .map(|l| path_from_label(&quiver, l))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, p) in basis.iter().enumerate() {
            if basis[..i].contains(p) {
                return Err(AlgebraError::Dump(format!(
                    "duplicate basis label {}",
                    p.label()
                )));
            }
        }
        let d = dump.dim;
        let mut table = vec![vec![SparseRow::new(); d]; d];
        for (i, j, entries) in &dump.table {
            if *i >= d || *j >= d {
                return Err(AlgebraError::Dump(format!("index ({i}, {j}) out of range")));
            }
            let mut acc = BTreeMap::new();
            for (k, v) in entries {
                if *k >= d {
                    return Err(AlgebraError::Dump(format!("index {k} out of range")));
                }
                let v = scalar::parse_scalar(v).map_err(|e| AlgebraError::Dump(e.to_string()))?;
                *acc.entry(*k).or_insert_with(Scalar::zero) += v;
            }
            table[*i][*j] = sparse_from_map(acc);
        }
        Self::from_structure_constants(quiver, basis, table)
    }
}

impl fmt::Display for FiniteDimAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra of dimension {} with basis {{{}}}",
            self.dim(),
            self.labels().join(", ")
        )
    }
}

pub fn format_with_labels(labels: &[String], x: &Element) -> String {
    let mut s = String::new();
    for i in x.support() {
        let k = &x.0[i];
        let neg = k < &Scalar::zero();
        let abs = if neg { -k.clone() } else { k.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            s.push_str(&scalar::to_display_string(&abs));
            s.push(' ');
        }
        s.push_str(&labels[i]);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Reads a label produced by [`Path::label`] back as a path of `q`.
pub fn path_from_label(q: &Quiver, label: &str) -> Result<Path, QuiverError> {
    if q.arrow(label).is_some() {
        return Ok(Path::arrows([label]));
    }
    if let Some(v) = label.strip_prefix('e') {
        if q.vertex_position(v).is_some() {
            return Ok(Path::trivial(v));
        }
    }
    if label.is_empty() {
        return Err(QuiverError::UnknownArrow(String::new()));
    }
    let p = Path::arrows(label.split('.'));
    q.check_path(&p)?;
    Ok(p)
}

/// JSON form: `{"basis": [...], "dim": n, "table": [[i, j, [[k, "p/q"], ...]], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub basis: Vec<String>,
    pub dim: usize,
    pub table: Vec<TableEntry>,
}

/// `(i, j, b_i b_j)` with the product as `(k, "p/q")` pairs.
pub type TableEntry = (usize, usize, Vec<(usize, String)>);

type ArrowPath = Vec<usize>;

enum Status {
    Basis(usize),
    /// Pivot row: the path equals minus the other entries modulo the ideal.
    Reduced(SparseRow),
}

struct Degree {
    paths: Vec<ArrowPath>,
    index: HashMap<ArrowPath, usize>,
    status: Vec<Option<Status>>,
    /// Ideal rows that are not single paths, over `paths`.
    rows: Vec<SparseRow>,
}

impl Degree {
    fn is_live(&self, p: &ArrowPath) -> bool {
        self.index.get(p).is_some_and(|&c| self.status[c].is_some())
    }
}

/// Builds `K(q, relations)` keeping paths of length at most `length_bound`,
/// and fails if the quotient has anything in degree `length_bound + 1`.
pub fn build_path_algebra(
    q: &Quiver,
    relations: &[Relation],
    length_bound: usize,
) -> Result<FiniteDimAlgebra, AlgebraError> {
    for (i, r) in relations.iter().enumerate() {
        q.check_relation(i, r)?;
    }
    let arrows = q.arrows();
    let name_of = |a: usize| arrows[a].name.as_str();
    let arrow_ix: HashMap<&str, usize> = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.as_str(), i))
        .collect();
    let vpos = |v: &str| q.vertex_position(v).unwrap();
    let a_src: Vec<usize> = arrows.iter().map(|a| vpos(&a.source)).collect();
    let a_tgt: Vec<usize> = arrows.iter().map(|a| vpos(&a.target)).collect();
    // written order: p[0] is applied last
    let p_src = |p: &ArrowPath| a_src[*p.last().unwrap()];
    let p_tgt = |p: &ArrowPath| a_tgt[p[0]];
    let canonical = |x: &ArrowPath, y: &ArrowPath| {
        x.iter()
            .map(|&a| name_of(a))
            .cmp(y.iter().map(|&a| name_of(a)))
    };

    let mut rels_by_degree: BTreeMap<usize, Vec<Vec<(Scalar, ArrowPath)>>> = BTreeMap::new();
    for r in relations {
        let terms = r
            .terms
            .iter()
            .map(|(k, p)| {
                (
                    k.clone(),
                    p.arrow_names()
                        .iter()
                        .map(|n| arrow_ix[n.as_str()])
                        .collect(),
                )
            })
            .collect();
        rels_by_degree.entry(r.degree()).or_default().push(terms);
    }

    let mut basis: Vec<Path> = q
        .vertices()
        .iter()
        .map(|v| Path::trivial(v.clone()))
        .collect();
    let mut degrees: Vec<Degree> = Vec::new();
    for len in 1..=length_bound + 1 {
        let mut paths: Vec<ArrowPath> = if len == 1 {
            (0..arrows.len()).map(|a| vec![a]).collect()
        } else {
            let prev = &degrees[len - 2];
            let mut out = Vec::new();
            for p in prev.paths.iter().filter(|p| prev.is_live(p)) {
                for a in (0..arrows.len()).filter(|&a| a_src[a] == p_tgt(p)) {
                    let mut ext = vec![a];
                    ext.extend_from_slice(p);
                    if prev.is_live(&ext[..len - 1].to_vec()) {
                        out.push(ext);
                    }
                }
            }
            out
        };
        paths.sort_by(canonical);
        let index: HashMap<ArrowPath, usize> = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();

        let mut rref = Rref::new(paths.len());
        let push = |rref: &mut Rref, terms: &mut dyn Iterator<Item = (ArrowPath, Scalar)>| {
            let mut acc = BTreeMap::new();
            for (p, k) in terms {
                if let Some(&c) = index.get(&p) {
                    *acc.entry(c).or_insert_with(Scalar::zero) += k;
                }
            }
            let row = sparse_from_map(acc);
            if !row.is_empty() {
                rref.insert(row);
            }
        };
        if len >= 2 {
            let prev = &degrees[len - 2];
            for row in &prev.rows {
                let first = &prev.paths[row[0].0];
                for a in 0..arrows.len() {
                    if a_src[a] == p_tgt(first) {
                        push(
                            &mut rref,
                            &mut row.iter().map(|(c, k)| {
                                let mut ext = vec![a];
                                ext.extend_from_slice(&prev.paths[*c]);
                                (ext, k.clone())
                            }),
                        );
                    }
                    if a_tgt[a] == p_src(first) {
                        push(
                            &mut rref,
                            &mut row.iter().map(|(c, k)| {
                                let mut ext = prev.paths[*c].clone();
                                ext.push(a);
                                (ext, k.clone())
                            }),
                        );
                    }
                }
            }
        }
        for rel in rels_by_degree.get(&len).into_iter().flatten() {
            push(
                &mut rref,
                &mut rel.iter().map(|(k, p)| (p.clone(), k.clone())),
            );
        }

        let mut status: Vec<Option<Status>> = Vec::with_capacity(paths.len());
        let mut rows = Vec::new();
        for (c, p) in paths.iter().enumerate() {
            match rref.row_for_pivot(c) {
                None => {
                    if len > length_bound {
                        return Err(AlgebraError::NotFiniteDimensional(length_bound));
                    }
                    status.push(Some(Status::Basis(basis.len())));
                    basis.push(Path::Arrows(
                        p.iter().map(|&a| name_of(a).to_string()).collect(),
                    ));
                }
                Some(row) if row.len() == 1 => status.push(None),
                Some(row) => {
                    status.push(Some(Status::Reduced(row.clone())));
                    rows.push(row.clone());
                }
            }
        }
        let empty = paths.is_empty();
        degrees.push(Degree {
            paths,
            index,
            status,
            rows,
        });
        if empty {
            break;
        }
    }

    let dim = basis.len();
    let nv = q.vertices().len();
    let basis_arrows: Vec<Option<ArrowPath>> = basis
        .iter()
        .map(|p| match p {
            Path::Trivial(_) => None,
            Path::Arrows(names) => Some(names.iter().map(|n| arrow_ix[n.as_str()]).collect()),
        })
        .collect();
    let ends = |i: usize| -> (usize, usize) {
        match &basis_arrows[i] {
            None => (i, i),
            Some(p) => (p_src(p), p_tgt(p)),
        }
    };
    let normal_form = |p: &ArrowPath| -> SparseRow {
        let Some(deg) = degrees.get(p.len() - 1) else {
            return Vec::new();
        };
        let Some(&c) = deg.index.get(p) else {
            return Vec::new();
        };
        let basis_index = |c: usize| match &deg.status[c] {
            Some(Status::Basis(b)) => *b,
            _ => unreachable!("non-pivot entries are basis paths"),
        };
        match &deg.status[c] {
            None => Vec::new(),
            Some(Status::Basis(b)) => vec![(*b, Scalar::one())],
            Some(Status::Reduced(row)) => {
                let mut acc = BTreeMap::new();
                for (c2, k) in row.iter().skip(1) {
                    acc.insert(basis_index(*c2), -k.clone());
                }
                sparse_from_map(acc)
            }
        }
    };

    let mut table = vec![vec![SparseRow::new(); dim]; dim];
    for i in 0..dim {
        let (si, _) = ends(i);
        for j in 0..dim {
            let (_, tj) = ends(j);
            if tj != si {
                continue;
            }
            table[i][j] = match (&basis_arrows[i], &basis_arrows[j]) {
                (None, _) => vec![(j, Scalar::one())],
                (_, None) => vec![(i, Scalar::one())],
                (Some(x), Some(y)) => {
                    let mut p = x.clone();
                    p.extend_from_slice(y);
                    if p.len() > length_bound {
                        Vec::new()
                    } else {
                        normal_form(&p)
                    }
                }
            };
        }
    }
    debug_assert!(nv <= dim);

    let alg = FiniteDimAlgebra::from_structure_constants(q.clone(), basis, table)?;
    if let Some((i, j, k)) = alg.first_nonassociative_triple() {
        let l = alg.labels();
        return Err(AlgebraError::NotAssociative(
            l[i].clone(),
            l[j].clone(),
            l[k].clone(),
        ));
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;
    use crate::quiver::{double_quiver, enumerate_paths};

    fn a2() -> Quiver {
        parse_quiver("quiver { vertices: 1, 2; arrows: alpha: 1 -> 2; }").unwrap()
    }

    #[test]
    fn a2_path_algebra() {
        let q = a2();
        let alg = build_path_algebra(&q, &[], 2).unwrap();
        assert_eq!(alg.labels(), ["e1", "e2", "alpha"]);
        let alpha = alg.element(2);
        let e1 = alg.vertex_idempotent("1").unwrap();
        assert_eq!(alg.multiply(&alpha, &e1).unwrap(), alpha);
        assert!(alg.multiply(&e1, &alpha).unwrap().is_zero());
        assert_eq!(alg.commutator(&alpha, &e1).unwrap(), alpha);
    }

    #[test]
    fn unit_is_two_sided_identity() {
        let q =
            parse_quiver("quiver { vertices: 1, 2, 3; arrows: a: 1 -> 2; b: 2 -> 3; c: 1 -> 3; }")
                .unwrap();
        let alg = build_path_algebra(&q, &[], 3).unwrap();
        for i in 0..alg.dim() {
            let x = alg.element(i);
            assert_eq!(alg.mul(alg.unit(), &x), x);
            assert_eq!(alg.mul(&x, alg.unit()), x);
        }
        // no relations: one basis element per path
        assert_eq!(alg.dim(), enumerate_paths(&q, 10).len());
    }

    #[test]
    fn doubled_quiver_needs_a_bound() {
        let d = double_quiver(&a2()).unwrap();
        assert_eq!(
            build_path_algebra(&d, &[], 4).unwrap_err(),
            AlgebraError::NotFiniteDimensional(4)
        );
    }

    #[test]
    fn dimension_mismatch() {
        let alg = build_path_algebra(&a2(), &[], 2).unwrap();
        let err = alg
            .multiply(&Element::zero(2), &alg.element(0))
            .unwrap_err();
        assert_eq!(
            err,
            AlgebraError::DimensionMismatch {
                expected: 3,
                got: 2
            }
        );
    }

    #[test]
    fn commutative_square_relation() {
        // b.a - d.c: one of the two parallel paths survives
        let q = parse_quiver(
            "quiver { vertices: 1, 2, 3, 4; arrows: a: 1 -> 2; b: 2 -> 4; c: 1 -> 3; d: 3 -> 4; relations: b.a - d.c; }",
        )
        .unwrap();
        let alg = build_path_algebra(&q, q.relations(), 3).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        let ba = alg.combination(&[(1, "b")]).unwrap();
        let a = alg.combination(&[(1, "a")]).unwrap();
        let dc = alg.mul(
            &alg.combination(&[(1, "d")]).unwrap(),
            &alg.combination(&[(1, "c")]).unwrap(),
        );
        assert_eq!(alg.mul(&ba, &a), dc);
        assert!(!dc.is_zero());
        assert!(alg.check_associativity());
    }

    #[test]
    fn corrupted_table_detected() {
        let alg = build_path_algebra(&a2(), &[], 2).unwrap();
        let mut dump = alg.to_dump();
        let entry = dump
            .table
            .iter_mut()
            .find(|(i, j, _)| (*i, *j) == (2, 0))
            .unwrap();
        entry.2[0].1 = "2/1".into();
        let bad = FiniteDimAlgebra::from_dump(&dump, a2()).unwrap();
        assert!(!bad.check_associativity());
        let one = build_path_algebra(
            &parse_quiver("quiver { vertices: x; arrows: }").unwrap(),
            &[],
            1,
        )
        .unwrap();
        assert!(one.check_associativity());
        assert_eq!(one.dim(), 1);
    }

    #[test]
    fn dump_round_trip() {
        let alg = build_path_algebra(&a2(), &[], 2).unwrap();
        let dump = alg.to_dump();
        let text = serde_json::to_string(&dump).unwrap();
        assert_eq!(
            text,
            r#"{"basis":["e1","e2","alpha"],"dim":3,"table":[[0,0,[[0,"1/1"]]],[1,1,[[1,"1/1"]]],[1,2,[[2,"1/1"]]],[2,0,[[2,"1/1"]]]]}"#
        );
        let back =
            FiniteDimAlgebra::from_dump(&serde_json::from_str(&text).unwrap(), a2()).unwrap();
        assert_eq!(back.to_dump(), dump);
    }
}
