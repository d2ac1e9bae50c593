//! Linear maps on an algebra and the spaces of derivations, Lie derivations,
//! central elements and central-valued maps, all computed as exact
//! nullspaces.
//!
//! A map `Θ` on a `d`-dimensional algebra is flattened to a vector in `K^{d²}`
//! with coordinate `i·d + k` holding the coefficient of `b_k` in `Θ(b_i)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, FiniteDimAlgebra};
use crate::dual::DualExtensionAlgebra;
use crate::linalg::{sparse_from_map, AffineSolution, AffineSystem, Rref, SparseRow, Subspace};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpacesError {
    #[error("not a Lie derivation: fails on ({0}, {1})")]
    NotLieDerivation(String, String),
    #[error("no standard decomposition exists")]
    NoStandardDecomposition,
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("map has dimension {got}, algebra has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed map file: {0}")]
    MapFile(String),
}

/// Square matrix over the algebra basis; column `i` is `Θ(b_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    matrix: Vec<Vec<Scalar>>,
}

impl LinearMap {
    pub fn zero(dim: usize) -> Self {
        LinearMap {
            matrix: vec![vec![Scalar::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.matrix[i][i] = Scalar::one();
        }
        m
    }

    /// `images[i]` becomes `Θ(b_i)`.
    pub fn from_images(images: &[Element]) -> Self {
        let d = images.len();
        let mut m = Self::zero(d);
        for (i, img) in images.iter().enumerate() {
            assert_eq!(img.dim(), d);
            for k in 0..d {
                m.matrix[k][i] = img[k].clone();
            }
        }
        m
    }

    /// Row-major matrix, `rows[k][i]` the coefficient of `b_k` in `Θ(b_i)`.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Option<Self> {
        let d = rows.len();
        rows.iter()
            .all(|r| r.len() == d)
            .then_some(LinearMap { matrix: rows })
    }

    /// Inverse of [`LinearMap::to_vector`].
    pub fn from_vector(dim: usize, v: &SparseRow) -> Self {
        let mut m = Self::zero(dim);
        for (u, x) in v {
            m.matrix[u % dim][u / dim] = x.clone();
        }
        m
    }

    /// `x ↦ [a, x]`.
    pub fn inner(alg: &FiniteDimAlgebra, a: &Element) -> Self {
        let images: Vec<Element> = (0..alg.dim())
            .map(|i| alg.bracket(a, &alg.element(i)))
            .collect();
        Self::from_images(&images)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn entry(&self, k: usize, i: usize) -> &Scalar {
        &self.matrix[k][i]
    }

    pub fn set_entry(&mut self, k: usize, i: usize, v: Scalar) {
        self.matrix[k][i] = v;
    }

    /// `Θ(b_i)`.
    pub fn image(&self, i: usize) -> Element {
        Element::from_coeffs(self.matrix.iter().map(|r| r[i].clone()).collect())
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert_eq!(x.dim(), self.dim());
        let support = x.support();
        Element::from_coeffs(
            self.matrix
                .iter()
                .map(|r| {
                    support
                        .iter()
                        .filter(|&&i| !r[i].is_zero())
                        .fold(Scalar::zero(), |acc, &i| acc + &r[i] * &x[i])
                })
                .collect(),
        )
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let images: Vec<Element> = (0..self.dim())
            .map(|i| self.apply(&other.image(i)))
            .collect();
        Self::from_images(&images)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn to_vector(&self) -> SparseRow {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for k in 0..d {
                if !self.matrix[k][i].is_zero() {
                    out.push((i * d + k, self.matrix[k][i].clone()));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn to_file(&self, alg: &FiniteDimAlgebra) -> LinearMapFile {
        LinearMapFile {
            basis: alg.labels(),
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(scalar::to_fraction_string).collect())
                .collect(),
        }
    }

    /// Reads a map file whose basis must match `alg` exactly.
    pub fn from_file(file: &LinearMapFile, alg: &FiniteDimAlgebra) -> Result<Self, SpacesError> {
        if file.basis != alg.labels() {
            return Err(SpacesError::MapFile(format!(
                "basis [{}] does not match the algebra basis [{}]",
                file.basis.join(", "),
                alg.labels().join(", ")
            )));
        }
        let rows = file
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        scalar::parse_scalar(s).map_err(|e| SpacesError::MapFile(e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != alg.dim() {
            return Err(SpacesError::DimensionMismatch {
                expected: alg.dim(),
                got: rows.len(),
            });
        }
        Self::from_rows(rows).ok_or_else(|| SpacesError::MapFile("matrix is not square".into()))
    }
}

impl std::ops::Add for &LinearMap {
    type Output = LinearMap;
    fn add(self, rhs: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self
                .matrix
                .iter()
                .zip(&rhs.matrix)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }
}

impl std::ops::Sub for &LinearMap {
    type Output = LinearMap;
    fn sub(self, rhs: &LinearMap) -> LinearMap {
        self + &rhs.scale(&-Scalar::one())
    }
}

/// JSON form of a map: `{"basis": [...], "matrix": [["p/q", ...], ...]}`,
/// row-major, column `i` the image of `b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMapFile {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

/// A space of linear maps, kept as a basis of independent maps.
#[derive(Clone, Debug)]
pub struct MapSpace {
    dim: usize,
    basis: Vec<LinearMap>,
    span: Subspace,
}

impl MapSpace {
    fn from_vectors(dim: usize, vectors: Vec<SparseRow>) -> Self {
        let span = Subspace::span(dim * dim, vectors.iter().cloned());
        debug_assert_eq!(span.dim(), vectors.len());
        MapSpace {
            dim,
            basis: vectors
                .iter()
                .map(|v| LinearMap::from_vector(dim, v))
                .collect(),
            span,
        }
    }

    fn from_subspace(dim: usize, span: Subspace) -> Self {
        MapSpace {
            dim,
            basis: span
                .basis()
                .iter()
                .map(|v| LinearMap::from_vector(dim, v))
                .collect(),
            span,
        }
    }

    /// Dimension of the underlying algebra.
    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the space itself.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LinearMap] {
        &self.basis
    }

    pub fn contains(&self, m: &LinearMap) -> bool {
        self.span.contains(&m.to_vector())
    }

    pub fn is_subspace_of(&self, other: &MapSpace) -> bool {
        self.span.is_subspace_of(&other.span)
    }

    pub fn intersection(&self, other: &MapSpace) -> MapSpace {
        Self::from_subspace(self.dim, self.span.intersection(&other.span))
    }

    pub fn to_dump(&self, alg: &FiniteDimAlgebra) -> MapSpaceDump {
        MapSpaceDump {
            basis: alg.labels(),
            dimension: self.dimension(),
            maps: self.basis.iter().map(|m| m.to_file(alg).matrix).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpaceDump {
    pub basis: Vec<String>,
    pub dimension: usize,
    pub maps: Vec<Vec<Vec<String>>>,
}

/// Row builder for equations linear in the entries of an unknown map.
struct Equations {
    d: usize,
    rows: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl Equations {
    fn new(d: usize) -> Self {
        Equations {
            d,
            rows: BTreeMap::new(),
        }
    }

    /// Adds `c · Θ(b_i)_k` to equation `k`.
    fn add(&mut self, k: usize, i: usize, l: usize, c: &Scalar) {
        let e = self
            .rows
            .entry(k)
            .or_default()
            .entry(i * self.d + l)
            .or_insert_with(Scalar::zero);
        *e += c;
    }

    fn flush(&mut self, rref: &mut Rref) {
        for (_, row) in std::mem::take(&mut self.rows) {
            let row = sparse_from_map(row);
            if !row.is_empty() {
                rref.insert(row);
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Law {
    Product,
    Bracket,
}

fn law_product(alg: &FiniteDimAlgebra, law: Law, i: usize, j: usize) -> SparseRow {
    match law {
        Law::Product => alg.structure_constants(i, j).clone(),
        Law::Bracket => {
            let mut acc = BTreeMap::new();
            for (k, v) in alg.structure_constants(i, j) {
                *acc.entry(*k).or_insert_with(Scalar::zero) += v;
            }
            for (k, v) in alg.structure_constants(j, i) {
                *acc.entry(*k).or_insert_with(Scalar::zero) -= v;
            }
            sparse_from_map(acc)
        }
    }
}

/// Adds the equations `Θ(b_i ∘ b_j) - Θ(b_i) ∘ b_j - b_i ∘ Θ(b_j) = 0`.
fn add_law(alg: &FiniteDimAlgebra, law: Law, i: usize, j: usize, eqs: &mut Equations) {
    let d = alg.dim();
    let neg = -Scalar::one();
    for (m, c) in &law_product(alg, law, i, j) {
        for k in 0..d {
            eqs.add(k, *m, k, c);
        }
    }
    for l in 0..d {
        for (k, c) in &law_product(alg, law, l, j) {
            eqs.add(*k, i, l, &(c * &neg));
        }
        for (k, c) in &law_product(alg, law, i, l) {
            eqs.add(*k, j, l, &(c * &neg));
        }
    }
}

/// Adds `[Θ(b_i), b_j] = 0` for all `i, j`: every image is central.
fn add_central_images(alg: &FiniteDimAlgebra, rref: &mut Rref) {
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            let mut eqs = Equations::new(d);
            for l in 0..d {
                for (k, c) in &law_product(alg, Law::Bracket, l, j) {
                    eqs.add(*k, i, l, c);
                }
            }
            eqs.flush(rref);
        }
    }
}

fn derivation_rref(alg: &FiniteDimAlgebra) -> Rref {
    let d = alg.dim();
    let mut rref = Rref::new(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut eqs = Equations::new(d);
            add_law(alg, Law::Product, i, j, &mut eqs);
            eqs.flush(&mut rref);
        }
    }
    rref
}

/// Maps with `Θ(ab) = Θ(a)b + aΘ(b)`, imposed on all basis pairs.
pub fn derivation_space(alg: &FiniteDimAlgebra) -> MapSpace {
    MapSpace::from_vectors(alg.dim(), derivation_rref(alg).nullspace())
}

/// Derivation law imposed only on pairs where one side is a vertex
/// idempotent or an arrow. These generate the algebra, so the result must
/// agree with [`derivation_space`].
pub fn derivation_space_from_generators(alg: &FiniteDimAlgebra) -> MapSpace {
    let d = alg.dim();
    let gens: Vec<usize> = (0..d).filter(|&i| alg.basis()[i].len() <= 1).collect();
    let mut rref = Rref::new(d * d);
    for &g in &gens {
        for j in 0..d {
            for (x, y) in [(g, j), (j, g)] {
                let mut eqs = Equations::new(d);
                add_law(alg, Law::Product, x, y, &mut eqs);
                eqs.flush(&mut rref);
            }
        }
    }
    MapSpace::from_vectors(d, rref.nullspace())
}

/// Maps with `Θ([a,b]) = [Θ(a),b] + [a,Θ(b)]`.
pub fn lie_derivation_space(alg: &FiniteDimAlgebra) -> MapSpace {
    let d = alg.dim();
    let mut rref = Rref::new(d * d);
    for i in 0..d {
        for j in i + 1..d {
            let mut eqs = Equations::new(d);
            add_law(alg, Law::Bracket, i, j, &mut eqs);
            eqs.flush(&mut rref);
        }
    }
    MapSpace::from_vectors(d, rref.nullspace())
}

/// `{x : x b_i = b_i x for all i}`.
pub fn center(alg: &FiniteDimAlgebra) -> Subspace {
    let d = alg.dim();
    let mut rref = Rref::new(d);
    for i in 0..d {
        // coordinate k of [x, b_i] = Σ_l x_l ([b_l, b_i])_k
        let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
        for l in 0..d {
            for (k, c) in law_product(alg, Law::Bracket, l, i) {
                *rows
                    .entry(k)
                    .or_default()
                    .entry(l)
                    .or_insert_with(Scalar::zero) += c;
            }
        }
        for (_, row) in rows {
            let row = sparse_from_map(row);
            if !row.is_empty() {
                rref.insert(row);
            }
        }
    }
    Subspace::span(d, rref.nullspace())
}

/// Span of all `b_i b_j - b_j b_i`.
pub fn commutator_subspace(alg: &FiniteDimAlgebra) -> Subspace {
    let d = alg.dim();
    let mut s = Subspace::zero(d);
    for i in 0..d {
        for j in i + 1..d {
            s.add(law_product(alg, Law::Bracket, i, j));
        }
    }
    s
}

/// Maps into the center that vanish on every commutator.
pub fn central_annihilating_maps(alg: &FiniteDimAlgebra) -> MapSpace {
    let d = alg.dim();
    let mut rref = Rref::new(d * d);
    for c in commutator_subspace(alg).basis() {
        let mut eqs = Equations::new(d);
        for (m, x) in &c {
            for k in 0..d {
                eqs.add(k, *m, k, x);
            }
        }
        eqs.flush(&mut rref);
    }
    add_central_images(alg, &mut rref);
    MapSpace::from_vectors(d, rref.nullspace())
}

/// Derivations whose image lies in the center.
pub fn central_image_derivations(alg: &FiniteDimAlgebra) -> MapSpace {
    let mut rref = derivation_rref(alg);
    add_central_images(alg, &mut rref);
    MapSpace::from_vectors(alg.dim(), rref.nullspace())
}

fn law_defect(alg: &FiniteDimAlgebra, m: &LinearMap, law: Law) -> Option<(usize, usize)> {
    let d = alg.dim();
    let images: Vec<SparseRow> = (0..d).map(|i| m.image(i).to_sparse()).collect();
    let one = Scalar::one();
    let neg = -Scalar::one();
    // c · op(b_i, b_j) added into acc, using the structure constants
    let op_into = |acc: &mut BTreeMap<usize, Scalar>, c: &Scalar, i: usize, j: usize| {
        for (k, v) in alg.structure_constants(i, j) {
            *acc.entry(*k).or_insert_with(Scalar::zero) += c * v;
        }
        if law == Law::Bracket {
            for (k, v) in alg.structure_constants(j, i) {
                *acc.entry(*k).or_insert_with(Scalar::zero) -= c * v;
            }
        }
    };
    for i in 0..d {
        for j in 0..d {
            if law == Law::Bracket && j <= i {
                continue;
            }
            // m(op(b_i, b_j)) - op(m(b_i), b_j) - op(b_i, m(b_j))
            let mut inner = BTreeMap::new();
            op_into(&mut inner, &one, i, j);
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, c) in inner {
                for (t, v) in &images[k] {
                    *acc.entry(*t).or_insert_with(Scalar::zero) += &c * v;
                }
            }
            for (t, a) in &images[i] {
                op_into(&mut acc, &(&neg * a), *t, j);
            }
            for (t, a) in &images[j] {
                op_into(&mut acc, &(&neg * a), i, *t);
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// First basis pair violating the derivation law.
pub fn derivation_defect(alg: &FiniteDimAlgebra, m: &LinearMap) -> Option<(usize, usize)> {
    law_defect(alg, m, Law::Product)
}

/// First basis pair `i < j` violating the Lie-derivation law.
pub fn lie_derivation_defect(alg: &FiniteDimAlgebra, m: &LinearMap) -> Option<(usize, usize)> {
    law_defect(alg, m, Law::Bracket)
}

pub fn is_derivation(alg: &FiniteDimAlgebra, m: &LinearMap) -> bool {
    m.dim() == alg.dim() && derivation_defect(alg, m).is_none()
}

pub fn is_lie_derivation(alg: &FiniteDimAlgebra, m: &LinearMap) -> bool {
    m.dim() == alg.dim() && lie_derivation_defect(alg, m).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardDecomposition {
    pub derivation: LinearMap,
    pub central: LinearMap,
    pub unique: bool,
}

impl StandardDecomposition {
    pub fn to_dump(&self, alg: &FiniteDimAlgebra) -> DecompositionDump {
        DecompositionDump {
            basis: alg.labels(),
            derivation: self.derivation.to_file(alg).matrix,
            central: self.central.to_file(alg).matrix,
            unique: self.unique,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDump {
    pub basis: Vec<String>,
    pub derivation: Vec<Vec<String>>,
    pub central: Vec<Vec<String>>,
    pub unique: bool,
}

/// Precomputed derivation and central-annihilating spaces of one algebra,
/// for splitting many maps as `Θ = D + Δ`.
pub struct Decomposer<'a> {
    alg: &'a FiniteDimAlgebra,
    der: MapSpace,
    cam: MapSpace,
    /// Rows `(g_a, e_a)` for the generators `g_a` of both spaces, with a tag
    /// column per generator. Present only when the generators are
    /// independent, so coordinates can be read off one reduction.
    tagged: Option<Rref>,
}

impl<'a> Decomposer<'a> {
    pub fn new(alg: &'a FiniteDimAlgebra) -> Self {
        let der = derivation_space(alg);
        let cam = central_annihilating_maps(alg);
        let dd = alg.dim() * alg.dim();
        let mut tagged = Rref::new(dd + der.dimension() + cam.dimension());
        let mut independent = true;
        for (a, g) in der.basis().iter().chain(cam.basis()).enumerate() {
            let mut row = g.to_vector();
            row.push((dd + a, Scalar::one()));
            tagged.insert(row);
        }
        // a pivot among the tag columns comes from a dependency
        for row in tagged.rows() {
            if row[0].0 >= dd {
                independent = false;
            }
        }
        Decomposer {
            alg,
            der,
            cam,
            tagged: independent.then_some(tagged),
        }
    }

    pub fn derivations(&self) -> &MapSpace {
        &self.der
    }

    pub fn central_annihilating(&self) -> &MapSpace {
        &self.cam
    }

    /// Solves `Θ = D + Δ`. With several solutions, the free coordinates over
    /// the two bases are set to zero.
    pub fn decompose(&self, theta: &LinearMap) -> Result<StandardDecomposition, SpacesError> {
        let d = self.alg.dim();
        if theta.dim() != d {
            return Err(SpacesError::DimensionMismatch {
                expected: d,
                got: theta.dim(),
            });
        }
        if let Some((i, j)) = lie_derivation_defect(self.alg, theta) {
            let l = self.alg.labels();
            return Err(SpacesError::NotLieDerivation(l[i].clone(), l[j].clone()));
        }
        let nd = self.der.dimension();
        let combine = |maps: &[LinearMap], coeffs: &[Scalar]| {
            maps.iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .fold(LinearMap::zero(d), |acc, (m, c)| &acc + &m.scale(c))
        };
        if let Some(tagged) = &self.tagged {
            // θ - Σ c_a g_a reduces to (0, -c) when θ is in the span
            let dd = d * d;
            let reduced = tagged.reduce(&theta.to_vector());
            if reduced.iter().any(|(u, _)| *u < dd) {
                return Err(SpacesError::NoStandardDecomposition);
            }
            let mut coeffs = vec![Scalar::zero(); nd + self.cam.dimension()];
            for (u, v) in reduced {
                coeffs[u - dd] = -v;
            }
            return Ok(StandardDecomposition {
                derivation: combine(self.der.basis(), &coeffs[..nd]),
                central: combine(self.cam.basis(), &coeffs[nd..]),
                unique: true,
            });
        }
        let gens: Vec<&LinearMap> = self.der.basis().iter().chain(self.cam.basis()).collect();
        let mut columns: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (a, g) in gens.iter().enumerate() {
            for (u, x) in g.to_vector() {
                columns.entry(u).or_default().push((a, x));
            }
        }
        let target: BTreeMap<usize, Scalar> = theta.to_vector().into_iter().collect();
        let mut system = AffineSystem::new(gens.len());
        let zero = Scalar::zero();
        for u in 0..d * d {
            let lhs = columns.remove(&u).unwrap_or_default();
            system.add_equation(lhs, target.get(&u).unwrap_or(&zero));
        }
        let AffineSolution::Solved {
            particular,
            freedom,
        } = system.solve()
        else {
            return Err(SpacesError::NoStandardDecomposition);
        };
        Ok(StandardDecomposition {
            derivation: combine(self.der.basis(), &particular[..nd]),
            central: combine(self.cam.basis(), &particular[nd..]),
            unique: freedom == 0,
        })
    }
}

pub fn decompose_standard(
    alg: &FiniteDimAlgebra,
    theta: &LinearMap,
) -> Result<StandardDecomposition, SpacesError> {
    Decomposer::new(alg).decompose(theta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterForm {
    Skipped(String),
    Checked {
        holds: bool,
        center_dim: usize,
        candidate_dim: usize,
        /// Center basis vectors outside the candidate span.
        outside: Vec<Element>,
    },
}

/// Checks that the center lies in `span({1} ∪ {p : s(p) = e(p), p² = 0})`.
pub fn verify_center_form(dx: &DualExtensionAlgebra) -> CenterForm {
    center_form(&dx.algebra, &dx.source_quiver)
}

/// [`verify_center_form`] for an algebra over the doubled quiver of `q`.
pub fn center_form(alg: &FiniteDimAlgebra, q: &crate::quiver::Quiver) -> CenterForm {
    if q.vertices().len() < 2 {
        return CenterForm::Skipped("fewer than 2 vertices".into());
    }
    if !q.is_connected() {
        return CenterForm::Skipped("disconnected".into());
    }
    let d = alg.dim();
    let mut candidates = Subspace::zero(d);
    candidates.add(alg.unit().to_sparse());
    for i in 0..d {
        let (s, e) = alg.endpoints(i);
        if s == e && alg.basis_product(i, i).is_zero() {
            candidates.add(vec![(i, Scalar::one())]);
        }
    }
    let z = center(alg);
    let outside: Vec<Element> = z
        .basis()
        .iter()
        .filter(|v| !candidates.contains(v))
        .map(|v| Element::from_sparse(d, v))
        .collect();
    CenterForm::Checked {
        holds: outside.is_empty(),
        center_dim: z.dim(),
        candidate_dim: candidates.dim(),
        outside,
    }
}

/// Smallest product-closed subspace containing the unit, the given
/// idempotents and every commutator.
pub fn w_lower_bound(
    alg: &FiniteDimAlgebra,
    idempotents: &[Element],
) -> Result<Subspace, SpacesError> {
    let d = alg.dim();
    for (n, e) in idempotents.iter().enumerate() {
        if e.dim() != d {
            return Err(SpacesError::DimensionMismatch {
                expected: d,
                got: e.dim(),
            });
        }
        if alg.mul(e, e) != *e {
            return Err(SpacesError::NotIdempotent(n));
        }
    }
    let mut space = commutator_subspace(alg);
    space.add(alg.unit().to_sparse());
    for e in idempotents {
        space.add(e.to_sparse());
    }
    let mut members: Vec<Element> = space
        .basis()
        .iter()
        .map(|v| Element::from_sparse(d, v))
        .collect();
    let mut fresh = members.clone();
    while !fresh.is_empty() {
        let mut next = Vec::new();
        for x in &fresh {
            for y in &members {
                for p in [alg.mul(x, y), alg.mul(y, x)] {
                    if space.add(p.to_sparse()) {
                        next.push(p);
                    }
                }
            }
        }
        members.extend(next.iter().cloned());
        fresh = next;
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_path_algebra;
    use crate::dsl::parse_quiver;
    use crate::dual::build_dual_extension;

    fn point() -> FiniteDimAlgebra {
        let q = parse_quiver("quiver { vertices: 1; arrows: }").unwrap();
        build_path_algebra(&q, &[], 1).unwrap()
    }

    fn two_arrows() -> DualExtensionAlgebra {
        let q = parse_quiver("quiver { vertices: 1, 2, 3; arrows: alpha: 1 -> 2; beta: 3 -> 2; }")
            .unwrap();
        build_dual_extension(&q).unwrap()
    }

    #[test]
    fn one_dimensional_spaces() {
        let k = point();
        assert_eq!(derivation_space(&k).dimension(), 0);
        assert_eq!(lie_derivation_space(&k).dimension(), 1);
        assert_eq!(center(&k).dim(), 1);
        assert_eq!(central_annihilating_maps(&k).dimension(), 1);
        assert_eq!(central_image_derivations(&k).dimension(), 0);
        assert!(commutator_subspace(&k).is_zero());
    }

    #[test]
    fn center_of_two_arrow_dual() {
        let dx = two_arrows();
        let alg = &dx.algebra;
        let z = center(alg);
        let expect = Subspace::span(
            alg.dim(),
            [
                alg.unit().to_sparse(),
                alg.combination(&[(1, "alpha*.alpha")]).unwrap().to_sparse(),
                alg.combination(&[(1, "beta*.beta")]).unwrap().to_sparse(),
            ],
        );
        assert_eq!(z, expect);
        assert!(matches!(
            verify_center_form(&dx),
            CenterForm::Checked {
                holds: true,
                center_dim: 3,
                ..
            }
        ));
    }

    #[test]
    fn inner_maps_are_derivations() {
        let dx = two_arrows();
        let alg = &dx.algebra;
        let der = derivation_space(alg);
        for i in 0..alg.dim() {
            let ad = LinearMap::inner(alg, &alg.element(i));
            assert!(der.contains(&ad));
            assert!(is_derivation(alg, &ad));
        }
        assert!(der.is_subspace_of(&lie_derivation_space(alg)));
    }

    #[test]
    fn identity_is_not_lie() {
        let alg = two_arrows().algebra;
        assert!(!is_lie_derivation(&alg, &LinearMap::identity(alg.dim())));
        let err = decompose_standard(&alg, &LinearMap::identity(alg.dim())).unwrap_err();
        assert!(matches!(err, SpacesError::NotLieDerivation(..)));
    }

    #[test]
    fn zero_map_decomposes_to_zero() {
        let alg = two_arrows().algebra;
        let dec = decompose_standard(&alg, &LinearMap::zero(alg.dim())).unwrap();
        assert!(dec.derivation.is_zero() && dec.central.is_zero() && dec.unique);
    }

    #[test]
    fn w_bound_and_bad_idempotent() {
        let alg = two_arrows().algebra;
        let idem: Vec<Element> = alg
            .vertex_idempotents()
            .iter()
            .map(|&i| alg.element(i))
            .collect();
        assert_eq!(w_lower_bound(&alg, &idem).unwrap().dim(), alg.dim());
        let alpha = alg.combination(&[(1, "alpha")]).unwrap();
        assert_eq!(
            w_lower_bound(&alg, &[alpha]).unwrap_err(),
            SpacesError::NotIdempotent(0)
        );
        let k = point();
        assert_eq!(w_lower_bound(&k, &[k.unit().clone()]).unwrap().dim(), 1);
    }

    #[test]
    fn map_file_round_trip() {
        let alg = two_arrows().algebra;
        let m = LinearMap::inner(
            &alg,
            &alg.combination(&[(1, "alpha"), (-3, "beta*")]).unwrap(),
        );
        let f = m.to_file(&alg);
        let text = serde_json::to_string(&f).unwrap();
        let back: LinearMapFile = serde_json::from_str(&text).unwrap();
        assert_eq!(LinearMap::from_file(&back, &alg).unwrap(), m);
        let mut wrong = back.clone();
        wrong.basis.swap(0, 1);
        assert!(matches!(
            LinearMap::from_file(&wrong, &alg),
            Err(SpacesError::MapFile(_))
        ));
    }

    #[test]
    fn vector_round_trip() {
        let alg = two_arrows().algebra;
        let m = LinearMap::inner(&alg, &alg.combination(&[(2, "alpha*")]).unwrap());
        assert_eq!(LinearMap::from_vector(alg.dim(), &m.to_vector()), m);
    }

    #[test]
    fn tagged_reduction_matches_affine_solve() {
        let alg = two_arrows().algebra;
        let fast = Decomposer::new(&alg);
        assert!(fast.tagged.is_some());
        let slow = Decomposer {
            tagged: None,
            ..Decomposer::new(&alg)
        };
        for th in lie_derivation_space(&alg).basis() {
            assert_eq!(fast.decompose(th).unwrap(), slow.decompose(th).unwrap());
        }
    }
}
