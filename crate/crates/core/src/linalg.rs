//! Sparse exact linear algebra: an incrementally maintained reduced row
//! echelon form, nullspaces, affine solves and subspaces of `K^n`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Sorted `(column, value)` pairs with no explicit zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(row: &SparseRow, len: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

/// Collects accumulated terms into a sparse row, dropping cancellations.
pub fn sparse_from_map(map: BTreeMap<usize, Scalar>) -> SparseRow {
    map.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn lookup(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `row - factor * other`, both sorted.
fn axpy(row: &SparseRow, factor: &Scalar, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            out.push((other[j].0, -(factor * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &other[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of a growing row space.
///
/// Rows are kept fully reduced at all times, so the stored form depends only
/// on the row space and never on insertion order. The pivot of a row is its
/// smallest column.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Rows sorted by pivot column.
    pub fn rows(&self) -> Vec<&SparseRow> {
        self.pivots()
            .into_iter()
            .map(|c| &self.rows[self.pivot_row[c].unwrap()])
            .collect()
    }

    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseRow> {
        self.pivot_row[col].map(|r| &self.rows[r])
    }

    /// Remainder of `row` after eliminating every pivot column.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in row {
            match self.pivot_row[*c] {
                None => {
                    *acc.entry(*c).or_insert_with(Scalar::zero) += v;
                }
                Some(r) => {
                    for (c2, w) in &self.rows[r] {
                        if c2 != c {
                            *acc.entry(*c2).or_insert_with(Scalar::zero) -= v * w;
                        }
                    }
                }
            }
        }
        sparse_from_map(acc)
    }

    /// Adds a row to the space; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.reduce(&row);
        let Some((pivot, lead)) = reduced.first().cloned() else {
            return false;
        };
        let inv = Scalar::one() / lead;
        let new_row: SparseRow = reduced.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        for existing in self.rows.iter_mut() {
            if let Some(f) = lookup(existing, pivot).cloned() {
                *existing = axpy(existing, &f, &new_row);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free
    /// column in increasing order, each with a 1 at its free column.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        let mut vecs: BTreeMap<usize, BTreeMap<usize, Scalar>> = (0..self.ncols)
            .filter(|&c| !self.is_pivot(c))
            .map(|c| (c, BTreeMap::from([(c, Scalar::one())])))
            .collect();
        for row in &self.rows {
            let pivot = row[0].0;
            for (c, v) in row.iter().skip(1) {
                if let Some(vec) = vecs.get_mut(c) {
                    vec.insert(pivot, -v.clone());
                }
            }
        }
        vecs.into_values().map(sparse_from_map).collect()
    }
}

/// Result of solving `A x = b` by elimination on `[A | b]`.
#[derive(Clone, Debug)]
pub enum AffineSolution {
    Inconsistent,
    /// The solution with every free variable set to zero, and the dimension
    /// of the solution set.
    Solved {
        particular: Vec<Scalar>,
        freedom: usize,
    },
}

/// Accumulates equations `Σ a_u x_u = b` over `nvars` unknowns.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    nvars: usize,
    rref: Rref,
}

impl AffineSystem {
    pub fn new(nvars: usize) -> Self {
        AffineSystem {
            nvars,
            rref: Rref::new(nvars + 1),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_equation(&mut self, mut lhs: SparseRow, rhs: &Scalar) {
        if !rhs.is_zero() {
            lhs.push((self.nvars, rhs.clone()));
        }
        if !lhs.is_empty() {
            self.rref.insert(lhs);
        }
    }

    pub fn solve(&self) -> AffineSolution {
        if self.rref.is_pivot(self.nvars) {
            return AffineSolution::Inconsistent;
        }
        let mut particular = vec![Scalar::zero(); self.nvars];
        for row in self.rref.rows() {
            let pivot = row[0].0;
            if let Some(v) = lookup(row, self.nvars) {
                particular[pivot] = v.clone();
            }
        }
        AffineSolution::Solved {
            particular,
            freedom: self.nvars - self.rref.rank(),
        }
    }
}

/// A subspace of `K^n`, stored as its reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    rref: Rref,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            rref: Rref::new(ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            s.rref.insert(vec![(i, Scalar::one())]);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = SparseRow>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.rref.insert(v);
        }
        s
    }

    pub fn from_dense<'a, I: IntoIterator<Item = &'a [Scalar]>>(
        ambient: usize,
        vectors: I,
    ) -> Self {
        Self::span(ambient, vectors.into_iter().map(sparse_from_dense))
    }

    pub fn ambient_dim(&self) -> usize {
        self.rref.ncols()
    }

    pub fn dim(&self) -> usize {
        self.rref.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn add(&mut self, v: SparseRow) -> bool {
        self.rref.insert(v)
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.rref.contains(v)
    }

    pub fn contains_dense(&self, v: &[Scalar]) -> bool {
        self.contains(&sparse_from_dense(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rref.rows().into_iter().all(|r| other.contains(r))
    }

    /// Canonical basis, ordered by pivot column.
    pub fn basis(&self) -> Vec<SparseRow> {
        self.rref.rows().into_iter().cloned().collect()
    }

    pub fn basis_dense(&self) -> Vec<Vec<Scalar>> {
        let n = self.ambient_dim();
        self.rref
            .rows()
            .into_iter()
            .map(|r| dense_from_sparse(r, n))
            .collect()
    }

    /// Coordinates with respect to [`Subspace::basis`], or `None` when `v`
    /// lies outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_dense(v) {
            return None;
        }
        Some(
            self.rref
                .pivots()
                .into_iter()
                .map(|p| v[p].clone())
                .collect(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Zassenhaus: row-reduce [u | u] stacked on [w | 0]; rows whose left
        // half vanishes carry the intersection on the right.
        let n = self.ambient_dim();
        let mut big = Rref::new(2 * n);
        for r in self.rref.rows() {
            let mut row: SparseRow = r.clone();
            row.extend(r.iter().map(|(c, v)| (c + n, v.clone())));
            big.insert(row);
        }
        for r in other.rref.rows() {
            big.insert(r.clone());
        }
        let mut out = Subspace::zero(n);
        for row in big.rows() {
            if row[0].0 >= n {
                out.add(row.iter().map(|(c, v)| (c - n, v.clone())).collect());
            }
        }
        out
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.dim() == other.dim()
            && self.is_subspace_of(other)
    }
}

impl Eq for Subspace {}
