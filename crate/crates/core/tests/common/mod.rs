//! Independent reference computations for the integration tests. Nothing
//! here calls the library's elimination or space builders; only the
//! structure constants and basis paths are read from it.

#![allow(dead_code)]

use std::collections::BTreeMap;

use dualext::{FiniteDimAlgebra, Path, Scalar};
use num_traits::{One, Zero};

/// Row echelon form with the pivot of each row at its *last* nonzero
/// column, rows dense and never back-reduced.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: BTreeMap<usize, Vec<Scalar>>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: BTreeMap::new(),
        }
    }

    fn reduce(&self, mut row: Vec<Scalar>) -> Vec<Scalar> {
        while let Some(c) = (0..self.n).rev().find(|&c| !row[c].is_zero()) {
            let Some(p) = self.rows.get(&c) else { break };
            let f = &row[c] / &p[c];
            for k in 0..=c {
                if !p[k].is_zero() {
                    row[k] = &row[k] - &f * &p[k];
                }
            }
        }
        row
    }

    pub fn insert(&mut self, row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.n);
        let row = self.reduce(row);
        match (0..self.n).rev().find(|&c| !row[c].is_zero()) {
            Some(c) => {
                self.rows.insert(c, row);
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, row: &[Scalar]) -> bool {
        self.reduce(row.to_vec()).iter().all(Zero::is_zero)
    }

    /// One kernel vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.n).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.n];
                x[f] = Scalar::one();
                // a pivot row only involves columns up to its pivot
                for (&p, row) in &self.rows {
                    let s = (0..p).fold(Scalar::zero(), |acc, k| acc + &row[k] * &x[k]);
                    x[p] = -s / &row[p];
                }
                x
            })
            .collect()
    }
}

pub fn rank(rows: impl IntoIterator<Item = Vec<Scalar>>, n: usize) -> usize {
    let mut e = Echelon::new(n);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn unit_vec(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

/// Product of dense vectors through the structure constants.
pub fn mul(alg: &FiniteDimAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let d = alg.dim();
    let mut out = vec![Scalar::zero(); d];
    for i in (0..d).filter(|&i| !x[i].is_zero()) {
        for j in (0..d).filter(|&j| !y[j].is_zero()) {
            for (k, v) in alg.structure_constants(i, j) {
                out[*k] += &x[i] * &y[j] * v;
            }
        }
    }
    out
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn bracket(alg: &FiniteDimAlgebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    sub(&mul(alg, x, y), &mul(alg, y, x))
}

pub fn is_zero(x: &[Scalar]) -> bool {
    x.iter().all(Zero::is_zero)
}

/// Dimension of `{T : T(xy) = T(x)y + xT(y)}` (or the bracket version),
/// from the full `d³` equation system in the unknowns `T[i][k]`, the
/// coefficient of `b_k` in `T(b_i)`.
pub fn law_nullity(alg: &FiniteDimAlgebra, bracket_law: bool) -> usize {
    let d = alg.dim();
    let prod = |i: usize, j: usize| -> Vec<Scalar> {
        let (x, y) = (unit_vec(d, i), unit_vec(d, j));
        if bracket_law {
            bracket(alg, &x, &y)
        } else {
            mul(alg, &x, &y)
        }
    };
    let table: Vec<Vec<Vec<Scalar>>> = (0..d)
        .map(|i| (0..d).map(|j| prod(i, j)).collect())
        .collect();
    let mut e = Echelon::new(d * d);
    for i in 0..d {
        for j in 0..d {
            if bracket_law && j <= i {
                continue;
            }
            // coordinate k of T(b_i b_j) - T(b_i) b_j - b_i T(b_j)
            let mut rows = vec![vec![Scalar::zero(); d * d]; d];
            for (l, c) in table[i][j].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for k in 0..d {
                    rows[k][l * d + k] += c;
                }
            }
            for t in 0..d {
                for k in 0..d {
                    let c = &table[t][j][k];
                    if !c.is_zero() {
                        rows[k][i * d + t] -= c;
                    }
                    let c = &table[i][t][k];
                    if !c.is_zero() {
                        rows[k][j * d + t] -= c;
                    }
                }
            }
            for r in rows {
                if !is_zero(&r) {
                    e.insert(r);
                }
            }
        }
    }
    d * d - e.rank()
}

/// Basis of the center, as the kernel of `c ↦ ([c, b_j])_j`.
pub fn center_basis(alg: &FiniteDimAlgebra) -> Vec<Vec<Scalar>> {
    let d = alg.dim();
    let mut e = Echelon::new(d);
    for j in 0..d {
        let bj = unit_vec(d, j);
        let cols: Vec<Vec<Scalar>> = (0..d).map(|i| bracket(alg, &unit_vec(d, i), &bj)).collect();
        for k in 0..d {
            let row: Vec<Scalar> = cols.iter().map(|c| c[k].clone()).collect();
            if !is_zero(&row) {
                e.insert(row);
            }
        }
    }
    e.nullspace()
}

pub fn commutator_rank(alg: &FiniteDimAlgebra) -> usize {
    let d = alg.dim();
    rank(
        (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .map(|(i, j)| bracket(alg, &unit_vec(d, i), &unit_vec(d, j))),
        d,
    )
}

/// `dim Hom(X/[X, X], Z(X))`.
pub fn central_annihilating_dim(alg: &FiniteDimAlgebra) -> usize {
    center_basis(alg).len() * (alg.dim() - commutator_rank(alg))
}

fn ends(alg: &FiniteDimAlgebra, p: &Path) -> (String, String) {
    match p {
        Path::Trivial(v) => (v.clone(), v.clone()),
        Path::Arrows(names) => {
            let arrow = |n: &String| alg.quiver().arrow(n).expect("arrow exists").clone();
            // written right to left: the last arrow is applied first
            (arrow(names.last().unwrap()).source, arrow(&names[0]).target)
        }
    }
}

/// `b_i b_j` in a quotient by monomial relations: the concatenated path if
/// it is a basis path, otherwise zero.
pub fn monomial_product(alg: &FiniteDimAlgebra, i: usize, j: usize) -> Option<usize> {
    let (x, y) = (&alg.basis()[i], &alg.basis()[j]);
    let (_, y_end) = ends(alg, y);
    let (x_start, _) = ends(alg, x);
    if x_start != y_end {
        return None;
    }
    let p = match (x, y) {
        (Path::Trivial(_), _) => y.clone(),
        (_, Path::Trivial(_)) => x.clone(),
        (Path::Arrows(a), Path::Arrows(b)) => Path::Arrows(a.iter().chain(b).cloned().collect()),
    };
    alg.basis().iter().position(|q| *q == p)
}

/// Dimension of the subalgebra generated by `gens`.
pub fn generated_dim(alg: &FiniteDimAlgebra, gens: Vec<Vec<Scalar>>) -> usize {
    let d = alg.dim();
    let mut e = Echelon::new(d);
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        if e.insert(g.clone()) {
            basis.push(g);
        }
    }
    let mut start = 0;
    while start < basis.len() {
        let end = basis.len();
        for a in 0..end {
            for b in 0..end {
                if a < start && b < start {
                    continue;
                }
                let p = mul(alg, &basis[a], &basis[b]);
                if e.insert(p.clone()) {
                    basis.push(p);
                }
            }
        }
        start = end;
    }
    basis.len()
}

/// `T(x)` for a map given by its basis images.
pub fn apply(images: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    let d = x.len();
    let mut out = vec![Scalar::zero(); d];
    for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for k in 0..d {
            out[k] += c * &images[i][k];
        }
    }
    out
}

/// Whether `T` satisfies the product (or bracket) Leibniz rule on all
/// basis pairs.
pub fn satisfies_law(alg: &FiniteDimAlgebra, images: &[Vec<Scalar>], bracket_law: bool) -> bool {
    let d = alg.dim();
    let op = |x: &[Scalar], y: &[Scalar]| {
        if bracket_law {
            bracket(alg, x, y)
        } else {
            mul(alg, x, y)
        }
    };
    (0..d).all(|i| {
        (0..d).all(|j| {
            let (x, y) = (unit_vec(d, i), unit_vec(d, j));
            apply(images, &op(&x, &y)) == add(&op(&images[i], &y), &op(&x, &images[j]))
        })
    })
}

pub fn is_central(alg: &FiniteDimAlgebra, x: &[Scalar]) -> bool {
    let d = alg.dim();
    (0..d).all(|j| is_zero(&bracket(alg, x, &unit_vec(d, j))))
}
