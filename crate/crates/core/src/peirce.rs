//! Peirce decomposition `X = eXe ⊕ eX(1-e) ⊕ (1-e)Xe ⊕ (1-e)X(1-e)` viewed
//! as a generalized matrix algebra `[A M; N B]`, and the block form of Lie
//! derivations and derivations.
//!
//! Block maps are stored as maps on the whole algebra composed with the
//! relevant projections, so `δ1 = π_A Θ π_A` and so on.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Element, FiniteDimAlgebra};
use crate::dual::DualExtensionAlgebra;
use crate::linalg::{AffineSolution, AffineSystem, SparseRow, Subspace};
use crate::scalar::Scalar;
use crate::spaces::{center, LinearMap};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PeirceError {
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("map does not have the block form: residual on {0}")]
    Residual(String),
    #[error("vertex {0} is not a source")]
    NotSource(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Block {
    A,
    M,
    N,
    B,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::A, Block::M, Block::N, Block::B];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `M × N → A`, `(m, n) ↦ mn`.
    MN,
    /// `N × M → B`, `(n, m) ↦ nm`.
    NM,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Module {
    M,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct PeirceView<'a> {
    alg: &'a FiniteDimAlgebra,
    e: Element,
    f: Element,
    blocks: [Subspace; 4],
    bases: [Vec<Element>; 4],
    centers: [Subspace; 2],
}

pub fn peirce_decompose<'a>(
    alg: &'a FiniteDimAlgebra,
    e: &Element,
) -> Result<PeirceView<'a>, PeirceError> {
    if e.dim() != alg.dim() || alg.mul(e, e) != *e {
        return Err(PeirceError::NotIdempotent);
    }
    let f = alg.unit() - e;
    let d = alg.dim();
    let sides = |b: Block| match b {
        Block::A => (e, e),
        Block::M => (e, &f),
        Block::N => (&f, e),
        Block::B => (&f, &f),
    };
    let blocks = Block::ALL.map(|b| {
        let (l, r) = sides(b);
        Subspace::span(
            d,
            (0..d).map(|i| alg.mul(&alg.mul(l, &alg.element(i)), r).to_sparse()),
        )
    });
    let bases: [Vec<Element>; 4] = [0, 1, 2, 3].map(|k| {
        blocks[k]
            .basis()
            .iter()
            .map(|v| Element::from_sparse(d, v))
            .collect()
    });
    let centers = [center_of(alg, &bases[0]), center_of(alg, &bases[3])];
    Ok(PeirceView {
        alg,
        e: e.clone(),
        f,
        blocks,
        bases,
        centers,
    })
}

/// Elements of `span(basis)` commuting with all of it.
fn center_of(alg: &FiniteDimAlgebra, basis: &[Element]) -> Subspace {
    let d = alg.dim();
    let mut rref = crate::linalg::Rref::new(basis.len());
    for y in basis {
        let mut rows: EquationRows = BTreeMap::new();
        for (t, x) in basis.iter().enumerate() {
            for (k, c) in alg.bracket(x, y).to_sparse() {
                rows.entry(k).or_default().insert(t, c);
            }
        }
        for row in rows.into_values() {
            rref.insert(crate::linalg::sparse_from_map(row));
        }
    }
    Subspace::span(
        d,
        rref.nullspace().into_iter().map(|coeffs| {
            coeffs
                .iter()
                .fold(Element::zero(d), |acc, (t, c)| &acc + &basis[*t].scale(c))
                .to_sparse()
        }),
    )
}

impl<'a> PeirceView<'a> {
    pub fn algebra(&self) -> &'a FiniteDimAlgebra {
        self.alg
    }

    pub fn idempotent(&self) -> &Element {
        &self.e
    }

    pub fn block(&self, b: Block) -> &Subspace {
        &self.blocks[b.index()]
    }

    pub fn basis(&self, b: Block) -> &[Element] {
        &self.bases[b.index()]
    }

    pub fn dims(&self) -> [usize; 4] {
        Block::ALL.map(|b| self.block(b).dim())
    }

    pub fn labels(&self, b: Block) -> Vec<String> {
        self.basis(b)
            .iter()
            .map(|x| self.alg.format_element(x))
            .collect()
    }

    pub fn project(&self, b: Block, x: &Element) -> Element {
        let (l, r) = match b {
            Block::A => (&self.e, &self.e),
            Block::M => (&self.e, &self.f),
            Block::N => (&self.f, &self.e),
            Block::B => (&self.f, &self.f),
        };
        self.alg.mul(&self.alg.mul(l, x), r)
    }

    pub fn projection_map(&self, b: Block) -> LinearMap {
        let images: Vec<Element> = (0..self.alg.dim())
            .map(|i| self.project(b, &self.alg.element(i)))
            .collect();
        LinearMap::from_images(&images)
    }

    /// First product of block basis elements landing outside its predicted
    /// block, or outside zero for mismatched blocks.
    pub fn block_closure_defect(&self) -> Option<String> {
        use Block::*;
        let target = |x: Block, y: Block| match (x, y) {
            (A, A) | (M, N) => Some(A),
            (A, M) | (M, B) => Some(M),
            (N, A) | (B, N) => Some(N),
            (N, M) | (B, B) => Some(B),
            _ => None,
        };
        for x in Block::ALL {
            for y in Block::ALL {
                for u in self.basis(x) {
                    for v in self.basis(y) {
                        let p = self.alg.mul(u, v);
                        let ok = match target(x, y) {
                            Some(t) => self.block(t).contains(&p.to_sparse()),
                            None => p.is_zero(),
                        };
                        if !ok {
                            return Some(format!(
                                "({}) · ({}) in {x:?}·{y:?}",
                                self.alg.format_element(u),
                                self.alg.format_element(v)
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    /// Image of `M × N → A` or `N × M → B`.
    pub fn pairing_image(&self, side: Pairing) -> Subspace {
        let (x, y) = match side {
            Pairing::MN => (Block::M, Block::N),
            Pairing::NM => (Block::N, Block::M),
        };
        let mut s = Subspace::zero(self.alg.dim());
        for u in self.basis(x) {
            for v in self.basis(y) {
                s.add(self.alg.mul(u, v).to_sparse());
            }
        }
        s
    }

    /// Annihilator of `M` or `N` in its acting algebra on the given side:
    /// `(M, Left)` is `{a ∈ A : aM = 0}`, `(M, Right)` is `{b ∈ B : Mb = 0}`,
    /// `(N, Left)` is `{b ∈ B : bN = 0}`, `(N, Right)` is `{a ∈ A : Na = 0}`.
    pub fn bimodule_annihilator(&self, module: Module, side: Side) -> Subspace {
        let (acting, module_block) = match (module, side) {
            (Module::M, Side::Left) => (Block::A, Block::M),
            (Module::M, Side::Right) => (Block::B, Block::M),
            (Module::N, Side::Left) => (Block::B, Block::N),
            (Module::N, Side::Right) => (Block::A, Block::N),
        };
        let acts = self.basis(acting);
        let d = self.alg.dim();
        let mut rref = crate::linalg::Rref::new(acts.len());
        for m in self.basis(module_block) {
            let mut rows: EquationRows = BTreeMap::new();
            for (t, a) in acts.iter().enumerate() {
                let p = match side {
                    Side::Left => self.alg.mul(a, m),
                    Side::Right => self.alg.mul(m, a),
                };
                for (k, c) in p.to_sparse() {
                    rows.entry(k).or_default().insert(t, c);
                }
            }
            for row in rows.into_values() {
                rref.insert(crate::linalg::sparse_from_map(row));
            }
        }
        Subspace::span(
            d,
            rref.nullspace().into_iter().map(|coeffs| {
                coeffs
                    .iter()
                    .fold(Element::zero(d), |acc, (t, c)| &acc + &acts[*t].scale(c))
                    .to_sparse()
            }),
        )
    }

    /// Center of the corner algebra `A` or `B`.
    /// Center of the corner algebra `A` or `B`.
    pub fn corner_center(&self, b: Block) -> &Subspace {
        match b {
            Block::A => &self.centers[0],
            Block::B => &self.centers[1],
            _ => panic!("only A and B are corner algebras"),
        }
    }
}

/// Components of a map in block form; each is a map on the whole algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMapData {
    pub delta1: LinearMap,
    pub mu1: LinearMap,
    pub tau2: LinearMap,
    pub nu3: LinearMap,
    pub delta4: LinearMap,
    pub mu4: LinearMap,
    pub m0: Element,
    pub n0: Element,
}

impl BlockMapData {
    /// The value of the block formula at `x = a + m + n + b`.
    pub fn reassemble(&self, view: &PeirceView, x: &Element) -> Element {
        let alg = view.alg;
        let a = view.project(Block::A, x);
        let m = view.project(Block::M, x);
        let n = view.project(Block::N, x);
        let b = view.project(Block::B, x);
        let mul = |u: &Element, v: &Element| alg.mul(u, v);
        let terms = [
            // A
            self.delta1.apply(&a),
            -&mul(&m, &self.n0),
            -&mul(&self.m0, &n),
            self.delta4.apply(&b),
            // M
            mul(&a, &self.m0),
            -&mul(&self.m0, &b),
            self.tau2.apply(&m),
            // N
            mul(&self.n0, &a),
            -&mul(&b, &self.n0),
            self.nu3.apply(&n),
            // B
            self.mu1.apply(&a),
            mul(&self.n0, &m),
            mul(&n, &self.m0),
            self.mu4.apply(&b),
        ];
        terms
            .iter()
            .fold(Element::zero(alg.dim()), |acc, t| &acc + t)
    }
}

/// Reads off the block components of `Θ` and checks that the block formula
/// reproduces `Θ` exactly on every basis element.
pub fn extract_block_data(
    view: &PeirceView,
    theta: &LinearMap,
) -> Result<BlockMapData, PeirceError> {
    let p = Block::ALL.map(|b| view.projection_map(b));
    let [pa, pm, pn, pb] = &p;
    let through = |out: &LinearMap, inp: &LinearMap| out.compose(&theta.compose(inp));
    let te = theta.apply(view.idempotent());
    let data = BlockMapData {
        delta1: through(pa, pa),
        mu1: through(pb, pa),
        tau2: through(pm, pm),
        nu3: through(pn, pn),
        delta4: through(pa, pb),
        mu4: through(pb, pb),
        m0: view.project(Block::M, &te),
        n0: view.project(Block::N, &te),
    };
    for i in 0..view.alg.dim() {
        let x = view.alg.element(i);
        if data.reassemble(view, &x) != theta.apply(&x) {
            return Err(PeirceError::Residual(view.alg.labels()[i].clone()));
        }
    }
    Ok(data)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub checks: Vec<Check>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    fn record(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass: witness.is_none(),
            witness,
        });
    }
}

/// Iterates pairs from two bases, returning a description of the first pair
/// where `holds` is false.
fn first_failure<'x>(
    alg: &FiniteDimAlgebra,
    xs: &'x [Element],
    ys: &'x [Element],
    mut holds: impl FnMut(&Element, &Element) -> bool,
) -> Option<String> {
    for x in xs {
        for y in ys {
            if !holds(x, y) {
                return Some(format!(
                    "({}, {})",
                    alg.format_element(x),
                    alg.format_element(y)
                ));
            }
        }
    }
    None
}

fn central_failure(
    alg: &FiniteDimAlgebra,
    map: &LinearMap,
    domain: &[Element],
    corner: &Subspace,
) -> Option<String> {
    domain
        .iter()
        .find(|x| !corner.contains(&map.apply(x).to_sparse()))
        .map(|x| alg.format_element(x))
}

/// The block conditions satisfied by every Lie derivation.
pub fn verify_lie_block_conditions(view: &PeirceView, data: &BlockMapData) -> ConditionReport {
    let alg = view.alg;
    let (a_s, m_s, n_s, b_s) = (
        view.basis(Block::A),
        view.basis(Block::M),
        view.basis(Block::N),
        view.basis(Block::B),
    );
    let mul = |u: &Element, v: &Element| alg.mul(u, v);
    let br = |u: &Element, v: &Element| alg.bracket(u, v);
    let BlockMapData {
        delta1,
        mu1,
        tau2,
        nu3,
        delta4,
        mu4,
        ..
    } = data;
    let mut r = ConditionReport::default();
    let lie = |f: &LinearMap, xs: &[Element]| {
        first_failure(alg, xs, xs, |x, y| {
            f.apply(&br(x, y)) == &br(&f.apply(x), y) + &br(x, &f.apply(y))
        })
    };
    r.record("delta1 is a Lie derivation of A", lie(delta1, a_s));
    r.record(
        "delta1(mn) = delta4(nm) + tau2(m)n + m nu3(n)",
        first_failure(alg, m_s, n_s, |m, n| {
            delta1.apply(&mul(m, n))
                == [
                    delta4.apply(&mul(n, m)),
                    mul(&tau2.apply(m), n),
                    mul(m, &nu3.apply(n)),
                ]
                .iter()
                .fold(Element::zero(alg.dim()), |acc, t| &acc + t)
        }),
    );
    r.record("mu4 is a Lie derivation of B", lie(mu4, b_s));
    r.record(
        "mu4(nm) = mu1(mn) + n tau2(m) + nu3(n)m",
        first_failure(alg, m_s, n_s, |m, n| {
            mu4.apply(&mul(n, m))
                == [
                    mu1.apply(&mul(m, n)),
                    mul(n, &tau2.apply(m)),
                    mul(&nu3.apply(n), m),
                ]
                .iter()
                .fold(Element::zero(alg.dim()), |acc, t| &acc + t)
        }),
    );
    r.record(
        "delta4 vanishes on [B, B]",
        first_failure(alg, b_s, b_s, |b, c| delta4.apply(&br(b, c)).is_zero()),
    );
    r.record(
        "mu1 vanishes on [A, A]",
        first_failure(alg, a_s, a_s, |a, c| mu1.apply(&br(a, c)).is_zero()),
    );
    r.record(
        "tau2(am) = a tau2(m) + delta1(a)m - m mu1(a)",
        first_failure(alg, a_s, m_s, |a, m| {
            tau2.apply(&mul(a, m))
                == &(&mul(a, &tau2.apply(m)) + &mul(&delta1.apply(a), m)) - &mul(m, &mu1.apply(a))
        }),
    );
    r.record(
        "tau2(mb) = tau2(m)b + m mu4(b) - delta4(b)m",
        first_failure(alg, m_s, b_s, |m, b| {
            tau2.apply(&mul(m, b))
                == &(&mul(&tau2.apply(m), b) + &mul(m, &mu4.apply(b))) - &mul(&delta4.apply(b), m)
        }),
    );
    r.record(
        "nu3(na) = nu3(n)a + n delta1(a) - mu1(a)n",
        first_failure(alg, n_s, a_s, |n, a| {
            nu3.apply(&mul(n, a))
                == &(&mul(&nu3.apply(n), a) + &mul(n, &delta1.apply(a))) - &mul(&mu1.apply(a), n)
        }),
    );
    r.record(
        "nu3(bn) = b nu3(n) + mu4(b)n - n delta4(b)",
        first_failure(alg, b_s, n_s, |b, n| {
            nu3.apply(&mul(b, n))
                == &(&mul(b, &nu3.apply(n)) + &mul(&mu4.apply(b), n)) - &mul(n, &delta4.apply(b))
        }),
    );
    r.record(
        "delta4 maps B into Z(A)",
        central_failure(alg, delta4, b_s, view.corner_center(Block::A)),
    );
    r.record(
        "mu1 maps A into Z(B)",
        central_failure(alg, mu1, a_s, view.corner_center(Block::B)),
    );
    r
}

/// The block conditions characterizing derivations.
pub fn verify_der_block_conditions(view: &PeirceView, data: &BlockMapData) -> ConditionReport {
    let alg = view.alg;
    let (a_s, m_s, n_s, b_s) = (
        view.basis(Block::A),
        view.basis(Block::M),
        view.basis(Block::N),
        view.basis(Block::B),
    );
    let mul = |u: &Element, v: &Element| alg.mul(u, v);
    let BlockMapData {
        delta1,
        mu1,
        tau2,
        nu3,
        delta4,
        mu4,
        ..
    } = data;
    let mut r = ConditionReport::default();
    let der = |f: &LinearMap, xs: &[Element]| {
        first_failure(alg, xs, xs, |x, y| {
            f.apply(&mul(x, y)) == &mul(&f.apply(x), y) + &mul(x, &f.apply(y))
        })
    };
    r.record("delta1 is a derivation of A", der(delta1, a_s));
    r.record(
        "delta1(mn) = tau2(m)n + m nu3(n)",
        first_failure(alg, m_s, n_s, |m, n| {
            delta1.apply(&mul(m, n)) == &mul(&tau2.apply(m), n) + &mul(m, &nu3.apply(n))
        }),
    );
    r.record("mu4 is a derivation of B", der(mu4, b_s));
    r.record(
        "mu4(nm) = n tau2(m) + nu3(n)m",
        first_failure(alg, m_s, n_s, |m, n| {
            mu4.apply(&mul(n, m)) == &mul(n, &tau2.apply(m)) + &mul(&nu3.apply(n), m)
        }),
    );
    r.record(
        "tau2(am) = a tau2(m) + delta1(a)m",
        first_failure(alg, a_s, m_s, |a, m| {
            tau2.apply(&mul(a, m)) == &mul(a, &tau2.apply(m)) + &mul(&delta1.apply(a), m)
        }),
    );
    r.record(
        "tau2(mb) = tau2(m)b + m mu4(b)",
        first_failure(alg, m_s, b_s, |m, b| {
            tau2.apply(&mul(m, b)) == &mul(&tau2.apply(m), b) + &mul(m, &mu4.apply(b))
        }),
    );
    r.record(
        "nu3(na) = nu3(n)a + n delta1(a)",
        first_failure(alg, n_s, a_s, |n, a| {
            nu3.apply(&mul(n, a)) == &mul(&nu3.apply(n), a) + &mul(n, &delta1.apply(a))
        }),
    );
    r.record(
        "nu3(bn) = b nu3(n) + mu4(b)n",
        first_failure(alg, b_s, n_s, |b, n| {
            nu3.apply(&mul(b, n)) == &mul(b, &nu3.apply(n)) + &mul(&mu4.apply(b), n)
        }),
    );
    let nonzero = |f: &LinearMap| (!f.is_zero()).then(|| "nonzero".to_string());
    r.record("delta4 = 0", nonzero(delta4));
    r.record("mu1 = 0", nonzero(mu1));
    r
}

/// Maps `l_A: A → Z(A)` and `l_B: B → Z(B)` turning a Lie derivation into
/// derivation plus central part, each extended by zero off its corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardizingMaps {
    pub l_a: LinearMap,
    pub l_b: LinearMap,
    /// `h = l_A π_A + δ4 + μ1 + l_B π_B`, the central part of `Θ`.
    pub central: LinearMap,
}

/// Unknown `l: X → X` on a corner, as coefficients `l(x_t) = Σ_s v[t·r+s] x_s`.
struct CornerUnknown<'v> {
    offset: usize,
    basis: &'v [Element],
    space: &'v Subspace,
    /// Basis of the corner's center, which is where `l` takes its values.
    targets: Vec<Element>,
}

impl<'v> CornerUnknown<'v> {
    fn new(view: &'v PeirceView, b: Block, offset: usize) -> Self {
        let d = view.alg.dim();
        CornerUnknown {
            offset,
            basis: view.basis(b),
            space: view.block(b),
            targets: view
                .corner_center(b)
                .basis()
                .iter()
                .map(|v| Element::from_sparse(d, v))
                .collect(),
        }
    }

    fn nvars(&self) -> usize {
        self.basis.len() * self.targets.len()
    }

    /// Equation rows (per ambient coordinate) for `c · g(l(y))` with `y` in
    /// the corner and `g` linear.
    fn term(
        &self,
        y: &Element,
        c: &Scalar,
        g: impl Fn(&Element) -> Element,
        out: &mut EquationRows,
    ) {
        let z = self.targets.len();
        if z == 0 {
            return;
        }
        let coords = self
            .space
            .coordinates(y.coeffs())
            .expect("element lies in its corner");
        let images: Vec<SparseRow> = self.targets.iter().map(|t| g(t).to_sparse()).collect();
        for (t, yt) in coords.iter().enumerate() {
            if yt.is_zero() {
                continue;
            }
            let cy = c * yt;
            for (s, img) in images.iter().enumerate() {
                for (k, v) in img {
                    *out.entry(*k)
                        .or_default()
                        .entry(self.offset + t * z + s)
                        .or_insert_with(Scalar::zero) += &cy * v;
                }
            }
        }
    }

    fn to_map(&self, alg: &FiniteDimAlgebra, proj: &LinearMap, v: &[Scalar]) -> LinearMap {
        let d = alg.dim();
        let z = self.targets.len();
        let images: Vec<Element> = (0..self.basis.len())
            .map(|t| {
                (0..z).fold(Element::zero(d), |acc, s| {
                    &acc + &self.targets[s].scale(&v[self.offset + t * z + s])
                })
            })
            .collect();
        // l on the corner basis, extended through the projection
        let on_corner: Vec<Element> = (0..d)
            .map(|i| {
                let y = proj.apply(&alg.element(i));
                let coords = self
                    .space
                    .coordinates(y.coeffs())
                    .expect("projection lands in the corner");
                coords
                    .iter()
                    .enumerate()
                    .fold(Element::zero(d), |acc, (t, c)| &acc + &images[t].scale(c))
            })
            .collect();
        LinearMap::from_images(&on_corner)
    }
}

fn push(system: &mut AffineSystem, rows: EquationRows, rhs: &Element) {
    let mut rows = rows;
    for k in rhs.support() {
        rows.entry(k).or_default();
    }
    for (k, row) in rows {
        system.add_equation(crate::linalg::sparse_from_map(row), &rhs[k]);
    }
}

/// Equation index to sparse coefficients, before conversion to rows.
type EquationRows = BTreeMap<usize, BTreeMap<usize, Scalar>>;
/// Right-hand side of one block of equations, read off the block data.
type RhsFn<'v> = Box<dyn Fn(&BlockMapData) -> Element + Sync + 'v>;

/// Equations for `l_A`, `l_B` on a fixed view. Their left-hand sides do not
/// depend on the map, so they are set up once and reused for every map.
pub struct Standardizer<'v> {
    view: &'v PeirceView<'v>,
    la: CornerUnknown<'v>,
    lb: CornerUnknown<'v>,
    /// Equations with zero right-hand side, already eliminated.
    homogeneous: AffineSystem,
    groups: Vec<(EquationRows, RhsFn<'v>)>,
}

impl<'v> Standardizer<'v> {
    /// Sets up the conditions: `δ1 - l_A` and `μ4 - l_B` are derivations,
    /// `l_A`, `l_B` are central-valued and kill commutators, and the
    /// compatibilities with `δ4`, `μ1` and the bimodules hold.
    pub fn new(view: &'v PeirceView<'v>) -> Self {
        let alg = view.alg;
        let one = Scalar::one();
        let neg = -Scalar::one();
        let la = CornerUnknown::new(view, Block::A, 0);
        let lb = CornerUnknown::new(view, Block::B, la.nvars());
        let mut homogeneous = AffineSystem::new(la.nvars() + lb.nvars());
        let mut groups: Vec<(_, RhsFn<'v>)> = Vec::new();
        let mul = |u: &Element, v: &Element| alg.mul(u, v);
        let (m_s, n_s) = (view.basis(Block::M), view.basis(Block::N));

        for (l, own_pair) in [(&la, Pairing::MN), (&lb, Pairing::NM)] {
            let on_a = own_pair == Pairing::MN;
            let basis = l.basis;
            for x in basis {
                for y in basis {
                    // p - l is a derivation: l(x)y + x l(y) - l(xy) = p(x)y + x p(y) - p(xy)
                    let xy = mul(x, y);
                    let mut rows = BTreeMap::new();
                    l.term(x, &one, |z| mul(z, y), &mut rows);
                    l.term(y, &one, |z| mul(x, z), &mut rows);
                    l.term(&xy, &neg, |z| z.clone(), &mut rows);
                    let (x, y) = (x.clone(), y.clone());
                    groups.push((
                        rows,
                        Box::new(move |data| {
                            let p = if on_a { &data.delta1 } else { &data.mu4 };
                            &(&alg.mul(&p.apply(&x), &y) + &alg.mul(&x, &p.apply(&y)))
                                - &p.apply(&xy)
                        }),
                    ));
                }
            }
            for (i, x) in basis.iter().enumerate() {
                for y in &basis[i + 1..] {
                    // l([x, y]) = 0
                    let mut rows = BTreeMap::new();
                    l.term(&alg.bracket(x, y), &one, |z| z.clone(), &mut rows);
                    for row in rows.into_values() {
                        homogeneous
                            .add_equation(crate::linalg::sparse_from_map(row), &Scalar::zero());
                    }
                }
            }
            for m in m_s {
                for n in n_s {
                    // l_A(mn) = δ4(nm), l_B(nm) = μ1(mn)
                    let (inside, swapped) = if on_a {
                        (mul(m, n), mul(n, m))
                    } else {
                        (mul(n, m), mul(m, n))
                    };
                    let mut rows = BTreeMap::new();
                    l.term(&inside, &one, |z| z.clone(), &mut rows);
                    groups.push((
                        rows,
                        Box::new(move |data| {
                            let other = if on_a { &data.delta4 } else { &data.mu1 };
                            other.apply(&swapped)
                        }),
                    ));
                }
            }
            for x in basis {
                let cross = move |data: &BlockMapData| {
                    if on_a {
                        data.mu1.apply(x)
                    } else {
                        data.delta4.apply(x)
                    }
                };
                for m in m_s {
                    let mut rows = BTreeMap::new();
                    if on_a {
                        // l_A(a)m = m μ1(a)
                        l.term(x, &one, |z| mul(z, m), &mut rows);
                        groups.push((rows, Box::new(move |data| alg.mul(m, &cross(data)))));
                    } else {
                        // m l_B(b) = δ4(b)m
                        l.term(x, &one, |z| mul(m, z), &mut rows);
                        groups.push((rows, Box::new(move |data| alg.mul(&cross(data), m))));
                    }
                }
                for n in n_s {
                    let mut rows = BTreeMap::new();
                    if on_a {
                        // n l_A(a) = μ1(a)n
                        l.term(x, &one, |z| mul(n, z), &mut rows);
                        groups.push((rows, Box::new(move |data| alg.mul(&cross(data), n))));
                    } else {
                        // l_B(b)n = n δ4(b)
                        l.term(x, &one, |z| mul(z, n), &mut rows);
                        groups.push((rows, Box::new(move |data| alg.mul(n, &cross(data)))));
                    }
                }
            }
        }
        Standardizer {
            view,
            la,
            lb,
            homogeneous,
            groups,
        }
    }

    /// One solution, or `None` when the conditions are inconsistent.
    pub fn solve(&self, data: &BlockMapData) -> Option<StandardizingMaps> {
        let alg = self.view.alg;
        let mut system = self.homogeneous.clone();
        for (rows, rhs) in &self.groups {
            push(&mut system, rows.clone(), &rhs(data));
        }
        let AffineSolution::Solved { particular, .. } = system.solve() else {
            return None;
        };
        let l_a = self
            .la
            .to_map(alg, &self.view.projection_map(Block::A), &particular);
        let l_b = self
            .lb
            .to_map(alg, &self.view.projection_map(Block::B), &particular);
        let central = [&l_a, &data.delta4, &data.mu1, &l_b]
            .into_iter()
            .fold(LinearMap::zero(alg.dim()), |acc, m| &acc + m);
        Some(StandardizingMaps { l_a, l_b, central })
    }
}

/// [`Standardizer::solve`] for a single map.
pub fn find_standardizing_maps(
    view: &PeirceView,
    data: &BlockMapData,
) -> Option<StandardizingMaps> {
    Standardizer::new(view).solve(data)
}

/// `G(x, y) = δ1(xy) - xδ1(y) - δ1(x)y` on the `A` basis: its symmetry and
/// the identities linking it to `μ1` through `M` and `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GReport {
    /// `G` vanishes identically.
    pub zero: bool,
    pub report: ConditionReport,
}

pub fn g_defect(view: &PeirceView, delta1: &LinearMap, mu1: &LinearMap) -> GReport {
    let alg = view.alg;
    let a_s = view.basis(Block::A);
    let mul = |u: &Element, v: &Element| alg.mul(u, v);
    let d1: Vec<Element> = a_s.iter().map(|x| delta1.apply(x)).collect();
    let m1: Vec<Element> = a_s.iter().map(|x| mu1.apply(x)).collect();
    let r = a_s.len();
    // products[i][j] = a_i a_j, g[i][j] = G(a_i, a_j)
    let products: Vec<Vec<Element>> = a_s
        .iter()
        .map(|x| a_s.iter().map(|y| mul(x, y)).collect())
        .collect();
    let g: Vec<Vec<Element>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    &(&delta1.apply(&products[i][j]) - &mul(&a_s[i], &d1[j]))
                        - &mul(&d1[i], &a_s[j])
                })
                .collect()
        })
        .collect();
    let zero = g.iter().flatten().all(Element::is_zero);
    let pair = |i: usize, j: usize| {
        format!(
            "({}, {})",
            alg.format_element(&a_s[i]),
            alg.format_element(&a_s[j])
        )
    };
    let mut report = ConditionReport::default();
    let asym = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .find(|&(i, j)| g[i][j] != g[j][i]);
    report.record("G(x, y) = G(y, x)", asym.map(|(i, j)| pair(i, j)));
    let mut m_fail = None;
    let mut n_fail = None;
    let (m_s, n_s) = (view.basis(Block::M), view.basis(Block::N));
    // x m and n x for every x in A
    let am: Vec<Vec<Element>> = a_s
        .iter()
        .map(|x| m_s.iter().map(|m| mul(x, m)).collect())
        .collect();
    let na: Vec<Vec<Element>> = a_s
        .iter()
        .map(|x| n_s.iter().map(|n| mul(n, x)).collect())
        .collect();
    for i in 0..r {
        for j in 0..r {
            let gxy = &g[i][j];
            let mxy = mu1.apply(&products[i][j]);
            if m_fail.is_none() {
                for (t, m) in m_s.iter().enumerate() {
                    let rhs = &(&mul(m, &mxy) - &mul(&am[i][t], &m1[j])) - &mul(&am[j][t], &m1[i]);
                    if mul(gxy, m) != rhs {
                        m_fail = Some(format!("{} with {}", pair(i, j), alg.format_element(m)));
                        break;
                    }
                }
            }
            if n_fail.is_none() {
                for (t, n) in n_s.iter().enumerate() {
                    let rhs = &(&mul(&mxy, n) - &mul(&m1[j], &na[i][t])) - &mul(&m1[i], &na[j][t]);
                    if mul(n, gxy) != rhs {
                        n_fail = Some(format!("{} with {}", pair(i, j), alg.format_element(n)));
                        break;
                    }
                }
            }
        }
    }
    report.record("G(x, y)m = m mu1(xy) - x m mu1(y) - y m mu1(x)", m_fail);
    report.record("n G(x, y) = mu1(xy)n - mu1(y) n x - mu1(x) n y", n_fail);
    GReport { zero, report }
}

/// Checks that `Θ(p)` is central for every basis cycle `p` at the source `i`
/// with `p² = 0`.
pub fn source_cycle_space_check(
    dx: &DualExtensionAlgebra,
    vertex: &str,
    theta: &LinearMap,
) -> Result<ConditionReport, PeirceError> {
    source_cycle_check(&dx.algebra, &dx.source_quiver, vertex, theta)
}

/// [`source_cycle_space_check`] for an algebra over the doubled quiver of `q`.
pub fn source_cycle_check(
    alg: &FiniteDimAlgebra,
    q: &crate::quiver::Quiver,
    vertex: &str,
    theta: &LinearMap,
) -> Result<ConditionReport, PeirceError> {
    let pos = q
        .vertex_position(vertex)
        .ok_or_else(|| PeirceError::UnknownVertex(vertex.to_string()))?;
    if !q.is_source(vertex) {
        return Err(PeirceError::NotSource(vertex.to_string()));
    }
    let z = center(alg);
    let mut report = ConditionReport::default();
    for i in 0..alg.dim() {
        if alg.is_trivial(i) || alg.endpoints(i) != (pos, pos) || !alg.basis_product(i, i).is_zero()
        {
            continue;
        }
        let img = theta.apply(&alg.element(i));
        let witness = (!z.contains(&img.to_sparse())).then(|| alg.format_element(&img));
        report.record(&format!("image of {} is central", alg.labels()[i]), witness);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;
    use crate::dual::build_dual_extension;

    fn two_arrows() -> DualExtensionAlgebra {
        let q = parse_quiver("quiver { vertices: 1, 2, 3; arrows: alpha: 1 -> 2; beta: 3 -> 2; }")
            .unwrap();
        build_dual_extension(&q).unwrap()
    }

    #[test]
    fn unit_idempotent_gives_one_block() {
        let dx = two_arrows();
        let view = peirce_decompose(&dx.algebra, dx.algebra.unit()).unwrap();
        assert_eq!(view.dims(), [11, 0, 0, 0]);
        let m_ann = view.bimodule_annihilator(Module::M, Side::Left);
        assert_eq!(m_ann.dim(), 11);
    }

    #[test]
    fn rejects_non_idempotent() {
        let dx = two_arrows();
        let alpha = dx.algebra.combination(&[(1, "alpha")]).unwrap();
        assert_eq!(
            peirce_decompose(&dx.algebra, &alpha).unwrap_err(),
            PeirceError::NotIdempotent
        );
    }

    #[test]
    fn blocks_at_source_complement() {
        let dx = two_arrows();
        let alg = &dx.algebra;
        let e = alg.combination(&[(1, "e2"), (1, "e3")]).unwrap();
        let view = peirce_decompose(alg, &e).unwrap();
        assert_eq!(view.dims(), [5, 2, 2, 2]);
        assert_eq!(view.labels(Block::M), ["alpha", "beta*.alpha"]);
        assert_eq!(view.labels(Block::N), ["alpha*", "alpha*.beta"]);
        assert_eq!(view.labels(Block::B), ["e1", "alpha*.alpha"]);
        assert!(view.block_closure_defect().is_none());
        assert!(view.pairing_image(Pairing::MN).is_zero());
        assert!(!view.pairing_image(Pairing::NM).is_zero());
    }

    #[test]
    fn zero_map_data() {
        let dx = two_arrows();
        let alg = &dx.algebra;
        let e = alg.combination(&[(1, "e2"), (1, "e3")]).unwrap();
        let view = peirce_decompose(alg, &e).unwrap();
        let data = extract_block_data(&view, &LinearMap::zero(alg.dim())).unwrap();
        assert!(data.delta1.is_zero() && data.m0.is_zero() && data.n0.is_zero());
        assert!(verify_der_block_conditions(&view, &data).all_pass());
        assert!(verify_lie_block_conditions(&view, &data).all_pass());
        let l = find_standardizing_maps(&view, &data).unwrap();
        assert!(l.l_a.is_zero() && l.l_b.is_zero());
        assert!(g_defect(&view, &data.delta1, &data.mu1).zero);
    }

    #[test]
    fn identity_fails_lie_conditions() {
        let dx = two_arrows();
        let alg = &dx.algebra;
        let e = alg.combination(&[(1, "e2"), (1, "e3")]).unwrap();
        let view = peirce_decompose(alg, &e).unwrap();
        let data = extract_block_data(&view, &LinearMap::identity(alg.dim())).unwrap();
        assert!(!verify_lie_block_conditions(&view, &data).all_pass());
    }

    #[test]
    fn source_check_rejects_non_source() {
        let dx = two_arrows();
        let z = LinearMap::zero(dx.algebra.dim());
        assert_eq!(
            source_cycle_space_check(&dx, "2", &z).unwrap_err(),
            PeirceError::NotSource("2".into())
        );
        let r = source_cycle_space_check(&dx, "1", &z).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert!(r.all_pass());
    }
}
