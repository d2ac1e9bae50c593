//! Dual extensions `D(Λ)` and generalized one-point extensions `E(Λ)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_path_algebra, AlgebraDump, AlgebraError, FiniteDimAlgebra};
use crate::quiver::{
    double_quiver, star_name, validate_acyclic, Path, Quiver, QuiverError, Relation, STAR,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("one-point extension needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("arrow {0} has no star partner")]
    NoStarPartner(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("basis path {0} does not have the expected q*p shape")]
    Shape(String),
    #[error("dimension {got} differs from the q*p count {expected}")]
    ShapeCount { expected: usize, got: usize },
}

impl From<QuiverError> for DualError {
    fn from(e: QuiverError) -> Self {
        DualError::Algebra(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    /// Relations ρ ∪ ρ* ∪ {αβ*}.
    Dual,
    /// Additionally {α*β}.
    OnePoint,
}

#[derive(Clone, Debug)]
pub struct DualExtensionAlgebra {
    pub algebra: FiniteDimAlgebra,
    pub source_quiver: Quiver,
    /// The algebra `Λ = K(Γ, ρ)` itself.
    pub base: FiniteDimAlgebra,
    pub star_map: BTreeMap<String, String>,
    /// `(q*, p)` for each basis element, with the basis element equal to `q*·p`.
    pub shape: Vec<(Path, Path)>,
    pub kind: ExtensionKind,
}

/// `(αn⋯α1)* = α1*⋯αn*`; trivial paths are fixed.
pub fn star_path(p: &Path) -> Result<Path, DualError> {
    match p {
        Path::Trivial(_) => Ok(p.clone()),
        Path::Arrows(names) => names
            .iter()
            .rev()
            .map(|n| {
                if n.ends_with(STAR) {
                    Err(DualError::NoStarPartner(n.clone()))
                } else {
                    Ok(star_name(n))
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Path::Arrows),
    }
}

fn star_relation(r: &Relation) -> Result<Relation, DualError> {
    let terms = r
        .terms
        .iter()
        .map(|(k, p)| Ok((k.clone(), star_path(p)?)))
        .collect::<Result<_, DualError>>()?;
    Ok(Relation { terms })
}

/// `Λ = K(Γ, ρ)` for an acyclic quiver.
pub fn build_base_algebra(q: &Quiver) -> Result<FiniteDimAlgebra, DualError> {
    if !validate_acyclic(q) {
        return Err(DualError::Cyclic);
    }
    // acyclic paths have fewer arrows than there are vertices
    Ok(build_path_algebra(q, q.relations(), q.vertices().len())?)
}

/// Dimension `D(Λ)` will have, computed from `Λ` alone.
pub fn dual_dimension(q: &Quiver) -> Result<usize, DualError> {
    Ok(expected_dim(
        q,
        &build_base_algebra(q)?,
        ExtensionKind::Dual,
    ))
}

pub fn build_dual_extension(q: &Quiver) -> Result<DualExtensionAlgebra, DualError> {
    build_extension(q, ExtensionKind::Dual)
}

pub fn build_one_point_extension(q: &Quiver) -> Result<DualExtensionAlgebra, DualError> {
    if q.vertices().len() < 2 {
        return Err(DualError::TooFewVertices(q.vertices().len()));
    }
    build_extension(q, ExtensionKind::OnePoint)
}

fn build_extension(q: &Quiver, kind: ExtensionKind) -> Result<DualExtensionAlgebra, DualError> {
    let base = build_base_algebra(q)?;
    let maxlen = base.basis().iter().map(Path::len).max().unwrap_or(0);
    let doubled = double_quiver(q)?;

    let mut relations: Vec<Relation> = q.relations().to_vec();
    for r in q.relations() {
        relations.push(star_relation(r)?);
    }
    for a in q.arrows() {
        for b in q.arrows() {
            // α·β* needs s(α) = e(β*) = s(β)
            if a.source == b.source {
                relations.push(Relation::monomial(Path::arrows([
                    a.name.clone(),
                    star_name(&b.name),
                ])));
            }
        }
    }
    if kind == ExtensionKind::OnePoint {
        for a in q.arrows() {
            for b in q.arrows() {
                if a.target == b.target {
                    relations.push(Relation::monomial(Path::arrows([
                        star_name(&a.name),
                        b.name.clone(),
                    ])));
                }
            }
        }
    }
    let algebra = build_path_algebra(&doubled, &relations, 2 * maxlen)?;

    let shape = algebra
        .basis()
        .iter()
        .map(|p| split_shape(&doubled, p).ok_or_else(|| DualError::Shape(p.label())))
        .collect::<Result<Vec<_>, _>>()?;
    if kind == ExtensionKind::OnePoint {
        if let Some((qs, p)) = shape
            .iter()
            .find(|(qs, p)| !qs.is_trivial() && !p.is_trivial())
        {
            return Err(DualError::Shape(format!("{}.{}", qs.label(), p.label())));
        }
    }
    let expected = expected_dim(q, &base, kind);
    if expected != algebra.dim() {
        return Err(DualError::ShapeCount {
            expected,
            got: algebra.dim(),
        });
    }
    let star_map = q
        .arrows()
        .iter()
        .map(|a| (a.name.clone(), star_name(&a.name)))
        .collect();
    Ok(DualExtensionAlgebra {
        algebra,
        source_quiver: q.clone(),
        base,
        star_map,
        shape,
        kind,
    })
}

/// `Σ_j n_j²` for `D(Λ)` where `n_j` counts Λ-basis paths ending at `j`;
/// `|Γ0| + 2·#{nontrivial Λ-basis paths}` for `E(Λ)`.
fn expected_dim(q: &Quiver, base: &FiniteDimAlgebra, kind: ExtensionKind) -> usize {
    match kind {
        ExtensionKind::Dual => {
            let mut ending = vec![0usize; q.vertices().len()];
            for i in 0..base.dim() {
                ending[base.endpoints(i).1] += 1;
            }
            ending.iter().map(|n| n * n).sum()
        }
        ExtensionKind::OnePoint => {
            let nontrivial = base.basis().iter().filter(|p| !p.is_trivial()).count();
            q.vertices().len() + 2 * nontrivial
        }
    }
}

/// Splits a path of the doubled quiver written as starred arrows followed by
/// unstarred ones.
fn split_shape(doubled: &Quiver, p: &Path) -> Option<(Path, Path)> {
    match p {
        Path::Trivial(_) => Some((p.clone(), p.clone())),
        Path::Arrows(names) => {
            let k = names.iter().take_while(|n| n.ends_with(STAR)).count();
            if names[k..].iter().any(|n| n.ends_with(STAR)) {
                return None;
            }
            let (starred, plain) = names.split_at(k);
            let as_path = |seg: &[String], at_end: bool| {
                if seg.is_empty() {
                    // trivial at the junction vertex
                    let v = if at_end {
                        doubled.source(p).to_string()
                    } else {
                        doubled.target(p).to_string()
                    };
                    Path::Trivial(v)
                } else {
                    Path::Arrows(seg.to_vec())
                }
            };
            Some((as_path(starred, false), as_path(plain, true)))
        }
    }
}

impl DualExtensionAlgebra {
    pub fn to_dump(&self) -> ExtensionDump {
        ExtensionDump {
            algebra: self.algebra.to_dump(),
            shape: self
                .shape
                .iter()
                .map(|(a, b)| (a.label(), b.label()))
                .collect(),
        }
    }

    /// Basis indices with no starred arrows: the copy of Λ.
    pub fn unstarred_indices(&self) -> Vec<usize> {
        (0..self.algebra.dim())
            .filter(|&i| {
                let (qs, _) = &self.shape[i];
                qs.is_trivial()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDump {
    #[serde(flatten)]
    pub algebra: AlgebraDump,
    pub shape: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;

    fn quiver(body: &str) -> Quiver {
        parse_quiver(&format!("quiver {{ {body} }}")).unwrap()
    }

    #[test]
    fn star_reverses() {
        let p = Path::arrows(["beta", "alpha"]);
        assert_eq!(star_path(&p).unwrap(), Path::arrows(["alpha*", "beta*"]));
        assert_eq!(star_path(&Path::trivial("1")).unwrap(), Path::trivial("1"));
        assert_eq!(
            star_path(&Path::arrows(["a"])).unwrap(),
            Path::arrows(["a*"])
        );
        assert!(matches!(
            star_path(&Path::arrows(["a*"])),
            Err(DualError::NoStarPartner(_))
        ));
    }

    #[test]
    fn two_arrows_into_one_vertex() {
        let dx = build_dual_extension(&quiver(
            "vertices: 1, 2, 3; arrows: alpha: 1 -> 2; beta: 3 -> 2;",
        ))
        .unwrap();
        let mut labels = dx.algebra.labels();
        labels.sort();
        let mut want = [
            "e1",
            "e2",
            "e3",
            "alpha",
            "beta",
            "alpha*",
            "beta*",
            "alpha*.alpha",
            "beta*.alpha",
            "beta*.beta",
            "alpha*.beta",
        ];
        want.sort();
        assert_eq!(labels, want);
        let i = dx.algebra.index_of_label("beta*.alpha").unwrap();
        assert_eq!(
            dx.shape[i],
            (Path::arrows(["beta*"]), Path::arrows(["alpha"]))
        );
        let i = dx.algebra.index_of_label("alpha").unwrap();
        assert_eq!(dx.shape[i], (Path::trivial("2"), Path::arrows(["alpha"])));
        let i = dx.algebra.index_of_label("alpha*").unwrap();
        assert_eq!(dx.shape[i], (Path::arrows(["alpha*"]), Path::trivial("2")));
    }

    #[test]
    fn zero_relation_chain() {
        let dx = build_dual_extension(&quiver(
            "vertices: 1, 2, 3; arrows: alpha: 1 -> 2; beta: 2 -> 3; relations: beta.alpha;",
        ))
        .unwrap();
        assert_eq!(dx.algebra.dim(), 9);
    }

    #[test]
    fn one_point_a2() {
        let q = quiver("vertices: 1, 2; arrows: alpha: 1 -> 2;");
        let ex = build_one_point_extension(&q).unwrap();
        assert_eq!(ex.algebra.labels(), ["e1", "e2", "alpha", "alpha*"]);
        let single = quiver("vertices: 1; arrows:");
        assert_eq!(
            build_one_point_extension(&single).unwrap_err(),
            DualError::TooFewVertices(1)
        );
        assert_eq!(build_dual_extension(&single).unwrap().algebra.dim(), 1);
    }

    #[test]
    fn cyclic_rejected() {
        let q = quiver("vertices: 1; arrows: l: 1 -> 1;");
        assert_eq!(build_dual_extension(&q).unwrap_err(), DualError::Cyclic);
    }

    #[test]
    fn dump_has_shape() {
        let dx = build_dual_extension(&quiver("vertices: 1, 2; arrows: a: 1 -> 2;")).unwrap();
        let text = serde_json::to_string(&dx.to_dump()).unwrap();
        assert!(
            text.ends_with(
                r#""shape":[["e1","e1"],["e2","e2"],["e2","a"],["a*","e2"],["a*","a"]]}"#
            ),
            "{text}"
        );
    }
}
