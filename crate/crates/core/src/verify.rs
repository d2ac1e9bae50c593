//! Runs every structural check on the dual extension and the one-point
//! extension of a quiver and collects the verdicts.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{Element, FiniteDimAlgebra};
use crate::dual::{build_dual_extension, build_one_point_extension, DualError, ExtensionKind};
use crate::linalg::Subspace;
use crate::peirce::{
    extract_block_data, find_standardizing_maps, g_defect, peirce_decompose, source_cycle_check,
    verify_der_block_conditions, verify_lie_block_conditions, Block, Module, Pairing, PeirceError,
    PeirceView, Side, Standardizer,
};
use crate::quiver::Quiver;
use crate::spaces::{
    center, center_form, central_image_derivations, derivation_space_from_generators,
    is_derivation, lie_derivation_space, w_lower_bound, CenterForm, Decomposer, LinearMap,
    StandardDecomposition,
};

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    /// `dual` or `onepoint`.
    pub algebra: String,
    pub name: String,
    /// The statement being checked.
    pub claim: String,
    pub pass: bool,
    pub skipped: bool,
    pub dims: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    /// Wall-clock time; left out of JSON so output stays byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportBundle {
    pub input: String,
    pub pass: bool,
    pub records: Vec<Record>,
}

impl ReportBundle {
    pub fn new(input: impl Into<String>, records: Vec<Record>) -> Self {
        let pass = records.iter().all(|r| r.pass);
        ReportBundle {
            input: input.into(),
            pass,
            records,
        }
    }

    pub fn failures(&self) -> Vec<&Record> {
        self.records.iter().filter(|r| !r.pass).collect()
    }

    pub fn record(&self, algebra: &str, name: &str) -> Option<&Record> {
        self.records
            .iter()
            .find(|r| r.algebra == algebra && r.name == name)
    }

    /// One line per record, with timings.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let verdict = match (r.skipped, r.pass) {
                (true, _) => "SKIP",
                (false, true) => "PASS",
                (false, false) => "FAIL",
            };
            let dims = r
                .dims
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!(
                "{verdict} [{}] {}: {} {{{dims}}} ({:.1} ms)\n",
                r.algebra,
                r.name,
                r.claim,
                r.elapsed.as_secs_f64() * 1e3
            ));
            for w in &r.witnesses {
                out.push_str(&format!("    {w}\n"));
            }
        }
        let failed = self.failures().len();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.input,
            self.records.len(),
            failed
        ));
        out
    }
}

/// Vertices `v` whose idempotents are removed: the view is taken at
/// `e = 1 - Σ e_v`. Empty means the first source of the quiver.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub vertices: Vec<String>,
}

struct Recorder {
    algebra: String,
    records: Vec<Record>,
    clock: Instant,
}

impl Recorder {
    fn push(
        &mut self,
        name: &str,
        claim: &str,
        pass: bool,
        dims: &[(&str, usize)],
        witnesses: Vec<String>,
    ) {
        self.push_full(name, claim, pass, false, dims, witnesses);
    }

    fn skip(&mut self, name: &str, claim: &str, reason: &str) {
        self.push_full(
            name,
            claim,
            true,
            true,
            &[],
            vec![format!("skipped: {reason}")],
        );
    }

    fn push_full(
        &mut self,
        name: &str,
        claim: &str,
        pass: bool,
        skipped: bool,
        dims: &[(&str, usize)],
        witnesses: Vec<String>,
    ) {
        let now = Instant::now();
        self.records.push(Record {
            algebra: self.algebra.clone(),
            name: name.to_string(),
            claim: claim.to_string(),
            pass,
            skipped,
            dims: dims.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            witnesses,
            elapsed: now - self.clock,
        });
        self.clock = now;
    }
}

pub fn kind_name(kind: ExtensionKind) -> &'static str {
    match kind {
        ExtensionKind::Dual => "dual",
        ExtensionKind::OnePoint => "onepoint",
    }
}

/// Builds `D(Λ)` and, with at least two vertices, `E(Λ)`, and checks both.
pub fn verify_quiver(
    input: &str,
    q: &Quiver,
    opts: &VerifyOptions,
) -> Result<ReportBundle, VerifyError> {
    let dx = build_dual_extension(q)?;
    let mut records = verify_algebra(&dx.algebra, q, ExtensionKind::Dual, opts)?;
    if q.vertices().len() >= 2 {
        let ex = build_one_point_extension(q)?;
        records.extend(verify_algebra(
            &ex.algebra,
            q,
            ExtensionKind::OnePoint,
            opts,
        )?);
    }
    Ok(ReportBundle::new(input, records))
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Build(#[from] DualError),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("quiver has no source vertex")]
    NoSource,
}

/// The idempotent `1 - Σ e_v`; with no vertices given, `v` is the first
/// source of `q`.
pub fn complement_idempotent(
    alg: &FiniteDimAlgebra,
    q: &Quiver,
    vertices: &[String],
) -> Result<Element, VerifyError> {
    let chosen: Vec<String> = if vertices.is_empty() {
        vec![q
            .sources()
            .first()
            .ok_or(VerifyError::NoSource)?
            .to_string()]
    } else {
        vertices.to_vec()
    };
    let mut e = alg.unit().clone();
    for v in &chosen {
        let ev = alg
            .vertex_idempotent(v)
            .ok_or_else(|| VerifyError::UnknownVertex(v.clone()))?;
        e = &e - &ev;
    }
    Ok(e)
}

fn labels_of(alg: &FiniteDimAlgebra, s: &Subspace) -> Vec<String> {
    s.basis()
        .iter()
        .map(|v| alg.format_element(&Element::from_sparse(alg.dim(), v)))
        .collect()
}

/// Checks on one algebra over the doubled quiver of `q`. Stops after the
/// associativity gate when that fails.
pub fn verify_algebra(
    alg: &FiniteDimAlgebra,
    q: &Quiver,
    kind: ExtensionKind,
    opts: &VerifyOptions,
) -> Result<Vec<Record>, VerifyError> {
    let e = complement_idempotent(alg, q, &opts.vertices)?;
    let mut rec = Recorder {
        algebra: kind_name(kind).to_string(),
        records: Vec::new(),
        clock: Instant::now(),
    };
    let d = alg.dim();

    let triple = alg.first_nonassociative_triple();
    rec.push(
        "associativity",
        "(xy)z = x(yz) on all basis triples",
        triple.is_none(),
        &[("dim", d)],
        triple
            .map(|(i, j, k)| {
                let l = alg.labels();
                format!("({}, {}, {})", l[i], l[j], l[k])
            })
            .into_iter()
            .collect(),
    );
    if triple.is_some() {
        return Ok(rec.records);
    }
    let unit_ok = (0..d).all(|i| {
        let x = alg.element(i);
        alg.mul(alg.unit(), &x) == x && alg.mul(&x, alg.unit()) == x
    });
    rec.push(
        "unit",
        "the sum of vertex idempotents is a two-sided identity",
        unit_ok,
        &[],
        vec![],
    );

    let dec = Decomposer::new(alg);
    let der = dec.derivations();
    let cam = dec.central_annihilating();
    let lie = lie_derivation_space(alg);
    let z = center(alg);
    rec.push(
        "derivations-are-lie",
        "every derivation is a Lie derivation",
        der.is_subspace_of(&lie),
        &[("der", der.dimension()), ("lie", lie.dimension())],
        vec![],
    );
    let gen = derivation_space_from_generators(alg);
    rec.push(
        "generator-oracle",
        "imposing the derivation law on generators gives the same space as all pairs",
        gen.is_subspace_of(der) && der.is_subspace_of(&gen),
        &[
            ("all_pairs", der.dimension()),
            ("generators", gen.dimension()),
        ],
        vec![],
    );
    rec.push(
        "split-dimension",
        "dim LieDer = dim Der + dim CentralAnn",
        lie.dimension() == der.dimension() + cam.dimension(),
        &[
            ("lie", lie.dimension()),
            ("der", der.dimension()),
            ("central_ann", cam.dimension()),
            ("center", z.dim()),
        ],
        vec![],
    );
    let meet = der.intersection(cam);
    rec.push(
        "split-unique",
        "no nonzero map is both a derivation and central-annihilating",
        meet.dimension() == 0,
        &[("intersection", meet.dimension())],
        vec![],
    );

    let mut decomps: Vec<Option<StandardDecomposition>> = Vec::new();
    let mut bad = Vec::new();
    for (n, th) in lie.basis().iter().enumerate() {
        match dec.decompose(th) {
            Ok(s) => {
                let residual = &(&s.derivation + &s.central) - th;
                if !residual.is_zero()
                    || !is_derivation(alg, &s.derivation)
                    || !cam.contains(&s.central)
                {
                    bad.push(format!("basis map {n}: invalid split"));
                }
                decomps.push(Some(s));
            }
            Err(err) => {
                bad.push(format!("basis map {n}: {err}"));
                decomps.push(None);
            }
        }
    }
    rec.push(
        "lie-derivations-decompose",
        "every Lie derivation is a derivation plus a central map killing commutators, with zero residual",
        bad.is_empty(),
        &[("maps", lie.dimension())],
        bad,
    );

    let mut bad = Vec::new();
    for (n, s) in decomps.iter().enumerate() {
        if let Some(s) = s {
            for i in (0..d).filter(|&i| !alg.is_trivial(i)) {
                if !s.central.image(i).is_zero() {
                    bad.push(format!("basis map {n} on {}", alg.labels()[i]));
                }
            }
        }
    }
    rec.push(
        "central-part-kills-paths",
        "the central part vanishes on every nontrivial path, so the Lie derivation agrees with its derivation part there",
        bad.is_empty(),
        &[],
        bad,
    );

    let cid = central_image_derivations(alg);
    rec.push(
        "central-image-derivations",
        "a derivation with central image is zero",
        cid.dimension() == 0,
        &[("dim", cid.dimension())],
        vec![],
    );

    match center_form(alg, q) {
        CenterForm::Skipped(reason) => rec.skip(
            "center-form",
            "the center lies in span of 1 and square-zero cycles",
            &reason,
        ),
        CenterForm::Checked {
            holds,
            center_dim,
            candidate_dim,
            outside,
        } => rec.push(
            "center-form",
            "the center lies in span of 1 and square-zero cycles",
            holds,
            &[("center", center_dim), ("candidates", candidate_dim)],
            outside.iter().map(|x| alg.format_element(x)).collect(),
        ),
    }

    let idem: Vec<Element> = alg
        .vertex_idempotents()
        .iter()
        .map(|&i| alg.element(i))
        .collect();
    let w = w_lower_bound(alg, &idem).expect("vertex idempotents are idempotent");
    rec.push(
        "w-lower-bound",
        "unit, vertex idempotents and commutators generate the whole algebra",
        w.dim() == d,
        &[("generated", w.dim()), ("dim", d)],
        vec![],
    );

    let mut bad = Vec::new();
    let mut checked = 0;
    for v in q.sources() {
        for (n, th) in lie.basis().iter().enumerate() {
            let r = source_cycle_check(alg, q, v, th).expect("v is a source");
            checked += r.checks.len();
            bad.extend(
                r.failures()
                    .iter()
                    .map(|c| format!("basis map {n}, source {v}: {}", c.name)),
            );
        }
    }
    rec.push(
        "source-cycle-centrality",
        "Lie derivations send square-zero cycles at a source into the center",
        bad.is_empty(),
        &[("checks", checked)],
        bad,
    );

    let view = peirce_decompose(alg, &e).expect("complement of vertex idempotents is idempotent");
    peirce_checks(&mut rec, &view, kind, &lie, &dec, &decomps, &z);
    Ok(rec.records)
}

fn peirce_checks(
    rec: &mut Recorder,
    view: &PeirceView,
    kind: ExtensionKind,
    lie: &crate::spaces::MapSpace,
    dec: &Decomposer,
    decomps: &[Option<StandardDecomposition>],
    z: &Subspace,
) {
    let alg = view.algebra();
    let [da, dm, dn, db] = view.dims();
    let closure = view.block_closure_defect();
    rec.push(
        "peirce-blocks",
        "the four corners span the algebra and multiply like a generalized matrix algebra",
        da + dm + dn + db == alg.dim() && closure.is_none(),
        &[("A", da), ("M", dm), ("N", dn), ("B", db)],
        closure.into_iter().collect(),
    );

    let mn = view.pairing_image(Pairing::MN);
    let nm = view.pairing_image(Pairing::NM);
    let (claim, pass) = match kind {
        ExtensionKind::Dual => (
            "MN = 0, and NM != 0 whenever M != 0",
            mn.is_zero() && (dm == 0 || !nm.is_zero()),
        ),
        ExtensionKind::OnePoint => ("MN = 0 and NM = 0", mn.is_zero() && nm.is_zero()),
    };
    rec.push(
        "pairings",
        claim,
        pass,
        &[("MN", mn.dim()), ("NM", nm.dim())],
        vec![],
    );

    let mut dims = Vec::new();
    let mut witnesses = Vec::new();
    for (key, module, side) in [
        ("ann_A(M)", Module::M, Side::Left),
        ("ann(M)_B", Module::M, Side::Right),
        ("ann_B(N)", Module::N, Side::Left),
        ("ann(N)_A", Module::N, Side::Right),
    ] {
        let ann = view.bimodule_annihilator(module, side);
        dims.push((key, ann.dim()));
        for w in labels_of(alg, &ann) {
            witnesses.push(format!("{key} ∋ {w}"));
        }
    }
    rec.push(
        "annihilators",
        "annihilators of M and N, with bases",
        true,
        &dims,
        witnesses,
    );

    let mut lie_bad = Vec::new();
    let mut std_bad = Vec::new();
    let mut g_bad = Vec::new();
    let standardizer = Standardizer::new(view);
    for (n, th) in lie.basis().iter().enumerate() {
        let data = match extract_block_data(view, th) {
            Ok(data) => data,
            Err(err) => {
                lie_bad.push(format!("basis map {n}: {err}"));
                continue;
            }
        };
        let r = verify_lie_block_conditions(view, &data);
        lie_bad.extend(
            r.failures()
                .iter()
                .map(|c| format!("basis map {n}: {}", c.name)),
        );
        let st = standardizer.solve(&data);
        match (&st, &decomps[n]) {
            (Some(s), Some(dcmp)) if s.central == dcmp.central => {}
            (Some(s), Some(dcmp)) if !dcmp.unique => {
                // any admissible central part works when the split is not unique
                if !is_derivation(alg, &(th - &s.central)) {
                    std_bad.push(format!("basis map {n}: corner maps do not standardize"));
                }
            }
            (None, None) => {}
            (s, dcmp) => std_bad.push(format!(
                "basis map {n}: corner feasibility {} but global split {}",
                s.is_some(),
                dcmp.is_some()
            )),
        }
        let g = g_defect(view, &data.delta1, &data.mu1);
        g_bad.extend(
            g.report
                .failures()
                .iter()
                .map(|c| format!("basis map {n}: {}", c.name)),
        );
    }
    rec.push(
        "lie-block-form",
        "every Lie derivation has the block form and satisfies its corner conditions",
        lie_bad.is_empty(),
        &[("maps", lie.dimension())],
        lie_bad,
    );
    let mut der_bad = Vec::new();
    for (n, th) in dec.derivations().basis().iter().enumerate() {
        match extract_block_data(view, th) {
            Ok(data) => {
                let r = verify_der_block_conditions(view, &data);
                der_bad.extend(
                    r.failures()
                        .iter()
                        .map(|c| format!("basis map {n}: {}", c.name)),
                );
            }
            Err(err) => der_bad.push(format!("basis map {n}: {err}")),
        }
    }
    rec.push(
        "derivation-block-form",
        "every derivation has the block form with no cross-corner parts",
        der_bad.is_empty(),
        &[("maps", dec.derivations().dimension())],
        der_bad,
    );
    rec.push(
        "corner-standardization",
        "corner maps l_A, l_B exist exactly when the global split exists, and give the same central part",
        std_bad.is_empty(),
        &[],
        std_bad,
    );
    rec.push(
        "g-map",
        "G(x, y) = δ1(xy) - xδ1(y) - δ1(x)y is symmetric and satisfies its module identities",
        g_bad.is_empty(),
        &[],
        g_bad,
    );

    // faithful M with centers matching under projection forces the split
    let faithful = view.bimodule_annihilator(Module::M, Side::Left).is_zero()
        && view.bimodule_annihilator(Module::M, Side::Right).is_zero();
    let projected = |b: Block| {
        Subspace::span(
            alg.dim(),
            z.basis().iter().map(|v| {
                view.project(b, &Element::from_sparse(alg.dim(), v))
                    .to_sparse()
            }),
        )
    };
    let centers_match = projected(Block::A) == *view.corner_center(Block::A)
        && projected(Block::B) == *view.corner_center(Block::B);
    let name = "faithful-criterion";
    let claim = "faithful M with corner centers projected from the center forces every Lie derivation to split";
    if dm > 0 && faithful && centers_match {
        let failures: Vec<String> = decomps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(n, _)| format!("basis map {n}"))
            .collect();
        rec.push(name, claim, failures.is_empty(), &[], failures);
    } else {
        rec.skip(name, claim, "hypotheses do not hold");
    }
}

/// Block data of one map for the `peirce` report.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionVerdict {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorRecord {
    pub module: &'static str,
    pub side: &'static str,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeirceReport {
    pub idempotent: String,
    pub dims: BTreeMap<&'static str, usize>,
    pub bases: BTreeMap<&'static str, Vec<String>>,
    pub pairing_dims: BTreeMap<&'static str, usize>,
    pub annihilators: Vec<AnnihilatorRecord>,
    /// Lie-derivation block conditions, over the Lie-derivation basis or the
    /// given map.
    pub lie_conditions: Vec<ConditionVerdict>,
    /// Derivation block conditions, over the derivation basis or the given
    /// map.
    pub derivation_conditions: Vec<ConditionVerdict>,
    /// Whether corner maps standardizing the given map exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standardizable: Option<bool>,
}

fn merge(into: &mut Vec<ConditionVerdict>, report: &crate::peirce::ConditionReport) {
    for c in &report.checks {
        match into.iter_mut().find(|v| v.name == c.name) {
            Some(v) => v.pass &= c.pass,
            None => into.push(ConditionVerdict {
                name: c.name.clone(),
                pass: c.pass,
            }),
        }
    }
}

/// Summarizes the view at `e`. With `map`, the conditions are evaluated on
/// that map alone; otherwise over the Lie-derivation and derivation bases.
pub fn peirce_report(
    alg: &FiniteDimAlgebra,
    e: &Element,
    map: Option<&LinearMap>,
) -> Result<PeirceReport, PeirceError> {
    let view = peirce_decompose(alg, e)?;
    let names = ["A", "M", "N", "B"];
    let dims = names.into_iter().zip(view.dims()).collect();
    let bases = names
        .into_iter()
        .zip(Block::ALL.map(|b| view.labels(b)))
        .collect();
    let pairing_dims = [
        ("MN", view.pairing_image(Pairing::MN).dim()),
        ("NM", view.pairing_image(Pairing::NM).dim()),
    ]
    .into_iter()
    .collect();
    let annihilators = [
        ("M", "left", Module::M, Side::Left),
        ("M", "right", Module::M, Side::Right),
        ("N", "left", Module::N, Side::Left),
        ("N", "right", Module::N, Side::Right),
    ]
    .into_iter()
    .map(|(m, s, module, side)| {
        let ann = view.bimodule_annihilator(module, side);
        AnnihilatorRecord {
            module: m,
            side: s,
            dim: ann.dim(),
            basis: labels_of(alg, &ann),
        }
    })
    .collect();
    let mut lie_conditions = Vec::new();
    let mut derivation_conditions = Vec::new();
    let mut standardizable = None;
    match map {
        Some(m) => {
            let data = extract_block_data(&view, m)?;
            merge(
                &mut lie_conditions,
                &verify_lie_block_conditions(&view, &data),
            );
            merge(
                &mut derivation_conditions,
                &verify_der_block_conditions(&view, &data),
            );
            standardizable = Some(find_standardizing_maps(&view, &data).is_some());
        }
        None => {
            for th in lie_derivation_space(alg).basis() {
                let data = extract_block_data(&view, th)?;
                merge(
                    &mut lie_conditions,
                    &verify_lie_block_conditions(&view, &data),
                );
            }
            for th in crate::spaces::derivation_space(alg).basis() {
                let data = extract_block_data(&view, th)?;
                merge(
                    &mut derivation_conditions,
                    &verify_der_block_conditions(&view, &data),
                );
            }
        }
    }
    Ok(PeirceReport {
        idempotent: alg.format_element(e),
        dims,
        bases,
        pairing_dims,
        annihilators,
        lie_conditions,
        derivation_conditions,
        standardizable,
    })
}
