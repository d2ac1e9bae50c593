//! `dualext`: build dual extensions of path algebras and check the
//! structure of their derivations from the command line.
//!
//! Exit status is 0 when everything checked passes, 1 when a check fails and
//! 2 when the input cannot be read, parsed or built.

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dualext::algebra::AlgebraDump;
use dualext::corpus::{self, CorpusEntry};
use dualext::dual::{build_dual_extension, build_one_point_extension, ExtensionKind};
use dualext::quiver::double_quiver;
use dualext::spaces::{
    center, central_annihilating_maps, derivation_space, is_derivation, is_lie_derivation,
    lie_derivation_space, Decomposer, LinearMap, LinearMapFile,
};
use dualext::verify::{
    complement_idempotent, peirce_report, verify_algebra, verify_quiver, ReportBundle,
    VerifyOptions,
};
use dualext::{build_path_algebra, parse_quiver, Element, FiniteDimAlgebra, Quiver};

#[derive(Parser)]
#[command(
    name = "dualext",
    version,
    about = "Dual extensions of path algebras and their Lie derivations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the basis and multiplication table of an algebra.
    Build(Common),
    /// Dimensions and bases of the derivation, Lie-derivation,
    /// central-annihilating and center spaces.
    Spaces(Common),
    /// Run every structural check on the dual and one-point extensions.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check this algebra dump instead of building one; read over the
        /// quiver doubled by `--mode`.
        #[arg(long, value_name = "FILE")]
        algebra: Option<PathBuf>,
    },
    /// Split a Lie derivation as derivation plus central part.
    Decompose(Common),
    /// Peirce blocks, pairings, annihilators and block conditions.
    Peirce(Common),
    /// Verify the bundled corpus.
    Corpus {
        /// Random corpus seeds (default 1 to 12).
        #[arg(long = "seed", value_name = "N")]
        seeds: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Quiver file.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Dual)]
    mode: Mode,
    /// Vertex ids. `verify` removes their idempotents (e = 1 - Σ e_v);
    /// `peirce` uses e = Σ e_v. Default: the complement of the first source.
    #[arg(long = "vertex", value_name = "ID")]
    vertices: Vec<String>,
    /// Map file with `basis` and `matrix` over the algebra basis.
    #[arg(long, value_name = "FILE")]
    map: Option<PathBuf>,
    /// Path length bound for `--mode plain` (default: number of vertices).
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Plain,
    Dual,
    Onepoint,
}

/// An error in the input rather than a failed check.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| InputError(e).into())
}

struct Output {
    text: String,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<InputError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Build(c) => cmd_build(&c),
        Command::Spaces(c) => cmd_spaces(&c),
        Command::Verify { common, algebra } => cmd_verify(&common, algebra.as_deref()),
        Command::Decompose(c) => cmd_decompose(&c),
        Command::Peirce(c) => cmd_peirce(&c),
        Command::Corpus { seeds, json } => cmd_corpus(seeds, json),
    }
}

fn read(path: &FsPath) -> Result<String> {
    input(fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))
}

fn load_quiver(path: &FsPath) -> Result<Quiver> {
    let text = read(path)?;
    input(parse_quiver(&text).with_context(|| format!("parsing {}", path.display())))
}

struct Built {
    algebra: FiniteDimAlgebra,
    dump: Value,
}

fn build(q: &Quiver, c: &Common) -> Result<Built> {
    let built = match c.mode {
        Mode::Plain => {
            let bound = c.bound.unwrap_or(q.vertices().len());
            let algebra = build_path_algebra(q, q.relations(), bound)?;
            let dump = serde_json::to_value(algebra.to_dump())?;
            Built { algebra, dump }
        }
        Mode::Dual | Mode::Onepoint => {
            let dx = if c.mode == Mode::Dual {
                build_dual_extension(q)?
            } else {
                build_one_point_extension(q)?
            };
            let dump = serde_json::to_value(dx.to_dump())?;
            Built {
                algebra: dx.algebra,
                dump,
            }
        }
    };
    Ok(built)
}

fn load(c: &Common) -> Result<(Quiver, Built)> {
    let q = load_quiver(&c.file)?;
    let built = input(build(&q, c).with_context(|| format!("building {}", c.file.display())))?;
    Ok((q, built))
}

fn load_map(path: &FsPath, alg: &FiniteDimAlgebra) -> Result<LinearMap> {
    let text = read(path)?;
    let file: LinearMapFile =
        input(serde_json::from_str(&text).with_context(|| format!("decoding {}", path.display())))?;
    input(LinearMap::from_file(&file, alg).with_context(|| format!("reading {}", path.display())))
}

fn to_json(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn cmd_build(c: &Common) -> Result<Output> {
    let (_, b) = load(c)?;
    let text = if c.json {
        to_json(&b.dump)?
    } else {
        let mut s = format!("dim {}\n", b.algebra.dim());
        for l in b.algebra.labels() {
            s.push_str(&format!("  {l}\n"));
        }
        s
    };
    Ok(Output { text, pass: true })
}

fn cmd_spaces(c: &Common) -> Result<Output> {
    let (_, b) = load(c)?;
    let alg = &b.algebra;
    let der = derivation_space(alg);
    let lie = lie_derivation_space(alg);
    let cam = central_annihilating_maps(alg);
    let z = center(alg);
    let z_basis: Vec<String> = z
        .basis()
        .iter()
        .map(|v| alg.format_element(&Element::from_sparse(alg.dim(), v)))
        .collect();
    let text = if c.json {
        to_json(&json!({
            "derivations": der.to_dump(alg),
            "lie_derivations": lie.to_dump(alg),
            "central_annihilating": cam.to_dump(alg),
            "center": { "dimension": z.dim(), "basis": z_basis },
        }))?
    } else {
        format!(
            "derivations {}\nlie derivations {}\ncentral annihilating {}\ncenter {}\n{}",
            der.dimension(),
            lie.dimension(),
            cam.dimension(),
            z.dim(),
            z_basis
                .iter()
                .map(|x| format!("  {x}\n"))
                .collect::<String>()
        )
    };
    Ok(Output { text, pass: true })
}

fn kind_of(mode: Mode) -> Result<ExtensionKind> {
    match mode {
        Mode::Dual => Ok(ExtensionKind::Dual),
        Mode::Onepoint => Ok(ExtensionKind::OnePoint),
        Mode::Plain => input(Err(anyhow!("checks need --mode dual or --mode onepoint"))),
    }
}

fn cmd_verify(c: &Common, algebra: Option<&FsPath>) -> Result<Output> {
    let q = load_quiver(&c.file)?;
    let opts = VerifyOptions {
        vertices: c.vertices.clone(),
    };
    let name = c.file.display().to_string();
    let bundle = match algebra {
        None => input(verify_quiver(&name, &q, &opts).map_err(Into::into))?,
        Some(path) => {
            let kind = kind_of(c.mode)?;
            let text = read(path)?;
            let dump: AlgebraDump = input(
                serde_json::from_str(&text).with_context(|| format!("decoding {}", path.display())),
            )?;
            let alg = input(
                double_quiver(&q)
                    .map_err(anyhow::Error::from)
                    .and_then(|dq| Ok(FiniteDimAlgebra::from_dump(&dump, dq)?))
                    .with_context(|| format!("reading {}", path.display())),
            )?;
            let records = input(verify_algebra(&alg, &q, kind, &opts).map_err(Into::into))?;
            ReportBundle::new(path.display().to_string(), records)
        }
    };
    let text = if c.json {
        to_json(&bundle)?
    } else {
        bundle.to_text()
    };
    Ok(Output {
        text,
        pass: bundle.pass,
    })
}

fn cmd_decompose(c: &Common) -> Result<Output> {
    let Some(map_path) = &c.map else {
        return input(Err(anyhow!("decompose needs --map")));
    };
    let (_, b) = load(c)?;
    let alg = &b.algebra;
    let theta = load_map(map_path, alg)?;
    match Decomposer::new(alg).decompose(&theta) {
        Ok(dec) => {
            let text = if c.json {
                to_json(&dec.to_dump(alg))?
            } else {
                let mut s = String::from("b | D(b) | Δ(b)\n");
                for i in 0..alg.dim() {
                    s.push_str(&format!(
                        "{} | {} | {}\n",
                        alg.labels()[i],
                        alg.format_element(&dec.derivation.image(i)),
                        alg.format_element(&dec.central.image(i))
                    ));
                }
                s.push_str(&format!("unique {}\n", dec.unique));
                s
            };
            Ok(Output { text, pass: true })
        }
        Err(e) => {
            let text = if c.json {
                to_json(&json!({ "error": e.to_string() }))?
            } else {
                format!("no decomposition: {e}\n")
            };
            Ok(Output { text, pass: false })
        }
    }
}

fn cmd_peirce(c: &Common) -> Result<Output> {
    let (q, b) = load(c)?;
    let alg = &b.algebra;
    let e = if c.vertices.is_empty() {
        input(complement_idempotent(alg, &q, &[]).map_err(Into::into))?
    } else {
        let mut e = Element::zero(alg.dim());
        for v in &c.vertices {
            let ev = alg
                .vertex_idempotent(v)
                .ok_or_else(|| InputError(anyhow!("unknown vertex {v}")))?;
            e = &e + &ev;
        }
        e
    };
    let map = match &c.map {
        Some(p) => Some(load_map(p, alg)?),
        None => None,
    };
    let report = input(peirce_report(alg, &e, map.as_ref()).map_err(Into::into))?;
    let pass = report.lie_conditions.iter().all(|v| v.pass)
        && (map.is_some() || report.derivation_conditions.iter().all(|v| v.pass));
    let text = if c.json {
        to_json(&report)?
    } else {
        let mut s = format!("e = {}\n", report.idempotent);
        for (k, basis) in &report.bases {
            s.push_str(&format!("{k} ({}): {}\n", basis.len(), basis.join(", ")));
        }
        for (k, d) in &report.pairing_dims {
            s.push_str(&format!("pairing {k}: image dim {d}\n"));
        }
        for a in &report.annihilators {
            s.push_str(&format!(
                "ann {} {}: dim {} [{}]\n",
                a.module,
                a.side,
                a.dim,
                a.basis.join(", ")
            ));
        }
        for (title, list) in [
            ("lie", &report.lie_conditions),
            ("derivation", &report.derivation_conditions),
        ] {
            for v in list {
                s.push_str(&format!(
                    "{} {title}: {}\n",
                    if v.pass { "PASS" } else { "FAIL" },
                    v.name
                ));
            }
        }
        if let Some(f) = report.standardizable {
            s.push_str(&format!("standardizable {f}\n"));
        }
        s
    };
    Ok(Output { text, pass })
}

/// Lie and derivation status of the bundled maps on the dual extension of
/// the quiver they belong to.
fn check_bundled_maps() -> Result<Value> {
    let q = parse_quiver(corpus::CHAIN)?;
    let dx = build_dual_extension(&q)?;
    let alg = &dx.algebra;
    let dec = Decomposer::new(alg);
    let mut out = Vec::new();
    for (name, text) in [
        ("chain_lie_map", corpus::CHAIN_LIE_MAP),
        ("chain_non_lie_map", corpus::CHAIN_NON_LIE_MAP),
    ] {
        let file: LinearMapFile = serde_json::from_str(text)?;
        let theta = LinearMap::from_file(&file, alg)?;
        let split = dec.decompose(&theta);
        out.push(json!({
            "map": name,
            "lie_derivation": is_lie_derivation(alg, &theta),
            "derivation": is_derivation(alg, &theta),
            "decomposes": split.is_ok(),
            "unique": split.map(|d| d.unique).unwrap_or(false),
        }));
    }
    Ok(Value::Array(out))
}

fn cmd_corpus(seeds: Vec<u64>, json_out: bool) -> Result<Output> {
    let mut entries = corpus::fixed_corpus();
    if seeds.is_empty() {
        entries.extend(corpus::random_corpus(corpus::RANDOM_SEEDS));
    } else {
        entries.extend(corpus::random_corpus(seeds));
    }
    let bundles = verify_all(&entries)?;
    let maps = check_bundled_maps()?;
    // exactly one of the two maps is a Lie derivation, and that one is not a
    // derivation but splits uniquely
    let lie: Vec<&Value> = maps
        .as_array()
        .into_iter()
        .flatten()
        .filter(|m| m["lie_derivation"] == true)
        .collect();
    let maps_pass = lie.len() == 1 && lie[0]["derivation"] == false && lie[0]["unique"] == true;
    let pass = maps_pass && bundles.iter().all(|b| b.pass);
    let text = if json_out {
        to_json(&json!({ "pass": pass, "entries": bundles, "maps": maps }))?
    } else {
        let mut s = String::new();
        for b in &bundles {
            for r in b.failures() {
                s.push_str(&format!("FAIL {} [{}] {}\n", b.input, r.algebra, r.name));
                for w in &r.witnesses {
                    s.push_str(&format!("    {w}\n"));
                }
            }
            s.push_str(&format!(
                "{} {}: {} checks\n",
                if b.pass { "PASS" } else { "FAIL" },
                b.input,
                b.records.len()
            ));
        }
        for m in maps.as_array().into_iter().flatten() {
            s.push_str(&format!(
                "map {}: lie {} derivation {} unique split {}\n",
                m["map"].as_str().unwrap_or_default(),
                m["lie_derivation"],
                m["derivation"],
                m["unique"]
            ));
        }
        s.push_str(&format!(
            "{} maps\n",
            if maps_pass { "PASS" } else { "FAIL" }
        ));
        s
    };
    Ok(Output { text, pass })
}

/// One thread per entry; results come back in corpus order.
fn verify_all(entries: &[CorpusEntry]) -> Result<Vec<ReportBundle>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| s.spawn(move || verify_quiver(&e.name, &e.quiver, &VerifyOptions::default())))
            .collect();
        handles
            .into_iter()
            .map(|h| match h.join() {
                Ok(r) => r.map_err(Into::into),
                Err(_) => bail!("verification thread panicked"),
            })
            .collect()
    })
}
