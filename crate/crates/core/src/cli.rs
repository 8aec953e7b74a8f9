//! Command-line front end. Every command prints one schema-versioned JSON
//! report; exit code 0 means a result was computed, whatever the verdict.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{opposite, verify_algebra, Algebra};
use crate::corpus::corpus;
use crate::criteria::{
    check_cotilting, check_ringel, check_tilting, classicality_check, kernel_homological_cotilting, kernel_homological_tilting,
    orthogonality_scan, split_sufficiency, AddSequence, AxiomCheck, Direction, KernelReport,
};
use crate::error::{Error, Result};
use crate::homalg::{ext, min_inj_coresolution, min_proj_resolution, tor, Resolution, ResolutionKind, DEFAULT_CAP};
use crate::io::{InputDocument, Workspace, SCHEMA_VERSION};
use crate::linalg::Matrix;
use crate::module::{dual_regular, endomorphism_algebra, hom, Module};
use crate::oracle::{self, OracleReport};

#[derive(Debug, Parser)]
#[command(name = "tiltkit", version, about = "Exact homological algebra over bound quiver algebras")]
pub struct Cli {
    /// Input document (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// A shipped fixture by name, e.g. fix-n3 or random-04.
    #[arg(long, global = true, conflicts_with = "input")]
    pub fixture: Option<String>,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Resolution cap.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Overrides the prime of the input document.
    #[arg(long, global = true)]
    pub field: Option<u32>,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Adds wall-clock time to the report, which then varies between runs.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis and dimension of the algebra.
    Basis,
    /// Hom(M, N).
    Hom { m: String, n: String },
    /// dim Ext^i(M, N).
    Ext { i: usize, m: String, n: String },
    /// dim Tor_i(X, Y) for X over the algebra and Y over its opposite.
    Tor { i: usize, x: String, y: String },
    /// Minimal projective resolution.
    Resolve { m: String },
    /// Minimal injective coresolution.
    Coresolve { m: String },
    /// Endomorphism algebra.
    Endo { m: String },
    /// Axiom checks and homological criteria.
    #[command(subcommand)]
    Check(Check),
    /// Hypothesis scans over a list of modules.
    #[command(subcommand)]
    Scan(Scan),
    /// Runs an independent cross-check.
    Oracle {
        /// One of tensor-cohomology, tor-ext-duality, ext-balance,
        /// double-centralizer, hom-complex-iso.
        name: String,
        /// Number of seeded instances.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Lists the shipped fixtures, or writes them to a directory.
    Corpus {
        /// Directory to write the fixture files to.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Tilting axioms.
    Tilting { t: String, n: usize },
    /// Cotilting axioms against an injective cogenerator W.
    Cotilting { u: String, n: usize, w: String },
    /// Ringel axioms.
    Ringel { m: String, n: usize },
    /// Whether a tilting module is homological.
    KernelTilting { t: String, n: usize },
    /// Whether a cotilting module is homological.
    KernelCotilting { u: String, n: usize, w: String },
    /// Sufficient condition for a split tilting module T ≅ M ⊕ N.
    Split { t: String, m: String, n: String },
    /// Classical tilting modules satisfy the kernel criterion.
    Classical { t: String, n: usize },
}

#[derive(Debug, Subcommand)]
pub enum Scan {
    /// Orthogonality hypotheses on consecutive terms.
    Orthogonality {
        parts: Vec<String>,
        /// Injective cogenerator for the cotilting hypotheses.
        #[arg(long)]
        cogenerator: Option<String>,
    },
}

#[derive(Debug, Serialize)]
struct ReportDocument {
    schema: u32,
    tool: &'static str,
    command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<Value>,
    seed: u64,
    cap: usize,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, echo) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let body = json!({ "schema": SCHEMA_VERSION, "error": e.to_string() });
            let _ = writeln!(err, "{body}");
            1
        }
    }
}

fn execute(cli: &Cli, command: Vec<String>) -> Result<String> {
    let start = Instant::now();
    let doc = load_document(cli)?;
    let ws = doc.map(Workspace::new).transpose()?;
    let input = ws.as_ref().map(|w| json!({ "name": w.doc.name, "prime": w.doc.field.prime, "algebra_dim": w.algebra.dim() }));
    let result = dispatch(cli, ws.as_ref())?;
    let report = ReportDocument {
        schema: SCHEMA_VERSION,
        tool: "tiltkit",
        command,
        input,
        seed: cli.seed,
        cap: cli.cap,
        result,
        timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    let text = if cli.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
    Ok(text.expect("reports serialize"))
}

fn load_document(cli: &Cli) -> Result<Option<InputDocument>> {
    let mut doc = match (&cli.input, &cli.fixture) {
        (Some(path), _) => Some(InputDocument::load(path)?),
        (None, Some(name)) => Some(
            corpus()?
                .into_iter()
                .find(|(stem, _)| stem == name)
                .map(|(_, d)| d)
                .ok_or_else(|| Error::invalid(format!("--fixture: no fixture named {name:?}")))?,
        ),
        (None, None) => None,
    };
    if let (Some(d), Some(p)) = (doc.as_mut(), cli.field) {
        d.field.prime = p;
    }
    Ok(doc)
}

fn need(ws: Option<&Workspace>) -> Result<&Workspace> {
    ws.ok_or_else(|| Error::invalid("this command needs an input: pass --input <file> or --fixture <name>"))
}

fn dispatch(cli: &Cli, ws: Option<&Workspace>) -> Result<Value> {
    let cap = cli.cap;
    Ok(match &cli.command {
        Command::Basis => {
            let w = need(ws)?;
            let check = verify_algebra(&w.algebra);
            json!({ "dimension": w.algebra.dim(), "basis": w.algebra.labels(), "vertices": w.algebra.vertex_count(), "verification": check })
        }
        Command::Hom { m, n } => {
            let w = need(ws)?;
            let h = hom(&w.module(m)?, &w.module(n)?)?;
            json!({ "dimension": h.dim(), "basis": h.basis().iter().map(Matrix::to_vecs).collect::<Vec<_>>() })
        }
        Command::Ext { i, m, n } => {
            let w = need(ws)?;
            dimension_result(*i, ext(*i, &w.module(m)?, &w.module(n)?, cap)?)
        }
        Command::Tor { i, x, y } => {
            let w = need(ws)?;
            dimension_result(*i, tor(*i, &w.module(x)?, &w.module(y)?, cap)?)
        }
        Command::Resolve { m } => resolution_json(&min_proj_resolution(&need(ws)?.module(m)?, cap)?),
        Command::Coresolve { m } => resolution_json(&min_inj_coresolution(&need(ws)?.module(m)?, cap)?),
        Command::Endo { m } => {
            let (end, _) = endomorphism_algebra(&need(ws)?.module(m)?)?;
            let d = end.dim();
            let table: Vec<Vec<Vec<u32>>> = (0..d).map(|i| (0..d).map(|j| end.product(i, j).to_vec()).collect()).collect();
            json!({
                "dimension": d,
                "unit": end.unit(),
                "product": table,
                "commutative": end.is_commutative(),
                "verification": verify_algebra(&end),
            })
        }
        Command::Check(c) => check(c, need(ws)?, cap)?,
        Command::Scan(Scan::Orthogonality { parts, cogenerator }) => {
            let w = need(ws)?;
            let mods = parts.iter().map(|p| w.module(p)).collect::<Result<Vec<_>>>()?;
            let cog = cogenerator.as_deref().map(|c| w.module(c)).transpose()?;
            let s = orthogonality_scan(&mods, cog.as_ref(), cap)?;
            let rows: Vec<Value> = s
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "index": r.index,
                        "hom_next_to_this": r.hom_down,
                        "cotilting": r.cotilting.map(|(up, e0, e1)| json!({ "hom_this_to_next": up, "ext_i": e0, "ext_i_plus_1": e1 })),
                    })
                })
                .collect();
            json!({ "rows": rows, "commutative": s.commutative, "report": s.report })
        }
        Command::Oracle { name, count } => serde_json::to_value(run_oracle(name, *count, cli.seed, ws)?).expect("reports serialize"),
        Command::Corpus { out } => {
            let all = corpus()?;
            if let Some(dir) = out {
                std::fs::create_dir_all(dir).map_err(|e| Error::invalid(format!("--out: {e}")))?;
                for (stem, doc) in &all {
                    std::fs::write(dir.join(format!("{stem}.json")), doc.to_json() + "\n")
                        .map_err(|e| Error::invalid(format!("--out: {e}")))?;
                }
            }
            let list: Vec<Value> = all
                .iter()
                .map(|(stem, d)| json!({ "name": stem, "vertices": d.quiver.vertices, "arrows": d.quiver.arrows.len(), "relations": d.relations.len(), "seed": d.seed }))
                .collect();
            json!({ "fixtures": list })
        }
    })
}

fn dimension_result(i: usize, d: Option<usize>) -> Value {
    match d {
        Some(d) => json!({ "degree": i, "dimension": d }),
        None => json!({ "degree": i, "dimension": null, "verdict": "inconclusive", "note": "resolution cap reached" }),
    }
}

fn module_summary(m: &Module) -> Value {
    json!({ "dim": m.dim(), "dim_vector": m.dim_vector() })
}

fn resolution_json(r: &Resolution) -> Value {
    let kind = match r.kind {
        ResolutionKind::Projective => "projective",
        ResolutionKind::Injective => "injective",
    };
    let terms: Vec<Value> = r
        .terms
        .iter()
        .zip(&r.summands)
        .map(|(t, s)| {
            let mut v = module_summary(t);
            v["summands"] = json!(s.iter().map(|x| x + 1).collect::<Vec<_>>());
            v
        })
        .collect();
    json!({
        "kind": kind,
        "length": r.length(),
        "minimal": r.minimal,
        "truncated": r.truncated,
        "terms": terms,
        "maps": r.maps.iter().map(Matrix::to_vecs).collect::<Vec<_>>(),
        "augmentation": r.augmentation.to_vecs(),
    })
}

fn sequence_json(s: &AddSequence) -> Value {
    let direction = match s.direction {
        Direction::Coresolution => "coresolution",
        Direction::Resolution => "resolution",
    };
    let terms: Vec<Value> = s
        .terms
        .iter()
        .zip(&s.witnesses)
        .enumerate()
        .map(|(k, (t, w))| {
            let mut v = module_summary(t);
            v["name"] = json!(format!("T{k}"));
            v["copies_of_generator"] = json!(w.copies);
            v["section"] = json!(w.section.to_vecs());
            v["retraction"] = json!(w.retraction.to_vecs());
            v
        })
        .collect();
    json!({
        "direction": direction,
        "anchor": module_summary(&s.anchor),
        "terms": terms,
        "anchor_map": s.anchor_map.to_vecs(),
        "maps": s.maps.iter().map(Matrix::to_vecs).collect::<Vec<_>>(),
    })
}

fn axiom_json(a: &AxiomCheck) -> Value {
    let c = &a.certificate;
    json!({
        "report": a.report,
        "certificate": {
            "resolution": resolution_json(&c.resolution),
            "self_ext": c.self_ext.iter().map(|(j, d)| json!({ "degree": j, "dimension": d })).collect::<Vec<_>>(),
            "sequence": c.sequence.as_ref().map(sequence_json),
        },
    })
}

fn kernel_json(k: &KernelReport) -> Value {
    json!({ "report": k.report, "routes": k.routes })
}

fn check(c: &Check, w: &Workspace, cap: usize) -> Result<Value> {
    Ok(match c {
        Check::Tilting { t, n } => axiom_json(&check_tilting(&w.module(t)?, *n, cap)?),
        Check::Cotilting { u, n, w: cog } => axiom_json(&check_cotilting(&w.module(u)?, *n, &w.module(cog)?, cap)?),
        Check::Ringel { m, n } => axiom_json(&check_ringel(&w.module(m)?, *n, cap)?),
        Check::KernelTilting { t, n } => kernel_json(&kernel_homological_tilting(&w.module(t)?, *n, cap)?),
        Check::KernelCotilting { u, n, w: cog } => kernel_json(&kernel_homological_cotilting(&w.module(u)?, *n, &w.module(cog)?, cap)?),
        Check::Split { t, m, n } => json!({ "report": split_sufficiency(&w.module(t)?, &w.module(m)?, &w.module(n)?, cap)? }),
        Check::Classical { t, n } => json!({ "report": classicality_check(&w.module(t)?, *n, cap)? }),
    })
}

fn named_fixtures() -> Result<Vec<Arc<Algebra>>> {
    let all = corpus()?;
    all.iter().take(2).map(|(_, d)| d.algebra().map(Arc::new)).collect()
}

/// Runs an oracle on the loaded algebra, or on the two named fixtures when
/// no input is given.
pub fn run_oracle(name: &str, count: Option<usize>, seed: u64, ws: Option<&Workspace>) -> Result<OracleReport> {
    let algebras = match ws {
        Some(w) => vec![w.algebra.clone()],
        None => named_fixtures()?,
    };
    let merge = |reports: Vec<OracleReport>| -> OracleReport {
        let mut out = reports[0].clone();
        for r in &reports[1..] {
            out.instances += r.instances;
            out.rejected += r.rejected;
            out.mismatches.extend(r.mismatches.iter().cloned());
            out.notes.extend(r.notes.iter().cloned());
        }
        out
    };
    match name {
        oracle::TENSOR_COHOMOLOGY => oracle::tensor_cohomology(seed, &algebras, count.unwrap_or(200)),
        oracle::TOR_EXT_DUALITY => {
            let mut pairs: Vec<(Arc<Algebra>, Arc<Algebra>)> = algebras.iter().map(|a| (a.clone(), Arc::new(opposite(a)))).collect();
            for a in &algebras {
                for b in &algebras {
                    if !Arc::ptr_eq(a, b) {
                        pairs.push((a.clone(), b.clone()));
                    }
                }
            }
            oracle::tor_ext_duality(seed, &pairs, count.unwrap_or(100))
        }
        oracle::EXT_BALANCE => Ok(merge(algebras.iter().map(|a| oracle::ext_balance_grid(a, 3)).collect::<Result<_>>()?)),
        oracle::DOUBLE_CENTRALIZER => {
            let mut reports = Vec::new();
            for a in &algebras {
                reports.push(oracle::double_centralizer(&dual_regular(a))?);
                reports.push(oracle::dual_endomorphisms(a)?);
            }
            Ok(merge(reports))
        }
        oracle::HOM_COMPLEX_ISO => {
            let mut reports = Vec::new();
            for a in &algebras {
                let t = dual_regular(a);
                let n = min_proj_resolution(&t, DEFAULT_CAP)?.length();
                reports.push(oracle::hom_complex_iso(&t, n)?);
            }
            Ok(merge(reports))
        }
        other => Err(Error::invalid(format!("unknown oracle {other:?}; expected one of {}", oracle::ORACLES.join(", ")))),
    }
}
