use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use tiltkit::algebra::{opposite, Algebra};
use tiltkit::cli;
use tiltkit::corpus::{corpus, fix_a2, fix_n3};
use tiltkit::criteria::{
    check_cotilting, check_tilting, kernel_homological_cotilting, kernel_homological_tilting, ROUTE_KERNEL_EXT,
    ROUTE_TENSOR_COHOMOLOGY, ROUTE_TOP_TENSOR,
};
use tiltkit::homalg::{hom_complex, min_proj_resolution};
use tiltkit::module::{direct_sum, dual_regular, injective, is_isomorphic, projective, regular, simple, Module};
use tiltkit::oracle::{double_centralizer, dual_endomorphisms, ext_balance_grid, hom_complex_iso, tensor_cohomology, tor_ext_duality};
use tiltkit::report::CriterionReport;

const CAP: usize = 12;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn fixture(doc: tiltkit::io::InputDocument) -> Arc<Algebra> {
    Arc::new(doc.algebra().unwrap())
}

fn all_algebras() -> Vec<(String, Arc<Algebra>)> {
    corpus().unwrap().into_iter().map(|(s, d)| (s, Arc::new(d.algebra().unwrap()))).collect()
}

fn evidence(r: &CriterionReport, label: &str, degree: i64) -> Option<usize> {
    r.evidence.iter().find(|e| e.label == label && e.degree == degree).map(|e| e.dimension)
}

fn all_zero(r: &CriterionReport, label: &str) -> bool {
    r.evidence.iter().filter(|e| e.label == label).all(|e| e.dimension == 0)
}

/// `D(A)`, `A` and every basic sum of projective or injective
/// indecomposables with one summand per vertex.
fn candidates(alg: &Arc<Algebra>) -> Vec<(String, Module)> {
    let n = alg.vertex_count().unwrap();
    let mut pieces: Vec<(String, Module)> = Vec::new();
    for v in 0..n {
        for (name, m) in [(format!("P{}", v + 1), projective(alg, v).unwrap()), (format!("I{}", v + 1), injective(alg, v).unwrap())] {
            if !pieces.iter().any(|(_, x)| is_isomorphic(x, &m).unwrap().is_some()) {
                pieces.push((name, m));
            }
        }
    }
    let mut out = vec![("DA".to_string(), dual_regular(alg)), ("A".to_string(), regular(alg))];
    for mask in 0u32..1 << pieces.len() {
        if mask.count_ones() as usize != n {
            continue;
        }
        let chosen: Vec<&(String, Module)> = (0..pieces.len()).filter(|i| mask >> i & 1 == 1).map(|i| &pieces[i]).collect();
        let name = chosen.iter().map(|(s, _)| s.as_str()).collect::<Vec<_>>().join("+");
        let parts: Vec<Module> = chosen.iter().map(|(_, m)| m.clone()).collect();
        out.push((name, direct_sum(alg, &parts).unwrap().module));
    }
    out
}

fn ac1() -> Outcome {
    let alg = fixture(fix_n3());
    let t = dual_regular(&alg);
    let k = kernel_homological_tilting(&t, 2, CAP).map_err(|e| e.to_string())?;
    let top = k.route(ROUTE_TOP_TENSOR).ok_or("no top-tensor route")?;
    let tc = k.route(ROUTE_TENSOR_COHOMOLOGY).ok_or("no tensor-cohomology route")?;
    let ke = k.route(ROUTE_KERNEL_EXT).ok_or("no kernel-Ext route")?;
    let ext2 = evidence(top, "Ext^2(T, A)", 2);
    let tensored = evidence(top, "Ext^2(T, A) ⊗ T", 2);
    ensure(ext2 == Some(1), format!("dim Ext^2(T, A) = {ext2:?}, expected 1"))?;
    ensure(tensored == Some(0), format!("dim Ext^2(T, A) ⊗ T = {tensored:?}, expected 0"))?;
    ensure(all_zero(tc, "H(Hom(P,A) ⊗ T)") && tc.passed(), "tensor cohomology nonzero above degree one")?;
    let kdeg: Vec<i64> = ke.evidence.iter().filter(|e| e.label == "Ext_B(T, K)").map(|e| e.degree).collect();
    ensure(kdeg == [0, 1, 2] && all_zero(ke, "Ext_B(T, K)"), format!("kernel Ext route: {:?}", ke.evidence))?;
    ensure(k.passed(), "criterion not satisfied")?;
    Ok("Ext^2(T, A) = 1, tensored with T = 0, H^2 = 0, Ext^0..2(T, K) = 0".into())
}

fn ac2() -> Outcome {
    let (mut tilting, mut cotilting, mut tried, mut routed) = (0, 0, 0, 0);
    let mut violations = Vec::new();
    for (stem, alg) in all_algebras() {
        let w = dual_regular(&alg);
        for (name, t) in candidates(&alg) {
            tried += 1;
            if check_tilting(&t, 2, CAP).map_err(|e| e.to_string())?.passed() {
                tilting += 1;
                match kernel_homological_tilting(&t, 2, CAP) {
                    Ok(k) if k.passed() => routed += usize::from(!k.routes.is_empty()),
                    Ok(k) => violations.push(format!("{stem} {name} tilting: {:?}", k.report.evidence)),
                    Err(e) => violations.push(format!("{stem} {name} tilting: {e}")),
                }
            }
            if check_cotilting(&t, 2, &w, CAP).map_err(|e| e.to_string())?.passed() {
                cotilting += 1;
                match kernel_homological_cotilting(&t, 2, &w, CAP) {
                    Ok(k) if k.passed() => routed += usize::from(!k.routes.is_empty()),
                    Ok(k) => violations.push(format!("{stem} {name} cotilting: {:?}", k.report.evidence)),
                    Err(e) => violations.push(format!("{stem} {name} cotilting: {e}")),
                }
            }
        }
    }
    ensure(tilting > 0 && cotilting > 0, "no tilting or cotilting module found")?;
    ensure(violations.is_empty(), format!("{} violations, first: {}", violations.len(), violations.first().map_or("", |s| s)))?;
    ensure(routed > 0, "every module found has dimension at most one")?;
    Ok(format!(
        "{tried} candidates, {tilting} tilting and {cotilting} cotilting, all homological; {routed} of dimension two decided by the routes"
    ))
}

fn oracle_line(r: &tiltkit::oracle::OracleReport, min: usize) -> Outcome {
    ensure(r.instances >= min, format!("only {} instances", r.instances))?;
    if let Some(first) = r.mismatches.first() {
        return Err(format!("{} mismatches, first: {}", r.mismatches.len(), first.detail));
    }
    Ok(format!("{} instances, no mismatches; {}", r.instances, r.notes.join("; ")))
}

fn ac3() -> Outcome {
    let algs: Vec<Arc<Algebra>> = vec![fixture(fix_a2()), fixture(fix_n3())];
    oracle_line(&tensor_cohomology(0, &algs, 200).map_err(|e| e.to_string())?, 200)
}

fn ac4() -> Outcome {
    let a2 = fixture(fix_a2());
    let n3 = fixture(fix_n3());
    let pairs = vec![
        (a2.clone(), Arc::new(opposite(&a2))),
        (n3.clone(), Arc::new(opposite(&n3))),
        (a2.clone(), n3.clone()),
        (n3, a2),
    ];
    oracle_line(&tor_ext_duality(0, &pairs, 100).map_err(|e| e.to_string())?, 100)
}

fn ac5() -> Outcome {
    let mut lines = Vec::new();
    for (label, doc, dim) in [("A2", fix_a2(), 3), ("N3", fix_n3(), 5)] {
        let alg = fixture(doc);
        ensure(alg.dim() == dim, format!("{label} has dimension {}", alg.dim()))?;
        let op = Arc::new(opposite(&alg));
        for (side, c) in [("A", &alg), ("A^op", &op)] {
            let r = double_centralizer(&dual_regular(c)).map_err(|e| e.to_string())?;
            ensure(r.passed(), format!("{label} {side}: {:?}", r.mismatches.first().map(|m| &m.detail)))?;
        }
        lines.push(format!("{label} double centralizer dim {dim}"));
    }
    let n3 = fixture(fix_n3());
    for c in [n3.clone(), Arc::new(opposite(&n3))] {
        let r = dual_endomorphisms(&c).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("End(DA): {:?}", r.mismatches.first().map(|m| &m.detail)))?;
    }
    lines.push("End(DA) over N3 dim 5".into());
    Ok(lines.join(", "))
}

fn ac6() -> Outcome {
    let mut checked = 0;
    for (stem, alg) in all_algebras() {
        for (name, t) in candidates(&alg) {
            if check_tilting(&t, 2, CAP).map_err(|e| e.to_string())?.passed() {
                let r = hom_complex_iso(&t, 2).map_err(|e| e.to_string())?;
                ensure(r.passed(), format!("{stem} {name}: {}", r.mismatches.first().map_or("", |m| &m.detail)))?;
                checked += 1;
            }
        }
    }
    let n3 = fixture(fix_n3());
    let res = min_proj_resolution(&dual_regular(&n3), CAP).map_err(|e| e.to_string())?;
    let d2 = hom_complex(&res.complex(), &regular(&n3), None).map_err(|e| e.to_string())?.complex.cohomology_dim(2);
    ensure(d2 == 1, format!("degree-2 cohomology on N3 has dimension {d2}"))?;
    Ok(format!("{checked} tilting modules agree in every degree; N3 degree 2 has dimension 1"))
}

fn ac7() -> Outcome {
    let mut count = 0;
    for (stem, alg) in all_algebras() {
        let n = alg.vertex_count().unwrap();
        for v in 0..n {
            for m in [simple(&alg, v), projective(&alg, v), injective(&alg, v)] {
                let m = m.map_err(|e| e.to_string())?;
                let r = min_proj_resolution(&m, CAP).map_err(|e| e.to_string())?;
                ensure(r.minimal && !r.truncated, format!("{stem}: resolution not minimal or truncated"))?;
                r.verify().map_err(|e| format!("{stem}: {e}"))?;
                count += 1;
            }
        }
    }
    let n3 = fixture(fix_n3());
    let len = min_proj_resolution(&simple(&n3, 0).unwrap(), CAP).map_err(|e| e.to_string())?.length();
    ensure(len == 2, format!("S1 over N3 has resolution length {len}"))?;
    Ok(format!("{count} resolutions minimal and exact; S1 over N3 has length 2"))
}

fn ac8() -> Outcome {
    let mut total = 0;
    for (label, doc) in [("A2", fix_a2()), ("N3", fix_n3())] {
        let r = ext_balance_grid(&fixture(doc), 3).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.rejected == 0, format!("{label}: {:?}", r.mismatches.first().map(|m| &m.detail)))?;
        total += r.instances;
    }
    Ok(format!("{total} simple pairs and degrees agree through both resolutions"))
}

fn ac9() -> Outcome {
    let alg = fixture(fix_n3());
    let (u, w) = (regular(&alg), dual_regular(&alg));
    let ax = check_cotilting(&u, 2, &w, CAP).map_err(|e| e.to_string())?;
    ensure(ax.passed(), format!("A is not 2-cotilting: {:?}", ax.report.notes))?;
    let k = kernel_homological_cotilting(&u, 2, &w, CAP).map_err(|e| e.to_string())?;
    for route in [ROUTE_TENSOR_COHOMOLOGY, ROUTE_KERNEL_EXT, ROUTE_TOP_TENSOR] {
        let r = k.route(route).ok_or(format!("missing route {route}"))?;
        ensure(r.passed(), format!("{route}: {:?}", r.evidence))?;
    }
    let top = k.route(ROUTE_TOP_TENSOR).unwrap();
    let t = evidence(top, "Hom(U,W) ⊗ Ext^2(W, U)", 2);
    ensure(t == Some(0), format!("Hom(U,W) ⊗ Ext^2(W, U) = {t:?}"))?;
    Ok(format!(
        "cotilting, both routes and the top tensor (Ext^2(W, U) = {}) satisfied",
        evidence(top, "Ext^2(W, U)", 2).unwrap_or(0)
    ))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("tiltkit").chain(args.iter().copied()), &mut out, &mut err);
    (code, out, err)
}

fn ac10() -> Outcome {
    let commands: [&[&str]; 6] = [
        &["--fixture", "fix-n3", "ext", "2", "S1", "S3"],
        &["--fixture", "fix-n3", "check", "kernel-tilting", "DA", "2"],
        &["--fixture", "fix-n3", "resolve", "S1"],
        &["--seed", "7", "oracle", "tensor-cohomology", "--count", "30"],
        &["--seed", "7", "oracle", "tor-ext-duality", "--count", "20"],
        &["--fixture", "random-03", "--seed", "3", "oracle", "ext-balance"],
    ];
    for args in commands {
        let first = run_cli(args);
        let second = run_cli(args);
        ensure(first.0 == 0, format!("{args:?} exited with {}: {}", first.0, String::from_utf8_lossy(&first.2)))?;
        ensure(first == second, format!("{args:?} is not reproducible"))?;
    }
    Ok(format!("{} commands byte-identical across runs", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC-1", ac1, Duration::from_secs(5)),
        ("AC-2", ac2, Duration::from_secs(120)),
        ("AC-3", ac3, Duration::from_secs(60)),
        ("AC-4", ac4, Duration::from_secs(60)),
        ("AC-5", ac5, Duration::from_secs(10)),
        ("AC-6", ac6, Duration::from_secs(120)),
        ("AC-7", ac7, Duration::from_secs(120)),
        ("AC-8", ac8, Duration::from_secs(60)),
        ("AC-9", ac9, Duration::from_secs(60)),
        ("AC-10", ac10, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (id, check, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|s| {
            if took > budget {
                Err(format!("{s}, but took {took:.1?} against a budget of {budget:?}"))
            } else {
                Ok(s)
            }
        });
        match outcome {
            Ok(detail) => println!("{id}: pass ({detail}; {} ms)", took.as_millis()),
            Err(detail) => {
                failed += 1;
                println!("{id}: FAIL ({detail}; {} ms)", took.as_millis());
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
