//! Independent cross-checks: each oracle computes both sides of an identity
//! by separate routes and records every disagreement with a reproduction
//! bundle.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{opposite, Algebra};
use crate::criteria::check_tilting;
use crate::error::{Error, Result};
use crate::homalg::{
    ext, ext_module, ext_via_injective, hom_complex, hom_from, min_proj_resolution, tensor_complex, tensor_formula_rhs, tor,
    Complex, Residual, TensorFormulaFailure,
};
use crate::linalg::{kernel_basis, Coordinates, Matrix};
use crate::module::{
    direct_sum, dual_regular, endomorphism_algebra, hom, injective, is_isomorphic, projective, random_quotient_of_projectives,
    regular, regular_bimodule, simple, Module,
};

/// A disagreement between the two routes of an identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub instance: usize,
    pub detail: String,
    /// Everything needed to rebuild the instance: algebras, modules and
    /// complexes as structure constants and action matrices.
    pub repro: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub oracle: String,
    pub seed: u64,
    /// Instances whose hypotheses held and whose two sides were compared.
    pub instances: usize,
    /// Generated instances discarded because a hypothesis failed.
    pub rejected: usize,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
}

impl OracleReport {
    fn new(oracle: &str, seed: u64) -> OracleReport {
        OracleReport { oracle: oracle.into(), seed, instances: 0, rejected: 0, mismatches: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn mismatch(&mut self, instance: usize, detail: String, repro: Value) {
        self.mismatches.push(Mismatch { instance, detail, repro });
    }
}

pub const TENSOR_COHOMOLOGY: &str = "tensor-cohomology";
pub const TOR_EXT_DUALITY: &str = "tor-ext-duality";
pub const EXT_BALANCE: &str = "ext-balance";
pub const DOUBLE_CENTRALIZER: &str = "double-centralizer";
pub const HOM_COMPLEX_ISO: &str = "hom-complex-iso";

pub const ORACLES: [&str; 5] = [TENSOR_COHOMOLOGY, TOR_EXT_DUALITY, EXT_BALANCE, DOUBLE_CENTRALIZER, HOM_COMPLEX_ISO];

const CAP: usize = 12;
/// Generation attempts per instance before it is given up.
const ATTEMPTS: usize = 40;

fn instance_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add((k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn algebra_json(alg: &Algebra) -> Value {
    serde_json::to_value(alg).expect("algebras serialize")
}

pub fn module_json(m: &Module) -> Value {
    json!({
        "dim": m.dim(),
        "dim_vector": m.dim_vector(),
        "actions": m.actions().iter().map(Matrix::to_vecs).collect::<Vec<_>>(),
    })
}

pub fn complex_json(c: &Complex) -> Value {
    json!({
        "lo": c.lo(),
        "terms": c.terms().iter().map(module_json).collect::<Vec<_>>(),
        "diffs": c.degrees().take(c.terms().len().saturating_sub(1)).map(|i| c.diff(i).to_vecs()).collect::<Vec<_>>(),
    })
}

fn random_invertible(p: u32, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let g = Matrix::random(p, n, n, rng);
        if g.is_invertible() {
            return g;
        }
    }
}

fn random_module(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<Module> {
    let n = alg.vertex_count().unwrap_or(1);
    let v = rng.random_range(0..n);
    match rng.random_range(0..6) {
        0 | 1 => simple(alg, v),
        2 => projective(alg, v),
        3 => injective(alg, v),
        _ => random_quotient_of_projectives(alg, rng, 3),
    }
}

fn random_simple(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<Module> {
    simple(alg, rng.random_range(0..alg.vertex_count().unwrap_or(1)))
}

fn random_projective_sum(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<Module> {
    let n = alg.vertex_count().unwrap_or(1);
    let parts: Vec<Module> = (0..rng.random_range(1..=2)).map(|_| projective(alg, rng.random_range(0..n))).collect::<Result<_>>()?;
    Ok(direct_sum(alg, &parts)?.module)
}

/// A random homomorphism `a → b` whose composite with `prev` vanishes.
fn random_hom_after(prev: Option<&Matrix>, a: &Module, b: &Module, rng: &mut ChaCha8Rng) -> Result<Matrix> {
    let h = hom(a, b)?;
    let p = a.p();
    if h.dim() == 0 {
        return Ok(Matrix::zeros(p, a.dim(), b.dim()));
    }
    let allowed = match prev {
        None => Matrix::identity(p, h.dim()),
        Some(d) => {
            let rows: Vec<Vec<u32>> = h.basis().iter().map(|f| d.mul(f).flatten()).collect();
            kernel_basis(&Matrix::from_vecs(p, d.rows() * b.dim(), &rows))
        }
    };
    let c = Matrix::random(p, 1, allowed.rows(), rng).mul(&allowed);
    Ok(h.element(c.row(0)))
}

/// Conjugates every term by a random base change and adds a contractible
/// `P → P` summand in a random position.
fn disguise(c: &Complex, rng: &mut ChaCha8Rng) -> Result<Complex> {
    let alg = c.algebra().clone();
    let p = alg.p();
    let len = c.terms().len();
    let mut terms: Vec<Module> = c.terms().to_vec();
    let mut diffs: Vec<Matrix> = (0..len.saturating_sub(1)).map(|k| c.diff(c.lo() + k as i64)).collect();
    if len >= 2 {
        let k = rng.random_range(0..len - 1);
        let extra = random_projective_sum(&alg, rng)?;
        let e = extra.dim();
        let grow = |m: &Module| -> Result<Module> { Ok(direct_sum(&alg, &[m.clone(), extra.clone()])?.module) };
        let (a, b) = (terms[k].dim(), terms[k + 1].dim());
        let mut d = Matrix::zeros(p, a + e, b + e);
        d.set_block(0, 0, &diffs[k]);
        d.set_block(a, b, &Matrix::identity(p, e));
        diffs[k] = d;
        if k >= 1 {
            diffs[k - 1] = diffs[k - 1].hstack(&Matrix::zeros(p, diffs[k - 1].rows(), e));
        }
        if k + 1 < diffs.len() {
            diffs[k + 1] = diffs[k + 1].vstack(&Matrix::zeros(p, e, diffs[k + 1].cols()));
        }
        terms[k] = grow(&terms[k])?;
        terms[k + 1] = grow(&terms[k + 1])?;
    }
    let gs: Vec<Matrix> = terms.iter().map(|t| random_invertible(p, t.dim(), rng)).collect();
    let invs: Vec<Matrix> = gs.iter().map(|g| g.inverse().expect("invertible by construction")).collect();
    let terms = terms
        .iter()
        .zip(gs.iter().zip(&invs))
        .map(|(t, (g, gi))| Module::new(&alg, t.dim(), t.actions().iter().map(|a| gi.mul(a).mul(g)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let diffs = diffs.iter().enumerate().map(|(k, d)| invs[k].mul(d).mul(&gs[k + 1])).collect();
    Complex::new(&alg, c.lo(), terms, diffs)
}

fn shifted(c: &Complex, lo: i64) -> Result<Complex> {
    let diffs = (0..c.terms().len().saturating_sub(1)).map(|k| c.diff(c.lo() + k as i64)).collect();
    Complex::new(c.algebra(), lo, c.terms().to_vec(), diffs)
}

struct FormulaInstance {
    m: Module,
    y: Complex,
    mdeg: i64,
    ndeg: i64,
}

fn formula_instance(alg: &Arc<Algebra>, op: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<FormulaInstance> {
    let mut m = random_module(alg, rng)?;
    let ndeg = rng.random_range(0..=2i64);
    let mut mdeg = ndeg - rng.random_range(1..=3i64);
    let y = match rng.random_range(0..4) {
        0 | 1 => {
            let n = random_module(op, rng)?;
            let r = min_proj_resolution(&n, CAP)?;
            if r.length() >= 1 && rng.random_bool(0.6) {
                // a simple at a vertex of the resolution makes Tor nonzero
                let k = rng.random_range(1..=r.length());
                let vs = &r.summands[k];
                m = simple(alg, vs[rng.random_range(0..vs.len())])?;
                mdeg = ndeg - k as i64;
            }
            let c = shifted(&r.complex(), ndeg - r.length() as i64)?;
            disguise(&c, rng)?
        }
        2 => {
            let len = rng.random_range(2..=4usize);
            let terms: Vec<Module> = (0..len).map(|_| random_projective_sum(op, rng)).collect::<Result<_>>()?;
            let mut diffs: Vec<Matrix> = Vec::new();
            for k in 0..len - 1 {
                let d = random_hom_after(diffs.last(), &terms[k], &terms[k + 1], rng)?;
                diffs.push(d);
            }
            Complex::new(op, ndeg - len as i64 + 1, terms, diffs)?
        }
        _ => Complex::concentrated(&random_module(op, rng)?, ndeg),
    };
    Ok(FormulaInstance { m, y, mdeg, ndeg })
}

/// Result of comparing both sides of the tensor cohomology formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Compared { lhs: usize, rhs: usize },
    /// The formula does not apply; nothing was compared.
    HypothesisViolated(TensorFormulaFailure),
}

/// `dim H^m(M ⊗ Y•)` from the complex, against the formula's right side.
pub fn compare_tensor_formula(m: &Module, y: &Complex, mdeg: i64, ndeg: i64) -> Result<Outcome> {
    let rhs = match tensor_formula_rhs(m, y, mdeg, ndeg, CAP) {
        Ok(v) => v,
        Err(TensorFormulaFailure::Precondition(e)) => return Err(Error::Precondition(e)),
        Err(e) => return Ok(Outcome::HypothesisViolated(e)),
    };
    let lhs = tensor_complex(m, y, Residual::None)?.complex.cohomology_dim(mdeg);
    Ok(Outcome::Compared { lhs, rhs })
}

/// `dim H^m(M ⊗ Y•) = dim Tor_(n−m)(M, H^n(Y•))` on random complexes of
/// projectives over the opposite algebra: the left side from the complex
/// itself, the right side from a resolution of its top cohomology.
pub fn tensor_cohomology(seed: u64, algebras: &[Arc<Algebra>], count: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new(TENSOR_COHOMOLOGY, seed);
    let ops: Vec<Arc<Algebra>> = algebras.iter().map(|a| Arc::new(opposite(a))).collect();
    let mut hypothesis_violations = 0;
    let mut nonzero = 0;
    for k in 0..count {
        let s = instance_seed(seed, k);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let which = k % algebras.len();
        let (alg, op) = (&algebras[which], &ops[which]);
        for _ in 0..ATTEMPTS {
            let inst = formula_instance(alg, op, &mut rng)?;
            let (lhs, rhs) = match compare_tensor_formula(&inst.m, &inst.y, inst.mdeg, inst.ndeg)? {
                Outcome::HypothesisViolated(_) => {
                    hypothesis_violations += 1;
                    report.rejected += 1;
                    continue;
                }
                Outcome::Compared { lhs, rhs } => (lhs, rhs),
            };
            report.instances += 1;
            nonzero += usize::from(lhs != 0 || rhs != 0);
            if lhs != rhs {
                report.mismatch(
                    k,
                    format!("H^{}(M ⊗ Y) has dimension {lhs}, Tor_{}(M, H^{}(Y)) has dimension {rhs}", inst.mdeg, inst.ndeg - inst.mdeg, inst.ndeg),
                    json!({
                        "seed": s,
                        "algebra": algebra_json(alg),
                        "m": module_json(&inst.m),
                        "y": complex_json(&inst.y),
                        "mdeg": inst.mdeg,
                        "ndeg": inst.ndeg,
                    }),
                );
            }
            break;
        }
    }
    report.notes.push(format!("{hypothesis_violations} generated instances had a hypothesis violated and were redrawn"));
    report.notes.push(format!("{nonzero} compared instances had a nonzero side"));
    Ok(report)
}

/// A bimodule on one space: `right` over `C` and a commuting `left`
/// action over `S`.
struct Bimod {
    over_c: Module,
    over_s: Module,
}

fn external_tensor(x: &Module, y: &Module) -> Result<Bimod> {
    let p = x.p();
    let (ix, iy) = (Matrix::identity(p, x.dim()), Matrix::identity(p, y.dim()));
    let dim = x.dim() * y.dim();
    let over_s = Module::new(x.algebra(), dim, x.actions().iter().map(|a| a.kron(&iy)).collect())?;
    let over_c = Module::new(y.algebra(), dim, y.actions().iter().map(|a| ix.kron(a)).collect())?;
    Ok(Bimod { over_c, over_s })
}

fn random_bimodule(c: &Arc<Algebra>, s: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<Bimod> {
    if s.is_opposite_of(c) && rng.random_bool(0.3) {
        let b = regular_bimodule(c);
        let over_s = Module::new(s, b.right.dim(), b.right.actions().to_vec())?;
        return Ok(Bimod { over_c: b.left, over_s });
    }
    external_tensor(&random_module(s, rng)?, &random_module(c, rng)?)
}

/// For a bimodule `M` (over `C`, with a commuting action of `S`) and
/// `I = D(S)`:
/// `dim Hom_S(Tor_i(M, N), I) = dim Ext^i(N, Hom_S(M, I))` for `N` over
/// `C^op`, and `dim Hom_S(Ext^i(L, M), I) = dim Tor_i(L, Hom_S(M, I))` for
/// `L` over `C`, both for `0 ≤ i ≤ 3`. Tor is computed by resolving the
/// opposite factor from the one Ext uses.
pub fn tor_ext_duality(seed: u64, pairs: &[(Arc<Algebra>, Arc<Algebra>)], count: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new(TOR_EXT_DUALITY, seed);
    let mut nonzero = 0;
    for k in 0..count {
        let s_seed = instance_seed(seed, k);
        let mut rng = ChaCha8Rng::seed_from_u64(s_seed);
        let (c, s) = &pairs[k % pairs.len()];
        let c_op = Arc::new(opposite(c));
        // simples on both sides make positive-degree groups likely
        let simples = rng.random_bool(0.5);
        let b = if simples {
            external_tensor(&random_module(s, &mut rng)?, &random_simple(c, &mut rng)?)?
        } else {
            random_bimodule(c, s, &mut rng)?
        };
        let i_s = dual_regular(s);
        let hom_mi = hom(&b.over_s, &i_s)?.source_residual(&b.over_c)?;
        let hom_mi = Module::new(&c_op, hom_mi.dim(), hom_mi.actions().to_vec())?;
        let first_part = k % 2 == 0;
        let other_side = if first_part { &c_op } else { c };
        let other = if simples { random_simple(other_side, &mut rng)? } else { random_module(other_side, &mut rng)? };
        let res = min_proj_resolution(&other, CAP)?;
        if res.truncated {
            report.rejected += 1;
            continue;
        }
        let deleted = res.complex();
        let side = if first_part {
            Some(tensor_complex(&b.over_c, &deleted, Residual::Left(&b.over_s))?.complex)
        } else {
            None
        };
        for i in 0..=3usize {
            let (lhs, rhs, what) = if first_part {
                let tor_module = if i > res.length() {
                    Module::zero(s)
                } else {
                    side.as_ref().expect("built for the first part").cohomology(-(i as i64))?.module
                };
                let lhs = hom(&tor_module, &i_s)?.dim();
                let rhs = ext_via_injective(i, &other, &hom_mi, CAP)?;
                (lhs, rhs, "Hom_S(Tor_i(M, N), I) against Ext^i(N, Hom_S(M, I))")
            } else {
                let ext_m = ext_module(i, &res, &b.over_c, &b.over_s)?
                    .ok_or_else(|| Error::Precondition("resolution cut off".into()))?;
                let lhs = hom(&ext_m, &i_s)?.dim();
                let rhs = tor(i, &other, &hom_mi, CAP)?;
                (lhs, rhs, "Hom_S(Ext^i(L, M), I) against Tor_i(L, Hom_S(M, I))")
            };
            let Some(rhs) = rhs else {
                report.rejected += 1;
                continue;
            };
            nonzero += usize::from(i > 0 && (lhs != 0 || rhs != 0));
            if lhs != rhs {
                report.mismatch(
                    k,
                    format!("{what} in degree {i}: {lhs} != {rhs}"),
                    json!({
                        "seed": s_seed,
                        "c": algebra_json(c),
                        "s": algebra_json(s),
                        "m_over_c": module_json(&b.over_c),
                        "m_over_s": module_json(&b.over_s),
                        "other": module_json(&other),
                        "degree": i,
                    }),
                );
            }
        }
        report.instances += 1;
    }
    report.notes.push(format!("{nonzero} comparisons in positive degree had a nonzero side"));
    Ok(report)
}

/// `Ext^i(M, N)` through a projective resolution of `M` and through an
/// injective coresolution of `N`, for `0 ≤ i ≤ imax`.
pub fn ext_balance(m: &Module, n: &Module, imax: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new(EXT_BALANCE, 0);
    let mut dims = Vec::new();
    for i in 0..=imax {
        let (a, b) = (ext(i, m, n, CAP)?, ext_via_injective(i, m, n, CAP)?);
        match (a, b) {
            (Some(a), Some(b)) => {
                dims.push(a);
                if a != b {
                    report.mismatch(
                        i,
                        format!("Ext^{i}: {a} through the resolution, {b} through the coresolution"),
                        json!({ "algebra": algebra_json(m.algebra()), "m": module_json(m), "n": module_json(n), "degree": i }),
                    );
                }
            }
            _ => report.rejected += 1,
        }
        report.instances += 1;
    }
    report.notes.push(format!("dimensions {dims:?}"));
    Ok(report)
}

/// [`ext_balance`] on every pair of simple modules.
pub fn ext_balance_grid(alg: &Arc<Algebra>, imax: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new(EXT_BALANCE, 0);
    let n = alg.vertex_count().unwrap_or(0);
    for u in 0..n {
        for v in 0..n {
            let r = ext_balance(&simple(alg, u)?, &simple(alg, v)?, imax)?;
            report.instances += r.instances;
            report.rejected += r.rejected;
            report.mismatches.extend(r.mismatches);
            report.notes.push(format!("S{} S{}: {}", u + 1, v + 1, r.notes.join("; ")));
        }
    }
    Ok(report)
}

/// Checks that `images` (coordinates in `target` of the image of each
/// basis element of `source`) define an algebra isomorphism, and that the
/// pulled-back regular module of `target` is the regular module of `source`.
fn check_algebra_iso(report: &mut OracleReport, source: &Arc<Algebra>, target: &Arc<Algebra>, images: &[Vec<u32>]) -> Result<()> {
    let p = source.p();
    let repro = || json!({ "source": algebra_json(source), "target": algebra_json(target), "images": images });
    report.instances += 1;
    if source.dim() != target.dim() {
        report.mismatch(0, format!("dimensions {} and {}", source.dim(), target.dim()), repro());
        return Ok(());
    }
    let phi = Matrix::from_vecs(p, target.dim(), images);
    let apply = |x: &[u32]| phi.apply(x);
    if !phi.is_invertible() {
        report.mismatch(0, "the map is not bijective".into(), repro());
    }
    if apply(source.unit()) != target.unit() {
        report.mismatch(0, "the unit is not preserved".into(), repro());
    }
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = apply(&source.mul(&source.basis_vector(i), &source.basis_vector(j)));
            let rhs = target.mul(&images[i], &images[j]);
            if lhs != rhs {
                report.mismatch(0, format!("basis elements {i}, {j} are not multiplied compatibly"), repro());
                return Ok(());
            }
        }
    }
    let pulled = Module::new(source, target.dim(), images.iter().map(|x| target.right_mult(x)).collect())?;
    if is_isomorphic(&pulled, &regular(source))?.is_none() {
        report.mismatch(0, "the pulled-back regular module is not the regular module".into(), repro());
    }
    Ok(())
}

/// `End_B(T) ≅ C` for `B = End_C(T)`, through the explicit map sending `a`
/// to its action on `T`.
pub fn double_centralizer(t: &Module) -> Result<OracleReport> {
    let mut report = OracleReport::new(DOUBLE_CENTRALIZER, 0);
    let (b, bim) = endomorphism_algebra(t)?;
    let (e, bim2) = endomorphism_algebra(&bim.right)?;
    let coords = Coordinates::new(Matrix::from_vecs(t.p(), t.dim() * t.dim(), &bim2.right.actions().iter().map(Matrix::flatten).collect::<Vec<_>>()));
    let c = t.algebra();
    let mut images = Vec::new();
    for a in t.actions() {
        match coords.coords(&a.flatten()) {
            Some(x) => images.push(x),
            None => {
                report.instances += 1;
                report.mismatch(0, "an action does not commute with the endomorphisms".into(), json!({ "t": module_json(t) }));
                return Ok(report);
            }
        }
    }
    check_algebra_iso(&mut report, c, &e, &images)?;
    report.notes.push(format!("End(T) has dimension {}, its centralizer on T has dimension {}", b.dim(), e.dim()));
    report.notes.push("the centralizer is isomorphic to the algebra acting on T, through a ↦ action of a".into());
    Ok(report)
}

/// `End(D(C)) ≅ C^op`, through `b ↦ (right multiplication by b)ᵀ`.
pub fn dual_endomorphisms(c: &Arc<Algebra>) -> Result<OracleReport> {
    let mut report = OracleReport::new(DOUBLE_CENTRALIZER, 0);
    let d = dual_regular(c);
    let (e, bim) = endomorphism_algebra(&d)?;
    let coords = Coordinates::new(Matrix::from_vecs(c.p(), d.dim() * d.dim(), &bim.right.actions().iter().map(Matrix::flatten).collect::<Vec<_>>()));
    let op = Arc::new(opposite(c));
    let mut images = Vec::new();
    for i in 0..c.dim() {
        let f = c.right_mult(&c.basis_vector(i)).transpose();
        images.push(coords.coords(&f.flatten()).ok_or_else(|| Error::Precondition("multiplication is not an endomorphism".into()))?);
    }
    check_algebra_iso(&mut report, &op, &e, &images)?;
    report.notes.push(format!("End(D(A)) has dimension {}", e.dim()));
    report.notes.push("End(D(A)) is isomorphic to the opposite algebra, through b ↦ transpose of right multiplication by b".into());
    Ok(report)
}

/// For an `n`-tilting `T`: `Hom(P•, A)` and `Hom(T, T•)` have the same
/// cohomology in every degree, with `P•` the projective resolution of `T`
/// and `T•` the `add T` coresolution of `A`.
pub fn hom_complex_iso(t: &Module, n: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new(HOM_COMPLEX_ISO, 0);
    let ax = check_tilting(t, n, CAP)?;
    if !ax.passed() {
        return Err(Error::Precondition(format!("not an {n}-tilting module")));
    }
    let seq = ax.certificate.sequence.as_ref().ok_or_else(|| Error::Precondition("no coresolution in the certificate".into()))?;
    let p = min_proj_resolution(t, CAP)?;
    let left = hom_complex(&p.complex(), &regular(t.algebra()), None)?.complex;
    let right = hom_from(t, &seq.complex()?, None)?.complex;
    let top = left.hi().max(right.hi()).max(0);
    let mut dims = Vec::new();
    for j in 0..=top {
        let (a, b) = (left.cohomology_dim(j), right.cohomology_dim(j));
        dims.push(a);
        report.instances += 1;
        if a != b {
            report.mismatch(
                j as usize,
                format!("degree {j}: Hom(P, A) has cohomology {a}, Hom(T, T•) has {b}"),
                json!({ "algebra": algebra_json(t.algebra()), "t": module_json(t), "n": n }),
            );
        }
    }
    report.notes.push(format!("cohomology dimensions by degree: {dims:?}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{fix_a2, fix_n3};

    fn fixtures() -> Vec<Arc<Algebra>> {
        vec![Arc::new(fix_a2().algebra().unwrap()), Arc::new(fix_n3().algebra().unwrap())]
    }

    #[test]
    fn tensor_cohomology_small_run() {
        let r = tensor_cohomology(1, &fixtures(), 20).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.instances, 20);
    }

    #[test]
    fn broken_hypothesis_is_reported_as_such() {
        let a = &fixtures()[0];
        let op = Arc::new(opposite(a));
        // S_2 over the opposite algebra is not flat against S_1
        let y = Complex::concentrated(&simple(&op, 1).unwrap(), 1);
        let out = compare_tensor_formula(&simple(a, 0).unwrap(), &y, 0, 1).unwrap();
        assert!(matches!(out, Outcome::HypothesisViolated(TensorFormulaFailure::TermNotFlat { .. })), "{out:?}");
    }

    #[test]
    fn concentrated_flat_complex_compares_trivially() {
        let a = &fixtures()[1];
        let op = Arc::new(opposite(a));
        let y = Complex::concentrated(&projective(&op, 1).unwrap(), 2);
        let out = compare_tensor_formula(&injective(a, 0).unwrap(), &y, 0, 2).unwrap();
        assert_eq!(out, Outcome::Compared { lhs: 0, rhs: 0 });
    }

    #[test]
    fn tor_ext_duality_small_run() {
        let f = fixtures();
        let pairs: Vec<_> = f.iter().map(|a| (a.clone(), Arc::new(opposite(a)))).collect();
        let r = tor_ext_duality(2, &pairs, 10).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn double_centralizers_of_fixtures() {
        for a in fixtures() {
            assert!(double_centralizer(&dual_regular(&a)).unwrap().passed());
            assert!(dual_endomorphisms(&a).unwrap().passed());
        }
    }

    #[test]
    fn perturbed_map_is_caught() {
        let a = &fixtures()[1];
        let mut r = OracleReport::new("test", 0);
        let mut images: Vec<Vec<u32>> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
        images.swap(3, 4);
        check_algebra_iso(&mut r, a, a, &images).unwrap();
        assert!(!r.passed());
    }
}
