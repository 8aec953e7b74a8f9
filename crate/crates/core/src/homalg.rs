//! Bounded complexes, resolutions, Hom and tensor complexes, Ext and Tor.
//!
//! Complexes are cochain complexes: the differential in degree `i` maps
//! `C^i → C^(i+1)`. Deleted projective resolutions put `P_i` in degree
//! `-i`; deleted injective coresolutions put `I_i` in degree `i`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, quotient_basis, Coordinates, Matrix};
use crate::module::{
    direct_sum, dual_over, hom, is_homomorphism, kernel, opposite_arc, projective, same_algebra, HomSpace,
    Module, ModuleMap,
};

/// Default bound on resolution length.
pub const DEFAULT_CAP: usize = 16;

#[derive(Debug, Clone)]
pub struct Complex {
    algebra: Arc<Algebra>,
    lo: i64,
    terms: Vec<Module>,
    /// `diffs[k]` maps `terms[k]` to `terms[k + 1]`.
    diffs: Vec<Matrix>,
}

impl Complex {
    /// Builds a complex from consecutive terms starting in degree `lo`,
    /// checking that the differentials are homomorphisms with `d∘d = 0`.
    pub fn new(algebra: &Arc<Algebra>, lo: i64, terms: Vec<Module>, diffs: Vec<Matrix>) -> Result<Complex> {
        let c = Complex::new_unchecked(algebra, lo, terms, diffs)?;
        for (k, d) in c.diffs.iter().enumerate() {
            if !is_homomorphism(&c.terms[k], &c.terms[k + 1], d) {
                return Err(Error::NotAModule(format!("differential in degree {} is not a homomorphism", lo + k as i64)));
            }
        }
        c.check_square_zero()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(algebra: &Arc<Algebra>, lo: i64, terms: Vec<Module>, diffs: Vec<Matrix>) -> Result<Complex> {
        if diffs.len() + 1 != terms.len().max(1) || (terms.is_empty() && !diffs.is_empty()) {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for t in &terms {
            if !same_algebra(algebra, t.algebra()) {
                return Err(Error::AlgebraMismatch("term over a different algebra".into()));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (terms[k].dim(), terms[k + 1].dim()) {
                return Err(Error::DimensionMismatch(format!(
                    "differential in degree {} has shape {:?}",
                    lo + k as i64,
                    d.shape()
                )));
            }
        }
        Ok(Complex { algebra: algebra.clone(), lo, terms, diffs })
    }

    /// A module placed in a single degree.
    pub fn concentrated(m: &Module, degree: i64) -> Complex {
        Complex { algebra: m.algebra().clone(), lo: degree, terms: vec![m.clone()], diffs: vec![] }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree with a stored term.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    /// The term in degree `i`, zero outside the stored window.
    pub fn term(&self, i: i64) -> Module {
        self.slot(i).map(|k| self.terms[k].clone()).unwrap_or_else(|| Module::zero(&self.algebra))
    }

    /// The differential leaving degree `i`.
    pub fn diff(&self, i: i64) -> Matrix {
        match self.slot(i) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => Matrix::zeros(self.algebra.p(), self.term(i).dim(), self.term(i + 1).dim()),
        }
    }

    fn slot(&self, i: i64) -> Option<usize> {
        (i >= self.lo && i <= self.hi()).then(|| (i - self.lo) as usize)
    }

    /// Verifies `d^(i+1)∘d^i = 0` in every degree.
    pub fn check_square_zero(&self) -> Result<()> {
        for w in self.diffs.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return Err(Error::NotAModule("consecutive differentials do not compose to zero".into()));
            }
        }
        Ok(())
    }

    pub fn cohomology(&self, i: i64) -> Result<Cohomology> {
        cohomology(self, i)
    }

    /// Dimensions of all cohomology groups in the stored window.
    pub fn cohomology_dims(&self) -> Vec<(i64, usize)> {
        self.degrees().map(|i| (i, self.cohomology_dim(i))).collect()
    }

    /// `dim ker d^i − dim im d^(i−1)`, without building the carrier.
    pub fn cohomology_dim(&self, i: i64) -> usize {
        let d = self.term(i).dim();
        d - self.diff(i).rank() - self.diff(i - 1).rank()
    }
}

/// `H^i` of a complex with its induced action.
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub module: Module,
    /// Cycle representatives of the basis classes, as rows in the term.
    pub representatives: Matrix,
    cycles: Coordinates,
    projection: Matrix,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Class of a cycle.
    pub fn class_of(&self, z: &[u32]) -> Vec<u32> {
        let c = self.cycles.coords(z).expect("vector is not a cycle");
        Matrix::row_vector(self.module.p(), c).mul(&self.projection).row(0).to_vec()
    }
}

pub fn cohomology(c: &Complex, i: i64) -> Result<Cohomology> {
    let term = c.term(i);
    let z = kernel_basis(&c.diff(i));
    let cycles = Coordinates::new(z.clone());
    let boundaries = c.diff(i - 1);
    let b = cycles
        .try_coords_of(&boundaries)
        .ok_or_else(|| Error::NotAModule("boundaries are not cycles".into()))?;
    let q = quotient_basis(&b, z.rows());
    let representatives = q.section.mul(&z);
    let mut act = Vec::with_capacity(term.actions().len());
    for a in term.actions() {
        let moved = representatives.mul(a);
        let c = cycles
            .try_coords_of(&moved)
            .ok_or_else(|| Error::NotAModule("action does not preserve cycles".into()))?;
        act.push(c.mul(&q.projection));
    }
    let module = Module::new(&c.algebra, q.dim(), act)?;
    Ok(Cohomology { module, representatives, cycles, projection: q.projection })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolutionKind {
    Projective,
    Injective,
}

/// A projective resolution `… → P_1 → P_0 → M` or an injective
/// coresolution `M → I_0 → I_1 → …`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub kind: ResolutionKind,
    pub module: Module,
    /// `P_i` or `I_i`.
    pub terms: Vec<Module>,
    /// Vertex of every indecomposable summand of each term, in order.
    pub summands: Vec<Vec<usize>>,
    /// Projective case: `maps[i]` is `P_(i+1) → P_i`.
    /// Injective case: `maps[i]` is `I_i → I_(i+1)`.
    pub maps: Vec<Matrix>,
    /// `P_0 → M`, or `M → I_0`.
    pub augmentation: Matrix,
    pub minimal: bool,
    /// Set when the cap was reached before the resolution closed up.
    pub truncated: bool,
}

impl Resolution {
    /// Index of the last term.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn is_zero_module(&self) -> bool {
        self.module.is_zero()
    }

    /// First degree whose derived groups cannot be computed from this
    /// resolution, if it was truncated.
    pub fn inconclusive_from(&self) -> Option<usize> {
        self.truncated.then(|| self.terms.len() - 1)
    }

    /// The deleted resolution as a complex.
    pub fn complex(&self) -> Complex {
        let alg = self.module.algebra();
        match self.kind {
            ResolutionKind::Projective => {
                let l = self.terms.len();
                if l == 0 {
                    return Complex::new_unchecked(alg, 0, vec![], vec![]).unwrap();
                }
                let terms: Vec<Module> = self.terms.iter().rev().cloned().collect();
                let diffs: Vec<Matrix> = self.maps.iter().rev().cloned().collect();
                Complex::new_unchecked(alg, -(l as i64 - 1), terms, diffs).unwrap()
            }
            ResolutionKind::Injective => {
                Complex::new_unchecked(alg, 0, self.terms.clone(), self.maps.clone()).unwrap()
            }
        }
    }

    /// Checks exactness of the augmented complex and, for minimal
    /// resolutions, that every differential lands in the radical.
    pub fn verify(&self) -> Result<()> {
        let aug_rank = self.augmentation.rank();
        let n = self.terms.len();
        match self.kind {
            ResolutionKind::Projective => {
                if n == 0 {
                    return if self.module.is_zero() { Ok(()) } else { Err(inexact("empty resolution of a nonzero module")) };
                }
                if aug_rank != self.module.dim() {
                    return Err(inexact("augmentation is not surjective"));
                }
                if !self.maps.is_empty() && !self.maps[0].mul(&self.augmentation).is_zero() {
                    return Err(inexact("augmentation does not kill the first differential"));
                }
                for i in 0..n {
                    let out = if i == 0 { aug_rank } else { self.maps[i - 1].rank() };
                    let inc = self.maps.get(i).map_or(0, Matrix::rank);
                    let last_open = self.truncated && i == n - 1;
                    if !last_open && out + inc != self.terms[i].dim() {
                        return Err(inexact(&format!("not exact at P_{i}")));
                    }
                }
                for w in self.maps.windows(2) {
                    if !w[1].mul(&w[0]).is_zero() {
                        return Err(inexact("differentials do not compose to zero"));
                    }
                }
                if self.minimal {
                    for (i, d) in self.maps.iter().enumerate() {
                        let rad = Coordinates::new(self.terms[i].radical()?);
                        if (0..d.rows()).any(|r| !rad.contains(d.row(r))) {
                            return Err(Error::Precondition(format!("differential into P_{i} leaves the radical")));
                        }
                    }
                }
            }
            ResolutionKind::Injective => {
                if n == 0 {
                    return if self.module.is_zero() { Ok(()) } else { Err(inexact("empty coresolution of a nonzero module")) };
                }
                if aug_rank != self.module.dim() {
                    return Err(inexact("augmentation is not injective"));
                }
                if !self.maps.is_empty() && !self.augmentation.mul(&self.maps[0]).is_zero() {
                    return Err(inexact("first differential does not kill the augmentation"));
                }
                for i in 0..n {
                    let inc = if i == 0 { aug_rank } else { self.maps[i - 1].rank() };
                    let out = self.maps.get(i).map_or(0, Matrix::rank);
                    let last_open = self.truncated && i == n - 1;
                    if !last_open && out + inc != self.terms[i].dim() {
                        return Err(inexact(&format!("not exact at I_{i}")));
                    }
                }
                for w in self.maps.windows(2) {
                    if !w[0].mul(&w[1]).is_zero() {
                        return Err(inexact("differentials do not compose to zero"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn inexact(msg: &str) -> Error {
    Error::Precondition(format!("resolution check failed: {msg}"))
}

/// Projective cover `P → M` built from lifts of a basis of the top.
pub fn projective_cover(m: &Module) -> Result<(Module, Vec<usize>, Matrix)> {
    let alg = m.algebra();
    let pb = alg.require_paths("projective covers")?;
    let p = alg.p();
    let rad = m.radical()?;
    let mut span = rad.clone();
    let mut rank = span.rank();
    let mut parts = Vec::new();
    let mut vertices = Vec::new();
    let mut images: Vec<Matrix> = Vec::new();
    let mut cache: HashMap<usize, Module> = HashMap::new();
    for (v, &e) in pb.vertex.iter().enumerate() {
        let block = m.act(e).row_basis();
        for r in 0..block.rows() {
            let cand = span.vstack(&block.select_rows(&[r]));
            let new_rank = cand.rank();
            if new_rank == rank {
                continue;
            }
            span = cand;
            rank = new_rank;
            let gen = block.row(r);
            let pv = match cache.get(&v) {
                Some(x) => x.clone(),
                None => {
                    let x = projective(alg, v)?;
                    cache.insert(v, x.clone());
                    x
                }
            };
            let idx: Vec<usize> = (0..alg.dim()).filter(|&i| pb.src[i] == v).collect();
            let rows: Vec<Vec<u32>> = idx.iter().map(|&b| m.act(b).apply(gen)).collect();
            images.push(Matrix::from_vecs(p, m.dim(), &rows));
            parts.push(pv);
            vertices.push(v);
        }
    }
    let sum = direct_sum(alg, &parts)?;
    let mut pi = Matrix::zeros(p, 0, m.dim());
    for img in &images {
        pi = pi.vstack(img);
    }
    Ok((sum.module, vertices, pi))
}

/// Minimal projective resolution by iterated projective covers.
pub fn min_proj_resolution(m: &Module, cap: usize) -> Result<Resolution> {
    let p = m.p();
    let mut terms = Vec::new();
    let mut summands = Vec::new();
    let mut maps = Vec::new();
    let mut augmentation = Matrix::zeros(p, 0, m.dim());
    let mut current = m.clone();
    // inclusion of the current syzygy into the previous term
    let mut inclusion: Option<Matrix> = None;
    let mut truncated = false;
    loop {
        if current.is_zero() {
            break;
        }
        if terms.len() > cap {
            truncated = true;
            break;
        }
        let (pc, verts, pi) = projective_cover(&current)?;
        match &inclusion {
            None => augmentation = pi.clone(),
            Some(inc) => maps.push(pi.mul(inc)),
        }
        let cover = ModuleMap::new_unchecked(&pc, &current, pi)?;
        let (k, inc) = kernel(&cover)?;
        terms.push(pc);
        summands.push(verts);
        inclusion = Some(inc.matrix);
        current = k;
    }
    let r = Resolution {
        kind: ResolutionKind::Projective,
        module: m.clone(),
        terms,
        summands,
        maps,
        augmentation,
        minimal: true,
        truncated,
    };
    r.verify()?;
    Ok(r)
}

/// Minimal injective coresolution, dual to the projective resolution of
/// the dual module over the opposite algebra.
pub fn min_inj_coresolution(m: &Module, cap: usize) -> Result<Resolution> {
    let alg = m.algebra();
    let op = opposite_arc(alg);
    let dm = dual_over(m, &op)?;
    let pr = min_proj_resolution(&dm, cap)?;
    let terms: Vec<Module> = pr.terms.iter().map(|t| dual_over(t, alg)).collect::<Result<_>>()?;
    let r = Resolution {
        kind: ResolutionKind::Injective,
        module: m.clone(),
        terms,
        summands: pr.summands.clone(),
        maps: pr.maps.iter().map(Matrix::transpose).collect(),
        augmentation: pr.augmentation.transpose(),
        minimal: true,
        truncated: pr.truncated,
    };
    r.verify()?;
    Ok(r)
}

/// A complex of hom spaces together with the spaces themselves.
#[derive(Debug, Clone)]
pub struct HomComplex {
    pub complex: Complex,
    pub spaces: Vec<HomSpace>,
}

/// `Hom(C, N)` with `Hom(C^(−j), N)` in degree `j`. With `residual`, a
/// commuting action on `N`, the terms are modules over its algebra.
pub fn hom_complex(c: &Complex, n: &Module, residual: Option<&Module>) -> Result<HomComplex> {
    let degrees: Vec<i64> = c.degrees().rev().collect();
    let spaces: Vec<HomSpace> = degrees.iter().map(|&i| hom(&c.term(i), n)).collect::<Result<_>>()?;
    let mut diffs = Vec::new();
    for k in 0..spaces.len().saturating_sub(1) {
        // degree j = -i  →  j+1 = -(i-1): precompose with d^(i-1)
        let i = degrees[k];
        let d = c.diff(i - 1);
        let id = Matrix::identity(n.p(), n.dim());
        diffs.push(spaces[k].induced(&spaces[k + 1], &d, &id));
    }
    let (alg, terms) = residual_terms(&spaces, n.p(), residual, true)?;
    let lo = if degrees.is_empty() { 0 } else { -degrees[0] };
    Ok(HomComplex { complex: Complex::new_unchecked(&alg, lo, terms, diffs)?, spaces })
}

/// `Hom(M, C)` with `Hom(M, C^j)` in degree `j`. With `residual`, a
/// commuting action on `M` over `S`, the terms are modules over `S^op`.
pub fn hom_from(m: &Module, c: &Complex, residual: Option<&Module>) -> Result<HomComplex> {
    let degrees: Vec<i64> = c.degrees().collect();
    let spaces: Vec<HomSpace> = degrees.iter().map(|&i| hom(m, &c.term(i))).collect::<Result<_>>()?;
    let mut diffs = Vec::new();
    for k in 0..spaces.len().saturating_sub(1) {
        let d = c.diff(degrees[k]);
        let id = Matrix::identity(m.p(), m.dim());
        diffs.push(spaces[k].induced(&spaces[k + 1], &id, &d));
    }
    let (alg, terms) = residual_terms(&spaces, m.p(), residual, false)?;
    let lo = degrees.first().copied().unwrap_or(0);
    Ok(HomComplex { complex: Complex::new_unchecked(&alg, lo, terms, diffs)?, spaces })
}

fn residual_terms(spaces: &[HomSpace], p: u32, residual: Option<&Module>, on_target: bool) -> Result<(Arc<Algebra>, Vec<Module>)> {
    match residual {
        None => {
            let alg = Arc::new(Algebra::field(p));
            let terms = spaces
                .iter()
                .map(|s| Module::new_unchecked(&alg, s.dim(), vec![Matrix::identity(p, s.dim())]))
                .collect::<Result<_>>()?;
            Ok((alg, terms))
        }
        Some(r) => {
            let alg = if on_target { r.algebra().clone() } else { opposite_arc(r.algebra()) };
            let terms = spaces
                .iter()
                .map(|s| {
                    let t = if on_target { s.target_residual(r) } else { s.source_residual(r) }?;
                    Module::new_unchecked(&alg, t.dim(), t.actions().to_vec())
                })
                .collect::<Result<_>>()?;
            Ok((alg, terms))
        }
    }
}

/// `X ⊗_C Y` for `X` over `C` and `Y` over `C^op`.
///
/// Elements are stored as `dim X × dim Y` matrices `V` standing for
/// `Σ V_ij x_i ⊗ y_j`; a pair of maps `f`, `g` acts by `V ↦ Fᵀ·V·G`.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub x: Module,
    pub y: Module,
    qx: Matrix,
    qy: Matrix,
    /// Positions `(i, j)` spanning the vertex-graded part, in adapted
    /// coordinates.
    cells: Vec<(usize, usize)>,
    projection: Matrix,
    representatives: Vec<Matrix>,
}

pub fn tensor_over(x: &Module, y: &Module) -> Result<Tensor> {
    let c = x.algebra();
    if !y.algebra().is_opposite_of(c) {
        return Err(Error::AlgebraMismatch("tensor factors must live over opposite algebras".into()));
    }
    let p = c.p();
    let (dx, dy) = (x.dim(), y.dim());
    let graded = match (c.paths(), x.graded(), y.graded()) {
        (Some(pb), Some(gx), Some(gy)) => Some((pb, gx, gy)),
        _ => None,
    };
    let (px, qx, py, qy, cells, rel_rows) = match graded {
        Some((pb, gx, gy)) => {
            let mut cells = Vec::new();
            let mut where_ = HashMap::new();
            for v in 0..pb.vertices {
                for i in gx.block(v) {
                    for j in gy.block(v) {
                        where_.insert((i, j), cells.len());
                        cells.push((i, j));
                    }
                }
            }
            let mut rows = Vec::new();
            for (arrow, a) in &pb.arrows {
                let ax = gx.basis.mul(x.act(*a)).mul(&gx.inverse);
                let by = gy.basis.mul(y.act(*a)).mul(&gy.inverse);
                for i in gx.block(arrow.src) {
                    for j in gy.block(arrow.tgt) {
                        let mut r = vec![0u32; cells.len()];
                        for (k, &c) in ax.row(i).iter().enumerate() {
                            if c != 0 {
                                let pos = where_[&(k, j)];
                                r[pos] = (r[pos] + c) % p;
                            }
                        }
                        for (k, &c) in by.row(j).iter().enumerate() {
                            if c != 0 {
                                let pos = where_[&(i, k)];
                                r[pos] = (r[pos] + p - c) % p;
                            }
                        }
                        rows.push(r);
                    }
                }
            }
            (gx.basis.clone(), gx.inverse.clone(), gy.basis.clone(), gy.inverse.clone(), cells, rows)
        }
        None => {
            let cells: Vec<(usize, usize)> = (0..dx).flat_map(|i| (0..dy).map(move |j| (i, j))).collect();
            let mut rows = Vec::new();
            for &g in c.generators() {
                let (ax, by) = (x.act(g), y.act(g));
                for i in 0..dx {
                    for j in 0..dy {
                        let mut r = vec![0u32; dx * dy];
                        for (k, &c) in ax.row(i).iter().enumerate() {
                            r[k * dy + j] = (r[k * dy + j] + c) % p;
                        }
                        for (k, &c) in by.row(j).iter().enumerate() {
                            r[i * dy + k] = (r[i * dy + k] + p - c) % p;
                        }
                        if r.iter().any(|&e| e != 0) {
                            rows.push(r);
                        }
                    }
                }
            }
            let (ix, iy) = (Matrix::identity(p, dx), Matrix::identity(p, dy));
            (ix.clone(), ix, iy.clone(), iy, cells, rows)
        }
    };
    let rel = Matrix::from_vecs(p, cells.len(), &rel_rows);
    let q = quotient_basis(&rel, cells.len());
    let mut representatives = Vec::with_capacity(q.dim());
    for k in 0..q.dim() {
        let mut v = Matrix::zeros(p, dx, dy);
        for (pos, &c) in q.section.row(k).iter().enumerate() {
            if c != 0 {
                let (i, j) = cells[pos];
                v.set(i, j, c);
            }
        }
        representatives.push(px.transpose().mul(&v).mul(&py));
    }
    Ok(Tensor { x: x.clone(), y: y.clone(), qx, qy, cells, projection: q.projection, representatives })
}

impl Tensor {
    pub fn dim(&self) -> usize {
        self.projection.cols()
    }

    pub fn representatives(&self) -> &[Matrix] {
        &self.representatives
    }

    /// Class of an element `Σ V_ij x_i ⊗ y_j` of the graded part.
    pub fn class_of(&self, v: &Matrix) -> Vec<u32> {
        let w = self.qx.transpose().mul(v).mul(&self.qy);
        let g: Vec<u32> = self.cells.iter().map(|&(i, j)| w.get(i, j)).collect();
        Matrix::row_vector(v.p(), g).mul(&self.projection).row(0).to_vec()
    }

    /// Matrix of `f ⊗ g` into `other`, for `f: X → X'` and `g: Y → Y'`.
    pub fn induced(&self, other: &Tensor, f: &Matrix, g: &Matrix) -> Matrix {
        let ft = f.transpose();
        let rows: Vec<Vec<u32>> = self.representatives.iter().map(|v| other.class_of(&ft.mul(v).mul(g))).collect();
        Matrix::from_vecs(self.x.p(), other.dim(), &rows)
    }

    /// The tensor product over the algebra of `phi`, a commuting action on `X`.
    pub fn left_residual(&self, phi: &Module) -> Result<Module> {
        let act = phi
            .actions()
            .iter()
            .map(|a| {
                let at = a.transpose();
                let rows: Vec<Vec<u32>> = self.representatives.iter().map(|v| self.class_of(&at.mul(v))).collect();
                Matrix::from_vecs(self.x.p(), self.dim(), &rows)
            })
            .collect();
        Module::new(phi.algebra(), self.dim(), act)
    }

    /// The tensor product over the algebra of `psi`, a commuting action on `Y`.
    pub fn right_residual(&self, psi: &Module) -> Result<Module> {
        let act = psi
            .actions()
            .iter()
            .map(|a| {
                let rows: Vec<Vec<u32>> = self.representatives.iter().map(|v| self.class_of(&v.mul(a))).collect();
                Matrix::from_vecs(self.x.p(), self.dim(), &rows)
            })
            .collect();
        Module::new(psi.algebra(), self.dim(), act)
    }

    fn carrier(&self, residual: Residual<'_>) -> Result<Module> {
        match residual {
            Residual::None => Ok(Module::vector_space(self.x.p(), self.dim())),
            Residual::Left(phi) => self.left_residual(phi),
            Residual::Right(psi) => self.right_residual(psi),
        }
    }
}

/// Which commuting action, if any, a tensor product inherits.
#[derive(Debug, Clone, Copy)]
pub enum Residual<'a> {
    None,
    /// A commuting action on the left factor.
    Left(&'a Module),
    /// A commuting action on the right factor.
    Right(&'a Module),
}

fn residual_algebra(p: u32, r: Residual<'_>) -> Arc<Algebra> {
    match r {
        Residual::None => Arc::new(Algebra::field(p)),
        Residual::Left(m) | Residual::Right(m) => m.algebra().clone(),
    }
}

/// A complex of tensor products with its degreewise tensors.
#[derive(Debug, Clone)]
pub struct TensorComplex {
    pub complex: Complex,
    pub tensors: Vec<Tensor>,
}

/// `X ⊗_C Y•` for a complex `Y•` over `C^op`. `residual` may only be `Left`.
pub fn tensor_complex(x: &Module, c: &Complex, residual: Residual<'_>) -> Result<TensorComplex> {
    if matches!(residual, Residual::Right(_)) {
        return Err(Error::Unsupported("right residual on a complex factor".into()));
    }
    let tensors: Vec<Tensor> = c.degrees().map(|i| tensor_over(x, &c.term(i))).collect::<Result<_>>()?;
    let id = Matrix::identity(x.p(), x.dim());
    let diffs = (0..tensors.len().saturating_sub(1))
        .map(|k| tensors[k].induced(&tensors[k + 1], &id, &c.diff(c.lo() + k as i64)))
        .collect();
    finish_tensor_complex(x.p(), c.lo(), tensors, diffs, residual)
}

/// `X• ⊗_C Y` for a complex `X•` over `C`. `residual` may only be `Right`.
pub fn complex_tensor(c: &Complex, y: &Module, residual: Residual<'_>) -> Result<TensorComplex> {
    if matches!(residual, Residual::Left(_)) {
        return Err(Error::Unsupported("left residual on a complex factor".into()));
    }
    let tensors: Vec<Tensor> = c.degrees().map(|i| tensor_over(&c.term(i), y)).collect::<Result<_>>()?;
    let id = Matrix::identity(y.p(), y.dim());
    let diffs = (0..tensors.len().saturating_sub(1))
        .map(|k| tensors[k].induced(&tensors[k + 1], &c.diff(c.lo() + k as i64), &id))
        .collect();
    finish_tensor_complex(y.p(), c.lo(), tensors, diffs, residual)
}

fn finish_tensor_complex(
    p: u32,
    lo: i64,
    tensors: Vec<Tensor>,
    diffs: Vec<Matrix>,
    residual: Residual<'_>,
) -> Result<TensorComplex> {
    let alg = residual_algebra(p, residual);
    let terms = tensors
        .iter()
        .map(|t| {
            let m = t.carrier(residual)?;
            Module::new_unchecked(&alg, m.dim(), m.actions().to_vec())
        })
        .collect::<Result<_>>()?;
    let complex = Complex::new_unchecked(&alg, lo, terms, diffs)?;
    complex.check_square_zero()?;
    Ok(TensorComplex { complex, tensors })
}

/// `dim Ext^i(M, N)` through a projective resolution of `M`; `None` when
/// the resolution was cut off before degree `i` was settled.
pub fn ext(i: usize, m: &Module, n: &Module, cap: usize) -> Result<Option<usize>> {
    let r = min_proj_resolution(m, cap)?;
    ext_from_resolution(i, &r, n)
}

/// `dim Ext^i(M, N)` through an injective coresolution of `N`.
pub fn ext_via_injective(i: usize, m: &Module, n: &Module, cap: usize) -> Result<Option<usize>> {
    let r = min_inj_coresolution(n, cap)?;
    if r.inconclusive_from().is_some_and(|d| i >= d) {
        return Ok(None);
    }
    if i > r.length() {
        return Ok(Some(0));
    }
    let h = hom_from(m, &r.complex(), None)?;
    Ok(Some(h.complex.cohomology_dim(i as i64)))
}

pub fn ext_from_resolution(i: usize, r: &Resolution, n: &Module) -> Result<Option<usize>> {
    if r.inconclusive_from().is_some_and(|d| i >= d) {
        return Ok(None);
    }
    if i > r.length() || r.terms.is_empty() {
        return Ok(Some(0));
    }
    let h = hom_complex(&r.complex(), n, None)?;
    Ok(Some(h.complex.cohomology_dim(i as i64)))
}

/// `Ext^i(M, N)` as a module over the algebra of `residual`, a commuting
/// action on `N`.
pub fn ext_module(i: usize, r: &Resolution, n: &Module, residual: &Module) -> Result<Option<Module>> {
    if r.inconclusive_from().is_some_and(|d| i >= d) {
        return Ok(None);
    }
    let h = hom_complex(&r.complex(), n, Some(residual))?;
    Ok(Some(h.complex.cohomology(i as i64)?.module))
}

/// `dim Tor_i(X, Y)` for `X` over `C` and `Y` over `C^op`, resolving `Y`.
pub fn tor(i: usize, x: &Module, y: &Module, cap: usize) -> Result<Option<usize>> {
    let r = min_proj_resolution(y, cap)?;
    if r.inconclusive_from().is_some_and(|d| i >= d) {
        return Ok(None);
    }
    if i > r.length() || r.terms.is_empty() {
        return Ok(Some(0));
    }
    let t = tensor_complex(x, &r.complex(), Residual::None)?;
    Ok(Some(t.complex.cohomology_dim(-(i as i64))))
}

/// `dim Tor_i(X, Y)` resolving `X` instead.
pub fn tor_via_left(i: usize, x: &Module, y: &Module, cap: usize) -> Result<Option<usize>> {
    let r = min_proj_resolution(x, cap)?;
    if r.inconclusive_from().is_some_and(|d| i >= d) {
        return Ok(None);
    }
    if i > r.length() || r.terms.is_empty() {
        return Ok(Some(0));
    }
    let t = complex_tensor(&r.complex(), y, Residual::None)?;
    Ok(Some(t.complex.cohomology_dim(-(i as i64))))
}

/// The evaluation map `M ⊗_S Hom_R(M, X) → X`, `m ⊗ f ↦ (m)f`, for a
/// bimodule with `left` over `R` and `right` over `S`.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub hom: HomSpace,
    pub tensor: Tensor,
    /// The tensor product as a module over `R`.
    pub source: Module,
    pub map: ModuleMap,
}

pub fn evaluation_map(m: &crate::module::Bimodule, x: &Module) -> Result<Evaluation> {
    let h = hom(&m.left, x)?;
    let hm = h.source_residual(&m.right)?;
    let t = tensor_over(&m.right, &hm)?;
    let source = t.left_residual(&m.left)?;
    let p = x.p();
    let rows: Vec<Vec<u32>> = t
        .representatives()
        .iter()
        .map(|v| {
            let mut out = vec![0u32; x.dim()];
            for i in 0..v.rows() {
                for (j, &c) in v.row(i).iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let img = h.basis()[j].row(i);
                    for (o, &e) in out.iter_mut().zip(img) {
                        *o = ((*o as u64 + c as u64 * e as u64) % p as u64) as u32;
                    }
                }
            }
            out
        })
        .collect();
    let matrix = Matrix::from_vecs(p, x.dim(), &rows);
    let map = ModuleMap::new(&source, x, matrix)?;
    Ok(Evaluation { hom: h, tensor: t, source, map })
}

/// Why the right-hand side of the tensor cohomology formula was not produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorFormulaFailure {
    /// The complex has a nonzero term above the top degree.
    NonzeroAbove(i64),
    /// `Tor_j(M, Y^i) ≠ 0` for a term.
    TermNotFlat { degree: i64, j: usize, dim: usize },
    /// A hypothesis `Tor_t(M, H^(m+t)) = 0` or `Tor_(t−1)(M, H^(m+t)) = 0` failed.
    Hypothesis { t: usize, tor_degree: usize, degree: i64, dim: usize },
    /// A resolution cap was hit.
    Inconclusive,
    Precondition(String),
}

/// `dim Tor_(n−m)(M, H^n(Y•))`, after checking every hypothesis of the
/// formula `H^m(M ⊗ Y•) ≅ Tor_(n−m)(M, H^n(Y•))`.
pub fn tensor_formula_rhs(m: &Module, y: &Complex, mdeg: i64, ndeg: i64, cap: usize) -> std::result::Result<usize, TensorFormulaFailure> {
    let fail = |e: Error| TensorFormulaFailure::Precondition(e.to_string());
    if mdeg >= ndeg {
        return Err(TensorFormulaFailure::Precondition("the formula needs m < n".into()));
    }
    for i in y.degrees() {
        if i > ndeg && !y.term(i).is_zero() {
            return Err(TensorFormulaFailure::NonzeroAbove(i));
        }
    }
    for i in y.degrees() {
        let t = y.term(i);
        if t.is_zero() {
            continue;
        }
        let r = min_proj_resolution(&t, cap).map_err(fail)?;
        if r.truncated {
            return Err(TensorFormulaFailure::Inconclusive);
        }
        for j in 1..=r.length() {
            let d = tor(j, m, &t, cap).map_err(fail)?.ok_or(TensorFormulaFailure::Inconclusive)?;
            if d != 0 {
                return Err(TensorFormulaFailure::TermNotFlat { degree: i, j, dim: d });
            }
        }
    }
    let span = (ndeg - mdeg) as usize;
    for t in 0..span {
        let deg = mdeg + t as i64;
        let h = cohomology(y, deg).map_err(fail)?.module;
        let mut checks = vec![t];
        if t >= 1 {
            checks.push(t - 1);
        }
        for k in checks {
            let d = tor(k, m, &h, cap).map_err(fail)?.ok_or(TensorFormulaFailure::Inconclusive)?;
            if d != 0 {
                return Err(TensorFormulaFailure::Hypothesis { t, tor_degree: k, degree: deg, dim: d });
            }
        }
    }
    let top = cohomology(y, ndeg).map_err(fail)?.module;
    tor(span, m, &top, cap).map_err(fail)?.ok_or(TensorFormulaFailure::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_bound_quiver_algebra, Quiver, Relation};
    use crate::module::{dual_regular, injective, simple};

    fn n3() -> Arc<Algebra> {
        let q = Quiver::new(3).arrow("a", 0, 1).arrow("b", 1, 2);
        Arc::new(build_bound_quiver_algebra(&q, &[Relation::zero(&["a", "b"])], 5).unwrap())
    }

    #[test]
    fn simple_top_resolution_has_length_two() {
        let a = n3();
        let r = min_proj_resolution(&simple(&a, 0).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(r.length(), 2);
        assert_eq!(r.summands, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn coresolution_of_s3() {
        let a = n3();
        let r = min_inj_coresolution(&simple(&a, 2).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(r.length(), 2);
        assert_eq!(r.summands, vec![vec![2], vec![1], vec![0]]);
    }

    #[test]
    fn injectives_have_trivial_coresolutions() {
        let a = n3();
        let r = min_inj_coresolution(&injective(&a, 1).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(r.length(), 0);
    }

    #[test]
    fn ext_values() {
        let a = n3();
        let s1 = simple(&a, 0).unwrap();
        let s3 = simple(&a, 2).unwrap();
        assert_eq!(ext(2, &s1, &s3, DEFAULT_CAP).unwrap(), Some(1));
        assert_eq!(ext_via_injective(2, &s1, &s3, DEFAULT_CAP).unwrap(), Some(1));
        let da = dual_regular(&a);
        assert_eq!(ext(2, &da, &crate::module::regular(&a), DEFAULT_CAP).unwrap(), Some(1));
    }
}
