//! Finite-dimensional modules as matrix representations.
//!
//! A module over `A` is a vector space with one matrix per basis element of
//! `A`, acting on row vectors: `x ↦ x·act(a)`, with
//! `act(a)·act(b) = act(a·b)`. Maps are matrices `F` with
//! `act_M(a)·F = F·act_N(a)`, and `F·G` means "first `F`, then `G`".

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{opposite, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, kernel_basis, quotient_basis, Coordinates, Matrix, Solver};

/// Samples tried by [`is_isomorphic`] before exhaustive search.
pub const ISO_SAMPLES: usize = 64;
/// Largest hom space (as a count of elements) searched exhaustively.
pub const ISO_EXHAUSTIVE_LIMIT: u64 = 1 << 14;

/// Whether two shared algebras are the same algebra.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn opposite_arc(a: &Arc<Algebra>) -> Arc<Algebra> {
    Arc::new(opposite(a))
}

/// Vertex-adapted coordinates: the rows of `basis` list bases of `M·e_v`
/// one vertex after the other.
#[derive(Debug, Clone)]
pub struct Graded {
    pub basis: Matrix,
    pub inverse: Matrix,
    /// Start of each vertex block, with a final entry equal to the dimension.
    pub offsets: Vec<usize>,
}

impl Graded {
    pub fn block(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }
}

#[derive(Debug)]
struct Inner {
    alg: Arc<Algebra>,
    dim: usize,
    act: Vec<Matrix>,
    graded: OnceLock<Option<Graded>>,
}

#[derive(Debug, Clone)]
pub struct Module {
    inner: Arc<Inner>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Module) -> bool {
        same_algebra(self.algebra(), other.algebra()) && self.inner.act == other.inner.act
    }
}

impl Eq for Module {}

impl Module {
    /// Builds a module and checks that the action respects the algebra.
    pub fn new(alg: &Arc<Algebra>, dim: usize, act: Vec<Matrix>) -> Result<Module> {
        let m = Module::new_unchecked(alg, dim, act)?;
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: &Arc<Algebra>, dim: usize, act: Vec<Matrix>) -> Result<Module> {
        if act.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                act.len(),
                alg.dim()
            )));
        }
        for a in &act {
            if a.shape() != (dim, dim) || a.p() != alg.p() {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix of shape {:?} on a module of dimension {dim}",
                    a.shape()
                )));
            }
        }
        Ok(Module {
            inner: Arc::new(Inner { alg: alg.clone(), dim, act, graded: OnceLock::new() }),
        })
    }

    pub fn zero(alg: &Arc<Algebra>) -> Module {
        let act = vec![Matrix::zeros(alg.p(), 0, 0); alg.dim()];
        Module::new_unchecked(alg, 0, act).unwrap()
    }

    /// The vector space `F_p^dim` as a module over the ground field.
    pub fn vector_space(p: u32, dim: usize) -> Module {
        let k = Arc::new(Algebra::field(p));
        Module::new_unchecked(&k, dim, vec![Matrix::identity(p, dim)]).unwrap()
    }

    /// Builds a representation of a bound quiver from one matrix per arrow;
    /// `dims` gives the dimension at each vertex and each arrow matrix is
    /// `dims[src] × dims[tgt]`.
    pub fn from_representation(
        alg: &Arc<Algebra>,
        dims: &[usize],
        arrows: &BTreeMap<String, Matrix>,
    ) -> Result<Module> {
        let pb = alg.require_paths("representations")?;
        if dims.len() != pb.vertices {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                pb.vertices
            )));
        }
        let p = alg.p();
        let mut offsets = vec![0];
        for &d in dims {
            offsets.push(offsets.last().unwrap() + d);
        }
        let dim = offsets[pb.vertices];
        for name in arrows.keys() {
            if !pb.arrows.iter().any(|(a, _)| &a.name == name) {
                return Err(Error::invalid(format!("matrix given for unknown arrow {name:?}")));
            }
        }
        let mut arrow_mats = Vec::new();
        for (a, _) in &pb.arrows {
            let m = match arrows.get(&a.name) {
                Some(m) => m.clone(),
                None => Matrix::zeros(p, dims[a.src], dims[a.tgt]),
            };
            if m.shape() != (dims[a.src], dims[a.tgt]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.src],
                    dims[a.tgt],
                    m.rows(),
                    m.cols()
                )));
            }
            arrow_mats.push(m);
        }
        let mut act = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            let (s, t) = (pb.src[i], pb.tgt[i]);
            let mut block = Matrix::identity(p, dims[s]);
            for &k in &pb.words[i] {
                block = block.mul(&arrow_mats[k]);
            }
            let mut full = Matrix::zeros(p, dim, dim);
            full.set_block(offsets[s], offsets[t], &block);
            act.push(full);
        }
        Module::new(alg, dim, act)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inner.alg
    }

    pub fn p(&self) -> u32 {
        self.inner.alg.p()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn is_zero(&self) -> bool {
        self.inner.dim == 0
    }

    /// Action matrix of the `i`-th basis element.
    pub fn act(&self, i: usize) -> &Matrix {
        &self.inner.act[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.inner.act
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act_elem(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.p(), self.dim(), self.dim());
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m.add_scaled(c, self.act(i));
            }
        }
        m
    }

    /// Checks `act(1) = 1` and `act(g)·act(b) = act(g·b)` for generators `g`
    /// and all basis elements `b`, which forces multiplicativity everywhere.
    pub fn verify(&self) -> Result<()> {
        let alg = self.algebra();
        let d = self.dim();
        if self.act_elem(alg.unit()) != Matrix::identity(self.p(), d) {
            return Err(Error::NotAModule("the unit does not act as the identity".into()));
        }
        for &g in alg.generators() {
            for b in 0..alg.dim() {
                let lhs = self.act(g).mul(self.act(b));
                let rhs = self.act_elem(alg.product(g, b));
                if lhs != rhs {
                    return Err(Error::NotAModule(format!(
                        "action of {}·{} does not match the product",
                        alg.label(g),
                        alg.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Dimension of `M·e_v` for each vertex.
    pub fn dim_vector(&self) -> Option<Vec<usize>> {
        self.graded().map(|g| (0..g.offsets.len() - 1).map(|v| g.block(v).len()).collect())
    }

    /// Vertex-adapted coordinates, when the algebra has vertex idempotents.
    pub fn graded(&self) -> Option<&Graded> {
        self.inner
            .graded
            .get_or_init(|| {
                let alg = self.algebra();
                let pb = alg.paths()?;
                let p = self.p();
                let mut basis = Matrix::zeros(p, 0, self.dim());
                let mut offsets = vec![0];
                for &v in &pb.vertex {
                    let block = self.act(v).row_basis();
                    basis = basis.vstack(&block);
                    offsets.push(basis.rows());
                }
                let inverse = basis.inverse().expect("vertex idempotents do not decompose the module");
                Some(Graded { basis, inverse, offsets })
            })
            .as_ref()
    }

    /// The radical `M·J`, as rows spanning it.
    pub fn radical(&self) -> Result<Matrix> {
        let pb = self.algebra().require_paths("module radicals")?;
        let mut rows = Matrix::zeros(self.p(), 0, self.dim());
        for &(_, i) in &pb.arrows {
            rows = rows.vstack(self.act(i));
        }
        Ok(rows.row_basis())
    }
}

/// A module homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    pub matrix: Matrix,
}

impl ModuleMap {
    /// Builds a map and checks that it intertwines the actions.
    pub fn new(source: &Module, target: &Module, matrix: Matrix) -> Result<ModuleMap> {
        let f = ModuleMap::new_unchecked(source, target, matrix)?;
        if !is_homomorphism(source, target, &f.matrix) {
            return Err(Error::NotAModule("matrix does not intertwine the actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, matrix: Matrix) -> Result<ModuleMap> {
        check_same(source, target)?;
        if matrix.shape() != (source.dim(), target.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "map matrix {:?} between modules of dimensions {} and {}",
                matrix.shape(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(ModuleMap { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.p(), m.dim()) }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.p(), source.dim(), target.dim()),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: self.matrix.mul(&next.matrix),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }
}

/// Whether `f` intertwines the actions of `m` and `n`.
pub fn is_homomorphism(m: &Module, n: &Module, f: &Matrix) -> bool {
    m.algebra()
        .generators()
        .iter()
        .all(|&g| m.act(g).mul(f) == f.mul(n.act(g)))
}

fn check_same(m: &Module, n: &Module) -> Result<()> {
    if same_algebra(m.algebra(), n.algebra()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch("modules live over different algebras".into()))
    }
}

/// A module with a second, commuting action: `left` over one algebra and
/// `right` over another, on the same underlying space.
#[derive(Debug, Clone)]
pub struct Bimodule {
    pub left: Module,
    pub right: Module,
}

impl Bimodule {
    pub fn new(left: Module, right: Module) -> Result<Bimodule> {
        if left.dim() != right.dim() {
            return Err(Error::DimensionMismatch("the two actions live on different spaces".into()));
        }
        for &g in left.algebra().generators() {
            for &h in right.algebra().generators() {
                if left.act(g).mul(right.act(h)) != right.act(h).mul(left.act(g)) {
                    return Err(Error::NotAModule(format!(
                        "actions of {} and {} do not commute",
                        left.algebra().label(g),
                        right.algebra().label(h)
                    )));
                }
            }
        }
        Ok(Bimodule { left, right })
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    /// The same bimodule with the roles of the two actions exchanged.
    pub fn swap(&self) -> Bimodule {
        Bimodule { left: self.right.clone(), right: self.left.clone() }
    }
}

/// The space `Hom(M, N)` with a basis of intertwiners.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    basis: Vec<Matrix>,
    coords: Coordinates,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn maps(&self) -> Vec<ModuleMap> {
        self.basis
            .iter()
            .map(|f| ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix: f.clone() })
            .collect()
    }

    /// Coordinates of a homomorphism in the basis.
    pub fn coords(&self, f: &Matrix) -> Option<Vec<u32>> {
        self.coords.coords(&f.flatten())
    }

    /// Linear combination of basis maps.
    pub fn element(&self, c: &[u32]) -> Matrix {
        let p = self.source.p();
        let mut m = Matrix::zeros(p, self.source.dim(), self.target.dim());
        for (f, &x) in self.basis.iter().zip(c) {
            if x != 0 {
                m.add_scaled(x, f);
            }
        }
        m
    }

    /// Matrix of a linear operator on the hom space given on basis maps.
    fn operator(&self, f: impl Fn(&Matrix) -> Matrix) -> Matrix {
        let rows: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|b| self.coords(&f(b)).expect("operator leaves the hom space"))
            .collect();
        Matrix::from_vecs(self.source.p(), self.dim(), &rows)
    }

    /// `Hom(M, N)` over `R` through `F ↦ F·ρ(r)`, where `rho` is a commuting
    /// action of `R` on `N`.
    pub fn target_residual(&self, rho: &Module) -> Result<Module> {
        if rho.dim() != self.target.dim() {
            return Err(Error::DimensionMismatch("residual action lives on another space".into()));
        }
        let act = rho.actions().iter().map(|r| self.operator(|f| f.mul(r))).collect();
        Module::new(rho.algebra(), self.dim(), act)
    }

    /// `Hom(M, N)` over `S^op` through `F ↦ σ(s)·F`, where `sigma` is a
    /// commuting action of `S` on `M`.
    pub fn source_residual(&self, sigma: &Module) -> Result<Module> {
        if sigma.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch("residual action lives on another space".into()));
        }
        let op = opposite_arc(sigma.algebra());
        let act = sigma.actions().iter().map(|s| self.operator(|f| s.mul(f))).collect();
        Module::new(&op, self.dim(), act)
    }

    /// The hom space as a plain vector space.
    pub fn as_vector_space(&self) -> Module {
        Module::vector_space(self.source.p(), self.dim())
    }

    /// Matrix of `F ↦ pre·F·post` from this space to `other`.
    pub fn induced(&self, other: &HomSpace, pre: &Matrix, post: &Matrix) -> Matrix {
        let rows: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|b| other.coords(&pre.mul(b).mul(post)).expect("induced map leaves the hom space"))
            .collect();
        Matrix::from_vecs(self.source.p(), other.dim(), &rows)
    }
}

/// `Hom(M, N)` with an explicit basis.
pub fn hom(m: &Module, n: &Module) -> Result<HomSpace> {
    check_same(m, n)?;
    let p = m.p();
    let (dm, dn) = (m.dim(), n.dim());
    let alg = m.algebra();
    let (mut cand, gens): (Matrix, Vec<usize>) = match (m.graded(), n.graded()) {
        (Some(gm), Some(gn)) => {
            // block-diagonal maps in adapted coordinates
            let mut rows = Vec::new();
            for v in 0..gm.offsets.len() - 1 {
                for i in gm.block(v) {
                    let col: Vec<u32> = (0..dm).map(|r| gm.inverse.get(r, i)).collect();
                    for j in gn.block(v) {
                        let row = gn.basis.row(j);
                        let mut f = vec![0u32; dm * dn];
                        for (r, &c) in col.iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            for (s, &x) in row.iter().enumerate() {
                                f[r * dn + s] = ((c as u64 * x as u64) % p as u64) as u32;
                            }
                        }
                        rows.push(f);
                    }
                }
            }
            let pb = alg.paths().unwrap();
            (Matrix::from_vecs(p, dm * dn, &rows), pb.arrows.iter().map(|(_, i)| *i).collect())
        }
        _ => (Matrix::identity(p, dm * dn), alg.generators().to_vec()),
    };
    for g in gens {
        if cand.rows() == 0 {
            break;
        }
        let (a, b) = (m.act(g), n.act(g));
        let defect: Vec<Vec<u32>> = (0..cand.rows())
            .map(|r| {
                let f = Matrix::unflatten(p, dm, dn, cand.row(r));
                a.mul(&f).sub(&f.mul(b)).flatten()
            })
            .collect();
        let k = kernel_basis(&Matrix::from_vecs(p, dm * dn, &defect));
        cand = k.mul(&cand);
    }
    let cand = cand.row_basis();
    let basis = (0..cand.rows()).map(|r| Matrix::unflatten(p, dm, dn, cand.row(r))).collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis, coords: Coordinates::new(cand) })
}

/// Basis of `Hom(M, N)` as module maps.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    Ok(hom(m, n)?.maps())
}

/// An indecomposable direct summand whose endomorphism ring is local with
/// residue field `F_p`.
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Module,
    /// `inclusion·projection` is the identity of the summand.
    pub inclusion: Matrix,
    pub projection: Matrix,
    /// Basis of the radical of the endomorphism ring.
    pub radical: Vec<Matrix>,
}

enum Split {
    /// A singular, non-nilpotent endomorphism.
    Fitting(Matrix),
    Local(Vec<Matrix>),
    /// An endomorphism without eigenvalues in `F_p`.
    NoEigenvalue,
}

fn classify(x: &Matrix, nil: &mut Vec<Matrix>) -> Option<Split> {
    let ev = eigenvalues(x);
    let Some(&l) = ev.first() else { return Some(Split::NoEigenvalue) };
    let y = x.sub(&Matrix::identity(x.p(), x.rows()).scale(l));
    if ev.len() > 1 || !y.is_nilpotent() {
        return Some(Split::Fitting(y));
    }
    nil.push(y);
    None
}

fn split_or_local(m: &Module) -> Result<Split> {
    let p = m.p();
    let d = m.dim();
    let e = hom(m, m)?;
    let mut nil = Vec::new();
    for b in e.basis() {
        if let Some(s) = classify(b, &mut nil) {
            return Ok(s);
        }
    }
    // Every basis element is a scalar plus a nilpotent. The endomorphism
    // ring is local exactly when those nilpotent parts span a nilpotent
    // ideal of codimension one.
    let rows: Vec<Vec<u32>> = nil.iter().map(Matrix::flatten).collect();
    let span = Matrix::from_vecs(p, d * d, &rows).row_basis();
    let radical: Vec<Matrix> = (0..span.rows()).map(|r| Matrix::unflatten(p, d, d, span.row(r))).collect();
    if radical.len() + 1 == e.dim() && is_nilpotent_span(&radical, &span, d) {
        return Ok(Split::Local(radical));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0);
    for _ in 0..ISO_SAMPLES {
        let c: Vec<u32> = (0..e.dim()).map(|_| rng.random_range(0..p)).collect();
        if let Some(s) = classify(&e.element(&c), &mut Vec::new()) {
            return Ok(s);
        }
    }
    Err(Error::Unsupported("could not split the endomorphism ring".into()))
}

/// Whether the span is closed under products and nilpotent.
fn is_nilpotent_span(elems: &[Matrix], span: &Matrix, d: usize) -> bool {
    let p = span.p();
    let solver = Solver::new(span);
    if elems.iter().any(|a| elems.iter().any(|b| !solver.contains(&a.mul(b).flatten()))) {
        return false;
    }
    let mut power: Vec<Matrix> = elems.to_vec();
    for _ in 0..=d {
        if power.is_empty() {
            return true;
        }
        let rows: Vec<Vec<u32>> =
            power.iter().flat_map(|a| elems.iter().map(move |b| a.mul(b).flatten())).collect();
        let next = Matrix::from_vecs(p, d * d, &rows).row_basis();
        power = (0..next.rows()).map(|r| Matrix::unflatten(p, d, d, next.row(r))).collect();
    }
    power.is_empty()
}

/// Decomposes `m` into indecomposable summands with certified local
/// endomorphism rings. Returns `None` when some endomorphism ring has a
/// residue field larger than `F_p`.
pub fn decompose(m: &Module) -> Result<Option<Vec<Summand>>> {
    let p = m.p();
    let mut out = Vec::new();
    let id = Matrix::identity(p, m.dim());
    let mut work = vec![(m.clone(), id.clone(), id)];
    while let Some((x, inc, proj)) = work.pop() {
        if x.is_zero() {
            continue;
        }
        match split_or_local(&x)? {
            Split::NoEigenvalue => return Ok(None),
            Split::Local(radical) => out.push(Summand { module: x, inclusion: inc, projection: proj, radical }),
            Split::Fitting(y) => {
                let z = y.pow(x.dim() as u64);
                let (im, im_inc) = submodule(&x, &z)?;
                let (ker, ker_inc) = submodule(&x, &kernel_basis(&z))?;
                let q = im_inc.matrix.vstack(&ker_inc.matrix);
                let qi = q.inverse().expect("Fitting decomposition is direct");
                let k = im.dim();
                let cols_im: Vec<usize> = (0..k).collect();
                let cols_ker: Vec<usize> = (k..x.dim()).collect();
                work.push((ker, ker_inc.matrix.mul(&inc), proj.mul(&qi.select_cols(&cols_ker))));
                work.push((im, im_inc.matrix.mul(&inc), proj.mul(&qi.select_cols(&cols_im))));
            }
        }
    }
    out.reverse();
    Ok(Some(out))
}

/// The submodule spanned by the rows of `rows`, which must be invariant,
/// and its inclusion.
pub fn submodule(m: &Module, rows: &Matrix) -> Result<(Module, ModuleMap)> {
    let basis = rows.row_basis();
    let coords = Coordinates::new(basis.clone());
    let mut act = Vec::with_capacity(m.actions().len());
    for a in m.actions() {
        let img = basis.mul(a);
        let c = coords
            .try_coords_of(&img)
            .ok_or_else(|| Error::NotAModule("subspace is not invariant".into()))?;
        act.push(c);
    }
    let sub = Module::new(m.algebra(), basis.rows(), act)?;
    let inc = ModuleMap::new(&sub, m, basis)?;
    Ok((sub, inc))
}

/// Smallest submodule containing the rows of `rows`.
pub fn generated_submodule(m: &Module, rows: &Matrix) -> Result<(Module, ModuleMap)> {
    let mut span = rows.row_basis();
    loop {
        let mut grown = span.clone();
        for &g in m.algebra().generators() {
            grown = grown.vstack(&span.mul(m.act(g)));
        }
        let grown = grown.row_basis();
        if grown.rows() == span.rows() {
            break;
        }
        span = grown;
    }
    submodule(m, &span)
}

/// The quotient by the invariant subspace spanned by `rows`, and the
/// projection onto it.
pub fn quotient(m: &Module, rows: &Matrix) -> Result<(Module, ModuleMap)> {
    let q = quotient_basis(rows, m.dim());
    let act: Vec<Matrix> = m.actions().iter().map(|a| q.section.mul(a).mul(&q.projection)).collect();
    let quo = Module::new(m.algebra(), q.dim(), act)?;
    let proj = ModuleMap::new(m, &quo, q.projection)?;
    Ok((quo, proj))
}

/// A quotient module with its projection and a linear section.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub module: Module,
    pub projection: Matrix,
    pub section: Matrix,
}

/// The cokernel of `f` together with a section of the projection.
pub fn cokernel_with_section(f: &ModuleMap) -> Result<QuotientModule> {
    let n = &f.target;
    let q = quotient_basis(&f.matrix, n.dim());
    let act: Vec<Matrix> = n.actions().iter().map(|a| q.section.mul(a).mul(&q.projection)).collect();
    let module = Module::new(n.algebra(), q.dim(), act)?;
    if !is_homomorphism(n, &module, &q.projection) {
        return Err(Error::NotAModule("image is not a submodule".into()));
    }
    Ok(QuotientModule { module, projection: q.projection, section: q.section })
}

pub fn kernel(f: &ModuleMap) -> Result<(Module, ModuleMap)> {
    submodule(&f.source, &kernel_basis(&f.matrix))
}

pub fn cokernel(f: &ModuleMap) -> Result<(Module, ModuleMap)> {
    quotient(&f.target, &f.matrix)
}

/// The image of `f` with the corestriction `M → Im f` and the inclusion
/// `Im f → N`.
pub fn image(f: &ModuleMap) -> Result<(Module, ModuleMap, ModuleMap)> {
    let (im, inc) = submodule(&f.target, &f.matrix)?;
    let coords = Coordinates::new(inc.matrix.clone());
    let onto = ModuleMap::new(&f.source, &im, coords.coords_of(&f.matrix))?;
    Ok((im, onto, inc))
}

/// The simple module at vertex `v`.
pub fn simple(alg: &Arc<Algebra>, v: usize) -> Result<Module> {
    let e = alg.vertex_element(v)?;
    let p = alg.p();
    let act = (0..alg.dim())
        .map(|i| Matrix::from_fn(p, 1, 1, |_, _| u32::from(i == e)))
        .collect();
    Module::new(alg, 1, act)
}

/// The indecomposable projective `e_v·A`: paths starting at `v`, acted on
/// by right multiplication.
pub fn projective(alg: &Arc<Algebra>, v: usize) -> Result<Module> {
    alg.vertex_element(v)?;
    let pb = alg.paths().unwrap();
    let idx: Vec<usize> = (0..alg.dim()).filter(|&i| pb.src[i] == v).collect();
    let p = alg.p();
    let act = (0..alg.dim())
        .map(|a| {
            Matrix::from_fn(p, idx.len(), idx.len(), |r, c| alg.product(idx[r], a)[idx[c]])
        })
        .collect();
    Module::new(alg, idx.len(), act)
}

/// The indecomposable injective at `v`: the dual of the projective at `v`
/// over the opposite algebra, spanned by the paths ending at `v`.
pub fn injective(alg: &Arc<Algebra>, v: usize) -> Result<Module> {
    let op = opposite_arc(alg);
    let pv = projective(&op, v)?;
    dual_over(&pv, alg)
}

/// The algebra acting on itself by right multiplication.
pub fn regular(alg: &Arc<Algebra>) -> Module {
    let act = (0..alg.dim()).map(|i| alg.right_mult(&alg.basis_vector(i))).collect();
    Module::new_unchecked(alg, alg.dim(), act).unwrap()
}

/// The regular module with its commuting action by left multiplication,
/// which is a module over the opposite algebra.
pub fn regular_bimodule(alg: &Arc<Algebra>) -> Bimodule {
    let op = opposite_arc(alg);
    let left_mult = (0..alg.dim()).map(|i| alg.left_mult(&alg.basis_vector(i))).collect();
    Bimodule { left: regular(alg), right: Module::new_unchecked(&op, alg.dim(), left_mult).unwrap() }
}

/// `D(A)`: the dual of the regular module over the opposite algebra.
pub fn dual_regular(alg: &Arc<Algebra>) -> Module {
    let op = opposite_arc(alg);
    dual_over(&regular(&op), alg).unwrap()
}

/// The dual space with transposed action, a module over the opposite algebra.
pub fn dual(m: &Module) -> Module {
    let op = opposite_arc(m.algebra());
    dual_over(m, &op).unwrap()
}

/// The dual of `m`, placed over `target`, which must be the opposite of
/// the algebra of `m`.
pub fn dual_over(m: &Module, target: &Arc<Algebra>) -> Result<Module> {
    if !target.is_opposite_of(m.algebra()) {
        return Err(Error::AlgebraMismatch("dual must live over the opposite algebra".into()));
    }
    let act = m.actions().iter().map(Matrix::transpose).collect();
    Module::new_unchecked(target, m.dim(), act)
}

/// The dual of a map, reversing its direction.
pub fn dual_map(f: &ModuleMap, source: &Module, target: &Module) -> Result<ModuleMap> {
    ModuleMap::new_unchecked(source, target, f.matrix.transpose())
}

/// A direct sum with its structure maps.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(alg: &Arc<Algebra>, parts: &[Module]) -> Result<DirectSum> {
    for m in parts {
        if !same_algebra(alg, m.algebra()) {
            return Err(Error::AlgebraMismatch("summand over a different algebra".into()));
        }
    }
    let p = alg.p();
    let act = (0..alg.dim())
        .map(|i| {
            let blocks: Vec<&Matrix> = parts.iter().map(|m| m.act(i)).collect();
            Matrix::block_diag(p, &blocks)
        })
        .collect();
    let total: usize = parts.iter().map(Module::dim).sum();
    let module = Module::new_unchecked(alg, total, act)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in parts {
        let mut inj = Matrix::zeros(p, m.dim(), total);
        inj.set_block(0, off, &Matrix::identity(p, m.dim()));
        projections.push(ModuleMap::new_unchecked(&module, m, inj.transpose())?);
        injections.push(ModuleMap::new_unchecked(m, &module, inj)?);
        off += m.dim();
    }
    Ok(DirectSum { module, injections, projections })
}

/// `c` copies of `m`.
pub fn power(m: &Module, c: usize) -> Result<DirectSum> {
    direct_sum(m.algebra(), &vec![m.clone(); c])
}

/// An invertible homomorphism `M → N`, if one is found.
pub fn is_isomorphic(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    check_same(m, n)?;
    if m.dim() != n.dim() || m.dim_vector() != n.dim_vector() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let h = hom(m, n)?;
    if h.dim() == 0 {
        return Ok(None);
    }
    let p = m.p();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..ISO_SAMPLES {
        let c: Vec<u32> = (0..h.dim()).map(|_| rng.random_range(0..p)).collect();
        let f = h.element(&c);
        if f.is_invertible() {
            return Ok(Some(ModuleMap::new_unchecked(m, n, f)?));
        }
    }
    let total = (p as u64).checked_pow(h.dim() as u32);
    if let Some(total) = total.filter(|&t| t <= ISO_EXHAUSTIVE_LIMIT) {
        let mut c = vec![0u32; h.dim()];
        for mut code in 0..total {
            for x in c.iter_mut() {
                *x = (code % p as u64) as u32;
                code /= p as u64;
            }
            let f = h.element(&c);
            if f.is_invertible() {
                return Ok(Some(ModuleMap::new_unchecked(m, n, f)?));
            }
        }
    }
    Ok(None)
}

/// `End(M)` with basis the hom basis and product "first `F_i`, then `F_j`",
/// together with `M` as a module over it on the second side.
pub fn endomorphism_algebra(m: &Module) -> Result<(Arc<Algebra>, Bimodule)> {
    let h = hom(m, m)?;
    let d = h.dim();
    let p = m.p();
    let mut table = Vec::with_capacity(d * d * d);
    for f in h.basis() {
        for g in h.basis() {
            table.extend(h.coords(&f.mul(g)).expect("composite leaves the endomorphism space"));
        }
    }
    let unit = h.coords(&Matrix::identity(p, m.dim())).expect("identity is an endomorphism");
    let labels = (1..=d).map(|i| format!("f{i}")).collect();
    let end = Arc::new(Algebra::from_parts(p, labels, table, unit.clone(), vec![unit]));
    let right = Module::new(&end, m.dim(), h.basis().to_vec())?;
    Ok((end.clone(), Bimodule::new(m.clone(), right)?))
}

/// Random submodule-free module of the given dimension: a random quotient
/// of a sum of projectives.
pub fn random_quotient_of_projectives<G: Rng + ?Sized>(
    alg: &Arc<Algebra>,
    rng: &mut G,
    max_summands: usize,
) -> Result<Module> {
    let pb = alg.require_paths("random modules")?;
    let count = rng.random_range(1..=max_summands.max(1));
    let parts: Vec<Module> = (0..count)
        .map(|_| projective(alg, rng.random_range(0..pb.vertices)))
        .collect::<Result<_>>()?;
    let sum = direct_sum(alg, &parts)?;
    let k = rng.random_range(0..=sum.module.dim().min(3));
    let gens = Matrix::random(alg.p(), k, sum.module.dim(), rng);
    let (_, inc) = generated_submodule(&sum.module, &gens)?;
    let (q, _) = quotient(&sum.module, &inc.matrix)?;
    Ok(q)
}
