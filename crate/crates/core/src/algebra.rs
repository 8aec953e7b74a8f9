//! Finite-dimensional algebras given by structure constants.
//!
//! Bound quiver algebras multiply paths by concatenation: for arrows
//! `a: 1→2` and `b: 2→3` the product `a·b` is the path `ab`. A module is a
//! representation, with `x ↦ x·act(a)` moving vectors along arrows.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{check_prime, quotient_basis, reduce, Matrix, Solver};
use crate::report::CriterionReport;

/// Default bound on path length while detecting admissibility.
pub const DEFAULT_LENGTH_CAP: usize = 32;
/// Bound on the number of enumerated paths.
pub const PATH_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    /// Zero-based source vertex.
    pub src: usize,
    /// Zero-based target vertex.
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize) -> Quiver {
        Quiver { vertices, arrows: Vec::new() }
    }

    /// Adds an arrow between zero-based vertices.
    pub fn arrow(mut self, name: &str, src: usize, tgt: usize) -> Quiver {
        self.arrows.push(Arrow { name: name.to_string(), src, tgt });
        self
    }

    fn validate(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for a in &self.arrows {
            if a.name.is_empty() {
                return Err(Error::invalid("arrow with empty name"));
            }
            for v in [a.src, a.tgt] {
                if v >= self.vertices {
                    return Err(Error::VertexOutOfRange { vertex: v, count: self.vertices });
                }
            }
            if seen.insert(a.name.clone(), ()).is_some() {
                return Err(Error::invalid(format!("duplicate arrow name {:?}", a.name)));
            }
        }
        Ok(())
    }

    fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// One summand `coeff · path` of a relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: i64,
    pub path: Vec<String>,
}

/// A linear combination of parallel paths of length at least two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub terms: Vec<Term>,
}

impl Relation {
    /// The relation `path = 0`.
    pub fn zero(path: &[&str]) -> Relation {
        Relation {
            terms: vec![Term { coeff: 1, path: path.iter().map(|s| s.to_string()).collect() }],
        }
    }

    /// The relation `lhs = rhs`.
    pub fn commutativity(lhs: &[&str], rhs: &[&str]) -> Relation {
        Relation {
            terms: vec![
                Term { coeff: 1, path: lhs.iter().map(|s| s.to_string()).collect() },
                Term { coeff: -1, path: rhs.iter().map(|s| s.to_string()).collect() },
            ],
        }
    }
}

/// Path data attached to the basis of a bound quiver algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathBasis {
    pub vertices: usize,
    /// Source vertex of each basis path.
    pub src: Vec<usize>,
    /// Target vertex of each basis path.
    pub tgt: Vec<usize>,
    /// Arrow indices of each basis path, in order of travel.
    pub words: Vec<Vec<usize>>,
    /// Basis index of the trivial path at each vertex.
    pub vertex: Vec<usize>,
    /// Arrows of the quiver in order, with the basis index of each.
    pub arrows: Vec<(Arrow, usize)>,
}

impl PathBasis {
    pub fn len(&self, i: usize) -> usize {
        self.words[i].len()
    }

    fn opposite(&self) -> PathBasis {
        PathBasis {
            vertices: self.vertices,
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            words: self.words.iter().map(|w| w.iter().rev().copied().collect()).collect(),
            vertex: self.vertex.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|(a, i)| (Arrow { name: a.name.clone(), src: a.tgt, tgt: a.src }, *i))
                .collect(),
        }
    }
}

/// A finite-dimensional associative unital algebra over `F_p`.
#[derive(Debug, Clone, Serialize)]
pub struct Algebra {
    p: u32,
    dim: usize,
    labels: Vec<String>,
    /// `table[(i * dim + j) * dim + k]` is the `k`-th coordinate of `b_i·b_j`.
    table: Vec<u32>,
    unit: Vec<u32>,
    idempotents: Vec<Vec<u32>>,
    /// Basis indices generating the algebra.
    generators: Vec<usize>,
    paths: Option<PathBasis>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        self.p == other.p
            && self.dim == other.dim
            && self.table == other.table
            && self.unit == other.unit
            && self.idempotents == other.idempotents
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Assembles an algebra from raw structure constants without checking
    /// the axioms; see [`verify_algebra`].
    pub fn from_parts(
        p: u32,
        labels: Vec<String>,
        table: Vec<u32>,
        unit: Vec<u32>,
        idempotents: Vec<Vec<u32>>,
    ) -> Algebra {
        let dim = labels.len();
        assert_eq!(table.len(), dim * dim * dim);
        Algebra {
            p,
            dim,
            labels,
            table,
            unit,
            idempotents,
            generators: (0..dim).collect(),
            paths: None,
        }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn field(p: u32) -> Algebra {
        Algebra::from_parts(p, vec!["1".into()], vec![1], vec![1], vec![vec![1]])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<u32>] {
        &self.idempotents
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn paths(&self) -> Option<&PathBasis> {
        self.paths.as_ref()
    }

    pub fn is_path_algebra(&self) -> bool {
        self.paths.is_some()
    }

    pub fn vertex_count(&self) -> Option<usize> {
        self.paths.as_ref().map(|pb| pb.vertices)
    }

    /// Coordinates of `b_i·b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        let s = (i * self.dim + j) * self.dim;
        &self.table[s..s + self.dim]
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut acc = vec![0u64; self.dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = (a as u64 * b as u64) % p;
                for (k, &c) in self.product(i, j).iter().enumerate() {
                    if c != 0 {
                        acc[k] += ab * c as u64;
                    }
                }
            }
        }
        acc.into_iter().map(|v| (v % p) as u32).collect()
    }

    /// Unit coordinate vector of the `i`-th basis element.
    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult(&self, a: &[u32]) -> Matrix {
        let rows: Vec<Vec<u32>> = (0..self.dim).map(|i| self.mul(&self.basis_vector(i), a)).collect();
        Matrix::from_vecs(self.p, self.dim, &rows)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult(&self, a: &[u32]) -> Matrix {
        let rows: Vec<Vec<u32>> = (0..self.dim).map(|i| self.mul(a, &self.basis_vector(i))).collect();
        Matrix::from_vecs(self.p, self.dim, &rows)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Whether `self` is the opposite of `other`.
    pub fn is_opposite_of(&self, other: &Algebra) -> bool {
        self.p == other.p
            && self.dim == other.dim
            && self.unit == other.unit
            && (0..self.dim).all(|i| (0..self.dim).all(|j| self.product(i, j) == other.product(j, i)))
    }

    /// Returns a copy with one structure constant overwritten.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, value: u32) -> Algebra {
        let mut a = self.clone();
        a.table[(i * self.dim + j) * self.dim + k] = value % self.p;
        a
    }

    /// Index of the trivial path at vertex `v`.
    pub fn vertex_element(&self, v: usize) -> Result<usize> {
        let pb = self.require_paths("vertex idempotents")?;
        pb.vertex
            .get(v)
            .copied()
            .ok_or(Error::VertexOutOfRange { vertex: v, count: pb.vertices })
    }

    pub(crate) fn require_paths(&self, what: &str) -> Result<&PathBasis> {
        self.paths.as_ref().ok_or_else(|| {
            Error::Unsupported(format!("{what} needs a path basis; this algebra is given by structure constants only"))
        })
    }
}

/// The opposite algebra: same basis, `c'[i][j] = c[j][i]`.
pub fn opposite(a: &Algebra) -> Algebra {
    let d = a.dim;
    let mut table = vec![0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let s = (i * d + j) * d;
            table[s..s + d].copy_from_slice(a.product(j, i));
        }
    }
    Algebra {
        p: a.p,
        dim: d,
        labels: a.labels.clone(),
        table,
        unit: a.unit.clone(),
        idempotents: a.idempotents.clone(),
        generators: a.generators.clone(),
        paths: a.paths.as_ref().map(PathBasis::opposite),
    }
}

/// Rows are the basis paths of length at least one.
pub fn radical_basis(a: &Algebra) -> Result<Matrix> {
    let pb = a.require_paths("the radical")?;
    let rows: Vec<Vec<u32>> = (0..a.dim).filter(|&i| pb.len(i) > 0).map(|i| a.basis_vector(i)).collect();
    Ok(Matrix::from_vecs(a.p, a.dim, &rows))
}

/// Checks associativity, the unit laws and the idempotent family; every
/// violated identity is listed in the notes.
pub fn verify_algebra(a: &Algebra) -> CriterionReport {
    let mut r = CriterionReport::new("associative unital algebra with complete orthogonal idempotents");
    let d = a.dim;
    let basis: Vec<Vec<u32>> = (0..d).map(|i| a.basis_vector(i)).collect();
    let prods: Vec<Vec<Vec<u32>>> = (0..d).map(|i| (0..d).map(|j| a.product(i, j).to_vec()).collect()).collect();
    for (i, row) in prods.iter().enumerate() {
        for (j, ij) in row.iter().enumerate() {
            for (k, bk) in basis.iter().enumerate() {
                let left = a.mul(ij, bk);
                let right = a.mul(&basis[i], &prods[j][k]);
                if left != right {
                    r.fail(format!(
                        "associativity fails on ({}, {}, {})",
                        a.labels[i], a.labels[j], a.labels[k]
                    ));
                }
            }
        }
    }
    for (i, b) in basis.iter().enumerate() {
        if a.mul(&a.unit, b) != *b {
            r.fail(format!("unit is not a left identity on {}", a.labels[i]));
        }
        if a.mul(b, &a.unit) != *b {
            r.fail(format!("unit is not a right identity on {}", a.labels[i]));
        }
    }
    let p = a.p;
    let mut sum = vec![0u32; d];
    for (u, e) in a.idempotents.iter().enumerate() {
        for (s, &x) in sum.iter_mut().zip(e) {
            *s = (*s + x) % p;
        }
        for (v, f) in a.idempotents.iter().enumerate() {
            let ef = a.mul(e, f);
            let expected = if u == v { e.clone() } else { vec![0; d] };
            if ef != expected {
                r.fail(format!("idempotents {u} and {v} are not orthogonal idempotents"));
            }
        }
    }
    if sum != a.unit {
        r.fail("idempotents do not sum to the unit");
    }
    r.record("dimension", 0, d);
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    src: usize,
    tgt: usize,
    arrows: Vec<usize>,
}

/// Builds `kQ / I` for the two-sided ideal `I` generated by `rels`, using the
/// default length cap.
pub fn build_bound_quiver_algebra(q: &Quiver, rels: &[Relation], p: u32) -> Result<Algebra> {
    build_bound_quiver_algebra_capped(q, rels, p, DEFAULT_LENGTH_CAP)
}

/// As [`build_bound_quiver_algebra`] with an explicit length cap.
pub fn build_bound_quiver_algebra_capped(q: &Quiver, rels: &[Relation], p: u32, cap: usize) -> Result<Algebra> {
    check_prime(p)?;
    q.validate()?;
    let rels = resolve_relations(q, rels, p)?;

    // paths by length, grown until every path of length `n` lies in I + J^(n+1)
    let mut by_len: Vec<Vec<Path>> = vec![(0..q.vertices)
        .map(|v| Path { src: v, tgt: v, arrows: vec![] })
        .collect()];
    let mut total = q.vertices;
    let mut n = 1;
    loop {
        if n > cap {
            return Err(Error::NotAdmissible(format!(
                "paths of length {cap} still survive; relations do not bound path length within the cap"
            )));
        }
        let next: Vec<Path> = by_len[n - 1]
            .iter()
            .flat_map(|path| {
                q.arrows.iter().enumerate().filter(move |(_, a)| a.src == path.tgt).map(move |(k, a)| {
                    let mut arrows = path.arrows.clone();
                    arrows.push(k);
                    Path { src: path.src, tgt: a.tgt, arrows }
                })
            })
            .collect();
        total += next.len();
        if total > PATH_LIMIT {
            return Err(Error::NotAdmissible(format!(
                "more than {PATH_LIMIT} paths of length at most {n}"
            )));
        }
        by_len.push(next);
        let space = PathSpace::new(&by_len, n);
        let ideal = space.ideal(&rels, p);
        let solver = Solver::new(&ideal);
        let all_dead = by_len[n].iter().all(|path| solver.contains(&space.unit(path, p)));
        if all_dead {
            break;
        }
        n += 1;
    }

    // the algebra is spanned by paths of length < n modulo the truncated ideal
    by_len.truncate(n);
    let space = PathSpace::new(&by_len, n - 1);
    let ideal = space.ideal(&rels, p);
    let quotient = quotient_basis(&ideal, space.cols.len());
    let (_, pivots) = crate::linalg::rref(&ideal);
    let mut free: Vec<usize> = (0..space.cols.len()).filter(|c| !pivots.contains(c)).collect();
    // basis order: by length, then enumeration order
    free.sort_by_key(|&c| (space.cols[c].arrows.len(), space.order[c]));
    let free_pos: HashMap<usize, usize> = {
        let mut proj_cols: Vec<usize> = (0..space.cols.len()).filter(|c| !pivots.contains(c)).collect();
        proj_cols.sort();
        proj_cols.iter().enumerate().map(|(j, &c)| (c, j)).collect()
    };
    let basis: Vec<Path> = free.iter().map(|&c| space.cols[c].clone()).collect();
    let dim = basis.len();

    // coordinates of an arbitrary path in the chosen basis
    let coords = |path: &Path| -> Vec<u32> {
        let mut v = vec![0u32; dim];
        if path.arrows.len() >= n {
            return v;
        }
        let c = space.index[path];
        let row = quotient.projection.row(c);
        for (b, &fc) in free.iter().enumerate() {
            v[b] = row[free_pos[&fc]];
        }
        v
    };

    let mut table = vec![0u32; dim * dim * dim];
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if x.tgt != y.src {
                continue;
            }
            let mut arrows = x.arrows.clone();
            arrows.extend_from_slice(&y.arrows);
            let prod = Path { src: x.src, tgt: y.tgt, arrows };
            let s = (i * dim + j) * dim;
            table[s..s + dim].copy_from_slice(&coords(&prod));
        }
    }

    let single_char = q.arrows.iter().all(|a| a.name.chars().count() == 1);
    let labels: Vec<String> = basis
        .iter()
        .map(|path| {
            if path.arrows.is_empty() {
                format!("e{}", path.src + 1)
            } else {
                let names: Vec<&str> = path.arrows.iter().map(|&k| q.arrows[k].name.as_str()).collect();
                names.join(if single_char { "" } else { "*" })
            }
        })
        .collect();
    let vertex: Vec<usize> = (0..q.vertices)
        .map(|v| basis.iter().position(|b| b.arrows.is_empty() && b.src == v).unwrap())
        .collect();
    // relations live in paths of length at least two, so every arrow survives
    let arrows: Vec<(Arrow, usize)> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let idx = basis.iter().position(|b| b.arrows == [k]).expect("arrow killed by relations");
            (a.clone(), idx)
        })
        .collect();
    let mut unit = vec![0u32; dim];
    for &v in &vertex {
        unit[v] = 1;
    }
    let idempotents = vertex
        .iter()
        .map(|&v| {
            let mut e = vec![0u32; dim];
            e[v] = 1;
            e
        })
        .collect();
    let mut generators: Vec<usize> = vertex.clone();
    generators.extend(arrows.iter().map(|(_, i)| *i));
    let paths = PathBasis {
        vertices: q.vertices,
        src: basis.iter().map(|b| b.src).collect(),
        tgt: basis.iter().map(|b| b.tgt).collect(),
        words: basis.iter().map(|b| b.arrows.clone()).collect(),
        vertex,
        arrows,
    };
    Ok(Algebra {
        p,
        dim,
        labels,
        table,
        unit,
        idempotents,
        generators,
        paths: Some(paths),
    })
}

/// Relations as reduced `(coefficient, path)` lists.
fn resolve_relations(q: &Quiver, rels: &[Relation], p: u32) -> Result<Vec<Vec<(u32, Path)>>> {
    let mut out = Vec::new();
    for (ri, rel) in rels.iter().enumerate() {
        let mut terms = Vec::new();
        let mut ends: Option<(usize, usize)> = None;
        for t in &rel.terms {
            if t.path.len() < 2 {
                return Err(Error::invalid(format!(
                    "relation {ri}: path {:?} has length below 2",
                    t.path
                )));
            }
            let mut arrows = Vec::new();
            for name in &t.path {
                let k = q
                    .arrow_index(name)
                    .ok_or_else(|| Error::invalid(format!("relation {ri}: unknown arrow {name:?}")))?;
                arrows.push(k);
            }
            for w in arrows.windows(2) {
                if q.arrows[w[0]].tgt != q.arrows[w[1]].src {
                    return Err(Error::invalid(format!("relation {ri}: path {:?} is not composable", t.path)));
                }
            }
            let path = Path {
                src: q.arrows[arrows[0]].src,
                tgt: q.arrows[*arrows.last().unwrap()].tgt,
                arrows,
            };
            match ends {
                None => ends = Some((path.src, path.tgt)),
                Some(e) if e != (path.src, path.tgt) => {
                    return Err(Error::invalid(format!("relation {ri}: paths are not parallel")));
                }
                _ => {}
            }
            let c = reduce(t.coeff, p);
            if c != 0 {
                terms.push((c, path));
            }
        }
        if !terms.is_empty() {
            out.push(terms);
        }
    }
    Ok(out)
}

/// Coordinates on the span of all paths of length at most `max_len`.
/// Columns are ordered longest first, so echelon pivots prefer long paths.
struct PathSpace {
    cols: Vec<Path>,
    /// Enumeration order of each column, shortest first.
    order: Vec<usize>,
    index: HashMap<Path, usize>,
    by_len: Vec<Vec<Path>>,
    max_len: usize,
}

impl PathSpace {
    fn new(by_len: &[Vec<Path>], max_len: usize) -> PathSpace {
        let mut cols = Vec::new();
        let mut order = Vec::new();
        let mut running = 0;
        let mut orders: Vec<Vec<usize>> = Vec::new();
        for paths in &by_len[..=max_len] {
            orders.push((running..running + paths.len()).collect());
            running += paths.len();
        }
        for l in (0..=max_len).rev() {
            for (k, path) in by_len[l].iter().enumerate() {
                cols.push(path.clone());
                order.push(orders[l][k]);
            }
        }
        let index = cols.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        PathSpace {
            cols,
            order,
            index,
            by_len: by_len[..=max_len].to_vec(),
            max_len,
        }
    }

    fn unit(&self, path: &Path, p: u32) -> Vec<u32> {
        let mut v = vec![0; self.cols.len()];
        if let Some(&c) = self.index.get(path) {
            v[c] = 1 % p;
        }
        v
    }

    /// Spans `x·r·y` for relations `r` and paths `x`, `y`, dropping terms
    /// longer than `max_len`.
    fn ideal(&self, rels: &[Vec<(u32, Path)>], p: u32) -> Matrix {
        let mut rows = Vec::new();
        let all: Vec<&Path> = self.by_len.iter().flatten().collect();
        for rel in rels {
            let (src, tgt) = (rel[0].1.src, rel[0].1.tgt);
            let shortest = rel.iter().map(|(_, path)| path.arrows.len()).min().unwrap();
            for x in all.iter().filter(|x| x.tgt == src) {
                for y in all.iter().filter(|y| y.src == tgt) {
                    if x.arrows.len() + shortest + y.arrows.len() > self.max_len {
                        continue;
                    }
                    let mut v = vec![0u32; self.cols.len()];
                    for (c, path) in rel {
                        let mut arrows = x.arrows.clone();
                        arrows.extend_from_slice(&path.arrows);
                        arrows.extend_from_slice(&y.arrows);
                        if arrows.len() > self.max_len {
                            continue;
                        }
                        let full = Path { src: x.src, tgt: y.tgt, arrows };
                        let col = self.index[&full];
                        v[col] = (v[col] + c) % p;
                    }
                    if v.iter().any(|&e| e != 0) {
                        rows.push(v);
                    }
                }
            }
        }
        Matrix::from_vecs(p, self.cols.len(), &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Algebra {
        build_bound_quiver_algebra(&Quiver::new(2).arrow("a", 0, 1), &[], 5).unwrap()
    }

    #[test]
    fn a2_basis() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), ["e1", "e2", "a"]);
        assert!(verify_algebra(&a).passed());
    }

    #[test]
    fn loop_with_square_zero() {
        let q = Quiver::new(1).arrow("x", 0, 0);
        let a = build_bound_quiver_algebra(&q, &[Relation::zero(&["x", "x"])], 5).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn free_loop_is_rejected() {
        let q = Quiver::new(1).arrow("x", 0, 0);
        let err = build_bound_quiver_algebra_capped(&q, &[], 5, 8).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible(_)));
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = a2();
        assert_eq!(opposite(&opposite(&a)), a);
    }

    #[test]
    fn semisimple_radical_is_empty() {
        let a = build_bound_quiver_algebra(&Quiver::new(3), &[], 5).unwrap();
        assert_eq!(radical_basis(&a).unwrap().rows(), 0);
    }

    #[test]
    fn field_algebra_verifies() {
        assert!(verify_algebra(&Algebra::field(5)).passed());
        assert!(radical_basis(&Algebra::field(5)).is_err());
    }
}
