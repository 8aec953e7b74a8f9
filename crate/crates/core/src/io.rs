//! JSON input documents: a bound quiver algebra over a prime field and a
//! set of named modules.
//!
//! Vertices are numbered from 1 in documents. Arrow matrices act on row
//! vectors, so an arrow `i → j` carries a `dims[i] × dims[j]` matrix.
//! Entries are arbitrary integers reduced modulo the prime at load time.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_bound_quiver_algebra, opposite, Algebra, Quiver, Relation, Term};
use crate::error::{Error, Result};
use crate::linalg::{check_prime, Matrix};
use crate::module::{direct_sum, dual_over, dual_regular, injective, projective, regular, simple, Module};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Seed that generated the document, for random fixtures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub field: FieldDoc,
    pub quiver: QuiverDoc,
    #[serde(default)]
    pub relations: Vec<Vec<TermDoc>>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub prime: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    #[default]
    Algebra,
    Opposite,
}

impl Side {
    fn is_default(&self) -> bool {
        *self == Side::Algebra
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleDoc {
    Representation {
        dims: Vec<usize>,
        #[serde(default)]
        arrows: BTreeMap<String, Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Side::is_default")]
        side: Side,
    },
    Construct {
        construct: Construction,
        #[serde(default)]
        args: Vec<serde_json::Value>,
        #[serde(default, skip_serializing_if = "Side::is_default")]
        side: Side,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Projective,
    Injective,
    Simple,
    Dual,
    DirectSum,
    Regular,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<InputDocument> {
        let doc: InputDocument =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("input document: {e}")))?;
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::invalid(format!(
                "schema: version {} is not supported (expected {SCHEMA_VERSION})",
                doc.schema
            )));
        }
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<InputDocument> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        InputDocument::from_json(&text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// The quiver with 0-based vertices.
    pub fn quiver(&self) -> Result<Quiver> {
        let n = self.quiver.vertices;
        let mut q = Quiver::new(n);
        for (k, a) in self.quiver.arrows.iter().enumerate() {
            for (what, v) in [("src", a.src), ("tgt", a.tgt)] {
                if v == 0 || v > n {
                    return Err(Error::invalid(format!(
                        "quiver.arrows[{k}].{what}: vertex {v} outside 1..={n}"
                    )));
                }
            }
            q = q.arrow(&a.name, a.src - 1, a.tgt - 1);
        }
        Ok(q)
    }

    pub fn relations(&self) -> Vec<Relation> {
        self.relations
            .iter()
            .map(|r| Relation { terms: r.iter().map(|t| Term { coeff: t.coeff, path: t.path.clone() }).collect() })
            .collect()
    }

    pub fn algebra(&self) -> Result<Algebra> {
        check_prime(self.field.prime).map_err(|e| Error::invalid(format!("field.prime: {e}")))?;
        build_bound_quiver_algebra(&self.quiver()?, &self.relations(), self.field.prime)
    }
}

/// A loaded document: the algebra, its opposite, and lazily built modules.
pub struct Workspace {
    pub doc: InputDocument,
    pub algebra: Arc<Algebra>,
    pub opposite: Arc<Algebra>,
    cache: RefCell<BTreeMap<String, Module>>,
    pending: RefCell<Vec<String>>,
}

impl Workspace {
    pub fn new(doc: InputDocument) -> Result<Workspace> {
        let algebra = Arc::new(doc.algebra()?);
        let opposite = Arc::new(opposite(&algebra));
        Ok(Workspace {
            doc,
            algebra,
            opposite,
            cache: RefCell::new(BTreeMap::new()),
            pending: RefCell::new(Vec::new()),
        })
    }

    fn side(&self, side: Side) -> &Arc<Algebra> {
        match side {
            Side::Algebra => &self.algebra,
            Side::Opposite => &self.opposite,
        }
    }

    /// A module by name: a document entry, or one of the built-in names
    /// `A`/`regular`, `DA`, `P<k>`, `I<k>`, `S<k>`, optionally suffixed
    /// with `^op` for the opposite algebra.
    pub fn module(&self, name: &str) -> Result<Module> {
        if let Some(m) = self.cache.borrow().get(name) {
            return Ok(m.clone());
        }
        if self.pending.borrow().iter().any(|n| n == name) {
            return Err(Error::invalid(format!("modules.{name}: definition refers to itself")));
        }
        self.pending.borrow_mut().push(name.to_string());
        let built = match self.doc.modules.get(name) {
            Some(d) => self.build(name, d),
            None => self.builtin(name),
        };
        self.pending.borrow_mut().pop();
        let m = built?;
        self.cache.borrow_mut().insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn builtin(&self, name: &str) -> Result<Module> {
        let (base, side) = match name.strip_suffix("^op") {
            Some(b) => (b, Side::Opposite),
            None => (name, Side::Algebra),
        };
        let alg = self.side(side);
        let vertex = |s: &str| -> Option<usize> {
            let v: usize = s.parse().ok()?;
            (v >= 1 && v <= self.doc.quiver.vertices).then_some(v - 1)
        };
        match base {
            "A" | "regular" => return Ok(regular(alg)),
            "DA" => return Ok(dual_regular(alg)),
            _ => {}
        }
        let (head, tail) = base.split_at(base.chars().next().map_or(0, char::len_utf8));
        match (head, vertex(tail)) {
            ("P", Some(v)) => projective(alg, v),
            ("I", Some(v)) => injective(alg, v),
            ("S", Some(v)) => simple(alg, v),
            _ => Err(Error::invalid(format!("undefined module {name:?}"))),
        }
    }

    fn build(&self, name: &str, d: &ModuleDoc) -> Result<Module> {
        let at = |e: Error| Error::invalid(format!("modules.{name}: {e}"));
        match d {
            ModuleDoc::Representation { dims, arrows, side } => {
                let alg = self.side(*side);
                let p = alg.p();
                let mut mats = BTreeMap::new();
                for (arrow, rows) in arrows {
                    let cols = rows.first().map_or(0, Vec::len);
                    if rows.iter().any(|r| r.len() != cols) {
                        return Err(at(Error::invalid(format!("arrows.{arrow}: ragged matrix"))));
                    }
                    let src = self.arrow_endpoint(arrow, *side).map_err(at)?;
                    // an empty list stands for a matrix with no rows
                    let cols = if rows.is_empty() { dims.get(src.1).copied().unwrap_or(0) } else { cols };
                    mats.insert(arrow.clone(), Matrix::from_rows(p, cols, rows));
                }
                Module::from_representation(alg, dims, &mats).map_err(at)
            }
            ModuleDoc::Construct { construct, args, side } => {
                let alg = self.side(*side);
                let vertex = || -> Result<usize> {
                    let v = args
                        .first()
                        .and_then(serde_json::Value::as_u64)
                        .ok_or_else(|| Error::invalid("args: expected a vertex number".to_string()))?
                        as usize;
                    if v == 0 || v > self.doc.quiver.vertices {
                        return Err(Error::invalid(format!("args: vertex {v} outside 1..={}", self.doc.quiver.vertices)));
                    }
                    Ok(v - 1)
                };
                let names = || -> Result<Vec<String>> {
                    args.iter()
                        .map(|a| {
                            a.as_str()
                                .map(str::to_string)
                                .ok_or_else(|| Error::invalid("args: expected module names".to_string()))
                        })
                        .collect()
                };
                let out = match construct {
                    Construction::Projective => projective(alg, vertex()?),
                    Construction::Injective => injective(alg, vertex()?),
                    Construction::Simple => simple(alg, vertex()?),
                    Construction::Regular => Ok(regular(alg)),
                    Construction::Dual => {
                        let list = names()?;
                        let [inner] = list.as_slice() else {
                            return Err(at(Error::invalid("args: dual takes one module name".to_string())));
                        };
                        let m = self.module(inner)?;
                        if !m.algebra().is_opposite_of(alg) {
                            return Err(at(Error::invalid(format!(
                                "args: the dual of {inner} does not live on the requested side"
                            ))));
                        }
                        dual_over(&m, alg)
                    }
                    Construction::DirectSum => {
                        let parts = names()?.iter().map(|n| self.module(n)).collect::<Result<Vec<_>>>()?;
                        direct_sum(alg, &parts).map(|s| s.module)
                    }
                };
                out.map_err(at)
            }
        }
    }

    fn arrow_endpoint(&self, arrow: &str, side: Side) -> Result<(usize, usize)> {
        let a = self
            .doc
            .quiver
            .arrows
            .iter()
            .find(|a| a.name == arrow)
            .ok_or_else(|| Error::invalid(format!("arrows.{arrow}: unknown arrow")))?;
        Ok(match side {
            Side::Algebra => (a.src - 1, a.tgt - 1),
            Side::Opposite => (a.tgt - 1, a.src - 1),
        })
    }
}

/// A module written back as a representation of the quiver.
pub fn representation_doc(m: &Module) -> Result<ModuleDoc> {
    let alg = m.algebra();
    let pb = alg.require_paths("representations")?;
    let g = m.graded().ok_or_else(|| Error::Unsupported("module without a vertex grading".into()))?;
    let dims: Vec<usize> = (0..pb.vertices).map(|v| g.block(v).len()).collect();
    let mut arrows = BTreeMap::new();
    for (a, i) in &pb.arrows {
        let full = g.basis.mul(m.act(*i)).mul(&g.inverse);
        let (rs, cs) = (g.block(a.src), g.block(a.tgt));
        let block = full.block(rs.start, cs.start, rs.len(), cs.len());
        let rows: Vec<Vec<i64>> = block.to_vecs().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
        arrows.insert(a.name.clone(), rows);
    }
    Ok(ModuleDoc::Representation { dims, arrows, side: Side::Algebra })
}
