//! The fixture corpus: two named algebras and seeded random bound quiver
//! algebras of global dimension at most two.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::homalg::min_proj_resolution;
use crate::io::{ArrowDoc, Construction, FieldDoc, InputDocument, ModuleDoc, QuiverDoc, Side, TermDoc, SCHEMA_VERSION};
use crate::module::simple;

/// Number of random algebras shipped in the corpus.
pub const RANDOM_COUNT: usize = 10;

/// Seed of the `k`-th random fixture.
pub fn random_seed(k: usize) -> u64 {
    0x7117_0000 + k as u64
}

fn arrow(name: &str, src: usize, tgt: usize) -> ArrowDoc {
    ArrowDoc { name: name.into(), src, tgt }
}

fn term(coeff: i64, path: &[&str]) -> TermDoc {
    TermDoc { coeff, path: path.iter().map(|s| s.to_string()).collect() }
}

fn construct(c: Construction, args: Vec<serde_json::Value>, side: Side) -> ModuleDoc {
    ModuleDoc::Construct { construct: c, args, side }
}

/// `1 → 2` with arrow `a` over `F_5`.
pub fn fix_a2() -> InputDocument {
    let mut modules = BTreeMap::new();
    modules.insert("P1".into(), ModuleDoc::Representation {
        dims: vec![1, 1],
        arrows: BTreeMap::from([("a".to_string(), vec![vec![1]])]),
        side: Side::Algebra,
    });
    modules.insert("Aop".into(), construct(Construction::Regular, vec![], Side::Opposite));
    modules.insert("DA".into(), construct(Construction::Dual, vec![json!("Aop")], Side::Algebra));
    InputDocument {
        schema: SCHEMA_VERSION,
        name: Some("fix-a2".into()),
        seed: None,
        field: FieldDoc { prime: 5 },
        quiver: QuiverDoc { vertices: 2, arrows: vec![arrow("a", 1, 2)] },
        relations: vec![],
        modules,
    }
}

/// `1 → 2 → 3` with arrows `a`, `b` and relation `ab = 0` over `F_5`.
pub fn fix_n3() -> InputDocument {
    let mut modules = BTreeMap::new();
    modules.insert("Aop".into(), construct(Construction::Regular, vec![], Side::Opposite));
    modules.insert("DA".into(), construct(Construction::Dual, vec![json!("Aop")], Side::Algebra));
    modules.insert("S3op".into(), construct(Construction::Simple, vec![json!(3)], Side::Opposite));
    modules.insert("T".into(), construct(Construction::DirectSum, vec![json!("P1"), json!("P2"), json!("S2")], Side::Algebra));
    modules.insert("M".into(), ModuleDoc::Representation {
        dims: vec![0, 1, 1],
        arrows: BTreeMap::from([("b".to_string(), vec![vec![2]])]),
        side: Side::Algebra,
    });
    InputDocument {
        schema: SCHEMA_VERSION,
        name: Some("fix-n3".into()),
        seed: None,
        field: FieldDoc { prime: 5 },
        quiver: QuiverDoc { vertices: 3, arrows: vec![arrow("a", 1, 2), arrow("b", 2, 3)] },
        relations: vec![vec![term(1, &["a", "b"])]],
        modules,
    }
}

/// Largest projective dimension of a simple module, or `None` if some
/// resolution does not close up within `cap` steps.
pub fn global_dimension(alg: &Arc<Algebra>, cap: usize) -> Result<Option<usize>> {
    let n = alg.vertex_count().unwrap_or(0);
    let mut best = 0;
    for v in 0..n {
        let r = min_proj_resolution(&simple(alg, v)?, cap)?;
        if r.truncated {
            return Ok(None);
        }
        best = best.max(r.length());
    }
    Ok(Some(best))
}

fn connected(n: usize, arrows: &[ArrowDoc]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            c[x] = find(c, c[x]);
        }
        c[x]
    }
    for a in arrows {
        let (x, y) = (find(&mut comp, a.src - 1), find(&mut comp, a.tgt - 1));
        comp[x] = y;
    }
    let root = find(&mut comp, 0);
    (0..n).all(|v| find(&mut comp, v) == root)
}

fn candidate(rng: &mut ChaCha8Rng) -> InputDocument {
    let n = rng.random_range(3..=4);
    let square = n == 4 && rng.random_bool(0.5);
    let names = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let arrows = loop {
        let mut arrows = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let forced = square && matches!((i, j), (1, 2) | (1, 3) | (2, 4) | (3, 4));
                if (forced || rng.random_bool(0.55)) && arrows.len() < names.len() {
                    arrows.push(arrow(names[arrows.len()], i, j));
                }
            }
        }
        if connected(n, &arrows) {
            break arrows;
        }
    };
    let mut paths: BTreeMap<(usize, usize), Vec<[&str; 2]>> = BTreeMap::new();
    for x in &arrows {
        for y in arrows.iter().filter(|y| y.src == x.tgt) {
            paths.entry((x.src, y.tgt)).or_default().push([&x.name, &y.name]);
        }
    }
    let mut relations = Vec::new();
    for group in paths.values() {
        let mut rest: Vec<&[&str; 2]> = group.iter().collect();
        if rest.len() >= 2 && rng.random_bool(0.8) {
            let (l, r) = (rest.remove(0), rest.remove(0));
            relations.push(vec![term(1, l), term(-1, r)]);
        }
        for p in rest {
            if rng.random_bool(0.45) {
                relations.push(vec![term(1, p)]);
            }
        }
    }
    InputDocument {
        schema: SCHEMA_VERSION,
        name: None,
        seed: None,
        field: FieldDoc { prime: 5 },
        quiver: QuiverDoc { vertices: n, arrows },
        relations,
        modules: BTreeMap::new(),
    }
}

/// A seeded random acyclic bound quiver algebra on 3 or 4 vertices with
/// zero and commutativity relations of length two and global dimension at
/// most two. Half of the 4-vertex draws contain a square. Candidates are
/// drawn until one qualifies.
pub fn random_algebra(seed: u64) -> Result<InputDocument> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut doc = candidate(&mut rng);
        let alg = Arc::new(doc.algebra()?);
        if matches!(global_dimension(&alg, 8)?, Some(d) if d <= 2) {
            doc.seed = Some(seed);
            return Ok(doc);
        }
    }
}

/// Every fixture as `(file stem, document)`.
pub fn corpus() -> Result<Vec<(String, InputDocument)>> {
    let mut out = vec![("fix-a2".to_string(), fix_a2()), ("fix-n3".to_string(), fix_n3())];
    for k in 0..RANDOM_COUNT {
        let mut doc = random_algebra(random_seed(k))?;
        let stem = format!("random-{k:02}");
        doc.name = Some(stem.clone());
        out.push((stem, doc));
    }
    Ok(out)
}

/// Directory holding the shipped fixture files.
pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::Workspace;
    use crate::module::is_isomorphic;

    #[test]
    fn named_fixtures_have_expected_dimensions() {
        assert_eq!(fix_a2().algebra().unwrap().dim(), 3);
        assert_eq!(fix_n3().algebra().unwrap().dim(), 5);
    }

    #[test]
    fn document_modules_match_builtins() {
        let w = Workspace::new(fix_n3()).unwrap();
        let da = w.module("DA").unwrap();
        assert!(is_isomorphic(&da, &crate::module::dual_regular(&w.algebra)).unwrap().is_some());
        assert_eq!(w.module("T").unwrap().dim(), 2 + 2 + 1);
        assert!(is_isomorphic(&w.module("M").unwrap(), &w.module("P2").unwrap()).unwrap().is_some());
        assert_eq!(w.module("S3op").unwrap().algebra().as_ref(), w.opposite.as_ref());
    }

    #[test]
    fn random_algebras_are_deterministic_with_small_global_dimension() {
        let a = random_algebra(random_seed(3)).unwrap();
        assert_eq!(a, random_algebra(random_seed(3)).unwrap());
        let alg = Arc::new(a.algebra().unwrap());
        assert!(global_dimension(&alg, 8).unwrap().unwrap() <= 2);
    }
}
