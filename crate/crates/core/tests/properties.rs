use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiltkit::algebra::{verify_algebra, Algebra};
use tiltkit::corpus::corpus;
use tiltkit::criteria::{check_tilting, kernel_homological_tilting, AddBasis};
use tiltkit::homalg::{evaluation_map, min_proj_resolution};
use tiltkit::linalg::{charpoly, eigenvalues, kernel_basis, quotient_basis, roots, rref, solve, Matrix};
use tiltkit::module::{
    decompose, direct_sum, endomorphism_algebra, hom, injective, is_homomorphism, is_isomorphic, power,
    projective, random_quotient_of_projectives, Module,
};

const CAP: usize = 12;

fn algebras() -> &'static [Arc<Algebra>] {
    static ALGS: OnceLock<Vec<Arc<Algebra>>> = OnceLock::new();
    ALGS.get_or_init(|| corpus().unwrap().into_iter().map(|(_, d)| Arc::new(d.algebra().unwrap())).collect())
}

fn matrix(seed: u64, p: u32, rows: usize, cols: usize, sparsity: f64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(p, rows, cols, |_, _| if rng.random_bool(sparsity) { 0 } else { rng.random_range(0..p) })
}

fn invertible(rng: &mut ChaCha8Rng, p: u32, n: usize) -> Matrix {
    loop {
        let g = Matrix::random(p, n, n, rng);
        if g.is_invertible() {
            return g;
        }
    }
}

/// `m` transported along a random change of basis.
fn disguised(m: &Module, rng: &mut ChaCha8Rng) -> Module {
    let g = invertible(rng, m.p(), m.dim());
    let gi = g.inverse().unwrap();
    let acts = m.actions().iter().map(|a| gi.mul(a).mul(&g)).collect();
    Module::new(m.algebra(), m.dim(), acts).unwrap()
}

/// Random sum of one to three projective or injective indecomposables.
fn candidate(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Module {
    let n = alg.vertex_count().unwrap();
    let parts: Vec<Module> = (0..rng.random_range(1..=3))
        .map(|_| {
            let v = rng.random_range(0..n);
            if rng.random_bool(0.5) { projective(alg, v) } else { injective(alg, v) }.unwrap()
        })
        .collect();
    direct_sum(alg, &parts).unwrap().module
}

fn primes() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7, 65521])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_row_count(seed: u64, p in primes(), r in 0usize..7, c in 0usize..7, s in 0.0f64..0.9) {
        let m = matrix(seed, p, r, c, s);
        let k = kernel_basis(&m);
        prop_assert_eq!(m.rank() + k.rows(), r);
        prop_assert!(k.mul(&m).is_zero());
    }

    #[test]
    fn rref_is_idempotent_and_keeps_the_row_space(seed: u64, p in primes(), r in 0usize..7, c in 0usize..7, s in 0.0f64..0.9) {
        let m = matrix(seed, p, r, c, s);
        let (e, piv) = rref(&m);
        prop_assert_eq!(rref(&e), (e.clone(), piv.clone()));
        prop_assert_eq!(piv.len(), m.rank());
        prop_assert_eq!(e.vstack(&m).rank(), m.rank());
    }

    #[test]
    fn solutions_multiply_back(seed: u64, p in primes(), r in 1usize..6, c in 1usize..6, s in 0.0f64..0.9) {
        let a = matrix(seed, p, r, c, s);
        let x = matrix(seed ^ 0xabcd, p, 3, r, 0.3);
        let b = x.mul(&a);
        let y = solve(&a, &b).unwrap().expect("consistent system");
        prop_assert_eq!(y.mul(&a), b);
        let outside = matrix(seed ^ 0x1234, p, 1, c, 0.0);
        if let Some(z) = solve(&a, &outside).unwrap() {
            prop_assert_eq!(z.mul(&a), outside);
        } else {
            prop_assert!(a.vstack(&outside).rank() > a.rank());
        }
    }

    #[test]
    fn quotient_projection_kills_exactly_the_subspace(seed: u64, p in primes(), r in 0usize..5, n in 1usize..7) {
        let sub = matrix(seed, p, r, n, 0.4);
        let q = quotient_basis(&sub, n);
        prop_assert_eq!(q.dim() + sub.rank(), n);
        prop_assert!(sub.mul(&q.projection).is_zero());
        prop_assert_eq!(q.section.mul(&q.projection), Matrix::identity(p, q.dim()));
        prop_assert_eq!(kernel_basis(&q.projection).vstack(&sub).rank(), sub.rank());
    }

    #[test]
    fn charpoly_roots_are_exactly_the_singular_shifts(seed: u64, p in prop::sample::select(vec![2u32, 3, 5, 7]), n in 1usize..6) {
        let m = matrix(seed, p, n, n, 0.3);
        let cp = charpoly(&m);
        prop_assert_eq!(cp.len(), n + 1);
        prop_assert_eq!(cp[n], 1);
        let ev = eigenvalues(&m);
        for l in 0..p {
            let shifted = m.sub(&Matrix::identity(p, n).scale(l));
            prop_assert_eq!(ev.contains(&l), !shifted.is_invertible());
        }
        prop_assert_eq!(roots(&cp, p), ev);
    }

    #[test]
    fn decomposition_reassembles_the_module(seed: u64, which in 0usize..12) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_quotient_of_projectives(alg, &mut rng, 3).unwrap();
        let Some(parts) = decompose(&m).unwrap() else { return Ok(()) };
        prop_assert_eq!(parts.iter().map(|s| s.module.dim()).sum::<usize>(), m.dim());
        let mut stacked = Matrix::zeros(m.p(), 0, m.dim());
        for s in &parts {
            prop_assert!(is_homomorphism(&s.module, &m, &s.inclusion));
            prop_assert!(is_homomorphism(&m, &s.module, &s.projection));
            prop_assert_eq!(s.inclusion.mul(&s.projection), Matrix::identity(m.p(), s.module.dim()));
            prop_assert_eq!(hom(&s.module, &s.module).unwrap().dim(), s.radical.len() + 1);
            stacked = stacked.vstack(&s.inclusion);
        }
        prop_assert!(stacked.is_invertible());
        let modules: Vec<Module> = parts.iter().map(|s| s.module.clone()).collect();
        let sum = direct_sum(alg, &modules).unwrap().module;
        prop_assert!(is_isomorphic(&sum, &m).unwrap().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tilting_verdict_ignores_multiplicity_and_basis(seed: u64, which in 0usize..12) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = candidate(alg, &mut rng);
        let base = check_tilting(&t, 2, CAP).unwrap();
        let doubled = power(&t, 2).unwrap().module;
        prop_assert_eq!(check_tilting(&doubled, 2, CAP).unwrap().report.verdict, base.report.verdict);
        let moved = disguised(&t, &mut rng);
        let other = check_tilting(&moved, 2, CAP).unwrap();
        prop_assert_eq!(other.report.verdict, base.report.verdict);
        prop_assert_eq!(other.dimension(), base.dimension());
    }

    #[test]
    fn tilting_certificates_verify(seed: u64, which in 0usize..12) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = candidate(alg, &mut rng);
        let ax = check_tilting(&t, 2, CAP).unwrap();
        ax.certificate.verify().unwrap();
        if ax.passed() {
            let seq = ax.certificate.sequence.as_ref().expect("passing check carries a sequence");
            for (term, w) in seq.terms.iter().zip(&seq.witnesses) {
                prop_assert!(w.check(term, &t));
            }
            prop_assert!(ax.certificate.self_ext.iter().filter(|(j, _)| *j > 0).all(|(_, d)| *d == 0));
        }
    }

    #[test]
    fn evaluation_is_bijective_on_add(seed: u64, which in 0usize..12) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = candidate(alg, &mut rng);
        let (_, bim) = endomorphism_algebra(&m).unwrap();
        let basis = AddBasis::new(&m).unwrap();
        prop_assert!(basis.is_some());
        let x = power(&m, rng.random_range(1..=2)).unwrap().module;
        let ev = evaluation_map(&bim, &x).unwrap();
        prop_assert!(ev.map.is_injective());
        prop_assert!(ev.map.is_surjective());
    }

    #[test]
    fn tilting_candidates_have_consistent_kernel_routes(seed: u64, which in 0usize..12) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = candidate(alg, &mut rng);
        if check_tilting(&t, 2, CAP).unwrap().passed() {
            let k = kernel_homological_tilting(&t, 2, CAP).unwrap();
            if let Some(first) = k.routes.first() {
                prop_assert_eq!(first.verdict, k.report.verdict);
            }
        }
    }
}

#[test]
fn corpus_algebras_satisfy_the_algebra_axioms() {
    for alg in algebras() {
        assert!(verify_algebra(alg).passed());
    }
}

#[test]
fn resolutions_in_the_corpus_are_minimal_and_exact() {
    for alg in algebras() {
        for v in 0..alg.vertex_count().unwrap() {
            for m in [projective(alg, v).unwrap(), injective(alg, v).unwrap()] {
                let r = min_proj_resolution(&m, CAP).unwrap();
                r.verify().unwrap();
                assert!(r.minimal);
            }
        }
    }
}
