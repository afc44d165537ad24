mod common;

use common::*;
use projcert::contraction::{
    alpha_margin, certify_by_ratio, epsilon_star, epsilon_star_canonical, oracle_check,
    verify_proof_chain, ChainStatus, ContractionQuery, Verdict, WitnessPair,
};
use projcert::cartan::decompose;
use projcert::{arch, FieldDescriptor, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 20_000;

fn oracle(g: &Matrix, eps: f64, seed: u64) -> Verdict {
    let q = ContractionQuery::new(g.clone(), eps).unwrap();
    oracle_check(&q, SAMPLES, seed).unwrap().verdict
}

#[test]
fn forward_direction() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in 0..60 {
        let eps: f64 = [0.05, 0.1, 0.2][t % 3];
        let n = [2, 3, 5][t % 3];
        let r = eps * eps * rng.random_range(0.01..=1.0);
        let prof = profile_with_ratio(&mut rng, n, r);
        let g = real_with_profile(&mut rng, &prof);
        let q = ContractionQuery::new(g.clone(), eps).unwrap();
        assert_eq!(certify_by_ratio(&q).unwrap().verdict, Verdict::CertifiedContracting);
        assert_eq!(oracle(&g, eps, t as u64), Verdict::OracleVerified, "r = {r}, eps = {eps}");
    }
}

#[test]
fn converse_direction() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let (mut verified, mut refuted) = (0, 0);
    for t in 0..80 {
        let eps: f64 = [0.05, 0.1, 0.2][t % 3];
        let n = 2 + t % 3;
        // log-uniform ratio between ε²/4 and 1
        let r = (eps * eps / 4.0) * (4.0 / (eps * eps)).powf(rng.random_range(0.0f64..1.0));
        let prof = profile_with_ratio(&mut rng, n, r);
        let g = real_with_profile(&mut rng, &prof);
        match oracle(&g, eps, t as u64) {
            Verdict::OracleVerified => {
                verified += 1;
                assert!(r <= 4.0 * eps * eps, "verified with r = {r} > 4ε²");
            }
            _ => refuted += 1,
        }
        let c = certify_by_ratio(&ContractionQuery::new(g, eps).unwrap()).unwrap();
        if c.verdict == Verdict::CertifiedNotContracting {
            assert!(r > 4.0 * eps * eps);
        }
    }
    assert!(verified > 5 && refuted > 5, "{verified} verified, {refuted} refuted");
}

#[test]
fn monotone_in_epsilon() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for t in 0..20 {
        let eps = 0.05 + 0.01 * (t % 10) as f64;
        let prof = profile_with_ratio(&mut rng, 3, eps * eps);
        let g = real_with_profile(&mut rng, &prof);
        for k in 0..5 {
            let e2 = eps + (0.2499 - eps) * k as f64 / 4.0;
            assert_eq!(oracle(&g, e2, 7), Verdict::OracleVerified, "eps {eps} -> {e2}");
        }
    }
}

#[test]
fn certify_depends_only_on_profile() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for t in 0..50 {
        let n = 2 + t % 3;
        let g = real_matrix(n, &gaussian_real(&mut rng, n));
        let u = real_matrix(n, &arch::random_isometry::<f64, _>(&mut rng, n));
        let w = real_matrix(n, &arch::random_isometry::<f64, _>(&mut rng, n));
        let h = u.mul(&g).unwrap().mul(&w).unwrap();
        for eps in [0.05, 0.1, 0.2, 0.24] {
            let a = certify_by_ratio(&ContractionQuery::new(g.clone(), eps).unwrap()).unwrap();
            let b = certify_by_ratio(&ContractionQuery::new(h.clone(), eps).unwrap()).unwrap();
            assert_eq!(a.verdict, b.verdict);
            assert!((a.ratio - b.ratio).abs() < 1e-8);
        }
    }
}

#[test]
fn epsilon_star_closed_form_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for t in 0..20 {
        let n = 2 + t % 2;
        let g = real_matrix(n, &gaussian_real(&mut rng, n));
        let s = epsilon_star(&g, 100_000, 1).unwrap();
        assert!(s.agrees, "closed {} vs bisection {}", s.closed_form, s.bisection);
        let r = decompose(&g).unwrap().ratio().unwrap().value();
        assert!((epsilon_star_canonical(&g).unwrap() - (r / (1.0 + r)).sqrt()).abs() < 1e-15);
    }
}

#[test]
fn proof_chain_margins_nonnegative() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let mut replayed = 0;
    for _ in 0..30 {
        let eps = rng.random_range(0.02..0.24);
        let n = rng.random_range(2..=4);
        let r = eps * eps * rng.random_range(0.05..1.0);
        let mut diag = profile_with_ratio(&mut rng, n, r);
        let scale = rng.random_range(0.5..20.0);
        diag.iter_mut().for_each(|x| *x *= scale);
        let g = Matrix::diagonal(FieldDescriptor::REAL, &diag.iter().map(|&x| Scalar::Real(x)).collect::<Vec<_>>());
        let rep = verify_proof_chain(&g, eps, None, SAMPLES, 3).unwrap();
        assert_eq!(rep.status, ChainStatus::Verified, "{rep:?}");
        for c in rep.checks.iter().chain(rep.conclusion.as_ref()) {
            assert!(c.holds && c.margin >= 0.0, "{}: margin {}", c.name, c.margin);
        }
        replayed += 1;
    }
    assert_eq!(replayed, 30);
    for i in 1..250 {
        assert!(alpha_margin(i as f64 / 1000.0) > 0.0);
    }
}

#[test]
fn padic_converse_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let mut verified = 0;
    for t in 0..40 {
        let p = [5, 7][t % 2];
        let field = FieldDescriptor::padic(p, 8).unwrap();
        let eps: f64 = [0.05, 0.1, 0.2][t % 3];
        let gq = random_padic_rat(&mut rng, 2, p);
        let g = padic_matrix(field, &gq);
        if g.determinant().unwrap().is_zero() {
            continue;
        }
        let q = ContractionQuery::new(g, eps).unwrap();
        let c = oracle_check(&q, 1, 0).unwrap();
        if c.verdict == Verdict::OracleVerified {
            verified += 1;
            assert!(c.ratio <= eps * eps * p as f64 * (1.0 + 1e-12), "r = {} p = {p} eps = {eps}", c.ratio);
        }
    }
    assert!(verified > 0);
}

#[test]
fn explicit_pair_is_respected() {
    let g = real_matrix(2, &[25.0, 0.0, 0.0, 1.0]);
    let d = decompose(&g).unwrap();
    let canonical = WitnessPair::canonical(&d);
    let swapped = WitnessPair { hyperplane: canonical.hyperplane.clone(), point: projcert::ProjPoint::new(projcert::Vector::from_reals(&[0.0, 1.0])).unwrap() };
    let q = ContractionQuery::new(g, 0.2).unwrap().with_pair(swapped).unwrap();
    assert_eq!(oracle_check(&q, SAMPLES, 0).unwrap().verdict, Verdict::OracleRefuted);
}
