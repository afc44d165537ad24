mod common;

use common::*;
use num::Zero;
use num_complex::Complex64;
use projcert::cartan::decompose;
use projcert::{arch, FieldDescriptor, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TRIALS: usize = 1000;

fn check_archimedean(g: &Matrix) {
    let d = decompose(g).unwrap();
    let n = g.n();
    let rebuilt = d.k.mul(&d.a).unwrap().mul(&d.kp).unwrap();
    let rel = frobenius_diff(&rebuilt, g) / g.norm();
    assert!(rel <= 1e-10, "reconstruction error {rel:e}");
    for k in [&d.k, &d.kp] {
        let gram = k.adjoint().mul(k).unwrap();
        let err = frobenius_diff(&gram, &Matrix::identity(g.field(), n));
        assert!(err <= 1e-10, "isometry error {err:e}");
    }
    assert!(d.profile.windows(2).all(|w| w[0] >= w[1]));
    let det = g.determinant().unwrap().abs_value();
    let prod: f64 = d.profile.iter().product();
    assert!((prod - det).abs() <= 1e-8 * det.max(1.0), "{prod} vs {det}");
}

#[test]
fn real_reconstruction_and_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..TRIALS {
        let n = 2 + t % 5;
        check_archimedean(&real_matrix(n, &gaussian_real(&mut rng, n)));
    }
}

#[test]
fn complex_reconstruction_and_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for t in 0..TRIALS {
        let n = 2 + t % 4;
        check_archimedean(&complex_matrix(n, &gaussian_complex(&mut rng, n)));
    }
}

#[test]
fn padic_reconstruction_is_exact_mod_p_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for t in 0..TRIALS {
        let p = [2, 3, 5, 7][t % 4];
        let n = 2 + t % 3;
        let field = FieldDescriptor::padic(p, 16).unwrap();
        let gq = random_padic_rat(&mut rng, n, p);
        if rat_det(&gq).is_zero() {
            continue;
        }
        let g = padic_matrix(field, &gq);
        let d = decompose(&g).unwrap();
        let rebuilt = rat_matmul(&rat_matmul(&to_rat(&d.k), &to_rat(&d.a)), &to_rat(&d.kp));
        let shift = gq.iter().flatten().filter_map(|q| valuation(q, p)).min().unwrap();
        for (r, e) in rebuilt.iter().flatten().zip(gq.iter().flatten()) {
            if let Some(v) = valuation(&(r - e), p) {
                assert!(v >= shift + 16, "p = {p}: residual valuation {v} < {}", shift + 16);
            }
        }
        // k, kp integral with unit determinant, so k⁻¹ is integral too
        for k in [&d.k, &d.kp] {
            let kq = to_rat(k);
            assert!(kq.iter().flatten().all(|q| valuation(q, p).is_none_or(|v| v >= 0)));
            let det = rat_det(&kq);
            assert!(valuation(&det, p) == Some(0), "det of k is not a unit");
        }
        let vals = d.valuations.as_ref().unwrap();
        assert_eq!(vals.iter().sum::<i64>(), valuation(&rat_det(&gq), p).unwrap());
        checked += 1;
    }
    assert!(checked > 900);
}

#[test]
fn archimedean_profile_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for t in 0..100 {
        let n = 2 + t % 4;
        let g = real_matrix(n, &gaussian_real(&mut rng, n));
        let u = real_matrix(n, &arch::random_isometry::<f64, _>(&mut rng, n));
        let w = real_matrix(n, &arch::random_isometry::<f64, _>(&mut rng, n));
        let a = decompose(&g).unwrap().profile;
        let b = decompose(&u.mul(&g).unwrap().mul(&w).unwrap()).unwrap().profile;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-8 * a[0], "{a:?} vs {b:?}");
        }

        let g = complex_matrix(n, &gaussian_complex(&mut rng, n));
        let u = complex_matrix(n, &arch::random_isometry::<Complex64, _>(&mut rng, n));
        let w = complex_matrix(n, &arch::random_isometry::<Complex64, _>(&mut rng, n));
        let a = decompose(&g).unwrap().profile;
        let b = decompose(&u.mul(&g).unwrap().mul(&w).unwrap()).unwrap().profile;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-8 * a[0], "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn padic_profile_invariance_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for t in 0..100 {
        let p = [3, 5, 7][t % 3];
        let n = 2 + t % 3;
        let field = FieldDescriptor::padic(p, 16).unwrap();
        let gq = random_padic_rat(&mut rng, n, p);
        if rat_det(&gq).is_zero() {
            continue;
        }
        let u = random_padic_isometry(&mut rng, n, p);
        let w = random_padic_isometry(&mut rng, n, p);
        let moved = rat_matmul(&rat_matmul(&u, &gq), &w);
        let a = decompose(&padic_matrix(field, &gq)).unwrap();
        let b = decompose(&padic_matrix(field, &moved)).unwrap();
        assert_eq!(a.valuations, b.valuations);
        assert_eq!(a.profile, b.profile);
    }
}

#[test]
fn singular_matrices_are_rejected() {
    let g = real_matrix(2, &[1.0, 2.0, 2.0, 4.0]);
    assert!(decompose(&g).is_err());
    let q5 = FieldDescriptor::padic(5, 16).unwrap();
    let g = Matrix::from_i64_rows(q5, &[vec![1, 2], vec![2, 4]]).unwrap();
    assert!(decompose(&g).is_err());
}
