use num_complex::Complex64;
use projcert::projlin::{distance_to_hyperplane, proj_distance, wedge_norm};
use projcert::{arch, FieldDescriptor, Matrix, ProjHyperplane, ProjPoint, Scalar, Vector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn real_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, n).prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))
}

fn complex_vec(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect::<Vec<_>>())
        .prop_filter("nonzero", |v| v.iter().any(|z| z.norm() > 1e-3))
}

fn padic_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2000i64..2000, n).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn pt(v: Vector) -> ProjPoint {
    ProjPoint::new(v).unwrap()
}

fn q5() -> FieldDescriptor {
    FieldDescriptor::padic(5, 16).unwrap()
}

/// Independent distance: √(1 − |⟨u,v⟩|²/(‖u‖²‖v‖²)) in plain floats.
fn gram_distance(u: &[Complex64], v: &[Complex64]) -> f64 {
    let ip: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
    let nu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    (1.0 - ip.norm_sqr() / (nu * nv)).max(0.0).sqrt()
}

#[test]
fn examples() {
    let e = |v: &[f64]| pt(Vector::from_reals(v));
    assert_eq!(proj_distance(&e(&[1.0, 0.0]), &e(&[1.0, 0.0])).unwrap(), 0.0);
    assert_eq!(proj_distance(&e(&[1.0, 0.0]), &e(&[0.0, 1.0])).unwrap(), 1.0);
    let d = proj_distance(&e(&[1.0, 1.0]), &e(&[1.0, 0.0])).unwrap();
    assert!((d - 0.5f64.sqrt()).abs() < 1e-15);
    assert_eq!(Vector::from_reals(&[3.0, 4.0]).norm(), 5.0);
    assert_eq!(Vector::from_i64s(q5(), &[5, 1]).norm(), 1.0);
    let c = Vector::from_complex(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
    assert!((c.norm() - 2f64.sqrt()).abs() < 1e-15);
    let w = wedge_norm(&Vector::from_i64s(q5(), &[1, 0]), &Vector::from_i64s(q5(), &[0, 5])).unwrap();
    assert_eq!(w, 0.2);
    let h = ProjHyperplane::new(Vector::from_reals(&[1.0, 0.0])).unwrap();
    let x = pt(Vector::from_reals(&[1.0, 1.0]));
    assert!((distance_to_hyperplane(&x, &h).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn real_metric(n in 2usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || pt(Vector::from_reals(&arch::random_unit::<f64, _>(&mut rng, n)));
        let (a, b, c) = (draw(), draw(), draw());
        let ab = proj_distance(&a, &b).unwrap();
        let bc = proj_distance(&b, &c).unwrap();
        let ac = proj_distance(&a, &c).unwrap();
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ab, proj_distance(&b, &a).unwrap());
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert!(proj_distance(&a, &a).unwrap() < 1e-12);
    }

    #[test]
    fn complex_metric_matches_gram_form(u in complex_vec(3), v in complex_vec(3), w in complex_vec(3)) {
        let p = |x: &[Complex64]| pt(Vector::from_complex(x));
        let uv = proj_distance(&p(&u), &p(&v)).unwrap();
        prop_assert!((uv - gram_distance(&u, &v)).abs() < 1e-6);
        let uw = proj_distance(&p(&u), &p(&w)).unwrap();
        let vw = proj_distance(&p(&v), &p(&w)).unwrap();
        prop_assert!(uw <= uv + vw + 1e-12);
        prop_assert!(uv <= 1.0 + 1e-15);
    }

    #[test]
    fn scale_invariance(u in real_vec(4), v in real_vec(4), s in 0.01f64..100.0) {
        let scaled: Vec<f64> = v.iter().map(|x| -s * x).collect();
        let d1 = proj_distance(&pt(Vector::from_reals(&u)), &pt(Vector::from_reals(&v))).unwrap();
        let d2 = proj_distance(&pt(Vector::from_reals(&u)), &pt(Vector::from_reals(&scaled))).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-12);
        let h1 = ProjHyperplane::new(Vector::from_reals(&v)).unwrap();
        let h2 = ProjHyperplane::new(Vector::from_reals(&scaled)).unwrap();
        let x = pt(Vector::from_reals(&u));
        prop_assert!((distance_to_hyperplane(&x, &h1).unwrap() - distance_to_hyperplane(&x, &h2).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn padic_ultrametric(a in padic_vec(3), b in padic_vec(3), c in padic_vec(3)) {
        let p = |x: &[i64]| pt(Vector::from_i64s(q5(), x));
        let ab = proj_distance(&p(&a), &p(&b)).unwrap();
        let bc = proj_distance(&p(&b), &p(&c)).unwrap();
        let ac = proj_distance(&p(&a), &p(&c)).unwrap();
        prop_assert!(ac <= ab.max(bc));
        prop_assert!(ab <= 1.0);
        // values are 0 or powers of 1/5
        if ab > 0.0 {
            let k = -ab.log(5.0);
            prop_assert!((k - k.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn real_isometry_invariance(n in 2usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = arch::random_isometry::<f64, _>(&mut rng, n);
        let rows: Vec<Vec<f64>> = k.chunks(n).map(<[f64]>::to_vec).collect();
        let k = Matrix::from_real_rows(&rows).unwrap();
        let a = Vector::from_reals(&arch::random_unit::<f64, _>(&mut rng, n));
        let b = Vector::from_reals(&arch::random_unit::<f64, _>(&mut rng, n));
        let before = proj_distance(&pt(a.clone()), &pt(b.clone())).unwrap();
        let after = proj_distance(&pt(k.apply(&a).unwrap()), &pt(k.apply(&b).unwrap())).unwrap();
        prop_assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn complex_isometry_invariance(seed in any::<u64>()) {
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = arch::random_isometry::<Complex64, _>(&mut rng, n);
        let rows: Vec<Vec<Scalar>> = k.chunks(n).map(|r| r.iter().map(|&z| Scalar::Complex(z)).collect()).collect();
        let k = Matrix::from_rows(FieldDescriptor::COMPLEX, rows).unwrap();
        let a = Vector::from_complex(&arch::random_unit::<Complex64, _>(&mut rng, n));
        let b = Vector::from_complex(&arch::random_unit::<Complex64, _>(&mut rng, n));
        let before = proj_distance(&pt(a.clone()), &pt(b.clone())).unwrap();
        let after = proj_distance(&pt(k.apply(&a).unwrap()), &pt(k.apply(&b).unwrap())).unwrap();
        prop_assert!((before - after).abs() < 1e-10);
    }

    /// `GL_n(ℤ_5)`: integer matrices whose determinant is a 5-adic unit.
    #[test]
    fn padic_isometry_invariance(
        entries in prop::collection::vec(-50i64..50, 9),
        a in padic_vec(3), b in padic_vec(3),
    ) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
        let k = Matrix::from_i64_rows(q5(), &rows).unwrap();
        prop_assume!(k.determinant().unwrap().abs_value() == 1.0);
        let (a, b) = (Vector::from_i64s(q5(), &a), Vector::from_i64s(q5(), &b));
        let before = proj_distance(&pt(a.clone()), &pt(b.clone())).unwrap();
        let after = proj_distance(&pt(k.apply(&a).unwrap()), &pt(k.apply(&b).unwrap())).unwrap();
        prop_assert_eq!(before, after);
    }

    /// The pairing formula is the minimum of `d(x, h)` over `h ∈ H`, sampled
    /// on a great circle of `H` (a projective line in `ℙ²`).
    #[test]
    fn hyperplane_distance_is_a_minimum(x in real_vec(3), normal in real_vec(3)) {
        let h = ProjHyperplane::new(Vector::from_reals(&normal)).unwrap();
        let xp = pt(Vector::from_reals(&x));
        let d = distance_to_hyperplane(&xp, &h).unwrap();

        let nn = normal.iter().map(|a| a * a).sum::<f64>().sqrt();
        let n: Vec<f64> = normal.iter().map(|a| a / nn).collect();
        // orthonormal basis (e1, e2) of the plane n^⊥
        let pick = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let mut e1: Vec<f64> = pick.iter().zip(&n).map(|(p, m)| p - dot(&pick, &n) * m).collect();
        let l = dot(&e1, &e1).sqrt();
        e1.iter_mut().for_each(|v| *v /= l);
        let e2 = [n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]];
        let steps = 20_000;
        let sampled = (0..steps)
            .map(|i| {
                let t = std::f64::consts::PI * i as f64 / steps as f64;
                let hv: Vec<f64> = (0..3).map(|j| t.cos() * e1[j] + t.sin() * e2[j]).collect();
                proj_distance(&xp, &pt(Vector::from_reals(&hv))).unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        prop_assert!(d <= sampled + 1e-12);
        prop_assert!(sampled - d < 1e-3, "pairing {} vs sampled min {}", d, sampled);
    }
}

fn det3(m: &[i64]) -> i128 {
    let m: Vec<i128> = m.iter().map(|&x| x as i128).collect();
    m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// Cofactor expansion in integers is the oracle.
    #[test]
    fn padic_determinant_matches_integer_cofactors(entries in prop::collection::vec(-30i64..30, 9)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
        let d = Matrix::from_i64_rows(q5(), &rows).unwrap().determinant().unwrap();
        let exact = det3(&entries);
        let expected = q5().from_i64(exact as i64);
        prop_assert_eq!(d, expected);
        prop_assert_eq!(d.abs_value(), expected.abs_value());
    }
}

#[test]
fn singular_integer_matrix_has_zero_padic_determinant() {
    let m = Matrix::from_i64_rows(q5(), &[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
    assert!(m.determinant().unwrap().is_zero());
    assert!(!m.is_invertible().unwrap());
    let m = Matrix::from_i64_rows(q5(), &[vec![2, 1], vec![1, 3]]).unwrap();
    assert_eq!(m.determinant().unwrap().abs_value(), 0.2);
}
