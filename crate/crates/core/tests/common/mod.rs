#![allow(dead_code)]

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use num_complex::Complex64;
use projcert::{arch, FieldDescriptor, Matrix, Scalar};
use rand::Rng;

pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn rat_matmul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination over ℚ.
pub fn rat_det(m: &RatMatrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in (c + 1)..n {
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

pub fn valuation_int(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

/// `v_p(q)`, `None` for zero.
pub fn valuation(q: &BigRational, p: u64) -> Option<i64> {
    (!q.is_zero()).then(|| valuation_int(q.numer(), p) - valuation_int(q.denom(), p))
}

pub fn padic_matrix(field: FieldDescriptor, m: &RatMatrix) -> Matrix {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|q| field.from_ratio(q.numer(), q.denom()).unwrap()).collect())
        .collect();
    Matrix::from_rows(field, rows).unwrap()
}

/// Exact rational value of each p-adic entry's stored representative.
pub fn to_rat(m: &Matrix) -> RatMatrix {
    m.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| {
                    let (a, b) = s.as_padic().expect("p-adic entry").to_ratio();
                    BigRational::new(a, b)
                })
                .collect()
        })
        .collect()
}

/// Random `n × n` rational matrix with entries `a · p^k`, `|a| < 1000`,
/// `k ∈ [-2, 2]`.
pub fn random_padic_rat<R: Rng>(rng: &mut R, n: usize, p: u64) -> RatMatrix {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let a = rat(rng.random_range(-999..=999));
                    let k: i32 = rng.random_range(-2..=2);
                    let pk = num::pow(BigRational::from_integer(BigInt::from(p)), k.unsigned_abs() as usize);
                    if k >= 0 {
                        a * pk
                    } else {
                        a / pk
                    }
                })
                .collect()
        })
        .collect()
}

/// Random element of `GL_n(ℤ_p)` as an integer matrix.
pub fn random_padic_isometry<R: Rng>(rng: &mut R, n: usize, p: u64) -> RatMatrix {
    loop {
        let m: RatMatrix = (0..n)
            .map(|_| (0..n).map(|_| rat(rng.random_range(-99..=99))).collect())
            .collect();
        if valuation(&rat_det(&m), p) == Some(0) {
            return m;
        }
    }
}

pub fn real_matrix(n: usize, data: &[f64]) -> Matrix {
    let rows: Vec<Vec<f64>> = data.chunks(n).map(<[f64]>::to_vec).collect();
    Matrix::from_real_rows(&rows).unwrap()
}

pub fn complex_matrix(n: usize, data: &[Complex64]) -> Matrix {
    let rows = data
        .chunks(n)
        .map(|r| r.iter().map(|&z| Scalar::Complex(z)).collect())
        .collect();
    Matrix::from_rows(FieldDescriptor::COMPLEX, rows).unwrap()
}

pub fn gaussian_real<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n * n).map(|_| <f64 as arch::ArchScalar>::gaussian(rng)).collect()
}

pub fn gaussian_complex<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n * n).map(|_| <Complex64 as arch::ArchScalar>::gaussian(rng)).collect()
}

/// Frobenius norm of `a − b` for archimedean matrices.
pub fn frobenius_diff(a: &Matrix, b: &Matrix) -> f64 {
    let (a, b) = (a.to_complex().unwrap(), b.to_complex().unwrap());
    a.iter().zip(&b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// `u · diag(sigma) · w` with Haar-random orthogonal `u`, `w`.
pub fn real_with_profile<R: Rng>(rng: &mut R, sigma: &[f64]) -> Matrix {
    let n = sigma.len();
    let u = arch::random_isometry::<f64, _>(rng, n);
    let w = arch::random_isometry::<f64, _>(rng, n);
    let mut d = vec![0.0; n * n];
    for (i, s) in sigma.iter().enumerate() {
        d[i * n + i] = *s;
    }
    real_matrix(n, &arch::matmul(&arch::matmul(&u, &d, n), &w, n))
}

/// Singular values `1 ≥ r ≥ σ_3 ≥ … > 0` with the given ratio.
pub fn profile_with_ratio<R: Rng>(rng: &mut R, n: usize, r: f64) -> Vec<f64> {
    let mut s = vec![1.0, r];
    for _ in 2..n {
        let last = *s.last().unwrap();
        s.push(last * rng.random_range(0.05..1.0));
    }
    s
}
