//! Dense kernels over ℝ and ℂ working on plain `f64` / `Complex64` slices.
//! The public `Vector`/`Matrix` types convert into these for the numeric hot
//! paths (SVD, oracle sampling).

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub trait ArchScalar:
    Copy
    + Send
    + Sync
    + std::fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const IS_COMPLEX: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn abs2(self) -> f64;
    fn abs(self) -> f64 {
        self.abs2().sqrt()
    }
    fn conj(self) -> Self;
    fn scale(self, x: f64) -> Self;
    /// `self / |self|`, or 1 for zero.
    fn phase(self) -> Self;
    fn to_complex(self) -> Complex64;
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl ArchScalar for f64 {
    const IS_COMPLEX: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn conj(self) -> Self {
        self
    }
    fn scale(self, x: f64) -> Self {
        self * x
    }
    fn phase(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl ArchScalar for Complex64 {
    const IS_COMPLEX: bool = true;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn scale(self, x: f64) -> Self {
        self * x
    }
    fn phase(self) -> Self {
        let r = self.norm();
        if r == 0.0 {
            Self::one()
        } else {
            self / r
        }
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        // unit variance overall, split evenly between the two components
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

pub fn norm<T: ArchScalar>(x: &[T]) -> f64 {
    x.iter().map(|v| v.abs2()).sum::<f64>().sqrt()
}

/// Hermitian inner product `Σ conj(a_i) b_i`.
pub fn inner<T: ArchScalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

/// Bilinear pairing `Σ a_i b_i` (a linear form applied to a vector).
pub fn pair<T: ArchScalar>(form: &[T], x: &[T]) -> T {
    form.iter()
        .zip(x)
        .fold(T::zero(), |acc, (f, v)| acc + *f * *v)
}

/// Euclidean norm of the vector of 2×2 minors `a_i b_j − a_j b_i`.
pub fn wedge_norm<T: ArchScalar>(a: &[T], b: &[T]) -> f64 {
    let n = a.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc += (a[i] * b[j] - a[j] * b[i]).abs2();
        }
    }
    acc.sqrt()
}

pub fn proj_distance<T: ArchScalar>(a: &[T], b: &[T]) -> f64 {
    let d = wedge_norm(a, b) / (norm(a) * norm(b));
    d.min(1.0)
}

/// Row-major square matrix times vector, written into `out`.
pub fn matvec_into<T: ArchScalar>(m: &[T], n: usize, x: &[T], out: &mut [T]) {
    for (i, o) in out.iter_mut().enumerate() {
        let row = &m[i * n..(i + 1) * n];
        *o = row
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (a, b)| acc + *a * *b);
    }
}

pub fn matmul<T: ArchScalar>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub fn adjoint<T: ArchScalar>(a: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j].conj();
        }
    }
    out
}

pub fn frobenius<T: ArchScalar>(a: &[T]) -> f64 {
    norm(a)
}

/// Uniform point on the unit sphere of `T^n`.
pub fn random_unit<T: ArchScalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<T> {
    loop {
        let v: Vec<T> = (0..n).map(|_| T::gaussian(rng)).collect();
        let r = norm(&v);
        if r > 1e-300 {
            return v.into_iter().map(|x| x.scale(1.0 / r)).collect();
        }
    }
}

/// Haar-random orthogonal / unitary matrix via Gram–Schmidt on Gaussian
/// columns with the usual phase correction. Row-major.
pub fn random_isometry<T: ArchScalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<T> {
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<T> = (0..n).map(|_| T::gaussian(rng)).collect();
        // twice is enough for orthogonality at double precision
        for _ in 0..2 {
            for c in &cols {
                let proj = inner(c, &v);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi = *vi - *ci * proj;
                }
            }
        }
        let r = norm(&v);
        if r < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|x| x.scale(1.0 / r)).collect());
    }
    let mut m = vec![T::zero(); n * n];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            m[i * n + j] = c[i];
        }
    }
    m
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant<T: ArchScalar>(a: &[T], n: usize) -> T {
    let mut m = a.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| m[i * n + c].abs2().total_cmp(&m[j * n + c].abs2()))
            .expect("nonempty range");
        if m[piv * n + c].abs2() == 0.0 {
            return T::zero();
        }
        if piv != c {
            for j in 0..n {
                m.swap(piv * n + j, c * n + j);
            }
            det = -det;
        }
        let p = m[c * n + c];
        det = det * p;
        for r in (c + 1)..n {
            let f = m[r * n + c] / p;
            for j in c..n {
                let v = m[c * n + j];
                m[r * n + j] = m[r * n + j] - f * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge_norm(&[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert_eq!(wedge_norm(&[1.0, 1.0], &[1.0, 0.0]), 1.0);
        let d = proj_distance(&[1.0, 1.0], &[1.0, 0.0]);
        assert!((d - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn random_isometries_are_isometries() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..6 {
            let q: Vec<Complex64> = random_isometry(&mut rng, n);
            let qq = matmul(&adjoint(&q, n), &q, n);
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((qq[i * n + j] - Complex64::new(expect, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn determinant_of_upper_triangular() {
        let m = [2.0, 5.0, 0.0, 3.0];
        assert!((determinant(&m, 2) - 6.0).abs() < 1e-15);
        let swap = [0.0, 1.0, 1.0, 0.0];
        assert_eq!(determinant(&swap, 2), -1.0);
    }
}
