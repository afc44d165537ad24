//! One-sided (Hestenes) Jacobi SVD for small dense real or complex matrices.
//!
//! Column pairs are rotated until mutually orthogonal; the column norms are
//! then the singular values. Slower than bidiagonalization but accurate to
//! high relative precision, which is what the contraction certificates
//! consume.

use crate::arch::ArchScalar;

const MAX_SWEEPS: usize = 100;

/// `a = u · diag(sigma) · vᴴ` with `sigma` sorted non-increasing. `u`, `v`
/// row-major.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub u: Vec<T>,
    pub sigma: Vec<f64>,
    pub v: Vec<T>,
}

pub fn svd<T: ArchScalar>(a: &[T], n: usize) -> Svd<T> {
    assert_eq!(a.len(), n * n);
    // column-major working copies
    let mut cols: Vec<Vec<T>> = (0..n).map(|j| (0..n).map(|i| a[i * n + j]).collect()).collect();
    let mut vcols: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let tol = f64::EPSILON * n as f64;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let (alpha, beta, gamma) = {
                    let (ci, cj) = (&cols[i], &cols[j]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = T::zero();
                    for k in 0..n {
                        alpha += ci[k].abs2();
                        beta += cj[k].abs2();
                        gamma += ci[k].conj() * cj[k];
                    }
                    (alpha, beta, gamma)
                };
                let g = gamma.abs();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rotate (col_i, conj(phase)·col_j), which has a real positive
                // inner product, by the classical real Jacobi angle
                let ph = gamma.phase().conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, i, j, c, s, ph);
                rotate(&mut vcols, i, j, c, s, ph);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|x| x.abs2()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep their index order
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let mut u = vec![T::zero(); n * n];
    let mut v = vec![T::zero(); n * n];
    let mut sigma = Vec::with_capacity(n);
    for (new_j, &old_j) in order.iter().enumerate() {
        let s = norms[old_j];
        sigma.push(s);
        for i in 0..n {
            u[i * n + new_j] = if s > 0.0 {
                cols[old_j][i].scale(1.0 / s)
            } else if i == new_j {
                T::one()
            } else {
                T::zero()
            };
            v[i * n + new_j] = vcols[old_j][i];
        }
    }
    Svd { u, sigma, v }
}

fn rotate<T: ArchScalar>(cols: &mut [Vec<T>], i: usize, j: usize, c: f64, s: f64, ph: T) {
    let (left, right) = cols.split_at_mut(j);
    let (ci, cj) = (&mut left[i], &mut right[0]);
    for k in 0..ci.len() {
        let x = ci[k];
        let y = cj[k] * ph;
        ci[k] = x.scale(c) - y.scale(s);
        cj[k] = x.scale(s) + y.scale(c);
    }
}
