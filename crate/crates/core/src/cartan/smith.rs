//! Smith-style reduction over ℤ_p / p^N.
//!
//! For an integral matrix `h` we find `k, kp ∈ GL_n(ℤ_p)` and valuations
//! `v_1 ≤ … ≤ v_n` with `h = k · diag(p^v_1, …, p^v_n) · kp` modulo `p^N`.
//! Each step pivots on an entry of smallest valuation (lowest row, then lowest
//! column among ties), normalizes it to a pure power of `p`, and clears its row
//! and column with multipliers in ℤ_p.

use crate::error::{Error, Result};
use crate::padic::{pow, Residues};

#[derive(Debug, Clone)]
pub struct SmithForm {
    pub k: Vec<u64>,
    pub valuations: Vec<u32>,
    pub kp: Vec<u64>,
}

pub fn reduce(ring: &Residues, h: &[u64], n: usize) -> Result<SmithForm> {
    let mut h = h.to_vec();
    let mut k = identity(n);
    let mut kp = identity(n);
    let mut valuations = Vec::with_capacity(n);

    for c in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in c..n {
            for j in c..n {
                let v = ring.val(h[i * n + j]);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, pi, pj) = best.expect("nonempty block");
        if v >= ring.n {
            return Err(Error::Singular(format!(
                " to precision {}^{} (rank {c} of {n})",
                ring.p, ring.n
            )));
        }
        // h ← P h, k ← k P
        if pi != c {
            for j in 0..n {
                h.swap(pi * n + j, c * n + j);
                k.swap(j * n + pi, j * n + c);
            }
        }
        // h ← h Q, kp ← Q kp
        if pj != c {
            for i in 0..n {
                h.swap(i * n + pj, i * n + c);
                kp.swap(pj * n + i, c * n + i);
            }
        }
        // pivot = p^v · w; divide row c by w, multiply column c of k by w
        let w = ring.div_pow(h[c * n + c], v);
        let w_inv = ring.unit_inv(w);
        for j in 0..n {
            h[c * n + j] = ring.mul(h[c * n + j], w_inv);
            k[j * n + c] = ring.mul(k[j * n + c], w);
        }
        debug_assert_eq!(h[c * n + c], pow(ring.p, v) % ring.modulus);

        // clear below: row_r -= q row_c; column c of k += q column r of k
        for r in (c + 1)..n {
            let q = ring.div_pow(h[r * n + c], v);
            if q == 0 {
                continue;
            }
            for j in 0..n {
                let t = ring.mul(q, h[c * n + j]);
                h[r * n + j] = ring.sub(h[r * n + j], t);
                let t = ring.mul(q, k[j * n + r]);
                k[j * n + c] = ring.add(k[j * n + c], t);
            }
        }
        // clear right: col_j -= q col_c; row c of kp += q row j of kp
        for j in (c + 1)..n {
            let q = ring.div_pow(h[c * n + j], v);
            if q == 0 {
                continue;
            }
            for i in 0..n {
                let t = ring.mul(q, h[i * n + c]);
                h[i * n + j] = ring.sub(h[i * n + j], t);
                let t = ring.mul(q, kp[j * n + i]);
                kp[c * n + i] = ring.add(kp[c * n + i], t);
            }
        }
        valuations.push(v);
    }
    Ok(SmithForm { k, valuations, kp })
}

/// Determinant of an integral matrix modulo `p^N`, by full pivoting on the
/// smallest valuation so every multiplier stays in ℤ_p.
pub fn determinant(ring: &Residues, h: &[u64], n: usize) -> u64 {
    let mut h = h.to_vec();
    let mut det = 1 % ring.modulus;
    for c in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in c..n {
            for j in c..n {
                let v = ring.val(h[i * n + j]);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, pi, pj) = best.expect("nonempty block");
        if v >= ring.n {
            return 0;
        }
        if pi != c {
            for j in 0..n {
                h.swap(pi * n + j, c * n + j);
            }
            det = ring.sub(0, det);
        }
        if pj != c {
            for i in 0..n {
                h.swap(i * n + pj, i * n + c);
            }
            det = ring.sub(0, det);
        }
        let pivot = h[c * n + c];
        det = ring.mul(det, pivot);
        let w_inv = ring.unit_inv(ring.div_pow(pivot, v));
        for r in (c + 1)..n {
            let q = ring.mul(ring.div_pow(h[r * n + c], v), w_inv);
            if q == 0 {
                continue;
            }
            for j in c..n {
                let t = ring.mul(q, h[c * n + j]);
                h[r * n + j] = ring.sub(h[r * n + j], t);
            }
        }
    }
    det
}

fn identity(n: usize) -> Vec<u64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub fn matmul(ring: &Residues, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for l in 0..n {
            let a_il = a[i * n + l];
            if a_il == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = ring.add(out[i * n + j], ring.mul(a_il, b[l * n + j]));
            }
        }
    }
    out
}

/// `k · diag(p^v) · kp` modulo `p^N`.
pub fn recompose(ring: &Residues, f: &SmithForm, n: usize) -> Vec<u64> {
    let mut ka = f.k.clone();
    for (j, &v) in f.valuations.iter().enumerate() {
        let d = pow(ring.p, v) % ring.modulus;
        for i in 0..n {
            ka[i * n + j] = ring.mul(ka[i * n + j], d);
        }
    }
    matmul(ring, &ka, &f.kp, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Residues {
        Residues::new(5, 8).unwrap()
    }

    fn int(r: &Residues, xs: &[i64]) -> Vec<u64> {
        xs.iter().map(|&x| r.reduce_i64(x)).collect()
    }

    #[test]
    fn swap_then_pivot() {
        let r = ring();
        let h = int(&r, &[0, 1, 5, 0]);
        let f = reduce(&r, &h, 2).unwrap();
        assert_eq!(f.valuations, vec![0, 1]);
        assert_eq!(recompose(&r, &f, 2), h);
        // no row swap was needed, so k keeps e1 first
        assert_eq!(f.k[0], 1);
        assert_eq!(f.k[2], 0);
    }

    #[test]
    fn det_five() {
        let r = ring();
        let h = int(&r, &[1, 1, 1, 6]);
        let f = reduce(&r, &h, 2).unwrap();
        assert_eq!(f.valuations, vec![0, 1]);
        assert_eq!(recompose(&r, &f, 2), h);
    }

    #[test]
    fn singular_reports_precision() {
        let r = ring();
        let h = int(&r, &[1, 2, 2, 4]);
        assert!(matches!(reduce(&r, &h, 2), Err(Error::Singular(_))));
    }
}
