//! Floating-point cross-check of density: enumerate every word of ℓ¹ length
//! at most `L` in the generators and count the mesh cells of `[0,1)^d` hit.

use num::{BigInt, Integer, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::GeneratorSet;
use crate::error::{Error, Result};

pub const MAX_PROBE_DIM: usize = 3;
pub const MAX_CELLS: usize = 10_000_000;
pub const MAX_WORDS: f64 = 2e9;

#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub coverage: f64,
    pub cells_hit: u64,
    pub cells_total: u64,
    pub cells_per_axis: usize,
    pub words: u64,
}

/// Per-coordinate data of one generator: exact rational part `num/den` and a
/// floating irrational part.
#[derive(Clone)]
struct Coord {
    num: i128,
    irr: f64,
}

/// Words `n ∈ ℤ^k` with `Σ|n_j| ≤ len`.
fn word_count(k: usize, len: u64) -> f64 {
    // Σ_i 2^i C(k, i) C(len, i)
    let mut total = 0.0;
    let mut ck = 1.0;
    let mut cl = 1.0;
    for i in 0..=k {
        if i > 0 {
            ck *= (k - i + 1) as f64 / i as f64;
            cl *= (len as f64 - i as f64 + 1.0).max(0.0) / i as f64;
        }
        total += 2f64.powi(i as i32) * ck * cl;
    }
    total
}

pub fn numeric_density_probe(set: &GeneratorSet, word_length: u64, mesh: f64) -> Result<ProbeResult> {
    let d = set.dim();
    if d == 0 || d > MAX_PROBE_DIM {
        return Err(Error::InvalidArgument(format!(
            "probe supports dimensions 1..={MAX_PROBE_DIM}, got {d}"
        )));
    }
    if !(mesh > 0.0 && mesh < 1.0) {
        return Err(Error::InvalidArgument(format!("mesh {mesh} outside (0, 1)")));
    }
    let m = (1.0 / mesh - 1e-9).ceil() as usize;
    let total = m
        .checked_pow(d as u32)
        .filter(|&t| t <= MAX_CELLS)
        .ok_or_else(|| Error::InvalidArgument(format!("{m}^{d} cells exceeds {MAX_CELLS}")))?;
    let k = set.generators().len();
    let words = word_count(k, word_length);
    if words > MAX_WORDS {
        return Err(Error::InvalidArgument(format!(
            "{words:.3e} words exceeds {MAX_WORDS:.0e}; lower word_length or reduce generators first"
        )));
    }
    if k == 0 {
        return Ok(ProbeResult {
            coverage: 1.0 / total as f64,
            cells_hit: 1,
            cells_total: total as u64,
            cells_per_axis: m,
            words: 1,
        });
    }

    let basis = set.basis();
    let dens: Vec<i128> = (0..d)
        .map(|i| {
            set.generators()
                .iter()
                .fold(BigInt::from(1), |acc, g| {
                    acc.lcm(g.coordinates()[i].rational_part().denom())
                })
                .to_i128()
                .filter(|&x| x < (1 << 60))
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidArgument("rational denominators too large to probe".into()))?;
    let exact_axis: Vec<bool> = (0..d)
        .map(|i| set.generators().iter().all(|g| g.coordinates()[i].is_rational()))
        .collect();
    let gens: Vec<Vec<Coord>> = set
        .generators()
        .iter()
        .map(|g| {
            g.coordinates()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let q = c.rational_part();
                    let num = (q.numer() * (BigInt::from(dens[i]) / q.denom()))
                        .to_i128()
                        .unwrap_or(0);
                    let irr: f64 = c.coefficients()[1..]
                        .iter()
                        .zip(&basis.values()[1..])
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, v)| c.to_f64().unwrap_or(f64::NAN) * v)
                        .sum();
                    Coord { num, irr }
                })
                .collect()
        })
        .collect();

    let ctx = Ctx {
        d,
        m,
        dens: &dens,
        exact_axis: &exact_axis,
        gens: &gens,
    };
    let len = word_length as i64;
    let hits = (-len..=len)
        .into_par_iter()
        .map(|n0| {
            let mut hit = vec![false; total];
            let mut num = vec![0i128; d];
            let mut irr = vec![0.0f64; d];
            for i in 0..d {
                num[i] = n0 as i128 * gens[0][i].num;
                irr[i] = n0 as f64 * gens[0][i].irr;
            }
            ctx.walk(1, len - n0.abs(), &mut num, &mut irr, &mut hit);
            hit
        })
        .reduce(
            || vec![false; total],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x |= y;
                }
                a
            },
        );
    let cells_hit = hits.iter().filter(|&&h| h).count() as u64;
    Ok(ProbeResult {
        coverage: cells_hit as f64 / total as f64,
        cells_hit,
        cells_total: total as u64,
        cells_per_axis: m,
        words: words.round() as u64,
    })
}

struct Ctx<'a> {
    d: usize,
    m: usize,
    dens: &'a [i128],
    exact_axis: &'a [bool],
    gens: &'a [Vec<Coord>],
}

impl Ctx<'_> {
    fn walk(&self, j: usize, budget: i64, num: &mut [i128], irr: &mut [f64], hit: &mut [bool]) {
        if j == self.gens.len() {
            hit[self.cell(num, irr)] = true;
            return;
        }
        let g = &self.gens[j];
        let saved_num = num.to_vec();
        let saved_irr = irr.to_vec();
        for n in -budget..=budget {
            for i in 0..self.d {
                num[i] = saved_num[i] + n as i128 * g[i].num;
                irr[i] = saved_irr[i] + n as f64 * g[i].irr;
            }
            self.walk(j + 1, budget - n.abs(), num, irr, hit);
        }
        num.copy_from_slice(&saved_num);
        irr.copy_from_slice(&saved_irr);
    }

    fn cell(&self, num: &[i128], irr: &[f64]) -> usize {
        let m = self.m;
        let mut index = 0;
        for i in 0..self.d {
            let den = self.dens[i];
            let r = num[i].rem_euclid(den);
            let c = if self.exact_axis[i] {
                (r * m as i128 / den) as usize
            } else {
                let x = r as f64 / den as f64 + irr[i];
                let x = x - x.floor();
                ((x * m as f64) as usize).min(m - 1)
            };
            index = index * m + c;
        }
        index
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Basis;

    fn set(basis: &str, dim: usize, gens: &[&[&str]]) -> GeneratorSet {
        GeneratorSet::from_expressions(Basis::parse(basis).unwrap(), dim, gens).unwrap()
    }

    /// Direct enumeration of `n·(√2, √3)` for `|n| ≤ len` on a 10×10 grid.
    fn kronecker_cells(len: i64) -> usize {
        let (a, b) = (2f64.sqrt(), 3f64.sqrt());
        let mut cells = std::collections::BTreeSet::new();
        for n in -len..=len {
            let (x, y) = ((n as f64 * a).rem_euclid(1.0), (n as f64 * b).rem_euclid(1.0));
            cells.insert(((x * 10.0) as usize, (y * 10.0) as usize));
        }
        cells.len()
    }

    #[test]
    fn dense_pair_covers() {
        let s = set("sqrt2,sqrt3", 2, &[&["sqrt2", "sqrt3"]]);
        for len in [100, 200, 300, 500] {
            let r = numeric_density_probe(&s, len, 0.1).unwrap();
            assert_eq!(r.cells_hit as usize, kronecker_cells(len as i64), "len {len}");
            assert_eq!(r.words, 2 * len + 1);
        }
        assert_eq!(numeric_density_probe(&s, 200, 0.1).unwrap().coverage, 0.95);
        assert_eq!(numeric_density_probe(&s, 500, 0.1).unwrap().coverage, 1.0);
    }

    #[test]
    fn diagonal_covers_little() {
        let r = numeric_density_probe(&set("sqrt2", 2, &[&["sqrt2", "sqrt2"]]), 200, 0.1).unwrap();
        assert!(r.coverage < 0.5, "{r:?}");
    }

    #[test]
    fn third_hits_three_cells() {
        let r = numeric_density_probe(&set("1", 1, &[&["1/3"]]), 50, 0.1).unwrap();
        assert_eq!(r.cells_hit, 3);
        assert!((r.coverage - 0.3).abs() < 1e-15);
    }

    #[test]
    fn word_counts() {
        assert_eq!(word_count(1, 5), 11.0);
        // |a| + |b| ≤ 2 in ℤ²: 13 points
        assert_eq!(word_count(2, 2), 13.0);
    }

    #[test]
    fn guards() {
        let s = set("sqrt2", 1, &[&["sqrt2"]]);
        assert!(numeric_density_probe(&s, 10, 0.0).is_err());
        assert!(numeric_density_probe(&s, 10, 1e-8).is_err());
        let s4 = set("sqrt2", 4, &[&["sqrt2", "0", "0", "0"]]);
        assert!(numeric_density_probe(&s4, 10, 0.1).is_err());
    }
}
