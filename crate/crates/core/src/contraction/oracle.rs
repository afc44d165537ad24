//! Direct checks of the ε-contraction definition against a given pair.
//!
//! Over ℝ and ℂ we sample: even-indexed samples are uniform on the unit
//! sphere, odd-indexed ones lie on the boundary `d(x, H) = ε` of the region,
//! where the image distance is largest for the canonical pair. Samples are
//! split into fixed chunks, each driven by its own ChaCha stream, and merged
//! by max with lowest-index tie-breaking, so results depend only on the seed.
//!
//! Over ℚ_p we refine balls `x₀ + p^k ℤ_p^n` of primitive vectors until both
//! `|⟨u, x⟩|` and `d(g·x, v)` are constant on the ball (or bounded below ε),
//! which makes the check exhaustive up to the working precision.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    check_epsilon, BoundUsed, ContractionCertificate, ContractionQuery, Thresholds, Verdict,
    WitnessPair, ORACLE_TOLERANCE,
};
use crate::arch::{self, ArchScalar};
use crate::cartan;
use crate::error::{Error, Result};
use crate::padic::{PadicNumber, Residues};
use crate::projlin::{Matrix, ProjPoint, Vector};
use crate::scalar::{FieldKind, Scalar};

const CHUNK: u64 = 2048;
/// Ball budget for the p-adic search.
const MAX_BALLS: u64 = 20_000_000;

pub fn oracle_check(
    q: &ContractionQuery,
    samples: usize,
    seed: u64,
) -> Result<ContractionCertificate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let g = q.g();
    let d = cartan::decompose(g)?;
    let ratio = d.ratio()?.value();
    let pair = q.pair().cloned().unwrap_or_else(|| WitnessPair::canonical(&d));
    let eps = q.epsilon();
    let field = g.field();

    let (verdict, bound_used, worst_point, worst, checked) = match field.kind() {
        FieldKind::Padic => {
            let out = padic_ball_search(g, &pair, eps)?;
            let verdict = if out.violated {
                Verdict::OracleRefuted
            } else if out.unresolved > 0 {
                Verdict::Inconclusive
            } else {
                Verdict::OracleVerified
            };
            let worst_point = match out.worst {
                Some(x) => Some(ProjPoint::new(padic_vector(g, &x))?),
                None => None,
            };
            (
                verdict,
                BoundUsed::ExhaustiveBallOracle,
                worst_point,
                Some(out.max_distance),
                out.balls,
            )
        }
        _ => {
            let ext = arch_extreme(g, &pair, eps, samples as u64, seed)?;
            let verdict = if ext.value <= eps + ORACLE_TOLERANCE {
                Verdict::OracleVerified
            } else {
                Verdict::OracleRefuted
            };
            let worst_point = ext.point.map(ProjPoint::new).transpose()?;
            (
                verdict,
                BoundUsed::SampledOracle,
                worst_point,
                Some(ext.value),
                ext.in_region,
            )
        }
    };

    Ok(ContractionCertificate {
        verdict,
        field,
        epsilon: eps,
        ratio,
        thresholds: Thresholds::for_field(field, eps),
        witness: pair,
        bound_used,
        worst_point,
        worst_image_distance: worst,
        samples_checked: Some(checked),
    })
}

/// Largest sampled `d(g·x, v)` over `x` with `d(x, H) ≥ epsilon`, for any
/// `epsilon ∈ (0, 1]` (archimedean fields). Returns 0 when no sample lands in
/// the region.
pub fn image_sup(
    g: &Matrix,
    pair: &WitnessPair,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon {epsilon} outside (0, 1]"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    Ok(arch_extreme(g, pair, epsilon, samples as u64, seed)?.value)
}

struct ArchExtreme {
    value: f64,
    point: Option<Vector>,
    in_region: u64,
}

fn arch_extreme(
    g: &Matrix,
    pair: &WitnessPair,
    eps: f64,
    samples: u64,
    seed: u64,
) -> Result<ArchExtreme> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "projective space of dimension 0 has nothing to contract".into(),
        ));
    }
    let form = pair.hyperplane.normal();
    let attractor = pair.point.representative();
    match g.field().kind() {
        FieldKind::Real => {
            let prob = ArchProblem::new(
                n,
                g.to_reals().expect("real"),
                form.to_reals().expect("real"),
                attractor.to_reals().expect("real"),
            );
            let e = prob.extreme(eps, samples, seed);
            Ok(ArchExtreme {
                value: e.value,
                point: e.point.map(|x| Vector::from_reals(&x)),
                in_region: e.in_region,
            })
        }
        FieldKind::Complex => {
            let prob = ArchProblem::new(
                n,
                g.to_complex().expect("complex"),
                form.to_complex().expect("complex"),
                attractor.to_complex().expect("complex"),
            );
            let e = prob.extreme(eps, samples, seed);
            Ok(ArchExtreme {
                value: e.value,
                point: e.point.map(|x: Vec<Complex64>| Vector::from_complex(&x)),
                in_region: e.in_region,
            })
        }
        FieldKind::Padic => unreachable!("archimedean only"),
    }
}

pub(crate) struct ArchProblem<T> {
    n: usize,
    g: Vec<T>,
    /// Unit linear form cutting out `H`.
    form: Vec<T>,
    /// Hermitian unit normal of `H`, `conj(form)`.
    normal: Vec<T>,
    /// Unit representative of `v`.
    attractor: Vec<T>,
}

#[derive(Debug, Clone)]
pub(crate) struct Extreme<T> {
    pub value: f64,
    pub index: u64,
    pub point: Option<Vec<T>>,
    pub in_region: u64,
}

impl<T> Extreme<T> {
    fn empty() -> Self {
        Extreme {
            value: 0.0,
            index: u64::MAX,
            point: None,
            in_region: 0,
        }
    }

    fn merge(a: Self, b: Self) -> Self {
        let in_region = a.in_region + b.in_region;
        let keep_a = match a.value.total_cmp(&b.value) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => a.index <= b.index,
        };
        let mut best = if keep_a { a } else { b };
        best.in_region = in_region;
        best
    }
}

impl<T: ArchScalar> ArchProblem<T> {
    pub fn new(n: usize, g: Vec<T>, form: Vec<T>, attractor: Vec<T>) -> Self {
        let nf = arch::norm(&form);
        let form: Vec<T> = form.into_iter().map(|x| x.scale(1.0 / nf)).collect();
        let normal = form.iter().map(|x| x.conj()).collect();
        let na = arch::norm(&attractor);
        let attractor = attractor.into_iter().map(|x| x.scale(1.0 / na)).collect();
        ArchProblem {
            n,
            g,
            form,
            normal,
            attractor,
        }
    }

    pub fn extreme(&self, eps: f64, samples: u64, seed: u64) -> Extreme<T> {
        let chunks = samples.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let count = CHUNK.min(samples - c * CHUNK);
                self.run_chunk(eps, seed, c, count)
            })
            .reduce(Extreme::empty, Extreme::merge)
    }

    fn run_chunk(&self, eps: f64, seed: u64, chunk: u64, count: u64) -> Extreme<T> {
        let n = self.n;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let mut x = vec![T::zero(); n];
        let mut gx = vec![T::zero(); n];
        let mut best = Extreme::empty();
        let radius = (eps * (1.0 + 1e-12)).min(1.0);
        let tail = (1.0 - radius * radius).max(0.0).sqrt();
        for j in 0..count {
            let index = chunk * CHUNK + j;
            if index.is_multiple_of(2) {
                self.sphere_point(&mut rng, &mut x);
            } else {
                self.boundary_point(&mut rng, &mut x, radius, tail);
            }
            let xn = arch::norm(&x);
            let dh = arch::pair(&self.form, &x).abs() / xn;
            if dh < eps {
                continue;
            }
            best.in_region += 1;
            arch::matvec_into(&self.g, n, &x, &mut gx);
            let d = (arch::wedge_norm(&gx, &self.attractor) / arch::norm(&gx)).min(1.0);
            if d > best.value || best.point.is_none() {
                best.value = d;
                best.index = index;
                best.point = Some(x.clone());
            }
        }
        best
    }

    fn sphere_point(&self, rng: &mut ChaCha8Rng, x: &mut [T]) {
        loop {
            for xi in x.iter_mut() {
                *xi = T::gaussian(rng);
            }
            if arch::norm(x) > 1e-12 {
                return;
            }
        }
    }

    /// `x = c·t·u + √(1−t²)·y` with `u` the unit normal, `y ⟂ u` uniform, and
    /// `|c| = 1` a random phase, so `|⟨u, x⟩| = t`.
    fn boundary_point(&self, rng: &mut ChaCha8Rng, x: &mut [T], radius: f64, tail: f64) {
        let u = &self.normal;
        loop {
            for xi in x.iter_mut() {
                *xi = T::gaussian(rng);
            }
            let proj = arch::inner(u, x);
            for (xi, ui) in x.iter_mut().zip(u) {
                *xi = *xi - *ui * proj;
            }
            let ny = arch::norm(x);
            if ny < 1e-8 {
                continue;
            }
            let phase = if T::IS_COMPLEX {
                T::gaussian(rng).phase()
            } else if rng.random::<bool>() {
                T::one()
            } else {
                -T::one()
            };
            for (xi, ui) in x.iter_mut().zip(u) {
                *xi = xi.scale(tail / ny) + (*ui * phase).scale(radius);
            }
            return;
        }
    }
}

struct BallOutcome {
    max_distance: f64,
    worst: Option<Vec<u64>>,
    balls: u64,
    unresolved: u64,
    violated: bool,
}

/// Residues of `p^(-m) · v` for the least valuation `m` among the entries.
fn primitive_residues(v: &Vector) -> Result<Vec<u64>> {
    let m = v.min_valuation().ok_or(Error::ZeroVector)?;
    Ok(v.entries()
        .iter()
        .map(|s| s.as_padic().expect("padic").scaled_residue(m))
        .collect())
}

fn padic_vector(g: &Matrix, x: &[u64]) -> Vector {
    let f = g.field();
    let p = f.prime().expect("padic");
    let entries = x
        .iter()
        .map(|&r| Scalar::Padic(PadicNumber::from_residue(p, f.precision(), r, 0)))
        .collect();
    Vector::new(f, entries).expect("same field")
}

fn padic_ball_search(g: &Matrix, pair: &WitnessPair, eps: f64) -> Result<BallOutcome> {
    check_epsilon(eps)?;
    let field = g.field();
    let p = field.prime().expect("padic");
    let ring = Residues::new(p, field.precision())?;
    let n = g.n();
    let shift = g
        .entries()
        .iter()
        .filter_map(|x| x.as_padic().and_then(PadicNumber::valuation))
        .min()
        .ok_or_else(|| Error::Singular(" (zero matrix)".into()))?;
    let gm: Vec<u64> = g
        .entries()
        .iter()
        .map(|x| x.as_padic().expect("padic").scaled_residue(shift))
        .collect();
    let form = primitive_residues(pair.hyperplane.normal())?;
    let attr = primitive_residues(pair.point.representative())?;
    let pf = p as f64;
    let abs = |v: u32| pf.powi(-(v as i32));

    let mut out = BallOutcome {
        max_distance: 0.0,
        worst: None,
        balls: 0,
        unresolved: 0,
        violated: false,
    };
    let mut stack: Vec<(Vec<u64>, u32)> = Vec::new();
    // depth-1 balls: nonzero residues mod p
    for code in 1..(p.pow(n as u32)) {
        let mut x = vec![0u64; n];
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = c % p;
            c /= p;
        }
        stack.push((x, 1));
    }
    let mut gx = vec![0u64; n];
    while let Some((x, k)) = stack.pop() {
        out.balls += 1;
        if out.balls > MAX_BALLS {
            out.unresolved += 1 + stack.len() as u64;
            break;
        }
        // |⟨u, x⟩| on the ball
        let h = x
            .iter()
            .zip(&form)
            .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)));
        let hv = ring.val(h).min(k);
        let mut subdivide = false;
        if hv == k {
            // |⟨u, x⟩| ≤ p^-k throughout
            if abs(k) < eps {
                continue;
            }
            subdivide = true;
        } else if abs(hv) < eps {
            continue;
        }

        if !subdivide {
            for (i, gi) in gx.iter_mut().enumerate() {
                *gi = (0..n).fold(0, |acc, j| ring.add(acc, ring.mul(gm[i * n + j], x[j])));
            }
            let ng = gx.iter().map(|&v| ring.val(v)).min().expect("n ≥ 1").min(k);
            if ng == k {
                subdivide = true;
            } else {
                let mut w = k;
                for i in 0..n {
                    for j in (i + 1)..n {
                        let minor = ring.sub(ring.mul(gx[i], attr[j]), ring.mul(gx[j], attr[i]));
                        w = w.min(ring.val(minor));
                    }
                }
                if w < k {
                    let d = abs(w - ng);
                    if d > out.max_distance || out.worst.is_none() {
                        out.max_distance = d;
                        out.worst = Some(x.clone());
                    }
                    if d > eps {
                        out.violated = true;
                    }
                    continue;
                }
                // every minor lies in p^k ℤ_p, so d ≤ p^(ng - k)
                if abs(k - ng) <= eps {
                    continue;
                }
                subdivide = true;
            }
        }

        if subdivide {
            if k >= ring.n {
                out.unresolved += 1;
                continue;
            }
            let step = crate::padic::pow(p, k);
            for code in 0..p.pow(n as u32) {
                let mut child = x.clone();
                let mut c = code;
                for ci in child.iter_mut() {
                    *ci = ring.add(*ci, ring.mul(c % p, step));
                    c /= p;
                }
                stack.push((child, k + 1));
            }
        }
    }
    Ok(out)
}
