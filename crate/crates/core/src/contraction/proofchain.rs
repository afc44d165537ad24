//! Numeric replay of the archimedean converse bound on a diagonal matrix.
//!
//! Given `g = diag(a_i)` with `a_i > 0` that is ε-contracting for a pair
//! `(H, [w])` with unit normal `u`, pick a unit `v ⟂ g·w` in the span of the
//! two top coordinate directions and write `v = s·u + α_{|s|}·y` with `y ⟂ u`.
//! The boundary vector `v_ε = e^{iθ}ε·u + α_ε·y` then satisfies a chain of
//! norm estimates that ends in `a_2/a_1 ≤ 4ε²`. Every step is evaluated and
//! reported with its margin.

use num_complex::Complex64;
use serde::Serialize;

use super::{check_epsilon, oracle_check, ContractionQuery, Verdict, WitnessPair};
use crate::arch;
use crate::cartan;
use crate::error::Result;
use crate::projlin::{Matrix, Vector};
use crate::scalar::{FieldKind, Scalar};

/// Relative slack for steps that hold with equality in exact arithmetic.
const MARGIN_SLACK: f64 = 1e-12;

/// `α_t = √(1 − t²)`.
pub fn alpha(t: f64) -> f64 {
    (1.0 - t * t).max(0.0).sqrt()
}

/// `α_ε(1 − ε) − 1/2`, positive for every `ε < 1/4`.
pub fn alpha_margin(epsilon: f64) -> f64 {
    alpha(epsilon) * (1.0 - epsilon) - 0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainStatus {
    Verified,
    ChainBroken,
    HypothesesNotSatisfied,
    ReduceViaCartanFirst,
}

/// One step `lhs ≤ rhs` (or `lhs < rhs` when `strict`).
#[derive(Debug, Clone, Serialize)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`
    pub margin: f64,
    pub strict: bool,
    pub holds: bool,
}

impl InequalityCheck {
    fn new(name: &'static str, statement: &'static str, lhs: f64, rhs: f64, strict: bool) -> Self {
        let margin = rhs - lhs;
        let slack = MARGIN_SLACK * lhs.abs().max(rhs.abs()).max(1.0);
        let holds = if strict { margin > 0.0 } else { margin >= -slack };
        InequalityCheck {
            name,
            statement,
            lhs,
            rhs,
            margin,
            strict,
            holds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofChainWitness {
    /// Unit normal to `H`.
    pub u: Vector,
    /// Unit representative of the attracting point.
    pub w: Vector,
    /// Unit vector orthogonal to `g·w` in the top two coordinate directions.
    pub v: Vector,
    /// `⟨u, v⟩`
    pub s: Scalar,
    /// Phase of `s` (0 when `s = 0`).
    pub theta: f64,
    /// Unit vector orthogonal to `u` with `v = s·u + α_{|s|}·y`.
    pub y: Vector,
    pub alpha_eps: f64,
    pub alpha_s: f64,
    /// `e^{iθ}ε·u + α_ε·y`
    pub v_eps: Vector,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofChainReport {
    pub status: ChainStatus,
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ProofChainWitness>,
    pub checks: Vec<InequalityCheck>,
    /// `a_2/a_1 ≤ 4ε²`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<InequalityCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl ProofChainReport {
    fn early(status: ChainStatus, epsilon: f64, message: impl Into<String>) -> Self {
        ProofChainReport {
            status,
            epsilon,
            ratio: None,
            oracle_verdict: None,
            witness: None,
            checks: Vec::new(),
            conclusion: None,
            message: Some(message.into()),
        }
    }

    pub fn min_margin(&self) -> f64 {
        self.checks
            .iter()
            .chain(self.conclusion.as_ref())
            .map(|c| c.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Positive diagonal entries, or `None` if `g` is not of that form.
fn positive_diagonal(g: &Matrix) -> Option<Vec<f64>> {
    if !g.field().is_archimedean() || !g.is_diagonal() {
        return None;
    }
    (0..g.n())
        .map(|i| {
            let z = g.get(i, i).to_complex()?;
            (z.im == 0.0 && z.re > 0.0).then_some(z.re)
        })
        .collect()
}

fn cvec(v: &Vector) -> Vec<Complex64> {
    v.to_complex().expect("archimedean")
}

fn unit(mut x: Vec<Complex64>) -> Vec<Complex64> {
    let n = arch::norm(&x);
    for xi in x.iter_mut() {
        *xi /= n;
    }
    x
}

pub fn verify_proof_chain(
    g: &Matrix,
    epsilon: f64,
    pair: Option<WitnessPair>,
    samples: usize,
    seed: u64,
) -> Result<ProofChainReport> {
    check_epsilon(epsilon)?;
    let Some(diag) = positive_diagonal(g) else {
        return Ok(ProofChainReport::early(
            ChainStatus::ReduceViaCartanFirst,
            epsilon,
            "reduce via Cartan first: the chain applies to diagonal matrices with positive entries, \
             write g = k·a·k' and replay it on a",
        ));
    };
    let n = diag.len();
    if n < 2 {
        return Ok(ProofChainReport::early(
            ChainStatus::HypothesesNotSatisfied,
            epsilon,
            "dimension 1 has no second singular value",
        ));
    }
    let field = g.field();
    let pair = match pair {
        Some(p) => p,
        None => WitnessPair::canonical(&cartan::decompose(g)?),
    };
    let mut q = ContractionQuery::new(g.clone(), epsilon)?;
    q = q.with_pair(pair.clone())?;
    let oracle = oracle_check(&q, samples, seed)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let (i1, i2) = (order[0], order[1]);
    let (a1, a2) = (diag[i1], diag[i2]);
    let ratio = a2 / a1;

    if !oracle.verdict.is_contracting() {
        return Ok(ProofChainReport {
            ratio: Some(ratio),
            oracle_verdict: Some(oracle.verdict),
            ..ProofChainReport::early(
                ChainStatus::HypothesesNotSatisfied,
                epsilon,
                "hypotheses not satisfied: g is not ε-contracting for the given pair",
            )
        })
    }

    let apply = |x: &[Complex64]| -> Vec<Complex64> {
        x.iter().zip(&diag).map(|(xi, a)| xi * a).collect()
    };
    let eps = epsilon;
    // Hermitian unit normal of H: conjugate of the unit linear form
    let u: Vec<Complex64> = unit(cvec(pair.hyperplane.normal()).iter().map(|z| z.conj()).collect());
    let w = unit(cvec(pair.point.representative()));
    let gw = apply(&w);

    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let (z1, z2) = (gw[i1], gw[i2]);
    if z1.norm() == 0.0 && z2.norm() == 0.0 {
        v[i1] = Complex64::new(1.0, 0.0);
    } else {
        v[i1] = z2.conj();
        v[i2] = -z1.conj();
    }
    let v = unit(v);

    let s = arch::inner(&u, &v);
    let abs_s = s.norm();
    let theta = if abs_s == 0.0 { 0.0 } else { s.arg() };
    let alpha_s = alpha(abs_s);
    let alpha_eps = alpha(eps);
    let y: Vec<Complex64> = if alpha_s > 0.0 {
        v.iter().zip(&u).map(|(vi, ui)| (vi - s * ui) / alpha_s).collect()
    } else {
        // v is parallel to u; any unit vector orthogonal to u serves
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        let k = (0..n).min_by(|&a, &b| u[a].norm().total_cmp(&u[b].norm())).unwrap();
        e[k] = Complex64::new(1.0, 0.0);
        let p = arch::inner(&u, &e);
        unit(e.iter().zip(&u).map(|(ei, ui)| ei - p * ui).collect())
    };
    let phase = Complex64::from_polar(1.0, theta);
    let v_eps: Vec<Complex64> = u
        .iter()
        .zip(&y)
        .map(|(ui, yi)| phase * eps * ui + alpha_eps * yi)
        .collect();

    let gu = apply(&u);
    let gv = apply(&v);
    let gve = apply(&v_eps);
    let norm_gu = arch::norm(&gu);
    let norm_gv = arch::norm(&gv);
    let norm_gve = arch::norm(&gve);
    let wedge_gu = arch::wedge_norm(&gu, &w);
    let wedge_gve = arch::wedge_norm(&gve, &w);
    let c = alpha_eps / alpha_s;
    let kappa = eps - abs_s * c;

    let checks = vec![
        InequalityCheck::new(
            "normal_maps_near_attractor",
            "‖gu ∧ w‖ ≤ ε‖gu‖",
            wedge_gu,
            eps * norm_gu,
            false,
        ),
        InequalityCheck::new(
            "orthogonal_vector_is_close_to_hyperplane",
            "|⟨u, v⟩| < ε",
            abs_s,
            eps,
            true,
        ),
        InequalityCheck::new(
            "coefficient_positive",
            "0 < ε − |s|·α_ε/α_{|s|}",
            0.0,
            kappa,
            true,
        ),
        InequalityCheck::new(
            "coefficient_at_most_epsilon",
            "ε − |s|·α_ε/α_{|s|} ≤ ε",
            kappa,
            eps,
            false,
        ),
        InequalityCheck::new(
            "boundary_vector_maps_near_attractor",
            "‖gv_ε ∧ w‖ ≤ ε‖gv_ε‖",
            wedge_gve,
            eps * norm_gve,
            false,
        ),
        InequalityCheck::new(
            "boundary_image_norm_upper_bound",
            "‖gv_ε‖ ≤ ε‖gu‖ + (α_ε/α_{|s|})‖gv‖",
            norm_gve,
            eps * norm_gu + c * norm_gv,
            false,
        ),
        InequalityCheck::new(
            "boundary_wedge_lower_bound",
            "(α_ε/α_{|s|})‖gv‖ − ε²‖gu‖ ≤ ‖gv_ε ∧ w‖",
            c * norm_gv - eps * eps * norm_gu,
            wedge_gve,
            false,
        ),
        InequalityCheck::new(
            "rearranged_chain",
            "(α_ε/α_{|s|})(1 − ε)‖gv‖ ≤ 2ε²‖gu‖",
            c * (1.0 - eps) * norm_gv,
            2.0 * eps * eps * norm_gu,
            false,
        ),
        InequalityCheck::new("image_of_v_at_least_a2", "a_2 ≤ ‖gv‖", a2, norm_gv, false),
        InequalityCheck::new("image_of_u_at_most_a1", "‖gu‖ ≤ a_1", norm_gu, a1, false),
        InequalityCheck::new("alpha_s_at_most_one", "α_{|s|} ≤ 1", alpha_s, 1.0, false),
        InequalityCheck::new(
            "alpha_epsilon_margin",
            "1/2 < α_ε(1 − ε)",
            0.5,
            alpha_eps * (1.0 - eps),
            true,
        ),
    ];
    let conclusion = InequalityCheck::new(
        "ratio_bound",
        "a_2/a_1 ≤ 4ε²",
        ratio,
        4.0 * eps * eps,
        false,
    );
    let status = if checks.iter().all(|c| c.holds) && conclusion.holds {
        ChainStatus::Verified
    } else {
        ChainStatus::ChainBroken
    };

    let to_vector = |x: &[Complex64]| match field.kind() {
        FieldKind::Real => Vector::from_reals(&x.iter().map(|z| z.re).collect::<Vec<_>>()),
        _ => Vector::from_complex(x),
    };
    let s_scalar = match field.kind() {
        FieldKind::Real => Scalar::Real(s.re),
        _ => Scalar::Complex(s),
    };
    let witness = ProofChainWitness {
        u: to_vector(&u),
        w: to_vector(&w),
        v: to_vector(&v),
        s: s_scalar,
        theta,
        y: to_vector(&y),
        alpha_eps,
        alpha_s,
        v_eps: to_vector(&v_eps),
    };
    Ok(ProofChainReport {
        status,
        epsilon,
        ratio: Some(ratio),
        oracle_verdict: Some(oracle.verdict),
        witness: Some(witness),
        checks,
        conclusion: Some(conclusion),
        message: None,
    })
}
