//! ε-contracting projective transformations.
//!
//! `[g]` is ε-contracting when there are a hyperplane `H` and a point `v` such
//! that `g` maps every `[x]` with `d([x], H) ≥ ε` into the ε-ball around `v`.
//! The singular ratio `r = |a_2/a_1|` governs this in both directions, for
//! `ε < 1/4`:
//!
//! * `r ≤ ε²` implies ε-contraction with the canonical pair `(H_g, v_g)` read
//!   off the Cartan decomposition;
//! * ε-contraction (for any pair) implies `r ≤ 4ε²` over ℝ and ℂ, and
//!   `r ≤ ε²/|π|` over ℚ_p.
//!
//! [`certify_by_ratio`] applies these bounds, [`oracle_check`] tests the
//! definition directly, and [`verify_proof_chain`] replays the archimedean
//! converse step by step on a concrete matrix.

mod oracle;
mod proofchain;

use serde::Serialize;

use crate::cartan::{self, attracting_point, repelling_hyperplane, CartanDecomposition};
use crate::error::{Error, Result};
use crate::projlin::{Matrix, ProjHyperplane, ProjPoint};
use crate::scalar::FieldDescriptor;

pub use oracle::{image_sup, oracle_check};
pub use proofchain::{
    alpha, alpha_margin, verify_proof_chain, ChainStatus, InequalityCheck, ProofChainReport,
    ProofChainWitness,
};

/// Strict upper bound on ε.
pub const MAX_EPSILON: f64 = 0.25;
/// Additive slack on ε-ball membership in the sampling oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Relative slack that keeps floating-point equality on the refuting side of
/// the converse thresholds, so `r = ε²/|π|` stays inconclusive.
const THRESHOLD_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessPair {
    pub hyperplane: ProjHyperplane,
    pub point: ProjPoint,
}

impl WitnessPair {
    pub fn canonical(d: &CartanDecomposition) -> Self {
        WitnessPair {
            hyperplane: repelling_hyperplane(d),
            point: attracting_point(d),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContractionQuery {
    g: Matrix,
    epsilon: f64,
    pair: Option<WitnessPair>,
}

impl ContractionQuery {
    pub fn new(g: Matrix, epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        Ok(ContractionQuery {
            g,
            epsilon,
            pair: None,
        })
    }

    /// Tests against `pair` instead of the canonical `(H_g, v_g)`.
    pub fn with_pair(mut self, pair: WitnessPair) -> Result<Self> {
        let n = self.g.n();
        for (dim, field) in [
            (pair.hyperplane.dim(), pair.hyperplane.normal().field()),
            (pair.point.dim(), pair.point.field()),
        ] {
            if dim != n {
                return Err(Error::DimensionMismatch { expected: n, got: dim });
            }
            if field != self.g.field() {
                return Err(Error::FieldMismatch {
                    left: self.g.field().to_string(),
                    right: field.to_string(),
                });
            }
        }
        self.pair = Some(pair);
        Ok(self)
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn pair(&self) -> Option<&WitnessPair> {
        self.pair.as_ref()
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < MAX_EPSILON) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedContracting,
    CertifiedNotContracting,
    Inconclusive,
    OracleVerified,
    OracleRefuted,
}

impl Verdict {
    pub fn is_contracting(self) -> bool {
        matches!(self, Verdict::CertifiedContracting | Verdict::OracleVerified)
    }

    /// 0 contracting, 1 not contracting, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::CertifiedContracting | Verdict::OracleVerified => 0,
            Verdict::CertifiedNotContracting | Verdict::OracleRefuted => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// Which criterion produced the verdict. The forward bound certifies the
/// canonical pair only; the converse bounds rule out every pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundUsed {
    /// `r ≤ ε²`: contracting with the canonical pair.
    ForwardRatio,
    /// `r > 4ε²` over ℝ/ℂ: not contracting for any pair.
    ConverseArchimedean,
    /// `r > ε²/|π|` over ℚ_p: not contracting for any pair.
    ConverseNonArchimedean,
    /// Between the two thresholds.
    NeitherBound,
    /// Sampled check of the definition against the stated pair.
    SampledOracle,
    /// Exhaustive ball-refinement check over ℚ_p against the stated pair.
    ExhaustiveBallOracle,
}

#[derive(Debug, Clone, Serialize)]
pub struct Thresholds {
    /// `ε²`
    pub forward: f64,
    /// `4ε²` or `ε²/|π|`
    pub converse: f64,
}

impl Thresholds {
    pub fn for_field(field: FieldDescriptor, epsilon: f64) -> Self {
        let e2 = epsilon * epsilon;
        let converse = match field.uniformizer_abs() {
            Some(pi) => e2 / pi,
            None => 4.0 * e2,
        };
        Thresholds {
            forward: e2,
            converse,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionCertificate {
    pub verdict: Verdict,
    pub field: FieldDescriptor,
    pub epsilon: f64,
    pub ratio: f64,
    pub thresholds: Thresholds,
    pub witness: WitnessPair,
    pub bound_used: BoundUsed,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_point: Option<ProjPoint>,
    /// Largest `d(g·x, v)` seen over points with `d(x, H) ≥ ε`. Over ℚ_p this
    /// covers balls on which the distance was determined exactly; the others
    /// were bounded by ε without being resolved.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_image_distance: Option<f64>,
    /// Points (archimedean) or balls (ℚ_p) the oracle examined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples_checked: Option<u64>,
}

pub fn certify_by_ratio(q: &ContractionQuery) -> Result<ContractionCertificate> {
    let d = cartan::decompose(&q.g)?;
    let r = d.ratio()?.value();
    let field = q.g.field();
    let thresholds = Thresholds::for_field(field, q.epsilon);
    let (verdict, bound_used) = if r <= thresholds.forward {
        (Verdict::CertifiedContracting, BoundUsed::ForwardRatio)
    } else if r > thresholds.converse * (1.0 + THRESHOLD_SLACK) {
        let bound = if field.is_archimedean() {
            BoundUsed::ConverseArchimedean
        } else {
            BoundUsed::ConverseNonArchimedean
        };
        (Verdict::CertifiedNotContracting, bound)
    } else {
        (Verdict::Inconclusive, BoundUsed::NeitherBound)
    };
    Ok(ContractionCertificate {
        verdict,
        field,
        epsilon: q.epsilon,
        ratio: r,
        thresholds,
        witness: WitnessPair::canonical(&d),
        bound_used,
        worst_point: None,
        worst_image_distance: None,
        samples_checked: None,
    })
}

/// Closed-form smallest ε for which `g` is ε-contracting with respect to its
/// canonical pair: `ε*² = r / (1 + r)`. Returns 1 when `a_1 = a_2`, where the
/// canonical pair is not unique and no contraction is claimed.
pub fn epsilon_star_canonical(g: &Matrix) -> Result<f64> {
    if !g.field().is_archimedean() {
        return Err(Error::InvalidArgument(
            "epsilon_star_canonical is defined over ℝ and ℂ".into(),
        ));
    }
    let r = cartan::singular_ratio(g)?.value();
    if r >= 1.0 - 1e-12 {
        return Ok(1.0);
    }
    Ok((r / (1.0 + r)).sqrt())
}

/// Smallest ε in `(0, 1]` with `sup { d(g·x, v_g) : d(x, H_g) ≥ ε } ≤ ε`, found by
/// bisection over the sampling oracle.
pub fn epsilon_star_bisection(g: &Matrix, samples: usize, seed: u64) -> Result<f64> {
    if !g.field().is_archimedean() {
        return Err(Error::InvalidArgument(
            "epsilon_star_bisection is defined over ℝ and ℂ".into(),
        ));
    }
    let d = cartan::decompose(g)?;
    let pair = WitnessPair::canonical(&d);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if image_sup(g, &pair, mid, samples, seed)? <= mid {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Serialize)]
pub struct EpsilonStar {
    pub closed_form: f64,
    pub bisection: f64,
    pub agrees: bool,
    /// The closed form when it agrees with bisection within 1e-4, otherwise
    /// the bisection value.
    pub value: f64,
}

pub const EPSILON_STAR_AGREEMENT: f64 = 1e-4;

pub fn epsilon_star(g: &Matrix, samples: usize, seed: u64) -> Result<EpsilonStar> {
    let closed_form = epsilon_star_canonical(g)?;
    let bisection = epsilon_star_bisection(g, samples, seed)?;
    let agrees = (closed_form - bisection).abs() <= EPSILON_STAR_AGREEMENT;
    Ok(EpsilonStar {
        closed_form,
        bisection,
        agrees,
        value: if agrees { closed_form } else { bisection },
    })
}
