//! Cartan (KAK) decomposition `g = k · a · kp` with `k, kp` in the maximal
//! compact subgroup (orthogonal, unitary, or `GL_n(ℤ_p)`) and `a` diagonal with
//! non-increasing absolute values.

mod jacobi;
pub(crate) mod smith;

use num_complex::Complex64;
use serde::Serialize;

use crate::arch::{self, ArchScalar};
use crate::error::{Error, Result};
use crate::padic::{PadicNumber, Residues};
use crate::projlin::{Matrix, ProjHyperplane, ProjPoint};
use crate::scalar::{FieldDescriptor, FieldKind, Scalar};

pub use jacobi::{svd, Svd};

#[derive(Debug, Clone, Serialize)]
pub struct CartanDecomposition {
    pub field: FieldDescriptor,
    pub k: Matrix,
    pub a: Matrix,
    pub kp: Matrix,
    /// `|a_1| ≥ … ≥ |a_n|`.
    pub profile: Vec<f64>,
    /// Valuations of the diagonal entries over ℚ_p (non-decreasing).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuations: Option<Vec<i64>>,
}

/// `|a_2 / a_1|`, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SingularRatio(pub f64);

impl SingularRatio {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl CartanDecomposition {
    pub fn n(&self) -> usize {
        self.profile.len()
    }

    pub fn ratio(&self) -> Result<SingularRatio> {
        if self.n() < 2 {
            return Err(Error::InvalidArgument(
                "singular ratio needs n ≥ 2".into(),
            ));
        }
        // ℚ_p: exact power of p from the valuations
        if let (Some(v), Some(p)) = (&self.valuations, self.field.prime()) {
            return Ok(SingularRatio((p as f64).powi(-((v[1] - v[0]) as i32))));
        }
        Ok(SingularRatio(self.profile[1] / self.profile[0]))
    }

    /// `k · a · kp`.
    pub fn recompose(&self) -> Result<Matrix> {
        self.k.mul(&self.a)?.mul(&self.kp)
    }

    /// Relative Frobenius error `‖k a kp − g‖ / ‖g‖` (archimedean fields).
    pub fn reconstruction_error(&self, g: &Matrix) -> Result<f64> {
        let (Some(gc), Some(rc)) = (g.to_complex(), self.recompose()?.to_complex()) else {
            return Err(Error::InvalidArgument(
                "relative reconstruction error is archimedean only; use reconstructs_exactly"
                    .into(),
            ));
        };
        let diff: Vec<Complex64> = gc.iter().zip(&rc).map(|(a, b)| a - b).collect();
        Ok(arch::frobenius(&diff) / arch::frobenius(&gc))
    }

    /// Over ℚ_p: whether `k a kp ≡ g` modulo `p^(m + N)` where `p^m` is the
    /// largest power dividing every entry of `g`.
    pub fn reconstructs_exactly(&self, g: &Matrix) -> Result<bool> {
        let p = self
            .field
            .prime()
            .ok_or_else(|| Error::InvalidArgument("exact reconstruction is p-adic only".into()))?;
        let ring = Residues::new(p, self.field.precision())?;
        let n = self.n();
        let shift = min_valuation(g).ok_or_else(|| Error::Singular(String::new()))?;
        let residues = |m: &Matrix, s: i64| -> Vec<u64> {
            m.entries()
                .iter()
                .map(|x| x.as_padic().expect("padic").scaled_residue(s))
                .collect()
        };
        let form = smith::SmithForm {
            k: residues(&self.k, 0),
            kp: residues(&self.kp, 0),
            valuations: self
                .valuations
                .as_ref()
                .expect("padic decomposition")
                .iter()
                .map(|v| (v - shift) as u32)
                .collect(),
        };
        Ok(smith::recompose(&ring, &form, n) == residues(g, shift))
    }
}

fn min_valuation(g: &Matrix) -> Option<i64> {
    g.entries()
        .iter()
        .filter_map(|x| x.as_padic().and_then(PadicNumber::valuation))
        .min()
}

pub fn decompose(g: &Matrix) -> Result<CartanDecomposition> {
    match g.field().kind() {
        FieldKind::Padic => decompose_padic(g),
        _ => decompose_archimedean(g),
    }
}

pub fn decompose_archimedean(g: &Matrix) -> Result<CartanDecomposition> {
    let n = g.n();
    match g.field().kind() {
        FieldKind::Real => {
            let a = g.to_reals().expect("real entries");
            let s = svd(&a, n);
            check_invertible(&s.sigma)?;
            let kp = arch::adjoint(&s.v, n);
            Ok(CartanDecomposition {
                field: FieldDescriptor::REAL,
                k: Matrix::from_real_slice(n, &s.u),
                a: Matrix::diagonal(
                    FieldDescriptor::REAL,
                    &s.sigma.iter().map(|&x| Scalar::Real(x)).collect::<Vec<_>>(),
                ),
                kp: Matrix::from_real_slice(n, &kp),
                profile: s.sigma,
                valuations: None,
            })
        }
        FieldKind::Complex => {
            let a = g.to_complex().expect("complex entries");
            let s = svd(&a, n);
            check_invertible(&s.sigma)?;
            let kp = arch::adjoint(&s.v, n);
            Ok(CartanDecomposition {
                field: FieldDescriptor::COMPLEX,
                k: Matrix::from_complex_slice(n, &s.u),
                a: Matrix::diagonal(
                    FieldDescriptor::COMPLEX,
                    &s.sigma
                        .iter()
                        .map(|&x| Scalar::Complex(Complex64::from_f64(x)))
                        .collect::<Vec<_>>(),
                ),
                kp: Matrix::from_complex_slice(n, &kp),
                profile: s.sigma,
                valuations: None,
            })
        }
        FieldKind::Padic => Err(Error::InvalidArgument(
            "decompose_archimedean called on a p-adic matrix".into(),
        )),
    }
}

fn check_invertible(sigma: &[f64]) -> Result<()> {
    let top = sigma[0];
    let bottom = *sigma.last().expect("n ≥ 1");
    if top == 0.0 || bottom <= top * f64::EPSILON * sigma.len() as f64 {
        return Err(Error::Singular(format!(
            " (smallest singular value {bottom:e}, largest {top:e})"
        )));
    }
    Ok(())
}

pub fn decompose_padic(g: &Matrix) -> Result<CartanDecomposition> {
    let field = g.field();
    let p = field.prime().ok_or_else(|| {
        Error::InvalidArgument("decompose_padic called on an archimedean matrix".into())
    })?;
    let prec = field.precision();
    let ring = Residues::new(p, prec)?;
    let n = g.n();
    let shift = min_valuation(g).ok_or_else(|| Error::Singular(" (zero matrix)".into()))?;
    let h: Vec<u64> = g
        .entries()
        .iter()
        .map(|x| x.as_padic().expect("padic").scaled_residue(shift))
        .collect();
    let form = smith::reduce(&ring, &h, n)?;
    let to_matrix = |m: &[u64]| {
        Matrix::from_data(
            field,
            n,
            m.iter()
                .map(|&r| Scalar::Padic(PadicNumber::from_residue(p, prec, r, 0)))
                .collect(),
        )
    };
    let valuations: Vec<i64> = form.valuations.iter().map(|&v| v as i64 + shift).collect();
    let diag: Vec<Scalar> = valuations
        .iter()
        .map(|&v| PadicNumber::from_parts(p, prec, v, 1).map(Scalar::Padic))
        .collect::<Result<_>>()?;
    Ok(CartanDecomposition {
        field,
        k: to_matrix(&form.k),
        a: Matrix::diagonal(field, &diag),
        kp: to_matrix(&form.kp),
        profile: diag.iter().map(Scalar::abs_value).collect(),
        valuations: Some(valuations),
    })
}

pub fn singular_ratio(g: &Matrix) -> Result<SingularRatio> {
    decompose(g)?.ratio()
}

/// `v_g = [k e_1]`.
pub fn attracting_point(d: &CartanDecomposition) -> ProjPoint {
    ProjPoint::new(d.k.column(0)).expect("columns of an invertible matrix are nonzero")
}

/// `H_g`, spanned by `kp⁻¹ e_2, …, kp⁻¹ e_n`: the zero set of the first row of
/// `kp`.
pub fn repelling_hyperplane(d: &CartanDecomposition) -> ProjHyperplane {
    ProjHyperplane::new(d.kp.row(0)).expect("rows of an invertible matrix are nonzero")
}
