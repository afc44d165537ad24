//! Vectors, matrices and the projective metric `d([u],[v]) = ‖u∧v‖ / (‖u‖‖v‖)`
//! over ℝ, ℂ and ℚ_p.
//!
//! Norms are the standard ones fixed by the maximal compact subgroup: the
//! Euclidean/Hermitian 2-norm archimedean-ly and the sup norm over ℚ_p. The
//! wedge norm is computed from the explicit 2×2 minors in both cases, so the
//! same code path serves every field and nearly proportional vectors do not
//! suffer from Gram-determinant cancellation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arch;
use crate::cartan::smith;
use crate::error::{Error, Result};
use crate::padic::{PadicNumber, Residues};
use crate::scalar::{FieldDescriptor, FieldKind, Scalar};

/// Archimedean threshold under which two projective points are identified.
pub const PROJ_EQ_TOLERANCE: f64 = 1e-10;

fn check_entries(field: FieldDescriptor, entries: &[Scalar]) -> Result<()> {
    for e in entries {
        if e.field() != field {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: e.field().to_string(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    field: FieldDescriptor,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: FieldDescriptor, entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        check_entries(field, &entries)?;
        Ok(Vector { field, entries })
    }

    pub fn from_reals(xs: &[f64]) -> Self {
        Vector {
            field: FieldDescriptor::REAL,
            entries: xs.iter().map(|&x| Scalar::Real(x)).collect(),
        }
    }

    pub fn from_complex(xs: &[Complex64]) -> Self {
        Vector {
            field: FieldDescriptor::COMPLEX,
            entries: xs.iter().map(|&x| Scalar::Complex(x)).collect(),
        }
    }

    pub fn from_i64s(field: FieldDescriptor, xs: &[i64]) -> Self {
        Vector {
            field,
            entries: xs.iter().map(|&x| field.from_i64(x)).collect(),
        }
    }

    /// Standard basis vector `e_i` (zero-based).
    pub fn basis(field: FieldDescriptor, n: usize, i: usize) -> Self {
        let entries = (0..n)
            .map(|j| if i == j { field.one() } else { field.zero() })
            .collect();
        Vector { field, entries }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn norm(&self) -> f64 {
        norm(self)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Vector> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Vector {
            field: self.field,
            entries,
        })
    }

    /// Entries as complex numbers; `None` over ℚ_p.
    pub fn to_complex(&self) -> Option<Vec<Complex64>> {
        self.entries.iter().map(Scalar::to_complex).collect()
    }

    pub(crate) fn to_reals(&self) -> Option<Vec<f64>> {
        self.entries
            .iter()
            .map(|s| match s {
                Scalar::Real(x) => Some(*x),
                _ => None,
            })
            .collect()
    }

    /// Smallest valuation among the entries (`None` for the zero vector), i.e.
    /// `‖v‖ = p^(-min)` over ℚ_p.
    pub(crate) fn min_valuation(&self) -> Option<i64> {
        self.entries
            .iter()
            .filter_map(|s| s.as_padic().and_then(|x| x.valuation()))
            .min()
    }

    fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }
}

/// Euclidean/Hermitian norm archimedean-ly, sup norm over ℚ_p.
pub fn norm(v: &Vector) -> f64 {
    match v.field.kind() {
        FieldKind::Padic => v.entries.iter().map(Scalar::abs_value).fold(0.0, f64::max),
        _ => {
            // scaled to stay clear of overflow for large entries
            let m = v.entries.iter().map(Scalar::abs_value).fold(0.0, f64::max);
            if m == 0.0 {
                return 0.0;
            }
            m * v
                .entries
                .iter()
                .map(|s| (s.abs_value() / m).powi(2))
                .sum::<f64>()
                .sqrt()
        }
    }
}

/// `‖u ∧ v‖`: 2-norm of the 2×2 minors archimedean-ly, their largest absolute
/// value over ℚ_p.
pub fn wedge_norm(u: &Vector, v: &Vector) -> Result<f64> {
    u.check_dim(v)?;
    match u.field.kind() {
        FieldKind::Padic => {
            let n = u.dim();
            let mut best = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    let minor = u.entries[i]
                        .mul(&v.entries[j])?
                        .sub(&u.entries[j].mul(&v.entries[i])?)?;
                    best = best.max(minor.abs_value());
                }
            }
            Ok(best)
        }
        _ => {
            let a = u.to_complex().expect("archimedean");
            let b = v.to_complex().expect("archimedean");
            Ok(arch::wedge_norm(&a, &b))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjPoint {
    representative: Vector,
}

impl ProjPoint {
    pub fn new(representative: Vector) -> Result<Self> {
        if representative.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(ProjPoint { representative })
    }

    pub fn representative(&self) -> &Vector {
        &self.representative
    }

    pub fn field(&self) -> FieldDescriptor {
        self.representative.field
    }

    pub fn dim(&self) -> usize {
        self.representative.dim()
    }

    /// Same point of projective space: distance below 1e-10 archimedean-ly,
    /// exactly zero over ℚ_p.
    pub fn same_point(&self, other: &ProjPoint) -> Result<bool> {
        let d = proj_distance(self, other)?;
        Ok(if self.field().is_archimedean() {
            d < PROJ_EQ_TOLERANCE
        } else {
            d == 0.0
        })
    }
}

pub fn proj_distance(a: &ProjPoint, b: &ProjPoint) -> Result<f64> {
    let (u, v) = (&a.representative, &b.representative);
    let d = wedge_norm(u, v)? / (norm(u) * norm(v));
    Ok(d.min(1.0))
}

/// A projective hyperplane given by the linear form `x ↦ Σ normal_i x_i` that
/// cuts it out. Over ℝ the form and the unit normal coincide; over ℂ the
/// Hermitian normal is the conjugate of the stored form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjHyperplane {
    normal: Vector,
}

impl ProjHyperplane {
    /// Normalizes to unit 2-norm archimedean-ly and to sup-norm 1 over ℚ_p.
    pub fn new(normal: Vector) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroVector);
        }
        let field = normal.field;
        let normal = match field.kind() {
            FieldKind::Padic => {
                let v = normal.min_valuation().expect("nonzero");
                let p = field.prime().expect("padic");
                let scale = crate::padic::PadicNumber::from_parts(p, field.precision(), -v, 1)?;
                normal.scale(&Scalar::Padic(scale))?
            }
            _ => normal.scale(&field.from_f64(1.0 / normal.norm()))?,
        };
        Ok(ProjHyperplane { normal })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Value of the cutting form at `x`.
    pub fn pairing(&self, x: &Vector) -> Result<Scalar> {
        self.normal.check_dim(x)?;
        let mut acc = self.normal.field.zero();
        for (a, b) in self.normal.entries.iter().zip(&x.entries) {
            acc = acc.add(&a.mul(b)?)?;
        }
        Ok(acc)
    }
}

/// `|⟨u_H, x⟩| / (‖u_H‖ ‖x‖)`, which equals the projective distance from `[x]`
/// to the nearest point of `H`.
pub fn distance_to_hyperplane(a: &ProjPoint, h: &ProjHyperplane) -> Result<f64> {
    let x = &a.representative;
    let num = h.pairing(x)?.abs_value();
    Ok((num / (h.normal.norm() * x.norm())).min(1.0))
}

/// Square matrix, row-major. Serializes as `{"field": …, "rows": [[…]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixRepr", try_from = "MatrixRepr")]
pub struct Matrix {
    field: FieldDescriptor,
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        check_entries(field, &data)?;
        Ok(Matrix { field, n, data })
    }

    pub(crate) fn from_data(field: FieldDescriptor, n: usize, data: Vec<Scalar>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Matrix { field, n, data }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::Real(x)).collect())
            .collect();
        Self::from_rows(FieldDescriptor::REAL, rows)
    }

    pub fn from_i64_rows(field: FieldDescriptor, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub(crate) fn from_real_slice(n: usize, data: &[f64]) -> Self {
        Matrix {
            field: FieldDescriptor::REAL,
            n,
            data: data.iter().map(|&x| Scalar::Real(x)).collect(),
        }
    }

    pub(crate) fn from_complex_slice(n: usize, data: &[Complex64]) -> Self {
        Matrix {
            field: FieldDescriptor::COMPLEX,
            n,
            data: data.iter().map(|&x| Scalar::Complex(x)).collect(),
        }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        Self::diagonal(field, &vec![field.one(); n])
    }

    pub fn diagonal(field: FieldDescriptor, diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut data = vec![field.zero(); n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        Matrix { field, n, data }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n).map(<[Scalar]>::to_vec).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector {
            field: self.field,
            entries: self.data[i * self.n..(i + 1) * self.n].to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector {
            field: self.field,
            entries: (0..self.n).map(|i| *self.get(i, j)).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let n = self.n;
        if let (Some(a), Some(b)) = (self.to_complex(), other.to_complex()) {
            let c = arch::matmul(&a, &b, n);
            return Ok(self.rebuild_arch(&c));
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            field: self.field,
            n,
            data,
        })
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        if x.field != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: x.field.to_string(),
            });
        }
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.dim(),
            });
        }
        let mut entries = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc = self.field.zero();
            for j in 0..self.n {
                acc = acc.add(&self.get(i, j).mul(&x.entries[j])?)?;
            }
            entries.push(acc);
        }
        Ok(Vector {
            field: self.field,
            entries,
        })
    }

    /// Conjugate transpose (plain transpose off ℂ).
    pub fn adjoint(&self) -> Matrix {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).conj());
            }
        }
        Matrix {
            field: self.field,
            n,
            data,
        }
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if let Some(c) = self.to_complex() {
            let d = arch::determinant(&c, self.n);
            return self.field.from_complex(d);
        }
        let n = self.n;
        let Some(shift) = self.min_entry_valuation() else {
            return Ok(self.field.zero());
        };
        let (p, prec) = (self.field.prime().expect("p-adic"), self.field.precision());
        let ring = Residues::new(p, prec)?;
        let h: Vec<u64> = self
            .data
            .iter()
            .map(|x| x.as_padic().expect("p-adic entries").scaled_residue(shift))
            .collect();
        let r = smith::determinant(&ring, &h, n);
        Ok(Scalar::Padic(PadicNumber::from_residue(p, prec, r, shift * n as i64)))
    }

    fn min_entry_valuation(&self) -> Option<i64> {
        self.data
            .iter()
            .filter_map(|x| x.as_padic().and_then(PadicNumber::valuation))
            .min()
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(!self.determinant()?.is_zero())
    }

    pub fn to_complex(&self) -> Option<Vec<Complex64>> {
        self.data.iter().map(Scalar::to_complex).collect()
    }

    pub(crate) fn to_reals(&self) -> Option<Vec<f64>> {
        self.data
            .iter()
            .map(|s| match s {
                Scalar::Real(x) => Some(*x),
                _ => None,
            })
            .collect()
    }

    pub(crate) fn rebuild_arch(&self, c: &[Complex64]) -> Matrix {
        match self.field.kind() {
            FieldKind::Real => {
                Matrix::from_real_slice(self.n, &c.iter().map(|z| z.re).collect::<Vec<_>>())
            }
            _ => Matrix::from_complex_slice(self.n, c),
        }
    }

    /// Frobenius norm (archimedean); largest entry absolute value over ℚ_p.
    pub fn norm(&self) -> f64 {
        match self.to_complex() {
            Some(c) => arch::frobenius(&c),
            None => self.data.iter().map(Scalar::abs_value).fold(0.0, f64::max),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    field: FieldDescriptor,
    rows: Vec<Vec<Scalar>>,
}

impl From<Matrix> for MatrixRepr {
    fn from(m: Matrix) -> Self {
        MatrixRepr {
            field: m.field,
            rows: m.rows(),
        }
    }
}

impl TryFrom<MatrixRepr> for Matrix {
    type Error = Error;

    fn try_from(r: MatrixRepr) -> Result<Self> {
        Matrix::from_rows(r.field, r.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn q5() -> FieldDescriptor {
        FieldDescriptor::padic(5, 16).unwrap()
    }

    fn pt(v: Vector) -> ProjPoint {
        ProjPoint::new(v).unwrap()
    }

    #[test]
    fn norms() {
        assert_eq!(Vector::from_reals(&[3.0, 4.0]).norm(), 5.0);
        assert_eq!(Vector::from_i64s(q5(), &[5, 1]).norm(), 1.0);
        let v = Vector::from_complex(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
        assert!((v.norm() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(Vector::from_reals(&[0.0, 0.0]).norm(), 0.0);
    }

    #[test]
    fn wedges() {
        let w = |a: &[f64], b: &[f64]| {
            wedge_norm(&Vector::from_reals(a), &Vector::from_reals(b)).unwrap()
        };
        assert_eq!(w(&[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert_eq!(w(&[1.0, 1.0], &[1.0, 0.0]), 1.0);
        assert_eq!(w(&[2.0, 4.0], &[1.0, 2.0]), 0.0);
        let u = Vector::from_i64s(q5(), &[1, 0]);
        let v = Vector::from_i64s(q5(), &[0, 5]);
        assert_eq!(wedge_norm(&u, &v).unwrap(), 0.2);
        let err = wedge_norm(&Vector::from_reals(&[1.0, 0.0]), &Vector::from_reals(&[1.0]));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn distances() {
        let e1 = pt(Vector::from_reals(&[1.0, 0.0]));
        let e2 = pt(Vector::from_reals(&[0.0, 1.0]));
        let diag = pt(Vector::from_reals(&[1.0, 1.0]));
        assert_eq!(proj_distance(&e1, &e1).unwrap(), 0.0);
        assert_eq!(proj_distance(&e1, &e2).unwrap(), 1.0);
        assert!((proj_distance(&diag, &e1).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(e1
            .same_point(&pt(Vector::from_reals(&[-3.0, 0.0])))
            .unwrap());
        assert!(matches!(
            ProjPoint::new(Vector::from_reals(&[0.0, 0.0])),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn hyperplane_distances() {
        let h = ProjHyperplane::new(Vector::from_reals(&[1.0, 0.0])).unwrap();
        let d = |x: &[f64]| distance_to_hyperplane(&pt(Vector::from_reals(x)), &h).unwrap();
        assert_eq!(d(&[1.0, 0.0]), 1.0);
        assert_eq!(d(&[0.0, 1.0]), 0.0);
        assert!((d(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]) - FRAC_1_SQRT_2).abs() < 1e-15);
        // scaling the normal changes nothing
        let h2 = ProjHyperplane::new(Vector::from_reals(&[-7.0, 0.0])).unwrap();
        let x = pt(Vector::from_reals(&[0.3, 0.9]));
        assert!(
            (distance_to_hyperplane(&x, &h).unwrap() - distance_to_hyperplane(&x, &h2).unwrap())
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn padic_hyperplane_normalized_to_sup_norm_one() {
        let h = ProjHyperplane::new(Vector::from_i64s(q5(), &[25, 50])).unwrap();
        assert_eq!(h.normal().norm(), 1.0);
        let x = pt(Vector::from_i64s(q5(), &[1, 1]));
        // 1 + 2 = 3 is a unit
        assert_eq!(distance_to_hyperplane(&x, &h).unwrap(), 1.0);
        let y = pt(Vector::from_i64s(q5(), &[3, 1]));
        // 3 + 2 = 5
        assert_eq!(distance_to_hyperplane(&y, &h).unwrap(), 0.2);
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(m.determinant().unwrap(), Scalar::Real(1.0));
        let p = Matrix::from_i64_rows(q5(), &[vec![1, 1], vec![1, 6]]).unwrap();
        let det = p.determinant().unwrap();
        assert_eq!(det.as_padic().unwrap().valuation(), Some(1));
        let s = Matrix::from_i64_rows(q5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(!s.is_invertible().unwrap());
    }
}
