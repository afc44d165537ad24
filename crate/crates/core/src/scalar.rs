//! Local fields ℝ, ℂ and ℚ_p behind one scalar type.

use std::fmt;
use std::str::FromStr;

use num::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{check_params, PadicNumber, DEFAULT_PRECISION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Real,
    Complex,
    Padic,
}

/// Which local field we compute in. For ℝ and ℂ `precision` is the mantissa
/// width in bits (53, double precision); for ℚ_p it is the number of p-adic
/// mantissa digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
    prime: u64,
    precision: u32,
}

impl FieldDescriptor {
    pub const REAL: FieldDescriptor = FieldDescriptor {
        kind: FieldKind::Real,
        prime: 0,
        precision: f64::MANTISSA_DIGITS,
    };

    pub const COMPLEX: FieldDescriptor = FieldDescriptor {
        kind: FieldKind::Complex,
        prime: 0,
        precision: f64::MANTISSA_DIGITS,
    };

    pub fn padic(p: u64, precision: u32) -> Result<Self> {
        check_params(p, precision)?;
        Ok(FieldDescriptor {
            kind: FieldKind::Padic,
            prime: p,
            precision,
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// The residue characteristic, `None` for archimedean fields.
    pub fn prime(&self) -> Option<u64> {
        (self.kind == FieldKind::Padic).then_some(self.prime)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_archimedean(&self) -> bool {
        self.kind != FieldKind::Padic
    }

    /// `|π| = 1/p` for ℚ_p.
    pub fn uniformizer_abs(&self) -> Option<f64> {
        self.prime().map(|p| 1.0 / p as f64)
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            FieldKind::Real => Scalar::Real(0.0),
            FieldKind::Complex => Scalar::Complex(Complex64::new(0.0, 0.0)),
            FieldKind::Padic => Scalar::Padic(PadicNumber::zero(self.prime, self.precision)),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        match self.kind {
            FieldKind::Real => Scalar::Real(x as f64),
            FieldKind::Complex => Scalar::Complex(Complex64::new(x as f64, 0.0)),
            FieldKind::Padic => Scalar::Padic(
                PadicNumber::from_i64(self.prime, self.precision, x).expect("validated field"),
            ),
        }
    }

    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        use num::ToPrimitive;
        match self.kind {
            FieldKind::Padic => Ok(Scalar::Padic(PadicNumber::from_ratio(
                self.prime,
                self.precision,
                num,
                den,
            )?)),
            _ => {
                let r = num::rational::BigRational::new(num.clone(), den.clone());
                let x = r.to_f64().ok_or_else(|| Error::parse("rational out of range"))?;
                Ok(self.from_f64(x))
            }
        }
    }

    /// Embeds a real number; for ℚ_p only finite binary fractions are exact, so
    /// callers should prefer [`from_ratio`](Self::from_ratio).
    pub fn from_f64(&self, x: f64) -> Scalar {
        match self.kind {
            FieldKind::Real => Scalar::Real(x),
            FieldKind::Complex => Scalar::Complex(Complex64::new(x, 0.0)),
            FieldKind::Padic => {
                let r = num::rational::BigRational::from_float(x).expect("finite float");
                self.from_ratio(r.numer(), r.denom()).expect("nonzero denominator")
            }
        }
    }

    pub fn from_complex(&self, z: Complex64) -> Result<Scalar> {
        match self.kind {
            FieldKind::Complex => Ok(Scalar::Complex(z)),
            FieldKind::Real if z.im == 0.0 => Ok(Scalar::Real(z.re)),
            _ => Err(Error::FieldMismatch {
                left: self.to_string(),
                right: "complex".into(),
            }),
        }
    }
}

impl Default for FieldDescriptor {
    fn default() -> Self {
        FieldDescriptor::REAL
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Real => write!(f, "real"),
            FieldKind::Complex => write!(f, "complex"),
            FieldKind::Padic => write!(f, "padic:{}", self.prime),
        }
    }
}

/// Parses `real`, `complex`, `padic:p` or `padic:p:N`.
impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        match parts.next().map(str::to_ascii_lowercase).as_deref() {
            Some("real" | "r") => Ok(FieldDescriptor::REAL),
            Some("complex" | "c") => Ok(FieldDescriptor::COMPLEX),
            Some("padic" | "qp") => {
                let p = parts
                    .next()
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::InvalidField(format!("missing prime in {s:?}")))?;
                let n = match parts.next() {
                    Some(n) => n
                        .parse()
                        .map_err(|_| Error::InvalidField(format!("bad precision in {s:?}")))?,
                    None => DEFAULT_PRECISION,
                };
                FieldDescriptor::padic(p, n)
            }
            _ => Err(Error::InvalidField(format!("unknown field {s:?}"))),
        }
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of ℝ, ℂ or ℚ_p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Real(f64),
    Complex(Complex64),
    Padic(PadicNumber),
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Real(_) => FieldDescriptor::REAL,
            Scalar::Complex(_) => FieldDescriptor::COMPLEX,
            Scalar::Padic(x) => FieldDescriptor {
                kind: FieldKind::Padic,
                prime: x.prime(),
                precision: x.precision(),
            },
        }
    }

    /// Modulus on ℝ and ℂ, `p^(-v)` on ℚ_p.
    pub fn abs_value(&self) -> f64 {
        match self {
            Scalar::Real(x) => x.abs(),
            Scalar::Complex(z) => z.norm(),
            Scalar::Padic(x) => x.abs_value(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Real(x) => *x == 0.0,
            Scalar::Complex(z) => z.re == 0.0 && z.im == 0.0,
            Scalar::Padic(x) => x.is_zero(),
        }
    }

    /// Archimedean value as a complex number; `None` on ℚ_p.
    pub fn to_complex(&self) -> Option<Complex64> {
        match self {
            Scalar::Real(x) => Some(Complex64::new(*x, 0.0)),
            Scalar::Complex(z) => Some(*z),
            Scalar::Padic(_) => None,
        }
    }

    pub fn as_padic(&self) -> Option<&PadicNumber> {
        match self {
            Scalar::Padic(x) => Some(x),
            _ => None,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch {
            left: self.field().to_string(),
            right: other.field().to_string(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Real(a), Scalar::Real(b)) => Ok(Scalar::Real(a + b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a + b)),
            (Scalar::Padic(a), Scalar::Padic(b)) => Ok(Scalar::Padic(a.add(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Real(a), Scalar::Real(b)) => Ok(Scalar::Real(a * b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a * b)),
            (Scalar::Padic(a), Scalar::Padic(b)) => Ok(Scalar::Padic(a.mul(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Real(a) => Scalar::Real(-a),
            Scalar::Complex(a) => Scalar::Complex(-a),
            Scalar::Padic(a) => Scalar::Padic(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Real(a) => Ok(Scalar::Real(1.0 / a)),
            Scalar::Complex(a) => Ok(Scalar::Complex(a.inv())),
            Scalar::Padic(a) => Ok(Scalar::Padic(a.inv()?)),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    /// Complex conjugate; identity on ℝ and ℚ_p.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Complex(z) => Scalar::Complex(z.conj()),
            other => *other,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Real(x) => write!(f, "{x}"),
            Scalar::Complex(z) => write!(f, "{z}"),
            Scalar::Padic(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Arch {
        field: FieldKind,
        re: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        im: Option<f64>,
    },
    Padic(PadicNumber),
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            Scalar::Real(x) => ScalarRepr::Arch {
                field: FieldKind::Real,
                re: *x,
                im: None,
            },
            Scalar::Complex(z) => ScalarRepr::Arch {
                field: FieldKind::Complex,
                re: z.re,
                im: Some(z.im),
            },
            Scalar::Padic(x) => ScalarRepr::Padic(*x),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ScalarRepr::deserialize(d)? {
            ScalarRepr::Arch {
                field: FieldKind::Real,
                re,
                im,
            } => {
                if im.unwrap_or(0.0) != 0.0 {
                    return Err(serde::de::Error::custom("real scalar with imaginary part"));
                }
                Ok(Scalar::Real(re))
            }
            ScalarRepr::Arch {
                field: FieldKind::Complex,
                re,
                im,
            } => Ok(Scalar::Complex(Complex64::new(re, im.unwrap_or(0.0)))),
            ScalarRepr::Arch { .. } => Err(serde::de::Error::custom(
                "p-adic scalars are written as {\"p\", \"v\", \"u\"}",
            )),
            ScalarRepr::Padic(x) => Ok(Scalar::Padic(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_value_examples() {
        assert_eq!(Scalar::Real(3.5).abs_value(), 3.5);
        assert_eq!(Scalar::Real(-3.5).abs_value(), 3.5);
        let q5 = FieldDescriptor::padic(5, 16).unwrap();
        assert_eq!(q5.from_i64(5).abs_value(), 0.2);
        assert!((q5.from_i64(50).abs_value() - 0.04).abs() < 1e-16);
        assert_eq!(Scalar::Complex(Complex64::new(3.0, 4.0)).abs_value(), 5.0);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("real".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::REAL);
        let f: FieldDescriptor = "padic:7".parse().unwrap();
        assert_eq!(f.prime(), Some(7));
        assert_eq!(f.precision(), DEFAULT_PRECISION);
        let f: FieldDescriptor = "padic:5:8".parse().unwrap();
        assert_eq!(f.precision(), 8);
        assert!("padic:4".parse::<FieldDescriptor>().is_err());
        assert!("quaternion".parse::<FieldDescriptor>().is_err());
        assert_eq!(f.uniformizer_abs(), Some(0.2));
    }

    #[test]
    fn json_forms() {
        let r = serde_json::to_string(&Scalar::Real(1.5)).unwrap();
        assert_eq!(r, r#"{"field":"real","re":1.5}"#);
        let c = serde_json::to_string(&Scalar::Complex(Complex64::new(1.0, -2.0))).unwrap();
        assert_eq!(c, r#"{"field":"complex","re":1.0,"im":-2.0}"#);
        let q5 = FieldDescriptor::padic(5, 16).unwrap();
        let p = serde_json::to_string(&q5.from_i64(50)).unwrap();
        assert_eq!(p, r#"{"p":5,"v":2,"u":2}"#);
        for s in [r, c, p] {
            let back: Scalar = serde_json::from_str(&s).unwrap();
            assert_eq!(serde_json::to_string(&back).unwrap(), s);
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let q5 = FieldDescriptor::padic(5, 16).unwrap();
        let err = Scalar::Real(1.0).add(&q5.one()).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { .. }));
    }
}
