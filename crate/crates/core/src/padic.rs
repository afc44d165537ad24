//! Elements of ℚ_p stored as `p^v · u` with a unit mantissa `u` known modulo
//! `p^digits`.
//!
//! Every number carries its relative precision. Multiplication and inversion
//! keep the smaller precision of their inputs; addition loses one digit for
//! every power of `p` that cancels. When cancellation eats every digit of an
//! operand whose precision was already reduced the result is undefined and
//! [`Error::PrecisionLoss`] is returned. Two numbers at full working precision
//! that cancel completely are treated as exact negatives and sum to zero.

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mantissa digits used when nothing else is configured.
pub const DEFAULT_PRECISION: u32 = 16;

/// Largest modulus `p^N` we allow; products of two residues must fit in `u128`.
const MAX_MODULUS: u64 = 1 << 62;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates `(p, N)` and returns `p^N`.
pub fn check_params(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidField("p-adic precision must be at least 1".into()));
    }
    checked_pow(p, n)
        .filter(|&m| m <= MAX_MODULUS)
        .ok_or_else(|| Error::InvalidField(format!("{p}^{n} exceeds the supported modulus 2^62")))
}

fn checked_pow(p: u64, k: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..k {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

pub(crate) fn pow(p: u64, k: u32) -> u64 {
    checked_pow(p, k).expect("modulus bounded by check_params")
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of a unit modulo `m`. Panics if `a` is not invertible.
pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "{a} is not a unit modulo {m}");
    old_s.rem_euclid(m as i128) as u64
}

/// p-adic valuation of a nonzero integer, together with its prime-to-p part.
pub(crate) fn split_u64(mut x: u64, p: u64) -> (u32, u64) {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    (v, x)
}

fn split_big(x: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return (v, x);
        }
        x = q;
        v += 1;
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PadicNumber {
    p: u64,
    precision: u32,
    /// `None` encodes zero.
    valuation: Option<i64>,
    unit: u64,
    digits: u32,
}

impl PadicNumber {
    pub fn zero(p: u64, precision: u32) -> Self {
        PadicNumber {
            p,
            precision,
            valuation: None,
            unit: 0,
            digits: precision,
        }
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self::from_parts(p, precision, 0, 1).expect("1 is a unit")
    }

    /// The uniformizer `π = p`, with `|π| = 1/p`.
    pub fn uniformizer(p: u64, precision: u32) -> Self {
        Self::from_parts(p, precision, 1, 1).expect("1 is a unit")
    }

    /// Builds `p^v · u`. `u` may contain factors of `p`; they are moved into the
    /// valuation. `u = 0` yields zero.
    pub fn from_parts(p: u64, precision: u32, valuation: i64, unit: u64) -> Result<Self> {
        let modulus = check_params(p, precision)?;
        if unit == 0 {
            return Ok(Self::zero(p, precision));
        }
        let (shift, unit) = split_u64(unit, p);
        Ok(PadicNumber {
            p,
            precision,
            valuation: Some(valuation + shift as i64),
            unit: unit % modulus,
            digits: precision,
        })
    }

    pub fn from_i64(p: u64, precision: u32, x: i64) -> Result<Self> {
        Self::from_ratio(p, precision, &BigInt::from(x), &BigInt::one())
    }

    /// The image of the rational `num/den` in ℚ_p.
    pub fn from_ratio(p: u64, precision: u32, num: &BigInt, den: &BigInt) -> Result<Self> {
        let modulus = check_params(p, precision)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(p, precision));
        }
        let (vn, un) = split_big(num, p);
        let (vd, ud) = split_big(den, p);
        let m = BigInt::from(modulus);
        let un = un.mod_floor(&m).to_u64().expect("reduced below modulus");
        let ud = ud.mod_floor(&m).to_u64().expect("reduced below modulus");
        Ok(PadicNumber {
            p,
            precision,
            valuation: Some(vn - vd),
            unit: mul_mod(un, inv_mod(ud, modulus), modulus),
            digits: precision,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Working precision `N` of the field this number lives in.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Number of mantissa digits still known (at most `N`).
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// `p^(-v)`, and 0 for zero.
    pub fn abs_value(&self) -> f64 {
        match self.valuation {
            None => 0.0,
            Some(v) => (self.p as f64).powi(-(v as i32)),
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.precision != other.precision {
            return Err(Error::FieldMismatch {
                left: format!("Q_{} (N={})", self.p, self.precision),
                right: format!("Q_{} (N={})", other.p, other.precision),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let (vx, vy) = match (self.valuation, other.valuation) {
            (None, _) => return Ok(*other),
            (_, None) => return Ok(*self),
            (Some(a), Some(b)) => (a, b),
        };
        let m = vx.min(vy);
        let abs_x = vx + self.digits as i64;
        let abs_y = vy + other.digits as i64;
        let known = (abs_x.min(abs_y) - m) as u32;
        let modulus = pow(self.p, known);
        let term = |unit: u64, shift: i64| -> u64 {
            if shift >= known as i64 {
                0
            } else {
                mul_mod(unit % modulus, pow(self.p, shift as u32), modulus)
            }
        };
        let s = (term(self.unit, vx - m) as u128 + term(other.unit, vy - m) as u128)
            % modulus as u128;
        let s = s as u64;
        if s == 0 {
            if self.digits == self.precision && other.digits == other.precision {
                return Ok(Self::zero(self.p, self.precision));
            }
            return Err(Error::PrecisionLoss { digits: known });
        }
        let (k, unit) = split_u64(s, self.p);
        Ok(PadicNumber {
            p: self.p,
            precision: self.precision,
            valuation: Some(m + k as i64),
            unit,
            digits: known - k,
        })
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        let modulus = pow(self.p, self.digits);
        PadicNumber {
            unit: (modulus - self.unit % modulus) % modulus,
            ..*self
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let (vx, vy) = match (self.valuation, other.valuation) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(Self::zero(self.p, self.precision)),
        };
        let digits = self.digits.min(other.digits);
        let modulus = pow(self.p, digits);
        Ok(PadicNumber {
            p: self.p,
            precision: self.precision,
            valuation: Some(vx + vy),
            unit: mul_mod(self.unit % modulus, other.unit % modulus, modulus),
            digits,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation.ok_or(Error::DivisionByZero)?;
        let modulus = pow(self.p, self.digits);
        Ok(PadicNumber {
            valuation: Some(-v),
            unit: inv_mod(self.unit % modulus, modulus),
            ..*self
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// `(p^v, u)` as an exact rational representative `p^v · u`.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self.valuation {
            None => (BigInt::zero(), BigInt::one()),
            Some(v) => {
                let pv = num::pow(BigInt::from(self.p), v.unsigned_abs() as usize);
                let u = BigInt::from(self.unit);
                if v >= 0 {
                    (u * pv, BigInt::one())
                } else {
                    (u, pv)
                }
            }
        }
    }

    /// Residue of `p^(-shift) · self` modulo `p^N`, for callers that scale a
    /// whole matrix into ℤ_p. Requires `valuation ≥ shift`.
    pub(crate) fn scaled_residue(&self, shift: i64) -> u64 {
        match self.valuation {
            None => 0,
            Some(v) => {
                debug_assert!(v >= shift);
                let e = v - shift;
                if e >= self.precision as i64 {
                    0
                } else {
                    let modulus = pow(self.p, self.precision);
                    mul_mod(self.unit, pow(self.p, e as u32), modulus)
                }
            }
        }
    }

    /// Inverse of [`scaled_residue`](Self::scaled_residue) for an element of ℤ_p
    /// known modulo `p^N`: the digits above `p^N` are unknown, so the relative
    /// precision is `N - v`.
    pub(crate) fn from_residue(p: u64, precision: u32, residue: u64, shift: i64) -> Self {
        if residue == 0 {
            return Self::zero(p, precision);
        }
        let (v, unit) = split_u64(residue, p);
        let digits = precision - v;
        PadicNumber {
            p,
            precision,
            valuation: Some(v as i64 + shift),
            unit: unit % pow(p, digits),
            digits,
        }
    }
}

/// Equality at the common known precision.
/// Hashes only the fields equality compares exactly.
impl std::hash::Hash for PadicNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.p, self.precision, self.valuation).hash(state);
    }
}

impl PartialEq for PadicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p || self.precision != other.precision {
            return false;
        }
        match (self.valuation, other.valuation) {
            (None, None) => true,
            (Some(a), Some(b)) if a == b => {
                let m = pow(self.p, self.digits.min(other.digits));
                self.unit % m == other.unit % m
            }
            _ => false,
        }
    }
}

impl std::fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.valuation {
            None => write!(f, "0"),
            Some(0) => write!(f, "{} + O({}^{})", self.unit, self.p, self.digits),
            Some(v) => write!(
                f,
                "{}^{} * {} + O({}^{})",
                self.p,
                v,
                self.unit,
                self.p,
                v + self.digits as i64
            ),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PadicRepr {
    p: u64,
    v: Option<i64>,
    u: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
}

impl Serialize for PadicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicRepr {
            p: self.p,
            v: self.valuation,
            u: self.unit,
            n: (self.precision != DEFAULT_PRECISION).then_some(self.precision),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PadicRepr::deserialize(d)?;
        let n = r.n.unwrap_or(DEFAULT_PRECISION);
        let v = match r.v {
            None if r.u == 0 => return Ok(Self::zero(r.p, n)),
            None => return Err(serde::de::Error::custom("nonzero unit with null valuation")),
            Some(v) => v,
        };
        Self::from_parts(r.p, n, v, r.u).map_err(serde::de::Error::custom)
    }
}

/// Residues modulo `p^N`, used by the elimination and enumeration routines that
/// work inside ℤ_p with a fixed absolute precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Residues {
    pub p: u64,
    pub n: u32,
    pub modulus: u64,
}

impl Residues {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Ok(Residues {
            p,
            n,
            modulus: check_params(p, n)?,
        })
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.modulus - b % self.modulus)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.modulus)
    }

    /// Valuation capped at `N` (zero residue reports `N`).
    pub fn val(&self, a: u64) -> u32 {
        if a == 0 {
            self.n
        } else {
            split_u64(a, self.p).0
        }
    }

    /// Exact quotient `a / p^k`, for `val(a) ≥ k`. The result is determined
    /// modulo `p^(N-k)`; we return the canonical representative.
    pub fn div_pow(&self, a: u64, k: u32) -> u64 {
        debug_assert!(self.val(a) >= k);
        a / pow(self.p, k)
    }

    pub fn unit_inv(&self, a: u64) -> u64 {
        inv_mod(a, self.modulus)
    }

    #[cfg(test)]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.modulus as i128) as u64
    }
}
