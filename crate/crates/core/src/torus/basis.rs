//! Declared bases `Θ = {1, θ_1, …, θ_m}` of reals taken to be linearly
//! independent over ℚ, and exact ℚ-linear combinations over them.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, rational_to_string};

#[derive(Debug, Clone, PartialEq)]
enum Symbol {
    One,
    Sqrt(u64),
    Cbrt(u64),
    Pi,
    E,
    Ln(u64),
    Named(f64),
}

/// A basis of symbols. Index 0 is always the constant `1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    names: Vec<String>,
    symbols: Vec<Symbol>,
    values: Vec<f64>,
}

fn integer_root(n: u64, k: u32) -> Option<u64> {
    let r = (n as f64).powf(1.0 / k as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c.checked_pow(k) == Some(n))
}

/// Smallest `b` with `n = b^j` for some `j ≥ 1`.
fn power_base(n: u64) -> u64 {
    (2..64u32)
        .rev()
        .find_map(|k| integer_root(n, k).filter(|&b| b > 1))
        .map_or(n, power_base)
}

fn parse_symbol(token: &str) -> Result<(String, Symbol)> {
    let bad = |why: &str| Error::parse_at_field(format!("basis symbol '{token}': {why}"), "basis");
    let num_after = |prefix: &str| -> Result<Option<u64>> {
        match token.strip_prefix(prefix) {
            Some(rest) => rest.parse::<u64>().map(Some).map_err(|_| bad("expected an integer")),
            None => Ok(None),
        }
    };
    if let Some((name, value)) = token.split_once('=') {
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(bad("names are alphanumeric"));
        }
        if name.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(bad("names start with a letter"));
        }
        let v: f64 = value.trim().parse().map_err(|_| bad("value is not a number"))?;
        if !v.is_finite() {
            return Err(bad("value is not finite"));
        }
        return Ok((name.to_string(), Symbol::Named(v)));
    }
    let symbol = match token {
        "1" => Symbol::One,
        "pi" => Symbol::Pi,
        "e" => Symbol::E,
        _ => {
            if let Some(n) = num_after("sqrt")? {
                if n < 2 || integer_root(n, 2).is_some() {
                    return Err(bad("square root of a perfect square is rational"));
                }
                Symbol::Sqrt(n)
            } else if let Some(n) = num_after("cbrt")? {
                if n < 2 || integer_root(n, 3).is_some() {
                    return Err(bad("cube root of a perfect cube is rational"));
                }
                Symbol::Cbrt(n)
            } else if let Some(n) = num_after("ln")? {
                if n < 2 {
                    return Err(bad("ln of 0 or 1"));
                }
                Symbol::Ln(n)
            } else {
                return Err(bad("expected 1, sqrtN, cbrtN, pi, e, lnN or name=value"));
            }
        }
    };
    Ok((token.to_string(), symbol))
}

fn value(s: &Symbol) -> f64 {
    match *s {
        Symbol::One => 1.0,
        Symbol::Sqrt(n) => (n as f64).sqrt(),
        Symbol::Cbrt(n) => (n as f64).cbrt(),
        Symbol::Pi => std::f64::consts::PI,
        Symbol::E => std::f64::consts::E,
        Symbol::Ln(n) => (n as f64).ln(),
        Symbol::Named(v) => v,
    }
}

/// Detectable ℚ-linear relations between two symbols.
fn dependent(a: &Symbol, b: &Symbol) -> bool {
    match (a, b) {
        (Symbol::Sqrt(m), Symbol::Sqrt(n)) => {
            integer_root(m / m.gcd(n) * (n / m.gcd(n)), 2).is_some()
        }
        (Symbol::Cbrt(m), Symbol::Cbrt(n)) => {
            let g = m.gcd(n);
            let (m, n) = (m / g, n / g);
            m.checked_mul(n)
                .and_then(|x| x.checked_mul(n))
                .is_some_and(|x| integer_root(x, 3).is_some())
        }
        (Symbol::Ln(m), Symbol::Ln(n)) => power_base(*m) == power_base(*n),
        _ => a == b,
    }
}

impl Basis {
    /// Parses a comma-separated list such as `1,sqrt2,pi,phi=1.618`. The
    /// constant `1` is prepended when absent.
    pub fn parse(spec: &str) -> Result<Basis> {
        let tokens: Vec<&str> = spec
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        Basis::from_tokens(&tokens)
    }

    pub fn from_tokens(tokens: &[&str]) -> Result<Basis> {
        let mut names = vec!["1".to_string()];
        let mut symbols = vec![Symbol::One];
        for token in tokens {
            let (name, symbol) = parse_symbol(token)?;
            if symbol == Symbol::One {
                continue;
            }
            if names.contains(&name) {
                return Err(Error::parse_at_field(format!("duplicate basis symbol '{name}'"), "basis"));
            }
            if let Some(i) = symbols.iter().position(|s| dependent(s, &symbol)) {
                return Err(Error::parse_at_field(
                    format!("'{name}' is a rational multiple of '{}'", names[i]),
                    "basis",
                ));
            }
            names.push(name);
            symbols.push(symbol);
        }
        let values = symbols.iter().map(value).collect();
        Ok(Basis {
            names,
            symbols,
            values,
        })
    }

    /// At least 1, since index 0 is the constant.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses `3/4 + 2sqrt2 - sqrt3/5` style expressions.
    pub fn parse_expression(&self, expr: &str) -> Result<SymbolicReal> {
        let bad = |why: String| Error::parse(format!("expression '{expr}': {why}"));
        let mut coeffs = vec![BigRational::zero(); self.len()];
        let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let has_e = self.index_of("e").is_some();
        for (i, c) in compact.char_indices() {
            let after_exponent = !has_e
                && i > 0
                && matches!(compact.as_bytes()[i - 1], b'e' | b'E')
                && compact[..i - 1].ends_with(|c: char| c.is_ascii_digit() || c == '.');
            if (c == '+' || c == '-') && i > start && !after_exponent {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(bad("dangling sign".into()));
            }
            if let Some(q) = parse_rational(body) {
                coeffs[0] += q * BigInt::from(sign);
                continue;
            }
            // [coefficient][*]name[/denominator]
            let name_start = body
                .char_indices()
                .find(|&(_, c)| c.is_ascii_alphabetic() || c == '_')
                .map(|(i, _)| i)
                .ok_or_else(|| bad(format!("cannot read term '{term}'")))?;
            let lead = body[..name_start].trim_end_matches('*');
            let coef = if lead.is_empty() {
                BigRational::one()
            } else {
                parse_rational(lead).ok_or_else(|| bad(format!("bad coefficient '{lead}'")))?
            };
            let rest = &body[name_start..];
            let (name, den) = match rest.split_once('/') {
                Some((n, d)) => {
                    let d: BigInt = d.parse().map_err(|_| bad(format!("bad denominator '{d}'")))?;
                    if d.is_zero() {
                        return Err(bad("division by zero".into()));
                    }
                    (n, d)
                }
                None => (rest, BigInt::one()),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| bad(format!("unknown symbol '{name}' (basis {})", self)))?;
            coeffs[i] += coef * BigInt::from(sign) / den;
        }
        Ok(SymbolicReal { coeffs })
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, name) in self.names.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match self.symbols[i] {
                Symbol::Named(v) => write!(f, "{name}={v}")?,
                _ => f.write_str(name)?,
            }
        }
        Ok(())
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.to_string().split(','))
    }
}

/// `Σ c_b θ_b` with rational `c_b`; coefficient 0 belongs to the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicReal {
    coeffs: Vec<BigRational>,
}

impl SymbolicReal {
    pub fn zero(basis_len: usize) -> Self {
        SymbolicReal {
            coeffs: vec![BigRational::zero(); basis_len],
        }
    }

    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Self {
        SymbolicReal { coeffs }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn irrational_part(&self) -> &[BigRational] {
        &self.coeffs[1..]
    }

    pub fn is_rational(&self) -> bool {
        self.irrational_part().iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        SymbolicReal {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        SymbolicReal {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// Reduces the rational coefficient into `[0, 1)`.
    pub fn mod_one(mut self) -> Self {
        let c = &self.coeffs[0];
        self.coeffs[0] = c - c.floor();
        self
    }

    pub fn approx(&self, basis: &Basis) -> f64 {
        self.coeffs
            .iter()
            .zip(basis.values())
            .map(|(c, v)| c.to_f64().unwrap_or(f64::NAN) * v)
            .sum()
    }

    pub fn display<'a>(&'a self, basis: &'a Basis) -> impl fmt::Display + 'a {
        DisplayWith { x: self, basis }
    }
}

struct DisplayWith<'a> {
    x: &'a SymbolicReal,
    basis: &'a Basis,
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.x.coeffs.iter().zip(self.basis.names()) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if name == "1" {
                f.write_str(&rational_to_string(&a))?;
            } else if a.is_one() {
                f.write_str(name)?;
            } else {
                write!(f, "{}*{name}", rational_to_string(&a))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for SymbolicReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(rational_to_string))
    }
}
