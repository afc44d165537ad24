//! Finite-dimensional Lie algebras over ℚ given by structure constants, and
//! exact checks of whether a set of elements generates the whole algebra.
//!
//! A `k`-element set can only generate `L` if its image spans the
//! abelianization `L/[L, L]`, since brackets vanish there. That gives the
//! lower bound `dim L/[L, L] ≤ k`, which is how `sl₂ ⊕ ℝ³` is certified not
//! 2-generated while `sl₂ ⊕ ℝ` is.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, rank, rational_to_string, rref, RatRow};

/// Coordinates of an element in the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement(pub RatRow);

impl AlgebraElement {
    pub fn from_i64s(xs: &[i64]) -> Self {
        AlgebraElement(xs.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(rational_to_string))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    name: String,
    names: Vec<String>,
    /// `c[(i·n + j)·n + k] = c_{ij}^k`, so `[e_i, e_j] = Σ_k c_{ij}^k e_k`.
    c: Vec<BigRational>,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity exactly.
    pub fn new(name: impl Into<String>, names: Vec<String>, c: Vec<BigRational>) -> Result<Self> {
        let n = names.len();
        if c.len() != n * n * n {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants for dimension {n}, got {}",
                n * n * n,
                c.len()
            )));
        }
        let l = LieAlgebra {
            name: name.into(),
            names,
            c,
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if l.constant(i, j, k) != &-l.constant(j, i, k) {
                        return Err(Error::InvalidAlgebra(format!(
                            "antisymmetry fails: c_{{{i}{j}}}^{k} = {} but c_{{{j}{i}}}^{k} = {}",
                            l.constant(i, j, k),
                            l.constant(j, i, k)
                        )));
                    }
                }
            }
        }
        let basis: Vec<AlgebraElement> = (0..n).map(|i| l.basis_element(i)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (x, y, z) = (&basis[i], &basis[j], &basis[k]);
                    let a = l.bracket_unchecked(x, &l.bracket_unchecked(y, z));
                    let b = l.bracket_unchecked(y, &l.bracket_unchecked(z, x));
                    let cc = l.bracket_unchecked(z, &l.bracket_unchecked(x, y));
                    if a.0.iter().zip(&b.0).zip(&cc.0).any(|((a, b), c)| !(a + b + c).is_zero()) {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            l.names[i], l.names[j], l.names[k]
                        )));
                    }
                }
            }
        }
        Ok(l)
    }

    /// Builds from the nonzero brackets `[e_i, e_j] = v` with `i < j`.
    fn from_brackets(name: &str, names: &[&str], brackets: &[(usize, usize, Vec<i64>)]) -> Self {
        let n = names.len();
        let mut c = vec![BigRational::zero(); n * n * n];
        for (i, j, v) in brackets {
            for (k, &x) in v.iter().enumerate() {
                c[(i * n + j) * n + k] = q(x);
                c[(j * n + i) * n + k] = q(-x);
            }
        }
        LieAlgebra::new(name, names.iter().map(|s| s.to_string()).collect(), c)
            .expect("built-in algebra is valid")
    }

    /// `sl₂` in the basis `(e, h, f)`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        LieAlgebra::from_brackets(
            "sl2",
            &["e", "h", "f"],
            &[(0, 1, vec![-2, 0, 0]), (0, 2, vec![0, 1, 0]), (1, 2, vec![0, 0, -2])],
        )
    }

    /// `so₃` in the basis `(x, y, z)` with `[x,y] = z` and cyclic.
    pub fn so3() -> Self {
        LieAlgebra::from_brackets(
            "so3",
            &["x", "y", "z"],
            &[(0, 1, vec![0, 0, 1]), (1, 2, vec![1, 0, 0]), (0, 2, vec![0, -1, 0])],
        )
    }

    /// Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg() -> Self {
        LieAlgebra::from_brackets("heis3", &["x", "y", "z"], &[(0, 1, vec![0, 0, 1])])
    }

    /// The `ax+b` algebra `[a, b] = b`.
    pub fn affine_line() -> Self {
        LieAlgebra::from_brackets("aff", &["a", "b"], &[(0, 1, vec![0, 1])])
    }

    pub fn abelian(m: usize) -> Self {
        let names = (1..=m).map(|i| format!("z{i}")).collect();
        LieAlgebra::new(
            if m == 1 { "R".to_string() } else { format!("R{m}") },
            names,
            vec![BigRational::zero(); m * m * m],
        )
        .expect("abelian algebra is valid")
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (a, b) = (self.dim(), other.dim());
        let n = a + b;
        let mut c = vec![BigRational::zero(); n * n * n];
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    c[(i * n + j) * n + k] = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    c[((a + i) * n + a + j) * n + a + k] = other.constant(i, j, k).clone();
                }
            }
        }
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            let mut tag = 2;
            while names.contains(&candidate) {
                candidate = format!("{name}_{tag}");
                tag += 1;
            }
            names.push(candidate);
        }
        LieAlgebra {
            name: format!("{}+{}", self.name, other.name),
            names,
            c,
        }
    }

    /// Parses `sl2+R3`, `so3 + heis3 + R`, … Summands: `sl2`, `so3`, `su2`,
    /// `heis3`, `aff`, `R` and `Rm`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut out: Option<LieAlgebra> = None;
        for token in spec.split('+').map(str::trim) {
            let summand = match token {
                "sl2" => LieAlgebra::sl2(),
                "so3" | "su2" => LieAlgebra::so3(),
                "heis3" => LieAlgebra::heisenberg(),
                "aff" => LieAlgebra::affine_line(),
                "R" => LieAlgebra::abelian(1),
                t if t.starts_with('R') => match t[1..].parse::<usize>() {
                    Ok(m) if m >= 1 => LieAlgebra::abelian(m),
                    _ => return Err(Error::parse_at_field(format!("bad summand '{t}'"), "algebra")),
                },
                t => {
                    return Err(Error::parse_at_field(
                        format!("unknown summand '{t}' (expected sl2, so3, su2, heis3, aff, R or Rm)"),
                        "algebra",
                    ))
                }
            };
            out = Some(match out {
                None => summand,
                Some(l) => l.direct_sum(&summand),
            });
        }
        out.ok_or_else(|| Error::parse_at_field("empty algebra", "algebra"))
    }

    /// Reads `{"name": ..., "basis": [names], "constants": c}` where
    /// `c[i][j]` is the coordinate vector of `[e_i, e_j]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text)?;
        let names: Vec<String> = doc
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse_at_field("missing array of names", "basis"))?
            .iter()
            .map(|v| v.as_str().map(str::to_string))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::parse_at_field("names are strings", "basis"))?;
        let n = names.len();
        let rows = doc
            .get("constants")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse_at_field("missing n×n×n array", "constants"))?;
        let mut c = Vec::with_capacity(n * n * n);
        if rows.len() != n {
            return Err(Error::parse_at_field(format!("expected {n} rows"), "constants"));
        }
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::parse_at_field(format!("expected {n} entries"), format!("constants[{i}]")))?;
            for (j, v) in row.iter().enumerate() {
                let field = format!("constants[{i}][{j}]");
                let v = v
                    .as_array()
                    .filter(|v| v.len() == n)
                    .ok_or_else(|| Error::parse_at_field(format!("expected {n} coordinates"), &field))?;
                for (k, x) in v.iter().enumerate() {
                    c.push(json_rational(x).ok_or_else(|| {
                        Error::parse_at_field("expected a rational", format!("{field}[{k}]"))
                    })?);
                }
            }
        }
        let name = doc.get("name").and_then(Value::as_str).unwrap_or("custom");
        LieAlgebra::new(name, names, c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement((0..self.dim()).map(|k| q((k == i) as i64)).collect())
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        for v in [x, y] {
            if v.dim() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: v.dim(),
                });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let n = self.dim();
        let mut out = vec![BigRational::zero(); n];
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        AlgebraElement(out)
    }

    /// Parses `e + 2h - 1/2*z1` against the basis names, or a coordinate
    /// array of rationals.
    pub fn parse_element(&self, v: &Value) -> Result<AlgebraElement> {
        let n = self.dim();
        match v {
            Value::Array(items) => {
                if items.len() != n {
                    return Err(Error::parse(format!("expected {n} coordinates, got {}", items.len())));
                }
                items
                    .iter()
                    .map(|x| json_rational(x).ok_or_else(|| Error::parse("expected a rational")))
                    .collect::<Result<_>>()
                    .map(AlgebraElement)
            }
            Value::String(s) => self.parse_expression(s),
            _ => Err(Error::parse("expected a coordinate array or an expression")),
        }
    }

    pub fn parse_expression(&self, s: &str) -> Result<AlgebraElement> {
        let bad = |why: String| Error::parse(format!("element '{s}': {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = vec![BigRational::zero(); self.dim()];
        if compact.is_empty() || compact == "0" {
            return Ok(AlgebraElement(out));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (q(-1), &term[1..]),
                b'+' => (q(1), &term[1..]),
                _ => (q(1), term),
            };
            let split = body
                .char_indices()
                .find(|&(_, c)| c.is_ascii_alphabetic() || c == '_')
                .map(|(i, _)| i)
                .ok_or_else(|| bad(format!("term '{term}' names no basis element")))?;
            let lead = body[..split].trim_end_matches('*');
            let coef = if lead.is_empty() {
                BigRational::one()
            } else {
                parse_rational(lead).ok_or_else(|| bad(format!("bad coefficient '{lead}'")))?
            };
            let name = &body[split..];
            let i = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| bad(format!("unknown basis element '{name}' (basis {})", self.names.join(","))))?;
            out[i] += sign * coef;
        }
        Ok(AlgebraElement(out))
    }

    pub fn display<'a>(&'a self, x: &'a AlgebraElement) -> impl fmt::Display + 'a {
        struct D<'a>(&'a LieAlgebra, &'a AlgebraElement);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                for (c, name) in self.1 .0.iter().zip(&self.0.names) {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c < &BigRational::zero();
                    match (first, neg) {
                        (true, true) => f.write_str("-")?,
                        (false, true) => f.write_str(" - ")?,
                        (false, false) => f.write_str(" + ")?,
                        (true, false) => {}
                    }
                    first = false;
                    let a = if neg { -c } else { c.clone() };
                    if a.is_one() {
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
        D(self, x)
    }
}

fn json_rational(v: &Value) -> Option<BigRational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        _ => None,
    }
}

/// Reduced basis (RREF rows) of the subalgebra generated by `s`.
pub fn generated_subalgebra(l: &LieAlgebra, s: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
    for x in s {
        if x.dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                got: x.dim(),
            });
        }
    }
    let mut basis: Vec<RatRow> = rref(s.iter().map(|x| x.0.clone()).collect()).0;
    loop {
        let mut rows = basis.clone();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let b = l.bracket_unchecked(
                    &AlgebraElement(basis[i].clone()),
                    &AlgebraElement(basis[j].clone()),
                );
                if !b.is_zero() {
                    rows.push(b.0);
                }
            }
        }
        let next = rref(rows).0;
        if next.len() == basis.len() {
            return Ok(next.into_iter().map(AlgebraElement).collect());
        }
        basis = next;
    }
}

pub fn generates(l: &LieAlgebra, s: &[AlgebraElement]) -> Result<bool> {
    Ok(generated_subalgebra(l, s)?.len() == l.dim())
}

/// Basis of `[L, L]`.
pub fn derived_algebra(l: &LieAlgebra) -> Vec<AlgebraElement> {
    let n = l.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let b = l.bracket_unchecked(&l.basis_element(i), &l.basis_element(j));
            if !b.is_zero() {
                rows.push(b.0);
            }
        }
    }
    rref(rows).0.into_iter().map(AlgebraElement).collect()
}

pub fn abelianization_dim(l: &LieAlgebra) -> usize {
    l.dim() - derived_algebra(l).len()
}

/// Image of a set in `L/[L, L]`, which bounds what it can generate.
#[derive(Debug, Clone, Serialize)]
pub struct AbelianizationObstruction {
    pub abelianization_dim: usize,
    pub derived_dim: usize,
    /// Rank of the image of the set in `L/[L, L]`.
    pub image_rank: usize,
    /// Set size.
    pub size: usize,
    /// `image_rank < abelianization_dim`: the set cannot generate.
    pub obstructs: bool,
    /// `size < abelianization_dim`: no set of this size can generate.
    pub obstructs_all_sets_of_this_size: bool,
}

pub fn abelianization_obstruction(
    l: &LieAlgebra,
    s: &[AlgebraElement],
) -> Result<AbelianizationObstruction> {
    for x in s {
        if x.dim() != l.dim() {
            return Err(Error::DimensionMismatch {
                expected: l.dim(),
                got: x.dim(),
            });
        }
    }
    let derived: Vec<RatRow> = derived_algebra(l).into_iter().map(|x| x.0).collect();
    let derived_dim = derived.len();
    let ab = l.dim() - derived_dim;
    let mut rows = derived;
    rows.extend(s.iter().map(|x| x.0.clone()));
    let image_rank = rank(&rows) - derived_dim;
    Ok(AbelianizationObstruction {
        abelianization_dim: ab,
        derived_dim,
        image_rank,
        size: s.len(),
        obstructs: image_rank < ab,
        obstructs_all_sets_of_this_size: s.len() < ab,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MinGenerators {
    pub algebra: String,
    pub dim: usize,
    pub lower: usize,
    pub lower_reason: String,
    pub abelianization_dim: usize,
    pub upper: usize,
    /// A generating set of size `upper`.
    pub witness: Vec<AlgebraElement>,
    pub witness_display: Vec<String>,
    pub exact: bool,
    pub trials: usize,
    pub seed: u64,
}

pub const WITNESS_RANGE: i64 = 5;

/// Bounds on the minimal number of generators. The lower bound is
/// `max(dim L/[L,L], min(dim L, 2))` when `L` is non-abelian (one element
/// spans a 1-dimensional subalgebra), and `dim L` for abelian `L`. The upper
/// bound is the least `k` for which one of `trials` random `k`-tuples with
/// integer coordinates in `[−5, 5]` generates; the standard basis is the
/// fallback witness.
pub fn min_generators_bound(l: &LieAlgebra, trials: usize, seed: u64) -> Result<MinGenerators> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let n = l.dim();
    let ab = abelianization_dim(l);
    let (lower, lower_reason) = if l.is_abelian() {
        (n, format!("abelian: k elements span at most k of {n} dimensions"))
    } else if ab >= 2 {
        (ab, format!("abelianization L/[L,L] has dimension {ab}"))
    } else {
        (
            2.min(n),
            format!("non-abelian: one element spans a 1-dimensional subalgebra (abelianization dimension {ab})"),
        )
    };
    let mut found: Option<(usize, Vec<AlgebraElement>)> = None;
    'outer: for k in lower..n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        for _ in 0..trials {
            let s: Vec<AlgebraElement> = (0..k)
                .map(|_| {
                    AlgebraElement(
                        (0..n)
                            .map(|_| q(rng.random_range(-WITNESS_RANGE..=WITNESS_RANGE)))
                            .collect(),
                    )
                })
                .collect();
            if generates(l, &s)? {
                found = Some((k, s));
                break 'outer;
            }
        }
    }
    let (upper, witness) = found.unwrap_or_else(|| (n, (0..n).map(|i| l.basis_element(i)).collect()));
    let witness_display = witness.iter().map(|x| l.display(x).to_string()).collect();
    Ok(MinGenerators {
        algebra: l.name().to_string(),
        dim: n,
        lower,
        lower_reason,
        abelianization_dim: ab,
        upper,
        witness,
        witness_display,
        exact: upper == lower,
        trials,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(l: &LieAlgebra, s: &str) -> AlgebraElement {
        l.parse_expression(s).unwrap()
    }

    #[test]
    fn sl2_brackets() {
        let l = LieAlgebra::sl2();
        let (e, h, f) = (el(&l, "e"), el(&l, "h"), el(&l, "f"));
        assert_eq!(l.bracket(&e, &f).unwrap(), h);
        assert_eq!(l.bracket(&h, &e).unwrap(), el(&l, "2e"));
        assert_eq!(l.bracket(&h, &f).unwrap(), el(&l, "-2f"));
        let x = el(&l, "3e - 1/2*h + f");
        assert!(l.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn abelian_brackets_vanish() {
        let l = LieAlgebra::abelian(3);
        let x = AlgebraElement::from_i64s(&[1, 2, 3]);
        let y = AlgebraElement::from_i64s(&[-4, 0, 7]);
        assert!(l.bracket(&x, &y).unwrap().is_zero());
        assert!(!generates(&l, &[x, y]).unwrap());
    }

    #[test]
    fn generation_examples() {
        let l = LieAlgebra::sl2();
        assert!(generates(&l, &[el(&l, "e"), el(&l, "f")]).unwrap());
        assert!(!generates(&l, &[el(&l, "e"), el(&l, "h")]).unwrap());

        let l = LieAlgebra::parse("sl2+R").unwrap();
        assert_eq!(l.names(), &["e", "h", "f", "z1"]);
        assert!(generates(&l, &[el(&l, "e + z1"), el(&l, "f")]).unwrap());
        assert!(!generates(&l, &[el(&l, "e"), el(&l, "f")]).unwrap());

        let l = LieAlgebra::parse("sl2+R3").unwrap();
        let s = [el(&l, "e + z1 + 2z2"), el(&l, "f - z3")];
        assert!(!generates(&l, &s).unwrap());
        let ob = abelianization_obstruction(&l, &s).unwrap();
        assert_eq!(ob.abelianization_dim, 3);
        assert!(ob.obstructs && ob.obstructs_all_sets_of_this_size);
    }

    #[test]
    fn direct_sum_renames_collisions() {
        let l = LieAlgebra::parse("sl2+sl2+R2+R").unwrap();
        assert_eq!(l.dim(), 9);
        assert_eq!(l.names()[3..6], ["e_2", "h_2", "f_2"]);
        assert_eq!(l.names()[8], "z1_2");
        assert_eq!(abelianization_dim(&l), 3);
    }

    #[test]
    fn jacobi_rejects_perturbation() {
        let l = LieAlgebra::sl2();
        let n = 3;
        let mut lopsided = l.c.clone();
        lopsided[n * n] += q(1);
        let bad = LieAlgebra::new("bad", l.names.clone(), lopsided);
        assert!(matches!(bad, Err(Error::InvalidAlgebra(m)) if m.contains("antisymmetry")));

        // [e, f] gains an e component
        let mut c = l.c.clone();
        c[2 * n] += q(1);
        c[(2 * n) * n] -= q(1);
        let bad = LieAlgebra::new("bad", l.names.clone(), c);
        assert!(matches!(bad, Err(Error::InvalidAlgebra(m)) if m.contains("Jacobi")));
    }

    #[test]
    fn min_generators() {
        let m = min_generators_bound(&LieAlgebra::parse("sl2+R3").unwrap(), 50, 1).unwrap();
        assert_eq!((m.lower, m.upper), (3, 3));
        assert!(m.exact);
        let m = min_generators_bound(&LieAlgebra::sl2(), 50, 1).unwrap();
        assert_eq!((m.lower, m.upper), (2, 2));
        let m = min_generators_bound(&LieAlgebra::abelian(4), 5, 1).unwrap();
        assert_eq!((m.lower, m.upper), (4, 4));
        let l = LieAlgebra::parse("sl2+R3").unwrap();
        assert!(generates(&l, &m_witness(&l)).unwrap());
    }

    fn m_witness(l: &LieAlgebra) -> Vec<AlgebraElement> {
        min_generators_bound(l, 50, 9).unwrap().witness
    }

    #[test]
    fn json_algebra() {
        let l = LieAlgebra::from_json(
            r#"{"basis": ["a", "b"], "constants": [[[0,0],[0,1]], [[0,"-1"],[0,0]]]}"#,
        )
        .unwrap();
        assert_eq!(l, LieAlgebra { name: "custom".into(), ..LieAlgebra::affine_line() });
        assert!(LieAlgebra::from_json(r#"{"basis": ["a", "b"], "constants": [[[0,0],[0,1]], [[0,1],[0,0]]]}"#).is_err());
    }
}
