//! Finitely generated subgroups of the torus `𝕋^d = ℝ^d/ℤ^d` with
//! coordinates in a declared ℚ-independent basis.
//!
//! The closure of `⟨α_1, …, α_r⟩` is the annihilator of the character lattice
//! `K = {k ∈ ℤ^d : k·α_j ∈ ℤ for all j}`. It has dimension `d − rank K` and
//! `[K_sat : K]` components, where `K_sat` is the saturation of `K`; the
//! subgroup is dense exactly when `K = 0`.
//!
//! [`reduce_generators`] extracts at most `d` integer words in the inputs
//! that still generate a dense subgroup: take an element of infinite order,
//! raise it to the component count so its closure `C` is a connected subtorus,
//! project everything to `𝕋^d / C ≅ 𝕋^{d − dim C}` through a basis of the
//! (saturated) annihilator of `C`, and recurse.

mod basis;
mod bound;
mod probe;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{self, parse_rational, IntRow};

pub use basis::{Basis, SymbolicReal};
pub use bound::{generator_bound, GeneratorBound, GroupExample, NON_ABELIAN_EXAMPLES};
pub use probe::{numeric_density_probe, ProbeResult};

/// A point of `𝕋^d`, canonically reduced so each rational coefficient lies in
/// `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TorusElement {
    coordinates: Vec<SymbolicReal>,
}

impl TorusElement {
    pub fn new(coordinates: Vec<SymbolicReal>) -> Self {
        TorusElement {
            coordinates: coordinates.into_iter().map(SymbolicReal::mod_one).collect(),
        }
    }

    pub fn zero(dim: usize, basis_len: usize) -> Self {
        TorusElement {
            coordinates: vec![SymbolicReal::zero(basis_len); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[SymbolicReal] {
        &self.coordinates
    }

    /// Finite order exactly when every coordinate is rational.
    pub fn has_infinite_order(&self) -> bool {
        !self.coordinates.iter().all(SymbolicReal::is_rational)
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        TorusElement::new(
            self.coordinates
                .iter()
                .zip(&other.coordinates)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> TorusElement {
        TorusElement::new(self.coordinates.iter().map(|a| a.scale(k)).collect())
    }

    /// Image under the character map `x ↦ (k_t · x)_t`.
    fn project(&self, characters: &[IntRow], basis_len: usize) -> TorusElement {
        TorusElement::new(
            characters
                .iter()
                .map(|k| {
                    k.iter()
                        .zip(&self.coordinates)
                        .fold(SymbolicReal::zero(basis_len), |acc, (ki, x)| acc.add(&x.scale(ki)))
                })
                .collect(),
        )
    }

    pub fn approx(&self, basis: &Basis) -> Vec<f64> {
        self.coordinates
            .iter()
            .map(|c| {
                let x = c.approx(basis);
                x - x.floor()
            })
            .collect()
    }

    pub fn display<'a>(&'a self, basis: &'a Basis) -> impl std::fmt::Display + 'a {
        struct D<'a>(&'a TorusElement, &'a Basis);
        impl std::fmt::Display for D<'_> {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("(")?;
                for (i, c) in self.0.coordinates.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", c.display(self.1))?;
                }
                f.write_str(")")
            }
        }
        D(self, basis)
    }
}

/// Generators of a subgroup of `𝕋^dim` over a common basis.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSet {
    basis: Basis,
    dim: usize,
    generators: Vec<TorusElement>,
}

impl GeneratorSet {
    pub fn new(basis: Basis, dim: usize, generators: Vec<TorusElement>) -> Result<Self> {
        for (j, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(Error::parse_at_field(
                    format!("expected {dim} coordinates, got {}", g.dim()),
                    format!("generators[{j}]"),
                ));
            }
            if let Some(c) = g.coordinates.iter().find(|c| c.coefficients().len() != basis.len()) {
                return Err(Error::parse_at_field(
                    format!(
                        "expected {} basis coefficients, got {}",
                        basis.len(),
                        c.coefficients().len()
                    ),
                    format!("generators[{j}]"),
                ));
            }
        }
        Ok(GeneratorSet {
            basis,
            dim,
            generators,
        })
    }

    /// Parses generators from expression strings, e.g. `["sqrt2", "1/3"]`.
    pub fn from_expressions(basis: Basis, dim: usize, gens: &[&[&str]]) -> Result<Self> {
        let generators = gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|e| basis.parse_expression(e))
                    .collect::<Result<Vec<_>>>()
                    .map(TorusElement::new)
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(basis, dim, generators)
    }

    /// Reads `{"basis": ..., "dimension": d, "generators": [...]}` or a bare
    /// array of generators. Each generator is a list of coordinates; a
    /// coordinate is an expression string, a rational number, or an array of
    /// coefficients over the basis. `basis` overrides the one in the document.
    pub fn from_json(text: &str, basis: Option<Basis>) -> Result<Self> {
        let doc: Value = serde_json::from_str(text)?;
        let (doc_basis, dim, gens) = match &doc {
            Value::Array(a) => (None, None, a),
            Value::Object(o) => {
                let b = match o.get("basis") {
                    None | Some(Value::Null) => None,
                    Some(Value::String(s)) => Some(Basis::parse(s)?),
                    Some(Value::Array(items)) => {
                        let tokens = items
                            .iter()
                            .map(|v| {
                                v.as_str().ok_or_else(|| {
                                    Error::parse_at_field("basis entries are strings", "basis")
                                })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Some(Basis::from_tokens(&tokens)?)
                    }
                    Some(_) => {
                        return Err(Error::parse_at_field("expected a string or array", "basis"))
                    }
                };
                let dim = match o.get("dimension") {
                    None => None,
                    Some(v) => Some(v.as_u64().ok_or_else(|| {
                        Error::parse_at_field("expected a non-negative integer", "dimension")
                    })? as usize),
                };
                let gens = o
                    .get("generators")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::parse_at_field("missing array", "generators"))?;
                (b, dim, gens)
            }
            _ => return Err(Error::parse("expected an object or an array of generators")),
        };
        let basis = basis.or(doc_basis).unwrap_or(Basis::parse("1")?);
        let mut generators = Vec::with_capacity(gens.len());
        for (j, g) in gens.iter().enumerate() {
            let coords = g
                .as_array()
                .ok_or_else(|| Error::parse_at_field("expected an array", format!("generators[{j}]")))?;
            let coords = coords
                .iter()
                .enumerate()
                .map(|(i, c)| parse_coordinate(&basis, c, &format!("generators[{j}][{i}]")))
                .collect::<Result<Vec<_>>>()?;
            generators.push(TorusElement::new(coords));
        }
        let dim = match (dim, generators.first()) {
            (Some(d), _) => d,
            (None, Some(g)) => g.dim(),
            (None, None) => {
                return Err(Error::parse_at_field(
                    "needed when there are no generators",
                    "dimension",
                ))
            }
        };
        GeneratorSet::new(basis, dim, generators)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[TorusElement] {
        &self.generators
    }

    /// `Σ word_j · α_j`.
    pub fn evaluate(&self, word: &[i64]) -> TorusElement {
        word.iter().zip(&self.generators).fold(
            TorusElement::zero(self.dim, self.basis.len()),
            |acc, (&w, g)| acc.add(&g.scale(&BigInt::from(w))),
        )
    }

    fn with_generators(&self, dim: usize, generators: Vec<TorusElement>) -> GeneratorSet {
        GeneratorSet {
            basis: self.basis.clone(),
            dim,
            generators,
        }
    }
}

fn parse_coordinate(basis: &Basis, v: &Value, field: &str) -> Result<SymbolicReal> {
    let rational = |v: &Value| -> Option<BigRational> {
        match v {
            Value::Number(n) => parse_rational(&n.to_string()),
            Value::String(s) => parse_rational(s),
            _ => None,
        }
    };
    match v {
        Value::String(s) => basis
            .parse_expression(s)
            .map_err(|e| Error::parse_at_field(e.to_string(), field)),
        Value::Number(_) => {
            let mut c = vec![BigRational::zero(); basis.len()];
            c[0] = rational(v).ok_or_else(|| Error::parse_at_field("bad number", field))?;
            Ok(SymbolicReal::from_coefficients(c))
        }
        Value::Array(items) => {
            if items.len() != basis.len() {
                return Err(Error::parse_at_field(
                    format!(
                        "expected {} coefficients over basis {}, got {}",
                        basis.len(),
                        basis,
                        items.len()
                    ),
                    field,
                ));
            }
            let c = items
                .iter()
                .enumerate()
                .map(|(b, x)| {
                    rational(x).ok_or_else(|| {
                        Error::parse_at_field("expected a rational", format!("{field}[{b}]"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SymbolicReal::from_coefficients(c))
        }
        _ => Err(Error::parse_at_field(
            "expected an expression, a number or a coefficient array",
            field,
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureData {
    /// Rows in Hermite normal form spanning `{k : k·α_j ∈ ℤ ∀j}`.
    #[serde(serialize_with = "exact::serialize_int_rows")]
    pub kernel_lattice: Vec<IntRow>,
    pub kernel_rank: usize,
    /// Dimension of the closure, `d − rank K`.
    pub dimension: usize,
    /// Number of connected components of the closure.
    #[serde(serialize_with = "exact::serialize_int")]
    pub component_count: BigInt,
    pub connected: bool,
    pub dense: bool,
}

/// Character lattice of the closure of `⟨gens⟩`, in HNF.
fn kernel_lattice(dim: usize, basis_len: usize, gens: &[TorusElement]) -> Vec<IntRow> {
    // irrational coefficients of k·α_j must vanish
    let mut conditions: Vec<IntRow> = Vec::new();
    for g in gens {
        for b in 1..basis_len {
            let row: Vec<BigRational> = g
                .coordinates
                .iter()
                .map(|c| c.coefficients()[b].clone())
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                conditions.push(exact::primitive_integer_row(&row));
            }
        }
    }
    let base = if conditions.is_empty() {
        exact::identity(dim)
    } else {
        exact::integer_kernel(&conditions, dim)
    };
    let r = base.len();
    if r == 0 || gens.is_empty() {
        return exact::hnf(base);
    }
    // rational parts: q_{j,t} = b_t · rational(α_j) must be integral
    let q: Vec<Vec<BigRational>> = gens
        .iter()
        .map(|g| {
            base.iter()
                .map(|bt| {
                    bt.iter()
                        .zip(&g.coordinates)
                        .map(|(k, c)| c.rational_part() * k)
                        .sum()
                })
                .collect()
        })
        .collect();
    let den = q
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
    // m ∈ ℤ^r with Q m ≡ 0 (mod den): kernel of [Q | den·I] projected to m
    let nj = gens.len();
    let system: Vec<IntRow> = q
        .iter()
        .enumerate()
        .map(|(j, row)| {
            row.iter()
                .map(|x| (x * &den).to_integer())
                .chain((0..nj).map(|i| if i == j { den.clone() } else { BigInt::zero() }))
                .collect()
        })
        .collect();
    let sols = exact::integer_kernel(&system, r + nj);
    let m: Vec<IntRow> = exact::hnf(sols.into_iter().map(|s| s[..r].to_vec()).collect());
    let k: Vec<IntRow> = m
        .iter()
        .map(|mt| {
            (0..dim)
                .map(|i| mt.iter().zip(&base).map(|(c, b)| c * &b[i]).sum())
                .collect()
        })
        .collect();
    exact::hnf(k)
}

fn closure_of(dim: usize, basis_len: usize, gens: &[TorusElement]) -> ClosureData {
    let kernel = kernel_lattice(dim, basis_len, gens);
    let rank = kernel.len();
    let component_count: BigInt = exact::invariant_factors(&kernel).iter().product();
    ClosureData {
        kernel_rank: rank,
        dimension: dim - rank,
        connected: component_count.is_one(),
        dense: rank == 0,
        component_count,
        kernel_lattice: kernel,
    }
}

pub fn closure(set: &GeneratorSet) -> ClosureData {
    closure_of(set.dim, set.basis.len(), &set.generators)
}

pub fn is_dense(set: &GeneratorSet) -> bool {
    closure(set).dense
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    /// Index of the chosen input in the current quotient.
    pub chosen: usize,
    /// Power that makes the chosen element's closure connected.
    #[serde(serialize_with = "exact::serialize_int")]
    pub power: BigInt,
    /// Dimension of that closure `C`.
    pub closure_dimension: usize,
    /// Dimension of the torus before quotienting by `C`.
    pub torus_dimension: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reduction {
    pub basis: Basis,
    pub dimension: usize,
    pub generators: Vec<TorusElement>,
    /// `generators[i] = Σ_j words[i][j] · input_j`.
    #[serde(serialize_with = "exact::serialize_int_rows")]
    pub words: Vec<IntRow>,
    pub steps: Vec<ReductionStep>,
    pub dense: bool,
}

/// At most `d` integer words in the inputs generating a dense subgroup.
pub fn reduce_generators(set: &GeneratorSet) -> Result<Reduction> {
    if !is_dense(set) {
        return Err(Error::NotDense);
    }
    let r = set.generators.len();
    let mut words: Vec<IntRow> = Vec::new();
    let mut steps = Vec::new();
    let mut current = set.clone();
    while current.dim > 0 {
        let chosen = current
            .generators
            .iter()
            .position(TorusElement::has_infinite_order)
            .ok_or_else(|| {
                Error::Inconsistent(
                    "dense subgroup of a positive-dimensional torus without an element of \
                     infinite order"
                        .into(),
                )
            })?;
        let gamma = &current.generators[chosen];
        let single = closure_of(current.dim, current.basis.len(), std::slice::from_ref(gamma));
        let power = single.component_count.clone();
        let powered = gamma.scale(&power);
        let c = closure_of(current.dim, current.basis.len(), std::slice::from_ref(&powered));
        debug_assert!(c.connected && c.dimension > 0);
        let mut word = vec![BigInt::zero(); r];
        word[chosen] = power.clone();
        words.push(word);
        steps.push(ReductionStep {
            chosen,
            power,
            closure_dimension: c.dimension,
            torus_dimension: current.dim,
        });
        // K is saturated since C is connected, so x ↦ K·x identifies 𝕋^d / C
        // with 𝕋^{rank K}
        let characters = c.kernel_lattice;
        let projected = current
            .generators
            .iter()
            .map(|g| g.project(&characters, current.basis.len()))
            .collect();
        current = current.with_generators(characters.len(), projected);
    }
    let generators: Vec<TorusElement> = words
        .iter()
        .map(|w| {
            w.iter().zip(&set.generators).fold(
                TorusElement::zero(set.dim, set.basis.len()),
                |acc, (k, g)| acc.add(&g.scale(k)),
            )
        })
        .collect();
    let out = set.with_generators(set.dim, generators.clone());
    let dense = is_dense(&out);
    if !dense {
        return Err(Error::Inconsistent("reduced generators failed the density check".into()));
    }
    Ok(Reduction {
        basis: set.basis.clone(),
        dimension: set.dim,
        generators,
        words,
        steps,
        dense,
    })
}

/// Words as `i64`, when every entry fits.
pub fn words_as_i64(words: &[IntRow]) -> Option<Vec<Vec<i64>>> {
    words
        .iter()
        .map(|w| w.iter().map(|x| x.to_i64()).collect())
        .collect()
}

/// Sum of absolute word entries, i.e. the ℓ¹ length of each word.
pub fn word_lengths(words: &[IntRow]) -> Vec<BigInt> {
    words
        .iter()
        .map(|w| w.iter().map(|x| x.abs()).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(basis: &str, dim: usize, gens: &[&[&str]]) -> GeneratorSet {
        GeneratorSet::from_expressions(Basis::parse(basis).unwrap(), dim, gens).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Vec<IntRow> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn independent_irrationals_are_dense() {
        let s = set("1,sqrt2,sqrt3", 2, &[&["sqrt2", "0"], &["0", "sqrt3"]]);
        let c = closure(&s);
        assert_eq!(c.kernel_rank, 0);
        assert!(c.dense);
        assert!(is_dense(&set("sqrt2,sqrt3", 2, &[&["sqrt2", "sqrt3"]])));
    }

    #[test]
    fn diagonal_subtorus() {
        let s = set("sqrt2", 2, &[&["sqrt2", "sqrt2"]]);
        let c = closure(&s);
        assert_eq!(c.kernel_lattice, ints(&[&[1, -1]]));
        assert_eq!(c.dimension, 1);
        assert!(c.connected && !c.dense);
    }

    #[test]
    fn rational_point() {
        let c = closure(&set("1", 1, &[&["1/3"]]));
        assert_eq!(c.kernel_lattice, ints(&[&[3]]));
        assert_eq!(c.dimension, 0);
        assert_eq!(c.component_count, BigInt::from(3));
    }

    #[test]
    fn empty_set_is_trivial() {
        let s = GeneratorSet::new(Basis::parse("1").unwrap(), 1, vec![]).unwrap();
        let c = closure(&s);
        assert_eq!(c.dimension, 0);
        assert!(!c.dense);
    }

    #[test]
    fn disconnected_closure() {
        // (sqrt2, sqrt2 + 1/2): k1 + k2 = 0 and k2/2 ∈ ℤ, so K = ⟨(2, -2)⟩
        let s = set("sqrt2", 2, &[&["sqrt2", "sqrt2 + 1/2"]]);
        let c = closure(&s);
        assert_eq!(c.kernel_lattice, ints(&[&[2, -2]]));
        assert_eq!(c.component_count, BigInt::from(2));
        assert!(!c.connected);
        let sq = s.with_generators(2, vec![s.generators[0].scale(&BigInt::from(2))]);
        assert!(closure(&sq).connected);
    }

    #[test]
    fn reduces_to_at_most_d() {
        let s = set(
            "sqrt2,sqrt3",
            2,
            &[&["sqrt2", "0"], &["0", "sqrt3"], &["1/3", "0"]],
        );
        let red = reduce_generators(&s).unwrap();
        assert_eq!(red.generators.len(), 2);
        assert_eq!(red.words, ints(&[&[1, 0, 0], &[0, 1, 0]]));
        assert!(red.dense);

        let s = set("sqrt2", 1, &[&["sqrt2"], &["1/2"]]);
        assert_eq!(reduce_generators(&s).unwrap().generators.len(), 1);

        let s = set("sqrt2,sqrt3", 2, &[&["sqrt2", "sqrt3"]]);
        let red = reduce_generators(&s).unwrap();
        assert_eq!(red.generators, s.generators);
    }

    #[test]
    fn reduction_needs_power_and_quotient() {
        // closure of the first generator has two components; the rational
        // point 1/2 supplies the missing half
        let s = set(
            "sqrt2,sqrt3",
            2,
            &[&["sqrt2", "sqrt2 + 1/2"], &["sqrt3", "0"], &["0", "1/2"]],
        );
        assert!(is_dense(&s));
        let red = reduce_generators(&s).unwrap();
        assert!(red.generators.len() <= 2);
        assert_eq!(red.steps[0].power, BigInt::from(2));
        for (w, g) in red.words.iter().zip(&red.generators) {
            let w64: Vec<i64> = w.iter().map(|x| x.to_i64().unwrap()).collect();
            assert_eq!(&s.evaluate(&w64), g);
        }
    }

    #[test]
    fn not_dense_is_rejected() {
        let s = set("sqrt2", 2, &[&["sqrt2", "sqrt2"]]);
        assert_eq!(reduce_generators(&s).unwrap_err(), Error::NotDense);
    }

    #[test]
    fn json_input() {
        let s = GeneratorSet::from_json(
            r#"{"basis": "1,sqrt2", "generators": [["sqrt2", [0, 1]], [0.5, "1/3"]]}"#,
            None,
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        // k1 + k2 = 0 and k1/2 + k2/3 ∈ ℤ
        assert_eq!(closure(&s).kernel_lattice, ints(&[&[6, -6]]));
        let err = GeneratorSet::from_json(r#"[["sqrt2"], ["x"]]"#, Basis::parse("sqrt2").ok())
            .unwrap_err();
        assert!(err.to_string().contains("generators[1][0]"), "{err}");
        assert!(GeneratorSet::from_json(r#"{"generators": []}"#, None).is_err());
        let s = GeneratorSet::from_json(r#"{"dimension": 2, "generators": []}"#, None).unwrap();
        assert_eq!(closure(&s).dimension, 0);
    }
}
