//! Exact linear algebra over ℚ and ℤ on small dense matrices stored as rows.

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub type IntRow = Vec<BigInt>;
pub type RatRow = Vec<BigRational>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<RatRow>) -> (Vec<RatRow>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[RatRow]) -> usize {
    rref(rows.to_vec()).0.len()
}

/// Clears denominators row by row and divides out the row content.
pub fn primitive_integer_row(row: &[BigRational]) -> IntRow {
    let den = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: IntRow = row.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Row Hermite normal form of the lattice spanned by `rows`: nonzero rows
/// only, positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(rows: Vec<IntRow>) -> Vec<IntRow> {
    let (h, _) = hnf_with_transform(rows);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Row HNF `h = u · rows` with `u` unimodular. All rows are kept, so the zero
/// rows of `h` sit at the bottom and the matching rows of `u` span the left
/// kernel.
pub fn hnf_with_transform(mut rows: Vec<IntRow>) -> (Vec<IntRow>, Vec<IntRow>) {
    let m = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut u: Vec<IntRow> = (0..m)
        .map(|i| (0..m).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        // smallest nonzero |entry| at or below r moves to r
        while let Some(p) = (r..m)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
        {
            rows.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in (r + 1)..m {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                sub_multiple(&mut rows, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            negate(&mut rows[r]);
            negate(&mut u[r]);
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                sub_multiple(&mut rows, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (rows, u)
}

fn sub_multiple(rows: &mut [IntRow], target: usize, source: usize, q: &BigInt) {
    let src = rows[source].clone();
    for (x, y) in rows[target].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

fn negate(row: &mut IntRow) {
    for x in row.iter_mut() {
        *x = -&*x;
    }
}

/// Basis, in HNF, of `{x ∈ ℤ^ncols : a·x = 0}`.
pub fn integer_kernel(a: &[IntRow], ncols: usize) -> Vec<IntRow> {
    // row-reduce aᵀ; rows of the transform that kill aᵀ span the kernel
    let at: Vec<IntRow> = (0..ncols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect();
    if a.is_empty() {
        return identity(ncols);
    }
    let (h, u) = hnf_with_transform(at);
    let kernel: Vec<IntRow> = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, t)| t)
        .collect();
    hnf(kernel)
}

pub fn identity(n: usize) -> Vec<IntRow> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

/// Nonzero invariant factors `d_1 | d_2 | …` of an integer matrix.
pub fn invariant_factors(rows: &[IntRow]) -> Vec<BigInt> {
    let mut a: Vec<IntRow> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in (t + 1)..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                sub_multiple(&mut a, i, t, &q);
            }
            clean &= a[i][t].is_zero();
        }
        for j in (t + 1)..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        let pivot = a[t][t].clone();
        if let Some(i) =
            ((t + 1)..m).find(|&i| a[i][(t + 1)..n].iter().any(|x| !x.is_multiple_of(&pivot)))
        {
            let src = a[i].clone();
            for (x, y) in a[t].iter_mut().zip(&src) {
                *x += y;
            }
            continue;
        }
        out.push(pivot.abs());
        t += 1;
    }
    out
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(rows: &[IntRow]) -> Option<Vec<IntRow>> {
    let n = rows.len();
    let rat: Vec<RatRow> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .cloned()
                .map(BigRational::from_integer)
                .chain((0..n).map(|j| BigRational::from_integer(BigInt::from((i == j) as i32))))
                .collect()
        })
        .collect();
    let (r, pivots) = rref(rat);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    r.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

/// Parses `a`, `a/b` or a decimal such as `-1.25e-3` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(n * num::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num::pow(ten, (-scale) as usize))
    })
}

pub fn rational_to_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serializes an integer as a JSON number when it fits in `i64`, else as a
/// decimal string.
pub fn serialize_int<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn serialize_int_rows<S: serde::Serializer>(rows: &[IntRow], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Row<'a>(&'a IntRow);
    impl serde::Serialize for Row<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(self.0.len()))?;
            for x in self.0 {
                seq.serialize_element(&Int(x))?;
            }
            seq.end()
        }
    }
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}

struct Int<'a>(&'a BigInt);

impl serde::Serialize for Int<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_int(self.0, s)
    }
}
