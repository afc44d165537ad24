//! Reading matrices and vectors from JSON or a whitespace-separated grid.
//!
//! JSON accepts a bare array of rows or `{"field": "padic:5", "rows": [...]}`.
//! An entry is a number, a rational string such as `"-3/4"`, a `[re, im]`
//! pair, or a serialized scalar object. The text grid has one row per line;
//! blank lines and `#` comments are skipped; complex entries are written
//! `1+2i`.

use num::{BigRational, ToPrimitive};
use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Location, Result};
use crate::exact::parse_rational;
use crate::projlin::{Matrix, Vector};
use crate::scalar::{FieldDescriptor, FieldKind, Scalar};

/// Parses JSON if the text starts with `[` or `{`, otherwise a text grid.
/// `field` overrides the default of ℝ; it must agree with a field named in
/// the document.
pub fn parse_matrix(text: &str, field: Option<FieldDescriptor>) -> Result<Matrix> {
    if looks_like_json(text) {
        parse_matrix_json(text, field)
    } else {
        parse_matrix_text(text, field.unwrap_or_default())
    }
}

pub fn parse_vector(text: &str, field: Option<FieldDescriptor>) -> Result<Vector> {
    if looks_like_json(text) {
        let doc: Value = serde_json::from_str(text)?;
        let (field, items) = split_document(&doc, field, "entries")?;
        let items = items
            .as_array()
            .ok_or_else(|| Error::parse_at_field("expected an array of entries", "entries"))?;
        let entries = items
            .iter()
            .enumerate()
            .map(|(i, v)| scalar_from_json(v, field, &format!("entries[{i}]")))
            .collect::<Result<_>>()?;
        Vector::new(field, entries)
    } else {
        let m = parse_grid(text, field.unwrap_or_default())?;
        match m.as_slice() {
            [row] => Vector::new(field.unwrap_or_default(), row.clone()),
            _ => Err(Error::parse(format!("expected one row, got {}", m.len()))),
        }
    }
}

fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('[' | '{'))
}

fn split_document<'a>(
    doc: &'a Value,
    field: Option<FieldDescriptor>,
    key: &str,
) -> Result<(FieldDescriptor, &'a Value)> {
    match doc {
        Value::Object(map) => {
            let declared = match map.get("field") {
                None => None,
                Some(Value::String(s)) => Some(
                    s.parse::<FieldDescriptor>()
                        .map_err(|e| Error::parse_at_field(e.to_string(), "field"))?,
                ),
                Some(_) => return Err(Error::parse_at_field("expected a string", "field")),
            };
            let field = match (field, declared) {
                (Some(a), Some(b)) if !same_field(a, b) => {
                    return Err(Error::FieldMismatch {
                        left: a.to_string(),
                        right: b.to_string(),
                    })
                }
                (Some(a), _) => a,
                (None, Some(b)) => b,
                (None, None) => FieldDescriptor::default(),
            };
            let body = map
                .get(key)
                .ok_or_else(|| Error::parse_at_field(format!("missing key \"{key}\""), key))?;
            Ok((field, body))
        }
        _ => Ok((field.unwrap_or_default(), doc)),
    }
}

/// Precision is a run-time setting, so `padic:5` in a file agrees with
/// `padic:5:20` on the command line.
fn same_field(a: FieldDescriptor, b: FieldDescriptor) -> bool {
    a.kind() == b.kind() && a.prime() == b.prime()
}

pub fn parse_matrix_json(text: &str, field: Option<FieldDescriptor>) -> Result<Matrix> {
    let doc: Value = serde_json::from_str(text)?;
    let (field, rows) = split_document(&doc, field, "rows")?;
    let rows = rows
        .as_array()
        .ok_or_else(|| Error::parse_at_field("expected an array of rows", "rows"))?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| Error::parse_at_field("expected an array", format!("rows[{i}]")))?
                .iter()
                .enumerate()
                .map(|(j, v)| scalar_from_json(v, field, &format!("rows[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

fn scalar_from_json(v: &Value, field: FieldDescriptor, at: &str) -> Result<Scalar> {
    let fail = |m: &str| Error::parse_at_field(m.to_string(), at);
    match v {
        Value::Number(n) => match field.kind() {
            FieldKind::Padic => rational_scalar(&n.to_string(), field).ok_or_else(|| fail("bad number")),
            _ => Ok(field.from_f64(n.as_f64().ok_or_else(|| fail("number out of range"))?)),
        },
        Value::String(s) => rational_scalar(s, field)
            .or_else(|| match field.kind() {
                FieldKind::Padic => None,
                _ => parse_complex_token(s).and_then(|z| field.from_complex(z).ok()),
            })
            .ok_or_else(|| fail(&format!("cannot read {s:?} as an element of {field}"))),
        Value::Array(pair) => {
            let parts: Option<Vec<f64>> = pair.iter().map(Value::as_f64).collect();
            match parts.as_deref() {
                Some(&[re, im]) => field
                    .from_complex(Complex64::new(re, im))
                    .map_err(|e| fail(&e.to_string())),
                _ => Err(fail("expected a [re, im] pair")),
            }
        }
        Value::Object(_) => {
            let s: Scalar = serde_json::from_value(v.clone()).map_err(|e| fail(&e.to_string()))?;
            if !same_field(s.field(), field) {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: s.field().to_string(),
                });
            }
            Ok(s)
        }
        _ => Err(fail("expected a number, string, [re, im] pair or scalar object")),
    }
}

fn rational_scalar(s: &str, field: FieldDescriptor) -> Option<Scalar> {
    let q: BigRational = parse_rational(s)?;
    match field.kind() {
        FieldKind::Padic => field.from_ratio(q.numer(), q.denom()).ok(),
        _ => Some(field.from_f64(q.to_f64()?)),
    }
}

/// `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
fn parse_complex_token(s: &str) -> Option<Complex64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(&body[i - 1..i], "e" | "E"))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (body[..i].parse::<f64>().ok()?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().ok()?,
    };
    Some(Complex64::new(re, im))
}

pub fn parse_matrix_text(text: &str, field: FieldDescriptor) -> Result<Matrix> {
    Matrix::from_rows(field, parse_grid(text, field)?)
}

fn parse_grid(text: &str, field: FieldDescriptor) -> Result<Vec<Vec<Scalar>>> {
    let mut rows = Vec::new();
    let mut width = None;
    for (ln, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut offset = 0;
        for token in content.split_whitespace() {
            let col = content[offset..].find(token).map(|i| i + offset).unwrap_or(offset);
            offset = col + token.len();
            let value = rational_scalar(token, field).or_else(|| match field.kind() {
                FieldKind::Padic => None,
                _ => parse_complex_token(token).and_then(|z| field.from_complex(z).ok()),
            });
            row.push(value.ok_or_else(|| Error::Parse {
                message: format!("cannot read {token:?} as an element of {field}"),
                location: Location {
                    line: Some(ln + 1),
                    column: Some(col + 1),
                    field: None,
                },
            })?);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::parse_at_line(
                    format!("row has {} entries, expected {w}", row.len()),
                    ln + 1,
                ))
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse("no rows"));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let m = parse_matrix("[[25, 0], [0, 1]]", None).unwrap();
        assert_eq!(m.field(), FieldDescriptor::REAL);
        assert_eq!(m.get(0, 0), &Scalar::Real(25.0));

        let m = parse_matrix(r#"{"field": "padic:5", "rows": [["1/5", 0], [0, 25]]}"#, None).unwrap();
        assert_eq!(m.get(0, 0).abs_value(), 5.0);
        assert_eq!(m.get(1, 1).abs_value(), 0.04);

        let m = parse_matrix(r#"[[[1, 2], "3-4i"], [0, "i"]]"#, Some(FieldDescriptor::COMPLEX)).unwrap();
        assert_eq!(m.get(0, 1), &Scalar::Complex(Complex64::new(3.0, -4.0)));
        assert_eq!(m.get(1, 1), &Scalar::Complex(Complex64::new(0.0, 1.0)));
    }

    #[test]
    fn field_conflicts() {
        let doc = r#"{"field": "padic:5", "rows": [[1]]}"#;
        assert!(matches!(
            parse_matrix(doc, Some(FieldDescriptor::REAL)),
            Err(Error::FieldMismatch { .. })
        ));
        let q5 = FieldDescriptor::padic(5, 20).unwrap();
        assert_eq!(parse_matrix(doc, Some(q5)).unwrap().field().precision(), 20);
        assert!(parse_matrix("[[[1, 2]]]", None).is_err());
    }

    #[test]
    fn json_errors_carry_position() {
        let e = parse_matrix("[[1, 2],\n [3, ]]", None).unwrap_err();
        assert!(matches!(e, Error::Parse { location: Location { line: Some(2), .. }, .. }), "{e}");
        let e = parse_matrix(r#"[[1, 2], [3, "x"]]"#, None).unwrap_err();
        assert!(e.to_string().contains("rows[1][1]"), "{e}");
    }

    #[test]
    fn text_grid() {
        let m = parse_matrix("# diag\n2 0\n\n0 1/2\n", None).unwrap();
        assert_eq!(m.get(1, 1), &Scalar::Real(0.5));
        let c = parse_matrix("1+2i 0\n0 -i", Some(FieldDescriptor::COMPLEX)).unwrap();
        assert_eq!(c.get(1, 1), &Scalar::Complex(Complex64::new(0.0, -1.0)));
        let e = parse_matrix("1 0\n0 x", None).unwrap_err();
        assert_eq!(e.to_string(), "parse error at line 2, column 3: cannot read \"x\" as an element of real");
        let e = parse_matrix("1 0\n0", None).unwrap_err();
        assert!(e.to_string().contains("line 2"));
    }

    #[test]
    fn vectors() {
        let v = parse_vector("[1, 0, \"1/2\"]", None).unwrap();
        assert_eq!(v.dim(), 3);
        let v = parse_vector("3 4", None).unwrap();
        assert_eq!(v.norm(), 5.0);
    }

    #[test]
    fn complex_tokens() {
        assert_eq!(parse_complex_token("1e-3+2i"), Some(Complex64::new(1e-3, 2.0)));
        assert_eq!(parse_complex_token("2.5e+1i"), Some(Complex64::new(0.0, 25.0)));
        assert_eq!(parse_complex_token("-1-i"), Some(Complex64::new(-1.0, -1.0)));
        assert_eq!(parse_complex_token("abc"), None);
    }
}
