//! JSON-Lines corpus reader.
//!
//! One object per line:
//!
//! ```text
//! {"poly": [16, 5, -9, -2, 1], "label": "a", "disc": 35537, "galois": "S4",
//!  "basis": [[1, 0], ["1/2", [1, 2]]]}
//! ```
//!
//! `poly` lists coefficients constant term first. `basis` rows are integral
//! basis elements in power-basis coordinates; an entry is an integer, a
//! `"p/q"` string or a `[p, q]` pair. Blank lines are ignored.

use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Number, Value};
use thetanf_core::numfield::{MAX_DEGREE, MIN_DEGREE};
use thetanf_core::{BigInt, BigRational, Error as CoreError, FieldRecord, Polynomial, RatMatrix};

use crate::error::{PipelineError, Result};

const KEYS: [&str; 5] = ["poly", "label", "disc", "galois", "basis"];

pub fn load_corpus(path: &Path) -> Result<Vec<FieldRecord>> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })?;
    parse_corpus(&text)
}

/// Parses a whole corpus; records come back in file order.
pub fn parse_corpus(text: &str) -> Result<Vec<FieldRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_line(l, i + 1))
        .collect()
}

pub fn parse_line(line: &str, lineno: usize) -> Result<FieldRecord> {
    let err = |reason: String| PipelineError::Parse { line: lineno, reason };
    let value: Value = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
    let Value::Object(obj) = value else {
        return Err(err("expected a JSON object".into()));
    };
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(err(format!("unknown key {k:?}")));
    }
    let coeffs = match obj.get("poly") {
        Some(Value::Array(a)) => a
            .iter()
            .map(|v| integer(v).ok_or_else(|| err(format!("poly: {v} is not an integer"))))
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(err("poly must be an array of integers".into())),
        None => return Err(err("missing key \"poly\"".into())),
    };
    let poly = Polynomial::new(coeffs).map_err(|e| match e {
        CoreError::NonMonic => PipelineError::NonMonic { line: lineno },
        CoreError::DegreeOutOfRange(degree) => PipelineError::DegreeOutOfRange { line: lineno, degree },
        other => err(other.to_string()),
    })?;
    let n = poly.degree();
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
        return Err(PipelineError::DegreeOutOfRange { line: lineno, degree: n });
    }
    let mut rec = FieldRecord::new(poly);
    rec.label = string(&obj, "label").map_err(err)?;
    rec.galois_group = string(&obj, "galois").map_err(err)?;
    rec.claimed_disc = match obj.get("disc") {
        None | Some(Value::Null) => None,
        Some(v) => Some(integer(v).ok_or_else(|| err(format!("disc: {v} is not an integer")))?),
    };
    rec.basis = match obj.get("basis") {
        None | Some(Value::Null) => None,
        Some(v) => Some(basis(v, n).map_err(|r| err(format!("basis: {r}")))?),
    };
    Ok(rec)
}

fn string(obj: &Map<String, Value>, key: &str) -> Result<Option<String>, String> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(v) => Err(format!("{key}: expected a string, got {v}")),
    }
}

fn number(n: &Number) -> Option<BigInt> {
    BigInt::from_str(&n.to_string()).ok()
}

fn integer(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => number(n),
        _ => None,
    }
}

fn rational(v: &Value) -> Result<BigRational, String> {
    let frac = |p: BigInt, q: BigInt| {
        if q == BigInt::from(0) {
            Err(format!("zero denominator in {v}"))
        } else {
            Ok(BigRational::new(p, q))
        }
    };
    match v {
        Value::Number(n) => number(n).map(BigRational::from_integer).ok_or_else(|| format!("{v} is not an integer")),
        Value::String(s) => {
            let parse = |t: &str| BigInt::from_str(t.trim()).map_err(|_| format!("cannot parse {s:?}"));
            match s.split_once('/') {
                Some((p, q)) => frac(parse(p)?, parse(q)?),
                None => Ok(BigRational::from_integer(parse(s)?)),
            }
        }
        Value::Array(pair) if pair.len() == 2 => match (integer(&pair[0]), integer(&pair[1])) {
            (Some(p), Some(q)) => frac(p, q),
            _ => Err(format!("{v} is not a [num, den] pair of integers")),
        },
        _ => Err(format!("{v} is not a rational entry")),
    }
}

fn basis(v: &Value, n: usize) -> Result<RatMatrix, String> {
    let Value::Array(rows) = v else {
        return Err("expected an array of rows".into());
    };
    if rows.len() != n {
        return Err(format!("{} rows for a degree {n} field", rows.len()));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        match row {
            Value::Array(es) if es.len() == n => {
                out.push(es.iter().map(rational).collect::<Result<Vec<_>, _>>()?)
            }
            _ => return Err(format!("row {i} is not an array of {n} entries")),
        }
    }
    RatMatrix::from_rows(out).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_polynomial() {
        let r = parse_line(r#"{"poly":[16,5,-9,-2,1]}"#, 1).unwrap();
        assert_eq!(r.degree(), 4);
        assert_eq!(r.poly.to_string(), "x^4 - 2x^3 - 9x^2 + 5x + 16");
        assert!(r.basis.is_none() && r.label.is_none());
    }

    #[test]
    fn degree_and_monic_errors() {
        assert!(matches!(
            parse_line(r#"{"poly":[1,1]}"#, 3),
            Err(PipelineError::DegreeOutOfRange { line: 3, degree: 1 })
        ));
        assert!(matches!(parse_line(r#"{"poly":[5,0,2]}"#, 4), Err(PipelineError::NonMonic { line: 4 })));
        let octic = r#"{"poly":[1,0,0,0,0,0,0,0,1]}"#;
        assert!(matches!(parse_line(octic, 1), Err(PipelineError::DegreeOutOfRange { degree: 8, .. })));
    }

    #[test]
    fn metadata_and_basis_forms() {
        let line = r#"{"poly":[-5,0,1],"label":"q5","disc":5,"galois":"C2","basis":[[1,0],["1/2",[1,2]]]}"#;
        let r = parse_line(line, 1).unwrap();
        assert_eq!(r.label.as_deref(), Some("q5"));
        assert_eq!(r.galois_group.as_deref(), Some("C2"));
        assert_eq!(r.claimed_disc, Some(BigInt::from(5)));
        let b = r.basis.unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(b[(1, 0)], half);
        assert_eq!(b[(1, 1)], half);
    }

    #[test]
    fn big_integers_survive() {
        let r = parse_line(r#"{"poly":[123456789012345678901234567890,0,1],"disc":1}"#, 1).unwrap();
        assert_eq!(r.poly.coeffs()[0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn malformed_lines_carry_line_numbers() {
        let text = "{\"poly\":[-1,-1,1]}\n\n{\"poly\":[1,2,\n";
        match parse_corpus(text) {
            Err(PipelineError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        for bad in [
            r#"{"poly":[1.5,1]}"#,
            r#"{"poly":"x^2"}"#,
            r#"[1,2]"#,
            r#"{"poly":[-1,-1,1],"colour":"red"}"#,
            r#"{"poly":[-1,-1,1],"basis":[[1,0]]}"#,
            r#"{"poly":[-1,-1,1],"basis":[[1,0],["1/0",1]]}"#,
            r#"{}"#,
        ] {
            assert!(matches!(parse_line(bad, 7), Err(PipelineError::Parse { line: 7, .. })), "{bad}");
        }
    }

    #[test]
    fn empty_corpus() {
        assert!(parse_corpus("").unwrap().is_empty());
    }
}
