//! Matrix and vector file formats.
//!
//! JSON: `{"rows": n, "cols": m, "data": [["1", "-3/7"], ...]}`.
//! CSV: one matrix row per line, same entry grammar, no header.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{format_rational, parse_rational, Rational};

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &RatMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "data": (0..m.rows()).map(|i| vector_json(m.row(i))).collect::<Vec<_>>(),
    })
}

fn entry(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!(
            "matrix entries must be integer or rational strings, got {other}"
        ))),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<RatMatrix> {
    let data = v
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"data\" array".into()))?;
    let rows = data
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("each row of \"data\" must be an array".into()))?
                .iter()
                .map(entry)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = RatMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))?;
    for (key, want) in [("rows", m.rows()), ("cols", m.cols())] {
        if let Some(got) = v.get(key) {
            if got.as_u64() != Some(want as u64) {
                return Err(Error::Parse(format!(
                    "\"{key}\" is {got} but data has {want}"
                )));
            }
        }
    }
    Ok(m)
}

pub fn parse_matrix_json(text: &str) -> Result<RatMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    matrix_from_json(&v)
}

pub fn parse_matrix_csv(text: &str) -> Result<RatMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        rows.push(rec.iter().map(parse_rational).collect::<Result<Vec<_>>>()?);
    }
    RatMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
}

/// JSON when the text starts with `{`, CSV otherwise.
pub fn parse_matrix(text: &str) -> Result<RatMatrix> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix_csv(text)
    }
}

pub fn write_matrix_csv(m: &RatMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_rational).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// A vector given as a JSON array, a one-row or one-column matrix JSON,
/// or a comma separated list.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected an array".into()))?;
        return arr.iter().map(entry).collect();
    }
    if t.starts_with('{') {
        let m = parse_matrix_json(t)?;
        return if m.cols() == 1 {
            Ok(m.col(0))
        } else if m.rows() == 1 {
            Ok(m.row(0).to_vec())
        } else {
            Err(Error::Parse(format!(
                "expected a vector, got a {}x{} matrix",
                m.rows(),
                m.cols()
            )))
        };
    }
    t.split([',', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn json_round_trip() {
        let m = RatMatrix::from_rows(vec![
            vec![int(0), frac(-1, 2)],
            vec![frac(6, 4), int(-3)],
        ])
        .unwrap();
        let text = matrix_json(&m).to_string();
        assert_eq!(
            text,
            r#"{"cols":2,"data":[["0","-1/2"],["3/2","-3"]],"rows":2}"#
        );
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn json_errors() {
        assert!(parse_matrix_json(r#"{"rows":1,"cols":2,"data":[["1"]]}"#).is_err());
        assert!(parse_matrix_json(r#"{"data":[["1","x"]]}"#).is_err());
        assert!(parse_matrix_json(r#"{"data":[["1/0"]]}"#).is_err());
        assert!(parse_matrix_json(r#"{"data":[[1.5]]}"#).is_err());
        assert!(parse_matrix_json("not json").is_err());
        assert_eq!(
            parse_matrix_json(r#"{"data":[[1,"−2"]]}"#).unwrap(),
            RatMatrix::from_i64(&[&[1, -2]])
        );
    }

    #[test]
    fn csv_reader() {
        let m = parse_matrix("0, -1, -1\n-1, 0, 0\n\n-1,0,0\n").unwrap();
        assert_eq!(
            m,
            RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]])
        );
        assert_eq!(parse_matrix(&write_matrix_csv(&m)).unwrap(), m);
        assert!(parse_matrix("1,2\n3\n").is_err());
    }

    #[test]
    fn vectors() {
        let want = vec![int(-1), int(1), frac(1, 2)];
        assert_eq!(parse_vector(r#"["-1", "1", "1/2"]"#).unwrap(), want);
        assert_eq!(parse_vector("-1, 1, 1/2").unwrap(), want);
        assert_eq!(
            parse_vector(r#"{"rows":3,"cols":1,"data":[["-1"],["1"],["1/2"]]}"#).unwrap(),
            want
        );
    }
}
