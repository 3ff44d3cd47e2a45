//! JSON serialization for full and partial symmetric matrices.
//!
//! Format: `{"dim": m, "entries": [[..]], "mask": [[..]]}` where entries are
//! rationals as `"p/q"` strings (or `null` when unspecified) and the mask is
//! a boolean matrix, `true` exactly where an entry is specified. Writing and
//! re-reading a matrix reproduces it bit for bit.

use crate::psd::{PartialSymMatrix, PsdError, SymMatrix};
use crate::rat::{parse_rat, rat_to_string, ParseRatError};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum MatIoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix JSON must contain {0}")]
    MissingField(&'static str),
    #[error("matrix JSON has wrong shape: {0}")]
    Shape(String),
    #[error("entry ({0},{1}) disagrees with the mask")]
    MaskMismatch(usize, usize),
    #[error("entry ({0},{1}): {2}")]
    BadEntry(usize, usize, ParseRatError),
    #[error(transparent)]
    Matrix(#[from] PsdError),
    #[error("matrix has unspecified entries but a full matrix was required")]
    NotFullySpecified,
}

pub fn partial_to_json(p: &PartialSymMatrix) -> Value {
    let entries: Vec<Value> = p
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    Some(r) => Value::String(rat_to_string(r)),
                    None => Value::Null,
                })
                .collect()
        })
        .collect();
    let mask: Vec<Value> = p
        .rows()
        .iter()
        .map(|row| row.iter().map(|e| Value::Bool(e.is_some())).collect())
        .collect();
    json!({ "dim": p.dim(), "entries": entries, "mask": mask })
}

pub fn sym_to_json(m: &SymMatrix) -> Value {
    partial_to_json(&PartialSymMatrix::from_full(m))
}

pub fn partial_from_json(v: &Value) -> Result<PartialSymMatrix, MatIoError> {
    let obj = v.as_object().ok_or(MatIoError::MissingField("an object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or(MatIoError::MissingField("dim"))? as usize;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or(MatIoError::MissingField("entries"))?;
    let mask = obj
        .get("mask")
        .and_then(Value::as_array)
        .ok_or(MatIoError::MissingField("mask"))?;
    if entries.len() != dim || mask.len() != dim {
        return Err(MatIoError::Shape(format!(
            "expected {dim} rows, found {} entry rows and {} mask rows",
            entries.len(),
            mask.len()
        )));
    }
    let mut rows: Vec<Vec<Option<crate::rat::Rat>>> = Vec::with_capacity(dim);
    for (i, (erow, mrow)) in entries.iter().zip(mask).enumerate() {
        let erow = erow
            .as_array()
            .ok_or_else(|| MatIoError::Shape(format!("entries row {i} is not an array")))?;
        let mrow = mrow
            .as_array()
            .ok_or_else(|| MatIoError::Shape(format!("mask row {i} is not an array")))?;
        if erow.len() != dim || mrow.len() != dim {
            return Err(MatIoError::Shape(format!("row {i} has the wrong length")));
        }
        let mut row = Vec::with_capacity(dim);
        for (j, (e, mk)) in erow.iter().zip(mrow).enumerate() {
            let specified = mk
                .as_bool()
                .ok_or_else(|| MatIoError::Shape(format!("mask ({i},{j}) is not a boolean")))?;
            match (e, specified) {
                (Value::Null, false) => row.push(None),
                (Value::String(s), true) => {
                    let r = parse_rat(s).map_err(|err| MatIoError::BadEntry(i, j, err))?;
                    row.push(Some(r));
                }
                _ => return Err(MatIoError::MaskMismatch(i, j)),
            }
        }
        rows.push(row);
    }
    Ok(PartialSymMatrix::new(rows)?)
}

pub fn sym_from_json(v: &Value) -> Result<SymMatrix, MatIoError> {
    let p = partial_from_json(v)?;
    p.fully_specified().ok_or(MatIoError::NotFullySpecified)
}

pub fn partial_from_str(s: &str) -> Result<PartialSymMatrix, MatIoError> {
    partial_from_json(&serde_json::from_str(s)?)
}

pub fn sym_from_str(s: &str) -> Result<SymMatrix, MatIoError> {
    sym_from_json(&serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn round_trip_is_exact() {
        let p = PartialSymMatrix::new(vec![
            vec![Some(rat_int(1)), None, Some(rat(-22, 7))],
            vec![None, Some(rat(1, 3)), Some(rat_int(1))],
            vec![Some(rat(-22, 7)), Some(rat_int(1)), None],
        ])
        .unwrap();
        let text = serde_json::to_string(&partial_to_json(&p)).unwrap();
        let back = partial_from_str(&text).unwrap();
        assert_eq!(back, p);
        let again = serde_json::to_string(&partial_to_json(&back)).unwrap();
        assert_eq!(text, again);
    }

    #[test]
    fn full_matrix_round_trip() {
        let m = SymMatrix::from_fn(2, |i, j| rat_int((i + j) as i64));
        let v = sym_to_json(&m);
        assert_eq!(sym_from_json(&v).unwrap(), m);
    }

    #[test]
    fn mask_entry_disagreement_rejected() {
        let bad = r#"{"dim":1,"entries":[["1"]],"mask":[[false]]}"#;
        assert!(matches!(partial_from_str(bad), Err(MatIoError::MaskMismatch(0, 0))));
        let bad2 = r#"{"dim":1,"entries":[[null]],"mask":[[true]]}"#;
        assert!(matches!(partial_from_str(bad2), Err(MatIoError::MaskMismatch(0, 0))));
    }

    #[test]
    fn asymmetric_rejected() {
        let bad = r#"{"dim":2,"entries":[["1","2"],["3","1"]],"mask":[[true,true],[true,true]]}"#;
        assert!(partial_from_str(bad).is_err());
        let partial_full = r#"{"dim":2,"entries":[["1",null],[null,"1"]],"mask":[[true,false],[false,true]]}"#;
        assert!(matches!(
            sym_from_str(partial_full),
            Err(MatIoError::NotFullySpecified)
        ));
    }
}
