//! Matrix JSON: `{"n": 3, "rows": [[...], ...]}` with full symmetric rows.
//!
//! Entries are JSON numbers or exact rationals written as strings (`"-11/5"`, `"7"`).
//! A matrix whose entries are all integers or rational strings loads exactly.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::symcore::matrix::{Rational, Scalar, SymMatrix};

/// Asymmetry accepted by the loader, relative to `1 + max|a_ij|`.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<Value>>,
}

/// A loaded matrix, exact when the file allowed it.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedMatrix {
    Exact(SymMatrix<Rational>),
    Float(SymMatrix<f64>),
}

impl LoadedMatrix {
    pub fn n(&self) -> usize {
        match self {
            Self::Exact(m) => m.n(),
            Self::Float(m) => m.n(),
        }
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        match self {
            Self::Exact(m) => m.to_f64(),
            Self::Float(m) => m.clone(),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

enum Entry {
    Exact(Rational),
    Float(f64),
}

fn parse_entry(v: &Value) -> Result<Entry> {
    match v {
        Value::String(s) => Ok(Entry::Exact(parse_rational(s)?)),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(Entry::Exact(Rational::from_integer(i.into())))
            } else {
                let x = num.as_f64().ok_or_else(|| Error::Malformed(format!("bad number {num}")))?;
                Ok(Entry::Float(x))
            }
        }
        other => Err(Error::Malformed(format!("matrix entry must be a number or string, got {other}"))),
    }
}

impl MatrixJson {
    pub fn load(&self) -> Result<LoadedMatrix> {
        if self.rows.len() != self.n || self.n == 0 {
            return Err(Error::Malformed(format!("declared n = {} but {} rows", self.n, self.rows.len())));
        }
        let mut entries = Vec::with_capacity(self.n);
        for row in &self.rows {
            if row.len() != self.n {
                return Err(Error::Malformed(format!("row of length {} in a {}×{} matrix", row.len(), self.n, self.n)));
            }
            entries.push(row.iter().map(parse_entry).collect::<Result<Vec<_>>>()?);
        }
        let exact = entries.iter().flatten().all(|e| matches!(e, Entry::Exact(_)));
        if exact {
            let rows: Vec<Vec<Rational>> = entries
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|e| match e {
                            Entry::Exact(q) => q,
                            Entry::Float(_) => unreachable!(),
                        })
                        .collect()
                })
                .collect();
            Ok(LoadedMatrix::Exact(SymMatrix::from_rows(&rows)?))
        } else {
            let rows: Vec<Vec<f64>> = entries
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|e| match e {
                            Entry::Exact(q) => q.to_f64(),
                            Entry::Float(x) => x,
                        })
                        .collect()
                })
                .collect();
            if rows.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::Malformed("non-finite matrix entry".into()));
            }
            Ok(LoadedMatrix::Float(SymMatrix::from_rows_tol(&rows, SYMMETRY_TOL)?))
        }
    }
}

/// JSON representation of a matrix: rationals as strings, doubles as numbers.
pub trait ToJsonValue {
    fn to_json_value(&self) -> Value;
}

impl ToJsonValue for f64 {
    fn to_json_value(&self) -> Value {
        serde_json::Number::from_f64(*self).map(Value::Number).unwrap_or(Value::Null)
    }
}

impl ToJsonValue for Rational {
    fn to_json_value(&self) -> Value {
        Value::String(format_rational(self))
    }
}

pub fn matrix_to_json<T: Scalar + ToJsonValue>(m: &SymMatrix<T>) -> MatrixJson {
    MatrixJson { n: m.n(), rows: m.rows().iter().map(|r| r.iter().map(ToJsonValue::to_json_value).collect()).collect() }
}

pub fn read_matrix(path: &Path) -> Result<LoadedMatrix> {
    let text = std::fs::read_to_string(path)?;
    let file: MatrixJson =
        serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    file.load()
}

pub fn write_matrix<T: Scalar + ToJsonValue>(path: &Path, m: &SymMatrix<T>) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(&matrix_to_json(m))?)?;
    Ok(())
}

/// Parses the matrix JSON object held in `value`.
pub fn matrix_from_value(value: &Value) -> Result<LoadedMatrix> {
    let file: MatrixJson = serde_json::from_value(value.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
    file.load()
}
