//! JSON and CSV rendering of the library types, following the documented
//! schemas: rationals as `"a/b"` strings, Laurent polynomials as sorted
//! `[exponent, coefficient]` pairs, cyclotomic numbers as `{"p", "coeffs"}`,
//! descent-algebra elements as term lists in bitmask order.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Value};

use descent_core::compositions::SubsetOfRanks;
use descent_core::descent_algebra::matrix::DenseMatrix;
use descent_core::descent_algebra::SigmaElement;
use descent_core::scalars::{
    laurent_term_strings, rational_to_string, CyclotomicNumber, Integer, Integers, LaurentPoly,
    LaurentRing, Rational, Rationals, Ring,
};

use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Writes to `--out` or standard output.
pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn json_to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// A scalar in both serialized forms.
pub trait RenderScalar: Ring {
    fn scalar_json(&self, e: &Self::Elem) -> Value;
    /// CSV cell text; commas inside are fine, the writer quotes them.
    fn scalar_csv(&self, e: &Self::Elem) -> String;
}

impl RenderScalar for Integers {
    fn scalar_json(&self, e: &Integer) -> Value {
        Value::String(e.to_string())
    }
    fn scalar_csv(&self, e: &Integer) -> String {
        e.to_string()
    }
}

impl RenderScalar for Rationals {
    fn scalar_json(&self, e: &Rational) -> Value {
        Value::String(rational_to_string(e))
    }
    fn scalar_csv(&self, e: &Rational) -> String {
        rational_to_string(e)
    }
}

impl RenderScalar for LaurentRing {
    fn scalar_json(&self, e: &LaurentPoly) -> Value {
        Value::Array(
            laurent_term_strings(e)
                .into_iter()
                .map(|(exp, c)| json!([exp, c]))
                .collect(),
        )
    }
    fn scalar_csv(&self, e: &LaurentPoly) -> String {
        e.to_string()
    }
}

impl RenderScalar for descent_core::scalars::CyclotomicField {
    fn scalar_json(&self, e: &CyclotomicNumber) -> Value {
        json!({
            "p": e.order(),
            "coeffs": e.coeffs().iter().map(rational_to_string).collect::<Vec<_>>(),
        })
    }
    fn scalar_csv(&self, e: &CyclotomicNumber) -> String {
        e.to_string()
    }
}

fn subset_members(s: &SubsetOfRanks) -> Value {
    Value::Array(s.members().into_iter().map(|m| json!(m)).collect())
}

fn subset_csv(s: &SubsetOfRanks) -> String {
    s.members()
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// `{"n", "basis", "terms": [{"set", "coeff"}...]}`, terms in bitmask order.
pub fn sigma_json<R: RenderScalar>(ring: &R, f: &SigmaElement<R>, q: &str) -> Value {
    let basis = match f.basis() {
        descent_core::descent_algebra::Basis::B => "B",
        descent_core::descent_algebra::Basis::D => "D",
    };
    json!({
        "n": f.n(),
        "q": q,
        "basis": basis,
        "terms": f
            .terms()
            .map(|(set, c)| json!({"set": subset_members(set), "coeff": ring.scalar_json(c)}))
            .collect::<Vec<_>>(),
    })
}

/// CSV rows `index,set,coeff` in bitmask order.
pub fn sigma_csv<R: RenderScalar>(ring: &R, f: &SigmaElement<R>) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(["index", "set", "coeff"]).unwrap();
    for (set, c) in f.terms() {
        w.write_record([
            set.mask().to_string(),
            subset_csv(set),
            ring.scalar_csv(c),
        ])
        .unwrap();
    }
    finish_csv(w)
}

/// Eigenvalue family: every subset appears, zero values included.
pub fn values_json<R: RenderScalar>(
    ring: &R,
    n: usize,
    q: &str,
    values: &[(SubsetOfRanks, R::Elem)],
) -> Value {
    json!({
        "n": n,
        "q": q,
        "values": values
            .iter()
            .map(|(set, v)| json!({"set": subset_members(set), "value": ring.scalar_json(v)}))
            .collect::<Vec<_>>(),
    })
}

pub fn values_csv<R: RenderScalar>(
    ring: &R,
    values: &[(SubsetOfRanks, R::Elem)],
) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(["index", "set", "value"]).unwrap();
    for (set, v) in values {
        w.write_record([set.mask().to_string(), subset_csv(set), ring.scalar_csv(v)])
            .unwrap();
    }
    finish_csv(w)
}

/// Dense action matrix, rows indexed by `K`, columns by `I`, bitmask order.
pub fn matrix_json<R: RenderScalar>(
    ring: &R,
    n: usize,
    q: &str,
    m: &DenseMatrix<R::Elem>,
) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array((0..m.cols()).map(|c| ring.scalar_json(m.get(r, c))).collect()))
        .collect();
    json!({"n": n, "q": q, "rows": m.rows(), "cols": m.cols(), "matrix": rows})
}

/// CSV triples `k_index,i_index,coeff`, every cell, row-major.
pub fn matrix_csv<R: RenderScalar>(
    ring: &R,
    m: &DenseMatrix<R::Elem>,
) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(["k_index", "i_index", "coeff"]).unwrap();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            w.write_record([r.to_string(), c.to_string(), ring.scalar_csv(m.get(r, c))])
                .unwrap();
        }
    }
    finish_csv(w)
}

pub fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new())
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Usage(format!("csv error: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("csv not utf-8: {e}")))
}
