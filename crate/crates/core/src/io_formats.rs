//! Canonical text files for codes, shares, secrets and deal records.
//!
//! Every file is a UTF-8 JSON document with a fixed key order and a fixed
//! layout: objects whose values are all scalars or arrays of scalars sit on
//! one line, everything else is indented by two spaces, and the file ends with
//! a newline. Equal objects therefore serialize to identical bytes. Residues
//! are plain decimal integers. Readers reject unknown keys and any
//! `format_version` other than [`FORMAT_VERSION`], and re-validate every
//! invariant of the decoded object.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::linalg::{RMatrix, RVector};
use crate::ring::{Residue, Ring};
use crate::scheme::{DealRecord, Secret, Share};

pub const FORMAT_VERSION: u32 = 1;

pub const CODE_EXTENSION: &str = "code";
pub const SHARES_EXTENSION: &str = "shares";
pub const SECRET_EXTENSION: &str = "secret";
pub const DEAL_RECORD_EXTENSION: &str = "dealrec";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("ValidationError: {0}")]
    Validation(String),
    #[error("IoError: {0}")]
    Io(#[from] std::io::Error),
}

impl FormatError {
    fn invalid(msg: impl Into<String>) -> Self {
        FormatError::Validation(msg.into())
    }

    /// The validation message, if this is a validation failure.
    pub fn validation_message(&self) -> Option<&str> {
        match self {
            FormatError::Validation(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDoc {
    p: u64,
    e: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeDoc {
    format_version: u32,
    ring: RingDoc,
    n: usize,
    k: usize,
    #[serde(rename = "G")]
    g: Vec<Vec<u64>>,
    #[serde(rename = "H")]
    h: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShareDoc {
    id: u32,
    c: Vec<u64>,
    x: u64,
    y: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SharesDoc {
    format_version: u32,
    ring: RingDoc,
    n: usize,
    shares: Vec<ShareDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SecretBody {
    s: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SecretDoc {
    format_version: u32,
    ring: RingDoc,
    n: usize,
    secret: SecretBody,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DealEntry {
    id: u32,
    l: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DealBody {
    seed: Option<u64>,
    l: Vec<DealEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DealDoc {
    format_version: u32,
    ring: RingDoc,
    n: usize,
    k: usize,
    deal: DealBody,
}

/// Shares as read from a file, together with the declared ring and length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareSet {
    pub ring: Ring,
    pub n: usize,
    pub shares: Vec<Share>,
}

/// A deal record as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DealRecordFile {
    pub ring: Ring,
    pub n: usize,
    pub k: usize,
    pub record: DealRecord,
}

fn ring_doc(ring: Ring) -> RingDoc {
    RingDoc {
        p: ring.prime() as u64,
        e: ring.exponent(),
    }
}

fn matrix_doc(m: &RMatrix) -> Vec<Vec<u64>> {
    m.row_values()
        .into_iter()
        .map(|r| r.into_iter().map(u64::from).collect())
        .collect()
}

fn vector_doc(v: &RVector) -> Vec<u64> {
    v.values().into_iter().map(u64::from).collect()
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(FormatError::invalid(format!(
            "unsupported format_version {v}"
        )))
    }
}

fn check_ring(doc: &RingDoc) -> Result<Ring, FormatError> {
    Ring::new(doc.p, doc.e).map_err(|e| FormatError::invalid(format!("bad ring: {e}")))
}

fn residue(ring: Ring, v: u64) -> Result<Residue, FormatError> {
    ring.residue(v)
        .ok_or_else(|| FormatError::invalid("residue out of range"))
}

fn vector(ring: Ring, values: &[u64], len: usize, what: &str) -> Result<RVector, FormatError> {
    if values.len() != len {
        return Err(FormatError::invalid(format!(
            "{what} has length {}, expected {len}",
            values.len()
        )));
    }
    let entries = values
        .iter()
        .map(|&v| residue(ring, v))
        .collect::<Result<_, _>>()?;
    Ok(RVector::new(ring, entries))
}

fn matrix(
    ring: Ring,
    rows: &[Vec<u64>],
    shape: (usize, usize),
    name: &str,
) -> Result<RMatrix, FormatError> {
    if rows.len() != shape.0 {
        return Err(FormatError::invalid(format!(
            "{name} has {} rows, expected {}",
            rows.len(),
            shape.0
        )));
    }
    let mut entries = Vec::with_capacity(shape.0 * shape.1);
    for row in rows {
        entries.extend_from_slice(vector(ring, row, shape.1, &format!("row of {name}"))?.entries());
    }
    Ok(RMatrix::new(ring, shape.0, shape.1, entries).expect("shape checked"))
}

fn check_ids(ids: impl IntoIterator<Item = u32>) -> Result<(), FormatError> {
    let mut seen = HashSet::new();
    for id in ids {
        if id == 0 {
            return Err(FormatError::invalid("participant ids start at 1"));
        }
        if !seen.insert(id) {
            return Err(FormatError::invalid("duplicate participant id"));
        }
    }
    Ok(())
}

pub fn write_code(code: &LinearCode) -> String {
    render(&CodeDoc {
        format_version: FORMAT_VERSION,
        ring: ring_doc(code.ring()),
        n: code.length(),
        k: code.dimension(),
        g: matrix_doc(code.generator()),
        h: matrix_doc(code.parity_check()),
    })
}

pub fn read_code(text: &str) -> Result<LinearCode, FormatError> {
    let doc: CodeDoc = parse(text)?;
    check_version(doc.format_version)?;
    let ring = check_ring(&doc.ring)?;
    let (n, k) = (doc.n, doc.k);
    if n == 0 || k > n {
        return Err(FormatError::invalid(format!(
            "bad dimensions n = {n}, k = {k}"
        )));
    }
    let g = matrix(ring, &doc.g, (k, n), "G")?;
    let h = matrix(ring, &doc.h, (n - k, n), "H")?;
    LinearCode::new(g, h).map_err(|e| match e {
        CodeError::NotOrthogonal => FormatError::invalid("GH^T != 0"),
        CodeError::NotFullRowRank(which) => {
            FormatError::invalid(format!("{which} matrix is not full row-rank"))
        }
        other => FormatError::invalid(other.to_string()),
    })
}

pub fn write_shares(ring: Ring, n: usize, shares: &[Share]) -> String {
    render(&SharesDoc {
        format_version: FORMAT_VERSION,
        ring: ring_doc(ring),
        n,
        shares: shares
            .iter()
            .map(|s| ShareDoc {
                id: s.id,
                c: vector_doc(&s.c),
                x: s.x.value() as u64,
                y: s.y.value() as u64,
            })
            .collect(),
    })
}

/// Parses a share file. Codeword membership is checked later, against the
/// code used for recovery.
pub fn read_shares(text: &str) -> Result<ShareSet, FormatError> {
    let doc: SharesDoc = parse(text)?;
    check_version(doc.format_version)?;
    let ring = check_ring(&doc.ring)?;
    check_ids(doc.shares.iter().map(|s| s.id))?;
    let shares = doc
        .shares
        .iter()
        .map(|s| {
            Ok(Share {
                id: s.id,
                c: vector(ring, &s.c, doc.n, "share codeword")?,
                x: residue(ring, s.x)?,
                y: residue(ring, s.y)?,
            })
        })
        .collect::<Result<_, FormatError>>()?;
    Ok(ShareSet {
        ring,
        n: doc.n,
        shares,
    })
}

pub fn write_secret(secret: &Secret) -> String {
    render(&SecretDoc {
        format_version: FORMAT_VERSION,
        ring: ring_doc(secret.ring()),
        n: secret.len(),
        secret: SecretBody {
            s: vector_doc(secret.as_vector()),
        },
    })
}

pub fn read_secret(text: &str) -> Result<Secret, FormatError> {
    let doc: SecretDoc = parse(text)?;
    check_version(doc.format_version)?;
    let ring = check_ring(&doc.ring)?;
    Ok(Secret::new(vector(ring, &doc.secret.s, doc.n, "secret")?))
}

pub fn write_deal_record(code: &LinearCode, record: &DealRecord) -> String {
    render(&DealDoc {
        format_version: FORMAT_VERSION,
        ring: ring_doc(code.ring()),
        n: code.length(),
        k: code.dimension(),
        deal: DealBody {
            seed: record.seed,
            l: record
                .coefficients
                .iter()
                .map(|(id, l)| DealEntry {
                    id: *id,
                    l: vector_doc(l),
                })
                .collect(),
        },
    })
}

pub fn read_deal_record(text: &str) -> Result<DealRecordFile, FormatError> {
    let doc: DealDoc = parse(text)?;
    check_version(doc.format_version)?;
    let ring = check_ring(&doc.ring)?;
    if doc.n == 0 || doc.k > doc.n {
        return Err(FormatError::invalid(format!(
            "bad dimensions n = {}, k = {}",
            doc.n, doc.k
        )));
    }
    check_ids(doc.deal.l.iter().map(|e| e.id))?;
    let coefficients = doc
        .deal
        .l
        .iter()
        .map(|e| Ok((e.id, vector(ring, &e.l, doc.k, "coefficient vector")?)))
        .collect::<Result<_, FormatError>>()?;
    Ok(DealRecordFile {
        ring,
        n: doc.n,
        k: doc.k,
        record: DealRecord {
            seed: doc.deal.seed,
            coefficients,
        },
    })
}

/// Writes `contents` to `path`. Without `overwrite` the file must not exist.
pub fn save(path: &Path, contents: &str, overwrite: bool) -> Result<(), FormatError> {
    let mut opts = OpenOptions::new();
    opts.write(true);
    if overwrite {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    let mut f = opts.open(path)?;
    f.write_all(contents.as_bytes())?;
    Ok(())
}

pub fn load(path: &Path) -> Result<String, FormatError> {
    Ok(std::fs::read_to_string(path)?)
}

fn render<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_scalar),
        Value::Object(map) => map.values().all(|v| is_scalar(v) || is_flat_array(v)),
        _ => true,
    }
}

fn is_flat_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(is_scalar))
}

fn write_inline(out: &mut String, v: &Value) {
    match v {
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_inline(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_inline(out, item);
            }
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    if is_flat(v) {
        write_inline(out, v);
        return;
    }
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
        _ => unreachable!("scalars are flat"),
    }
}
