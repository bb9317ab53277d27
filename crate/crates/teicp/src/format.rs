//! Line-oriented tensor text format.
//!
//! ```text
//! # comments and blank lines are ignored anywhere
//! teicp-tensor v1
//! order 6
//! dim 4
//! symmetric true
//! b diag-identity          (optional)
//! 1 1 1 1 1 1 0.1197
//! ...
//! ```
//!
//! Entry indices are 1-based. Symmetric files list each permutation class
//! once, by its non-decreasing representative; unlisted entries are zero.
//! Values are written with 17 significant digits so that a serialize/parse
//! round trip reproduces every `f64` exactly.

use std::fmt::Write as _;
use std::path::Path;

use teicp_core::tensor::for_each_sorted_tuple;
use teicp_core::{BOperator, GeneralTensor, SemiSymmetricTensor, SymmetricTensor};

pub const FORMAT_TAG: &str = "teicp-tensor v1";

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: missing {0}")]
    Truncated(&'static str),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Tag naming one of the built-in `B` operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BTag {
    SphereIdentity,
    DiagIdentity,
}

impl BTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            BTag::SphereIdentity => "sphere-identity",
            BTag::DiagIdentity => "diag-identity",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sphere-identity" => Some(BTag::SphereIdentity),
            "diag-identity" => Some(BTag::DiagIdentity),
            _ => None,
        }
    }

    pub fn build(&self, order: usize, dim: usize) -> Result<BOperator, teicp_core::Error> {
        match self {
            BTag::SphereIdentity => BOperator::sphere_identity(order, dim),
            BTag::DiagIdentity => BOperator::diag_identity(order, dim),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TensorData {
    Symmetric(SymmetricTensor),
    General(GeneralTensor),
}

impl TensorData {
    pub fn order(&self) -> usize {
        match self {
            TensorData::Symmetric(t) => t.order(),
            TensorData::General(t) => t.order(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TensorData::Symmetric(t) => t.dim(),
            TensorData::General(t) => t.dim(),
        }
    }

    pub fn to_semi_symmetric(&self) -> SemiSymmetricTensor {
        match self {
            TensorData::Symmetric(t) => t.to_semi_symmetric(),
            TensorData::General(t) => t.semi_symmetrize(),
        }
    }

    pub fn to_general(&self) -> GeneralTensor {
        match self {
            TensorData::Symmetric(t) => t.to_general(),
            TensorData::General(t) => t.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorFile {
    pub tensor: TensorData,
    pub b: Option<BTag>,
}

impl TensorFile {
    pub fn new(tensor: TensorData) -> Self {
        Self { tensor, b: None }
    }

    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        parse_tensor(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), FormatError> {
        std::fs::write(path, serialize_tensor(self)).map_err(|e| FormatError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

/// Significant lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn header_value<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &'static str,
) -> Result<(usize, &'a str), FormatError> {
    let (no, line) = lines.next().ok_or(FormatError::Truncated(key))?;
    let mut fields = line.split_whitespace();
    match (fields.next(), fields.next(), fields.next()) {
        (Some(k), Some(v), None) if k == key => Ok((no, v)),
        _ => Err(syntax(no, format!("expected `{key} <value>`, found `{line}`"))),
    }
}

fn parse_positive(no: usize, key: &str, v: &str) -> Result<usize, FormatError> {
    match v.parse::<usize>() {
        Ok(k) if k > 0 => Ok(k),
        _ => Err(syntax(no, format!("{key} must be a positive integer, found `{v}`"))),
    }
}

pub fn parse_tensor(text: &str) -> Result<TensorFile, FormatError> {
    let mut lines = content_lines(text).peekable();
    let (no, tag) = lines.next().ok_or(FormatError::Truncated("format tag"))?;
    if tag != FORMAT_TAG {
        return Err(syntax(no, format!("expected `{FORMAT_TAG}`, found `{tag}`")));
    }
    let (no, v) = header_value(&mut lines, "order")?;
    let order = parse_positive(no, "order", v)?;
    let (no, v) = header_value(&mut lines, "dim")?;
    let dim = parse_positive(no, "dim", v)?;
    let (no, v) = header_value(&mut lines, "symmetric")?;
    let symmetric = match v {
        "true" => true,
        "false" => false,
        _ => return Err(syntax(no, format!("symmetric must be `true` or `false`, found `{v}`"))),
    };
    let mut b = None;
    if let Some((_, line)) = lines.peek() {
        if line.starts_with("b ") || *line == "b" {
            let (no, v) = header_value(&mut lines, "b")?;
            b = Some(BTag::parse(v).ok_or_else(|| syntax(no, format!("unknown B operator `{v}`")))?);
        }
    }

    let size_error = |e: teicp_core::Error| syntax(3, e.to_string());
    let mut tensor = if symmetric {
        TensorData::Symmetric(SymmetricTensor::zeros(order, dim).map_err(size_error)?)
    } else {
        TensorData::General(GeneralTensor::zeros(order, dim).map_err(size_error)?)
    };
    let mut seen = std::collections::HashSet::new();
    let mut index = vec![0usize; order];
    for (no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != order + 1 {
            return Err(syntax(
                no,
                format!("expected {order} indices and a value, found {} fields", fields.len()),
            ));
        }
        for (slot, field) in index.iter_mut().zip(&fields[..order]) {
            match field.parse::<usize>() {
                Ok(i) if (1..=dim).contains(&i) => *slot = i - 1,
                _ => return Err(syntax(no, format!("index `{field}` outside 1..={dim}"))),
            }
        }
        let value: f64 = fields[order]
            .parse()
            .map_err(|_| syntax(no, format!("invalid value `{}`", fields[order])))?;
        if !value.is_finite() {
            return Err(syntax(no, "value must be finite"));
        }
        if symmetric && index.windows(2).any(|w| w[0] > w[1]) {
            return Err(syntax(no, "symmetric entries need non-decreasing indices"));
        }
        if !seen.insert(index.clone()) {
            return Err(syntax(no, "duplicate entry"));
        }
        let stored = match &mut tensor {
            TensorData::Symmetric(t) => t.set(&index, value),
            TensorData::General(t) => t.set(&index, value),
        };
        stored.map_err(|e| syntax(no, e.to_string()))?;
    }
    Ok(TensorFile { tensor, b })
}

fn write_entry(out: &mut String, index: &[usize], value: f64) {
    for i in index {
        let _ = write!(out, "{} ", i + 1);
    }
    let _ = writeln!(out, "{value:.16e}");
}

/// Text form of `file`; zero entries are omitted.
pub fn serialize_tensor(file: &TensorFile) -> String {
    let t = &file.tensor;
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_TAG}");
    let _ = writeln!(out, "order {}", t.order());
    let _ = writeln!(out, "dim {}", t.dim());
    let _ = writeln!(out, "symmetric {}", matches!(t, TensorData::Symmetric(_)));
    if let Some(b) = file.b {
        let _ = writeln!(out, "b {}", b.as_str());
    }
    match t {
        TensorData::Symmetric(s) => {
            // canonical tuple order, independent of insertion history
            for_each_sorted_tuple(s.order(), s.dim(), |idx| {
                let v = s.get(idx).expect("in range");
                if v != 0.0 {
                    write_entry(&mut out, idx, v);
                }
            });
        }
        TensorData::General(g) => {
            let (m, n) = (g.order(), g.dim());
            let mut idx = vec![0usize; m];
            for (flat, &v) in g.data().iter().enumerate() {
                if v == 0.0 {
                    continue;
                }
                let mut rest = flat;
                for slot in idx.iter_mut().rev() {
                    *slot = rest % n;
                    rest /= n;
                }
                write_entry(&mut out, &idx, v);
            }
        }
    }
    out
}
