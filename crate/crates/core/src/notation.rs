//! Text specs naming a module or a table:
//!
//! ```text
//! linear:<n>:<a>            Λ_n/(t - a)
//! poly:<n>:<c0>,...,1       Λ_n/(h), ascending coefficients
//! sum:<spec>+<spec>+...     direct sum of module specs
//! pair:@<path>              module JSON file
//! table:@<path>             quandle table file (JSON or plain text)
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use crate::arith::modulo;
use crate::lambda::{direct_sum, LambdaModule, ModuleError, ModuleJson, ModuleSpec, Polynomial};
use crate::quandle::{alexander_table, QuandleError, QuandleTable};

/// A syntax error at a byte offset of the spec string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Errors from loading a syntactically valid spec.
#[derive(Debug, thiserror::Error)]
pub enum ResolveError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Table(#[from] QuandleError),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spec {
    Linear { n: usize, a: i64 },
    Poly { n: usize, coeffs: Vec<i64> },
    Sum(Vec<Spec>),
    PairFile(PathBuf),
    TableFile(PathBuf),
}

/// A resolved spec.
#[derive(Debug, Clone)]
pub enum Quandle {
    Module(LambdaModule),
    Table(QuandleTable),
}

impl Quandle {
    pub fn table(&self) -> QuandleTable {
        match self {
            Quandle::Module(m) => alexander_table(m),
            Quandle::Table(t) => t.clone(),
        }
    }

    pub fn module(&self) -> Option<&LambdaModule> {
        match self {
            Quandle::Module(m) => Some(m),
            Quandle::Table(_) => None,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Quandle::Module(m) => m.order(),
            Quandle::Table(t) => t.order(),
        }
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spec::Linear { n, a } => write!(f, "linear:{n}:{a}"),
            Spec::Poly { n, coeffs } => {
                let c: Vec<String> = coeffs.iter().map(i64::to_string).collect();
                write!(f, "poly:{n}:{}", c.join(","))
            }
            Spec::Sum(parts) => {
                let p: Vec<String> = parts.iter().map(Spec::to_string).collect();
                write!(f, "sum:{}", p.join("+"))
            }
            Spec::PairFile(p) => write!(f, "pair:@{}", p.display()),
            Spec::TableFile(p) => write!(f, "table:@{}", p.display()),
        }
    }
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError { position, message: message.into() }
}

fn parse_int<T: std::str::FromStr>(text: &str, start: usize, what: &str) -> Result<T, ParseError> {
    text.trim().parse().map_err(|_| err(start, format!("expected {what}, found {text:?}")))
}

/// Parses a spec string, reporting the byte offset of the first bad token.
pub fn parse_spec(text: &str) -> Result<Spec, ParseError> {
    parse_at(text, 0, true)
}

fn parse_at(text: &str, offset: usize, allow_table: bool) -> Result<Spec, ParseError> {
    let Some(colon) = text.find(':') else {
        return Err(err(offset, format!("expected <kind>:..., found {text:?}")));
    };
    let (kind, rest) = (&text[..colon], &text[colon + 1..]);
    let body = offset + colon + 1;
    match kind {
        "linear" => {
            let mut fields = rest.splitn(2, ':');
            let n_text = fields.next().unwrap_or("");
            let Some(a_text) = fields.next() else {
                return Err(err(body + n_text.len(), "expected linear:<n>:<a>"));
            };
            let n = parse_int(n_text, body, "a modulus")?;
            let a = parse_int(a_text, body + n_text.len() + 1, "an integer multiplier")?;
            Ok(Spec::Linear { n, a })
        }
        "poly" => {
            let Some(sep) = rest.find(':') else {
                return Err(err(body + rest.len(), "expected poly:<n>:<c0>,...,1"));
            };
            let n = parse_int(&rest[..sep], body, "a modulus")?;
            let mut pos = body + sep + 1;
            let mut coeffs = Vec::new();
            for tok in rest[sep + 1..].split(',') {
                coeffs.push(parse_int(tok, pos, "an integer coefficient")?);
                pos += tok.len() + 1;
            }
            Ok(Spec::Poly { n, coeffs })
        }
        "sum" => {
            let mut parts = Vec::new();
            if rest.is_empty() {
                return Ok(Spec::Sum(parts));
            }
            let mut pos = body;
            for tok in rest.split('+') {
                // `sum:` inside a sum only flattens.
                let mut inner = tok;
                let mut at = pos;
                while let Some(stripped) = inner.strip_prefix("sum:") {
                    inner = stripped;
                    at += 4;
                }
                parts.push(parse_at(inner, at, false)?);
                pos += tok.len() + 1;
            }
            Ok(Spec::Sum(parts))
        }
        "pair" | "table" => {
            let Some(path) = rest.strip_prefix('@') else {
                return Err(err(body, "expected @<path>"));
            };
            if path.is_empty() {
                return Err(err(body + 1, "empty path"));
            }
            if kind == "pair" {
                Ok(Spec::PairFile(path.into()))
            } else if allow_table {
                Ok(Spec::TableFile(path.into()))
            } else {
                Err(err(offset, "tables cannot be summed"))
            }
        }
        other => Err(err(offset, format!("unknown spec kind {other:?}"))),
    }
}

fn read(path: &Path) -> Result<String, ResolveError> {
    std::fs::read_to_string(path).map_err(|source| ResolveError::Io { path: path.to_path_buf(), source })
}

impl Spec {
    /// Loads files and builds the module or table.
    pub fn resolve(&self) -> Result<Quandle, ResolveError> {
        match self {
            Spec::TableFile(path) => Ok(Quandle::Table(QuandleTable::parse(&read(path)?)?)),
            other => Ok(Quandle::Module(other.module()?)),
        }
    }

    fn module(&self) -> Result<LambdaModule, ResolveError> {
        Ok(match self {
            Spec::Linear { n, a } => {
                if *n < 2 {
                    return Err(ModuleError::InvalidModulus(*n).into());
                }
                let a = modulo(*a, *n as u64) as usize;
                LambdaModule::linear(*n, a)?
            }
            Spec::Poly { n, coeffs } => {
                let h = Polynomial::new(*n, coeffs)?;
                LambdaModule::from_polynomial(&h)?.with_spec(ModuleSpec::Poly(h))
            }
            Spec::Sum(parts) => {
                let mut acc = LambdaModule::zero();
                for p in parts {
                    acc = direct_sum(&acc, &p.module()?);
                }
                acc
            }
            Spec::PairFile(path) => {
                let json: ModuleJson =
                    serde_json::from_str(&read(path)?).map_err(|e| ModuleError::Json(e.to_string()))?;
                LambdaModule::from_json(&json)?
            }
            Spec::TableFile(_) => unreachable!("tables are handled by resolve"),
        })
    }
}
