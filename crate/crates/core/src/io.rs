//! Versioned TOML input files: a `[field]` table plus exactly one of `[scheme]`,
//! `[arrangement]` or `[codim1]`.

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, HyperplaneClass, HyperplaneSource};
use crate::decimal::parse_rational;
use crate::exact::{ExactError, FieldElement, FieldVector, NumberField};
use crate::scheme::{Codim1Domain, ProjectionScheme, SchemeError};

/// The input format version this build reads.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("input format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// A rational written as an integer or a "p/q" string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn value(&self) -> Result<BigRational, InputError> {
        match self {
            Num::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Num::Text(s) => parse_rational(s).map_err(InputError::Invalid),
        }
    }
}

/// Power-basis coefficients of a field element, lowest degree first.
type Coeffs = Vec<Num>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldTable {
    min_poly: Vec<Num>,
    root_interval: [Num; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeTable {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    #[serde(rename = "E_basis")]
    e_basis: Vec<Vec<Coeffs>>,
    u: Option<Vec<Coeffs>>,
    #[serde(default)]
    label: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperplaneTable {
    normal: Vec<Coeffs>,
    #[serde(default)]
    offset: Option<Coeffs>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementTable {
    dim_v: usize,
    gamma: Vec<Vec<Coeffs>>,
    hyperplanes: Vec<HyperplaneTable>,
    #[serde(default)]
    label: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Codim1Table {
    generators: Vec<Coeffs>,
    intervals: Vec<[Coeffs; 2]>,
    #[serde(default)]
    label: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    version: u32,
    field: FieldTable,
    scheme: Option<SchemeTable>,
    arrangement: Option<ArrangementTable>,
    codim1: Option<Codim1Table>,
}

/// Parsed payload of an input file.
#[derive(Clone, Debug)]
pub enum Input {
    Scheme(ProjectionScheme),
    Arrangement { arrangement: Arrangement, label: String },
    Codim1 { domain: Codim1Domain, label: String },
}

impl Input {
    pub fn label(&self) -> &str {
        match self {
            Input::Scheme(s) => &s.label,
            Input::Arrangement { label, .. } | Input::Codim1 { label, .. } => label,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Input::Scheme(_) => "scheme",
            Input::Arrangement { .. } => "arrangement",
            Input::Codim1 { .. } => "codim1",
        }
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn element(field: &Arc<NumberField>, c: &Coeffs) -> Result<FieldElement, InputError> {
    if c.len() > field.degree() {
        return Err(InputError::Invalid(format!(
            "field element has {} coefficients, the field has degree {}",
            c.len(),
            field.degree()
        )));
    }
    let coeffs = c.iter().map(Num::value).collect::<Result<Vec<_>, _>>()?;
    Ok(FieldElement::from_coeffs(field, coeffs))
}

fn vector(field: &Arc<NumberField>, v: &[Coeffs]) -> Result<FieldVector, InputError> {
    v.iter().map(|c| element(field, c)).collect()
}

/// Offset used when a scheme omits `u`: small distinct rationals, nonsingular for the
/// bundled examples.
pub fn default_offset(field: &Arc<NumberField>, n: usize) -> FieldVector {
    (0..n)
        .map(|i| FieldElement::from_rational(field, BigRational::new(BigInt::from(1 + 2 * i), BigInt::from(97 + 10 * i))))
        .collect()
}

/// Parses the text of an input file.
pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let file: InputFile = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_column(text, s.start));
        InputError::Parse { line, column, message: e.message().to_string() }
    })?;
    if file.version != FORMAT_VERSION {
        return Err(InputError::VersionMismatch { found: file.version, expected: FORMAT_VERSION });
    }
    let payloads = [file.scheme.is_some(), file.arrangement.is_some(), file.codim1.is_some()];
    if payloads.iter().filter(|&&p| p).count() != 1 {
        return Err(InputError::Parse {
            line: 0,
            column: 0,
            message: "exactly one of [scheme], [arrangement], [codim1] must be present".into(),
        });
    }
    let min_poly: Vec<BigInt> = file
        .field
        .min_poly
        .iter()
        .map(|c| {
            let q = c.value()?;
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(InputError::Invalid("minimal polynomial coefficients must be integers".into()))
            }
        })
        .collect::<Result<_, _>>()?;
    let field = NumberField::new(min_poly, file.field.root_interval[0].value()?, file.field.root_interval[1].value()?)?;

    if let Some(s) = file.scheme {
        let e_basis = s.e_basis.iter().map(|row| vector(&field, row)).collect::<Result<Vec<_>, _>>()?;
        let u = match &s.u {
            Some(u) => vector(&field, u)?,
            None => default_offset(&field, s.n),
        };
        return Ok(Input::Scheme(ProjectionScheme { n: s.n, d: s.d, field, e_basis, u, label: s.label }));
    }
    if let Some(a) = file.arrangement {
        let gamma = a.gamma.iter().map(|g| vector(&field, g)).collect::<Result<Vec<_>, _>>()?;
        let mut classes = Vec::with_capacity(a.hyperplanes.len());
        for (i, h) in a.hyperplanes.iter().enumerate() {
            let offset = match &h.offset {
                Some(c) => element(&field, c)?,
                None => FieldElement::zero(&field),
            };
            classes.push(HyperplaneClass::new(vector(&field, &h.normal)?, offset, vec![HyperplaneSource::Input(i)])?);
        }
        let arrangement = Arrangement::new(field, a.dim_v, gamma, classes)?;
        return Ok(Input::Arrangement { arrangement, label: a.label });
    }
    let c = file.codim1.expect("one payload is present");
    let generators = vector(&field, &c.generators)?;
    let mut endpoints = Vec::with_capacity(2 * c.intervals.len());
    for [a, b] in &c.intervals {
        endpoints.push(element(&field, a)?);
        endpoints.push(element(&field, b)?);
    }
    Ok(Input::Codim1 { domain: Codim1Domain::new(generators, endpoints)?, label: c.label })
}

/// A field element written either as a single rational or as power-basis coefficients.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Scalar(Num),
    Coeffs(Coeffs),
}

#[derive(Debug, Deserialize)]
struct VectorLiteral {
    v: Vec<Entry>,
}

/// Parses a vector literal such as `["1/97", "3/107"]` or `[[0, 1], [1]]`.
pub fn parse_vector(field: &Arc<NumberField>, text: &str) -> Result<FieldVector, InputError> {
    let lit: VectorLiteral = toml::from_str(&format!("v = {text}")).map_err(|e| InputError::Parse {
        line: 1,
        column: e.span().map_or(0, |s| s.start.saturating_sub(3) + 1),
        message: e.message().to_string(),
    })?;
    lit.v
        .iter()
        .map(|e| match e {
            Entry::Scalar(n) => Ok(FieldElement::from_rational(field, n.value()?)),
            Entry::Coeffs(c) => element(field, c),
        })
        .collect()
}

/// Reads and parses an input file.
pub fn load_input(path: &Path) -> Result<Input, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    parse_input(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIELD: &str = "version = 1\n[field]\nmin_poly = [-1, 1, 1]\nroot_interval = [\"1/2\", \"1\"]\n";

    #[test]
    fn codim1_file() {
        let text = format!("{FIELD}[codim1]\ngenerators = [[1], [0, 1]]\nintervals = [[[0], [1, 1]]]\n");
        match parse_input(&text).unwrap() {
            Input::Codim1 { domain, .. } => assert_eq!(domain.endpoints.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_payloads_are_rejected() {
        let text = format!(
            "{FIELD}[codim1]\ngenerators = [[1]]\nintervals = [[[0], [1]]]\n[scheme]\nN = 2\nd = 1\nE_basis = [[[1]], [[0, 1]]]\n"
        );
        assert!(matches!(parse_input(&text), Err(InputError::Parse { .. })));
    }

    #[test]
    fn version_is_checked() {
        let text = FIELD.replace("version = 1", "version = 7") + "[codim1]\ngenerators = [[1]]\nintervals = [[[0], [1]]]\n";
        assert!(matches!(parse_input(&text), Err(InputError::VersionMismatch { found: 7, .. })));
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let text = format!("{FIELD}[codim1]\ngenerators = [[1]\n");
        match parse_input(&text) {
            Err(InputError::Parse { line, .. }) => assert!(line >= 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn vector_literals() {
        let text = format!("{FIELD}[codim1]\ngenerators = [[1]]\nintervals = [[[0], [1]]]\n");
        let Input::Codim1 { domain, .. } = parse_input(&text).unwrap() else { unreachable!() };
        let f = domain.generators[0].field().clone();
        let v = parse_vector(&f, r#"["1/2", [0, 1], 3]"#).unwrap();
        assert_eq!(v[1], FieldElement::generator(&f));
        assert_eq!(v[2], FieldElement::from_int(&f, 3));
        assert!(parse_vector(&f, "[1, ").is_err());
    }

    #[test]
    fn rational_strings_are_accepted() {
        let text = format!("{FIELD}[codim1]\ngenerators = [[1], [0, 1]]\nintervals = [[[0], [\"1/2\"]]]\n");
        assert!(parse_input(&text).is_ok());
    }
}
