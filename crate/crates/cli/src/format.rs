//! Number documents and numeric text formats.

use ncomplex::{AlgebraSpec, Kind, NComplex};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub kind: String,
    pub n: usize,
}

/// JSON form of a number: `{"algebra": {"kind": ..., "n": ...}, "coeffs": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumberDocument {
    pub algebra: AlgebraDoc,
    pub coeffs: Vec<f64>,
}

pub fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Polar => "polar",
        Kind::Planar => "planar",
        Kind::Circular4 => "circular4",
        Kind::Hyperbolic4 => "hyperbolic4",
    }
}

impl AlgebraDoc {
    pub fn of(alg: AlgebraSpec) -> Self {
        Self { kind: kind_name(alg.kind()).to_string(), n: alg.n() }
    }

    pub fn spec(&self) -> CliResult<AlgebraSpec> {
        let spec = match self.kind.as_str() {
            "circular4" | "hyperbolic4" if self.n == 4 => self.kind.clone(),
            "circular4" | "hyperbolic4" => return Err(CliError::usage(format!("{} has dimension 4", self.kind))),
            other => format!("{other}:{}", self.n),
        };
        Ok(spec.parse()?)
    }
}

impl NumberDocument {
    pub fn of(u: &NComplex) -> Self {
        Self { algebra: AlgebraDoc::of(u.algebra()), coeffs: u.coeffs().to_vec() }
    }

    pub fn to_number(&self) -> CliResult<NComplex> {
        Ok(NComplex::new(self.algebra.spec()?, self.coeffs.clone())?)
    }
}

pub fn parse_algebra(s: &str) -> CliResult<AlgebraSpec> {
    Ok(s.parse()?)
}

fn parse_list(body: &str) -> CliResult<Vec<f64>> {
    if body.trim().is_empty() {
        return Ok(vec![]);
    }
    body.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::usage(format!("bad number `{}`", t.trim()))))
        .collect()
}

/// Accepts `descriptor:[c0,c1,...]` or a JSON number document.
pub fn parse_number(s: &str) -> CliResult<NComplex> {
    let s = s.trim();
    if s.starts_with('{') {
        let doc: NumberDocument = serde_json::from_str(s)?;
        return doc.to_number();
    }
    let open = s.find('[').ok_or_else(|| CliError::usage(format!("bad number `{s}` (expected descriptor:[c0,...])")))?;
    if !s.ends_with(']') {
        return Err(CliError::usage(format!("bad number `{s}`: missing `]`")));
    }
    let alg = parse_algebra(s[..open].trim_end_matches(':'))?;
    Ok(NComplex::new(alg, parse_list(&s[open + 1..s.len() - 1])?)?)
}

/// Coefficient vector as a JSON array of shortest round-trip numbers.
pub fn coeffs_json(u: &NComplex) -> Value {
    Value::from(u.coeffs().to_vec())
}

pub fn number_json(u: &NComplex) -> Value {
    serde_json::to_value(NumberDocument::of(u)).expect("plain data serializes")
}

/// C-style `%.15g`.
pub fn fmt_g15(x: f64) -> String {
    const P: i32 = 15;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
