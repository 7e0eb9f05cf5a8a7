//! The subcommands, each rendering its complete output as a string.

use std::collections::HashMap;
use std::fmt::Write as _;

use ncomplex::analysis::{line_integral, residue_expected, HypercomplexFunction, PathLoop};
use ncomplex::cosexp::{family_values, Family};
use ncomplex::functions;
use ncomplex::polyfactor::{factorize, verify_factorization, FactorMode, PolynomialN, RealFactor};
use ncomplex::spectral::{canonical_basis, spectral_layout, to_spectral};
use ncomplex::{AlgebraSpec, Component, Kind, NComplex};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::expr;
use crate::format::{coeffs_json, fmt_g15, kind_name, number_json, parse_algebra};

fn unit_name(sign: i8, index: usize) -> String {
    format!("{}h{index}", if sign < 0 { '-' } else { '+' })
}

fn unit_table(alg: AlgebraSpec) -> CliResult<Vec<Vec<String>>> {
    let n = alg.n();
    (0..n)
        .map(|j| (0..n).map(|k| Ok(alg.unit_product(j, k).map(|p| unit_name(p.sign, p.index))?)).collect())
        .collect()
}

struct NodalSet {
    component: Component,
    dimension: usize,
    description: String,
}

fn nodal_sets(alg: AlgebraSpec) -> Vec<NodalSet> {
    let n = alg.n();
    let layout = spectral_layout(alg);
    let mut out = Vec::new();
    for i in 0..layout.lines {
        let label = layout.line_labels[i];
        out.push(NodalSet { component: layout.line(i), dimension: n - 1, description: format!("hyperplane where {label} = 0") });
    }
    for k in 1..=layout.planes {
        let mut description = format!("subspace where v{k} = v~{k} = 0");
        if alg.kind() == Kind::Polar && n == 3 {
            description.push_str(", the trisector line x0 = x1 = x2");
        }
        out.push(NodalSet { component: Component::Plane(k), dimension: n - 2, description });
    }
    out
}

/// Linear combination of the coordinates `x0, x1, ...`.
fn combination(weights: &[f64]) -> String {
    let mut out = String::new();
    for (j, &w) in weights.iter().enumerate() {
        if w.abs() < 1e-14 {
            continue;
        }
        let sign = if w < 0.0 { '-' } else { '+' };
        let mag = if (w.abs() - 1.0).abs() < 1e-14 { String::new() } else { format!("{} ", fmt_g15(w.abs())) };
        if out.is_empty() {
            out = format!("{}{mag}x{j}", if w < 0.0 { "-" } else { "" });
        } else {
            write!(out, " {sign} {mag}x{j}").unwrap();
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct SpectralMap {
    component: Component,
    real: Vec<f64>,
    imag: Option<Vec<f64>>,
}

/// How each spectral component is read off the coordinates.
fn spectral_map(alg: AlgebraSpec) -> Vec<SpectralMap> {
    let n = alg.n();
    let units: Vec<_> = (0..n).map(|j| to_spectral(&NComplex::unit(alg, j, 1.0).expect("index in range"))).collect();
    let layout = spectral_layout(alg);
    let mut out: Vec<SpectralMap> = (0..layout.lines)
        .map(|i| SpectralMap { component: layout.line(i), real: units.iter().map(|s| s.lines()[i]).collect(), imag: None })
        .collect();
    out.extend((0..layout.planes).map(|k| SpectralMap {
        component: Component::Plane(k + 1),
        real: units.iter().map(|s| s.planes()[k].re).collect(),
        imag: Some(units.iter().map(|s| s.planes()[k].im).collect()),
    }));
    out
}

fn row(v: &NComplex) -> String {
    let parts: Vec<String> = v.coeffs().iter().map(|x| fmt_g15(*x)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn info(algebra: &str, as_json: bool) -> CliResult<String> {
    let alg = parse_algebra(algebra)?;
    let layout = spectral_layout(alg);
    let basis = canonical_basis(alg);
    let table = unit_table(alg)?;
    let nodal = nodal_sets(alg);
    let map = spectral_map(alg);
    if as_json {
        let doc = json!({
            "algebra": alg.to_string(),
            "kind": kind_name(alg.kind()),
            "n": alg.n(),
            "lines": layout.line_labels,
            "planes": layout.planes,
            "unit_products": table,
            "spectral_map": map.iter().map(|m| json!({
                "component": m.component.to_string(),
                "real": m.real,
                "imag": m.imag,
            })).collect::<Vec<_>>(),
            "canonical_basis": {
                "lines": basis.lines.iter().map(coeffs_json).collect::<Vec<_>>(),
                "planes": basis.planes.iter().map(|(e, et)| json!({"e": coeffs_json(e), "e_tilde": coeffs_json(et)})).collect::<Vec<_>>(),
            },
            "nodal_sets": nodal.iter().map(|s| json!({
                "component": s.component.to_string(),
                "dimension": s.dimension,
                "description": s.description,
            })).collect::<Vec<_>>(),
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?));
    }
    let mut out = String::new();
    let plural = |k: usize, w: &str| format!("{k} {w}{}", if k == 1 { "" } else { "s" });
    writeln!(out, "algebra: {alg}").unwrap();
    writeln!(out, "dimension: {}", alg.n()).unwrap();
    let labels = if layout.lines > 0 { format!(" ({})", layout.line_labels.join(", ")) } else { String::new() };
    writeln!(out, "spectral layout: {}{labels}, {}", plural(layout.lines, "line"), plural(layout.planes, "plane")).unwrap();
    writeln!(out, "unit products:").unwrap();
    let width = table.iter().flatten().map(String::len).max().unwrap_or(3).max(3) + 1;
    let mut header = format!("{:>5}", "");
    for k in 0..alg.n() {
        write!(header, "{:>width$}", format!("h{k}")).unwrap();
    }
    writeln!(out, "{}", header.trim_end()).unwrap();
    for (j, r) in table.iter().enumerate() {
        let mut line = format!("{:>5}", format!("h{j}"));
        for cell in r {
            write!(line, "{cell:>width$}").unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "spectral map:").unwrap();
    for m in &map {
        match &m.imag {
            None => writeln!(out, "  {}: {}", m.component, combination(&m.real)).unwrap(),
            Some(im) => writeln!(out, "  {}: ({}) + i ({})", m.component, combination(&m.real), combination(im)).unwrap(),
        }
    }
    writeln!(out, "canonical basis:").unwrap();
    for (i, e) in basis.lines.iter().enumerate() {
        writeln!(out, "  {}: {}", layout.line(i), row(e)).unwrap();
    }
    for (k, (e, et)) in basis.planes.iter().enumerate() {
        writeln!(out, "  plane {}: e = {}, e~ = {}", k + 1, row(e), row(et)).unwrap();
    }
    writeln!(out, "nodal sets:").unwrap();
    for s in &nodal {
        writeln!(out, "  {}: {} (dimension {})", s.component, s.description, s.dimension).unwrap();
    }
    Ok(out)
}

/// Evaluates `src` with `u` (if given) and the `name=number` bindings.
pub fn eval(src: &str, u: Option<&str>, bindings: &[String]) -> CliResult<String> {
    let mut env = HashMap::new();
    if let Some(u) = u {
        env.insert("u".to_string(), crate::format::parse_number(u)?);
    }
    for b in bindings {
        let (name, value) = b.split_once('=').ok_or_else(|| CliError::usage(format!("binding `{b}` must look like name=number")))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(CliError::usage(format!("bad binding name `{name}`")));
        }
        env.insert(name.to_string(), crate::format::parse_number(value)?);
    }
    let r = expr::evaluate(src, &env)?;
    Ok(format!("{}\n", serde_json::to_string(&number_json(&r))?))
}

pub fn parse_family(s: &str) -> CliResult<Family> {
    match s {
        "polar" | "g" => Ok(Family::PolarG),
        "planar" | "f" => Ok(Family::PlanarF),
        _ => Err(CliError::usage(format!("unknown family `{s}` (expected polar or planar)"))),
    }
}

/// CSV of the family at `from, from + step, ...` up to `to`.
pub fn cosexp_table(family: &str, n: usize, from: f64, to: f64, step: f64) -> CliResult<String> {
    let fam = parse_family(family)?;
    if n == 0 || n > ncomplex::MAX_N {
        return Err(CliError::usage(format!("n must lie in 1..={}", ncomplex::MAX_N)));
    }
    if !(step > 0.0) || !from.is_finite() || !to.is_finite() || to < from {
        return Err(CliError::usage("need finite from <= to and step > 0"));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    let letter = if fam == Family::PolarG { 'g' } else { 'f' };
    let mut out = String::from("y");
    for k in 0..n {
        write!(out, ",{letter}{k}").unwrap();
    }
    out.push('\n');
    let snap = 1e-12 * from.abs().max(to.abs()).max(step);
    for i in 0..count {
        let mut y = from + i as f64 * step;
        if y.abs() <= snap {
            y = 0.0;
        }
        out.push_str(&fmt_g15(y));
        for v in family_values(fam, n, y)? {
            out.push(',');
            out.push_str(&fmt_g15(v));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Coefficients as a JSON array whose entries are scalars or full vectors.
pub fn parse_coeffs(alg: AlgebraSpec, text: &str) -> CliResult<Vec<NComplex>> {
    let t = text.trim();
    let t = if t.starts_with('[') { t.to_string() } else { format!("[{t}]") };
    let v: Value = serde_json::from_str(&t)?;
    let items = v.as_array().ok_or_else(|| CliError::usage("coefficients must be a list"))?;
    items
        .iter()
        .map(|item| match item {
            Value::Number(x) => Ok(NComplex::scalar(alg, x.as_f64().expect("finite JSON number"))),
            Value::Array(xs) => {
                let c = xs
                    .iter()
                    .map(|x| x.as_f64().ok_or_else(|| CliError::usage("coefficient vectors hold numbers")))
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(NComplex::new(alg, c)?)
            }
            _ => Err(CliError::usage("each coefficient is a number or a list of numbers")),
        })
        .collect()
}

pub fn factor(algebra: &str, coeffs: &str, mode: &str) -> CliResult<String> {
    let alg = parse_algebra(algebra)?;
    let mode: FactorMode = mode.parse()?;
    let p = PolynomialN::new(alg, parse_coeffs(alg, coeffs)?)?;
    let f = factorize(&p, mode)?;
    let mut worst: f64 = 0.0;
    for set in &f.factorizations {
        worst = worst.max(verify_factorization(&p, set)?.max_deviation);
    }
    let components: Vec<Value> = f
        .set
        .component_roots
        .iter()
        .map(|c| json!({"component": c.component.to_string(), "roots": c.roots.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()}))
        .collect();
    let real_factors: Vec<Value> = f
        .set
        .real_factors
        .iter()
        .map(|(c, fs)| {
            let fs: Vec<Value> = fs
                .iter()
                .map(|rf| match rf {
                    RealFactor::Linear(r) => json!({"linear": r}),
                    RealFactor::Quadratic { b, c } => json!({"quadratic": [b, c]}),
                })
                .collect();
            json!({"component": c.to_string(), "factors": fs})
        })
        .collect();
    let sets: Vec<Value> = f.factorizations.iter().map(|s| Value::from(s.iter().map(coeffs_json).collect::<Vec<_>>())).collect();
    let doc = json!({
        "algebra": alg.to_string(),
        "mode": mode.to_string(),
        "degree": p.degree(),
        "components": components,
        "real_factors": real_factors,
        "count": sets.len(),
        "truncated": f.truncated,
        "max_residual": worst,
        "factorizations": sets,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

/// Integration request; flags and `--spec` documents share this shape.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct IntegrateSpec {
    pub algebra: String,
    /// `pole`, `power:M`, `exp`, `sin`, `cos` or `poly:[a0,a1,...]`.
    pub function: String,
    pub u0: Vec<f64>,
    pub plane: usize,
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_vertices")]
    pub vertices: usize,
    #[serde(default = "default_subdivisions")]
    pub subdivisions: usize,
}

fn default_radius() -> f64 {
    1.0
}

fn default_vertices() -> usize {
    10_000
}

fn default_subdivisions() -> usize {
    1
}

/// Residue-bearing tolerance and the analytic one.
const POLE_TOL: f64 = 1e-4;
const ANALYTIC_TOL: f64 = 1e-6;

fn integrand(name: &str, u0: &NComplex) -> CliResult<(HypercomplexFunction, bool)> {
    let alg = u0.algebra();
    if name == "pole" {
        return Ok((HypercomplexFunction::simple_pole(u0.clone()), true));
    }
    if let Some(m) = name.strip_prefix("power:") {
        let m: i64 = m.trim().parse().map_err(|_| CliError::usage(format!("bad power `{m}`")))?;
        return Ok((HypercomplexFunction::power_about(u0.clone(), m), m == -1));
    }
    if let Some(c) = name.strip_prefix("poly:") {
        let coeffs = parse_coeffs(alg, c)?;
        let p = PolynomialN::new(alg, coeffs)?;
        return Ok((HypercomplexFunction::new(move |u| p.eval(u)), false));
    }
    let f: fn(&NComplex) -> ncomplex::Result<NComplex> = match name {
        "exp" => functions::exp,
        "sin" => functions::sin,
        "cos" => functions::cos,
        _ => return Err(CliError::usage(format!("unknown function `{name}`"))),
    };
    Ok((HypercomplexFunction::new(f), false))
}

pub fn parse_integrate_spec(text: &str) -> CliResult<IntegrateSpec> {
    let body = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        std::fs::read_to_string(text).map_err(|e| CliError::usage(format!("cannot read {text}: {e}")))?
    };
    Ok(serde_json::from_str(&body)?)
}

/// Integrates around a circle in `plane` about `u0`; exit status 1 when the
/// result misses its expectation.
pub fn integrate(spec: &IntegrateSpec) -> CliResult<(String, bool)> {
    let alg = parse_algebra(&spec.algebra)?;
    let u0 = NComplex::new(alg, spec.u0.clone())?;
    let (f, pole) = integrand(&spec.function, &u0)?;
    let path = PathLoop::circle_around(&u0, spec.plane, spec.radius, spec.vertices)?;
    let integral = line_integral(&f, &path, spec.subdivisions)?;
    let expected = if pole { residue_expected(&u0, &path)? } else { NComplex::zero(alg) };
    let deviation = integral.max_abs_diff(&expected);
    let tolerance = if pole { POLE_TOL } else { ANALYTIC_TOL };
    let pass = deviation <= tolerance;
    let doc = json!({
        "algebra": alg.to_string(),
        "function": spec.function,
        "u0": spec.u0,
        "plane": spec.plane,
        "radius": spec.radius,
        "vertices": spec.vertices,
        "subdivisions": spec.subdivisions,
        "integral": coeffs_json(&integral),
        "expected": coeffs_json(&expected),
        "deviation": deviation,
        "tolerance": tolerance,
        "pass": pass,
    });
    Ok((format!("{}\n", serde_json::to_string_pretty(&doc)?), pass))
}
