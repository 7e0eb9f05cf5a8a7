//! Randomized self-checks behind `ncx check`.

use std::fmt;

use ncomplex::analysis::{cauchy_check, line_integral, residue_expected, riemann_check, second_order_check, HypercomplexFunction, PathLoop};
use ncomplex::cosexp::{closed_form_reference, cosexp_series, CosexpKind, Family, CLOSED_FORM_PAIRS};
use ncomplex::functions::{exp, log};
use ncomplex::matrep::{block_diagonalize, representation_matrix};
use ncomplex::polyfactor::{factorize, verify_factorization, FactorMode, PolynomialN, VERIFY_TOL};
use ncomplex::spectral::{from_spectral, spectral_layout, spectral_mul, to_spectral};
use ncomplex::{AlgebraSpec, Kind, NComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

pub const SUITES: [&str; 8] = ["algebra", "spectral", "cosexp", "functions", "factor", "residue", "riemann", "matrep"];

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: String,
    /// Largest observed error over the samples.
    pub worst: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        self.worst <= self.tolerance
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}/{} worst={:.3e} tol={:.1e}", self.suite, self.name, self.worst, self.tolerance)
    }
}

fn default_algebras() -> Vec<AlgebraSpec> {
    let mut v: Vec<AlgebraSpec> = (2..=8).map(|n| AlgebraSpec::polar(n).unwrap()).collect();
    v.extend([2, 4, 6, 8].map(|n| AlgebraSpec::planar(n).unwrap()));
    v.push(AlgebraSpec::circular4());
    v.push(AlgebraSpec::hyperbolic4());
    v
}

/// Every algebra of dimension `n`.
fn algebras_of(n: usize) -> Vec<AlgebraSpec> {
    let mut v: Vec<AlgebraSpec> = [Kind::Polar, Kind::Planar].into_iter().filter_map(|k| AlgebraSpec::new(k, n).ok()).collect();
    if n == 4 {
        v.push(AlgebraSpec::circular4());
        v.push(AlgebraSpec::hyperbolic4());
    }
    v
}

struct Ctx {
    rng: ChaCha8Rng,
    samples: usize,
    fault: bool,
    dimension: Option<usize>,
}

impl Ctx {
    fn algebras(&self) -> Vec<AlgebraSpec> {
        self.dimension.map_or_else(default_algebras, algebras_of)
    }

    fn dimensions(&self) -> Vec<usize> {
        self.dimension.map_or_else(|| (1..=8).collect(), |n| vec![n])
    }

    fn number(&mut self, alg: AlgebraSpec, r: f64) -> NComplex {
        let c = (0..alg.n()).map(|_| self.rng.gen_range(-r..r)).collect();
        NComplex::new(alg, c).expect("length matches")
    }

    /// With a fault injected, the computed side of every comparison is nudged.
    fn computed(&self, mut u: NComplex) -> NComplex {
        if self.fault {
            let mut c = u.coeffs().to_vec();
            c[0] += 1e-3;
            u = NComplex::new(u.algebra(), c).expect("length matches");
        }
        u
    }

    fn scalar(&self, x: f64) -> f64 {
        if self.fault {
            x + 1e-3
        } else {
            x
        }
    }
}

fn outcome(suite: &'static str, name: &str, worst: f64, tolerance: f64) -> CheckOutcome {
    CheckOutcome { suite, name: name.to_string(), worst, tolerance }
}

fn rel(a: &NComplex, b: &NComplex) -> f64 {
    a.max_abs_diff(b) / b.modulus().max(1.0)
}

fn algebra_suite(cx: &mut Ctx) -> CliResult<Vec<CheckOutcome>> {
    let (mut comm, mut assoc, mut dist, mut nu) = (0f64, 0f64, 0f64, 0f64);
    for alg in cx.algebras() {
        for _ in 0..cx.samples {
            let (u, v, w) = (cx.number(alg, 2.0), cx.number(alg, 2.0), cx.number(alg, 2.0));
            let uv = cx.computed(u.mul(&v)?);
            comm = comm.max(uv.max_abs_diff(&v.mul(&u)?));
            assoc = assoc.max(rel(&cx.computed(uv.mul(&w)?), &u.mul(&v.mul(&w)?)?));
            dist = dist.max(rel(&cx.computed(u.mul(&v.add(&w)?)?), &uv.add(&u.mul(&w)?)?));
            let (a, b) = (cx.scalar(u.mul(&v)?.nu()), u.nu() * v.nu());
            nu = nu.max((a - b).abs() / b.abs().max(1.0));
        }
    }
    Ok(vec![
        outcome("algebra", "commutative", comm, 0.0),
        outcome("algebra", "associative", assoc, 1e-10),
        outcome("algebra", "distributive", dist, 1e-12),
        outcome("algebra", "nu multiplicative", nu, 1e-10),
    ])
}

fn spectral_suite(cx: &mut Ctx) -> CliResult<Vec<CheckOutcome>> {
    let (mut trip, mut mul) = (0f64, 0f64);
    for alg in cx.algebras() {
        for _ in 0..cx.samples {
            let (u, v) = (cx.number(alg, 2.0), cx.number(alg, 2.0));
            trip = trip.max(rel(&cx.computed(from_spectral(&to_spectral(&u))), &u));
            let s = spectral_mul(&to_spectral(&u), &to_spectral(&v))?;
            mul = mul.max(rel(&cx.computed(from_spectral(&s)), &u.mul(&v)?));
        }
    }
    Ok(vec![outcome("spectral", "round trip", trip, 1e-13), outcome("spectral", "product", mul, 1e-12)])
}

fn cosexp_suite(cx: &mut Ctx) -> CliResult<Vec<CheckOutcome>> {
    let (mut series, mut sums, mut closed_forms) = (0f64, 0f64, 0f64);
    for n in cx.dimensions() {
        for _ in 0..cx.samples {
            let y: f64 = cx.rng.gen_range(-5.0..5.0);
            for family in [Family::PolarG, Family::PlanarF] {
                let mut total = 0.0;
                let mut spread = 0.0;
                for k in 0..n {
                    let kind = CosexpKind::new(family, n, k)?;
                    let closed = cx.scalar(kind.eval(y));
                    let reference = cosexp_series(kind, y, 1e-16)?;
                    series = series.max((closed - reference).abs() / reference.abs().max(1.0));
                    if CLOSED_FORM_PAIRS.contains(&(n, family)) {
                        let r = closed_form_reference(n, family, k, y)?;
                        closed_forms = closed_forms.max((closed - r).abs() / r.abs().max(1.0));
                    }
                    total += closed;
                    spread += closed.abs();
                }
                if family == Family::PolarG {
                    sums = sums.max((total - y.exp()).abs() / spread.max(1.0));
                }
            }
        }
    }
    Ok(vec![
        outcome("cosexp", "closed form vs series", series, 1e-9),
        outcome("cosexp", "dimension-specific closed forms", closed_forms, 1e-12),
        outcome("cosexp", "sum is exp", sums, 1e-12),
    ])
}

fn functions_suite(cx: &mut Ctx) -> CliResult<Vec<CheckOutcome>> {
    let (mut hom, mut inv) = (0f64, 0f64);
    for alg in cx.algebras() {
        for _ in 0..cx.samples {
            let (u, v) = (cx.number(alg, 1.0), cx.number(alg, 1.0));
            let lhs = cx.computed(exp(&u.add(&v)?)?);
            hom = hom.max(rel(&lhs, &exp(&u)?.mul(&exp(&v)?)?));
            let e = exp(&u)?;
            inv = inv.max(rel(&cx.computed(exp(&log(&e)?)?), &e));
        }
    }
    Ok(vec![outcome("functions", "exp homomorphism", hom, 1e-12), outcome("functions", "exp(log) identity", inv, 1e-12)])
}

fn factor_suite(cx: &mut Ctx) -> CliResult<Vec<CheckOutcome>> {
    let mut worst = 0f64;
    let mut failures = 0.0;
    for alg in cx.algebras() {
        for _ in 0..cx.samples {
            let degree = cx.rng.gen_range(1..=3);
            let roots: Vec<NComplex> = (0..degree).map(|_| cx.number(alg, 2.0)).collect();
            let p = PolynomialN::from_roots(alg, &roots)?;
            let mut coeffs = p.coeffs().to_vec();
            coeffs[degree] = cx.computed(coeffs[degree].clone());
            let f = factorize(&PolynomialN::new(alg, coeffs)?, FactorMode::Capped(4))?;
            if f.factorizations.is_empty() {
                failures += 1.0;
            }
            for set in &f.factorizations {
                let r = verify_factorization(&p, set)?;
                worst = worst.max(r.max_deviation / r.threshold * VERIFY_TOL);
            }
        }
    }
    Ok(vec![
        outcome("factor", "planted roots re-expand", worst, VERIFY_TOL),
        outcome("factor", "roots found", failures, 0.0),
    ])
}

fn residue_suite(cx: &mut Ctx) -> CliResult<Vec<CheckOutcome>> {
    let (mut pole, mut cauchy, mut analytic) = (0f64, 0f64, 0f64);
    let algebras = match cx.dimension {
        Some(_) => cx.algebras(),
        None => vec![AlgebraSpec::polar(3).unwrap(), AlgebraSpec::polar(4).unwrap(), AlgebraSpec::planar(4).unwrap()],
    };
    for alg in algebras.into_iter().filter(|a| spectral_layout(*a).planes > 0) {
        for _ in 0..cx.samples.min(4) {
            let u0 = cx.number(alg, 1.0);
            let path = PathLoop::circle_around(&u0, 1, 1.0, 10_000)?;
            let integral = line_integral(&HypercomplexFunction::simple_pole(u0.clone()), &path, 1)?;
            pole = pole.max(cx.computed(integral).max_abs_diff(&residue_expected(&u0, &path)?));
            let rep = cauchy_check(HypercomplexFunction::new(exp), &u0, &path, 1)?;
            cauchy = cauchy.max(cx.computed(rep.integral).max_abs_diff(&rep.expected));
            let integral = line_integral(&HypercomplexFunction::new(exp), &path, 1)?;
            analytic = analytic.max(cx.computed(integral).modulus());
        }
    }
    Ok(vec![
        outcome("residue", "simple pole", pole, 1e-4),
        outcome("residue", "cauchy formula", cauchy, 1e-4),
        outcome("residue", "analytic loop", analytic, 1e-6),
    ])
}

fn riemann_suite(cx: &mut Ctx) -> CliResult<Vec<CheckOutcome>> {
    let (mut first, mut second) = (0f64, 0f64);
    for alg in cx.algebras() {
        let f = HypercomplexFunction::new(exp);
        for _ in 0..cx.samples {
            let u = cx.number(alg, 1.0);
            first = first.max(cx.scalar(riemann_check(&f, &u, 1e-4)?));
            second = second.max(cx.scalar(second_order_check(&f, &u, 1e-3)?));
        }
    }
    Ok(vec![outcome("riemann", "first order", first, 1e-7), outcome("riemann", "second order", second, 1e-4)])
}

fn matrep_suite(cx: &mut Ctx) -> CliResult<Vec<CheckOutcome>> {
    let (mut det, mut blocks, mut hom) = (0f64, 0f64, 0f64);
    for alg in cx.algebras() {
        for _ in 0..cx.samples {
            let (u, v) = (cx.number(alg, 2.0), cx.number(alg, 2.0));
            let d = cx.scalar(representation_matrix(&u).determinant());
            det = det.max((d - u.nu()).abs() / u.nu().abs().max(1.0));
            blocks = blocks.max(cx.scalar(block_diagonalize(&u).off_block) / u.modulus().max(1.0));
            let m = representation_matrix(&u).mul(&representation_matrix(&v))?;
            let uv = cx.computed(u.mul(&v)?);
            hom = hom.max(m.max_abs_diff(&representation_matrix(&uv)) / uv.modulus().max(1.0));
        }
    }
    Ok(vec![
        outcome("matrep", "determinant is nu", det, 1e-9),
        outcome("matrep", "block diagonal", blocks, 1e-10),
        outcome("matrep", "representation is multiplicative", hom, 1e-12),
    ])
}

/// Options for [`run`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    pub seed: u64,
    /// Restricts the battery to algebras (and cosexp families) of this dimension.
    pub dimension: Option<usize>,
    /// Random draws per algebra.
    pub samples: usize,
    /// Perturbs every computed result so that the checks must fail.
    pub fault: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { seed: 1, dimension: None, samples: 8, fault: false }
    }
}

/// Runs `suite`, or every suite for `all`.
pub fn run(suite: &str, opts: CheckOptions) -> CliResult<Vec<CheckOutcome>> {
    if opts.samples == 0 {
        return Err(CliError::usage("--samples must be positive"));
    }
    if let Some(n) = opts.dimension {
        if algebras_of(n).is_empty() {
            return Err(CliError::usage(format!("no algebra of dimension {n}")));
        }
    }
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => return Err(CliError::usage(format!("unknown suite `{s}` (expected one of {} or all)", SUITES.join(", ")))),
    };
    let mut cx = Ctx { rng: ChaCha8Rng::seed_from_u64(opts.seed), samples: opts.samples, fault: opts.fault, dimension: opts.dimension };
    let mut out = Vec::new();
    for name in names {
        out.extend(match name {
            "algebra" => algebra_suite(&mut cx)?,
            "spectral" => spectral_suite(&mut cx)?,
            "cosexp" => cosexp_suite(&mut cx)?,
            "functions" => functions_suite(&mut cx)?,
            "factor" => factor_suite(&mut cx)?,
            "residue" => residue_suite(&mut cx)?,
            "riemann" => riemann_suite(&mut cx)?,
            _ => matrep_suite(&mut cx)?,
        });
    }
    Ok(out)
}

pub fn report(outcomes: &[CheckOutcome]) -> String {
    let mut s: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    let failed = outcomes.iter().filter(|o| !o.pass()).count();
    s.push_str(&format!("{} checks, {} passed, {failed} failed\n", outcomes.len(), outcomes.len() - failed));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(seed: u64, samples: usize) -> CheckOptions {
        CheckOptions { seed, samples, ..CheckOptions::default() }
    }

    #[test]
    fn every_suite_passes() {
        let mut out = Vec::new();
        for suite in SUITES {
            out.extend(run(suite, opts(7, 3)).unwrap_or_else(|e| panic!("{suite}: {e}")));
        }
        for o in &out {
            assert!(o.pass(), "{o}");
        }
        assert!(report(&out).ends_with(&format!("{} checks, {} passed, 0 failed\n", out.len(), out.len())));
    }

    #[test]
    fn dimension_filter() {
        let out = run("cosexp", CheckOptions { dimension: Some(6), ..opts(3, 4) }).unwrap();
        assert!(out.iter().all(CheckOutcome::pass));
        let out = run("residue", CheckOptions { dimension: Some(5), ..opts(3, 1) }).unwrap();
        assert!(out.iter().all(CheckOutcome::pass));
        assert_eq!(run("algebra", CheckOptions { dimension: Some(1), ..opts(3, 1) }).unwrap_err().code, 2);
    }

    #[test]
    fn fault_is_caught() {
        for suite in SUITES {
            let out = run(suite, CheckOptions { fault: true, ..opts(7, 2) }).unwrap();
            assert!(out.iter().any(|o| !o.pass()), "{suite}");
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(run("algebra", opts(11, 2)).unwrap(), run("algebra", opts(11, 2)).unwrap());
        assert_eq!(run("nope", opts(1, 1)).unwrap_err().code, 2);
    }
}
