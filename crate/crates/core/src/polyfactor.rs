//! Polynomials over an algebra, per-component root finding and the
//! enumeration of their (non-unique) linear factorizations.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::{AlgebraSpec, NComplex};
use crate::error::{Component, Error, Result};
use crate::spectral::{from_spectral, spectral_layout, to_spectral, SpectralForm};

/// Iteration cap of the simultaneous root finder.
pub const MAX_ITERATIONS: usize = 200;
/// Relative residual required of every polished root.
pub const ROOT_RESIDUAL: f64 = 1e-10;
/// Imaginary parts below this (relative) make a line root real.
pub const REAL_ROOT_TOL: f64 = 1e-7;
/// Roots closer than this (relative) are the same root.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Expansion check threshold.
pub const VERIFY_TOL: f64 = 1e-8;
/// Upper bound on candidates examined by one enumeration.
pub const MAX_CANDIDATES: u64 = 10_000_000;

/// `a_0 u^m + a_1 u^{m-1} + ... + a_m`, leading coefficient first.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialN {
    alg: AlgebraSpec,
    coeffs: Vec<NComplex>,
}

impl PolynomialN {
    pub fn new(alg: AlgebraSpec, coeffs: Vec<NComplex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Argument("polynomial needs at least one coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| c.algebra() != alg) {
            return Err(Error::Mismatch(alg, c.algebra()));
        }
        Ok(Self { alg, coeffs })
    }

    /// Real scalar coefficients, leading first.
    pub fn from_scalars(alg: AlgebraSpec, a: &[f64]) -> Result<Self> {
        Self::new(alg, a.iter().map(|c| NComplex::scalar(alg, *c)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(alg: AlgebraSpec, roots: &[NComplex]) -> Result<Self> {
        Self::new(alg, expand_roots(alg, roots)?)
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    pub fn coeffs(&self) -> &[NComplex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0] == NComplex::one(self.alg)
    }

    /// Divides through by an invertible leading coefficient.
    pub fn normalized(&self) -> Result<Self> {
        if self.is_monic() {
            return Ok(self.clone());
        }
        let inv = self.coeffs[0].inverse().map_err(|e| {
            Error::Argument(format!("leading coefficient is not invertible ({e}); only monic polynomials factor"))
        })?;
        let coeffs = self.coeffs.iter().map(|c| c.mul(&inv)).collect::<Result<Vec<_>>>()?;
        let mut p = Self { alg: self.alg, coeffs };
        p.coeffs[0] = NComplex::one(self.alg);
        Ok(p)
    }

    /// Largest absolute coefficient component.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().flat_map(|c| c.coeffs().iter()).fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn eval(&self, u: &NComplex) -> Result<NComplex> {
        poly_eval(self, u)
    }
}

/// Horner evaluation with algebra multiplication.
pub fn poly_eval(p: &PolynomialN, u: &NComplex) -> Result<NComplex> {
    if u.algebra() != p.alg {
        return Err(Error::Mismatch(p.alg, u.algebra()));
    }
    let mut acc = p.coeffs[0].clone();
    for a in &p.coeffs[1..] {
        acc = acc.mul(u)?.add(a)?;
    }
    Ok(acc)
}

/// `prod (u - r_p)`, leading coefficient first.
fn expand_roots(alg: AlgebraSpec, roots: &[NComplex]) -> Result<Vec<NComplex>> {
    let mut c = vec![NComplex::one(alg)];
    for r in roots {
        let mut next = c.clone();
        next.push(NComplex::zero(alg));
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].sub(&ci.mul(r)?)?;
        }
        c = next;
    }
    Ok(c)
}

/// Scalar polynomials of the spectral components, leading first.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentPolynomials {
    pub lines: Vec<Vec<f64>>,
    pub planes: Vec<Vec<Complex64>>,
}

impl ComponentPolynomials {
    /// All components as complex polynomials, lines first.
    pub fn as_complex(&self) -> Vec<Vec<Complex64>> {
        self.lines
            .iter()
            .map(|l| l.iter().map(|x| Complex64::new(*x, 0.0)).collect())
            .chain(self.planes.iter().cloned())
            .collect()
    }
}

pub fn component_polynomials(p: &PolynomialN) -> ComponentPolynomials {
    let layout = spectral_layout(p.alg);
    let spectra: Vec<SpectralForm> = p.coeffs.iter().map(to_spectral).collect();
    ComponentPolynomials {
        lines: (0..layout.lines).map(|i| spectra.iter().map(|s| s.lines()[i]).collect()).collect(),
        planes: (0..layout.planes).map(|k| spectra.iter().map(|s| s.planes()[k]).collect()).collect(),
    }
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = c[0];
    let mut dp = Complex64::new(0.0, 0.0);
    for a in &c[1..] {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Scale of the rounding error of `horner(c, z)`.
fn residual_scale(c: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm().max(1.0);
    let m = c.len() - 1;
    c.iter().enumerate().map(|(i, a)| a.norm() * r.powi((m - i) as i32)).sum()
}

/// Aberth-Ehrlich iteration with Newton polishing; `c` monic, leading first.
pub fn polynomial_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = c.len().checked_sub(1).filter(|m| *m >= 1).ok_or_else(|| Error::Argument("degree must be at least 1".into()))?;
    if c[0] != Complex64::new(1.0, 0.0) {
        return Err(Error::Argument("root finder expects a monic polynomial".into()));
    }
    if m == 1 {
        return Ok(vec![-c[1]]);
    }
    let center = -c[1] / m as f64;
    let radius = 2.0 * (1..=m).map(|i| c[i].norm().powf(1.0 / i as f64)).fold(0.0, f64::max);
    if radius == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); m]);
    }
    let mut z: Vec<Complex64> = (0..m)
        .map(|j| center + Complex64::from_polar(radius, 2.0 * PI * j as f64 / m as f64 + 0.4))
        .collect();
    let passes = |z: &[Complex64]| z.iter().all(|zj| horner(c, *zj).0.norm() < ROOT_RESIDUAL * residual_scale(c, *zj));
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut biggest: f64 = 0.0;
        for j in 0..m {
            let (p, dp) = horner(c, z[j]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..m).filter(|k| *k != j).map(|k| (z[j] - z[k]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[j] -= w;
                biggest = biggest.max(w.norm() / z[j].norm().max(1.0));
            }
        }
        if biggest <= 1e-15 {
            break;
        }
    }
    for zj in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(c, *zj);
            let next = *zj - p / dp;
            if next.is_finite() && horner(c, next).0.norm() < p.norm() {
                *zj = next;
            } else {
                break;
            }
        }
    }
    if !passes(&z) {
        let worst = z
            .iter()
            .map(|zj| horner(c, *zj).0.norm() / residual_scale(c, *zj))
            .fold(0.0, f64::max);
        return Err(Error::Numeric(format!(
            "root finder did not converge after {iterations} iterations (worst relative residual {worst:.3e})"
        )));
    }
    Ok(z)
}

fn sort_roots(z: &mut [Complex64]) {
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Real factor of a line polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum RealFactor {
    /// `v - root`.
    Linear(f64),
    /// `v^2 + b v + c` with a conjugate pair of roots.
    Quadratic { b: f64, c: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentRoots {
    pub component: Component,
    /// Sorted by real then imaginary part.
    pub roots: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationSet {
    pub algebra: AlgebraSpec,
    pub component_roots: Vec<ComponentRoots>,
    /// Principal pairing; absent when some line root is complex.
    pub assembled: Option<Vec<NComplex>>,
    /// Real factorization of each line with complex roots.
    pub real_factors: Vec<(Component, Vec<RealFactor>)>,
}

fn real_factors(roots: &[Complex64]) -> Vec<RealFactor> {
    let mut out = Vec::new();
    let mut pending: Option<Complex64> = None;
    for r in roots {
        if r.im == 0.0 {
            out.push(RealFactor::Linear(r.re));
        } else if let Some(a) = pending.take() {
            out.push(RealFactor::Quadratic { b: -(a + r).re, c: (a * r).re });
        } else {
            pending = Some(*r);
        }
    }
    if let Some(a) = pending {
        out.push(RealFactor::Quadratic { b: -2.0 * a.re, c: a.norm_sqr() });
    }
    out
}

/// Finds every component's roots and the principal assembled factorization.
pub fn factor_components(p: &PolynomialN) -> Result<FactorizationSet> {
    let p = p.normalized()?;
    if p.degree() < 1 {
        return Err(Error::Argument("factorization needs degree at least 1".into()));
    }
    let layout = spectral_layout(p.alg);
    let comps = component_polynomials(&p);
    let mut component_roots = Vec::with_capacity(layout.lines + layout.planes);
    let mut real = Vec::new();
    for (i, poly) in comps.lines.iter().enumerate() {
        let c: Vec<Complex64> = poly.iter().map(|x| Complex64::new(*x, 0.0)).collect();
        let mut z = polynomial_roots(&c)?;
        for r in z.iter_mut() {
            if r.im.abs() <= REAL_ROOT_TOL * r.norm().max(1.0) {
                r.im = 0.0;
            }
        }
        sort_roots(&mut z);
        if z.iter().any(|r| r.im != 0.0) {
            real.push((layout.line(i), real_factors(&z)));
        }
        component_roots.push(ComponentRoots { component: layout.line(i), roots: z });
    }
    for (k, poly) in comps.planes.iter().enumerate() {
        let mut z = polynomial_roots(poly)?;
        sort_roots(&mut z);
        component_roots.push(ComponentRoots { component: Component::Plane(k + 1), roots: z });
    }
    let mut set = FactorizationSet { algebra: p.alg, component_roots, assembled: None, real_factors: real };
    if set.real_factors.is_empty() {
        let identity: Vec<usize> = (0..p.degree()).collect();
        let perms = vec![identity; set.component_roots.len()];
        set.assembled = Some(assemble(&set, &perms));
    }
    Ok(set)
}

/// Root `p` takes entry `perms[c][p]` of component `c`.
fn assemble(set: &FactorizationSet, perms: &[Vec<usize>]) -> Vec<NComplex> {
    let layout = spectral_layout(set.algebra);
    let m = perms[0].len();
    (0..m)
        .map(|p| {
            let pick = |c: usize| set.component_roots[c].roots[perms[c][p]];
            let lines = (0..layout.lines).map(|i| pick(i).re).collect();
            let planes = (0..layout.planes).map(|k| pick(layout.lines + k)).collect();
            from_spectral(&SpectralForm::new(set.algebra, lines, planes).expect("layout sizes"))
        })
        .collect()
}

/// Cluster index of every root: the first root within tolerance.
fn cluster_ids(roots: &[Complex64]) -> Vec<usize> {
    (0..roots.len())
        .map(|i| {
            (0..=i)
                .find(|j| (roots[i] - roots[*j]).norm() <= CLUSTER_TOL * roots[i].norm().max(1.0))
                .expect("i matches itself")
        })
        .collect()
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|i| a[i - 1] < a[*i]) else {
        a.reverse();
        return false;
    };
    let j = (i..a.len()).rev().find(|j| a[*j] > a[i - 1]).expect("exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[derive(Clone, Debug, PartialEq)]
pub struct Enumeration {
    /// Distinct root sets in discovery order; the first is principal.
    pub sets: Vec<Vec<NComplex>>,
    pub truncated: bool,
}

/// All pairings of component roots, up to reordering of the roots.
pub fn enumerate_factorizations(set: &FactorizationSet, cap: usize) -> Result<Enumeration> {
    if set.assembled.is_none() {
        return Err(Error::Undefined("some line component has complex roots; no assembled factorization".into()));
    }
    if cap == 0 {
        return Err(Error::Argument("cap must be at least 1".into()));
    }
    let ncomp = set.component_roots.len();
    let m = set.component_roots[0].roots.len();
    let ids: Vec<Vec<usize>> = set.component_roots.iter().map(|c| cluster_ids(&c.roots)).collect();
    let mut perms: Vec<Vec<usize>> = vec![(0..m).collect(); ncomp];
    let mut seen = HashSet::new();
    let mut sets = Vec::new();
    let mut examined: u64 = 0;
    let truncated = loop {
        let mut key: Vec<Vec<usize>> = (0..m).map(|p| (0..ncomp).map(|c| ids[c][perms[c][p]]).collect()).collect();
        key.sort_unstable();
        if seen.insert(key) {
            sets.push(assemble(set, &perms));
        }
        examined += 1;
        let mut c = ncomp;
        let exhausted = loop {
            if c <= 1 {
                break true;
            }
            c -= 1;
            if next_permutation(&mut perms[c]) {
                break false;
            }
        };
        if exhausted {
            break false;
        }
        if sets.len() >= cap || examined >= MAX_CANDIDATES {
            break true;
        }
    };
    Ok(Enumeration { sets, truncated })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    Principal,
    All,
    Capped(usize),
}

impl FromStr for FactorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "principal" => Ok(Self::Principal),
            "all" => Ok(Self::All),
            _ => match s.strip_prefix("capped:").map(str::parse::<usize>) {
                Some(Ok(n)) if n > 0 => Ok(Self::Capped(n)),
                _ => Err(Error::Argument(format!("unknown mode '{s}'; expected principal, all or capped:N"))),
            },
        }
    }
}

impl fmt::Display for FactorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Principal => f.write_str("principal"),
            Self::All => f.write_str("all"),
            Self::Capped(n) => write!(f, "capped:{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub set: FactorizationSet,
    /// Empty when no assembled roots exist.
    pub factorizations: Vec<Vec<NComplex>>,
    pub truncated: bool,
}

pub fn factorize(p: &PolynomialN, mode: FactorMode) -> Result<Factorization> {
    let set = factor_components(p)?;
    let Some(principal) = set.assembled.clone() else {
        return Ok(Factorization { set, factorizations: vec![], truncated: false });
    };
    let cap = match mode {
        FactorMode::Principal => return Ok(Factorization { set, factorizations: vec![principal], truncated: false }),
        FactorMode::All => usize::MAX,
        FactorMode::Capped(n) => n,
    };
    let e = enumerate_factorizations(&set, cap)?;
    Ok(Factorization { set, factorizations: e.sets, truncated: e.truncated })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    /// Largest absolute coefficient deviation of the expansion.
    pub max_deviation: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Expands `prod (u - r_p)` and compares with the normalized polynomial.
pub fn verify_factorization(p: &PolynomialN, roots: &[NComplex]) -> Result<VerifyReport> {
    let p = p.normalized()?;
    if roots.len() != p.degree() {
        return Err(Error::Argument(format!("expected {} roots, got {}", p.degree(), roots.len())));
    }
    if let Some(r) = roots.iter().find(|r| r.algebra() != p.alg) {
        return Err(Error::Mismatch(p.alg, r.algebra()));
    }
    let e = expand_roots(p.alg, roots)?;
    let max_deviation = e.iter().zip(&p.coeffs).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);
    let threshold = VERIFY_TOL * p.norm().max(1.0);
    Ok(VerifyReport { max_deviation, threshold, pass: max_deviation < threshold })
}
