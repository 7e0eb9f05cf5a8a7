//! Elementary functions by spectral action, the geometric, exponential and
//! trigonometric forms, and power series.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::algebra::{AlgebraSpec, Kind, NComplex};
use crate::error::{Component, Error, Result};
use crate::spectral::{from_spectral, nodal_threshold, spectral_layout, to_spectral, SpectralForm};

/// Exponent beyond which `exp` overflows doubles.
const EXP_LIMIT: f64 = 700.0;

fn spectral_apply(
    u: &NComplex,
    line: impl FnMut(usize, f64) -> Result<f64>,
    plane: impl FnMut(usize, Complex64) -> Result<Complex64>,
) -> Result<NComplex> {
    Ok(from_spectral(&to_spectral(u).try_map(line, plane)?))
}

fn overflow(what: &str, x: f64) -> Error {
    Error::Range(format!("{what} argument {x} overflows"))
}

fn guard(what: &str, x: f64) -> Result<()> {
    if x.abs() > EXP_LIMIT || !x.is_finite() {
        Err(overflow(what, x))
    } else {
        Ok(())
    }
}

pub fn exp(u: &NComplex) -> Result<NComplex> {
    spectral_apply(
        u,
        |_, v| {
            if v > EXP_LIMIT {
                Err(overflow("exp", v))
            } else {
                Ok(v.exp())
            }
        },
        |_, z| {
            if z.re > EXP_LIMIT {
                Err(overflow("exp", z.re))
            } else {
                Ok(z.exp())
            }
        },
    )
}

/// Principal angle in `[0, 2 pi)`.
pub fn principal_angle(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Checks the principal domain; returns the spectral form.
fn principal_domain(u: &NComplex) -> Result<SpectralForm> {
    let s = to_spectral(u);
    let eps = nodal_threshold(u);
    let layout = spectral_layout(u.algebra());
    for (i, v) in s.lines().iter().enumerate() {
        if *v <= eps {
            return Err(Error::Domain { component: layout.line(i), reason: "is not positive" });
        }
    }
    for (k, z) in s.planes().iter().enumerate() {
        if z.norm() <= eps {
            return Err(Error::Domain { component: Component::Plane(k + 1), reason: "has zero radius" });
        }
    }
    Ok(s)
}

/// Principal branch: `ln v` on lines, `(ln rho_k, phi_k)` on planes.
pub fn log(u: &NComplex) -> Result<NComplex> {
    let s = principal_domain(u)?;
    let out = s.try_map(|_, v| Ok(v.ln()), |_, z| Ok(Complex64::new(z.norm().ln(), principal_angle(z))))?;
    Ok(from_spectral(&out))
}

pub fn pow_real(u: &NComplex, m: f64) -> Result<NComplex> {
    let s = principal_domain(u)?;
    let out = s.try_map(
        |_, v| Ok(v.powf(m)),
        |_, z| Ok(Complex64::from_polar(z.norm().powf(m), m * principal_angle(z))),
    )?;
    Ok(from_spectral(&out))
}

/// Left-to-right repeated multiplication; negative powers go through the inverse.
pub fn pow_int(u: &NComplex, m: i64) -> Result<NComplex> {
    let base = if m < 0 { u.inverse()? } else { u.clone() };
    let mut acc = NComplex::one(u.algebra());
    for _ in 0..m.unsigned_abs() {
        acc = acc.mul(&base)?;
    }
    Ok(acc)
}

pub fn cos(u: &NComplex) -> Result<NComplex> {
    spectral_apply(u, |_, v| Ok(v.cos()), |_, z| guard("cos", z.im).map(|_| z.cos()))
}

pub fn sin(u: &NComplex) -> Result<NComplex> {
    spectral_apply(u, |_, v| Ok(v.sin()), |_, z| guard("sin", z.im).map(|_| z.sin()))
}

pub fn cosh(u: &NComplex) -> Result<NComplex> {
    spectral_apply(u, |_, v| guard("cosh", v).map(|_| v.cosh()), |_, z| guard("cosh", z.re).map(|_| z.cosh()))
}

pub fn sinh(u: &NComplex) -> Result<NComplex> {
    spectral_apply(u, |_, v| guard("sinh", v).map(|_| v.sinh()), |_, z| guard("sinh", z.re).map(|_| z.sinh()))
}

/// Modulus, amplitude and the angle system of a value.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricForm {
    pub algebra: AlgebraSpec,
    pub d: f64,
    pub rho: Option<f64>,
    pub lines: Vec<f64>,
    pub radii: Vec<f64>,
    /// Azimuthal angles in `[0, 2 pi)`, absent where `rho_k = 0`.
    pub phi: Vec<Option<f64>>,
    /// `tan psi_{k-1} = rho_1 / rho_k` for `k >= 2`, absent where `rho_1 = 0`.
    pub psi: Vec<Option<f64>>,
    /// Polar angles aligned with `lines` (polar algebras with planes only).
    pub theta: Vec<Option<f64>>,
}

impl GeometricForm {
    pub fn theta_plus(&self) -> Option<f64> {
        self.theta.first().copied().flatten()
    }

    pub fn theta_minus(&self) -> Option<f64> {
        self.theta.get(1).copied().flatten()
    }
}

pub fn geometric_form(u: &NComplex) -> GeometricForm {
    let alg = u.algebra();
    let s = to_spectral(u);
    let eps = nodal_threshold(u);
    let radii = s.radii();
    let phi = s.planes().iter().map(|z| (z.norm() > eps).then(|| principal_angle(*z))).collect();
    let rho1 = radii.first().copied().filter(|r| *r > eps);
    let psi = radii.iter().skip(1).map(|rk| rho1.map(|r1| r1.atan2(*rk))).collect();
    let theta = s
        .lines()
        .iter()
        .map(|v| match (alg.kind(), rho1) {
            (Kind::Polar, Some(r1)) => Some((SQRT_2 * r1).atan2(*v)),
            _ => None,
        })
        .collect();
    GeometricForm {
        algebra: alg,
        d: u.modulus(),
        rho: u.amplitude(),
        lines: s.lines().to_vec(),
        radii,
        phi,
        psi,
        theta,
    }
}

/// `u = rho * exp(E)` with `E` free of the unity component.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentialForm {
    pub rho: f64,
    pub exponent: NComplex,
}

impl ExponentialForm {
    pub fn reassemble(&self) -> Result<NComplex> {
        Ok(exp(&self.exponent)?.scale(self.rho))
    }
}

/// `u = factor * direction * azimuthal`, with `|azimuthal| = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigonometricForm {
    pub factor: f64,
    pub direction: NComplex,
    pub azimuthal: NComplex,
}

impl TrigonometricForm {
    pub fn reassemble(&self) -> Result<NComplex> {
        Ok(self.direction.mul(&self.azimuthal)?.scale(self.factor))
    }
}

fn layout_sizes(g: &GeometricForm) -> (usize, usize) {
    (g.lines.len(), g.radii.len())
}

/// Builds `E` from the angle system.
pub fn exponential_form(g: &GeometricForm) -> Result<ExponentialForm> {
    let alg = g.algebra;
    let rho = g.rho.filter(|r| *r > 0.0).ok_or_else(|| Error::Undefined("amplitude is not defined".into()))?;
    let layout = spectral_layout(alg);
    let (nl, np) = layout_sizes(g);
    let mut lines = Vec::with_capacity(nl);
    let mut planes = Vec::with_capacity(np);
    if np == 0 {
        for (i, v) in g.lines.iter().enumerate() {
            if *v <= 0.0 {
                return Err(Error::Domain { component: layout.line(i), reason: "is not positive" });
            }
            lines.push(v.ln());
        }
    } else {
        for (i, th) in g.theta.iter().enumerate() {
            let th = th.ok_or_else(|| Error::Undefined("polar angle requires a nonzero plane 1".into()))?;
            let t = th.tan();
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Domain { component: layout.line(i), reason: "is not positive" });
            }
            lines.push((SQRT_2 / t).ln());
        }
        for k in 0..np {
            let phi = g.phi[k].ok_or(Error::Domain { component: Component::Plane(k + 1), reason: "has zero radius" })?;
            let l = if k == 0 {
                0.0
            } else {
                let psi = g.psi[k - 1].ok_or_else(|| Error::Undefined("planar angle requires a nonzero plane 1".into()))?;
                -psi.tan().ln()
            };
            planes.push(Complex64::new(l, phi));
        }
    }
    let e = from_spectral(&SpectralForm::new(alg, lines, planes)?);
    let mut c = e.into_coeffs();
    c[0] = 0.0;
    Ok(ExponentialForm { rho, exponent: NComplex::new(alg, c)? })
}

pub fn trigonometric_form(g: &GeometricForm) -> Result<TrigonometricForm> {
    let alg = g.algebra;
    if !(g.d > 0.0) {
        return Err(Error::Undefined("modulus is zero".into()));
    }
    let (nl, np) = layout_sizes(g);
    if np == 0 {
        let dir = SpectralForm::new(alg, g.lines.iter().map(|v| v / g.d).collect(), vec![])?;
        return Ok(TrigonometricForm { factor: g.d, direction: from_spectral(&dir), azimuthal: NComplex::one(alg) });
    }
    let undefined = || Error::Undefined("angles require a nonzero plane 1".into());
    let mut s = 1.0;
    let mut lines = Vec::with_capacity(nl);
    for th in &g.theta {
        let t = th.ok_or_else(undefined)?.tan();
        lines.push(SQRT_2 / t);
        s += 1.0 / (t * t);
    }
    let mut planes = vec![Complex64::new(1.0, 0.0)];
    for psi in &g.psi {
        let t = psi.ok_or_else(undefined)?.tan();
        planes.push(Complex64::new(1.0 / t, 0.0));
        s += 1.0 / (t * t);
    }
    let direction = from_spectral(&SpectralForm::new(alg, lines, planes)?);
    let az = g.phi.iter().map(|p| Complex64::from_polar(1.0, p.unwrap_or(0.0))).collect();
    let azimuthal = from_spectral(&SpectralForm::new(alg, vec![1.0; nl], az)?);
    let factor = g.d * (alg.n() as f64 / 2.0).sqrt() / s.sqrt();
    Ok(TrigonometricForm { factor, direction, azimuthal })
}

pub fn reassemble_exponential(g: &GeometricForm) -> Result<NComplex> {
    exponential_form(g)?.reassemble()
}

pub fn reassemble_trigonometric(g: &GeometricForm) -> Result<NComplex> {
    trigonometric_form(g)?.reassemble()
}

/// Truncated power series `a_0 + a_1 u + a_2 u^2 + ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoefficients {
    alg: AlgebraSpec,
    coeffs: Vec<NComplex>,
}

impl SeriesCoefficients {
    pub fn new(alg: AlgebraSpec, coeffs: Vec<NComplex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Argument("series needs at least one coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| c.algebra() != alg) {
            return Err(Error::Mismatch(alg, c.algebra()));
        }
        Ok(Self { alg, coeffs })
    }

    /// Real scalar coefficients `a_l * 1`.
    pub fn from_scalars(alg: AlgebraSpec, a: &[f64]) -> Result<Self> {
        Self::new(alg, a.iter().map(|c| NComplex::scalar(alg, *c)).collect())
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    pub fn coeffs(&self) -> &[NComplex] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: NComplex,
    /// False when some component of `u` lies beyond its estimated radius.
    pub convergent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRadii {
    /// Bound on `|u|` from coefficient moduli.
    pub global: f64,
    /// Lines then planes, in layout order.
    pub components: Vec<f64>,
}

/// Ratio-test window.
pub const RATIO_WINDOW: usize = 8;

fn window_radius(mags: &[f64]) -> f64 {
    let last = mags.len() - 1;
    let start = last.saturating_sub(RATIO_WINDOW);
    let nz: Vec<(usize, f64)> = (start..=last).filter(|l| mags[*l] > 0.0).map(|l| (l, mags[l])).collect();
    match (nz.first(), nz.last()) {
        (Some(&(l0, a0)), Some(&(l1, a1))) if l1 > l0 => (a0 / a1).powf(1.0 / (l1 - l0) as f64),
        _ => f64::INFINITY,
    }
}

/// Product-bound constant `c` in `|uv| <= c |u| |v|`.
pub fn product_bound(alg: AlgebraSpec) -> f64 {
    let n = alg.n() as f64;
    match alg.kind() {
        Kind::Polar => n.sqrt(),
        Kind::Planar => (n / 2.0).sqrt(),
        Kind::Circular4 => SQRT_2,
        Kind::Hyperbolic4 => 2.0,
    }
}

/// Fixed-window ratio estimates of the radii; an estimate, not a limit.
pub fn convergence_radii(s: &SeriesCoefficients) -> Result<ConvergenceRadii> {
    if s.coeffs.len() < 2 {
        return Err(Error::Argument("convergence radii need at least two coefficients".into()));
    }
    let moduli: Vec<f64> = s.coeffs.iter().map(|a| a.modulus()).collect();
    let global = window_radius(&moduli) / product_bound(s.alg);
    let spectra: Vec<Vec<f64>> = s.coeffs.iter().map(|a| to_spectral(a).magnitudes()).collect();
    let ncomp = spectra[0].len();
    let components = (0..ncomp)
        .map(|c| window_radius(&spectra.iter().map(|m| m[c]).collect::<Vec<_>>()))
        .collect();
    Ok(ConvergenceRadii { global, components })
}

/// Horner evaluation, highest power first.
pub fn series_eval(s: &SeriesCoefficients, u: &NComplex) -> Result<SeriesValue> {
    if u.algebra() != s.alg {
        return Err(Error::Mismatch(s.alg, u.algebra()));
    }
    let mut acc = s.coeffs.last().expect("non-empty").clone();
    for a in s.coeffs.iter().rev().skip(1) {
        acc = acc.mul(u)?.add(a)?;
    }
    let convergent = if s.coeffs.len() < 2 {
        true
    } else {
        let radii = convergence_radii(s)?;
        to_spectral(u).magnitudes().iter().zip(&radii.components).all(|(m, r)| m < r)
    };
    Ok(SeriesValue { value: acc, convergent })
}
