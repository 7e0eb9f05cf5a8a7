//! Path integrals, winding in the planes, residues and finite-difference
//! checks of the component relations of differentiable functions.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::algebra::{AlgebraSpec, Kind, NComplex};
use crate::error::{Error, Result};
use crate::spectral::{canonical_basis, spectral_layout, to_spectral, SpectralForm};

/// Distance to a singular set or projected curve that counts as touching it.
pub const BOUNDARY_EPS: f64 = 1e-6;

type Callable = Box<dyn Fn(&NComplex) -> Result<NComplex> + Send + Sync>;

#[derive(Clone, Debug, PartialEq)]
pub struct Pole {
    pub location: NComplex,
    pub residue: NComplex,
}

/// A function of one hypercomplex variable with its declared simple poles.
pub struct HypercomplexFunction {
    f: Callable,
    poles: Vec<Pole>,
}

impl fmt::Debug for HypercomplexFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HypercomplexFunction").field("poles", &self.poles).finish_non_exhaustive()
    }
}

impl HypercomplexFunction {
    pub fn new(f: impl Fn(&NComplex) -> Result<NComplex> + Send + Sync + 'static) -> Self {
        Self { f: Box::new(f), poles: vec![] }
    }

    /// Declares a simple pole; the integrand must not come near its nodal set.
    pub fn with_pole(mut self, location: NComplex, residue: NComplex) -> Self {
        self.poles.push(Pole { location, residue });
        self
    }

    /// `1 / (u - u0)`.
    pub fn simple_pole(u0: NComplex) -> Self {
        let alg = u0.algebra();
        let c = u0.clone();
        Self::new(move |u| u.sub(&c)?.inverse()).with_pole(u0, NComplex::one(alg))
    }

    /// `(u - u0)^m`; negative powers declare `u0` singular.
    pub fn power_about(u0: NComplex, m: i64) -> Self {
        let alg = u0.algebra();
        let c = u0.clone();
        let f = Self::new(move |u| crate::functions::pow_int(&u.sub(&c)?, m));
        if m < 0 {
            let residue = if m == -1 { NComplex::one(alg) } else { NComplex::zero(alg) };
            f.with_pole(u0, residue)
        } else {
            f
        }
    }

    pub fn eval(&self, u: &NComplex) -> Result<NComplex> {
        (self.f)(u)
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }
}

/// Polyline through points of one algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct PathLoop {
    alg: AlgebraSpec,
    vertices: Vec<NComplex>,
    closed: bool,
}

impl PathLoop {
    pub fn new(vertices: Vec<NComplex>, closed: bool) -> Result<Self> {
        let min = if closed { 3 } else { 2 };
        if vertices.len() < min {
            return Err(Error::Argument(format!("path needs at least {min} vertices")));
        }
        let alg = vertices[0].algebra();
        if let Some(v) = vertices.iter().find(|v| v.algebra() != alg) {
            return Err(Error::Mismatch(alg, v.algebra()));
        }
        Ok(Self { alg, vertices, closed })
    }

    /// Regular polygon traced counterclockwise in plane `k` about `center`.
    pub fn circle(center: &NComplex, plane: usize, radius: f64, vertices: usize) -> Result<Self> {
        let alg = center.algebra();
        let basis = canonical_basis(alg);
        let (e, et) = plane
            .checked_sub(1)
            .and_then(|k| basis.planes.get(k))
            .ok_or_else(|| Error::Argument(format!("{alg} has no plane {plane}")))?;
        if !(radius > 0.0) || vertices < 3 {
            return Err(Error::Argument("circle needs a positive radius and at least 3 vertices".into()));
        }
        let pts = (0..vertices)
            .map(|j| {
                let (s, c) = (2.0 * PI * j as f64 / vertices as f64).sin_cos();
                center.add(&e.scale(radius * c))?.add(&et.scale(radius * s))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts, true)
    }

    /// Circle in plane `k` around the projection of `u0`, shifted by `radius`
    /// in every other component so `u - u0` stays invertible on the loop.
    pub fn circle_around(u0: &NComplex, plane: usize, radius: f64, vertices: usize) -> Result<Self> {
        let s = to_spectral(u0);
        let lines = s.lines().iter().map(|v| v + radius).collect();
        let planes = s
            .planes()
            .iter()
            .enumerate()
            .map(|(k, z)| if k + 1 == plane { *z } else { z + radius })
            .collect();
        let center = crate::spectral::from_spectral(&SpectralForm::new(u0.algebra(), lines, planes)?);
        Self::circle(&center, plane, radius, vertices)
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    pub fn vertices(&self) -> &[NComplex] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn edges(&self) -> impl Iterator<Item = (&NComplex, &NComplex)> {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }
}

/// Spectral components of `u - pole`, lines as real numbers.
fn offsets(u: &NComplex, pole: &NComplex) -> Result<SpectralForm> {
    Ok(to_spectral(&u.sub(pole)?))
}

fn check_clear(u: &NComplex, prev: Option<&SpectralForm>, pole: &Pole) -> Result<SpectralForm> {
    let s = offsets(u, &pole.location)?;
    let layout = spectral_layout(u.algebra());
    for (i, v) in s.lines().iter().enumerate() {
        let crossed = prev.is_some_and(|p| p.lines()[i].signum() != v.signum());
        if v.abs() <= BOUNDARY_EPS || crossed {
            return Err(Error::Geometry(format!("path meets the singular set of a pole along {}", layout.line(i))));
        }
    }
    if let Some(k) = s.planes().iter().position(|z| z.norm() <= BOUNDARY_EPS) {
        return Err(Error::Geometry(format!("path meets the singular set of a pole along plane {}", k + 1)));
    }
    Ok(s)
}

/// Composite midpoint rule with `subdivisions` pieces per edge.
pub fn line_integral(f: &HypercomplexFunction, path: &PathLoop, subdivisions: usize) -> Result<NComplex> {
    if subdivisions == 0 {
        return Err(Error::Argument("subdivisions must be at least 1".into()));
    }
    let alg = path.alg;
    let mut total = NComplex::zero(alg);
    let mut last: Vec<Option<SpectralForm>> = vec![None; f.poles.len()];
    for (a, b) in path.edges() {
        let du = b.sub(a)?.scale(1.0 / subdivisions as f64);
        let mut edge_sum = NComplex::zero(alg);
        for i in 0..=subdivisions {
            let t = i as f64;
            let vertex = a.add(&du.scale(t))?;
            for (pole, prev) in f.poles.iter().zip(last.iter_mut()) {
                *prev = Some(check_clear(&vertex, prev.as_ref(), pole)?);
            }
            if i == subdivisions {
                break;
            }
            let mid = a.add(&du.scale(t + 0.5))?;
            for (pole, prev) in f.poles.iter().zip(last.iter_mut()) {
                *prev = Some(check_clear(&mid, prev.as_ref(), pole)?);
            }
            edge_sum = edge_sum.add(&f.eval(&mid)?)?;
        }
        total = total.add(&edge_sum.mul(&du)?)?;
    }
    Ok(total)
}

fn plane_point(u: &NComplex, plane: usize) -> Result<Complex64> {
    to_spectral(u)
        .planes()
        .get(plane.wrapping_sub(1))
        .copied()
        .ok_or_else(|| Error::Argument(format!("{} has no plane {plane}", u.algebra())))
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    let t = if len2 == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0) };
    (a + d * t - p).norm()
}

/// Signed winding number of the loop's projection on plane `k` about `m`'s.
pub fn winding_number(m: &NComplex, path: &PathLoop, plane: usize) -> Result<i64> {
    if m.algebra() != path.alg {
        return Err(Error::Mismatch(path.alg, m.algebra()));
    }
    if !path.closed {
        return Err(Error::Argument("winding needs a closed loop".into()));
    }
    let p = plane_point(m, plane)?;
    let pts = path.vertices.iter().map(|v| plane_point(v, plane)).collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    for i in 0..pts.len() {
        let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
        if segment_distance(p, a, b) <= BOUNDARY_EPS {
            return Err(Error::Geometry(format!("point lies on the projected loop in plane {plane}")));
        }
        total += ((b - p) / (a - p)).arg();
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Interior indicator: the winding number clamped to `{0, 1}`.
pub fn winding_int(m: &NComplex, path: &PathLoop, plane: usize) -> Result<u8> {
    Ok(winding_number(m, path, plane)?.clamp(0, 1) as u8)
}

/// `sum_k 2 pi e~_k w_k`, with `w_k` the signed winding number in plane `k`.
pub fn residue_expected(u0: &NComplex, path: &PathLoop) -> Result<NComplex> {
    let alg = path.alg;
    let mut out = NComplex::zero(alg);
    for (k, (_, et)) in canonical_basis(alg).planes.iter().enumerate() {
        let w = winding_number(u0, path, k + 1)?;
        if w != 0 {
            out = out.add(&et.scale(2.0 * PI * w as f64))?;
        }
    }
    Ok(out)
}

/// Integral predicted by the declared poles and their residues.
pub fn pole_sum_expected(f: &HypercomplexFunction, path: &PathLoop) -> Result<NComplex> {
    let mut out = NComplex::zero(path.alg);
    for pole in &f.poles {
        out = out.add(&residue_expected(&pole.location, path)?.mul(&pole.residue)?)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CauchyReport {
    pub integral: NComplex,
    pub expected: NComplex,
    pub deviation: f64,
    /// `|sum of integral components|`, polar algebras only.
    pub component_sum: Option<f64>,
}

fn report(integral: NComplex, expected: NComplex) -> CauchyReport {
    let deviation = integral.max_abs_diff(&expected);
    let component_sum = (integral.algebra().kind() == Kind::Polar).then(|| integral.coeffs().iter().sum::<f64>().abs());
    CauchyReport { integral, expected, deviation, component_sum }
}

fn scaled_pole(f: HypercomplexFunction, u0: &NComplex, power: i64) -> HypercomplexFunction {
    let c = u0.clone();
    HypercomplexFunction::new(move |u| {
        let d = crate::functions::pow_int(&u.sub(&c)?, power)?;
        f.eval(u)?.mul(&d)
    })
    .with_pole(u0.clone(), NComplex::zero(u0.algebra()))
}

/// Compares `loop f(u) du / (u - u0)` with `f(u0)` times the expected residue.
pub fn cauchy_check(f: HypercomplexFunction, u0: &NComplex, path: &PathLoop, subdivisions: usize) -> Result<CauchyReport> {
    let expected = residue_expected(u0, path)?.mul(&f.eval(u0)?)?;
    let integral = line_integral(&scaled_pole(f, u0, -1), path, subdivisions)?;
    Ok(report(integral, expected))
}

/// First-derivative variant: `loop f(u) du / (u - u0)^2` against `f'(u0)`.
pub fn cauchy_derivative_check(
    f: HypercomplexFunction,
    derivative_at_u0: &NComplex,
    u0: &NComplex,
    path: &PathLoop,
    subdivisions: usize,
) -> Result<CauchyReport> {
    let expected = residue_expected(u0, path)?.mul(derivative_at_u0)?;
    let integral = line_integral(&scaled_pole(f, u0, -2), path, subdivisions)?;
    Ok(report(integral, expected))
}

fn shifted(u: &NComplex, steps: &[(usize, f64)]) -> NComplex {
    let mut c = u.coeffs().to_vec();
    for (j, d) in steps {
        c[*j] += d;
    }
    NComplex::new(u.algebra(), c).expect("same length")
}

/// `d f / d x_l` for every `l` by central differences.
fn jacobian(f: &HypercomplexFunction, u: &NComplex, h: f64) -> Result<Vec<NComplex>> {
    (0..u.n())
        .map(|l| Ok(f.eval(&shifted(u, &[(l, h)]))?.sub(&f.eval(&shifted(u, &[(l, -h)]))?)?.scale(0.5 / h)))
        .collect()
}

/// `d^2 f / d x_j d x_l` for every pair by central differences.
fn hessian(f: &HypercomplexFunction, u: &NComplex, h: f64) -> Result<Vec<Vec<NComplex>>> {
    let n = u.n();
    let mut out = vec![vec![NComplex::zero(u.algebra()); n]; n];
    for j in 0..n {
        for l in j..n {
            let pp = f.eval(&shifted(u, &[(j, h), (l, h)]))?;
            let pm = f.eval(&shifted(u, &[(j, h), (l, -h)]))?;
            let mp = f.eval(&shifted(u, &[(j, -h), (l, h)]))?;
            let mm = f.eval(&shifted(u, &[(j, -h), (l, -h)]))?;
            let d = pp.sub(&pm)?.sub(&mp)?.add(&mm)?.scale(0.25 / (h * h));
            out[l][j] = d.clone();
            out[j][l] = d;
        }
    }
    Ok(out)
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Argument("step must be positive".into()))
    }
}

/// Largest deviation from `d f / d x_l = h_l d f / d x_0`.
pub fn riemann_check(f: &HypercomplexFunction, u: &NComplex, h: f64) -> Result<f64> {
    check_step(h)?;
    let alg = u.algebra();
    let j = jacobian(f, u, h)?;
    let mut worst: f64 = 0.0;
    for (l, dl) in j.iter().enumerate().skip(1) {
        let rhs = NComplex::unit(alg, l, 1.0)?.mul(&j[0])?;
        worst = worst.max(dl.max_abs_diff(&rhs));
    }
    Ok(worst)
}

/// Largest deviation from `d^2 f / d x_j d x_l = h_j h_l d^2 f / d x_0^2`,
/// together with the wave and Laplace relations for `n = 2, 3` polar.
pub fn second_order_check(f: &HypercomplexFunction, u: &NComplex, h: f64) -> Result<f64> {
    check_step(h)?;
    let alg = u.algebra();
    let hs = hessian(f, u, h)?;
    let mut worst: f64 = 0.0;
    for (j, row) in hs.iter().enumerate() {
        for (l, hjl) in row.iter().enumerate() {
            let unit = NComplex::unit(alg, j, 1.0)?.mul(&NComplex::unit(alg, l, 1.0)?)?;
            worst = worst.max(hjl.max_abs_diff(&unit.mul(&hs[0][0])?));
        }
    }
    if alg.kind() == Kind::Polar && alg.n() == 2 {
        worst = worst.max(wave_from(&hs));
    }
    if alg.kind() == Kind::Polar && alg.n() == 3 {
        worst = worst.max(laplace_from(&hs));
    }
    Ok(worst)
}

fn wave_from(hs: &[Vec<NComplex>]) -> f64 {
    hs[0][0].max_abs_diff(&hs[1][1])
}

fn laplace_from(hs: &[Vec<NComplex>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, b) in [((0, 0), (1, 2)), ((1, 1), (0, 2)), ((2, 2), (0, 1))] {
        worst = worst.max(hs[a.0][a.1].max_abs_diff(&hs[b.0][b.1]));
    }
    let lap: Vec<f64> = (0..3).map(|c| (0..3).map(|j| hs[j][j].coeffs()[c]).sum()).collect();
    for (p, q) in [(0, 1), (0, 2), (1, 2)] {
        worst = worst.max((lap[p] - lap[q]).abs());
    }
    worst
}

/// `d^2 f / d x^2 - d^2 f / d y^2` for twocomplex `f`.
pub fn twocomplex_wave_residual(f: &HypercomplexFunction, u: &NComplex, h: f64) -> Result<f64> {
    check_step(h)?;
    if u.algebra() != AlgebraSpec::polar(2)? {
        return Err(Error::Argument("wave relation applies to polar:2".into()));
    }
    Ok(wave_from(&hessian(f, u, h)?))
}

/// Mixed-derivative relations and Laplacians of component differences for
/// tricomplex `f`.
pub fn tricomplex_laplace_residual(f: &HypercomplexFunction, u: &NComplex, h: f64) -> Result<f64> {
    check_step(h)?;
    if u.algebra() != AlgebraSpec::polar(3)? {
        return Err(Error::Argument("Laplace relations apply to polar:3".into()));
    }
    Ok(laplace_from(&hessian(f, u, h)?))
}
