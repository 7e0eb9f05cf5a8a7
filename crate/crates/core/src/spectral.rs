//! Canonical decomposition into real lines and complex planes.
//!
//! Values are stored unscaled: polar `v_k = sum x_p cos(2 pi k p / n)`, planar
//! with the odd angles `pi (2k-1) p / n`, hyperbolic lines `(s, s', s'', s''')`,
//! circular planes `(x+t, y+z)` and `(x-t, y-z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::algebra::{AlgebraSpec, Kind, NComplex};
use crate::error::{Component, Error, Result};
use crate::matrep::Matrix;

const POLAR_LINES: [&str; 2] = ["v+", "v-"];
const HYPERBOLIC_LINES: [&str; 4] = ["s", "s'", "s''", "s'''"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralLayout {
    pub lines: usize,
    pub planes: usize,
    pub line_labels: Vec<&'static str>,
}

impl SpectralLayout {
    pub fn line(&self, i: usize) -> Component {
        Component::Line(i, self.line_labels[i])
    }

    /// Lines first, then planes.
    pub fn components(&self) -> Vec<Component> {
        let mut out: Vec<Component> = (0..self.lines).map(|i| self.line(i)).collect();
        out.extend((1..=self.planes).map(Component::Plane));
        out
    }
}

pub fn spectral_layout(alg: AlgebraSpec) -> SpectralLayout {
    let n = alg.n();
    let (labels, planes): (&[&'static str], usize) = match alg.kind() {
        Kind::Polar if n.is_multiple_of(2) => (&POLAR_LINES, n / 2 - 1),
        Kind::Polar => (&POLAR_LINES[..1], (n - 1) / 2),
        Kind::Planar => (&[], n / 2),
        Kind::Circular4 => (&[], 2),
        Kind::Hyperbolic4 => (&HYPERBOLIC_LINES, 0),
    };
    SpectralLayout { lines: labels.len(), planes, line_labels: labels.to_vec() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralForm {
    alg: AlgebraSpec,
    lines: Vec<f64>,
    planes: Vec<Complex64>,
}

impl SpectralForm {
    pub fn new(alg: AlgebraSpec, lines: Vec<f64>, planes: Vec<Complex64>) -> Result<Self> {
        let layout = spectral_layout(alg);
        if lines.len() != layout.lines || planes.len() != layout.planes {
            return Err(Error::Argument(format!(
                "{alg} has {} lines and {} planes, got {} and {}",
                layout.lines,
                layout.planes,
                lines.len(),
                planes.len()
            )));
        }
        Ok(Self { alg, lines, planes })
    }

    pub fn one(alg: AlgebraSpec) -> Self {
        let l = spectral_layout(alg);
        Self { alg, lines: vec![1.0; l.lines], planes: vec![Complex64::new(1.0, 0.0); l.planes] }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    pub fn lines(&self) -> &[f64] {
        &self.lines
    }

    pub fn planes(&self) -> &[Complex64] {
        &self.planes
    }

    /// Plane radii `rho_k`.
    pub fn radii(&self) -> Vec<f64> {
        self.planes.iter().map(|z| z.norm()).collect()
    }

    /// `|line|` values then plane radii, in layout order.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.lines.iter().map(|v| v.abs()).chain(self.planes.iter().map(|z| z.norm())).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let l = self.lines.iter().zip(&other.lines).map(|(a, b)| (a - b).abs());
        let p = self.planes.iter().zip(&other.planes).map(|(a, b)| (a.re - b.re).abs().max((a.im - b.im).abs()));
        l.chain(p).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        let l = self.lines.iter().map(|a| a.abs());
        let p = self.planes.iter().map(|a| a.re.abs().max(a.im.abs()));
        l.chain(p).fold(0.0, f64::max)
    }

    /// Componentwise map: lines by `line(i, v)`, planes by `plane(k, z)` with `k` 1-based.
    pub fn try_map(
        &self,
        mut line: impl FnMut(usize, f64) -> Result<f64>,
        mut plane: impl FnMut(usize, Complex64) -> Result<Complex64>,
    ) -> Result<Self> {
        let lines = self.lines.iter().enumerate().map(|(i, v)| line(i, *v)).collect::<Result<_>>()?;
        let planes = self.planes.iter().enumerate().map(|(k, z)| plane(k + 1, *z)).collect::<Result<_>>()?;
        Ok(Self { alg: self.alg, lines, planes })
    }
}

/// Angle of plane `k` (1-based) at coefficient `p`, reduced before scaling.
fn angle(alg: AlgebraSpec, k: usize, p: usize) -> f64 {
    let n = alg.n();
    match alg.kind() {
        Kind::Planar => PI * (((2 * k - 1) * p) % (2 * n)) as f64 / n as f64,
        _ => 2.0 * PI * ((k * p) % n) as f64 / n as f64,
    }
}

/// Relative size below which a spectral component counts as zero.
pub const NODAL_EPS: f64 = 1e-14;

/// Threshold for `u`: trig sums of exact zeros carry rounding of this order.
pub fn nodal_threshold(u: &NComplex) -> f64 {
    NODAL_EPS * u.coeffs().iter().map(|x| x.abs()).sum::<f64>()
}

/// First component of `u` that vanishes (to rounding), if any.
pub fn nodal_component(u: &NComplex) -> Option<Component> {
    let s = to_spectral(u);
    let eps = nodal_threshold(u);
    let layout = spectral_layout(u.algebra());
    if let Some(i) = s.lines.iter().position(|v| v.abs() <= eps) {
        return Some(layout.line(i));
    }
    s.planes.iter().position(|z| z.norm() <= eps).map(|k| Component::Plane(k + 1))
}

pub fn to_spectral(u: &NComplex) -> SpectralForm {
    let alg = u.algebra();
    let x = u.coeffs();
    let layout = spectral_layout(alg);
    let (lines, planes) = match alg.kind() {
        Kind::Hyperbolic4 => {
            let [a, b, c, d] = [x[0], x[1], x[2], x[3]];
            (vec![a + b + c + d, a - b + c - d, a + b - c - d, a - b - c + d], vec![])
        }
        Kind::Circular4 => {
            let [a, b, c, d] = [x[0], x[1], x[2], x[3]];
            (vec![], vec![Complex64::new(a + d, b + c), Complex64::new(a - d, b - c)])
        }
        Kind::Polar | Kind::Planar => {
            let mut lines = Vec::with_capacity(layout.lines);
            if layout.lines >= 1 {
                lines.push(x.iter().sum());
            }
            if layout.lines == 2 {
                lines.push(x.iter().enumerate().map(|(p, v)| if p % 2 == 0 { *v } else { -v }).sum());
            }
            let planes = (1..=layout.planes)
                .map(|k| {
                    let mut z = Complex64::new(0.0, 0.0);
                    for (p, v) in x.iter().enumerate() {
                        let (s, c) = angle(alg, k, p).sin_cos();
                        z.re += v * c;
                        z.im += v * s;
                    }
                    z
                })
                .collect();
            (lines, planes)
        }
    };
    SpectralForm { alg, lines, planes }
}

/// `sum e_line v_line + sum (e_k v_k + e~_k v~_k)`.
pub fn from_spectral(s: &SpectralForm) -> NComplex {
    let basis = canonical_basis(s.alg);
    let mut x = vec![0.0; s.alg.n()];
    for (e, v) in basis.lines.iter().zip(&s.lines) {
        for (xi, ei) in x.iter_mut().zip(e.coeffs()) {
            *xi += v * ei;
        }
    }
    for ((e, et), z) in basis.planes.iter().zip(&s.planes) {
        for ((xi, ei), eti) in x.iter_mut().zip(e.coeffs()).zip(et.coeffs()) {
            *xi += z.re * ei + z.im * eti;
        }
    }
    NComplex::new(s.alg, x).expect("basis length matches algebra")
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalBasis {
    pub lines: Vec<NComplex>,
    pub planes: Vec<(NComplex, NComplex)>,
}

impl CanonicalBasis {
    /// Idempotents: line elements then `e_k` of each plane.
    pub fn idempotents(&self) -> Vec<NComplex> {
        self.lines.iter().cloned().chain(self.planes.iter().map(|(e, _)| e.clone())).collect()
    }
}

pub fn canonical_basis(alg: AlgebraSpec) -> CanonicalBasis {
    let n = alg.n();
    let mk = |c: Vec<f64>| NComplex::new(alg, c).expect("length n");
    match alg.kind() {
        Kind::Hyperbolic4 => {
            let rows = [[1., 1., 1., 1.], [1., -1., 1., -1.], [1., 1., -1., -1.], [1., -1., -1., 1.]];
            CanonicalBasis { lines: rows.iter().map(|r| mk(r.iter().map(|v| v / 4.0).collect())).collect(), planes: vec![] }
        }
        Kind::Circular4 => CanonicalBasis {
            lines: vec![],
            planes: vec![
                (mk(vec![0.5, 0., 0., 0.5]), mk(vec![0., 0.5, 0.5, 0.])),
                (mk(vec![0.5, 0., 0., -0.5]), mk(vec![0., 0.5, -0.5, 0.])),
            ],
        },
        Kind::Polar | Kind::Planar => {
            let layout = spectral_layout(alg);
            let nf = n as f64;
            let mut lines = Vec::new();
            if layout.lines >= 1 {
                lines.push(mk(vec![1.0 / nf; n]));
            }
            if layout.lines == 2 {
                lines.push(mk((0..n).map(|p| if p % 2 == 0 { 1.0 / nf } else { -1.0 / nf }).collect()));
            }
            let planes = (1..=layout.planes)
                .map(|k| {
                    let (s, c): (Vec<f64>, Vec<f64>) = (0..n)
                        .map(|p| {
                            let (s, c) = angle(alg, k, p).sin_cos();
                            (2.0 * s / nf, 2.0 * c / nf)
                        })
                        .unzip();
                    (mk(c), mk(s))
                })
                .collect();
            CanonicalBasis { lines, planes }
        }
    }
}

pub fn spectral_mul(a: &SpectralForm, b: &SpectralForm) -> Result<SpectralForm> {
    if a.alg != b.alg {
        return Err(Error::Mismatch(a.alg, b.alg));
    }
    Ok(SpectralForm {
        alg: a.alg,
        lines: a.lines.iter().zip(&b.lines).map(|(x, y)| x * y).collect(),
        planes: a.planes.iter().zip(&b.planes).map(|(x, y)| x * y).collect(),
    })
}

/// Orthonormal rows `(xi_+, [xi_-], xi_1, eta_1, xi_2, eta_2, ...)`.
pub fn rotation_matrix(alg: AlgebraSpec) -> Matrix {
    let n = alg.n();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    match alg.kind() {
        Kind::Hyperbolic4 => {
            for e in canonical_basis(alg).lines {
                rows.push(e.coeffs().iter().map(|v| 2.0 * v).collect());
            }
        }
        Kind::Circular4 => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            rows = vec![vec![r, 0., 0., r], vec![0., r, r, 0.], vec![r, 0., 0., -r], vec![0., r, -r, 0.]];
        }
        Kind::Polar | Kind::Planar => {
            let layout = spectral_layout(alg);
            let a = 1.0 / (n as f64).sqrt();
            let b = (2.0 / n as f64).sqrt();
            if layout.lines >= 1 {
                rows.push(vec![a; n]);
            }
            if layout.lines == 2 {
                rows.push((0..n).map(|p| if p % 2 == 0 { a } else { -a }).collect());
            }
            for k in 1..=layout.planes {
                let (s, c): (Vec<f64>, Vec<f64>) = (0..n)
                    .map(|p| {
                        let (s, c) = angle(alg, k, p).sin_cos();
                        (b * s, b * c)
                    })
                    .unzip();
                rows.push(c);
                rows.push(s);
            }
        }
    }
    Matrix::from_rows(rows).expect("square rotation matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{all_algebras, random_value, rng};

    fn p(n: usize) -> AlgebraSpec {
        AlgebraSpec::polar(n).unwrap()
    }

    #[test]
    fn layouts() {
        let l = spectral_layout(p(5));
        assert_eq!((l.lines, l.planes), (1, 2));
        let l = spectral_layout(AlgebraSpec::planar(6).unwrap());
        assert_eq!((l.lines, l.planes), (0, 3));
        let l = spectral_layout(AlgebraSpec::hyperbolic4());
        assert_eq!((l.lines, l.planes), (4, 0));
        let l = spectral_layout(p(8));
        assert_eq!((l.lines, l.planes), (2, 3));
        for alg in all_algebras(&[2, 3, 4, 5, 6, 7, 8, 12, 13]) {
            let l = spectral_layout(alg);
            assert_eq!(l.lines + 2 * l.planes, alg.n());
        }
    }

    #[test]
    fn to_spectral_examples() {
        let s = to_spectral(&NComplex::new(p(2), vec![2., 1.]).unwrap());
        assert_eq!(s.lines(), &[3., 1.]);
        let s = to_spectral(&NComplex::new(p(3), vec![2., 1., 0.]).unwrap());
        assert_eq!(s.lines(), &[3.]);
        assert!((s.planes()[0] - Complex64::new(1.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        let c = AlgebraSpec::planar(2).unwrap();
        let s = to_spectral(&NComplex::new(c, vec![0.3, -0.7]).unwrap());
        assert!((s.planes()[0] - Complex64::new(0.3, -0.7)).norm() < 1e-16);
    }

    #[test]
    fn from_spectral_examples() {
        let u = from_spectral(&SpectralForm::new(p(2), vec![1., 1.], vec![]).unwrap());
        assert_eq!(u.coeffs(), &[1., 0.]);
        let u = from_spectral(&SpectralForm::new(p(2), vec![3., 1.], vec![]).unwrap());
        assert_eq!(u.coeffs(), &[2., 1.]);
        let c = AlgebraSpec::planar(2).unwrap();
        let u = from_spectral(&SpectralForm::new(c, vec![], vec![Complex64::new(0., 1.)]).unwrap());
        assert!(u.approx_eq(&NComplex::new(c, vec![0., 1.]).unwrap(), 1e-15));
        assert!(SpectralForm::new(p(3), vec![1., 2.], vec![]).is_err());
    }

    #[test]
    fn round_trip() {
        let mut r = rng(11);
        for alg in all_algebras(&[2, 3, 4, 5, 6, 7, 8, 11, 12, 16, 64]) {
            for _ in 0..20 {
                let u = random_value(&mut r, alg, 3.0);
                let back = from_spectral(&to_spectral(&u));
                assert!(back.max_abs_diff(&u) <= 1e-12 * u.modulus().max(1.0), "{alg}");
            }
        }
    }

    #[test]
    fn basis_examples() {
        let b = canonical_basis(p(2));
        assert_eq!(b.lines[0].coeffs(), &[0.5, 0.5]);
        assert_eq!(b.lines[1].coeffs(), &[0.5, -0.5]);
        let b = canonical_basis(p(3));
        assert_eq!(b.lines[0].coeffs(), &[1. / 3.; 3]);
        let b = canonical_basis(AlgebraSpec::hyperbolic4());
        assert_eq!(b.lines[0].coeffs(), &[0.25; 4]);
        let t = 1. / 3f64.sqrt();
        let e1 = &canonical_basis(p(3)).planes[0].1;
        assert!(e1.approx_eq(&NComplex::new(p(3), vec![0., t, -t]).unwrap(), 1e-15));
    }

    #[test]
    fn basis_multiplication_table() {
        for alg in all_algebras(&[2, 3, 4, 5, 6, 7, 8, 10, 12]) {
            let b = canonical_basis(alg);
            let zero = NComplex::zero(alg);
            let ids = b.idempotents();
            let mut sum = NComplex::zero(alg);
            for (i, e) in ids.iter().enumerate() {
                sum = sum.add(e).unwrap();
                assert!(e.mul(e).unwrap().approx_eq(e, 1e-14), "{alg} e^2");
                for f in &ids[i + 1..] {
                    assert!(e.mul(f).unwrap().approx_eq(&zero, 1e-14), "{alg} cross");
                }
            }
            assert!(sum.approx_eq(&NComplex::one(alg), 1e-14), "{alg} sum");
            for (k, (e, et)) in b.planes.iter().enumerate() {
                assert!(et.mul(et).unwrap().approx_eq(&e.neg(), 1e-14), "{alg} et^2");
                assert!(e.mul(et).unwrap().approx_eq(et, 1e-14), "{alg} e et");
                for (j, (f, ft)) in b.planes.iter().enumerate() {
                    if j != k {
                        assert!(et.mul(ft).unwrap().approx_eq(&zero, 1e-14));
                        assert!(et.mul(f).unwrap().approx_eq(&zero, 1e-14));
                    }
                }
                for l in &b.lines {
                    assert!(et.mul(l).unwrap().approx_eq(&zero, 1e-14));
                }
            }
        }
    }

    #[test]
    fn fixed_basis_literals() {
        let h = canonical_basis(AlgebraSpec::hyperbolic4());
        assert_eq!(h.lines[1].coeffs(), &[0.25, -0.25, 0.25, -0.25]);
        assert_eq!(h.lines[2].coeffs(), &[0.25, 0.25, -0.25, -0.25]);
        assert_eq!(h.lines[3].coeffs(), &[0.25, -0.25, -0.25, 0.25]);
        let c = canonical_basis(AlgebraSpec::circular4());
        assert_eq!(c.planes[0].0.coeffs(), &[0.5, 0., 0., 0.5]);
        assert_eq!(c.planes[0].1.coeffs(), &[0., 0.5, 0.5, 0.]);
        let q = canonical_basis(p(4));
        assert!(q.planes[0].0.approx_eq(&NComplex::new(p(4), vec![0.5, 0., -0.5, 0.]).unwrap(), 1e-15));
        assert!(q.planes[0].1.approx_eq(&NComplex::new(p(4), vec![0., 0.5, 0., -0.5]).unwrap(), 1e-15));
    }

    #[test]
    fn spectral_mul_examples() {
        let a = SpectralForm::new(p(2), vec![3., 1.], vec![]).unwrap();
        assert_eq!(spectral_mul(&a, &a).unwrap().lines(), &[9., 1.]);
        let sq = NComplex::new(p(2), vec![2., 1.]).unwrap();
        assert_eq!(to_spectral(&sq.mul(&sq).unwrap()).lines(), &[9., 1.]);
        let c = AlgebraSpec::planar(2).unwrap();
        let i = SpectralForm::new(c, vec![], vec![Complex64::new(0., 1.)]).unwrap();
        assert_eq!(spectral_mul(&i, &i).unwrap().planes(), &[Complex64::new(-1., 0.)]);
        let mut r = rng(4);
        for alg in all_algebras(&[3, 6]) {
            let s = to_spectral(&random_value(&mut r, alg, 1.0));
            assert_eq!(spectral_mul(&s, &SpectralForm::one(alg)).unwrap(), s);
        }
    }

    #[test]
    fn homomorphism() {
        let mut r = rng(21);
        for alg in all_algebras(&[2, 3, 4, 5, 6, 8, 9, 12]) {
            for _ in 0..200 {
                let u = random_value(&mut r, alg, 1.0);
                let v = random_value(&mut r, alg, 1.0);
                let lhs = to_spectral(&u.mul(&v).unwrap());
                let rhs = spectral_mul(&to_spectral(&u), &to_spectral(&v)).unwrap();
                assert!(lhs.max_abs_diff(&rhs) <= 1e-11 * rhs.max_abs().max(1.0), "{alg}");
            }
        }
    }

    #[test]
    fn parseval() {
        let mut r = rng(9);
        for alg in all_algebras(&[2, 3, 4, 5, 6, 8, 9]) {
            let n = alg.n() as f64;
            for _ in 0..50 {
                let u = random_value(&mut r, alg, 2.0);
                let s = to_spectral(&u);
                let lines: f64 = s.lines().iter().map(|v| v * v).sum();
                let planes: f64 = s.planes().iter().map(|z| z.norm_sqr()).sum();
                let d2 = match alg.kind() {
                    Kind::Polar | Kind::Planar => lines / n + 2.0 * planes / n,
                    Kind::Hyperbolic4 => lines / 4.0,
                    Kind::Circular4 => planes / 2.0,
                };
                let m = u.modulus();
                assert!((d2 - m * m).abs() <= 1e-12 * m * m, "{alg}");
            }
        }
    }

    #[test]
    fn tricomplex_invariant_circle() {
        let alg = p(3);
        let on_circle = |phi: f64| {
            let s = SpectralForm::new(alg, vec![1.0], vec![Complex64::from_polar(1.0, phi)]).unwrap();
            from_spectral(&s)
        };
        for (a, b) in [(0.3, 1.9), (2.0, 5.5), (4.4, 4.4)] {
            let w = to_spectral(&on_circle(a).mul(&on_circle(b)).unwrap());
            assert!((w.lines()[0] - 1.0).abs() < 1e-14);
            assert!((w.planes()[0].norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rotation_orthonormal() {
        for alg in all_algebras(&[2, 3, 4, 5, 6, 7, 8, 12, 33, 64]) {
            let t = rotation_matrix(alg);
            let i = t.mul(&t.transpose()).unwrap();
            assert!(i.max_abs_diff(&Matrix::identity(alg.n())) <= 1e-12, "{alg}");
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t = rotation_matrix(p(2));
        for (x, y) in t.row(0).iter().chain(t.row(1)).zip([h, h, h, -h]) {
            assert!((x - y).abs() < 1e-15);
        }
        let t = rotation_matrix(p(3));
        let (a, b) = (2. / 6f64.sqrt(), 1. / 6f64.sqrt());
        for (x, y) in t.row(1).iter().zip([a, -b, -b]) {
            assert!((x - y).abs() < 1e-15);
        }
        for (x, y) in t.row(2).iter().zip([0., 1. / 2f64.sqrt(), -1. / 2f64.sqrt()]) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn rotation_maps_to_scaled_spectral() {
        let mut r = rng(6);
        for alg in all_algebras(&[3, 4, 6, 7]) {
            let u = random_value(&mut r, alg, 1.0);
            let xi = rotation_matrix(alg).apply(u.coeffs());
            let s = to_spectral(&u);
            let n = alg.n() as f64;
            let (lscale, pscale) = match alg.kind() {
                Kind::Polar | Kind::Planar => (1.0 / n.sqrt(), (2.0 / n).sqrt()),
                Kind::Hyperbolic4 => (0.5, 0.0),
                Kind::Circular4 => (0.0, std::f64::consts::FRAC_1_SQRT_2),
            };
            let mut i = 0;
            for v in s.lines() {
                assert!((xi[i] - v * lscale).abs() < 1e-14);
                i += 1;
            }
            for z in s.planes() {
                assert!((xi[i] - z.re * pscale).abs() < 1e-14);
                assert!((xi[i + 1] - z.im * pscale).abs() < 1e-14);
                i += 2;
            }
        }
    }
}
