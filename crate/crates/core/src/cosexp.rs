//! Polar and planar cosexponential functions.
//!
//! `g_nk(y) = sum_p y^(k+pn) / (k+pn)!` and
//! `f_nk(y) = sum_p (-1)^p y^(k+pn) / (k+pn)!`, evaluated by their finite
//! exponential-trigonometric sums.

use std::f64::consts::PI;

use crate::algebra::{AlgebraSpec, Kind, NComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PolarG,
    PlanarF,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CosexpKind {
    pub family: Family,
    pub n: usize,
    pub k: usize,
}

impl CosexpKind {
    pub fn new(family: Family, n: usize, k: usize) -> Result<Self> {
        if n == 0 || k >= n {
            return Err(Error::Argument(format!("cosexponential index k={k} out of range for n={n}")));
        }
        Ok(Self { family, n, k })
    }

    pub fn eval(&self, y: f64) -> f64 {
        if y == 0.0 {
            return if self.k == 0 { 1.0 } else { 0.0 };
        }
        match self.family {
            Family::PolarG => g_sum(self.n, self.k, y),
            Family::PlanarF => f_sum(self.n, self.k, y),
        }
    }
}

fn g_sum(n: usize, k: usize, y: f64) -> f64 {
    let nf = n as f64;
    let mut acc = 0.0;
    for l in 0..n {
        let (s, c) = (2.0 * PI * l as f64 / nf).sin_cos();
        let shift = 2.0 * PI * ((k * l) % n) as f64 / nf;
        acc += (y * c).exp() * (y * s - shift).cos();
    }
    acc / nf
}

fn f_sum(n: usize, k: usize, y: f64) -> f64 {
    let nf = n as f64;
    let mut acc = 0.0;
    for l in 1..=n {
        let m = 2 * l - 1;
        let (s, c) = (PI * m as f64 / nf).sin_cos();
        let shift = PI * ((m * k) % (2 * n)) as f64 / nf;
        acc += (y * c).exp() * (y * s - shift).cos();
    }
    acc / nf
}

pub fn gnk(n: usize, k: usize, y: f64) -> Result<f64> {
    Ok(CosexpKind::new(Family::PolarG, n, k)?.eval(y))
}

pub fn fnk(n: usize, k: usize, y: f64) -> Result<f64> {
    Ok(CosexpKind::new(Family::PlanarF, n, k)?.eval(y))
}

/// All `n` functions of a family at `y`.
pub fn family_values(family: Family, n: usize, y: f64) -> Result<Vec<f64>> {
    (0..n).map(|k| Ok(CosexpKind::new(family, n, k)?.eval(y))).collect()
}

/// Largest series term count before giving up.
pub const SERIES_TERM_CAP: usize = 500;

/// Direct summation of the defining power series.
pub fn cosexp_series(kind: CosexpKind, y: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Argument("series tolerance must be positive".into()));
    }
    let CosexpKind { family, n, k } = kind;
    let mut term = 1.0;
    let mut sum = 0.0;
    for m in 0..SERIES_TERM_CAP {
        if m > 0 {
            term *= y / m as f64;
        }
        if m >= k && (m - k) % n == 0 {
            let p = (m - k) / n;
            let sign = if family == Family::PlanarF && p % 2 == 1 { -1.0 } else { 1.0 };
            sum += sign * term;
        }
        if m > k && m as f64 > y.abs() && term.abs() < tol * sum.abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::Range(format!("series for y={y} did not converge within {SERIES_TERM_CAP} terms")))
}

/// `exp(h_k y)` written on the unit basis.
pub fn exp_unit(alg: AlgebraSpec, k: usize, y: f64) -> Result<NComplex> {
    let n = alg.n();
    if k == 0 || k >= n {
        return Err(Error::Argument(format!("unit index {k} must lie in 1..{n}")));
    }
    let mut c = vec![0.0; n];
    match alg.kind() {
        Kind::Polar => {
            for (p, g) in family_values(Family::PolarG, n, y)?.into_iter().enumerate() {
                c[(k * p) % n] += g;
            }
        }
        Kind::Planar => {
            let fam = if k.is_multiple_of(2) { Family::PolarG } else { Family::PlanarF };
            for (p, v) in family_values(fam, n, y)?.into_iter().enumerate() {
                let sign = if (k * p / n).is_multiple_of(2) { 1.0 } else { -1.0 };
                c[(k * p) % n] += sign * v;
            }
        }
        Kind::Circular4 | Kind::Hyperbolic4 => {
            let (sq, _) = alg.table(k, k);
            let (a, b) = if sq > 0 { (y.cosh(), y.sinh()) } else { (y.cos(), y.sin()) };
            c[0] = a;
            c[k] = b;
        }
    }
    NComplex::new(alg, c)
}

/// Per-dimension closed forms for `n` in 2..=6, used as cross-check vectors.
pub fn closed_form_reference(n: usize, family: Family, k: usize, y: f64) -> Result<f64> {
    CosexpKind::new(family, n, k)?;
    let third = 1.0 / 3.0;
    let r3 = 3f64.sqrt() / 3.0;
    let v = match (n, family) {
        (2, Family::PolarG) => [y.cosh(), y.sinh()][k],
        (2, Family::PlanarF) => [y.cos(), y.sin()][k],
        (3, Family::PolarG) => {
            let shift = [0.0, -2.0 * PI / 3.0, 2.0 * PI / 3.0][k];
            third * y.exp() + 2.0 * third * (3f64.sqrt() / 2.0 * y + shift).cos() * (-y / 2.0).exp()
        }
        (4, Family::PolarG) => match k {
            0 => 0.5 * (y.cosh() + y.cos()),
            1 => 0.5 * (y.sinh() + y.sin()),
            2 => 0.5 * (y.cosh() - y.cos()),
            _ => 0.5 * (y.sinh() - y.sin()),
        },
        (4, Family::PlanarF) => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let a = y * r;
            let (s, c, sh, ch) = (a.sin(), a.cos(), a.sinh(), a.cosh());
            match k {
                0 => c * ch,
                1 => r * (s * ch + sh * c),
                2 => s * sh,
                _ => r * (s * ch - sh * c),
            }
        }
        (5, Family::PolarG) => {
            let w = y / 2.0;
            let s5 = 5f64.sqrt();
            let a = (s5 - 1.0) / 2.0;
            let b = -(5.0 + s5) / 2.0;
            let (sb, sc) = ((-b).sqrt(), (5.0 + b).sqrt());
            let p = (s5 - 1.0) / 2.0;
            let q = -(1.0 + s5) / 2.0;
            let r = (5.0 + s5) / (2.0 * sb);
            let t = (5.0 / -b).sqrt();
            let (e1, e2) = ((a * w).exp(), (-(1.0 + a) * w).exp());
            let (c1, s1) = ((sb * w).cos(), (sb * w).sin());
            let (c2, s2) = ((sc * w).cos(), (sc * w).sin());
            let head = (2.0 * w).exp() / 5.0;
            match k {
                0 => head + 0.4 * e1 * c1 + 0.4 * e2 * c2,
                1 => head + 0.2 * e1 * (p * c1 + r * s1) + 0.2 * e2 * (q * c2 + t * s2),
                2 => head + 0.2 * e1 * (q * c1 + t * s1) + 0.2 * e2 * (p * c2 - r * s2),
                3 => head + 0.2 * e1 * (q * c1 - t * s1) + 0.2 * e2 * (p * c2 + r * s2),
                _ => head + 0.2 * e1 * (p * c1 - r * s1) + 0.2 * e2 * (q * c2 - t * s2),
            }
        }
        (6, Family::PolarG) => {
            let (ch, sh) = ((y / 2.0).cosh(), (y / 2.0).sinh());
            let (c, s) = ((3f64.sqrt() / 2.0 * y).cos(), (3f64.sqrt() / 2.0 * y).sin());
            let (chy, shy) = (y.cosh(), y.sinh());
            match k {
                0 => third * chy + 2.0 * third * ch * c,
                1 => third * shy + third * sh * c + r3 * ch * s,
                2 => third * chy - third * ch * c + r3 * sh * s,
                3 => third * shy - 2.0 * third * sh * c,
                4 => third * chy - third * ch * c - r3 * sh * s,
                _ => third * shy + third * sh * c - r3 * ch * s,
            }
        }
        (6, Family::PlanarF) => {
            let a = 3f64.sqrt() / 2.0 * y;
            let (ch, sh) = (a.cosh(), a.sinh());
            let (c, s) = ((y / 2.0).cos(), (y / 2.0).sin());
            let (cy, sy) = (y.cos(), y.sin());
            match k {
                0 => third * cy + 2.0 * third * ch * c,
                1 => third * sy + r3 * sh * c + third * ch * s,
                2 => -third * cy + third * ch * c + r3 * sh * s,
                3 => -third * sy + 2.0 * third * ch * s,
                4 => third * cy - third * ch * c + r3 * sh * s,
                _ => third * sy - r3 * sh * c + third * ch * s,
            }
        }
        _ => {
            return Err(Error::Argument(format!("no closed form recorded for n={n}, {family:?}")));
        }
    };
    Ok(v)
}

/// Pairs with a recorded closed form.
pub const CLOSED_FORM_PAIRS: [(usize, Family); 8] = [
    (2, Family::PolarG),
    (2, Family::PlanarF),
    (3, Family::PolarG),
    (4, Family::PolarG),
    (4, Family::PlanarF),
    (5, Family::PolarG),
    (6, Family::PolarG),
    (6, Family::PlanarF),
];
