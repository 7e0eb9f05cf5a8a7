//! Algebra descriptors, unit tables and coefficient-space arithmetic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::spectral;

/// Largest supported dimension.
pub const MAX_N: usize = 64;

/// Default comparison tolerance (absolute below 1, relative above).
pub const DEFAULT_TOL: f64 = 1e-12;

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Polar,
    Planar,
    Circular4,
    Hyperbolic4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    kind: Kind,
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitProduct {
    pub sign: i8,
    pub index: usize,
}

// Rows/columns: 1, alpha, beta, gamma.
const CIRCULAR4: [[(i8, usize); 4]; 4] = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (1, 1), (1, 0)],
];

impl AlgebraSpec {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        let ok = match kind {
            Kind::Polar => (2..=MAX_N).contains(&n),
            Kind::Planar => n.is_multiple_of(2) && (2..=MAX_N).contains(&n),
            Kind::Circular4 | Kind::Hyperbolic4 => n == 4,
        };
        if ok {
            Ok(Self { kind, n })
        } else if kind == Kind::Planar && n % 2 == 1 && n <= MAX_N {
            Err(Error::Argument(format!(
                "planar:{n} is not supported (odd planar algebras are equivalent to polar ones); use polar:{n}"
            )))
        } else {
            Err(Error::Argument(format!("dimension {n} is not valid for {kind:?}")))
        }
    }

    pub fn polar(n: usize) -> Result<Self> {
        Self::new(Kind::Polar, n)
    }

    pub fn planar(n: usize) -> Result<Self> {
        Self::new(Kind::Planar, n)
    }

    pub fn circular4() -> Self {
        Self { kind: Kind::Circular4, n: 4 }
    }

    pub fn hyperbolic4() -> Self {
        Self { kind: Kind::Hyperbolic4, n: 4 }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Signed basis index of `h_j * h_k`.
    pub fn unit_product(&self, j: usize, k: usize) -> Result<UnitProduct> {
        if j >= self.n || k >= self.n {
            return Err(Error::Argument(format!(
                "unit index out of range for {self}: ({j}, {k})"
            )));
        }
        let (sign, index) = self.table(j, k);
        Ok(UnitProduct { sign, index })
    }

    #[inline]
    pub(crate) fn table(&self, j: usize, k: usize) -> (i8, usize) {
        match self.kind {
            Kind::Polar => (1, (j + k) % self.n),
            Kind::Planar => {
                let s = j + k;
                if s >= self.n {
                    (-1, s - self.n)
                } else {
                    (1, s)
                }
            }
            Kind::Circular4 => CIRCULAR4[j][k],
            Kind::Hyperbolic4 => (1, j ^ k),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Polar => write!(f, "polar:{}", self.n),
            Kind::Planar => write!(f, "planar:{}", self.n),
            Kind::Circular4 => f.write_str("circular4"),
            Kind::Hyperbolic4 => f.write_str("hyperbolic4"),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "circular4" => return Ok(Self::circular4()),
            "hyperbolic4" => return Ok(Self::hyperbolic4()),
            _ => {}
        }
        let bad = || {
            Error::Argument(format!(
                "bad algebra descriptor `{s}` (expected polar:N, planar:N, circular4 or hyperbolic4)"
            ))
        };
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "polar" => Self::polar(n),
            "planar" => Self::planar(n),
            _ => Err(bad()),
        }
    }
}

/// A hypercomplex number `x_0 + h_1 x_1 + ... + h_{n-1} x_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct NComplex {
    alg: AlgebraSpec,
    coeffs: Vec<f64>,
}

impl NComplex {
    pub fn new(alg: AlgebraSpec, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != alg.n() {
            return Err(Error::Argument(format!(
                "{alg} needs {} coefficients, got {}",
                alg.n(),
                coeffs.len()
            )));
        }
        Ok(Self { alg, coeffs })
    }

    pub fn zero(alg: AlgebraSpec) -> Self {
        Self { alg, coeffs: vec![0.0; alg.n()] }
    }

    pub fn one(alg: AlgebraSpec) -> Self {
        Self::scalar(alg, 1.0)
    }

    pub fn scalar(alg: AlgebraSpec, c: f64) -> Self {
        let mut z = Self::zero(alg);
        z.coeffs[0] = c;
        z
    }

    /// `c * h_k`.
    pub fn unit(alg: AlgebraSpec, k: usize, c: f64) -> Result<Self> {
        if k >= alg.n() {
            return Err(Error::Argument(format!("unit index {k} out of range for {alg}")));
        }
        let mut z = Self::zero(alg);
        z.coeffs[k] = c;
        Ok(z)
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::Mismatch(self.alg, other.alg))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { alg: self.alg, coeffs: self.coeffs.iter().map(|x| c * x).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect();
        Self { alg: self.alg, coeffs }
    }

    /// Signed convolution. Each unordered pair `{j, k}` is summed as
    /// `a_j b_k + a_k b_j`, so `u*v` and `v*u` are bit-identical.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_same(other))
    }

    pub(crate) fn mul_same(&self, other: &Self) -> Self {
        let n = self.n();
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut out = vec![0.0; n];
        for j in 0..n {
            for k in j..n {
                let (s, l) = self.alg.table(j, k);
                let t = if j == k { a[j] * b[j] } else { a[j] * b[k] + a[k] * b[j] };
                if s > 0 {
                    out[l] += t;
                } else {
                    out[l] -= t;
                }
            }
        }
        Self { alg: self.alg, coeffs: out }
    }

    /// Euclidean norm of the coefficients.
    pub fn modulus(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Product of line values and squared plane radii.
    pub fn nu(&self) -> f64 {
        let s = spectral::to_spectral(self);
        s.lines().iter().product::<f64>() * s.planes().iter().map(|z| z.norm_sqr()).product::<f64>()
    }

    pub fn amplitude(&self) -> Option<f64> {
        let nu = self.nu();
        let n = self.n() as f64;
        match self.alg.kind() {
            Kind::Planar | Kind::Circular4 => Some(nu.max(0.0).powf(1.0 / n)),
            Kind::Polar | Kind::Hyperbolic4 => (nu > 0.0).then(|| nu.powf(1.0 / n)),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if let Some(c) = spectral::nodal_component(self) {
            return Err(Error::Nodal(c));
        }
        let s = spectral::to_spectral(self);
        let inv = s.try_map(|_, v| Ok(1.0 / v), |_, z| Ok(z.inv()))?;
        Ok(spectral::from_spectral(&inv))
    }

    pub fn divide(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_same(&other.inverse()?))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Per-coefficient comparison with [`close`].
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.alg == other.alg && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| close(*a, *b, tol))
    }
}

impl fmt::Display for NComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.alg)?;
        for (i, x) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}
