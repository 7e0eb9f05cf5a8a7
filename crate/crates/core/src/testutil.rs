use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{AlgebraSpec, NComplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polar for every n, planar for even n, plus the two fixed 4-D algebras.
pub fn all_algebras(ns: &[usize]) -> Vec<AlgebraSpec> {
    let mut out = Vec::new();
    for &n in ns {
        out.push(AlgebraSpec::polar(n).unwrap());
        if n % 2 == 0 {
            out.push(AlgebraSpec::planar(n).unwrap());
        }
    }
    out.push(AlgebraSpec::circular4());
    out.push(AlgebraSpec::hyperbolic4());
    out
}

pub fn random_value(r: &mut ChaCha8Rng, alg: AlgebraSpec, scale: f64) -> NComplex {
    let c = (0..alg.n()).map(|_| r.gen_range(-scale..scale)).collect();
    NComplex::new(alg, c).unwrap()
}
