//! Shared fixtures for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use waring_core::oracle::random_harmonic;
use waring_core::{power_form, BinaryForm, LinearForm, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random harmonic form of degree `d`, fixed by `seed`.
pub fn harmonic(d: usize, seed: u64) -> BinaryForm {
    random_harmonic(d, &mut rng(seed)).expect("d >= 2")
}

/// `l0 * m^(d-1)` with deliberately awkward rational coordinates.
pub fn parabolic(d: usize) -> BinaryForm {
    let m = LinearForm::new(Scalar::from_ratio(-7, 3), Scalar::from_ratio(5, 4)).unwrap();
    let l0 = LinearForm::new(Scalar::from_ratio(2, 5), Scalar::from_ratio(-9, 2)).unwrap();
    l0.to_form().mul(&power_form(&m, d - 1))
}

/// `(x + y)^d + (2x - y)^d`, killed by a hyperbolic quadratic.
pub fn hyperbolic(d: usize) -> BinaryForm {
    &power_form(&LinearForm::from_ints(1, 1), d) + &power_form(&LinearForm::from_ints(2, -1), d)
}
