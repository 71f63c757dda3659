//! Independent checkers and seeded generators. Nothing here shares a code
//! path with the decomposition engine: powers are expanded by repeated
//! multiplication and linear systems are solved by plain elimination.

mod sturm;

use rand::Rng;

use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::forms::{proportional, BinaryForm, LinearForm};
use crate::harmonic::HarmonicCoords;
use crate::scalar::Scalar;

pub use sturm::{dehomogenize, real_root_count, IntPoly, SturmChain};

/// `L^d` by `d` successive multiplications by `alpha x + beta y`.
pub fn naive_power(l: &LinearForm, d: usize) -> Vec<Scalar> {
    let mut p = vec![Scalar::one()];
    for _ in 0..d {
        let mut next = vec![Scalar::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k] = &next[k] + &(c * l.alpha());
            next[k + 1] = &next[k + 1] + &(c * l.beta());
        }
        p = next;
    }
    p
}

/// Solves `sum lambda_i L_i^d = f` by textbook Gaussian elimination on the
/// augmented matrix.
pub fn brute_force_solve(f: &BinaryForm, candidates: &[LinearForm]) -> Result<Vec<Scalar>> {
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if proportional(&candidates[i], &candidates[j]) {
                return Err(Error::ProportionalForms(i, j));
            }
        }
    }
    let d = f.degree();
    let n = candidates.len();
    if n > d + 1 {
        return Err(Error::Domain(format!("{n} candidates exceed {} monomials", d + 1)));
    }
    let cols: Vec<Vec<Scalar>> = candidates.iter().map(|l| naive_power(l, d)).collect();
    let mut m: Vec<Vec<Scalar>> = (0..=d)
        .map(|k| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[k].clone()).collect();
            row.push(f.coeff(k).clone());
            row
        })
        .collect();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            return Err(Error::SingularMatrix);
        };
        m.swap(row, p);
        let inv = m[row][col].try_inv()?;
        for c in col..=n {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let t = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        row += 1;
    }
    if m[n..].iter().any(|r| !r[n].is_zero()) {
        return Err(Error::Inconsistent);
    }
    Ok(m[..n].iter().map(|r| r[n].clone()).collect())
}

fn nonzero_coords<R: Rng + ?Sized>(rng: &mut R) -> (i64, i64) {
    loop {
        let a = rng.gen_range(-9..=9);
        let b = rng.gen_range(-9..=9);
        if a != 0 || b != 0 {
            return (a, b);
        }
    }
}

/// `a0 h_{d,0} + a1 h_{d,1}` with integer `(a0, a1)` in `[-9, 9]`, not both zero.
pub fn random_harmonic<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<BinaryForm> {
    let (a0, a1) = nonzero_coords(rng);
    HarmonicCoords::new(a0.into(), a1.into()).to_form(d)
}

/// A random pairwise non-proportional integer linear form set of size `r`.
pub fn random_forms<R: Rng + ?Sized>(r: usize, rng: &mut R) -> Vec<LinearForm> {
    let mut forms: Vec<LinearForm> = Vec::with_capacity(r);
    let span = 9 + r as i64;
    while forms.len() < r {
        let l = if rng.gen_ratio(1, 10) {
            LinearForm::y()
        } else {
            LinearForm::from_ints(rng.gen_range(1..=3), rng.gen_range(-span..=span))
        };
        if forms.iter().all(|m| !proportional(m, &l)) {
            forms.push(l);
        }
    }
    forms
}

/// `sum lambda_i L_i^d` with `r` random forms and nonzero integer weights.
pub fn random_power_sum<R: Rng + ?Sized>(
    d: usize,
    r: usize,
    rng: &mut R,
) -> Result<(BinaryForm, Decomposition)> {
    if d == 0 || r == 0 || r > d + 1 {
        return Err(Error::Domain(format!("need d >= 1 and 1 <= r <= d + 1, got d = {d}, r = {r}")));
    }
    let forms = random_forms(r, rng);
    let lambdas: Vec<Scalar> = (0..r)
        .map(|_| loop {
            let v: i64 = rng.gen_range(-9..=9);
            if v != 0 {
                break Scalar::from_int(v);
            }
        })
        .collect();
    let mut coeffs = vec![Scalar::zero(); d + 1];
    for (l, lambda) in forms.iter().zip(&lambdas) {
        for (c, p) in coeffs.iter_mut().zip(naive_power(l, d)) {
            *c = &*c + &(lambda * &p);
        }
    }
    Ok((BinaryForm::new(coeffs), Decomposition::from_parts(d, lambdas, forms)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{solve_coefficients, verify};
    use crate::forms::{apply, power_form, DiffOperator};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn naive_power_of_two_x_plus_y() {
        let p = naive_power(&LinearForm::from_ints(2, 1), 4);
        assert_eq!(BinaryForm::new(p), BinaryForm::from_ints(&[16, 32, 24, 8, 1]));
    }

    #[test]
    fn brute_force_first_worked_example() {
        let f = HarmonicCoords::new(2.into(), 1.into()).to_form(4).unwrap();
        let forms = [
            LinearForm::from_ints(1, 1),
            LinearForm::from_ints(1, -1),
            LinearForm::from_ints(2, 1),
            LinearForm::from_ints(0, 1),
        ];
        assert_eq!(
            brute_force_solve(&f, &forms).unwrap(),
            vec![q(-5, 2), q(-5, 6), q(1, 3), q(5, 1)]
        );
    }

    #[test]
    fn brute_force_cube_on_axes() {
        let f = BinaryForm::from_ints(&[1, 0, 0, 0]);
        let l = brute_force_solve(&f, &[LinearForm::x(), LinearForm::y()]).unwrap();
        assert_eq!(l, vec![q(1, 1), q(0, 1)]);
        let g = BinaryForm::from_ints(&[0, 1, 0, 0]);
        assert!(matches!(
            brute_force_solve(&g, &[LinearForm::x(), LinearForm::y()]),
            Err(Error::Inconsistent)
        ));
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_power_sum(6, 4, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_power_sum(6, 4, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn power_sum_too_long() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(random_power_sum(3, 5, &mut rng), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn random_harmonic_is_harmonic(seed in any::<u64>(), d in 1usize..=20) {
            let f = random_harmonic(d, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            prop_assert!(apply(&DiffOperator::laplacian(), &f).is_zero());
            prop_assert!(!f.is_zero());
        }

        #[test]
        fn power_sum_round_trip(seed in any::<u64>(), d in 1usize..=12, r in 1usize..=6) {
            prop_assume!(r <= d + 1);
            let (f, truth) = random_power_sum(d, r, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            prop_assert!(verify(&f, &truth, Some(r), false).passed());
            let forms: Vec<LinearForm> = truth.forms().cloned().collect();
            let want: Vec<Scalar> = truth.terms.iter().map(|t| t.lambda.clone()).collect();
            prop_assert_eq!(solve_coefficients(&f, &forms).unwrap(), want.clone());
            prop_assert_eq!(brute_force_solve(&f, &forms).unwrap(), want);
        }

        #[test]
        fn naive_power_matches_binomial_expansion(a in -9i64..9, b in -9i64..9, d in 0usize..15) {
            prop_assume!(a != 0 || b != 0);
            let l = LinearForm::from_ints(a, b);
            prop_assert_eq!(BinaryForm::new(naive_power(&l, d)), power_form(&l, d));
        }

        #[test]
        fn harmonic_forms_are_real_rooted(seed in any::<u64>(), d in 2usize..=12) {
            let f = random_harmonic(d, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let (distinct, total) = real_root_count(&f).unwrap();
            prop_assert_eq!(total, d);
            prop_assert_eq!(distinct, d);
        }

        #[test]
        fn sturm_matches_rational_root_construction(
            roots in proptest::collection::vec(-6i64..=6, 1..=4),
            mult in proptest::collection::vec(1usize..=3, 4),
            definite in any::<bool>(),
        ) {
            // prod (x - r_i)^{m_i} (times x^2 + y^2 when `definite`)
            let mut f = BinaryForm::from_ints(&[1]);
            let mut expected_distinct = std::collections::BTreeSet::new();
            let mut expected_total = 0;
            for (r, m) in roots.iter().zip(&mult) {
                let lin = LinearForm::from_ints(1, -r).to_form();
                for _ in 0..*m {
                    f = f.mul(&lin);
                }
                expected_distinct.insert(*r);
                expected_total += m;
            }
            if definite {
                f = f.mul(&BinaryForm::from_ints(&[1, 0, 1]));
            }
            prop_assert_eq!(real_root_count(&f).unwrap(), (expected_distinct.len(), expected_total));
        }
    }
}
