use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::forms::{apolar_operator, proportional, BinaryForm, DiffOperator, LinearForm};
use crate::scalar::{sqrt_exact, Scalar};

/// Largest `c` tried by [`split_difference_of_squares`].
pub const SPLIT_SWEEP: u32 = 64;

/// Slope sequence 0, 1, -1, 2, -2, ...
pub fn slope(index: u64) -> i64 {
    if index == 0 {
        0
    } else if index % 2 == 1 {
        index.div_ceil(2) as i64
    } else {
        -((index / 2) as i64)
    }
}

/// `d - 2` pairwise non-proportional linear operators. When `through` is
/// given its apolar operator comes first; the rest follow the slope sweep
/// (operator `dx - t dy`, i.e. the form `t x + y`) starting at `seed`.
pub fn choose_operators(
    d: usize,
    through: Option<&LinearForm>,
    avoid: &[LinearForm],
    seed: u64,
) -> Vec<DiffOperator> {
    let n = d.saturating_sub(2);
    let mut ops = Vec::with_capacity(n);
    let mut taken: Vec<LinearForm> = avoid.to_vec();
    if n == 0 {
        return ops;
    }
    if let Some(l) = through {
        ops.push(apolar_operator(l));
        taken.push(l.clone());
    }
    let mut idx = seed;
    while ops.len() < n {
        let l = LinearForm::from_ints(slope(idx), 1);
        idx += 1;
        if taken.iter().any(|t| proportional(t, &l)) {
            continue;
        }
        ops.push(apolar_operator(&l));
        taken.push(l);
    }
    ops
}

fn lin(alpha: Scalar, beta: Scalar) -> Result<LinearForm> {
    LinearForm::new(alpha, beta)
}

fn sign_normalized(l: LinearForm) -> LinearForm {
    if l.leading().signum() == Ordering::Less {
        LinearForm::new(-l.alpha(), -l.beta()).expect("nonzero")
    } else {
        l
    }
}

/// Writes an indefinite quadratic `q = p x^2 + 2s xy + u y^2` as
/// `psi1^2 - psi2^2`, with both forms avoiding every direction in `avoid`.
///
/// `q` is factored as `(pU) V` over `Q(sqrt(s^2 - pu))` and the pair is
/// `psi1 = (c pU + V/c)/2`, `psi2 = (c pU - V/c)/2` for the first
/// `c = 1, 2, ...` that avoids all forbidden directions.
pub fn split_difference_of_squares(q: &BinaryForm, avoid: &[LinearForm]) -> Result<(LinearForm, LinearForm)> {
    if q.degree() != 2 {
        return Err(Error::Domain("expected a quadratic form".into()));
    }
    let two = Scalar::from_int(2);
    let p = q.coeff(0).clone();
    let s = q.coeff(1) / &two;
    let u = q.coeff(2).clone();
    let disc = &(&s * &s) - &(&p * &u);
    if disc.signum() != Ordering::Greater {
        return Err(Error::NotIndefinite {
            discriminant: disc.to_string(),
        });
    }
    let (pu_form, v_form) = if p.is_zero() {
        // q = y (2s x + u y)
        (
            lin(Scalar::zero(), Scalar::one())?,
            lin(&two * &s, u.clone())?,
        )
    } else {
        let d = disc.as_rational().ok_or_else(|| Error::IncompatibleExtension {
            left: q.coeff(0).radicand().to_string(),
            right: "nested radical".into(),
        })?;
        let root = sqrt_exact(d)?;
        let r1 = &(&(-&s) + &root) / &p;
        let r2 = &(&(-&s) - &root) / &p;
        // q = p (x - r1 y)(x - r2 y)
        (lin(p.clone(), -&(&p * &r1))?, lin(Scalar::one(), -r2)?)
    };
    let half = Scalar::from_ratio(1, 2);
    for c in 1..=SPLIT_SWEEP {
        let c = Scalar::from_int(c as i64);
        let ci = c.try_inv()?;
        let a = (pu_form.alpha() * &c, pu_form.beta() * &c);
        let b = (v_form.alpha() * &ci, v_form.beta() * &ci);
        let psi1 = lin(&(&a.0 + &b.0) * &half, &(&a.1 + &b.1) * &half);
        let psi2 = lin(&(&a.0 - &b.0) * &half, &(&a.1 - &b.1) * &half);
        let (Ok(psi1), Ok(psi2)) = (psi1, psi2) else {
            continue;
        };
        if proportional(&psi1, &psi2) {
            continue;
        }
        if avoid
            .iter()
            .any(|l| proportional(l, &psi1) || proportional(l, &psi2))
        {
            continue;
        }
        return Ok((sign_normalized(psi1), sign_normalized(psi2)));
    }
    Err(Error::RetryExhausted {
        attempts: SPLIT_SWEEP as usize,
        detail: "no difference-of-squares split avoids the chosen directions".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::power_form;
    use crate::scalar::Rational;
    use num_bigint::BigInt;

    fn check_split(q: &BinaryForm, psi: &(LinearForm, LinearForm)) {
        let lhs = &power_form(&psi.0, 2) - &power_form(&psi.1, 2);
        assert_eq!(&lhs, q);
    }

    #[test]
    fn slope_sweep() {
        let s: Vec<i64> = (0..7).map(slope).collect();
        assert_eq!(s, vec![0, 1, -1, 2, -2, 3, -3]);
    }

    #[test]
    fn default_operators() {
        assert_eq!(
            choose_operators(5, None, &[], 0),
            vec![
                DiffOperator::from_ints(&[1, 0]),
                DiffOperator::from_ints(&[1, -1]),
                DiffOperator::from_ints(&[1, 1]),
            ]
        );
        assert_eq!(choose_operators(4, None, &[], 0).len(), 2);
        assert!(choose_operators(2, None, &[], 0).is_empty());
    }

    #[test]
    fn through_comes_first_and_sweep_skips_it() {
        let l = LinearForm::from_ints(1, 3);
        let ops = choose_operators(4, Some(&l), &[], 0);
        assert_eq!(ops[0], DiffOperator::from_ints(&[3, -1]));
        assert_eq!(ops.len(), 2);
        // through = y collides with slope 0; the sweep must skip dx
        let ops = choose_operators(4, Some(&LinearForm::y()), &[], 0);
        assert_eq!(ops, vec![DiffOperator::from_ints(&[1, 0]), DiffOperator::from_ints(&[1, -1])]);
    }

    #[test]
    fn seed_offsets_sweep() {
        let ops = choose_operators(3, None, &[], 2);
        assert_eq!(ops, vec![DiffOperator::from_ints(&[1, 1])]);
    }

    #[test]
    fn worked_example_quadratic() {
        let q = BinaryForm::from_ints(&[48, 48, -48]);
        // the pair used in the first worked example satisfies the contract
        let r3 = Scalar::new(Rational::from_integer(0.into()), Rational::from_integer(2.into()), BigInt::from(3)).unwrap();
        let r15 = Scalar::new(Rational::from_integer(0.into()), Rational::from_integer(2.into()), BigInt::from(15)).unwrap();
        let expected = (
            LinearForm::new(&r3 * &Scalar::from_int(2), r3.clone()).unwrap(),
            LinearForm::new(Scalar::zero(), r15).unwrap(),
        );
        let p1 = power_form(&expected.0, 2);
        let p2 = power_form(&expected.1, 2);
        assert_eq!(&p1 - &p2, q);

        let avoid = [LinearForm::from_ints(1, 1), LinearForm::from_ints(1, -1)];
        let ours = split_difference_of_squares(&q, &avoid).unwrap();
        check_split(&q, &ours);
        for l in &avoid {
            assert!(!proportional(l, &ours.0) && !proportional(l, &ours.1));
        }
    }

    #[test]
    fn already_split() {
        let q = BinaryForm::from_ints(&[1, 0, -1]);
        let (a, b) = split_difference_of_squares(&q, &[]).unwrap();
        assert_eq!(a, LinearForm::x());
        assert_eq!(b, LinearForm::y());
    }

    #[test]
    fn second_worked_example_quadratic() {
        let q = BinaryForm::from_ints(&[0, 1200, 0]);
        let expected = (LinearForm::from_ints(10, 30), LinearForm::from_ints(10, -30));
        check_split(&q, &expected);
        let avoid = [
            LinearForm::from_ints(1, 1),
            LinearForm::from_ints(1, -1),
            LinearForm::from_ints(1, 2),
        ];
        let ours = split_difference_of_squares(&q, &avoid).unwrap();
        check_split(&q, &ours);
    }

    #[test]
    fn semidefinite_is_rejected() {
        let q = BinaryForm::from_ints(&[1, 0, 1]);
        assert!(matches!(split_difference_of_squares(&q, &[]), Err(Error::NotIndefinite { .. })));
        let q = BinaryForm::from_ints(&[1, 2, 1]);
        assert!(matches!(split_difference_of_squares(&q, &[]), Err(Error::NotIndefinite { .. })));
    }

    #[test]
    fn irrational_split() {
        // x^2 + 2xy - y^2 has discriminant 2
        let q = BinaryForm::from_ints(&[1, 2, -1]);
        let psi = split_difference_of_squares(&q, &[]).unwrap();
        check_split(&q, &psi);
        // x^2 + 2xy - y^2 = (x + y)^2 - (sqrt2 y)^2
        assert_eq!(psi.0, LinearForm::from_ints(1, 1));
        assert_eq!(psi.1.beta().radicand(), &BigInt::from(2));
    }
}
