//! Harmonic binary forms: the explicit basis `h_{d,0}`, `h_{d,1}`, the
//! coordinates of a harmonic form in that basis, and kernels of an
//! arbitrary quadratic operator.

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::forms::{apply, BinaryForm, DiffOperator};
use crate::linalg;
use crate::scalar::Scalar;

/// Coordinates `(a0, a1)` of `a0 h_{d,0} + a1 h_{d,1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicCoords {
    pub a0: Scalar,
    pub a1: Scalar,
}

impl HarmonicCoords {
    pub fn new(a0: Scalar, a1: Scalar) -> Self {
        HarmonicCoords { a0, a1 }
    }

    pub fn to_form(&self, d: usize) -> Result<BinaryForm> {
        let (h0, h1) = h_basis(d)?;
        Ok(&h0.scale(&self.a0) + &h1.scale(&self.a1))
    }
}

/// `h_{d,0} = sum_j (-1)^j C(d,2j) x^(d-2j) y^(2j)` and
/// `h_{d,1} = sum_j (-1)^j C(d,2j+1) x^(d-2j-1) y^(2j+1)`.
pub fn h_basis(d: usize) -> Result<(BinaryForm, BinaryForm)> {
    if d == 0 {
        return Err(Error::Domain("harmonic basis needs degree >= 1".into()));
    }
    let mut h0 = vec![Scalar::zero(); d + 1];
    let mut h1 = vec![Scalar::zero(); d + 1];
    for k in 0..=d {
        // k = 2j or 2j + 1; the sign is (-1)^j
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        let c = Scalar::from(binomial(d, k) * sign);
        if k % 2 == 0 {
            h0[k] = c;
        } else {
            h1[k] = c;
        }
    }
    Ok((BinaryForm::new(h0), BinaryForm::new(h1)))
}

pub fn is_harmonic(f: &BinaryForm) -> bool {
    apply(&DiffOperator::laplacian(), f).is_zero()
}

/// Reads `(a0, a1)` off the `x^d` and `x^(d-1) y` coefficients.
pub fn harmonic_coords(f: &BinaryForm) -> Result<HarmonicCoords> {
    if f.is_zero() {
        return Err(Error::Domain("the zero form has no harmonic coordinates".into()));
    }
    let residual = apply(&DiffOperator::laplacian(), f);
    if !residual.is_zero() {
        return Err(Error::NotHarmonic { residual });
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::Domain("harmonic coordinates need degree >= 1".into()));
    }
    let a0 = f.coeff(0).clone();
    let a1 = f.coeff(1) / &Scalar::from_int(d as i64);
    Ok(HarmonicCoords { a0, a1 })
}

/// Coefficients `a_j` of `f = sum_j C(d,j) a_j x^(d-j) y^j`.
pub fn binomial_coords(f: &BinaryForm) -> Vec<Scalar> {
    let d = f.degree();
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c / &Scalar::from(binomial(d, j)))
        .collect()
}

/// Matrix of `f -> omega o f` from degree-`d` forms to degree-`(d - r)`
/// forms, one column per monomial.
pub(crate) fn action_matrix(omega: &DiffOperator, d: usize) -> Vec<Vec<Scalar>> {
    let r = omega.degree();
    let rows = d + 1 - r;
    let cols: Vec<BinaryForm> = (0..=d)
        .map(|k| apply(omega, &BinaryForm::monomial(d, k, Scalar::one())))
        .collect();
    (0..rows)
        .map(|i| cols.iter().map(|c| c.coeff(i).clone()).collect())
        .collect()
}

/// Basis of the degree-`d` forms killed by a nonzero quadratic `omega`.
pub fn omega_kernel_basis(omega: &DiffOperator, d: usize) -> Result<[BinaryForm; 2]> {
    if omega.degree() != 2 || omega.is_zero() {
        return Err(Error::Domain("expected a nonzero quadratic operator".into()));
    }
    if d < 2 {
        return Err(Error::Domain("kernel basis needs degree >= 2".into()));
    }
    let ker = linalg::kernel(&action_matrix(omega, d), d + 1);
    assert_eq!(
        ker.len(),
        2,
        "a nonzero quadratic operator has a two-dimensional kernel in every degree"
    );
    let mut it = ker.into_iter().map(BinaryForm::new);
    Ok([it.next().unwrap(), it.next().unwrap()])
}
