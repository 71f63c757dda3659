//! Annihilating ideals of binary forms.
//!
//! The degree-`r` piece of `f^perp` is the kernel of the catalecticant map
//! `g -> g o f` from `D_r` to `R_(d-r)`. For a harmonic form the ideal is
//! generated by the Laplacian and `a1 dx^d - a0 dx^(d-1) dy`; a form
//! annihilated by a non-hyperbolic quadratic `omega` has every annihilator
//! of degree below `d` divisible by `omega`, which is the rank lower bound
//! recorded by [`rank_lower_bound_certificate`].

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{apply, BinaryForm, DiffOperator};
use crate::harmonic::harmonic_coords;
use crate::linalg;
use crate::scalar::Scalar;

/// Generators `(omega, nabla)` of the annihilating ideal of a harmonic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorPair {
    pub omega: DiffOperator,
    pub nabla: DiffOperator,
}

/// A basis of `f^perp` in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApolarSpace {
    pub degree: usize,
    pub basis: Vec<DiffOperator>,
}

impl ApolarSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn annihilator_generators(f: &BinaryForm) -> Result<AnnihilatorPair> {
    let c = harmonic_coords(f)?;
    let d = f.degree();
    let mut nabla = DiffOperator::zero(d);
    let mut coeffs = nabla.clone().into_coeffs();
    coeffs[0] = c.a1.clone();
    coeffs[1] = -&c.a0;
    nabla = DiffOperator::new(coeffs);
    let residual = apply(&nabla, f);
    assert!(residual.is_zero(), "nabla must annihilate the harmonic form");
    Ok(AnnihilatorPair {
        omega: DiffOperator::laplacian(),
        nabla,
    })
}

/// The `(d - r + 1) x (r + 1)` matrix of `g -> g o f` on `D_r`.
pub fn catalecticant(f: &BinaryForm, r: usize) -> Vec<Vec<Scalar>> {
    let d = f.degree();
    assert!(r <= d, "catalecticant needs r <= deg f");
    let cols: Vec<BinaryForm> = (0..=r).map(|i| apply(&DiffOperator::dx_dy(r - i, i), f)).collect();
    (0..=d - r)
        .map(|row| cols.iter().map(|c| c.coeff(row).clone()).collect())
        .collect()
}

pub fn apolar_space(f: &BinaryForm, r: usize) -> ApolarSpace {
    let basis = if r > f.degree() {
        (0..=r).map(|i| DiffOperator::monomial(r, i, Scalar::one())).collect()
    } else {
        linalg::kernel(&catalecticant(f, r), r + 1)
            .into_iter()
            .map(DiffOperator::new)
            .collect()
    };
    ApolarSpace { degree: r, basis }
}

/// `g = omega * quotient + rem0 dx^r + rem1 dx^(r-1) dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotient: DiffOperator,
    pub rem0: Scalar,
    pub rem1: Scalar,
}

impl Division {
    pub fn is_exact(&self) -> bool {
        self.rem0.is_zero() && self.rem1.is_zero()
    }
}

/// Long division in `dy`, with coefficients polynomial in `dx`.
pub fn divide_by_quadratic(g: &DiffOperator, omega: &DiffOperator) -> Result<Division> {
    if omega.degree() != 2 {
        return Err(Error::Domain("divisor must be quadratic".into()));
    }
    let r = g.degree();
    if r < 2 {
        return Err(Error::Domain("dividend must have degree >= 2".into()));
    }
    let lead = omega.coeff(2);
    if lead.is_zero() {
        return Err(Error::UnsupportedPivot);
    }
    let lead_inv = lead.try_inv()?;
    let mut b = g.coeffs().to_vec();
    let mut q = vec![Scalar::zero(); r - 1];
    for i in (2..=r).rev() {
        let t = &b[i] * &lead_inv;
        if t.is_zero() {
            continue;
        }
        b[i] = Scalar::zero();
        b[i - 1] = &b[i - 1] - &(&t * omega.coeff(1));
        b[i - 2] = &b[i - 2] - &(&t * omega.coeff(0));
        q[i - 2] = t;
    }
    Ok(Division {
        quotient: DiffOperator::new(q),
        rem0: b[0].clone(),
        rem1: b[1].clone(),
    })
}

/// Exact quotient `g / omega` if it exists, swapping variables when
/// `omega` has no `dy^2` term.
pub fn exact_quotient(g: &DiffOperator, omega: &DiffOperator) -> Result<Option<DiffOperator>> {
    if !omega.coeff(2).is_zero() {
        let div = divide_by_quadratic(g, omega)?;
        return Ok(div.is_exact().then_some(div.quotient));
    }
    if omega.coeff(0).is_zero() {
        return Err(Error::UnsupportedPivot);
    }
    let div = divide_by_quadratic(&g.swap_variables(), &omega.swap_variables())?;
    Ok(div.is_exact().then(|| div.quotient.swap_variables()))
}

/// Ideal membership against `<omega, nabla>` for a harmonic form of degree `d`.
pub fn in_annihilator_ideal(g: &DiffOperator, pair: &AnnihilatorPair, d: usize) -> Result<bool> {
    let r = g.degree();
    if r > d {
        return Ok(true);
    }
    if r < 2 {
        return Ok(g.is_zero());
    }
    let div = divide_by_quadratic(g, &pair.omega)?;
    if r < d {
        return Ok(div.is_exact());
    }
    // remainder must be a multiple of nabla = n0 dx^d + n1 dx^(d-1) dy
    let (n0, n1) = (pair.nabla.coeff(0), pair.nabla.coeff(1));
    Ok((&(&div.rem0 * n1) - &(&div.rem1 * n0)).is_zero())
}

/// The annihilators found in one degree and their quotients by `omega`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEvidence {
    pub degree: usize,
    pub dimension: usize,
    pub quotients: Vec<Vec<Scalar>>,
}

/// Every annihilator of degree `1..d` checked for divisibility by `omega`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundRecord {
    pub omega: Vec<Scalar>,
    pub form_degree: usize,
    pub degrees: Vec<DegreeEvidence>,
    pub certified_lower_bound: usize,
}

/// Certifies `WR(f) >= deg f` for `f` annihilated by a definite (or
/// parabolic) `omega`: no annihilator of degree `< d` is squarefree.
pub fn rank_lower_bound_certificate(f: &BinaryForm, omega: &DiffOperator) -> Result<LowerBoundRecord> {
    if f.is_zero() {
        return Err(Error::Domain("the zero form".into()));
    }
    let disc = omega
        .quadratic_discriminant()
        .ok_or_else(|| Error::Domain("omega must be quadratic".into()))?;
    if omega.is_zero() || disc.signum() == Ordering::Greater {
        return Err(Error::Domain("omega must be nonzero and not hyperbolic".into()));
    }
    let residual = apply(omega, f);
    if !residual.is_zero() {
        return Err(Error::NotAnnihilated { residual });
    }
    let d = f.degree();
    let mut degrees = Vec::new();
    for r in 1..d {
        let space = apolar_space(f, r);
        if r == 1 {
            if space.dim() != 0 {
                return Err(Error::CertificateFailure {
                    degree: 1,
                    detail: format!("linear annihilator {}", space.basis[0]),
                });
            }
            degrees.push(DegreeEvidence {
                degree: 1,
                dimension: 0,
                quotients: Vec::new(),
            });
            continue;
        }
        let mut quotients = Vec::with_capacity(space.dim());
        for g in &space.basis {
            match exact_quotient(g, omega)? {
                Some(q) => quotients.push(q.into_coeffs()),
                None => {
                    return Err(Error::CertificateFailure {
                        degree: r,
                        detail: format!("{g} is not divisible by {omega}"),
                    })
                }
            }
        }
        degrees.push(DegreeEvidence {
            degree: r,
            dimension: space.dim(),
            quotients,
        });
    }
    Ok(LowerBoundRecord {
        omega: omega.coeffs().to_vec(),
        form_degree: d,
        degrees,
        certified_lower_bound: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{h_basis, HarmonicCoords};
    use proptest::prelude::*;

    fn harmonic(a0: i64, a1: i64, d: usize) -> BinaryForm {
        HarmonicCoords::new(a0.into(), a1.into()).to_form(d).unwrap()
    }

    #[test]
    fn generators_of_worked_example() {
        let f = harmonic(2, 1, 4);
        let pair = annihilator_generators(&f).unwrap();
        assert_eq!(pair.omega, DiffOperator::laplacian());
        assert_eq!(pair.nabla, DiffOperator::from_ints(&[1, -2, 0, 0, 0]));
        assert!(apply(&pair.nabla, &f).is_zero());
    }

    #[test]
    fn generators_of_basis_forms() {
        for d in 2..=8 {
            let (h0, h1) = h_basis(d).unwrap();
            let n0 = annihilator_generators(&h0).unwrap().nabla;
            assert_eq!(n0, -DiffOperator::dx_dy(d - 1, 1));
            let n1 = annihilator_generators(&h1).unwrap().nabla;
            assert_eq!(n1, DiffOperator::dx_dy(d, 0));
        }
    }

    #[test]
    fn generators_reject_non_harmonic() {
        let f = BinaryForm::from_ints(&[1, 0, 1]);
        assert!(matches!(annihilator_generators(&f), Err(Error::NotHarmonic { .. })));
    }

    #[test]
    fn quadratic_apolar_space_of_harmonic_form() {
        let f = harmonic(3, -2, 6);
        let s = apolar_space(&f, 2);
        assert_eq!(s.basis, vec![DiffOperator::laplacian()]);
    }

    #[test]
    fn cubic_apolar_space_is_laplacian_multiples() {
        let f = harmonic(2, 1, 4);
        let s = apolar_space(&f, 3);
        assert_eq!(s.dim(), 2);
        for g in &s.basis {
            assert!(divide_by_quadratic(g, &DiffOperator::laplacian()).unwrap().is_exact());
        }
    }

    #[test]
    fn definite_quadratic_has_no_linear_annihilator() {
        let f = BinaryForm::from_ints(&[1, 0, 1]);
        assert_eq!(apolar_space(&f, 1).dim(), 0);
    }

    #[test]
    fn high_degree_space_is_everything() {
        let f = harmonic(1, 1, 3);
        assert_eq!(apolar_space(&f, 5).dim(), 6);
    }

    #[test]
    fn division_examples() {
        let lap = DiffOperator::laplacian();
        let g = lap.mul(&DiffOperator::from_ints(&[1, 0]));
        let div = divide_by_quadratic(&g, &lap).unwrap();
        assert_eq!(div.quotient, DiffOperator::from_ints(&[1, 0]));
        assert!(div.is_exact());

        let g = DiffOperator::from_ints(&[1, -2, 0, 0, 0]);
        let div = divide_by_quadratic(&g, &lap).unwrap();
        assert_eq!(div.rem0, Scalar::from_int(1));
        assert_eq!(div.rem1, Scalar::from_int(-2));
        assert!(div.quotient.is_zero());

        let g = DiffOperator::dx_dy(2, 0);
        let div = divide_by_quadratic(&g, &lap).unwrap();
        assert_eq!(div.quotient, DiffOperator::from_ints(&[0]));
        assert_eq!((div.rem0, div.rem1), (Scalar::one(), Scalar::zero()));
    }

    #[test]
    fn division_needs_dy2_pivot() {
        let g = DiffOperator::from_ints(&[1, 2, 3]);
        assert!(matches!(
            divide_by_quadratic(&g, &DiffOperator::dx_dy(1, 1)),
            Err(Error::UnsupportedPivot)
        ));
        // swapping handles dx^2
        let q = exact_quotient(&DiffOperator::from_ints(&[1, 1, 0, 0]), &DiffOperator::dx_dy(2, 0))
            .unwrap()
            .unwrap();
        assert_eq!(q, DiffOperator::from_ints(&[1, 1]));
    }

    #[test]
    fn certificates_for_worked_examples() {
        let lap = DiffOperator::laplacian();
        let (h40, _) = h_basis(4).unwrap();
        let rec = rank_lower_bound_certificate(&h40, &lap).unwrap();
        assert_eq!(rec.certified_lower_bound, 4);
        assert_eq!(rec.degrees.iter().find(|e| e.degree == 3).unwrap().dimension, 2);

        let rec = rank_lower_bound_certificate(&harmonic(2, 1, 4), &lap).unwrap();
        assert_eq!(rec.degrees.iter().map(|e| e.degree).collect::<Vec<_>>(), vec![1, 2, 3]);

        let rec = rank_lower_bound_certificate(&harmonic(1, 2, 5), &lap).unwrap();
        assert_eq!(rec.certified_lower_bound, 5);
        assert_eq!(
            rec.degrees.iter().map(|e| e.dimension).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn certificate_rejects_hyperbolic_and_non_annihilating() {
        let f = harmonic(1, 0, 4);
        assert!(rank_lower_bound_certificate(&f, &DiffOperator::from_ints(&[1, 0, -1])).is_err());
        let g = BinaryForm::from_ints(&[1, 0, 0, 0]);
        assert!(matches!(
            rank_lower_bound_certificate(&g, &DiffOperator::laplacian()),
            Err(Error::NotAnnihilated { .. })
        ));
    }

    #[test]
    fn apolar_space_at_degree_d_contains_nabla() {
        let f = harmonic(-3, 5, 7);
        let pair = annihilator_generators(&f).unwrap();
        let space = apolar_space(&f, 7);
        let mut rows: Vec<Vec<Scalar>> = space.basis.iter().map(|g| g.coeffs().to_vec()).collect();
        let r = linalg::rank(&rows);
        rows.push(pair.nabla.coeffs().to_vec());
        assert_eq!(linalg::rank(&rows), r);
    }

    proptest! {
        #[test]
        fn division_identity(g in proptest::collection::vec(-9i64..10, 3..9),
                             o in (-9i64..10, -9i64..10, 1i64..10)) {
            let g = DiffOperator::from_ints(&g);
            let omega = DiffOperator::from_ints(&[o.0, o.1, o.2]);
            let div = divide_by_quadratic(&g, &omega).unwrap();
            let r = g.degree();
            let mut rem = vec![Scalar::zero(); r + 1];
            rem[0] = div.rem0.clone();
            rem[1] = div.rem1.clone();
            let rebuilt = &omega.mul(&div.quotient) + &DiffOperator::new(rem);
            prop_assert_eq!(rebuilt, g);
        }

        #[test]
        fn membership_matches_annihilation(a0 in -5i64..6, a1 in -5i64..6, d in 2usize..9,
                                           g in proptest::collection::vec(-3i64..4, 1..11)) {
            prop_assume!(a0 != 0 || a1 != 0);
            let f = harmonic(a0, a1, d);
            let pair = annihilator_generators(&f).unwrap();
            let g = DiffOperator::from_ints(&g);
            let killed = apply(&g, &f).is_zero();
            prop_assert_eq!(in_annihilator_ideal(&g, &pair, d).unwrap(), killed);
            // members built from the generators
            if g.degree() + 2 <= 12 {
                let member = pair.omega.mul(&g);
                prop_assert!(apply(&member, &f).is_zero());
                prop_assert!(in_annihilator_ideal(&member, &pair, d).unwrap());
            }
        }
    }
}
