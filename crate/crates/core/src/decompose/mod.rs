//! Waring ranks and minimal decompositions of forms with a quadratic
//! annihilator `omega = a dx^2 + 2b dx dy + c dy^2`.
//!
//! The sign of `b^2 - ac` decides the rank:
//!
//! * definite (`< 0`): rank `d`. Pick `d - 2` distinct linear operators,
//!   contract them into `f` to get an indefinite quadratic, split it as a
//!   difference of two squares and solve for the coefficients.
//! * parabolic (`= 0`): `f = L0 * M^(d-1)`, rank `d` unless `L0 ~ M`.
//! * hyperbolic (`> 0`): `omega` splits into two real linear factors and
//!   `f` is a combination of the two matching `d`-th powers.

mod split;
mod verify;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::apolarity::{apolar_space, rank_lower_bound_certificate, LowerBoundRecord};
use crate::error::{Error, Result};
use crate::forms::{
    apply, operator_product, power_form, proportional, BinaryForm, DiffOperator, LinearForm,
};
use crate::linalg;
use crate::scalar::{sqrt_exact, Scalar};

pub use split::{choose_operators, slope, split_difference_of_squares, SPLIT_SWEEP};
pub use verify::{verify, VerificationReport};

/// Seeds tried by the definite-case engine before giving up.
pub const RETRY_BUDGET: u64 = 32;

/// Leading seeds scanned for a residual quadratic that splits over `Q`.
pub const RATIONAL_SEARCH: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub lambda: Scalar,
    pub form: LinearForm,
}

/// `sum lambda_i L_i^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub degree: usize,
    pub terms: Vec<Term>,
}

impl Decomposition {
    pub fn new(degree: usize, terms: Vec<Term>) -> Self {
        Decomposition { degree, terms }
    }

    pub fn from_parts(degree: usize, lambdas: Vec<Scalar>, forms: Vec<LinearForm>) -> Self {
        let terms = lambdas
            .into_iter()
            .zip(forms)
            .map(|(lambda, form)| Term { lambda, form })
            .collect();
        Decomposition { degree, terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn expand(&self) -> BinaryForm {
        self.terms.iter().fold(BinaryForm::zero(self.degree), |acc, t| {
            &acc + &power_form(&t.form, self.degree).scale(&t.lambda)
        })
    }

    /// Scales each form to leading coordinate 1, folding `s^d` into lambda.
    pub fn normalized(&self) -> Self {
        let d = self.degree as u32;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let (form, s) = t.form.canonical();
                Term {
                    lambda: &t.lambda * &s.pow(d),
                    form,
                }
            })
            .collect();
        Decomposition {
            degree: self.degree,
            terms,
        }
    }

    pub fn contains_direction(&self, l: &LinearForm) -> bool {
        self.terms.iter().any(|t| proportional(&t.form, l))
    }

    pub fn forms(&self) -> impl Iterator<Item = &LinearForm> {
        self.terms.iter().map(|t| &t.form)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Definite,
    #[serde(rename = "parabolic-rank-1")]
    ParabolicRank1,
    ParabolicRankD,
    #[serde(rename = "hyperbolic-rank-1")]
    HyperbolicRank1,
    #[serde(rename = "hyperbolic-rank-2")]
    HyperbolicRank2,
    NoQuadraticAnnihilator,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Definite => "definite",
            Classification::ParabolicRank1 => "parabolic-rank-1",
            Classification::ParabolicRankD => "parabolic-rank-d",
            Classification::HyperbolicRank1 => "hyperbolic-rank-1",
            Classification::HyperbolicRank2 => "hyperbolic-rank-2",
            Classification::NoQuadraticAnnihilator => "no-quadratic-annihilator",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub classification: Classification,
    /// `None` only for forms without a quadratic annihilator.
    pub rank: Option<usize>,
    pub omega: Option<DiffOperator>,
    /// Divisibility record proving `WR >= d` (definite and parabolic-rank-d).
    pub lower_bound: Option<LowerBoundRecord>,
    /// Explicit short decomposition (every class except definite).
    pub decomposition: Option<Decomposition>,
}

/// `sum lambda_i L_i^d = f` for the given pairwise non-proportional forms.
pub fn solve_coefficients(f: &BinaryForm, forms: &[LinearForm]) -> Result<Vec<Scalar>> {
    let d = f.degree();
    if forms.len() > d + 1 {
        return Err(Error::Domain(format!("{} forms exceed dim R_{d} = {}", forms.len(), d + 1)));
    }
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            if proportional(&forms[i], &forms[j]) {
                return Err(Error::ProportionalForms(i, j));
            }
        }
    }
    // solve against c_i L_i with integer coprime coordinates, then undo c_i^d
    let (scaled, scales): (Vec<LinearForm>, Vec<Scalar>) = forms.iter().map(LinearForm::primitive).unzip();
    let powers: Vec<BinaryForm> = scaled.iter().map(|l| power_form(l, d)).collect();
    let matrix: Vec<Vec<Scalar>> = (0..=d)
        .map(|k| powers.iter().map(|p| p.coeff(k).clone()).collect())
        .collect();
    let mu = linalg::solve_unique(&matrix, f.coeffs())?;
    Ok(mu
        .into_iter()
        .zip(scales)
        .map(|(m, c)| &m * &c.pow(d as u32))
        .collect())
}

/// A nonzero element of `f^perp` in degree 2, if any. Prefers the
/// Laplacian when the space is larger than one-dimensional and contains it.
pub fn quadratic_annihilator(f: &BinaryForm) -> Result<Option<DiffOperator>> {
    if f.is_zero() || f.degree() < 2 {
        return Err(Error::Domain("quadratic annihilator needs a nonzero form of degree >= 2".into()));
    }
    let space = apolar_space(f, 2);
    if space.dim() > 1 && apply(&DiffOperator::laplacian(), f).is_zero() {
        return Ok(Some(DiffOperator::laplacian()));
    }
    Ok(space.basis.into_iter().next())
}

fn check_omega(f: &BinaryForm, omega: &DiffOperator) -> Result<()> {
    if omega.degree() != 2 || omega.is_zero() {
        return Err(Error::Domain("omega must be a nonzero quadratic operator".into()));
    }
    let residual = apply(omega, f);
    if !residual.is_zero() {
        return Err(Error::NotAnnihilated { residual });
    }
    Ok(())
}

fn disc_sign(omega: &DiffOperator) -> Ordering {
    omega
        .quadratic_discriminant()
        .expect("omega is quadratic")
        .signum()
}

/// The square `l^2` of the linear factor of a parabolic `omega`.
fn parabolic_root(omega: &DiffOperator) -> DiffOperator {
    let (w0, w1) = (omega.coeff(0), omega.coeff(1));
    if w0.is_zero() {
        DiffOperator::from_ints(&[0, 1])
    } else {
        DiffOperator::new(vec![w0.clone(), w1 / &Scalar::from_int(2)])
    }
}

/// The two forms whose apolar operators divide a hyperbolic `omega`:
/// roots of `w0 a^2 + w1 a b + w2 b^2 = 0`.
fn hyperbolic_directions(omega: &DiffOperator) -> Result<(LinearForm, LinearForm)> {
    let (w0, w1, w2) = (omega.coeff(0), omega.coeff(1), omega.coeff(2));
    if w0.is_zero() {
        return Ok((LinearForm::x(), LinearForm::new(-w2, w1.clone())?));
    }
    let disc = &(w1 * w1) - &(&(w0 * w2) * &Scalar::from_int(4));
    let d = disc.as_rational().ok_or_else(|| Error::IncompatibleExtension {
        left: disc.radicand().to_string(),
        right: "nested radical".into(),
    })?;
    let root = sqrt_exact(d)?;
    let two_w0 = w0 * &Scalar::from_int(2);
    let a1 = &(&(-w1) + &root) / &two_w0;
    let a2 = &(&(-w1) - &root) / &two_w0;
    Ok((LinearForm::new(a1, Scalar::one())?, LinearForm::new(a2, Scalar::one())?))
}

fn rank_one(f: &BinaryForm, omega: Option<&DiffOperator>) -> Result<Option<RankCertificate>> {
    let d = f.degree();
    let l = if d == 1 {
        LinearForm::from_form(f)?
    } else {
        match apolar_space(f, 1).basis.first() {
            Some(op) => LinearForm::from_apolar_operator(op)?,
            None => return Ok(None),
        }
    };
    let lambda = solve_coefficients(f, std::slice::from_ref(&l))?;
    let dec = Decomposition::from_parts(d, lambda, vec![l.clone()]).normalized();
    let ell = l.apolar_operator();
    let omega = omega.cloned().unwrap_or_else(|| ell.mul(&ell));
    let classification = match disc_sign(&omega) {
        Ordering::Less => Classification::Definite,
        Ordering::Equal => Classification::ParabolicRank1,
        Ordering::Greater => Classification::HyperbolicRank1,
    };
    let lower_bound = if classification == Classification::Definite {
        Some(rank_lower_bound_certificate(f, &omega)?)
    } else {
        None
    };
    Ok(Some(RankCertificate {
        classification,
        rank: Some(1),
        omega: Some(omega),
        lower_bound,
        decomposition: Some(dec),
    }))
}

/// Candidate slope sets for the parabolic case: `k * {+-1, .., +-d/2}`
/// (with 0 added for odd `d`), for `k = 1, 2, ...`.
fn parabolic_slopes(d: usize, k: i64) -> Vec<i64> {
    let mut s = Vec::with_capacity(d);
    if d % 2 == 1 {
        s.push(0);
    }
    for i in 1..=(d / 2) as i64 {
        s.push(k * i);
        s.push(-k * i);
    }
    s
}

fn parabolic_decomposition(f: &BinaryForm, omega: &DiffOperator) -> Result<Decomposition> {
    let d = f.degree();
    let m = LinearForm::from_apolar_operator(&parabolic_root(omega))?.primitive().0;
    let l0 = f
        .div_exact(&power_form(&m, d - 1))
        .ok_or_else(|| Error::Domain("form is not a linear form times a (d-1)-th power".into()))?;
    let l0 = LinearForm::from_form(&l0)?.primitive().0;
    for k in 1..=RETRY_BUDGET as i64 {
        let forms: Vec<LinearForm> = parabolic_slopes(d, k)
            .into_iter()
            .map(|s| {
                let s = Scalar::from_int(s);
                LinearForm::new(l0.alpha() + &(&s * m.alpha()), l0.beta() + &(&s * m.beta()))
            })
            .collect::<Result<_>>()?;
        let Ok(lambdas) = solve_coefficients(f, &forms) else {
            continue;
        };
        if lambdas.iter().all(|l| !l.is_zero()) {
            return Ok(Decomposition::from_parts(d, lambdas, forms).normalized());
        }
    }
    Err(Error::RetryExhausted {
        attempts: RETRY_BUDGET as usize,
        detail: "no parabolic slope set gave nonzero coefficients".into(),
    })
}

fn hyperbolic_decomposition(f: &BinaryForm, omega: &DiffOperator) -> Result<Decomposition> {
    let d = f.degree();
    let (l1, l2) = hyperbolic_directions(omega)?;
    let lambdas = solve_coefficients(f, &[l1.clone(), l2.clone()])?;
    let terms = lambdas
        .into_iter()
        .zip([l1, l2])
        .filter(|(l, _)| !l.is_zero())
        .map(|(lambda, form)| Term { lambda, form })
        .collect();
    Ok(Decomposition::new(d, terms).normalized())
}

pub fn classify(f: &BinaryForm) -> Result<RankCertificate> {
    classify_with(f, None)
}

/// Classifies `f` by the discriminant of its quadratic annihilator, or of
/// `omega` when one is supplied (it must annihilate `f`).
pub fn classify_with(f: &BinaryForm, omega: Option<&DiffOperator>) -> Result<RankCertificate> {
    if f.is_zero() {
        return Err(Error::Domain("the zero form has no Waring rank".into()));
    }
    if f.degree() == 0 {
        return Err(Error::Domain("degree-0 forms are not classified".into()));
    }
    if let Some(o) = omega {
        check_omega(f, o)?;
    }
    if let Some(cert) = rank_one(f, omega)? {
        return Ok(cert);
    }
    let d = f.degree();
    let omega = match omega {
        Some(o) => o.clone(),
        None => match quadratic_annihilator(f)? {
            Some(o) => o,
            None => {
                return Ok(RankCertificate {
                    classification: Classification::NoQuadraticAnnihilator,
                    rank: None,
                    omega: None,
                    lower_bound: None,
                    decomposition: None,
                })
            }
        },
    };
    match disc_sign(&omega) {
        Ordering::Less => {
            let lower_bound = rank_lower_bound_certificate(f, &omega)?;
            Ok(RankCertificate {
                classification: Classification::Definite,
                rank: Some(d),
                omega: Some(omega),
                lower_bound: Some(lower_bound),
                decomposition: None,
            })
        }
        Ordering::Equal => {
            let lower_bound = rank_lower_bound_certificate(f, &omega)?;
            let dec = parabolic_decomposition(f, &omega)?;
            Ok(RankCertificate {
                classification: Classification::ParabolicRankD,
                rank: Some(dec.len()),
                omega: Some(omega),
                lower_bound: Some(lower_bound),
                decomposition: Some(dec),
            })
        }
        Ordering::Greater => {
            let dec = hyperbolic_decomposition(f, &omega)?;
            let classification = if dec.len() == 1 {
                Classification::HyperbolicRank1
            } else {
                Classification::HyperbolicRank2
            };
            Ok(RankCertificate {
                classification,
                rank: Some(dec.len()),
                omega: Some(omega),
                lower_bound: None,
                decomposition: Some(dec),
            })
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// A linear form that must appear in the decomposition.
    pub through: Option<LinearForm>,
    pub seed: u64,
    /// Quadratic annihilator to use instead of the computed one.
    pub omega: Option<DiffOperator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub decomposition: Decomposition,
    pub certificate: RankCertificate,
    /// A `through` form was honored for a definite `omega` that is not a
    /// multiple of the Laplacian.
    pub extrapolated: bool,
}

fn is_laplacian_multiple(omega: &DiffOperator) -> bool {
    omega.coeff(1).is_zero() && omega.coeff(0) == omega.coeff(2)
}

/// Degree 2 through a prescribed form: `f - lambda L^2` must have rank one,
/// which fixes `lambda = det F / (L^T adj(F) L)`.
fn definite_quadratic_through(f: &BinaryForm, l: &LinearForm) -> Result<Decomposition> {
    let two = Scalar::from_int(2);
    let (p, s, u) = (f.coeff(0), &(f.coeff(1) / &two), f.coeff(2));
    let (a, b) = (l.alpha(), l.beta());
    let det = &(p * u) - &(s * s);
    let pairing = &(&(&(u * a) * a) - &(&(&(s * a) * b) * &two)) + &(&(p * b) * b);
    if pairing.is_zero() {
        return Err(Error::UnsupportedRequest(format!(
            "{l} divides the quadratic form and cannot appear in a rank-2 decomposition"
        )));
    }
    let lambda = &det / &pairing;
    let rest = f - &power_form(l, 2).scale(&lambda);
    let (r0, r1) = (rest.coeff(0), rest.coeff(1) / &two);
    let m = if r0.is_zero() {
        LinearForm::y()
    } else {
        LinearForm::new(r0.clone(), r1)?
    };
    let forms = vec![l.clone(), m];
    let lambdas = solve_coefficients(f, &forms)?;
    Ok(Decomposition::from_parts(2, lambdas, forms).normalized())
}

fn definite_decomposition(f: &BinaryForm, through: Option<&LinearForm>, seed: u64) -> Result<Decomposition> {
    let d = f.degree();
    if d == 2 {
        if let Some(l) = through {
            return definite_quadratic_through(f, l);
        }
    }
    // an attempt whose residual quadratic splits over Q goes first
    let preferred = (0..RATIONAL_SEARCH).find(|&a| {
        let ops = choose_operators(d, through, &[], seed + a);
        let q = apply(&operator_product(&ops), f);
        let two = Scalar::from_int(2);
        let s = q.coeff(1) / &two;
        let disc = &(&s * &s) - &(q.coeff(0) * q.coeff(2));
        disc.signum() == Ordering::Greater
            && disc.as_rational().is_some_and(|r| sqrt_exact(r).is_ok_and(|v| v.is_rational()))
    });
    let mut last = String::new();
    for attempt in preferred.into_iter().chain(0..RETRY_BUDGET) {
        let ops = choose_operators(d, through, &[], seed + attempt);
        let chosen: Vec<LinearForm> = ops
            .iter()
            .map(LinearForm::from_apolar_operator)
            .collect::<Result<_>>()?;
        let q = apply(&operator_product(&ops), f);
        let Some(lead) = q.coeffs().iter().find(|c| !c.is_zero()) else {
            // cannot happen when WR(f) = d
            last = "operator product annihilated the form".into();
            continue;
        };
        let q = q.scale(&lead.try_inv()?);
        let (psi1, psi2) = match split_difference_of_squares(&q, &chosen) {
            Ok(pair) => pair,
            Err(e @ Error::RetryExhausted { .. }) => {
                last = e.to_string();
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut forms = chosen;
        forms.push(psi1);
        forms.push(psi2);
        match solve_coefficients(f, &forms) {
            Ok(lambdas) if lambdas.iter().all(|l| !l.is_zero()) => {
                return Ok(Decomposition::from_parts(d, lambdas, forms).normalized());
            }
            Ok(_) => last = "zero coefficient".into(),
            Err(e @ (Error::Inconsistent | Error::ProportionalForms(..))) => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryExhausted {
        attempts: RETRY_BUDGET as usize,
        detail: last,
    })
}

/// A verified-size minimal decomposition of `f` together with its rank
/// certificate.
pub fn decompose(f: &BinaryForm, opts: &DecomposeOptions) -> Result<Outcome> {
    let certificate = classify_with(f, opts.omega.as_ref())?;
    let mut extrapolated = false;
    let decomposition = match certificate.classification {
        Classification::NoQuadraticAnnihilator => return Err(Error::OutOfFamily),
        Classification::Definite if f.degree() >= 2 => {
            let omega = certificate.omega.as_ref().expect("definite certificate carries omega");
            extrapolated = opts.through.is_some() && !is_laplacian_multiple(omega);
            definite_decomposition(f, opts.through.as_ref(), opts.seed)?
        }
        _ => {
            let dec = certificate
                .decomposition
                .clone()
                .expect("non-definite certificates carry a decomposition");
            if let Some(l) = &opts.through {
                if !dec.contains_direction(l) {
                    return Err(Error::UnsupportedRequest(format!(
                        "a prescribed form is only supported for definite annihilators ({})",
                        certificate.classification
                    )));
                }
            }
            dec
        }
    };
    debug_assert_eq!(Some(decomposition.len()), certificate.rank);
    Ok(Outcome {
        decomposition,
        certificate,
        extrapolated,
    })
}
