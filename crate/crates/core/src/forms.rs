//! Binary forms, constant-coefficient differential operators, linear forms
//! and the apolarity action between them.
//!
//! Both [`BinaryForm`] and [`DiffOperator`] store a dense coefficient vector
//! of length `degree + 1`; entry `k` is the coefficient of `x^(d-k) y^k`
//! (respectively `dx^(r-k) dy^k`). The degree is carried by the vector
//! length, so the zero form of each degree is a distinct value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, falling};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

fn dense_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn render_dense(f: &mut fmt::Formatter<'_>, coeffs: &[Scalar], vars: (&str, &str)) -> fmt::Result {
    let d = coeffs.len() - 1;
    let monomial = |k: usize| -> String {
        let mut s = String::new();
        for (var, e) in [(vars.0, d - k), (vars.1, k)] {
            match e {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{var}^{e}")),
            }
        }
        s
    };
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let m = monomial(k);
        match c.as_rational() {
            Some(q) => {
                let neg = q.is_negative();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                let a = q.abs();
                if m.is_empty() {
                    write!(f, "{a}")?;
                } else if a.is_integer() {
                    if a.numer() == &1.into() {
                        write!(f, "{m}")?;
                    } else {
                        write!(f, "{a}{m}")?;
                    }
                } else {
                    write!(f, "{a}*{m}")?;
                }
            }
            None => {
                if !first {
                    write!(f, " + ")?;
                }
                if m.is_empty() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{m}")?;
                }
            }
        }
        first = false;
    }
    if first {
        if d == 0 {
            write!(f, "0")?;
        } else {
            write!(f, "0*{}", monomial(0))?;
        }
    }
    Ok(())
}

macro_rules! dense_homogeneous {
    ($T:ident, $vars:expr) => {
        impl $T {
            /// Panics if `coeffs` is empty.
            pub fn new(coeffs: Vec<Scalar>) -> Self {
                assert!(!coeffs.is_empty(), "a homogeneous polynomial needs degree+1 coefficients");
                $T { coeffs }
            }

            pub fn from_ints(coeffs: &[i64]) -> Self {
                $T::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
            }

            pub fn zero(degree: usize) -> Self {
                $T {
                    coeffs: vec![Scalar::zero(); degree + 1],
                }
            }

            /// `c` times the `k`-th basis monomial of the given degree.
            pub fn monomial(degree: usize, k: usize, c: Scalar) -> Self {
                let mut out = $T::zero(degree);
                out.coeffs[k] = c;
                out
            }

            pub fn degree(&self) -> usize {
                self.coeffs.len() - 1
            }

            pub fn coeffs(&self) -> &[Scalar] {
                &self.coeffs
            }

            pub fn coeff(&self, k: usize) -> &Scalar {
                &self.coeffs[k]
            }

            pub fn into_coeffs(self) -> Vec<Scalar> {
                self.coeffs
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(Scalar::is_zero)
            }

            pub fn is_rational(&self) -> bool {
                self.coeffs.iter().all(Scalar::is_rational)
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                $T {
                    coeffs: self.coeffs.iter().map(|a| a * c).collect(),
                }
            }

            /// Polynomial product; degrees add.
            pub fn mul(&self, other: &Self) -> Self {
                $T {
                    coeffs: dense_mul(&self.coeffs, &other.coeffs),
                }
            }

            pub fn pow(&self, e: usize) -> Self {
                let mut acc = $T::new(vec![Scalar::one()]);
                for _ in 0..e {
                    acc = acc.mul(self);
                }
                acc
            }

            /// Swap the roles of the two variables.
            pub fn swap_variables(&self) -> Self {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                $T { coeffs }
            }

            /// Exact quotient `self / divisor`, or `None` when the division
            /// leaves a remainder.
            pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
                let shift = divisor.coeffs.iter().position(|c| !c.is_zero())?;
                if divisor.degree() > self.degree() {
                    return None;
                }
                if self.coeffs[..shift].iter().any(|c| !c.is_zero()) {
                    return None;
                }
                let b = &divisor.coeffs[shift..];
                let a = &self.coeffs[shift..];
                let qlen = self.degree() - divisor.degree() + 1;
                let lead_inv = b[0].try_inv().ok()?;
                let mut q: Vec<Scalar> = Vec::with_capacity(qlen);
                for i in 0..qlen {
                    let mut acc = a[i].clone();
                    for j in 1..b.len().min(i + 1) {
                        acc = &acc - &(&b[j] * &q[i - j]);
                    }
                    q.push(&acc * &lead_inv);
                }
                let quotient = $T { coeffs: q };
                (&quotient.mul(divisor) == self).then_some(quotient)
            }
        }

        impl<'a, 'b> Add<&'b $T> for &'a $T {
            type Output = $T;
            fn add(self, rhs: &'b $T) -> $T {
                assert_eq!(self.degree(), rhs.degree(), "degree mismatch in addition");
                $T {
                    coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
                }
            }
        }

        impl Add for $T {
            type Output = $T;
            fn add(self, rhs: $T) -> $T {
                &self + &rhs
            }
        }

        impl<'a, 'b> Sub<&'b $T> for &'a $T {
            type Output = $T;
            fn sub(self, rhs: &'b $T) -> $T {
                assert_eq!(self.degree(), rhs.degree(), "degree mismatch in subtraction");
                $T {
                    coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
                }
            }
        }

        impl Sub for $T {
            type Output = $T;
            fn sub(self, rhs: $T) -> $T {
                &self - &rhs
            }
        }

        impl<'a> Neg for &'a $T {
            type Output = $T;
            fn neg(self) -> $T {
                $T {
                    coeffs: self.coeffs.iter().map(|a| -a).collect(),
                }
            }
        }

        impl Neg for $T {
            type Output = $T;
            fn neg(self) -> $T {
                -&self
            }
        }

        impl<'a, 'b> Mul<&'b Scalar> for &'a $T {
            type Output = $T;
            fn mul(self, rhs: &'b Scalar) -> $T {
                self.scale(rhs)
            }
        }

        impl fmt::Display for $T {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                render_dense(f, &self.coeffs, $vars)
            }
        }
    };
}

/// A homogeneous polynomial in `x, y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Scalar>,
}

/// A homogeneous constant-coefficient differential operator in `dx, dy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffOperator {
    coeffs: Vec<Scalar>,
}

dense_homogeneous!(BinaryForm, ("x", "y"));
dense_homogeneous!(DiffOperator, ("dx", "dy"));

impl DiffOperator {
    pub fn identity() -> Self {
        DiffOperator::new(vec![Scalar::one()])
    }

    /// `dx^2 + dy^2`.
    pub fn laplacian() -> Self {
        DiffOperator::from_ints(&[1, 0, 1])
    }

    /// `dx^i dy^j`.
    pub fn dx_dy(i: usize, j: usize) -> Self {
        DiffOperator::monomial(i + j, j, Scalar::one())
    }

    /// Discriminant `b^2 - ac` of `a dx^2 + 2b dx dy + c dy^2`.
    pub fn quadratic_discriminant(&self) -> Option<Scalar> {
        if self.degree() != 2 {
            return None;
        }
        let [a, b2, c] = [&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]];
        let b = b2 / &Scalar::from_int(2);
        Some(&(&b * &b) - &(a * c))
    }
}

/// `alpha x + beta y`, never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLinearForm")]
pub struct LinearForm {
    alpha: Scalar,
    beta: Scalar,
}

#[derive(Deserialize)]
struct RawLinearForm {
    alpha: Scalar,
    beta: Scalar,
}

impl TryFrom<RawLinearForm> for LinearForm {
    type Error = Error;

    fn try_from(raw: RawLinearForm) -> Result<Self> {
        LinearForm::new(raw.alpha, raw.beta)
    }
}

impl LinearForm {
    pub fn new(alpha: Scalar, beta: Scalar) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::Domain("the zero linear form".into()));
        }
        Ok(LinearForm { alpha, beta })
    }

    pub fn from_ints(alpha: i64, beta: i64) -> Self {
        LinearForm::new(Scalar::from_int(alpha), Scalar::from_int(beta)).expect("nonzero linear form")
    }

    pub fn x() -> Self {
        LinearForm::from_ints(1, 0)
    }

    pub fn y() -> Self {
        LinearForm::from_ints(0, 1)
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    /// Reads a degree-1 form.
    pub fn from_form(f: &BinaryForm) -> Result<Self> {
        if f.degree() != 1 {
            return Err(Error::Domain(format!("expected a linear form, got degree {}", f.degree())));
        }
        LinearForm::new(f.coeff(0).clone(), f.coeff(1).clone())
    }

    pub fn to_form(&self) -> BinaryForm {
        BinaryForm::new(vec![self.alpha.clone(), self.beta.clone()])
    }

    /// The form whose apolar operator is `op = b0 dx + b1 dy`, i.e.
    /// `-b1 x + b0 y`.
    pub fn from_apolar_operator(op: &DiffOperator) -> Result<Self> {
        if op.degree() != 1 {
            return Err(Error::Domain("apolar operators are linear".into()));
        }
        LinearForm::new(-op.coeff(1), op.coeff(0).clone())
    }

    /// Leading coordinate (first nonzero of alpha, beta).
    pub fn leading(&self) -> &Scalar {
        if self.alpha.is_zero() {
            &self.beta
        } else {
            &self.alpha
        }
    }

    /// Representative with leading coordinate 1, and the scale `s` with
    /// `self = s * canonical`.
    pub fn canonical(&self) -> (LinearForm, Scalar) {
        let s = self.leading().clone();
        let inv = s.try_inv().expect("leading coordinate is nonzero");
        (
            LinearForm {
                alpha: &self.alpha * &inv,
                beta: &self.beta * &inv,
            },
            s,
        )
    }

    /// For rational forms, the coprime integer representative `c * self`
    /// with positive leading coordinate, and `c`. Irrational forms are
    /// returned unchanged with `c = 1`.
    pub fn primitive(&self) -> (LinearForm, Scalar) {
        let (Some(a), Some(b)) = (self.alpha.as_rational(), self.beta.as_rational()) else {
            return (self.clone(), Scalar::one());
        };
        let den = a.denom().lcm(b.denom());
        let (na, nb) = (a.numer() * (&den / a.denom()), b.numer() * (&den / b.denom()));
        let mut g = na.gcd(&nb);
        if self.leading().signum() == std::cmp::Ordering::Less {
            g = -g;
        }
        let c = Scalar::from(Rational::new(den, g.clone()));
        let form = LinearForm {
            alpha: Scalar::from(na / &g),
            beta: Scalar::from(nb / &g),
        };
        (form, c)
    }

    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        proportional(self, other)
    }

    pub fn apolar_operator(&self) -> DiffOperator {
        apolar_operator(self)
    }

    pub fn power(&self, d: usize) -> BinaryForm {
        power_form(self, d)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_form().fmt(f)
    }
}

/// The apolarity action `g o f`:
/// `dx^i dy^j o x^k y^l = k!/(k-i)! * l!/(l-j)! * x^(k-i) y^(l-j)`.
pub fn apply(g: &DiffOperator, f: &BinaryForm) -> BinaryForm {
    let d = f.degree();
    let r = g.degree();
    if r > d {
        return BinaryForm::zero(0);
    }
    let out_deg = d - r;
    let mut out = Vec::with_capacity(out_deg + 1);
    for m in 0..=out_deg {
        let mut acc = Scalar::zero();
        for (i, b) in g.coeffs().iter().enumerate() {
            let c = f.coeff(m + i);
            if b.is_zero() || c.is_zero() {
                continue;
            }
            let w = falling(d - m - i, r - i) * falling(m + i, i);
            acc = &acc + &(&(b * c) * &Scalar::from(w));
        }
        out.push(acc);
    }
    BinaryForm::new(out)
}

/// `(alpha x + beta y)^d`, coefficient `k` equal to `C(d,k) alpha^(d-k) beta^k`.
pub fn power_form(l: &LinearForm, d: usize) -> BinaryForm {
    let mut apow = vec![Scalar::one(); d + 1];
    let mut bpow = vec![Scalar::one(); d + 1];
    for k in 1..=d {
        apow[k] = &apow[k - 1] * &l.alpha;
        bpow[k] = &bpow[k - 1] * &l.beta;
    }
    BinaryForm::new(
        (0..=d)
            .map(|k| &(&apow[d - k] * &bpow[k]) * &Scalar::from(binomial(d, k)))
            .collect(),
    )
}

/// `beta dx - alpha dy`, which kills every power of `alpha x + beta y`.
pub fn apolar_operator(l: &LinearForm) -> DiffOperator {
    DiffOperator::new(vec![l.beta.clone(), -&l.alpha])
}

pub fn operator_product<'a, I>(ops: I) -> DiffOperator
where
    I: IntoIterator<Item = &'a DiffOperator>,
{
    ops.into_iter()
        .fold(DiffOperator::identity(), |acc, op| acc.mul(op))
}

/// `beta1 alpha2 - alpha1 beta2 == 0`.
pub fn proportional(l1: &LinearForm, l2: &LinearForm) -> bool {
    (&(&l1.beta * &l2.alpha) - &(&l1.alpha * &l2.beta)).is_zero()
}

/// A 2x2 scalar matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[Scalar; 2]; 2],
}

impl Mat2 {
    pub fn new(m00: Scalar, m01: Scalar, m10: Scalar, m11: Scalar) -> Self {
        Mat2 {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn from_ints(m00: i64, m01: i64, m10: i64, m11: i64) -> Self {
        Mat2::new(m00.into(), m01.into(), m10.into(), m11.into())
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> Scalar {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(
            self.m[0][0].clone(),
            self.m[1][0].clone(),
            self.m[0][1].clone(),
            self.m[1][1].clone(),
        )
    }
}

fn substitute(coeffs: &[Scalar], m: &Mat2) -> Vec<Scalar> {
    let d = coeffs.len() - 1;
    let first = [m.m[0][0].clone(), m.m[0][1].clone()];
    let second = [m.m[1][0].clone(), m.m[1][1].clone()];
    // powers of the two substituted linear forms
    let mut ps: Vec<Vec<Scalar>> = vec![vec![Scalar::one()]];
    let mut qs: Vec<Vec<Scalar>> = vec![vec![Scalar::one()]];
    for k in 1..=d {
        ps.push(dense_mul(&ps[k - 1], &first));
        qs.push(dense_mul(&qs[k - 1], &second));
    }
    let mut out = vec![Scalar::zero(); d + 1];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = dense_mul(&ps[d - k], &qs[k]);
        for (o, t) in out.iter_mut().zip(term) {
            *o = &*o + &(c * &t);
        }
    }
    out
}

/// `f(M (x, y))`: substitutes `x <- m00 x + m01 y`, `y <- m10 x + m11 y`.
pub fn change_of_variables(f: &BinaryForm, m: &Mat2) -> Result<BinaryForm> {
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(BinaryForm::new(substitute(f.coeffs(), m)))
}

/// Operator `g'` with `apply(g, f o M) = apply(g', f) o M`; the symbol's
/// variables are substituted through the transpose of `M`.
pub fn operator_pullback(g: &DiffOperator, m: &Mat2) -> Result<DiffOperator> {
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(DiffOperator::new(substitute(g.coeffs(), &m.transpose())))
}
