//! Exact scalars: arbitrary-precision rationals and values `a + b*sqrt(D)`
//! in a single real quadratic extension of the rationals.
//!
//! A [`QuadExt`] is always stored normalized: the radicand is squarefree
//! (certified by trial division up to a configurable bound plus a perfect
//! square test on the cofactor), and a value with zero irrational part is
//! stored as a pure rational with radicand 0. Under that normalization
//! structural equality is exact equality.
//!
//! The arithmetic operators (`+`, `-`, `*`, `/`) panic when two operands
//! live in different extensions; the `try_*` methods report the same
//! condition as [`Error::IncompatibleExtension`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The scalar type used by forms and operators.
pub type Scalar = QuadExt;

/// Default trial-division bound for squarefree normalization.
pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SqrtConfig {
    /// Primes up to this bound are divided out of a radicand.
    pub trial_bound: u64,
}

impl Default for SqrtConfig {
    fn default() -> Self {
        SqrtConfig {
            trial_bound: DEFAULT_TRIAL_BOUND,
        }
    }
}

/// `rat + coef * sqrt(rad)` with `rad` squarefree (or flagged otherwise).
#[derive(Debug, Clone)]
pub struct QuadExt {
    rat: Rational,
    coef: Rational,
    rad: BigInt,
    certified: bool,
}

/// Squarefree split of a positive integer: `n = root^2 * free`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeSplit {
    pub root: BigUint,
    pub free: BigUint,
    /// False when the cofactor left after trial division is too large to
    /// rule out a square divisor above the bound.
    pub certified: bool,
}

pub fn squarefree_split(n: &BigUint, config: &SqrtConfig) -> SquarefreeSplit {
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    if rest.is_zero() {
        return SquarefreeSplit {
            root: BigUint::zero(),
            free: BigUint::one(),
            certified: true,
        };
    }
    let bound = config.trial_bound.max(2);
    let mut p: u64 = 2;
    let mut exhausted = false;
    while p <= bound {
        let pp = BigUint::from(p);
        if &pp * &pp > rest {
            exhausted = true;
            break;
        }
        let mut count = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        if count > 0 {
            root *= pp.pow(count / 2);
            if count % 2 == 1 {
                free *= &pp;
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    let mut certified = true;
    if !rest.is_one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            root *= s;
        } else {
            if !exhausted {
                let b = BigUint::from(bound);
                certified = rest < &b * &b * &b;
            }
            free *= rest;
        }
    }
    SquarefreeSplit {
        root,
        free,
        certified,
    }
}

impl QuadExt {
    pub fn zero() -> Self {
        QuadExt::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        QuadExt::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        QuadExt {
            rat: q,
            coef: Rational::zero(),
            rad: BigInt::zero(),
            certified: true,
        }
    }

    pub fn from_int(n: i64) -> Self {
        QuadExt::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        QuadExt::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Builds `rat + coef*sqrt(rad)`, pulling square factors out of `rad`.
    pub fn new(rat: Rational, coef: Rational, rad: BigInt) -> Result<Self> {
        QuadExt::new_with(rat, coef, rad, &SqrtConfig::default())
    }

    pub fn new_with(rat: Rational, coef: Rational, rad: BigInt, config: &SqrtConfig) -> Result<Self> {
        if rad.is_negative() {
            return Err(Error::NegativeRadicand(rad.to_string()));
        }
        let split = squarefree_split(rad.magnitude(), config);
        let coef = coef * Rational::from_integer(BigInt::from(split.root));
        Ok(QuadExt {
            rat,
            coef,
            rad: BigInt::from(split.free),
            certified: split.certified,
        }
        .normalized())
    }

    fn normalized(mut self) -> Self {
        if self.coef.is_zero() || self.rad.is_zero() {
            self.coef = Rational::zero();
            self.rad = BigInt::zero();
            self.certified = true;
        } else if self.rad.is_one() {
            self.rat = &self.rat + &self.coef;
            self.coef = Rational::zero();
            self.rad = BigInt::zero();
            self.certified = true;
        }
        self
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn coef(&self) -> &Rational {
        &self.coef
    }

    pub fn radicand(&self) -> &BigInt {
        &self.rad
    }

    /// Whether the radicand is known to be squarefree.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.coef.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            rat: self.rat.clone(),
            coef: -&self.coef,
            rad: self.rad.clone(),
            certified: self.certified,
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<(BigInt, bool)> {
        if self.rad.is_zero() {
            Ok((other.rad.clone(), other.certified))
        } else if other.rad.is_zero() || self.rad == other.rad {
            Ok((self.rad.clone(), self.certified && other.certified))
        } else {
            Err(Error::IncompatibleExtension {
                left: self.rad.to_string(),
                right: other.rad.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.rad.is_zero() && other.rad.is_zero() {
            return Ok(QuadExt::from_rational(&self.rat + &other.rat));
        }
        let (rad, certified) = self.common_radicand(other)?;
        Ok(QuadExt {
            rat: &self.rat + &other.rat,
            coef: &self.coef + &other.coef,
            rad,
            certified,
        }
        .normalized())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        if self.rad.is_zero() && other.rad.is_zero() {
            return Ok(QuadExt::from_rational(&self.rat - &other.rat));
        }
        let (rad, certified) = self.common_radicand(other)?;
        Ok(QuadExt {
            rat: &self.rat - &other.rat,
            coef: &self.coef - &other.coef,
            rad,
            certified,
        }
        .normalized())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.rad.is_zero() && other.rad.is_zero() {
            return Ok(QuadExt::from_rational(&self.rat * &other.rat));
        }
        let (rad, certified) = self.common_radicand(other)?;
        let d = Rational::from_integer(rad.clone());
        Ok(QuadExt {
            rat: &self.rat * &other.rat + &self.coef * &other.coef * d,
            coef: &self.rat * &other.coef + &self.coef * &other.rat,
            rad,
            certified,
        }
        .normalized())
    }

    /// `1/(a + b*sqrt(D)) = (a - b*sqrt(D)) / (a^2 - b^2 D)`.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = Rational::from_integer(self.rad.clone());
        let norm = &self.rat * &self.rat - &self.coef * &self.coef * d;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadExt {
            rat: &self.rat / &norm,
            coef: -&self.coef / &norm,
            rad: self.rad.clone(),
            certified: self.certified,
        }
        .normalized())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.try_inv()?)
    }

    /// Equality that refuses to decide across uncertified radicands.
    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        if !self.rad.is_zero()
            && !other.rad.is_zero()
            && self.rad != other.rad
            && !(self.certified && other.certified)
        {
            return Err(Error::UnnormalizedComparison);
        }
        Ok(self == other)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadExt::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> Ordering {
        let sa = self.rat.cmp(&Rational::zero());
        let sb = self.coef.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.rat * &self.rat;
        let b2d = &self.coef * &self.coef * Rational::from_integer(self.rad.clone());
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }
}

/// Exact square root of a nonnegative rational.
pub fn sqrt_exact(q: &Rational) -> Result<QuadExt> {
    sqrt_exact_with(q, &SqrtConfig::default())
}

pub fn sqrt_exact_with(q: &Rational, config: &SqrtConfig) -> Result<QuadExt> {
    if q.is_negative() {
        return Err(Error::NegativeRadicand(q.to_string()));
    }
    if q.is_zero() {
        return Ok(QuadExt::zero());
    }
    // sqrt(n/m) = sqrt(n*m)/m
    let n = q.numer().magnitude() * q.denom().magnitude();
    let split = squarefree_split(&n, config);
    let coef = Rational::new(BigInt::from(split.root), q.denom().clone());
    Ok(QuadExt {
        rat: Rational::zero(),
        coef,
        rad: BigInt::from(split.free),
        certified: split.certified,
    }
    .normalized())
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat && self.coef == other.coef && self.rad == other.rad
    }
}

impl Eq for QuadExt {}

impl Hash for QuadExt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rat.hash(state);
        self.coef.hash(state);
        self.rad.hash(state);
    }
}

impl Default for QuadExt {
    fn default() -> Self {
        QuadExt::zero()
    }
}

impl From<Rational> for QuadExt {
    fn from(q: Rational) -> Self {
        QuadExt::from_rational(q)
    }
}

impl From<BigInt> for QuadExt {
    fn from(n: BigInt) -> Self {
        QuadExt::from_rational(Rational::from_integer(n))
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(n)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $try:ident) => {
        impl<'a, 'b> $Trait<&'b QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'b QuadExt) -> QuadExt {
                match self.$try(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $Trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $Trait<&'b QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &'b QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl<'a> $Trait<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl<'a> Neg for &'a QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rat: -&self.rat,
            coef: -&self.coef,
            rad: self.rad.clone(),
            certified: self.certified,
        }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::zero()
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::one()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if self.rat.is_zero() {
            return write!(f, "{}*sqrt({})", self.coef, self.rad);
        }
        if self.coef.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.rat, -&self.coef, self.rad)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rat, self.coef, self.rad)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RadRepr {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    rat: String,
    coef: String,
    rad: RadRepr,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("bad rational {s:?}: {e}"))
}

impl Serialize for QuadExt {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rad = match self.rad.to_u64() {
            Some(v) => RadRepr::Small(v),
            None => RadRepr::Big(self.rad.to_string()),
        };
        ScalarRepr {
            rat: self.rat.to_string(),
            coef: self.coef.to_string(),
            rad,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ScalarRepr::deserialize(deserializer)?;
        let rat = parse_rational(&repr.rat).map_err(D::Error::custom)?;
        let coef = parse_rational(&repr.coef).map_err(D::Error::custom)?;
        let rad = match repr.rad {
            RadRepr::Small(v) => BigInt::from(v),
            RadRepr::Big(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|e| D::Error::custom(format!("bad radicand {s:?}: {e}")))?,
        };
        if rad.sign() == Sign::Minus {
            return Err(D::Error::custom("negative radicand"));
        }
        QuadExt::new(rat, coef, rad).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_of_zero() {
        assert!(sqrt_exact(&q(0, 1)).unwrap().is_zero());
    }

    #[test]
    fn sqrt_of_twelve_is_two_root_three() {
        let r = sqrt_exact(&q(12, 1)).unwrap();
        assert_eq!(r.rat(), &q(0, 1));
        assert_eq!(r.coef(), &q(2, 1));
        assert_eq!(r.radicand(), &BigInt::from(3));
        assert_eq!(&r * &r, QuadExt::from_int(12));
    }

    #[test]
    fn sqrt_of_perfect_square_is_rational() {
        let r = sqrt_exact(&q(9, 4)).unwrap();
        assert!(r.is_rational());
        assert_eq!(r, QuadExt::from_ratio(3, 2));
    }

    #[test]
    fn sqrt_of_negative_fails() {
        assert!(matches!(sqrt_exact(&q(-1, 2)), Err(Error::NegativeRadicand(_))));
    }

    #[test]
    fn sqrt_of_fraction_uses_numerator_times_denominator() {
        // sqrt(3/8) = sqrt(24)/8 = sqrt(6)/4
        let r = sqrt_exact(&q(3, 8)).unwrap();
        assert_eq!(r.radicand(), &BigInt::from(6));
        assert_eq!(r.coef(), &q(1, 4));
    }

    #[test]
    fn conjugate_product() {
        let a = QuadExt::new(q(1, 1), q(1, 1), BigInt::from(2)).unwrap();
        assert_eq!(&a * &a.conjugate(), QuadExt::from_int(-1));
    }

    #[test]
    fn invert_two_root_three() {
        let a = sqrt_exact(&q(12, 1)).unwrap();
        let inv = a.try_inv().unwrap();
        assert_eq!(inv.coef(), &q(1, 6));
        assert_eq!(inv.radicand(), &BigInt::from(3));
        assert!(inv.rat().is_zero());
        assert_eq!(&inv * &a, QuadExt::one());
    }

    #[test]
    fn rational_embedding() {
        let a = QuadExt::from_ratio(3, 2);
        assert_eq!(a + QuadExt::from_ratio(1, 2), QuadExt::from_int(2));
    }

    #[test]
    fn invert_zero_fails() {
        assert!(matches!(QuadExt::zero().try_inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mixed_radicands_fail() {
        let a = sqrt_exact(&q(2, 1)).unwrap();
        let b = sqrt_exact(&q(3, 1)).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::IncompatibleExtension { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::IncompatibleExtension { .. })));
    }

    #[test]
    fn cancelling_irrational_part_normalizes() {
        let a = sqrt_exact(&q(5, 1)).unwrap();
        let z = &a - &a;
        assert!(z.is_zero());
        assert!(z.radicand().is_zero());
    }

    #[test]
    fn new_pulls_squares_out_of_radicand() {
        let a = QuadExt::new(q(1, 1), q(1, 1), BigInt::from(50)).unwrap();
        assert_eq!(a.coef(), &q(5, 1));
        assert_eq!(a.radicand(), &BigInt::from(2));
    }

    #[test]
    fn large_prime_square_is_detected() {
        // 1000003^2 * 7 with a bound far below 1000003
        let p = BigUint::from(1_000_003u64);
        let n = &p * &p * BigUint::from(7u32);
        let s = squarefree_split(&n, &SqrtConfig { trial_bound: 100 });
        assert_eq!(s.root, p);
        assert_eq!(s.free, BigUint::from(7u32));
        assert!(s.certified);
    }

    #[test]
    fn uncertified_cofactor_is_flagged() {
        // product of three primes above the bound: cannot rule out a square
        let n = BigUint::from(101u32) * BigUint::from(103u32) * BigUint::from(107u32);
        let s = squarefree_split(&n, &SqrtConfig { trial_bound: 10 });
        assert!(!s.certified);
        let a = sqrt_exact_with(&Rational::from_integer(BigInt::from(n)), &SqrtConfig { trial_bound: 10 }).unwrap();
        let b = sqrt_exact(&q(2, 1)).unwrap();
        assert!(matches!(a.try_eq(&b), Err(Error::UnnormalizedComparison)));
        assert!(a.try_eq(&a).unwrap());
    }

    #[test]
    fn signum_is_exact() {
        let r2 = sqrt_exact(&q(2, 1)).unwrap();
        // 3/2 - sqrt(2) > 0, 7/5 - sqrt(2) < 0
        assert_eq!((QuadExt::from_ratio(3, 2) - &r2).signum(), Ordering::Greater);
        assert_eq!((QuadExt::from_ratio(7, 5) - &r2).signum(), Ordering::Less);
        assert_eq!(QuadExt::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn display_formats() {
        assert_eq!(QuadExt::from_ratio(3, 2).to_string(), "3/2");
        assert_eq!(QuadExt::from_int(4).to_string(), "4");
        let a = QuadExt::new(q(1, 2), q(-1, 3), BigInt::from(5)).unwrap();
        assert_eq!(a.to_string(), "1/2 - 1/3*sqrt(5)");
        assert_eq!(sqrt_exact(&q(12, 1)).unwrap().to_string(), "2*sqrt(3)");
    }

    #[test]
    fn json_shape() {
        let a = QuadExt::new(q(1, 2), q(3, 4), BigInt::from(7)).unwrap();
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v, serde_json::json!({"rat": "1/2", "coef": "3/4", "rad": 7}));
        let back: QuadExt = serde_json::from_value(v).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let a = QuadExt::new(q(1, 1), q(2, 3), BigInt::from(3)).unwrap();
        let mut acc = QuadExt::one();
        for k in 0..7 {
            assert_eq!(a.pow(k), acc);
            acc = &acc * &a;
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = Rational> {
            (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
        }

        fn in_ext(rad: i64) -> impl Strategy<Value = QuadExt> {
            (rational(), rational()).prop_map(move |(a, b)| QuadExt::new(a, b, BigInt::from(rad)).unwrap())
        }

        proptest! {
            #[test]
            fn sqrt_squares_back(n in 0i64..5000, d in 1i64..500) {
                let r = q(n, d);
                let s = sqrt_exact(&r).unwrap();
                prop_assert_eq!(&s * &s, QuadExt::from_rational(r));
            }

            #[test]
            fn field_laws(a in in_ext(6), b in in_ext(6), c in in_ext(6)) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                if !a.is_zero() {
                    prop_assert_eq!(&a * &a.try_inv().unwrap(), QuadExt::one());
                }
            }

            #[test]
            fn representation_is_canonical(a in rational(), b in rational(), k in 1i64..6) {
                // b*sqrt(6 k^2) and (b k)*sqrt(6) normalize identically
                let x = QuadExt::new(a.clone(), b.clone(), BigInt::from(6 * k * k)).unwrap();
                let y = QuadExt::new(a, b * Rational::from_integer(BigInt::from(k)), BigInt::from(6)).unwrap();
                prop_assert_eq!(x, y);
            }
        }
    }
}
