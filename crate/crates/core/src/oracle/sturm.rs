use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::BinaryForm;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
pub type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &IntPoly) -> usize {
    p.len().saturating_sub(1)
}

fn content(p: &IntPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the (positive) content, keeping the sign of every coefficient.
fn primitive(p: IntPoly) -> IntPoly {
    let g = content(&p);
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

fn derivative(p: &IntPoly) -> IntPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// `lc(b)^(deg a - deg b + 1) a = q b + r`; returns `r`.
fn pseudo_remainder(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut r = a.clone();
    let db = degree(b);
    let lb = b.last().expect("nonzero divisor").clone();
    let mut steps = 0usize;
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        r = trim(r);
        steps += 1;
    }
    // pad so the multiplier is always lc(b)^(deg a - deg b + 1)
    let full = a.len().saturating_sub(db);
    for _ in steps..full {
        for c in r.iter_mut() {
            *c *= &lb;
        }
    }
    r
}

fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut a, mut b) = (primitive(a.clone()), primitive(b.clone()));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_remainder(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Sign-correct Sturm sequence `p0 = p`, `p1 = p'`, `p_{k+1} ~ -rem(p_{k-1}, p_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    pub chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let p = trim(p.clone());
        let mut chain = Vec::new();
        if p.is_empty() {
            return SturmChain { chain };
        }
        let mut b = derivative(&p);
        let mut a = p;
        chain.push(a.clone());
        while !b.is_empty() {
            chain.push(b.clone());
            let k = a.len() - b.len() + 1;
            let flip = b.last().unwrap().is_negative() && k % 2 == 1;
            let r = pseudo_remainder(&a, &b);
            // lc(b)^k r has the sign of the true remainder times sign(lc(b))^k
            let next: IntPoly = primitive(r)
                .into_iter()
                .map(|c| if flip { c } else { -c })
                .collect();
            a = b;
            b = next;
        }
        SturmChain { chain }
    }

    fn sign_at_infinity(p: &IntPoly, positive: bool) -> Ordering {
        let lc = p.last().expect("chain elements are nonzero");
        let s = lc.sign();
        let s = if !positive && degree(p) % 2 == 1 { -s } else { s };
        match s {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }

    fn variations(&self, positive: bool) -> usize {
        let signs: Vec<Ordering> = self
            .chain
            .iter()
            .map(|p| Self::sign_at_infinity(p, positive))
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots of the affine polynomial.
    pub fn distinct_real_roots(&self) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        self.variations(false) - self.variations(true)
    }
}

/// Integer polynomial `f(x, 1)` and the multiplicity of `y` in `f`.
pub fn dehomogenize(f: &BinaryForm) -> Result<(IntPoly, usize)> {
    if f.is_zero() {
        return Err(Error::Domain("the zero form has no root count".into()));
    }
    let d = f.degree();
    let mut rats = Vec::with_capacity(d + 1);
    for c in f.coeffs() {
        let r = c
            .as_rational()
            .ok_or_else(|| Error::Domain("root counting needs rational coefficients".into()))?;
        rats.push(r.clone());
    }
    let lcm = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    // coefficient of x^(d-k) y^k lands at affine degree d - k
    let mut p: IntPoly = rats
        .iter()
        .rev()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    p = trim(p);
    let infinity = d - degree(&p);
    Ok((primitive(p), infinity))
}

/// Real projective roots of `f`: `(distinct, with multiplicity)`.
pub fn real_root_count(f: &BinaryForm) -> Result<(usize, usize)> {
    let (p, inf) = dehomogenize(f)?;
    let mut distinct = SturmChain::new(&p).distinct_real_roots();
    let mut total = distinct;
    // roots of multiplicity >= k are the roots of g_k = gcd(g_{k-1}, g_{k-1}')
    let mut g = p;
    loop {
        let dg = derivative(&g);
        if dg.is_empty() {
            break;
        }
        g = gcd(&g, &dg);
        if g.len() <= 1 {
            break;
        }
        total += SturmChain::new(&g).distinct_real_roots();
    }
    if inf > 0 {
        distinct += 1;
        total += inf;
    }
    Ok((distinct, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn pseudo_remainder_identity() {
        // 2 r = 2 (x^3 + 1) mod (2x + 1) carries lc^3 = 8
        let r = pseudo_remainder(&ip(&[1, 0, 0, 1]), &ip(&[1, 2]));
        assert_eq!(r, ip(&[7]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let g = gcd(&ip(&[-2, 1, 1]), &ip(&[3, -4, 1]));
        assert_eq!(g, ip(&[-1, 1]));
    }

    #[test]
    fn chain_counts_simple_polys() {
        assert_eq!(SturmChain::new(&ip(&[-1, 0, 1])).distinct_real_roots(), 2);
        assert_eq!(SturmChain::new(&ip(&[1, 0, 1])).distinct_real_roots(), 0);
        assert_eq!(SturmChain::new(&ip(&[0, -1, 0, 1])).distinct_real_roots(), 3);
        // negative leading coefficient
        assert_eq!(SturmChain::new(&ip(&[6, -1, -1])).distinct_real_roots(), 2);
        // constant
        assert_eq!(SturmChain::new(&ip(&[5])).distinct_real_roots(), 0);
    }

    #[test]
    fn harmonic_quartics() {
        let h40 = BinaryForm::from_ints(&[1, 0, -6, 0, 1]);
        assert_eq!(real_root_count(&h40).unwrap(), (4, 4));
        let h41 = BinaryForm::from_ints(&[0, 4, 0, -4, 0]);
        assert_eq!(real_root_count(&h41).unwrap(), (4, 4));
    }

    #[test]
    fn definite_and_repeated() {
        assert_eq!(real_root_count(&BinaryForm::from_ints(&[1, 0, 1])).unwrap(), (0, 0));
        // x y^4
        assert_eq!(real_root_count(&BinaryForm::from_ints(&[0, 1, 0, 0, 0, 0])).unwrap(), (2, 5));
        // (x - y)^3 (x^2 + y^2)
        let f = BinaryForm::from_ints(&[1, -3, 4, -4, 3, -1]);
        assert_eq!(real_root_count(&f).unwrap(), (1, 3));
        // y^3
        assert_eq!(real_root_count(&BinaryForm::from_ints(&[0, 0, 0, 1])).unwrap(), (1, 3));
    }

    #[test]
    fn rational_coefficients() {
        let f = BinaryForm::new(vec![
            crate::scalar::Scalar::from_ratio(1, 2),
            crate::scalar::Scalar::zero(),
            crate::scalar::Scalar::from_ratio(-9, 8),
        ]);
        assert_eq!(real_root_count(&f).unwrap(), (2, 2));
    }
}
