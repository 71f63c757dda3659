//! Factorials and binomials over arbitrary-precision integers.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

fn table() -> &'static RwLock<Vec<BigInt>> {
    FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!`, served from a lazily grown shared cache.
pub fn factorial(n: usize) -> BigInt {
    {
        let t = table().read().expect("factorial cache poisoned");
        if let Some(v) = t.get(n) {
            return v.clone();
        }
    }
    let mut t = table().write().expect("factorial cache poisoned");
    while t.len() <= n {
        let k = t.len();
        let next = &t[k - 1] * BigInt::from(k);
        t.push(next);
    }
    t[n].clone()
}

/// `n!/(n-k)!`, zero when `k > n`.
pub fn falling(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / factorial(n - k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
