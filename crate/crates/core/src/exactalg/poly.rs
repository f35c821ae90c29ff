use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The m-th cyclotomic polynomial, coefficients from the constant term up.
///
/// Computed as `x^m - 1` divided exactly by `Φ_d` for every proper divisor
/// `d` of `m`; `m = 1` is the base case `x - 1`.
///
/// # Panics
///
/// Panics if `m == 0`.
pub fn cyclo_poly(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = div_exact_monic(&num, &cyclo_cached(d));
        }
    }
    num
}

/// Shared, memoised copy of `cyclo_poly(m)`.
pub(crate) fn cyclo_cached(m: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&m) {
        return p.clone();
    }
    let p = Arc::new(cyclo_poly(m));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(m)
        .or_insert(p)
        .clone()
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (dd..num.len()).rev() {
        let q = rem[k].clone();
        if q.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k - dd + j] -= &q * dj;
        }
        quot[k - dd] = q;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}
