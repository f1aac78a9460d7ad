//! Exact integer helpers: primality, p-adic valuations and factorization.
//!
//! Factorization is plain trial division. Primality below 3.3 * 10^24 uses
//! Miller-Rabin with the first thirteen prime bases, which is deterministic
//! in that range; above it we fall back to trial division.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::prime::Prime;

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mr_limit() -> BigUint {
    // 3317044064679887385961981
    BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap()
}

/// Primality for arbitrary-size naturals.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    if n < &mr_limit() {
        let one = BigUint::one();
        let n_minus_1 = n - &one;
        let s = n_minus_1.trailing_zeros().unwrap_or(0);
        let d = &n_minus_1 >> s;
        'witness: for &a in &MR_BASES {
            let mut x = BigUint::from(a).modpow(&d, n);
            if x == one || x == n_minus_1 {
                continue;
            }
            for _ in 1..s {
                x = (&x * &x) % n;
                if x == n_minus_1 {
                    continue 'witness;
                }
            }
            return false;
        }
        return true;
    }
    let mut d = BigUint::from(43u32);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2u32;
    }
    true
}

/// Largest `k` with `p^k | n`.
pub fn vp(p: Prime, n: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let p = BigUint::from(p.get());
    let mut k = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(k);
        }
        rest = q;
        k += 1;
    }
}

/// Prime factorization of `n >= 1` as an ascending map prime -> multiplicity.
pub fn factorize(n: &BigUint) -> Result<BTreeMap<BigUint, u64>> {
    if n.is_zero() {
        return Err(Error::FactorizeZero);
    }
    let mut out = BTreeMap::new();
    if let Some(small) = n.to_u64() {
        for (p, k) in factorize_u64(small) {
            out.insert(BigUint::from(p), k);
        }
        return Ok(out);
    }
    let mut rest = n.clone();
    let mut d = BigUint::from(2u32);
    let mut check_prime = true;
    while !rest.is_one() {
        if &d * &d > rest || (check_prime && is_prime(&rest)) {
            *out.entry(rest).or_insert(0) += 1;
            break;
        }
        check_prime = false;
        let mut k = 0;
        loop {
            let (q, r) = rest.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            out.insert(d.clone(), k);
            check_prime = true;
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    Ok(out)
}

/// Trial division over `u64`; `1` gives the empty factorization.
pub fn factorize_u64(mut n: u64) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    if n <= 1 {
        return out;
    }
    let mut d = 2u64;
    let mut check_prime = true;
    while n > 1 {
        if d.saturating_mul(d) > n || (check_prime && is_prime_u64(n)) {
            *out.entry(n).or_insert(0) += 1;
            break;
        }
        check_prime = false;
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.insert(d, k);
            check_prime = true;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    out
}

/// Factorization keyed by [`Prime`]; fails if a prime factor exceeds `u64`.
pub fn prime_factors(n: &BigUint) -> Result<BTreeMap<Prime, u64>> {
    factorize(n)?
        .into_iter()
        .map(|(p, k)| {
            let small = p
                .to_u64()
                .ok_or_else(|| Error::PrimeOutOfRange(p.to_string()))?;
            Ok((Prime::new_unchecked(small), k))
        })
        .collect()
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// `lcm` with `0` absorbing, i.e. the characteristic of a product ring.
pub fn char_lcm(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() || b.is_zero() {
        BigUint::zero()
    } else {
        a.lcm(b)
    }
}

pub fn pow_big(p: Prime, k: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(p.get()), k as usize)
}
