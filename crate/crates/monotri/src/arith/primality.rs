//! Miller–Rabin primality testing.
//!
//! Deterministic below the Sorenson–Webster bound 3317044064679887385961981
//! (first 13 prime witnesses); above it, the fixed witnesses are augmented
//! with witnesses derived deterministically from the input and the result
//! is flagged as probable.

use num_bigint::BigUint;

use num_traits::{One, ToPrimitive, Zero};

use super::mont::{Mont128, Mont64};

/// Outcome of a primality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Proven prime (deterministic witness set for this size).
    Prime,
    /// Passed Miller–Rabin but is beyond the deterministic range.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        matches!(self, Primality::Prime | Primality::ProbablePrime)
    }
}

const SMALL_PRIMES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const WITNESSES_13: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Largest bound for which the first 13 prime witnesses are deterministic
/// (Sorenson–Webster).
fn mr13_bound() -> u128 {
    3_317_044_064_679_887_385_961_981u128
}

fn sprp_u64(n: u64, base: u64) -> bool {
    // n odd, n > 2, base reduced mod n (skip if 0)
    let m = Mont64::new(n);
    let b = base % n;
    if b == 0 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = m.pow(m.to_mont(b), d);
    let one = m.one;
    let neg_one = n - one;
    if x == one || x == neg_one {
        return true;
    }
    for _ in 1..s {
        x = m.mul(x, x);
        if x == neg_one {
            return true;
        }
    }
    false
}

fn sprp_u128(n: u128, base: u64) -> bool {
    let m = Mont128::new(n);
    let b = base as u128 % n;
    if b == 0 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = m.pow(m.to_mont(b), d);
    let one = m.one;
    let neg_one = n - one;
    if x == one || x == neg_one {
        return true;
    }
    for _ in 1..s {
        x = m.mul(x, x);
        if x == neg_one {
            return true;
        }
    }
    false
}

fn sprp_big(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let b = base % n;
    if b.is_zero() {
        return true;
    }
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = b.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // Deterministic for all u64 with the 12 witnesses up to 37.
    WITNESSES_13[..12].iter().all(|&b| sprp_u64(n, b))
}

pub fn is_prime_u128(n: u128) -> Primality {
    if let Ok(n64) = n.try_into() {
        return if is_prime_u64(n64) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p as u128) {
            return Primality::Composite;
        }
    }
    if !WITNESSES_13.iter().all(|&b| sprp_u128(n, b)) {
        return Primality::Composite;
    }
    if n < mr13_bound() {
        Primality::Prime
    } else {
        // Extra deterministic-from-input witnesses.
        let mut state = (n as u64) ^ ((n >> 64) as u64) ^ 0xa076_1d64_78bd_642f;
        for _ in 0..16 {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            let w = (z ^ (z >> 31)) | 2;
            if !sprp_u128(n, w) {
                return Primality::Composite;
            }
        }
        Primality::ProbablePrime
    }
}

/// Primality of an arbitrary-precision integer.
pub fn is_prime(n: &BigUint) -> Primality {
    if let Some(n128) = n.to_u128() {
        return is_prime_u128(n128);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    for &b in &WITNESSES_13 {
        if !sprp_big(n, &BigUint::from(b)) {
            return Primality::Composite;
        }
    }
    let mut state = n.iter_u64_digits().fold(0u64, |a, d| a ^ d) ^ 0xa076_1d64_78bd_642f;
    for _ in 0..16 {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        let w = (z ^ (z >> 31)) | 2;
        if !sprp_big(n, &BigUint::from(w)) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}
