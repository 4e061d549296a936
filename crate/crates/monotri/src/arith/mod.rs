//! Arbitrary-precision integer utilities: factorization, primality,
//! squarefree tests and kernels, valuations, totient, modular arithmetic.
//!
//! Everything here is pure and reentrant; rho's randomness is derived
//! deterministically from the input so results are reproducible regardless
//! of scheduling.

pub mod factor;
pub mod mont;
pub mod primality;
pub mod rho;
pub mod sieve;

pub use factor::{
    factorize, is_squarefree, is_squarefree_rough, perfect_power, prime_divisors,
    squarefree_kernel, totient, valuation, Effort, Factorization, Ternary,
};
pub use primality::{is_prime, is_prime_u128, Primality};
pub use sieve::{primes_up_to, product_primes, trial_primes};

/// Modular inverse of `a` mod `m` (coprime inputs), by extended Euclid.
pub fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        for m in [3u64, 5, 49, 121, 9_999_999_967] {
            for a in [1u64, 2, 5, 11, 1234] {
                if num_integer::gcd(a, m) != 1 {
                    continue;
                }
                let inv = mod_inverse_u64(a, m).unwrap();
                assert_eq!((a as u128 * inv as u128) % m as u128, 1);
            }
        }
        assert_eq!(mod_inverse_u64(6, 9), None);
    }
}
