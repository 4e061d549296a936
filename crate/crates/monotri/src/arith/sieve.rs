//! Prime generation: a plain sieve of Eratosthenes plus process-wide cached
//! tables shared by the factorizer and the Euler-product evaluators.

use std::sync::OnceLock;

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(if n > 16 { n / (n.ilog2() as usize) * 2 } else { 8 });
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    for (i, &c) in composite.iter().enumerate().skip(2) {
        if !c {
            primes.push(i as u64);
        }
    }
    primes
}

static TRIAL_PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
static PRODUCT_PRIMES: OnceLock<Vec<u64>> = OnceLock::new();

/// Shared table of primes up to 10^6 (the factorizer's trial-division range).
pub fn trial_primes() -> &'static [u64] {
    TRIAL_PRIMES.get_or_init(|| primes_up_to(1_000_000))
}

/// Shared table of primes up to 10^7 (the default Euler-product cutoff).
pub fn product_primes() -> &'static [u64] {
    PRODUCT_PRIMES.get_or_init(|| primes_up_to(10_000_000))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_pi() {
        assert_eq!(primes_up_to(1).len(), 0);
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(100).len(), 25);
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
    }
}
