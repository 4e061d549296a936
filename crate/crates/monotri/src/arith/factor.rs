//! Integer factorization and squarefree decisions.
//!
//! The stack is trial division by primes up to 10^6, Miller–Rabin, perfect
//! power extraction, then Brent rho — enough to complete every input up to
//! 128 bits at the default budget. Larger inputs degrade gracefully to an
//! incomplete factorization with a composite cofactor, never a wrong factor.
//! Inputs that fit in 128 bits run entirely on machine words.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::primality::{is_prime, is_prime_u128, Primality};
use super::rho::{rho_big, rho_u128};
use super::sieve::trial_primes;

/// Budget knobs for `factorize`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Effort {
    /// Trial-divide by primes up to this bound.
    pub trial_limit: u64,
    /// Total rho iterations per number below 2^128.
    pub rho_budget: u64,
    /// Total rho iterations per number at or above 2^128.
    pub big_rho_budget: u64,
}

impl Default for Effort {
    fn default() -> Self {
        // rho splits a balanced 128-bit semiprime in ~2^32 iterations;
        // 2^36 leaves generous headroom.
        Effort { trial_limit: 1_000_000, rho_budget: 1 << 36, big_rho_budget: 1 << 20 }
    }
}

impl Effort {
    /// Cheap preset for bulk sweeps where the caller handles `Unknown`.
    pub fn quick() -> Self {
        Effort { trial_limit: 100_000, rho_budget: 1 << 26, big_rho_budget: 1 << 14 }
    }
}

/// A multiset of prime factors with an explicit completeness flag.
///
/// `product(prime^exp) * cofactor == |input|` always holds; `complete`
/// implies `cofactor == 1`. When a listed prime lies beyond the
/// deterministic Miller–Rabin range, `probable_prime` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
    pub cofactor: BigUint,
    pub complete: bool,
    pub probable_prime: bool,
}

impl Factorization {
    /// Recompose `product(prime^exp) * cofactor`.
    pub fn recompose(&self) -> BigUint {
        let mut acc = self.cofactor.clone();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }

    /// Distinct primes, ascending.
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_squarefree_known_part(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Integer k-th root of a u128, by float seed plus Newton correction.
fn iroot_u128(v: u128, k: u32) -> u128 {
    if v == 0 {
        return 0;
    }
    if k == 1 {
        return v;
    }
    let mut r = (v as f64).powf(1.0 / k as f64) as u128;
    r = r.saturating_add(2);
    loop {
        match r.checked_pow(k) {
            Some(p) if p <= v => break,
            _ => r -= 1,
        }
    }
    r
}

/// If `v = b^k` with `k >= 2`, return `(b, k)` with `k` maximal.
pub fn perfect_power_u128(v: u128) -> Option<(u128, u32)> {
    if v < 4 {
        return None;
    }
    let mut base = v;
    let mut k_total = 1u32;
    loop {
        let max_k = 128 - base.leading_zeros();
        let mut split = None;
        for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
            71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127]
        {
            if p > max_k {
                break;
            }
            let r = iroot_u128(base, p);
            if r > 1 && r.checked_pow(p) == Some(base) {
                split = Some((r, p));
                break;
            }
        }
        match split {
            Some((r, p)) => {
                base = r;
                k_total *= p;
            }
            None => break,
        }
    }
    if k_total >= 2 {
        Some((base, k_total))
    } else {
        None
    }
}

/// If `n = b^k` for some `k >= 2`, return `(b, k)` with `k` maximal.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if let Some(v) = n.to_u128() {
        return perfect_power_u128(v).map(|(b, k)| (BigUint::from(b), k));
    }
    let max_k = n.bits() as u32;
    let mut base = n.clone();
    let mut k_total = 1u32;
    let mut changed = true;
    while changed {
        changed = false;
        let mut p = 2u32;
        while p <= max_k / k_total.max(1) {
            let r = base.nth_root(p);
            if r > BigUint::one() && r.pow(p) == base {
                base = r;
                k_total *= p;
                changed = true;
                break;
            }
            p += if p == 2 { 1 } else { 2 };
        }
    }
    if k_total >= 2 {
        Some((base, k_total))
    } else {
        None
    }
}

#[derive(Default)]
struct WorkU128 {
    found: Vec<(u128, u32)>,
    cofactors: Vec<u128>,
    probable: bool,
}

fn split_u128(v: u128, mult: u32, effort: &Effort, work: &mut WorkU128) {
    if v == 1 {
        return;
    }
    match is_prime_u128(v) {
        Primality::Prime => {
            work.found.push((v, mult));
            return;
        }
        Primality::ProbablePrime => {
            work.probable = true;
            work.found.push((v, mult));
            return;
        }
        Primality::Composite => {}
    }
    if let Some((base, k)) = perfect_power_u128(v) {
        split_u128(base, mult * k, effort, work);
        return;
    }
    match rho_u128(v, effort.rho_budget) {
        Some(d) => {
            split_u128(d, mult, effort, work);
            split_u128(v / d, mult, effort, work);
        }
        None => {
            for _ in 0..mult {
                work.cofactors.push(v);
            }
        }
    }
}

fn factorize_u128(v: u128, effort: &Effort) -> WorkU128 {
    let mut work = WorkU128::default();
    let mut rem = v;
    let mut misses = 0u32;
    for &p in trial_primes() {
        if p > effort.trial_limit || rem == 1 {
            break;
        }
        let p128 = p as u128;
        if p128 * p128 > rem {
            break;
        }
        if rem.is_multiple_of(p128) {
            let mut e = 0u32;
            while rem.is_multiple_of(p128) {
                rem /= p128;
                e += 1;
            }
            work.found.push((p128, e));
            misses = 0;
        } else {
            misses += 1;
            if misses == 1024 {
                misses = 0;
                if is_prime_u128(rem).is_prime() {
                    break;
                }
            }
        }
    }
    split_u128(rem, 1, effort, &mut work);
    work
}

/// Factor `|n|`. Never returns a wrong factor: an exhausted budget shows up
/// as `complete == false` with a composite cofactor.
///
/// Panics if `n == 0`.
pub fn factorize(n: &BigInt, effort: &Effort) -> Factorization {
    let v = n.magnitude();
    assert!(!v.is_zero(), "factorize: input must be nonzero");

    let (mut found, cofactors, probable) = if let Some(v128) = v.to_u128() {
        let w = factorize_u128(v128, effort);
        (
            w.found.into_iter().map(|(p, e)| (BigUint::from(p), e)).collect::<Vec<_>>(),
            w.cofactors.into_iter().map(BigUint::from).collect::<Vec<_>>(),
            w.probable,
        )
    } else {
        factorize_big(v.clone(), effort)
    };

    found.sort_by(|a, b| a.0.cmp(&b.0));
    // Merge equal primes produced by separate rho branches.
    let mut factors: Vec<(BigUint, u32)> = Vec::with_capacity(found.len());
    for (p, e) in found {
        match factors.last_mut() {
            Some((lp, le)) if *lp == p => *le += e,
            _ => factors.push((p, e)),
        }
    }
    let cofactor = cofactors.iter().fold(BigUint::one(), |a, c| a * c);
    let complete = cofactor.is_one();
    Factorization { factors, cofactor, complete, probable_prime: probable }
}

fn factorize_big(v: BigUint, effort: &Effort) -> (Vec<(BigUint, u32)>, Vec<BigUint>, bool) {
    let mut found = Vec::new();
    let mut cofactors = Vec::new();
    let mut probable = false;
    let mut rem = v;

    for &p in trial_primes() {
        if p > effort.trial_limit {
            break;
        }
        if (&rem % p).is_zero() {
            let mut e = 0u32;
            let pb = BigUint::from(p);
            loop {
                let (q, r) = num_integer::Integer::div_rem(&rem, &pb);
                if r.is_zero() {
                    rem = q;
                    e += 1;
                } else {
                    break;
                }
            }
            found.push((pb, e));
        }
        if rem.to_u128().is_some() {
            break;
        }
    }

    if let Some(v128) = rem.to_u128() {
        let w = factorize_u128(v128, effort);
        found.extend(w.found.into_iter().map(|(p, e)| (BigUint::from(p), e)));
        cofactors.extend(w.cofactors.into_iter().map(BigUint::from));
        probable |= w.probable;
        return (found, cofactors, probable);
    }

    // Still beyond 128 bits after the full trial range.
    fn split_big(
        v: BigUint,
        mult: u32,
        effort: &Effort,
        found: &mut Vec<(BigUint, u32)>,
        cofactors: &mut Vec<BigUint>,
        probable: &mut bool,
    ) {
        if v.is_one() {
            return;
        }
        if let Some(v128) = v.to_u128() {
            let mut w = WorkU128::default();
            split_u128(v128, mult, effort, &mut w);
            found.extend(w.found.into_iter().map(|(p, e)| (BigUint::from(p), e)));
            cofactors.extend(w.cofactors.into_iter().map(BigUint::from));
            *probable |= w.probable;
            return;
        }
        match is_prime(&v) {
            Primality::Prime => {
                found.push((v, mult));
                return;
            }
            Primality::ProbablePrime => {
                *probable = true;
                found.push((v, mult));
                return;
            }
            Primality::Composite => {}
        }
        if let Some((base, k)) = perfect_power(&v) {
            split_big(base, mult * k, effort, found, cofactors, probable);
            return;
        }
        match rho_big(&v, effort.big_rho_budget) {
            Some(d) => {
                let q = &v / &d;
                split_big(d, mult, effort, found, cofactors, probable);
                split_big(q, mult, effort, found, cofactors, probable);
            }
            None => {
                for _ in 0..mult {
                    cofactors.push(v.clone());
                }
            }
        }
    }
    split_big(rem, 1, effort, &mut found, &mut cofactors, &mut probable);
    (found, cofactors, probable)
}

/// Three-valued answer for budgeted predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ternary {
    True,
    False,
    Unknown,
}

impl Ternary {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Ternary::True
        } else {
            Ternary::False
        }
    }
    pub fn is_true(self) -> bool {
        self == Ternary::True
    }
    pub fn is_false(self) -> bool {
        self == Ternary::False
    }
    pub fn and(self, other: Ternary) -> Ternary {
        match (self, other) {
            (Ternary::False, _) | (_, Ternary::False) => Ternary::False,
            (Ternary::True, Ternary::True) => Ternary::True,
            _ => Ternary::Unknown,
        }
    }
}

/// Is `|n|` squarefree? `Unknown` only when the factorization is incomplete,
/// its known part is squarefree, and the composite cofactor is not a perfect
/// power.
///
/// Panics if `n == 0`.
pub fn is_squarefree(n: &BigInt, effort: &Effort) -> Ternary {
    let f = factorize(n, effort);
    if !f.is_squarefree_known_part() {
        return Ternary::False;
    }
    if f.complete {
        return Ternary::True;
    }
    // The cofactor is composite and coprime to the listed primes.
    if perfect_power(&f.cofactor).is_some() {
        return Ternary::False;
    }
    Ternary::Unknown
}

fn rough_squarefree_u128(v: u128, effort: &Effort) -> Ternary {
    if v == 1 {
        return Ternary::True;
    }
    if is_prime_u128(v).is_prime() {
        return Ternary::True;
    }
    if perfect_power_u128(v).is_some() {
        return Ternary::False;
    }
    match rho_u128(v, effort.rho_budget) {
        Some(d) => {
            let q = v / d;
            if gcd_u128(d, q) != 1 {
                return Ternary::False;
            }
            rough_squarefree_u128(d, effort).and(rough_squarefree_u128(q, effort))
        }
        None => Ternary::Unknown,
    }
}

/// Squarefree test for a value already known to have no small prime factors;
/// skips trial division entirely.
pub fn is_squarefree_rough(n: &BigUint, effort: &Effort) -> Ternary {
    if let Some(v) = n.to_u128() {
        return rough_squarefree_u128(v, effort);
    }
    if is_prime(n).is_prime() {
        return Ternary::True;
    }
    if perfect_power(n).is_some() {
        return Ternary::False;
    }
    match rho_big(n, effort.big_rho_budget) {
        Some(d) => {
            let q = n / &d;
            if !num_integer::Integer::gcd(&d, &q).is_one() {
                return Ternary::False;
            }
            is_squarefree_rough(&d, effort).and(is_squarefree_rough(&q, effort))
        }
        None => Ternary::Unknown,
    }
}

/// Product of the distinct primes dividing `m`; 1 for `m = 1`.
pub fn squarefree_kernel(m: u64) -> u64 {
    assert!(m >= 1, "squarefree_kernel: input must be positive");
    let mut rest = m;
    let mut kernel = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            kernel *= p;
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        kernel *= rest;
    }
    kernel
}

/// Distinct prime divisors of a machine-word integer, ascending.
pub fn prime_divisors(m: u64) -> Vec<u64> {
    let mut rest = m;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            out.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

/// Exact p-adic valuation of `n != 0`.
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    assert!(!n.is_zero());
    let mut v = 0u32;
    let mut rest = n.clone();
    let p = BigUint::from(p);
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if r.is_zero() {
            rest = q;
            v += 1;
        } else {
            return v;
        }
    }
}

/// Euler's totient of a machine-word integer.
pub fn totient(m: u64) -> u64 {
    assert!(m >= 1);
    let mut rest = m;
    let mut phi = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            phi -= phi / p;
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn fac(n: i128) -> Factorization {
        factorize(&BigInt::from(n), &Effort::default())
    }

    #[test]
    fn table1_style_inputs() {
        // 9216 = 2^10 * 3^2
        let f = fac(9216);
        assert!(f.complete);
        assert_eq!(f.factors, vec![(BigUint::from(2u32), 10), (BigUint::from(3u32), 2)]);
        // sign handling: -2079 = 3^3 * 7 * 11
        let f = fac(-2079);
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![
                (BigUint::from(3u32), 3),
                (BigUint::from(7u32), 1),
                (BigUint::from(11u32), 1)
            ]
        );
        // prime input
        let f = fac(97);
        assert!(f.complete);
        assert_eq!(f.factors, vec![(BigUint::from(97u32), 1)]);
    }

    #[test]
    fn squarefree_examples() {
        let e = Effort::default();
        assert_eq!(is_squarefree(&BigInt::from(42), &e), Ternary::True);
        assert_eq!(is_squarefree(&BigInt::from(9216), &e), Ternary::False);
        // 18^18 * 10^4 + 19^19 = 53408821 * 7404067212204996799 (squarefree);
        // value frozen from the trial-division-plus-rho oracle run.
        let big = BigInt::from_str("395442500408625689343363979").unwrap();
        assert_eq!(is_squarefree(&big, &e), Ternary::True);
        let f = factorize(&big, &e);
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![
                (BigUint::from(53_408_821u64), 1),
                (BigUint::from(7_404_067_212_204_996_799u64), 1)
            ]
        );
    }

    #[test]
    fn squarefree_matches_naive_oracle() {
        // Naive oracle: trial-divide by every p <= sqrt(n).
        fn naive(n: u64) -> bool {
            let mut rest = n;
            let mut p = 2u64;
            while p * p <= rest {
                if rest.is_multiple_of(p) {
                    rest /= p;
                    if rest.is_multiple_of(p) {
                        return false;
                    }
                }
                p += 1;
            }
            true
        }
        let mut state = 0xdead_beefu64;
        let e = Effort::default();
        for _ in 0..400 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = state % 1_000_000_000_000 + 2;
            let got = is_squarefree(&BigInt::from(n), &e);
            assert_eq!(got, Ternary::from_bool(naive(n)), "mismatch at {n}");
        }
    }

    #[test]
    fn recompose_round_trip() {
        let mut state = 0x1234_5678u64;
        let e = Effort::default();
        for _ in 0..10_000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = (state >> 8) as i64 + 2;
            let f = factorize(&BigInt::from(n), &e);
            assert_eq!(f.recompose(), BigUint::from(n as u64));
            assert!(f.complete);
            for w in f.factors.windows(2) {
                assert!(w[0].0 < w[1].0, "primes must be strictly increasing");
            }
        }
    }

    #[test]
    fn kernel_basics() {
        assert_eq!(squarefree_kernel(12), 6);
        assert_eq!(squarefree_kernel(1), 1);
        assert_eq!(squarefree_kernel(7), 7);
        assert_eq!(squarefree_kernel(210), 210);
        assert_eq!(squarefree_kernel(1024), 2);
    }

    #[test]
    fn kernel_divides_and_is_squarefree() {
        for m in 1u64..=1_000_000 {
            let k = squarefree_kernel(m);
            assert_eq!(m % k, 0);
            // k is squarefree iff it equals its own kernel.
            assert_eq!(squarefree_kernel(k), k);
        }
        for m in [2u64, 360, 1024, 999_983, 735_134] {
            let k = squarefree_kernel(m);
            assert!(is_squarefree(&BigInt::from(k), &Effort::default()).is_true());
        }
    }

    #[test]
    fn perfect_power_detection() {
        assert_eq!(perfect_power_u128(64), Some((2, 6)));
        assert_eq!(perfect_power_u128(1_000_000), Some((10, 6)));
        assert_eq!(perfect_power_u128(12), None);
        let p = 1_000_000_007u128;
        assert_eq!(perfect_power_u128(p * p), Some((p, 2)));
        let b = BigUint::from(3u32).pow(200);
        assert_eq!(perfect_power(&b), Some((BigUint::from(3u32), 200)));
    }

    #[test]
    fn probable_prime_metadata_above_deterministic_range() {
        // 2^89 - 1 is prime but beyond the 13-witness deterministic bound,
        // so the factorization flags it as probable.
        let m89 = (BigInt::from(1) << 89) - 1;
        let f = factorize(&m89, &Effort::default());
        assert!(f.complete);
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].1, 1);
        assert!(f.probable_prime);
        // Inside the deterministic range nothing is flagged.
        let f = fac(1_000_000_007);
        assert!(!f.probable_prime);
    }

    #[test]
    fn rough_squarefree_large_semiprime() {
        let e = Effort::default();
        // 1099511627791 * 1099511627803 (both prime, ~2^40 each)
        let p = BigUint::from(1_099_511_627_791u64);
        let q = BigUint::from(1_099_511_627_803u64);
        assert_eq!(is_squarefree_rough(&(&p * &q), &e), Ternary::True);
        assert_eq!(is_squarefree_rough(&(&p * &p), &e), Ternary::False);
        assert_eq!(is_squarefree_rough(&(&p * &p * &q), &e), Ternary::False);
    }

    #[test]
    fn totient_and_valuation() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(2), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(valuation(&BigUint::from(48u32), 2), 4);
        assert_eq!(valuation(&BigUint::from(48u32), 3), 1);
        assert_eq!(valuation(&BigUint::from(49u32), 2), 0);
    }
}
