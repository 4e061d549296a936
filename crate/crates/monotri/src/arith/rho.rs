//! Brent-variant Pollard rho.
//!
//! The iteration constant and starting point are derived deterministically
//! from the input, so factorizations are reproducible regardless of thread
//! scheduling. GCD evaluations are batched through a running product.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::mont::{Mont128, Mont64};

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// One Brent attempt on odd composite `n`; returns a nontrivial factor if
/// the cycle yields one within `max_iters` iterations.
fn brent_attempt_u64(n: u64, x0: u64, c: u64, max_iters: u64) -> Option<u64> {
    let m = Mont64::new(n);
    let cm = m.to_mont(c);
    let step = |x: u64| m.add(m.mul(x, x), cm);
    let mut y = m.to_mont(x0);
    let mut r: u64 = 1;
    let mut q = m.one;
    let batch = 128u64;
    let mut iters = 0u64;
    let (mut x, mut ys) = (y, y);
    let mut g = 1u64;
    while g == 1 && iters < max_iters {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let lim = batch.min(r - k);
            for _ in 0..lim {
                y = step(y);
                let diff = x.abs_diff(y);
                q = m.mul(q, diff);
            }
            g = gcd_u64(m.from_mont(q), n);
            k += lim;
            iters += lim;
        }
        r <<= 1;
    }
    if g == n {
        // Batch overshot; replay one step at a time.
        loop {
            ys = step(ys);
            let diff = x.abs_diff(ys);
            g = gcd_u64(m.from_mont(diff), n);
            if g > 1 {
                break;
            }
        }
    }
    if g > 1 && g < n {
        Some(g)
    } else {
        None
    }
}

fn brent_attempt_u128(n: u128, x0: u128, c: u128, max_iters: u64) -> Option<u128> {
    let m = Mont128::new(n);
    let cm = m.to_mont(c);
    let step = |x: u128| m.add(m.mul(x, x), cm);
    let mut y = m.to_mont(x0);
    let mut r: u64 = 1;
    let mut q = m.one;
    let batch = 128u64;
    let mut iters = 0u64;
    let (mut x, mut ys) = (y, y);
    let mut g = 1u128;
    while g == 1 && iters < max_iters {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let lim = batch.min(r - k);
            for _ in 0..lim {
                y = step(y);
                let diff = x.abs_diff(y);
                q = m.mul(q, diff);
            }
            g = gcd_u128(m.from_mont(q), n);
            k += lim;
            iters += lim;
        }
        r <<= 1;
    }
    if g == n {
        loop {
            ys = step(ys);
            let diff = x.abs_diff(ys);
            g = gcd_u128(m.from_mont(diff), n);
            if g > 1 {
                break;
            }
        }
    }
    if g > 1 && g < n {
        Some(g)
    } else {
        None
    }
}

/// Find a nontrivial factor of odd composite `n < 2^128` (not a prime power).
/// `budget` caps the total iteration count across attempts.
pub fn rho_u128(n: u128, budget: u64) -> Option<u128> {
    debug_assert!(n & 1 == 1 && n > 3);
    let mut state = (n as u64) ^ ((n >> 64) as u64) ^ 0x5bf0_3635;
    let per_attempt = (budget / 8).max(1 << 16);
    let mut spent = 0u64;
    for _ in 0..64 {
        if spent >= budget {
            return None;
        }
        let iters = per_attempt.min(budget - spent);
        let c = (splitmix(&mut state) as u128 % (n - 3)) + 1;
        let x0 = (splitmix(&mut state) as u128 % (n - 2)) + 1;
        if n <= u64::MAX as u128 {
            if let Some(f) = brent_attempt_u64(n as u64, x0 as u64, c as u64, iters) {
                return Some(f as u128);
            }
        } else if let Some(f) = brent_attempt_u128(n, x0, c, iters) {
            return Some(f);
        }
        spent += iters;
    }
    None
}

/// Plain rho for inputs beyond 128 bits. Much slower; only adversarial
/// inputs land here and the budget keeps it bounded.
pub fn rho_big(n: &BigUint, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut state = n.iter_u64_digits().fold(0u64, |a, d| a ^ d) ^ 0x9db4_2f6c;
    let per_attempt = (budget / 4).max(1 << 12);
    let mut spent = 0u64;
    while spent < budget {
        let c = BigUint::from(splitmix(&mut state) | 1);
        let mut x = BigUint::from(splitmix(&mut state) % 1_000_003 + 2);
        let mut y = x.clone();
        let iters = per_attempt.min(budget - spent);
        let mut i = 0u64;
        while i < iters {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            let g = diff.gcd(n);
            if g > one && &g < n {
                return Some(g);
            }
            i += 1;
        }
        spent += iters.max(1);
    }
    None
}
