//! Montgomery arithmetic for odd moduli up to 128 bits.
//!
//! Everything that iterates a modular map millions of times (Miller–Rabin,
//! Brent's rho) runs on these types instead of big integers. The 64-bit
//! context uses `u128` intermediates; the 128-bit context does the
//! schoolbook 128×128→256 multiplication on 64-bit limbs.

/// Montgomery context for an odd modulus `n < 2^64`, with `R = 2^64`.
#[derive(Clone, Copy)]
pub struct Mont64 {
    pub n: u64,
    ninv: u64, // -n^{-1} mod 2^64
    r2: u64,   // 2^128 mod n
    pub one: u64,
}

impl Mont64 {
    pub fn new(n: u64) -> Self {
        debug_assert!(n & 1 == 1 && n > 1);
        // Newton iteration doubles the number of correct low bits.
        let mut inv: u64 = n;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        let ninv = inv.wrapping_neg();
        let r = (u64::MAX % n) + 1; // 2^64 mod n
        let r2 = ((r as u128 * r as u128) % n as u128) as u64;
        Mont64 { n, ninv, r2, one: r % n }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.ninv);
        let (sum, carry) = t.overflowing_add(m as u128 * self.n as u128);
        let mut r = (sum >> 64) as u64;
        if carry {
            r = r.wrapping_add((u64::MAX % self.n) + 1);
        }
        if r >= self.n {
            r -= self.n;
        }
        r
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.redc((a % self.n) as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (s, over) = a.overflowing_add(b);
        if over || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }

    /// Montgomery-domain exponentiation; `base` is already in the domain.
    pub fn pow(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = self.one;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}

#[inline]
fn mul_128(a: u128, b: u128) -> (u128, u128) {
    let (a0, a1) = (a as u64 as u128, a >> 64);
    let (b0, b1) = (b as u64 as u128, b >> 64);
    let ll = a0 * b0;
    let lh = a0 * b1;
    let hl = a1 * b0;
    let hh = a1 * b1;
    let mid = (ll >> 64) + (lh as u64 as u128) + (hl as u64 as u128);
    let lo = (mid << 64) | (ll as u64 as u128);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

/// Montgomery context for an odd modulus `n < 2^128`, with `R = 2^128`.
#[derive(Clone, Copy)]
pub struct Mont128 {
    pub n: u128,
    ninv: u128, // -n^{-1} mod 2^128
    r2: u128,   // 2^256 mod n
    pub one: u128,
}

impl Mont128 {
    pub fn new(n: u128) -> Self {
        debug_assert!(n & 1 == 1 && n > 1);
        let mut inv: u128 = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let ninv = inv.wrapping_neg();
        let one = (u128::MAX % n) + 1; // 2^128 mod n (n > 1 so no wrap to n)
        let one = if one == n { 0 } else { one };
        // 2^256 mod n by repeated doubling of 2^128 mod n, 128 times.
        let mut r2 = one;
        for _ in 0..128 {
            r2 = Self::add_mod(r2, r2, n);
        }
        Mont128 { n, ninv, r2, one }
    }

    #[inline]
    fn add_mod(a: u128, b: u128, n: u128) -> u128 {
        let (s, over) = a.overflowing_add(b);
        if over || s >= n {
            s.wrapping_sub(n)
        } else {
            s
        }
    }

    #[inline]
    fn redc(&self, t_hi: u128, t_lo: u128) -> u128 {
        let m = t_lo.wrapping_mul(self.ninv);
        let (mn_hi, mn_lo) = mul_128(m, self.n);
        // (t + m*n) / 2^128: the low halves cancel to zero by construction.
        let (low, carry1) = t_lo.overflowing_add(mn_lo);
        debug_assert_eq!(low, 0);
        let (mut hi, carry2) = t_hi.overflowing_add(mn_hi);
        let (hi2, carry3) = hi.overflowing_add(carry1 as u128);
        hi = hi2;
        if carry2 || carry3 {
            // true result is hi + 2^128, reduce once
            hi = hi.wrapping_sub(self.n);
        }
        if hi >= self.n {
            hi -= self.n;
        }
        hi
    }

    #[inline]
    pub fn to_mont(&self, a: u128) -> u128 {
        let (hi, lo) = mul_128(a % self.n, self.r2);
        self.redc(hi, lo)
    }

    #[inline]
    pub fn from_mont(&self, a: u128) -> u128 {
        self.redc(0, a)
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_128(a, b);
        self.redc(hi, lo)
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        Self::add_mod(a, b, self.n)
    }

    pub fn pow(&self, base: u128, mut e: u128) -> u128 {
        let mut acc = self.one;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}
