//! Dense univariate polynomial arithmetic over Z/pZ, the Euclidean gcd, and
//! exact construction of the condition-(4) polynomial pair (G1, G2).
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty vector. Moduli are machine-word primes
//! (condition (4) only ever sees primes dividing the inner exponent m).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolymodError {
    ModulusMismatch { left: u64, right: u64 },
    BothZero,
    NotApplicable(String),
}

impl fmt::Display for PolymodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolymodError::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            PolymodError::BothZero => write!(f, "gcd of two zero polynomials"),
            PolymodError::NotApplicable(why) => write!(f, "condition (4) does not apply: {why}"),
        }
    }
}

impl std::error::Error for PolymodError {}

/// A polynomial over Z/pZ, dense, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    /// Build from raw coefficients (lowest degree first); reduces mod p and
    /// strips trailing zeros.
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        debug_assert!(p >= 2);
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyModP { p, coeffs: c }
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        PolyModP { p, coeffs: vec![1] }
    }

    /// The monomial x^k.
    pub fn monomial(p: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        PolyModP { p, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn check_modulus(&self, other: &Self) -> Result<(), PolymodError> {
        if self.p != other.p {
            return Err(PolymodError::ModulusMismatch { left: self.p, right: other.p });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + b) % self.p;
        }
        PolyModP::new(self.p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + self.p - b) % self.p;
        }
        PolyModP::new(self.p, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return PolyModP::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = (a as u128 * b as u128 + out[i + j] as u128) % self.p as u128;
                out[i + j] = t as u64;
            }
        }
        PolyModP::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p;
        PolyModP::new(
            self.p,
            self.coeffs.iter().map(|&a| ((a as u128 * c as u128) % self.p as u128) as u64),
        )
    }

    /// Divide the leading coefficient out.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(1) => self.clone(),
            Some(&lc) => {
                let inv = crate::arith::mod_inverse_u64(lc, self.p)
                    .expect("leading coefficient invertible mod prime");
                self.scale(inv)
            }
        }
    }

    /// Euclidean remainder of `self` by `other` (`other` nonzero).
    pub fn rem(&self, other: &Self) -> Self {
        debug_assert!(!other.is_zero());
        debug_assert_eq!(self.p, other.p);
        let d = other.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return self.clone();
        }
        let p = self.p;
        let lc_inv = crate::arith::mod_inverse_u64(*other.coeffs.last().unwrap(), p)
            .expect("leading coefficient invertible mod prime");
        let mut rem = self.coeffs.clone();
        for i in (d..rem.len()).rev() {
            let coef = rem[i];
            if coef == 0 {
                continue;
            }
            let q = (coef as u128 * lc_inv as u128 % p as u128) as u64;
            rem[i] = 0;
            for (j, &oc) in other.coeffs[..d].iter().enumerate() {
                let sub = (q as u128 * oc as u128) % p as u128;
                let idx = i - d + j;
                rem[idx] = ((rem[idx] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        PolyModP::new(p, rem)
    }

    /// Polynomial power with reduction mod `modulus`, by repeated squaring.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        debug_assert_eq!(self.p, modulus.p);
        let mut acc = PolyModP::one(self.p);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// x -> x^p mod `modulus` applied to `self` (one Frobenius step).
    pub fn frobenius(&self, modulus: &Self) -> Self {
        self.pow_mod(self.p, modulus)
    }

    /// Power with an arbitrary-precision exponent, reduced mod `modulus`.
    pub fn pow_mod_big(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = PolyModP::one(self.p);
        let mut base = self.rem(modulus);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Exact division by a nonzero divisor (panics on a remainder).
    pub fn div_exact(&self, d: &Self) -> Self {
        debug_assert!(!d.is_zero());
        let p = self.p;
        let dd = d.degree().expect("nonzero divisor");
        let lc_inv = crate::arith::mod_inverse_u64(*d.coeffs().last().unwrap(), p)
            .expect("leading coefficient invertible mod prime");
        let mut rem = self.clone();
        let sd = match self.degree() {
            Some(v) if v >= dd => v,
            _ => {
                assert!(self.is_zero(), "division must be exact");
                return PolyModP::zero(p);
            }
        };
        let mut q = vec![0u64; sd - dd + 1];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let lead = *rem.coeffs().last().unwrap();
            let c = (lead as u128 * lc_inv as u128 % p as u128) as u64;
            q[rd - dd] = c;
            let shifted = PolyModP::monomial(p, rd - dd).scale(c).mul(d);
            rem = rem.sub(&shifted);
        }
        assert!(rem.is_zero(), "division must be exact");
        PolyModP::new(p, q)
    }
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Full factorization of a squarefree monic polynomial over Z/pZ (p an odd
/// prime not dividing the discriminant): distinct-degree decomposition
/// followed by Cantor–Zassenhaus equal-degree splitting. The splitting
/// randomness is seeded deterministically from the inputs.
pub fn factor_squarefree(fbar: &PolyModP) -> Vec<PolyModP> {
    let p = fbar.modulus();
    debug_assert!(p > 2);
    let x = PolyModP::monomial(p, 1);
    let mut out = Vec::new();
    let mut g = fbar.monic();
    let mut h = x.clone();
    let mut d = 0usize;
    let mut seed = fbar.coeffs().iter().fold(p, |a, &c| a ^ c.rotate_left(17));
    while let Some(dg) = g.degree() {
        if dg == 0 {
            break;
        }
        d += 1;
        if 2 * d > dg {
            out.push(g.clone());
            break;
        }
        h = h.frobenius(&g);
        let block = poly_gcd(&h.sub(&x), &g).expect("nonzero gcd inputs");
        if let Some(bd) = block.degree() {
            if bd > 0 {
                equal_degree_split(&block, d, &mut seed, &mut out);
                g = g.div_exact(&block);
                h = h.rem(&g);
            }
        }
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    out
}

/// Cantor–Zassenhaus: split a product of distinct irreducibles of degree d.
fn equal_degree_split(block: &PolyModP, d: usize, seed: &mut u64, out: &mut Vec<PolyModP>) {
    let deg = block.degree().expect("nonzero block");
    if deg == d {
        out.push(block.monic());
        return;
    }
    let p = block.modulus();
    // (p^d - 1) / 2
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let coeffs: Vec<u64> = (0..deg).map(|_| splitmix(seed) % p).collect();
        let r = PolyModP::new(p, coeffs);
        if r.is_zero() {
            continue;
        }
        let h = r.pow_mod_big(&e, block);
        let shifted = h.sub(&PolyModP::one(p));
        if shifted.is_zero() {
            continue;
        }
        let g = poly_gcd(&shifted, block).expect("nonzero gcd inputs");
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < deg {
                equal_degree_split(&g, d, seed, out);
                equal_degree_split(&block.div_exact(&g), d, seed, out);
                return;
            }
        }
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic gcd under the Euclidean algorithm.
pub fn poly_gcd(f: &PolyModP, g: &PolyModP) -> Result<PolyModP, PolymodError> {
    f.check_modulus(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(PolymodError::BothZero);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a.monic())
}

fn bigint_mod_u64(v: &BigInt, m: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(m));
    r.to_u64().expect("reduced residue fits u64")
}

/// The condition-(4) pair from the JKS criterion for a prime `p | m` with
/// `p` not dividing `AB`: G1 is `x^{s'} + A x^s + B` mod p, and G2 is
/// `(A x^{s p^k} + B + (-A x^s - B)^{p^k}) / p` mod p, where `p^k || m`,
/// `s = m / p^k`, `s' = n / p^k`.
///
/// Coefficients of the pre-division polynomial are computed mod p^2 only;
/// each is checked to be divisible by p before the division.
pub fn jks_condition4_polys(
    n: u64,
    m: u64,
    a: &BigInt,
    b: &BigInt,
    p: u64,
) -> Result<(PolyModP, PolyModP), PolymodError> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(PolymodError::NotApplicable(format!("m = {m} must divide n = {n}")));
    }
    if p < 2 || !m.is_multiple_of(p) {
        return Err(PolymodError::NotApplicable(format!("p = {p} must divide m = {m}")));
    }
    if (a % BigInt::from(p)).is_zero() || (b % BigInt::from(p)).is_zero() {
        return Err(PolymodError::NotApplicable(format!("p = {p} divides A*B")));
    }
    let mut pk = 1u64;
    let mut rest = m;
    while rest.is_multiple_of(p) {
        rest /= p;
        pk *= p;
    }
    let s = (m / pk) as usize;
    let s_prime = (n / pk) as usize;

    let g1 = {
        let mut coeffs = vec![0u64; s_prime + 1];
        coeffs[0] = bigint_mod_u64(b, p);
        coeffs[s] = (coeffs[s] + bigint_mod_u64(a, p)) % p;
        coeffs[s_prime] = (coeffs[s_prime] + 1) % p;
        PolyModP::new(p, coeffs)
    };

    // Pre-division coefficients of A x^{s p^k} + B + (-A x^s - B)^{p^k},
    // mod p^2. The binomial expansion puts coefficient
    // binom(p^k, j) (-A)^j (-B)^{p^k - j} on x^{s j}.
    let p2 = p * p;
    let p2_big = BigUint::from(p2);
    let a_neg = bigint_mod_u64(&(-a), p2);
    let b_neg = bigint_mod_u64(&(-b), p2);
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p2 as u128) as u64;
    let powm = |base: u64, mut e: u64| {
        let mut acc = 1u64;
        let mut b = base % p2;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        acc
    };

    let mut pre = vec![0u64; s * pk as usize + 1];
    pre[0] = bigint_mod_u64(b, p2);
    pre[s * pk as usize] = bigint_mod_u64(a, p2);
    // binom(p^k, j) built incrementally as exact integers, reduced mod p^2.
    let mut binom = BigUint::one();
    for j in 0..=pk {
        if j > 0 {
            binom = binom * BigUint::from(pk - (j - 1)) / BigUint::from(j);
        }
        let bin_mod = (&binom % &p2_big).to_u64().unwrap();
        let term = mulm(bin_mod, mulm(powm(a_neg, j), powm(b_neg, pk - j)));
        let idx = s * j as usize;
        pre[idx] = (pre[idx] + term) % p2;
    }

    let mut g2_coeffs = vec![0u64; pre.len()];
    for (i, &c) in pre.iter().enumerate() {
        assert_eq!(c % p, 0, "pre-division coefficient {i} not divisible by p");
        g2_coeffs[i] = (c / p) % p;
    }
    Ok((g1, PolyModP::new(p, g2_coeffs)))
}
