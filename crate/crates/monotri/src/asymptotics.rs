//! Euler-product evaluation and the main-term formulas: the two family
//! asymptotics, the general U(X) main term, the squarefree-in-progression
//! counts S(X; r, m[, q]), and
//! the C(t) periodicity check.
//!
//! Products over hundreds of thousands of primes are accumulated in
//! fixed-point arithmetic with 192 fractional bits (about 57 decimal
//! digits) and directed rounding, so rounding a main term to the nearest
//! integer is never in doubt at f64 output precision.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, Effort};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AsymptoticsError {
    /// m must be a proper divisor of n.
    BadExponents { n: u32, m: u32 },
    /// Second-type families need kappa | 210.
    KappaNot210 { kappa: u64 },
    /// A restrictions-box clause failed; clauses are numbered 1-5.
    RestrictionViolated { clause: u8, detail: String },
    /// gcd preconditions of the progression main terms.
    GcdViolation(String),
    /// A validation step could not complete a factorization.
    Unfactorable(String),
}

impl fmt::Display for AsymptoticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsymptoticsError::BadExponents { n, m } => {
                write!(f, "m = {m} must be a proper divisor of n = {n}")
            }
            AsymptoticsError::KappaNot210 { kappa } => {
                write!(f, "kappa = {kappa} must divide 210")
            }
            AsymptoticsError::RestrictionViolated { clause, detail } => {
                write!(f, "restriction {clause} violated: {detail}")
            }
            AsymptoticsError::GcdViolation(s) => write!(f, "gcd violation: {s}"),
            AsymptoticsError::Unfactorable(s) => write!(f, "could not factor {s}"),
        }
    }
}

impl std::error::Error for AsymptoticsError {}

const FRAC_BITS: u32 = 192;

/// Nonnegative fixed-point number with 192 fractional bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Fix(BigUint);

impl Fix {
    fn from_u64(v: u64) -> Self {
        Fix(BigUint::from(v) << FRAC_BITS)
    }

    /// Parse a positive decimal literal exactly (floor at the last bit).
    fn from_decimal(s: &str) -> Self {
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        let digits: BigUint = format!("{int_part}{frac_part}").parse().expect("decimal literal");
        let scale = BigUint::from(10u32).pow(frac_part.len() as u32);
        Fix((digits << FRAC_BITS) / scale)
    }

    fn mul(&self, other: &Fix) -> Fix {
        Fix((&self.0 * &other.0) >> FRAC_BITS)
    }

    fn div(&self, other: &Fix) -> Fix {
        Fix((&self.0 << FRAC_BITS) / &other.0)
    }

    /// Multiply by num/den with floor (round_up = false) or ceiling rounding.
    fn mul_ratio(&mut self, num: u64, den: u64, round_up: bool) {
        let mut v = &self.0 * num;
        if round_up {
            v += den - 1;
        }
        self.0 = v / den;
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(FRAC_BITS as i32)
    }
}

/// zeta(2) = pi^2/6 to 51 decimal digits.
fn zeta2() -> Fix {
    Fix::from_decimal("1.644934066848226436472415166646025189218949901206798")
}

/// Round half away from zero ("rounded to the nearest integer").
pub fn round_half_away(x: f64) -> i64 {
    if x >= 0.0 {
        (x + 0.5).floor() as i64
    } else {
        (x - 0.5).ceil() as i64
    }
}

fn primes_for_cutoff(cutoff: u64) -> std::borrow::Cow<'static, [u64]> {
    if cutoff <= 10_000_000 {
        let all = arith::product_primes();
        let idx = all.partition_point(|&p| p <= cutoff);
        std::borrow::Cow::Borrowed(&all[..idx])
    } else {
        std::borrow::Cow::Owned(arith::primes_up_to(cutoff))
    }
}

/// prod_{p <= cutoff, p not in exclude} (1 - 1/(p^2-1)), with directed
/// rounding (floor by default; ceiling when `round_up`).
pub(crate) fn euler_product_fix(exclude: &[u64], cutoff: u64, round_up: bool) -> Fix {
    assert!(cutoff <= 1 << 31, "p^2 factors must stay within u64");
    let mut acc = Fix::from_u64(1);
    for &p in primes_for_cutoff(cutoff).iter() {
        if exclude.contains(&p) {
            continue;
        }
        let p2 = p * p;
        acc.mul_ratio(p2 - 2, p2 - 1, round_up);
    }
    acc
}

/// Truncated Euler product with a rigorous lower bound on the omitted tail.
#[derive(Clone, Copy, Debug)]
pub struct EulerProduct {
    /// prod_{p <= cutoff, p not excluded} (1 - 1/(p^2-1)).
    pub value: f64,
    /// Lower bound L on prod_{p > cutoff}(1 - 1/(p^2-1)), so that
    /// value * L <= full product <= value.
    pub tail_lower: f64,
}

/// Evaluate the Euler product over primes up to `cutoff`, skipping the
/// excluded primes. At cutoff 10^7 the omitted tail is below 2e-8 relative.
pub fn euler_product(exclude: &[u64], cutoff: u64) -> EulerProduct {
    assert!(cutoff >= 100, "cutoff must be at least 100");
    let value = euler_product_fix(exclude, cutoff, false).to_f64();
    // sum_{p > c} 1/(p^2-1) <= (2/(c ln c)) (1 + 1.2762/ln c) by the Dusart
    // pi(x) upper bound; then prod(1 - x_i) >= 1 - sum x_i.
    let c = cutoff as f64;
    let tail_sum = (2.0 / (c * c.ln())) * (1.0 + 1.2762 / c.ln()) + 4.0 / (c * c);
    EulerProduct { value, tail_lower: 1.0 - tail_sum }
}

/// Which displayed family asymptotic to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyMainTerm {
    FirstType,
    SecondType,
}

/// Main term of the family counts. First type:
/// X/(kappa zeta(2)) prod_{p | kappa}(1 - 1/(p+1))
/// prod_{p !| t(t-1)kappa}(1 - 1/(p^2-1)); second type:
/// X/(kappa^2 zeta(2)) prod_{p | kappa}(1 - p^-2)^-1 times the same
/// truncated product.
pub fn main_term_family(
    kind: FamilyMainTerm,
    n: u32,
    m: u32,
    x: u64,
    cutoff: u64,
) -> Result<f64, AsymptoticsError> {
    if m == 0 || m >= n || !n.is_multiple_of(m) {
        return Err(AsymptoticsError::BadExponents { n, m });
    }
    let t = (n / m) as u64;
    let kappa = arith::squarefree_kernel(m as u64);
    if kind == FamilyMainTerm::SecondType && 210 % kappa != 0 {
        return Err(AsymptoticsError::KappaNot210 { kappa });
    }
    let kappa_primes = arith::prime_divisors(kappa);

    let mut acc = Fix::from_u64(x).div(&zeta2());
    match kind {
        FamilyMainTerm::FirstType => {
            acc.mul_ratio(1, kappa, false);
            for &p in &kappa_primes {
                acc.mul_ratio(p, p + 1, false);
            }
        }
        FamilyMainTerm::SecondType => {
            acc.mul_ratio(1, kappa * kappa, false);
            for &p in &kappa_primes {
                acc.mul_ratio(p * p, p * p - 1, false);
            }
        }
    }
    let exclude = arith::prime_divisors(t * (t - 1) * kappa);
    let prod = euler_product_fix(&exclude, cutoff, false);
    Ok(acc.mul(&prod).to_f64())
}

/// The validated parameter tuple of the restrictions box.
#[derive(Clone, Debug)]
pub struct MainTermParams {
    pub rho: u64,
    pub gamma: u64,
    pub alpha: BigInt,
    pub alpha0: u64,
    pub beta: BigInt,
    pub beta0: u64,
}

impl MainTermParams {
    /// Check the five clauses; the error names the first failed clause.
    pub fn validate(&self) -> Result<(), AsymptoticsError> {
        let err = |clause: u8, detail: String| {
            Err(AsymptoticsError::RestrictionViolated { clause, detail })
        };
        if self.rho == 0 || self.gamma == 0 || self.alpha0 == 0 || self.beta0 == 0 {
            return err(1, "rho, gamma, alpha0, beta0 must be positive".into());
        }
        if !self.alpha.is_positive() {
            return err(1, "alpha must be a positive integer".into());
        }
        // 1. gcd(alpha0 beta0 rho, gamma) = 1 = gcd(alpha, beta)
        let abr = BigUint::from(self.alpha0) * BigUint::from(self.beta0) * BigUint::from(self.rho);
        if abr.gcd(&BigUint::from(self.gamma)) != BigUint::one() {
            return err(1, format!("gcd(alpha0 beta0 rho, gamma) != 1 (gamma = {})", self.gamma));
        }
        if self.alpha.gcd(&self.beta) != BigInt::one() {
            return err(1, "gcd(alpha, beta) != 1".into());
        }
        // 2. p | beta implies p^2 | beta
        if self.beta.is_zero() {
            return err(2, "beta must be nonzero".into());
        }
        let fac_beta = arith::factorize(&self.beta, &Effort::default());
        if !fac_beta.complete {
            return Err(AsymptoticsError::Unfactorable("beta".into()));
        }
        for (p, e) in &fac_beta.factors {
            if *e < 2 {
                return err(2, format!("p = {p} divides beta exactly once"));
            }
        }
        // 3. alpha0 squarefree divisor of alpha
        if arith::squarefree_kernel(self.alpha0) != self.alpha0 {
            return err(3, format!("alpha0 = {} is not squarefree", self.alpha0));
        }
        if !(&self.alpha % BigInt::from(self.alpha0)).is_zero() {
            return err(3, format!("alpha0 = {} does not divide alpha", self.alpha0));
        }
        // 4. beta0 squarefree divisor of beta
        if arith::squarefree_kernel(self.beta0) != self.beta0 {
            return err(4, format!("beta0 = {} is not squarefree", self.beta0));
        }
        if !(&self.beta % BigInt::from(self.beta0)).is_zero() {
            return err(4, format!("beta0 = {} does not divide beta", self.beta0));
        }
        // 5. alpha beta0 rho + beta != 0 mod p^2 for every p | gamma
        let s = &self.alpha * BigInt::from(self.beta0) * BigInt::from(self.rho) + &self.beta;
        for p in arith::prime_divisors(self.gamma) {
            if (&s % BigInt::from(p * p)).is_zero() {
                return err(5, format!("alpha beta0 rho + beta = 0 mod {p}^2"));
            }
        }
        Ok(())
    }
}

/// U(X) main term: X phi(a0 b0)/(a0 b0 gamma^2 zeta(2))
/// prod_{p | a0 b0 gamma}(1 - p^-2)^-1 prod_{p !| alpha beta gamma}(1 - 1/(p^2-1)).
pub fn main_term_u(params: &MainTermParams, x: u64, cutoff: u64) -> Result<f64, AsymptoticsError> {
    params.validate()?;
    let a0b0 = params.alpha0 * params.beta0;
    let mut acc = Fix::from_u64(x).div(&zeta2());
    acc.mul_ratio(arith::totient(a0b0), a0b0, false);
    acc.mul_ratio(1, params.gamma * params.gamma, false);
    for p in arith::prime_divisors(a0b0 * params.gamma) {
        acc.mul_ratio(p * p, p * p - 1, false);
    }
    let mut exclude: Vec<u64> = Vec::new();
    for v in [&params.alpha, &params.beta] {
        let fac = arith::factorize(v, &Effort::default());
        if !fac.complete {
            return Err(AsymptoticsError::Unfactorable(format!("{v}")));
        }
        for (p, _) in &fac.factors {
            exclude.push(p.to_u64().ok_or_else(|| {
                AsymptoticsError::Unfactorable("prime exceeds u64 in exclusion set".into())
            })?);
        }
    }
    exclude.extend(arith::prime_divisors(params.gamma));
    exclude.sort_unstable();
    exclude.dedup();
    let prod = euler_product_fix(&exclude, cutoff, false);
    Ok(acc.mul(&prod).to_f64())
}

/// Squarefree-in-progression main term: X/(m zeta(2))
/// prod_{p|m}(1 - p^-2)^-1, and with a
/// coprimality modulus q, X phi(q)/(q m zeta(2)) prod_{p|qm}(1 - p^-2)^-1.
pub fn prachar_main_term(
    x: u64,
    r: u64,
    m: u64,
    q: Option<u64>,
) -> Result<f64, AsymptoticsError> {
    if m == 0 || r == 0 {
        return Err(AsymptoticsError::GcdViolation("r and m must be positive".into()));
    }
    if num_integer::gcd(r, m) != 1 {
        return Err(AsymptoticsError::GcdViolation(format!("gcd({r}, {m}) != 1")));
    }
    let mut acc = Fix::from_u64(x).div(&zeta2());
    acc.mul_ratio(1, m, false);
    match q {
        None => {
            for p in arith::prime_divisors(m) {
                acc.mul_ratio(p * p, p * p - 1, false);
            }
        }
        Some(q) => {
            if q == 0 || num_integer::gcd(q, m) != 1 {
                return Err(AsymptoticsError::GcdViolation(format!("gcd({q}, {m}) != 1")));
            }
            acc.mul_ratio(arith::totient(q), q, false);
            for p in arith::prime_divisors(q * m) {
                acc.mul_ratio(p * p, p * p - 1, false);
            }
        }
    }
    Ok(acc.to_f64())
}

/// Check C(t) = (t-1)^{t-1}(kappa^2-1) + (-1)^{t-1} t^t != 0 mod p^2 for
/// every t in one full period [2, 2 + p^2(p-1)).
///
/// Panics unless p | kappa and kappa | 210 (the preconditions).
pub fn c_t_period_check(p: u64, kappa: u64) -> bool {
    assert!(kappa >= 1 && 210 % kappa == 0, "kappa must divide 210");
    assert!(p >= 2 && kappa.is_multiple_of(p), "p must divide kappa");
    let p2 = p * p;
    let powm = |base: u64, e: u64| -> u64 {
        let mut acc = 1u64;
        let mut b = base % p2;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p2;
            }
            b = b * b % p2;
            e >>= 1;
        }
        acc
    };
    let k2m1 = (kappa * kappa - 1) % p2;
    let period = p2 * (p - 1);
    for t in 2..(2 + period) {
        let lead = powm(t - 1, t - 1) * k2m1 % p2;
        let tail = powm(t, t);
        let c = if (t - 1) % 2 == 0 {
            (lead + tail) % p2
        } else {
            (lead + p2 - tail) % p2
        };
        if c == 0 {
            return false;
        }
    }
    true
}
