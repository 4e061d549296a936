//! The trinomial value type, both discriminant computations, the quantity D,
//! irreducibility certificates, and the Galois-order bound.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Effort};
use crate::intpoly::{resultant, IntPoly};
use crate::polymod::{poly_gcd, PolyModP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrinomialError {
    /// Shape constraints 2 <= n, 1 <= m < n, A != 0, B != 0 violated.
    InvalidShape(String),
    /// An operation that needs m | n was called with m not dividing n.
    NonDivisorExponent { n: u32, m: u32 },
    /// gcd(A,B)^{t-1} failed to divide the D numerator (defensive; cannot
    /// occur for valid inputs).
    InexactDivision,
}

impl fmt::Display for TrinomialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrinomialError::InvalidShape(s) => write!(f, "invalid trinomial: {s}"),
            TrinomialError::NonDivisorExponent { n, m } => {
                write!(f, "m = {m} does not divide n = {n}")
            }
            TrinomialError::InexactDivision => write!(f, "gcd(A,B)^(t-1) does not divide the D numerator"),
        }
    }
}

impl std::error::Error for TrinomialError {}

/// x^n + A x^m + B with 2 <= n, 1 <= m < n and nonzero A, B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trinomial {
    n: u32,
    m: u32,
    a: BigInt,
    b: BigInt,
}

impl Trinomial {
    pub fn new(n: u32, m: u32, a: BigInt, b: BigInt) -> Result<Self, TrinomialError> {
        if n < 2 {
            return Err(TrinomialError::InvalidShape(format!("degree n = {n} must be >= 2")));
        }
        if m < 1 || m >= n {
            return Err(TrinomialError::InvalidShape(format!(
                "inner exponent m = {m} must satisfy 1 <= m < n = {n}"
            )));
        }
        if a.is_zero() || b.is_zero() {
            return Err(TrinomialError::InvalidShape("A and B must be nonzero".into()));
        }
        Ok(Trinomial { n, m, a, b })
    }

    pub fn from_i64(n: u32, m: u32, a: i64, b: i64) -> Result<Self, TrinomialError> {
        Trinomial::new(n, m, BigInt::from(a), BigInt::from(b))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// t = n/m when m | n.
    pub fn t(&self) -> Result<u32, TrinomialError> {
        if self.n.is_multiple_of(self.m) {
            Ok(self.n / self.m)
        } else {
            Err(TrinomialError::NonDivisorExponent { n: self.n, m: self.m })
        }
    }

    /// gcd(n, m), the exponent in the closed-form discriminant.
    pub fn d(&self) -> u32 {
        self.n.gcd(&self.m)
    }

    /// Squarefree kernel of m.
    pub fn kappa(&self) -> u64 {
        arith::squarefree_kernel(self.m as u64)
    }

    pub fn to_intpoly(&self) -> IntPoly {
        IntPoly::trinomial(self.n as usize, self.m as usize, &self.a, &self.b)
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}", self.n)?;
        if self.a.is_negative() {
            write!(f, " - {}", self.a.magnitude())?;
        } else {
            write!(f, " + {}", self.a)?;
        }
        write!(f, "x^{}", self.m)?;
        if self.b.is_negative() {
            write!(f, " - {}", self.b.magnitude())
        } else {
            write!(f, " + {}", self.b)
        }
    }
}

fn disc_sign(n: u32) -> i32 {
    // (-1)^{n(n-1)/2}
    if (n as u64 * (n as u64 - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The trinomial discriminant in closed form, valid for any 0 < m < n:
/// (-1)^{n(n-1)/2} B^{m-1} (n^{n/d} B^{(n-m)/d}
///   - (-1)^{n/d} (n-m)^{(n-m)/d} m^{m/d} A^{n/d})^d with d = gcd(n, m).
pub fn discriminant_swan(tri: &Trinomial) -> BigInt {
    let (n, m) = (tri.n, tri.m);
    let d = tri.d();
    let nd = n / d;
    let nmd = (n - m) / d;
    let md = m / d;
    let inner = BigInt::from(n).pow(nd) * tri.b.pow(nmd)
        - BigInt::from(if nd.is_multiple_of(2) { 1 } else { -1 })
            * BigInt::from(n - m).pow(nmd)
            * BigInt::from(m).pow(md)
            * tri.a.pow(nd);
    let val = tri.b.pow(m - 1) * inner.pow(d);
    if disc_sign(n) < 0 {
        -val
    } else {
        val
    }
}

/// Independent discriminant oracle: (-1)^{n(n-1)/2} Res(f, f') by
/// fraction-free Sylvester determinant.
pub fn discriminant_resultant_oracle(tri: &Trinomial) -> BigInt {
    let f = tri.to_intpoly();
    let res = resultant(&f, &f.derivative());
    if disc_sign(tri.n) < 0 {
        -res
    } else {
        res
    }
}

/// D = (t^t B^{t-1} + (1-t)^{t-1} A^t) / gcd(A,B)^{t-1}. Zero is returned
/// as an explicit degenerate value, not an error.
pub fn d_value(tri: &Trinomial) -> Result<BigInt, TrinomialError> {
    let t = tri.t()?;
    let g = tri.a.gcd(&tri.b);
    let num = d_numerator(t, &tri.a, &tri.b);
    let den = g.pow(t - 1);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(TrinomialError::InexactDivision);
    }
    Ok(q)
}

/// t^t B^{t-1} + (1-t)^{t-1} A^t, the un-normalized D numerator.
pub fn d_numerator(t: u32, a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from(t).pow(t) * b.pow(t - 1) + (BigInt::one() - BigInt::from(t)).pow(t - 1) * a.pow(t)
}

/// phi(m) * m^t * t!, the splitting-field order bound.
pub fn galois_order_bound(tri: &Trinomial) -> Result<BigUint, TrinomialError> {
    let t = tri.t()?;
    let phi = arith::totient(tri.m as u64);
    let mut acc = BigUint::from(phi) * BigUint::from(tri.m as u64).pow(t);
    for k in 2..=t as u64 {
        acc *= BigUint::from(k);
    }
    Ok(acc)
}

/// How an irreducibility question was settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertReason {
    /// Eisenstein at this prime: p | A, p | B, p^2 does not divide B.
    Eisenstein(BigUint),
    /// f mod p irreducible, or the mod-p degree patterns rule out every
    /// proper factor degree.
    ModPWitness(u64),
    /// The pruned exhaustive search over monic divisors completed.
    FactorSearchExhausted,
    /// The search budget ran out before the question was settled.
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertStatus {
    ProvenIrreducible,
    /// Carries a monic integer factor that exactly divides f.
    ProvenReducible(IntPoly),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub status: CertStatus,
    pub reason: CertReason,
}

impl IrreducibilityCertificate {
    pub fn is_irreducible(&self) -> bool {
        self.status == CertStatus::ProvenIrreducible
    }
}

/// Budget for the certificate pipeline.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Primes tried for mod-p degree patterns / witnesses.
    pub witness_primes: u32,
    /// Divisor tuples examined across the whole factor search.
    pub max_candidates: u64,
    pub effort: Effort,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { witness_primes: 25, max_candidates: 2_000_000, effort: Effort::default() }
    }
}

/// Distinct-degree decomposition of a squarefree f mod p: returns the
/// multiset of irreducible factor degrees.
fn ddf_degrees(fbar: &PolyModP, p: u64) -> Vec<usize> {
    let mut degrees = Vec::new();
    let mut g = fbar.monic();
    let x = PolyModP::monomial(p, 1);
    let mut h = x.clone();
    let mut i = 0usize;
    while let Some(dg) = g.degree() {
        if dg == 0 {
            break;
        }
        i += 1;
        if 2 * i > dg {
            // What remains is irreducible of its own degree.
            degrees.push(dg);
            break;
        }
        h = h.frobenius(&g); // h = x^{p^i} mod g
        let d = poly_gcd(&h.sub(&x), &g).expect("gcd of nonzero polynomials");
        if let Some(dd) = d.degree() {
            if dd > 0 {
                for _ in 0..dd / i {
                    degrees.push(i);
                }
                g = g.div_exact(&d);
                h = h.rem(&g);
            }
        }
    }
    degrees
}

/// Subset sums of a degree multiset, as a bitmask over 0..=n.
fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for i in (0..=n.saturating_sub(d)).rev() {
            if reach[i] {
                reach[i + d] = true;
            }
        }
    }
    reach
}

/// Signed divisors of v (absolute value), ascending by magnitude.
fn signed_divisors(v: &BigInt, effort: &Effort) -> Option<Vec<BigInt>> {
    let f = arith::factorize(v, effort);
    if !f.complete {
        return None;
    }
    let mut divs: Vec<BigUint> = vec![BigUint::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        let d = BigInt::from(d);
        out.push(d.clone());
        out.push(-d);
    }
    Some(out)
}

/// binom(a, b) in BigUint.
fn binomial(a: u32, b: u32) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..b.min(a - b) {
        acc = acc * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    acc
}

/// Mignotte-style coefficient bound for a monic degree-k factor of monic f:
/// |g_j| <= binom(k-1, j) ||f||_2 + binom(k-1, j-1).
fn mignotte_bounds(f: &IntPoly, k: usize) -> Vec<BigInt> {
    let norm = BigInt::from(f.norm2_floor()) + 1;
    (0..=k)
        .map(|j| {
            let b1 = BigInt::from(binomial(k as u32 - 1, j as u32)) * &norm;
            let b2 = if j > 0 {
                BigInt::from(binomial(k as u32 - 1, j as u32 - 1))
            } else {
                BigInt::zero()
            };
            b1 + b2
        })
        .collect()
}

enum SearchOutcome {
    Irreducible,
    Reducible(IntPoly),
    Budget,
}

/// Exhaustive factor search: factor f modulo one large prime away from the
/// discriminant, then reconstruct integer divisor candidates as balanced
/// lifts of factor subsets whose degree survives the pattern filter, pruned
/// further by constant-term-divides-B and the Mignotte bounds.
fn factor_search_bigprime(
    f: &IntPoly,
    disc: &BigInt,
    allowed: &[bool],
    budget: &SearchBudget,
) -> SearchOutcome {
    let n = f.degree().expect("nonzero polynomial");
    let b0 = f.coeff(0);
    let bounds: Vec<Vec<BigInt>> = (0..=n / 2)
        .map(|k| if k >= 1 { mignotte_bounds(f, k) } else { Vec::new() })
        .collect();
    let max_bound = bounds
        .iter()
        .flatten()
        .map(|b| b.magnitude().clone())
        .max()
        .unwrap_or_default();

    // A prime exceeding twice every candidate coefficient, so balanced
    // lifts are exact; 2^61 - 1 is the usual starting point.
    let mut p: u64 = (1 << 61) - 1;
    if BigUint::from(p) <= &max_bound * 2u32 {
        return SearchOutcome::Budget;
    }
    loop {
        if arith::primality::is_prime_u64(p) && !disc.mod_floor(&BigInt::from(p)).is_zero() {
            break;
        }
        p += 2;
    }

    let fbar = f.reduce_mod(p);
    let factors = crate::polymod::factor_squarefree(&fbar);
    let r = factors.len();
    if r == 1 {
        return SearchOutcome::Irreducible;
    }

    // Depth-first subset enumeration with degree pruning.
    let half = BigInt::from(p / 2);
    let pbig = BigInt::from(p);
    let lift = |g: &PolyModP| -> IntPoly {
        IntPoly::new(g.coeffs().iter().map(|&c| {
            let c = BigInt::from(c);
            if c > half {
                c - &pbig
            } else {
                c
            }
        }))
    };
    let mut candidates_used = 0u64;
    let mut stack: Vec<(usize, PolyModP)> = vec![(0, PolyModP::one(p))];
    while let Some((i, prod)) = stack.pop() {
        candidates_used += 1;
        if candidates_used > budget.max_candidates {
            return SearchOutcome::Budget;
        }
        let deg = prod.degree().unwrap_or(0);
        if deg > n / 2 {
            continue;
        }
        if i == r {
            if deg >= 1 && allowed[deg] {
                let g = lift(&prod);
                let c0 = g.coeff(0);
                let within_bounds = g
                    .coeffs()
                    .iter()
                    .enumerate()
                    .all(|(j, c)| c.magnitude() <= bounds[deg][j].magnitude());
                if within_bounds && !c0.is_zero() && (&b0 % &c0).is_zero()
                    && f.div_exact_monic(&g).is_some() {
                        return SearchOutcome::Reducible(g);
                    }
            }
            continue;
        }
        stack.push((i + 1, prod.clone()));
        // Remaining degrees cannot rescue an over-budget branch, so the
        // include-edge is pruned by the same n/2 cap at pop time.
        stack.push((i + 1, prod.mul(&factors[i])));
    }
    SearchOutcome::Irreducible
}

/// Irreducibility over Q of a monic integer polynomial with nonzero
/// constant term, by the pipeline: Eisenstein, mod-p degree patterns and
/// witnesses, then the pruned exhaustive factor search.
pub(crate) fn certify_irreducible(f: &IntPoly, budget: &SearchBudget) -> IrreducibilityCertificate {
    let n = f.degree().expect("nonzero polynomial");
    assert!(f.is_monic(), "certificate requires a monic polynomial");
    if n == 1 {
        return IrreducibilityCertificate {
            status: CertStatus::ProvenIrreducible,
            reason: CertReason::FactorSearchExhausted,
        };
    }
    let b0 = f.coeff(0);
    if b0.is_zero() {
        return IrreducibilityCertificate {
            status: CertStatus::ProvenReducible(IntPoly::from_i64(&[0, 1])),
            reason: CertReason::FactorSearchExhausted,
        };
    }

    // (i) Eisenstein at primes of the content of the non-leading part.
    let tail_gcd = IntPoly::new(f.coeffs()[..n].to_vec()).content();
    if tail_gcd > BigUint::one() {
        let fac = arith::factorize(&BigInt::from(tail_gcd), &budget.effort);
        for p in fac.primes() {
            let p2 = BigInt::from(p * p);
            if !(&b0 % &p2).is_zero() {
                return IrreducibilityCertificate {
                    status: CertStatus::ProvenIrreducible,
                    reason: CertReason::Eisenstein(p.clone()),
                };
            }
        }
    }

    // Repeated factors short-circuit everything else.
    let disc = resultant(f, &f.derivative());
    if disc.is_zero() {
        let g = crate::intpoly::int_gcd(f, &f.derivative());
        debug_assert!(g.is_monic(), "gcd of a monic polynomial with its derivative");
        return IrreducibilityCertificate {
            status: CertStatus::ProvenReducible(g),
            reason: CertReason::FactorSearchExhausted,
        };
    }

    // (ii) mod-p degree patterns for primes away from the discriminant; an
    // empty intersection of proper-factor degrees is a witness.
    let mut allowed = vec![true; n / 2 + 1];
    allowed[0] = false;
    let mut witness = None;
    let mut tried = 0u32;
    for &p in arith::trial_primes() {
        if tried >= budget.witness_primes {
            break;
        }
        if (&disc % p).is_zero() {
            continue;
        }
        tried += 1;
        let fbar = f.reduce_mod(p);
        let degrees = ddf_degrees(&fbar, p);
        let sums = subset_sums(&degrees, n);
        let mut any = false;
        for (k, a) in allowed.iter_mut().enumerate().skip(1) {
            *a = *a && sums[k];
            any |= *a;
        }
        if !any {
            witness = Some(p);
            break;
        }
    }
    if let Some(p) = witness {
        return IrreducibilityCertificate {
            status: CertStatus::ProvenIrreducible,
            reason: CertReason::ModPWitness(p),
        };
    }

    // Quick rational-root pass: any integer root divides the constant term.
    match signed_divisors(&b0, &budget.effort) {
        Some(divs) => {
            for d in &divs {
                if f.eval(&(-d)).is_zero() {
                    return IrreducibilityCertificate {
                        status: CertStatus::ProvenReducible(IntPoly::new(vec![
                            d.clone(),
                            BigInt::one(),
                        ])),
                        reason: CertReason::FactorSearchExhausted,
                    };
                }
            }
        }
        None => {
            return IrreducibilityCertificate {
                status: CertStatus::Unknown,
                reason: CertReason::BudgetExceeded,
            }
        }
    }

    // (iii) the reconstruction search over the surviving degrees.
    match factor_search_bigprime(f, &disc, &allowed, budget) {
        SearchOutcome::Irreducible => IrreducibilityCertificate {
            status: CertStatus::ProvenIrreducible,
            reason: CertReason::FactorSearchExhausted,
        },
        SearchOutcome::Reducible(g) => IrreducibilityCertificate {
            status: CertStatus::ProvenReducible(g),
            reason: CertReason::FactorSearchExhausted,
        },
        SearchOutcome::Budget => IrreducibilityCertificate {
            status: CertStatus::Unknown,
            reason: CertReason::BudgetExceeded,
        },
    }
}

/// Irreducibility of the trinomial over Q.
pub fn irreducibility_certificate(tri: &Trinomial, budget: &SearchBudget) -> IrreducibilityCertificate {
    certify_irreducible(&tri.to_intpoly(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(n: u32, m: u32, a: i64, b: i64) -> Trinomial {
        Trinomial::from_i64(n, m, a, b).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(Trinomial::from_i64(1, 1, 1, 1).is_err());
        assert!(Trinomial::from_i64(4, 4, 1, 1).is_err());
        assert!(Trinomial::from_i64(4, 0, 1, 1).is_err());
        assert!(Trinomial::from_i64(4, 2, 0, 1).is_err());
        assert!(Trinomial::from_i64(4, 2, 1, 0).is_err());
        assert!(Trinomial::from_i64(4, 3, 1, 1).is_ok()); // m need not divide n
    }

    #[test]
    fn closed_form_discriminant_examples() {
        assert_eq!(discriminant_swan(&tri(3, 1, -3, 9)), BigInt::from(-2079));
        assert_eq!(discriminant_swan(&tri(4, 2, 2, 4)), BigInt::from(9216));
        assert_eq!(discriminant_swan(&tri(4, 2, 5, 5)), BigInt::from(2000));
        assert_eq!(discriminant_swan(&tri(4, 2, 7, 7)), BigInt::from(49392));
    }

    #[test]
    fn resultant_oracle_examples() {
        assert_eq!(discriminant_resultant_oracle(&tri(3, 1, -3, 9)), BigInt::from(-2079));
        assert_eq!(discriminant_resultant_oracle(&tri(2, 1, 2, 1)), BigInt::zero());
        assert_eq!(discriminant_resultant_oracle(&tri(4, 2, 2, 10)), BigInt::from(207360));
    }

    #[test]
    fn closed_form_equals_oracle_on_500_random() {
        let mut state = 0x5eed_cafeu64;
        let mut rand = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let mut done = 0;
        while done < 500 {
            let n = (rand() % 11 + 2) as u32;
            let m = (rand() % (n as u64 - 1) + 1) as u32;
            let a = rand() as i64 % 51;
            let b = rand() as i64 % 51;
            let a = if a == 0 { 1 } else { a } * if rand() % 2 == 0 { 1 } else { -1 };
            let b = if b == 0 { 1 } else { b } * if rand() % 2 == 0 { 1 } else { -1 };
            let t = tri(n, m, a, b);
            assert_eq!(
                discriminant_swan(&t),
                discriminant_resultant_oracle(&t),
                "disagree on {t}"
            );
            done += 1;
        }
    }

    #[test]
    fn discriminant_factorization_identity() {
        // For m | n: disc = (-1)^{tm(tm-1)/2} m^{tm} B^{m-1} (g^{t-1} D)^m.
        let mut state = 0x1dea_beefu64;
        let mut rand = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let mut done = 0;
        while done < 200 {
            let m = (rand() % 4 + 1) as u32;
            let t = (rand() % 4 + 2) as u32;
            let n = t * m;
            if n > 12 {
                continue;
            }
            let a = (rand() % 30 + 1) as i64 * if rand() % 2 == 0 { 1 } else { -1 };
            let b = (rand() % 30 + 1) as i64 * if rand() % 2 == 0 { 1 } else { -1 };
            let tr = tri(n, m, a, b);
            let d = d_value(&tr).unwrap();
            let g = tr.a().gcd(tr.b());
            let sign = if (t as u64 * m as u64 * (t as u64 * m as u64 - 1) / 2).is_multiple_of(2) {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            let rhs = sign
                * BigInt::from(m).pow(t * m)
                * tr.b().pow(m - 1)
                * (g.pow(t - 1) * &d).pow(m);
            assert_eq!(discriminant_swan(&tr), rhs, "identity fails for {tr}");
            done += 1;
        }
    }

    #[test]
    fn d_value_examples() {
        assert_eq!(d_value(&tri(4, 2, 7, 7)).unwrap(), BigInt::from(-3));
        assert_eq!(d_value(&tri(4, 2, 2, 10)).unwrap(), BigInt::from(18));
        assert_eq!(d_value(&tri(4, 2, 4, 4)).unwrap(), BigInt::zero());
        assert!(matches!(
            d_value(&tri(4, 3, 2, 2)),
            Err(TrinomialError::NonDivisorExponent { .. })
        ));
        // A = B: D = t^t + (1-t)^{t-1} A
        for (n, m, a) in [(6u32, 2u32, 9i64), (8, 4, 10), (12, 3, 35)] {
            let t = n / m;
            let want = BigInt::from(t).pow(t)
                + (BigInt::one() - BigInt::from(t)).pow(t - 1) * BigInt::from(a);
            assert_eq!(d_value(&tri(n, m, a, a)).unwrap(), want);
        }
    }

    #[test]
    fn galois_bound_examples() {
        assert_eq!(galois_order_bound(&tri(4, 2, 1, 1)).unwrap(), BigUint::from(8u32));
        assert_eq!(galois_order_bound(&tri(2, 1, 1, 1)).unwrap(), BigUint::from(2u32));
        assert_eq!(galois_order_bound(&tri(24, 12, 1, 1)).unwrap(), BigUint::from(1152u32));
    }

    #[test]
    fn certificate_examples() {
        let budget = SearchBudget::default();
        // Eisenstein at 7
        let c = irreducibility_certificate(&tri(4, 2, 7, 7), &budget);
        assert_eq!(c.status, CertStatus::ProvenIrreducible);
        assert_eq!(c.reason, CertReason::Eisenstein(BigUint::from(7u32)));
        // No Eisenstein prime, no mod-p witness: the search must close it.
        let c = irreducibility_certificate(&tri(4, 2, 2, 4), &budget);
        assert_eq!(c.status, CertStatus::ProvenIrreducible);
        assert_eq!(c.reason, CertReason::FactorSearchExhausted);
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2), via the dense-polynomial engine
        // (the trinomial type requires A != 0).
        let f = IntPoly::from_i64(&[4, 0, 0, 0, 1]);
        let c = certify_irreducible(&f, &budget);
        match c.status {
            CertStatus::ProvenReducible(g) => {
                assert_eq!(g.degree(), Some(2));
                assert!(f.div_exact_monic(&g).is_some(), "returned factor must divide");
            }
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn certificate_degenerate_square() {
        // x^4 + 4x^2 + 4 = (x^2+2)^2 has discriminant 0.
        let c = irreducibility_certificate(&tri(4, 2, 4, 4), &SearchBudget::default());
        match c.status {
            CertStatus::ProvenReducible(g) => {
                let f = tri(4, 2, 4, 4).to_intpoly();
                assert!(f.div_exact_monic(&g).is_some());
            }
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn certificate_hard_powerful_coefficients() {
        // Squareful A = B where Eisenstein fails; the mod-p patterns plus
        // the pruned search must still settle everything.
        let budget = SearchBudget::default();
        for (n, m, a) in [(4u32, 2u32, 8i64), (4, 2, 9), (4, 2, 1936), (8, 4, 16), (8, 4, 1024), (6, 2, 72), (6, 3, 125)] {
            let t = tri(n, m, a, a);
            let c = irreducibility_certificate(&t, &budget);
            assert_ne!(c.status, CertStatus::Unknown, "unresolved for {t}");
            if let CertStatus::ProvenReducible(g) = &c.status {
                assert!(t.to_intpoly().div_exact_monic(g).is_some(), "bogus factor for {t}");
            }
        }
    }

    #[test]
    fn certificate_finds_constructed_factorizations() {
        // (x^m + a)(x^m + b) and (x^m + a)(x^{2m} - a x^m + c) are
        // trinomials; the search must come back with an exact divisor.
        let mut state = 0xc0ff_ee11u64;
        let mut rand = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        let budget = SearchBudget::default();
        let mut found = 0;
        for _ in 0..120 {
            let m = (rand() % 3 + 1) as u32;
            let a = rand() % 30 - 15;
            let b = rand() % 30 - 15;
            let f = if rand() % 2 == 0 {
                // needs a+b != 0 and ab != 0 for trinomial shape
                if a + b == 0 || a * b == 0 {
                    continue;
                }
                tri(2 * m, m, a + b, a * b)
            } else {
                let c = rand() % 30 - 15;
                if a == 0 || c == 0 || c == a * a || a * c == 0 {
                    continue;
                }
                tri(3 * m, m, c - a * a, a * c)
            };
            let cert = irreducibility_certificate(&f, &budget);
            match cert.status {
                CertStatus::ProvenReducible(g) => {
                    assert!(
                        f.to_intpoly().div_exact_monic(&g).is_some(),
                        "bogus factor for {f}"
                    );
                    found += 1;
                }
                other => panic!("{f} is reducible by construction, got {other:?}"),
            }
        }
        assert!(found > 60, "too few constructed samples ({found})");
    }

    #[test]
    fn no_irreducible_verdict_with_integer_root() {
        let mut state = 0xfeed_f00du64;
        let mut rand = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let budget = SearchBudget::default();
        for _ in 0..300 {
            let n = (rand() % 7 + 2) as u32;
            let m = (rand() % (n as u64 - 1) + 1) as u32;
            let a = (rand() as i64 % 20) - 10;
            let b = (rand() as i64 % 20) - 10;
            let (a, b) = (if a == 0 { 3 } else { a }, if b == 0 { 5 } else { b });
            let t = tri(n, m, a, b);
            let cert = irreducibility_certificate(&t, &budget);
            if cert.is_irreducible() {
                let f = t.to_intpoly();
                let bb = b.unsigned_abs() as i64;
                for r in -bb..=bb {
                    assert!(
                        !f.eval(&BigInt::from(r)).is_zero(),
                        "{t} has root {r} but was declared irreducible"
                    );
                }
            }
        }
    }
}
