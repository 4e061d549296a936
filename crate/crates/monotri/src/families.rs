//! Exact counting sweeps over A <= X for the monogenic families, the
//! squarefree-value B-search construction, local obstruction scanning, and
//! the density constant c_F.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{self, Effort, Ternary};
use crate::asymptotics::{main_term_family, FamilyMainTerm};
use crate::intpoly::{resultant, IntPoly};
use crate::monogenic::FamilyKind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamiliesError {
    SpecInvalid(String),
    /// A squarefree decision exhausted its budget during a sweep.
    BudgetExhausted { a: u64 },
    /// search_B preconditions violated.
    SearchPrecondition(String),
    /// The prime enumeration hit the 10^9 safety bound.
    SearchExhausted { last_prime: u64 },
    /// density_constant_cF needs a squarefree polynomial.
    NotSquarefreePoly,
}

impl fmt::Display for FamiliesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamiliesError::SpecInvalid(s) => write!(f, "invalid family spec: {s}"),
            FamiliesError::BudgetExhausted { a } => {
                write!(f, "squarefree decision exhausted budget at A = {a}")
            }
            FamiliesError::SearchPrecondition(s) => write!(f, "search_B precondition: {s}"),
            FamiliesError::SearchExhausted { last_prime } => {
                write!(f, "prime search passed the safety bound at p = {last_prime}")
            }
            FamiliesError::NotSquarefreePoly => {
                write!(f, "polynomial has a repeated irreducible factor")
            }
        }
    }
}

impl std::error::Error for FamiliesError {}

/// A family counting request: kind, exponents, sweep bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: u32,
    pub m: u32,
    pub x: u64,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: u32, m: u32, x: u64) -> Result<Self, FamiliesError> {
        if m == 0 || m >= n || !n.is_multiple_of(m) {
            return Err(FamiliesError::SpecInvalid(format!(
                "m = {m} must be a proper divisor of n = {n}"
            )));
        }
        let kappa = arith::squarefree_kernel(m as u64);
        match kind {
            FamilyKind::FirstType => {}
            FamilyKind::SecondType => {
                if 210 % kappa != 0 {
                    return Err(FamiliesError::SpecInvalid(format!(
                        "second type requires kappa | 210, got kappa = {kappa}"
                    )));
                }
            }
            FamilyKind::Kappa2Type => {
                if !(m as u64).is_power_of_two() || m < 2 || n < 4 {
                    return Err(FamiliesError::SpecInvalid(format!(
                        "kappa2 type requires m = 2^k >= 2 and n >= 4, got ({n}, {m})"
                    )));
                }
            }
            FamilyKind::GeneralLemma => {
                return Err(FamiliesError::SpecInvalid(
                    "counting sweeps cover the first, second and kappa2 families only".into(),
                ))
            }
        }
        if x > 1_000_000_000_000 {
            return Err(FamiliesError::SpecInvalid("X above 10^12 is not supported".into()));
        }
        Ok(FamilySpec { kind, n, m, x })
    }

    fn t(&self) -> u64 {
        (self.n / self.m) as u64
    }

    fn kappa(&self) -> u64 {
        arith::squarefree_kernel(self.m as u64)
    }

    /// First member and step of the swept progression.
    fn progression(&self) -> (u64, u64) {
        let kappa = self.kappa();
        match self.kind {
            // A = 0 mod kappa; for kappa = 1 the class is every A >= 1
            // (the tables' convention; see count_family docs).
            FamilyKind::FirstType => (if kappa == 1 { 1 } else { kappa }, kappa),
            FamilyKind::SecondType => {
                let k2 = kappa * kappa;
                (if kappa == 1 { 1 } else { k2 - 1 }, k2)
            }
            FamilyKind::Kappa2Type => (5, 4),
            FamilyKind::GeneralLemma => unreachable!(),
        }
    }
}

/// Exact count plus the rounded-comparison main term.
#[derive(Clone, Debug, PartialEq)]
pub struct CountResult {
    pub kind: FamilyKind,
    pub n: u32,
    pub m: u32,
    pub x: u64,
    pub actual: u64,
    /// Truncated main term; None for the kappa2 family, which has no
    /// attached asymptotic.
    pub main_term: Option<f64>,
}

/// Knobs for the counting sweep.
#[derive(Clone, Copy, Debug)]
pub struct CountConfig {
    /// Sieve threshold: squares of primes <= p0 are sieved by congruence;
    /// the rough part of each survivor goes to the factorizer.
    pub p0: u64,
    /// Worker threads; 0 means all available.
    pub workers: usize,
    /// Euler-product cutoff for the attached main term.
    pub cutoff: u64,
    pub effort: Effort,
    /// Intersect with "disc(f) not squarefree". Only the (n, m) = (2, 1)
    /// family is affected; everywhere else the discriminant is never
    /// squarefree.
    pub nonsquarefree_disc_only: bool,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            p0: 100_000,
            workers: 0,
            cutoff: 10_000_000,
            effort: Effort::default(),
            nonsquarefree_disc_only: false,
        }
    }
}

struct DsieveEntry {
    p: u64,
    p2: u64,
    /// Class of A mod p^2 with p^2 | D(A).
    r2: u64,
}

/// Count {1 <= A <= X : A in the residue class, A squarefree, D(A)
/// squarefree}, with the kappa2 family additionally gated on t != 2 mod 3.
///
/// Matches the bundled reference tables' convention: the class includes A = 1 when
/// kappa = 1 (m = 1), where x^n + x + 1 is monogenic exactly when D is
/// squarefree. With `nonsquarefree_disc_only` the count drops members whose
/// discriminant is squarefree (this only bites for n = 2, m = 1: there
/// disc = +-A D requires an even A, and A = 1 is always dropped).
///
/// The result is independent of p0 and of the worker count: the segmented
/// congruence sieve only decides *where* square divisors are looked for;
/// survivors' rough parts are settled by exact factorization.
pub fn count_family(spec: &FamilySpec, config: &CountConfig) -> Result<CountResult, FamiliesError> {
    // Re-validate (specs are constructible only through new, but cheap).
    let spec = FamilySpec::new(spec.kind, spec.n, spec.m, spec.x)?;
    let t = spec.t();
    let main_term = match spec.kind {
        FamilyKind::FirstType => {
            Some(main_term_family(FamilyMainTerm::FirstType, spec.n, spec.m, spec.x, config.cutoff)
                .expect("validated spec"))
        }
        FamilyKind::SecondType => {
            Some(main_term_family(FamilyMainTerm::SecondType, spec.n, spec.m, spec.x, config.cutoff)
                .expect("validated spec"))
        }
        _ => None,
    };

    if spec.kind == FamilyKind::Kappa2Type && t % 3 == 2 {
        return Ok(CountResult {
            kind: spec.kind,
            n: spec.n,
            m: spec.m,
            x: spec.x,
            actual: 0,
            main_term,
        });
    }

    let (start, step) = spec.progression();
    if start > spec.x {
        return Ok(CountResult {
            kind: spec.kind,
            n: spec.n,
            m: spec.m,
            x: spec.x,
            actual: 0,
            main_term,
        });
    }

    // D(A) = c0 + c1 A with c0 = t^t, c1 = (1-t)^{t-1}.
    let c0 = BigInt::from(t).pow(t as u32);
    let c1 = (BigInt::one() - BigInt::from(t)).pow(t as u32 - 1);

    // Per-prime congruence classes A mod p^2 with p^2 | D(A). Primes
    // dividing c1 never divide D (they cannot divide c0 = t^t).
    let mut dsieve: Vec<DsieveEntry> = Vec::new();
    for &p in arith::trial_primes() {
        if p > config.p0 {
            break;
        }
        let p2 = p * p;
        let c1m = c1.mod_floor(&BigInt::from(p2)).to_u64().unwrap();
        if c1m % p == 0 {
            continue;
        }
        let c0m = c0.mod_floor(&BigInt::from(p2)).to_u64().unwrap();
        let inv = arith::mod_inverse_u64(c1m, p2).expect("c1 invertible mod p^2");
        let r2 = (((p2 - c0m) as u128 * inv as u128) % p2 as u128) as u64;
        dsieve.push(DsieveEntry { p, p2, r2 });
    }

    // Primes for the A-squarefree marking.
    let xsqrt = (spec.x as f64).sqrt() as u64 + 1;
    let a_primes: Vec<u64> =
        arith::trial_primes().iter().copied().take_while(|&p| p <= xsqrt).collect();

    let seg_len: u64 = 1 << 14;
    let segments: Vec<(u64, u64)> = {
        let mut v = Vec::new();
        let mut lo = start;
        while lo <= spec.x {
            let hi = (lo + seg_len - 1).min(spec.x);
            v.push((lo, hi));
            lo = hi + 1;
        }
        v
    };

    let flag_m1 = config.nonsquarefree_disc_only && spec.m == 1;
    let process_segment = |&(lo, hi): &(u64, u64)| -> Result<u64, FamiliesError> {
        // Candidates are the progression members in [lo, hi].
        let first = if lo <= start {
            start
        } else {
            start + (lo - start).div_ceil(step) * step
        };
        if first > hi {
            return Ok(0);
        }
        let count_members = (hi - first) / step + 1;
        let idx_of = |a: u64| -> Option<usize> {
            if a < first || a > hi {
                return None;
            }
            let off = a - first;
            if off.is_multiple_of(step) {
                Some((off / step) as usize)
            } else {
                None
            }
        };
        let mut alive = vec![true; count_members as usize];
        let mut dvals: Vec<BigUint> = Vec::with_capacity(count_members as usize);
        for i in 0..count_members {
            let a = first + i * step;
            let d = (&c0 + &c1 * BigInt::from(a)).magnitude().clone();
            if d.is_zero() {
                alive[i as usize] = false;
            }
            if flag_m1 && (a == 1 || (t == 2 && a % 2 == 1)) {
                alive[i as usize] = false;
            }
            dvals.push(d);
        }

        // A squarefree: kill p^2 | A.
        for &p in &a_primes {
            let p2 = p * p;
            if p2 > hi {
                break;
            }
            let mut a = lo.div_ceil(p2) * p2;
            while a <= hi {
                if let Some(i) = idx_of(a) {
                    alive[i] = false;
                }
                a += p2;
            }
        }

        // D squarefree, small primes: kill p^2 | D, divide out single p | D.
        for e in &dsieve {
            let mut a = if e.r2 == 0 { e.p2 } else { e.r2 };
            if a < lo {
                a += (lo - a).div_ceil(e.p2) * e.p2;
            }
            while a <= hi {
                if let Some(i) = idx_of(a) {
                    alive[i] = false;
                }
                a += e.p2;
            }
            let r1 = e.r2 % e.p;
            let mut a = if r1 == 0 { e.p } else { r1 };
            if a < lo {
                a += (lo - a).div_ceil(e.p) * e.p;
            }
            while a <= hi {
                if let Some(i) = idx_of(a) {
                    if alive[i] {
                        let d = &dvals[i];
                        debug_assert!((d % e.p).is_zero());
                        dvals[i] = d / e.p;
                    }
                }
                a += e.p;
            }
        }

        // Survivors: settle the rough part exactly.
        let mut cnt = 0u64;
        for i in 0..count_members as usize {
            if !alive[i] {
                continue;
            }
            match arith::is_squarefree_rough(&dvals[i], &config.effort) {
                Ternary::True => cnt += 1,
                Ternary::False => {}
                Ternary::Unknown => {
                    return Err(FamiliesError::BudgetExhausted { a: first + i as u64 * step })
                }
            }
        }
        Ok(cnt)
    };

    let actual = if config.workers == 1 {
        let mut acc = 0u64;
        for seg in &segments {
            acc += process_segment(seg)?;
        }
        acc
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            segments
                .par_iter()
                .map(process_segment)
                .try_reduce(|| 0u64, |a, b| Ok(a + b))
        })?
    };

    Ok(CountResult { kind: spec.kind, n: spec.n, m: spec.m, x: spec.x, actual, main_term })
}

/// One emission of the B-search: a prime p > A with F(p) squarefree and
/// the resulting constant term B = p r kappa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub p: u64,
    pub b: u64,
}

/// The squarefree-value form F(x) = t^t x^{t-1} + (1-t)^{t-1} a^t r kappa
/// attached to a B-search instance.
pub fn search_form(n: u32, m: u32, a_coeff: u64, r: u64) -> Result<IntPoly, FamiliesError> {
    let (t, kappa, a_small) = validate_search(n, m, a_coeff, r)?;
    let mut coeffs = vec![BigInt::zero(); t as usize];
    coeffs[0] = (BigInt::one() - BigInt::from(t)).pow(t as u32 - 1)
        * BigInt::from(a_small).pow(t as u32)
        * BigInt::from(r * kappa);
    coeffs[t as usize - 1] = BigInt::from(t).pow(t as u32);
    Ok(IntPoly::new(coeffs))
}

fn validate_search(n: u32, m: u32, a_coeff: u64, r: u64) -> Result<(u64, u64, u64), FamiliesError> {
    if m == 0 || m >= n || !n.is_multiple_of(m) {
        return Err(FamiliesError::SearchPrecondition(format!(
            "m = {m} must be a proper divisor of n = {n}"
        )));
    }
    if !arith::is_prime_u128(r as u128).is_prime() {
        return Err(FamiliesError::SearchPrecondition(format!("r = {r} is not prime")));
    }
    let t = (n / m) as u64;
    let kappa = arith::squarefree_kernel(m as u64);
    if kappa.is_multiple_of(r) {
        return Err(FamiliesError::SearchPrecondition(format!(
            "r = {r} divides kappa = {kappa}"
        )));
    }
    if a_coeff == 0 || !a_coeff.is_multiple_of(r * kappa) {
        return Err(FamiliesError::SearchPrecondition(format!(
            "r kappa = {} must divide A = {a_coeff}",
            r * kappa
        )));
    }
    let a_small = a_coeff / (r * kappa);
    if num_integer::gcd(a_small, t) != 1 {
        return Err(FamiliesError::SearchPrecondition(format!(
            "gcd(A/(r kappa), t) = gcd({a_small}, {t}) != 1"
        )));
    }
    Ok((t, kappa, a_small))
}

const SEARCH_PRIME_BOUND: u64 = 1_000_000_000;

/// Emit the first `how_many` primes p > A (ascending) with F(p) squarefree,
/// paired with B = p r kappa. Every emitted trinomial x^n + A x^m + B
/// satisfies the general lemma, hence is monogenic.
pub fn search_b(
    n: u32,
    m: u32,
    a_coeff: u64,
    r: u64,
    how_many: usize,
) -> Result<Vec<SearchHit>, FamiliesError> {
    let (t, kappa, a_small) = validate_search(n, m, a_coeff, r)?;
    let effort = Effort::default();
    let c = (BigInt::one() - BigInt::from(t)).pow(t as u32 - 1)
        * BigInt::from(a_small).pow(t as u32)
        * BigInt::from(r * kappa);
    let tt = BigInt::from(t).pow(t as u32);

    let mut out = Vec::with_capacity(how_many);
    let mut lo = a_coeff + 1;
    while out.len() < how_many {
        if lo > SEARCH_PRIME_BOUND {
            return Err(FamiliesError::SearchExhausted { last_prime: lo });
        }
        let hi = (lo + (1 << 16) - 1).min(SEARCH_PRIME_BOUND);
        for p in primes_in_range(lo, hi) {
            let fp = &tt * BigInt::from(p).pow(t as u32 - 1) + &c;
            match arith::is_squarefree(&fp, &effort) {
                Ternary::True => {
                    out.push(SearchHit { p, b: p * r * kappa });
                    if out.len() == how_many {
                        break;
                    }
                }
                Ternary::False => {}
                Ternary::Unknown => return Err(FamiliesError::BudgetExhausted { a: p }),
            }
        }
        lo = hi + 1;
    }
    Ok(out)
}

/// Incremental segmented sieve: primes in [lo, hi].
fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    debug_assert!(hi < 1_000_000_000_000);
    let lo = lo.max(2);
    if lo > hi {
        return Vec::new();
    }
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in arith::trial_primes() {
        if p * p > hi {
            break;
        }
        let mut a = (lo.div_ceil(p) * p).max(p * p);
        while a <= hi {
            composite[(a - lo) as usize] = true;
            a += p;
        }
    }
    (0..len)
        .filter(|&i| !composite[i] && lo + i as u64 >= 2)
        .map(|i| lo + i as u64)
        .collect()
}

fn eval_mod(f: &IntPoly, z: u64, modulus: u64) -> u64 {
    debug_assert!(modulus < 1 << 32);
    let mb = BigInt::from(modulus);
    let mut acc = 0u64;
    for c in f.coeffs().iter().rev() {
        let cm = c.mod_floor(&mb).to_u64().unwrap();
        acc = (acc * z + cm) % modulus;
    }
    acc
}

/// All primes q <= q_max at which F has a local obstruction: F(z) = 0
/// (mod q^2) for every unit z mod q^2, by brute force over the units.
pub fn local_obstruction_scan(f: &IntPoly, q_max: u64) -> Vec<u64> {
    assert!(q_max <= 65_535, "obstruction scan caps q_max at 2^16 - 1");
    assert!(!f.is_zero(), "F must be nonzero");
    let mut out = Vec::new();
    for &q in arith::trial_primes().iter().take_while(|&&p| p <= q_max) {
        let q2 = q * q;
        let mut obstructed = true;
        for z in 1..q2 {
            if z % q == 0 {
                continue;
            }
            if eval_mod(f, z, q2) != 0 {
                obstructed = false;
                break;
            }
        }
        if obstructed {
            out.push(q);
        }
    }
    out
}

/// Partial product for the squarefree-value density constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CfEstimate {
    /// prod_{q <= q_max} (1 - rho_F(q^2)/(q(q-1))).
    pub value: f64,
    /// Heuristic tail allowance: deg(F)/q_max bounds the relative mass of
    /// the omitted factors under the usual rho_F(q^2) <= deg F behavior.
    pub tail_bound: f64,
    pub q_max: u64,
}

/// c_F partial product with brute-force unit-root counts rho_F(q^2).
///
/// Requires F squarefree as a polynomial (distinct irreducible factors),
/// checked via disc(F) != 0.
pub fn density_constant_cf(f: &IntPoly, q_max: u64) -> Result<CfEstimate, FamiliesError> {
    assert!(q_max <= 65_535, "density scan caps q_max at 2^16 - 1");
    if f.is_zero() {
        return Err(FamiliesError::NotSquarefreePoly);
    }
    if f.degree().unwrap_or(0) >= 1 && resultant(f, &f.derivative()).is_zero() {
        return Err(FamiliesError::NotSquarefreePoly);
    }
    let mut value = 1.0f64;
    for &q in arith::trial_primes().iter().take_while(|&&p| p <= q_max) {
        let q2 = q * q;
        let mut rho = 0u64;
        for z in 1..q2 {
            if z % q == 0 {
                continue;
            }
            if eval_mod(f, z, q2) == 0 {
                rho += 1;
            }
        }
        value *= 1.0 - rho as f64 / (q * (q - 1)) as f64;
    }
    let deg = f.degree().unwrap_or(0) as f64;
    Ok(CfEstimate { value, tail_bound: deg / q_max as f64, q_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monogenic::{family_criterion, is_monogenic, CriterionOutcome, MonogenicVerdict};
    use crate::trinomial::Trinomial;

    fn cfg(workers: usize) -> CountConfig {
        CountConfig { workers, ..CountConfig::default() }
    }

    #[test]
    fn count_small_spot_checks() {
        // (8,4) first type members <= 60 pinned by the naive oracle:
        // 2, 6, 10, 14, 26, 30, 34, 38, 42, 46.
        let spec = FamilySpec::new(FamilyKind::FirstType, 8, 4, 60).unwrap();
        let res = count_family(&spec, &cfg(1)).unwrap();
        assert_eq!(res.actual, 10);
    }

    #[test]
    fn sieve_equals_direct_loop() {
        // Direct loop: the same predicate per A via plain factorization.
        let effort = Effort::default();
        let direct = |spec: &FamilySpec| -> u64 {
            let t = spec.t();
            let c0 = BigInt::from(t).pow(t as u32);
            let c1 = (BigInt::one() - BigInt::from(t)).pow(t as u32 - 1);
            let (start, step) = spec.progression();
            let mut cnt = 0;
            let mut a = start;
            while a <= spec.x {
                let d = &c0 + &c1 * BigInt::from(a);
                if !d.is_zero()
                    && arith::is_squarefree(&BigInt::from(a), &effort).is_true()
                    && arith::is_squarefree(&d, &effort).is_true()
                {
                    // Tie the predicate to the criterion where it applies.
                    if a >= 2 {
                        let ab = BigInt::from(a);
                        assert_eq!(
                            family_criterion(spec.kind, spec.n, spec.m, &ab, &ab, false, &effort),
                            CriterionOutcome::Holds,
                            "criterion disagrees at A = {a}"
                        );
                    }
                    cnt += 1;
                }
                a += step;
            }
            cnt
        };
        let cases = [
            (FamilyKind::FirstType, 4u32, 2u32),
            (FamilyKind::FirstType, 8, 4),
            (FamilyKind::FirstType, 12, 3),
            (FamilyKind::FirstType, 6, 1),
            (FamilyKind::SecondType, 4, 2),
            (FamilyKind::SecondType, 12, 3),
            (FamilyKind::Kappa2Type, 12, 4),
        ];
        for (kind, n, m) in cases {
            let spec = FamilySpec::new(kind, n, m, 2000).unwrap();
            let sieved = count_family(&spec, &cfg(1)).unwrap().actual;
            assert_eq!(sieved, direct(&spec), "sieve vs direct at ({n},{m},{kind:?})");
        }
    }

    #[test]
    fn worker_and_p0_independence() {
        let spec = FamilySpec::new(FamilyKind::FirstType, 12, 3, 3000).unwrap();
        let base = count_family(&spec, &cfg(1)).unwrap().actual;
        for workers in [2usize, 8] {
            assert_eq!(count_family(&spec, &cfg(workers)).unwrap().actual, base);
        }
        for p0 in [1000u64, 10_000, 100_000] {
            let c = CountConfig { p0, workers: 2, ..CountConfig::default() };
            assert_eq!(count_family(&spec, &c).unwrap().actual, base);
        }
    }

    #[test]
    fn kappa2_gate_counts_zero() {
        // t = 2 = 2 mod 3: the family is empty.
        let spec = FamilySpec::new(FamilyKind::Kappa2Type, 4, 2, 500).unwrap();
        assert_eq!(count_family(&spec, &cfg(1)).unwrap().actual, 0);
        // t = 3: members exist.
        let spec = FamilySpec::new(FamilyKind::Kappa2Type, 6, 2, 500).unwrap();
        assert!(count_family(&spec, &cfg(1)).unwrap().actual > 0);
    }

    #[test]
    fn nonsquarefree_disc_flag_n2() {
        // (n, m) = (2, 1): default counts all monogenic members; the flag
        // keeps even A only (disc = +-A D) and drops A = 1.
        let spec = FamilySpec::new(FamilyKind::FirstType, 2, 1, 300).unwrap();
        let all = count_family(&spec, &cfg(1)).unwrap().actual;
        let flagged = count_family(
            &spec,
            &CountConfig { nonsquarefree_disc_only: true, ..CountConfig::default() },
        )
        .unwrap()
        .actual;
        assert!(flagged < all);
        // Direct check of the flagged semantics.
        let effort = Effort::default();
        let mut want = 0;
        for a in 2..=300u64 {
            if a % 2 != 0 {
                continue;
            }
            let d = BigInt::from(4) - BigInt::from(a);
            if d.is_zero() {
                continue;
            }
            if arith::is_squarefree(&BigInt::from(a), &effort).is_true()
                && arith::is_squarefree(&d, &effort).is_true()
            {
                want += 1;
            }
        }
        assert_eq!(flagged, want);
    }

    #[test]
    fn search_b_known_hits() {
        // (4,2,6,3): first hits p = 7 (B = 42), p = 11 (B = 66).
        let hits = search_b(4, 2, 6, 3, 2).unwrap();
        assert_eq!(hits, vec![SearchHit { p: 7, b: 42 }, SearchHit { p: 11, b: 66 }]);
        // r = 2 divides kappa = 2: precondition error.
        assert!(matches!(
            search_b(4, 2, 6, 2, 1),
            Err(FamiliesError::SearchPrecondition(_))
        ));
        // gcd(A/(r kappa), t) = 2 for (6,3,30,5): precondition error.
        assert!(matches!(
            search_b(6, 3, 30, 5, 1),
            Err(FamiliesError::SearchPrecondition(_))
        ));
    }

    #[test]
    fn search_b_soundness_m3() {
        // Valid m >= 2 instance: every emission is monogenic with
        // non-squarefree discriminant. First hits pinned by the oracle:
        // p = 47, 53, 59, ... with B = 705, 795, 885, ...
        let hits = search_b(6, 3, 45, 5, 3).unwrap();
        assert_eq!(
            hits.iter().map(|h| (h.p, h.b)).collect::<Vec<_>>(),
            vec![(47, 705), (53, 795), (59, 885)]
        );
        let effort = Effort::default();
        for h in &hits {
            let tri =
                Trinomial::new(6, 3, BigInt::from(45), BigInt::from(h.b)).unwrap();
            assert_eq!(is_monogenic(&tri).unwrap(), MonogenicVerdict::Monogenic);
            let disc = crate::trinomial::discriminant_swan(&tri);
            assert!(arith::is_squarefree(&disc, &effort).is_false());
        }
    }

    #[test]
    fn obstruction_scan_examples() {
        // F = 4x - 6: no obstructions up to 50.
        let f = IntPoly::from_i64(&[-6, 4]);
        assert!(local_obstruction_scan(&f, 50).is_empty());
        // F = x^2 - 1 is 0 at both units mod 4: obstructed at 2.
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(local_obstruction_scan(&f, 2), vec![2]);
        // Constant 1 never vanishes.
        let f = IntPoly::from_i64(&[1]);
        assert!(local_obstruction_scan(&f, 50).is_empty());
        // B-search forms never have obstructions.
        let f = search_form(4, 2, 6, 3).unwrap();
        assert!(local_obstruction_scan(&f, 100).is_empty());
        let f = search_form(6, 3, 45, 5).unwrap();
        assert!(local_obstruction_scan(&f, 100).is_empty());
    }

    #[test]
    fn cf_examples() {
        // Obstructed F: the q = 2 factor vanishes, c_F = 0 exactly.
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(density_constant_cf(&f, 100).unwrap().value, 0.0);
        // F = x: units never vanish, all rho = 0.
        let f = IntPoly::from_i64(&[0, 1]);
        assert_eq!(density_constant_cf(&f, 100).unwrap().value, 1.0);
        // F = 4x - 6 at q_max = 100: value pinned by the brute-force
        // unit-root oracle before the build.
        let f = IntPoly::from_i64(&[-6, 4]);
        let est = density_constant_cf(&f, 100).unwrap();
        assert!((est.value - 0.8991368664385351).abs() < 1e-12, "got {}", est.value);
        // Repeated-factor polynomials are rejected.
        let sq = IntPoly::from_i64(&[1, 2, 1]);
        assert!(matches!(
            density_constant_cf(&sq, 10),
            Err(FamiliesError::NotSquarefreePoly)
        ));
    }
}
