//! The full JKS monogenicity decision and the fast family criteria.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, Effort, Ternary};
use crate::polymod::{jks_condition4_polys, poly_gcd};
use crate::trinomial::{
    d_numerator, irreducibility_certificate, CertStatus, SearchBudget, Trinomial, TrinomialError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonogenicError {
    Trinomial(TrinomialError),
    /// jks_prime_test called with a prime not dividing the discriminant.
    PrimeNotInDiscriminant { p: BigUint },
    /// Monogenicity is undefined for reducible polynomials; carries a factor.
    Reducible,
}

impl fmt::Display for MonogenicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonogenicError::Trinomial(e) => write!(f, "{e}"),
            MonogenicError::PrimeNotInDiscriminant { p } => {
                write!(f, "prime {p} does not divide the discriminant")
            }
            MonogenicError::Reducible => write!(f, "polynomial is reducible"),
        }
    }
}

impl std::error::Error for MonogenicError {}

impl From<TrinomialError> for MonogenicError {
    fn from(e: TrinomialError) -> Self {
        MonogenicError::Trinomial(e)
    }
}

/// Verdict of the monogenicity decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonogenicVerdict {
    Monogenic,
    /// Carries a prime dividing the index [O_K : Z[theta]].
    NotMonogenic { witness: BigUint },
    Unknown { reason: UnknownReason },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnknownReason {
    /// The discriminant factorization was incomplete and every known prime
    /// passed the test.
    IncompleteDiscriminantFactorization,
    /// The irreducibility certificate ran out of budget.
    UnresolvedIrreducibility,
}

impl MonogenicVerdict {
    pub fn is_monogenic(&self) -> bool {
        matches!(self, MonogenicVerdict::Monogenic)
    }
}

fn divides(p: &BigInt, v: &BigInt) -> bool {
    (v % p).is_zero()
}

/// Does `p` fail to divide the index [O_K : Z[theta]]? Decided by exactly
/// one of the five JKS conditions; errors if `p` does not divide disc(f).
///
/// The caller is responsible for irreducibility (enforced by
/// `is_monogenic`). Power computations for a1, b1 run mod p^2, never as
/// full integer powers.
pub fn jks_prime_test(tri: &Trinomial, p: &BigUint) -> Result<bool, MonogenicError> {
    let t = tri.t()?;
    let m = tri.m();
    let n = tri.n();
    let pb = BigInt::from(p.clone());
    let p2 = &pb * &pb;
    let a = tri.a();
    let b = tri.b();

    let p_div_a = divides(&pb, a);
    let p_div_b = divides(&pb, b);
    let p_div_m = (BigInt::from(m) % &pb).is_zero();

    // p | disc(f) = ± B^{m-1} m^{tm} N^m with N = t^t B^{t-1} + (1-t)^{t-1} A^t.
    let nval = d_numerator(t, a, b);
    let p_div_disc = (m >= 2 && p_div_b) || p_div_m || divides(&pb, &nval);
    if !p_div_disc {
        return Err(MonogenicError::PrimeNotInDiscriminant { p: p.clone() });
    }

    if p_div_a && p_div_b {
        // (1): p^2 must not divide B.
        return Ok(!(b % &p2).is_zero());
    }
    // Exact divisibility p^j || v for machine-size v; j = 0 when p > v.
    let exact_val = |v: u64| -> u32 {
        match p.to_u64() {
            Some(pu) if v.is_multiple_of(pu) => arith::valuation(&BigUint::from(v), pu),
            _ => 0,
        }
    };

    if p_div_a && !p_div_b {
        // (2): with a2 = A/p and b1 = (B + (-B)^{p^j})/p, p^j || tm, require
        // either p | a2 and p !| b1, or p !| a2 (a2^t B + (-b1)^t).
        let j = exact_val(n as u64); // tm = n
        let pj = pb.pow(j);
        let minus_b = (-b).mod_floor(&p2);
        let pow_term = minus_b.modpow(&pj, &p2);
        let num = (b + pow_term).mod_floor(&p2);
        debug_assert!((&num % &pb).is_zero(), "Fermat guarantees p | B + (-B)^{{p^j}}");
        let b1 = (num / &pb).mod_floor(&pb);
        let a2 = (a / &pb).mod_floor(&pb);
        if a2.is_zero() && !b1.is_zero() {
            return Ok(true);
        }
        let inner = (a2.modpow(&BigInt::from(t), &pb) * b.mod_floor(&pb)
            + (-&b1).mod_floor(&pb).modpow(&BigInt::from(t), &pb))
        .mod_floor(&pb);
        Ok(!(&a2 * inner).mod_floor(&pb).is_zero())
    } else if !p_div_a && p_div_b {
        // (3): with a1 = (A + (-A)^{p^l})/p, p^l || (t-1)m, and b2 = B/p,
        // require either p | a1 and p !| b2, or
        // p !| a1 b2^{m-1} (A a1^{t-1} + (-b2)^{t-1}).
        let l = exact_val((t as u64 - 1) * m as u64);
        let pl = pb.pow(l);
        let minus_a = (-a).mod_floor(&p2);
        let pow_term = minus_a.modpow(&pl, &p2);
        let num = (a + pow_term).mod_floor(&p2);
        debug_assert!((&num % &pb).is_zero());
        let a1 = (num / &pb).mod_floor(&pb);
        let b2 = (b / &pb).mod_floor(&pb);
        if a1.is_zero() && !b2.is_zero() {
            return Ok(true);
        }
        let inner = (a.mod_floor(&pb) * a1.modpow(&BigInt::from(t - 1), &pb)
            + (-&b2).mod_floor(&pb).modpow(&BigInt::from(t - 1), &pb))
        .mod_floor(&pb);
        let prod = (&a1 * b2.modpow(&BigInt::from(m - 1), &pb)).mod_floor(&pb) * inner;
        Ok(!prod.mod_floor(&pb).is_zero())
    } else if p_div_m {
        // (4): G1 and G2 must be coprime mod p.
        let pu = p.to_u64().expect("p | m so p fits u64");
        let (g1, g2) = jks_condition4_polys(n as u64, m as u64, a, b, pu)
            .expect("condition (4) preconditions hold");
        let g = poly_gcd(&g1, &g2).expect("nonzero polynomials");
        Ok(g.is_one())
    } else {
        // (5): p^2 must not divide t^t B^{t-1} + (1-t)^{t-1} A^t.
        Ok(!(&nval % &p2).is_zero())
    }
}

/// Decide monogenicity of an irreducible trinomial by running the JKS test
/// at every prime of disc(f). The discriminant is factored through its
/// closed-form parts B^{m-1} m^{tm} N^m rather than as one huge integer.
pub fn is_monogenic(tri: &Trinomial) -> Result<MonogenicVerdict, MonogenicError> {
    is_monogenic_with(tri, &SearchBudget::default())
}

pub fn is_monogenic_with(
    tri: &Trinomial,
    budget: &SearchBudget,
) -> Result<MonogenicVerdict, MonogenicError> {
    let t = tri.t()?;
    let m = tri.m();

    let cert = irreducibility_certificate(tri, budget);
    match cert.status {
        CertStatus::ProvenIrreducible => {}
        CertStatus::ProvenReducible(_) => return Err(MonogenicError::Reducible),
        CertStatus::Unknown => {
            return Ok(MonogenicVerdict::Unknown {
                reason: UnknownReason::UnresolvedIrreducibility,
            })
        }
    }

    let nval = d_numerator(t, tri.a(), tri.b());
    assert!(
        !nval.is_zero(),
        "irreducible trinomials have nonzero discriminant"
    );

    // Merge the prime factorizations of the discriminant parts.
    let mut exponents: BTreeMap<BigUint, u64> = BTreeMap::new();
    let mut complete = true;
    let mut add_part = |v: &BigInt, mult: u64, complete: &mut bool| {
        if v.magnitude().is_one() {
            return;
        }
        let f = arith::factorize(v, &budget.effort);
        if !f.complete {
            *complete = false;
        }
        for (p, e) in &f.factors {
            *exponents.entry(p.clone()).or_insert(0) += *e as u64 * mult;
        }
    };
    if m >= 2 {
        add_part(tri.b(), m as u64 - 1, &mut complete);
    }
    add_part(&BigInt::from(tri.m()), t as u64 * m as u64, &mut complete);
    add_part(&nval, m as u64, &mut complete);

    for p in exponents.keys() {
        if !jks_prime_test(tri, p)? {
            return Ok(MonogenicVerdict::NotMonogenic { witness: p.clone() });
        }
    }
    if complete {
        Ok(MonogenicVerdict::Monogenic)
    } else {
        Ok(MonogenicVerdict::Unknown {
            reason: UnknownReason::IncompleteDiscriminantFactorization,
        })
    }
}

/// The family shapes for x^n + A x^m + A, plus the general gcd lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// A = B >= 2, A = 0 mod kappa: monogenic iff A and D squarefree.
    FirstType,
    /// A = B >= 2, A = -1 mod kappa^2, kappa | 210: same criterion.
    SecondType,
    /// m = 2^k, A = B >= 5, A = 1 mod 4: criterion plus t != 2 mod 3.
    Kappa2Type,
    /// gcd(A,B) > 1 with kappa | gcd(A,B): B, D squarefree implies
    /// monogenic (one-directional).
    GeneralLemma,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::FirstType => "first-type",
            FamilyKind::SecondType => "second-type",
            FamilyKind::Kappa2Type => "kappa2-type",
            FamilyKind::GeneralLemma => "general-lemma",
        };
        write!(f, "{s}")
    }
}

/// Outcome of a family criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionOutcome {
    /// The criterion holds (for GeneralLemma: monogenic is proven).
    Holds,
    /// The criterion fails; for the iff kinds this proves non-monogenic.
    Fails,
    /// GeneralLemma only: hypothesis test failed, nothing can be concluded.
    NoConclusion,
    /// The kind's structural hypotheses do not apply to these inputs.
    NotApplicable,
    /// A squarefree decision exhausted its budget.
    Unknown,
}

/// Evaluate a family criterion on x^n + A x^m + B. With `negated` the
/// variant x^n - A x^m - A is tested (supported for FirstType, mapping
/// (A, B) to (-A, -A) internally).
pub fn family_criterion(
    kind: FamilyKind,
    n: u32,
    m: u32,
    a: &BigInt,
    b: &BigInt,
    negated: bool,
    effort: &Effort,
) -> CriterionOutcome {
    if m == 0 || m >= n || !n.is_multiple_of(m) {
        return CriterionOutcome::NotApplicable;
    }
    let t = n / m;
    let kappa = arith::squarefree_kernel(m as u64);
    if negated && kind != FamilyKind::FirstType {
        return CriterionOutcome::NotApplicable;
    }

    let sf = |v: &BigInt| -> Ternary {
        if v.is_zero() {
            // Degenerate D: treated as non-squarefree so sweeps skip it.
            Ternary::False
        } else {
            arith::is_squarefree(v, effort)
        }
    };

    match kind {
        FamilyKind::FirstType | FamilyKind::SecondType | FamilyKind::Kappa2Type => {
            if a != b {
                return CriterionOutcome::NotApplicable;
            }
            let a_pos = a;
            if !a_pos.is_positive() {
                return CriterionOutcome::NotApplicable;
            }
            let kb = BigInt::from(kappa);
            match kind {
                FamilyKind::FirstType => {
                    if a_pos < &BigInt::from(2) || !(a_pos % &kb).is_zero() {
                        return CriterionOutcome::NotApplicable;
                    }
                }
                FamilyKind::SecondType => {
                    if 210 % kappa != 0 {
                        return CriterionOutcome::NotApplicable;
                    }
                    let k2 = &kb * &kb;
                    if a_pos < &BigInt::from(2)
                        || a_pos.mod_floor(&k2) != (&k2 - BigInt::one()).mod_floor(&k2)
                    {
                        return CriterionOutcome::NotApplicable;
                    }
                }
                FamilyKind::Kappa2Type => {
                    if !(m as u64).is_power_of_two() || m < 2 || n < 4 {
                        return CriterionOutcome::NotApplicable;
                    }
                    if a_pos < &BigInt::from(5)
                        || a_pos.mod_floor(&BigInt::from(4)) != BigInt::one()
                    {
                        return CriterionOutcome::NotApplicable;
                    }
                }
                FamilyKind::GeneralLemma => unreachable!(),
            }
            let a_eff = if negated { -a_pos } else { a_pos.clone() };
            // D = t^t + (1-t)^{t-1} A for the A = B families.
            let d = BigInt::from(t).pow(t)
                + (BigInt::one() - BigInt::from(t)).pow(t - 1) * &a_eff;
            if kind == FamilyKind::Kappa2Type && t % 3 == 2 {
                return CriterionOutcome::Fails;
            }
            match sf(a_pos).and(sf(&d)) {
                Ternary::True => CriterionOutcome::Holds,
                Ternary::False => CriterionOutcome::Fails,
                Ternary::Unknown => CriterionOutcome::Unknown,
            }
        }
        FamilyKind::GeneralLemma => {
            if negated {
                return CriterionOutcome::NotApplicable;
            }
            if !a.is_positive() || !b.is_positive() {
                return CriterionOutcome::NotApplicable;
            }
            let g = a.gcd(b);
            if g <= BigInt::one() || !(&g % BigInt::from(kappa)).is_zero() {
                return CriterionOutcome::NotApplicable;
            }
            let num = d_numerator(t, a, b);
            let den = g.pow(t - 1);
            let (d, r) = num.div_rem(&den);
            if !r.is_zero() {
                return CriterionOutcome::NotApplicable;
            }
            match sf(b).and(sf(&d)) {
                Ternary::True => CriterionOutcome::Holds,
                Ternary::False => CriterionOutcome::NoConclusion,
                Ternary::Unknown => CriterionOutcome::Unknown,
            }
        }
    }
}
