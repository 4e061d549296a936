//! Exact-arithmetic toolkit for monogenic trinomials x^n + A x^m + B.
//!
//! The crate decides monogenicity from the coefficients alone (the JKS
//! five-condition criterion over the primes of the discriminant), evaluates
//! the fast family criteria for x^n + A x^m + A, counts family members up
//! to a bound with a hybrid congruence sieve, and evaluates the Euler-product
//! main terms to high precision.
//!
//! ```
//! use monotri::{discriminant_swan, is_monogenic, MonogenicVerdict, Trinomial};
//! use num_bigint::BigInt;
//!
//! let f = Trinomial::from_i64(4, 2, 7, 7)?; // x^4 + 7x^2 + 7
//! assert_eq!(discriminant_swan(&f), BigInt::from(49392));
//! assert_eq!(is_monogenic(&f)?, MonogenicVerdict::Monogenic);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod arith;
pub mod asymptotics;
pub mod families;
pub mod intpoly;
pub mod monogenic;
pub mod polymod;
pub mod trinomial;

pub use arith::{factorize, is_squarefree, squarefree_kernel, Effort, Factorization, Ternary};
pub use monogenic::{
    family_criterion, is_monogenic, jks_prime_test, CriterionOutcome, FamilyKind,
    MonogenicVerdict,
};
pub use asymptotics::{
    c_t_period_check, euler_product, main_term_family, main_term_u, prachar_main_term,
    round_half_away, FamilyMainTerm, MainTermParams,
};
pub use families::{
    count_family, density_constant_cf, local_obstruction_scan, search_b, search_form,
    CountConfig, CountResult, FamilySpec,
};
pub use trinomial::{
    d_value, discriminant_resultant_oracle, discriminant_swan, galois_order_bound,
    irreducibility_certificate, IrreducibilityCertificate, SearchBudget, Trinomial,
};
