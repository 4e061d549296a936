//! Dense polynomials over Z: arithmetic, evaluation, exact division, and
//! fraction-free (Bareiss) resultants via the Sylvester matrix.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().collect();
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly { coeffs: c }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new([c])
    }

    /// The trinomial x^n + A x^m + B.
    pub fn trinomial(n: usize, m: usize, a: &BigInt, b: &BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = b.clone();
        coeffs[m] += a;
        coeffs[n] += 1;
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i)),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic divisor; None if the division leaves a
    /// remainder.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.coeffs.len() - 1;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.coeffs.len() <= d {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = std::mem::replace(&mut rem[i], BigInt::zero());
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs[..d].iter().enumerate() {
                let idx = i - d + j;
                rem[idx] -= &q * dc;
            }
            quot[i - d] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigUint {
        self.coeffs
            .iter()
            .fold(BigUint::zero(), |acc, c| acc.gcd(c.magnitude()))
    }

    /// Floor of the 2-norm of the coefficient vector.
    pub fn norm2_floor(&self) -> BigUint {
        self.coeffs
            .iter()
            .fold(BigUint::zero(), |acc, c| acc + c.magnitude() * c.magnitude())
            .sqrt()
    }

    /// Reduce mod a prime, producing a polynomial over Z/pZ.
    pub fn reduce_mod(&self, p: u64) -> crate::polymod::PolyModP {
        let pb = BigInt::from(p);
        crate::polymod::PolyModP::new(
            p,
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64")),
        )
    }
}

/// Primitive pseudo-remainder sequence gcd over Z, normalized to positive
/// leading coefficient and primitive content.
pub fn int_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    fn primitive(p: &IntPoly) -> IntPoly {
        let c = p.content();
        if c.is_zero() || c.is_one() {
            return p.clone();
        }
        let cb = BigInt::from(c);
        IntPoly::new(p.coeffs.iter().map(|x| x / &cb))
    }
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (primitive(f), primitive(g))
    } else {
        (primitive(g), primitive(f))
    };
    while !b.is_zero() {
        // Pseudo-remainder: lc(b)^{da-db+1} a mod b.
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let lc = b.leading();
        let mut rem = a.coeffs.clone();
        for i in (db..=da).rev() {
            let q = std::mem::replace(&mut rem[i], BigInt::zero());
            for c in rem.iter_mut().take(i) {
                *c *= &lc;
            }
            for (j, bc) in b.coeffs[..db].iter().enumerate() {
                rem[i - db + j] -= &q * bc;
            }
        }
        let r = primitive(&IntPoly::new(rem));
        a = b;
        b = r;
    }
    if a.leading().is_negative() {
        IntPoly::new(a.coeffs.iter().map(|c| -c))
    } else {
        a
    }
}

/// Resultant Res(f, g) as the Sylvester determinant, evaluated with the
/// fraction-free Bareiss elimination (all intermediate values stay integral).
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => (a, b),
        // Res(f, 0) = 0 except for constant-vs-zero corner cases.
        _ => return BigInt::zero(),
    };
    if df == 0 && dg == 0 {
        return BigInt::one();
    }
    if df == 0 {
        return f.coeffs[0].pow(dg as u32);
    }
    if dg == 0 {
        return g.coeffs[0].pow(df as u32);
    }
    let n = df + dg;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    // dg rows of f's coefficients, then df rows of g's.
    for (r, row) in m.iter_mut().enumerate().take(dg) {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
    }
    for (r, row) in m.iter_mut().enumerate().skip(dg) {
        let r0 = r - dg;
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            row[r0 + k] = c.clone();
        }
    }

    // Bareiss: m[i][j] <- (m[k][k]*m[i][j] - m[i][k]*m[k][j]) / prev_pivot
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derivative() {
        let f = IntPoly::from_i64(&[9, -3, 0, 1]); // x^3 - 3x + 9
        assert_eq!(f.eval(&BigInt::from(2)), BigInt::from(11));
        assert_eq!(f.derivative(), IntPoly::from_i64(&[-3, 0, 3]));
    }

    #[test]
    fn exact_division() {
        let f = IntPoly::from_i64(&[4, 0, 0, 0, 1]); // x^4 + 4
        let g = IntPoly::from_i64(&[2, 2, 1]); // x^2 + 2x + 2
        let h = IntPoly::from_i64(&[2, -2, 1]); // x^2 - 2x + 2
        assert_eq!(g.mul(&h), f);
        assert_eq!(f.div_exact_monic(&g), Some(h.clone()));
        assert_eq!(f.div_exact_monic(&IntPoly::from_i64(&[1, 1])), None);
    }

    #[test]
    fn resultant_classics() {
        // Res(x^2-1, x-1) = 0 (shared root)
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        let g = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(resultant(&f, &g), BigInt::zero());
        // Res(x^2+1, x-2) = f(2) = 5 up to sign conventions
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let g = IntPoly::from_i64(&[-2, 1]);
        assert_eq!(resultant(&f, &g).magnitude(), &BigUint::from(5u32));
    }

    #[test]
    fn resultant_multiplicative() {
        let f = IntPoly::from_i64(&[1, 3, 1]);
        let g = IntPoly::from_i64(&[-2, 0, 1, 1]);
        let h = IntPoly::from_i64(&[5, 1]);
        let lhs = resultant(&f.mul(&g), &h);
        let rhs = resultant(&f, &h) * resultant(&g, &h);
        assert_eq!(lhs, rhs);
    }
}
