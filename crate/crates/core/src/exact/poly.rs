//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients, stored low degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Invariant: `coeffs` is empty (the zero polynomial) or its last entry is
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::from_i64(&[1])
    }

    /// `x`.
    pub fn x() -> Self {
        IntPolynomial::from_i64(&[0, 1])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        IntPolynomial::new(c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
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
        IntPolynomial::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        (0..e).fold(IntPolynomial::one(), |acc, _| acc.mul(self))
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &IntPolynomial) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&IntPolynomial::new(vec![c.clone()]));
        }
        acc
    }

    /// Long division over the rationals. Returns `(quotient, remainder)`
    /// with rational coefficients, low degree first.
    pub fn div_rem_rational(
        &self,
        divisor: &IntPolynomial,
    ) -> Result<(Vec<BigRational>, Vec<BigRational>), ExactError> {
        let dd = divisor.degree().ok_or(ExactError::ZeroPolynomial)?;
        let lead = BigRational::from_integer(divisor.coeffs[dd].clone());
        let mut rem: Vec<BigRational> = self.coeffs.iter().cloned().map(BigRational::from_integer).collect();
        let Some(nd) = self.degree() else {
            return Ok((Vec::new(), Vec::new()));
        };
        if nd < dd {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * BigRational::from_integer(d.clone());
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        while quot.last().is_some_and(Zero::is_zero) {
            quot.pop();
        }
        Ok((quot, rem))
    }

    /// Exact division: `Some(q)` iff `divisor * q == self` with `q` having
    /// integer coefficients.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Result<Option<IntPolynomial>, ExactError> {
        let (quot, rem) = self.div_rem_rational(divisor)?;
        if !rem.is_empty() {
            return Ok(None);
        }
        if quot.iter().any(|c| !c.is_integer()) {
            return Ok(None);
        }
        Ok(Some(IntPolynomial::new(
            quot.into_iter().map(|c| c.to_integer()).collect(),
        )))
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Largest `e` with `mu^e | p`. Divides by the primitive part of `mu`, so
/// every quotient stays integral.
pub fn root_multiplicity(p: &IntPolynomial, mu: &IntPolynomial) -> Result<usize, ExactError> {
    if p.is_zero() || mu.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if mu.degree() == Some(0) {
        return Err(ExactError::ConstantDivisor);
    }
    let mu = mu.primitive_part();
    let mut cur = p.clone();
    let mut e = 0;
    while let Some(q) = cur.exact_div(&mu)? {
        cur = q;
        e += 1;
    }
    Ok(e)
}

/// The `m`-th cyclotomic polynomial, `(x^m - 1) / ∏_{d | m, d < m} Φ_d`.
pub fn cyclotomic(m: usize) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic index must be positive");
    let divisors: Vec<usize> = (1..=m).filter(|d| m % d == 0).collect();
    let mut table: Vec<(usize, IntPolynomial)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut phi = IntPolynomial::x_pow_minus_one(d);
        for (e, phi_e) in &table {
            if d % e == 0 {
                phi = phi
                    .exact_div(phi_e)
                    .expect("cyclotomic divisor is nonzero")
                    .expect("cyclotomic factor divides x^d - 1");
            }
        }
        table.push((d, phi));
    }
    table.pop().expect("m has at least one divisor").1
}
