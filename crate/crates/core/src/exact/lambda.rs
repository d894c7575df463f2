use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::poly::{cyclotomic, IntPolynomial};
use super::ExactError;

/// The eigenvalue `2(1 - cos((2b+1)π/(2q+1)))` named by `(q, b)` with
/// `q ≥ 1`, `0 ≤ b < q`.
///
/// Equality, ordering and hashing use only the reduced ratio `r/s` of
/// `(2b+1)/(2q+1)`, so `(q=4, b=1)` equals `(q=1, b=0)`.
#[derive(Debug, Clone, Copy)]
pub struct LambdaParam {
    q: u64,
    b: u64,
    r: u64,
    s: u64,
}

impl LambdaParam {
    pub fn new(q: u64, b: u64) -> Result<Self, ExactError> {
        if q == 0 || b >= q {
            return Err(ExactError::InvalidLambda { q, b });
        }
        let (num, den) = (2 * b + 1, 2 * q + 1);
        let g = num.gcd(&den);
        Ok(LambdaParam {
            q,
            b,
            r: num / g,
            s: den / g,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Reduced `(r, s)`; both odd and coprime with `0 < r < s`.
    pub fn ratio(&self) -> (u64, u64) {
        (self.r, self.s)
    }

    pub fn value(&self) -> f64 {
        2.0 * (1.0 - (self.r as f64 * PI / self.s as f64).cos())
    }

    /// Minimal polynomial over the rationals: with `β = 2cos(rπ/s)` and
    /// `Φ_{2s}(x) = x^d ψ(x + 1/x)`, the result is `±ψ(2 - x)`, made monic.
    /// Degree `φ(2s)/2`.
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        let phi = cyclotomic(2 * self.s as usize);
        let psi = half_degree_transform(&phi);
        let two_minus_x = IntPolynomial::from_i64(&[2, -1]);
        let mu = psi.compose(&two_minus_x);
        if mu.leading().is_some_and(|c| *c < BigInt::from(0)) {
            mu.scale(&BigInt::from(-1))
        } else {
            mu
        }
    }
}

/// For a palindromic `p` of degree `2d`, the `ψ` of degree `d` with
/// `p(x) = x^d ψ(x + 1/x)`, using `x^k + x^{-k} = D_k(x + 1/x)` where
/// `D_0 = 2`, `D_1 = y`, `D_{k+1} = y D_k - D_{k-1}`.
pub(crate) fn half_degree_transform(p: &IntPolynomial) -> IntPolynomial {
    let deg = p.degree().expect("nonzero polynomial");
    assert!(deg % 2 == 0, "palindromic polynomial of even degree expected");
    let d = deg / 2;
    let y = IntPolynomial::x();
    let mut dickson = vec![IntPolynomial::from_i64(&[2]), y.clone()];
    for k in 1..d {
        let next = y.mul(&dickson[k]).sub(&dickson[k - 1]);
        dickson.push(next);
    }
    let mut psi = IntPolynomial::new(vec![p.coeff(d)]);
    for k in 1..=d {
        debug_assert_eq!(p.coeff(d + k), p.coeff(d - k), "not palindromic");
        psi = psi.add(&dickson[k].scale(&p.coeff(d + k)));
    }
    psi
}

impl PartialEq for LambdaParam {
    fn eq(&self, other: &Self) -> bool {
        self.ratio() == other.ratio()
    }
}

impl Eq for LambdaParam {}

impl Hash for LambdaParam {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ratio().hash(state);
    }
}

impl Ord for LambdaParam {
    /// Ascending by eigenvalue, i.e. by `r/s`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.r as u128 * other.s as u128).cmp(&(other.r as u128 * self.s as u128))
    }
}

impl PartialOrd for LambdaParam {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl LambdaParam {
    /// The parameters `q = (s-1)/2`, `b = (r-1)/2` of the reduced ratio.
    pub fn canonical(&self) -> LambdaParam {
        LambdaParam::new((self.s - 1) / 2, (self.r - 1) / 2).expect("reduced ratio is admissible")
    }
}

impl Serialize for LambdaParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LambdaParam", 4)?;
        st.serialize_field("ratio", &format!("{}/{}", self.r, self.s))?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("value", &self.value())?;
        st.end()
    }
}

impl fmt::Display for LambdaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2(1 - cos({}π/{}))", self.r, self.s)
    }
}
