//! Univariate polynomials in `t` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{fmt_rat, parse_rat};
use crate::error::{Error, Result};

/// Coefficients indexed by degree; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyT {
    coeffs: Vec<BigRational>,
}

impl PolyT {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = PolyT { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        PolyT { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        PolyT::new(vec![c])
    }

    /// Builds `Σ num_k/den · t^k` from small integers.
    pub fn from_ints(num: &[i64], den: i64) -> Self {
        PolyT::new(
            num.iter()
                .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(den)))
                .collect(),
        )
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        PolyT::from_ints(&[0, 1], 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        PolyT::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl Add for &PolyT {
    type Output = PolyT;
    fn add(self, rhs: &PolyT) -> PolyT {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyT::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyT {
    type Output = PolyT;
    fn sub(self, rhs: &PolyT) -> PolyT {
        self + &(-rhs)
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        PolyT {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyT {
    type Output = PolyT;
    fn mul(self, rhs: &PolyT) -> PolyT {
        if self.is_zero() || rhs.is_zero() {
            return PolyT::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyT::new(out)
    }
}

impl fmt::Display for PolyT {
    /// `c0 + c1*t + c2*t^2`, skipping zero coefficients; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_rat(c))?,
                1 => write!(f, "{}*t", fmt_rat(c))?,
                _ => write!(f, "{}*t^{k}", fmt_rat(c))?,
            }
        }
        Ok(())
    }
}

impl FromStr for PolyT {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(s, "empty polynomial"));
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        for term in s.split(" + ") {
            let term = term.trim();
            let (c, k) = match term.split_once('*') {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let k = match rest.trim() {
                        "t" => 1,
                        r => r
                            .strip_prefix("t^")
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::parse(term, "expected `t` or `t^k`"))?,
                    };
                    (c, k)
                }
            };
            let c = parse_rat(c).ok_or_else(|| Error::parse(term, "expected a rational"))?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] += c;
        }
        Ok(PolyT::new(coeffs))
    }
}

impl From<BigRational> for PolyT {
    fn from(c: BigRational) -> Self {
        PolyT::constant(c)
    }
}

impl PolyT {
    pub fn one() -> Self {
        PolyT::constant(BigRational::one())
    }
}
