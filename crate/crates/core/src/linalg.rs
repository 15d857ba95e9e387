//! Exact linear algebra over the rationals and integer characteristic
//! polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

pub type RatMatrix = Vec<Vec<BigRational>>;
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Reduces `m` to reduced row echelon form in place and returns the pivot
/// columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space of `a`.
pub fn kernel(a: &RatMatrix) -> Vec<Vec<BigRational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a x = b` exactly. A system with no solution is reported as
/// inconsistent; one with free variables as underdetermined.
pub fn solve(a: &RatMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return Err(Error::Inconsistent(
            "linear system has no exact solution".into(),
        ));
    }
    if pivots.len() < cols {
        return Err(Error::Underdetermined {
            rank: pivots.len(),
            unknowns: cols,
        });
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Ok(x)
}

/// Characteristic polynomial `det(xI - m)` by Faddeev–LeVerrier, returned
/// as coefficients from the constant term up to the leading 1.
pub fn char_poly(m: &IntMatrix) -> Vec<BigInt> {
    let d = m.len();
    let mut coeffs = vec![BigInt::zero(); d + 1];
    coeffs[d] = BigInt::one();
    let mut mk: IntMatrix = vec![vec![BigInt::zero(); d]; d];
    for k in 1..=d {
        // M_k = A M_{k-1} + c_{d-k+1} I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[d - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let trace: BigInt = (0..d).map(|i| am[i][i].clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[d - k] = q;
    }
    coeffs
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let d = a.len();
    let cols = b.first().map_or(0, |r| r.len());
    (0..d)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    a[i].iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, row)| x * &row[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

pub fn poly_eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn to_mod(x: &BigInt) -> u64 {
    let m = BigInt::from(MODULUS);
    x.mod_floor(&m).to_u64().expect("reduced value fits")
}

/// All integer roots of `coeffs` in `[-bound, bound]`, ascending. Candidates
/// are filtered modulo a large prime and then confirmed exactly.
pub fn integer_roots(coeffs: &[BigInt], bound: u64) -> Vec<BigInt> {
    let modc: Vec<u64> = coeffs.iter().map(to_mod).collect();
    let eval_mod = |x: i64| -> u64 {
        let xm = if x >= 0 {
            x as u64 % MODULUS
        } else {
            MODULUS - ((-x) as u64 % MODULUS)
        };
        modc.iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, xm) + c) % MODULUS)
    };
    let lo = -(bound as i64);
    let hi = bound as i64;
    let mut found: Vec<i64> = (lo..=hi)
        .into_par_iter()
        .filter(|&x| eval_mod(x) == 0)
        .collect();
    found.sort_unstable();
    found
        .into_iter()
        .map(BigInt::from)
        .filter(|x| poly_eval(coeffs, x).is_zero())
        .collect()
}

/// Cauchy-style bound on the magnitude of any root: `1 + max |c_i|` for a
/// monic polynomial.
pub fn root_bound(coeffs: &[BigInt]) -> BigInt {
    let max = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    max + 1
}
