//! Dense univariate polynomials over Q, plus the shifted-parameter series
//! polynomials the congruence proofs revolve around.
//!
//! Provides:
//!
//! * [`PolyQ`] — coefficient vector in ascending degree, no trailing zeros.
//! * [`pochhammer_shift_poly`] — `(m - x)_k` expanded as a polynomial in `x`.
//! * [`psi_poly`] / [`phi_poly`] — the truncated balanced series with all
//!   (respectively one) of its top parameters shifted by `-x`, as an exact
//!   polynomial in the shift variable.

use crate::arith::{rat_int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial over Q, stored densely by ascending degree.
///
/// Invariant: the coefficient vector never ends in a zero, so the zero
/// polynomial is the empty vector and `degree` is `None` exactly for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        PolyQ {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    /// Ascending coefficients (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Coefficient of `x^1`, i.e. the derivative at zero.
    pub fn linear_coeff(&self) -> Rational {
        self.coeff(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyQ::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        PolyQ::from_coeffs(out)
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        self + &(-rhs)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::from_coeffs(out)
    }
}

/// The shifted Pochhammer product `(m - x)_k = prod_{i=0}^{k-1} (m + i - x)`
/// as a polynomial in `x`.
pub fn pochhammer_shift_poly(m: i64, k: u64) -> PolyQ {
    let mut acc = PolyQ::one();
    for i in 0..k {
        let factor = PolyQ::from_coeffs(vec![rat_int(m + i as i64), rat_int(-1)]);
        acc = &acc * &factor;
    }
    acc
}

/// Coefficients of `(c - x)^m` in ascending degree: `C(m,j) c^{m-j} (-1)^j`.
fn binomial_power(c: i64, m: u32) -> Vec<BigInt> {
    let c = BigInt::from(c);
    let mut c_pows = vec![BigInt::one()];
    for _ in 0..m {
        let last = c_pows.last().expect("nonempty") * &c;
        c_pows.push(last);
    }
    let mut binom = BigInt::one();
    let mut out = Vec::with_capacity(m as usize + 1);
    for j in 0..=m as u64 {
        if j > 0 {
            binom = binom * (m as u64 - j + 1) / j;
        }
        let term = &binom * &c_pows[(m as u64 - j) as usize];
        out.push(if j % 2 == 0 { term } else { -term });
    }
    out
}

/// Schoolbook product of two integer coefficient vectors.
fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Shared builder for the shift polynomials: the balanced truncated series
/// with top parameter `2a`, `2r + 1` top slots of which `shifted` carry the
/// `-x` shift, all-ones bottom, truncation `p - 1`:
///
/// `sum_{k=0}^{p-1} (2a - x)_k^shifted (2a)_k^{2r+1-shifted} / (1)_k^{2r+1}`
fn shift_series_poly(p: u64, a: u64, r: u32, shifted: u32) -> PolyQ {
    assert!(a >= 1 && 2 * a < p, "need 1 <= 2a <= p - 1");
    let slots = 2 * r + 1;
    assert!(shifted <= slots);
    // The powered factor (2a - x)_k^shifted grows one expanded binomial
    // power per term; its coefficients are integers, so the heavy products
    // stay gcd-free and only the final per-term scale touches Q.
    let mut sum = PolyQ::zero();
    let mut plain = Rational::one(); // (2a)_k
    let mut kfact = Rational::one(); // k! = (1)_k
    let mut powered = vec![BigInt::one()]; // (2a - x)_k^shifted
    for k in 0..p {
        if k > 0 {
            let i = (k - 1) as i64;
            plain *= rat_int(2 * a as i64 + i);
            kfact *= rat_int(i + 1);
            powered = convolve(&powered, &binomial_power(2 * a as i64 + i, shifted));
        }
        // plain^{slots-shifted} / kfact^{slots}, times the powered factor.
        let mut scalar = Rational::one();
        for _ in 0..(slots - shifted) {
            scalar *= &plain;
        }
        for _ in 0..slots {
            scalar /= &kfact;
        }
        let term = powered
            .iter()
            .map(|c| Rational::from_integer(c.clone()) * &scalar)
            .collect();
        sum = &sum + &PolyQ::from_coeffs(term);
    }
    sum
}

/// `psi(x) = sum_{k=0}^{p-1} (2a - x)_k^{2r+1} / (1)_k^{2r+1}`: every top
/// slot shifted. Needs `1 <= 2a <= p - 1`.
pub fn psi_poly(p: u64, a: u64, r: u32) -> PolyQ {
    shift_series_poly(p, a, r, 2 * r + 1)
}

/// `phi(x) = sum_{k=0}^{p-1} (2a - x)_k (2a)_k^{2r} / (1)_k^{2r+1}`: a single
/// shifted slot. Needs `1 <= 2a <= p - 1`.
pub fn phi_poly(p: u64, a: u64, r: u32) -> PolyQ {
    shift_series_poly(p, a, r, 1)
}
