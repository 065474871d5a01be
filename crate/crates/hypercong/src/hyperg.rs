//! Truncated hypergeometric series and their combinatorial ingredients.
//!
//! Provides:
//!
//! * [`Ring`] — the minimal coefficient-ring interface the evaluator needs,
//!   implemented by [`RationalField`] (exact) and [`ResidueRing`] (mod p^e).
//! * [`rising`] — Pochhammer symbol `(x)_k` in any ring.
//! * [`harmonic`] — harmonic numbers `H_n` with `H_{-1} = H_0 = 0`.
//! * [`binomial`] — generalised binomial coefficient over Q.
//! * [`catalan`] — Catalan numbers as big integers.
//! * [`HyperSeriesSpec`] / [`trunc_hyper`] — a truncated series
//!   `F[x_0..x_q; y_1..y_q | z]_n` and its evaluator, which updates each term
//!   from the previous one by a ratio of linear factors.
//! * [`terminating_hyper`] — full sum of a series that terminates because a
//!   top parameter is a nonpositive integer.

use crate::arith::{rat_int, ArithError, Rational, Residue};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Errors from series construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series needs one more top parameter than bottom ({top} top, {bottom} bottom)")]
    BadShape { top: usize, bottom: usize },
    #[error("bottom parameter {param} hits zero at term {term}")]
    ZeroBottomFactor { param: String, term: u64 },
    #[error("no top parameter is a nonpositive integer; series does not terminate")]
    NonTerminating,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The ring operations the series evaluator needs. Elements are owned values;
/// the ring itself carries any context (e.g. the modulus).
pub trait Ring {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Exact division; fails when `b` is not invertible (or zero).
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithError>;
    /// Image of a rational constant in this ring.
    fn inject(&self, q: &Rational) -> Result<Self::Elem, ArithError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Image of a small integer; always succeeds since integers have unit
    /// denominator.
    fn inject_int(&self, n: i64) -> Self::Elem {
        self.inject(&rat_int(n))
            .expect("integers embed in every coefficient ring")
    }
}

/// Exact evaluation over Q.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn div(&self, a: &Rational, b: &Rational) -> Result<Rational, ArithError> {
        if b.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(a / b)
    }
    fn inject(&self, q: &Rational) -> Result<Rational, ArithError> {
        Ok(q.clone())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// Modular evaluation in Z/mZ (m is typically a prime power p^e).
#[derive(Debug, Clone, Copy)]
pub struct ResidueRing {
    pub modulus: u64,
}

impl ResidueRing {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        ResidueRing { modulus }
    }
}

impl Ring for ResidueRing {
    type Elem = Residue;

    fn zero(&self) -> Residue {
        Residue::new(0, self.modulus)
    }
    fn one(&self) -> Residue {
        Residue::new(1, self.modulus)
    }
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        *a + *b
    }
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        *a * *b
    }
    fn div(&self, a: &Residue, b: &Residue) -> Result<Residue, ArithError> {
        Ok(*a * b.inv()?)
    }
    fn inject(&self, q: &Rational) -> Result<Residue, ArithError> {
        crate::arith::reduce_mod(q, self.modulus)
    }
    fn is_zero(&self, a: &Residue) -> bool {
        a.is_zero()
    }
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`, with `(x)_0 = 1`.
pub fn rising<R: Ring>(ring: &R, x: &R::Elem, k: u64) -> R::Elem {
    let mut acc = ring.one();
    let mut cur = x.clone();
    for _ in 0..k {
        acc = ring.mul(&acc, &cur);
        cur = ring.add(&cur, &ring.one());
    }
    acc
}

/// Harmonic number `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
///
/// Also accepts `n = -1` and returns 0, so that weighted sums whose index
/// expression can reach `-1` at the boundary need no special casing.
pub fn harmonic(n: i64) -> Rational {
    assert!(n >= -1, "harmonic number needs n >= -1, got {n}");
    let mut h = Rational::zero();
    for i in 1..=n {
        h += Rational::new(BigInt::one(), BigInt::from(i));
    }
    h
}

/// Generalised binomial coefficient `binom(x, k)` for rational `x`:
/// `x (x-1) ... (x-k+1) / k!`.
pub fn binomial(x: &Rational, k: u64) -> Rational {
    let mut num = Rational::one();
    let mut cur = x.clone();
    for _ in 0..k {
        num *= &cur;
        cur -= Rational::one();
    }
    let mut kfact = BigInt::one();
    for i in 2..=k {
        kfact *= BigInt::from(i);
    }
    num / Rational::from_integer(kfact)
}

/// Catalan number `C_k = binom(2k, k) / (k + 1)` as an exact integer.
pub fn catalan(k: u64) -> BigInt {
    let c = binomial(&rat_int(2 * k as i64), k) / rat_int(k as i64 + 1);
    debug_assert!(c.is_integer());
    c.to_integer()
}

/// A truncated hypergeometric series
/// `F[x_0, ..., x_q; y_1, ..., y_q | z]_n = sum_{k=0}^{n} t_k` with
/// `t_k = (x_0)_k ... (x_q)_k / ((y_1)_k ... (y_q)_k) * z^k / k!`.
///
/// Shape invariant: exactly one more top parameter than bottom.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSeriesSpec {
    top: Vec<Rational>,
    bottom: Vec<Rational>,
    z: Rational,
    n: u64,
}

impl HyperSeriesSpec {
    pub fn new(
        top: Vec<Rational>,
        bottom: Vec<Rational>,
        z: Rational,
        n: u64,
    ) -> Result<Self, SeriesError> {
        if top.len() != bottom.len() + 1 {
            return Err(SeriesError::BadShape {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        Ok(HyperSeriesSpec { top, bottom, z, n })
    }

    /// The balanced special case `F[x, x, ..., x; 1, ..., 1 | 1]_n` with
    /// `slots` copies of `x` on top.
    pub fn balanced_unit(x: Rational, slots: usize, n: u64) -> Self {
        assert!(slots >= 1);
        HyperSeriesSpec {
            top: vec![x; slots],
            bottom: vec![Rational::one(); slots - 1],
            z: Rational::one(),
            n,
        }
    }

    pub fn top(&self) -> &[Rational] {
        &self.top
    }
    pub fn bottom(&self) -> &[Rational] {
        &self.bottom
    }
    pub fn z(&self) -> &Rational {
        &self.z
    }
    pub fn n(&self) -> u64 {
        self.n
    }
}

/// Evaluate a truncated series in `ring`.
///
/// Walks the terms once, updating `t_{k+1} = t_k * prod(x_i + k) /
/// (prod(y_j + k) * (k + 1)) * z`, so the whole truncation costs O(n) ring
/// operations per parameter rather than a fresh Pochhammer product per term.
pub fn trunc_hyper<R: Ring>(spec: &HyperSeriesSpec, ring: &R) -> Result<R::Elem, SeriesError> {
    let mut top: Vec<R::Elem> = spec
        .top
        .iter()
        .map(|q| ring.inject(q))
        .collect::<Result<_, _>>()?;
    let mut bottom: Vec<R::Elem> = spec
        .bottom
        .iter()
        .map(|q| ring.inject(q))
        .collect::<Result<_, _>>()?;
    let z = ring.inject(&spec.z)?;
    let one = ring.one();

    let mut sum = ring.one(); // the k = 0 term is always 1
    let mut term = ring.one();
    for k in 0..spec.n {
        for x in top.iter_mut() {
            term = ring.mul(&term, x);
            *x = ring.add(x, &one);
        }
        term = ring.mul(&term, &z);
        for (j, y) in bottom.iter_mut().enumerate() {
            term = ring.div(&term, y).map_err(|e| match e {
                ArithError::DivisionByZero => SeriesError::ZeroBottomFactor {
                    param: spec.bottom[j].to_string(),
                    term: k + 1,
                },
                other => SeriesError::Arith(other),
            })?;
            *y = ring.add(y, &one);
        }
        term = ring.div(&term, &ring.inject_int(k as i64 + 1))?;
        sum = ring.add(&sum, &term);
    }
    Ok(sum)
}

/// Sum a terminating series exactly: some top parameter must be a nonpositive
/// integer `-a`, making every term beyond `k = a` vanish.
pub fn terminating_hyper(
    top: &[Rational],
    bottom: &[Rational],
    z: &Rational,
) -> Result<Rational, SeriesError> {
    let stop = top
        .iter()
        .filter(|x| x.is_integer() && !x.is_positive())
        .map(|x| (-x.to_integer()).try_into().unwrap_or(u64::MAX))
        .min()
        .ok_or(SeriesError::NonTerminating)?;
    let spec = HyperSeriesSpec::new(top.to_vec(), bottom.to_vec(), z.clone(), stop)?;
    trunc_hyper(&spec, &RationalField)
}
