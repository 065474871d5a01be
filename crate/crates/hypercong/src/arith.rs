//! Exact number types: arbitrary-precision rationals, residues with an
//! explicit modulus, and p-adic valuations.
//!
//! Provides:
//!
//! * [`Rational`] — alias for `num_rational::BigRational`, the exact side of
//!   every evaluation.
//! * [`Residue`] — an element of Z/mZ carrying its modulus; mixing moduli in
//!   arithmetic panics rather than silently wrapping.
//! * [`Valuation`] — a finite integer or +infinity (valuation of zero).
//! * [`p_valuation`], [`reduce_mod`], [`mod_inv`] — the bridges between the
//!   two worlds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the [`Rational`] `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Errors from exact/modular arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("denominator {denom} shares a factor with modulus {modulus}")]
    DenominatorNotCoprime { denom: BigInt, modulus: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// A p-adic valuation: finite, or infinite for the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    /// v_p(0); compares greater than every finite valuation.
    Infinite,
}

impl Valuation {
    /// Does this valuation certify `v >= bound`?
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp_val(other))
    }
}

impl Valuation {
    fn cmp_val(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Valuation::Finite)
                .ok_or_else(|| D::Error::custom("valuation out of i64 range")),
            serde_json::Value::String(s) if s == "inf" => Ok(Valuation::Infinite),
            other => Err(D::Error::custom(format!("bad valuation: {other}"))),
        }
    }
}

/// An element of Z/mZ that remembers its modulus.
///
/// Arithmetic between residues of different moduli is a programming error and
/// panics. Values are kept reduced to `0..modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduce `value` into Z/mZ. `modulus` must be at least 2.
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    /// Reduce an arbitrary big integer (possibly negative) into Z/mZ.
    pub fn from_int(n: &BigInt, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = BigInt::from(modulus);
        let v = n.mod_floor(&m);
        Residue {
            value: v.to_u64().expect("reduced value fits in u64"),
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse, if `self` is a unit.
    pub fn inv(self) -> Result<Self, ArithError> {
        mod_inv(self)
    }

    /// Repeated-squaring power.
    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Residue::new(1 % self.modulus, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn check_same(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic between moduli {} and {}",
            self.modulus, other.modulus
        );
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Residue {
            value: s as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        self + (-rhs)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let p = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Residue {
            value: p as u64,
            modulus: self.modulus,
        }
    }
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `x` in Z/mZ, or [`ArithError::NotInvertible`] when
/// `gcd(x, m) > 1`.
pub fn mod_inv(x: Residue) -> Result<Residue, ArithError> {
    let m = x.modulus as i128;
    let (g, s, _) = ext_gcd(x.value as i128, m);
    if g != 1 {
        return Err(ArithError::NotInvertible {
            value: x.value,
            modulus: x.modulus,
        });
    }
    Ok(Residue::new(s.rem_euclid(m) as u64, x.modulus))
}

/// p-adic valuation of a nonzero big integer; `Infinite` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Valuation {
    assert!(p >= 2, "valuation base must be at least 2");
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a rational: `v_p(num) - v_p(den)`, `Infinite` at zero.
///
/// Negative results are meaningful (the input need not be a p-adic integer).
pub fn p_valuation(q: &Rational, p: u64) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    let Valuation::Finite(vn) = int_valuation(q.numer(), p) else {
        unreachable!("nonzero rational has nonzero numerator")
    };
    let Valuation::Finite(vd) = int_valuation(q.denom(), p) else {
        unreachable!("denominator is never zero")
    };
    Valuation::Finite(vn - vd)
}

/// Reduce a rational into Z/mZ: `num * den^{-1} mod m`. Fails when the
/// denominator is not a unit mod `m`.
pub fn reduce_mod(q: &Rational, modulus: u64) -> Result<Residue, ArithError> {
    let den = Residue::from_int(q.denom(), modulus);
    let den_inv = den.inv().map_err(|_| ArithError::DenominatorNotCoprime {
        denom: q.denom().clone(),
        modulus,
    })?;
    Ok(Residue::from_int(q.numer(), modulus) * den_inv)
}

/// Trial-division primality for the small moduli used in sweeps.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Serde adapter serialising a [`Rational`] as its `"n/d"` string form.
pub mod rat_serde {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        Rational::from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Option<Rational>` in the same string form.
pub mod opt_rat_serde {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&q.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        match s {
            None => Ok(None),
            Some(s) => Rational::from_str(&s)
                .map(Some)
                .map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inv_small_cases() {
        assert_eq!(mod_inv(Residue::new(2, 25)).unwrap().value(), 13);
        assert_eq!(mod_inv(Residue::new(1, 7)).unwrap().value(), 1);
        assert_eq!(mod_inv(Residue::new(3, 7)).unwrap().value(), 5);
        assert!(matches!(
            mod_inv(Residue::new(5, 25)),
            Err(ArithError::NotInvertible { value: 5, modulus: 25 })
        ));
        assert!(matches!(
            mod_inv(Residue::new(0, 9)),
            Err(ArithError::NotInvertible { .. })
        ));
    }

    #[test]
    fn residue_ops() {
        let m = 49;
        let a = Residue::new(40, m);
        let b = Residue::new(15, m);
        assert_eq!((a + b).value(), 6);
        assert_eq!((a - b).value(), 25);
        assert_eq!((a * b).value(), (40 * 15) % 49);
        assert_eq!((-Residue::new(0, m)).value(), 0);
        assert_eq!(Residue::new(3, m).pow(0).value(), 1);
        assert_eq!(Residue::new(3, m).pow(5).value(), 243 % 49);
        // Products near u64::MAX must not overflow.
        let big = Residue::new(u64::MAX - 2, u64::MAX - 1);
        assert_eq!((big * big).value(), 1);
    }

    #[test]
    #[should_panic(expected = "residue arithmetic between moduli")]
    fn residue_modulus_mismatch_panics() {
        let _ = Residue::new(1, 7) + Residue::new(1, 11);
    }

    #[test]
    fn from_int_handles_negatives() {
        assert_eq!(Residue::from_int(&BigInt::from(-1), 25).value(), 24);
        assert_eq!(Residue::from_int(&BigInt::from(-50), 25).value(), 0);
        assert_eq!(Residue::from_int(&BigInt::from(7), 5).value(), 2);
    }

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&rat_int(225), 5), Valuation::Finite(2));
        assert_eq!(p_valuation(&rat_int(784), 7), Valuation::Finite(2));
        assert_eq!(p_valuation(&rat_int(0), 5), Valuation::Infinite);
        assert_eq!(p_valuation(&rat(95, 3), 5), Valuation::Finite(1));
        assert_eq!(p_valuation(&rat(1, 5), 5), Valuation::Finite(-1));
        assert_eq!(p_valuation(&rat(-3575, 512), 5), Valuation::Finite(2));
        assert!(Valuation::Infinite > Valuation::Finite(i64::MAX));
        assert!(Valuation::Finite(2).at_least(2));
        assert!(!Valuation::Finite(1).at_least(2));
        assert!(Valuation::Infinite.at_least(1_000_000));
    }

    #[test]
    fn reduce_mod_cases() {
        // -1/2 mod 25: inverse of 2 is 13, so -13 = 12.
        assert_eq!(reduce_mod(&rat(-1, 2), 25).unwrap().value(), 12);
        assert_eq!(reduce_mod(&rat_int(7), 5).unwrap().value(), 2);
        assert_eq!(reduce_mod(&rat(1, 3), 7).unwrap().value(), 5);
        assert!(matches!(
            reduce_mod(&rat(1, 3), 9),
            Err(ArithError::DenominatorNotCoprime { .. })
        ));
    }

    #[test]
    fn reduce_mod_is_a_ring_hom() {
        let xs = [rat(3, 4), rat(-7, 2), rat_int(11), rat(22, 7 * 7)];
        for a in &xs {
            for b in &xs {
                for m in [5u64, 25, 125, 13] {
                    let ra = reduce_mod(a, m).unwrap();
                    let rb = reduce_mod(b, m).unwrap();
                    assert_eq!(reduce_mod(&(a + b), m).unwrap(), ra + rb);
                    assert_eq!(reduce_mod(&(a * b), m).unwrap(), ra * rb);
                }
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn valuation_serde() {
        assert_eq!(serde_json::to_string(&Valuation::Finite(2)).unwrap(), "2");
        assert_eq!(
            serde_json::to_string(&Valuation::Infinite).unwrap(),
            "\"inf\""
        );
        let v: Valuation = serde_json::from_str("-3").unwrap();
        assert_eq!(v, Valuation::Finite(-3));
        let v: Valuation = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(v, Valuation::Infinite);
    }
}
