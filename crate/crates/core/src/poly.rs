//! Dense univariate polynomials in `t` over an exact integer scalar.
//!
//! Everything downstream (Schur coefficients `B_lambda(t)`, elementary
//! coefficients `C_lambda(t)`, q-integers and q-factorials) lives in this
//! ring. The scalar is generic over [`Coeff`]; the pipeline instantiates it
//! with [`num_bigint::BigInt`] (see [`crate::TPoly`]) so that coefficients
//! never overflow, but any exact signed integer type works and `i64`/`i128`
//! are handy in tests.
//!
//! Invariants of the representation:
//! - `coeffs[i]` is the coefficient of `t^i`,
//! - the last stored coefficient is nonzero; the empty vector is the zero
//!   polynomial.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{NumAssign, One, Signed, ToPrimitive, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Center;

/// Exact scalar usable as a polynomial coefficient.
///
/// `Ord + Eq` rule out floating point by construction; the blanket impl
/// covers `i64`, `i128`, `BigInt` and anything else that behaves like a
/// signed integer.
pub trait Coeff:
    Clone
    + Ord
    + Eq
    + Zero
    + One
    + NumAssign
    + Signed
    + From<i64>
    + fmt::Display
    + fmt::Debug
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + Ord
        + Eq
        + Zero
        + One
        + NumAssign
        + Signed
        + From<i64>
        + fmt::Display
        + fmt::Debug
        + Send
        + Sync
        + 'static
{
}

/// Polynomial in `t`, dense, canonical (no trailing zeros).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Builds a polynomial from `c_0, c_1, ...`, stripping trailing zeros.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    /// Builds a polynomial from small integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| C::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^i`, zero outside the stored range.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Coefficient sum, i.e. the evaluation at `t = 1`.
    pub fn eval_one(&self) -> C {
        let mut acc = C::zero();
        for c in &self.coeffs {
            acc += c.clone();
        }
        acc
    }

    /// Exact quotient `self / den`; fails unless the remainder is zero.
    pub fn div_exact(&self, den: &Poly<C>) -> Result<Poly<C>, Error> {
        if den.is_zero() {
            return Err(Error::NonPolynomialRatio);
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let (num_deg, den_deg) = (self.coeffs.len() - 1, den.coeffs.len() - 1);
        if num_deg < den_deg {
            return Err(Error::NonPolynomialRatio);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); num_deg - den_deg + 1];
        let lead = &den.coeffs[den_deg];
        for k in (0..quot.len()).rev() {
            let top = rem[k + den_deg].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.clone() / lead.clone();
            if q.clone() * lead.clone() != top {
                return Err(Error::NonPolynomialRatio);
            }
            for (i, d) in den.coeffs.iter().enumerate() {
                rem[k + i] -= q.clone() * d.clone();
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonPolynomialRatio);
        }
        Ok(Poly::from_coeffs(quot))
    }

    /// True iff every coefficient is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// True iff the coefficient of `t^i` equals the coefficient of
    /// `t^(2*center - i)` for all `i`, indices outside the support reading
    /// as zero.
    ///
    /// The center is an exact rational; only integer and half-integer
    /// centers can ever match a nonzero polynomial. Undefined (asserts) on
    /// the zero polynomial.
    pub fn is_palindromic(&self, center: Center) -> bool {
        assert!(
            !self.is_zero(),
            "palindromicity is undefined for the zero polynomial"
        );
        let twice = center * 2;
        if !twice.is_integer() {
            return false;
        }
        let twice = twice.to_integer();
        if twice < 0 {
            return false;
        }
        let twice = twice as usize;
        let deg = self.coeffs.len() - 1;
        (0..=deg.max(twice)).all(|i| {
            let mirror = match twice.checked_sub(i) {
                Some(j) => self.coeff(j),
                None => C::zero(),
            };
            self.coeff(i) == mirror
        })
    }

    /// True iff the coefficients from `t^0` to the degree rise weakly and
    /// then fall weakly. The zero polynomial counts as unimodal.
    pub fn is_unimodal(&self) -> bool {
        let mut falling = false;
        for w in self.coeffs.windows(2) {
            if w[1] < w[0] {
                falling = true;
            } else if w[1] > w[0] && falling {
                return false;
            }
        }
        true
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut coeffs = vec![C::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut coeffs = vec![C::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($($op:ident :: $f:ident),*) => {$(
        impl<C: Coeff> $op for Poly<C> {
            type Output = Poly<C>;
            fn $f(self, rhs: Poly<C>) -> Poly<C> { (&self).$f(&rhs) }
        }
        impl<C: Coeff> $op<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $f(self, rhs: &Poly<C>) -> Poly<C> { (&self).$f(rhs) }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// The q-integer `[n]_t = 1 + t + ... + t^(n-1)`; `[0]_t` is zero.
pub fn q_int<C: Coeff>(n: usize) -> Poly<C> {
    Poly::from_coeffs(vec![C::one(); n])
}

/// The q-factorial `[n]_t! = [1]_t [2]_t ... [n]_t`; `[0]_t!` is the empty
/// product, 1. Its degree is `n(n-1)/2`.
pub fn q_factorial<C: Coeff>(n: usize) -> Poly<C> {
    let mut acc = Poly::one();
    for i in 1..=n {
        acc = &acc * &q_int(i);
    }
    acc
}

/// Exact quotient of q-factorial products,
/// `prod [a]_t! / prod [b]_t!` over `a` in `num` and `b` in `den`.
///
/// Fails with [`Error::NonPolynomialRatio`] when the rational function is
/// not a polynomial, which signals invalid parameters fed to a closed form.
pub fn q_ratio_factorial<C: Coeff>(num: &[usize], den: &[usize]) -> Result<Poly<C>, Error> {
    let mut numerator = Poly::one();
    for &a in num {
        numerator = &numerator * &q_factorial(a);
    }
    let mut denominator = Poly::one();
    for &b in den {
        denominator = &denominator * &q_factorial(b);
    }
    numerator.div_exact(&denominator)
}

/// Inversion generating function of the permutations of a multiset with the
/// given multiplicities: `[n]_t! / prod [c_i]_t!` where `n` is the total.
pub fn multiset_inv_gf<C: Coeff>(multiplicities: &[usize]) -> Poly<C> {
    assert!(!multiplicities.is_empty(), "multiset must be nonempty");
    let n: usize = multiplicities.iter().sum();
    q_ratio_factorial(&[n], multiplicities)
        .expect("multiset inversion ratio is always a polynomial")
}

/// Renders `p` as `c t^a [k1]^e1 [k2]^e2 ...` if trial division by the
/// brackets `[k]_t`, `k = max_bracket..=2`, exhausts it; `None` otherwise.
pub fn q_factored_string<C: Coeff>(p: &Poly<C>, max_bracket: usize) -> Option<String> {
    if p.is_zero() {
        return None;
    }
    let shift = p.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let mut rest = Poly::from_coeffs(p.coeffs[shift..].to_vec());
    let mut brackets: Vec<(usize, usize)> = Vec::new();
    for k in (2..=max_bracket).rev() {
        let bracket = q_int::<C>(k);
        let mut count = 0;
        while let Ok(q) = rest.div_exact(&bracket) {
            rest = q;
            count += 1;
        }
        if count > 0 {
            brackets.push((k, count));
        }
    }
    if rest.degree() != Some(0) {
        return None;
    }
    let content = rest.coeff(0);
    let mut parts: Vec<String> = Vec::new();
    if !content.is_one() {
        parts.push(content.to_string());
    }
    match shift {
        0 => {}
        1 => parts.push("t".into()),
        k => parts.push(format!("t^{k}")),
    }
    brackets.sort();
    for (k, e) in brackets {
        if e == 1 {
            parts.push(format!("[{k}]"));
        } else {
            parts.push(format!("[{k}]^{e}"));
        }
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    Some(parts.join(" "))
}

// JSON form: an array of coefficients, plain integers when they fit in 64
// bits and decimal strings otherwise.
impl Serialize for Poly<BigInt> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly<BigInt> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffSeq;

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Small(i64),
            Large(u64),
            Text(String),
        }

        impl<'de> Visitor<'de> for CoeffSeq {
            type Value = Poly<BigInt>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of integers or decimal strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(repr) = seq.next_element::<Repr>()? {
                    let c = match repr {
                        Repr::Small(v) => BigInt::from(v),
                        Repr::Large(v) => BigInt::from(v),
                        Repr::Text(s) => s
                            .parse::<BigInt>()
                            .map_err(|_| serde::de::Error::custom("bad integer string"))?,
                    };
                    coeffs.push(c);
                }
                Ok(Poly::from_coeffs(coeffs))
            }
        }

        deserializer.deserialize_seq(CoeffSeq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TPoly;

    fn p(coeffs: &[i64]) -> TPoly {
        TPoly::from_ints(coeffs)
    }

    #[test]
    fn q_int_basics() {
        assert_eq!(q_int::<BigInt>(3), p(&[1, 1, 1]));
        assert_eq!(q_int::<BigInt>(0), TPoly::zero());
        assert_eq!(q_int::<BigInt>(1), TPoly::one());
    }

    #[test]
    fn q_factorial_basics() {
        assert_eq!(q_factorial::<BigInt>(2), p(&[1, 1]));
        assert_eq!(q_factorial::<BigInt>(0), TPoly::one());
        // [4]_t! expanded by hand: (1+t)(1+t+t^2)(1+t+t^2+t^3).
        let f4 = q_factorial::<BigInt>(4);
        assert_eq!(f4, p(&[1, 3, 5, 6, 5, 3, 1]));
        assert_eq!(f4.degree(), Some(6));
        assert_eq!(f4.eval_one(), BigInt::from(24));
    }

    #[test]
    fn ring_ops() {
        let two = q_int::<BigInt>(2);
        assert_eq!(&two * &two, p(&[1, 2, 1]));
        assert_eq!(&two - &two, TPoly::zero());
        let four = q_int::<BigInt>(4);
        assert_eq!(&four * &TPoly::one(), four);
    }

    #[test]
    fn ratio_factorial() {
        assert_eq!(
            q_ratio_factorial::<BigInt>(&[2, 2], &[2]).unwrap(),
            q_factorial::<BigInt>(2)
        );
        // Gaussian binomial C(4,2)_t.
        assert_eq!(
            q_ratio_factorial::<BigInt>(&[4], &[2, 2]).unwrap(),
            p(&[1, 1, 2, 1, 1])
        );
        assert_eq!(
            q_ratio_factorial::<BigInt>(&[1], &[2]),
            Err(Error::NonPolynomialRatio)
        );
    }

    #[test]
    fn nonnegativity() {
        assert!(p(&[1, 1]).is_nonnegative());
        assert!(!p(&[1, -1]).is_nonnegative());
        assert!(q_factorial::<BigInt>(5).is_nonnegative());
        assert!(TPoly::zero().is_nonnegative());
    }

    #[test]
    fn palindromicity() {
        let c = |n, d| Center::new(n, d);
        assert!(p(&[0, 1, 1]).is_palindromic(c(3, 2)));
        assert!(!p(&[1, 2]).is_palindromic(c(1, 2)));
        assert!(q_int::<BigInt>(4).is_palindromic(c(3, 2)));
        // Wrong center and non-half-integer center both fail.
        assert!(!q_int::<BigInt>(4).is_palindromic(c(2, 1)));
        assert!(!q_int::<BigInt>(4).is_palindromic(c(3, 4)));
        // Constant about center 0.
        assert!(TPoly::one().is_palindromic(c(0, 1)));
    }

    #[test]
    fn unimodality() {
        assert!(p(&[1, 2, 1]).is_unimodal());
        assert!(!p(&[1, 0, 1]).is_unimodal());
        assert!(q_factorial::<BigInt>(4).is_unimodal());
        assert!(TPoly::zero().is_unimodal());
        assert!(p(&[2, 1, 1]).is_unimodal());
        assert!(!p(&[2, 1, 2]).is_unimodal());
    }

    #[test]
    fn multiset_inversions() {
        assert_eq!(multiset_inv_gf::<BigInt>(&[1, 1]), p(&[1, 1]));
        // All six permutations of {1,1,2,2} by inversion count.
        assert_eq!(multiset_inv_gf::<BigInt>(&[2, 2]), p(&[1, 1, 2, 1, 1]));
        assert_eq!(multiset_inv_gf::<BigInt>(&[3]), TPoly::one());
    }

    #[test]
    fn factorial_recurrence() {
        for n in 1..=20 {
            let expected = &q_factorial::<BigInt>(n - 1) * &q_int::<BigInt>(n);
            assert_eq!(q_factorial::<BigInt>(n), expected);
        }
    }

    #[test]
    fn exact_division_round_trip() {
        let a = q_factorial::<BigInt>(6);
        let b = q_factorial::<BigInt>(4);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(&q * &b, a);
    }

    #[test]
    fn generic_over_small_scalars() {
        // The same operations work over i64; plain structural agreement with
        // the BigInt instantiation on a small case.
        let small = q_factorial::<i64>(5);
        let big = q_factorial::<BigInt>(5);
        let lifted: Vec<BigInt> = small.coeffs().iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(lifted, big.coeffs());
    }

    #[test]
    fn display_and_factoring() {
        assert_eq!(p(&[1, 2, 0, -1]).to_string(), "1 + 2t - t^3");
        assert_eq!(TPoly::zero().to_string(), "0");
        let c = &q_int::<BigInt>(2) * &q_int::<BigInt>(4);
        assert_eq!(q_factored_string(&c, 4).unwrap(), "[2] [4]");
        let d = (&q_int::<BigInt>(2) * &q_int::<BigInt>(2)).shift(1);
        assert_eq!(q_factored_string(&d, 4).unwrap(), "t [2]^2");
        assert_eq!(q_factored_string(&p(&[3]), 4).unwrap(), "3");
        assert_eq!(q_factored_string(&p(&[1, 0, 0, 5]), 8), None);
    }

    #[test]
    fn json_round_trip_with_big_coefficients() {
        let huge: BigInt = BigInt::from(u64::MAX) * BigInt::from(u64::MAX);
        let poly = TPoly::from_coeffs(vec![BigInt::from(1), huge.clone()]);
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(json, format!("[1,\"{huge}\"]"));
        let back: TPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, poly);
    }
}
