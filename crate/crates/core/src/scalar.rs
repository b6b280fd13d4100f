//! Exact scalars: rationals, optionally extended by a single square root.
//!
//! A [`Scalar`] is a value `a + b*sqrt(d)` with `a`, `b` exact rationals and
//! `d` a fixed positive square-free integer.  Plain rationals are the `b = 0`
//! case and carry no `d`.  Two quadratic scalars may only be combined when
//! their discriminants agree; a computation picks one extension field and
//! stays inside it.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Signed;
use num::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact element of Q or of a fixed real quadratic field Q(sqrt(d)).
#[derive(Clone)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    /// Square-free discriminant; `None` in pure rational mode.
    d: Option<u64>,
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Split `n > 0` as `s^2 * m` with `m` square-free.
fn squarefree_split(n: u64) -> (u64, u64) {
    let mut m = n;
    let mut s = 1u64;
    let mut f = 2u64;
    while f * f <= m {
        while m % (f * f) == 0 {
            m /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, m)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: None,
        }
    }

    pub fn one() -> Self {
        Scalar {
            a: BigRational::one(),
            b: BigRational::zero(),
            d: None,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar {
            a: big(v),
            b: BigRational::zero(),
            d: None,
        }
    }

    /// Exact fraction `num/den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
            d: None,
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            d: None,
        }
    }

    /// `a + b*sqrt(d)`.  `d` is reduced to its square-free part.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Self {
        assert!(d >= 2, "discriminant must be >= 2");
        let (s, m) = squarefree_split(d);
        let b = b * big(s as i64);
        if m == 1 {
            return Scalar {
                a: a + b,
                b: BigRational::zero(),
                d: None,
            };
        }
        let mut out = Scalar { a, b, d: Some(m) };
        out.normalize();
        out
    }

    /// Exact `sqrt(n)` for a non-negative integer `n`.
    pub fn sqrt_int(n: u64) -> Self {
        if n == 0 {
            return Scalar::zero();
        }
        let (s, m) = squarefree_split(n);
        if m == 1 {
            Scalar::from_int(s as i64)
        } else {
            Scalar {
                a: BigRational::zero(),
                b: big(s as i64),
                d: Some(m),
            }
        }
    }

    fn normalize(&mut self) {
        if self.b.is_zero() {
            self.d = None;
        }
    }

    /// Discriminant of the surd part, `None` for plain rationals.
    pub fn discriminant(&self) -> Option<u64> {
        self.d
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_none()
    }

    /// The rational value, if the scalar lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn joint_d(&self, other: &Scalar) -> Option<u64> {
        match (self.d, other.d) {
            (None, d) | (d, None) => d,
            (Some(x), Some(y)) => {
                assert!(x == y, "mixed quadratic fields: sqrt({x}) vs sqrt({y})");
                Some(x)
            }
        }
    }

    /// Sign of the real value: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        if self.b.is_zero() {
            return rational_sign(&self.a);
        }
        let d = big(self.d.expect("surd without discriminant") as i64);
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b have opposite signs: compare a^2 with b^2 d.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("division by zero")
    }

    pub fn try_inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Scalar {
                a: self.a.recip(),
                b: BigRational::zero(),
                d: None,
            });
        }
        let d = big(self.d.unwrap() as i64);
        // (a + b√d)^-1 = (a - b√d) / (a^2 - b^2 d); the norm is nonzero since
        // √d is irrational.
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        debug_assert!(!norm.is_zero());
        let mut out = Scalar {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
            d: self.d,
        };
        out.normalize();
        Some(out)
    }

    /// Exact square root, when the value is the square of a rational.
    pub fn sqrt_rational(&self) -> Option<Scalar> {
        let q = self.as_rational()?;
        if q.is_negative() {
            return None;
        }
        let num = q.numer().sqrt();
        let den = q.denom().sqrt();
        if &(&num * &num) == q.numer() && &(&den * &den) == q.denom() {
            Some(Scalar::from_rational(BigRational::new(num, den)))
        } else {
            None
        }
    }

    /// Exact square root inside Q(sqrt(d)): rational square, or `r^2 d`.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        if let Some(r) = self.sqrt_rational() {
            return Some(r);
        }
        let q = self.as_rational()?.clone();
        if q.is_negative() {
            return None;
        }
        // q = r^2 d for rational r and square-free d > 1?
        let (ns, nm) = squarefree_split(u64::try_from(q.numer().magnitude().clone()).ok()?);
        let (ds, dm) = squarefree_split(u64::try_from(q.denom().magnitude().clone()).ok()?);
        // sqrt(nm/dm) = sqrt(nm*dm)/dm
        let combined = nm.checked_mul(dm)?;
        let (cs, cm) = squarefree_split(combined);
        if cm == 1 {
            return None; // already rational, handled above
        }
        let r = BigRational::new(
            BigInt::from(ns) * BigInt::from(cs),
            BigInt::from(ds) * BigInt::from(dm),
        );
        Some(Scalar {
            a: BigRational::zero(),
            b: r,
            d: Some(cm),
        })
    }

    /// Exact n-th root of a rational scalar, when one exists in Q.
    pub fn nth_root_rational(&self, n: u32) -> Option<Scalar> {
        let q = self.as_rational()?;
        if q.is_negative() && n % 2 == 0 {
            return None;
        }
        let num = q.numer().nth_root(n);
        let den = q.denom().nth_root(n);
        if &num_pow(&num, n) == q.numer() && &num_pow(&den, n) == q.denom() {
            Some(Scalar::from_rational(BigRational::new(num, den)))
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let fa = rational_to_f64(&self.a);
        match self.d {
            None => fa,
            Some(d) => fa + rational_to_f64(&self.b) * (d as f64).sqrt(),
        }
    }

    /// Parse `"p/q"` or `"p"` as an exact rational scalar.
    pub fn parse_rational(s: &str) -> Result<Scalar, String> {
        let t = s.trim();
        BigRational::from_str(t)
            .map(Scalar::from_rational)
            .map_err(|e| format!("bad rational {t:?}: {e}"))
    }
}

fn num_pow(x: &BigInt, n: u32) -> BigInt {
    num::traits::Pow::pow(x, n)
}

fn rational_sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncations for very large entries.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            None => write!(f, "{}", self.a),
            Some(d) => {
                if self.a.is_zero() {
                    write!(f, "{}*sqrt({})", self.b, d)
                } else if self.b.is_negative() {
                    write!(f, "{}-{}*sqrt({})", self.a, -&self.b, d)
                } else {
                    write!(f, "{}+{}*sqrt({})", self.a, self.b, d)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.joint_d(rhs);
        let mut out = Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d,
        };
        out.normalize();
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.joint_d(rhs);
        let mut out = Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d,
        };
        out.normalize();
        out
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let d = self.joint_d(rhs);
        let (a, b) = match d {
            None => (&self.a * &rhs.a, BigRational::zero()),
            Some(dv) => {
                let dq = big(dv as i64);
                (
                    &self.a * &rhs.a + &self.b * &rhs.b * dq,
                    &self.a * &rhs.b + &self.b * &rhs.a,
                )
            }
        };
        let mut out = Scalar { a, b, d };
        out.normalize();
        out
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // division via the field inverse
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let x = Scalar::ratio(1, 3);
        let y = Scalar::ratio(1, 6);
        assert_eq!(&x + &y, Scalar::ratio(1, 2));
        assert_eq!(&x - &y, y);
        assert_eq!(&x * &Scalar::from_int(3), Scalar::one());
        assert_eq!(Scalar::one() / x, Scalar::from_int(3));
    }

    #[test]
    fn quadratic_field_closure() {
        // r = (3 + sqrt(5)) / 2 satisfies r + 1/r = 3.
        let r = Scalar::quadratic(
            BigRational::new(3.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
            5,
        );
        let sum = &r + &r.inv();
        assert_eq!(sum, Scalar::from_int(3));
        assert!(r.is_positive());
    }

    #[test]
    fn squarefree_reduction() {
        // sqrt(12) = 2 sqrt(3)
        let s = Scalar::sqrt_int(12);
        assert_eq!(s.discriminant(), Some(3));
        assert_eq!(&s * &s, Scalar::from_int(12));
        assert_eq!(Scalar::sqrt_int(16), Scalar::from_int(4));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic fields")]
    fn mixed_fields_rejected() {
        let _ = Scalar::sqrt_int(2) + Scalar::sqrt_int(3);
    }

    #[test]
    fn sign_of_surd_combinations() {
        // 2 - sqrt(3) > 0,  1 - sqrt(3) < 0,  sqrt(3) - sqrt(3) = 0
        let s3 = Scalar::sqrt_int(3);
        assert_eq!((Scalar::from_int(2) - &s3).signum(), 1);
        assert_eq!((Scalar::from_int(1) - &s3).signum(), -1);
        assert_eq!((&s3 - &s3).signum(), 0);
        assert_eq!((-&s3).signum(), -1);
    }

    #[test]
    fn exact_roots() {
        assert_eq!(
            Scalar::ratio(9, 4).sqrt_rational(),
            Some(Scalar::ratio(3, 2))
        );
        assert_eq!(Scalar::ratio(2, 1).sqrt_rational(), None);
        let r = Scalar::from_int(512 * 512 * 512).nth_root_rational(9);
        assert_eq!(r, Some(Scalar::from_int(8)));
        assert_eq!(
            Scalar::from_int(-27).nth_root_rational(3),
            Some(Scalar::from_int(-3))
        );
        // sqrt(8) = 2 sqrt(2) inside Q(sqrt(2))
        let s = Scalar::from_int(8).sqrt_exact().unwrap();
        assert_eq!(&s * &s, Scalar::from_int(8));
        assert_eq!(s.discriminant(), Some(2));
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(Scalar::zero().try_inv().is_none());
    }
}
