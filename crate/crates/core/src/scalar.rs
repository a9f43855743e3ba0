//! Exact scalars: arbitrary-precision rationals, optionally extended by one
//! square root `sqrt(d)` with `d` a fixed squarefree integer.
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with `a`, `b` rational. Pure rationals are
//! the case `b = 0` and carry no `d` at all, so they combine freely with
//! values from any extension. Two scalars with nonzero irrational parts and
//! *different* `d` must never meet in one computation; arithmetic panics on
//! such a mix rather than silently producing nonsense.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Element of Q or of one quadratic extension Q(sqrt(d)).
///
/// The derived ordering is lexicographic on (a, b, d) — stable for use as a
/// map key, not a numeric order on field elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    a: BigRational,
    /// Coefficient of sqrt(d); zero for plain rationals.
    b: BigRational,
    /// Squarefree, not 0 or 1. Meaningless (normalized to 0) when `b = 0`.
    d: i64,
}

impl Scalar {
    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `a + b*sqrt(d)`. `d` must be squarefree and neither 0 nor 1.
    pub fn quadratic(a: BigRational, b: BigRational, d: i64) -> Self {
        assert!(d != 0 && d != 1 && is_squarefree_int(d), "d must be squarefree, not 0 or 1");
        let mut s = Scalar { a, b, d };
        s.normalize();
        s
    }

    /// sqrt(d) itself as a scalar.
    pub fn sqrt_d(d: i64) -> Self {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational part; panics if the value is genuinely irrational.
    pub fn to_rational(&self) -> BigRational {
        assert!(self.is_rational(), "scalar {self} is not rational");
        self.a.clone()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn root_part(&self) -> &BigRational {
        &self.b
    }

    pub fn extension_d(&self) -> Option<i64> {
        if self.b.is_zero() { None } else { Some(self.d) }
    }

    fn normalize(&mut self) {
        if self.b.is_zero() {
            self.d = 0;
        }
    }

    /// The shared d of two operands, panicking on a genuine mix.
    fn join_d(&self, rhs: &Scalar) -> i64 {
        match (self.extension_d(), rhs.extension_d()) {
            (None, None) => 0,
            (Some(d), None) | (None, Some(d)) => d,
            (Some(d1), Some(d2)) => {
                assert!(d1 == d2, "mixed quadratic extensions: sqrt({d1}) vs sqrt({d2})");
                d1
            }
        }
    }

    /// Galois conjugate a - b*sqrt(d).
    pub fn conj(&self) -> Self {
        Scalar { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm a^2 - d*b^2, a rational number.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        if self.is_rational() {
            return Scalar::from_rational(self.a.recip());
        }
        let n = self.norm();
        assert!(!n.is_zero(), "norm of nonzero element vanished; d is a square?");
        let mut s = Scalar { a: &self.a / &n, b: -(&self.b / &n), d: self.d };
        s.normalize();
        s
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root within the same field, if one exists.
    ///
    /// Over Q this is the perfect-square test. Over Q(sqrt(d)) it solves
    /// (u + v*sqrt(d))^2 = self via the norm.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.is_rational() {
            return rational_sqrt(&self.a).map(Scalar::from_rational);
        }
        // (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 + d v^2 = a, 2uv = b.
        // u^2 is a root of t^2 - a t + d b^2/4, so t = (a +- sqrt(a^2 - d b^2))/2.
        let disc = self.norm();
        let sq = rational_sqrt(&disc)?;
        let two = BigRational::from_integer(BigInt::from(2));
        for sign in [1i64, -1] {
            let t = (&self.a + BigRational::from_integer(BigInt::from(sign)) * &sq) / &two;
            if let Some(u) = rational_sqrt(&t) {
                if !u.is_zero() {
                    let v = &self.b / (&two * &u);
                    let cand = Scalar::quadratic(u, v, self.d);
                    if &(&cand * &cand) == self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    /// True if the value is a nonzero rational square (used for branch tests).
    pub fn is_square(&self) -> bool {
        self.sqrt_exact().is_some()
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Squarefree part of a nonzero rational: the unique squarefree integer d
/// with r = d * (rational square). Requires the numerator and denominator to
/// factor by trial division (fine for the small values this library meets).
pub fn squarefree_part(r: &BigRational) -> i64 {
    assert!(!r.is_zero());
    let prod = r.numer() * r.denom();
    let mut n: BigInt = prod.abs();
    let mut d: i64 = if prod.is_negative() { -1 } else { 1 };
    let mut p = BigInt::from(2);
    let limit = BigInt::from(2_000_000i64);
    while &p * &p <= n {
        if p > limit {
            panic!("squarefree part: value too large to factor by trial division");
        }
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            d *= i64::try_from(&p).expect("prime factor fits i64");
        }
        p += 1;
    }
    if !n.is_one() {
        d *= i64::try_from(&n).expect("prime factor fits i64");
    }
    d
}

fn is_squarefree_int(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 1 {
            return false;
        }
        p += 1;
    }
    true
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

// Debug = Display keeps assertion dumps readable.
impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.join_d(rhs);
        let mut s = Scalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d };
        s.normalize();
        s
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.join_d(rhs);
        let mut s = Scalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d };
        s.normalize();
        s
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let d = self.join_d(rhs);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &dd * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        let mut s = Scalar { a, b, d };
        s.normalize();
        s
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

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

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_frac(n, d)
    }

    #[test]
    fn rational_arithmetic_normalizes() {
        let x = q(2, 4);
        assert_eq!(x, q(1, 2));
        assert_eq!(&x + &q(1, 2), Scalar::one());
        assert_eq!((&x * &q(4, 1)).to_rational(), q(2, 1).to_rational());
    }

    #[test]
    fn quadratic_field_arithmetic() {
        let r5 = Scalar::sqrt_d(5);
        // (1 + sqrt5)(1 - sqrt5) = -4
        let p = &(&Scalar::one() + &r5) * &(&Scalar::one() - &r5);
        assert_eq!(p, Scalar::from_int(-4));
        // inverse: 1/(2 + sqrt5) = -2 + sqrt5 since norm = -1
        let x = &Scalar::from_int(2) + &r5;
        assert_eq!(&x * &x.inv(), Scalar::one());
    }

    #[test]
    #[should_panic(expected = "mixed quadratic extensions")]
    fn mixing_extensions_is_a_hard_error() {
        let _ = &Scalar::sqrt_d(2) + &Scalar::sqrt_d(3);
    }

    #[test]
    fn rationals_embed_in_any_extension() {
        let x = &Scalar::from_int(3) + &Scalar::sqrt_d(7);
        let y = &x - &Scalar::sqrt_d(7);
        assert_eq!(y, Scalar::from_int(3));
        assert!(y.is_rational());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(q(9, 4).sqrt_exact(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-4, 1).sqrt_exact(), None);
        // (1 + sqrt2)^2 = 3 + 2 sqrt2
        let s = Scalar::quadratic(
            BigRational::from_integer(3.into()),
            BigRational::from_integer(2.into()),
            2,
        );
        let r = s.sqrt_exact().expect("is a square in Q(sqrt2)");
        assert_eq!(&r * &r, s);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigRational::from_integer(720.into())), 5);
        assert_eq!(squarefree_part(&BigRational::new(8.into(), 9.into())), 2);
        assert_eq!(squarefree_part(&BigRational::from_integer((-12).into())), -3);
    }
}
