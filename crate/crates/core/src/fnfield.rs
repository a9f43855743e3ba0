//! Elements of the function field of a hyperelliptic curve y^2 = f(x),
//! represented as (a(x) + b(x)*y) / c(x) with gcd(a, b, c) = 1 and c monic.
//!
//! Arithmetic needs the curve's defining polynomial (to rewrite y^2 as f),
//! so binary operations take the curve as an explicit argument.

use crate::curve::HyperellipticCurve;
use crate::poly::Poly;
use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct FnElt {
    a: Poly,
    b: Poly,
    c: Poly,
}

impl FnElt {
    pub fn new(a: Poly, b: Poly, c: Poly) -> Self {
        assert!(!c.is_zero(), "zero denominator in function-field element");
        let mut u = FnElt { a, b, c };
        u.reduce();
        u
    }

    pub fn zero() -> Self {
        FnElt { a: Poly::zero(), b: Poly::zero(), c: Poly::one() }
    }

    pub fn one() -> Self {
        FnElt { a: Poly::one(), b: Poly::zero(), c: Poly::one() }
    }

    pub fn constant(s: Scalar) -> Self {
        FnElt { a: Poly::constant(s), b: Poly::zero(), c: Poly::one() }
    }

    /// The coordinate function x.
    pub fn x() -> Self {
        FnElt { a: Poly::x(), b: Poly::zero(), c: Poly::one() }
    }

    /// The coordinate function y.
    pub fn y() -> Self {
        FnElt { a: Poly::zero(), b: Poly::one(), c: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        FnElt { a: p, b: Poly::zero(), c: Poly::one() }
    }

    /// Numerator pair (a, b) and denominator c.
    pub fn parts(&self) -> (&Poly, &Poly, &Poly) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn reduce(&mut self) {
        if self.is_zero() {
            self.c = Poly::one();
            return;
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if g.deg() > 0 {
            self.a = self.a.div_exact(&g);
            self.b = self.b.div_exact(&g);
            self.c = self.c.div_exact(&g);
        }
        // normalize c monic, folding the leading coefficient into a and b
        let lc = self.c.leading();
        if !lc.is_one() {
            let inv = lc.inv();
            self.a = self.a.scale(&inv);
            self.b = self.b.scale(&inv);
            self.c = self.c.scale(&inv);
        }
    }

    pub fn add(&self, rhs: &FnElt) -> FnElt {
        let a = &(&self.a * &rhs.c) + &(&rhs.a * &self.c);
        let b = &(&self.b * &rhs.c) + &(&rhs.b * &self.c);
        FnElt::new(a, b, &self.c * &rhs.c)
    }

    pub fn sub(&self, rhs: &FnElt) -> FnElt {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FnElt {
        FnElt { a: -&self.a, b: -&self.b, c: self.c.clone() }
    }

    pub fn mul(&self, rhs: &FnElt, curve: &HyperellipticCurve) -> FnElt {
        let f = curve.f();
        // (a1 + b1 y)(a2 + b2 y) = a1 a2 + b1 b2 f + (a1 b2 + a2 b1) y
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * f);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        FnElt::new(a, b, &self.c * &rhs.c)
    }

    pub fn inv(&self, curve: &HyperellipticCurve) -> FnElt {
        assert!(!self.is_zero(), "inverting zero function");
        // 1/u = c (a - b y) / (a^2 - b^2 f)
        let norm = &(&self.a * &self.a) - &(&(&self.b * &self.b) * curve.f());
        FnElt::new(&self.c * &self.a, -&(&self.c * &self.b), norm)
    }

    pub fn div(&self, rhs: &FnElt, curve: &HyperellipticCurve) -> FnElt {
        self.mul(&rhs.inv(curve), curve)
    }

    pub fn scale(&self, s: &Scalar) -> FnElt {
        FnElt { a: self.a.scale(s), b: self.b.scale(s), c: self.c.clone() }
    }

    pub fn pow(&self, e: usize, curve: &HyperellipticCurve) -> FnElt {
        let mut acc = FnElt::one();
        for _ in 0..e {
            acc = acc.mul(self, curve);
        }
        acc
    }

    /// Hyperelliptic involution y -> -y.
    pub fn sigma(&self) -> FnElt {
        FnElt { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    /// The constant value of this element, if it is a constant function.
    pub fn as_constant(&self) -> Option<Scalar> {
        if !self.b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (q, r) = self.a.div_rem(&self.c);
        if r.is_zero() && q.is_constant() {
            Some(q.coeff(0))
        } else {
            None
        }
    }

    /// Evaluate at an affine x-coordinate (x0, y0); None when the denominator
    /// vanishes there (use valuations for those points).
    pub fn eval_affine(&self, x0: &Scalar, y0: &Scalar) -> Option<Scalar> {
        let den = self.c.eval(x0);
        if den.is_zero() {
            return None;
        }
        let num = &self.a.eval(x0) + &(&self.b.eval(x0) * y0);
        Some(&num / &den)
    }
}

impl fmt::Display for FnElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + ({})*y) / ({})", self.a, self.b, self.c)
    }
}

impl fmt::Debug for FnElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficients expressing `target` in the given basis, if it lies in the span.
pub fn span_coordinates(
    target: &FnElt,
    basis: &[FnElt],
    _curve: &HyperellipticCurve,
) -> Option<Vec<Scalar>> {
    // Common denominator across basis and target.
    let mut common = target.c.clone();
    for v in basis {
        common = poly_lcm(&common, &v.c);
    }
    let clear = |u: &FnElt| -> (Poly, Poly) {
        let m = common.div_exact(&u.c);
        (&u.a * &m, &u.b * &m)
    };
    let (ta, tb) = clear(target);
    let cleared: Vec<(Poly, Poly)> = basis.iter().map(clear).collect();
    let deg_a = cleared.iter().map(|(a, _)| a.deg()).chain([ta.deg()]).max().unwrap_or(0);
    let deg_b = cleared.iter().map(|(_, b)| b.deg()).chain([tb.deg()]).max().unwrap_or(0);
    let to_vec = |a: &Poly, b: &Poly| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(deg_a + deg_b + 2);
        for k in 0..=deg_a {
            v.push(a.coeff(k));
        }
        for k in 0..=deg_b {
            v.push(b.coeff(k));
        }
        v
    };
    let columns: Vec<Vec<Scalar>> = cleared.iter().map(|(a, b)| to_vec(a, b)).collect();
    crate::linalg::in_column_span(&columns, &to_vec(&ta, &tb))
}

pub fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = a.gcd(b);
    (&a.div_exact(&g) * b).monic()
}
