//! Dense univariate polynomials over [`Scalar`].
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and otherwise ends in a nonzero coefficient. Every
//! polynomial carries the name of its indeterminate, purely for display and
//! for catching accidental cross-variable arithmetic.

use crate::error::Error;
use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
    var: &'static str,
}

impl Poly {
    pub fn new(coeffs: Vec<Scalar>, var: &'static str) -> Self {
        let mut p = Poly { coeffs, var };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new(), var: "x" }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c], "x")
    }

    /// The monomial x (with the default variable name).
    pub fn x() -> Self {
        Poly::new(vec![Scalar::zero(), Scalar::one()], "x")
    }

    /// x - r.
    pub fn x_minus(r: &Scalar) -> Self {
        Poly::new(vec![-r, Scalar::one()], "x")
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Scalar::from_int(c)).collect(), "x")
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Scalar]) -> Self {
        let mut p = Poly::one();
        for r in roots {
            p = &p * &Poly::x_minus(r);
        }
        p
    }

    pub fn with_var(mut self, var: &'static str) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with deg 0 = 0 convention for the zero polynomial rejected:
    /// returns None for zero.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() { None } else { Some(self.coeffs.len() - 1) }
    }

    /// Degree treating zero as -infinity is awkward in usize land; this is
    /// the common "zero has degree 0" shortcut for callers that have already
    /// excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &Scalar::from_int(k as i64) * c)
            .collect();
        Poly::new(coeffs, self.var)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect(), self.var)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs, self.var)
    }

    /// Coefficient-reversal x^n * p(1/x) for n = deg p.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(coeffs, self.var)
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.deg();
        let lc_inv = div.leading().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = rem[k].clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            let q = &c * &lc_inv;
            let shift = k - dd;
            for (i, dc) in div.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[shift + i] = &rem[shift + i] - &t;
            }
            quot[shift] = q;
            rem.pop();
        }
        (Poly::new(quot, self.var), Poly::new(rem, self.var))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Poly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() { a } else { a.monic() }
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Scalar) -> usize {
        assert!(!self.is_zero());
        let lin = Poly::x_minus(r).with_var(self.var);
        let mut m = 0;
        let mut p = self.clone();
        loop {
            let (q, rem) = p.div_rem(&lin);
            if rem.is_zero() {
                m += 1;
                p = q;
            } else {
                return m;
            }
        }
    }

    /// True iff gcd(p, p') is constant.
    pub fn squarefree(&self) -> bool {
        assert!(!self.is_zero(), "squarefree test of zero polynomial");
        if self.deg() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one().with_var(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Taylor coefficient of (x - r)^k in the expansion of p around r,
    /// i.e. p^(k)(r) / k!.
    pub fn taylor_coeff(&self, r: &Scalar, k: usize) -> Scalar {
        let mut p = self.clone();
        let mut kfact = Scalar::one();
        for i in 0..k {
            p = p.derivative();
            kfact = &kfact * &Scalar::from_int((i + 1) as i64);
        }
        &p.eval(r) / &kfact
    }

    /// All roots lying in the working field Q (or Q(sqrt(ambient)) when an
    /// ambient extension is given), with multiplicity, together with the
    /// non-split cofactor.
    ///
    /// Rational roots come from the classical divisor search on a cleared
    /// integer model; quadratic factors are additionally resolved by the
    /// quadratic formula whenever their discriminant is a square in the
    /// working field.
    pub fn field_roots(&self, ambient: Option<i64>) -> (Vec<(Scalar, usize)>, Poly) {
        assert!(!self.is_zero());
        let mut p = self.clone();
        let mut roots: Vec<(Scalar, usize)> = Vec::new();
        // x = 0 roots first
        let mut m0 = 0;
        while !p.is_zero() && p.coeff(0).is_zero() && p.deg() >= 1 {
            p = p.div_exact(&Poly::x().with_var(self.var));
            m0 += 1;
        }
        if m0 > 0 {
            roots.push((Scalar::zero(), m0));
        }
        loop {
            if p.deg() == 0 {
                return (roots, p);
            }
            if let Some(r) = find_one_root(&p, ambient) {
                let m = p.root_multiplicity(&r);
                for _ in 0..m {
                    p = p.div_exact(&Poly::x_minus(&r).with_var(self.var));
                }
                roots.push((r, m));
            } else if p.deg() == 2 {
                // quadratic formula within the field
                let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
                let disc = &(&b * &b) - &(&Scalar::from_int(4) * &(&a * &c));
                if let Some(s) = sqrt_in_field(&disc, ambient) {
                    let two_a = &Scalar::from_int(2) * &a;
                    let r1 = &(&(-&b) + &s) / &two_a;
                    let r2 = &(&(-&b) - &s) / &two_a;
                    let m1 = p.root_multiplicity(&r1);
                    if m1 > 0 {
                        roots.push((r1.clone(), m1));
                        for _ in 0..m1 {
                            p = p.div_exact(&Poly::x_minus(&r1).with_var(self.var));
                        }
                    }
                    if !p.is_constant() {
                        let m2 = p.root_multiplicity(&r2);
                        roots.push((r2.clone(), m2));
                        for _ in 0..m2 {
                            p = p.div_exact(&Poly::x_minus(&r2).with_var(self.var));
                        }
                    }
                } else {
                    return (roots, p);
                }
            } else {
                return (roots, p);
            }
        }
    }

    /// Like [`Poly::field_roots`] but requires the polynomial to split completely.
    pub fn split_roots(&self, ambient: Option<i64>) -> Result<Vec<(Scalar, usize)>, Error> {
        let (roots, rest) = self.field_roots(ambient);
        if rest.deg() == 0 {
            Ok(roots)
        } else {
            Err(Error::SupportNotRational)
        }
    }
}

/// Square root of `s` inside Q(sqrt(ambient)), allowing a rational input to
/// acquire a sqrt(ambient) factor.
pub fn sqrt_in_field(s: &Scalar, ambient: Option<i64>) -> Option<Scalar> {
    if let Some(r) = s.sqrt_exact() {
        return Some(r);
    }
    let d = ambient?;
    if s.is_rational() {
        // s = d * q^2  =>  sqrt(s) = q * sqrt(d)
        let q = s.to_rational() / num_rational::BigRational::from_integer(d.into());
        if let Some(root) = crate::scalar::rational_sqrt(&q) {
            return Some(Scalar::quadratic(num_rational::BigRational::from_integer(0.into()), root, d));
        }
    }
    None
}

/// One root in the working field, if any. Rational candidates come from the
/// divisor search on a cleared integer model; over an ambient extension a
/// small-height sweep of u + v*sqrt(d) candidates is tried as well.
fn find_one_root(p: &Poly, ambient: Option<i64>) -> Option<Scalar> {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero as _};
    let all_rational = p.coeffs().iter().all(Scalar::is_rational);
    if all_rational {
        // Clear denominators to an integer polynomial.
        let mut den = BigInt::from(1);
        for c in p.coeffs() {
            den = num_integer::lcm(den, c.to_rational().denom().clone());
        }
        let big_den = num_rational::BigRational::from_integer(den);
        let ints: Vec<BigInt> =
            p.coeffs().iter().map(|c| (c.to_rational() * &big_den).to_integer()).collect();
        let a0 = ints.iter().find(|c| !c.is_zero())?.clone();
        let an = ints.last()?.clone();
        let nd = small_divisors(&a0.abs())?;
        let dd = small_divisors(&an.abs())?;
        for q in &dd {
            for pn in &nd {
                for sign in [1i64, -1] {
                    let cand = Scalar::from_rational(num_rational::BigRational::new(
                        pn * BigInt::from(sign),
                        q.clone(),
                    ));
                    if p.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        if ambient.is_none() {
            return None;
        }
    }
    // Irrational roots: small-height candidate sweep over u + v*sqrt(d).
    let d = p.coeffs().iter().find_map(|c| c.extension_d()).or(ambient)?;
    for den in 1i64..=4 {
        for nu in -12i64..=12 {
            for nv in -12i64..=12 {
                let cand = Scalar::quadratic(
                    num_rational::BigRational::new(nu.into(), den.into()),
                    num_rational::BigRational::new(nv.into(), den.into()),
                    d,
                );
                if p.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// All positive divisors, or None if the number is too large to enumerate.
fn small_divisors(n: &num_bigint::BigInt) -> Option<Vec<num_bigint::BigInt>> {
    use num_bigint::BigInt;
    use num_traits::Zero as _;
    if n.is_zero() {
        return Some(vec![BigInt::from(1)]);
    }
    let limit = BigInt::from(100_000_000i64);
    if n > &limit {
        return None;
    }
    let nn = i64::try_from(n).ok()?;
    let mut out = Vec::new();
    let mut i = 1i64;
    while i * i <= nn {
        if nn % i == 0 {
            out.push(BigInt::from(i));
            out.push(BigInt::from(nn / i));
        }
        i += 1;
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// Sylvester resultant of p and q in their common variable.
///
/// Convention: res(p, q) = lc(p)^deg(q) * prod q(alpha) over the roots of p,
/// equivalently the determinant of the Sylvester matrix with p's coefficient
/// rows first.
pub fn resultant(p: &Poly, q: &Poly) -> Result<Scalar, Error> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::UndefinedResultant);
    }
    let m = p.deg();
    let n = q.deg();
    if m == 0 {
        return Ok(p.leading().pow(n as u32));
    }
    if n == 0 {
        return Ok(q.leading().pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![Scalar::zero(); size]; size];
    for row in 0..n {
        for (k, c) in p.coeffs().iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in q.coeffs().iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    Ok(crate::linalg::determinant(mat))
}

/// Discriminant with the sign convention
/// disc(p) = (-1)^(n(n-1)/2) * res(p, p') / lc(p).
pub fn discriminant(p: &Poly) -> Result<Scalar, Error> {
    let n = p.degree().ok_or(Error::UndefinedResultant)?;
    if n < 1 {
        return Err(Error::UndefinedResultant);
    }
    let r = resultant(p, &p.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    Ok(&(&sign * &r) / &p.leading())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_vars(a: &Poly, b: &Poly) -> &'static str {
    if a.is_constant() {
        return b.var;
    }
    if b.is_constant() {
        return a.var;
    }
    assert!(a.var == b.var, "mixed polynomial variables {} and {}", a.var, b.var);
    a.var
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let var = check_vars(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Poly::new(coeffs, var)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let var = check_vars(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero().with_var(var);
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(coeffs, var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_shared_root_vanishes() {
        // res(x^2 - 1, x - 1) = 0: shared root
        let p = Poly::from_ints(&[-1, 0, 1]);
        let q = Poly::from_ints(&[-1, 1]);
        assert_eq!(resultant(&p, &q).unwrap(), Scalar::zero());
    }

    #[test]
    fn resultant_two_by_two_sylvester() {
        // res(x^2 + 1, x) = 1, by the 3x3 Sylvester determinant
        let p = Poly::from_ints(&[1, 0, 1]);
        let q = Poly::from_ints(&[0, 1]);
        assert_eq!(resultant(&p, &q).unwrap(), Scalar::one());
    }

    #[test]
    fn discriminant_sign_convention() {
        // res(z^2 + c, 2z) = 4c and disc(z^2 + c) = -4c
        for c in [2i64, -3, 7] {
            let p = Poly::from_ints(&[c, 0, 1]);
            let r = resultant(&p, &p.derivative()).unwrap();
            assert_eq!(r, Scalar::from_int(4 * c));
            assert_eq!(discriminant(&p).unwrap(), Scalar::from_int(-4 * c));
        }
        // cubic: disc(z^3 + pz + q) = -4p^3 - 27q^2
        let p = Poly::from_ints(&[5, 3, 0, 1]);
        assert_eq!(discriminant(&p).unwrap(), Scalar::from_int(-4 * 27 - 27 * 25));
    }

    #[test]
    fn squarefree_examples() {
        assert!(Poly::from_ints(&[-1, 0, 1]).squarefree()); // x^2 - 1
        assert!(!Poly::from_ints(&[1, -2, 1]).squarefree()); // (x-1)^2
        assert!(Poly::from_ints(&[-1, 0, 0, 0, 0, 0, 1]).squarefree()); // x^6 - 1
    }

    #[test]
    fn resultant_vanishes_iff_common_factor() {
        // randomized-ish small sweep: gcd nontrivial <=> resultant zero
        let polys: Vec<Poly> = vec![
            Poly::from_ints(&[1, 1]),
            Poly::from_ints(&[-2, 1]),
            Poly::from_ints(&[3, 0, 1]),
            Poly::from_ints(&[0, 1, 2]),
            Poly::from_ints(&[1, 2, 1]),
        ];
        for a in &polys {
            for b in &polys {
                let r = resultant(a, b).unwrap();
                let g = a.gcd(b);
                assert_eq!(r.is_zero(), g.deg() >= 1, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn division_and_roots() {
        let p = Poly::from_roots(&[
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_frac(1, 3),
        ]);
        let (roots, rest) = p.field_roots(None);
        assert_eq!(rest.deg(), 0);
        assert_eq!(roots.len(), 3);
        let q = p.div_exact(&Poly::x_minus(&Scalar::from_int(2)));
        assert_eq!(q.deg(), 2);
    }

    #[test]
    fn quadratic_roots_in_extension() {
        // x^2 - 5 has no roots over Q but splits over Q(sqrt 5)
        let p = &(&Poly::x() * &Poly::x()) - &Poly::constant(Scalar::from_int(5));
        let (roots, rest) = p.field_roots(None);
        assert!(roots.is_empty());
        assert_eq!(rest.deg(), 2);
        let (roots, rest) = p.field_roots(Some(5));
        assert_eq!(roots.len(), 2);
        assert_eq!(rest.deg(), 0);
        assert!(roots.iter().any(|(r, _)| r == &Scalar::sqrt_d(5)));
    }
}
