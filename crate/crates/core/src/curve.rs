//! Hyperelliptic curves y^2 = f(x) with exact points, divisors and
//! valuations.
//!
//! The local parameters are t = x - x0 at an affine non-Weierstrass point,
//! t = y at a Weierstrass point (so x - x_i has valuation 2), and t = 1/x at
//! infinity. In the even-degree model there are two points at infinity,
//! swapped by the hyperelliptic involution, and y has valuation -(g+1) at
//! each; in the odd-degree model there is a single point with v(x) = -2 and
//! v(y) = -(2g+1).

use crate::error::Error;
use crate::fnfield::FnElt;
use crate::poly::{sqrt_in_field, Poly};
use crate::scalar::Scalar;
use crate::series::{series_sqrt, PowerSeries};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfinityModel {
    /// deg f = 2g+1: a single Weierstrass point at infinity.
    OnePoint,
    /// deg f = 2g+2: two points at infinity, swapped by the involution.
    TwoPoints,
}

#[derive(Clone, Debug)]
pub struct HyperellipticCurve {
    f: Poly,
    genus: usize,
    /// Roots of f lying in the working field, fixed order (all of them in the
    /// fully split curves this library mostly works with).
    weierstrass: Vec<Scalar>,
    infinity: InfinityModel,
    /// Ambient quadratic extension shared by all point coordinates.
    field: Option<i64>,
    /// sqrt of the leading coefficient, needed to tell the two points at
    /// infinity apart in the even model.
    sqrt_lc: Option<Scalar>,
}

/// A point of the curve over the working field.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum CurvePoint {
    /// Index into the curve's Weierstrass root list; the point (x_i, 0).
    Weierstrass(usize),
    /// (x0, y0) with y0 nonzero and y0^2 = f(x0).
    Affine(Scalar, Scalar),
    /// The branch at infinity where y / x^(g+1) tends to +sqrt(lc f).
    InfinityPlus,
    InfinityMinus,
    /// The single infinite point of the odd model.
    Infinity,
}

impl CurvePoint {
    pub fn sigma(&self) -> CurvePoint {
        match self {
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y),
            CurvePoint::Weierstrass(i) => CurvePoint::Weierstrass(*i),
            CurvePoint::InfinityPlus => CurvePoint::InfinityMinus,
            CurvePoint::InfinityMinus => CurvePoint::InfinityPlus,
            CurvePoint::Infinity => CurvePoint::Infinity,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(
            self,
            CurvePoint::InfinityPlus | CurvePoint::InfinityMinus | CurvePoint::Infinity
        )
    }

    /// Affine x-coordinate, resolving Weierstrass indices through the curve.
    pub fn x_coord(&self, curve: &HyperellipticCurve) -> Option<Scalar> {
        match self {
            CurvePoint::Affine(x, _) => Some(x.clone()),
            CurvePoint::Weierstrass(i) => Some(curve.weierstrass[*i].clone()),
            _ => None,
        }
    }

    pub fn y_coord(&self) -> Option<Scalar> {
        match self {
            CurvePoint::Affine(_, y) => Some(y.clone()),
            CurvePoint::Weierstrass(_) => Some(Scalar::zero()),
            _ => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Weierstrass(i) => write!(f, "a{}", i + 1),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
            CurvePoint::InfinityPlus => write!(f, "oo+"),
            CurvePoint::InfinityMinus => write!(f, "oo-"),
            CurvePoint::Infinity => write!(f, "oo"),
        }
    }
}

impl HyperellipticCurve {
    /// Build the curve y^2 = f(x). f must be squarefree of degree >= 5.
    pub fn new(f: Poly) -> Result<Self, Error> {
        let deg = f.degree().ok_or(Error::DegreeTooSmall)?;
        if deg < 5 {
            return Err(Error::DegreeTooSmall);
        }
        if !f.squarefree() {
            return Err(Error::SingularModel);
        }
        let genus = (deg - 1) / 2;
        let infinity = if deg % 2 == 0 { InfinityModel::TwoPoints } else { InfinityModel::OnePoint };
        let field = f.coeffs().iter().find_map(|c| c.extension_d());
        let (roots, _rest) = f.field_roots(field);
        let mut weierstrass: Vec<Scalar> = Vec::new();
        for (r, m) in roots {
            debug_assert_eq!(m, 1);
            weierstrass.push(r);
        }
        weierstrass.sort();
        let sqrt_lc = if infinity == InfinityModel::TwoPoints {
            sqrt_in_field(&f.leading(), field)
        } else {
            None
        };
        Ok(HyperellipticCurve { f, genus, weierstrass, infinity, field, sqrt_lc })
    }

    /// Curve with the given rational branch values (monic split model).
    pub fn from_roots(roots: &[i64]) -> Result<Self, Error> {
        let rs: Vec<Scalar> = roots.iter().map(|&r| Scalar::from_int(r)).collect();
        HyperellipticCurve::new(Poly::from_roots(&rs))
    }

    /// Widen the working field to Q(sqrt(d)). All existing points remain
    /// valid; new points with sqrt(d)-coordinates become representable.
    pub fn with_field(mut self, d: i64) -> Self {
        if let Some(existing) = self.field {
            assert!(existing == d, "curve already works over sqrt({existing})");
        }
        self.field = Some(d);
        if self.infinity == InfinityModel::TwoPoints && self.sqrt_lc.is_none() {
            self.sqrt_lc = sqrt_in_field(&self.f.leading(), self.field);
        }
        self
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn infinity_model(&self) -> InfinityModel {
        self.infinity
    }

    pub fn field(&self) -> Option<i64> {
        self.field
    }

    pub fn weierstrass_roots(&self) -> &[Scalar] {
        &self.weierstrass
    }

    /// Number of points at infinity (1 or 2).
    pub fn infinite_points(&self) -> Vec<CurvePoint> {
        match self.infinity {
            InfinityModel::OnePoint => vec![CurvePoint::Infinity],
            InfinityModel::TwoPoints => vec![CurvePoint::InfinityPlus, CurvePoint::InfinityMinus],
        }
    }

    /// The affine point (x0, y0), checked to lie on the curve.
    pub fn affine_point(&self, x0: Scalar, y0: Scalar) -> Result<CurvePoint, Error> {
        if y0.is_zero() {
            // must be a branch point
            return self
                .weierstrass
                .iter()
                .position(|r| r == &x0)
                .map(CurvePoint::Weierstrass)
                .ok_or(Error::PointNotOnCurve);
        }
        if &y0 * &y0 != self.f.eval(&x0) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(CurvePoint::Affine(x0, y0))
    }

    /// Both points of the curve over a non-branch x0, if f(x0) is a square in
    /// the working field.
    pub fn points_over(&self, x0: &Scalar) -> Option<(CurvePoint, CurvePoint)> {
        let v = self.f.eval(x0);
        if v.is_zero() {
            return None;
        }
        let y = sqrt_in_field(&v, self.field)?;
        Some((CurvePoint::Affine(x0.clone(), y.clone()), CurvePoint::Affine(x0.clone(), -&y)))
    }

    /// Canonical divisor div(dx/y): (g-1)(oo+ + oo-) in the even model,
    /// (2g-2) oo in the odd model.
    pub fn canonical_divisor(&self) -> Divisor {
        let g = self.genus as i64;
        let mut d = Divisor::zero();
        match self.infinity {
            InfinityModel::TwoPoints => {
                d.add_point(CurvePoint::InfinityPlus, g - 1);
                d.add_point(CurvePoint::InfinityMinus, g - 1);
            }
            InfinityModel::OnePoint => {
                d.add_point(CurvePoint::Infinity, 2 * g - 2);
            }
        }
        d
    }

    fn sqrt_lc(&self) -> Result<&Scalar, Error> {
        self.sqrt_lc.as_ref().ok_or(Error::LeadingNotSquare)
    }

    /// Series expansion of y in the local parameter t = 1/x at an infinite
    /// point of the even model: y = sign * t^-(g+1) * S(t) with S(0) = sqrt(lc).
    pub(crate) fn y_series_at_infinity_pub(
        &self,
        plus: bool,
        trunc: usize,
    ) -> Result<PowerSeries, Error> {
        self.y_series_at_infinity(plus, trunc)
    }

    fn y_series_at_infinity(&self, plus: bool, trunc: usize) -> Result<PowerSeries, Error> {
        let n = 2 * self.genus + 2;
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            coeffs.push(self.f.coeff(n - k));
        }
        let frev = PowerSeries::new(coeffs, trunc);
        let s0 = if plus { self.sqrt_lc()?.clone() } else { -self.sqrt_lc()? };
        series_sqrt(&frev, &s0)
    }

    /// Valuation of a(x) + b(x) y at a point; a, b not both zero.
    fn val_pair(&self, a: &Poly, b: &Poly, p: &CurvePoint) -> Result<i64, Error> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let g = self.genus as i64;
        match p {
            CurvePoint::Weierstrass(i) => {
                let xi = &self.weierstrass[*i];
                // v(polynomial in x) is even, v(poly * y) is odd: no cancellation.
                let va = if a.is_zero() {
                    i64::MAX
                } else {
                    2 * a.root_multiplicity(xi) as i64
                };
                let vb = if b.is_zero() {
                    i64::MAX
                } else {
                    2 * b.root_multiplicity(xi) as i64 + 1
                };
                Ok(va.min(vb))
            }
            CurvePoint::Affine(x0, y0) => {
                if a.is_zero() {
                    return Ok(b.root_multiplicity(x0) as i64);
                }
                if b.is_zero() {
                    return Ok(a.root_multiplicity(x0) as i64);
                }
                // bound: v_P(a + by) <= mult_{x0}(a^2 - b^2 f)
                let norm = &(a * a) - &(&(b * b) * &self.f);
                debug_assert!(!norm.is_zero());
                let bound = norm.root_multiplicity(x0);
                let trunc = bound + 2;
                let sub = Poly::new(vec![x0.clone(), Scalar::one()], "t");
                let fs = PowerSeries::eval_poly(&self.f, &PowerSeries::from_poly(&sub, trunc));
                let ys = series_sqrt(&fs, y0)?;
                let asr = PowerSeries::eval_poly(a, &PowerSeries::from_poly(&sub, trunc));
                let bsr = PowerSeries::eval_poly(b, &PowerSeries::from_poly(&sub, trunc));
                let total = asr.add(&bsr.mul(&ys));
                match total.valuation() {
                    Some(v) => Ok(v as i64),
                    None => Err(Error::Internal(
                        "local expansion vanished to its provable bound".into(),
                    )),
                }
            }
            CurvePoint::Infinity => {
                let va = if a.is_zero() { i64::MAX } else { -2 * a.deg() as i64 };
                let vb = if b.is_zero() {
                    i64::MAX
                } else {
                    -(2 * b.deg() as i64 + 2 * g + 1)
                };
                Ok(va.min(vb))
            }
            CurvePoint::InfinityPlus | CurvePoint::InfinityMinus => {
                let plus = matches!(p, CurvePoint::InfinityPlus);
                if a.is_zero() {
                    return Ok(-(b.deg() as i64 + g + 1));
                }
                if b.is_zero() {
                    return Ok(-(a.deg() as i64));
                }
                let da = a.deg() as i64;
                let db = b.deg() as i64 + g + 1;
                let m = da.max(db);
                let norm = &(a * a) - &(&(b * b) * &self.f);
                debug_assert!(!norm.is_zero());
                // v_t of t^m (a + by) is at most 2m - deg(norm)
                let bound = 2 * m - norm.deg() as i64;
                let trunc = (bound.max(0) + 2) as usize;
                let ys = self.y_series_at_infinity(plus, trunc)?;
                let mut total = vec![Scalar::zero(); trunc];
                for (j, cj) in a.coeffs().iter().enumerate() {
                    let k = (m - j as i64) as usize;
                    if k < trunc {
                        total[k] = &total[k] + cj;
                    }
                }
                for (j, cj) in b.coeffs().iter().enumerate() {
                    let shift = m - (j as i64 + g + 1);
                    for (l, s) in ys.coeffs().iter().enumerate() {
                        let k = shift + l as i64;
                        if (0..trunc as i64).contains(&k) {
                            total[k as usize] = &total[k as usize] + &(cj * s);
                        }
                    }
                }
                match total.iter().position(|c| !c.is_zero()) {
                    Some(v) => Ok(v as i64 - m),
                    None => Err(Error::Internal(
                        "expansion at infinity vanished to its provable bound".into(),
                    )),
                }
            }
        }
    }

    /// Order of vanishing of u at P (negative at poles).
    pub fn valuation(&self, u: &FnElt, p: &CurvePoint) -> Result<i64, Error> {
        if u.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let (a, b, c) = u.parts();
        let vn = self.val_pair(a, b, p)?;
        let vc = self.val_pair(c, &Poly::zero(), p)?;
        Ok(vn - vc)
    }

    /// Divisor of zeros minus poles; requires the support to split over the
    /// working field. The total degree is always zero.
    pub fn divisor_of(&self, u: &FnElt) -> Result<Divisor, Error> {
        if u.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let (a, b, c) = u.parts();
        let mut div = self.divisor_of_pair(a, b)?;
        let den = self.divisor_of_pair(c, &Poly::zero())?;
        div = div.add(&den.scale(-1));
        Ok(div)
    }

    fn divisor_of_pair(&self, a: &Poly, b: &Poly) -> Result<Divisor, Error> {
        let mut div = Divisor::zero();
        // affine zeros sit above the roots of a^2 - b^2 f (or of a alone when b = 0)
        let norm =
            if b.is_zero() { a.clone() } else { &(a * a) - &(&(b * b) * &self.f) };
        let mut xs: Vec<Scalar> = Vec::new();
        if !norm.is_constant() {
            for (r, _) in norm.split_roots(self.field)? {
                xs.push(r);
            }
        }
        for x0 in xs {
            if let Some(i) = self.weierstrass.iter().position(|r| r == &x0) {
                let v = self.val_pair(a, b, &CurvePoint::Weierstrass(i))?;
                div.add_point(CurvePoint::Weierstrass(i), v);
            } else {
                let y = sqrt_in_field(&self.f.eval(&x0), self.field)
                    .ok_or(Error::SupportNotRational)?;
                for pt in [CurvePoint::Affine(x0.clone(), y.clone()), CurvePoint::Affine(x0.clone(), -&y)] {
                    let v = self.val_pair(a, b, &pt)?;
                    div.add_point(pt, v);
                }
            }
        }
        for pt in self.infinite_points() {
            let v = self.val_pair(a, b, &pt)?;
            div.add_point(pt, v);
        }
        Ok(div)
    }
}

/// Formal integer combination of curve points, with finite support.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    coeffs: BTreeMap<CurvePoint, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor { coeffs: BTreeMap::new() }
    }

    pub fn point(p: CurvePoint) -> Self {
        let mut d = Divisor::zero();
        d.add_point(p, 1);
        d
    }

    pub fn add_point(&mut self, p: CurvePoint, n: i64) {
        use std::collections::btree_map::Entry;
        if n == 0 {
            return;
        }
        match self.coeffs.entry(p) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += n;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(n);
            }
        }
    }

    pub fn add(&self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, n) in &rhs.coeffs {
            out.add_point(p.clone(), *n);
        }
        out
    }

    pub fn sub(&self, rhs: &Divisor) -> Divisor {
        self.add(&rhs.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor { coeffs: self.coeffs.iter().map(|(p, n)| (p.clone(), n * k)).collect() }
    }

    pub fn coeff(&self, p: &CurvePoint) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&n| n >= 0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&CurvePoint, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn sigma(&self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().map(|(p, &n)| (p.sigma(), n)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, n) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *n == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{n}*{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fnfield::FnElt;

    fn sextic() -> HyperellipticCurve {
        HyperellipticCurve::from_roots(&[1, 2, 3, 4, 5, 6]).unwrap()
    }

    #[test]
    fn construction_and_genus() {
        let c = sextic();
        assert_eq!(c.genus(), 2);
        assert_eq!(c.infinity_model(), InfinityModel::TwoPoints);
        assert_eq!(c.weierstrass_roots().len(), 6);

        // x^5 - x: odd model, genus 2
        let odd = HyperellipticCurve::new(Poly::from_ints(&[0, -1, 0, 0, 0, 1])).unwrap();
        assert_eq!(odd.genus(), 2);
        assert_eq!(odd.infinity_model(), InfinityModel::OnePoint);

        let g3 = HyperellipticCurve::from_roots(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(g3.genus(), 3);
    }

    #[test]
    fn non_squarefree_is_singular() {
        let f = Poly::from_roots(&[
            Scalar::from_int(1),
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(4),
        ]);
        assert_eq!(HyperellipticCurve::new(f).unwrap_err(), Error::SingularModel);
    }

    #[test]
    fn valuations_at_weierstrass_points() {
        let c = sextic();
        let a1 = CurvePoint::Weierstrass(0);
        let x_minus_x1 = FnElt::from_poly(Poly::x_minus(&Scalar::from_int(1)));
        assert_eq!(c.valuation(&x_minus_x1, &a1).unwrap(), 2);
        assert_eq!(c.valuation(&FnElt::y(), &a1).unwrap(), 1);
    }

    #[test]
    fn valuations_at_infinity_even_model() {
        let c = sextic();
        // x has a simple pole at each point at infinity, y a triple one (g = 2)
        for p in [CurvePoint::InfinityPlus, CurvePoint::InfinityMinus] {
            assert_eq!(c.valuation(&FnElt::x(), &p).unwrap(), -1);
            assert_eq!(c.valuation(&FnElt::y(), &p).unwrap(), -3);
        }
    }

    #[test]
    fn valuations_at_infinity_odd_model() {
        let odd = HyperellipticCurve::new(Poly::from_ints(&[0, -1, 0, 0, 0, 1])).unwrap();
        assert_eq!(odd.valuation(&FnElt::x(), &CurvePoint::Infinity).unwrap(), -2);
        assert_eq!(odd.valuation(&FnElt::y(), &CurvePoint::Infinity).unwrap(), -5);
    }

    #[test]
    fn divisor_of_coordinate_functions() {
        let c = sextic();
        let d = c.divisor_of(&FnElt::from_poly(Poly::x_minus(&Scalar::from_int(1)))).unwrap();
        assert_eq!(d.coeff(&CurvePoint::Weierstrass(0)), 2);
        assert_eq!(d.coeff(&CurvePoint::InfinityPlus), -1);
        assert_eq!(d.coeff(&CurvePoint::InfinityMinus), -1);
        assert_eq!(d.degree(), 0);

        let dy = c.divisor_of(&FnElt::y()).unwrap();
        for i in 0..6 {
            assert_eq!(dy.coeff(&CurvePoint::Weierstrass(i)), 1);
        }
        assert_eq!(dy.coeff(&CurvePoint::InfinityPlus), -3);
        assert_eq!(dy.coeff(&CurvePoint::InfinityMinus), -3);
        assert_eq!(dy.degree(), 0);

        let dc = c.divisor_of(&FnElt::constant(Scalar::from_int(7))).unwrap();
        assert!(dc.is_zero());
    }

    #[test]
    fn canonical_divisor_degree() {
        let c = sextic();
        let k = c.canonical_divisor();
        assert_eq!(k.coeff(&CurvePoint::InfinityPlus), 1);
        assert_eq!(k.coeff(&CurvePoint::InfinityMinus), 1);
        assert_eq!(k.degree(), 2);

        let g3 = HyperellipticCurve::from_roots(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(g3.canonical_divisor().coeff(&CurvePoint::InfinityPlus), 2);
        assert_eq!(g3.canonical_divisor().degree(), 4);

        let odd = HyperellipticCurve::new(Poly::from_ints(&[0, -1, 0, 0, 0, 1])).unwrap();
        assert_eq!(odd.canonical_divisor().coeff(&CurvePoint::Infinity), 2);
    }

    #[test]
    fn affine_point_validation() {
        // y^2 = f with a known rational point: roots (-2,1,4,5,6,8), f(2) = 576
        let c = HyperellipticCurve::from_roots(&[-2, 1, 4, 5, 6, 8]).unwrap();
        let p = c.affine_point(Scalar::from_int(2), Scalar::from_int(24)).unwrap();
        assert!(matches!(p, CurvePoint::Affine(_, _)));
        assert!(c.affine_point(Scalar::from_int(2), Scalar::from_int(5)).is_err());
        // y = 0 resolves to the Weierstrass point
        let w = c.affine_point(Scalar::from_int(4), Scalar::zero()).unwrap();
        assert!(matches!(w, CurvePoint::Weierstrass(_)));
    }

    #[test]
    fn divisor_of_vertical_line_through_affine_point() {
        let c = HyperellipticCurve::from_roots(&[-2, 1, 4, 5, 6, 8]).unwrap();
        let d = c.divisor_of(&FnElt::from_poly(Poly::x_minus(&Scalar::from_int(2)))).unwrap();
        let p = CurvePoint::Affine(Scalar::from_int(2), Scalar::from_int(24));
        assert_eq!(d.coeff(&p), 1);
        assert_eq!(d.coeff(&p.sigma()), 1);
        assert_eq!(d.degree(), 0);
    }
}
