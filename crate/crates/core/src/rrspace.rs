//! Exact Riemann-Roch spaces L(D) = { u : div(u) + D >= 0 } on a
//! hyperelliptic curve.
//!
//! The solver uses the ansatz u = (a(x) + b(x) y) / c(x), where c is the
//! smallest polynomial clearing the allowed affine poles, and turns every
//! valuation requirement into linear conditions on the coefficients of a and
//! b. The resulting kernel computation is exact.

use crate::curve::{CurvePoint, Divisor, HyperellipticCurve, InfinityModel};
use crate::error::Error;
use crate::fnfield::FnElt;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::{series_sqrt, PowerSeries};
use std::collections::BTreeMap;

/// Exact basis of L(D). An empty basis is a valid result.
pub fn riemann_roch_space(
    curve: &HyperellipticCurve,
    d: &Divisor,
) -> Result<Vec<FnElt>, Error> {
    let g = curve.genus() as i64;

    // Group the affine support by x-coordinate.
    struct XGroup {
        points: Vec<(CurvePoint, i64)>,
    }
    let mut groups: BTreeMap<Scalar, XGroup> = BTreeMap::new();
    let mut inf_plus = 0i64;
    let mut inf_minus = 0i64;
    let mut inf_odd = 0i64;
    for (p, n) in d.support() {
        match p {
            CurvePoint::InfinityPlus => inf_plus = n,
            CurvePoint::InfinityMinus => inf_minus = n,
            CurvePoint::Infinity => inf_odd = n,
            _ => {
                let x0 = p.x_coord(curve).expect("affine point has x");
                groups
                    .entry(x0)
                    .or_insert_with(|| XGroup { points: Vec::new() })
                    .points
                    .push((p.clone(), n));
            }
        }
    }
    // Ensure sigma-partners of affine points are present in each group so
    // their (implicit zero) coefficients also get constrained.
    for group in groups.values_mut() {
        let mut extra = Vec::new();
        for (p, _) in &group.points {
            let s = p.sigma();
            if s != *p && !group.points.iter().any(|(q, _)| q == &s) {
                extra.push((s, 0));
            }
        }
        group.points.extend(extra);
    }

    // Denominator c(x) clearing all allowed affine poles.
    let mut c = Poly::one();
    let mut c_mult: BTreeMap<Scalar, i64> = BTreeMap::new();
    for (x0, group) in &groups {
        let mut m = 0i64;
        for (p, n) in &group.points {
            if *n > 0 {
                let e = if matches!(p, CurvePoint::Weierstrass(_)) { 2 } else { 1 };
                m = m.max((n + e - 1) / e);
            }
        }
        if m > 0 {
            c = &c * &Poly::x_minus(x0).pow(m as usize);
            c_mult.insert(x0.clone(), m);
        }
    }
    let deg_c = c.deg() as i64;

    // Degree bounds on the ansatz numerator pair.
    let (deg_a, deg_b) = match curve.infinity_model() {
        InfinityModel::TwoPoints => {
            let ninf = inf_plus.max(inf_minus).max(0);
            (deg_c + ninf, deg_c + ninf - g - 1)
        }
        InfinityModel::OnePoint => {
            let ninf = inf_odd.max(0);
            (deg_c + ninf.div_euclid(2), deg_c + (ninf - 2 * g - 1).div_euclid(2))
        }
    };
    if deg_a < 0 && deg_b < 0 {
        return Ok(Vec::new());
    }
    let na = (deg_a.max(-1) + 1) as usize; // number of a-coefficients
    let nb = (deg_b.max(-1) + 1) as usize;
    let ncols = na + nb;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut push_row = |row: Vec<Scalar>| rows.push(row);

    // Taylor rows: sum_j binom(j, k) x0^(j-k) * coeff_j = 0, encoding that a
    // polynomial vanishes to order > k at x0.
    let taylor_row = |x0: &Scalar, k: usize, ncoeffs: usize| -> Vec<Scalar> {
        let mut row = vec![Scalar::zero(); ncoeffs];
        for (j, slot) in row.iter_mut().enumerate().skip(k) {
            // binom(j, k) * x0^(j-k)
            let mut bin = Scalar::one();
            for i in 0..k {
                bin = &bin * &Scalar::from_frac((j - i) as i64, (i + 1) as i64);
            }
            *slot = &bin * &x0.pow((j - k) as u32);
        }
        row
    };

    for (x0, group) in &groups {
        let cm = c_mult.get(x0).copied().unwrap_or(0);
        for (p, n) in &group.points {
            match p {
                CurvePoint::Weierstrass(_) => {
                    let r = 2 * cm - n;
                    // even/odd valuation split: constrain a and b separately
                    let need_a = (r + 1).div_euclid(2); // ceil(r/2)
                    let need_b = r.div_euclid(2); // ceil((r-1)/2)
                    for k in 0..need_a.max(0) {
                        let tr = taylor_row(x0, k as usize, na);
                        let mut row = tr;
                        row.extend(vec![Scalar::zero(); nb]);
                        push_row(row);
                    }
                    for k in 0..need_b.max(0) {
                        let tr = taylor_row(x0, k as usize, nb);
                        let mut row = vec![Scalar::zero(); na];
                        row.extend(tr);
                        push_row(row);
                    }
                }
                CurvePoint::Affine(_, y0) => {
                    let r = cm - n;
                    if r <= 0 {
                        continue;
                    }
                    let trunc = r as usize;
                    let sub = Poly::new(vec![x0.clone(), Scalar::one()], "t");
                    let subs = PowerSeries::from_poly(&sub, trunc);
                    let fs = PowerSeries::eval_poly(curve.f(), &subs);
                    let ys = series_sqrt(&fs, y0)?;
                    // powers of (x0 + t)
                    let mut apow = Vec::with_capacity(na);
                    let mut cur = PowerSeries::constant(Scalar::one(), trunc);
                    for _ in 0..na.max(nb) {
                        apow.push(cur.clone());
                        cur = cur.mul(&subs);
                    }
                    for k in 0..trunc {
                        let mut row = Vec::with_capacity(ncols);
                        for j in 0..na {
                            row.push(apow[j].coeff(k));
                        }
                        for j in 0..nb {
                            row.push(apow[j].mul(&ys).coeff(k));
                        }
                        push_row(row);
                    }
                }
                _ => unreachable!("infinite points handled separately"),
            }
        }
    }

    match curve.infinity_model() {
        InfinityModel::TwoPoints => {
            let m = deg_a.max(deg_b + g + 1).max(0);
            for (plus, n) in [(true, inf_plus), (false, inf_minus)] {
                let r = -deg_c - n;
                let krows = m + r;
                if krows <= 0 {
                    continue;
                }
                let trunc = (m + 1).max(krows) as usize;
                let ys = curve.y_series_at_infinity_pub(plus, trunc)?;
                for k in 0..krows {
                    let mut row = vec![Scalar::zero(); ncols];
                    for j in 0..na {
                        if m - j as i64 == k {
                            row[j] = Scalar::one();
                        }
                    }
                    for j in 0..nb {
                        let shift = m - (j as i64 + g + 1);
                        let idx = k - shift;
                        if idx >= 0 && (idx as usize) < ys.trunc() {
                            row[na + j] = ys.coeff(idx as usize);
                        }
                    }
                    push_row(row);
                }
            }
        }
        InfinityModel::OnePoint => {
            let r = -2 * deg_c - inf_odd;
            // a_j allowed iff -2j >= r; b_j allowed iff -2j - (2g+1) >= r
            let ja_max = (-r).div_euclid(2);
            let jb_max = (-r - 2 * g - 1).div_euclid(2);
            for j in 0..na {
                if (j as i64) > ja_max {
                    let mut row = vec![Scalar::zero(); ncols];
                    row[j] = Scalar::one();
                    push_row(row);
                }
            }
            for j in 0..nb {
                if (j as i64) > jb_max {
                    let mut row = vec![Scalar::zero(); ncols];
                    row[na + j] = Scalar::one();
                    push_row(row);
                }
            }
        }
    }

    if rows.is_empty() {
        // unconstrained: the whole ansatz space
        rows.push(vec![Scalar::zero(); ncols]);
    }
    let kernel = crate::linalg::kernel_basis(rows);
    let mut basis = Vec::with_capacity(kernel.len());
    for v in kernel {
        let a = Poly::new(v[..na].to_vec(), "x");
        let b = Poly::new(v[na..].to_vec(), "x");
        basis.push(FnElt::new(a, b, c.clone()));
    }
    Ok(basis)
}

/// dim L(D).
pub fn h0(curve: &HyperellipticCurve, d: &Divisor) -> Result<usize, Error> {
    Ok(riemann_roch_space(curve, d)?.len())
}

/// True iff D is principal (linearly equivalent to zero). Only meaningful for
/// degree-zero divisors: a degree-0 divisor class is trivial iff h^0 = 1.
pub fn is_principal(curve: &HyperellipticCurve, d: &Divisor) -> Result<bool, Error> {
    debug_assert_eq!(d.degree(), 0);
    Ok(h0(curve, d)? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sextic() -> HyperellipticCurve {
        HyperellipticCurve::from_roots(&[1, 2, 3, 4, 5, 6]).unwrap()
    }

    #[test]
    fn trivial_divisor_gives_constants() {
        let c = sextic();
        let basis = riemann_roch_space(&c, &Divisor::zero()).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].as_constant().is_some());
    }

    #[test]
    fn canonical_space_is_one_and_x() {
        let c = sextic();
        let basis = riemann_roch_space(&c, &c.canonical_divisor()).unwrap();
        assert_eq!(basis.len(), 2);
        // the span contains both 1 and x
        assert!(crate::fnfield::span_coordinates(&FnElt::one(), &basis, &c).is_some());
        assert!(crate::fnfield::span_coordinates(&FnElt::x(), &basis, &c).is_some());
    }

    #[test]
    fn single_weierstrass_point_is_nonspecial() {
        let c = sextic();
        let d = Divisor::point(CurvePoint::Weierstrass(0));
        assert_eq!(h0(&c, &d).unwrap(), 1);
    }

    #[test]
    fn basis_elements_satisfy_divisor_bound() {
        let c = sextic();
        // D = 2 a_1 + a_2 - oo+
        let mut d = Divisor::zero();
        d.add_point(CurvePoint::Weierstrass(0), 2);
        d.add_point(CurvePoint::Weierstrass(1), 1);
        d.add_point(CurvePoint::InfinityPlus, -1);
        let basis = riemann_roch_space(&c, &d).unwrap();
        // deg D = 2 > 2g-2 = 2? no: = 2, special-free not guaranteed; just check bounds
        for u in &basis {
            let div = c.divisor_of(u).unwrap();
            assert!(div.add(&d).is_effective(), "div(u) + D not effective for {u}");
        }
    }

    #[test]
    fn large_degree_matches_riemann_roch() {
        let c = sextic();
        // deg D = 7 > 2g-2: h0 = deg - g + 1 = 6
        let mut d = Divisor::zero();
        d.add_point(CurvePoint::Weierstrass(2), 3);
        d.add_point(CurvePoint::InfinityPlus, 2);
        d.add_point(CurvePoint::InfinityMinus, 2);
        assert_eq!(h0(&c, &d).unwrap(), 6);
    }

    #[test]
    fn genus3_canonical_dimension() {
        let c = HyperellipticCurve::from_roots(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(h0(&c, &c.canonical_divisor()).unwrap(), 3);
    }

    #[test]
    fn odd_model_spaces() {
        let c = HyperellipticCurve::new(Poly::from_ints(&[0, -1, 0, 0, 0, 1])).unwrap();
        // L(k * oo): dims 1, 1, 2, 2, 3, 4 for k = 0..5 on a genus-2 odd model
        let expected = [1usize, 1, 2, 2, 3, 4];
        for (k, want) in expected.iter().enumerate() {
            let mut d = Divisor::zero();
            d.add_point(CurvePoint::Infinity, k as i64);
            assert_eq!(h0(&c, &d).unwrap(), *want, "k = {k}");
        }
    }

    #[test]
    fn negative_divisor_is_empty() {
        let c = sextic();
        let mut d = Divisor::zero();
        d.add_point(CurvePoint::Weierstrass(0), -1);
        assert_eq!(h0(&c, &d).unwrap(), 0);
    }
}
