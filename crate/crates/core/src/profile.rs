//! Zero-divisor accounting for twisted sections without root extraction.
//!
//! A section of the line bundle O(T) is a function u with div(u) + T >= 0.
//! Its zero divisor div(u) + T may well be supported at points whose
//! coordinates do not lie in the working field. This module certifies the
//! two facts downstream callers need — the exact degree and whether every
//! multiplicity is <= 1 — purely through gcd and squarefree computations on
//! the numerator data of u, plus direct valuations at the finitely many
//! known rational x-coordinates.
//!
//! The key splitting fact: write u = (a + b y)/c and W = gcd(a, b). At a
//! non-branch point over a root r of the coprime norm (a/W)^2 - (b/W)^2 f,
//! the functions a/W + (b/W) y and its involute share no zero, so the whole
//! multiplicity of r lands on a single branch. The W part vanishes on both
//! branches at once.

use crate::curve::{CurvePoint, Divisor, HyperellipticCurve};
use crate::error::Error;
use crate::fnfield::FnElt;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionProfile {
    /// Exact degree of the zero divisor div(u) + T.
    pub degree: i64,
    /// True when no point carries multiplicity >= 2.
    pub multiplicity_free: bool,
}

/// Profile of the zero divisor of u as a section of O(T).
///
/// Errors with `SectionBoundViolated` when div(u) + T is not effective, and
/// requires the denominator of u to split over the working field.
pub fn section_profile(
    curve: &HyperellipticCurve,
    u: &FnElt,
    twist: &Divisor,
) -> Result<SectionProfile, Error> {
    if u.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let (a, b, c) = u.parts();
    let w = a.gcd(b);
    let (at, bt) = if w.deg() > 0 {
        (a.div_exact(&w), b.div_exact(&w))
    } else {
        (a.clone(), b.clone())
    };
    let norm = if bt.is_zero() {
        at.clone()
    } else {
        &(&at * &at) - &(&(&bt * &bt) * curve.f())
    };
    debug_assert!(!norm.is_zero());

    // Known x-coordinates: branch points, denominator roots, twist support.
    let mut known_x: Vec<Scalar> = curve.weierstrass_roots().to_vec();
    for (r, _) in c.split_roots(curve.field())? {
        if !known_x.contains(&r) {
            known_x.push(r);
        }
    }
    for (p, _) in twist.support() {
        if let Some(x0) = p.x_coord(curve) {
            if !known_x.contains(&x0) {
                known_x.push(x0);
            }
        }
    }

    let mut degree = 0i64;
    let mut mult_free = true;
    let mut record = |m: i64| -> Result<(), Error> {
        if m < 0 {
            return Err(Error::SectionBoundViolated);
        }
        degree += m;
        if m >= 2 {
            mult_free = false;
        }
        Ok(())
    };

    // Exact multiplicities at every point above a known x-coordinate.
    for x0 in &known_x {
        let fx = curve.f().eval(x0);
        if fx.is_zero() {
            let i = curve
                .weierstrass_roots()
                .iter()
                .position(|r| r == x0)
                .expect("branch root present");
            let p = CurvePoint::Weierstrass(i);
            let m = curve.valuation(u, &p)? + twist.coeff(&p);
            record(m)?;
        } else if let Some((p_plus, p_minus)) = curve.points_over(x0) {
            for p in [p_plus, p_minus] {
                let m = curve.valuation(u, &p)? + twist.coeff(&p);
                record(m)?;
            }
        } else {
            // Conjugate pair over a further quadratic extension. The twist
            // cannot meet these points, so only u contributes: the common
            // part W vanishes on both branches, the coprime part on one.
            let mw = w.root_multiplicity(x0) as i64;
            let mn = norm.root_multiplicity(x0) as i64;
            let mc = c.root_multiplicity(x0) as i64;
            record(mw + mn - mc)?;
            record(mw - mc)?;
        }
    }

    // Points at infinity.
    for p in curve.infinite_points() {
        let m = curve.valuation(u, &p)? + twist.coeff(&p);
        record(m)?;
    }

    // Unknown affine points: divide the known x-coordinates out of W and the
    // coprime norm, then count blind.
    let mut w_rest = w.clone();
    let mut n_rest = norm.clone();
    for x0 in &known_x {
        let lin = Poly::x_minus(x0);
        for poly in [&mut w_rest, &mut n_rest] {
            loop {
                let (q, r) = poly.div_rem(&lin);
                if r.is_zero() && !poly.is_constant() {
                    *poly = q;
                } else {
                    break;
                }
            }
        }
    }
    // Each root of W contributes its multiplicity at both points above it;
    // each root of the coprime norm contributes once on a single branch.
    degree += 2 * w_rest.deg() as i64 + n_rest.deg() as i64;
    if w_rest.deg() > 0 {
        if !w_rest.squarefree() {
            mult_free = false;
        }
        // a shared root stacks the W multiplicity under the norm branch
        if w_rest.gcd(&n_rest).deg() > 0 {
            mult_free = false;
        }
    }
    if !n_rest.is_constant() && !n_rest.squarefree() {
        mult_free = false;
    }

    Ok(SectionProfile { degree, multiplicity_free: mult_free })
}
