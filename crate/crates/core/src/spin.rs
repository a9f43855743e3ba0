//! Theta characteristics on a hyperelliptic curve and their section spaces.
//!
//! On a curve with all 2g+2 branch points affine and rational, every square
//! root of the canonical class is represented by a subset T of Weierstrass
//! indices with |T| = g+1 (mod 2), via the degree g-1 divisor
//!
//!   e_T = sum_{i in T} a_i + ((g - 1 - |T|) / 2) (oo+ + oo-).
//!
//! T and its complement give the same class; the canonical representative is
//! the smaller subset (lexicographic order breaking the |T| = g+1 tie). All
//! parities are computed from actual Riemann-Roch dimensions; the classical
//! size-based prediction is kept only as a cross-check.

use crate::curve::{CurvePoint, Divisor, HyperellipticCurve, InfinityModel};
use crate::error::Error;
use crate::fnfield::FnElt;
use crate::profile::section_profile;
use crate::rrspace::{h0, riemann_roch_space};
use serde::Serialize;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct ThetaCharacteristic {
    /// Sorted Weierstrass indices, the canonical (smaller) representative.
    subset: Vec<usize>,
    genus: usize,
}

impl ThetaCharacteristic {
    /// Build from any representing subset; reduces to the canonical one.
    pub fn new(curve: &HyperellipticCurve, subset: &[usize]) -> Result<Self, Error> {
        let g = curve.genus();
        let n = 2 * g + 2;
        if curve.infinity_model() != InfinityModel::TwoPoints
            || curve.weierstrass_roots().len() != n
        {
            return Err(Error::EvenModelRequired);
        }
        let mut t: Vec<usize> = subset.to_vec();
        t.sort_unstable();
        t.dedup();
        if t.len() != subset.len() || t.iter().any(|&i| i >= n) {
            return Err(Error::Config("invalid Weierstrass index subset".into()));
        }
        if t.len() % 2 != (g + 1) % 2 {
            return Err(Error::Config(format!(
                "subset size {} must have the parity of g+1 = {}",
                t.len(),
                g + 1
            )));
        }
        Ok(ThetaCharacteristic { subset: canonical_rep(t, n), genus: g })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Multiplicity of the infinity pair H = oo+ + oo- in e_T.
    pub fn infinity_multiplicity(&self) -> i64 {
        (self.genus as i64 - 1 - self.subset.len() as i64) / 2
    }

    /// The divisor e_T of degree g-1.
    pub fn divisor(&self) -> Divisor {
        let mut d = Divisor::zero();
        for &i in &self.subset {
            d.add_point(CurvePoint::Weierstrass(i), 1);
        }
        let h = self.infinity_multiplicity();
        d.add_point(CurvePoint::InfinityPlus, h);
        d.add_point(CurvePoint::InfinityMinus, h);
        d
    }

    /// dim H^0 of the square root itself: dim L(e_T).
    pub fn h0(&self, curve: &HyperellipticCurve) -> Result<usize, Error> {
        h0(curve, &self.divisor())
    }

    pub fn is_odd(&self, curve: &HyperellipticCurve) -> Result<bool, Error> {
        Ok(self.h0(curve)? % 2 == 1)
    }

    /// Size-based prediction (g + 1 - |T|)/2 for the hyperelliptic h^0;
    /// a cross-check against the computed dimension, never a substitute.
    pub fn predicted_h0(&self) -> usize {
        (self.genus + 1 - self.subset.len()) / 2
    }

    /// Verifies 2 e_T ~ K by testing that the degree-zero divisor K - 2 e_T
    /// is principal.
    pub fn squares_to_canonical(&self, curve: &HyperellipticCurve) -> Result<bool, Error> {
        let d = curve.canonical_divisor().sub(&self.divisor().scale(2));
        debug_assert_eq!(d.degree(), 0);
        Ok(h0(curve, &d)? == 1)
    }
}

fn canonical_rep(t: Vec<usize>, n: usize) -> Vec<usize> {
    let comp: Vec<usize> = (0..n).filter(|i| !t.contains(i)).collect();
    if t.len() < comp.len() {
        t
    } else if comp.len() < t.len() {
        comp
    } else if t < comp {
        t
    } else {
        comp
    }
}

/// All 2^(2g) theta characteristics, one canonical representative per
/// complement pair, in deterministic order.
pub fn enumerate_thetas(
    curve: &HyperellipticCurve,
) -> Result<Vec<ThetaCharacteristic>, Error> {
    let g = curve.genus();
    let n = 2 * g + 2;
    if curve.infinity_model() != InfinityModel::TwoPoints
        || curve.weierstrass_roots().len() != n
    {
        return Err(Error::EvenModelRequired);
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size % 2 != (g + 1) % 2 || size > g + 1 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if size == g + 1 {
            // keep only the lexicographically smaller of the complement pair
            let comp: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            if comp < subset {
                continue;
            }
        }
        out.push(ThetaCharacteristic { subset, genus: g });
    }
    out.sort();
    debug_assert_eq!(out.len(), 1 << (2 * g));
    Ok(out)
}

/// dim L(e_T), the section-space dimension of the characteristic.
pub fn h0_theta(curve: &HyperellipticCurve, theta: &ThetaCharacteristic) -> Result<usize, Error> {
    theta.h0(curve)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub subset: Vec<usize>,
    pub h0: usize,
    pub parity: &'static str,
    pub jumped: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityCensus {
    pub total: usize,
    pub odd_count: usize,
    pub even_count: usize,
    /// Characteristics whose h^0 exceeds the generic value for their parity
    /// (1 for odd, 0 for even).
    pub jumps: Vec<CensusRow>,
    pub rows: Vec<CensusRow>,
}

/// Computes h^0 for every characteristic and tallies parities and jumps.
pub fn parity_census(curve: &HyperellipticCurve) -> Result<ParityCensus, Error> {
    let thetas = enumerate_thetas(curve)?;
    let mut rows = Vec::with_capacity(thetas.len());
    let mut odd_count = 0;
    let mut even_count = 0;
    for theta in &thetas {
        let h = theta.h0(curve)?;
        let odd = h % 2 == 1;
        if odd {
            odd_count += 1;
        } else {
            even_count += 1;
        }
        let generic = if odd { 1 } else { 0 };
        rows.push(CensusRow {
            subset: theta.subset.clone(),
            h0: h,
            parity: if odd { "odd" } else { "even" },
            jumped: h > generic,
        });
    }
    let jumps = rows.iter().filter(|r| r.jumped).cloned().collect();
    Ok(ParityCensus { total: rows.len(), odd_count, even_count, jumps, rows })
}

/// A global section of K^(m/2): a function u with div(u) + m e_T >= 0.
#[derive(Clone, Debug)]
pub struct HalfCanonicalSection {
    pub power: usize,
    pub elt: FnElt,
    pub theta: ThetaCharacteristic,
}

impl HalfCanonicalSection {
    /// Wraps u after verifying the divisor bound div(u) + m e_T >= 0.
    pub fn new(
        curve: &HyperellipticCurve,
        theta: &ThetaCharacteristic,
        power: usize,
        elt: FnElt,
    ) -> Result<Self, Error> {
        assert!(power >= 1);
        if !elt.is_zero() {
            let twist = theta.divisor().scale(power as i64);
            let profile = section_profile(curve, &elt, &twist)?;
            if profile.degree != power as i64 * (curve.genus() as i64 - 1) {
                return Err(Error::Internal(format!(
                    "section degree {} differs from {}(g-1)",
                    profile.degree, power
                )));
            }
        }
        Ok(HalfCanonicalSection { power, elt, theta: theta.clone() })
    }

    /// The zero divisor div(u) + m e_T, when its support splits.
    pub fn zero_divisor(&self, curve: &HyperellipticCurve) -> Result<Divisor, Error> {
        Ok(curve
            .divisor_of(&self.elt)?
            .add(&self.theta.divisor().scale(self.power as i64)))
    }
}

/// Basis of H^0(C, K^(m/2)) for the given characteristic: dim g for m = 2 and
/// (m-1)(g-1) for m > 2; for m = 1 the dimension is the parity-carrying h^0.
pub fn half_power_sections(
    curve: &HyperellipticCurve,
    theta: &ThetaCharacteristic,
    power: usize,
) -> Result<Vec<HalfCanonicalSection>, Error> {
    assert!(power >= 1, "power must be at least 1");
    let d = theta.divisor().scale(power as i64);
    let basis = riemann_roch_space(curve, &d)?;
    basis
        .into_iter()
        .map(|u| HalfCanonicalSection::new(curve, theta, power, u))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sextic() -> HyperellipticCurve {
        HyperellipticCurve::from_roots(&[1, 2, 3, 4, 5, 6]).unwrap()
    }

    fn octic() -> HyperellipticCurve {
        HyperellipticCurve::from_roots(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap()
    }

    #[test]
    fn genus2_enumeration_counts() {
        let c = sextic();
        let thetas = enumerate_thetas(&c).unwrap();
        assert_eq!(thetas.len(), 16); // 2^(2g)
        let singles = thetas.iter().filter(|t| t.subset().len() == 1).count();
        let triples = thetas.iter().filter(|t| t.subset().len() == 3).count();
        assert_eq!(singles, 6);
        assert_eq!(triples, 10); // C(6,3)/2
    }

    #[test]
    fn genus3_enumeration_counts() {
        let c = octic();
        let thetas = enumerate_thetas(&c).unwrap();
        assert_eq!(thetas.len(), 64);
        let by_size = |k: usize| thetas.iter().filter(|t| t.subset().len() == k).count();
        assert_eq!(by_size(0), 1);
        assert_eq!(by_size(2), 28); // C(8,2)
        assert_eq!(by_size(4), 35); // C(8,4)/2
    }

    #[test]
    fn odd_model_rejected() {
        let odd =
            HyperellipticCurve::new(crate::poly::Poly::from_ints(&[0, -1, 0, 0, 0, 1])).unwrap();
        assert_eq!(enumerate_thetas(&odd).unwrap_err(), Error::EvenModelRequired);
    }

    #[test]
    fn genus2_section_dimensions() {
        let c = sextic();
        let single = ThetaCharacteristic::new(&c, &[0]).unwrap();
        assert_eq!(single.h0(&c).unwrap(), 1);
        let triple = ThetaCharacteristic::new(&c, &[0, 1, 2]).unwrap();
        assert_eq!(triple.h0(&c).unwrap(), 0);
    }

    #[test]
    fn genus3_empty_subset_jumps() {
        let c = octic();
        let empty = ThetaCharacteristic::new(&c, &[]).unwrap();
        assert_eq!(empty.h0(&c).unwrap(), 2);
    }

    #[test]
    fn census_genus2() {
        let c = sextic();
        let census = parity_census(&c).unwrap();
        assert_eq!(census.total, 16);
        assert_eq!(census.odd_count, 6);
        assert_eq!(census.even_count, 10);
        assert!(census.jumps.is_empty());
    }

    #[test]
    fn complement_gives_same_characteristic() {
        let c = sextic();
        let t1 = ThetaCharacteristic::new(&c, &[0, 1, 2]).unwrap();
        let t2 = ThetaCharacteristic::new(&c, &[3, 4, 5]).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn squares_to_canonical_class() {
        let c = sextic();
        for theta in enumerate_thetas(&c).unwrap() {
            assert_eq!(theta.divisor().degree(), 1); // g - 1
            assert!(theta.squares_to_canonical(&c).unwrap());
        }
    }

    #[test]
    fn half_power_dimensions_genus2() {
        let c = sextic();
        let odd = ThetaCharacteristic::new(&c, &[0]).unwrap();
        let even = ThetaCharacteristic::new(&c, &[0, 1, 2]).unwrap();
        for theta in [&odd, &even] {
            assert_eq!(half_power_sections(&c, theta, 2).unwrap().len(), 2); // = g
            assert_eq!(half_power_sections(&c, theta, 3).unwrap().len(), 2); // (3-1)(g-1)
            assert_eq!(half_power_sections(&c, theta, 5).unwrap().len(), 4); // (5-1)(g-1)
        }
    }

    #[test]
    fn even_theta_cube_has_weierstrass_triple_divisors() {
        // for T = {0,1,2} the space L(3 e_T) contains sections with zero
        // divisors a1+a2+a3 and a4+a5+a6
        let c = sextic();
        let theta = ThetaCharacteristic::new(&c, &[0, 1, 2]).unwrap();
        let sections = half_power_sections(&c, &theta, 3).unwrap();
        assert_eq!(sections.len(), 2);
        for which in [[0usize, 1, 2], [3, 4, 5]] {
            // membership via h0: a section vanishing on the triple exists
            let mut d = theta.divisor().scale(3);
            for &i in &which {
                d.add_point(CurvePoint::Weierstrass(i), -1);
            }
            assert_eq!(h0(&c, &d).unwrap(), 1);
        }
        // and the basis zero divisors are exactly those triples
        let mut divisors: Vec<Divisor> =
            sections.iter().map(|s| s.zero_divisor(&c).unwrap()).collect();
        divisors.sort_by_key(|d| -d.coeff(&CurvePoint::Weierstrass(0)));
        let triple = |idx: [usize; 3]| {
            let mut d = Divisor::zero();
            for i in idx {
                d.add_point(CurvePoint::Weierstrass(i), 1);
            }
            d
        };
        assert_eq!(divisors, vec![triple([0, 1, 2]), triple([3, 4, 5])]);
    }
}
