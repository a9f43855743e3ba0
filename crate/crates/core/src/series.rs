//! Truncated power series over [`Scalar`], used for local expansions at
//! curve points. A series stores coefficients of t^0..t^(trunc-1); arithmetic
//! never reads beyond the truncation order.

use crate::error::Error;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Scalar>,
    trunc: usize,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<Scalar>, trunc: usize) -> Self {
        assert!(trunc >= 1, "truncation order must be >= 1");
        coeffs.truncate(trunc);
        coeffs.resize(trunc, Scalar::zero());
        PowerSeries { coeffs, trunc }
    }

    pub fn zero(trunc: usize) -> Self {
        PowerSeries::new(Vec::new(), trunc)
    }

    pub fn constant(c: Scalar, trunc: usize) -> Self {
        PowerSeries::new(vec![c], trunc)
    }

    /// p(t) truncated.
    pub fn from_poly(p: &Poly, trunc: usize) -> Self {
        PowerSeries::new(p.coeffs().to_vec(), trunc)
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &PowerSeries) -> PowerSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let coeffs = (0..trunc).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        PowerSeries::new(coeffs, trunc)
    }

    pub fn sub(&self, rhs: &PowerSeries) -> PowerSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let coeffs = (0..trunc).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        PowerSeries::new(coeffs, trunc)
    }

    pub fn mul(&self, rhs: &PowerSeries) -> PowerSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let mut coeffs = vec![Scalar::zero(); trunc];
        for (i, a) in self.coeffs.iter().enumerate().take(trunc) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= trunc {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PowerSeries::new(coeffs, trunc)
    }

    pub fn scale(&self, s: &Scalar) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| c * s).collect(), self.trunc)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> PowerSeries {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "inverting a series with zero constant term");
        let c0i = c0.inv();
        let mut out = vec![Scalar::zero(); self.trunc];
        out[0] = c0i.clone();
        for k in 1..self.trunc {
            // c0 * out[k] = -(sum_{j=1..k} self[j] * out[k-j])
            let mut acc = Scalar::zero();
            for j in 1..=k {
                let t = &self.coeff(j) * &out[k - j];
                acc = &acc + &t;
            }
            out[k] = &(-&acc) * &c0i;
        }
        PowerSeries::new(out, self.trunc)
    }

    pub fn pow(&self, e: usize) -> PowerSeries {
        let mut acc = PowerSeries::constant(Scalar::one(), self.trunc);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Compose with t -> t * (unit series)? Not needed; substitution of a
    /// series with zero constant term into a polynomial is what the curve
    /// expansions use.
    pub fn eval_poly(p: &Poly, inner: &PowerSeries) -> PowerSeries {
        let trunc = inner.trunc;
        let mut acc = PowerSeries::zero(trunc);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(inner).add(&PowerSeries::constant(c.clone(), trunc));
        }
        acc
    }
}

/// Square root of a series by Newton iteration, normalized so the constant
/// term equals `y0`. Requires y0 nonzero with y0^2 = s(0).
pub fn series_sqrt(s: &PowerSeries, y0: &Scalar) -> Result<PowerSeries, Error> {
    if y0.is_zero() || &(y0 * y0) != &s.coeff(0) {
        return Err(Error::BranchMismatch);
    }
    let trunc = s.trunc();
    let half = Scalar::from_frac(1, 2);
    let mut t = PowerSeries::constant(y0.clone(), trunc);
    // Newton: t <- (t + s/t)/2, doubling correct digits each step.
    let mut correct = 1usize;
    while correct < trunc {
        t = t.add(&s.mul(&t.inv())).scale(&half);
        correct *= 2;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_frac(n, d)
    }

    #[test]
    fn sqrt_of_one_plus_u_is_binomial_series() {
        // sqrt(1 + u) = 1 + u/2 - u^2/8 + u^3/16 - ...
        let s = PowerSeries::new(vec![q(1, 1), q(1, 1)], 5);
        let t = series_sqrt(&s, &Scalar::one()).unwrap();
        assert_eq!(t.coeff(0), q(1, 1));
        assert_eq!(t.coeff(1), q(1, 2));
        assert_eq!(t.coeff(2), q(-1, 8));
        assert_eq!(t.coeff(3), q(1, 16));
        assert_eq!(t.coeff(4), q(-5, 128));
    }

    #[test]
    fn sqrt_constant_negative_branch() {
        let s = PowerSeries::constant(q(4, 1), 4);
        let t = series_sqrt(&s, &q(-2, 1)).unwrap();
        assert_eq!(t, PowerSeries::constant(q(-2, 1), 4));
    }

    #[test]
    fn sqrt_squares_back() {
        let s = PowerSeries::new(vec![q(9, 1), q(1, 1), q(-2, 1), q(5, 7)], 8);
        let t = series_sqrt(&s, &q(3, 1)).unwrap();
        assert_eq!(t.mul(&t), PowerSeries::new(vec![q(9, 1), q(1, 1), q(-2, 1), q(5, 7)], 8));
    }

    #[test]
    fn branch_mismatch_rejected() {
        let s = PowerSeries::constant(q(4, 1), 3);
        assert!(series_sqrt(&s, &q(3, 1)).is_err());
        assert!(series_sqrt(&s, &Scalar::zero()).is_err());
    }

    #[test]
    fn inverse_series() {
        let s = PowerSeries::new(vec![q(2, 1), q(1, 1)], 6);
        let prod = s.mul(&s.inv());
        assert_eq!(prod.coeff(0), q(1, 1));
        for k in 1..6 {
            assert!(prod.coeff(k).is_zero());
        }
    }
}
