use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Exponents, Rational, TruncatedSeries};
use crate::error::{Error, Result};

/// Exact k-th root of a rational number, if it exists in ℚ.
pub fn rational_root(c: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if c.is_negative() && k % 2 == 0 {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == n.abs()).then_some(r)
    };
    let num = root(c.numer())?;
    let den = root(c.denom())?;
    let r = Rational::new(num, den);
    Some(if c.is_negative() { -r } else { r })
}

impl TruncatedSeries {
    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert_unit(&self) -> Result<TruncatedSeries> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotUnit);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let h = self.scale(&inv0);
        let parts: Vec<TruncatedSeries> = (0..n).map(|k| h.homogeneous_part(k)).collect();
        // 1/(1+h) degree by degree: r_d = -sum_{k>=1} h_k r_{d-k}
        let mut r: Vec<TruncatedSeries> = vec![TruncatedSeries::one(self.vars(), n)];
        for d in 1..n as usize {
            let mut rd = TruncatedSeries::zero(self.vars(), n);
            for k in 1..=d {
                if !parts[k].is_zero() && !r[d - k].is_zero() {
                    rd = &rd - &(&parts[k] * &r[d - k]);
                }
            }
            r.push(rd);
        }
        let mut out = TruncatedSeries::zero(self.vars(), n);
        for p in &r {
            out = &out + p;
        }
        Ok(out.scale(&inv0))
    }

    /// The k-th root with constant term the rational k-th root of `f(0)`.
    pub fn kth_root_unit(&self, k: u32) -> Result<TruncatedSeries> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotUnit);
        }
        let r0 = rational_root(&c0, k).ok_or(Error::NoRationalRoot(k))?;
        let n = self.order();
        let h = self.scale(&c0.recip()).filter(|e, _| e.degree() > 0);
        // sum_j binom(1/k, j) h^j
        let alpha = Rational::new(BigInt::one(), BigInt::from(k));
        let mut binom = Rational::one();
        let mut hp = TruncatedSeries::one(self.vars(), n);
        let mut out = TruncatedSeries::one(self.vars(), n);
        for j in 1..n {
            binom = binom * (&alpha - Rational::from_integer(BigInt::from(j - 1)))
                / Rational::from_integer(BigInt::from(j));
            hp = (&hp * &h).truncate(n);
            if hp.is_zero() {
                break;
            }
            out = &out + &hp.scale(&binom);
        }
        Ok(out.truncate(n).scale(&r0))
    }

    /// Weierstrass division of `self` by the variable `v` of degree `d`.
    ///
    /// Returns `(u, r)` with `self = u * (v^d + sum r_i v^i)`, `u` a unit and
    /// each `r_i` free of `v` and vanishing at the origin.
    pub fn weierstrass_divide(
        &self,
        v: &str,
        d: u32,
    ) -> Result<(TruncatedSeries, Vec<TruncatedSeries>)> {
        let vi = self.vars().require(v)?;
        let n = self.order();
        let not_regular = || Error::NotRegular {
            var: v.to_string(),
            degree: d,
        };
        let coeffs = self.coefficients_in(vi);
        let coeff = |k: usize| {
            coeffs
                .get(k)
                .cloned()
                .unwrap_or_else(|| TruncatedSeries::zero(self.vars(), n))
        };
        if d == 0 || n <= d || coeff(d as usize).constant_term().is_zero() {
            return Err(not_regular());
        }
        // weight of the other variables so that every f_k v^k (k < d) has weight >= d
        let (mut p, mut q) = (1u32, 1u32);
        for k in 0..d {
            let fk = coeff(k as usize);
            match fk.min_degree() {
                Some(0) => return Err(not_regular()),
                Some(o) if (d - k) * q > p * o => {
                    p = d - k;
                    q = o;
                }
                _ => {}
            }
        }
        let known = |w: u32| -> u32 { (w * q).div_ceil(p) };
        if known(n - d) == 0 {
            return Err(Error::TruncationUnderflow);
        }

        let m = n + d;
        let f = self.with_order(m);
        let vd = Exponents::unit(vi).with(vi, d);
        let low = f.filter(|e, _| e.get(vi) < d);
        let unit = (&f - &low)
            .div_monomial(&vd)
            .expect("high part divisible by v^d")
            .with_order(m);
        let unit_inv = unit.invert_unit()?;

        let mut g = TruncatedSeries::monomial(self.vars(), m, vd, Rational::one());
        let mut quot = TruncatedSeries::zero(self.vars(), m);
        let mut rem = TruncatedSeries::zero(self.vars(), m);
        for _ in 0..=(m * (d + 1)) {
            if g.is_zero() {
                break;
            }
            let b = g.filter(|e, _| e.get(vi) < d);
            let a = (&g - &b)
                .div_monomial(&vd)
                .expect("divisible by v^d")
                .with_order(m);
            let a = (&a * &unit_inv).truncate(m);
            quot = &quot + &a;
            rem = &rem + &b;
            g = -&(&a * &low).truncate(m);
        }
        if !g.is_zero() {
            return Err(Error::Indeterminate {
                order: n,
                reason: "Weierstrass iteration did not converge".into(),
            });
        }
        // v^d = quot * f + rem, so f = quot^{-1} (v^d - rem)
        let u = quot.invert_unit()?.truncate(known(n - d));
        let rs = (0..d)
            .map(|i| {
                let ri = rem
                    .filter(|e, _| e.get(vi) == i)
                    .div_monomial(&Exponents::unit(vi).with(vi, i))
                    .expect("coefficient extraction");
                (-&ri).with_order(m).truncate(known(n - i))
            })
            .collect();
        Ok((u, rs))
    }
}
