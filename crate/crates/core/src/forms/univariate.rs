//! Dense univariate polynomials over ℚ, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip();
        Poly(self.0.iter().map(|c| c * &l).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(vec![]);
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.0.len() - 1;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly(vec![]), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let inv = d.lead().recip();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free factorization (Yun): `(factor, multiplicity)` pairs, monic.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - other.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// Distinct rational roots, by the rational root theorem.
    ///
    /// Candidate enumeration factors the integral end coefficients by trial
    /// division, which is fine for the small coefficients seen in practice.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let mut p = self.clone();
        if p.0[0].is_zero() {
            roots.push(Rational::zero());
            let k = p.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
            p = Poly::new(p.0[k..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = integral(&p.0);
        let a0 = ints[0].abs();
        let an = ints.last().expect("nonzero").abs();
        let nums = divisors(&a0);
        let dens = divisors(&an);
        for n in &nums {
            for d in &dens {
                if !n.gcd(d).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = Rational::new(n * BigInt::from(sign), d.clone());
                    if !roots.contains(&r) && p.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

/// Scales rational coefficients to coprime integers.
fn integral(c: &[Rational]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    c.iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let j = n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out
}
