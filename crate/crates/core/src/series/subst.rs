use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Exponents, Rational, TruncatedSeries, Vars};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A change of variables: each source variable is replaced by a series in
/// the target variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    source: Vars,
    target: Vars,
    images: Vec<TruncatedSeries>,
    allow_shift: bool,
}

impl Substitution {
    /// Builds a substitution; every image must live over `target`.
    pub fn new(source: &Vars, target: &Vars, images: Vec<TruncatedSeries>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Shape(format!(
                "substitution needs {} images, got {}",
                source.len(),
                images.len()
            )));
        }
        for im in &images {
            if im.vars() != target {
                return Err(Error::VariableMismatch {
                    left: target.names().collect::<Vec<_>>().join(","),
                    right: im.vars().names().collect::<Vec<_>>().join(","),
                });
            }
        }
        Ok(Substitution {
            source: source.clone(),
            target: target.clone(),
            images,
            allow_shift: false,
        })
    }

    pub fn identity(vars: &Vars, order: u32) -> Self {
        let images = (0..vars.len())
            .map(|i| TruncatedSeries::var_at(vars, order, i))
            .collect();
        Substitution {
            source: vars.clone(),
            target: vars.clone(),
            images,
            allow_shift: false,
        }
    }

    /// Identity except for the listed replacements, given by variable name.
    pub fn replacing(vars: &Vars, order: u32, repl: &[(&str, TruncatedSeries)]) -> Result<Self> {
        let mut s = Self::identity(vars, order);
        for (name, im) in repl {
            let i = vars.require(name)?;
            if im.vars() != vars {
                return Err(Error::VariableMismatch {
                    left: vars.names().collect::<Vec<_>>().join(","),
                    right: im.vars().names().collect::<Vec<_>>().join(","),
                });
            }
            s.images[i] = im.clone();
        }
        Ok(s)
    }

    /// Linear substitution `old_i = sum_j m[i][j] * new_j` on one variable list.
    pub fn linear(vars: &Vars, order: u32, m: &Matrix) -> Self {
        let n = vars.len();
        let images = (0..n)
            .map(|i| {
                let mut s = TruncatedSeries::zero(vars, order);
                for j in 0..n {
                    s.add_term(Exponents::unit(j), m.get(i, j).clone());
                }
                s
            })
            .collect();
        Substitution {
            source: vars.clone(),
            target: vars.clone(),
            images,
            allow_shift: false,
        }
    }

    /// Permits images with nonzero constant terms (chart translations).
    ///
    /// The series being substituted into is then treated as an exact
    /// polynomial; its unknown tail is not propagated.
    pub fn with_shifts(mut self) -> Self {
        self.allow_shift = true;
        self
    }

    pub fn allows_shift(&self) -> bool {
        self.allow_shift
    }

    pub fn source(&self) -> &Vars {
        &self.source
    }

    pub fn target(&self) -> &Vars {
        &self.target
    }

    pub fn images(&self) -> &[TruncatedSeries] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&TruncatedSeries> {
        Ok(&self.images[self.source.require(name)?])
    }

    /// Coefficient matrix of the linear parts of the images
    /// (row = source variable, column = target variable).
    pub fn linear_part(&self) -> Matrix {
        let mut m = Matrix::zeros(self.source.len(), self.target.len());
        for (i, im) in self.images.iter().enumerate() {
            for j in 0..self.target.len() {
                m.set(i, j, im.coeff(&Exponents::unit(j)));
            }
        }
        m
    }

    pub fn is_invertible_at_origin(&self) -> bool {
        self.source.len() == self.target.len()
            && self.images.iter().all(|im| im.constant_term().is_zero())
            && self.linear_part().rank() == self.source.len()
    }

    /// `self` followed by `then`: the substitution `f -> (f∘self)∘then`.
    pub fn then(&self, then: &Substitution) -> Result<Substitution> {
        let images = self
            .images
            .iter()
            .map(|im| im.substitute(then))
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution {
            source: self.source.clone(),
            target: then.target.clone(),
            images,
            allow_shift: self.allow_shift || then.allow_shift,
        })
    }

    /// Formal inverse of an invertible-at-origin substitution on one variable list.
    pub fn inverse(&self, order: u32) -> Result<Substitution> {
        if !self.is_invertible_at_origin() {
            return Err(Error::NotInvertible);
        }
        let vars = self.source.clone();
        let lin = self.linear_part();
        let lin_inv = lin.inverse().ok_or(Error::NotInvertible)?;
        let nonlinear: Vec<TruncatedSeries> = self
            .images
            .iter()
            .map(|im| im.with_order(order).filter(|e, _| e.degree() >= 2))
            .collect();
        let nonlinear = Substitution::new(&vars, &vars, nonlinear)?;
        // psi = L^{-1} (id - N(psi)); each pass fixes one more degree
        let mut psi = Substitution::linear(&vars, order, &lin_inv);
        for _ in 0..order {
            let n_psi = nonlinear.then(&psi)?;
            let mut next = Vec::with_capacity(vars.len());
            for i in 0..vars.len() {
                let mut acc = TruncatedSeries::zero(&vars, order);
                for j in 0..vars.len() {
                    let c = lin_inv.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let rhs = &TruncatedSeries::var_at(&vars, order, j) - &n_psi.images[j];
                    acc = &acc + &rhs.scale(c);
                }
                next.push(acc);
            }
            let next = Substitution::new(&vars, &vars, next)?;
            if next == psi {
                break;
            }
            psi = next;
        }
        Ok(psi)
    }
}

impl TruncatedSeries {
    /// Formal composition `f(s(x))`.
    pub fn substitute(&self, s: &Substitution) -> Result<TruncatedSeries> {
        if self.vars() != s.source() {
            return Err(Error::VariableMismatch {
                left: self.vars().names().collect::<Vec<_>>().join(","),
                right: s.source().names().collect::<Vec<_>>().join(","),
            });
        }
        let shifted = s.images.iter().any(|im| !im.constant_term().is_zero());
        if shifted && !s.allow_shift {
            return Err(Error::UnitShift);
        }
        // an error in image i enters through monomials containing v_i; with no
        // constant terms the cofactor has degree >= deg(m) - 1
        let mut order = self.order();
        for (i, im) in s.images.iter().enumerate() {
            let lowest = self
                .terms()
                .filter(|(e, _)| e.get(i) > 0)
                .map(|(e, _)| e.degree())
                .min();
            if let Some(d) = lowest {
                let extra = if shifted { 0 } else { d - 1 };
                order = order.min(im.order().saturating_add(extra));
            }
        }
        if order < 1 {
            return Err(Error::TruncationUnderflow);
        }
        let images: Vec<TruncatedSeries> = s.images.iter().map(|im| im.truncate(order)).collect();
        let terms: Vec<(Exponents, Rational)> =
            self.terms().map(|(e, c)| (*e, c.clone())).collect();
        let mut powers: Vec<Vec<TruncatedSeries>> = vec![Vec::new(); images.len()];
        let out = compose_rec(&terms, 0, &images, &mut powers, s.target(), order);
        Ok(out.truncate(order))
    }
}

fn power<'a>(
    powers: &'a mut [Vec<TruncatedSeries>],
    images: &[TruncatedSeries],
    i: usize,
    k: u32,
    target: &Vars,
    order: u32,
) -> &'a TruncatedSeries {
    let cache = &mut powers[i];
    if cache.is_empty() {
        cache.push(TruncatedSeries::one(target, order));
    }
    while cache.len() <= k as usize {
        let next = &cache[cache.len() - 1] * &images[i];
        cache.push(next.truncate(order));
    }
    &cache[k as usize]
}

/// Horner-style recursion over the variables: groups terms by the exponent
/// of variable `i` and multiplies each group by a cached image power.
fn compose_rec(
    terms: &[(Exponents, Rational)],
    i: usize,
    images: &[TruncatedSeries],
    powers: &mut [Vec<TruncatedSeries>],
    target: &Vars,
    order: u32,
) -> TruncatedSeries {
    if i == images.len() {
        let c = terms.iter().fold(Rational::zero(), |acc, (_, c)| acc + c);
        return TruncatedSeries::constant(target, order, c);
    }
    let mut groups: BTreeMap<u32, Vec<(Exponents, Rational)>> = BTreeMap::new();
    for (e, c) in terms {
        groups
            .entry(e.get(i))
            .or_default()
            .push((e.with(i, 0), c.clone()));
    }
    let mut acc = TruncatedSeries::zero(target, order);
    for (k, group) in groups {
        let inner = compose_rec(&group, i + 1, images, powers, target, order);
        if inner.is_zero() {
            continue;
        }
        let term = if k == 0 {
            inner
        } else {
            let p = power(powers, images, i, k, target, order);
            if p.is_zero() {
                continue;
            }
            if p.len() == 1 && p.constant_term().is_one() {
                inner
            } else {
                (&inner * p).truncate(order)
            }
        };
        acc = (&acc + &term).truncate(order);
    }
    acc
}
