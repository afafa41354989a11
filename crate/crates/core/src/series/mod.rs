//! Exact truncated multivariate power series over the rationals.
//!
//! A [`TruncatedSeries`] stores the terms of total degree `< order` of a
//! formal power series in a declared, ordered list of variables. Every
//! operation keeps track of how many degrees of the result are actually
//! determined by its inputs and lowers `order` accordingly.

mod division;
mod subst;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use division::rational_root;
pub use subst::Substitution;

use crate::error::{Error, Result};

/// Coefficient field.
pub type Rational = num_rational::BigRational;

/// Largest number of variables a series may carry.
pub const MAX_VARS: usize = 8;

/// Serde helpers writing rationals as exact `"p/q"` strings.
pub mod rational_serde {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }
}

/// Shorthand for the integer `n` as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q` as a [`Rational`].
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exponent vector indexed by the position of a variable in its [`Vars`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponents([u8; MAX_VARS]);

impl Exponents {
    pub fn zero() -> Self {
        Exponents([0; MAX_VARS])
    }

    pub fn from_slice(e: &[u32]) -> Self {
        let mut out = [0u8; MAX_VARS];
        for (i, &v) in e.iter().enumerate() {
            out[i] = u8::try_from(v).expect("exponent exceeds 255");
        }
        Exponents(out)
    }

    pub fn unit(i: usize) -> Self {
        Self::zero().with(i, 1)
    }

    pub fn get(&self, i: usize) -> u32 {
        u32::from(self.0[i])
    }

    pub fn with(mut self, i: usize, e: u32) -> Self {
        self.0[i] = u8::try_from(e).expect("exponent exceeds 255");
        self
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    /// Sum of the exponents at the given positions.
    pub fn degree_in(&self, idx: &[usize]) -> u32 {
        idx.iter().map(|&i| self.get(i)).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0.iter()) {
            *o = o.checked_add(*e).expect("exponent overflow");
        }
        Exponents(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut out = other.0;
        for (o, e) in out.iter_mut().zip(self.0.iter()) {
            *o -= *e;
        }
        Exponents(out)
    }

    pub fn as_slice(&self, n: usize) -> &[u8] {
        &self.0[..n]
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

/// Ordered list of variable names shared between series.
#[derive(Clone)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// The ambient variables `x, y, z, t` of a threefold germ.
    pub fn xyzt() -> Self {
        Vars::new(&["x", "y", "z", "t"])
    }

    /// The variables `x, y, z` of a surface germ.
    pub fn xyz() -> Self {
        Vars::new(&["x", "y", "z"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

/// A power series known modulo the terms of total degree `>= order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vars,
    order: u32,
    terms: BTreeMap<Exponents, Rational>,
}

impl TruncatedSeries {
    pub fn zero(vars: &Vars, order: u32) -> Self {
        TruncatedSeries {
            vars: vars.clone(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, order: u32, c: Rational) -> Self {
        Self::monomial(vars, order, Exponents::zero(), c)
    }

    pub fn one(vars: &Vars, order: u32) -> Self {
        Self::constant(vars, order, Rational::one())
    }

    pub fn monomial(vars: &Vars, order: u32, e: Exponents, c: Rational) -> Self {
        let mut s = Self::zero(vars, order);
        s.add_term(e, c);
        s
    }

    /// The coordinate function `name`.
    pub fn var(vars: &Vars, order: u32, name: &str) -> Result<Self> {
        let i = vars.require(name)?;
        Ok(Self::monomial(
            vars,
            order,
            Exponents::unit(i),
            Rational::one(),
        ))
    }

    pub fn var_at(vars: &Vars, order: u32, i: usize) -> Self {
        Self::monomial(vars, order, Exponents::unit(i), Rational::one())
    }

    pub fn from_terms<I>(vars: &Vars, order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut s = Self::zero(vars, order);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Adds `c * x^e`, dropping it if its degree reaches the truncation.
    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() || e.degree() >= self.order {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponents) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coeff_of(&self, mono: &[(&str, u32)]) -> Rational {
        let mut e = Exponents::zero();
        for (v, k) in mono {
            match self.vars.index(v) {
                Some(i) => e = e.with(i, *k),
                None => return Rational::zero(),
            }
        }
        self.coeff(&e)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exponents::zero())
    }

    /// Lowest total degree of a stored term, `None` for the zero series.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::degree).min()
    }

    /// Largest total degree of a stored term.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::degree).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|e, _| e.degree() == d)
    }

    /// Terms satisfying the predicate, same variables and order.
    pub fn filter<F: Fn(&Exponents, &Rational) -> bool>(&self, keep: F) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(e, c)| keep(e, c))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree `>= n` and lowers the order to `min(order, n)`.
    pub fn truncate(&self, n: u32) -> Self {
        let n = n.min(self.order);
        TruncatedSeries {
            vars: self.vars.clone(),
            order: n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() < n)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the stored terms as exact with a new truncation order.
    ///
    /// Raising the order is only meaningful when the series is known to be a
    /// polynomial (e.g. freshly parsed input).
    pub fn with_order(&self, n: u32) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            order: n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() < n)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.names().collect::<Vec<_>>().join(","),
                right: other.vars.names().collect::<Vec<_>>().join(","),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let b_min = other.min_degree().unwrap_or(0);
        let order = self.order.min(other.order);
        let mut a: Vec<(u32, &Exponents, &Rational)> =
            self.terms.iter().map(|(e, c)| (e.degree(), e, c)).collect();
        let mut b: Vec<(u32, &Exponents, &Rational)> = other
            .terms
            .iter()
            .map(|(e, c)| (e.degree(), e, c))
            .collect();
        a.sort_by_key(|t| t.0);
        b.sort_by_key(|t| t.0);
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (da, ea, ca) in &a {
            if *da + b_min >= order {
                break;
            }
            for (db, eb, cb) in &b {
                if da + db >= order {
                    break;
                }
                let e = ea.mul(eb);
                let c = *ca * *cb;
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            vars: self.vars.clone(),
            order,
            terms: acc,
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars, self.order);
        }
        TruncatedSeries {
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`; the order rises by `deg e`.
    pub fn mul_monomial(&self, e: &Exponents) -> Self {
        let order = self.order + e.degree();
        TruncatedSeries {
            vars: self.vars.clone(),
            order,
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.mul(e), c.clone()))
                .collect(),
        }
    }

    /// Exact division by the monomial `x^e`, `None` if some term is not divisible.
    pub fn div_monomial(&self, e: &Exponents) -> Option<Self> {
        let d = e.degree();
        if self.order < d {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (f, c) in &self.terms {
            if !e.divides(f) {
                return None;
            }
            terms.insert(e.quotient_of(f), c.clone());
        }
        Some(TruncatedSeries {
            vars: self.vars.clone(),
            order: self.order - d,
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.vars, self.order);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to the `i`-th variable.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars, self.order.saturating_sub(1));
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k > 0 {
                out.add_term(e.with(i, k - 1), c * rat(i64::from(k)));
            }
        }
        out
    }

    pub fn derivative_by(&self, name: &str) -> Result<Self> {
        Ok(self.derivative(self.vars.require(name)?))
    }

    /// Sets the listed variables to zero (the variable list is unchanged).
    pub fn restrict_zero(&self, idx: &[usize]) -> Self {
        self.filter(|e, _| idx.iter().all(|&i| e.get(i) == 0))
    }

    pub fn restrict_zero_by(&self, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.restrict_zero(&idx))
    }

    /// Vanishing order along the coordinate subspace cut out by `ideal`.
    ///
    /// `Ok(None)` means the series is zero to the available precision.
    pub fn order_along(&self, ideal: &[&str]) -> Result<Option<u32>> {
        if ideal.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let idx = ideal
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.terms.keys().map(|e| e.degree_in(&idx)).min())
    }

    /// Re-embeds the series into another variable list, mapping by name.
    pub fn embed(&self, target: &Vars) -> Result<Self> {
        let map = (0..self.nvars())
            .map(|i| target.require(self.vars.name(i)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self::zero(target, self.order);
        for (e, c) in &self.terms {
            let mut f = Exponents::zero();
            for (i, &j) in map.iter().enumerate() {
                f = f.with(j, e.get(i));
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Drops variables that do not occur, keeping the named ones in order.
    pub fn project(&self, target: &Vars) -> Result<Self> {
        let mut out = Self::zero(target, self.order);
        for (e, c) in &self.terms {
            let mut f = Exponents::zero();
            for i in 0..self.nvars() {
                let k = e.get(i);
                match target.index(self.vars.name(i)) {
                    Some(j) => f = f.with(j, k),
                    None if k == 0 => {}
                    None => return Err(Error::UnknownVariable(self.vars.name(i).to_string())),
                }
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Collects the series as a polynomial in variable `i`:
    /// entry `k` is the coefficient of `v^k` (a series not involving `v`).
    pub fn coefficients_in(&self, i: usize) -> Vec<TruncatedSeries> {
        let mut out: Vec<TruncatedSeries> = Vec::new();
        for (e, c) in &self.terms {
            let k = e.get(i) as usize;
            while out.len() <= k {
                out.push(Self::zero(&self.vars, self.order));
            }
            out[k].add_term(e.with(i, 0), c.clone());
        }
        out
    }

    /// Evaluates a series in a single variable at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, p) in point.iter().enumerate() {
                let k = e.get(i);
                if k > 0 {
                    m *= num_traits::pow(p.clone(), k as usize);
                }
            }
            acc += m;
        }
        acc
    }

    /// Coefficient of the smallest stored exponent vector.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // print by ascending degree, then by descending exponent vector
        let mut items: Vec<(&Exponents, &Rational)> = self.terms.iter().collect();
        items.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(b.0.cmp(a.0)));
        for (n, (e, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.degree() == 0 {
                factors.push(fmt_rational(&abs));
            }
            for i in 0..self.nvars() {
                match e.get(i) {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    k => factors.push(format!("{}^{}", self.vars.name(i), k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self, self.order)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl std::ops::$tr<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$call(rhs).expect("series over different variables")
            }
        }
        impl std::ops::$tr<TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self)
                    .$call(&rhs)
                    .expect("series over different variables")
            }
        }
        impl std::ops::$tr<&TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                (&self).$call(rhs).expect("series over different variables")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}
