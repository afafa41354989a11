//! Recognition of DuVal (ADE) surface singularities.
//!
//! [`classify`] splits off squares with Weierstrass division and reads the
//! type from the residual curve germ. [`milnor_number`] and
//! [`blowup_classify`] are independent checks that share no code with it.

mod general;
mod lemma33;
mod milnor;

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{self, BinaryForm, CubicClass};
use crate::series::{Substitution, TruncatedSeries, Vars};

pub use general::{classify_general_section, restrict_to_hyperplane, SectionSampling};
pub use lemma33::{blowup_classify, BlowupPoints};
pub use milnor::{colength, milnor_number, milnor_number_with};

/// ADE type of a surface germ at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DuValType {
    Smooth,
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    NotDuVal,
    Indeterminate,
}

impl DuValType {
    /// Milnor number of the type, if it is a DuVal type.
    pub fn milnor(&self) -> Option<u32> {
        match self {
            DuValType::Smooth => Some(0),
            DuValType::A(n) | DuValType::D(n) => Some(*n),
            DuValType::E6 => Some(6),
            DuValType::E7 => Some(7),
            DuValType::E8 => Some(8),
            _ => None,
        }
    }

    pub fn is_determined(&self) -> bool {
        *self != DuValType::Indeterminate
    }
}

impl fmt::Display for DuValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DuValType::Smooth => write!(f, "Smooth"),
            DuValType::A(n) => write!(f, "A{n}"),
            DuValType::D(n) => write!(f, "D{n}"),
            DuValType::E6 => write!(f, "E6"),
            DuValType::E7 => write!(f, "E7"),
            DuValType::E8 => write!(f, "E8"),
            DuValType::NotDuVal => write!(f, "NotDuVal"),
            DuValType::Indeterminate => write!(f, "Indeterminate"),
        }
    }
}

impl std::str::FromStr for DuValType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("not a DuVal type: `{s}`"));
        Ok(match s {
            "Smooth" => DuValType::Smooth,
            "E6" => DuValType::E6,
            "E7" => DuValType::E7,
            "E8" => DuValType::E8,
            "NotDuVal" => DuValType::NotDuVal,
            "Indeterminate" => DuValType::Indeterminate,
            _ => {
                let n: u32 = s.get(1..).and_then(|r| r.parse().ok()).ok_or_else(bad)?;
                match s.as_bytes()[0] {
                    b'A' if n >= 1 => DuValType::A(n),
                    b'D' if n >= 4 => DuValType::D(n),
                    _ => return Err(bad()),
                }
            }
        })
    }
}

impl Serialize for DuValType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Truncation schedule: start order, step and cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub step: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start: 12,
            step: 4,
            cap: 24,
        }
    }
}

impl Precision {
    pub fn fixed(n: u32) -> Self {
        Precision {
            start: n,
            step: 4,
            cap: n,
        }
    }

    /// The orders to try, in increasing order.
    pub fn schedule(&self) -> impl Iterator<Item = u32> + '_ {
        let mut n = Some(self.start);
        std::iter::from_fn(move || {
            let cur = n?;
            n = (cur < self.cap).then(|| (cur + self.step).min(self.cap));
            Some(cur)
        })
    }

    /// Runs `f` on successively longer truncations of `g` (capped at the
    /// precision `g` is known to) until it returns a determined answer.
    pub fn retry<T, F>(&self, g: &TruncatedSeries, mut f: F) -> Result<T>
    where
        F: FnMut(&TruncatedSeries) -> Result<Option<T>>,
    {
        let mut last = None;
        for n in self.schedule() {
            let n = n.min(g.order());
            if last == Some(n) {
                break;
            }
            last = Some(n);
            if let Some(v) = f(&g.truncate(n))? {
                return Ok(v);
            }
        }
        Err(Error::Indeterminate {
            order: last.unwrap_or(g.order()),
            reason: "raise the truncation order".into(),
        })
    }
}

/// Vanishing order of a one-variable (or any) series, with its certainty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Vanishing {
    Exact(u32),
    AtLeast(u32),
}

impl Vanishing {
    pub(crate) fn exactly(self, k: u32) -> bool {
        self == Vanishing::Exact(k)
    }

    pub(crate) fn at_least(self, k: u32) -> bool {
        match self {
            Vanishing::Exact(j) | Vanishing::AtLeast(j) => j >= k,
        }
    }
}

pub(crate) fn ord(s: &TruncatedSeries) -> Vanishing {
    match s.min_degree() {
        Some(k) => Vanishing::Exact(k),
        None => Vanishing::AtLeast(s.order()),
    }
}

fn check_surface(g: &TruncatedSeries) -> Result<()> {
    if g.nvars() != 3 {
        return Err(Error::Shape(format!(
            "a surface germ needs 3 variables, got {}",
            g.nvars()
        )));
    }
    if !g.constant_term().is_zero() {
        return Err(Error::NotAtOrigin);
    }
    Ok(())
}

/// DuVal type with the default truncation schedule.
pub fn classify(g: &TruncatedSeries) -> Result<DuValType> {
    classify_with(g, &Precision::default())
}

/// DuVal type, retrying at longer truncations while the answer depends on
/// unknown terms. Returns `Indeterminate` if the cap is reached.
pub fn classify_with(g: &TruncatedSeries, p: &Precision) -> Result<DuValType> {
    check_surface(g)?;
    // most germs are settled by a short jet; classify_at never guesses
    for k in [4, 6, 8] {
        if k < p.start && k < g.order() {
            let t = classify_at(&g.truncate(k))?;
            if t.is_determined() {
                return Ok(t);
            }
        }
    }
    match p.retry(g, |h| {
        let t = classify_at(h)?;
        Ok(t.is_determined().then_some(t))
    }) {
        Ok(t) => Ok(t),
        Err(Error::Indeterminate { .. }) => Ok(DuValType::Indeterminate),
        Err(e) => Err(e),
    }
}

/// Single pass at the truncation order of `g`.
pub fn classify_at(g: &TruncatedSeries) -> Result<DuValType> {
    check_surface(g)?;
    let n = g.order();
    if n < 2 {
        return Ok(DuValType::Indeterminate);
    }
    if g.terms().any(|(e, _)| e.degree() == 1) {
        return Ok(DuValType::Smooth);
    }
    if n < 3 {
        return Ok(DuValType::Indeterminate);
    }
    let q = forms::quadratic_rank(&forms::quadratic_matrix(g));
    if q.rank == 0 {
        return Ok(if g.is_zero() {
            DuValType::Indeterminate
        } else {
            DuValType::NotDuVal
        });
    }
    if q.rank == 3 {
        return Ok(DuValType::A(1));
    }
    // diagonal coordinates: nonzero squares come first
    let h = g.substitute(&Substitution::linear(g.vars(), n, &q.basis))?;
    let resid = split_off(&h, 0)?;
    if q.rank == 2 {
        let delta = split_off(&resid, 0)?;
        return Ok(match ord(&delta) {
            Vanishing::Exact(k) => DuValType::A(k - 1),
            Vanishing::AtLeast(_) => DuValType::Indeterminate,
        });
    }
    classify_corank2(&resid)
}

/// `h` restricted to its critical locus in the variable `v`, as a series in
/// the other variables.
///
/// The quadratic part of `h` must be diagonal with a nonzero `v^2`
/// coefficient. By the splitting lemma `h` is then equivalent to `v^2` plus
/// the result, which is exact to the order of `h`: errors in the critical
/// point only enter quadratically.
fn split_off(h: &TruncatedSeries, v: usize) -> Result<TruncatedSeries> {
    let n = h.order();
    let names: Vec<&str> = h
        .vars()
        .names()
        .enumerate()
        .filter(|(i, _)| *i != v)
        .map(|(_, s)| s)
        .collect();
    let rest = Vars::new(&names);
    let coeffs = h
        .coefficients_in(v)
        .iter()
        .map(|c| c.project(&rest))
        .collect::<Result<Vec<_>>>()?;
    let lambda = coeffs.get(2).map(|c| c.constant_term()).unwrap_or_default();
    if lambda.is_zero() {
        return Err(Error::Shape("no square term to split off".into()));
    }
    // h_v = 2 lambda v + R(v, rest) with R of order 2
    let deriv: Vec<TruncatedSeries> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&crate::series::rat(i as i64)))
        .collect();
    let eval = |cs: &[TruncatedSeries], x: &TruncatedSeries| {
        cs.iter()
            .rev()
            .fold(TruncatedSeries::zero(&rest, n), |acc, c| &(&acc * x) + c)
    };
    let step = (&lambda * crate::series::rat(2)).recip();
    let mut x = TruncatedSeries::zero(&rest, n);
    for _ in 0..n {
        let next = &x - &eval(&deriv, &x).scale(&step);
        if next.truncate(n - 1) == x.truncate(n - 1) {
            return Ok(eval(&coeffs, &x));
        }
        x = next;
    }
    Err(Error::Indeterminate {
        order: n,
        reason: "critical point iteration did not settle".into(),
    })
}

/// Type of `w^2 + g(u, v)` where `g` has order at least 3.
fn classify_corank2(g: &TruncatedSeries) -> Result<DuValType> {
    let vars = g.vars().clone();
    let (u, v) = (vars.name(0).to_string(), vars.name(1).to_string());
    if g.order() <= 3 {
        return Ok(DuValType::Indeterminate);
    }
    let cubic = BinaryForm::from_series(g, &u, &v, 3)?;
    match forms::classify_cubic(&cubic) {
        CubicClass::Zero => Ok(DuValType::NotDuVal),
        CubicClass::SquareFree => Ok(DuValType::D(4)),
        CubicClass::DoubleLine { .. } => Ok(match milnor::milnor_number_at(g)? {
            Some(mu) => DuValType::D(mu),
            None => DuValType::Indeterminate,
        }),
        cls @ CubicClass::TripleLine { .. } => {
            let s = forms::normalize_to_axes(&cls, &vars, g.order())?;
            let h = g.substitute(&s)?;
            classify_e(&h)
        }
    }
}

/// E-branch: the cubic part of `g` is `c u^3`.
fn classify_e(g: &TruncatedSeries) -> Result<DuValType> {
    let vars = g.vars().clone();
    let (_, r) = g.weierstrass_divide(vars.name(0), 3)?;
    // u -> u - r2/3 removes the u^2 coefficient
    let third = crate::series::ratio(1, 3);
    let r2_3 = r[2].scale(&third);
    let a = &r[1] - &(&r[2] * &r2_3);
    let b = &(&r[0] - &(&r[1] * &r2_3)) + &(&(&r2_3 * &r2_3) * &r2_3).scale(&crate::series::rat(2));
    use DuValType::*;
    let (a, b) = (ord(&a), ord(&b));
    Ok(if a.exactly(3) && b.at_least(5) {
        E7
    } else if b.exactly(4) {
        E6
    } else if a.at_least(4) && b.exactly(5) {
        E8
    } else if a.at_least(4) && b.at_least(6) {
        NotDuVal
    } else {
        Indeterminate
    })
}

/// Parses a surface germ in `x, y, z`.
pub fn surface(text: &str, order: u32) -> Result<TruncatedSeries> {
    crate::io::parse_polynomial_in(text, &Vars::xyz(), order)
}
