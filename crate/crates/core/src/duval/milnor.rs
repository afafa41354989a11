use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Precision;
use crate::error::{Error, Result};
use crate::series::{Exponents, TruncatedSeries};

/// All exponent vectors in `n` variables of total degree `< m`, by degree.
fn monomials(n: usize, m: u32) -> Vec<Exponents> {
    let mut out = vec![Exponents::zero()];
    let mut layer = vec![Exponents::zero()];
    for _ in 1..m {
        let mut next = Vec::new();
        for e in &layer {
            // extend only at or after the last nonzero slot to avoid repeats
            let last = (0..n).rev().find(|&i| e.get(i) > 0).unwrap_or(0);
            for i in last..n {
                next.push(e.with(i, e.get(i) + 1));
            }
        }
        out.extend(next.iter().copied());
        layer = next;
    }
    out
}

/// `dim k[[v]] / (J(g) + m^m)`, by sparse fraction-free elimination.
///
/// The partials must be known modulo `m^m`, i.e. `g.order() > m`.
pub fn colength(g: &TruncatedSeries, m: u32) -> usize {
    let n = g.nvars();
    let basis = monomials(n, m);
    let index: HashMap<Exponents, usize> = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for v in 0..n {
        let d = g.derivative(v);
        let Some(low) = d.min_degree() else { continue };
        // clear denominators once per partial
        let den = d
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let scaled: Vec<(Exponents, BigInt)> = d
            .terms()
            .map(|(e, c)| (*e, c.numer() * (&den / c.denom())))
            .collect();
        for mono in &basis {
            if mono.degree() + low >= m {
                continue;
            }
            let row: Row = scaled
                .iter()
                .map(|(e, c)| (e.mul(mono), c))
                .filter(|(p, _)| p.degree() < m)
                .map(|(p, c)| (index[&p], c.clone()))
                .collect();
            reduce_insert(&mut pivots, row);
        }
    }
    basis.len() - pivots.len()
}

type Row = BTreeMap<usize, BigInt>;

/// Reduces `row` against the pivots (each keyed by its leading column) and
/// stores what is left, made primitive, as a new pivot.
fn reduce_insert(pivots: &mut BTreeMap<usize, Row>, mut row: Row) {
    while let Some(lead) = row.keys().copied().find(|c| pivots.contains_key(c)) {
        let p = &pivots[&lead];
        let (a, b) = (row[&lead].clone(), p[&lead].clone());
        let g = a.gcd(&b);
        let (a, b) = (a / &g, b / &g);
        // row <- b * row - a * pivot, which cancels the lead
        for v in row.values_mut() {
            *v *= &b;
        }
        for (c, v) in p {
            let e = row.entry(*c).or_insert_with(BigInt::zero);
            *e -= &a * v;
            if e.is_zero() {
                row.remove(c);
            }
        }
    }
    if let Some(&lead) = row.keys().next() {
        let content = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !content.is_one() {
            for v in row.values_mut() {
                *v /= &content;
            }
        }
        pivots.insert(lead, row);
    }
}

/// Milnor number at the truncation order of `g`, if the colength is stable
/// between `m - 2` and `m = order - 1`.
pub(crate) fn milnor_number_at(g: &TruncatedSeries) -> Result<Option<u32>> {
    let k = g.order();
    if k < 4 {
        return Ok(None);
    }
    let hi = colength(g, k - 1);
    let lo = colength(g, k - 3);
    Ok((hi == lo).then_some(hi as u32))
}

/// Milnor number with the default truncation schedule.
pub fn milnor_number(g: &TruncatedSeries) -> Result<u32> {
    milnor_number_with(g, &Precision::default())
}

pub fn milnor_number_with(g: &TruncatedSeries, p: &Precision) -> Result<u32> {
    if !g.constant_term().is_zero() {
        return Err(Error::NotAtOrigin);
    }
    // a stable colength proves m^lo lies in the Jacobian ideal, so short jets suffice
    for k in [5, 7, 9, 11] {
        if k < p.start && k < g.order() {
            if let Some(mu) = milnor_number_at(&g.truncate(k))? {
                return Ok(mu);
            }
        }
    }
    match p.retry(g, milnor_number_at) {
        Err(Error::Indeterminate { .. }) if g.order() >= p.cap => Err(Error::NonIsolated),
        other => other,
    }
}
