//! Blow-up charts of hypersurface germs along coordinate centers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms;
use crate::linalg::Matrix;
use crate::series::{Exponents, Rational, Substitution, TruncatedSeries, Vars};

/// One affine chart of a blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupChart {
    /// The center variable kept as the exceptional coordinate.
    pub chart: String,
    pub center: Vec<String>,
    pub total: TruncatedSeries,
    pub strict: TruncatedSeries,
    /// `total = strict * chart^exponent`.
    pub exponent: u32,
}

impl BlowupChart {
    /// Defining variables of the ambient exceptional divisor in this chart.
    pub fn exceptional_locus(&self) -> (String, u32) {
        (format!("{}=0", self.chart), self.exponent)
    }
}

/// Chart `chart` of the blow-up of `f` along the coordinate subspace `center`.
pub fn blowup_chart(f: &TruncatedSeries, center: &[&str], chart: &str) -> Result<BlowupChart> {
    let vars = f.vars();
    let ci = vars.require(chart)?;
    if !center.contains(&chart) {
        return Err(Error::Shape(format!(
            "chart variable `{chart}` is not in the center"
        )));
    }
    let n = f.order();
    let c = TruncatedSeries::var_at(vars, n, ci);
    let mut repl = Vec::new();
    for v in center {
        if *v != chart {
            let vi = vars.require(v)?;
            repl.push((*v, &TruncatedSeries::var_at(vars, n, vi) * &c));
        }
    }
    let total = f.substitute(&Substitution::replacing(vars, n, &repl)?)?;
    let exponent = match f.order_along(center)? {
        Some(0) => return Err(Error::NotContained),
        Some(e) => e,
        None => {
            return Err(Error::Indeterminate {
                order: n,
                reason: "series vanishes to the available precision".into(),
            })
        }
    };
    let strict = total
        .div_monomial(&Exponents::unit(ci).with(ci, exponent))
        .ok_or_else(|| Error::Shape("total transform not divisible".into()))?;
    Ok(BlowupChart {
        chart: chart.to_string(),
        center: center.iter().map(|s| s.to_string()).collect(),
        total,
        strict,
        exponent,
    })
}

/// All charts of the blow-up along a coordinate curve (three center variables
/// in a four-variable ambient space) or any coordinate center.
pub fn blowup_curve(f: &TruncatedSeries, center: &[&str]) -> Result<Vec<BlowupChart>> {
    if center.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    center.iter().map(|c| blowup_chart(f, center, c)).collect()
}

/// The three charts of the blow-up of the origin of a surface germ.
pub fn blowup_point_surface(g: &TruncatedSeries) -> Result<Vec<BlowupChart>> {
    let names: Vec<String> = g.vars().names().map(String::from).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    blowup_curve(g, &refs)
}

/// A prime divisor in the preimage of the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub name: String,
    pub multiplicity: u32,
    /// Equations in the first chart where the component was seen.
    pub locus: String,
    /// Homogeneous fibre equation in the center variables (`fiber` for the
    /// component lying over the base point).
    pub key: String,
    pub charts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalDecomposition {
    pub components: Vec<Component>,
}

impl ExceptionalDecomposition {
    pub fn multiplicity(&self, name: &str) -> Option<u32> {
        self.components
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.multiplicity)
    }
}

impl fmt::Display for ExceptionalDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| match c.multiplicity {
                1 => c.name.clone(),
                m => format!("{m}{}", c.name),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

struct Found {
    key: String,
    multiplicity: u32,
    /// Geometric components sharing this fibre equation (2 for a line pair).
    count: u32,
    locus: String,
}

/// Homogenizes an affine polynomial in the non-chart center variables.
fn homogenize(q: &TruncatedSeries, chart: usize, deg: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(q.vars(), deg + 1);
    for (e, c) in q.terms() {
        out.add_term(e.with(chart, deg - e.degree()), c.clone());
    }
    normalize_key(&out)
}

fn normalize_key(f: &TruncatedSeries) -> TruncatedSeries {
    // scale so the coefficient of the largest exponent vector is 1
    match f.terms().last() {
        Some((_, c)) => f.scale(&c.recip()),
        None => f.clone(),
    }
}

fn chart_components(ch: &BlowupChart) -> Result<Vec<Found>> {
    let vars = ch.strict.vars().clone();
    let ci = vars.require(&ch.chart)?;
    let center: Vec<usize> = ch
        .center
        .iter()
        .map(|c| vars.require(c))
        .collect::<Result<_>>()?;
    let params: Vec<usize> = (0..vars.len()).filter(|i| !center.contains(i)).collect();
    let r = ch.strict.restrict_zero(&[ci]);
    if r.is_zero() {
        return Err(Error::Indeterminate {
            order: ch.strict.order(),
            reason: "strict transform vanishes on the exceptional divisor to this precision".into(),
        });
    }
    if ch.exponent >= r.order() {
        return Err(Error::Indeterminate {
            order: r.order(),
            reason: "fibre equation not determined".into(),
        });
    }
    let mut found = Vec::new();
    let mut rest = r.clone();
    for &p in &params {
        let k = rest.terms().map(|(e, _)| e.get(p)).min().unwrap_or(0);
        if k > 0 {
            rest = rest
                .div_monomial(&Exponents::unit(p).with(p, k))
                .expect("common factor");
            found.push(Found {
                key: "fiber".into(),
                multiplicity: k,
                count: 1,
                locus: format!("{}={}=0", vars.name(p), ch.chart),
            });
        }
    }
    for &o in center.iter().filter(|&&o| o != ci) {
        let k = rest.terms().map(|(e, _)| e.get(o)).min().unwrap_or(0);
        if k > 0 {
            rest = rest
                .div_monomial(&Exponents::unit(o).with(o, k))
                .expect("common factor");
            let key = homogenize(&TruncatedSeries::var_at(&vars, 2, o), ci, 1);
            found.push(Found {
                key: key.to_string(),
                multiplicity: k,
                count: 1,
                locus: format!("{}={}=0", vars.name(o), ch.chart),
            });
        }
    }
    let q0 = rest.restrict_zero(&params);
    let deg = q0.max_degree().unwrap_or(0);
    if deg == 0 {
        return Ok(found);
    }
    let key = homogenize(&q0, ci, deg);
    let count = match deg {
        1 => 1,
        2 => {
            let rank = forms::quadratic_rank(&forms::quadratic_matrix(&key)).rank;
            match rank {
                3 => 1,
                2 => 2,
                _ => {
                    return Err(Error::NonCoordinateComponent(format!(
                        "{rest} (non-reduced fibre)"
                    )))
                }
            }
        }
        _ => return Err(Error::NonCoordinateComponent(rest.to_string())),
    };
    found.push(Found {
        key: key.to_string(),
        multiplicity: 1,
        count,
        locus: format!("{rest}={}=0", ch.chart),
    });
    Ok(found)
}

/// Prime components (with multiplicities) of the preimage of the center,
/// merged across charts.
pub fn exceptional_decomposition(charts: &[BlowupChart]) -> Result<ExceptionalDecomposition> {
    let mut merged: BTreeMap<String, (u32, u32, String, Vec<String>)> = BTreeMap::new();
    for ch in charts {
        let mut seen = Vec::new();
        for f in chart_components(ch)? {
            if seen.contains(&f.key) {
                return Err(Error::NonCoordinateComponent(format!(
                    "two components with fibre {} in chart {}",
                    f.key, ch.chart
                )));
            }
            seen.push(f.key.clone());
            match merged.get_mut(&f.key) {
                Some(entry) => {
                    if entry.0 != f.multiplicity || entry.1 != f.count {
                        return Err(Error::Shape(format!(
                            "inconsistent multiplicity for {} across charts",
                            f.key
                        )));
                    }
                    entry.3.push(ch.chart.clone());
                }
                None => {
                    merged.insert(
                        f.key,
                        (f.multiplicity, f.count, f.locus, vec![ch.chart.clone()]),
                    );
                }
            }
        }
    }
    let dominant: u32 = merged
        .iter()
        .filter(|(k, _)| *k != "fiber")
        .map(|(_, v)| v.1)
        .sum();
    let mut components = Vec::new();
    let mut idx = 0;
    for (key, (m, count, locus, charts)) in &merged {
        if key == "fiber" {
            continue;
        }
        for _ in 0..*count {
            idx += 1;
            let name = if dominant == 1 {
                "E".to_string()
            } else {
                format!("E{idx}")
            };
            components.push(Component {
                name,
                multiplicity: *m,
                locus: locus.clone(),
                key: key.clone(),
                charts: charts.clone(),
            });
        }
    }
    if let Some((m, _, locus, charts)) = merged.get("fiber") {
        components.push(Component {
            name: "F".into(),
            multiplicity: *m,
            locus: locus.clone(),
            key: "fiber".into(),
            charts: charts.clone(),
        });
    }
    Ok(ExceptionalDecomposition { components })
}

/// Generic-point smoothness of `{f = 0}` along the coordinate curve where
/// the `fixed` variables vanish.
///
/// Returns `false` when every partial vanishes on the curve to the available
/// precision.
pub fn smooth_along_curve(f: &TruncatedSeries, fixed: &[&str]) -> Result<bool> {
    let idx = fixed
        .iter()
        .map(|v| f.vars().require(v))
        .collect::<Result<Vec<_>>>()?;
    if idx.len() + 1 != f.nvars() {
        return Err(Error::Shape(
            "the curve must leave exactly one free variable".into(),
        ));
    }
    if !f.restrict_zero(&idx).is_zero() {
        return Err(Error::NotContained);
    }
    if f.order() < 2 {
        return Err(Error::Indeterminate {
            order: f.order(),
            reason: "no precision left for the partial derivatives".into(),
        });
    }
    Ok((0..f.nvars()).any(|i| !f.derivative(i).restrict_zero(&idx).is_zero()))
}

/// The chart of the second blow-up in the E7 case: blow up the curve
/// `(x, y, t)`, take the `t` chart, then blow up `(y, t)` in its `t` chart.
pub fn e7_z_chart(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let w = blowup_chart(f, &["x", "y", "t"], "t")?;
    Ok(blowup_chart(&w.strict, &["y", "t"], "t")?.strict)
}

/// Intermediate equations of the E6 chart chain.
#[derive(Clone, Debug)]
pub struct W2Chain {
    /// `t` chart of the blow-up along `x = y = t = 0`.
    pub w: TruncatedSeries,
    /// After `x = v t - a030 z` and division by `t` (ambient variables `v, y, z, t`).
    pub w1: TruncatedSeries,
    /// `w1(t = 0) / z^2`, the equation of `E_1` in the `u = 1` chart.
    pub q: TruncatedSeries,
    /// After `v = s t - (q - v)` and division by `t` (variables `s, y, z, t`).
    pub w2: TruncatedSeries,
    /// Linear part of `w2` as coefficients of `(y, z, t)`; `s` never appears linearly.
    pub linear: [Rational; 3],
}

/// Runs the E6 chain on a germ `x^2 + x z^2 + y^3 + a y t^2 + b y^2 t + t f(y, z, t)`
/// and returns the linear term of the last chart.
pub fn linear_term_w2(f: &TruncatedSeries) -> Result<W2Chain> {
    let vars = f.vars().clone();
    if vars != Vars::xyzt() {
        return Err(Error::Shape("expected variables x, y, z, t".into()));
    }
    let n = f.order();
    // only terms of degree < n can reach the final chart below degree n - 3
    let exact = f.clone();
    let w = blowup_chart(&exact, &["x", "y", "t"], "t")?.strict;
    let a030 = w.coeff_of(&[("z", 3)]);
    let chain_vars = Vars::new(&["v", "y", "z", "t"]);
    let w_v = w.embed(&Vars::new(&["x", "y", "z", "t", "v"]))?;
    let big = w_v.vars().clone();
    let m = w_v.order();
    let var = |name: &str| TruncatedSeries::var(&big, m, name).expect("known");
    let x_img = &(&var("v") * &var("t")) - &var("z").scale(&a030);
    let sub = Substitution::replacing(&big, m, &[("x", x_img)])?;
    let w1 = w_v.substitute(&sub)?;
    let ti = big.require("t")?;
    let w1 = w1
        .div_monomial(&Exponents::unit(ti))
        .ok_or_else(|| Error::Shape("x + a030 z does not cut out E".into()))?
        .project(&chain_vars)
        .map_err(|_| Error::Shape("x survived the substitution".into()))?;

    let cv = |name: &str, s: &TruncatedSeries| {
        TruncatedSeries::var(s.vars(), s.order(), name).expect("known")
    };
    let zi = chain_vars.require("z")?;
    let vi = chain_vars.require("v")?;
    let q = w1
        .restrict_zero_by(&["t"])?
        .div_monomial(&Exponents::unit(zi).with(zi, 2))
        .ok_or_else(|| Error::Shape("restriction to t = 0 is not divisible by z^2".into()))?;
    let rho = q.filter(|e, _| e.get(vi) == 0);
    if &q - &rho != cv("v", &q) {
        return Err(Error::Shape(format!(
            "E1 equation not linear in v with unit coefficient: {q}"
        )));
    }
    let s_vars = Vars::new(&["s", "y", "z", "t"]);
    let big2 = Vars::new(&["v", "y", "z", "t", "s"]);
    let w1_s = w1.embed(&big2)?;
    let rho_s = rho.embed(&big2)?;
    let m2 = w1_s.order();
    let s_t = &TruncatedSeries::var(&big2, m2, "s")? * &TruncatedSeries::var(&big2, m2, "t")?;
    let sub = Substitution::replacing(&big2, m2, &[("v", &s_t - &rho_s)])?.with_shifts();
    let w2 = w1_s.substitute(&sub)?;
    let ti2 = big2.require("t")?;
    let w2 = w2
        .div_monomial(&Exponents::unit(ti2))
        .ok_or_else(|| Error::Shape("W2 chart not divisible by t".into()))?
        .project(&s_vars)
        .map_err(|_| Error::Shape("v survived the substitution".into()))?;
    // each germ term of degree D lands in degree >= D - 3
    let w2 = w2.truncate(n.saturating_sub(3));
    if w2.order() < 2 {
        return Err(Error::TruncationUnderflow);
    }
    if !w2.constant_term().is_zero() {
        return Err(Error::Shape(
            "W2 chart does not pass through the origin".into(),
        ));
    }
    let lin = |name: &str| w2.coeff_of(&[(name, 1)]);
    if !lin("s").is_zero() {
        return Err(Error::Shape("unexpected linear s term".into()));
    }
    let linear = [lin("y"), lin("z"), lin("t")];
    Ok(W2Chain {
        w,
        w1,
        q,
        w2,
        linear,
    })
}

/// The closed-form linear term `[(a030^2 + a021)^2 + a003] t
/// + [2 a030 (a030^2 + a021) + a012] z + a y`, as `(y, z, t)` coefficients.
pub fn linear_term_w2_closed_form(
    a: &Rational,
    a030: &Rational,
    a021: &Rational,
    a012: &Rational,
    a003: &Rational,
) -> [Rational; 3] {
    let s = a030 * a030 + a021;
    let two = Rational::from_integer(2.into());
    [a.clone(), &two * a030 * &s + a012, &s * &s + a003]
}

/// The two charts of the blow-up of the ideal `(x^2, y)` in the plane:
/// `y = x^2 v` (smooth) and `x^2 = y u` (an A1 point at the origin).
pub fn blowup_x2_y_plane() -> Vec<(String, TruncatedSeries)> {
    let v3 = Vars::new(&["x", "y", "u"]);
    let one = Rational::one();
    let cone = TruncatedSeries::from_terms(
        &v3,
        8,
        [
            (Exponents::from_slice(&[2, 0, 0]), one.clone()),
            (Exponents::from_slice(&[0, 1, 1]), -one.clone()),
        ],
    );
    let graph = TruncatedSeries::from_terms(
        &v3,
        8,
        [
            (Exponents::from_slice(&[0, 1, 0]), one.clone()),
            (Exponents::from_slice(&[2, 0, 1]), -one),
        ],
    );
    vec![("y = x^2 u".into(), graph), ("x^2 = y u".into(), cone)]
}

/// Rational invertible matrix whose last column is `p`.
pub(crate) fn frame_with_last_column(p: &[Rational]) -> Matrix {
    let n = p.len();
    let k = p.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let mut cols: Vec<Vec<Rational>> = (0..n)
        .filter(|&i| i != k)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            e
        })
        .collect();
    cols.push(p.to_vec());
    let mut m = Matrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}
