//! Reduction of a germ along its curve to the E7-case or E6-case normal form,
//! and the type of its general hyperplane section read off from that form.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::duval::{classify_general_section, DuValType, Precision, SectionSampling};
use crate::error::{Error, Result};
use crate::forms::{self, univariate::Poly, BinaryForm, CubicClass};
use crate::germ::ThreefoldGerm;
use crate::series::{ratio, Exponents, Rational, Substitution, TruncatedSeries, Vars};

/// Which normal form applies, decided by the section through the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    E7,
    E6,
    OutOfScope(DuValType),
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::E7 => write!(f, "E7case"),
            Case::E6 => write!(f, "E6case"),
            Case::OutOfScope(t) => write!(f, "OutOfScope({t})"),
        }
    }
}

/// `x^2 + y^3 + y z^3 + t f2(y, t) + t f(y, z, t)` with `f(0, z, 0) = 0`.
#[derive(Clone, Debug)]
pub struct E7NormalForm {
    /// Coefficients indexed by the exponent of `y`.
    pub f2: BinaryForm,
    pub f_ge3: TruncatedSeries,
    /// The whole normal form.
    pub f: TruncatedSeries,
    /// `F(audit) = unit * f`.
    pub unit: TruncatedSeries,
    pub audit: Substitution,
}

/// `x^2 + x z^2 + y^3 + a y t^2 + b y^2 t + t f(y, z, t)` with no `z^k`
/// (`k >= 4`) or `y^s` (`s >= 3`) in `f`.
#[derive(Clone, Debug)]
pub struct E6NormalForm {
    pub a: Rational,
    pub b: Rational,
    pub f_ge3: TruncatedSeries,
    pub f: TruncatedSeries,
    pub unit: TruncatedSeries,
    pub audit: Substitution,
}

impl E6NormalForm {
    /// Coefficient of `y^i z^j t^k` in `f`.
    pub fn a_ijk(&self, i: u32, j: u32, k: u32) -> Rational {
        self.f_ge3.coeff_of(&[("y", i), ("z", j), ("t", k)])
    }
}

#[derive(Clone, Debug)]
pub enum NormalForm {
    E7(E7NormalForm),
    E6(E6NormalForm),
}

impl NormalForm {
    pub fn series(&self) -> &TruncatedSeries {
        match self {
            NormalForm::E7(nf) => &nf.f,
            NormalForm::E6(nf) => &nf.f,
        }
    }

    pub fn audit(&self) -> &Substitution {
        match self {
            NormalForm::E7(nf) => &nf.audit,
            NormalForm::E6(nf) => &nf.audit,
        }
    }

    pub fn unit(&self) -> &TruncatedSeries {
        match self {
            NormalForm::E7(nf) => &nf.unit,
            NormalForm::E6(nf) => &nf.unit,
        }
    }
}

/// Type of the general hyperplane section predicted by the normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HType {
    Exact(DuValType),
    /// `D_n` for some `n >= k`; the criteria do not fix `n`.
    DAtLeast(u32),
}

impl HType {
    pub fn exact(self) -> Option<DuValType> {
        match self {
            HType::Exact(t) => Some(t),
            HType::DAtLeast(_) => None,
        }
    }

    /// Whether a sampled type is consistent with the prediction.
    pub fn admits(self, t: DuValType) -> bool {
        match (self, t) {
            (HType::Exact(p), t) => p == t,
            (HType::DAtLeast(k), DuValType::D(n)) => n >= k,
            _ => false,
        }
    }
}

impl fmt::Display for HType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HType::Exact(t) => write!(f, "{t}"),
            HType::DAtLeast(k) => write!(f, "D>={k}"),
        }
    }
}

/// Moves the curve of `germ` to `x = y = t = 0`; returns the new germ and
/// the substitution expressing old coordinates in new ones.
pub fn normalize_curve(germ: &ThreefoldGerm) -> Result<(ThreefoldGerm, Substitution)> {
    let n = germ.f.order();
    let audit = if germ.is_normalized() {
        Substitution::identity(germ.f.vars(), n)
    } else {
        germ.curve_frame()?
    };
    let g = ThreefoldGerm::new(germ.f.substitute(&audit)?)?;
    Ok((g, audit))
}

/// Case of the germ, from the general section through its curve.
pub fn detect_case(
    germ: &ThreefoldGerm,
    sampling: SectionSampling,
    precision: &Precision,
) -> Result<Case> {
    match classify_general_section(germ, true, sampling, precision)? {
        DuValType::E7 => Ok(Case::E7),
        DuValType::E6 => Ok(Case::E6),
        DuValType::Indeterminate => Err(Error::Indeterminate {
            order: germ.f.order(),
            reason: "type of the section through the curve".into(),
        }),
        t => Ok(Case::OutOfScope(t)),
    }
}

/// Running state: `F(audit) = unit * cur`.
struct Tracker {
    cur: TruncatedSeries,
    unit: TruncatedSeries,
    audit: Substitution,
    /// Truncation order of the input.
    full: u32,
}

impl Tracker {
    fn start(germ: &ThreefoldGerm) -> Result<Self> {
        let (g, audit) = normalize_curve(germ)?;
        Ok(Tracker {
            unit: TruncatedSeries::one(g.f.vars(), g.f.order()),
            full: g.f.order(),
            cur: g.f,
            audit,
        })
    }

    fn vars(&self) -> Vars {
        self.cur.vars().clone()
    }

    fn var(&self, name: &str) -> TruncatedSeries {
        TruncatedSeries::var(self.cur.vars(), self.cur.order(), name).expect("x, y, z, t")
    }

    fn apply(&mut self, s: Substitution) -> Result<()> {
        self.cur = self.cur.substitute(&s)?;
        self.unit = self.unit.substitute(&s)?;
        self.audit = self.audit.then(&s)?;
        Ok(())
    }

    /// Applies a change of coordinates. The images are polynomials chosen by
    /// the reduction, so they are exact whatever the precision of the data
    /// they were computed from.
    fn replace(&mut self, repl: &[(&str, TruncatedSeries)]) -> Result<()> {
        let n = self.full;
        let exact: Vec<(&str, TruncatedSeries)> =
            repl.iter().map(|(v, im)| (*v, im.with_order(n))).collect();
        let s = Substitution::replacing(&self.vars(), n, &exact)?;
        self.apply(s)
    }

    fn scale(&mut self, k: &Rational) {
        self.cur = self.cur.scale(k);
        self.unit = self.unit.scale(&k.recip());
    }

    /// Brings `cur` to `x^2 + G(y, z, t)`; returns the `x`-linear coefficient
    /// removed, as a series in the coordinates before the shift.
    fn complete_square(&mut self) -> Result<TruncatedSeries> {
        let c = self.cur.coefficients_in(0);
        let monic = c.len() == 3 && c[2].len() == 1 && c[2].constant_term().is_one();
        let r1 = if monic {
            c[1].clone()
        } else {
            let (u, r) = self
                .cur
                .weierstrass_divide("x", 2)
                .map_err(|_| Error::ShapeMismatch("no x^2 term to complete".into()))?;
            let x2 = &self.var("x") * &self.var("x");
            self.cur = &(&x2 + &(&r[1] * &self.var("x"))) + &r[0];
            self.unit = &self.unit * &u;
            r[1].clone()
        };
        if !r1.is_zero() {
            let x = &self.var("x") - &r1.scale(&ratio(1, 2));
            self.replace(&[("x", x)])?;
        }
        Ok(r1)
    }

    /// `(cur - known) / t`.
    fn tail_over_t(&self, known: &TruncatedSeries) -> Result<TruncatedSeries> {
        let ti = self.vars().require("t")?;
        (&self.cur - known)
            .div_monomial(&Exponents::unit(ti))
            .ok_or_else(|| {
                Error::ShapeMismatch("terms without t beyond the section through the curve".into())
            })
    }
}

fn mono(vars: &Vars, order: u32, e: &[u32]) -> TruncatedSeries {
    TruncatedSeries::monomial(vars, order, Exponents::from_slice(e), Rational::one())
}

/// Terms of `f` that are pure powers of variable `i` of degree at least `min`.
fn pure_powers(f: &TruncatedSeries, i: usize, min: u32) -> TruncatedSeries {
    f.filter(|e, _| e.get(i) >= min && e.degree() == e.get(i))
}

/// Rejects linear terms (a cA point) and degree-2 terms involving `z`.
fn check_quadratic_tail(f: &TruncatedSeries) -> Result<()> {
    if f.terms().any(|(e, _)| e.degree() <= 1) {
        return Err(Error::ShapeMismatch(
            "t f has a linear term: the point is of type cA".into(),
        ));
    }
    let zi = f.vars().require("z")?;
    if f.terms().any(|(e, _)| e.degree() == 2 && e.get(zi) > 0) {
        return Err(Error::ShapeMismatch(
            "degree-2 terms of f involve z: the section through the curve is of type D".into(),
        ));
    }
    Ok(())
}

/// Reduces an E7-case germ to its normal form.
pub fn normalize_e7(germ: &ThreefoldGerm) -> Result<E7NormalForm> {
    let mut tr = Tracker::start(germ)?;
    tr.complete_square()?;
    let v = tr.vars();
    let n = tr.cur.order();
    let x2 = &tr.var("x") * &tr.var("x");
    let s = (&tr.cur - &x2).restrict_zero_by(&["t"])?;
    let beta = s.coeff_of(&[("y", 3)]);
    let delta = s.coeff_of(&[("y", 1), ("z", 3)]);
    let expect =
        &mono(&v, n, &[0, 3, 0, 0]).scale(&beta) + &mono(&v, n, &[0, 1, 3, 0]).scale(&delta);
    if beta.is_zero() || delta.is_zero() || s != expect.truncate(s.order()) {
        return Err(Error::ShapeMismatch(format!(
            "section through the curve is not of the form x^2 + y^3 + y z^3: x^2 + {s}"
        )));
    }
    if !(beta.is_one() && delta.is_one()) {
        let lambda = &beta * &beta * &delta * &delta * &delta;
        let nu = &beta * &delta * &delta;
        let mu = &beta * &delta;
        tr.replace(&[
            ("x", tr.var("x").scale(&lambda)),
            ("y", tr.var("y").scale(&nu)),
            ("z", tr.var("z").scale(&mu)),
        ])?;
        tr.scale(&(&lambda * &lambda).recip());
    }
    let head = |tr: &Tracker| {
        let (x, y, z) = (tr.var("x"), tr.var("y"), tr.var("z"));
        &(&(&x * &x) + &(&(&y * &y) * &y)) + &(&y * &(&(&z * &z) * &z))
    };
    let zi = v.require("z")?;
    for _ in 0..n {
        let f = tr.tail_over_t(&head(&tr))?;
        let pz = pure_powers(&f, zi, 1);
        if pz.is_zero() {
            break;
        }
        if pz.terms().any(|(e, _)| e.degree() < 3) {
            check_quadratic_tail(&f)?;
        }
        // y -> y - t phi(z) cancels t z^n against y z^3
        let phi = pz
            .div_monomial(&Exponents::unit(zi).with(zi, 3))
            .expect("degrees >= 3");
        let y = &tr.var("y") - &(&tr.var("t") * &phi);
        tr.replace(&[("y", y)])?;
    }
    let f = tr.tail_over_t(&head(&tr))?;
    if !pure_powers(&f, zi, 1).is_zero() {
        return Err(Error::Indeterminate {
            order: f.order(),
            reason: "t z^n terms persist".into(),
        });
    }
    check_quadratic_tail(&f)?;
    let f2 = BinaryForm::from_series(&f, "y", "t", 2)?;
    let f_ge3 = f.filter(|e, _| e.degree() >= 3);
    Ok(E7NormalForm {
        f2,
        f_ge3,
        f: tr.cur,
        unit: tr.unit,
        audit: tr.audit,
    })
}

/// Reduces an E6-case germ to its normal form.
pub fn normalize_e6(germ: &ThreefoldGerm) -> Result<E6NormalForm> {
    let mut tr = Tracker::start(germ)?;
    let r1 = tr.complete_square()?;
    let v = tr.vars();
    let n = tr.cur.order();
    let zi = v.require("z")?;
    let yi = v.require("y")?;
    let gamma = r1.restrict_zero_by(&["y", "t"])?;
    let c = gamma.coeff_of(&[("z", 2)]);
    if c.is_zero() || gamma.len() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "section through the curve is not of the form x^2 + c x z^2 + ...: x-coefficient {r1}"
        )));
    }
    let x2 = &tr.var("x") * &tr.var("x");
    let s = (&tr.cur - &x2).restrict_zero_by(&["t"])?;
    let beta = s.coeff_of(&[("y", 3)]);
    let expect = &mono(&v, n, &[0, 3, 0, 0]).scale(&beta)
        - &mono(&v, n, &[0, 0, 4, 0]).scale(&(&c * &c * ratio(1, 4)));
    if beta.is_zero() || s != expect.truncate(s.order()) {
        return Err(Error::ShapeMismatch(format!(
            "section through the curve is not of the form x^2 + x z^2 + y^3: x^2 + {s}"
        )));
    }
    if !(beta.is_one() && c.is_one()) {
        let mu = &beta * &c;
        let lambda = &beta * &beta * &c * &c * &c;
        let nu = &c * &c * &beta;
        tr.replace(&[
            ("x", tr.var("x").scale(&lambda)),
            ("y", tr.var("y").scale(&nu)),
            ("z", tr.var("z").scale(&mu)),
        ])?;
        tr.scale(&(&lambda * &lambda).recip());
    }
    let head = |tr: &Tracker| {
        let (x, y, z) = (tr.var("x"), tr.var("y"), tr.var("z"));
        let z4 = &(&z * &z) * &(&z * &z);
        &(&(&x * &x) + &(&(&y * &y) * &y)) - &z4.scale(&ratio(1, 4))
    };

    // remove the t^3 term by moving a rational root of the cubic to y = 0;
    // a repeated root (always rational) goes there first, which makes a = 0
    let f = tr.tail_over_t(&head(&tr))?;
    check_quadratic_tail(&f)?;
    let cubic = Poly::new(vec![
        f.coeff_of(&[("t", 2)]),
        f.coeff_of(&[("y", 1), ("t", 1)]),
        f.coeff_of(&[("y", 2)]),
        Rational::one(),
    ]);
    let roots = cubic.rational_roots();
    let repeated = roots.iter().find(|r| cubic.derivative().eval(r).is_zero());
    let root = match repeated {
        Some(r) => Some(r),
        None if cubic.0[0].is_zero() => None,
        None => Some(roots.first().ok_or_else(|| {
            Error::ShapeMismatch("the t^3 term can only be removed over a field extension".into())
        })?),
    };
    if let Some(r) = root.filter(|r| !r.is_zero()) {
        let y = &tr.var("y") + &tr.var("t").scale(r);
        tr.replace(&[("y", y)])?;
    }

    for _ in 0..n {
        let f = tr.tail_over_t(&head(&tr))?;
        let py = pure_powers(&f, yi, 3);
        let pz = pure_powers(&f, zi, 4);
        if py.is_zero() && pz.is_zero() {
            break;
        }
        let t = tr.var("t");
        let one = TruncatedSeries::one(&v, tr.cur.order());
        let hy = py
            .div_monomial(&Exponents::unit(yi).with(yi, 3))
            .expect("y^3 divides");
        let hz = pz
            .div_monomial(&Exponents::unit(zi).with(zi, 4))
            .expect("z^4 divides");
        let wy = (&one + &(&t * &hy)).kth_root_unit(3)?.invert_unit()?;
        let wz = (&one - &(&t * &hz).scale(&Rational::from_integer(4.into())))
            .kth_root_unit(4)?
            .invert_unit()?;
        let y = &tr.var("y") * &wy;
        let z = &tr.var("z") * &wz;
        tr.replace(&[("y", y), ("z", z)])?;
    }
    let x = &tr.var("x") + &(&tr.var("z") * &tr.var("z")).scale(&ratio(1, 2));
    tr.replace(&[("x", x)])?;

    let (x, y, z) = (tr.var("x"), tr.var("y"), tr.var("z"));
    let known = &(&(&x * &x) + &(&x * &(&z * &z))) + &(&(&y * &y) * &y);
    let f = tr.tail_over_t(&known)?;
    check_quadratic_tail(&f)?;
    if !f.coeff_of(&[("t", 2)]).is_zero() {
        return Err(Error::ShapeMismatch("t^3 term survived".into()));
    }
    if !pure_powers(&f, yi, 3).is_zero() || !pure_powers(&f, zi, 4).is_zero() {
        return Err(Error::Indeterminate {
            order: f.order(),
            reason: "excluded monomials persist".into(),
        });
    }
    Ok(E6NormalForm {
        a: f.coeff_of(&[("y", 1), ("t", 1)]),
        b: f.coeff_of(&[("y", 2)]),
        f_ge3: f.filter(|e, _| e.degree() >= 3),
        f: tr.cur,
        unit: tr.unit,
        audit: tr.audit,
    })
}

/// Detects the case and normalizes accordingly.
pub fn normalize(
    germ: &ThreefoldGerm,
    sampling: SectionSampling,
    precision: &Precision,
) -> Result<(Case, Option<NormalForm>)> {
    let case = detect_case(germ, sampling, precision)?;
    let nf = match case {
        Case::E7 => Some(NormalForm::E7(normalize_e7(germ)?)),
        Case::E6 => Some(NormalForm::E6(normalize_e6(germ)?)),
        Case::OutOfScope(_) => None,
    };
    Ok((case, nf))
}

/// `y^3 + t f2(y, t)` as a binary cubic in `(y, t)`.
pub fn e7_cubic(nf: &E7NormalForm) -> BinaryForm {
    let mut c = vec![Rational::zero(); 4];
    c[3] = Rational::one();
    for i in 0..3 {
        c[i] += nf.f2.coeff(i);
    }
    BinaryForm::new(c, "y", "t")
}

/// `f2(0, t) != 0`, i.e. the `t^2` coefficient of `f2`.
pub fn f2_at_t_nonzero(nf: &E7NormalForm) -> bool {
    !nf.f2.coeff(0).is_zero()
}

/// General hyperplane section type predicted from the normal form.
pub fn predict_h_type(nf: &NormalForm) -> HType {
    use DuValType::*;
    match nf {
        NormalForm::E7(nf) => {
            let nonzero_t2 = f2_at_t_nonzero(nf);
            match forms::classify_cubic(&e7_cubic(nf)) {
                CubicClass::SquareFree => HType::Exact(D(4)),
                CubicClass::DoubleLine { .. } if nonzero_t2 => HType::Exact(D(5)),
                CubicClass::DoubleLine { .. } => HType::DAtLeast(5),
                _ => {
                    let t4 = !nf.f_ge3.coeff_of(&[("t", 3)]).is_zero();
                    if !nf.f2.is_zero() || t4 {
                        HType::Exact(E6)
                    } else {
                        HType::Exact(E7)
                    }
                }
            }
        }
        NormalForm::E6(nf) => {
            let disc = &nf.b * &nf.b - Rational::from_integer(4.into()) * &nf.a;
            if nf.a.is_zero() && nf.b.is_zero() {
                HType::Exact(E6)
            } else if nf.a.is_zero() || disc.is_zero() {
                // a double line that is not a cube
                HType::Exact(D(5))
            } else {
                HType::Exact(D(4))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_polynomial_in;
    use crate::series::rat;

    fn germ(text: &str) -> ThreefoldGerm {
        ThreefoldGerm::new(parse_polynomial_in(text, &Vars::xyzt(), 12).unwrap()).unwrap()
    }

    fn reconstructs(g: &ThreefoldGerm, nf: &NormalForm) {
        let lhs = g.f.substitute(nf.audit()).unwrap();
        let rhs = nf.unit() * nf.series();
        let n = lhs.order().min(rhs.order());
        assert_eq!(lhs.truncate(n), rhs.truncate(n));
    }

    fn is_identity(s: &Substitution) -> bool {
        s.images()
            .iter()
            .enumerate()
            .all(|(i, im)| im.len() == 1 && im.coeff(&Exponents::unit(i)).is_one())
    }

    #[test]
    fn e7_examples() {
        let g = germ("x^2+y^3+y*z^3+t^3");
        let nf = normalize_e7(&g).unwrap();
        assert_eq!(
            nf.f2,
            BinaryForm::new(vec![rat(1), rat(0), rat(0)], "y", "t")
        );
        assert!(nf.f_ge3.is_zero());
        assert!(is_identity(&nf.audit));
        assert_eq!(
            predict_h_type(&NormalForm::E7(nf)),
            HType::Exact(DuValType::D(4))
        );

        let nf = normalize_e7(&germ("x^2+y^3+y*z^3+y*t^2")).unwrap();
        assert_eq!(
            nf.f2,
            BinaryForm::new(vec![rat(0), rat(1), rat(0)], "y", "t")
        );

        let g = germ("x^2+y^3+y*z^3+t*z^3");
        let nf = normalize_e7(&g).unwrap();
        // y -> y - t: (y - t)^3 contributes -3 y^2 t + 3 y t^2 - t^3
        assert_eq!(
            nf.f2,
            BinaryForm::new(vec![rat(-1), rat(3), rat(-3)], "y", "t")
        );
        assert!(nf.f_ge3.restrict_zero_by(&["y", "t"]).unwrap().is_zero());
        reconstructs(&g, &NormalForm::E7(nf));
    }

    #[test]
    fn e7_predictions() {
        let p = |s: &str| predict_h_type(&NormalForm::E7(normalize_e7(&germ(s)).unwrap()));
        assert_eq!(p("x^2+y^3+y*z^3+t^4"), HType::Exact(DuValType::E6));
        assert_eq!(p("x^2+y^3+y*z^3+t^5"), HType::Exact(DuValType::E7));
        assert_eq!(p("x^2+y^3+y*z^3+y*t^2+t^4"), HType::Exact(DuValType::D(4)));
        assert_eq!(p("x^2+y^3+y*z^3+y^2*t+t^3"), HType::Exact(DuValType::D(4)));
        assert_eq!(p("x^2+y^3+y*z^3+y^2*t"), HType::DAtLeast(5));
    }

    #[test]
    fn e7_scaling_and_square_completion() {
        let g = germ("x^2+2*x*y*t+2*y^3+3*y*z^3+t^3");
        let nf = normalize_e7(&g).unwrap();
        let head = parse_polynomial_in("x^2+y^3+y*z^3", &Vars::xyzt(), 12).unwrap();
        assert_eq!(
            nf.f.restrict_zero_by(&["t"]).unwrap(),
            head.truncate(nf.f.order())
        );
        reconstructs(&g, &NormalForm::E7(nf));
    }

    #[test]
    fn e6_examples() {
        let g = germ("x^2+x*z^2+y^3+y*t^2");
        let nf = normalize_e6(&g).unwrap();
        assert_eq!((nf.a.clone(), nf.b.clone()), (rat(1), rat(0)));
        assert!(nf.f_ge3.is_zero());
        assert!(is_identity(&nf.audit));
        assert_eq!(
            predict_h_type(&NormalForm::E6(nf)),
            HType::Exact(DuValType::D(4))
        );

        let nf = normalize_e6(&germ("x^2+x*z^2+y^3+t*t^3")).unwrap();
        assert_eq!(nf.a_ijk(0, 0, 3), rat(1));
        assert_eq!(nf.f_ge3.len(), 1);
        assert_eq!(
            predict_h_type(&NormalForm::E6(nf)),
            HType::Exact(DuValType::E6)
        );
    }

    #[test]
    fn e6_rescaling() {
        let f = parse_polynomial_in("x^2+y^3-z^4+t*z^4", &Vars::xyzt(), 12).unwrap();
        let curve = [
            parse_polynomial_in("x-z^2", &Vars::xyzt(), 12).unwrap(),
            TruncatedSeries::var(&Vars::xyzt(), 12, "y").unwrap(),
            TruncatedSeries::var(&Vars::xyzt(), 12, "t").unwrap(),
        ];
        let g = ThreefoldGerm::with_curve(f, curve).unwrap();
        let nf = normalize_e6(&g).unwrap();
        let zi = 2;
        assert!(pure_powers(&nf.f_ge3, zi, 4).is_zero());
        assert!(pure_powers(&nf.f_ge3, 1, 3).is_zero());
        reconstructs(&g, &NormalForm::E6(nf));
    }

    #[test]
    fn e6_cube_root_shift() {
        // y^3 + t^3 has the rational root y = -t
        let g = germ("x^2+x*z^2+y^3+t^3+t*z^3");
        let nf = normalize_e6(&g).unwrap();
        assert!(nf.f_ge3.coeff_of(&[("t", 2)]).is_zero());
        reconstructs(&g, &NormalForm::E6(nf));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            normalize_e7(&germ("x^2+y^3+y*z^4+t^3")),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            normalize_e7(&germ("x^2+y^3+y*z^3+t*y")),
            Err(Error::ShapeMismatch(_))
        ));
        // y^3 + 2 y t^2 + t^3 has no rational root
        assert!(matches!(
            normalize_e6(&germ("x^2+x*z^2+y^3+2*y*t^2+t^3")),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
