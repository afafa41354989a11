//! Binary quadratic and cubic forms over ℚ.

pub mod univariate;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::series::{Exponents, Rational, Substitution, TruncatedSeries, Vars};
use univariate::Poly;

/// A homogeneous form in two named variables `(u, v)`.
///
/// `coeffs[i]` is the coefficient of `u^i v^(degree - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub coeffs: Vec<Rational>,
    pub vars: (String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubicClass {
    SquareFree,
    /// `form = c * l^2 * m`.
    DoubleLine {
        l: BinaryForm,
        m: BinaryForm,
    },
    /// `form = c * l^3`.
    TripleLine {
        l: BinaryForm,
    },
    Zero,
}

impl CubicClass {
    pub fn tag(&self) -> &'static str {
        match self {
            CubicClass::SquareFree => "SquareFree",
            CubicClass::DoubleLine { .. } => "DoubleLine",
            CubicClass::TripleLine { .. } => "TripleLine",
            CubicClass::Zero => "Zero",
        }
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>, u: &str, v: &str) -> Self {
        BinaryForm {
            coeffs,
            vars: (u.to_string(), v.to_string()),
        }
    }

    /// Linear form `a u + b v`.
    pub fn linear(a: Rational, b: Rational, u: &str, v: &str) -> Self {
        Self::new(vec![b, a], u, v)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of `u^i v^(d-i)`.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// The degree-`d` homogeneous part of `f` in `u, v`, ignoring terms that
    /// involve any other variable.
    pub fn from_series(f: &TruncatedSeries, u: &str, v: &str, d: usize) -> Result<Self> {
        let iu = f.vars().require(u)?;
        let iv = f.vars().require(v)?;
        let mut coeffs = vec![Rational::zero(); d + 1];
        for (e, c) in f.terms() {
            if e.degree() as usize == d && e.degree_in(&[iu, iv]) as usize == d {
                coeffs[e.get(iu) as usize] += c;
            }
        }
        Ok(Self::new(coeffs, u, v))
    }

    pub fn to_series(&self, vars: &Vars, order: u32) -> Result<TruncatedSeries> {
        let iu = vars.require(&self.vars.0)?;
        let iv = vars.require(&self.vars.1)?;
        let d = self.degree() as u32;
        let mut out = TruncatedSeries::zero(vars, order);
        for (i, c) in self.coeffs.iter().enumerate() {
            let i = i as u32;
            out.add_term(Exponents::zero().with(iu, i).with(iv, d - i), c.clone());
        }
        Ok(out)
    }

    /// Scales so the first nonzero coefficient, reading from `u^d`, is 1.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            Some(c) => {
                let inv = c.recip();
                BinaryForm {
                    coeffs: self.coeffs.iter().map(|x| x * &inv).collect(),
                    vars: self.vars.clone(),
                }
            }
            None => self.clone(),
        }
    }

    /// The polynomial `form(u, 1)`.
    fn dehomogenize(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    fn from_poly(p: &Poly, degree: usize, vars: &(String, String)) -> Self {
        let mut coeffs = p.0.clone();
        coeffs.resize(degree + 1, Rational::zero());
        BinaryForm {
            coeffs,
            vars: vars.clone(),
        }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let d = self.degree() + other.degree();
        let mut coeffs = vec![Rational::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BinaryForm {
            coeffs,
            vars: self.vars.clone(),
        }
    }

    /// Exact division by another form; `None` if it does not divide.
    pub fn div_exact(&self, other: &BinaryForm) -> Option<BinaryForm> {
        if other.is_zero() || other.degree() > self.degree() {
            return None;
        }
        // strip common powers of v: both as polynomials in u after v = 1,
        // tracking the v-adic order separately
        let vo = |f: &BinaryForm| f.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let (sv, ov) = (vo(self), vo(other));
        if ov > sv {
            return None;
        }
        let sp = Poly::new(self.coeffs[sv..].to_vec());
        let op = Poly::new(other.coeffs[ov..].to_vec());
        let (q, r) = sp.div_rem(&op);
        if !r.is_zero() {
            return None;
        }
        let d = self.degree() - other.degree();
        let mut coeffs = vec![Rational::zero(); sv - ov];
        coeffs.extend(q.0);
        if coeffs.len() > d + 1 {
            return None;
        }
        coeffs.resize(d + 1, Rational::zero());
        Some(BinaryForm {
            coeffs,
            vars: self.vars.clone(),
        })
    }

    /// Rational projective roots `[u : v]` (as linear factors `v0 u - u0 v`),
    /// each normalized.
    pub fn rational_linear_factors(&self) -> Vec<BinaryForm> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let d = self.degree();
        // a root at v = 0 shows up as a drop in u-degree
        let p = self.dehomogenize();
        if p.degree().unwrap_or(0) < d {
            out.push(BinaryForm::linear(
                Rational::zero(),
                Rational::one(),
                &self.vars.0,
                &self.vars.1,
            ));
        }
        for r in p.rational_roots() {
            out.push(BinaryForm::linear(
                Rational::one(),
                -r,
                &self.vars.0,
                &self.vars.1,
            ));
        }
        out
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vars = Vars::new(&[self.vars.0.as_str(), self.vars.1.as_str()]);
        let s = self
            .to_series(&vars, self.degree() as u32 + 1)
            .map_err(|_| std::fmt::Error)?;
        write!(f, "{s}")
    }
}

/// Discriminant of `a u^3 + b u^2 v + c u v^2 + d v^3`.
pub fn discriminant_cubic(f: &BinaryForm) -> Rational {
    assert_eq!(f.degree(), 3, "not a cubic");
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let r = |n: i64| Rational::from_integer(n.into());
    b * b * c * c - r(4) * a * c * c * c - r(4) * b * b * b * d - r(27) * a * a * d * d
        + r(18) * a * b * c * d
}

/// The Hessian covariant, up to a constant factor.
pub fn hessian_cubic(f: &BinaryForm) -> BinaryForm {
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let r = |n: i64| Rational::from_integer(n.into());
    BinaryForm {
        coeffs: vec![
            c * c - r(3) * b * d,
            b * c - r(9) * a * d,
            b * b - r(3) * a * c,
        ],
        vars: f.vars.clone(),
    }
}

pub fn classify_cubic(f: &BinaryForm) -> CubicClass {
    assert_eq!(f.degree(), 3, "not a cubic");
    if f.is_zero() {
        return CubicClass::Zero;
    }
    if !discriminant_cubic(f).is_zero() {
        return CubicClass::SquareFree;
    }
    let h = hessian_cubic(f);
    let (u, v) = (&f.vars.0, &f.vars.1);
    if h.is_zero() {
        // f = k (alpha u + beta v)^3
        let l = if !f.coeff(3).is_zero() {
            BinaryForm::linear(
                Rational::one(),
                f.coeff(2) / (f.coeff(3) * Rational::from_integer(3.into())),
                u,
                v,
            )
        } else {
            BinaryForm::linear(
                f.coeff(1) / (f.coeff(0) * Rational::from_integer(3.into())),
                Rational::one(),
                u,
                v,
            )
        };
        return CubicClass::TripleLine { l: l.normalized() };
    }
    // repeated factor = gcd(f, f_u, f_v); dehomogenize in the variable whose
    // top coefficient survives
    let l = repeated_linear_factor(f).expect("zero discriminant implies a repeated factor");
    let m = f
        .div_exact(&l.mul(&l))
        .expect("square of the repeated factor divides");
    CubicClass::DoubleLine {
        l: l.normalized(),
        m: m.normalized(),
    }
}

fn repeated_linear_factor(f: &BinaryForm) -> Option<BinaryForm> {
    let (u, v) = (&f.vars.0, &f.vars.1);
    let p = f.dehomogenize();
    let deg = p.degree().unwrap_or(0);
    if deg + 2 <= f.degree() {
        // v^2 divides
        return Some(BinaryForm::linear(Rational::zero(), Rational::one(), u, v));
    }
    let g = p.gcd(&p.derivative());
    match g.degree() {
        Some(1) => Some(BinaryForm::from_poly(&g, 1, &f.vars)),
        _ => None,
    }
}

/// Invertible linear change on the form's variables (inside `ambient`)
/// moving `l` to the first variable and, for a double line, `m` to the
/// second. Images express old coordinates in new ones.
pub fn normalize_to_axes(cls: &CubicClass, ambient: &Vars, order: u32) -> Result<Substitution> {
    let (l, m) = match cls {
        CubicClass::DoubleLine { l, m } => (l, Some(m)),
        CubicClass::TripleLine { l } => (l, None),
        _ => {
            return Err(Error::Shape(
                "normalize_to_axes needs a double or triple line".into(),
            ))
        }
    };
    let (u, v) = (&l.vars.0, &l.vars.1);
    // rows: new coordinates in terms of (u, v)
    let row = |f: &BinaryForm| vec![f.coeff(1).clone(), f.coeff(0).clone()];
    let second = match m {
        Some(m) => row(m),
        None if !l.coeff(1).is_zero() => vec![Rational::zero(), Rational::one()],
        None => vec![Rational::one(), Rational::zero()],
    };
    let fwd = Matrix::from_rows(vec![row(l), second]);
    let inv = fwd.inverse().ok_or(Error::NotInvertible)?;
    let iu = ambient.require(u)?;
    let iv = ambient.require(v)?;
    let img = |r: usize| {
        let mut s = TruncatedSeries::zero(ambient, order);
        s.add_term(Exponents::unit(iu), inv.get(r, 0).clone());
        s.add_term(Exponents::unit(iv), inv.get(r, 1).clone());
        s
    };
    Substitution::replacing(
        ambient,
        order,
        &[(u.as_str(), img(0)), (v.as_str(), img(1))],
    )
}

/// Symmetric matrix of the quadratic part of `f`: `q(v) = v^T A v`.
pub fn quadratic_matrix(f: &TruncatedSeries) -> Matrix {
    let n = f.nvars();
    let mut a = Matrix::zeros(n, n);
    let half = Rational::new(1.into(), 2.into());
    for (e, c) in f.terms() {
        if e.degree() != 2 {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&i| e.get(i) > 0).collect();
        match idx.as_slice() {
            [i] => a.set(*i, *i, c.clone()),
            [i, j] => {
                a.set(*i, *j, c * &half);
                a.set(*j, *i, c * &half);
            }
            _ => unreachable!("degree two monomial"),
        }
    }
    a
}

/// Rank of a symmetric form with a rational diagonalizing basis change.
pub struct QuadraticRank {
    pub rank: usize,
    pub lambdas: Vec<Rational>,
    /// Columns are the new coordinates' directions: `P^T A P = diag(lambdas)`.
    pub basis: Matrix,
}

pub fn quadratic_rank(q: &Matrix) -> QuadraticRank {
    let (lambdas, basis) = q.diagonalize_symmetric();
    QuadraticRank {
        rank: lambdas.iter().filter(|l| !l.is_zero()).count(),
        lambdas,
        basis,
    }
}
