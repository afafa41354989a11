//! Threefold hypersurface germs together with a smooth curve through the origin.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::series::{Substitution, TruncatedSeries, Vars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldGerm {
    pub f: TruncatedSeries,
    /// Defining equations of the curve; `(x, y, t)` in normalized position.
    pub curve: [TruncatedSeries; 3],
}

impl ThreefoldGerm {
    /// A germ containing the `z`-axis.
    pub fn new(f: TruncatedSeries) -> Result<Self> {
        let n = f.order();
        let v = Vars::xyzt();
        let curve = [
            TruncatedSeries::var(&v, n, "x")?,
            TruncatedSeries::var(&v, n, "y")?,
            TruncatedSeries::var(&v, n, "t")?,
        ];
        Self::with_curve(f, curve)
    }

    pub fn with_curve(f: TruncatedSeries, curve: [TruncatedSeries; 3]) -> Result<Self> {
        if f.vars() != &Vars::xyzt() || curve.iter().any(|g| g.vars() != f.vars()) {
            return Err(Error::Shape(
                "germ and curve must use variables x, y, z, t".into(),
            ));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::NotAtOrigin);
        }
        let germ = ThreefoldGerm { f, curve };
        germ.curve_frame()?;
        let g = germ.normalized_f()?;
        if !g.restrict_zero_by(&["x", "y", "t"])?.is_zero() {
            return Err(Error::NotContained);
        }
        Ok(germ)
    }

    /// Whether the curve is already the `z`-axis.
    pub fn is_normalized(&self) -> bool {
        let v = self.f.vars();
        ["x", "y", "t"]
            .iter()
            .zip(&self.curve)
            .all(|(name, g)| g == &TruncatedSeries::var(v, g.order(), name).expect("known"))
    }

    /// Coordinates `(g1, g2, c, g3)` in which the curve is the `z`-axis,
    /// as a substitution expressing old variables in the new ones.
    pub fn curve_frame(&self) -> Result<Substitution> {
        let v = self.f.vars().clone();
        let n = self.f.order();
        let lin: Vec<Vec<_>> = self
            .curve
            .iter()
            .map(|g| {
                (0..4)
                    .map(|i| g.coeff(&crate::series::Exponents::unit(i)))
                    .collect()
            })
            .collect();
        if Matrix::from_rows(lin.clone()).rank() < 3 {
            return Err(Error::SingularCurve);
        }
        let completing = (0..4)
            .find(|&i| {
                let mut rows = lin.clone();
                rows.push(
                    (0..4)
                        .map(|j| crate::series::rat((i == j) as i64))
                        .collect(),
                );
                Matrix::from_rows(rows).rank() == 4
            })
            .expect("rank 3 rows extend to a basis");
        let images = vec![
            self.curve[0].with_order(n),
            self.curve[1].with_order(n),
            TruncatedSeries::var_at(&v, n, completing),
            self.curve[2].with_order(n),
        ];
        let fwd = Substitution::new(&v, &v, images)?;
        fwd.inverse(n)
    }

    /// `F` in coordinates where the curve is `x = y = t = 0`.
    pub fn normalized_f(&self) -> Result<TruncatedSeries> {
        if self.is_normalized() {
            return Ok(self.f.clone());
        }
        self.f.substitute(&self.curve_frame()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_polynomial;

    fn p(s: &str) -> TruncatedSeries {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn default_curve() {
        let g = ThreefoldGerm::new(p("x^2+y^3+y*z^3+t^3")).unwrap();
        assert!(g.is_normalized());
        assert!(matches!(
            ThreefoldGerm::new(p("x^2+z^3")),
            Err(Error::NotContained)
        ));
        assert!(matches!(
            ThreefoldGerm::new(p("1+x")),
            Err(Error::NotAtOrigin)
        ));
    }

    #[test]
    fn curved_presentation() {
        // the curve x = z^2, y = t = 0
        let f = p("(x-z^2)^2+y^3+y*z^3+t^3");
        let curve = [p("x-z^2"), p("y"), p("t")];
        let g = ThreefoldGerm::with_curve(f, curve).unwrap();
        assert_eq!(g.normalized_f().unwrap(), p("x^2+y^3+y*z^3+t^3"));
        let bad = [p("x"), p("x+y^2"), p("t")];
        assert!(matches!(
            ThreefoldGerm::with_curve(p("x*y"), bad),
            Err(Error::SingularCurve)
        ));
    }
}
