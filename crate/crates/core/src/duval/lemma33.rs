use num_traits::Zero;
use serde::Serialize;

use super::{classify, DuValType};
use crate::blowup::{blowup_chart, frame_with_last_column};
use crate::error::{Error, Result};
use crate::forms::{self, BinaryForm};
use crate::series::{Rational, Substitution, TruncatedSeries};

/// Singular points on the exceptional curve of the blow-up of a surface point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlowupPoints {
    /// Sorted types of the rational singular points.
    pub types: Vec<DuValType>,
    /// Defining equations of singular points that are not rational.
    pub unresolved: Vec<String>,
}

fn cubic_at(f3: &TruncatedSeries, p: &[Rational]) -> Rational {
    f3.eval(p)
}

/// Blows up the origin of a DuVal surface germ and classifies the singular
/// points on the exceptional curve.
pub fn blowup_classify(g: &TruncatedSeries) -> Result<BlowupPoints> {
    match classify(g)? {
        DuValType::E8 => return Err(Error::E8Input),
        DuValType::Smooth => return Err(Error::NoSingularity),
        DuValType::NotDuVal => return Err(Error::Input("not a DuVal singularity".into())),
        DuValType::Indeterminate => {
            return Err(Error::Indeterminate {
                order: g.order(),
                reason: "input type undetermined".into(),
            })
        }
        _ => {}
    }
    if g.order() < 5 {
        return Err(Error::TruncationUnderflow);
    }
    let q = forms::quadratic_rank(&forms::quadratic_matrix(g));
    let f3 = g.homogeneous_part(3);
    let col = |j: usize| -> Vec<Rational> { (0..3).map(|i| q.basis.get(i, j).clone()).collect() };
    let mut points: Vec<Vec<Rational>> = Vec::new();
    let mut out = BlowupPoints::default();
    match q.rank {
        3 => {}
        2 => {
            let p = col(2);
            if cubic_at(&f3, &p).is_zero() {
                points.push(p);
            }
        }
        1 => {
            // points a*k1 + b*k2 on the kernel line
            let (k1, k2) = (col(1), col(2));
            let v = g.vars();
            let n = 4;
            let line = |i: usize| {
                let s = TruncatedSeries::var_at(v, n, 0).scale(&k1[i]);
                &s + &TruncatedSeries::var_at(v, n, 1).scale(&k2[i])
            };
            let sub = Substitution::new(v, v, (0..3).map(line).collect())?;
            let r = f3.with_order(4).substitute(&sub)?;
            let bin = BinaryForm::from_series(&r, v.name(0), v.name(1), 3)?;
            if bin.is_zero() {
                return Err(Error::NonIsolated);
            }
            let mut rest = bin.clone();
            for l in bin.rational_linear_factors() {
                while let Some(d) = rest.div_exact(&l) {
                    rest = d;
                }
                // l = c1 a + c0 b vanishes at (a : b) = (-c0 : c1)
                let (a, b) = (-l.coeff(0).clone(), l.coeff(1).clone());
                points.push((0..3).map(|i| &a * &k1[i] + &b * &k2[i]).collect());
            }
            if rest.degree() > 0 && !rest.is_zero() {
                out.unresolved.push(format!(
                    "{rest} = 0 on the line through the kernel of the quadratic part"
                ));
            }
        }
        _ => return Err(Error::Input("quadratic part vanishes".into())),
    }
    let v = g.vars().clone();
    for p in points {
        let m = frame_with_last_column(&p);
        let h = g.substitute(&Substitution::linear(&v, g.order(), &m))?;
        let ch = blowup_chart(&h, &[v.name(0), v.name(1), v.name(2)], v.name(2))?;
        out.types.push(classify(&ch.strict)?);
    }
    out.types.sort();
    Ok(out)
}
