use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify_with, DuValType, Precision};
use crate::error::{Error, Result};
use crate::germ::ThreefoldGerm;
use crate::series::{Rational, Substitution, TruncatedSeries, Vars};

/// Sampling parameters for general hyperplane sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectionSampling {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SectionSampling {
    fn default() -> Self {
        SectionSampling {
            samples: 7,
            seed: 0,
        }
    }
}

/// Restriction of `f(x, y, z, t)` to `t = a x + b y + c z`, as a series in `x, y, z`.
pub fn restrict_to_hyperplane(
    f: &TruncatedSeries,
    coeffs: [Rational; 3],
) -> Result<TruncatedSeries> {
    let v = f.vars();
    if v != &Vars::xyzt() {
        return Err(Error::Shape("expected variables x, y, z, t".into()));
    }
    let n = f.order();
    let mut t = TruncatedSeries::zero(v, n);
    for (name, c) in ["x", "y", "z"].iter().zip(coeffs) {
        t = &t + &TruncatedSeries::var(v, n, name)?.scale(&c);
    }
    let h = f.substitute(&Substitution::replacing(v, n, &[("t", t)])?)?;
    h.project(&Vars::xyz())
}

fn draw(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-60..=60);
        let den: i64 = rng.gen_range(1..=7);
        if num != 0 {
            return crate::series::ratio(num, den);
        }
    }
}

/// DuVal type of the general hyperplane section of `germ`, optionally among
/// sections containing its curve.
///
/// Each sample is a hyperplane `t = a x + b y (+ c z)` in coordinates where
/// the curve is the `z`-axis. The most frequent determined type is returned
/// when it occurs in at least `samples - 1` draws; otherwise `Indeterminate`.
pub fn classify_general_section(
    germ: &ThreefoldGerm,
    through_curve: bool,
    sampling: SectionSampling,
    precision: &Precision,
) -> Result<DuValType> {
    let f = germ.normalized_f()?;
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut counts: BTreeMap<DuValType, usize> = BTreeMap::new();
    for _ in 0..sampling.samples {
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let c = if through_curve {
            Rational::from_integer(0.into())
        } else {
            draw(&mut rng)
        };
        let g = restrict_to_hyperplane(&f, [a, b, c])?;
        let ty = classify_with(&g, precision)?;
        *counts.entry(ty).or_default() += 1;
    }
    let determined: Vec<_> = counts.iter().filter(|(t, _)| t.is_determined()).collect();
    if determined.is_empty() {
        return Err(Error::Indeterminate {
            order: f.order(),
            reason: "every sampled section is indeterminate".into(),
        });
    }
    let (&best, &n) = determined
        .into_iter()
        .max_by_key(|(_, n)| **n)
        .expect("nonempty");
    Ok(if n + 1 >= sampling.samples {
        best
    } else {
        DuValType::Indeterminate
    })
}
