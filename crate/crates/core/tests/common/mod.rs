//! Shared fixtures: germ corpora, seeded random germs and coordinate changes,
//! and a dense polynomial type used as an independent expansion oracle.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cdv::duval::DuValType;
use cdv::germ::ThreefoldGerm;
use cdv::io::parse_polynomial_in;
use cdv::series::{Exponents, Substitution};
use cdv::{ratio, Rational, TruncatedSeries, Vars};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ORDER: u32 = 12;

pub fn xyzt(text: &str) -> TruncatedSeries {
    parse_polynomial_in(text, &Vars::xyzt(), ORDER).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn xyz(text: &str, order: u32) -> TruncatedSeries {
    parse_polynomial_in(text, &Vars::xyz(), order).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn germ(text: &str) -> ThreefoldGerm {
    ThreefoldGerm::new(xyzt(text)).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Proptest settings: a fixed number of cases from a seeded generator,
/// nothing persisted between runs.
pub fn cases(n: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases: n,
        failure_persistence: None,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x00c0_ffee),
        ..Default::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with small numerator and denominator.
pub fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-5..=5);
        let q: i64 = rng.gen_range(1..=3);
        if p != 0 {
            return ratio(p, q);
        }
    }
}

/// `small_rat` or zero, zero with probability `1/zero_one_in`.
pub fn maybe_rat(rng: &mut ChaCha8Rng, zero_one_in: u32) -> Rational {
    if rng.gen_range(0..zero_one_in) == 0 {
        Rational::zero()
    } else {
        small_rat(rng)
    }
}

pub fn term(c: &Rational, e: [u32; 4]) -> String {
    let names = ["x", "y", "z", "t"];
    let mut s = format!("({c})");
    for (n, k) in names.iter().zip(e) {
        match k {
            0 => {}
            1 => s.push_str(&format!("*{n}")),
            k => s.push_str(&format!("*{n}^{k}")),
        }
    }
    s
}

pub fn join(head: &str, terms: &[String]) -> String {
    let mut s = head.to_string();
    for t in terms {
        s.push('+');
        s.push_str(t);
    }
    s
}

/// Random germ `x^2 + y^3 + y z^3 + t f2(y, t) + t g(y, z, t)` with `g` of
/// degree 3 or 4 and free of pure powers of `z`. Returns the text and the
/// coefficients `(c_tt, c_yt, c_yy)` of `f2`.
pub fn random_e7_germ(rng: &mut ChaCha8Rng) -> (String, [Rational; 3]) {
    let c = [maybe_rat(rng, 3), maybe_rat(rng, 3), maybe_rat(rng, 3)];
    let mut terms = vec![
        term(&c[0], [0, 0, 0, 3]),
        term(&c[1], [0, 1, 0, 2]),
        term(&c[2], [0, 2, 0, 1]),
    ];
    for _ in 0..rng.gen_range(0..=3) {
        let d = rng.gen_range(3..=4);
        let i = rng.gen_range(0..=d);
        let j = rng.gen_range(0..=d - i);
        let k = d - i - j;
        if i == 0 && k == 0 {
            continue;
        }
        terms.push(term(&small_rat(rng), [0, i, j, k + 1]));
    }
    (join("x^2+y^3+y*z^3", &terms), c)
}

/// Coefficients of an E6-case normal form.
#[derive(Clone, Debug)]
pub struct E6Coeffs {
    pub a: Rational,
    pub b: Rational,
    pub a030: Rational,
    pub a021: Rational,
    pub a012: Rational,
    pub a003: Rational,
}

/// Random E6-case coefficients; conditions (a) and (b) are each forced to
/// fail a third of the time.
pub fn random_e6_coeffs(rng: &mut ChaCha8Rng) -> E6Coeffs {
    let a = maybe_rat(rng, 2);
    let b = maybe_rat(rng, 2);
    let a030 = maybe_rat(rng, 3);
    let a021 = maybe_rat(rng, 3);
    let s = &a030 * &a030 + &a021;
    let a003 = if rng.gen_range(0..3) == 0 {
        -(&s * &s)
    } else {
        maybe_rat(rng, 3)
    };
    let two = Rational::from_integer(2.into());
    let a012 = if rng.gen_range(0..3) == 0 {
        -(&two * &a030 * &s)
    } else {
        maybe_rat(rng, 3)
    };
    E6Coeffs {
        a,
        b,
        a030,
        a021,
        a012,
        a003,
    }
}

/// `x^2 + x z^2 + y^3 + a y t^2 + b y^2 t + t f` with the given `a_0jk` and a
/// few random extra monomials of `f` (never `z^k` or `y^s`).
pub fn e6_germ_text(rng: &mut ChaCha8Rng, c: &E6Coeffs) -> String {
    let mut terms = vec![
        term(&c.a, [0, 1, 0, 2]),
        term(&c.b, [0, 2, 0, 1]),
        term(&c.a030, [0, 0, 3, 1]),
        term(&c.a021, [0, 0, 2, 2]),
        term(&c.a012, [0, 0, 1, 3]),
        term(&c.a003, [0, 0, 0, 4]),
    ];
    for _ in 0..rng.gen_range(0..=2) {
        let d = rng.gen_range(3..=4);
        let i = rng.gen_range(1..=d);
        let j = rng.gen_range(0..=d - i);
        let k = d - i - j;
        if k == 0 && j == 0 {
            continue;
        }
        terms.push(term(&small_rat(rng), [0, i, j, k + 1]));
    }
    join("x^2+x*z^2+y^3", &terms)
}

/// A fixed list of E7-case germs along `x = y = t = 0`.
pub fn e7_corpus() -> Vec<&'static str> {
    vec![
        "x^2+y^3+y*z^3+t^3",
        "x^2+y^3+y*z^3+t^4",
        "x^2+y^3+y*z^3+t^5",
        "x^2+y^3+y*z^3+t^6",
        "x^2+y^3+y*z^3+y*t^2+t^4",
        "x^2+y^3+y*z^3+y*t^2",
        "x^2+y^3+y*z^3+y^2*t",
        "x^2+y^3+y*z^3+y^2*t+t^3",
        "x^2+y^3+y*z^3-3*y*t^2+2*t^3",
        "x^2+y^3+y*z^3+y^2*t+y*t^2",
        "x^2+y^3+y*z^3+t^3+y*z^2*t",
        "x^2+y^3+y*z^3+y*t^2+y*z*t^2",
        "x^2+y^3+y*z^3+t^4+y*z^2*t",
        "x^2+y^3+y*z^3+3*y^2*t+3*y*t^2+t^3",
        "x^2+y^3+y*z^3+3*y^2*t+3*y*t^2+t^3+t^4",
        "x^2+y^3+y*z^3+t*z^3",
        "2*x^2+y^3+y*z^3+t^3",
        "x^2+2*y^3+y*z^3+y*t^2+t^3",
        "x^2+y^3+y*z^3+t^5+y^2*z*t",
        "(x+y*t)^2+y^3+y*z^3+t^3",
    ]
}

/// A fixed list of E6-case germs along `x = y = t = 0`.
pub fn e6_corpus() -> Vec<&'static str> {
    vec![
        "x^2+x*z^2+y^3+t^4",
        "x^2+x*z^2+y^3+y^2*t",
        "x^2+x*z^2+y^3+y*t^2",
        "x^2+x*z^2+y^3+y*t^2+t^4",
        "x^2+x*z^2+y^3+y^2*t+y*t^2",
        "x^2+x*z^2+y^3+2*y^2*t+y*t^2",
        "x^2+x*z^2+y^3+z^3*t",
        "x^2+x*z^2+y^3+z^2*t^2",
        "x^2+x*z^2+y^3+z*t^3",
        "x^2+x*z^2+y^3+y^2*t+z^3*t-t^4",
        "x^2+x*z^2+y^3+y^2*t+z^2*t^2+2*z*t^3",
        "x^2+x*z^2+y^3+t^5",
        "x^2+x*z^2+y^3+y*z*t^2",
        "x^2+x*z^2+y^3+y^2*t+y*z^2*t",
    ]
}

/// DuVal normal forms with their types.
pub fn ade_corpus() -> Vec<(String, DuValType)> {
    let mut out = Vec::new();
    for n in 1..=8u32 {
        out.push((format!("x^2+y^2+z^{}", n + 1), DuValType::A(n)));
    }
    for n in 4..=8u32 {
        out.push((format!("x^2+y^2*z+z^{}", n - 1), DuValType::D(n)));
    }
    out.push(("x^2+y^3+z^4".into(), DuValType::E6));
    out.push(("x^2+y^3+y*z^3".into(), DuValType::E7));
    out.push(("x^2+y^3+z^5".into(), DuValType::E8));
    out
}

fn rand_int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    Rational::from_integer(rng.gen_range(lo..=hi).into())
}

/// Random invertible change of `n` coordinates: an integer linear part with
/// nonzero determinant plus random quadratic terms.
pub fn random_change(rng: &mut ChaCha8Rng, vars: &Vars, order: u32) -> Substitution {
    let n = vars.len();
    loop {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| rand_int(rng, -2, 2)).collect())
            .collect();
        let lin = cdv::linalg::Matrix::from_rows(m.clone());
        if lin.det().is_zero() {
            continue;
        }
        let images = (0..n)
            .map(|i| {
                let mut s = TruncatedSeries::zero(vars, order);
                for (j, c) in m[i].iter().enumerate() {
                    s = &s + &TruncatedSeries::var_at(vars, order, j).scale(c);
                }
                for _ in 0..2 {
                    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                    let e = Exponents::unit(a).mul(&Exponents::unit(b));
                    s = &s + &TruncatedSeries::monomial(vars, order, e, rand_int(rng, -1, 1));
                }
                s
            })
            .collect();
        return Substitution::new(vars, vars, images).expect("valid substitution");
    }
}

/// Coordinate change of `x, y, z, t` that is the identity modulo `t` up to
/// scalings and an arbitrary shift of `x`; it keeps the curve `x = y = t = 0`
/// and the shape of the section `t = 0`.
pub fn random_curve_change(rng: &mut ChaCha8Rng, order: u32) -> Substitution {
    let v = Vars::xyzt();
    let var = |n: &str| TruncatedSeries::var(&v, order, n).unwrap();
    let (x, y, z, t) = (var("x"), var("y"), var("z"), var("t"));
    let r = |rng: &mut ChaCha8Rng| rand_int(rng, -2, 2);
    let xi = &(&x + &(&y * &t).scale(&r(rng))) + &(&t * &z).scale(&r(rng));
    let yi = &(&y + &t.scale(&r(rng))) + &(&t * &z).scale(&r(rng));
    let zi = &z + &t.scale(&r(rng));
    let ti = &t + &(&t * &t).scale(&r(rng));
    Substitution::new(&v, &v, vec![xi, yi, zi, ti]).unwrap()
}

/// Dense polynomial over `x, y, z, t` with a naive expansion, used to check
/// series arithmetic through an unrelated code path.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Dense(pub BTreeMap<[u32; 4], Rational>);

impl Dense {
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Dense(BTreeMap::from([(e, Rational::one())]))
    }

    pub fn constant(c: Rational) -> Self {
        Dense(BTreeMap::from([([0; 4], c)]))
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let v = m.entry(*e).or_insert_with(Rational::zero);
            *v += c;
        }
        m.retain(|_, c| !c.is_zero());
        Dense(m)
    }

    pub fn scale(&self, k: &Rational) -> Dense {
        let mut m: BTreeMap<_, _> = self.0.iter().map(|(e, c)| (*e, c * k)).collect();
        m.retain(|_, c: &mut Rational| !c.is_zero());
        Dense(m)
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let mut m: BTreeMap<[u32; 4], Rational> = BTreeMap::new();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                let v = m.entry(e).or_insert_with(Rational::zero);
                *v += c1 * c2;
            }
        }
        m.retain(|_, c| !c.is_zero());
        Dense(m)
    }

    pub fn pow(&self, k: u32) -> Dense {
        (0..k).fold(Dense::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// Replaces each variable by the given polynomial.
    pub fn compose(&self, images: &[Dense; 4]) -> Dense {
        let mut out = Dense::default();
        for (e, c) in &self.0 {
            let mut t = Dense::constant(c.clone());
            for i in 0..4 {
                t = t.mul(&images[i].pow(e[i]));
            }
            out = out.add(&t);
        }
        out
    }

    pub fn truncate(&self, n: u32) -> Dense {
        Dense(
            self.0
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() < n)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        )
    }

    pub fn from_series(s: &TruncatedSeries) -> Dense {
        assert_eq!(s.nvars(), 4);
        Dense(
            s.terms()
                .map(|(e, c)| ([e.get(0), e.get(1), e.get(2), e.get(3)], c.clone()))
                .collect(),
        )
    }
}

/// Exact rank by Gaussian elimination over the rationals.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, c)| c.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
