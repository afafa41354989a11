mod common;

use cdv::forms::{
    classify_cubic, discriminant_cubic, quadratic_matrix, quadratic_rank, BinaryForm, CubicClass,
};
use cdv::{ratio, Rational, TruncatedSeries, Vars};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Binary forms as coefficient vectors, `c[i]` on `u^i v^(d-i)`.
fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow(a: &[Rational], k: usize) -> Vec<Rational> {
    (0..k).fold(vec![Rational::one()], |acc, _| mul(&acc, a))
}

/// `f(p u + q v, r u + s v)` for `m = [[p, q], [r, s]]`.
fn change(f: &[Rational], m: &[[Rational; 2]; 2]) -> Vec<Rational> {
    let d = f.len() - 1;
    let lu = [m[0][1].clone(), m[0][0].clone()];
    let lv = [m[1][1].clone(), m[1][0].clone()];
    let mut out = vec![Rational::zero(); d + 1];
    for (i, c) in f.iter().enumerate() {
        let t = mul(&pow(&lu, i), &pow(&lv, d - i));
        for (o, x) in out.iter_mut().zip(t) {
            *o += c * x;
        }
    }
    out
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let nonzero = |v: &[Rational]| v.iter().any(|c| !c.is_zero());
    if !nonzero(a) || !nonzero(b) {
        return false;
    }
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn form(c: Vec<Rational>) -> BinaryForm {
    BinaryForm::new(c, "u", "v")
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

fn linear() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(coeff(), 2).prop_filter("nonzero", |l| l.iter().any(|c| !c.is_zero()))
}

/// Cubics of every class: square-free, `l^2 m`, `l^3` and zero.
fn cubic() -> impl Strategy<Value = Vec<Rational>> {
    prop_oneof![
        prop::collection::vec(coeff(), 4),
        (linear(), linear(), coeff())
            .prop_map(|(l, m, c)| mul(&pow(&l, 2), &m).iter().map(|x| x * &c).collect()),
        (linear(), coeff()).prop_map(|(l, c)| pow(&l, 3).iter().map(|x| x * &c).collect()),
    ]
}

fn invertible() -> impl Strategy<Value = [[Rational; 2]; 2]> {
    (coeff(), coeff(), coeff(), coeff())
        .prop_map(|(p, q, r, s)| [[p, q], [r, s]])
        .prop_filter("invertible", |m| {
            !(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_zero()
        })
}

proptest! {
    #![proptest_config(common::cases(200))]

    #[test]
    fn class_is_linearly_invariant(f in cubic(), m in invertible()) {
        let g = change(&f, &m);
        let (a, b) = (classify_cubic(&form(f)), classify_cubic(&form(g)));
        prop_assert_eq!(a.tag(), b.tag());
        // the repeated factor is transported: l(M w) is proportional to l'(w)
        match (a, b) {
            (CubicClass::DoubleLine { l, m: m1 }, CubicClass::DoubleLine { l: l2, m: m2 }) => {
                prop_assert!(proportional(&change(&l.coeffs, &m), &l2.coeffs));
                prop_assert!(proportional(&change(&m1.coeffs, &m), &m2.coeffs));
            }
            (CubicClass::TripleLine { l }, CubicClass::TripleLine { l: l2 }) => {
                prop_assert!(proportional(&change(&l.coeffs, &m), &l2.coeffs));
            }
            _ => {}
        }
    }

    #[test]
    fn discriminant_scales_by_det_sixth(f in cubic(), m in invertible()) {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        let d6 = (0..6).fold(Rational::one(), |acc, _| acc * &det);
        prop_assert_eq!(discriminant_cubic(&form(change(&f, &m))), d6 * discriminant_cubic(&form(f)));
    }

    #[test]
    fn double_line_factors(f in cubic()) {
        match classify_cubic(&form(f.clone())) {
            CubicClass::DoubleLine { l, m } => {
                prop_assert!(proportional(&mul(&pow(&l.coeffs, 2), &m.coeffs), &f));
                prop_assert!(!proportional(&l.coeffs, &m.coeffs));
            }
            CubicClass::TripleLine { l } => prop_assert!(proportional(&pow(&l.coeffs, 3), &f)),
            CubicClass::Zero => prop_assert!(f.iter().all(Zero::is_zero)),
            CubicClass::SquareFree => prop_assert!(!discriminant_cubic(&form(f)).is_zero()),
        }
    }

    #[test]
    fn quadratic_rank_matches_elimination(
        squares in prop::collection::vec((prop::collection::vec(coeff(), 4), coeff()), 0..5),
    ) {
        // sums of squares of linear forms reach every rank from 0 to 4
        let v = Vars::xyzt();
        let mut q = TruncatedSeries::zero(&v, 4);
        for (l, c) in &squares {
            let mut lin = TruncatedSeries::zero(&v, 4);
            for (i, a) in l.iter().enumerate() {
                lin = &lin + &TruncatedSeries::var_at(&v, 4, i).scale(a);
            }
            q = &q + &(&lin * &lin).scale(c);
        }
        let a = quadratic_matrix(&q);
        let rows: Vec<Vec<Rational>> = (0..4).map(|i| a.row(i).to_vec()).collect();
        let r = quadratic_rank(&a);
        prop_assert_eq!(r.rank, common::rank(rows));
        prop_assert!(r.rank <= squares.len());
    }
}
