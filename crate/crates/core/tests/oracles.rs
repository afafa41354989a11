//! Derived values checked against computations that do not share code with
//! the library routine under test.

mod common;

use std::collections::BTreeSet;

use cdv::blowup::{blowup_curve, exceptional_decomposition};
use cdv::duval::{colength, milnor_number};
use cdv::forms::{self, BinaryForm, CubicClass};
use cdv::germ::ThreefoldGerm;
use cdv::graph::{
    contract_numerics, discrepancies, intersection_matrix, is_negative_definite, multiplicity,
    theorem_graph, DualGraph, Dynkin,
};
use cdv::normal_form::{normalize_curve, normalize_e6, normalize_e7};
use cdv::series::{Exponents, Substitution};
use cdv::{rat, ratio, Rational, TruncatedSeries, Vars};
use common::*;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn dense_vars() -> [Dense; 4] {
    [Dense::var(0), Dense::var(1), Dense::var(2), Dense::var(3)]
}

#[test]
fn shift_y_by_t_matches_naive_expansion() {
    let f = xyzt("x^2+y^3+y*z^3+t*z^3");
    let v = Vars::xyzt();
    let y = &TruncatedSeries::var(&v, ORDER, "y").unwrap()
        - &TruncatedSeries::var(&v, ORDER, "t").unwrap();
    let got = f
        .substitute(&Substitution::replacing(&v, ORDER, &[("y", y)]).unwrap())
        .unwrap();

    let [x, y, z, t] = dense_vars();
    let mut images = dense_vars();
    images[1] = y.add(&t.scale(&rat(-1)));
    let expect = Dense::from_series(&f).compose(&images).truncate(ORDER);
    assert_eq!(Dense::from_series(&got), expect);
    // x^2 + (y - t)^3 + y z^3
    let closed = x
        .pow(2)
        .add(&y.add(&t.scale(&rat(-1))).pow(3))
        .add(&y.mul(&z.pow(3)));
    assert_eq!(expect, closed);
}

fn binomial(alpha: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| {
        acc * (alpha - Rational::from_integer(i.into())) / Rational::from_integer((i + 1).into())
    })
}

#[test]
fn fourth_root_matches_binomial_series() {
    let v = Vars::new(&["z"]);
    let f =
        &TruncatedSeries::one(&v, 3) - &TruncatedSeries::var(&v, 3, "z").unwrap().scale(&rat(4));
    let r = f.kth_root_unit(4).unwrap();
    let quarter = ratio(1, 4);
    for k in 0..3u32 {
        let c = binomial(&quarter, k) * Rational::from_integer((-4i64).pow(k).into());
        assert_eq!(r.coeff(&Exponents::from_slice(&[k])), c, "z^{k}");
    }
    assert_eq!(r.coeff_of(&[("z", 2)]), ratio(-3, 2));
    assert_eq!(r.pow(4), f);
}

#[test]
fn order_along_matches_term_scan() {
    for text in [
        "x^2+y^3+y*z^3+t^3",
        "x^2+y^3+y*z^3+t^4+y^2*z^5",
        "x*z^4+t^2*z",
    ] {
        let f = xyzt(text);
        let scan = f
            .terms()
            .map(|(e, _)| e.get(0) + e.get(1) + e.get(3))
            .min()
            .unwrap();
        assert_eq!(
            f.order_along(&["x", "y", "t"]).unwrap(),
            Some(scan),
            "{text}"
        );
    }
    assert_eq!(
        xyzt("x^2+y^3+y*z^3+t^3")
            .order_along(&["x", "y", "t"])
            .unwrap(),
        Some(1)
    );
}

#[test]
fn cubic_discriminant_matches_depressed_formula() {
    // y^3 + p y t^2 + q t^3 at t = 1 has discriminant -4 p^3 - 27 q^2
    for (p, q) in [(1, 0), (-3, 2), (2, 5), (0, 1), (-1, -1)] {
        let f = BinaryForm::new(vec![rat(q), rat(p), rat(0), rat(1)], "y", "t");
        let expect = rat(-4) * rat(p).pow(3) - rat(27) * rat(q).pow(2);
        assert_eq!(forms::discriminant_cubic(&f), expect, "p={p} q={q}");
    }
}

#[test]
fn double_line_moves_to_y_squared_t() {
    // (y + t)^2 (y - t)
    let f = xyzt("(y+t)^2*(y-t)");
    let cubic = BinaryForm::from_series(&f, "y", "t", 3).unwrap();
    let cls = forms::classify_cubic(&cubic);
    assert!(matches!(cls, CubicClass::DoubleLine { .. }));
    let s = forms::normalize_to_axes(&cls, &Vars::xyzt(), ORDER).unwrap();
    let g = f.substitute(&s).unwrap();
    assert_eq!(g.len(), 1, "{g}");
    assert!(!g.coeff_of(&[("y", 2), ("t", 1)]).is_zero(), "{g}");
}

#[test]
fn quadratic_rank_matches_elimination() {
    for text in [
        "x^2+y*t",
        "(y+z)^2",
        "x^2+y^2+z^2",
        "x*y+z*t",
        "x^2+2*x*y+y^2+t^2",
    ] {
        let f = xyzt(text);
        let q = forms::quadratic_matrix(&f);
        let rows: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| q.get(i, j).clone()).collect())
            .collect();
        assert_eq!(forms::quadratic_rank(&q).rank, rank(rows), "{text}");
    }
    let q = forms::quadratic_matrix(&xyzt("x^2+y*t"));
    assert_eq!(forms::quadratic_rank(&q).rank, 3);
}

/// Colength of `(g_x, g_y, g_z) + m^m` by spanning all monomial multiples in
/// a dense matrix over the monomials of degree `< m`.
fn dense_colength(text: &str, m: u32) -> usize {
    let g = xyzt(text);
    let dg = Dense::from_series(&g);
    let mut monos = Vec::new();
    for a in 0..m {
        for b in 0..m - a {
            for c in 0..m - a - b {
                monos.push([a, b, c, 0]);
            }
        }
    }
    let index = |e: &[u32; 4]| monos.iter().position(|m| m == e);
    let partial = |i: usize| {
        let mut out = Dense::default();
        for (e, c) in &dg.0 {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                out = out.add(&Dense(std::collections::BTreeMap::from([(
                    e2,
                    c * Rational::from_integer(e[i].into()),
                )])));
            }
        }
        out
    };
    let mut rows = Vec::new();
    for i in 0..3 {
        let p = partial(i);
        for mono in &monos {
            let prod = p.mul(&Dense(std::collections::BTreeMap::from([(
                *mono,
                Rational::one(),
            )])));
            let mut row = vec![Rational::zero(); monos.len()];
            for (e, c) in &prod.0 {
                if let Some(k) = index(e) {
                    row[k] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    monos.len() - rank(rows)
}

#[test]
fn milnor_numbers_match_dense_colength() {
    for (text, mu) in [
        ("x^2+y^2*z+z^4", 5),
        ("x^2+y^3+y*z^3", 7),
        ("x^2+y^2+z^4", 3),
    ] {
        let a = dense_colength(text, 8);
        let b = dense_colength(text, 10);
        assert_eq!(a, b, "dense colength not stable for {text}");
        assert_eq!(a, mu, "{text}");
        assert_eq!(milnor_number(&xyz(text, 24)).unwrap(), mu as u32, "{text}");
        assert_eq!(colength(&xyz(text, 24), 8), mu, "{text}");
    }
}

#[test]
fn curve_blowups_by_direct_chart() {
    // t-chart of x y: x y t^2, strict transform x y, exponent 2
    let f = xyzt("x*y");
    let charts = blowup_curve(&f, &["x", "y", "t"]).unwrap();
    let t = charts.iter().find(|c| c.chart == "t").unwrap();
    assert_eq!(t.exponent, 2);
    assert_eq!(t.strict, xyzt("x*y").truncate(ORDER - 2));
    // the fibre over the origin of x y is the pair of lines x y = 0 in P^2
    let dec = exceptional_decomposition(&charts).unwrap();
    assert_eq!(dec.components.len(), 2, "{dec}");
    assert!(dec.components.iter().all(|c| c.multiplicity == 1));
    // x y + t^2 restricts to the smooth conic x y + 1 = 0 in the t chart
    let f = xyzt("x*y+t^2");
    let charts = blowup_curve(&f, &["x", "y", "t"]).unwrap();
    let t = charts.iter().find(|c| c.chart == "t").unwrap();
    let fibre = t.strict.restrict_zero_by(&["t"]).unwrap();
    assert_eq!(fibre, xyzt("x*y+1").truncate(ORDER - 2));
    let dec = exceptional_decomposition(&charts).unwrap();
    assert_eq!(dec.components.len(), 1, "{dec}");
}

#[test]
fn e6_detection_through_the_coordinate_section() {
    // the section t = 0 is x^2 + x z^2 + y^3, i.e. (x + z^2/2)^2 + y^3 - z^4/4
    let s = xyz("x^2+x*z^2+y^3", 24);
    assert_eq!(cdv::duval::classify(&s).unwrap(), cdv::duval::DuValType::E6);
    let g = germ("x^2+x*z^2+y^3+y*t^2");
    let case = cdv::normal_form::detect_case(&g, Default::default(), &Default::default()).unwrap();
    assert_eq!(case, cdv::normal_form::Case::E6);
}

fn reconstructs(
    f: &TruncatedSeries,
    audit: &Substitution,
    unit: &TruncatedSeries,
    nf: &TruncatedSeries,
) {
    let lhs = Dense::from_series(f);
    let images: [Dense; 4] = std::array::from_fn(|i| Dense::from_series(&audit.images()[i]));
    let n = nf
        .order()
        .min(unit.order())
        .min(audit.images().iter().map(|s| s.order()).min().unwrap());
    let lhs = lhs.compose(&images).truncate(n);
    let rhs = Dense::from_series(unit)
        .mul(&Dense::from_series(nf))
        .truncate(n);
    assert_eq!(lhs, rhs);
}

#[test]
fn e7_shift_reconstructs() {
    let g = germ("x^2+y^3+y*z^3+t*z^3");
    let nf = normalize_e7(&g).unwrap();
    reconstructs(&g.f, &nf.audit, &nf.unit, &nf.f);
    // the shift y -> y - t turns t z^3 into t^2 terms of f2
    assert!(!nf.f2.coeff(0).is_zero(), "{}", nf.f);
    assert!(nf.f.coeff_of(&[("z", 3), ("t", 1)]).is_zero());
}

#[test]
fn e6_rescaling_reconstructs() {
    let f = xyzt("x^2+y^3-z^4+t*z^4");
    let curve = [xyzt("x-z^2"), xyzt("y"), xyzt("t")];
    let g = ThreefoldGerm::with_curve(f.clone(), curve).unwrap();
    let (ng, frame) = normalize_curve(&g).unwrap();
    let nf = normalize_e6(&ng).unwrap();
    let audit = frame.then(&nf.audit).unwrap();
    reconstructs(&f, &audit, &nf.unit, &nf.f);
    for k in 4..ORDER {
        assert!(
            nf.f_ge3.coeff_of(&[("z", k)]).is_zero(),
            "z^{k} in {}",
            nf.f_ge3
        );
    }
}

#[test]
fn sheared_curve_is_transported() {
    let f = xyzt("x^2+y^3+y*z^3+(t+x^2)^3");
    let curve = [xyzt("x"), xyzt("y"), xyzt("t+x^2")];
    let g = ThreefoldGerm::with_curve(f.clone(), curve.clone()).unwrap();
    let (ng, frame) = normalize_curve(&g).unwrap();
    // each curve equation pulled back is a coordinate function of x, y, t
    for c in &curve {
        let pulled = c.substitute(&frame).unwrap();
        assert!(
            pulled.restrict_zero_by(&["x", "y", "t"]).unwrap().is_zero(),
            "{pulled}"
        );
    }
    assert!(ng.f.restrict_zero_by(&["x", "y", "t"]).unwrap().is_zero());
    let images: [Dense; 4] = std::array::from_fn(|i| Dense::from_series(&frame.images()[i]));
    assert_eq!(
        Dense::from_series(&f).compose(&images).truncate(ORDER),
        Dense::from_series(&ng.f)
    );
}

fn matrix_rows(g: &DualGraph, subset: Option<&[usize]>) -> Vec<Vec<Rational>> {
    let m = intersection_matrix(g);
    let all: Vec<usize> = (0..m.ids.len()).collect();
    let idx = subset.unwrap_or(&all);
    idx.iter()
        .map(|&i| idx.iter().map(|&j| m.matrix.get(i, j).clone()).collect())
        .collect()
}

#[test]
fn dynkin_determinants_by_cofactor_expansion() {
    let cases = [
        (Dynkin::A(1), 2),
        (Dynkin::A(4), 5),
        (Dynkin::A(7), 8),
        (Dynkin::D(4), 4),
        (Dynkin::D(6), 4),
        (Dynkin::E(6), 3),
        (Dynkin::E(7), 2),
        (Dynkin::E(8), 1),
    ];
    for (kind, abs) in cases {
        let g = DualGraph::dynkin(kind).unwrap();
        let rows = matrix_rows(&g, None);
        let d = det(&rows);
        assert_eq!(d.abs(), rat(abs), "{kind:?}");
        assert_eq!(intersection_matrix(&g).matrix.det(), d, "{kind:?}");
        let n = rows.len() as u32;
        assert_eq!(d.is_negative(), n.is_odd(), "{kind:?} sign");
    }
}

/// Negative definiteness of `m` via all leading principal minors of `-m`.
fn sylvester(rows: &[Vec<Rational>]) -> bool {
    let neg: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|c| -c).collect())
        .collect();
    (1..=neg.len()).all(|k| {
        let minor: Vec<Vec<Rational>> = neg[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&minor).is_positive()
    })
}

#[test]
fn theorem_graphs_numerics_by_hand_solver() {
    for h in ["E6", "D5", "D4"] {
        let g = theorem_graph(h).unwrap();
        let ex = g.exceptional_indices();
        let rows = matrix_rows(&g, Some(&ex));
        assert!(sylvester(&rows), "{h}");
        assert!(is_negative_definite(&intersection_matrix(&g), &ex), "{h}");
        let num = contract_numerics(&g).unwrap();
        assert_eq!(num.c_squared, ratio(-1, 4), "{h}");
        assert_eq!(num.k_dot_c, ratio(-1, 2), "{h}");
        assert_eq!(multiplicity(&g).unwrap(), rat(1), "{h}");

        // independent check: solve (C + sum b_i E_i).E_j = 0 by inverting the
        // exceptional block through Cramer's rule
        let m = intersection_matrix(&g);
        let c = m.index(g.marked.as_deref().unwrap()).unwrap();
        let n = ex.len();
        let rhs: Vec<Rational> = ex.iter().map(|&j| -m.matrix.get(c, j).clone()).collect();
        let d = det(&rows);
        let b: Vec<Rational> = (0..n)
            .map(|k| {
                let mut mk = rows.clone();
                for (r, row) in mk.iter_mut().enumerate() {
                    row[k] = rhs[r].clone();
                }
                det(&mk) / &d
            })
            .collect();
        let mut c2 = m.matrix.get(c, c).clone();
        for (k, &i) in ex.iter().enumerate() {
            c2 += &b[k] * m.matrix.get(i, c);
        }
        assert_eq!(c2, ratio(-1, 4), "{h}");
    }
}

#[test]
fn toy_and_single_vertex_by_hand() {
    // C (-1) meeting E (-2): b = 1/2, C^2 = -1 + 1/2; K.E = 0 so a = 0 and K.C = -1
    let g = DualGraph::dynkin(Dynkin::A(1))
        .unwrap()
        .with_marked_curve("E1", -1)
        .unwrap();
    let num = contract_numerics(&g).unwrap();
    assert_eq!(num.c_squared, ratio(-1, 2));
    assert_eq!(num.k_dot_c, rat(-1));
    assert_eq!(multiplicity(&g).unwrap(), rat(2));

    // one -3 curve: -3 a = -(-3) - 2 with the sign convention K_up = K + a E
    let mut g = DualGraph::dynkin(Dynkin::A(1)).unwrap();
    g.vertices[0].self_int = -3;
    let d = discrepancies(&g, &[0]).unwrap();
    assert_eq!(d, vec![ratio(-1, 3)]);
    let mut g = DualGraph::dynkin(Dynkin::A(1)).unwrap();
    g.vertices[0].self_int = 0;
    assert!(!is_negative_definite(&intersection_matrix(&g), &[0]));
}

#[test]
fn e6_case_discrepancies_have_denominator_two() {
    let g = theorem_graph("E6").unwrap();
    let ex = g.exceptional_indices();
    let d = discrepancies(&g, &ex).unwrap();
    let two = num_bigint::BigInt::from(2);
    assert!(d.iter().all(|a| (&two % a.denom()).is_zero()), "{d:?}");
    assert!(d.iter().any(|a| !a.is_integer()), "{d:?}");
    let ids: BTreeSet<_> = g.vertices.iter().map(|v| v.id.as_str()).collect();
    assert_eq!(ids.len(), g.vertices.len());
}

#[test]
fn parsed_e6_germ_has_a021() {
    let g = germ("x^2+x*z^2+y^3+t*(z^2*t)");
    let nf = normalize_e6(&g).unwrap();
    assert_eq!(nf.a_ijk(0, 2, 1), rat(1));
    assert_eq!(nf.f_ge3.len(), 1);
}
