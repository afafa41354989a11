mod common;

use cdv::duval::{classify_general_section, Precision, SectionSampling};
use cdv::germ::ThreefoldGerm;
use cdv::normal_form::{normalize, normalize_e6, normalize_e7, predict_h_type, Case, NormalForm};
use cdv::series::Exponents;
use num_traits::One;
use proptest::prelude::*;

fn reconstructs(g: &ThreefoldGerm, nf: &NormalForm) -> Result<(), TestCaseError> {
    let lhs = g.f.substitute(nf.audit()).unwrap();
    let rhs = nf.unit() * nf.series();
    let n = lhs.order().min(rhs.order());
    prop_assert!(n >= common::ORDER - 4, "precision collapsed to {}", n);
    prop_assert_eq!(lhs.truncate(n), rhs.truncate(n));
    Ok(())
}

/// The tail `f` of the normal form avoids pure powers of `z` (any in the E7
/// case, beyond `z^3` in the E6 case) and, in the E6 case, of `y`.
fn check_shape(nf: &NormalForm) -> Result<(), TestCaseError> {
    let f = nf.series();
    let head = match nf {
        NormalForm::E7(_) => common::xyzt("x^2+y^3+y*z^3"),
        NormalForm::E6(_) => common::xyzt("x^2+x*z^2+y^3"),
    };
    let n = f.order();
    prop_assert_eq!(f.restrict_zero_by(&["t"]).unwrap(), head.truncate(n));
    let tail = match nf {
        NormalForm::E7(nf) => &nf.f_ge3,
        NormalForm::E6(nf) => &nf.f_ge3,
    };
    for (e, _) in tail.terms() {
        let only = |i: usize| (0..4).all(|j| j == i || e.get(j) == 0);
        match nf {
            NormalForm::E7(_) => prop_assert!(!only(2), "pure z power {:?} in the tail", e),
            NormalForm::E6(_) => {
                prop_assert!(
                    !(only(2) && e.get(2) >= 4),
                    "z^k, k >= 4, in the tail: {:?}",
                    e
                );
                prop_assert!(!only(1), "pure y power {:?} in the tail", e);
            }
        }
        prop_assert_eq!(e.get(0), 0, "x in the tail");
    }
    Ok(())
}

fn is_identity(s: &cdv::Substitution) -> bool {
    s.images()
        .iter()
        .enumerate()
        .all(|(i, im)| im.len() == 1 && im.coeff(&Exponents::unit(i)).is_one())
}

fn normal_form(g: &ThreefoldGerm, e7: bool) -> NormalForm {
    if e7 {
        NormalForm::E7(normalize_e7(g).unwrap())
    } else {
        NormalForm::E6(normalize_e6(g).unwrap())
    }
}

fn check_idempotent(nf: &NormalForm, e7: bool) -> Result<(), TestCaseError> {
    let again = normal_form(&ThreefoldGerm::new(nf.series().clone()).unwrap(), e7);
    prop_assert_eq!(again.series(), nf.series());
    prop_assert!(is_identity(again.audit()));
    let one = cdv::TruncatedSeries::one(again.unit().vars(), again.unit().order());
    prop_assert_eq!(again.unit(), &one);
    Ok(())
}

fn corpus() -> Vec<(&'static str, bool)> {
    let mut out: Vec<_> = common::e7_corpus().into_iter().map(|t| (t, true)).collect();
    out.extend(common::e6_corpus().into_iter().map(|t| (t, false)));
    out
}

#[test]
fn corpus_normal_forms() {
    for (text, e7) in corpus() {
        let g = common::germ(text);
        let nf = normal_form(&g, e7);
        reconstructs(&g, &nf).unwrap();
        check_shape(&nf).unwrap();
        check_idempotent(&nf, e7).unwrap();
    }
}

#[test]
fn prediction_matches_sampling_on_corpus() {
    let corpus = corpus();
    assert!(corpus.len() >= 30);
    for (text, e7) in corpus {
        let g = common::germ(text);
        let (case, nf) = normalize(&g, SectionSampling::default(), &Precision::default()).unwrap();
        assert_eq!(case, if e7 { Case::E7 } else { Case::E6 }, "{text}");
        let predicted = predict_h_type(nf.as_ref().unwrap());
        let sampled =
            classify_general_section(&g, false, SectionSampling::default(), &Precision::default())
                .unwrap();
        assert!(
            predicted.admits(sampled),
            "{text}: predicted {predicted}, sampled {sampled}"
        );
    }
}

proptest! {
    #![proptest_config(common::cases(24))]

    #[test]
    fn random_germs_normalize(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (e7_text, _) = common::random_e7_germ(&mut rng);
        let c = common::random_e6_coeffs(&mut rng);
        let e6_text = common::e6_germ_text(&mut rng, &c);
        for (text, e7) in [(e7_text.as_str(), true), (e6_text.as_str(), false)] {
            let g = common::germ(text);
            let nf = normal_form(&g, e7);
            reconstructs(&g, &nf)?;
            check_shape(&nf)?;
        }
    }

    /// Changes of coordinates keeping the curve: the audit still reconstructs
    /// the normal form, and the leading data survive.
    #[test]
    fn changed_corpus_germs_normalize(seed in any::<u64>(), pick in 0usize..34) {
        let mut rng = common::rng(seed);
        let (text, e7) = corpus()[pick];
        let s = common::random_curve_change(&mut rng, common::ORDER);
        let g = ThreefoldGerm::new(common::xyzt(text).substitute(&s).unwrap()).unwrap();
        let nf = normal_form(&g, e7);
        reconstructs(&g, &nf)?;
        check_shape(&nf)?;
    }
}
