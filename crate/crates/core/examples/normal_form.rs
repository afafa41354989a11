//! Reduce germs to the E7-case and E6-case normal forms, with the audit trail
//! `F(audit) = unit * normal form`.

use cdv::duval::{Precision, SectionSampling};
use cdv::germ::ThreefoldGerm;
use cdv::io::parse_polynomial_in;
use cdv::normal_form::{normalize, predict_h_type};
use cdv::Vars;

fn main() -> cdv::Result<()> {
    for text in [
        "(x+y*t)^2+y^3+y*z^3+t^3+y*z^2*t",
        "x^2+x*z^2+y^3+y^2*t+z^3*t-t^4",
    ] {
        let g = ThreefoldGerm::new(parse_polynomial_in(text, &Vars::xyzt(), 12)?)?;
        let (case, nf) = normalize(&g, SectionSampling::default(), &Precision::default())?;
        println!("{text}\n  case: {case}");
        if let Some(nf) = nf {
            println!("  normal form: {}", nf.series());
            println!("  unit: {}", nf.unit());
            println!("  predicted H: {}", predict_h_type(&nf));
            for (v, im) in nf.audit().source().names().zip(nf.audit().images()) {
                println!("  {v} -> {im}");
            }
        }
    }
    Ok(())
}
