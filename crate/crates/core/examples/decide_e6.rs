//! The E6 case: conditions (a) and (b) against the linear term of the last
//! blow-up chart.

use cdv::blowup::linear_term_w2;
use cdv::decider::{decide_e6, e6_condition, DecideConfig};
use cdv::germ::ThreefoldGerm;
use cdv::io::parse_polynomial_in;
use cdv::normal_form::normalize_e6;
use cdv::Vars;

fn main() -> cdv::Result<()> {
    for text in [
        "x^2+x*z^2+y^3+t^4",
        "x^2+x*z^2+y^3+y^2*t",
        "x^2+x*z^2+y^3+y*t^2",
        "x^2+x*z^2+y^3+z*t^3",
        "x^2+x*z^2+y^3+y^2*t+z^3*t-t^4",
    ] {
        let f = parse_polynomial_in(text, &Vars::xyzt(), 12)?;
        let nf = normalize_e6(&ThreefoldGerm::new(f.clone())?)?;
        let (a, b) = e6_condition(&nf);
        let lin = linear_term_w2(&f)?.linear;
        let r = decide_e6(&nf, &DecideConfig::default())?;
        println!(
            "{text:>32}  H = {:<3} (a) {a:<5} (b) {b:<5} linear ({}, {}, {})  exists = {:?}",
            r.h_type.to_string(),
            lin[0],
            lin[1],
            lin[2],
            r.exists.unwrap_or(false)
        );
    }
    Ok(())
}
