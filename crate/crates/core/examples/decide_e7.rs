//! The E7 case: the family x^2+y^3+y*z^3+t^n and the f2(0,t) = 0 trap.

use cdv::decider::{full_pipeline, DecideConfig};
use cdv::germ::ThreefoldGerm;
use cdv::io::parse_polynomial_in;
use cdv::Vars;

fn main() -> cdv::Result<()> {
    let mut germs: Vec<String> = (3..=6).map(|n| format!("x^2+y^3+y*z^3+t^{n}")).collect();
    germs.push("x^2+y^3+y*z^3+y*t^2+t^4".into());
    germs.push("x^2+y^3+y*z^3-3*y*t^2+2*t^3".into());
    for text in &germs {
        let g = ThreefoldGerm::new(parse_polynomial_in(text, &Vars::xyzt(), 12)?)?;
        let r = full_pipeline(&g, &DecideConfig::default())?;
        print!(
            "{text:>30}  H = {:<4} exists = {:?}",
            r.h_type.to_string(),
            r.exists.unwrap_or(false)
        );
        if let Some(inv) = &r.invariants {
            print!("  index {}  model {}", inv.index, inv.singular_point_model);
        }
        println!();
    }
    Ok(())
}
