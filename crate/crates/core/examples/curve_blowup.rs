//! Blow up the curve x = y = t = 0 of a threefold germ and read off the
//! exceptional divisor.

use cdv::blowup::{blowup_curve, exceptional_decomposition};
use cdv::io::parse_polynomial_in;
use cdv::Vars;

fn main() -> cdv::Result<()> {
    for text in ["x^2+y^3+y*z^3+t^3", "x^2+x*z^2+y^3+t^4"] {
        let f = parse_polynomial_in(text, &Vars::xyzt(), 12)?;
        let charts = blowup_curve(&f, &["x", "y", "t"])?;
        println!("{text}");
        for ch in &charts {
            println!(
                "  {} chart, exponent {}: {}",
                ch.chart, ch.exponent, ch.strict
            );
        }
        println!(
            "  preimage of the curve: {}",
            exceptional_decomposition(&charts)?
        );
    }
    Ok(())
}
