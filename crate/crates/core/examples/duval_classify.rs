//! Recognize DuVal surface singularities and compute Milnor numbers.

use cdv::duval::{classify, milnor_number, surface};

fn main() -> cdv::Result<()> {
    for text in [
        "x^2+y^2+z^5",
        "x^2+y^2*z-z^4",
        "x^2+y^3+z^4",
        "x^2+y^3+y*z^3",
        "x^2+y^3+z^5",
        // a D6 point after a nonlinear change of coordinates
        "x^2+(y+z^2)^2*z+z^5",
        "x^2+y^3+z^7",
    ] {
        let g = surface(text, 14)?;
        let t = classify(&g)?;
        match milnor_number(&g) {
            Ok(mu) => println!("{text:>24}  {t}  mu = {mu}"),
            Err(e) => println!("{text:>24}  {t}  ({e})"),
        }
    }
    Ok(())
}
