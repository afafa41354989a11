//! Exact truncated power series: products, units, roots, substitution and
//! Weierstrass division.

use cdv::io::parse_polynomial_in;
use cdv::{Substitution, Vars};

fn main() -> cdv::Result<()> {
    let v = Vars::xyzt();
    let s = |text: &str| parse_polynomial_in(text, &v, 8);

    let f = s("1+t+z^2")?;
    let inv = f.invert_unit()?;
    println!("1/(1+t+z^2) = {inv}");
    println!("check: {}", &f * &inv);
    println!("sqrt(1+2*t+t^2) = {}", s("1+2*t+t^2")?.kth_root_unit(2)?);

    // y -> y + t*z, everything else fixed
    let y_img = s("y+t*z")?;
    let sub = Substitution::replacing(&v, 8, &[("y", y_img)])?;
    println!("y^3 after y -> y+t*z: {}", s("y^3")?.substitute(&sub)?);

    // (1+z)(y^2 + t^3) = u * (y^2 + r1 y + r0)
    let (u, r) = s("(1+z)*(y^2+t^3)")?.weierstrass_divide("y", 2)?;
    println!("unit {u}, r0 = {}, r1 = {}", r[0], r[1]);

    let g = s("y^2*z+t^3")?;
    println!("lowest degree of y^2*z+t^3: {:?}", g.min_degree());
    println!("its t-free part: {}", g.restrict_zero_by(&["t"])?);
    Ok(())
}
