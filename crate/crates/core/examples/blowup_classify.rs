//! Singular points on the first blow-up of a DuVal point.

use cdv::duval::{blowup_classify, surface};

fn main() -> cdv::Result<()> {
    for text in [
        "x^2+y^2*z-z^3",
        "x^2+y^2*z-z^4",
        "x^2+y^2*z+z^6",
        "x^2+y^3+z^4",
        "x^2+y^3+y*z^3",
        "x^2+y^2*z+z^3",
    ] {
        let r = blowup_classify(&surface(text, 12)?)?;
        let types: Vec<String> = r.types.iter().map(ToString::to_string).collect();
        print!("{text:>16}  ->  [{}]", types.join(", "));
        if !r.unresolved.is_empty() {
            print!("  plus points over an extension: {:?}", r.unresolved);
        }
        println!();
    }
    Ok(())
}
