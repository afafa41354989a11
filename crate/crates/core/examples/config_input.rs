//! Batch input: a JSON config list with per-germ truncation, seed and a
//! curve that is not a coordinate axis.

use cdv::decider::full_pipeline;
use cdv::io::{read_inputs, GermInput};

const CONFIG: &str = r#"[
  {"equation": "x^2+y^3+y*z^3+t^3", "trunc": 14, "seed": 3, "samples": 7},
  {"equation": "(x-z^2)^2+y^3+y*z^3+t^5", "curve": ["x-z^2", "y", "t"]},
  {"equation": "x^2+x*z^2+y^3+t^4"}
]"#;

fn main() -> cdv::Result<()> {
    for input in read_inputs(CONFIG, GermInput::new)? {
        let r = full_pipeline(&input.germ()?, &input.config())?;
        println!(
            "{} (trunc {}): {}, H = {}, exists = {:?}",
            input.equation, input.trunc, r.case, r.h_type, r.exists
        );
    }
    // plain text: one expression per line, `#` comments
    let lines = read_inputs(
        "x^2+y^3+y*z^3+t^4  # n = 4\n\nx^2+x*z^2+y^3+y^2*t\n",
        GermInput::new,
    )?;
    println!("{} germs read from text", lines.len());
    Ok(())
}
