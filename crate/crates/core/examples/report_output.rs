//! A decision report as JSON, text and Graphviz DOT.

use cdv::decider::{full_pipeline, DecideConfig};
use cdv::germ::ThreefoldGerm;
use cdv::io::{emit_report, parse_polynomial_in, ReportDocument, ReportFormat};
use cdv::Vars;

fn main() -> cdv::Result<()> {
    let f = parse_polynomial_in("x^2+y^3+y*z^3+t^3", &Vars::xyzt(), 12)?;
    let r = full_pipeline(&ThreefoldGerm::new(f)?, &DecideConfig::default())?;
    print!(
        "{}",
        String::from_utf8_lossy(&emit_report(&r, ReportFormat::Text))
    );
    let json = String::from_utf8(emit_report(&r, ReportFormat::Json)).expect("utf-8");
    assert_eq!(
        ReportDocument::from_json(&json)?,
        ReportDocument::new(&r, None)
    );
    println!("{json}");
    print!(
        "{}",
        String::from_utf8_lossy(&emit_report(&r, ReportFormat::Dot))
    );
    Ok(())
}
