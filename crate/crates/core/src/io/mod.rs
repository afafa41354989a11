//! Expression parsing, input documents and report serialization.

mod input;
mod parse;
mod report;

pub use input::{read_inputs, GermInput, MIN_TRUNCATION};
pub use parse::{parse_polynomial, parse_polynomial_in, parse_rational, DEFAULT_ORDER};
pub use report::{
    emit_report, graph_to_dot, AuditDoc, CrossCheckDoc, GraphDoc, GraphVertexDoc, ReportDocument,
    ReportFormat,
};
