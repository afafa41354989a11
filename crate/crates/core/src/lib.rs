//! Exact symbolic tools for compound DuVal threefold germs containing a
//! smooth curve: truncated power series, DuVal recognition, blow-up charts,
//! normal forms and the existence criteria for divisorial contractions.

pub mod blowup;
pub mod cli;
pub mod decider;
pub mod duval;
pub mod error;
pub mod forms;
pub mod germ;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod normal_form;
pub mod series;

pub use error::{Error, Result};
pub use series::{rat, ratio, Rational, Substitution, TruncatedSeries, Vars};
