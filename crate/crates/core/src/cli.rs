//! The `cdv` command-line driver.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::blowup::{blowup_curve, exceptional_decomposition};
use crate::decider::full_pipeline;
use crate::duval::{
    classify_general_section, classify_with, milnor_number_with, DuValType, Precision,
};
use crate::error::{Error, Result};
use crate::io::{graph_to_dot, parse_polynomial_in, read_inputs, GermInput, ReportDocument};
use crate::normal_form::{normalize, normalize_curve, predict_h_type};
use crate::series::Vars;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cdv",
    version,
    about = "Divisorial contractions to curves in cE7 and cE6 threefold germs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Truncation order of the power series
    #[arg(long, global = true, env = "CDV_TRUNC", default_value_t = crate::io::DEFAULT_ORDER)]
    trunc: u32,
    /// Seed for sampled hyperplane sections
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of sampled hyperplane sections
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write the results as JSON to this path
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write dual graphs in Graphviz format to this path
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Print nothing on standard output
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify surface germs in x, y, z
    Duval { input: String },
    /// Normal form and section types of a threefold germ along x = y = t = 0
    Classify { input: String },
    /// Blow up the curve and decompose the exceptional divisor
    Blowup { input: String },
    /// Decide whether a divisorial contraction onto the curve exists
    Decide { input: String },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Indeterminate { .. } => EXIT_INDETERMINATE,
        _ => EXIT_INPUT,
    }
}

/// Input errors outrank indeterminate results, which outrank success.
fn worst(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        EXIT_INPUT => 2,
        EXIT_INDETERMINATE => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

/// The argument is a file when such a file exists, otherwise an expression.
fn read_source(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if p.is_file() {
        fs::read_to_string(p).map_err(|e| Error::Input(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn germ_inputs(arg: &str, c: &Common) -> Result<Vec<GermInput>> {
    let text = read_source(arg)?;
    let mut inputs = read_inputs(&text, |line| {
        let mut g = GermInput::new(line);
        g.trunc = c.trunc;
        g
    })?;
    for g in &mut inputs {
        if let Some(s) = c.seed {
            g.seed = s;
        }
        if let Some(m) = c.samples {
            g.samples = m;
        }
    }
    Ok(inputs)
}

fn write_file(path: &Path, contents: &str, err: &mut dyn Write) -> i32 {
    match fs::write(path, contents) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "cannot write {}: {e}", path.display());
            EXIT_INPUT
        }
    }
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, docs: &[T], err: &mut dyn Write) -> i32 {
    let Some(path) = path else { return EXIT_OK };
    let text = if docs.len() == 1 {
        serde_json::to_string_pretty(&docs[0])
    } else {
        serde_json::to_string_pretty(docs)
    }
    .expect("documents serialize");
    write_file(path, &(text + "\n"), err)
}

fn report_error(err: &mut dyn Write, input: &str, e: &Error) {
    let hint = match e {
        Error::Indeterminate { .. } => " (raise --trunc)",
        _ => "",
    };
    let _ = writeln!(err, "{input}: {e}{hint}");
}

fn cmd_duval(arg: &str, c: &Common, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match read_source(arg) {
        Ok(t) => t,
        Err(e) => {
            report_error(err, arg, &e);
            return EXIT_INPUT;
        }
    };
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let p = Precision {
        start: c.trunc,
        step: Precision::default().step,
        cap: c.trunc.max(Precision::default().cap),
    };
    let mut code = EXIT_OK;
    let mut docs = Vec::new();
    for line in &lines {
        let res = parse_polynomial_in(line, &Vars::xyz(), p.cap).and_then(|g| {
            let t = classify_with(&g, &p)?;
            if t == DuValType::Indeterminate {
                return Err(Error::Indeterminate {
                    order: p.cap,
                    reason: "type depends on higher-order terms".into(),
                });
            }
            let mu = if t.is_determined() && t != DuValType::NotDuVal {
                milnor_number_with(&g, &p).ok()
            } else {
                None
            };
            Ok((t, mu))
        });
        match res {
            Ok((t, mu)) => {
                if !c.quiet {
                    if lines.len() == 1 {
                        let _ = writeln!(out, "{t}");
                    } else {
                        let _ = writeln!(out, "{line}: {t}");
                    }
                }
                docs.push(json!({"input": line, "type": t, "milnor": mu}));
            }
            Err(e) => {
                report_error(err, line, &e);
                code = worst(code, exit_code(&e));
            }
        }
    }
    worst(code, write_json(&c.json, &docs, err))
}

fn cmd_classify(g: &GermInput, out: &mut dyn Write, quiet: bool) -> Result<serde_json::Value> {
    let germ = g.germ()?;
    let cfg = g.config();
    let (ng, frame) = normalize_curve(&germ)?;
    let (case, nf) = normalize(&ng, cfg.sampling, &cfg.precision)?;
    let sampled = classify_general_section(&ng, false, cfg.sampling, &cfg.precision)?;
    let predicted = nf.as_ref().map(|nf| predict_h_type(nf).to_string());
    let s_type = match case {
        crate::normal_form::Case::E7 => DuValType::E7,
        crate::normal_form::Case::E6 => DuValType::E6,
        crate::normal_form::Case::OutOfScope(t) => t,
    };
    let audit = match &nf {
        Some(nf) => frame.then(nf.audit())?,
        None => frame,
    };
    let audit_lines: Vec<[String; 2]> = audit
        .source()
        .names()
        .zip(audit.images())
        .map(|(v, im)| [v.to_string(), im.to_string()])
        .collect();
    if !quiet {
        let _ = writeln!(out, "germ: {}", g.equation);
        let _ = writeln!(out, "case: {case}");
        let _ = writeln!(out, "S type: {s_type}");
        if let Some(nf) = &nf {
            let _ = writeln!(out, "normal form: {}", nf.series());
        }
        if let Some(p) = &predicted {
            let _ = writeln!(out, "H type (normal form): {p}");
        }
        let _ = writeln!(out, "H type (sampled): {sampled}");
    }
    Ok(json!({
        "input": g.equation,
        "case": case.to_string(),
        "S_type": s_type,
        "H_type_predicted": predicted,
        "H_type_sampled": sampled,
        "normal_form": nf.as_ref().map(|nf| nf.series().to_string()),
        "unit": nf.as_ref().map(|nf| nf.unit().to_string()),
        "audit": audit_lines,
    }))
}

fn cmd_blowup(g: &GermInput, out: &mut dyn Write, quiet: bool) -> Result<serde_json::Value> {
    let germ = g.germ()?;
    let (ng, _) = normalize_curve(&germ)?;
    let charts = blowup_curve(&ng.f, &["x", "y", "t"])?;
    let dec = exceptional_decomposition(&charts)?;
    if !quiet {
        let _ = writeln!(out, "germ: {}", g.equation);
        for ch in &charts {
            let _ = writeln!(
                out,
                "chart {}: {} (exceptional exponent {})",
                ch.chart, ch.strict, ch.exponent
            );
        }
        let _ = writeln!(out, "exceptional divisor: {dec}");
    }
    let chart_docs: Vec<_> = charts
        .iter()
        .map(|ch| json!({"chart": ch.chart, "strict": ch.strict.to_string(), "exponent": ch.exponent}))
        .collect();
    Ok(json!({
        "input": g.equation,
        "charts": chart_docs,
        "decomposition": dec.to_string(),
        "components": dec.components,
    }))
}

fn cmd_germs(
    cmd: &Command,
    arg: &str,
    c: &Common,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let inputs = match germ_inputs(arg, c) {
        Ok(i) => i,
        Err(e) => {
            report_error(err, arg, &e);
            return EXIT_INPUT;
        }
    };
    let mut code = EXIT_OK;
    let mut docs: Vec<serde_json::Value> = Vec::new();
    let mut dots = String::new();
    for g in &inputs {
        let res = match cmd {
            Command::Classify { .. } => cmd_classify(g, out, c.quiet),
            Command::Blowup { .. } => cmd_blowup(g, out, c.quiet),
            Command::Decide { .. } => g.germ().and_then(|germ| {
                let r = full_pipeline(&germ, &g.config())?;
                let doc = ReportDocument::new(&r, Some(&g.equation));
                if !c.quiet {
                    let _ = write!(out, "{}", doc.to_text());
                }
                if let Some(graph) = r.invariants.as_ref().and_then(|i| i.dual_graph.as_ref()) {
                    dots.push_str(&graph_to_dot(graph));
                }
                Ok(serde_json::to_value(doc).expect("report documents serialize"))
            }),
            Command::Duval { .. } => unreachable!("handled separately"),
        };
        match res {
            Ok(doc) => docs.push(doc),
            Err(e) => {
                report_error(err, &g.equation, &e);
                code = worst(code, exit_code(&e));
            }
        }
    }
    code = worst(code, write_json(&c.json, &docs, err));
    if let Some(path) = &c.dot {
        code = worst(code, write_file(path, &dots, err));
    }
    code
}

/// Runs the driver on `argv` (including the program name) and returns the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match &cli.command {
        Command::Duval { input } => cmd_duval(input, &cli.common, out, err),
        Command::Classify { input } | Command::Blowup { input } | Command::Decide { input } => {
            cmd_germs(&cli.command, input, &cli.common, out, err)
        }
    }
}
