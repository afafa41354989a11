use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decider::DecisionReport;
use crate::graph::DualGraph;
use crate::series::Substitution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertexDoc {
    pub id: String,
    pub self_int: i64,
    pub exceptional: bool,
    pub marked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub name: String,
    pub version: u32,
    pub vertices: Vec<GraphVertexDoc>,
    pub edges: Vec<[String; 2]>,
    pub figure_derived: Vec<String>,
}

impl From<&DualGraph> for GraphDoc {
    fn from(g: &DualGraph) -> Self {
        GraphDoc {
            name: g.name.clone(),
            version: g.version,
            vertices: g
                .vertices
                .iter()
                .map(|v| GraphVertexDoc {
                    id: v.id.clone(),
                    self_int: v.self_int,
                    exceptional: v.exceptional,
                    marked: g.marked.as_deref() == Some(v.id.as_str()),
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|(a, b)| [a.clone(), b.clone()])
                .collect(),
            figure_derived: g.figure_derived.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckDoc {
    pub name: String,
    pub agree: bool,
    pub detail: String,
}

/// One line `var = image` per variable of the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditDoc {
    pub substitution: Vec<[String; 2]>,
    pub unit: Option<String>,
    pub normal_form: Option<String>,
}

/// Serialized form of a decision. Field order is the output order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input: Option<String>,
    pub case: String,
    #[serde(rename = "H_type")]
    pub h_type: String,
    #[serde(rename = "S_type")]
    pub s_type: String,
    pub exists: Option<bool>,
    pub index: Option<u32>,
    #[serde(rename = "K_dot_C")]
    pub k_dot_c: Option<String>,
    pub central_fiber: Option<String>,
    #[serde(rename = "S_Y_iso_S")]
    pub s_y_iso_s: Option<bool>,
    pub singular_point_model: Option<String>,
    pub model_note: Option<String>,
    pub dual_graph: Option<GraphDoc>,
    pub cross_checks: Vec<CrossCheckDoc>,
    pub discrepancy: bool,
    pub flags: Vec<String>,
    pub provenance: Vec<String>,
    pub audit: Option<AuditDoc>,
}

fn audit_lines(s: &Substitution) -> Vec<[String; 2]> {
    s.source()
        .names()
        .zip(s.images())
        .map(|(v, im)| [v.to_string(), im.to_string()])
        .collect()
}

impl ReportDocument {
    pub fn new(r: &DecisionReport, input: Option<&str>) -> Self {
        let inv = r.invariants.as_ref();
        ReportDocument {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input: input.map(str::to_string),
            case: r.case.to_string(),
            h_type: r.h_type.to_string(),
            s_type: r.s_type.to_string(),
            exists: r.exists,
            index: inv.map(|i| i.index),
            k_dot_c: inv.and_then(|i| i.k_dot_c.as_ref()).map(|k| k.to_string()),
            central_fiber: inv.and_then(|i| i.central_fiber.clone()),
            s_y_iso_s: inv.map(|i| i.s_y_iso_s),
            singular_point_model: inv.map(|i| i.singular_point_model.clone()),
            model_note: inv.and_then(|i| i.model_note.clone()),
            dual_graph: inv.and_then(|i| i.dual_graph.as_ref()).map(GraphDoc::from),
            cross_checks: r
                .cross_checks
                .iter()
                .map(|c| CrossCheckDoc {
                    name: c.name.clone(),
                    agree: c.agree,
                    detail: c.detail.clone(),
                })
                .collect(),
            discrepancy: r.has_discrepancy(),
            flags: r.flags.clone(),
            provenance: r.provenance.clone(),
            audit: r.audit.as_ref().map(|s| AuditDoc {
                substitution: audit_lines(s),
                unit: r.unit.as_ref().map(|u| u.to_string()),
                normal_form: r.normal_form.as_ref().map(|f| f.to_string()),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents always serialize")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Input(format!("report document: {e}")))
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
        if let Some(i) = &self.input {
            let _ = writeln!(s, "germ: {i}");
        }
        let _ = writeln!(s, "case: {}", self.case);
        let _ = writeln!(s, "S type: {}", self.s_type);
        let _ = writeln!(s, "H type: {}", self.h_type);
        let exists = match self.exists {
            Some(true) => "yes",
            Some(false) => "no",
            None => "not applicable",
        };
        let _ = writeln!(s, "contraction exists: {exists}");
        if let Some(i) = self.index {
            let _ = writeln!(s, "index: {i}");
            let _ = writeln!(s, "K.C: {}", opt(&self.k_dot_c));
            let _ = writeln!(s, "central fiber: {}", opt(&self.central_fiber));
            let _ = writeln!(s, "singular point: {}", opt(&self.singular_point_model));
        }
        if let Some(g) = &self.dual_graph {
            let _ = writeln!(s, "dual graph: {} ({} vertices)", g.name, g.vertices.len());
        }
        for c in &self.cross_checks {
            let mark = if c.agree { "ok" } else { "DISAGREE" };
            let _ = writeln!(s, "check {}: {mark} ({})", c.name, c.detail);
        }
        for f in &self.flags {
            let _ = writeln!(s, "note: {f}");
        }
        s
    }
}

/// Graphviz rendering: one node per curve labelled `id (s=self_int)`, the
/// marked curve double-circled.
pub fn graph_to_dot(g: &DualGraph) -> String {
    let mut s = String::new();
    let name = if g.name.is_empty() {
        "G"
    } else {
        g.name.as_str()
    };
    let _ = writeln!(s, "graph \"{name}\" {{");
    for v in &g.vertices {
        let shape = if g.marked.as_deref() == Some(v.id.as_str()) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            s,
            "  \"{}\" [label=\"{} (s={})\", shape={shape}];",
            v.id, v.id, v.self_int
        );
    }
    for (a, b) in &g.edges {
        let _ = writeln!(s, "  \"{a}\" -- \"{b}\";");
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
    Dot,
}

/// Serializes a report. `Dot` yields an empty output when the report has no graph.
pub fn emit_report(r: &DecisionReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => ReportDocument::new(r, None).to_json().into_bytes(),
        ReportFormat::Text => ReportDocument::new(r, None).to_text().into_bytes(),
        ReportFormat::Dot => r
            .invariants
            .as_ref()
            .and_then(|i| i.dual_graph.as_ref())
            .map(graph_to_dot)
            .unwrap_or_default()
            .into_bytes(),
    }
}
