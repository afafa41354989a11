//! Dual graphs of curve configurations on a surface and the numerics of
//! contracting their exceptional part.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::series::{rat, rational_serde, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub self_int: i64,
    pub exceptional: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Curves (all rational) with their intersection data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub version: u32,
    pub vertices: Vec<Vertex>,
    /// Unordered pairs; a repeated pair counts as a double intersection.
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub marked: Option<String>,
    /// Fields read off a figure rather than stated in prose.
    #[serde(default)]
    pub figure_derived: Vec<String>,
}

/// Intersection matrix in vertex-list order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub ids: Vec<String>,
    pub matrix: Matrix,
}

impl IntersectionMatrix {
    pub fn index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|v| v == id)
    }

    fn entry(&self, i: usize, j: usize) -> Rational {
        self.matrix.get(i, j).clone()
    }

    fn sub(&self, subset: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(subset.len(), subset.len());
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                m.set(a, b, self.entry(i, j));
            }
        }
        m
    }
}

/// Dynkin diagram families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E(usize),
}

impl DualGraph {
    /// A Dynkin configuration of `-2` curves named `E1..En`.
    pub fn dynkin(kind: Dynkin) -> Result<Self> {
        let (n, edges): (usize, Vec<(usize, usize)>) = match kind {
            Dynkin::A(n) if n >= 1 => (n, (1..n).map(|i| (i, i + 1)).collect()),
            Dynkin::D(n) if n >= 4 => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                (n, e)
            }
            Dynkin::E(n) if (6..=8).contains(&n) => {
                // chain 1..n-1 with the branch vertex n on node 3
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((3, n));
                (n, e)
            }
            other => return Err(Error::Graph(format!("no Dynkin diagram {other:?}"))),
        };
        let name = |i: usize| format!("E{i}");
        Ok(DualGraph {
            name: format!("{kind:?}"),
            version: 1,
            vertices: (1..=n)
                .map(|i| Vertex {
                    id: name(i),
                    self_int: -2,
                    exceptional: true,
                    label: None,
                })
                .collect(),
            edges: edges.into_iter().map(|(a, b)| (name(a), name(b))).collect(),
            marked: None,
            figure_derived: Vec::new(),
        })
    }

    /// Adds a non-exceptional curve `C` meeting `at` transversally once.
    pub fn with_marked_curve(mut self, at: &str, self_int: i64) -> Result<Self> {
        if !self.vertices.iter().any(|v| v.id == at) {
            return Err(Error::Graph(format!("unknown vertex {at}")));
        }
        self.vertices.push(Vertex {
            id: "C".into(),
            self_int,
            exceptional: false,
            label: None,
        });
        self.edges.push(("C".into(), at.into()));
        self.marked = Some("C".into());
        self.validate()?;
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: DualGraph = serde_json::from_str(text).map_err(|e| Error::Graph(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let ids: BTreeSet<&str> = self.vertices.iter().map(|v| v.id.as_str()).collect();
        if ids.len() != self.vertices.len() {
            return Err(Error::Graph("duplicate vertex id".into()));
        }
        for (a, b) in &self.edges {
            if !ids.contains(a.as_str()) || !ids.contains(b.as_str()) || a == b {
                return Err(Error::Graph(format!("bad edge {a}-{b}")));
            }
        }
        for v in &self.vertices {
            if v.exceptional && v.self_int > -1 {
                return Err(Error::Graph(format!(
                    "exceptional curve {} has self-intersection {}",
                    v.id, v.self_int
                )));
            }
        }
        let unmarked = self.vertices.iter().filter(|v| !v.exceptional).count();
        if let Some(m) = &self.marked {
            match self.vertices.iter().find(|v| &v.id == m) {
                Some(v) if !v.exceptional && unmarked == 1 => {}
                _ => {
                    return Err(Error::Graph(format!(
                        "marked vertex {m} must be the only non-exceptional one"
                    )))
                }
            }
        }
        if !self.is_connected() {
            return Err(Error::Graph("graph is not connected".into()));
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let Some(first) = self.vertices.first() else {
            return true;
        };
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::from([first.id.as_str()]);
        let mut stack = vec![first.id.as_str()];
        while let Some(v) = stack.pop() {
            for &w in adj.get(v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn exceptional_indices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.vertices[i].exceptional)
            .collect()
    }

    fn marked_index(&self) -> Result<usize> {
        let m = self
            .marked
            .as_ref()
            .ok_or_else(|| Error::Graph("no marked vertex".into()))?;
        Ok(self
            .vertices
            .iter()
            .position(|v| &v.id == m)
            .expect("validated"))
    }
}

/// The three graphs attached to the existence cases of the E7 theorem,
/// keyed by the general hyperplane section type (`E6`, `D5`, `D4`).
pub fn theorem_graph(h_type: &str) -> Result<DualGraph> {
    let text = match h_type {
        "E6" => include_str!("../data/graphs/e6_case.json"),
        "D5" => include_str!("../data/graphs/d5_case.json"),
        "D4" => include_str!("../data/graphs/d4_case.json"),
        other => return Err(Error::Graph(format!("no theorem graph for {other}"))),
    };
    DualGraph::from_json(text)
}

pub fn intersection_matrix(g: &DualGraph) -> IntersectionMatrix {
    let ids: Vec<String> = g.vertices.iter().map(|v| v.id.clone()).collect();
    let n = ids.len();
    let mut m = Matrix::zeros(n, n);
    for (i, v) in g.vertices.iter().enumerate() {
        m.set(i, i, rat(v.self_int));
    }
    let pos = |id: &str| ids.iter().position(|v| v == id).expect("validated edge");
    for (a, b) in &g.edges {
        let (i, j) = (pos(a), pos(b));
        let e = m.get(i, j) + Rational::one();
        m.set(i, j, e.clone());
        m.set(j, i, e);
    }
    IntersectionMatrix { ids, matrix: m }
}

/// Sylvester's criterion on the principal submatrix over `subset`.
pub fn is_negative_definite(m: &IntersectionMatrix, subset: &[usize]) -> bool {
    let s = m.sub(subset);
    (1..=subset.len()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        let mut minor = Matrix::zeros(k, k);
        for &i in &idx {
            for &j in &idx {
                minor.set(i, j, -s.get(i, j).clone());
            }
        }
        minor.det().is_positive()
    })
}

/// Coefficients `a_i` with `K_up = pi^* K + sum a_i E_i` over `subset`:
/// the solution of `sum_i a_i E_i . E_j = K . E_j = -E_j^2 - 2`.
pub fn discrepancies(g: &DualGraph, subset: &[usize]) -> Result<Vec<Rational>> {
    let m = intersection_matrix(g);
    if subset.is_empty() || !is_negative_definite(&m, subset) {
        return Err(Error::Graph("subset is not negative definite".into()));
    }
    let rhs: Vec<Rational> = subset
        .iter()
        .map(|&j| rat(-g.vertices[j].self_int - 2))
        .collect();
    m.sub(subset)
        .solve(&rhs)
        .ok_or_else(|| Error::Graph("singular intersection matrix".into()))
}

/// Numerics of the marked curve after contracting the exceptional vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractNumerics {
    #[serde(serialize_with = "rational_serde::serialize")]
    pub c_squared: Rational,
    #[serde(serialize_with = "rational_serde::serialize")]
    pub k_dot_c: Rational,
    /// `b_i` with `(C + sum b_i E_i) . E_j = 0`.
    #[serde(serialize_with = "rational_serde::vec")]
    pub pullback: Vec<Rational>,
    #[serde(serialize_with = "rational_serde::vec")]
    pub discrepancies: Vec<Rational>,
}

pub fn contract_numerics(g: &DualGraph) -> Result<ContractNumerics> {
    let m = intersection_matrix(g);
    let c = g.marked_index()?;
    let ex = g.exceptional_indices();
    if !is_negative_definite(&m, &ex) {
        return Err(Error::Graph(
            "exceptional subset is not negative definite".into(),
        ));
    }
    let rhs: Vec<Rational> = ex.iter().map(|&j| -m.entry(c, j)).collect();
    let b = m
        .sub(&ex)
        .solve(&rhs)
        .ok_or_else(|| Error::Graph("singular intersection matrix".into()))?;
    let mut c_squared = m.entry(c, c);
    for (bi, &i) in b.iter().zip(&ex) {
        c_squared += bi * m.entry(i, c);
    }
    let a = discrepancies(g, &ex)?;
    let mut k_dot_c = rat(-g.vertices[c].self_int - 2);
    for (ai, &i) in a.iter().zip(&ex) {
        k_dot_c -= ai * m.entry(i, c);
    }
    Ok(ContractNumerics {
        c_squared,
        k_dot_c,
        pullback: b,
        discrepancies: a,
    })
}

/// `-(K.C)^2 / C^2` for the contracted marked curve.
pub fn multiplicity(g: &DualGraph) -> Result<Rational> {
    let n = contract_numerics(g)?;
    if n.c_squared.is_zero() {
        return Err(Error::Graph("C^2 = 0".into()));
    }
    Ok(-(&n.k_dot_c * &n.k_dot_c) / &n.c_squared)
}
