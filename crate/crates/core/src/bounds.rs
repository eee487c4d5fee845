//! Closed-form bounds on the strong domination number of composed graphs,
//! the Ψ degree sums they depend on, and report assembly against exact
//! solver values.
//!
//! Lower bounds are kept raw (possibly ≤ 0) next to a clamped `max(1, raw)`;
//! the holds/tight flags are computed from the raw value so a vacuous or
//! violated formula is never hidden by clamping.

use crate::compose::{self, ComposeError, GluingSpec};
use crate::graph::{graph_text, graphs_text, Graph};
use crate::solver::{self, SolveError, SolverConfig};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifiers for every supported bound statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    DisjointUnion,
    VertexSum,
    VertexGluing,
    EdgeGluingUpper,
    EdgeGluingLower,
    EdgeGluingLowerStrong,
    CliqueGluingUpper,
    CliqueGluingLowerConjecture,
    Chain,
    Link,
    Circuit,
    EdgeDeletion,
    Bridge,
}

impl Theorem {
    pub const ALL: [Theorem; 13] = [
        Theorem::DisjointUnion,
        Theorem::VertexSum,
        Theorem::VertexGluing,
        Theorem::EdgeGluingUpper,
        Theorem::EdgeGluingLower,
        Theorem::EdgeGluingLowerStrong,
        Theorem::CliqueGluingUpper,
        Theorem::CliqueGluingLowerConjecture,
        Theorem::Chain,
        Theorem::Link,
        Theorem::Circuit,
        Theorem::EdgeDeletion,
        Theorem::Bridge,
    ];

    /// The proven bounds checked with zero violation tolerance; the clique
    /// lower bound is an open conjecture and the vertex-sum bound is covered
    /// through its k = 2 specialization `VertexGluing`.
    pub const PROVEN: [Theorem; 11] = [
        Theorem::DisjointUnion,
        Theorem::VertexGluing,
        Theorem::EdgeGluingUpper,
        Theorem::EdgeGluingLower,
        Theorem::EdgeGluingLowerStrong,
        Theorem::CliqueGluingUpper,
        Theorem::Chain,
        Theorem::Link,
        Theorem::Circuit,
        Theorem::EdgeDeletion,
        Theorem::Bridge,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::DisjointUnion => "disjoint-union",
            Theorem::VertexSum => "vertex-sum",
            Theorem::VertexGluing => "vertex-gluing",
            Theorem::EdgeGluingUpper => "edge-gluing-upper",
            Theorem::EdgeGluingLower => "edge-gluing-lower",
            Theorem::EdgeGluingLowerStrong => "edge-gluing-lower-strong",
            Theorem::CliqueGluingUpper => "clique-gluing-upper",
            Theorem::CliqueGluingLowerConjecture => "clique-gluing-lower-conjecture",
            Theorem::Chain => "chain",
            Theorem::Link => "link",
            Theorem::Circuit => "circuit",
            Theorem::EdgeDeletion => "edge-deletion",
            Theorem::Bridge => "bridge",
        }
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(t) = Theorem::ALL.into_iter().find(|t| t.id() == s) {
            return Ok(t);
        }
        // short aliases naming the gluing arity instead of the operation
        match s.to_ascii_lowercase().as_str() {
            "disconnected" => Ok(Theorem::DisjointUnion),
            "1-gluing" => Ok(Theorem::VertexGluing),
            "2-gluing-upper" => Ok(Theorem::EdgeGluingUpper),
            "2-gluing-lower" => Ok(Theorem::EdgeGluingLower),
            "2-gluing-lower2" => Ok(Theorem::EdgeGluingLowerStrong),
            "2-gluing-upper-kr" => Ok(Theorem::CliqueGluingUpper),
            "2-gluing-lower-kr" => Ok(Theorem::CliqueGluingLowerConjecture),
            _ => Err(format!("unknown theorem id {s:?}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("instance kind does not match theorem {0}")]
    InstanceMismatch(Theorem),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("solver timed out; exact value unavailable")]
    Timeout,
}

/// The four glued-edge endpoint degrees and the Ψ sums built from them.
/// `psi_r[i]` is the per-component degree sum over the glued clique; for an
/// edge gluing `psi_12 = psi_r[0] + psi_r[1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PsiTerms {
    pub deg_u: [usize; 2],
    pub deg_v: [usize; 2],
    pub psi_12: usize,
    pub psi_r: [usize; 2],
}

/// Degree sums of a glued edge `e_i = u_i v_i` per component.
pub fn psi_edge(g1: &Graph, e1: (usize, usize), g2: &Graph, e2: (usize, usize)) -> PsiTerms {
    let deg_u = [g1.degree(e1.0), g2.degree(e2.0)];
    let deg_v = [g1.degree(e1.1), g2.degree(e2.1)];
    let psi_r = [deg_u[0] + deg_v[0], deg_u[1] + deg_v[1]];
    PsiTerms {
        deg_u,
        deg_v,
        psi_12: psi_r[0] + psi_r[1],
        psi_r,
    }
}

/// Sum of component degrees over a glued clique's vertices.
pub fn psi_clique(g: &Graph, clique: &[usize]) -> usize {
    clique.iter().map(|&v| g.degree(v)).sum()
}

// ---- pure bound formulas -------------------------------------------------

pub fn disjoint_union_bounds(gst1: usize, gst2: usize) -> (i64, i64) {
    let sum = (gst1 + gst2) as i64;
    (sum, sum)
}

/// Both bounds for identifying one vertex from each of k ≥ 2 components.
pub fn vertex_sum_bounds(gst: &[usize], deg_u: &[usize]) -> Result<(i64, i64), EvalError> {
    if gst.len() != deg_u.len() {
        return Err(EvalError::Hypothesis(format!(
            "value list length {} != degree list length {}",
            gst.len(),
            deg_u.len()
        )));
    }
    let lower = 1 + gst
        .iter()
        .zip(deg_u)
        .map(|(&g, &d)| g as i64 - d as i64)
        .sum::<i64>();
    let upper = gst.iter().sum::<usize>() as i64 + 1;
    Ok((lower, upper))
}

pub fn edge_glue_upper(gst1: usize, gst2: usize) -> i64 {
    (gst1 + gst2 + 1) as i64
}

pub fn edge_glue_lower(gst1: usize, gst2: usize, psi_12: usize) -> i64 {
    (gst1 + gst2 + 5) as i64 - psi_12 as i64
}

/// Strengthened variant, valid when Ψ ≥ 7.
pub fn edge_glue_lower_strong(gst1: usize, gst2: usize, psi_12: usize) -> i64 {
    (gst1 + gst2 + 6) as i64 - psi_12 as i64
}

pub fn kr_glue_upper(gst1: usize, gst2: usize) -> i64 {
    (gst1 + gst2 + 1) as i64
}

/// Conjectured lower bound for r-clique gluings; reduces to
/// [`edge_glue_lower`] at r = 2 since 2r² − 2r + 1 = 5.
pub fn kr_glue_conjectured_lower(gst1: usize, gst2: usize, r: usize, psi_r: [usize; 2]) -> i64 {
    let r = r as i64;
    (gst1 + gst2) as i64 + 2 * r * r - 2 * r + 1 - psi_r[0] as i64 - psi_r[1] as i64
}

/// Chain bounds; attachment degrees are component-local (`x_2..x_n` in
/// `deg_x`, `y_1..y_{n−1}` in `deg_y`).
pub fn chain_bounds(gst: &[usize], deg_x: &[usize], deg_y: &[usize]) -> Result<(i64, i64), EvalError> {
    let n = gst.len();
    if deg_x.len() != n.saturating_sub(1) || deg_y.len() != n.saturating_sub(1) {
        return Err(EvalError::Hypothesis(format!(
            "expected {} junction degrees, got {} and {}",
            n.saturating_sub(1),
            deg_x.len(),
            deg_y.len()
        )));
    }
    let sum = gst.iter().sum::<usize>() as i64;
    let dx: i64 = deg_x.iter().map(|&d| d as i64).sum();
    let dy: i64 = deg_y.iter().map(|&d| d as i64).sum();
    Ok((sum - dx - dy + n as i64 - 1, sum + n as i64 - 1))
}

/// Link bounds; attachment degrees are measured in the composed graph,
/// where every junction endpoint has gained exactly one bridge edge.
pub fn link_bounds(gst: &[usize], deg_x: &[usize], deg_y: &[usize]) -> Result<(i64, i64), EvalError> {
    let n = gst.len();
    if deg_x.len() != n.saturating_sub(1) || deg_y.len() != n.saturating_sub(1) {
        return Err(EvalError::Hypothesis(format!(
            "expected {} junction degrees, got {} and {}",
            n.saturating_sub(1),
            deg_x.len(),
            deg_y.len()
        )));
    }
    let sum = gst.iter().sum::<usize>() as i64;
    let dx: i64 = deg_x.iter().map(|&d| d as i64).sum();
    let dy: i64 = deg_y.iter().map(|&d| d as i64).sum();
    Ok((sum - dx - dy + 2 * (n as i64 - 1), sum + n as i64 - 1))
}

/// Circuit bounds; attachment degrees are component-local.
pub fn circuit_bounds(gst: &[usize], deg_x: &[usize]) -> Result<(i64, i64), EvalError> {
    let n = gst.len();
    if n < 3 {
        return Err(EvalError::Hypothesis(format!(
            "circuit needs at least 3 components, got {n}"
        )));
    }
    if deg_x.len() != n {
        return Err(EvalError::Hypothesis(format!(
            "expected {n} attachment degrees, got {}",
            deg_x.len()
        )));
    }
    let sum = gst.iter().sum::<usize>() as i64;
    let dx: i64 = deg_x.iter().map(|&d| d as i64).sum();
    Ok((sum - dx + n as i64, sum + (n / 2) as i64))
}

/// Bounds on γ_st(G − uv) in terms of γ_st(G) and the endpoint degrees in G.
pub fn edge_deletion_bounds(gst: usize, deg_u: usize, deg_v: usize) -> (i64, i64) {
    (gst as i64 - 1, (gst + deg_u + deg_v) as i64 - 2)
}

/// Lower bound for a graph with a bridge `uv`; sides solved separately,
/// degrees measured in the whole graph.
pub fn bridge_lower(gst1: usize, gst2: usize, deg_u: usize, deg_v: usize) -> i64 {
    (gst1 + gst2 + 2) as i64 - deg_u as i64 - deg_v as i64
}

// ---- instances and evaluation --------------------------------------------

/// A concrete test case for one bound statement: the component graphs plus
/// the attachment data. Serializes with components embedded as edge-list
/// text, so any report row reproduces standalone.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TheoremInstance {
    DisjointUnion {
        #[serde(with = "graphs_text")]
        components: Vec<Graph>,
    },
    VertexSum {
        #[serde(with = "graphs_text")]
        components: Vec<Graph>,
        attachments: Vec<usize>,
    },
    VertexGluing {
        #[serde(with = "graphs_text")]
        components: Vec<Graph>,
        attachments: Vec<usize>,
    },
    EdgeGluing {
        #[serde(with = "graphs_text")]
        components: Vec<Graph>,
        edges: Vec<(usize, usize)>,
    },
    CliqueGluing {
        #[serde(with = "graphs_text")]
        components: Vec<Graph>,
        r: usize,
        clique1: Vec<usize>,
        clique2: Vec<usize>,
    },
    Chain {
        #[serde(with = "graphs_text")]
        components: Vec<Graph>,
        attachments: Vec<(usize, usize)>,
    },
    Link {
        #[serde(with = "graphs_text")]
        components: Vec<Graph>,
        attachments: Vec<(usize, usize)>,
    },
    Circuit {
        #[serde(with = "graphs_text")]
        components: Vec<Graph>,
        attachments: Vec<usize>,
    },
    EdgeDeletion {
        #[serde(with = "graph_text")]
        graph: Graph,
        edge: (usize, usize),
    },
    Bridge {
        #[serde(with = "graph_text")]
        graph: Graph,
        edge: (usize, usize),
    },
}

impl TheoremInstance {
    /// The graphs the instance starts from, in statement order.
    pub fn components(&self) -> Vec<&Graph> {
        match self {
            TheoremInstance::DisjointUnion { components }
            | TheoremInstance::VertexSum { components, .. }
            | TheoremInstance::VertexGluing { components, .. }
            | TheoremInstance::EdgeGluing { components, .. }
            | TheoremInstance::CliqueGluing { components, .. }
            | TheoremInstance::Chain { components, .. }
            | TheoremInstance::Link { components, .. }
            | TheoremInstance::Circuit { components, .. } => components.iter().collect(),
            TheoremInstance::EdgeDeletion { graph, .. }
            | TheoremInstance::Bridge { graph, .. } => vec![graph],
        }
    }

    /// The graph whose strong domination number the bound constrains.
    pub fn composed(&self) -> Result<Graph, ComposeError> {
        Ok(match self {
            TheoremInstance::DisjointUnion { components } => {
                let first = components
                    .first()
                    .ok_or(ComposeError::TooFewComponents { need: 1, got: 0 })?
                    .clone();
                components
                    .iter()
                    .skip(1)
                    .fold(first, |acc, g| compose::disjoint_union(&acc, g).graph)
            }
            TheoremInstance::VertexSum { components, attachments }
            | TheoremInstance::VertexGluing { components, attachments } => {
                compose::vertex_sum(components, attachments)?.graph
            }
            TheoremInstance::EdgeGluing { components, edges } => {
                let spec = GluingSpec {
                    r: 2,
                    q1: vec![edges[0].0, edges[0].1],
                    q2: vec![edges[1].0, edges[1].1],
                };
                compose::r_glue(&components[0], &components[1], &spec)?.graph
            }
            TheoremInstance::CliqueGluing { components, r, clique1, clique2 } => {
                let spec = GluingSpec {
                    r: *r,
                    q1: clique1.clone(),
                    q2: clique2.clone(),
                };
                compose::r_glue(&components[0], &components[1], &spec)?.graph
            }
            TheoremInstance::Chain { components, attachments } => {
                compose::chain(components, attachments)?.graph
            }
            TheoremInstance::Link { components, attachments } => {
                compose::link(components, attachments)?.graph
            }
            TheoremInstance::Circuit { components, attachments } => {
                compose::circuit(components, attachments)?.graph
            }
            TheoremInstance::EdgeDeletion { graph, edge } => graph.without_edge(edge.0, edge.1),
            TheoremInstance::Bridge { graph, .. } => graph.clone(),
        })
    }

    /// The theorems this instance kind can be evaluated against.
    pub fn theorems(&self) -> &'static [Theorem] {
        match self {
            TheoremInstance::DisjointUnion { .. } => &[Theorem::DisjointUnion],
            TheoremInstance::VertexSum { .. } => &[Theorem::VertexSum],
            TheoremInstance::VertexGluing { .. } => &[Theorem::VertexGluing],
            TheoremInstance::EdgeGluing { .. } => &[
                Theorem::EdgeGluingUpper,
                Theorem::EdgeGluingLower,
                Theorem::EdgeGluingLowerStrong,
            ],
            TheoremInstance::CliqueGluing { .. } => &[
                Theorem::CliqueGluingUpper,
                Theorem::CliqueGluingLowerConjecture,
            ],
            TheoremInstance::Chain { .. } => &[Theorem::Chain],
            TheoremInstance::Link { .. } => &[Theorem::Link],
            TheoremInstance::Circuit { .. } => &[Theorem::Circuit],
            TheoremInstance::EdgeDeletion { .. } => &[Theorem::EdgeDeletion],
            TheoremInstance::Bridge { .. } => &[Theorem::Bridge],
        }
    }
}

/// Inputs the formula actually consumed, kept for the report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportInputs {
    pub component_gst: Vec<usize>,
    /// The degree terms entering the formula, in statement order.
    pub degrees: Vec<usize>,
    pub composed_n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi_12: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi_r: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

/// One bound statement evaluated on one instance. A side a theorem does not
/// claim is `None` and its holds flag is vacuously true.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub lower_raw: Option<i64>,
    /// `max(1, lower_raw)` — the usable form of a possibly vacuous bound.
    pub lower: Option<usize>,
    pub upper: Option<i64>,
    pub exact: usize,
    pub holds_lower: bool,
    pub holds_upper: bool,
    pub tight_lower: bool,
    pub tight_upper: bool,
    pub inputs: ReportInputs,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.holds_lower && self.holds_upper
    }

    fn new(theorem: Theorem, lower_raw: Option<i64>, upper: Option<i64>, exact: usize, inputs: ReportInputs) -> BoundReport {
        BoundReport {
            theorem,
            lower_raw,
            lower: lower_raw.map(|l| l.max(1) as usize),
            upper,
            exact,
            holds_lower: lower_raw.is_none_or(|l| l <= exact as i64),
            holds_upper: upper.is_none_or(|u| exact as i64 <= u),
            tight_lower: lower_raw == Some(exact as i64),
            tight_upper: upper == Some(exact as i64),
            inputs,
        }
    }
}

fn solve_exact(g: &Graph, cfg: &SolverConfig) -> Result<usize, EvalError> {
    let r = solver::gamma_st_with(g, cfg)?;
    if !r.optimal {
        return Err(EvalError::Timeout);
    }
    Ok(r.value)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), EvalError> {
    if cond {
        Ok(())
    } else {
        Err(EvalError::Hypothesis(msg()))
    }
}

fn require_connected(graphs: &[Graph]) -> Result<(), EvalError> {
    for (i, g) in graphs.iter().enumerate() {
        require(g.n() >= 1, || format!("component {i} is empty"))?;
        require(g.is_connected(), || format!("component {i} must be connected"))?;
    }
    Ok(())
}

/// Evaluate one bound statement on one instance: compose, solve exactly,
/// apply the formula, and assemble the report.
pub fn evaluate(theorem: Theorem, inst: &TheoremInstance, cfg: &SolverConfig) -> Result<BoundReport, EvalError> {
    if !inst.theorems().contains(&theorem) {
        return Err(EvalError::InstanceMismatch(theorem));
    }
    match (theorem, inst) {
        (Theorem::DisjointUnion, TheoremInstance::DisjointUnion { components }) => {
            require(components.len() == 2, || {
                format!("disjoint union takes 2 components, got {}", components.len())
            })?;
            let gst: Vec<usize> = components
                .iter()
                .map(|g| solve_exact(g, cfg))
                .collect::<Result<_, _>>()?;
            let composed = compose::disjoint_union(&components[0], &components[1]);
            let exact = solve_exact(&composed.graph, cfg)?;
            let (lo, up) = disjoint_union_bounds(gst[0], gst[1]);
            let inputs = ReportInputs {
                component_gst: gst,
                degrees: vec![],
                composed_n: composed.graph.n(),
                psi_12: None,
                psi_r: None,
                r: None,
            };
            Ok(BoundReport::new(theorem, Some(lo), Some(up), exact, inputs))
        }
        (Theorem::VertexSum, TheoremInstance::VertexSum { components, attachments })
        | (Theorem::VertexGluing, TheoremInstance::VertexGluing { components, attachments }) => {
            require_connected(components)?;
            if theorem == Theorem::VertexGluing {
                require(components.len() == 2, || {
                    format!("vertex gluing takes 2 components, got {}", components.len())
                })?;
            }
            let composed = compose::vertex_sum(components, attachments)?;
            let gst: Vec<usize> = components
                .iter()
                .map(|g| solve_exact(g, cfg))
                .collect::<Result<_, _>>()?;
            let degs: Vec<usize> = components
                .iter()
                .zip(attachments)
                .map(|(g, &u)| g.degree(u))
                .collect();
            let exact = solve_exact(&composed.graph, cfg)?;
            let (lo, up) = vertex_sum_bounds(&gst, &degs)?;
            let inputs = ReportInputs {
                component_gst: gst,
                degrees: degs,
                composed_n: composed.graph.n(),
                psi_12: None,
                psi_r: None,
                r: None,
            };
            Ok(BoundReport::new(theorem, Some(lo), Some(up), exact, inputs))
        }
        (
            Theorem::EdgeGluingUpper | Theorem::EdgeGluingLower | Theorem::EdgeGluingLowerStrong,
            TheoremInstance::EdgeGluing { components, edges },
        ) => {
            require(components.len() == 2 && edges.len() == 2, || {
                "edge gluing takes 2 components and 2 edges".to_string()
            })?;
            require_connected(components)?;
            for (i, g) in components.iter().enumerate() {
                require(g.n() >= 3, || format!("component {i} must have order ≥ 3"))?;
            }
            let spec = GluingSpec {
                r: 2,
                q1: vec![edges[0].0, edges[0].1],
                q2: vec![edges[1].0, edges[1].1],
            };
            let composed = compose::r_glue(&components[0], &components[1], &spec)?;
            let psi = psi_edge(&components[0], edges[0], &components[1], edges[1]);
            assert!(psi.psi_12 >= 6, "connected order ≥ 3 forces Ψ ≥ 6");
            let gst1 = solve_exact(&components[0], cfg)?;
            let gst2 = solve_exact(&components[1], cfg)?;
            let exact = solve_exact(&composed.graph, cfg)?;
            let (lower, upper) = match theorem {
                Theorem::EdgeGluingUpper => (None, Some(edge_glue_upper(gst1, gst2))),
                Theorem::EdgeGluingLower => (Some(edge_glue_lower(gst1, gst2, psi.psi_12)), None),
                _ => {
                    require(psi.psi_12 >= 7, || {
                        format!("strengthened bound needs Ψ ≥ 7, got {}", psi.psi_12)
                    })?;
                    (Some(edge_glue_lower_strong(gst1, gst2, psi.psi_12)), None)
                }
            };
            let inputs = ReportInputs {
                component_gst: vec![gst1, gst2],
                degrees: vec![psi.deg_u[0], psi.deg_v[0], psi.deg_u[1], psi.deg_v[1]],
                composed_n: composed.graph.n(),
                psi_12: Some(psi.psi_12),
                psi_r: Some(psi.psi_r),
                r: Some(2),
            };
            Ok(BoundReport::new(theorem, lower, upper, exact, inputs))
        }
        (
            Theorem::CliqueGluingUpper | Theorem::CliqueGluingLowerConjecture,
            TheoremInstance::CliqueGluing { components, r, clique1, clique2 },
        ) => {
            require(components.len() == 2, || {
                format!("clique gluing takes 2 components, got {}", components.len())
            })?;
            require(*r >= 2, || format!("clique gluing needs r ≥ 2, got {r}"))?;
            require_connected(components)?;
            for (i, g) in components.iter().enumerate() {
                require(g.n() >= r + 1, || {
                    format!("component {i} must have order ≥ r+1 = {}", r + 1)
                })?;
            }
            let spec = GluingSpec {
                r: *r,
                q1: clique1.clone(),
                q2: clique2.clone(),
            };
            let composed = compose::r_glue(&components[0], &components[1], &spec)?;
            let psi_r = [
                psi_clique(&components[0], clique1),
                psi_clique(&components[1], clique2),
            ];
            let gst1 = solve_exact(&components[0], cfg)?;
            let gst2 = solve_exact(&components[1], cfg)?;
            let exact = solve_exact(&composed.graph, cfg)?;
            let (lower, upper) = if theorem == Theorem::CliqueGluingUpper {
                (None, Some(kr_glue_upper(gst1, gst2)))
            } else {
                (Some(kr_glue_conjectured_lower(gst1, gst2, *r, psi_r)), None)
            };
            let inputs = ReportInputs {
                component_gst: vec![gst1, gst2],
                degrees: clique1.iter().map(|&v| components[0].degree(v))
                    .chain(clique2.iter().map(|&v| components[1].degree(v)))
                    .collect(),
                composed_n: composed.graph.n(),
                psi_12: None,
                psi_r: Some(psi_r),
                r: Some(*r),
            };
            Ok(BoundReport::new(theorem, lower, upper, exact, inputs))
        }
        (Theorem::Chain, TheoremInstance::Chain { components, attachments }) => {
            require_connected(components)?;
            let composed = compose::chain(components, attachments)?;
            let n = components.len();
            let gst: Vec<usize> = components
                .iter()
                .map(|g| solve_exact(g, cfg))
                .collect::<Result<_, _>>()?;
            let deg_x: Vec<usize> = (1..n).map(|i| components[i].degree(attachments[i].0)).collect();
            let deg_y: Vec<usize> = (0..n.saturating_sub(1))
                .map(|i| components[i].degree(attachments[i].1))
                .collect();
            let exact = solve_exact(&composed.graph, cfg)?;
            let (lo, up) = chain_bounds(&gst, &deg_x, &deg_y)?;
            let inputs = ReportInputs {
                component_gst: gst,
                degrees: deg_x.iter().chain(deg_y.iter()).copied().collect(),
                composed_n: composed.graph.n(),
                psi_12: None,
                psi_r: None,
                r: None,
            };
            Ok(BoundReport::new(theorem, Some(lo), Some(up), exact, inputs))
        }
        (Theorem::Link, TheoremInstance::Link { components, attachments }) => {
            require_connected(components)?;
            let composed = compose::link(components, attachments)?;
            let n = components.len();
            let gst: Vec<usize> = components
                .iter()
                .map(|g| solve_exact(g, cfg))
                .collect::<Result<_, _>>()?;
            // attachment degrees in the composed graph (bridge edges included)
            let deg_x: Vec<usize> = (1..n)
                .map(|i| composed.graph.degree(composed.map(i, attachments[i].0)))
                .collect();
            let deg_y: Vec<usize> = (0..n.saturating_sub(1))
                .map(|i| composed.graph.degree(composed.map(i, attachments[i].1)))
                .collect();
            let exact = solve_exact(&composed.graph, cfg)?;
            let (lo, up) = link_bounds(&gst, &deg_x, &deg_y)?;
            let inputs = ReportInputs {
                component_gst: gst,
                degrees: deg_x.iter().chain(deg_y.iter()).copied().collect(),
                composed_n: composed.graph.n(),
                psi_12: None,
                psi_r: None,
                r: None,
            };
            Ok(BoundReport::new(theorem, Some(lo), Some(up), exact, inputs))
        }
        (Theorem::Circuit, TheoremInstance::Circuit { components, attachments }) => {
            require_connected(components)?;
            let composed = compose::circuit(components, attachments)?;
            let gst: Vec<usize> = components
                .iter()
                .map(|g| solve_exact(g, cfg))
                .collect::<Result<_, _>>()?;
            let deg_x: Vec<usize> = components
                .iter()
                .zip(attachments)
                .map(|(g, &x)| g.degree(x))
                .collect();
            let exact = solve_exact(&composed.graph, cfg)?;
            let (lo, up) = circuit_bounds(&gst, &deg_x)?;
            let inputs = ReportInputs {
                component_gst: gst,
                degrees: deg_x,
                composed_n: composed.graph.n(),
                psi_12: None,
                psi_r: None,
                r: None,
            };
            Ok(BoundReport::new(theorem, Some(lo), Some(up), exact, inputs))
        }
        (Theorem::EdgeDeletion, TheoremInstance::EdgeDeletion { graph, edge }) => {
            let (u, v) = *edge;
            require(u < graph.n() && v < graph.n() && graph.has_edge(u, v), || {
                format!("({u},{v}) is not an edge")
            })?;
            require(!(graph.n() == 2), || "the single-edge graph is excluded".to_string())?;
            require(graph.is_connected(), || "graph must be connected".to_string())?;
            let gst_g = solve_exact(graph, cfg)?;
            let deleted = graph.without_edge(u, v);
            let exact = solve_exact(&deleted, cfg)?;
            let (lo, up) = edge_deletion_bounds(gst_g, graph.degree(u), graph.degree(v));
            let inputs = ReportInputs {
                component_gst: vec![gst_g],
                degrees: vec![graph.degree(u), graph.degree(v)],
                composed_n: deleted.n(),
                psi_12: None,
                psi_r: None,
                r: None,
            };
            Ok(BoundReport::new(theorem, Some(lo), Some(up), exact, inputs))
        }
        (Theorem::Bridge, TheoremInstance::Bridge { graph, edge }) => {
            let (u, v) = *edge;
            require(u < graph.n() && v < graph.n() && graph.has_edge(u, v), || {
                format!("({u},{v}) is not an edge")
            })?;
            // inherited from the edge-deletion bound this one rests on
            require(graph.n() >= 3, || "the single-edge graph is excluded".to_string())?;
            require(graph.is_connected(), || "graph must be connected".to_string())?;
            require(graph.is_bridge(u, v), || format!("({u},{v}) is not a bridge"))?;
            let side1 = graph.induced(&graph.component_without_edge(u, u, v));
            let side2 = graph.induced(&graph.component_without_edge(v, u, v));
            let gst1 = solve_exact(&side1, cfg)?;
            let gst2 = solve_exact(&side2, cfg)?;
            let exact = solve_exact(graph, cfg)?;
            let lo = bridge_lower(gst1, gst2, graph.degree(u), graph.degree(v));
            let inputs = ReportInputs {
                component_gst: vec![gst1, gst2],
                degrees: vec![graph.degree(u), graph.degree(v)],
                composed_n: graph.n(),
                psi_12: None,
                psi_r: None,
                r: None,
            };
            Ok(BoundReport::new(theorem, Some(lo), None, exact, inputs))
        }
        _ => Err(EvalError::InstanceMismatch(theorem)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn formula_spot_values() {
        assert_eq!(disjoint_union_bounds(1, 1), (2, 2));
        assert_eq!(disjoint_union_bounds(1, 2), (3, 3));
        assert_eq!(vertex_sum_bounds(&[1, 1], &[2, 2]).unwrap(), (-1, 3));
        assert_eq!(edge_glue_lower(1, 2, 6), 2);
        assert_eq!(edge_glue_upper(1, 2), 4);
        assert_eq!(edge_glue_lower(1, 1, 8), -1);
        assert_eq!(chain_bounds(&[1, 1], &[1], &[1]).unwrap(), (1, 3));
        assert_eq!(chain_bounds(&[2], &[], &[]).unwrap(), (2, 2));
        assert_eq!(link_bounds(&[2], &[], &[]).unwrap(), (2, 2));
        assert_eq!(circuit_bounds(&[1, 1, 1], &[0, 0, 0]).unwrap(), (6, 4));
        assert_eq!(edge_deletion_bounds(2, 2, 2), (1, 4));
        assert_eq!(bridge_lower(1, 1, 3, 3), (-2));
        assert_eq!(bridge_lower(1, 1, 2, 2), 0);
    }

    #[test]
    fn conjecture_reduces_to_edge_lower_at_r2() {
        for gst1 in 1..4 {
            for gst2 in 1..4 {
                for a in 1..5usize {
                    for b in 1..5usize {
                        assert_eq!(
                            kr_glue_conjectured_lower(gst1, gst2, 2, [a, b]),
                            edge_glue_lower(gst1, gst2, a + b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(json, format!("\"{}\"", t.id()));
        }
        assert!("no-such-theorem".parse::<Theorem>().is_err());
        assert_eq!("2-gluing-lower".parse::<Theorem>().unwrap(), Theorem::EdgeGluingLower);
        assert_eq!("1-gluing".parse::<Theorem>().unwrap(), Theorem::VertexGluing);
        assert_eq!(
            "2-gluing-lower-Kr".parse::<Theorem>().unwrap(),
            Theorem::CliqueGluingLowerConjecture
        );
    }

    #[test]
    fn disjoint_union_is_exact() {
        let inst = TheoremInstance::DisjointUnion {
            components: vec![Graph::path(2), Graph::path(2)],
        };
        let rep = evaluate(Theorem::DisjointUnion, &inst, &cfg()).unwrap();
        assert_eq!(rep.exact, 2);
        assert!(rep.tight_lower && rep.tight_upper && rep.holds());
    }

    #[test]
    fn vertex_gluing_two_stars() {
        let inst = TheoremInstance::VertexGluing {
            components: vec![Graph::star(2), Graph::star(2)],
            attachments: vec![0, 0],
        };
        let rep = evaluate(Theorem::VertexGluing, &inst, &cfg()).unwrap();
        assert_eq!(rep.lower_raw, Some(-1));
        assert_eq!(rep.lower, Some(1));
        assert_eq!(rep.upper, Some(3));
        assert_eq!(rep.exact, 1); // star(4)
        assert!(rep.holds());
    }

    #[test]
    fn edge_gluing_triangles() {
        let inst = TheoremInstance::EdgeGluing {
            components: vec![Graph::complete(3), Graph::complete(3)],
            edges: vec![(0, 1), (0, 1)],
        };
        let up = evaluate(Theorem::EdgeGluingUpper, &inst, &cfg()).unwrap();
        assert_eq!(up.upper, Some(3));
        assert_eq!(up.exact, 1);
        assert!(up.holds());
        let lo = evaluate(Theorem::EdgeGluingLower, &inst, &cfg()).unwrap();
        assert_eq!(lo.inputs.psi_12, Some(8));
        assert_eq!(lo.lower_raw, Some(-1));
        assert!(lo.holds());
        // Ψ = 8 ≥ 7, so the strengthened variant applies too
        let strong = evaluate(Theorem::EdgeGluingLowerStrong, &inst, &cfg()).unwrap();
        assert_eq!(strong.lower_raw, Some(0));
        assert!(strong.holds());
    }

    #[test]
    fn edge_gluing_strong_needs_psi_seven() {
        // two paths P_3 glued on their edges: all endpoint degrees minimal
        let p3 = Graph::path(3);
        let inst = TheoremInstance::EdgeGluing {
            components: vec![p3.clone(), p3],
            edges: vec![(0, 1), (0, 1)],
        };
        let lo = evaluate(Theorem::EdgeGluingLower, &inst, &cfg()).unwrap();
        assert_eq!(lo.inputs.psi_12, Some(6));
        assert!(matches!(
            evaluate(Theorem::EdgeGluingLowerStrong, &inst, &cfg()),
            Err(EvalError::Hypothesis(_))
        ));
    }

    /// Gluing two P_4 end edges with the leaves in opposite slots yields
    /// P_6: the formula claims 2 + 2 + 5 − 6 = 3 but γ_st(P_6) = 2. The
    /// stated hypotheses (connected, order ≥ 3) admit this instance, so the
    /// report must surface the violation; the campaign sampler avoids it by
    /// never gluing along an edge that touches a leaf.
    #[test]
    fn edge_gluing_lower_fails_when_leaf_edges_cross() {
        let inst = TheoremInstance::EdgeGluing {
            components: vec![Graph::path(4), Graph::path(4)],
            edges: vec![(2, 3), (0, 1)],
        };
        let rep = evaluate(Theorem::EdgeGluingLower, &inst, &cfg()).unwrap();
        assert_eq!(rep.inputs.component_gst, vec![2, 2]);
        assert_eq!(rep.inputs.degrees, vec![2, 1, 1, 2]);
        assert_eq!(rep.inputs.psi_12, Some(6));
        assert_eq!(rep.inputs.composed_n, 6);
        assert_eq!(rep.lower_raw, Some(3));
        assert_eq!(rep.exact, 2);
        assert!(!rep.holds_lower);
    }

    /// Leaves aligned in the same slot fail too once the components grow:
    /// the merged vertex is again forced to carry both sides' deficits.
    #[test]
    fn edge_gluing_lower_fails_on_aligned_leaf_edges_too() {
        let g1 = Graph::from_edges(6, &[(0, 2), (0, 4), (1, 3), (1, 5), (2, 5), (4, 5)]).unwrap();
        let g2 = Graph::path(3);
        let inst = TheoremInstance::EdgeGluing {
            components: vec![g1, g2],
            edges: vec![(1, 3), (1, 0)],
        };
        let rep = evaluate(Theorem::EdgeGluingLower, &inst, &cfg()).unwrap();
        assert_eq!(rep.inputs.component_gst, vec![3, 1]);
        assert_eq!(rep.inputs.degrees, vec![2, 1, 2, 1]);
        assert_eq!(rep.inputs.psi_12, Some(6));
        assert_eq!(rep.lower_raw, Some(3));
        assert_eq!(rep.exact, 2);
        assert!(!rep.holds_lower);
    }

    /// One glued leaf is enough to break the strengthened variant even
    /// though the plain bound still holds (tightly) on the same instance.
    #[test]
    fn strengthened_edge_gluing_lower_fails_when_one_leaf_is_glued() {
        let g1 = Graph::from_edges(5, &[(0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let g2 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let inst = TheoremInstance::EdgeGluing {
            components: vec![g1, g2],
            edges: vec![(0, 2), (1, 3)],
        };
        let base = evaluate(Theorem::EdgeGluingLower, &inst, &cfg()).unwrap();
        assert_eq!(base.inputs.component_gst, vec![2, 2]);
        assert_eq!(base.inputs.psi_12, Some(7));
        assert_eq!(base.lower_raw, Some(2));
        assert_eq!(base.exact, 2);
        assert!(base.holds_lower && base.tight_lower);
        let strong = evaluate(Theorem::EdgeGluingLowerStrong, &inst, &cfg()).unwrap();
        assert_eq!(strong.lower_raw, Some(3));
        assert!(!strong.holds_lower);
    }

    #[test]
    fn clique_gluing_k4s() {
        let inst = TheoremInstance::CliqueGluing {
            components: vec![Graph::complete(4), Graph::complete(4)],
            r: 3,
            clique1: vec![0, 1, 2],
            clique2: vec![0, 1, 2],
        };
        let up = evaluate(Theorem::CliqueGluingUpper, &inst, &cfg()).unwrap();
        assert_eq!(up.upper, Some(3));
        assert_eq!(up.exact, 1);
        assert!(up.holds());
        let conj = evaluate(Theorem::CliqueGluingLowerConjecture, &inst, &cfg()).unwrap();
        // Ψ_i = 9 each: lower = 1+1+13−18 = −3
        assert_eq!(conj.lower_raw, Some(-3));
        assert!(conj.holds());
    }

    #[test]
    fn chain_of_two_p3s() {
        let inst = TheoremInstance::Chain {
            components: vec![Graph::path(3), Graph::path(3)],
            attachments: vec![(0, 2), (0, 2)],
        };
        let rep = evaluate(Theorem::Chain, &inst, &cfg()).unwrap();
        assert_eq!(rep.lower_raw, Some(1));
        assert_eq!(rep.upper, Some(3));
        assert_eq!(rep.exact, 2); // P_5
        assert!(rep.holds());
    }

    #[test]
    fn link_of_k3s_and_k2s() {
        let inst = TheoremInstance::Link {
            components: vec![Graph::complete(3), Graph::complete(3)],
            attachments: vec![(0, 1), (0, 1)],
        };
        let rep = evaluate(Theorem::Link, &inst, &cfg()).unwrap();
        // junction degrees measured after the bridge is added: 3 and 3
        assert_eq!(rep.inputs.degrees, vec![3, 3]);
        assert_eq!(rep.lower_raw, Some(-2));
        assert_eq!(rep.upper, Some(3));
        assert_eq!(rep.exact, 2);
        assert!(rep.holds());

        // three edges linked in a row form P_6; junction degrees in the
        // composed graph keep the bound sound here
        let k2 = Graph::path(2);
        let inst = TheoremInstance::Link {
            components: vec![k2.clone(), k2.clone(), k2],
            attachments: vec![(0, 1), (0, 1), (0, 1)],
        };
        let rep = evaluate(Theorem::Link, &inst, &cfg()).unwrap();
        assert_eq!(rep.exact, 2); // P_6
        assert_eq!(rep.lower_raw, Some(-1));
        assert!(rep.holds());
    }

    #[test]
    fn circuit_of_k2s_is_tight() {
        let k2 = Graph::path(2);
        let inst = TheoremInstance::Circuit {
            components: vec![k2.clone(), k2.clone(), k2],
            attachments: vec![0, 0, 0],
        };
        let rep = evaluate(Theorem::Circuit, &inst, &cfg()).unwrap();
        assert_eq!(rep.exact, 3); // sunlet on C_3
        assert_eq!(rep.lower_raw, Some(3));
        assert!(rep.tight_lower && rep.holds());
    }

    #[test]
    fn circuit_of_singletons_surfaces_violation() {
        let k1 = Graph::empty(1);
        let inst = TheoremInstance::Circuit {
            components: vec![k1.clone(), k1.clone(), k1],
            attachments: vec![0, 0, 0],
        };
        let rep = evaluate(Theorem::Circuit, &inst, &cfg()).unwrap();
        assert_eq!(rep.exact, 1); // the bare triangle
        assert_eq!(rep.lower_raw, Some(6));
        assert!(!rep.holds_lower, "degenerate components must surface as a violation");
    }

    /// The circuit lower bound also fails for pendant attachments on
    /// non-degenerate components: with deg(x_i) = 1 the per-component
    /// budget deg(x_i) − 1 is zero, yet an attachment strongly dominated
    /// only from the ring still costs one extra vertex. The campaign
    /// sampler therefore sticks to attachments of degree ≥ 2; here the
    /// violation must be reported, not hidden.
    #[test]
    fn circuit_with_pendant_attachments_surfaces_violation() {
        let g1 = Graph::from_edges(
            6,
            &[(0, 1), (0, 3), (0, 4), (1, 2), (1, 3), (1, 5), (2, 3), (2, 4)],
        )
        .unwrap();
        let g2 = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let g3 = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 3)]).unwrap();
        let inst = TheoremInstance::Circuit {
            components: vec![g1, g2, g3],
            attachments: vec![5, 0, 1],
        };
        let rep = evaluate(Theorem::Circuit, &inst, &cfg()).unwrap();
        assert_eq!(rep.inputs.component_gst, vec![2, 2, 2]);
        assert_eq!(rep.inputs.degrees, vec![1, 1, 1]);
        assert_eq!(rep.lower_raw, Some(6));
        assert_eq!(rep.exact, 5);
        assert!(!rep.holds_lower);
        assert!(rep.holds_upper);
    }

    #[test]
    fn edge_deletion_cases() {
        let c4 = Graph::cycle(4).unwrap();
        let inst = TheoremInstance::EdgeDeletion {
            graph: c4,
            edge: (0, 1),
        };
        let rep = evaluate(Theorem::EdgeDeletion, &inst, &cfg()).unwrap();
        assert_eq!((rep.lower_raw, rep.upper), (Some(1), Some(4)));
        assert_eq!(rep.exact, 2); // P_4
        assert!(rep.holds());

        let k3 = Graph::complete(3);
        let rep = evaluate(
            Theorem::EdgeDeletion,
            &TheoremInstance::EdgeDeletion { graph: k3, edge: (0, 1) },
            &cfg(),
        )
        .unwrap();
        assert_eq!(rep.lower_raw, Some(0));
        assert_eq!(rep.lower, Some(1));
        assert_eq!(rep.exact, 1); // P_3
        assert!(rep.holds());

        assert!(matches!(
            evaluate(
                Theorem::EdgeDeletion,
                &TheoremInstance::EdgeDeletion { graph: Graph::path(2), edge: (0, 1) },
                &cfg(),
            ),
            Err(EvalError::Hypothesis(_))
        ));
    }

    #[test]
    fn bridge_cases() {
        // two triangles joined by a bridge
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)],
        )
        .unwrap();
        let rep = evaluate(
            Theorem::Bridge,
            &TheoremInstance::Bridge { graph: g, edge: (0, 3) },
            &cfg(),
        )
        .unwrap();
        assert_eq!(rep.lower_raw, Some(-2));
        assert_eq!(rep.exact, 2);
        assert!(rep.holds());

        let p4 = Graph::path(4);
        let rep = evaluate(
            Theorem::Bridge,
            &TheoremInstance::Bridge { graph: p4.clone(), edge: (1, 2) },
            &cfg(),
        )
        .unwrap();
        assert_eq!(rep.lower_raw, Some(0));
        assert_eq!(rep.exact, 2);

        assert!(matches!(
            evaluate(
                Theorem::Bridge,
                &TheoremInstance::Bridge {
                    graph: Graph::cycle(4).unwrap(),
                    edge: (0, 1)
                },
                &cfg(),
            ),
            Err(EvalError::Hypothesis(_))
        ));
        // instance kind mismatch is rejected
        assert!(matches!(
            evaluate(
                Theorem::Chain,
                &TheoremInstance::Bridge { graph: p4, edge: (1, 2) },
                &cfg(),
            ),
            Err(EvalError::InstanceMismatch(Theorem::Chain))
        ));
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = TheoremInstance::Chain {
            components: vec![Graph::path(3), Graph::complete(3)],
            attachments: vec![(0, 2), (0, 1)],
        };
        let json = serde_json::to_string(&inst).unwrap();
        assert!(json.contains("\"kind\":\"chain\""));
        assert!(json.contains("n 3"));
        let back: TheoremInstance = serde_json::from_str(&json).unwrap();
        match back {
            TheoremInstance::Chain { components, attachments } => {
                assert_eq!(components.len(), 2);
                assert_eq!(components[1].edge_count(), 3);
                assert_eq!(attachments, vec![(0, 2), (0, 1)]);
            }
            _ => panic!("wrong kind"),
        }
    }
}
