//! Composition operators: disjoint union, vertex-sum, r-clique gluing, and
//! the chain / link / circuit constructions over a sequence of components.
//!
//! Identified vertices receive fresh ids appended after the surviving
//! originals, laid out component-by-component in original order, so the same
//! inputs always produce the same composed graph and vertex map.

use crate::graph::{Graph, VertexLabel};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("composition needs at least {need} components, got {got}")]
    TooFewComponents { need: usize, got: usize },
    #[error("attachment list length {got} does not match component count {want}")]
    LengthMismatch { want: usize, got: usize },
    #[error("component {component}: vertex {v} out of range for order {n}")]
    AttachmentOutOfRange { component: usize, v: usize, n: usize },
    #[error("component {component}: attachment vertices x and y must differ (got {v} twice)")]
    AttachmentsEqual { component: usize, v: usize },
    #[error("clique list {which} has length {got}, expected r = {want}")]
    CliqueLength { which: u8, got: usize, want: usize },
    #[error("clique list {which} repeats vertex {v}")]
    DuplicateCliqueVertex { which: u8, v: usize },
    #[error("clique list {which}: vertices {u} and {v} are not adjacent")]
    NotAClique { which: u8, u: usize, v: usize },
}

/// Ordered r-cliques to identify positionally: `q1[j]` of the first graph is
/// merged with `q2[j]` of the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingSpec {
    pub r: usize,
    pub q1: Vec<usize>,
    pub q2: Vec<usize>,
}

/// Attachment data for the sequence compositions. Chain merges `y_i` with
/// `x_{i+1}`; link joins them by a bridge edge; circuit wires the `x_i` into
/// a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CompositionSpec {
    Chain { attachments: Vec<(usize, usize)> },
    Link { attachments: Vec<(usize, usize)> },
    Circuit { attachments: Vec<usize> },
}

/// A composed graph plus the mapping from component coordinates into it.
#[derive(Debug, Clone)]
pub struct ComposedGraph {
    pub graph: Graph,
    /// `vertex_map[i][v]` = composed id of vertex `v` of component `i`;
    /// total, with identified vertices sharing their merged id.
    pub vertex_map: Vec<Vec<usize>>,
    /// Composed ids of the operator's distinguished vertices: glued vertices
    /// for gluings, the merged `z_i` for chains, the junction endpoints for
    /// links, the attachment `x_i` for circuits.
    pub special: Vec<usize>,
}

impl ComposedGraph {
    pub fn map(&self, component: usize, original: usize) -> usize {
        self.vertex_map[component][original]
    }
}

fn check_vertex(graphs: &[Graph], component: usize, v: usize) -> Result<(), ComposeError> {
    let n = graphs[component].n();
    if v >= n {
        return Err(ComposeError::AttachmentOutOfRange { component, v, n });
    }
    Ok(())
}

/// Assemble a composed graph from components where `merged[i][v]`, when set,
/// sends (i, v) to a shared fresh id; fresh ids are appended after survivors.
fn assemble(graphs: &[Graph], merged_to: &[Vec<Option<usize>>], merged_count: usize) -> ComposedGraph {
    let survivors: usize = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| (0..g.n()).filter(|&v| merged_to[i][v].is_none()).count())
        .sum();
    let total = survivors + merged_count;

    let mut vertex_map: Vec<Vec<usize>> = Vec::with_capacity(graphs.len());
    let mut labels: Vec<Option<VertexLabel>> = vec![None; total];
    let mut next = 0usize;
    for (i, g) in graphs.iter().enumerate() {
        let mut map = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            match merged_to[i][v] {
                Some(slot) => {
                    let id = survivors + slot;
                    map.push(id);
                    if labels[id].is_none() {
                        labels[id] = Some(VertexLabel {
                            component: i,
                            original: v,
                            glued: true,
                        });
                    }
                }
                None => {
                    map.push(next);
                    labels[next] = Some(VertexLabel {
                        component: i,
                        original: v,
                        glued: false,
                    });
                    next += 1;
                }
            }
        }
        vertex_map.push(map);
    }
    debug_assert_eq!(next, survivors);

    let mut graph = Graph::empty(total);
    for (i, g) in graphs.iter().enumerate() {
        for u in 0..g.n() {
            for v in g.neighbors(u) {
                if v > u {
                    let (cu, cv) = (vertex_map[i][u], vertex_map[i][v]);
                    if cu != cv && !graph.has_edge(cu, cv) {
                        graph.add_edge(cu, cv);
                    }
                }
            }
        }
    }
    graph.set_labels(labels.into_iter().map(|l| l.unwrap()).collect());

    ComposedGraph {
        graph,
        vertex_map,
        special: Vec::new(),
    }
}

pub fn disjoint_union(g1: &Graph, g2: &Graph) -> ComposedGraph {
    let graphs = [g1.clone(), g2.clone()];
    let merged: Vec<Vec<Option<usize>>> = graphs.iter().map(|g| vec![None; g.n()]).collect();
    assemble(&graphs, &merged, 0)
}

/// Identify one chosen vertex of every component into a single vertex.
pub fn vertex_sum(graphs: &[Graph], attach: &[usize]) -> Result<ComposedGraph, ComposeError> {
    if graphs.len() < 2 {
        return Err(ComposeError::TooFewComponents {
            need: 2,
            got: graphs.len(),
        });
    }
    if attach.len() != graphs.len() {
        return Err(ComposeError::LengthMismatch {
            want: graphs.len(),
            got: attach.len(),
        });
    }
    for (i, &u) in attach.iter().enumerate() {
        check_vertex(graphs, i, u)?;
    }
    let mut merged: Vec<Vec<Option<usize>>> = graphs.iter().map(|g| vec![None; g.n()]).collect();
    for (i, &u) in attach.iter().enumerate() {
        merged[i][u] = Some(0);
    }
    let mut out = assemble(graphs, &merged, 1);
    out.special = vec![out.map(0, attach[0])];
    Ok(out)
}

/// Identify the ordered r-clique `spec.q1` of `g1` with `spec.q2` of `g2`
/// position by position. `r = 0` is the disjoint union, `r = 1` vertex
/// gluing, `r = 2` edge gluing.
pub fn r_glue(g1: &Graph, g2: &Graph, spec: &GluingSpec) -> Result<ComposedGraph, ComposeError> {
    let graphs = [g1.clone(), g2.clone()];
    for (which, q) in [(1u8, &spec.q1), (2u8, &spec.q2)] {
        let g = &graphs[which as usize - 1];
        if q.len() != spec.r {
            return Err(ComposeError::CliqueLength {
                which,
                got: q.len(),
                want: spec.r,
            });
        }
        for (a, &u) in q.iter().enumerate() {
            if u >= g.n() {
                return Err(ComposeError::AttachmentOutOfRange {
                    component: which as usize - 1,
                    v: u,
                    n: g.n(),
                });
            }
            for &v in &q[a + 1..] {
                if u == v {
                    return Err(ComposeError::DuplicateCliqueVertex { which, v: u });
                }
                if !g.has_edge(u, v) {
                    return Err(ComposeError::NotAClique { which, u, v });
                }
            }
        }
    }
    let mut merged: Vec<Vec<Option<usize>>> = graphs.iter().map(|g| vec![None; g.n()]).collect();
    for j in 0..spec.r {
        merged[0][spec.q1[j]] = Some(j);
        merged[1][spec.q2[j]] = Some(j);
    }
    let mut out = assemble(&graphs, &merged, spec.r);
    out.special = (0..spec.r).map(|j| out.map(0, spec.q1[j])).collect();
    Ok(out)
}

fn check_pairs(graphs: &[Graph], attach: &[(usize, usize)]) -> Result<(), ComposeError> {
    if graphs.is_empty() {
        return Err(ComposeError::TooFewComponents { need: 1, got: 0 });
    }
    if attach.len() != graphs.len() {
        return Err(ComposeError::LengthMismatch {
            want: graphs.len(),
            got: attach.len(),
        });
    }
    for (i, &(x, y)) in attach.iter().enumerate() {
        check_vertex(graphs, i, x)?;
        check_vertex(graphs, i, y)?;
        if x == y {
            return Err(ComposeError::AttachmentsEqual { component: i, v: x });
        }
    }
    Ok(())
}

/// Merge `y_i` of each component with `x_{i+1}` of the next; the merged
/// vertex `z_i` keeps the neighbors of both, so its degree is the sum of the
/// two component degrees.
pub fn chain(graphs: &[Graph], attach: &[(usize, usize)]) -> Result<ComposedGraph, ComposeError> {
    check_pairs(graphs, attach)?;
    let n = graphs.len();
    let mut merged: Vec<Vec<Option<usize>>> = graphs.iter().map(|g| vec![None; g.n()]).collect();
    for j in 0..n.saturating_sub(1) {
        merged[j][attach[j].1] = Some(j); // y_j
        merged[j + 1][attach[j + 1].0] = Some(j); // x_{j+1}
    }
    let mut out = assemble(graphs, &merged, n.saturating_sub(1));
    out.special = (0..n.saturating_sub(1)).map(|j| out.map(j, attach[j].1)).collect();
    Ok(out)
}

/// Join consecutive components by a bridge edge `y_i — x_{i+1}`.
pub fn link(graphs: &[Graph], attach: &[(usize, usize)]) -> Result<ComposedGraph, ComposeError> {
    check_pairs(graphs, attach)?;
    let merged: Vec<Vec<Option<usize>>> = graphs.iter().map(|g| vec![None; g.n()]).collect();
    let mut out = assemble(graphs, &merged, 0);
    for j in 0..graphs.len().saturating_sub(1) {
        let y = out.map(j, attach[j].1);
        let x = out.map(j + 1, attach[j + 1].0);
        out.graph.add_edge(y, x);
        out.special.push(y);
        out.special.push(x);
    }
    Ok(out)
}

/// Wire the attachment vertices `x_1, …, x_n` into a cycle.
pub fn circuit(graphs: &[Graph], attach: &[usize]) -> Result<ComposedGraph, ComposeError> {
    if graphs.len() < 3 {
        return Err(ComposeError::TooFewComponents {
            need: 3,
            got: graphs.len(),
        });
    }
    if attach.len() != graphs.len() {
        return Err(ComposeError::LengthMismatch {
            want: graphs.len(),
            got: attach.len(),
        });
    }
    for (i, &x) in attach.iter().enumerate() {
        check_vertex(graphs, i, x)?;
    }
    let merged: Vec<Vec<Option<usize>>> = graphs.iter().map(|g| vec![None; g.n()]).collect();
    let mut out = assemble(graphs, &merged, 0);
    let n = graphs.len();
    for i in 0..n {
        let a = out.map(i, attach[i]);
        let b = out.map((i + 1) % n, attach[(i + 1) % n]);
        out.graph.add_edge(a, b);
    }
    out.special = (0..n).map(|i| out.map(i, attach[i])).collect();
    Ok(out)
}

/// Dispatch a sequence composition by spec kind.
pub fn compose(graphs: &[Graph], spec: &CompositionSpec) -> Result<ComposedGraph, ComposeError> {
    match spec {
        CompositionSpec::Chain { attachments } => chain(graphs, attachments),
        CompositionSpec::Link { attachments } => link(graphs, attachments),
        CompositionSpec::Circuit { attachments } => circuit(graphs, attachments),
    }
}

/// All ways to r-glue `g1` and `g2`: every r-clique of each graph, under
/// every positional bijection. Labeled specs only — no isomorphism
/// deduplication. Empty when either graph has no r-clique.
pub fn enumerate_r_gluings(g1: &Graph, g2: &Graph, r: usize) -> impl Iterator<Item = GluingSpec> {
    let mut specs = Vec::new();
    if r >= 1 {
        let cliques1 = r_cliques(g1, r);
        let cliques2 = r_cliques(g2, r);
        for c1 in &cliques1 {
            for c2 in &cliques2 {
                for perm in permutations_lex(c2) {
                    specs.push(GluingSpec {
                        r,
                        q1: c1.clone(),
                        q2: perm,
                    });
                }
            }
        }
    }
    specs.into_iter()
}

/// All r-cliques as sorted vertex lists, in lexicographic order.
pub fn r_cliques(g: &Graph, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(r);
    let all: Vec<usize> = (0..g.n()).collect();
    extend_cliques(g, r, &mut prefix, &all, &mut out);
    out
}

fn extend_cliques(g: &Graph, r: usize, prefix: &mut Vec<usize>, candidates: &[usize], out: &mut Vec<Vec<usize>>) {
    if prefix.len() == r {
        out.push(prefix.clone());
        return;
    }
    for (i, &v) in candidates.iter().enumerate() {
        prefix.push(v);
        let narrowed: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&u| g.has_edge(u, v))
            .collect();
        extend_cliques(g, r, prefix, &narrowed, out);
        prefix.pop();
    }
}

/// All permutations of `base` in lexicographic order.
fn permutations_lex(base: &[usize]) -> Vec<Vec<usize>> {
    let mut v: Vec<usize> = base.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::emit_edge_list;
    use crate::solver::gamma_st_oracle;

    #[test]
    fn disjoint_union_basics() {
        let p2 = Graph::path(2);
        let u = disjoint_union(&p2, &p2);
        assert_eq!(u.graph.n(), 4);
        assert_eq!(u.graph.edge_count(), 2);
        assert_eq!(gamma_st_oracle(&u.graph).unwrap().value, 2);

        let k3 = Graph::complete(3);
        assert_eq!(gamma_st_oracle(&disjoint_union(&k3, &k3).graph).unwrap().value, 2);

        let id = disjoint_union(&k3, &Graph::empty(0));
        assert_eq!(emit_edge_list(&id.graph), emit_edge_list(&k3));
        assert_eq!(id.vertex_map[0], vec![0, 1, 2]);
    }

    #[test]
    fn vertex_sum_basics() {
        let p2 = Graph::path(2);
        let s = vertex_sum(&[p2.clone(), p2.clone()], &[1, 0]).unwrap();
        assert_eq!(s.graph.n(), 3);
        assert_eq!(s.graph.degree(s.special[0]), 2);
        assert_eq!(gamma_st_oracle(&s.graph).unwrap().value, 1); // it's P_3

        let star2 = Graph::star(2);
        let s = vertex_sum(&[star2.clone(), star2.clone()], &[0, 0]).unwrap();
        assert_eq!(s.graph.n(), 5);
        assert_eq!(s.graph.degree(s.special[0]), 4); // star(4)

        assert_eq!(
            vertex_sum(&[p2], &[0]).unwrap_err(),
            ComposeError::TooFewComponents { need: 2, got: 1 }
        );
    }

    #[test]
    fn edge_glue_triangles() {
        let k3 = Graph::complete(3);
        let spec = GluingSpec {
            r: 2,
            q1: vec![0, 1],
            q2: vec![0, 1],
        };
        let glued = r_glue(&k3, &k3, &spec).unwrap();
        assert_eq!(glued.graph.n(), 4); // K_4 minus an edge
        assert_eq!(glued.graph.edge_count(), 5);
        for &v in &glued.special {
            assert_eq!(glued.graph.degree(v), 3); // 2 + 2 − 1
        }
    }

    #[test]
    fn glue_layout_is_survivors_then_fresh() {
        // path 0−1−2 glued on its edge (1,2) against a 5-vertex tree's (0,1)
        let g1 = Graph::path(3);
        let g2 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let spec = GluingSpec {
            r: 2,
            q1: vec![1, 2],
            q2: vec![0, 1],
        };
        let out = r_glue(&g1, &g2, &spec).unwrap();
        assert_eq!(out.graph.n(), 6);
        assert_eq!(out.vertex_map[0], vec![0, 4, 5]); // survivor 0, then glued
        assert_eq!(out.vertex_map[1], vec![4, 5, 1, 2, 3]);
        assert_eq!(out.special, vec![4, 5]);
        let labels = out.graph.labels().unwrap();
        assert!(labels[4].glued && labels[4].component == 0 && labels[4].original == 1);
        assert!(!labels[0].glued);
        // resulting caterpillar: 0−4−5−1, leaves 2 and 3 on 1
        assert_eq!(gamma_st_oracle(&out.graph).unwrap().value, 2);
    }

    #[test]
    fn glue_validation() {
        let p3 = Graph::path(3);
        let bad = GluingSpec {
            r: 2,
            q1: vec![0, 2], // not adjacent in P_3
            q2: vec![0, 1],
        };
        assert_eq!(
            r_glue(&p3, &p3, &bad).unwrap_err(),
            ComposeError::NotAClique { which: 1, u: 0, v: 2 }
        );
        let dup = GluingSpec {
            r: 2,
            q1: vec![1, 1],
            q2: vec![0, 1],
        };
        assert_eq!(
            r_glue(&p3, &p3, &dup).unwrap_err(),
            ComposeError::DuplicateCliqueVertex { which: 1, v: 1 }
        );
    }

    #[test]
    fn chain_of_two_edges_is_p3() {
        let p2 = Graph::path(2);
        let out = chain(&[p2.clone(), p2.clone()], &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(out.graph.n(), 3);
        let z = out.special[0];
        assert_eq!(z, 2);
        assert_eq!(out.graph.degree(z), 2);
        assert!(out.graph.has_edge(0, z) && out.graph.has_edge(1, z));
        // both roles map onto the merged vertex
        assert_eq!(out.map(0, 1), z);
        assert_eq!(out.map(1, 0), z);
    }

    #[test]
    fn chain_identity_and_rejection() {
        let k2 = Graph::path(2);
        let out = chain(&[k2.clone()], &[(0, 1)]).unwrap();
        assert_eq!(emit_edge_list(&out.graph), emit_edge_list(&k2));
        assert_eq!(
            chain(&[k2.clone(), k2], &[(0, 1), (1, 1)]).unwrap_err(),
            ComposeError::AttachmentsEqual { component: 1, v: 1 }
        );
    }

    #[test]
    fn chain_merged_degrees_add() {
        let star3 = Graph::star(3);
        let p4 = Graph::path(4);
        // y_1 = star center (deg 3), x_2 = path end (deg 1)
        let out = chain(&[star3, p4], &[(1, 0), (0, 3)]).unwrap();
        assert_eq!(out.graph.degree(out.special[0]), 4);
        assert_eq!(out.graph.n(), 3 + 1 + 4 - 1);
    }

    #[test]
    fn link_adds_bridges() {
        let k3 = Graph::complete(3);
        let out = link(&[k3.clone(), k3.clone()], &[(0, 1), (2, 0)]).unwrap();
        assert_eq!(out.graph.n(), 6);
        assert_eq!(out.graph.edge_count(), 7);
        let (y, x) = (out.special[0], out.special[1]);
        assert!(out.graph.is_bridge(y, x));
        assert_eq!(out.graph.degree(y), 3);
        assert_eq!(out.graph.degree(x), 3);
        assert_eq!(gamma_st_oracle(&out.graph).unwrap().value, 2);
    }

    #[test]
    fn circuit_basics() {
        let k1 = Graph::empty(1);
        let out = circuit(&[k1.clone(), k1.clone(), k1.clone()], &[0, 0, 0]).unwrap();
        assert_eq!(emit_edge_list(&out.graph), emit_edge_list(&Graph::cycle(3).unwrap()));

        let p2 = Graph::path(2);
        let comps = vec![p2.clone(), p2.clone(), p2.clone(), p2.clone()];
        let out = circuit(&comps, &[0, 0, 0, 0]).unwrap();
        assert_eq!(out.graph.n(), 8); // sunlet-like
        for &x in &out.special {
            assert_eq!(out.graph.degree(x), 1 + 2);
        }

        assert_eq!(
            circuit(&comps[..2], &[0, 0]).unwrap_err(),
            ComposeError::TooFewComponents { need: 3, got: 2 }
        );
    }

    #[test]
    fn gluing_enumeration_counts() {
        let k3 = Graph::complete(3);
        let specs: Vec<_> = enumerate_r_gluings(&k3, &k3, 2).collect();
        assert_eq!(specs.len(), 18); // 3 edges × 3 edges × 2 orientations
        for spec in &specs {
            assert!(r_glue(&k3, &k3, spec).is_ok());
        }
        assert_eq!(enumerate_r_gluings(&k3, &k3, 4).count(), 0);
        let p3 = Graph::path(3);
        assert_eq!(enumerate_r_gluings(&p3, &p3, 1).count(), 9);
    }

    #[test]
    fn composition_spec_json_round_trip() {
        let spec = CompositionSpec::Chain {
            attachments: vec![(0, 1), (2, 0)],
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"kind\":\"chain\""));
        let back: CompositionSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let circuit_json = r#"{"kind":"circuit","attachments":[0,1,0]}"#;
        let parsed: CompositionSpec = serde_json::from_str(circuit_json).unwrap();
        assert_eq!(
            parsed,
            CompositionSpec::Circuit {
                attachments: vec![0, 1, 0]
            }
        );
    }
}
