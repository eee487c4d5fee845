//! Simple undirected graphs over dense integer vertex ids with adjacency bitrows.
//!
//! Vertices are `0..n`. Each adjacency row is a sequence of `u64` words, so
//! graphs larger than 64 vertices can still be built, composed, and
//! serialized; the exact solvers separately enforce their own capacity caps.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {v} out of range for graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0} not allowed")]
    SelfLoop(usize),
    #[error("cycle requires at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line \"n <count>\"")]
    MissingHeader,
    #[error("line {line}: bad header, expected \"n <count>\"")]
    BadHeader { line: usize },
    #[error("line {line}: expected \"u v\" edge pair")]
    BadEdge { line: usize },
    #[error("line {line}: vertex id {v} out of range for order {n}")]
    IdOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: self-loop at vertex {v} rejected")]
    SelfLoop { line: usize, v: usize },
}

/// Provenance tag for a vertex of a composed graph: which component it came
/// from, its id there, and whether it was identified with another vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexLabel {
    pub component: usize,
    pub original: usize,
    pub glued: bool,
}

/// Subset of vertices as a one-word bitmask; usable for graphs of order ≤ 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < 64);
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 64);
        self.0 |= 1u64 << v;
    }

    pub fn with(self, v: usize) -> Self {
        debug_assert!(v < 64);
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member ids in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl std::fmt::Display for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.card()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// Simple undirected graph; immutable once constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges (`n = 0` allowed).
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Path a_0 − a_1 − … − a_{n−1}; `path(1)` is a single vertex.
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooSmall(n));
        }
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Star with center 0 and `leaves` leaves (order `leaves + 1`).
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.adj[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1u64 << (u % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n);
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Adjacency row of `v` as bit words (bit `i` of word `w` = vertex `64w+i`).
    pub fn row(&self, v: usize) -> &[u64] {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Single-word adjacency row; only valid for graphs of order ≤ 64.
    pub fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.adj[v * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + i)
                }
            })
        })
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<VertexLabel>) {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// True iff `uv` is an edge whose removal disconnects `u` from `v`.
    pub fn is_bridge(&self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if (x == u && y == v) || (x == v && y == u) {
                    continue;
                }
                if y == v {
                    return false;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        true
    }

    /// Vertices reachable from `start` with the edge `uv` removed.
    pub(crate) fn component_without_edge(&self, start: usize, u: usize, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if (x == u && y == v) || (x == v && y == u) {
                    continue;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.n).filter(|&x| seen[x]).collect()
    }

    /// Induced subgraph on `verts` (order as given); vertex `i` of the result
    /// is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Graph with the single edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        assert!(self.has_edge(u, v));
        let mut g = Graph::empty(self.n);
        for x in 0..self.n {
            for y in self.neighbors(x) {
                if y > x && !((x == u && y == v) || (x == v && y == u)) {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }
}

/// Parse the edge-list format: header line `n <count>`, then `u v` lines.
/// Duplicate edges are accepted idempotently; self-loops and out-of-range ids
/// are errors. Blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut parts = header.split_whitespace();
    let n = match (parts.next(), parts.next(), parts.next()) {
        (Some("n"), Some(count), None) => count
            .parse::<usize>()
            .map_err(|_| ParseError::BadHeader { line })?,
        _ => return Err(ParseError::BadHeader { line }),
    };

    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (
                u.parse::<usize>().map_err(|_| ParseError::BadEdge { line })?,
                v.parse::<usize>().map_err(|_| ParseError::BadEdge { line })?,
            ),
            _ => return Err(ParseError::BadEdge { line }),
        };
        if u == v {
            return Err(ParseError::SelfLoop { line, v: u });
        }
        for id in [u, v] {
            if id >= n {
                return Err(ParseError::IdOutOfRange { line, v: id, n });
            }
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Canonical edge-list text: header, then edges `u v` with u < v in
/// lexicographic order. `parse_edge_list(emit_edge_list(g))` reproduces `g`.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            if v > u {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    out
}

/// Serde adapters embedding graphs as edge-list text, so instances stay
/// human-readable inside JSON reports.
pub mod graph_text {
    use super::{emit_edge_list, parse_edge_list, Graph};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&emit_edge_list(g))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        parse_edge_list(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// As [`graph_text`], for component lists.
pub mod graphs_text {
    use super::{emit_edge_list, parse_edge_list, Graph};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(gs: &[Graph], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(gs.len()))?;
        for g in gs {
            seq.serialize_element(&emit_edge_list(g))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Graph>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_edge_list(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
