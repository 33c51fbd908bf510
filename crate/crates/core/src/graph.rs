//! Signed graphs: simple undirected graphs whose edges carry a sign in
//! {+1, −1}, together with the basic operations on them — switching,
//! negation, balance testing, and the signed complement.
//!
//! Vertex ids are 1-based everywhere in the public API and in the edge-list
//! interchange format. Graphs are immutable values after construction.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// The sign attached to an edge of a signed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Numeric value: +1 or −1.
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Sign product.
    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// The opposite sign.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Canonical file token (`+1` / `-1`).
    pub fn token(self) -> &'static str {
        match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        }
    }

    fn from_token(tok: &str) -> Option<Sign> {
        match tok {
            "+" | "+1" => Some(Sign::Plus),
            "-" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// One signed edge, stored with `u < v` (1-based vertex ids).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

/// Errors raised by graph construction, parsing, and the basic operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate edge {{{u},{v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("loop edge at vertex {u}")]
    LoopEdge { u: usize },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("bad sign token {token:?} (expected +, -, +1, or -1)")]
    BadSignToken { token: String },
    #[error("header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("n = {n} too small for family {family}: {reason}")]
    NTooSmall {
        family: &'static str,
        n: usize,
        reason: &'static str,
    },
    #[error("n = {n} unsupported for family {family}: {reason}")]
    UnsupportedOrder {
        family: &'static str,
        n: usize,
        reason: &'static str,
    },
    #[error("switching vector has length {got}, graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("graph is not balanced")]
    NotBalanced,
}

/// A switching assignment: one sign per vertex. Switching a graph by `s`
/// replaces each edge sign σ(uv) by s(u)·σ(uv)·s(v), which flips exactly the
/// edges with one endpoint in U = {v : s(v) = +1} and one outside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwitchingVector {
    signs: Vec<Sign>,
}

impl SwitchingVector {
    /// All-(+1) switching (the identity) on `n` vertices.
    pub fn identity(n: usize) -> Self {
        SwitchingVector {
            signs: vec![Sign::Plus; n],
        }
    }

    /// Build from an explicit per-vertex list (vertex 1 first).
    pub fn from_signs(signs: Vec<Sign>) -> Self {
        SwitchingVector { signs }
    }

    /// The switching whose +1-set is exactly `set` (vertices outside get −1).
    pub fn from_plus_set(set: &BTreeSet<usize>, n: usize) -> Self {
        let signs = (1..=n)
            .map(|v| if set.contains(&v) { Sign::Plus } else { Sign::Minus })
            .collect();
        SwitchingVector { signs }
    }

    /// Number of vertices covered.
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Sign at a 1-based vertex.
    pub fn get(&self, v: usize) -> Sign {
        self.signs[v - 1]
    }

    /// The set U = {v : s(v) = +1}.
    pub fn plus_set(&self) -> BTreeSet<usize> {
        (1..=self.len()).filter(|&v| self.get(v) == Sign::Plus).collect()
    }

    /// Pointwise product; switching by `self` then `other` equals switching
    /// once by the product.
    pub fn compose(&self, other: &SwitchingVector) -> SwitchingVector {
        assert_eq!(self.len(), other.len(), "switching vectors of unequal length");
        SwitchingVector {
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(&a, &b)| a.mul(b))
                .collect(),
        }
    }

    /// Flip every entry (the same switching: s and −s act identically).
    pub fn negated(&self) -> SwitchingVector {
        SwitchingVector {
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    /// Per-vertex signs, vertex 1 first.
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }
}

/// A cycle whose edge-sign product is −1, listed as a vertex sequence
/// (consecutive vertices adjacent, last adjacent to first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeCycleWitness {
    pub vertices: Vec<usize>,
}

/// Outcome of a balance test: either a switching that makes every edge
/// positive, or a concrete negative cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BalanceCertificate {
    Balanced(SwitchingVector),
    Unbalanced(NegativeCycleWitness),
}

impl BalanceCertificate {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceCertificate::Balanced(_))
    }

    pub fn switching(&self) -> Option<&SwitchingVector> {
        match self {
            BalanceCertificate::Balanced(s) => Some(s),
            BalanceCertificate::Unbalanced(_) => None,
        }
    }
}

/// Named constructors for the graph families used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Cycle with exactly one negative edge ({1,2}).
    CnMinus,
    /// Cycle with every edge negative.
    AllNegCn,
    /// Complete graph with exactly one negative edge ({1,2}).
    KnMinus,
    /// Complete graph with every edge negative.
    AllNegKn,
    /// Complete graph all-negative except one positive edge ({1,2}).
    NegKnPlus,
    /// All-positive Petersen graph (n must be 10).
    Petersen,
}

impl Family {
    pub fn parse(name: &str) -> Result<Family, GraphError> {
        match name {
            "Cn_minus" => Ok(Family::CnMinus),
            "all_neg_Cn" => Ok(Family::AllNegCn),
            "Kn_minus" => Ok(Family::KnMinus),
            "all_neg_Kn" => Ok(Family::AllNegKn),
            "neg_Kn_plus" => Ok(Family::NegKnPlus),
            "petersen" => Ok(Family::Petersen),
            other => Err(GraphError::UnknownFamily(other.to_string())),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Family::CnMinus => "Cn_minus",
            Family::AllNegCn => "all_neg_Cn",
            Family::KnMinus => "Kn_minus",
            Family::AllNegKn => "all_neg_Kn",
            Family::NegKnPlus => "neg_Kn_plus",
            Family::Petersen => "petersen",
        }
    }
}

/// An immutable signed graph on vertices 1..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, Sign)>>,
}

impl SignedGraph {
    /// Build a signed graph, validating simplicity and vertex ranges.
    /// Endpoint order within each input pair is irrelevant.
    pub fn new(n: usize, edge_list: &[(usize, usize, Sign)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b, sign) in edge_list {
            if a == b {
                return Err(GraphError::LoopEdge { u: a });
            }
            for &x in &[a, b] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            let (u, v) = (a.min(b), a.max(b));
            edges.push(Edge { u, v, sign });
        }
        edges.sort_by_key(|e| (e.u, e.v));
        for w in edges.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(GraphError::DuplicateEdge { u: w[0].u, v: w[0].v });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u - 1].push((e.v, e.sign));
            adj[e.v - 1].push((e.u, e.sign));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SignedGraph { n, edges, adj })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Number of positive edges.
    pub fn m_pos(&self) -> usize {
        self.edges.iter().filter(|e| e.sign == Sign::Plus).count()
    }

    /// Number of negative edges.
    pub fn m_neg(&self) -> usize {
        self.edges.iter().filter(|e| e.sign == Sign::Minus).count()
    }

    /// Edges sorted lexicographically by (u, v).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of a 1-based vertex with the incident edge signs, ascending.
    pub fn neighbors(&self, v: usize) -> &[(usize, Sign)] {
        &self.adj[v - 1]
    }

    /// Degree of a 1-based vertex.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Sign of the edge {u, v}, if present.
    pub fn sign_of(&self, u: usize, v: usize) -> Option<Sign> {
        self.adj[u - 1]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u - 1][i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.sign_of(u, v).is_some()
    }

    /// The same graph with every edge positive.
    pub fn underlying(&self) -> SignedGraph {
        let list: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, Sign::Plus)).collect();
        SignedGraph::new(self.n, &list).expect("underlying graph of a valid graph is valid")
    }

    /// True when both graphs have the same vertex count and edge set,
    /// ignoring signs.
    pub fn same_underlying(&self, other: &SignedGraph) -> bool {
        self.n == other.n
            && self.m() == other.m()
            && self
                .edges
                .iter()
                .zip(other.edges.iter())
                .all(|(a, b)| (a.u, a.v) == (b.u, b.v))
    }

    /// Switch by `s`: each edge sign becomes s(u)·σ(uv)·s(v).
    pub fn switch(&self, s: &SwitchingVector) -> Result<SignedGraph, GraphError> {
        if s.len() != self.n {
            return Err(GraphError::SizeMismatch {
                expected: self.n,
                got: s.len(),
            });
        }
        let list: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, s.get(e.u).mul(e.sign).mul(s.get(e.v))))
            .collect();
        SignedGraph::new(self.n, &list)
    }

    /// Flip every edge sign.
    pub fn negate(&self) -> SignedGraph {
        let list: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.sign.flip()))
            .collect();
        SignedGraph::new(self.n, &list).expect("negation of a valid graph is valid")
    }

    /// Relabel vertices: `perm[v-1]` is the new 1-based id of old vertex `v`.
    pub fn relabel(&self, perm: &[usize]) -> SignedGraph {
        debug_assert_eq!(perm.len(), self.n);
        let list: Vec<_> = self
            .edges
            .iter()
            .map(|e| (perm[e.u - 1], perm[e.v - 1], e.sign))
            .collect();
        SignedGraph::new(self.n, &list).expect("relabeling by a bijection preserves validity")
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start - 1] {
                continue;
            }
            let mut comp = vec![start];
            seen[start - 1] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, _) in self.neighbors(v) {
                    if !seen[w - 1] {
                        seen[w - 1] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Balance test by spanning-forest label propagation: fix s = +1 at the
    /// lowest-id vertex of each component, propagate s(w) = s(v)·σ(vw) along
    /// a depth-first forest (visiting neighbors in ascending order), then
    /// check every non-tree edge. The first failing non-tree edge yields a
    /// negative cycle: the tree path between its endpoints plus the edge.
    pub fn balance_check(&self) -> BalanceCertificate {
        let mut sign = vec![None; self.n + 1];
        let mut parent = vec![0usize; self.n + 1];
        let mut depth = vec![0usize; self.n + 1];
        for root in 1..=self.n {
            if sign[root].is_some() {
                continue;
            }
            sign[root] = Some(Sign::Plus);
            // Iterative depth-first search equivalent to recursing into the
            // lowest unvisited neighbor first (adjacency lists are sorted).
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(frame) = stack.last_mut() {
                let (v, idx) = (frame.0, frame.1);
                if let Some(&(w, sig)) = self.neighbors(v).get(idx) {
                    frame.1 += 1;
                    if sign[w].is_none() {
                        sign[w] = Some(sign[v].unwrap().mul(sig));
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        stack.push((w, 0));
                    }
                } else {
                    stack.pop();
                }
            }
        }
        for e in &self.edges {
            let s_u = sign[e.u].unwrap();
            let s_v = sign[e.v].unwrap();
            if s_u.mul(e.sign).mul(s_v) == Sign::Minus {
                // Tree path e.u .. lca .. e.v plus the closing edge.
                let (mut a, mut b) = (e.u, e.v);
                let mut left = vec![a];
                let mut right = vec![b];
                while depth[a] > depth[b] {
                    a = parent[a];
                    left.push(a);
                }
                while depth[b] > depth[a] {
                    b = parent[b];
                    right.push(b);
                }
                while a != b {
                    a = parent[a];
                    b = parent[b];
                    left.push(a);
                    right.push(b);
                }
                right.pop();
                right.reverse();
                left.extend(right);
                let witness = NegativeCycleWitness { vertices: left };
                debug_assert_eq!(self.cycle_sign(&witness.vertices), Some(Sign::Minus));
                return BalanceCertificate::Unbalanced(witness);
            }
        }
        let s = SwitchingVector::from_signs((1..=self.n).map(|v| sign[v].unwrap()).collect());
        debug_assert!(self
            .switch(&s)
            .map(|g| g.m_neg() == 0)
            .unwrap_or(false));
        BalanceCertificate::Balanced(s)
    }

    /// Convenience wrapper around [`balance_check`].
    pub fn is_balanced(&self) -> bool {
        self.balance_check().is_balanced()
    }

    /// Sign product along a closed vertex sequence, or None if some step is
    /// not an edge.
    pub fn cycle_sign(&self, cycle: &[usize]) -> Option<Sign> {
        let p = cycle.len();
        let mut acc = Sign::Plus;
        for i in 0..p {
            acc = acc.mul(self.sign_of(cycle[i], cycle[(i + 1) % p])?);
        }
        Some(acc)
    }

    /// Signed complement of a balanced graph: the complement of the
    /// underlying graph with signs σ̄(uv) = s(u)·s(v), where s is the
    /// balancing switching. Matrix form: Ā = S(J − I − A⁺)S.
    pub fn signed_complement(&self) -> Result<SignedGraph, GraphError> {
        let s = match self.balance_check() {
            BalanceCertificate::Balanced(s) => s,
            BalanceCertificate::Unbalanced(_) => return Err(GraphError::NotBalanced),
        };
        let mut list = Vec::new();
        for u in 1..self.n {
            for v in (u + 1)..=self.n {
                if !self.has_edge(u, v) {
                    list.push((u, v, s.get(u).mul(s.get(v))));
                }
            }
        }
        SignedGraph::new(self.n, &list)
    }

    /// Parse the edge-list interchange format: optional `#` comment lines,
    /// a header `n m`, then exactly m lines `u v s` with s ∈ {+, -, +1, -1}.
    pub fn parse(text: &str) -> Result<SignedGraph, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| GraphError::HeaderMismatch("empty document".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::HeaderMismatch(format!("bad header line {header:?}")))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::HeaderMismatch(format!("bad header line {header:?}")))?;
        if it.next().is_some() {
            return Err(GraphError::HeaderMismatch(format!(
                "trailing tokens in header {header:?}"
            )));
        }
        let mut edge_list = Vec::with_capacity(m);
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(GraphError::HeaderMismatch(format!(
                    "edge line {line:?} is not of the form \"u v s\""
                )));
            }
            let u: usize = toks[0]
                .parse()
                .map_err(|_| GraphError::VertexOutOfRange { v: 0, n })?;
            let v: usize = toks[1]
                .parse()
                .map_err(|_| GraphError::VertexOutOfRange { v: 0, n })?;
            let sign = Sign::from_token(toks[2]).ok_or_else(|| GraphError::BadSignToken {
                token: toks[2].to_string(),
            })?;
            edge_list.push((u, v, sign));
        }
        if edge_list.len() != m {
            return Err(GraphError::HeaderMismatch(format!(
                "header declares {m} edges but the document has {}",
                edge_list.len()
            )));
        }
        SignedGraph::new(n, &edge_list)
    }

    /// Serialize in the edge-list interchange format, with optional leading
    /// comment lines (each emitted as `# <line>`).
    pub fn to_edge_list(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&format!("{} {}\n", self.n, self.m()));
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.sign.token()));
        }
        out
    }

    /// Build a named family member.
    pub fn family(family: Family, n: usize) -> Result<SignedGraph, GraphError> {
        let cycle = |n: usize, neg: fn(usize) -> bool| -> Result<SignedGraph, GraphError> {
            let mut list = Vec::with_capacity(n);
            for i in 1..n {
                let sign = if neg(i) { Sign::Minus } else { Sign::Plus };
                list.push((i, i + 1, sign));
            }
            list.push((1, n, if neg(0) { Sign::Minus } else { Sign::Plus }));
            SignedGraph::new(n, &list)
        };
        let complete = |n: usize, base: Sign, special: Option<Sign>| {
            let mut list = Vec::new();
            for u in 1..n {
                for v in (u + 1)..=n {
                    let sign = if (u, v) == (1, 2) {
                        special.unwrap_or(base)
                    } else {
                        base
                    };
                    list.push((u, v, sign));
                }
            }
            SignedGraph::new(n, &list)
        };
        match family {
            Family::CnMinus | Family::AllNegCn if n < 3 => Err(GraphError::NTooSmall {
                family: family.id(),
                n,
                reason: "cycles need n >= 3",
            }),
            Family::KnMinus | Family::AllNegKn | Family::NegKnPlus if n < 2 => {
                Err(GraphError::NTooSmall {
                    family: family.id(),
                    n,
                    reason: "complete graphs need n >= 2",
                })
            }
            Family::CnMinus => cycle(n, |i| i == 1),
            Family::AllNegCn => cycle(n, |_| true),
            Family::KnMinus => complete(n, Sign::Plus, Some(Sign::Minus)),
            Family::AllNegKn => complete(n, Sign::Minus, None),
            Family::NegKnPlus => complete(n, Sign::Minus, Some(Sign::Plus)),
            Family::Petersen => {
                if n != 10 {
                    return Err(GraphError::UnsupportedOrder {
                        family: family.id(),
                        n,
                        reason: "the Petersen graph has exactly 10 vertices",
                    });
                }
                // Outer 5-cycle 1..5, inner pentagram 6..10, spokes i—(i+5).
                let mut list = Vec::with_capacity(15);
                for i in 1..=5 {
                    list.push((i, i % 5 + 1, Sign::Plus));
                    list.push((i, i + 5, Sign::Plus));
                }
                for &(a, b) in &[(6, 8), (8, 10), (7, 10), (7, 9), (6, 9)] {
                    list.push((a, b, Sign::Plus));
                }
                SignedGraph::new(10, &list)
            }
        }
    }

    /// Replace the signature using a bitmask over this graph's sorted edge
    /// order: bit j (LSB = first edge) set means edge j is negative.
    /// Only supported for graphs with at most 64 edges.
    pub fn with_sign_mask(&self, mask: u64) -> SignedGraph {
        assert!(self.m() <= 64, "sign masks support at most 64 edges");
        let list: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .map(|(j, e)| {
                let sign = if mask >> j & 1 == 1 { Sign::Minus } else { Sign::Plus };
                (e.u, e.v, sign)
            })
            .collect();
        SignedGraph::new(self.n, &list).expect("re-signing a valid graph is valid")
    }

    /// Enumerate all simple cycles as canonical vertex sequences: each cycle
    /// is reported once, starting at its smallest vertex, with the second
    /// vertex smaller than the last. Intended for small graphs (n ≤ 7 or so).
    pub fn simple_cycles(&self) -> Vec<Vec<usize>> {
        let mut cycles = Vec::new();
        let mut path = Vec::new();
        for start in 1..=self.n {
            path.push(start);
            self.cycle_dfs(start, start, &mut path, &mut cycles);
            path.pop();
        }
        cycles
    }

    fn cycle_dfs(&self, start: usize, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for &(w, _) in self.neighbors(v) {
            if w == start && path.len() >= 3 && path[1] < *path.last().unwrap() {
                out.push(path.clone());
            }
            if w > start && !path.contains(&w) {
                path.push(w);
                self.cycle_dfs(start, w, path, out);
                path.pop();
            }
        }
    }
}
