//! k-token graphs of signed graphs.
//!
//! The k-token graph F_k(Γ) has one vertex per k-subset of Γ's vertices;
//! two subsets A, B are adjacent iff their symmetric difference is a single
//! edge {a, b} of Γ, and that token edge inherits the sign σ(ab). Subsets
//! are numbered in lexicographic order (see [`crate::subsets`]), so vertex
//! r+1 of F_k(Γ) is the subset of rank r.

use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{BalanceCertificate, Sign, SignedGraph, SwitchingVector};
use crate::linalg::ExactMatrix;
use crate::subsets;

/// Default cap on the number of token-graph vertices.
pub const DEFAULT_VERTEX_CAP: usize = 200_000;

/// Errors raised by token-graph constructions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TokenError {
    #[error("k = {k} out of range {min}..={max} for n = {n}")]
    KOutOfRange {
        k: usize,
        n: usize,
        min: usize,
        max: usize,
    },
    #[error("token graph would have {vertices} vertices, exceeding the cap of {cap}")]
    SizeCapExceeded { vertices: u128, cap: usize },
    #[error("graph is not balanced")]
    NotBalanced,
}

fn check_k(n: usize, k: usize) -> Result<(), TokenError> {
    if n < 2 || k < 1 || k > n - 1 {
        return Err(TokenError::KOutOfRange {
            k,
            n,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// A token graph together with its subset labelling.
#[derive(Debug, Clone)]
pub struct TokenGraph {
    base_n: usize,
    k: usize,
    graph: SignedGraph,
    labels: Vec<Vec<usize>>,
}

impl TokenGraph {
    /// Number of vertices of the base graph.
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The token graph itself (vertices 1..=C(n,k)).
    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    /// The k-subset labelling token vertex `v` (1-based).
    pub fn subset_of(&self, v: usize) -> &[usize] {
        &self.labels[v - 1]
    }

    /// The token vertex labelled by a sorted k-subset.
    pub fn vertex_of(&self, subset: &[usize]) -> usize {
        usize::try_from(subsets::rank(self.base_n, subset)).expect("rank fits usize") + 1
    }
}

/// Build F_k(g) under the default vertex cap.
pub fn token_graph(g: &SignedGraph, k: usize) -> Result<TokenGraph, TokenError> {
    token_graph_with_cap(g, k, DEFAULT_VERTEX_CAP)
}

/// Build F_k(g), refusing when C(n, k) exceeds `cap`.
pub fn token_graph_with_cap(
    g: &SignedGraph,
    k: usize,
    cap: usize,
) -> Result<TokenGraph, TokenError> {
    let n = g.n();
    check_k(n, k)?;
    let vertices = subsets::binomial(n, k);
    if vertices > cap as u128 {
        return Err(TokenError::SizeCapExceeded { vertices, cap });
    }
    let labels: Vec<Vec<usize>> = subsets::lex_subsets(n, k).collect();
    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    let mut scratch: Vec<usize> = Vec::with_capacity(k);
    for (r, subset) in labels.iter().enumerate() {
        for (pos, &a) in subset.iter().enumerate() {
            for &(b, sign) in g.neighbors(a) {
                if subset.binary_search(&b).is_ok() {
                    continue;
                }
                // B = subset − {a} + {b}, kept sorted.
                scratch.clear();
                scratch.extend(subset.iter().take(pos).copied());
                scratch.extend(subset.iter().skip(pos + 1).copied());
                let ins = scratch.partition_point(|&x| x < b);
                scratch.insert(ins, b);
                let rb = usize::try_from(subsets::rank(n, &scratch)).expect("rank fits usize");
                if rb > r {
                    edges.push((r + 1, rb + 1, sign));
                }
            }
        }
    }
    let graph = SignedGraph::new(labels.len(), &edges).expect("token edges are simple by construction");
    Ok(TokenGraph {
        base_n: n,
        k,
        graph,
        labels,
    })
}

/// Lift a switching on the base graph to the token graph: the lifted sign of
/// a subset A is the product of the vertex signs over A, so switching the
/// base by `s` and then taking F_k equals taking F_k and switching by the
/// lift.
pub fn lift_switching(s: &SwitchingVector, k: usize) -> Result<SwitchingVector, TokenError> {
    let n = s.len();
    check_k(n, k)?;
    let lifted = subsets::lex_subsets(n, k)
        .map(|subset| {
            subset
                .iter()
                .fold(Sign::Plus, |acc, &v| acc.mul(s.get(v)))
        })
        .collect();
    Ok(SwitchingVector::from_signs(lifted))
}

/// The (k1, k2) binomial inclusion matrix on n points: rows are k2-subsets,
/// columns k1-subsets (both in lexicographic order), entry 1 when the column
/// subset is contained in the row subset, else 0. Requires 1 ≤ k1 < k2 ≤ n−1.
pub fn binomial_matrix(n: usize, k1: usize, k2: usize) -> Result<ExactMatrix, TokenError> {
    check_k(n, k1)?;
    check_k(n, k2)?;
    if k1 >= k2 {
        return Err(TokenError::KOutOfRange {
            k: k1,
            n,
            min: 1,
            max: k2.saturating_sub(1),
        });
    }
    let rows: Vec<Vec<usize>> = subsets::lex_subsets(n, k2).collect();
    let cols: Vec<Vec<usize>> = subsets::lex_subsets(n, k1).collect();
    let mut m = ExactMatrix::zeros(rows.len(), cols.len());
    for (i, a) in rows.iter().enumerate() {
        for (j, x) in cols.iter().enumerate() {
            if x.iter().all(|v| a.binary_search(v).is_ok()) {
                m.set(i, j, num::BigInt::from(1));
            }
        }
    }
    Ok(m)
}

/// The signed binomial matrix of a balanced graph: the inclusion matrix
/// conjugated by the lifted balancing switchings, entry (A, X) =
/// s_{k2}(A) · [X ⊆ A] · s_{k1}(X). Satisfies B · L_{k1} = L_{k2} · B for
/// the signed Laplacians of F_{k1}(g) and F_{k2}(g).
pub fn signed_binomial_matrix(
    g: &SignedGraph,
    k1: usize,
    k2: usize,
) -> Result<ExactMatrix, TokenError> {
    let s = match g.balance_check() {
        BalanceCertificate::Balanced(s) => s,
        BalanceCertificate::Unbalanced(_) => return Err(TokenError::NotBalanced),
    };
    let mut m = binomial_matrix(g.n(), k1, k2)?;
    let s1 = lift_switching(&s, k1)?;
    let s2 = lift_switching(&s, k2)?;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j).is_zero() {
                continue;
            }
            let sign = s2.get(i + 1).mul(s1.get(j + 1));
            m.set(i, j, num::BigInt::from(sign.value()));
        }
    }
    Ok(m)
}

/// Expected edge count of F_k(Γ) split by sign:
/// C(n−2, k−1) · (m⁺, m⁻) of the base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TokenEdgeCounts {
    pub positive: u128,
    pub negative: u128,
}

pub fn expected_token_edge_counts(g: &SignedGraph, k: usize) -> Result<TokenEdgeCounts, TokenError> {
    check_k(g.n(), k)?;
    let factor = subsets::binomial(g.n() - 2, k - 1);
    Ok(TokenEdgeCounts {
        positive: factor * g.m_pos() as u128,
        negative: factor * g.m_neg() as u128,
    })
}
