//! Switching equivalence and switching isomorphism.
//!
//! Two signatures of the same underlying graph are switching-equivalent
//! exactly when they agree after switching a spanning forest positive; the
//! remaining co-tree signs are a complete class invariant, so a graph with
//! cycle rank r = m − n + c has 2^r switching classes. Switching isomorphism
//! additionally quotients by automorphisms of the underlying graph; it is
//! decided here by canonical labeling (iterated neighborhood-color refinement
//! with individualization backtracking) followed by lexicographic
//! minimization of the forest-normalized sign vector over all relabelings
//! that reach the canonical form.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::graph::{Sign, SignedGraph, SwitchingVector};
use crate::linalg::ExactRational;
use crate::measures::{self, MeasureError};

/// Largest vertex count accepted by [`canonical_signature`] and everything
/// built on it. The backtracking search is exponential on graphs whose
/// automorphism group is huge (complete or empty graphs near the cap), but
/// it is fast on the structured graphs and 2-token graphs this crate
/// studies, all of which stay within 45 vertices.
pub const CANONICAL_MAX_VERTICES: usize = 45;

/// Largest cycle rank m − n + c accepted by
/// [`enumerate_switching_iso_classes`], which walks all 2^rank classes.
pub const ENUMERATION_MAX_CYCLE_RANK: usize = 20;

/// Errors from equivalence decisions and class enumeration.
#[derive(Debug, Error)]
pub enum EquivalenceError {
    /// The two graphs do not share vertex count and edge set.
    #[error("the graphs have different underlying graphs")]
    UnderlyingMismatch,
    /// An input exceeds a size guard.
    #[error("{what} = {value} exceeds the supported limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    /// A per-class invariant computation failed.
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// The switching that makes every edge of a depth-first spanning forest
/// positive, together with the forest's edges (as (low, high) pairs, sorted).
///
/// The forest is deterministic: roots are the lowest vertex of each
/// component, and the search descends to the lowest unvisited neighbor
/// first. Both outputs depend only on the underlying graph plus the edge
/// signs along the forest.
pub fn forest_normalization(g: &SignedGraph) -> (SwitchingVector, Vec<(usize, usize)>) {
    let n = g.n();
    let mut label = vec![None::<Sign>; n + 1];
    let mut forest = Vec::new();
    for root in 1..=n {
        if label[root].is_some() {
            continue;
        }
        label[root] = Some(Sign::Plus);
        let mut stack = vec![(root, 0usize)];
        while let Some(frame) = stack.last_mut() {
            let (v, i) = (frame.0, frame.1);
            if i >= g.degree(v) {
                stack.pop();
                continue;
            }
            frame.1 += 1;
            let (w, sign) = g.neighbors(v)[i];
            if label[w].is_none() {
                let lv = label[v].expect("vertices on the stack are labeled");
                label[w] = Some(lv.mul(sign));
                forest.push((v.min(w), v.max(w)));
                stack.push((w, 0));
            }
        }
    }
    forest.sort_unstable();
    let signs = (1..=n)
        .map(|v| label[v].expect("every vertex is reached"))
        .collect();
    (SwitchingVector::from_signs(signs), forest)
}

/// The complete switching-class invariant of a signed graph: the spanning
/// forest used for normalization and the signs of the non-forest edges
/// after the forest has been switched positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotreeSignature {
    forest: Vec<(usize, usize)>,
    cotree_signs: Vec<Sign>,
}

impl CotreeSignature {
    /// Normalize `g` and read off its co-tree signs.
    pub fn of(g: &SignedGraph) -> CotreeSignature {
        let (s, forest) = forest_normalization(g);
        let normalized = g.switch(&s).expect("switching sized to the graph");
        let forest_set: BTreeSet<(usize, usize)> = forest.iter().copied().collect();
        let cotree_signs = normalized
            .edges()
            .iter()
            .filter(|e| !forest_set.contains(&(e.u, e.v)))
            .map(|e| e.sign)
            .collect();
        CotreeSignature {
            forest,
            cotree_signs,
        }
    }

    /// Forest edges as (low, high) pairs, sorted.
    pub fn forest(&self) -> &[(usize, usize)] {
        &self.forest
    }

    /// Signs of non-forest edges in sorted edge order, after normalization.
    pub fn cotree_signs(&self) -> &[Sign] {
        &self.cotree_signs
    }
}

/// Decide switching equivalence of two signatures of the same underlying
/// graph. Returns a switching vector `s` with `g1.switch(&s) == g2` when the
/// graphs are equivalent, `None` otherwise.
pub fn switching_equivalent(
    g1: &SignedGraph,
    g2: &SignedGraph,
) -> Result<Option<SwitchingVector>, EquivalenceError> {
    if !g1.same_underlying(g2) {
        return Err(EquivalenceError::UnderlyingMismatch);
    }
    let (s1, _) = forest_normalization(g1);
    let (s2, _) = forest_normalization(g2);
    let n1 = g1.switch(&s1).expect("switching sized to the graph");
    let n2 = g2.switch(&s2).expect("switching sized to the graph");
    if n1 == n2 {
        // switch(g1, s1) = switch(g2, s2) pulls back to g2 = switch(g1, s1·s2).
        let s = s1.compose(&s2);
        debug_assert_eq!(&g1.switch(&s).expect("sized"), g2);
        Ok(Some(s))
    } else {
        Ok(None)
    }
}

/// 0-based adjacency lists of the underlying graph.
fn adjacency0(g: &SignedGraph) -> Vec<Vec<usize>> {
    (1..=g.n())
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w - 1).collect())
        .collect()
}

/// Iterated color refinement: a vertex's new color is its old color plus the
/// multiset of its neighbors' colors; color ids are renumbered 0.. in sorted
/// key order each round until stable.
fn refine_colors(adj: &[Vec<usize>], colors: &mut Vec<usize>) {
    loop {
        let keys: Vec<(usize, Vec<usize>)> = colors
            .iter()
            .enumerate()
            .map(|(v, &c)| {
                let mut around: Vec<usize> = adj[v].iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (c, around)
            })
            .collect();
        let mut order = keys.clone();
        order.sort();
        order.dedup();
        let next: Vec<usize> = keys
            .iter()
            .map(|k| order.binary_search(k).expect("own key is present"))
            .collect();
        if next == *colors {
            return;
        }
        *colors = next;
    }
}

/// Upper-triangle adjacency bits of the graph relabeled by `perm0`
/// (perm0[old] = new, 0-based), row-major over new ids.
fn encode_relabeled(adj: &[Vec<usize>], perm0: &[usize]) -> Vec<u8> {
    let n = adj.len();
    let mut bits = vec![0u8; n * n.saturating_sub(1) / 2];
    let pos = |i: usize, j: usize| i * n - i * (i + 1) / 2 + (j - i - 1);
    for v in 0..n {
        for &w in &adj[v] {
            if w > v {
                let (a, b) = (perm0[v].min(perm0[w]), perm0[v].max(perm0[w]));
                bits[pos(a, b)] = 1;
            }
        }
    }
    bits
}

/// Depth-first individualization-refinement search. At each node the first
/// color class with two or more vertices is split by individualizing each of
/// its members in turn; discrete colorings are leaves. Keeps the minimal
/// encoding and every relabeling that attains it (these relabelings form a
/// coset of the automorphism group of the canonical form).
fn search_canonical(
    adj: &[Vec<usize>],
    mut colors: Vec<usize>,
    best: &mut Option<(Vec<u8>, Vec<Vec<usize>>)>,
) {
    refine_colors(adj, &mut colors);
    let n = adj.len();
    let mut count = vec![0usize; n + 1];
    for &c in &colors {
        count[c] += 1;
    }
    if let Some(cell) = (0..n).find(|&c| count[c] >= 2) {
        for v in 0..n {
            if colors[v] == cell {
                let mut split = colors.clone();
                split[v] = n;
                search_canonical(adj, split, best);
            }
        }
        return;
    }
    let enc = encode_relabeled(adj, &colors);
    match best {
        Some((min_enc, perms)) => match enc.cmp(min_enc) {
            std::cmp::Ordering::Less => *best = Some((enc, vec![colors])),
            std::cmp::Ordering::Equal => perms.push(colors),
            std::cmp::Ordering::Greater => {}
        },
        None => *best = Some((enc, vec![colors])),
    }
}

struct Canonical {
    /// Full canonical byte string: vertex count, underlying encoding, and
    /// the lex-least normalized sign vector.
    signature: Vec<u8>,
    /// A relabeling (perm[v−1] = new id) attaining the lex-least sign vector.
    perm: Vec<usize>,
}

fn canonicalize(g: &SignedGraph) -> Result<Canonical, EquivalenceError> {
    let n = g.n();
    if n > CANONICAL_MAX_VERTICES {
        return Err(EquivalenceError::TooLarge {
            what: "vertex count",
            value: n,
            limit: CANONICAL_MAX_VERTICES,
        });
    }
    let adj = adjacency0(g);
    let mut best = None;
    search_canonical(&adj, vec![0; n], &mut best);
    let (encoding, perms0) = best.expect("the search always reaches a leaf");
    let mut min_signs: Option<(Vec<u8>, Vec<usize>)> = None;
    for p0 in &perms0 {
        let perm: Vec<usize> = p0.iter().map(|&x| x + 1).collect();
        let relabeled = g.relabel(&perm);
        let (s, _) = forest_normalization(&relabeled);
        let normalized = relabeled.switch(&s).expect("switching sized to the graph");
        let bytes: Vec<u8> = normalized
            .edges()
            .iter()
            .map(|e| match e.sign {
                Sign::Plus => b'+',
                Sign::Minus => b'-',
            })
            .collect();
        if min_signs.as_ref().map_or(true, |(b, _)| bytes < *b) {
            min_signs = Some((bytes, perm));
        }
    }
    let (sign_bytes, perm) = min_signs.expect("at least one canonical relabeling");
    let mut signature = format!("n={n};g=").into_bytes();
    signature.extend(encoding.iter().map(|&b| b + b'0'));
    signature.extend_from_slice(b";s=");
    signature.extend_from_slice(&sign_bytes);
    Ok(Canonical { signature, perm })
}

/// Canonical byte string deciding switching isomorphism: two signed graphs
/// get equal strings exactly when one can be mapped to the other by a
/// switching followed by a relabeling.
pub fn canonical_signature(g: &SignedGraph) -> Result<Vec<u8>, EquivalenceError> {
    Ok(canonicalize(g)?.signature)
}

/// A verified witness of switching isomorphism:
/// `g1.switch(&switching).relabel(&permutation) == g2`.
#[derive(Debug, Clone)]
pub struct SwitchingIsoCertificate {
    /// Relabeling with `permutation[v−1]` the new id of vertex v.
    pub permutation: Vec<usize>,
    /// Switching applied before relabeling.
    pub switching: SwitchingVector,
}

fn invert_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (old0, &new) in perm.iter().enumerate() {
        inv[new - 1] = old0 + 1;
    }
    inv
}

/// Produce a verified certificate that `g1` and `g2` are switching
/// isomorphic, or `None` when they are not.
pub fn switching_iso_certificate(
    g1: &SignedGraph,
    g2: &SignedGraph,
) -> Result<Option<SwitchingIsoCertificate>, EquivalenceError> {
    let c1 = canonicalize(g1)?;
    let c2 = canonicalize(g2)?;
    if c1.signature != c2.signature {
        return Ok(None);
    }
    // Both relabelings reach the same canonical signed graph, so sending each
    // g1-vertex to the g2-vertex with the same canonical id aligns the two.
    let inv2 = invert_perm(&c2.perm);
    let perm: Vec<usize> = c1.perm.iter().map(|&new| inv2[new - 1]).collect();
    let aligned = g1.relabel(&perm);
    let s_rel = switching_equivalent(&aligned, g2)?
        .expect("equal canonical signatures imply switching equivalence");
    // Pull the switching back through the relabeling.
    let switching = SwitchingVector::from_signs(
        (1..=g1.n()).map(|v| s_rel.get(perm[v - 1])).collect(),
    );
    let cert = SwitchingIsoCertificate {
        permutation: perm,
        switching,
    };
    assert_eq!(
        g1.switch(&cert.switching)
            .expect("switching sized to the graph")
            .relabel(&cert.permutation),
        *g2,
        "constructed certificate must verify"
    );
    Ok(Some(cert))
}

/// Decide whether `g` is switching isomorphic to its negation, returning a
/// verified certificate when it is.
pub fn is_sign_symmetric(
    g: &SignedGraph,
) -> Result<Option<SwitchingIsoCertificate>, EquivalenceError> {
    switching_iso_certificate(g, &g.negate())
}

/// One switching-isomorphism class of signatures of a fixed underlying
/// graph.
#[derive(Debug, Clone)]
pub struct ClassReport {
    /// The class member whose co-tree sign mask is lexicographically least.
    pub representative: SignedGraph,
    /// Number of switching-equivalence classes merged into this class.
    pub class_size: usize,
    /// Frustration index of the class.
    pub frustration: usize,
    /// Unbalance level of the class.
    pub unbalance: ExactRational,
    /// Display label: a published name when the invariants identify one,
    /// otherwise "class i" in report order.
    pub label: String,
}

impl Serialize for ClassReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ClassReport", 5)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("class_size", &self.class_size)?;
        st.serialize_field("frustration", &self.frustration)?;
        st.serialize_field("unbalance", &self.unbalance)?;
        st.serialize_field("representative", &self.representative.to_edge_list(&[]))?;
        st.end()
    }
}

/// Published names for the six switching-isomorphism classes of the
/// Petersen graph, identified by their (frustration index, unbalance level)
/// pair.
pub fn petersen_class_label(
    frustration: usize,
    unbalance: &ExactRational,
) -> Option<&'static str> {
    const TABLE: [(usize, (i64, i64), &str); 6] = [
        (0, (0, 1), "+P"),
        (1, (752, 2069), "P_1"),
        (2, (5536, 8569), "P_{2,2}"),
        (2, (6904, 10345), "P_{2,3}"),
        (3, (168, 235), "P_{3,2}"),
        (3, (1944, 2821), "P_{3,3}"),
    ];
    TABLE
        .iter()
        .find(|&&(f, (p, q), _)| f == frustration && *unbalance == ExactRational::from_ratio(p, q))
        .map(|&(_, _, name)| name)
}

/// True when `underlying` is isomorphic to the Petersen graph.
fn is_petersen(underlying: &SignedGraph) -> Result<bool, EquivalenceError> {
    if underlying.n() != 10
        || underlying.m() != 15
        || (1..=10).any(|v| underlying.degree(v) != 3)
    {
        return Ok(false);
    }
    let reference = SignedGraph::family(crate::graph::Family::Petersen, 10)
        .expect("the Petersen constructor accepts n = 10");
    Ok(canonical_signature(underlying)? == canonical_signature(&reference.underlying())?)
}

/// Build the signature of `underlying` whose co-tree edges (indices into the
/// sorted edge list) carry the signs encoded by `mask` (bit j set = minus on
/// the j-th co-tree edge); forest edges stay positive.
fn cotree_signed(underlying: &SignedGraph, cotree_idx: &[usize], mask: u64) -> SignedGraph {
    let mut list: Vec<(usize, usize, Sign)> = underlying
        .edges()
        .iter()
        .map(|e| (e.u, e.v, Sign::Plus))
        .collect();
    for (j, &i) in cotree_idx.iter().enumerate() {
        if mask >> j & 1 == 1 {
            list[i].2 = Sign::Minus;
        }
    }
    SignedGraph::new(underlying.n(), &list).expect("same shape as a valid graph")
}

/// Enumerate every switching-isomorphism class of signatures of the
/// underlying graph of `g`: one forest-normalized representative per
/// switching class (2^rank of them), merged under [`canonical_signature`].
/// Classes are sorted by frustration index, then unbalance level; class
/// sizes sum to 2^rank.
pub fn enumerate_switching_iso_classes(
    g: &SignedGraph,
) -> Result<Vec<ClassReport>, EquivalenceError> {
    let underlying = g.underlying();
    let components = underlying.components().len();
    let rank = underlying.m() + components - underlying.n();
    if rank > ENUMERATION_MAX_CYCLE_RANK {
        return Err(EquivalenceError::TooLarge {
            what: "cycle rank",
            value: rank,
            limit: ENUMERATION_MAX_CYCLE_RANK,
        });
    }
    let (_, forest) = forest_normalization(&underlying);
    let forest_set: BTreeSet<(usize, usize)> = forest.into_iter().collect();
    let cotree_idx: Vec<usize> = underlying
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !forest_set.contains(&(e.u, e.v)))
        .map(|(i, _)| i)
        .collect();
    debug_assert_eq!(cotree_idx.len(), rank);
    let keyed: Result<Vec<(u64, Vec<u8>)>, EquivalenceError> = (0..1u64 << rank)
        .into_par_iter()
        .map(|mask| {
            let signed = cotree_signed(&underlying, &cotree_idx, mask);
            Ok((mask, canonical_signature(&signed)?))
        })
        .collect();
    // Indexed parallel collect preserves mask order, so the first mask seen
    // per key is the least one: a deterministic representative.
    let mut classes: BTreeMap<Vec<u8>, (u64, usize)> = BTreeMap::new();
    for (mask, key) in keyed? {
        let entry = classes.entry(key).or_insert((mask, 0));
        entry.1 += 1;
    }
    let mut reports = Vec::with_capacity(classes.len());
    for (least_mask, size) in classes.into_values() {
        let representative = cotree_signed(&underlying, &cotree_idx, least_mask);
        let frustration = measures::frustration_index(&representative)?.index;
        let unbalance = measures::unbalance_level(&representative).ell;
        reports.push(ClassReport {
            representative,
            class_size: size,
            frustration,
            unbalance,
            label: String::new(),
        });
    }
    reports.sort_by(|a, b| {
        (a.frustration, &a.unbalance).cmp(&(b.frustration, &b.unbalance))
    });
    // Published class names exist only for the Petersen graph; everything
    // else is labeled by report position.
    let use_petersen_names = is_petersen(&underlying)?;
    for (i, report) in reports.iter_mut().enumerate() {
        let published = if use_petersen_names {
            petersen_class_label(report.frustration, &report.unbalance)
        } else {
            None
        };
        report.label = published
            .map(str::to_owned)
            .unwrap_or_else(|| format!("class {}", i + 1));
    }
    Ok(reports)
}
