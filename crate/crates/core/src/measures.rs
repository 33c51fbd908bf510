//! The two exact unbalance measures of a signed graph and their empirical
//! relationship on token graphs.
//!
//! * The frustration index l(Γ): the minimum number of negative edges over
//!   all switchings (equivalently, the fewest edges whose deletion leaves a
//!   balanced graph). Computed exactly by enumerating all 2^(n−c) switchings
//!   with one vertex per component pinned to +1, walking the space in Gray
//!   code order with bit-parallel edge masks.
//! * The spectral unbalance level ℓ(Γ) ∈ [0, 1]: an exact rational built
//!   from the traces of powers of the signed and unsigned adjacency
//!   matrices; 0 exactly when Γ is balanced.
//!
//! The module also checks the sandwich l(Γ) ≤ l(F_k(Γ)) ≤ C(n−2,k−1)·l(Γ)
//! and provides a seeded random explorer for three open monotonicity
//! questions relating the two measures on token graphs.

use num::bigint::BigInt;
use num::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Sign, SignedGraph, SwitchingVector};
use crate::linalg::{power_traces, ExactMatrix, ExactRational};
use crate::subsets;
use crate::token::{self, TokenError};

/// Default guard for frustration enumeration (2^(n−1) switchings).
pub const FRUSTRATION_MAX_N: usize = 24;

/// Default guard for token-graph frustration in bound checks: C(n,k) ≤ 16.
pub const BOUNDS_MAX_TOKEN_VERTICES: usize = 16;

/// Errors raised by the measure computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error("instance too large: {what} = {value} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error(transparent)]
    Token(#[from] TokenError),
}

/// Outcome of an exact frustration computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrustrationResult {
    /// The frustration index l(Γ).
    pub index: usize,
    /// A switching achieving exactly `index` negative edges; ties broken by
    /// the lexicographically smallest switching vector (+1 < −1).
    pub witness: SwitchingVector,
    /// The negative edges of the switched graph; deleting them from the
    /// original graph leaves a balanced graph.
    pub removed_edges: Vec<(usize, usize)>,
}

/// Exact frustration index under the default size guard (n ≤ 24).
pub fn frustration_index(g: &SignedGraph) -> Result<FrustrationResult, MeasureError> {
    frustration_index_with_limit(g, FRUSTRATION_MAX_N)
}

/// Exact frustration index, enumerating 2^(n−c) switchings (one vertex per
/// component pinned to +1). `max_n` overrides the default guard.
pub fn frustration_index_with_limit(
    g: &SignedGraph,
    max_n: usize,
) -> Result<FrustrationResult, MeasureError> {
    let n = g.n();
    if n > max_n {
        return Err(MeasureError::TooLarge {
            what: "vertex count for frustration enumeration",
            value: n as u128,
            limit: max_n as u128,
        });
    }
    let m = g.m();
    let words = m.div_ceil(64).max(1);
    // Bitmask over the sorted edge list, one bit per edge.
    let mut incidence = vec![vec![0u64; words]; n + 1];
    let mut negmask = vec![0u64; words];
    for (j, e) in g.edges().iter().enumerate() {
        incidence[e.u][j / 64] |= 1 << (j % 64);
        incidence[e.v][j / 64] |= 1 << (j % 64);
        if e.sign == Sign::Minus {
            negmask[j / 64] |= 1 << (j % 64);
        }
    }
    // Free vertices: everything except the smallest vertex of each component.
    let mut free: Vec<usize> = Vec::new();
    for comp in g.components() {
        free.extend(comp.into_iter().skip(1));
    }
    assert!(free.len() < 64, "free vertex count bounded by the guard");

    let popcount = |mask: &[u64]| -> u32 { mask.iter().map(|w| w.count_ones()).sum() };
    // Lexicographic comparison of flip sets over free vertices in ascending
    // vertex order; a vertex not flipped (+1) precedes one flipped (−1).
    let lex_smaller = |a: u64, b: u64| -> bool {
        let d = a ^ b;
        d != 0 && a & (1 << d.trailing_zeros()) == 0
    };

    let mut cut = negmask.clone();
    let mut best_count = popcount(&cut);
    let mut best_flips: u64 = 0;
    let mut flips: u64 = 0;
    let steps: u64 = 1u64 << free.len();
    for t in 1..steps {
        let idx = t.trailing_zeros() as usize;
        let v = free[idx];
        for w in 0..words {
            cut[w] ^= incidence[v][w];
        }
        flips ^= 1 << idx;
        let count = popcount(&cut);
        if count < best_count || (count == best_count && lex_smaller(flips, best_flips)) {
            best_count = count;
            best_flips = flips;
        }
    }

    let mut signs = vec![Sign::Plus; n];
    for (idx, &v) in free.iter().enumerate() {
        if best_flips >> idx & 1 == 1 {
            signs[v - 1] = Sign::Minus;
        }
    }
    let witness = SwitchingVector::from_signs(signs);
    let switched = g.switch(&witness).expect("witness length matches");
    let removed_edges: Vec<(usize, usize)> = switched
        .edges()
        .iter()
        .filter(|e| e.sign == Sign::Minus)
        .map(|e| (e.u, e.v))
        .collect();
    debug_assert_eq!(removed_edges.len(), best_count as usize);
    Ok(FrustrationResult {
        index: best_count as usize,
        witness,
        removed_edges,
    })
}

/// The exact power-trace table behind an unbalance level: traces of the
/// signed adjacency matrix and of the underlying (all-positive) one, for
/// exponents 0..=r_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceTable {
    pub signed: Vec<BigInt>,
    pub unsigned: Vec<BigInt>,
}

impl Serialize for TraceTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let as_strings = |v: &[BigInt]| -> Vec<String> { v.iter().map(BigInt::to_string).collect() };
        let mut s = serializer.serialize_struct("TraceTable", 2)?;
        s.serialize_field("signed", &as_strings(&self.signed))?;
        s.serialize_field("unsigned", &as_strings(&self.unsigned))?;
        s.end()
    }
}

/// The spectral unbalance level with its two defining partial levels and the
/// exact trace table they were computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnbalanceResult {
    pub ell_n_minus_1: ExactRational,
    pub ell_n: ExactRational,
    /// ℓ(Γ) = max(ℓ_{n−1}, ℓ_n), exact.
    pub ell: ExactRational,
    pub trace_table: TraceTable,
}

fn level_from_traces(unsigned: &[BigInt], signed: &[BigInt], m: usize) -> ExactRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::zero();
    for r in 0..=m {
        num += &unsigned[r] - &signed[r];
        den += &unsigned[r] + signed[r].abs();
    }
    if den.is_zero() {
        // Only possible for the empty graph on zero vertices.
        return ExactRational::zero();
    }
    ExactRational::new(num, den)
}

/// The level-m unbalance ℓ_m(Γ): an exact rational in [0, 1] comparing
/// signed and unsigned closed-walk counts up to length m. The r = 0 terms
/// contribute 0 to the numerator and 2n to the denominator.
pub fn unbalance_level_m(g: &SignedGraph, m: usize) -> ExactRational {
    let signed = power_traces(&ExactMatrix::adjacency(g), m);
    let unsigned = power_traces(&ExactMatrix::adjacency(&g.underlying()), m);
    level_from_traces(&unsigned, &signed, m)
}

/// The unbalance level ℓ(Γ) = max(ℓ_{n−1}(Γ), ℓ_n(Γ)), exact.
pub fn unbalance_level(g: &SignedGraph) -> UnbalanceResult {
    let n = g.n();
    let signed = power_traces(&ExactMatrix::adjacency(g), n);
    let unsigned = power_traces(&ExactMatrix::adjacency(&g.underlying()), n);
    let ell_n = level_from_traces(&unsigned, &signed, n);
    let ell_n_minus_1 = if n == 0 {
        ExactRational::zero()
    } else {
        level_from_traces(&unsigned, &signed, n - 1)
    };
    let ell = ell_n_minus_1.clone().max(ell_n.clone());
    UnbalanceResult {
        ell_n_minus_1,
        ell_n,
        ell,
        trace_table: TraceTable { signed, unsigned },
    }
}

/// Both sides of the frustration sandwich for a token graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: usize,
    pub base_frustration: usize,
    pub token_frustration: usize,
    /// C(n−2, k−1) · l(Γ).
    pub upper_bound: u128,
    /// l(Γ) ≤ l(F_k(Γ)).
    pub lower_holds: bool,
    /// l(F_k(Γ)) ≤ C(n−2, k−1) · l(Γ).
    pub upper_holds: bool,
}

impl BoundsReport {
    pub fn both_hold(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Check l(Γ) ≤ l(F_k(Γ)) ≤ C(n−2,k−1)·l(Γ) exactly, under the default
/// token-size guard C(n,k) ≤ 16.
pub fn check_frustration_bounds(g: &SignedGraph, k: usize) -> Result<BoundsReport, MeasureError> {
    check_frustration_bounds_with_limit(g, k, BOUNDS_MAX_TOKEN_VERTICES)
}

/// Bound check with an explicit cap on the token-graph vertex count.
pub fn check_frustration_bounds_with_limit(
    g: &SignedGraph,
    k: usize,
    max_token_vertices: usize,
) -> Result<BoundsReport, MeasureError> {
    let n = g.n();
    let tok = token::token_graph_with_cap(g, k, max_token_vertices).map_err(|e| match e {
        TokenError::SizeCapExceeded { vertices, cap } => MeasureError::TooLarge {
            what: "token graph vertex count for frustration enumeration",
            value: vertices,
            limit: cap as u128,
        },
        other => MeasureError::Token(other),
    })?;
    let base = frustration_index(g)?;
    let token_frustration =
        frustration_index_with_limit(tok.graph(), max_token_vertices.max(FRUSTRATION_MAX_N))?;
    let factor = subsets::binomial(n - 2, k - 1);
    let upper_bound = factor * base.index as u128;
    Ok(BoundsReport {
        n,
        k,
        base_frustration: base.index,
        token_frustration: token_frustration.index,
        upper_bound,
        lower_holds: base.index <= token_frustration.index,
        upper_holds: (token_frustration.index as u128) <= upper_bound,
    })
}

// ---------------------------------------------------------------------------
// Seeded random instances.
// ---------------------------------------------------------------------------

/// Random signed graph: Erdős–Rényi underlying graph with edge probability
/// 1/2, each present edge signed by an independent fair coin.
pub fn random_signed_graph<R: Rng>(rng: &mut R, n: usize) -> SignedGraph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            if rng.gen_bool(0.5) {
                let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                edges.push((u, v, sign));
            }
        }
    }
    SignedGraph::new(n, &edges).expect("sampled edges are simple")
}

/// Resample the signature of `g` uniformly, keeping its underlying graph.
pub fn random_signature<R: Rng>(rng: &mut R, g: &SignedGraph) -> SignedGraph {
    let edges: Vec<_> = g
        .edges()
        .iter()
        .map(|e| {
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            (e.u, e.v, sign)
        })
        .collect();
    SignedGraph::new(g.n(), &edges).expect("same underlying graph")
}

/// Uniform random switching vector on n vertices.
pub fn random_switching<R: Rng>(rng: &mut R, n: usize) -> SwitchingVector {
    SwitchingVector::from_signs(
        (0..n)
            .map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
            .collect(),
    )
}

/// Uniform random permutation of 1..=n, as a relabelling map old → new.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    perm
}

// ---------------------------------------------------------------------------
// Explorer for the three open monotonicity statements.
// ---------------------------------------------------------------------------

/// Explorer guard: token unbalance levels are computed only when the token
/// graph has at most this many vertices.
pub const EXPLORE_UNBALANCE_TOKEN_CAP: usize = 36;

/// One logged violation, with everything needed to re-check it.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub statement: u8,
    pub k: usize,
    /// Edge list of Γ.
    pub base: String,
    /// Edge list of Γ′ (same underlying graph), for the two-graph statements.
    pub other: Option<String>,
    /// Exact values that witness the violation.
    pub detail: String,
}

/// Tallies for one statement across all trials.
#[derive(Debug, Clone, Default, Serialize)]
pub struct StatementStats {
    /// What the statement asserts (for human-readable reports).
    pub claim: String,
    pub evaluated: usize,
    pub held: usize,
    pub violated: usize,
    /// Trials where the statement could not be evaluated under the size
    /// guards (or k ≥ n).
    pub skipped: usize,
    /// At most [`MAX_STORED_COUNTEREXAMPLES`] fully-certified violations.
    pub counterexamples: Vec<Counterexample>,
}

pub const MAX_STORED_COUNTEREXAMPLES: usize = 5;

impl StatementStats {
    fn record(&mut self, outcome: Option<(bool, Option<Counterexample>)>) {
        match outcome {
            None => self.skipped += 1,
            Some((true, _)) => {
                self.evaluated += 1;
                self.held += 1;
            }
            Some((false, ce)) => {
                self.evaluated += 1;
                self.violated += 1;
                if let Some(ce) = ce {
                    if self.counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
                        self.counterexamples.push(ce);
                    }
                }
            }
        }
    }
}

/// The largest unbalance level seen during an exploration, with the instance
/// achieving it.
#[derive(Debug, Clone, Serialize)]
pub struct MaxEllObserved {
    pub value: ExactRational,
    /// Edge list of the achieving graph.
    pub instance: String,
    /// Which graph achieved it ("base" or "token").
    pub role: String,
}

/// Full exploration report.
#[derive(Debug, Clone, Serialize)]
pub struct ExploreReport {
    pub trials: usize,
    pub seed: u64,
    pub n_max: usize,
    pub k: usize,
    /// ℓ(Γ) ≤ ℓ(F_k(Γ)).
    pub statement1: StatementStats,
    /// l(Γ) ≤ l(Γ′) ⇒ l(F_k(Γ)) ≤ l(F_k(Γ′)).
    pub statement2: StatementStats,
    /// l(Γ) ≤ l(Γ′) ⇒ ℓ(F_k(Γ)) ≤ ℓ(F_k(Γ′)).
    pub statement3: StatementStats,
    /// Highest unbalance level seen anywhere during the run (the measure is
    /// conjectured to approach but never specified to reach 1).
    pub max_ell_observed: Option<MaxEllObserved>,
}

impl ExploreReport {
    pub fn total_violations(&self) -> usize {
        self.statement1.violated + self.statement2.violated + self.statement3.violated
    }
}

struct TrialOutcome {
    st1: Option<(bool, Option<Counterexample>)>,
    st2: Option<(bool, Option<Counterexample>)>,
    st3: Option<(bool, Option<Counterexample>)>,
    max_ell: Option<MaxEllObserved>,
}

fn better_max(a: Option<MaxEllObserved>, b: Option<MaxEllObserved>) -> Option<MaxEllObserved> {
    match (a, b) {
        (None, x) => x,
        (x, None) => x,
        (Some(x), Some(y)) => Some(if y.value > x.value { y } else { x }),
    }
}

fn run_trial(trial: usize, n_max: usize, k: usize, seed: u64) -> TrialOutcome {
    let mut outcome = TrialOutcome {
        st1: None,
        st2: None,
        st3: None,
        max_ell: None,
    };
    if n_max < k + 1 {
        return outcome;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64 + 1);
    let n = rng.gen_range((k + 1)..=n_max);
    let gamma = random_signed_graph(&mut rng, n);
    let gamma2 = random_signature(&mut rng, &gamma);

    let ell = unbalance_level(&gamma).ell;
    let ell2 = unbalance_level(&gamma2).ell;
    let base_text = gamma.to_edge_list(&[]);
    let other_text = gamma2.to_edge_list(&[]);
    let mut max_ell = Some(MaxEllObserved {
        value: ell.clone().max(ell2.clone()),
        instance: if ell2 > ell {
            other_text.clone()
        } else {
            base_text.clone()
        },
        role: "base".into(),
    });

    // Token graphs (shared by the statements), under the unbalance guard.
    let tokens = if subsets::binomial(n, k) <= EXPLORE_UNBALANCE_TOKEN_CAP as u128 {
        let t1 = token::token_graph(&gamma, k).expect("within cap");
        let t2 = token::token_graph(&gamma2, k).expect("within cap");
        Some((t1, t2))
    } else {
        None
    };

    let st1 = tokens.as_ref().map(|(t1, _)| {
        let ell_token = unbalance_level(t1.graph()).ell;
        max_ell = better_max(
            max_ell.take(),
            Some(MaxEllObserved {
                value: ell_token.clone(),
                instance: t1.graph().to_edge_list(&[]),
                role: "token".into(),
            }),
        );
        let holds = ell <= ell_token;
        let ce = (!holds).then(|| Counterexample {
            trial,
            statement: 1,
            k,
            base: base_text.clone(),
            other: None,
            detail: format!("ell(base) = {ell}, ell(token) = {ell_token}"),
        });
        (holds, ce)
    });

    // The two conditional statements, oriented so the hypothesis holds:
    // order the pair by base frustration.
    let frustration_ok = n <= FRUSTRATION_MAX_N
        && subsets::binomial(n, k) <= BOUNDS_MAX_TOKEN_VERTICES as u128;
    let (mut st2, mut st3) = (None, None);
    if frustration_ok {
        let l1 = frustration_index(&gamma).expect("guarded").index;
        let l2 = frustration_index(&gamma2).expect("guarded").index;
        let ((ga, la, ta_text), (gb, lb, tb_text)) = if l1 <= l2 {
            (
                (&gamma, l1, &base_text),
                (&gamma2, l2, &other_text),
            )
        } else {
            (
                (&gamma2, l2, &other_text),
                (&gamma, l1, &base_text),
            )
        };
        let ta = token::token_graph(ga, k).expect("within cap");
        let tb = token::token_graph(gb, k).expect("within cap");
        let lfa = frustration_index(ta.graph()).expect("guarded").index;
        let lfb = frustration_index(tb.graph()).expect("guarded").index;
        let holds2 = lfa <= lfb;
        st2 = Some((
            holds2,
            (!holds2).then(|| Counterexample {
                trial,
                statement: 2,
                k,
                base: ta_text.clone(),
                other: Some(tb_text.clone()),
                detail: format!(
                    "l(base) = {la} <= l(other) = {lb}, but l(token base) = {lfa} > l(token other) = {lfb}"
                ),
            }),
        ));
        let ellfa = unbalance_level(ta.graph()).ell;
        let ellfb = unbalance_level(tb.graph()).ell;
        let holds3 = ellfa <= ellfb;
        st3 = Some((
            holds3,
            (!holds3).then(|| Counterexample {
                trial,
                statement: 3,
                k,
                base: ta_text.clone(),
                other: Some(tb_text.clone()),
                detail: format!(
                    "l(base) = {la} <= l(other) = {lb}, but ell(token base) = {ellfa} > ell(token other) = {ellfb}"
                ),
            }),
        ));
    }

    outcome.st1 = st1;
    outcome.st2 = st2;
    outcome.st3 = st3;
    outcome.max_ell = max_ell;
    outcome
}

/// Run `trials` seeded random trials of the three monotonicity statements.
/// Each trial samples an underlying graph on a random n ∈ [k+1, n_max] and
/// two independent signatures on it. Trials use independent, deterministic
/// random streams, so the report does not depend on scheduling.
pub fn explore_problem_4_5(trials: usize, n_max: usize, k: usize, seed: u64) -> ExploreReport {
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|trial| run_trial(trial, n_max, k, seed))
        .collect();

    let mut report = ExploreReport {
        trials,
        seed,
        n_max,
        k,
        statement1: StatementStats {
            claim: "unbalance level of the base graph is at most that of its token graph".into(),
            ..Default::default()
        },
        statement2: StatementStats {
            claim: "frustration order of two signatures is preserved by the token construction"
                .into(),
            ..Default::default()
        },
        statement3: StatementStats {
            claim: "frustration order of two signatures implies unbalance-level order of their token graphs"
                .into(),
            ..Default::default()
        },
        max_ell_observed: None,
    };
    for outcome in outcomes {
        report.statement1.record(outcome.st1);
        report.statement2.record(outcome.st2);
        report.statement3.record(outcome.st3);
        report.max_ell_observed = better_max(report.max_ell_observed.take(), outcome.max_ell);
    }
    report
}
