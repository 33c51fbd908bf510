//! Executable checkers for the structural identities of signed token
//! graphs. Each function constructs both sides of one claim on a concrete
//! instance and reports pass/fail together with a certificate carrying
//! enough data to re-check the verdict independently.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{GraphError, Sign, SignedGraph, SwitchingVector};
use crate::linalg::{
    char_poly, commute, eigenvalues_symmetric, poly_divides, ExactMatrix, ExactPolynomial,
    LinalgError,
};
use crate::measures;
use crate::subsets;
use crate::token::{
    expected_token_edge_counts, lift_switching, signed_binomial_matrix, token_graph, TokenError,
};

/// Guards for the cycle-lift walk construction, which enumerates every
/// simple cycle and every off-cycle token placement.
pub const CYCLE_LIFT_MAX_N: usize = 7;
pub const CYCLE_LIFT_MAX_K: usize = 3;

/// Absolute tolerance for eigenvalue statements; algebraic identities are
/// checked exactly.
pub const EIGENVALUE_TOL: f64 = 1e-9;

/// Errors from the verifiers.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{what} = {value} exceeds the supported limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

/// Outcome of one verifier run on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Stable identifier of the claim being checked.
    pub claim_id: &'static str,
    /// Human-readable description of the instance.
    pub instance: String,
    /// True only when the claimed identity held.
    pub passed: bool,
    /// Claim-specific payload sufficient to re-check the verdict.
    pub certificate: Value,
}

fn describe(g: &SignedGraph) -> String {
    format!("n={} m={} (m+={}, m-={})", g.n(), g.m(), g.m_pos(), g.m_neg())
}

/// Check that F_k has C(n−2, k−1)·m⁺ positive and C(n−2, k−1)·m⁻ negative
/// edges.
pub fn verify_edge_counts(g: &SignedGraph, k: usize) -> Result<VerificationReport, VerifyError> {
    let expected = expected_token_edge_counts(g, k)?;
    let tg = token_graph(g, k)?;
    let actual_pos = tg.graph().m_pos() as u128;
    let actual_neg = tg.graph().m_neg() as u128;
    let passed = actual_pos == expected.positive && actual_neg == expected.negative;
    Ok(VerificationReport {
        claim_id: "token-edge-counts",
        instance: format!("{} k={k}", describe(g)),
        passed,
        certificate: json!({
            "expected_positive": expected.positive.to_string(),
            "expected_negative": expected.negative.to_string(),
            "actual_positive": actual_pos.to_string(),
            "actual_negative": actual_neg.to_string(),
        }),
    })
}

/// The admissible token counts k' on a p-cycle when lifting to F_k on n
/// vertices: at least one token on the cycle, at most min(k, p−1), and
/// enough room off the cycle for the other k − k' tokens.
pub fn admissible_on_cycle_tokens(n: usize, k: usize, p: usize) -> Vec<usize> {
    let lo = 1.max((k + p).saturating_sub(n));
    let hi = k.min(p - 1);
    (lo..=hi).collect()
}

/// For every simple cycle of `g` and every admissible on-cycle token count,
/// build the token rotation walk of the lifting argument for each placement
/// of the off-cycle tokens: the top token walks forward to just behind the
/// bottom token, each remaining token advances to its successor's old
/// position, and the first-moved token closes the rotation. Assert each walk
/// is a p-cycle of F_k with the base cycle's sign and that placements yield
/// C(n−p, k−k') pairwise distinct cycles.
pub fn verify_cycle_lift(g: &SignedGraph, k: usize) -> Result<VerificationReport, VerifyError> {
    let n = g.n();
    if n > CYCLE_LIFT_MAX_N {
        return Err(VerifyError::TooLarge {
            what: "vertex count",
            value: n,
            limit: CYCLE_LIFT_MAX_N,
        });
    }
    if k > CYCLE_LIFT_MAX_K {
        return Err(VerifyError::TooLarge {
            what: "token count",
            value: k,
            limit: CYCLE_LIFT_MAX_K,
        });
    }
    let tg = token_graph(g, k)?;
    let mut passed = true;
    let mut checks = Vec::new();
    for cycle in g.simple_cycles() {
        let p = cycle.len();
        let cycle_sign = g
            .cycle_sign(&cycle)
            .expect("enumerated cycles are closed walks in g");
        let off_cycle: Vec<usize> = (1..=n).filter(|v| !cycle.contains(v)).collect();
        for k_prime in admissible_on_cycle_tokens(n, k, p) {
            let expected = subsets::binomial(n - p, k - k_prime);
            let mut distinct: BTreeSet<Vec<u128>> = BTreeSet::new();
            let mut all_walks_ok = true;
            for placement in subsets::lex_subsets(off_cycle.len(), k - k_prime) {
                let resting: BTreeSet<usize> =
                    placement.iter().map(|&i| off_cycle[i - 1]).collect();
                // Tokens start on cycle positions 0..k'; each move shifts one
                // token from position t to t+1 (mod p).
                let mut moves: Vec<(usize, usize)> = Vec::with_capacity(p);
                for t in (k_prime - 1)..(p - 1) {
                    moves.push((t, t + 1));
                }
                for j in (0..k_prime - 1).rev() {
                    moves.push((j, j + 1));
                }
                moves.push((p - 1, 0));
                let start: BTreeSet<usize> = resting
                    .iter()
                    .copied()
                    .chain((0..k_prime).map(|i| cycle[i]))
                    .collect();
                let mut current = start.clone();
                let mut visited: Vec<Vec<usize>> = vec![start.iter().copied().collect()];
                let mut sign_product = Sign::Plus;
                let mut walk_ok = true;
                for &(from, to) in &moves {
                    let (u, v) = (cycle[from], cycle[to]);
                    // A legal move slides one token from an occupied vertex
                    // to an unoccupied one.
                    if !(current.remove(&u) && current.insert(v)) {
                        walk_ok = false;
                        break;
                    }
                    let a = visited.last().expect("walk is non-empty");
                    let b: Vec<usize> = current.iter().copied().collect();
                    let va = tg.vertex_of(a);
                    let vb = tg.vertex_of(&b);
                    match tg.graph().sign_of(va, vb) {
                        Some(s) if Some(s) == g.sign_of(u, v) => sign_product = sign_product.mul(s),
                        _ => {
                            walk_ok = false;
                            break;
                        }
                    }
                    visited.push(b);
                }
                if walk_ok {
                    let closed = visited.last() == visited.first();
                    let steps: HashSet<&Vec<usize>> = visited[..visited.len() - 1].iter().collect();
                    let distinct_vertices = steps.len() == p;
                    if closed && distinct_vertices && sign_product == cycle_sign {
                        let mut ranks: Vec<u128> = visited[..visited.len() - 1]
                            .iter()
                            .map(|s| subsets::rank(n, s))
                            .collect();
                        ranks.sort_unstable();
                        distinct.insert(ranks);
                    } else {
                        all_walks_ok = false;
                    }
                } else {
                    all_walks_ok = false;
                }
            }
            let ok = all_walks_ok && distinct.len() as u128 == expected;
            passed &= ok;
            checks.push(json!({
                "cycle": cycle,
                "sign": cycle_sign.token(),
                "k_prime": k_prime,
                "expected_cycles": expected.to_string(),
                "distinct_cycles": distinct.len(),
                "ok": ok,
            }));
        }
    }
    Ok(VerificationReport {
        claim_id: "cycle-lift",
        instance: format!("{} k={k}", describe(g)),
        passed,
        certificate: json!({ "cycles_checked": checks.len(), "checks": checks }),
    })
}

/// Check that switching before taking tokens equals switching the token
/// graph by the lifted vector: F_k(Γ^U) = F_k(Γ)^{U_k}.
pub fn verify_token_switch(
    g: &SignedGraph,
    u: &SwitchingVector,
    k: usize,
) -> Result<VerificationReport, VerifyError> {
    let switched_first = token_graph(&g.switch(u)?, k)?;
    let lifted = lift_switching(u, k)?;
    let switched_after = token_graph(g, k)?.graph().switch(&lifted)?;
    let passed = *switched_first.graph() == switched_after;
    let signs: String = u.signs().iter().map(|s| s.token().chars().next().unwrap()).collect();
    Ok(VerificationReport {
        claim_id: "token-switch",
        instance: format!("{} k={k} u={signs}", describe(g)),
        passed,
        certificate: json!({
            "lifted_switching": lifted
                .signs()
                .iter()
                .map(|s| s.value())
                .collect::<Vec<i64>>(),
            "equal": passed,
        }),
    })
}

/// Check the exact intertwining B·L_{k1} = L_{k2}·B for a balanced graph,
/// with B the signed binomial matrix.
pub fn verify_intertwining(
    g: &SignedGraph,
    k1: usize,
    k2: usize,
) -> Result<VerificationReport, VerifyError> {
    let b = signed_binomial_matrix(g, k1, k2)?;
    let l1 = ExactMatrix::laplacian(token_graph(g, k1)?.graph());
    let l2 = ExactMatrix::laplacian(token_graph(g, k2)?.graph());
    let lhs = b.mul(&l1)?;
    let rhs = l2.mul(&b)?;
    let passed = lhs == rhs;
    Ok(VerificationReport {
        claim_id: "laplacian-intertwining",
        instance: format!("{} k1={k1} k2={k2}", describe(g)),
        passed,
        certificate: json!({
            "binomial_rows": b.rows(),
            "binomial_cols": b.cols(),
            "equal": passed,
        }),
    })
}

/// Check that the Laplacian characteristic polynomial of a balanced graph
/// divides that of its k-token graph (spectrum containment).
pub fn verify_spectrum_containment(
    g: &SignedGraph,
    k: usize,
) -> Result<VerificationReport, VerifyError> {
    if !g.is_balanced() {
        return Err(VerifyError::Token(TokenError::NotBalanced));
    }
    let p1 = char_poly(&ExactMatrix::laplacian(g));
    let pk = char_poly(&ExactMatrix::laplacian(token_graph(g, k)?.graph()));
    let division = poly_divides(&pk, &p1)?;
    Ok(VerificationReport {
        claim_id: "laplacian-containment",
        instance: format!("{} k={k}", describe(g)),
        passed: division.divides,
        certificate: json!({
            "base_char_poly": p1.to_string(),
            "token_char_poly": pk.to_string(),
            "divides": division.divides,
            "quotient": division.quotient.map(|q| q.to_string()),
        }),
    })
}

/// x·(x − n)^{n−1}: the Laplacian characteristic polynomial of any balanced
/// signed complete graph on n vertices.
fn complete_laplacian_poly(n: usize) -> ExactPolynomial {
    let x = ExactPolynomial::from_i64(&[0, 1]);
    let shifted = ExactPolynomial::from_i64(&[-(n as i64), 1]);
    let mut acc = x;
    for _ in 0..n.saturating_sub(1) {
        acc = acc.mul(&shifted);
    }
    acc
}

/// Check the four complement statements for a balanced graph: the signed
/// complement is balanced; L + L̄ is the Laplacian of a balanced signed
/// complete graph (char poly x(x−n)^{n−1}); L and L̄ commute exactly; and
/// the ascending eigenvalues pair up as λ_i + λ̄_{n−i} = n for i ≥ 1.
pub fn verify_complement(g: &SignedGraph) -> Result<VerificationReport, VerifyError> {
    let n = g.n();
    let complement = g.signed_complement()?;
    let balanced = complement.is_balanced();
    let l = ExactMatrix::laplacian(g);
    let lbar = ExactMatrix::laplacian(&complement);
    let sum_poly = char_poly(&l.add(&lbar)?);
    let expected_poly = complete_laplacian_poly(n);
    let sum_ok = sum_poly == expected_poly;
    let commute_ok = commute(&l, &lbar)?;
    let ev = eigenvalues_symmetric(&l, EIGENVALUE_TOL)?;
    let ev_bar = eigenvalues_symmetric(&lbar, EIGENVALUE_TOL)?;
    let (a, b) = (ev.eigenvalues, ev_bar.eigenvalues);
    let mut max_defect = 0f64;
    for i in 1..n {
        let defect = (a[i] + b[n - i] - n as f64).abs();
        max_defect = max_defect.max(defect);
    }
    let pairing_ok = max_defect <= EIGENVALUE_TOL;
    let passed = balanced && sum_ok && commute_ok && pairing_ok;
    Ok(VerificationReport {
        claim_id: "complement",
        instance: describe(g),
        passed,
        certificate: json!({
            "complement_balanced": balanced,
            "sum_char_poly": sum_poly.to_string(),
            "expected_char_poly": expected_poly.to_string(),
            "laplacians_commute": commute_ok,
            "max_pairing_defect": max_defect,
        }),
    })
}

/// Laplacian spectrum of the Johnson graph J(n, k), ascending: eigenvalue
/// j(n+1−j) with multiplicity C(n,j) − C(n,j−1) for j = 0..k. The
/// multiplicity formula requires k ≤ n−k; J(n, k) ≅ J(n, n−k) covers the
/// rest.
fn johnson_laplacian_spectrum(n: usize, k: usize) -> Vec<f64> {
    let k = k.min(n - k);
    let mut values = Vec::new();
    for j in 0..=k {
        let eigenvalue = (j * (n + 1 - j)) as f64;
        let mult = subsets::binomial(n, j) - if j == 0 { 0 } else { subsets::binomial(n, j - 1) };
        values.extend(std::iter::repeat(eigenvalue).take(mult as usize));
    }
    values.sort_by(f64::total_cmp);
    values
}

/// Check that the token Laplacians of a balanced graph and of its signed
/// complement commute exactly, and that the spectrum of their sum is the
/// Johnson Laplacian spectrum.
pub fn verify_token_complement(
    g: &SignedGraph,
    k: usize,
) -> Result<VerificationReport, VerifyError> {
    let n = g.n();
    let complement = g.signed_complement()?;
    let lk = ExactMatrix::laplacian(token_graph(g, k)?.graph());
    let lk_bar = ExactMatrix::laplacian(token_graph(&complement, k)?.graph());
    let commute_ok = commute(&lk, &lk_bar)?;
    let sum_spectrum = eigenvalues_symmetric(&lk.add(&lk_bar)?, EIGENVALUE_TOL)?;
    let expected = johnson_laplacian_spectrum(n, k);
    let computed = &sum_spectrum.eigenvalues;
    let mut max_defect = f64::INFINITY;
    if computed.len() == expected.len() {
        max_defect = computed
            .iter()
            .zip(&expected)
            .map(|(c, e)| (c - e).abs())
            .fold(0f64, f64::max);
    }
    let spectrum_ok = max_defect <= EIGENVALUE_TOL;
    let passed = commute_ok && spectrum_ok;
    Ok(VerificationReport {
        claim_id: "token-complement",
        instance: format!("{} k={k}", describe(g)),
        passed,
        certificate: json!({
            "laplacians_commute": commute_ok,
            "expected_sum_spectrum": expected,
            "computed_sum_spectrum": computed,
            "max_defect": if max_defect.is_finite() { max_defect } else { -1.0 },
        }),
    })
}

/// A random balanced signed graph: a random underlying graph with a random
/// switching of the all-positive signature.
fn random_balanced<R: Rng>(rng: &mut R, n: usize) -> SignedGraph {
    let underlying = measures::random_signed_graph(rng, n).underlying();
    let s = measures::random_switching(rng, n);
    underlying.switch(&s).expect("switching sized to the graph")
}

/// Run all seven verifiers on seeded random instances (n ≤ 7, k ≤ 3; the
/// Laplacian identities use balanced instances). Each trial draws from its
/// own deterministic stream, so reports do not depend on scheduling.
pub fn verification_sweep(seed: u64, trials: usize) -> Result<Vec<VerificationReport>, VerifyError> {
    let mut reports = Vec::with_capacity(trials * 7);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64 + 1);
        let n = rng.gen_range(3..=CYCLE_LIFT_MAX_N);
        let g = measures::random_signed_graph(&mut rng, n);
        let k = rng.gen_range(1..=CYCLE_LIFT_MAX_K.min(n - 1));
        reports.push(verify_edge_counts(&g, k)?);
        reports.push(verify_cycle_lift(&g, k)?);
        let u = measures::random_switching(&mut rng, n);
        reports.push(verify_token_switch(&g, &u, k)?);
        let balanced = random_balanced(&mut rng, n);
        let k2 = rng.gen_range(2..=(n - 1).min(3));
        let k1 = rng.gen_range(1..k2);
        reports.push(verify_intertwining(&balanced, k1, k2)?);
        reports.push(verify_spectrum_containment(&balanced, k2)?);
        reports.push(verify_complement(&balanced)?);
        reports.push(verify_token_complement(&balanced, k)?);
    }
    Ok(reports)
}
