//! A small gallery of named signed graphs with independently pinned
//! invariants. These are the worked examples used by the documentation,
//! the command-line demos in `graphs/`, and the acceptance suite; each
//! constructor documents the exact frustration index and unbalance level
//! of its instance.

use crate::graph::{Sign, SignedGraph};

/// The balanced paw: a triangle {2,3,4} with the pendant vertex 1 attached
/// at 2, signed 12+, 23−, 24−, 34+. Balanced (switch {3,4} to make all
/// edges positive), so both its frustration index and unbalance level are
/// zero, as are those of all its token graphs.
pub fn balanced_paw() -> SignedGraph {
    SignedGraph::new(
        4,
        &[
            (1, 2, Sign::Plus),
            (2, 3, Sign::Minus),
            (2, 4, Sign::Minus),
            (3, 4, Sign::Plus),
        ],
    )
    .expect("valid edge list")
}

/// The paw with exactly one negative edge, {2,3}. The negative triangle
/// makes it unbalanced: frustration index 1, unbalance level 1/3, and its
/// 2-token graph has unbalance level 22/39.
pub fn paw_single_negative() -> SignedGraph {
    SignedGraph::new(
        4,
        &[
            (1, 2, Sign::Plus),
            (2, 3, Sign::Minus),
            (2, 4, Sign::Plus),
            (3, 4, Sign::Plus),
        ],
    )
    .expect("valid edge list")
}

/// K_5 with negative edges {1,2}, {1,4}, {2,3}: frustration index 3 and
/// unbalance level 124/149 ≈ 0.8322. Its 2-token graph has unbalance level
/// 600548/608609 ≈ 0.9868.
pub fn dense_k5() -> SignedGraph {
    let mut edges = Vec::new();
    for u in 1..=5usize {
        for v in (u + 1)..=5 {
            let sign = match (u, v) {
                (1, 2) | (1, 4) | (2, 3) => Sign::Minus,
                _ => Sign::Plus,
            };
            edges.push((u, v, sign));
        }
    }
    SignedGraph::new(5, &edges).expect("valid edge list")
}

/// K_{2,3} with parts {1,2} and {3,4,5} plus the extra edge {3,4}, signed
/// with negative edges {1,3} and {2,3}: deleting {3,4} balances it, so the
/// frustration index is 1; the unbalance level is 152/261 ≈ 0.5824 and the
/// 2-token unbalance level is 249552/321191 ≈ 0.7770.
pub fn biclique_plus_edge() -> SignedGraph {
    SignedGraph::new(
        5,
        &[
            (1, 3, Sign::Minus),
            (1, 4, Sign::Plus),
            (1, 5, Sign::Plus),
            (2, 3, Sign::Minus),
            (2, 4, Sign::Plus),
            (2, 5, Sign::Plus),
            (3, 4, Sign::Plus),
        ],
    )
    .expect("valid edge list")
}

/// A sign-symmetric graph on 8 vertices: a diamond body {1,2,3,6} (missing
/// edge {1,6}) carrying two triangle wings {1,4,5} and {6,7,8}, with
/// negative edges {2,6} and {4,5}. Its adjacency spectrum {0², ±1, ±√5²}
/// is symmetric about the origin, its frustration index is 2, and its
/// unbalance level is 706/1023. Token graphs inherit the sign symmetry;
/// the 28-vertex 2-token graph has unbalance level
/// 1207426567618449571/1216092377313656965 ≈ 0.9929.
pub fn winged_diamond() -> SignedGraph {
    SignedGraph::new(
        8,
        &[
            (1, 2, Sign::Plus),
            (1, 3, Sign::Plus),
            (1, 4, Sign::Plus),
            (1, 5, Sign::Plus),
            (2, 3, Sign::Plus),
            (2, 6, Sign::Minus),
            (3, 6, Sign::Plus),
            (4, 5, Sign::Minus),
            (6, 7, Sign::Plus),
            (6, 8, Sign::Plus),
            (7, 8, Sign::Plus),
        ],
    )
    .expect("valid edge list")
}

/// All gallery graphs with their stable identifiers, in the order the
/// `graphs/` directory lists them.
pub fn all() -> Vec<(&'static str, SignedGraph)> {
    vec![
        ("balanced-paw", balanced_paw()),
        ("paw-one-negative", paw_single_negative()),
        ("dense-k5", dense_k5()),
        ("biclique-plus-edge", biclique_plus_edge()),
        ("winged-diamond", winged_diamond()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ExactRational;
    use crate::measures::{frustration_index, unbalance_level};
    use crate::token::token_graph;

    fn ell(g: &SignedGraph) -> ExactRational {
        unbalance_level(g).ell
    }

    fn ell_two_tokens(g: &SignedGraph) -> ExactRational {
        ell(token_graph(g, 2).unwrap().graph())
    }

    #[test]
    fn balanced_paw_is_balanced_everywhere() {
        let g = balanced_paw();
        assert!(g.is_balanced());
        assert_eq!(frustration_index(&g).unwrap().index, 0);
        assert_eq!(ell(&g), ExactRational::from_ratio(0, 1));
        assert_eq!(ell_two_tokens(&g), ExactRational::from_ratio(0, 1));
    }

    #[test]
    fn paw_single_negative_levels() {
        let g = paw_single_negative();
        assert_eq!(frustration_index(&g).unwrap().index, 1);
        assert_eq!(ell(&g), ExactRational::from_ratio(1, 3));
        assert_eq!(ell_two_tokens(&g), ExactRational::from_ratio(22, 39));
    }

    #[test]
    fn dense_k5_levels() {
        let g = dense_k5();
        assert_eq!(g.m(), 10);
        assert_eq!(g.m_neg(), 3);
        assert_eq!(frustration_index(&g).unwrap().index, 3);
        assert_eq!(ell(&g), ExactRational::from_ratio(124, 149));
        assert_eq!(ell_two_tokens(&g), ExactRational::from_ratio(600_548, 608_609));
    }

    #[test]
    fn biclique_plus_edge_levels() {
        let g = biclique_plus_edge();
        let degrees: Vec<usize> = (1..=5).map(|v| g.degree(v)).collect();
        assert_eq!(degrees, vec![3, 3, 3, 3, 2]);
        assert_eq!(frustration_index(&g).unwrap().index, 1);
        assert_eq!(ell(&g), ExactRational::from_ratio(152, 261));
        assert_eq!(ell_two_tokens(&g), ExactRational::from_ratio(249_552, 321_191));
    }

    #[test]
    fn winged_diamond_levels() {
        let g = winged_diamond();
        let mut degrees: Vec<usize> = (1..=8).map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![2, 2, 2, 2, 3, 3, 4, 4]);
        assert_eq!(frustration_index(&g).unwrap().index, 2);
        assert_eq!(ell(&g), ExactRational::from_ratio(706, 1023));
        let f2 = ell_two_tokens(&g);
        assert_eq!(
            f2,
            ExactRational::from_ratio(1_207_426_567_618_449_571, 1_216_092_377_313_656_965)
        );
    }

    #[test]
    fn gallery_files_match_constructors() {
        for (name, g) in all() {
            let path = format!("{}/../../graphs/{name}.txt", env!("CARGO_MANIFEST_DIR"));
            let text = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("missing gallery file {path}: {e}"));
            let parsed = SignedGraph::parse(&text)
                .unwrap_or_else(|e| panic!("unparsable gallery file {path}: {e}"));
            assert_eq!(parsed, g, "gallery file {name} drifted from constructor");
        }
    }
}
