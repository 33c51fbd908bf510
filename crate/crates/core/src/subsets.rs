//! k-subsets of {1, …, n} in lexicographic order, with O(n)-time ranking and
//! unranking. The lexicographic order on sorted tuples (for n = 4, k = 2:
//! {1,2}, {1,3}, {1,4}, {2,3}, {2,4}, {3,4}) is the vertex order used for
//! token graphs and binomial inclusion matrices throughout the crate.

/// Binomial coefficient C(n, k) as a u128. Panics on overflow, which cannot
/// happen for the subset sizes this crate guards (C(n, k) ≤ 200 000 vertices).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((n - k + i) as u128)
            .expect("binomial coefficient overflow")
            / i as u128;
    }
    acc
}

/// C(n, k) as a usize; panics if it does not fit.
pub fn binomial_usize(n: usize, k: usize) -> usize {
    usize::try_from(binomial(n, k)).expect("binomial coefficient exceeds usize")
}

/// Zero-based lexicographic rank of a sorted k-subset of {1, …, n}.
pub fn rank(n: usize, subset: &[usize]) -> u128 {
    let k = subset.len();
    debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(subset.iter().all(|&x| 1 <= x && x <= n));
    let mut r: u128 = 0;
    let mut prev = 0;
    for (i, &a) in subset.iter().enumerate() {
        for x in (prev + 1)..a {
            r += binomial(n - x, k - i - 1);
        }
        prev = a;
    }
    r
}

/// The sorted k-subset of {1, …, n} with the given zero-based lexicographic
/// rank. Inverse of [`rank`].
pub fn unrank(n: usize, k: usize, mut r: u128) -> Vec<usize> {
    debug_assert!(r < binomial(n, k));
    let mut subset = Vec::with_capacity(k);
    let mut x = 1;
    for i in 0..k {
        loop {
            let block = binomial(n - x, k - i - 1);
            if r < block {
                break;
            }
            r -= block;
            x += 1;
        }
        subset.push(x);
        x += 1;
    }
    subset
}

/// Iterator over all k-subsets of {1, …, n} in lexicographic order.
pub fn lex_subsets(n: usize, k: usize) -> LexSubsets {
    LexSubsets {
        n,
        k,
        next: if k <= n { Some((1..=k).collect()) } else { None },
    }
}

pub struct LexSubsets {
    n: usize,
    k: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for LexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        // Successor: bump the rightmost entry that can still grow, then make
        // the tail consecutive.
        let mut succ = current.clone();
        let mut j = self.k;
        while j > 0 {
            if succ[j - 1] < self.n - (self.k - j) {
                succ[j - 1] += 1;
                for t in j..self.k {
                    succ[t] = succ[t - 1] + 1;
                }
                self.next = Some(succ);
                break;
            }
            j -= 1;
        }
        Some(current)
    }
}
