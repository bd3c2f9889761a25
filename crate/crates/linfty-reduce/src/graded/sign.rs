//! Koszul signs, permutations, shuffles and set partitions.
//!
//! Permutations are 0-based image vectors: `perm[i]` is the index of the factor
//! placed at position `i`.

use crate::error::{Error, Result};

pub type Permutation = Vec<usize>;

pub fn identity(n: usize) -> Permutation {
    (0..n).collect()
}

pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// `(sigma ∘ tau)(i) = sigma[tau[i]]`.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Permutation {
    tau.iter().map(|&t| sigma[t]).collect()
}

pub fn inverse(perm: &[usize]) -> Permutation {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Sign ε with `γ_σ(1) ∨ … ∨ γ_σ(n) = ε γ_1 ∨ … ∨ γ_n` for shifted degrees `degrees`.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> Result<i32> {
    if perm.len() != degrees.len() {
        return Err(Error::Argument(format!("permutation of length {} with {} degrees", perm.len(), degrees.len())));
    }
    if !is_permutation(perm) {
        return Err(Error::Argument(format!("{perm:?} is not a permutation")));
    }
    Ok(koszul_sign_unchecked(perm, degrees))
}

pub(crate) fn koszul_sign_unchecked(perm: &[usize], degrees: &[i32]) -> i32 {
    let mut odd_swaps = 0usize;
    for a in 0..perm.len() {
        if degrees[perm[a]] & 1 == 0 {
            continue;
        }
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && degrees[perm[b]] & 1 != 0 {
                odd_swaps += 1;
            }
        }
    }
    if odd_swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `(k, l)`-shuffles: increasing on the first `k` and on the last `l` positions.
/// Ordered lexicographically by the first block.
pub fn shuffles(k: usize, l: usize) -> Vec<Permutation> {
    let n = k + l;
    combinations(n, k)
        .into_iter()
        .map(|first| {
            let mut perm = first.clone();
            perm.extend((0..n).filter(|i| !first.contains(i)));
            perm
        })
        .collect()
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All of S_n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut perm = identity(n);
    loop {
        out.push(perm.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

/// Partitions of `0..n` into exactly `j` nonempty blocks, blocks sorted internally
/// and ordered by their minima.
pub fn set_partitions(n: usize, j: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, n: usize, j: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            if blocks.len() == j {
                out.push(blocks.clone());
            }
            return;
        }
        if blocks.len() + (n - i) < j {
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, j, blocks, out);
            blocks[b].pop();
        }
        if blocks.len() < j {
            blocks.push(vec![i]);
            rec(i + 1, n, j, blocks, out);
            blocks.pop();
        }
    }
    rec(0, n, j, &mut blocks, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
