//! Exhaustive enumeration of small Git graphs and cyclariums, written
//! directly from their definitions so that it shares nothing with the
//! counting recurrences or the samplers.

use super::OracleError;
use crate::cyclarium::{Cyclarium, CycleVertex};
use crate::graph::{Branch, GitGraph};

pub const GIT_GRAPH_LIMIT: usize = 12;
pub const CYCLARIUM_LIMIT: usize = 10;

/// Canonical encodings of an exhaustively enumerated class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub n: usize,
    pub k: usize,
    pub f: Option<usize>,
    pub items: Vec<Vec<u8>>,
}

impl EnumerationResult {
    pub fn cardinality(&self) -> usize {
        self.items.len()
    }

    pub fn contains(&self, encoding: &[u8]) -> bool {
        self.items.iter().any(|e| e == encoding)
    }
}

fn guard(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    Ok(())
}

/// Every Git graph with `n` vertices and `k` on the main branch, each once.
pub fn all_git_graphs(n: usize, k: usize) -> Result<Vec<GitGraph>, OracleError> {
    guard(n, GIT_GRAPH_LIMIT)?;
    let mut out = Vec::new();
    if k > n || (k == 0 && n > 0) {
        return Ok(out);
    }
    let mut branches = Vec::new();
    extend(k, 2, n - k, &mut branches, &mut out);
    Ok(out)
}

// Decides whether a branch merges into main vertex `end`, then recurses.
fn extend(
    k: usize,
    end: usize,
    whites: usize,
    branches: &mut Vec<Branch>,
    out: &mut Vec<GitGraph>,
) {
    if end > k {
        if whites == 0 {
            out.push(GitGraph::from_parts(k, branches.clone()));
        }
        return;
    }
    extend(k, end + 1, whites, branches, out);
    for start in 1..end {
        for length in 1..=whites {
            branches.push(Branch::new(start, end, length));
            extend(k, end + 1, whites - length, branches, out);
            branches.pop();
        }
    }
}

pub fn enumerate_git_graphs(
    n: usize,
    k: usize,
    f: Option<usize>,
) -> Result<EnumerationResult, OracleError> {
    let items = all_git_graphs(n, k)?
        .into_iter()
        .filter(|g| f.is_none_or(|f| g.free_count() == f))
        .map(|g| g.canonical_encode().expect("enumerated graphs are valid"))
        .collect();
    Ok(EnumerationResult { n, k, f, items })
}

/// Every cyclarium with `n` vertices and `k` labels.
pub fn all_cyclariums(n: usize, k: usize) -> Result<Vec<Cyclarium>, OracleError> {
    guard(n, CYCLARIUM_LIMIT)?;
    let mut out = Vec::new();
    if k > n {
        return Ok(out);
    }
    if k == 0 {
        if n == 0 {
            out.push(Cyclarium::new(Vec::new()).expect("empty cyclarium"));
        }
        return Ok(out);
    }
    let whites = n - k;
    for perm in permutations(k) {
        let cycles = cycles_of(&perm);
        let chained = k - cycles.len();
        // Non-maximum labels in increasing order receive the parts.
        let mut carriers: Vec<usize> = cycles
            .iter()
            .flat_map(|c| {
                let max = *c.iter().max().unwrap();
                c.iter().copied().filter(move |&l| l != max)
            })
            .collect();
        carriers.sort_unstable();
        for parts in compositions(whites, chained) {
            let mut chain = vec![0usize; k + 1];
            for (&label, &len) in carriers.iter().zip(&parts) {
                chain[label] = len;
            }
            let c = cycles
                .iter()
                .map(|cycle| {
                    cycle
                        .iter()
                        .map(|&l| CycleVertex::new(l, chain[l]))
                        .collect()
                })
                .collect();
            out.push(Cyclarium::new(c).expect("enumerated cyclariums are valid"));
        }
    }
    Ok(out)
}

pub fn enumerate_cyclariums(
    n: usize,
    k: usize,
    f: Option<usize>,
) -> Result<EnumerationResult, OracleError> {
    let items = all_cyclariums(n, k)?
        .into_iter()
        .filter(|c| f.is_none_or(|f| c.cycle_count() == f))
        .map(|c| c.canonical_encode())
        .collect();
    Ok(EnumerationResult { n, k, f, items })
}

/// All permutations of `1..=k` as images `perm[i - 1] = σ(i)`.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=k).collect();
    permute(&mut current, 0, &mut out);
    out
}

fn permute(v: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at == v.len() {
        out.push(v.clone());
        return;
    }
    for i in at..v.len() {
        v.swap(at, i);
        permute(v, at + 1, out);
        v.swap(at, i);
    }
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len() + 1];
    let mut cycles = Vec::new();
    for s in 1..=perm.len() {
        let mut cycle = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = perm[x - 1];
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    cycles
}

/// All compositions of `m` into `p` positive parts.
fn compositions(m: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(p);
    fn go(m: usize, p: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p == 0 {
            if m == 0 {
                out.push(parts.clone());
            }
            return;
        }
        for first in 1..=m.saturating_sub(p - 1) {
            parts.push(first);
            go(m - first, p - 1, parts, out);
            parts.pop();
        }
    }
    go(m, p, &mut parts, &mut out);
    out
}
