//! Cyclariums and their bijection onto Git graphs.
//!
//! A cyclarium is a permutation of the labels `1..=k`, written as a set of
//! cycles, where every label except the maximum of its own cycle carries a
//! non-empty chain of white vertices. Cyclariums with `n` vertices, `k` black
//! vertices and `f` cycles correspond one-to-one with Git graphs with `n`
//! vertices, `k` black vertices and `f` free vertices.

use thiserror::Error;

use crate::graph::{write_varint, Branch, GitGraph};

/// One black vertex of a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycleVertex {
    pub label: usize,
    /// White chain length; zero exactly for the cycle maximum.
    pub chain: usize,
}

impl CycleVertex {
    pub fn new(label: usize, chain: usize) -> Self {
        CycleVertex { label, chain }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CyclariumError {
    #[error("cycle {0} is empty")]
    EmptyCycle(usize),
    #[error("labels are not a permutation of 1..={k}")]
    NotAPermutation { k: usize },
    #[error("label {label} is its cycle's maximum but carries a chain of length {chain}")]
    ChainOnMaximum { label: usize, chain: usize },
    #[error("label {label} is not its cycle's maximum but carries no chain")]
    MissingChain { label: usize },
}

/// A set of labeled cycles carrying white chains.
///
/// Each cycle lists its vertices in cyclic order: the successor of the last
/// entry is the first one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclarium {
    cycles: Vec<Vec<CycleVertex>>,
}

impl Cyclarium {
    pub fn new(cycles: Vec<Vec<CycleVertex>>) -> Result<Self, CyclariumError> {
        let c = Cyclarium { cycles };
        c.validate()?;
        Ok(c)
    }

    pub fn cycles(&self) -> &[Vec<CycleVertex>] {
        &self.cycles
    }

    /// Number of black vertices.
    pub fn k(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn size(&self) -> usize {
        self.k() + self.cycles.iter().flatten().map(|v| v.chain).sum::<usize>()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn validate(&self) -> Result<(), CyclariumError> {
        let k = self.k();
        let mut seen = vec![false; k + 1];
        for (i, cycle) in self.cycles.iter().enumerate() {
            let max = cycle
                .iter()
                .map(|v| v.label)
                .max()
                .ok_or(CyclariumError::EmptyCycle(i))?;
            for v in cycle {
                if v.label == 0 || v.label > k || std::mem::replace(&mut seen[v.label], true) {
                    return Err(CyclariumError::NotAPermutation { k });
                }
                if v.label == max && v.chain != 0 {
                    return Err(CyclariumError::ChainOnMaximum {
                        label: v.label,
                        chain: v.chain,
                    });
                }
                if v.label != max && v.chain == 0 {
                    return Err(CyclariumError::MissingChain { label: v.label });
                }
            }
        }
        Ok(())
    }

    /// Breaks every cycle just before its maximum and concatenates the
    /// resulting paths by increasing maximum. Returns the labels and chain
    /// lengths in main-branch order.
    pub fn linearize(&self) -> (Vec<usize>, Vec<usize>) {
        let mut paths: Vec<(usize, &[CycleVertex])> = self
            .cycles
            .iter()
            .map(|c| {
                let at = (0..c.len()).max_by_key(|&i| c[i].label).unwrap_or(0);
                (at, c.as_slice())
            })
            .collect();
        paths.sort_unstable_by_key(|&(at, c)| c[at].label);
        let k = self.k();
        let mut labels = Vec::with_capacity(k);
        let mut chains = Vec::with_capacity(k);
        for (at, c) in paths {
            for v in c[at..].iter().chain(&c[..at]) {
                labels.push(v.label);
                chains.push(v.chain);
            }
        }
        (labels, chains)
    }

    /// Maps this cyclarium onto the corresponding Git graph.
    pub fn to_git_graph(&self) -> GitGraph {
        let (labels, chains) = self.linearize();
        git_graph_from_paths(&labels, &chains)
    }

    /// Injective encoding: `k`, then each cycle rotated to start at its
    /// maximum, cycles ordered by maximum, as `len, (label, chain)*`.
    pub fn canonical_encode(&self) -> Vec<u8> {
        let (labels, chains) = self.linearize();
        let mut out = Vec::new();
        write_varint(&mut out, labels.len() as u64);
        // Path boundaries are where a new running maximum starts.
        let mut start = 0;
        while start < labels.len() {
            let mut end = start + 1;
            while end < labels.len() && chains[end] != 0 {
                end += 1;
            }
            write_varint(&mut out, (end - start) as u64);
            for i in start..end {
                write_varint(&mut out, labels[i] as u64);
                write_varint(&mut out, chains[i] as u64);
            }
            start = end;
        }
        out
    }
}

/// Converts a linearized cyclarium (labels and chain lengths by main-branch
/// position) into a Git graph.
///
/// Processing positions right to left and relabeling after each step is the
/// same as attaching the chain at position `j` to the rank of its label
/// among the labels at positions `1..=j`; a Fenwick tree gives those ranks
/// in one left-to-right pass.
pub fn git_graph_from_paths(labels: &[usize], chains: &[usize]) -> GitGraph {
    debug_assert_eq!(labels.len(), chains.len());
    let k = labels.len();
    let mut seen = Fenwick::new(k);
    let mut branches = Vec::new();
    for (j0, (&label, &chain)) in labels.iter().zip(chains).enumerate() {
        seen.add(label);
        if chain > 0 {
            let rank = seen.prefix(label);
            let end = j0 + 1;
            // The cycle maximum sits left of `end` with a larger label.
            assert!(rank < end, "rank {rank} not below position {end}");
            branches.push(Branch::new(rank, end, chain));
        }
    }
    GitGraph::from_parts(k, branches)
}

struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(len: usize) -> Self {
        Fenwick {
            tree: vec![0; len + 1],
        }
    }

    fn add(&mut self, mut i: usize) {
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    fn prefix(&self, mut i: usize) -> usize {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i] as usize;
            i &= i - 1;
        }
        s
    }
}
