//! Git feature-branch graphs.
//!
//! A graph is a main branch of `k` black vertices, numbered `1..=k` from the
//! root, plus feature branches. Each branch is a non-empty path of white
//! vertices that leaves the main branch at `start` and merges back at `end`.
//! At most one branch merges into any main vertex.

use std::fmt;

use thiserror::Error;

/// A feature branch, positions 1-indexed on the main branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub start: usize,
    pub end: usize,
    /// Number of white vertices on the branch.
    pub length: usize,
}

impl Branch {
    pub fn new(start: usize, end: usize, length: usize) -> Self {
        Branch { start, end, length }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} (len {})", self.start, self.end, self.length)
    }
}

/// The first invariant a graph violates.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("branch {index} starts at position 0 (positions are 1-indexed)")]
    StartOutOfRange { index: usize },
    #[error("branch {index} starts at {start}, not before its end {end}")]
    StartNotBeforeEnd {
        index: usize,
        start: usize,
        end: usize,
    },
    #[error("branch {index} ends at {end}, beyond the main branch of length {k}")]
    EndOutOfRange { index: usize, end: usize, k: usize },
    #[error("branch {index} has no white vertices")]
    EmptyBranch { index: usize },
    #[error("two branches merge into main vertex {end}")]
    DuplicateEnd { end: usize },
}

/// A Git feature-branch graph.
///
/// Graphs built by this crate keep `branches` sorted by `end`; [`GitGraph::new`]
/// establishes that order. [`GitGraph::from_parts`] stores whatever it is given
/// so that malformed input can be inspected with [`GitGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GitGraph {
    k: usize,
    branches: Vec<Branch>,
}

impl GitGraph {
    /// Validated constructor. Branches are reordered by end position.
    pub fn new(k: usize, mut branches: Vec<Branch>) -> Result<Self, Violation> {
        branches.sort_unstable_by_key(|b| b.end);
        let g = GitGraph { k, branches };
        g.validate()?;
        Ok(g)
    }

    /// Unchecked constructor.
    pub fn from_parts(k: usize, branches: Vec<Branch>) -> Self {
        GitGraph { k, branches }
    }

    /// The unique graph of size 0.
    pub fn empty() -> Self {
        GitGraph {
            k: 0,
            branches: Vec::new(),
        }
    }

    /// A main branch of `k` vertices with no feature branches.
    pub fn chain(k: usize) -> Self {
        GitGraph {
            k,
            branches: Vec::new(),
        }
    }

    /// Number of black (main-branch) vertices.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn into_branches(self) -> Vec<Branch> {
        self.branches
    }

    /// Total vertex count.
    pub fn size(&self) -> usize {
        self.k + self.white_count()
    }

    pub fn white_count(&self) -> usize {
        self.branches.iter().map(|b| b.length).sum()
    }

    /// Number of main vertices no branch merges into.
    pub fn free_count(&self) -> usize {
        self.k - self.branches.len()
    }

    /// Free-vertex flags indexed by position - 1.
    pub fn free_mask(&self) -> Vec<bool> {
        let mut free = vec![true; self.k];
        for b in &self.branches {
            free[b.end - 1] = false;
        }
        free
    }

    /// Checks every structural invariant and reports the first one broken.
    pub fn validate(&self) -> Result<(), Violation> {
        let mut seen = vec![false; self.k + 1];
        for (index, b) in self.branches.iter().enumerate() {
            if b.start == 0 {
                return Err(Violation::StartOutOfRange { index });
            }
            if b.start >= b.end {
                return Err(Violation::StartNotBeforeEnd {
                    index,
                    start: b.start,
                    end: b.end,
                });
            }
            if b.end > self.k {
                return Err(Violation::EndOutOfRange {
                    index,
                    end: b.end,
                    k: self.k,
                });
            }
            if b.length == 0 {
                return Err(Violation::EmptyBranch { index });
            }
            if std::mem::replace(&mut seen[b.end], true) {
                return Err(Violation::DuplicateEnd { end: b.end });
            }
        }
        Ok(())
    }

    /// Injective byte encoding of a valid graph: `k` followed by the
    /// `(end, start, length)` triples in end order, each as an unsigned
    /// LEB128 varint.
    pub fn canonical_encode(&self) -> Result<Vec<u8>, Violation> {
        self.validate()?;
        let mut sorted;
        let branches = if self.branches.windows(2).all(|w| w[0].end < w[1].end) {
            &self.branches
        } else {
            sorted = self.branches.clone();
            sorted.sort_unstable_by_key(|b| b.end);
            &sorted
        };
        let mut out = Vec::with_capacity(1 + 3 * branches.len());
        write_varint(&mut out, self.k as u64);
        for b in branches {
            write_varint(&mut out, b.end as u64);
            write_varint(&mut out, b.start as u64);
            write_varint(&mut out, b.length as u64);
        }
        Ok(out)
    }
}

pub(crate) fn write_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}
