use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Branch, GitGraph, Violation};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed graph JSON: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("graph violates an invariant: {0}")]
    Invalid(#[from] Violation),
    #[error("declared size {declared} but the graph has {actual} vertices")]
    SizeMismatch { declared: usize, actual: usize },
}

// Field order here is the wire order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRecord {
    n: usize,
    k: usize,
    branches: Vec<BranchRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchRecord {
    start: usize,
    end: usize,
    length: usize,
}

/// `{"n":..,"k":..,"branches":[{"start":..,"end":..,"length":..},..]}`, compact,
/// branches in end order, positions 1-indexed.
pub fn serialize_json(g: &GitGraph) -> String {
    let mut branches: Vec<BranchRecord> = g
        .branches()
        .iter()
        .map(|b| BranchRecord {
            start: b.start,
            end: b.end,
            length: b.length,
        })
        .collect();
    branches.sort_unstable_by_key(|b| b.end);
    let record = GraphRecord {
        n: g.size(),
        k: g.k(),
        branches,
    };
    serde_json::to_string(&record).expect("plain integers serialize")
}

pub fn parse_json(text: &str) -> Result<GitGraph, JsonError> {
    let record: GraphRecord = serde_json::from_str(text)?;
    let branches = record
        .branches
        .into_iter()
        .map(|b| Branch::new(b.start, b.end, b.length))
        .collect();
    let g = GitGraph::new(record.k, branches)?;
    if g.size() != record.n {
        return Err(JsonError::SizeMismatch {
            declared: record.n,
            actual: g.size(),
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::all_git_graphs;

    #[test]
    fn worked_example_bytes() {
        let g = GitGraph::new(4, vec![Branch::new(1, 4, 1), Branch::new(1, 2, 1)]).unwrap();
        assert_eq!(
            serialize_json(&g),
            r#"{"n":6,"k":4,"branches":[{"start":1,"end":2,"length":1},{"start":1,"end":4,"length":1}]}"#
        );
    }

    #[test]
    fn empty_graph() {
        assert_eq!(
            serialize_json(&GitGraph::empty()),
            r#"{"n":0,"k":0,"branches":[]}"#
        );
        assert_eq!(
            parse_json(r#"{"n":0,"k":0,"branches":[]}"#).unwrap(),
            GitGraph::empty()
        );
    }

    #[test]
    fn round_trip_small_graphs() {
        for n in 0..=7 {
            for k in 0..=n {
                for g in all_git_graphs(n, k).unwrap() {
                    assert_eq!(parse_json(&serialize_json(&g)).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(parse_json("{"), Err(JsonError::Malformed(_))));
        assert!(matches!(
            parse_json(r#"{"n":5,"k":3,"branches":[],"extra":1}"#),
            Err(JsonError::Malformed(_))
        ));
        assert!(matches!(
            parse_json(
                r#"{"n":5,"k":3,"branches":[{"start":1,"end":3,"length":1},{"start":2,"end":3,"length":1}]}"#
            ),
            Err(JsonError::Invalid(Violation::DuplicateEnd { end: 3 }))
        ));
        assert!(matches!(
            parse_json(r#"{"n":9,"k":2,"branches":[{"start":1,"end":2,"length":1}]}"#),
            Err(JsonError::SizeMismatch {
                declared: 9,
                actual: 3
            })
        ));
    }

    #[test]
    fn parse_sorts_branches() {
        let g = parse_json(
            r#"{"n":6,"k":4,"branches":[{"start":1,"end":4,"length":1},{"start":1,"end":2,"length":1}]}"#,
        )
        .unwrap();
        assert_eq!(g.branches()[0].end, 2);
    }
}
