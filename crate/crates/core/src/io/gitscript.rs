//! Replays a Git graph as real commits.
//!
//! The emitted POSIX shell script initializes a repository in the current
//! directory and builds the history with empty commits: main commits
//! `M1..Mk` on `main`, each tagged `m<j>`, and for every branch ending at
//! `j` a branch `f<j>` cut from tag `m<start>` holding commits `F<j>-1..`,
//! merged with `--no-ff` to create `M<j>`.

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use crate::graph::{Branch, GitGraph, Violation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScriptError {
    #[error("the empty graph has no commits")]
    EmptyGraph,
    #[error("invalid graph: {0}")]
    Invalid(#[from] Violation),
    #[error("unexpected commit log: {0}")]
    Log(String),
}

pub fn emit_git_script(g: &GitGraph) -> Result<String, ScriptError> {
    g.validate()?;
    if g.k() == 0 {
        return Err(ScriptError::EmptyGraph);
    }
    let mut by_end: HashMap<usize, Branch> = HashMap::new();
    for b in g.branches() {
        by_end.insert(b.end, *b);
    }
    let mut s = String::new();
    writeln!(s, "#!/bin/sh").unwrap();
    writeln!(s, "# Git graph with n={} k={}", g.size(), g.k()).unwrap();
    s.push_str(
        "set -e\n\
         git init -q\n\
         git symbolic-ref HEAD refs/heads/main\n\
         git config user.name gitgraph\n\
         git config user.email gitgraph@example.invalid\n\
         git config commit.gpgsign false\n",
    );
    for j in 1..=g.k() {
        match by_end.get(&j) {
            None => writeln!(s, "git commit -q --allow-empty -m M{j}").unwrap(),
            Some(b) => {
                writeln!(s, "git checkout -q -b f{j} m{}", b.start).unwrap();
                for i in 1..=b.length {
                    writeln!(s, "git commit -q --allow-empty -m F{j}-{i}").unwrap();
                }
                writeln!(s, "git checkout -q main").unwrap();
                writeln!(s, "git merge -q --no-ff --no-edit -m M{j} f{j}").unwrap();
            }
        }
        writeln!(s, "git tag m{j}").unwrap();
    }
    Ok(s)
}

/// Rebuilds the graph from `git log --all --format='%H %s %P'` output of a
/// replayed script, using only the parent relation and the `M<j>` subjects.
pub fn parse_commit_log(log: &str) -> Result<GitGraph, ScriptError> {
    let err = |m: String| ScriptError::Log(m);
    let mut commits: HashMap<&str, (&str, Vec<&str>)> = HashMap::new();
    for line in log.lines().filter(|l| !l.trim().is_empty()) {
        let mut parts = line.split_whitespace();
        let hash = parts.next().ok_or_else(|| err(line.into()))?;
        let subject = parts.next().ok_or_else(|| err(line.into()))?;
        commits.insert(hash, (subject, parts.collect()));
    }
    let main_position =
        |subject: &str| -> Option<usize> { subject.strip_prefix('M')?.parse().ok() };
    let mut main: HashMap<usize, &str> = HashMap::new();
    for (hash, (subject, _)) in &commits {
        if let Some(j) = main_position(subject) {
            main.insert(j, hash);
        }
    }
    let k = main.len();
    let mut branches = Vec::new();
    for j in 1..=k {
        let hash = main.get(&j).ok_or_else(|| err(format!("missing M{j}")))?;
        let parents = &commits[hash].1;
        let expected_first = if j == 1 { None } else { Some(main[&(j - 1)]) };
        if parents.first().copied() != expected_first {
            return Err(err(format!("M{j} does not follow M{}", j - 1)));
        }
        match parents.len() {
            0 | 1 => {}
            2 => {
                let mut length = 0;
                let mut at = parents[1];
                loop {
                    let (subject, ps) = commits
                        .get(at)
                        .ok_or_else(|| err(format!("unknown {at}")))?;
                    if let Some(start) = main_position(subject) {
                        branches.push(Branch::new(start, j, length));
                        break;
                    }
                    length += 1;
                    at = ps
                        .first()
                        .copied()
                        .ok_or_else(|| err(format!("{subject} is a root")))?;
                }
            }
            _ => return Err(err(format!("M{j} has {} parents", parents.len()))),
        }
    }
    Ok(GitGraph::new(k, branches)?)
}
