//! Counting and random generation of Git feature-branch graphs.
//!
//! A Git graph is a main branch of black commits plus feature branches: paths
//! of white commits that fork from one main commit and merge back into a
//! later one, with at most one merge per main commit. This crate counts them
//! exactly, enumerates small classes, and samples them:
//!
//! - uniformly at fixed size and main-branch length, by rejection
//!   ([`sampling::sample_rejection`]) or through a bijection with labeled
//!   cycle structures ([`sampling::ExactSampler`]);
//! - under a Boltzmann law weighting each graph by `u^k z^n / k!`
//!   ([`sampling::sample_boltzmann`]), tuned by [`tuning`] to a target size
//!   and main-branch ratio.

pub mod counting;
pub mod cyclarium;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod sampling;
pub mod tuning;

pub use cyclarium::{Cyclarium, CycleVertex};
pub use graph::{Branch, GitGraph, Violation};
