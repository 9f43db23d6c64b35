//! Solver library for cardinal direction calculus constraint networks.
//!
//! A constraint relates two plane regions by recording which of the nine
//! tiles induced by the reference region's bounding rectangle the primary
//! region's interior meets, giving a 3x3 Boolean direction relation matrix.
//! This crate decides consistency of networks of such constraints over
//! connected regions (218 basic relations), possibly disconnected regions
//! (511), and simple regions, in time cubic in the number of variables, and
//! constructs the maximal canonical solution of every consistent basic
//! network on a digital frame. On top of the solver sit the pairwise
//! consistency (converse) table, weak composition, a simple-region
//! transform, and backtracking search for disjunctive networks.
//!
//! Start with [`solver::solve_basic`]; the `examples/` directory has one
//! runnable walkthrough per capability.

pub mod cli;
pub mod compose;
pub mod grid;
pub mod ia;
pub mod matrix;
pub mod netfile;
pub mod render;
pub mod solver;

pub use grid::{Frame, IntGrid, IntRect, PixelRegion};
pub use matrix::{CdcBasicNetwork, CdcDisjunctiveNetwork, DirectionMatrix, Model};
pub use solver::{solve_basic, solve_disjunctive, Solution, SolveOutcome};
