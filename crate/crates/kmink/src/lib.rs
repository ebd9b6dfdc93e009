//! Exact symbolic calculus for the κ-Minkowski space algebra.

pub mod ast;
pub mod calculus;
pub mod cli;
pub mod ordered;
pub mod parse;
pub mod report;
pub mod symmetry;
pub mod scalars;
pub mod words;
