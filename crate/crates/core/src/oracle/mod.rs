//! Independent finite-difference solver used to cross-check the closed form.
mod banded;
mod fd;

pub use banded::BandMatrix;
pub use fd::{convergence_order, fd_solve, fd_solve_extrapolated, ConvergenceOrder, GridSolution};
