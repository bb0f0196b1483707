//! Finite volume building blocks for the ideal MHD equations.
//!
//! The crate provides entropy conserving (EC, EKEC) and entropy stable
//! (ES-Roe, ES-LLF) interface fluxes together with the nonconservative
//! source discretization that advects divergence errors, structured 1D/2D
//! grids, semidiscrete right-hand sides, low-storage Runge-Kutta time
//! integrators, and the diagnostics (conservation ledgers, L2 errors,
//! convergence rates, discrete div B) used by the experiment runner.

pub mod diagnostics;
pub mod dissipation;
pub mod error;
pub mod flux;
pub mod grid;
pub mod integrate;
pub mod means;
pub mod problems;
pub mod state;

pub use error::Error;
pub use grid::{BoundaryKind, Grid1D, Grid2D};
pub use integrate::{Field1D, Field2D, RkScheme};
pub use state::{ConsState, Direction, FluxKind, PrimState, SolverConfig};
