//! Phase shifts, free energy and entropy of one-dimensional scattering
//! backgrounds, with a numeric transfer-matrix solver for piecewise-constant
//! potentials and a Levinson-theorem consistency check on the
//! high-temperature entropy.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod levinson;
pub mod models;
pub mod numerics;
pub mod solver;
pub mod thermo;
