//! Numerical calibrated subactions for the circle maps `x -> 2x` and
//! `x -> -2x` (mod 1), via the averaged iteration
//! `G(f) = (f + psi(f)) / 2 - c_f`, together with periodic-orbit oracles
//! and perturbation experiments on the contraction rate of `G`.

pub mod analysis;
pub mod circlefn;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod operators;
pub mod oracle;
pub mod perturblab;
pub mod potential;
pub mod solver;
