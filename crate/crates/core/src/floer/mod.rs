//! Hilbert functions, certified quotient models, eigenvalue checks and the
//! sub-leading solver.

pub mod hilbert;
pub mod model;
pub mod witness;
pub mod eigen;
pub mod solver;

pub use hilbert::*;
pub use model::{build_quotient_model, BuildOptions, QuotientModel};
pub use witness::{gamma_power_witness, gamma_power_witness_local, GammaWitness};
pub use eigen::{eigen_verify, EigenReport, EigenTuple};
pub use solver::{jgen_n3, solve_subleading, SubleadingSolution};
