//! Mild solutions `u = u_0 + G(u, u)` on periodic boxes: the Kato-type space
//! norms, the Duhamel bilinear form, Picard iteration with a measured
//! contraction certificate, bilinear-estimate probes and a pseudo-spectral
//! time-stepping oracle.

mod config;
mod duhamel;
mod oracle;
mod picard;
mod probe;
mod trajectory;

pub use config::SolverConfig;
pub use duhamel::{duhamel_bilinear, duhamel_trajectory, nonlinear_term};
pub use oracle::timestep_oracle;
pub use picard::{
    estimate_bilinear_constant, local_solve, picard_solve, picard_solve_with, ContractionCertificate,
    LocalSolution, PicardOptions, PicardOutcome,
};
pub use probe::{bilinear_probe, BilinearProbeReport, BilinearProbeSpec};
pub use trajectory::{xspace_norm, yspace_norm, Trajectory};
