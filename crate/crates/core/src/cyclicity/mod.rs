//! The cyclicity classifier, common-zero detection, invariant subspaces on
//! the line `C[z]e_λ` and the ideals `T_n`.

mod classify;
mod subspace;
mod zeros;

pub use classify::{classify, pf_cyclicity_consistency, Case, ClassifyOptions, CyclicityVerdict, PfReport, Verdict, Witness};
pub use subspace::{ideal_membership, invariant_line_matrix, mat_mul, mat_pow, orbit_rank, rank, IdealReport, Matrix, OrbitRank};
pub use zeros::{zeros_in_disc, FoundZero, ZeroSearch};
