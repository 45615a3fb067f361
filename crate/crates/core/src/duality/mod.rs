//! Analytic functionals, the pairing, the `J` transform, the Duhamel
//! product, convolution of functionals and commutant operators.

mod convolve;
mod duhamel;
mod functional;

pub use convolve::{commutant_apply, convolve};
pub use duhamel::{duhamel, duhamel_monomials, DividedSeries};
pub use functional::{apply_functional, laplace_j, laplace_j_inverse, pair, pair_exp, Functional};
