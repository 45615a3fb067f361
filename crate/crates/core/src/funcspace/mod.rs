//! Exponential-polynomials, Maclaurin jets and the weighted-space geometry.

mod exppoly;
mod region;
mod taylor;

pub use exppoly::{ExpPoly, ZeroStructure};
pub use region::{
    condition1_sample, membership_En, Condition1Point, Condition1Report, ConvexRegion, Polygon, Weight,
};
pub use taylor::TruncatedTaylor;
