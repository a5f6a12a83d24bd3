//! Floating-point scalar abstraction used by the matrix, criteria and bounds code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// f32 or f64, with the elimination tolerances appropriate to each precision.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Pivots below this magnitude are treated as zero during elimination.
    const PIVOT_TOL: Self;
    /// Largest admissible |row sum| for a matrix that should be centered.
    const CENTER_TOL: Self;

    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("scalar conversion from f64")
    }

    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("scalar conversion from usize")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const PIVOT_TOL: f64 = 1e-12;
    const CENTER_TOL: f64 = 1e-9;
}

impl Scalar for f32 {
    const PIVOT_TOL: f32 = 1e-6;
    const CENTER_TOL: f32 = 1e-4;
}
