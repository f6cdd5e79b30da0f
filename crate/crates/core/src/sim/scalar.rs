use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

use crate::phase::Phase;

/// Floating point types usable by the dense oracle.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// State-level comparison tolerance.
    fn default_tolerance() -> Self;
    /// Probabilities below this are treated as impossible branches.
    fn prob_cutoff() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }
}

impl Real for f64 {
    fn default_tolerance() -> Self {
        1e-9
    }
    fn prob_cutoff() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn default_tolerance() -> Self {
        1e-4
    }
    fn prob_cutoff() -> Self {
        1e-6
    }
}

/// `e^{2πi·φ}`.
pub fn cis<T: Real>(phi: Phase) -> Complex<T> {
    // Reduce exactly first so common angles land on exact values.
    let (n, d) = (phi.numer(), phi.denom());
    match (n, d) {
        (0, _) => Complex::new(T::one(), T::zero()),
        (1, 2) => Complex::new(-T::one(), T::zero()),
        (1, 4) => Complex::new(T::zero(), T::one()),
        (3, 4) => Complex::new(T::zero(), -T::one()),
        _ => {
            let angle = T::TAU() * T::lit(n as f64) / T::lit(d as f64);
            Complex::new(angle.cos(), angle.sin())
        }
    }
}
