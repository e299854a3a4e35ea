//! Scalar abstraction shared by every geometric type.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the geometry is generic over (`f32` or `f64`).
///
/// The tolerance hooks are relative and already scaled to the precision of
/// the type, so the same construction code runs in either width.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Sine of the smallest angle at which two directions count as distinct.
    fn parallel_eps() -> Self;
    /// Relative slack for boundary predicates (point on circle, `r == r_max`).
    fn boundary_eps() -> Self;
    /// Relative slack for tangency and inscribed-sphere checks.
    fn tangency_eps() -> Self;
    /// Threshold on normalized conic invariants (discriminant, determinant).
    fn classify_eps() -> Self;

    /// Converts an `f64` literal; every literal used by the crate is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Scalar for f64 {
    fn parallel_eps() -> Self {
        1e-12
    }
    fn boundary_eps() -> Self {
        1e-12
    }
    fn tangency_eps() -> Self {
        1e-9
    }
    fn classify_eps() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn parallel_eps() -> Self {
        1e-6
    }
    fn boundary_eps() -> Self {
        1e-6
    }
    fn tangency_eps() -> Self {
        1e-4
    }
    fn classify_eps() -> Self {
        1e-4
    }
}

/// `max(1, |x| for x in values)`: the scale used by relative tolerances.
pub fn scale_of<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values
        .into_iter()
        .fold(T::one(), |acc, v| acc.max(v.abs()))
}
