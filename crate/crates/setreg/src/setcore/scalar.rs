use std::fmt;

/// Scalar type of the metric-space core: `f32` or `f64`.
pub trait Scalar:
    num_traits::Float + num_traits::FromPrimitive + num_traits::ToPrimitive + fmt::Debug + fmt::Display + Default + Send + Sync + 'static
{
    /// Shorthand for lossy conversion from `f64` grid parameters.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts into any Scalar")
    }
}

impl<T> Scalar for T where
    T: num_traits::Float
        + num_traits::FromPrimitive
        + num_traits::ToPrimitive
        + fmt::Debug
        + fmt::Display
        + Default
        + Send
        + Sync
        + 'static
{
}
