//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating point type the model can be evaluated in.
///
/// Implemented for `f32` and `f64`. Tolerances that are quoted as absolute
/// `f64` numbers go through [`Real::tol`], which widens them to a few hundred
/// ulps when the type cannot resolve the requested value.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    /// Lossy conversion back to `f64` for reporting and error payloads.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `base` if the type can resolve it, otherwise `256 * epsilon`.
    #[inline]
    fn tol(base: f64) -> Self {
        Self::lit(base).max(Self::epsilon() * Self::lit(256.0))
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Default step for finite-difference derivatives of user supplied functions.
pub(crate) fn fd_step<T: Real>() -> T {
    if T::epsilon() < T::lit(1e-10) {
        T::lit(1e-6)
    } else {
        T::epsilon().cbrt()
    }
}

/// Evenly spaced points covering `[lo, hi]` inclusive.
///
/// Written as a weighted mean so that a range symmetric about zero gives
/// points that are exact negatives of each other.
pub fn linspace<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = n - 1;
            let denom = T::from_usize(last).unwrap();
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    _ if i == last => hi,
                    _ => {
                        let (wl, wh) = (T::from_usize(last - i).unwrap(), T::from_usize(i).unwrap());
                        (lo * wl + hi * wh) / denom
                    }
                })
                .collect()
        }
    }
}
