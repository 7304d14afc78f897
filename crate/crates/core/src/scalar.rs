//! Scalar abstractions.
//!
//! The combinatorial parts of the crate (critical points, merge trees, the
//! edit-distance and warping dynamic programs) only need an ordered ring, so
//! they are generic over [`Scalar`] and run unchanged on exact rationals.
//! Anything that needs roots, powers or trigonometry asks for [`Real`].

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Ordered numeric type usable as a sample height.
pub trait Scalar: Copy + PartialOrd + Num + Debug + Send + Sync + 'static {
    /// `false` for NaN and infinities; always `true` for exact types.
    fn is_finite_value(self) -> bool;

    /// Lossy conversion used for reporting.
    fn to_f64_lossy(self) -> f64;
}

/// Floating-point scalar with the transcendental operations the geometric and
/// transport code needs.
pub trait Real: Scalar + Float + FromPrimitive + std::iter::Sum {
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("f64 is representable")
    }
}

impl Scalar for f32 {
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

macro_rules! impl_ratio_scalar {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int> {
            fn is_finite_value(self) -> bool {
                true
            }
            fn to_f64_lossy(self) -> f64 {
                self.to_f64().unwrap_or(f64::NAN)
            }
        }
    )*};
}

impl_ratio_scalar!(i32, i64, i128);

impl Real for f32 {}
impl Real for f64 {}

/// `|a - b|` using only ordering and subtraction.
#[inline]
pub fn abs_diff<T: Scalar>(a: T, b: T) -> T {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Minimum of an optional cost and a candidate, where `None` is +infinity.
#[inline]
pub(crate) fn min_cost<T: Scalar>(best: Option<T>, candidate: Option<T>) -> Option<T> {
    match (best, candidate) {
        (None, c) => c,
        (b, None) => b,
        (Some(b), Some(c)) => Some(if c < b { c } else { b }),
    }
}
