//! Scalar abstraction shared by every numeric kernel in the crate.
//!
//! All math is written against [`Real`], which is implemented for `f32` and
//! `f64`. Analytic tolerances quoted in the tests assume `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite conversion")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A point in the plane.
pub type Point2<T> = [T; 2];

/// A point in 3-space.
pub type Point3<T> = [T; 3];

#[inline]
pub fn dist2<T: Real>(a: &Point2<T>, b: &Point2<T>) -> T {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

#[inline]
pub fn dist<T: Real>(a: &Point2<T>, b: &Point2<T>) -> T {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

#[inline]
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn centroid<T: Real>(points: &[Point2<T>]) -> Option<Point2<T>> {
    if points.is_empty() {
        return None;
    }
    let n = T::from_usize_lossy(points.len());
    let (sx, sy) = points
        .iter()
        .fold((T::zero(), T::zero()), |(sx, sy), p| (sx + p[0], sy + p[1]));
    Some([sx / n, sy / n])
}

/// Linear-interpolated quantile of an already sorted slice (`q` in `[0, 1]`).
pub fn quantile_sorted<T: Real>(sorted: &[T], q: T) -> Option<T> {
    if sorted.is_empty() {
        return None;
    }
    let pos = q.max(T::zero()).min(T::one()) * T::from_usize_lossy(sorted.len() - 1);
    let lo = pos.floor();
    let lo_idx = lo.to_usize().unwrap_or(0);
    let hi_idx = (lo_idx + 1).min(sorted.len() - 1);
    let frac = pos - lo;
    Some(sorted[lo_idx] + (sorted[hi_idx] - sorted[lo_idx]) * frac)
}

/// Median of unsorted values (mean of the middle pair for even lengths).
pub fn median<T: Real>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / T::lit(2.0)
    })
}
