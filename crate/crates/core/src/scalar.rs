//! Numeric abstraction for vertex weights and objective values.
//!
//! Every solver is generic over the weight type. Edge counts are lifted into
//! the weight type with [`Scalar::from_count`], so integer, rational and
//! floating point weights all share one code path.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Sub};

use num_traits::{FromPrimitive, ToPrimitive, Zero};

/// Ordered additive number usable as a vertex weight and objective value.
pub trait Scalar:
    Copy
    + PartialOrd
    + Debug
    + Display
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Lift a non-negative count (edges, vertices) into the scalar domain.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }

    /// `n(n-1)/2`, the edge count of a clique on `n` vertices.
    fn clique_edges(n: usize) -> Self {
        Self::from_count(n * n.saturating_sub(1) / 2)
    }
}

impl<T> Scalar for T where
    T: Copy
        + PartialOrd
        + Debug
        + Display
        + Zero
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Sentinel-absorbing addition: an invalid state stays invalid.
#[inline]
pub(crate) fn add_opt<W: Scalar>(a: Option<W>, b: Option<W>) -> Option<W> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}
