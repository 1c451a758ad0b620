//! Scalar traits the dense kernels are generic over.

use std::fmt::Debug;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

/// A commutative semiring element: enough for exact walk counting and
/// matrix powers. Implemented for every primitive integer and float as well
/// as `BigUint`/`BigInt`.
pub trait Scalar: Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Zero + One + Add<Output = T> + Mul<Output = T> {}
