//! Scalar abstraction: the floating-point types the library is generic over.

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::Distribution;

/// Floating-point scalar (`f32` or `f64`).
///
/// Random draws live on the trait so that generic code does not have to
/// carry `rand_distr` distribution bounds around.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + fmt::Display
    + fmt::Debug
    + Send
    + Sync
    + 'static
{
    /// Uniform draw from `[0, 1)`.
    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Draw from the gamma distribution with the given shape and scale 1.
    ///
    /// Panics if `shape` is not strictly positive.
    fn standard_gamma<R: Rng + ?Sized>(rng: &mut R, shape: Self) -> Self;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.gen()
            }

            fn standard_gamma<R: Rng + ?Sized>(rng: &mut R, shape: Self) -> Self {
                rand_distr::Gamma::new(shape, 1.0)
                    .expect("gamma shape must be positive")
                    .sample(rng)
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);
