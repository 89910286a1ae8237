//! Exact coefficient arithmetic: rational functions in `q`, the quadratic
//! extension by `w` (`w^2 = -q`), and truncated spectral-graded series.

pub mod graded;
pub mod poly;
pub mod ratq;

pub use graded::{GradedCoeff, Window};
pub use poly::QPoly;
pub use ratq::{q_minus_qinv, RatQ, ScalarError};

/// Common interface of the coefficient domains carried by sparse operators.
///
/// Values are immutable; every operation builds a fresh value.
pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    /// Embeds a plain `q`-scalar.
    fn ring_from_ratq(c: &RatQ) -> Self;

    fn ring_sub(&self, rhs: &Self) -> Self {
        self.ring_add(&rhs.ring_neg())
    }
}

impl CoeffRing for RatQ {
    fn ring_zero() -> Self {
        RatQ::zero()
    }
    fn ring_one() -> Self {
        RatQ::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_from_ratq(c: &RatQ) -> Self {
        c.clone()
    }
}

impl CoeffRing for GradedCoeff {
    fn ring_zero() -> Self {
        GradedCoeff::zero(Window::ALL)
    }
    fn ring_one() -> Self {
        GradedCoeff::one(Window::ALL)
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_from_ratq(c: &RatQ) -> Self {
        GradedCoeff::scalar(c.clone())
    }
}
