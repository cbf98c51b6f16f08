//! Exact arithmetic in `q`: Laurent polynomials over the rationals, their
//! fraction field, the radical extension carrying orthogonal R-matrix entries,
//! and two-variable polynomials in `A` and `q`.

mod dense;
mod expr;
mod ext;
mod laurent;
mod laurent_a;
mod ratfunc;

use std::fmt::Debug;

pub use expr::{parse_laurent, parse_laurent_a, parse_ratfunc_a, ParseExprError};
pub use ext::{ext_mul, radical_bit, radical_square, ExtScalar, RadicalMask, RADICAL_COUNT};
pub use laurent::{mirror_q, pow_rat, qbracket, qint, rat, LaurentPoly};
pub use laurent_a::{LaurentPolyA, RatFuncA};
pub use ratfunc::RatFuncQ;

/// The commutative-ring interface that matrix code is generic over.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Embeds a Laurent polynomial.
    fn from_laurent(p: &LaurentPoly) -> Self;
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_laurent(p: &LaurentPoly) -> Self {
        p.clone()
    }
}

impl Ring for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn one() -> Self {
        RatFuncQ::one()
    }
    fn is_zero(&self) -> bool {
        RatFuncQ::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_laurent(p: &LaurentPoly) -> Self {
        RatFuncQ::from_poly(p.clone())
    }
}
