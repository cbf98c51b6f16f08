//! The radical extension `Q(q)[r2, r3, r4]` with `r_n² = [n−1]_q [n+1]_q`.
//!
//! Entries of orthogonal R-matrices involve `s_n = r_n/[n]_q`; every element is
//! stored as a map from a radical monomial (a subset of `{r2, r3, r4}`, encoded
//! as a bit mask) to its rational-function coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{qint, LaurentPoly, RatFuncQ, Ring};

/// Bit mask of a radical monomial: bit 0 is `r2`, bit 1 is `r3`, bit 2 is `r4`.
pub type RadicalMask = u8;

/// Number of supported radicals.
pub const RADICAL_COUNT: usize = 3;

/// The mask of the single radical `r_n` for `n ∈ {2, 3, 4}`.
pub fn radical_bit(n: usize) -> RadicalMask {
    assert!((2..=4).contains(&n), "only r2, r3, r4 are supported");
    1 << (n - 2)
}

/// The square `r_n² = [n−1]_q [n+1]_q`.
pub fn radical_square(n: usize) -> LaurentPoly {
    let n = n as i64;
    &qint(n - 1) * &qint(n + 1)
}

/// An element of the radical extension ring.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExtScalar {
    components: BTreeMap<RadicalMask, RatFuncQ>,
}

impl ExtScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(RatFuncQ::one())
    }

    /// A radical-free element.
    pub fn rational(c: RatFuncQ) -> Self {
        Self::component(0, c)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::rational(RatFuncQ::from_poly(p))
    }

    /// `c · (radical monomial mask)`.
    pub fn component(mask: RadicalMask, c: RatFuncQ) -> Self {
        let mut components = BTreeMap::new();
        if !c.is_zero() {
            components.insert(mask, c);
        }
        Self { components }
    }

    /// The radical `r_n`.
    pub fn radical(n: usize) -> Self {
        Self::component(radical_bit(n), RatFuncQ::one())
    }

    pub fn components(&self) -> impl Iterator<Item = (RadicalMask, &RatFuncQ)> + '_ {
        self.components.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The value when no radical components are present.
    pub fn as_rational(&self) -> Option<RatFuncQ> {
        match self.components.len() {
            0 => Some(RatFuncQ::zero()),
            1 => self.components.get(&0).cloned(),
            _ => None,
        }
    }

    /// The radical-free component, whatever the other components are.
    pub fn rational_part(&self) -> RatFuncQ {
        self.components.get(&0).cloned().unwrap_or_default()
    }

    fn add_component(&mut self, mask: RadicalMask, c: RatFuncQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.components.entry(mask).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.components.remove(&mask);
        }
    }

    /// Multiplies every component by a rational function.
    pub fn scale(&self, s: &RatFuncQ) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.components {
            out.add_component(*m, c * s);
        }
        out
    }
}

/// Product of two radical monomials: the resulting mask and the polynomial
/// factor produced by squared radicals.
fn monomial_product(a: RadicalMask, b: RadicalMask) -> (RadicalMask, LaurentPoly) {
    let common = a & b;
    let mut factor = LaurentPoly::one();
    for i in 0..RADICAL_COUNT {
        if common & (1 << i) != 0 {
            factor = &factor * &radical_square(i + 2);
        }
    }
    (a ^ b, factor)
}

/// Product in the extension ring, reducing each `r_n²`.
pub fn ext_mul(a: &ExtScalar, b: &ExtScalar) -> ExtScalar {
    let mut out = ExtScalar::zero();
    for (ma, ca) in &a.components {
        for (mb, cb) in &b.components {
            let (m, f) = monomial_product(*ma, *mb);
            let prod = ca * cb;
            let prod = if f.is_one() { prod } else { prod.mul_poly(&f) };
            out.add_component(m, prod);
        }
    }
    out
}

impl Add for &ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: &ExtScalar) -> ExtScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.components {
            out.add_component(*m, c.clone());
        }
        out
    }
}

impl Sub for &ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: &ExtScalar) -> ExtScalar {
        self + &(-rhs)
    }
}

impl Neg for &ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar {
            components: self.components.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: &ExtScalar) -> ExtScalar {
        ext_mul(self, rhs)
    }
}

impl Ring for ExtScalar {
    fn zero() -> Self {
        ExtScalar::zero()
    }
    fn one() -> Self {
        ExtScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExtScalar::is_zero(self)
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
        ExtScalar::from_poly(p.clone())
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.components {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]")?;
            for i in 0..RADICAL_COUNT {
                if m & (1 << i) != 0 {
                    write!(f, "*r{}", i + 2)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtScalar({self})")
    }
}
