//! The fraction field `Q(q)` as reduced quotients of Laurent polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LaurentPoly;

/// A rational function `num/den` in `q`.
///
/// Always stored reduced: `gcd(num, den)` is a unit, `den` has minimal
/// exponent zero and leading coefficient one. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFuncQ {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        Self::reduce(num, den)
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(c))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this function equals, if any.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.len() == 1 {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        // Normalise the unit: den gets minimal exponent 0 and leading coefficient 1.
        let lo = den.min_exp().unwrap();
        let (_, lead) = den.terms().next_back().map(|(e, c)| (e, c.clone())).unwrap();
        let inv = lead.recip();
        Self {
            num: num.shift(-lo).scale(&inv),
            den: den.shift(-lo).scale(&inv),
        }
    }

    /// Re-reduces an already reduced value; idempotent by construction.
    pub fn reduced(&self) -> Self {
        Self::reduce(self.num.clone(), self.den.clone())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    /// The substitution `q → −q⁻¹`.
    pub fn mirror_q(&self) -> Self {
        Self::reduce(self.num.mirror_q(), self.den.mirror_q())
    }

    /// The substitution `q → q⁻¹`.
    pub fn invert_q(&self) -> Self {
        Self::reduce(self.num.invert_q(), self.den.invert_q())
    }

    /// The substitution `q → q^k`, `k ≠ 0`.
    pub fn subst_pow(&self, k: i64) -> Self {
        Self::reduce(self.num.subst_pow(k), self.den.subst_pow(k))
    }

    pub fn pow(&self, n: i32) -> Self {
        if n < 0 {
            return self.recip().pow(-n);
        }
        Self::reduce(self.num.pow(n as u32), self.den.pow(n as u32))
    }

    /// Value at `q = 1`, when the denominator does not vanish there.
    pub fn eval_one(&self) -> Option<BigRational> {
        let d = self.den.eval_one();
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_one() / d)
        }
    }
}

impl Default for RatFuncQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RatFuncQ {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncQ({self})")
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFuncQ::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        RatFuncQ::reduce(&(&self.num * &b) + &(&rhs.num * &a), &self.den * &b)
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFuncQ::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying to keep sizes small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFuncQ::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFuncQ {
    type Output = RatFuncQ;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the reciprocal
    fn div(self, rhs: &RatFuncQ) -> RatFuncQ {
        self * &rhs.recip()
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
owned_ops!(RatFuncQ);

impl One for RatFuncQ {
    fn one() -> Self {
        RatFuncQ::one()
    }
}

impl Zero for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
