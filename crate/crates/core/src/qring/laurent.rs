//! Exact Laurent polynomials in `q` over arbitrary-precision rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense;

/// A Laurent polynomial `Σ c_e q^e` with rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality and the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

/// Builds a rational number from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// The monomial `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(rat(c), 0)
    }

    /// The monomial `c q^e` (zero if `c` is zero).
    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Sums `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer `(exponent, coefficient)` pairs.
    pub fn from_int_terms(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, rat(c))))
    }

    /// Adds `c q^e` in place.
    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Iterates over `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `(c, e)` when the polynomial is a single monomial `c q^e`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// Returns the constant when the polynomial has no `q` dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_monomial() {
            Some((c, 0)) => Some(c),
            _ => None,
        }
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// The substitution `q → −q⁻¹`; an involution.
    pub fn mirror_q(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (-e, if e.is_odd() { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// The substitution `q → q⁻¹`.
    pub fn invert_q(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// The substitution `q → q^k` for nonzero `k`.
    pub fn subst_pow(&self, k: i64) -> Self {
        assert!(k != 0, "q -> q^0 is not an automorphism");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// The substitution `q → −q`.
    pub fn negate_q(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e.is_odd() { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// First moment `Σ e·c_e`, i.e. `q d/dq` evaluated at `q = 1`.
    pub fn moment(&self) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (e, c)| acc + c * rat(*e))
    }

    /// Value at a nonzero rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        assert!(!x.is_zero(), "Laurent polynomial evaluated at zero");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rat(x, *e);
        }
        acc
    }

    /// True when `p(q) = p(q⁻¹)`.
    pub fn is_palindromic(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Dense coefficient vector starting at the minimal exponent.
    pub(crate) fn to_dense(&self) -> (i64, Vec<BigRational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(shift: i64, v: &[BigRational]) -> Self {
        Self {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (shift + i as i64, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient in the Laurent ring, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = d.as_monomial() {
            return Some(self.shift(-e).scale(&c.recip()));
        }
        let (sa, a) = self.to_dense();
        let (sb, b) = d.to_dense();
        let (q, r) = dense::divrem_rat(&a, &b);
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::from_dense(sa - sb, &q))
        } else {
            None
        }
    }

    /// Monic greatest common divisor in the Laurent ring (units `c q^k` removed).
    ///
    /// The result has minimal exponent zero and leading coefficient one; the
    /// gcd with the zero polynomial is the normalised other argument.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        if self.is_zero() {
            return other.normalize_unit();
        }
        if other.is_zero() {
            return self.normalize_unit();
        }
        if self.len() == 1 || other.len() == 1 {
            return Self::one();
        }
        let a = dense::to_primitive_int(&self.to_dense().1);
        let b = dense::to_primitive_int(&other.to_dense().1);
        let g = dense::gcd_int(&a, &b);
        let g: Vec<BigRational> = g.into_iter().map(BigRational::from_integer).collect();
        Self::from_dense(0, &g).normalize_unit()
    }

    /// Divides out the unit part: minimal exponent becomes zero and the
    /// highest coefficient becomes one.
    pub fn normalize_unit(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let lead = self.terms.values().next_back().unwrap().clone();
        self.shift(-lo).scale(&lead.recip())
    }

    /// Multiplies out denominators: returns `(d, p)` with `p = d·self` having
    /// integer coefficients and `d` a positive integer.
    pub fn clear_denominators(&self) -> (BigInt, Self) {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let lr = BigRational::from_integer(l.clone());
        (l, self.scale(&lr))
    }

    /// Coefficients as `(exponent, integer)` pairs, if all are integers.
    pub fn to_int_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (*e, c.to_integer())))
            .collect()
    }

    /// Renders the polynomial in the canonical caret form, e.g. `q^-2 + 1 + q^2`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// `x^e` for a nonzero rational and any integer exponent.
pub fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Quantum integer `[n]_q = (qⁿ − q⁻ⁿ)/(q − q⁻¹)`.
pub fn qint(n: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let m = n.abs();
    let p = LaurentPoly::from_terms((0..m).map(|i| (m - 1 - 2 * i, BigRational::one())));
    if n < 0 {
        -p
    } else {
        p
    }
}

/// Quantum bracket `{q^k} = q^k − q^{−k}`.
pub fn qbracket(k: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(k, BigRational::one()), (-k, -BigRational::one())])
}

/// The substitution `q → −q⁻¹`.
pub fn mirror_q(p: &LaurentPoly) -> LaurentPoly {
    p.mirror_q()
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders the body of a monomial `|c| q^e` without its sign.
pub(crate) fn monomial_body(c_abs: &BigRational, e: i64, var: &str) -> String {
    let var_part = match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    };
    if var_part.is_empty() {
        fmt_coeff(c_abs)
    } else if c_abs.is_one() {
        var_part
    } else {
        format!("{}*{}", fmt_coeff(c_abs), var_part)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let body = monomial_body(&c.abs(), *e, "q");
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            self.terms
                .iter()
                .map(|(e, c)| (*e, c.numer().to_string(), c.denom().to_string())),
        )
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, String, String)> = Vec::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, n, den) in raw {
            let n: BigInt = n.parse().map_err(serde::de::Error::custom)?;
            let den: BigInt = den.parse().map_err(serde::de::Error::custom)?;
            if den.is_zero() {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            p.add_term(e, BigRational::new(n, den));
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                *acc.entry(e1 + e2).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(pairs)
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(1), LaurentPoly::one());
        assert_eq!(qint(3), p(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(qint(4), p(&[(3, 1), (1, 1), (-1, 1), (-3, 1)]));
        assert_eq!(qint(0), LaurentPoly::zero());
        assert_eq!(qint(-3), -qint(3));
        // [4] is the long-division quotient of q^4 - q^-4 by q - q^-1
        assert_eq!(qbracket(4).div_exact(&qbracket(1)).unwrap(), qint(4));
    }

    #[test]
    fn quantum_brackets() {
        assert!(qbracket(0).is_zero());
        assert_eq!(qbracket(2), p(&[(2, 1), (-2, -1)]));
        assert_eq!(qbracket(5), p(&[(5, 1), (-5, -1)]));
        for n in -7..=7 {
            assert_eq!(&qint(n) * &qbracket(1), qbracket(n));
        }
    }

    #[test]
    fn mirror_examples() {
        let a = p(&[(2, 1), (-2, 1)]);
        assert_eq!(a.mirror_q(), a);
        assert_eq!(p(&[(3, 1)]).mirror_q(), p(&[(-3, -1)]));
        let h31 = p(&[(-5, 1), (-3, -1), (-1, -1), (1, 1), (3, -2), (5, 1)]);
        let h211 = p(&[(5, -1), (3, 1), (1, 1), (-1, -1), (-3, 2), (-5, -1)]);
        assert_eq!(mirror_q(&h31), h211);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[(-2, 1), (0, 1), (2, 1)]).to_string(), "q^-2 + 1 + q^2");
        assert_eq!(p(&[(1, -2), (3, 1)]).to_string(), "-2*q + q^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let half = LaurentPoly::monomial(BigRational::new(1.into(), 2.into()), -1);
        assert_eq!(half.to_string(), "1/2*q^-1");
    }

    #[test]
    fn gcd_and_division() {
        let a = &qint(2) * &qint(3);
        let b = &qint(2) * &qint(5);
        assert_eq!(a.gcd(&b), qint(2).normalize_unit());
        assert!(qint(3).div_exact(&qint(2)).is_none());
        assert_eq!(a.div_exact(&qint(3)).unwrap(), qint(2));
    }

    #[test]
    fn json_round_trip() {
        let x = LaurentPoly::from_terms([(3, BigRational::new(5.into(), 7.into())), (-1, rat(-2))]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[[-1,"-2","1"],[3,"5","7"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
