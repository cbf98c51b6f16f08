//! Laurent polynomials in `A` with Laurent-polynomial coefficients in `q`, and
//! their quotients by `q`-only denominators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::monomial_body;
use super::{LaurentPoly, RatFuncQ};

/// `Σ_k p_k(q) A^k` with no zero coefficient stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolyA {
    terms: BTreeMap<i64, LaurentPoly>,
}

impl LaurentPolyA {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    /// A polynomial with no `A` dependence.
    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::monomial(0, p)
    }

    /// `p(q) A^k`.
    pub fn monomial(k: i64, p: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(k, p);
        }
        Self { terms }
    }

    /// The monomial `A^k`.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(k, LaurentPoly::one())
    }

    /// The bracket `{A q^c} = A q^c − A⁻¹ q^{−c}`.
    pub fn a_bracket(c: i64) -> Self {
        let mut p = Self::monomial(1, LaurentPoly::q_pow(c));
        p.add_term(-1, -LaurentPoly::q_pow(-c));
        p
    }

    pub fn add_term(&mut self, k: i64, p: LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_default();
        *entry += &p;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(k, p)| (*k, p))
    }

    pub fn coeff(&self, k: i64) -> LaurentPoly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_a_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_a_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Exponents of `A` carrying a nonzero coefficient.
    pub fn a_exponents(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    /// Multiplies by `A^k`.
    pub fn shift_a(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, p)| (e + k, p.clone())).collect(),
        }
    }

    /// Multiplies every coefficient by a `q`-polynomial.
    pub fn scale(&self, s: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (k, p) in &self.terms {
            out.add_term(*k, p * s);
        }
        out
    }

    pub fn scale_rat(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, p) in &self.terms {
            out.add_term(*k, p.scale(s));
        }
        out
    }

    /// The specialisation `A = q^N`.
    pub fn subst_a_qpow(&self, n: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, p) in &self.terms {
            out += &p.shift(n * k);
        }
        out
    }

    /// The value at `A = 1`.
    pub fn at_a_one(&self) -> LaurentPoly {
        self.subst_a_qpow(0)
    }

    /// The substitution `A → A⁻¹, q → q⁻¹` (mirror image of a knot).
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, p)| (-k, p.invert_q())).collect(),
        }
    }

    /// Applies a map to each `q`-coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (k, p) in &self.terms {
            out.add_term(*k, f(p));
        }
        out
    }

    /// Exact division of every coefficient by a `q`-polynomial.
    pub fn div_exact_poly(&self, d: &LaurentPoly) -> Option<Self> {
        let mut out = Self::zero();
        for (k, p) in &self.terms {
            out.add_term(*k, p.div_exact(d)?);
        }
        Some(out)
    }

    /// Exact division by `{A} = A − A⁻¹`.
    pub fn div_a_bracket(&self) -> Option<Self> {
        let (Some(lo), Some(hi)) = (self.min_a_exp(), self.max_a_exp()) else {
            return Some(Self::zero());
        };
        // g_{k-1} − g_{k+1} = f_k, solved from the top exponent downwards.
        let mut g: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut k = hi - 1;
        while k > lo {
            let above = g.get(&(k + 2)).cloned().unwrap_or_default();
            let val = &self.coeff(k + 1) + &above;
            if !val.is_zero() {
                g.insert(k, val);
            }
            k -= 1;
        }
        let g = Self { terms: g };
        if &g * &Self::a_bracket(0) == *self {
            Some(g)
        } else {
            None
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LaurentPolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, p)) in self.terms.iter().enumerate() {
            let (negative, body) = if let Some((c, e)) = p.as_monomial() {
                let qpart = monomial_body(&c.abs(), e, "q");
                let body = match (qpart.as_str(), *k) {
                    (_, 0) => qpart,
                    ("1", _) => monomial_body(&BigRational::one(), *k, "A"),
                    _ => format!("{}*{}", qpart, monomial_body(&BigRational::one(), *k, "A")),
                };
                (c.is_negative(), body)
            } else if *k == 0 {
                (false, format!("({p})"))
            } else {
                (false, format!("({p})*{}", monomial_body(&BigRational::one(), *k, "A")))
            };
            match (i, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolyA({self})")
    }
}

impl Serialize for LaurentPolyA {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter())
    }
}

impl<'de> Deserialize<'de> for LaurentPolyA {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, LaurentPoly)> = Vec::deserialize(d)?;
        let mut p = LaurentPolyA::zero();
        for (k, c) in raw {
            p.add_term(k, c);
        }
        Ok(p)
    }
}

impl Add for &LaurentPolyA {
    type Output = LaurentPolyA;
    fn add(self, rhs: &LaurentPolyA) -> LaurentPolyA {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_term(*k, p.clone());
        }
        out
    }
}

impl Sub for &LaurentPolyA {
    type Output = LaurentPolyA;
    fn sub(self, rhs: &LaurentPolyA) -> LaurentPolyA {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_term(*k, -p);
        }
        out
    }
}

impl Neg for &LaurentPolyA {
    type Output = LaurentPolyA;
    fn neg(self) -> LaurentPolyA {
        LaurentPolyA {
            terms: self.terms.iter().map(|(k, p)| (*k, -p)).collect(),
        }
    }
}

impl Mul for &LaurentPolyA {
    type Output = LaurentPolyA;
    fn mul(self, rhs: &LaurentPolyA) -> LaurentPolyA {
        let mut out = LaurentPolyA::zero();
        for (k1, p1) in &self.terms {
            for (k2, p2) in &rhs.terms {
                out.add_term(k1 + k2, p1 * p2);
            }
        }
        out
    }
}

impl Add for LaurentPolyA {
    type Output = LaurentPolyA;
    fn add(self, rhs: LaurentPolyA) -> LaurentPolyA {
        &self + &rhs
    }
}

impl Sub for LaurentPolyA {
    type Output = LaurentPolyA;
    fn sub(self, rhs: LaurentPolyA) -> LaurentPolyA {
        &self - &rhs
    }
}

impl Mul for LaurentPolyA {
    type Output = LaurentPolyA;
    fn mul(self, rhs: LaurentPolyA) -> LaurentPolyA {
        &self * &rhs
    }
}

impl Neg for LaurentPolyA {
    type Output = LaurentPolyA;
    fn neg(self) -> LaurentPolyA {
        -&self
    }
}

/// A quotient `num(A, q) / den(q)` kept in lowest terms.
///
/// This hosts the unnormalised HOMFLY–PT polynomial, whose denominators are
/// products of quantum brackets `{q^h}` only.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncA {
    num: LaurentPolyA,
    den: LaurentPoly,
}

impl RatFuncA {
    pub fn new(num: LaurentPolyA, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::reduce(num, den)
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPolyA::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly_a(p: LaurentPolyA) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPolyA {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(num: LaurentPolyA, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut g = den.normalize_unit();
        for (_, p) in num.terms() {
            if g.is_one() {
                break;
            }
            g = g.gcd(p);
        }
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact_poly(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lo = den.min_exp().unwrap();
        let lead = den.terms().next_back().map(|(_, c)| c.clone()).unwrap();
        let inv = lead.recip();
        Self {
            num: num.map_coeffs(|p| p.shift(-lo).scale(&inv)),
            den: den.shift(-lo).scale(&inv),
        }
    }

    /// The Laurent polynomial this equals, if the denominator is trivial.
    pub fn as_laurent_a(&self) -> Option<LaurentPolyA> {
        self.den.is_one().then(|| self.num.clone())
    }

    /// The coefficient of `A^k` as a rational function of `q`.
    pub fn coeff(&self, k: i64) -> RatFuncQ {
        RatFuncQ::new(self.num.coeff(k), self.den.clone())
    }

    pub fn a_exponents(&self) -> Vec<i64> {
        self.num.a_exponents()
    }

    /// The specialisation `A = q^N`.
    pub fn subst_a_qpow(&self, n: i64) -> RatFuncQ {
        RatFuncQ::new(self.num.subst_a_qpow(n), self.den.clone())
    }

    pub fn mul_poly_a(&self, p: &LaurentPolyA) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, d: &LaurentPoly) -> Self {
        Self::reduce(self.num.clone(), &self.den * d)
    }

    /// The substitution `A → A⁻¹, q → q⁻¹`.
    pub fn mirror(&self) -> Self {
        Self::reduce(self.num.mirror(), self.den.invert_q())
    }

    /// The substitution `q → −q⁻¹` with `A` fixed.
    pub fn mirror_q(&self) -> Self {
        Self::reduce(self.num.map_coeffs(|p| p.mirror_q()), self.den.mirror_q())
    }
}

impl Add for &RatFuncA {
    type Output = RatFuncA;
    fn add(self, rhs: &RatFuncA) -> RatFuncA {
        if self.den == rhs.den {
            return RatFuncA::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        RatFuncA::reduce(&self.num.scale(&b) + &rhs.num.scale(&a), &self.den * &b)
    }
}

impl Sub for &RatFuncA {
    type Output = RatFuncA;
    fn sub(self, rhs: &RatFuncA) -> RatFuncA {
        self + &RatFuncA {
            num: -&rhs.num,
            den: rhs.den.clone(),
        }
    }
}

impl fmt::Display for RatFuncA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFuncA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncA({self})")
    }
}

impl Serialize for RatFuncA {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatFuncA", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RatFuncA {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: LaurentPolyA,
            den: LaurentPoly,
        }
        let raw = Raw::deserialize(d)?;
        if raw.den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RatFuncA::new(raw.num, raw.den))
    }
}

impl Zero for LaurentPolyA {
    fn zero() -> Self {
        LaurentPolyA::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::qbracket;

    #[test]
    fn bracket_division() {
        let f = &LaurentPolyA::a_bracket(0) * &LaurentPolyA::a_bracket(2);
        assert_eq!(f.div_a_bracket().unwrap(), LaurentPolyA::a_bracket(2));
        assert!(LaurentPolyA::a_pow(1).div_a_bracket().is_none());
    }

    #[test]
    fn specialisation() {
        // {A}/{q} at A = q^N is [N]
        let u = RatFuncA::new(LaurentPolyA::a_bracket(0), qbracket(1));
        for n in 1..5 {
            assert_eq!(u.subst_a_qpow(n).as_laurent().unwrap(), crate::qring::qint(n));
        }
    }

    #[test]
    fn rendering() {
        let h = &LaurentPolyA::monomial(-2, LaurentPoly::from_int_terms(&[(2, 1), (-2, 1)])) - &LaurentPolyA::a_pow(-4);
        assert_eq!(h.to_string(), "-A^-4 + (q^-2 + q^2)*A^-2");
    }
}
