//! The Harer–Zagier transform `Z(λ, q) = Σ_N H̄(q^N, q) λ^N`, its closed form
//! on characters, factorisability certificates and inverse reconstruction.
//!
//! Every HZ function of an `m`-strand braid of writhe `w` has the shape
//! `λ N(λ) / ∏_{i=0}^{m} (1 − λ q^{β_i})` with `β_i = −w − m + 2i`. Common
//! factors `(1 − λq^β)` are cancelled eagerly and remembered.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::BraidWord;
use crate::error::{HzError, Result};
use crate::homfly::HomflyPoly;
use crate::qring::{qint, rat, LaurentPoly, LaurentPolyA, RatFuncA};
use crate::rmatrix::{racah_table, standard_tableaux};
use crate::young::YoungDiagram;

/// Coefficients `c_0, c_1, …` of a polynomial in `λ`.
pub type LambdaPoly = Vec<LaurentPoly>;

fn trim(p: &mut LambdaPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn lambda_mul(a: &[LaurentPoly], b: &[LaurentPoly]) -> LambdaPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![LaurentPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn lambda_add(a: &[LaurentPoly], b: &[LaurentPoly]) -> LambdaPoly {
    let n = a.len().max(b.len());
    let mut out: LambdaPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => &x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// The factor `1 − s λ q^a`.
fn linear_factor(sign: i8, a: i64) -> LambdaPoly {
    vec![LaurentPoly::one(), LaurentPoly::q_pow(a).scale(&rat(-(sign as i64)))]
}

/// `∏ (1 − λ q^{β})` over the given exponents.
pub fn denominator_poly(beta: &[i64]) -> LambdaPoly {
    beta.iter().fold(vec![LaurentPoly::one()], |acc, &b| {
        lambda_mul(&acc, &linear_factor(1, b))
    })
}

/// Evaluates at `λ = s q^{−a}`.
fn eval_at_root(p: &[LaurentPoly], sign: i8, a: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (k, c) in p.iter().enumerate() {
        let term = c.shift(-a * k as i64);
        if sign < 0 && k % 2 == 1 {
            out -= &term;
        } else {
            out += &term;
        }
    }
    out
}

/// Exact division by `1 − s λ q^a`.
fn divide_linear(p: &[LaurentPoly], sign: i8, a: i64) -> Option<LambdaPoly> {
    if p.is_empty() {
        return Some(Vec::new());
    }
    let d = p.len() - 1;
    if d == 0 {
        return None;
    }
    let root = LaurentPoly::q_pow(a).scale(&rat(sign as i64));
    let mut quo = Vec::with_capacity(d);
    let mut prev = LaurentPoly::zero();
    for c in p.iter().take(d) {
        let v = c + &(&root * &prev);
        quo.push(v.clone());
        prev = v;
    }
    if (&p[d] + &(&root * &prev)).is_zero() {
        Some(quo)
    } else {
        None
    }
}

fn render_lambda_power(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => " λ".to_string(),
        _ => format!(" λ^{k}"),
    }
}

fn render_factor(sign: i8, a: i64) -> String {
    let op = if sign > 0 { '-' } else { '+' };
    match a {
        0 => format!("(1{op}λ)"),
        1 => format!("(1{op}q λ)"),
        _ => format!("(1{op}q^{a} λ)"),
    }
}

fn render_lambda_poly(p: &[LaurentPoly]) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = match (c.as_monomial(), k) {
            (Some((v, 0)), 0) => v.abs().to_string(),
            (Some((v, e)), _) => {
                let mono = LaurentPoly::monomial(v.abs(), e).to_string();
                if mono == "1" && k > 0 {
                    String::new()
                } else {
                    mono
                }
            }
            _ => format!("({c})"),
        };
        let negative = c.as_monomial().is_some_and(|(v, _)| v.is_negative());
        let body = format!("{body}{}", render_lambda_power(k)).trim().to_string();
        if out.is_empty() {
            out = if negative { format!("-{body}") } else { body };
        } else {
            out.push_str(if negative { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// A Harer–Zagier function `λ N(λ) / ∏(1 − λ q^{β_i})`.
#[derive(Debug, Clone)]
pub struct HZFunction {
    numerator: LambdaPoly,
    /// Remaining denominator exponents, descending.
    beta: Vec<i64>,
    /// Exponents cancelled against the numerator, descending.
    cancelled: Vec<i64>,
    pub strands: usize,
    pub writhe: i64,
}

/// `β_i = −w − m + 2i` for `i = 0..=m`, in descending order.
pub fn standard_beta(strands: usize, writhe: i64) -> Vec<i64> {
    let m = strands as i64;
    (0..=m).rev().map(|i| -writhe - m + 2 * i).collect()
}

impl HZFunction {
    /// Builds `λ N / ∏(1 − λq^β)` and cancels common factors.
    pub fn new(numerator: LambdaPoly, beta: Vec<i64>, strands: usize, writhe: i64) -> Result<Self> {
        let mut sorted = beta.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(HzError::RepeatedBeta(sorted));
        }
        let mut numerator = numerator;
        trim(&mut numerator);
        let mut z = HZFunction {
            numerator,
            beta: sorted,
            cancelled: Vec::new(),
            strands,
            writhe,
        };
        z.cancel();
        Ok(z)
    }

    fn cancel(&mut self) {
        if self.numerator.is_empty() {
            return;
        }
        let mut keep = Vec::new();
        for &b in &self.beta {
            if eval_at_root(&self.numerator, 1, b).is_zero() {
                self.numerator = divide_linear(&self.numerator, 1, b).expect("root implies divisibility");
                self.cancelled.push(b);
            } else {
                keep.push(b);
            }
        }
        self.beta = keep;
    }

    /// `N(λ)`, the numerator without the global factor `λ`.
    pub fn numerator(&self) -> &[LaurentPoly] {
        &self.numerator
    }

    /// Denominator exponents after cancellation, descending.
    pub fn beta(&self) -> &[i64] {
        &self.beta
    }

    pub fn cancelled(&self) -> &[i64] {
        &self.cancelled
    }

    /// Denominator exponents before cancellation, descending.
    pub fn beta_full(&self) -> Vec<i64> {
        let mut all: Vec<i64> = self.beta.iter().chain(&self.cancelled).copied().collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        all
    }

    /// The numerator over the pre-cancellation denominator.
    pub fn full_numerator(&self) -> LambdaPoly {
        lambda_mul(&self.numerator, &denominator_poly(&self.cancelled))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// The numerator over the denominator `∏_{β ∈ target}(1 − λq^β)`, which
    /// must contain the current denominator.
    pub fn numerator_over(&self, target: &[i64]) -> Option<LambdaPoly> {
        let extra: Vec<i64> = target.iter().copied().filter(|b| !self.beta.contains(b)).collect();
        if extra.len() + self.beta.len() != target.len() {
            return None;
        }
        Some(lambda_mul(&self.numerator, &denominator_poly(&extra)))
    }

    pub fn scale(&self, c: &BigRational) -> HZFunction {
        let numerator = self.numerator.iter().map(|p| p.scale(c)).collect();
        HZFunction::new(numerator, self.beta.clone(), self.strands, self.writhe).expect("distinct exponents")
    }

    /// Sum of two HZ functions over the union of their denominators; the
    /// strand count and writhe of `self` are kept.
    pub fn add(&self, other: &HZFunction) -> HZFunction {
        let mut union = self.beta.clone();
        for &b in &other.beta {
            if !union.contains(&b) {
                union.push(b);
            }
        }
        let a = self.numerator_over(&union).expect("union contains own exponents");
        let b = other.numerator_over(&union).expect("union contains own exponents");
        HZFunction::new(lambda_add(&a, &b), union, self.strands, self.writhe).expect("distinct exponents")
    }

    pub fn sub(&self, other: &HZFunction) -> HZFunction {
        self.add(&other.scale(&rat(-1)))
    }

    /// Power-series coefficients of `λ^0 … λ^terms`.
    pub fn series(&self, terms: usize) -> Vec<LaurentPoly> {
        let mut s = vec![LaurentPoly::zero(); terms + 1];
        for (k, c) in self.numerator.iter().enumerate() {
            if k < terms {
                s[k + 1] = c.clone();
            }
        }
        for &b in &self.beta {
            let qb = LaurentPoly::q_pow(b);
            for k in 1..=terms {
                let prev = &s[k - 1] * &qb;
                s[k] += &prev;
            }
        }
        s
    }

    /// JSON form `{"beta": …, "numerator": [[λ-power, poly], …], "cert": …}`.
    pub fn to_json(&self) -> Value {
        let numerator: Vec<Value> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!([k + 1, c]))
            .collect();
        json!({
            "beta": self.beta,
            "beta_full": self.beta_full(),
            "numerator": numerator,
            "cert": factorise(self).to_json(),
        })
    }

    /// Rendering with the numerator factorised when possible, e.g.
    /// `λ(1-q^13 λ)/((1-q λ)(1-q^5 λ)(1-q^7 λ))`.
    pub fn pretty(&self) -> String {
        let mut beta = self.beta.clone();
        beta.sort_unstable();
        let den: String = beta.iter().map(|&b| render_factor(1, b)).collect();
        let num = match factorise(self) {
            FactorCert::Factorisable { constant, factors, .. } => {
                let mut s = match constant.as_monomial() {
                    Some((c, 0)) if c.is_one() => String::new(),
                    Some((c, 0)) if (-c.clone()).is_one() => "-".to_string(),
                    _ => format!("({constant})"),
                };
                s.push('λ');
                for (sign, a) in factors {
                    s.push_str(&render_factor(sign, a));
                }
                s
            }
            FactorCert::NonFactorisable { .. } => format!("λ({})", render_lambda_poly(&self.numerator)),
        };
        match beta.len() {
            0 => num,
            1 => format!("{num}/{den}"),
            _ => format!("{num}/({den})"),
        }
    }
}

/// Equality as rational functions of `λ`.
impl PartialEq for HZFunction {
    fn eq(&self, other: &Self) -> bool {
        self.beta == other.beta && self.numerator == other.numerator
    }
}

impl fmt::Display for HZFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Transform of `H̄ = Σ_k p_k A^k / d` over a prescribed denominator:
/// `q^{Nk} ↦ 1/(1 − λq^k)`.
pub fn transform_with_beta(hbar: &RatFuncA, beta: &[i64], strands: usize, writhe: i64) -> Result<HZFunction> {
    let mut total: LambdaPoly = Vec::new();
    for (k, p) in hbar.num().terms() {
        if !beta.contains(&k) {
            return Err(HzError::Malformed(format!("A-exponent {k} is not among {beta:?}")));
        }
        let others: Vec<i64> = beta.iter().copied().filter(|&b| b != k).collect();
        let term: LambdaPoly = denominator_poly(&others).iter().map(|c| c * p).collect();
        total = lambda_add(&total, &term);
    }
    let mut coeffs = Vec::with_capacity(total.len());
    for c in &total {
        coeffs.push(
            c.div_exact(hbar.den())
                .ok_or_else(|| HzError::Malformed(format!("HZ coefficient {c} is not a Laurent polynomial")))?,
        );
    }
    if coeffs.first().is_some_and(|c| !c.is_zero()) {
        return Err(HzError::Malformed("H̄ does not vanish at A = 1".into()));
    }
    if !coeffs.is_empty() {
        coeffs.remove(0);
    }
    HZFunction::new(coeffs, beta.to_vec(), strands, writhe)
}

/// The HZ transform of the HOMFLY–PT polynomial of a braid closure.
pub fn hz_transform(h: &HomflyPoly) -> Result<HZFunction> {
    transform_with_beta(
        &h.unnormalised,
        &standard_beta(h.strands, h.writhe),
        h.strands,
        h.writhe,
    )
}

/// The HZ transform of any `H̄` whose `A`-exponents have distinct values,
/// using exactly those exponents as the denominator.
pub fn hz_transform_general(hbar: &RatFuncA) -> Result<HZFunction> {
    let beta = hbar.a_exponents();
    transform_with_beta(hbar, &beta, 0, 0)
}

/// Closed form of `Z(A^{−w} S_Q)`: with `x = λ q^{−w−m}`,
/// `λN = q^m Σ_T q^{2·maj(T)} x^{des(T)+1}` over standard tableaux `T`,
/// where `i` is a descent when `i+1` lies in a lower row than `i`.
pub fn hz_char(q: &YoungDiagram, writhe: i64) -> Result<HZFunction> {
    let m = q.size();
    if m > crate::young::MAX_BOXES {
        return Err(HzError::UnsupportedDiagram {
            strands: m,
            diagram: q.to_string(),
        });
    }
    let num = char_numerator(q, writhe);
    HZFunction::new(num, standard_beta(m, writhe), m, writhe)
}

fn char_numerator(q: &YoungDiagram, writhe: i64) -> LambdaPoly {
    let m = q.size();
    let mi = m as i64;
    let mut num: LambdaPoly = vec![LaurentPoly::zero(); m];
    for t in standard_tableaux(q) {
        let rows = t.row_sequence();
        let descents: Vec<usize> = (1..m).filter(|&i| rows[i] > rows[i - 1]).collect();
        let maj: i64 = descents.iter().map(|&i| i as i64).sum();
        let des = descents.len();
        let e = mi + 2 * maj + (-writhe - mi) * (des as i64 + 1);
        num[des].add_term(e, rat(1));
    }
    trim(&mut num);
    num
}

/// `Z = Σ_Q h^Q Z(Ŝ_Q)` from the Racah coefficients of a braid.
pub fn hz_via_characters(b: &BraidWord) -> Result<HZFunction> {
    let racah = racah_table(b)?;
    via_racah(&racah, b.strands(), b.writhe())
}

/// `Σ_Q h^Q Z(Ŝ_Q)` for a given Racah table.
pub fn via_racah(racah: &BTreeMap<YoungDiagram, LaurentPoly>, strands: usize, writhe: i64) -> Result<HZFunction> {
    let mut total: LambdaPoly = Vec::new();
    for (q, h) in racah {
        let term: LambdaPoly = char_numerator(q, writhe).iter().map(|c| c * h).collect();
        total = lambda_add(&total, &term);
    }
    HZFunction::new(total, standard_beta(strands, writhe), strands, writhe)
}

/// `H̄(q^N, q)` for `N = 0..=terms`, by direct substitution.
pub fn hz_summation_oracle(h: &HomflyPoly, terms: usize) -> Result<Vec<LaurentPoly>> {
    (0..=terms as i64)
        .map(|n| {
            let v = h.unnormalised.subst_a_qpow(n);
            v.as_laurent()
                .ok_or_else(|| HzError::Consistency(format!("H̄ at A = q^{n} is {v}, not a Laurent polynomial")))
        })
        .collect()
}

/// Factorisability certificate of an HZ numerator.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorCert {
    /// `N = constant · ∏(1 − s λ q^a)` over `factors = [(s, a)]`; the
    /// cancelled exponents are further factors `(1 − λq^β)` of the
    /// pre-cancellation numerator.
    Factorisable {
        constant: LaurentPoly,
        factors: Vec<(i8, i64)>,
        cancelled: Vec<i64>,
    },
    /// `N = ∏(1 − s λ q^a) · witness` with no further monomial-root factor.
    NonFactorisable {
        factors: Vec<(i8, i64)>,
        witness: LambdaPoly,
    },
}

impl FactorCert {
    pub fn is_factorisable(&self) -> bool {
        matches!(self, FactorCert::Factorisable { .. })
    }

    /// The numerator exponents before cancellation, descending, with signs.
    pub fn full_factors(&self) -> Vec<(i8, i64)> {
        let mut all = match self {
            FactorCert::Factorisable { factors, cancelled, .. } => {
                let mut v = factors.clone();
                v.extend(cancelled.iter().map(|&b| (1, b)));
                v
            }
            FactorCert::NonFactorisable { factors, .. } => factors.clone(),
        };
        all.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
        all
    }

    /// Rebuilds the (post-cancellation) numerator.
    pub fn reconstruct(&self) -> LambdaPoly {
        let (base, factors) = match self {
            FactorCert::Factorisable { constant, factors, .. } => (vec![constant.clone()], factors),
            FactorCert::NonFactorisable { factors, witness } => (witness.clone(), factors),
        };
        factors
            .iter()
            .fold(base, |acc, &(s, a)| lambda_mul(&acc, &linear_factor(s, a)))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serialises")
    }
}

/// Splits the numerator into monomial-root linear factors `(1 ∓ λq^a)`.
pub fn factorise(z: &HZFunction) -> FactorCert {
    let mut rest = z.numerator.clone();
    let mut factors = Vec::new();
    let bound = rest
        .iter()
        .filter_map(|c| Some(c.min_exp()?.abs().max(c.max_exp()?.abs())))
        .max()
        .unwrap_or(0)
        + 1;
    let mut progress = true;
    while rest.len() > 1 && progress {
        progress = false;
        'search: for a in -bound..=bound {
            for sign in [1i8, -1] {
                if eval_at_root(&rest, sign, a).is_zero() {
                    rest = divide_linear(&rest, sign, a).expect("root implies divisibility");
                    factors.push((sign, a));
                    progress = true;
                    break 'search;
                }
            }
        }
    }
    factors.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
    let monomial_constant = rest.len() == 1 && rest[0].as_monomial().is_some();
    if monomial_constant {
        FactorCert::Factorisable {
            constant: rest[0].clone(),
            factors,
            cancelled: z.cancelled.clone(),
        }
    } else {
        FactorCert::NonFactorisable { factors, witness: rest }
    }
}

/// Reconstructs `H̄` from an HZ function by partial fractions:
/// `H̄ = Σ_i r_i A^{β_i}` with `r_i` the residue at `λ = q^{−β_i}`.
pub fn inverse_hz(z: &HZFunction) -> Result<RatFuncA> {
    let beta = z.beta();
    if beta.windows(2).any(|w| w[0] == w[1]) {
        return Err(HzError::RepeatedBeta(beta.to_vec()));
    }
    if z.numerator.len() > beta.len() && !z.is_zero() {
        return Err(HzError::Malformed(
            "HZ numerator degree is too high for partial fractions".into(),
        ));
    }
    let mut total = RatFuncA::zero();
    for (i, &b) in beta.iter().enumerate() {
        let num = eval_at_root(&z.numerator, 1, b).shift(-b);
        let mut den = LaurentPoly::one();
        for (j, &c) in beta.iter().enumerate() {
            if i != j {
                den = &den * &(&LaurentPoly::one() - &LaurentPoly::q_pow(c - b));
            }
        }
        total = &total + &RatFuncA::new(LaurentPolyA::monomial(b, num), den);
    }
    Ok(total)
}

/// One condition of a factorisability proposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

/// Outcome of the sufficient factorisability conditions on Racah data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub strands: usize,
    pub writhe: i64,
    pub conditions: Vec<Condition>,
    /// `α_i = γ_i − 2w`, descending, when all conditions hold.
    pub predicted_alpha: Option<Vec<i64>>,
}

impl ConditionReport {
    pub fn satisfied(&self) -> bool {
        self.conditions.iter().all(|c| c.satisfied)
    }
}

/// Exponents `γ` (with multiplicity) when `p = Σ q^γ` has only coefficients +1, …
fn positive_support(p: &LaurentPoly) -> Option<Vec<i64>> {
    let mut out = Vec::new();
    for (e, c) in p.terms() {
        if !c.is_integer() || !c.is_positive() {
            return None;
        }
        let n: i64 = c.to_integer().try_into().ok()?;
        out.extend(std::iter::repeat(e).take(n as usize));
    }
    Some(out)
}

/// Evaluates the sufficient conditions for HZ factorisability of an
/// `m`-strand braid, `m ∈ {3, 4, 5}`: every non-hook coefficient vanishes
/// and `[m−1] h^{[m−1,1]} = −Σ_{i<m−1} q^{γ_i}` with `Σγ = (m−3)w`; at
/// `m = 5` also `(q²+q⁻²)[3] h^{[3,1,1]} = Σ_{i<j} q^{γ_i+γ_j−w}`.
pub fn check_fact_conditions(b: &BraidWord) -> Result<ConditionReport> {
    let m = b.strands();
    if !(3..=5).contains(&m) {
        return Err(HzError::UnsupportedStrands {
            strands: m,
            what: "factorisability conditions",
        });
    }
    let w = b.writhe();
    let racah = racah_table(b)?;
    let mut conditions = Vec::new();
    for (q, h) in &racah {
        if !q.is_hook() && *q >= q.transpose() {
            conditions.push(Condition {
                name: format!("h^{q} = 0"),
                satisfied: h.is_zero(),
                detail: h.to_string(),
            });
        }
    }
    let top = YoungDiagram::hook(m, 1);
    let h_top = &racah[&top];
    let scaled = -&(h_top * &qint(m as i64 - 1));
    let gamma = positive_support(&scaled).filter(|g| g.len() == m - 1);
    let sum_ok = gamma
        .as_ref()
        .is_some_and(|g| g.iter().sum::<i64>() == (m as i64 - 3) * w);
    conditions.push(Condition {
        name: format!("[{}] h^{top} = -Σ q^γ with Σγ = {}", m - 1, (m as i64 - 3) * w),
        satisfied: sum_ok,
        detail: format!("-[{}] h^{top} = {scaled}", m - 1),
    });
    if m == 5 {
        let q311 = YoungDiagram::hook(5, 2);
        let phi = LaurentPoly::from_int_terms(&[(2, 1), (-2, 1)]);
        let lhs = &(&racah[&q311] * &phi) * &qint(3);
        let (ok, rhs) = match &gamma {
            Some(g) if sum_ok => {
                let mut rhs = LaurentPoly::zero();
                for i in 0..g.len() {
                    for j in i + 1..g.len() {
                        rhs.add_term(g[i] + g[j] - w, rat(1));
                    }
                }
                (lhs == rhs, rhs.to_string())
            }
            _ => (false, "undefined".to_string()),
        };
        conditions.push(Condition {
            name: "(q^2+q^-2)[3] h^[3,1,1] = Σ_{i<j} q^(γi+γj-w)".into(),
            satisfied: ok,
            detail: format!("lhs {lhs}, rhs {rhs}"),
        });
    }
    let satisfied = conditions.iter().all(|c| c.satisfied);
    let predicted_alpha = if satisfied {
        gamma.map(|g| {
            let mut a: Vec<i64> = g.iter().map(|x| x - 2 * w).collect();
            a.sort_unstable_by(|x, y| y.cmp(x));
            a
        })
    } else {
        None
    };
    Ok(ConditionReport {
        strands: m,
        writhe: w,
        conditions,
        predicted_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::torus_braid;
    use crate::homfly::homfly;
    use crate::qring::parse_laurent;

    fn word(m: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(m, letters.to_vec()).unwrap()
    }

    fn z_of(b: &BraidWord) -> HZFunction {
        hz_transform(&homfly(b).unwrap()).unwrap()
    }

    fn poly(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    #[test]
    fn unknot_and_two_strand_forms() {
        let unknot = z_of(&word(2, &[1]));
        assert_eq!(unknot.beta(), &[1, -1]);
        assert_eq!(unknot.numerator(), &[LaurentPoly::one()]);
        assert_eq!(unknot.to_string(), "λ/((1-q^-1 λ)(1-q λ))");
        for w in -7i64..=7 {
            let letters: Vec<i32> = vec![w.signum() as i32; w.unsigned_abs() as usize];
            let z = z_of(&word(2, &letters));
            let sign = if w % 2 == 0 { 1 } else { -1 };
            let expected = vec![LaurentPoly::one(), LaurentPoly::q_pow(-3 * w).scale(&rat(sign))];
            let closed = HZFunction::new(expected, standard_beta(2, w), 2, w).unwrap();
            assert_eq!(z, closed, "w = {w}");
        }
    }

    #[test]
    fn five_two_is_factorisable() {
        let z = z_of(&word(3, &[1, 1, 1, 2, -1, 2]).mirror());
        assert_eq!(z.to_string(), "λ(1-q^13 λ)/((1-q λ)(1-q^5 λ)(1-q^7 λ))");
        let cert = factorise(&z);
        assert!(cert.is_factorisable());
        assert_eq!(cert.full_factors(), vec![(1, 13), (1, 3)]);
        assert_eq!(cert.reconstruct(), z.numerator().to_vec());
    }

    #[test]
    fn character_closed_forms() {
        let d21 = YoungDiagram::from_rows(&[2, 1]);
        let d22 = YoungDiagram::from_rows(&[2, 2]);
        let d32 = YoungDiagram::from_rows(&[3, 2]);
        for w in -3i64..=3 {
            let z = hz_char(&d21, w).unwrap();
            assert_eq!(
                z.numerator_over(&standard_beta(3, w)).unwrap(),
                vec![LaurentPoly::zero(), qint(2).shift(-2 * w)]
            );
            let z = hz_char(&d22, w).unwrap();
            assert_eq!(
                z.numerator_over(&standard_beta(4, w)).unwrap(),
                vec![
                    LaurentPoly::zero(),
                    LaurentPoly::q_pow(-2 * w),
                    LaurentPoly::q_pow(-3 * w)
                ]
            );
            let z = hz_char(&d32, w).unwrap();
            assert_eq!(
                z.numerator_over(&standard_beta(5, w)).unwrap(),
                vec![LaurentPoly::zero(), qint(2).shift(-2 * w), qint(3).shift(-3 * w)]
            );
        }
    }

    #[test]
    fn closed_forms_match_direct_transform() {
        for m in 1..=6 {
            for q in YoungDiagram::partitions(m) {
                let s = crate::young::schur(&q).unwrap().to_ratfunc();
                for w in [-3i64, 0, 2] {
                    let hbar = RatFuncA::new(s.num().shift_a(-w), s.den().clone());
                    let direct = transform_with_beta(&hbar, &standard_beta(m, w), m, w).unwrap();
                    assert_eq!(hz_char(&q, w).unwrap(), direct, "{q} w={w}");
                }
            }
        }
    }

    #[test]
    fn series_matches_summation() {
        for b in [
            word(2, &[1]),
            word(2, &[1, 1, 1]),
            word(3, &[1, -2, 1, -2]),
            word(4, &[-1, 2, -3, -1, 2, 3, 3]),
        ] {
            let h = homfly(&b).unwrap();
            let z = hz_transform(&h).unwrap();
            let terms = b.strands() + 3;
            assert_eq!(z.series(terms), hz_summation_oracle(&h, terms).unwrap(), "{b}");
            assert_eq!(hz_via_characters(&b).unwrap(), z);
            assert_eq!(inverse_hz(&z).unwrap(), h.unnormalised);
        }
        let unknot = homfly(&word(2, &[1])).unwrap();
        let s = hz_summation_oracle(&unknot, 4).unwrap();
        let expected: Vec<LaurentPoly> = (0..=4).map(qint).collect();
        assert_eq!(s, expected);
    }

    #[test]
    fn figure_eight_is_not_factorisable() {
        let z = z_of(&word(3, &[1, -2, 1, -2]));
        assert!(!factorise(&z).is_factorisable());
        assert_eq!(z.beta_full(), vec![3, 1, -1, -3]);
        let report = check_fact_conditions(&word(3, &[1, -2, 1, -2])).unwrap();
        assert!(!report.satisfied());
    }

    #[test]
    fn ten_one_three_two() {
        let b = word(4, &[1, 1, 1, -2, -1, -1, -2, -3, 2, -3, -3]);
        let z = z_of(&b);
        let cert = factorise(&z);
        assert!(cert.is_factorisable());
        let alphas: Vec<i64> = cert.full_factors().iter().map(|f| f.1).collect();
        assert_eq!(alphas, vec![15, 1, -1]);
        let report = check_fact_conditions(&b).unwrap();
        assert!(report.satisfied());
        assert_eq!(report.predicted_alpha.unwrap(), vec![15, 1, -1]);
        assert_eq!(
            racah_table(&b).unwrap()[&YoungDiagram::from_rows(&[3, 1])],
            poly("-q^-5 + q^-1 - q + q^5 - q^7")
        );
    }

    #[test]
    fn torus_knots_satisfy_the_conditions() {
        for (m, n) in [(3, 4), (3, 5), (4, 5), (5, 3), (5, 6)] {
            let b = torus_braid(m, n).unwrap();
            let report = check_fact_conditions(&b).unwrap();
            assert!(report.satisfied(), "T({m},{n}): {report:?}");
            let cert = factorise(&z_of(&b));
            let alphas: Vec<i64> = cert.full_factors().iter().map(|f| f.1).collect();
            assert_eq!(Some(alphas), report.predicted_alpha);
        }
    }

    #[test]
    fn jones_is_the_second_series_coefficient() {
        for b in [word(3, &[1, -2, 1, -2]), word(3, &[1, 1, 1, -2, 1, -2])] {
            let z = z_of(&b);
            let j = crate::homfly::jones(&b).unwrap();
            assert_eq!(z.series(2)[2], &qint(2) * &j);
        }
    }
}
