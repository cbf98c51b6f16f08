//! Factorised-form decompositions `Z = Σ_i c_i [α_0, …, α_{m−2}]` of HZ
//! functions, where each bracket stands for
//! `λ ∏(1 − λq^{α_i}) / ∏(1 − λq^{β_j})` with `Σα = Σβ`.
//!
//! Three strands have a closed form in the coefficients of `h^{[21]}`. For
//! four strands the `λ²` numerator coefficient determines everything; for
//! five strands the `λ³` coefficient is matched afterwards by cyclic
//! quadruple corrections `[u,v] − [u,v′] + [u′,v′] − [u′,v]`, which leave
//! every other order unchanged.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{HzError, Result};
use crate::hz::{lambda_add, lambda_mul, standard_beta, HZFunction, LambdaPoly};
use crate::qring::{qint, rat, LaurentPoly};

/// Largest strand count handled by [`decompose`].
pub const MAX_DECOMPOSITION_STRANDS: usize = 5;
/// Largest number of first-stage terms tried by the exact search.
const MAX_SEARCH_TERMS: usize = 6;
/// Largest absolute coefficient tried by the exact search.
const MAX_SEARCH_COEFF: i64 = 3;
/// Node budget of the exact search per term count.
const SEARCH_BUDGET: usize = 400_000;
/// Number of minimal first-stage solutions compared at five strands.
const MAX_FIRST_STAGE: usize = 48;

/// A factorised form `[α_0, …, α_{m−2}]`, the product `∏(1 − λq^{α})`.
/// A factor may instead be `(1 + λq^{α})`, written `α+`; such factors occur
/// for links and in fractional decompositions. Factors are stored by
/// descending exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracket {
    factors: Vec<(i64, bool)>,
}

impl Bracket {
    pub fn new(exponents: Vec<i64>) -> Self {
        Bracket::signed(exponents.into_iter().map(|a| (a, false)).collect())
    }

    /// Factors `(α, plus)`, where `plus` selects `(1 + λq^{α})`.
    pub fn signed(mut factors: Vec<(i64, bool)>) -> Self {
        factors.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Bracket { factors }
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.factors.iter().map(|f| f.0).collect()
    }

    pub fn factors(&self) -> &[(i64, bool)] {
        &self.factors
    }

    pub fn has_plus_factors(&self) -> bool {
        self.factors.iter().any(|f| f.1)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.factors.iter().map(|f| f.0).sum()
    }

    /// `∏(1 ∓ λ q^{α})`.
    pub fn numerator(&self) -> LambdaPoly {
        self.factors.iter().fold(vec![LaurentPoly::one()], |acc, &(a, plus)| {
            let root = LaurentPoly::q_pow(a);
            lambda_mul(&acc, &[LaurentPoly::one(), if plus { root } else { -root }])
        })
    }

    /// Exponents by decreasing absolute value, negative first on ties.
    pub fn display_order(&self) -> Vec<i64> {
        self.display_factors().iter().map(|f| f.0).collect()
    }

    fn display_factors(&self) -> Vec<(i64, bool)> {
        let mut v = self.factors.clone();
        v.sort_by(|a, b| b.0.abs().cmp(&a.0.abs()).then(a.cmp(b)));
        v
    }

    fn factor_labels(&self) -> Vec<String> {
        self.display_factors()
            .iter()
            .map(|&(a, plus)| if plus { format!("{a}+") } else { a.to_string() })
            .collect()
    }

    fn ascending(&self) -> Vec<(i64, bool)> {
        self.factors.iter().rev().copied().collect()
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.factor_labels().join(","))
    }
}

/// A weighted sum of brackets over one denominator `∏(1 − λq^{β})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    beta: Vec<i64>,
    terms: Vec<(BigRational, Bracket)>,
}

impl Decomposition {
    /// Validates bracket lengths and exponent sums, merges repeated
    /// brackets and drops vanishing terms.
    pub fn new(beta: Vec<i64>, terms: Vec<(BigRational, Bracket)>) -> Result<Self> {
        let mut beta = beta;
        beta.sort_unstable_by(|a, b| b.cmp(a));
        if beta.len() < 2 {
            return Err(HzError::Malformed(format!(
                "denominator exponents {beta:?} are too few"
            )));
        }
        let width = beta.len() - 2;
        let total: i64 = beta.iter().sum();
        let mut merged: Vec<(BigRational, Bracket)> = Vec::new();
        for (c, b) in terms {
            if b.len() != width || b.sum() != total {
                return Err(HzError::Malformed(format!(
                    "bracket {b} needs {width} exponents summing to {total}"
                )));
            }
            match merged.iter_mut().find(|(_, x)| *x == b) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, b)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        Ok(Decomposition { beta, terms: merged })
    }

    pub fn beta(&self) -> &[i64] {
        &self.beta
    }

    pub fn terms(&self) -> &[(BigRational, Bracket)] {
        &self.terms
    }

    pub fn strands(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.iter().map(|(c, _)| c.clone()).sum()
    }

    /// The exact sum of the brackets as an HZ function.
    pub fn expand(&self) -> HZFunction {
        let mut num: LambdaPoly = Vec::new();
        for (c, b) in &self.terms {
            let term: LambdaPoly = b.numerator().iter().map(|p| p.scale(c)).collect();
            num = lambda_add(&num, &term);
        }
        let m = self.strands();
        let total: i64 = self.beta.iter().sum();
        let writhe = if total % (m as i64 + 1) == 0 {
            -total / (m as i64 + 1)
        } else {
            0
        };
        HZFunction::new(num, self.beta.clone(), m, writhe).expect("distinct denominator exponents")
    }

    /// Equality of the term multisets, ignoring order.
    pub fn same_terms(&self, other: &Decomposition) -> bool {
        self.beta == other.beta && self.sorted_key() == other.sorted_key()
    }

    fn sorted_key(&self) -> Vec<(Vec<(i64, bool)>, BigRational)> {
        let mut key: Vec<(Vec<(i64, bool)>, BigRational)> =
            self.terms.iter().map(|(c, b)| (b.ascending(), c.clone())).collect();
        key.sort();
        key
    }

    /// Parses the text form, e.g. `-[-5,5]+[-3,3]+[-1,1]` or
    /// `2[3,1,-1,-3] + ([7,-7,1,-1] - [7,-7,3,-3])`.
    pub fn parse(text: &str, beta: &[i64]) -> Result<Self> {
        let mut p = TermParser {
            chars: text.replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let terms = p.sum(&BigRational::one())?;
        if p.pos != p.chars.len() {
            return Err(HzError::Malformed(format!(
                "unexpected input at position {} of {text:?}",
                p.pos
            )));
        }
        Decomposition::new(beta.to_vec(), terms)
    }

    /// `{"beta": […], "terms": [[coefficient, [exponents]], …]}`, with
    /// integer coefficients as numbers and fractions as strings; `(1 + λq^α)`
    /// factors appear as strings such as `"-13+"`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(c, b)| {
                let coeff = match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
                    Some(n) => json!(n),
                    None => json!(c.to_string()),
                };
                let exps: Vec<Value> = if b.has_plus_factors() {
                    b.factor_labels().into_iter().map(Value::from).collect()
                } else {
                    b.display_order().into_iter().map(Value::from).collect()
                };
                json!([coeff, exps])
            })
            .collect();
        json!({ "beta": self.beta, "terms": terms })
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, b)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let coeff = if mag.is_one() { String::new() } else { mag.to_string() };
            write!(f, "{sign}{coeff}{b}")?;
        }
        Ok(())
    }
}

struct TermParser {
    chars: Vec<char>,
    pos: usize,
}

impl TermParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> HzError {
        HzError::Malformed(format!("{what} at position {}", self.pos))
    }

    fn integer(&mut self) -> Option<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        match s.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = start;
                None
            }
        }
    }

    fn coefficient(&mut self) -> Result<BigRational> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(BigRational::one());
        }
        let num = self.integer().ok_or_else(|| self.err("bad coefficient"))?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self
                .integer()
                .filter(|d| *d > 0)
                .ok_or_else(|| self.err("bad denominator"))?;
            return Ok(BigRational::new(num.into(), den.into()));
        }
        if self.peek() == Some('*') {
            self.pos += 1;
        }
        Ok(rat(num))
    }

    fn sum(&mut self, scale: &BigRational) -> Result<Vec<(BigRational, Bracket)>> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    rat(1)
                }
                Some('-') => {
                    self.pos += 1;
                    rat(-1)
                }
                _ if first => rat(1),
                _ => break,
            };
            first = false;
            let c = &(&sign * &self.coefficient()?) * scale;
            match self.peek() {
                Some('[') => {
                    self.pos += 1;
                    let mut factors = Vec::new();
                    loop {
                        let a = self.integer().ok_or_else(|| self.err("expected an exponent"))?;
                        let plus = self.peek() == Some('+');
                        if plus {
                            self.pos += 1;
                        }
                        factors.push((a, plus));
                        match self.peek() {
                            Some(',') => self.pos += 1,
                            Some(']') => {
                                self.pos += 1;
                                break;
                            }
                            _ => return Err(self.err("expected ',' or ']'")),
                        }
                    }
                    out.push((c, Bracket::signed(factors)));
                }
                Some('(') => {
                    self.pos += 1;
                    out.extend(self.sum(&c)?);
                    if self.peek() != Some(')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                }
                _ => return Err(self.err("expected '[' or '('")),
            }
        }
        Ok(out)
    }
}

/// The three-strand decomposition from `h^{[21]}` and the writhe: writing
/// `h^{[21]} = Σ_i (−1)^i η_{−ζ+2i} q^{−ζ+2i}`,
/// `Z = −η_ζ[−2w−ζ−1, −2w+ζ+1] − Σ_{i<ζ/2} (−1)^i (η_{ζ−2i} − η_{ζ−2−2i}) [−2w−ζ+1+2i, −2w+ζ−1−2i]`.
pub fn decompose3(h21: &LaurentPoly, writhe: i64) -> Result<Decomposition> {
    let zeta = h21
        .max_exp()
        .ok_or_else(|| HzError::Malformed("h^[21] vanishes".into()))?;
    if h21.min_exp() != Some(-zeta) || h21.terms().any(|(e, c)| h21.coeff(-e) != *c) {
        return Err(HzError::Malformed(format!("h^[21] = {h21} is not symmetric")));
    }
    let beta = standard_beta(3, writhe);
    if zeta % 2 != 0 {
        return pair_decomposition(&(-&(&h21.shift(-2 * writhe) * &qint(2))), &rat(1), beta);
    }
    let eta = |e: i64| {
        let c = h21.coeff(e);
        if ((e + zeta) / 2) % 2 == 0 {
            c
        } else {
            -c
        }
    };
    let w2 = -2 * writhe;
    let mut terms = vec![(-eta(zeta), Bracket::new(vec![w2 - zeta - 1, w2 + zeta + 1]))];
    for i in 0..zeta / 2 {
        let sign = if i % 2 == 0 { rat(-1) } else { rat(1) };
        let c = &sign * &(eta(zeta - 2 * i) - eta(zeta - 2 - 2 * i));
        terms.push((c, Bracket::new(vec![w2 - zeta + 1 + 2 * i, w2 + zeta - 1 - 2 * i])));
    }
    Decomposition::new(beta, terms)
}

/// Three strands from `P = −n_1 = Σ p (q^a + q^b)` with `a + b = Σβ`: the
/// coefficient of each pair is read off its upper exponent. When the pair
/// coefficients do not add up to the constant term `n_0`, each pair is split
/// as `c[a,b] + d[a+,b+]` with `c − d = p` and `c + d = n_0/k` over `k` pairs.
fn pair_decomposition(p: &LaurentPoly, n0: &BigRational, beta: Vec<i64>) -> Result<Decomposition> {
    let s: i64 = beta.iter().sum();
    let mut pairs = Vec::new();
    for (e, c) in p.terms().rev() {
        if p.coeff(s - e) != *c {
            return Err(HzError::Malformed(format!("{p} is not symmetric about {s}/2")));
        }
        if 2 * e > s {
            pairs.push((c.clone(), e));
        } else if 2 * e == s {
            pairs.push((c / rat(2), e));
        }
    }
    let total: BigRational = pairs.iter().map(|(c, _)| c.clone()).sum();
    let mut terms = Vec::new();
    if total == *n0 || pairs.is_empty() {
        for (c, e) in pairs {
            terms.push((c, Bracket::new(vec![e, s - e])));
        }
    } else {
        let share = n0 / rat(pairs.len() as i64);
        for (c, e) in pairs {
            let minus = (&share + &c) / rat(2);
            let plus = (&share - &c) / rat(2);
            terms.push((minus, Bracket::new(vec![e, s - e])));
            terms.push((plus, Bracket::signed(vec![(e, true), (s - e, true)])));
        }
    }
    Decomposition::new(beta, terms)
}

/// Three-strand decomposition through pair coefficients of the `λ²`
/// numerator term, independent of the `η` closed form.
pub fn decompose3_pairs(z: &HZFunction) -> Result<Decomposition> {
    let beta = z.beta().to_vec();
    if beta.len() != 4 {
        return Err(HzError::UnsupportedStrands {
            strands: beta.len().saturating_sub(1),
            what: "three-strand pair decomposition",
        });
    }
    let n0 = z
        .numerator()
        .first()
        .and_then(|p| p.as_constant())
        .unwrap_or_else(BigRational::zero);
    let n1 = z.numerator().get(1).cloned().unwrap_or_default();
    pair_decomposition(&-n1, &n0, beta)
}

type IntPoly = BTreeMap<i64, i64>;

fn to_int_poly(p: &LaurentPoly) -> Option<IntPoly> {
    p.terms()
        .map(|(e, c)| {
            c.is_integer()
                .then(|| c.to_integer().to_i64())
                .flatten()
                .map(|v| (e, v))
        })
        .collect()
}

fn apply(res: &mut IntPoly, poly: &IntPoly, c: i64) {
    for (&e, &v) in poly {
        let entry = res.entry(e).or_insert(0);
        *entry -= c * v;
        if *entry == 0 {
            res.remove(&e);
        }
    }
}

fn e1_int(t: &[i64]) -> IntPoly {
    let mut p = IntPoly::new();
    for &a in t {
        *p.entry(a).or_insert(0) += 1;
    }
    p
}

fn e1(t: &[i64]) -> LaurentPoly {
    LaurentPoly::from_int_terms(&t.iter().map(|&a| (a, 1)).collect::<Vec<_>>())
}

fn e2(t: &[i64]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            p.add_term(t[i] + t[j], rat(1));
        }
    }
    p
}

/// Non-increasing tuples of `len` values from `values` (descending) with
/// the given sum.
fn tuples_with_sum(values: &[i64], len: usize, sum: i64) -> Vec<Vec<i64>> {
    fn rec(values: &[i64], start: usize, len: usize, sum: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let (lo, hi) = (*values.last().unwrap(), values[0]);
        for i in start..values.len() {
            let v = values[i];
            let rest = sum - v;
            let n = len as i64 - 1;
            if rest > n * v.min(hi) || rest < n * lo {
                continue;
            }
            cur.push(v);
            rec(values, i, len - 1, rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if !values.is_empty() {
        rec(values, 0, len, sum, &mut Vec::new(), &mut out);
    }
    out
}

/// Minimal-term exact search for `P = Σ c_i e_1(α_i)`.
struct FirstStage {
    tuples: Vec<Vec<i64>>,
    polys: Vec<IntPoly>,
    containing: HashMap<i64, Vec<usize>>,
    width: usize,
    nodes: usize,
    solutions: Vec<Vec<(i64, usize)>>,
}

impl FirstStage {
    fn new(tuples: Vec<Vec<i64>>, width: usize) -> Self {
        let polys: Vec<IntPoly> = tuples.iter().map(|t| e1_int(t)).collect();
        let mut containing: HashMap<i64, Vec<usize>> = HashMap::new();
        for (i, p) in polys.iter().enumerate() {
            for &e in p.keys() {
                containing.entry(e).or_default().push(i);
            }
        }
        FirstStage {
            tuples,
            polys,
            containing,
            width,
            nodes: 0,
            solutions: Vec::new(),
        }
    }

    fn run(&mut self, target: &IntPoly) -> bool {
        for k in 1..=MAX_SEARCH_TERMS {
            self.nodes = 0;
            let mut res = target.clone();
            let mut used = vec![false; self.tuples.len()];
            self.dfs(&mut res, k, &mut Vec::new(), &mut used);
            if !self.solutions.is_empty() {
                return true;
            }
            if self.nodes >= SEARCH_BUDGET {
                return false;
            }
        }
        false
    }

    fn dfs(&mut self, res: &mut IntPoly, k_left: usize, chosen: &mut Vec<(i64, usize)>, used: &mut [bool]) {
        if self.solutions.len() >= MAX_FIRST_STAGE || self.nodes >= SEARCH_BUDGET {
            return;
        }
        self.nodes += 1;
        if res.is_empty() {
            let mut sol = chosen.clone();
            sol.sort_by_key(|&(_, i)| i);
            if !self.solutions.contains(&sol) {
                self.solutions.push(sol);
            }
            return;
        }
        if k_left == 0 || res.len() > self.width * k_left {
            return;
        }
        let weight: i64 = res.values().map(|v| v.abs()).sum();
        if weight > self.width as i64 * MAX_SEARCH_COEFF * k_left as i64 {
            return;
        }
        let mut pivot = None;
        let mut best = usize::MAX;
        for &e in res.keys() {
            let n = self
                .containing
                .get(&e)
                .map(|v| v.iter().filter(|&&i| !used[i]).count())
                .unwrap_or(0);
            if n < best {
                best = n;
                pivot = Some(e);
            }
        }
        let Some(pivot) = pivot.filter(|_| best > 0) else {
            return;
        };
        let cands: Vec<usize> = self.containing[&pivot].iter().copied().filter(|&i| !used[i]).collect();
        for i in cands {
            let mult = self.polys[i][&pivot];
            let coeffs: Vec<i64> = if k_left == 1 {
                let r = res[&pivot];
                if r % mult != 0 {
                    continue;
                }
                vec![r / mult]
            } else {
                (1..=MAX_SEARCH_COEFF).flat_map(|c| [c, -c]).collect()
            };
            used[i] = true;
            for c in coeffs {
                if c == 0 || c.abs() > MAX_SEARCH_COEFF {
                    continue;
                }
                let poly = self.polys[i].clone();
                apply(res, &poly, c);
                chosen.push((c, i));
                self.dfs(res, k_left - 1, chosen, used);
                chosen.pop();
                apply(res, &poly, -c);
            }
            used[i] = false;
        }
    }
}

/// Values of the given parity, as equal as possible, with the given sum.
fn balanced_tuple(len: usize, sum: i64, parity: i64) -> Option<Vec<i64>> {
    let l = len as i64;
    if len == 0 {
        return (sum == 0).then(Vec::new);
    }
    if (sum - l * parity).rem_euclid(2) != 0 {
        return None;
    }
    let mut x0 = (sum).div_euclid(l);
    if (x0 - parity).rem_euclid(2) != 0 {
        x0 -= 1;
    }
    let extra = (sum - l * x0) / 2;
    Some((0..l).map(|i| if i < extra { x0 + 2 } else { x0 }).collect())
}

fn common_parity(p: &LaurentPoly) -> Result<i64> {
    let mut parity = None;
    for (e, _) in p.terms() {
        let r = e.rem_euclid(2);
        if parity.is_some_and(|q| q != r) {
            return Err(HzError::DecompositionNotFound {
                residual: format!("exponents of {p} have mixed parity"),
            });
        }
        parity = Some(r);
    }
    Ok(parity.unwrap_or(0))
}

/// Always-successful first stage: one balanced bracket carrying the
/// coefficient sum, plus pairs `[ρ, e+2, e−2] − [ρ, e, e]` realising the
/// second differences `q^{e+2} − 2q^e + q^{e−2}` of the remainder.
fn constructive_first_stage(
    p: &LaurentPoly,
    n0: &BigRational,
    width: usize,
    s: i64,
) -> Result<Vec<(BigRational, Vec<i64>)>> {
    let parity = common_parity(p)?;
    let fail = |r: &LaurentPoly| HzError::DecompositionNotFound {
        residual: format!("first-order remainder {r}"),
    };
    let base = balanced_tuple(width, s, parity).ok_or_else(|| fail(p))?;
    let mut r = p - &e1(&base).scale(n0);
    let mut out = vec![(n0.clone(), base)];
    let floor = r.min_exp().unwrap_or(0) - 4;
    while let Some(top) = r.max_exp() {
        if top < floor {
            return Err(fail(&r));
        }
        let c = r.coeff(top);
        let e = top - 2;
        let rest = balanced_tuple(width - 2, s - 2 * e, parity).ok_or_else(|| fail(&r))?;
        let mut up = rest.clone();
        up.extend([e + 2, e - 2]);
        let mut flat = rest;
        flat.extend([e, e]);
        out.push((c.clone(), up));
        out.push((-c.clone(), flat));
        let g = LaurentPoly::from_int_terms(&[(e + 2, 1), (e, -2), (e - 2, 1)]);
        r = &r - &g.scale(&c);
    }
    Ok(out)
}

/// A cyclic correction `t([u∪v] − [u∪v′] + [u′∪v′] − [u′∪v])`.
#[derive(Debug, Clone)]
struct Quadruple {
    t: BigRational,
    u: [i64; 2],
    u2: [i64; 2],
    v: [i64; 2],
    v2: [i64; 2],
}

impl Quadruple {
    fn terms(&self) -> Vec<(BigRational, Vec<i64>)> {
        let join = |a: &[i64; 2], b: &[i64; 2]| vec![a[0], a[1], b[0], b[1]];
        vec![
            (self.t.clone(), join(&self.u, &self.v)),
            (-self.t.clone(), join(&self.u, &self.v2)),
            (self.t.clone(), join(&self.u2, &self.v2)),
            (-self.t.clone(), join(&self.u2, &self.v)),
        ]
    }
}

fn pair_poly(a: &[i64; 2]) -> IntPoly {
    e1_int(a)
}

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (&x, &u) in a {
        for (&y, &v) in b {
            *out.entry(x + y).or_insert(0) += u * v;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn int_sub(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = a.clone();
    apply(&mut out, b, 1);
    out
}

/// Normalised key of a polynomial up to an integer multiple: the multiple
/// and the primitive part with positive leading coefficient.
fn primitive_key(p: &IntPoly) -> Option<(i64, Vec<(i64, i64)>)> {
    let (_, &lead) = p.iter().next_back()?;
    let g = p.values().fold(0i64, |g, &v| num_integer::gcd(g, v));
    let scale = if lead < 0 { -g } else { g };
    Some((scale, p.iter().map(|(&e, &v)| (e, v / scale)).collect()))
}

/// Two exponent pairs with equal sums and the difference of their products.
type PairDifference = ([i64; 2], [i64; 2], IntPoly);

/// Primitive-key index: normalised polynomial terms to `(scale, product)`.
type ProductIndex = HashMap<Vec<(i64, i64)>, Vec<(i64, usize)>>;

/// Candidate products `(u − u′)(v − v′)` over exponent pairs of a range.
struct Corrections {
    products: Vec<(IntPoly, [[i64; 2]; 4])>,
    index: ProductIndex,
}

impl Corrections {
    fn new(values: &[i64], s: i64) -> Self {
        let mut by_sum: BTreeMap<i64, Vec<[i64; 2]>> = BTreeMap::new();
        for (i, &a) in values.iter().enumerate() {
            for &b in &values[i..] {
                by_sum.entry(a + b).or_default().push([a, b]);
            }
        }
        let mut diffs: BTreeMap<i64, Vec<PairDifference>> = BTreeMap::new();
        for (&sigma, pairs) in &by_sum {
            for i in 0..pairs.len() {
                for j in i + 1..pairs.len() {
                    let d = int_sub(&pair_poly(&pairs[i]), &pair_poly(&pairs[j]));
                    diffs.entry(sigma).or_default().push((pairs[i], pairs[j], d));
                }
            }
        }
        let mut products = Vec::new();
        for (&su, du) in &diffs {
            let sv = s - su;
            if sv < su {
                continue;
            }
            let Some(dv) = diffs.get(&sv) else { continue };
            for (i, (u, u2, pu)) in du.iter().enumerate() {
                for (j, (v, v2, pv)) in dv.iter().enumerate() {
                    if su == sv && j < i {
                        continue;
                    }
                    let x = int_mul(pu, pv);
                    if !x.is_empty() {
                        products.push((x, [*u, *u2, *v, *v2]));
                    }
                }
            }
        }
        let mut index: ProductIndex = HashMap::new();
        for (i, (x, _)) in products.iter().enumerate() {
            if let Some((scale, key)) = primitive_key(x) {
                index.entry(key).or_default().push((scale, i));
            }
        }
        Corrections { products, index }
    }

    fn quad(&self, i: usize, t: i64) -> Quadruple {
        let [u, u2, v, v2] = self.products[i].1;
        Quadruple {
            t: rat(t),
            u,
            u2,
            v,
            v2,
        }
    }

    /// `r = t·X` for a single product `X`.
    fn single(&self, r: &IntPoly) -> Option<Quadruple> {
        let (scale, key) = primitive_key(r)?;
        let &(s, i) = self.index.get(&key)?.iter().find(|(s, _)| scale % s == 0)?;
        Some(self.quad(i, scale / s))
    }

    /// At most two corrections matching `r`.
    fn search(&self, r: &IntPoly) -> Option<Vec<Quadruple>> {
        if r.is_empty() {
            return Some(Vec::new());
        }
        if let Some(q) = self.single(r) {
            return Some(vec![q]);
        }
        let pivot = *r.keys().next_back()?;
        for (i, (x, _)) in self.products.iter().enumerate() {
            let Some(&xv) = x.get(&pivot) else { continue };
            for t in [1, -1, 2, -2] {
                if xv * t == 0 {
                    continue;
                }
                let mut rest = r.clone();
                apply(&mut rest, x, t);
                if rest.is_empty() {
                    return Some(vec![self.quad(i, t)]);
                }
                if let Some(q) = self.single(&rest) {
                    return Some(vec![self.quad(i, t), q]);
                }
            }
        }
        None
    }
}

/// Always-successful second stage: `r = q^{S/2} Σ_l g_l (φ_1 − 2)(φ_l − 2)`
/// with `φ_n = q^{2n} + q^{−2n}`, one quadruple per `l`.
fn phi_corrections(r: &LaurentPoly, s: i64, parity: i64) -> Result<Vec<Quadruple>> {
    let fail = |r: &LaurentPoly| HzError::DecompositionNotFound {
        residual: format!("second-order remainder {r}"),
    };
    if r.is_zero() {
        return Ok(Vec::new());
    }
    if s % 2 != 0 {
        return Err(fail(r));
    }
    let half = s / 2;
    let mut g = r.shift(-half);
    let x = {
        let c = half.div_euclid(2);
        if (c - parity).rem_euclid(2) == 0 {
            c
        } else {
            c + 1
        }
    };
    let y = half - x;
    if (y - parity).rem_euclid(2) != 0 {
        return Err(fail(r));
    }
    let phi1 = LaurentPoly::from_int_terms(&[(2, 1), (0, -2), (-2, 1)]);
    let mut out = Vec::new();
    while let Some(top) = g.max_exp() {
        if top <= 2 || top % 2 != 0 {
            return Err(fail(&g.shift(half)));
        }
        let c = g.coeff(top);
        let l = top / 2 - 1;
        let phil = LaurentPoly::from_int_terms(&[(2 * l, 1), (0, -2), (-2 * l, 1)]);
        g = &g - &(&phi1 * &phil).scale(&c);
        out.push(Quadruple {
            t: c,
            u: [x + 2, x - 2],
            u2: [x, x],
            v: [y + 2 * l, y - 2 * l],
            v2: [y, y],
        });
    }
    Ok(out)
}

fn to_terms(list: Vec<(BigRational, Vec<i64>)>) -> Vec<(BigRational, Bracket)> {
    list.into_iter().map(|(c, t)| (c, Bracket::new(t))).collect()
}

/// Fewest terms, then the lexicographically smallest sorted exponent tuples.
fn better(a: &Decomposition, b: &Decomposition) -> bool {
    (a.len(), a.sorted_key()) < (b.len(), b.sorted_key())
}

/// Decomposes an HZ function into factorised forms over its reduced
/// denominator (after cancellation), which must have at most six factors;
/// below three strands this is a single bracket. The expansion is verified
/// to reproduce `z` exactly.
pub fn decompose(z: &HZFunction) -> Result<Decomposition> {
    let beta = z.beta().to_vec();
    let m = beta.len().saturating_sub(1);
    if !(1..=MAX_DECOMPOSITION_STRANDS).contains(&m) {
        return Err(HzError::UnsupportedStrands {
            strands: m,
            what: "factorised-form decomposition",
        });
    }
    let s: i64 = beta.iter().sum();
    let num = z.numerator_over(&beta).expect("own denominator");
    let coeff = |k: usize| num.get(k).cloned().unwrap_or_default();
    let n0 = coeff(0)
        .as_constant()
        .ok_or_else(|| HzError::Malformed(format!("HZ numerator constant term {} is not a number", coeff(0))))?;
    let d = if m <= 2 {
        let exponents = if m == 2 { vec![s] } else { Vec::new() };
        Decomposition::new(beta.clone(), vec![(n0, Bracket::new(exponents))])?
    } else if m == 3 {
        let w = -s / 4;
        let h21 = coeff(1)
            .shift(2 * w)
            .div_exact(&qint(2))
            .filter(|_| s % 4 == 0 && n0.is_one());
        match h21
            .and_then(|h| decompose3(&h, w).ok())
            .filter(|d| d.coefficient_sum() == n0)
        {
            Some(d) => d,
            None => pair_decomposition(&-coeff(1), &n0, beta.clone())?,
        }
    } else {
        decompose_higher(&beta, &num, &n0, s)?
    };
    let back = d.expand();
    if back != *z {
        return Err(HzError::DecompositionNotFound {
            residual: z.sub(&back).to_string(),
        });
    }
    Ok(d)
}

fn decompose_higher(beta: &[i64], num: &[LaurentPoly], n0: &BigRational, s: i64) -> Result<Decomposition> {
    let m = beta.len() - 1;
    let width = m - 1;
    let p = -num.get(1).cloned().unwrap_or_default();
    let parity = common_parity(&p)?;
    let n2 = num.get(2).cloned().unwrap_or_default();

    let mut first: Vec<Vec<(BigRational, Vec<i64>)>> = Vec::new();
    if let (Some(target), (Some(lo), Some(hi))) = (to_int_poly(&p), (p.min_exp(), p.max_exp())) {
        let values: Vec<i64> = (lo..=hi).rev().filter(|e| (e - parity).rem_euclid(2) == 0).collect();
        let mut stage = FirstStage::new(tuples_with_sum(&values, width, s), width);
        if stage.run(&target) {
            for sol in &stage.solutions {
                first.push(sol.iter().map(|&(c, i)| (rat(c), stage.tuples[i].clone())).collect());
            }
        }
    }
    if first.is_empty() {
        first.push(constructive_first_stage(&p, n0, width, s)?);
    }

    let corrections = (m == 5).then(|| {
        let lo = p.min_exp().unwrap_or(0);
        let hi = p.max_exp().unwrap_or(0);
        let values: Vec<i64> = (lo..=hi).rev().filter(|e| (e - parity).rem_euclid(2) == 0).collect();
        Corrections::new(&values, s)
    });

    let mut best: Option<Decomposition> = None;
    let mut last_err = None;
    for stage1 in first {
        let mut terms = stage1.clone();
        if let Some(corr) = &corrections {
            let mut produced = LaurentPoly::zero();
            for (c, t) in &stage1 {
                produced += &e2(t).scale(c);
            }
            let r2 = &n2 - &produced;
            let quads = match to_int_poly(&r2).and_then(|r| corr.search(&r)) {
                Some(q) => q,
                None => match phi_corrections(&r2, s, parity) {
                    Ok(q) => q,
                    Err(e) => {
                        last_err = Some(e);
                        continue;
                    }
                },
            };
            for q in quads {
                terms.extend(q.terms());
            }
        }
        let d = Decomposition::new(beta.to_vec(), to_terms(terms))?;
        if best.as_ref().map_or(true, |b| better(&d, b)) {
            best = Some(d);
        }
    }
    best.ok_or_else(|| {
        last_err.unwrap_or(HzError::DecompositionNotFound {
            residual: p.to_string(),
        })
    })
}

/// The exact sum of a decomposition.
pub fn expand(d: &Decomposition) -> HZFunction {
    d.expand()
}
