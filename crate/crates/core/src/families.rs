//! Closed-form data of the twist families `K^(m)_{j,k,l}`, of torus knots,
//! and of the forest-quiver polynomials of ADE Dynkin diagrams, each
//! cross-checked against the R-matrix pipeline.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::{e_twist, family_braid, full_twist, full_twist_in, jm_twist, torus_braid, BraidWord, FamilyIndex};
use crate::decomp::Bracket;
use crate::error::{HzError, Result};
use crate::homfly::{homfly, jones};
use crate::hz::{factorise, hz_transform, hz_transform_general, standard_beta, Condition, FactorCert, HZFunction};
use crate::qring::{qbracket, qint, LaurentPoly, LaurentPolyA, RatFuncA};
use crate::rmatrix::{racah_coeff, MAX_STRANDS};
use crate::young::YoungDiagram;

/// Predicted data of an HZ-factorisable knot or link:
/// `Z = λ ∏(1 − λq^{α_i}) / ∏(1 − λq^{β_i})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyPrediction {
    pub strands: usize,
    pub writhe: i64,
    /// `h^{[(m−1)1]}`.
    pub h_top: LaurentPoly,
    /// `α_0, …, α_{m−2}`.
    pub alpha: Vec<i64>,
    /// `β_i = −w − m + 2i` for `i = 0..=m`.
    pub beta: Vec<i64>,
    /// `J(q²) = (Σ q^{β_i} − Σ q^{α_i}) / [2]`.
    pub jones: LaurentPoly,
}

impl FamilyPrediction {
    fn from_exponents(strands: usize, writhe: i64, h_top: LaurentPoly, alpha: Vec<i64>) -> Result<Self> {
        let m = strands as i64;
        let beta: Vec<i64> = (0..=m).map(|i| -writhe - m + 2 * i).collect();
        let mut twice = LaurentPoly::zero();
        for &b in &beta {
            twice += &LaurentPoly::q_pow(b);
        }
        for &a in &alpha {
            twice -= &LaurentPoly::q_pow(a);
        }
        let jones = twice
            .div_exact(&qint(2))
            .ok_or_else(|| HzError::Consistency(format!("{twice} is not divisible by [2]")))?;
        Ok(FamilyPrediction {
            strands,
            writhe,
            h_top,
            alpha,
            beta,
            jones,
        })
    }

    /// The predicted HZ function, with common factors cancelled.
    pub fn hz(&self) -> HZFunction {
        let num = Bracket::new(self.alpha.clone()).numerator();
        HZFunction::new(num, self.beta.clone(), self.strands, self.writhe).expect("β values are distinct")
    }

    /// `α` in descending order.
    pub fn alpha_descending(&self) -> Vec<i64> {
        let mut a = self.alpha.clone();
        a.sort_unstable_by(|x, y| y.cmp(x));
        a
    }
}

/// `−(Σ_i q^{γ_i}) / [m−1]`, which must be a Laurent polynomial.
fn hook_from_gammas(m: usize, gammas: &[i64]) -> Result<LaurentPoly> {
    let sum: LaurentPoly = gammas.iter().map(|&g| LaurentPoly::q_pow(g)).sum();
    let h = sum
        .div_exact(&qint(m as i64 - 1))
        .ok_or_else(|| HzError::Consistency(format!("{sum} is not divisible by [{}]", m - 1)))?;
    Ok(-h)
}

/// Closed-form data of `K^(m)_{j,k,l}`: with `w = (m−1)(1 + lm + 2k + (m−2)j)`,
/// `[m−1] h^{[(m−1)1]} = −Σ_{i=0}^{m−2} q^{γ_i}` where
/// `γ_0 = j(m−1)(m−2) + lm(m−3) − 2k − 1` and
/// `γ_i = j(m−1)(m−4) + lm(m−3) + 2k(m−2) − 1 + 2i`, and `α_i = γ_i − 2w`:
/// `α_0 = −j(m−1)(m−2) − lm(m+1) − 2k(2m−1) − 2m + 1`,
/// `α_i = −jm(m−1) − lm(m+1) − 2km − 2(m−i) + 1`.
pub fn predict_family(idx: FamilyIndex) -> Result<FamilyPrediction> {
    let FamilyIndex { m, j, k, l } = idx;
    if m < 3 {
        return Err(HzError::TooFewStrands { min: 3, got: m });
    }
    let mi = m as i64;
    let mut gammas = vec![j * (mi - 1) * (mi - 2) + l * mi * (mi - 3) - 2 * k - 1];
    gammas.extend((1..=mi - 2).map(|i| j * (mi - 1) * (mi - 4) + l * mi * (mi - 3) + 2 * k * (mi - 2) - 1 + 2 * i));
    let h_top = hook_from_gammas(m, &gammas)?;
    let w = idx.writhe();
    let alpha = gammas.iter().map(|g| g - 2 * w).collect();
    FamilyPrediction::from_exponents(m, w, h_top, alpha)
}

/// Closed-form data of the torus knot or link `T(m,n)` (braid
/// `(σ_{m−1}…σ_1)^n`, `m` and `n` coprime): `h^{[(m−1)1]} = −q^{(m−3)n}`,
/// `α_i = −n(m+1) − m + 2 + 2i`, `β_i = −n(m−1) − m + 2i`.
pub fn predict_torus(m: usize, n: i64) -> Result<FamilyPrediction> {
    if m < 3 {
        return Err(HzError::TooFewStrands { min: 3, got: m });
    }
    let mi = m as i64;
    if num_integer::gcd(mi, n) != 1 {
        return Err(HzError::NotAKnot(num_integer::gcd(mi, n) as usize));
    }
    let h_top = -LaurentPoly::q_pow((mi - 3) * n);
    let alpha = (0..=mi - 2).map(|i| -n * (mi + 1) - mi + 2 + 2 * i).collect();
    FamilyPrediction::from_exponents(m, (mi - 1) * n, h_top, alpha)
}

/// `h^{[(m−1)1]}` of `T(m,m+1) ⊗ E_m^k` with `δ = m(m−2) − 2k − 3`:
/// `−q^δ + Σ_{i=1}^{k} (q^{δ+2i+2(i−1)(m−2)} − q^{δ+2i(m−1)})`.
pub fn torus_e_twist_hook(m: usize, k: i64) -> Result<LaurentPoly> {
    if m < 3 {
        return Err(HzError::TooFewStrands { min: 3, got: m });
    }
    if k < 0 {
        return Err(HzError::Malformed(format!("twist count {k} is negative")));
    }
    let mi = m as i64;
    let delta = mi * (mi - 2) - 2 * k - 3;
    let mut h = -LaurentPoly::q_pow(delta);
    for i in 1..=k {
        h += &LaurentPoly::q_pow(delta + 2 * i + 2 * (i - 1) * (mi - 2));
        h -= &LaurentPoly::q_pow(delta + 2 * i * (mi - 1));
    }
    Ok(h)
}

/// The braid `(σ_{m−1}…σ_1)^{m+1} ⊗ E_m^k`.
pub fn torus_e_twist_braid(m: usize, k: i64) -> Result<BraidWord> {
    torus_braid(m, m as i64 + 1)?.concat(&e_twist(m)?.pow(k))
}

/// The Alexander polynomial of `T(m,n)` at `t = q²`:
/// `t^{−(m−1)(n−1)/2} (1 − t)(1 − t^{mn}) / ((1 − t^m)(1 − t^n))`.
pub fn torus_alexander(m: usize, n: i64) -> Result<LaurentPoly> {
    let mi = m as i64;
    if mi < 1 || n < 1 {
        return Err(HzError::Malformed(format!("T({m},{n}) needs positive parameters")));
    }
    let one_minus = |e: i64| LaurentPoly::from_int_terms(&[(0, 1), (2 * e, -1)]);
    let num = &one_minus(1) * &one_minus(mi * n);
    let den = &one_minus(mi) * &one_minus(n);
    let quotient = num
        .div_exact(&den)
        .ok_or_else(|| HzError::Malformed(format!("T({m},{n}) is a link")))?;
    Ok(quotient.shift(-(mi - 1) * (n - 1)))
}

/// Prediction against pipeline for one braid.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub label: String,
    pub braid: String,
    pub prediction: FamilyPrediction,
    pub h_top: LaurentPoly,
    pub alpha: Option<Vec<i64>>,
    pub beta: Vec<i64>,
    pub jones: LaurentPoly,
    pub checks: Vec<Condition>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }

    /// The report itself, or an error naming every failed check.
    pub fn ensure(self) -> Result<Self> {
        if self.passed() {
            return Ok(self);
        }
        let failed: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.satisfied)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        Err(HzError::Consistency(format!("{}: {}", self.label, failed.join("; "))))
    }
}

fn check(name: &str, predicted: impl fmt::Display, computed: impl fmt::Display, ok: bool) -> Condition {
    Condition {
        name: name.to_string(),
        satisfied: ok,
        detail: format!("predicted {predicted}, computed {computed}"),
    }
}

fn show(v: &[i64]) -> String {
    format!("{v:?}")
}

/// Numerator exponents of a factorisable HZ function whose numerator is
/// exactly `∏(1 − λq^{α})`, before cancellation.
fn plain_alpha(cert: &FactorCert) -> Option<Vec<i64>> {
    match cert {
        FactorCert::Factorisable { constant, .. } if constant.is_one() => {
            let full = cert.full_factors();
            full.iter()
                .all(|&(s, _)| s == 1)
                .then(|| full.iter().map(|f| f.1).collect())
        }
        _ => None,
    }
}

/// Runs the pipeline on `b` and compares with `prediction`.
pub fn verify_prediction(label: &str, b: &BraidWord, prediction: FamilyPrediction) -> Result<FamilyReport> {
    let m = b.strands();
    if m > MAX_STRANDS {
        return Err(HzError::UnsupportedStrands {
            strands: m,
            what: "family verification",
        });
    }
    let h_top = racah_coeff(b, &YoungDiagram::from_rows(&[m - 1, 1]))?;
    let z = hz_transform(&homfly(b)?)?;
    let cert = factorise(&z);
    let alpha = plain_alpha(&cert);
    let beta = z.beta_full();
    let jones = jones(b)?;
    let expected_alpha = prediction.alpha_descending();
    let expected_beta = standard_beta(m, prediction.writhe);
    let checks = vec![
        check("writhe", prediction.writhe, b.writhe(), prediction.writhe == b.writhe()),
        check("h_top", &prediction.h_top, &h_top, prediction.h_top == h_top),
        check("factorisable", true, cert.is_factorisable(), cert.is_factorisable()),
        check(
            "alpha",
            show(&expected_alpha),
            alpha.as_deref().map_or_else(|| "none".to_string(), show),
            alpha.as_ref() == Some(&expected_alpha),
        ),
        check("beta", show(&expected_beta), show(&beta), beta == expected_beta),
        check("hz", prediction.hz(), &z, prediction.hz() == z),
        check("jones", &prediction.jones, &jones, prediction.jones == jones),
    ];
    Ok(FamilyReport {
        label: label.to_string(),
        braid: b.to_string(),
        prediction,
        h_top,
        alpha,
        beta,
        jones,
        checks,
    })
}

/// Builds the braid of `K^(m)_{j,k,l}`, runs the pipeline and compares
/// every predicted quantity.
pub fn verify_family(idx: FamilyIndex) -> Result<FamilyReport> {
    let b = family_braid(idx)?;
    verify_prediction(&idx.to_string(), &b, predict_family(idx)?)
}

/// Torus-law verification for `T(m,n)`.
pub fn verify_torus(m: usize, n: i64) -> Result<FamilyReport> {
    let b = torus_braid(m, n)?;
    verify_prediction(&format!("T({m},{n})"), &b, predict_torus(m, n)?)
}

/// The braid closing to the pretzel link `P(3,−2,n−3)`, the Coxeter link of
/// `E_n`: `K^(3)_{j−2,1,0}` for `n = 2j`, and `σ_2 ⊗ F_2^{j−1} ⊗ Ẽ_3` for
/// `n = 2j+1`.
pub fn pretzel_braid(n: i64) -> Result<BraidWord> {
    if n < 4 {
        return Err(HzError::BelowSeedRange { series: 'E', n });
    }
    let j = n / 2;
    if n % 2 == 0 {
        family_braid(FamilyIndex::new(3, j - 2, 1, 0))
    } else {
        sigma2().concat(&full_twist_in(2, 3)?.pow(j - 1))?.concat(&jm_twist(3)?)
    }
}

/// The second form `σ_2 ⊗ F_2^{j−2} ⊗ F_3` of the odd pretzel braid `n = 2j+1`.
pub fn pretzel_braid_alt(n: i64) -> Result<BraidWord> {
    if n < 5 || n % 2 == 0 {
        return Err(HzError::Malformed(format!(
            "the second pretzel form needs odd n ≥ 5, got {n}"
        )));
    }
    let j = n / 2;
    sigma2()
        .concat(&full_twist_in(2, 3)?.pow(j - 2))?
        .concat(&full_twist(3)?)
}

fn sigma2() -> BraidWord {
    BraidWord::new(3, vec![2]).expect("σ_2 on three strands")
}

/// Names of the Coxeter links `P(3,−2,n−3)` of `E_n`, `n = 4..=10`.
pub fn coxeter_link_name(n: i64) -> Option<&'static str> {
    Some(match n {
        4 => "5_1 = T(2,5)",
        5 => "L7n1{0}+ = T(3,3,2,1)",
        6 => "8_19 = T(3,4)",
        7 => "L9n15{0}+ = T(3,4,2,1)",
        8 => "10_124 = T(3,5)",
        9 => "L11n204{0}+ = T(3,5,2,1)",
        10 => "12n_242",
        _ => return None,
    })
}

/// The three simply-laced Dynkin series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuiverSeries {
    A,
    D,
    E,
}

impl QuiverSeries {
    pub fn letter(self) -> char {
        match self {
            QuiverSeries::A => 'A',
            QuiverSeries::D => 'D',
            QuiverSeries::E => 'E',
        }
    }

    /// Smallest index with a polynomial.
    pub fn first_index(self) -> i64 {
        match self {
            QuiverSeries::A => 0,
            QuiverSeries::D => 2,
            QuiverSeries::E => 4,
        }
    }
}

impl std::str::FromStr for QuiverSeries {
    type Err = HzError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(QuiverSeries::A),
            "D" | "d" => Ok(QuiverSeries::D),
            "E" | "e" => Ok(QuiverSeries::E),
            other => Err(HzError::Malformed(format!("unknown Dynkin series {other:?}"))),
        }
    }
}

impl fmt::Display for QuiverSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// The polynomial `P(L)` of a Dynkin diagram's Coxeter link in the skein
/// variables `(a, z)`, stored as a Laurent polynomial in `a` whose
/// coefficients are Laurent polynomials in `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPoly {
    pub series: QuiverSeries,
    pub n: i64,
    pub value: LaurentPolyA,
}

/// `(a − a⁻¹)/z`.
fn unlink_seed() -> LaurentPolyA {
    let mut p = LaurentPolyA::zero();
    p.add_term(1, LaurentPoly::q_pow(-1));
    p.add_term(-1, -LaurentPoly::q_pow(-1));
    p
}

/// `P_n = (z/a) P_{n−1} + a^{−2} P_{n−2}`.
fn step(prev: &LaurentPolyA, prev2: &LaurentPolyA) -> LaurentPolyA {
    let z_over_a = LaurentPolyA::monomial(-1, LaurentPoly::q());
    &(&z_over_a * prev) + &prev2.shift_a(-2)
}

/// Runs the recursion from `(P_{s−1}, P_s)` up to index `n ≥ s`.
fn run(mut prev2: LaurentPolyA, mut prev: LaurentPolyA, start: i64, n: i64) -> LaurentPolyA {
    for _ in start..n {
        let next = step(&prev, &prev2);
        prev2 = std::mem::replace(&mut prev, next);
    }
    prev
}

fn a_series(n: i64) -> LaurentPolyA {
    if n < 0 {
        return unlink_seed();
    }
    run(unlink_seed(), LaurentPolyA::one(), 0, n)
}

fn d_series(n: i64) -> LaurentPolyA {
    let a1 = a_series(1);
    let d2 = &a1 * &a1;
    if n == 2 {
        return d2;
    }
    run(d2, a_series(3), 3, n)
}

fn e_series(n: i64) -> LaurentPolyA {
    if n == 4 {
        return a_series(4);
    }
    run(a_series(4), d_series(5), 5, n)
}

/// `P(L_n)` by the recursion `P(L_n) = (z/a) P(L_{n−1}) + a^{−2} P(L_{n−2})`,
/// seeded by `A_{−1} = (a − a⁻¹)/z`, `A_0 = 1`; `D_2 = A_1²`, `D_3 = A_3`;
/// `E_4 = A_4`, `E_5 = D_5`.
pub fn quiver_poly(series: QuiverSeries, n: i64) -> Result<QuiverPoly> {
    if n < series.first_index() {
        return Err(HzError::BelowSeedRange {
            series: series.letter(),
            n,
        });
    }
    let value = match series {
        QuiverSeries::A => a_series(n),
        QuiverSeries::D => d_series(n),
        QuiverSeries::E => e_series(n),
    };
    Ok(QuiverPoly { series, n, value })
}

impl QuiverPoly {
    /// `H̄ = ({A}/{q}) P` with `a = A` and `z = q − q⁻¹`.
    pub fn hbar(&self) -> RatFuncA {
        let lowest = self
            .value
            .terms()
            .filter_map(|(_, c)| c.min_exp())
            .min()
            .unwrap_or(0)
            .min(0);
        let shift = -lowest;
        let zq = qbracket(1);
        let mut num = LaurentPolyA::zero();
        for (k, c) in self.value.terms() {
            let mut coeff = LaurentPoly::zero();
            for (e, v) in c.terms() {
                coeff += &zq.pow((e + shift) as u32).scale(v);
            }
            num.add_term(k, coeff);
        }
        let num = &LaurentPolyA::a_bracket(0) * &num;
        RatFuncA::new(num, zq.pow(shift as u32 + 1))
    }

    /// The Conway-normalised Alexander polynomial `P(a = 1, z = q − q⁻¹)`,
    /// when it is a Laurent polynomial in `q`.
    pub fn alexander(&self) -> Option<LaurentPoly> {
        let at_one = self.value.at_a_one();
        let shift = -at_one.min_exp().unwrap_or(0).min(0);
        let zq = qbracket(1);
        let mut num = LaurentPoly::zero();
        for (e, v) in at_one.terms() {
            num += &zq.pow((e + shift) as u32).scale(v);
        }
        num.div_exact(&zq.pow(shift as u32))
    }

    /// The HZ transform of [`QuiverPoly::hbar`].
    pub fn hz(&self) -> Result<HZFunction> {
        hz_transform_general(&self.hbar())
    }

    pub fn label(&self) -> String {
        format!("{}_{}", self.series, self.n)
    }

    /// `P` written in `a` and `z`.
    pub fn render_az(&self) -> String {
        if self.value.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.value.terms().rev() {
            let coeff = c.to_string().replace('q', "z");
            let body = match k {
                0 => coeff,
                _ => {
                    let a = if k == 1 { "a".to_string() } else { format!("a^{k}") };
                    if c.is_one() {
                        a
                    } else {
                        format!("({coeff})*{a}")
                    }
                }
            };
            parts.push(body);
        }
        parts.join(" + ")
    }

    pub fn to_json(&self) -> Result<Value> {
        let z = self.hz()?;
        Ok(json!({
            "series": self.series.letter().to_string(),
            "n": self.n,
            "P": self.render_az(),
            "Hbar": self.hbar().to_string(),
            "Z": z.to_string(),
            "hz": z.to_json(),
        }))
    }
}
