//! Fixture files of braids with exactly known invariants, and a parallel
//! runner that checks every stated value plus the generic cross-checks
//! (specialisations, series oracle, inverse transform, decomposition
//! round trip, conditions against the factoriser).

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::decomp::{decompose, Bracket, Decomposition};
use crate::error::{HzError, Result};
use crate::homfly::{alexander, homfly, jones};
use crate::hz::{check_fact_conditions, factorise, hz_summation_oracle, hz_transform, inverse_hz, Condition};
use crate::qring::{parse_laurent, parse_laurent_a, LaurentPoly};
use crate::rmatrix::{racah_coeff, MAX_STRANDS};
use crate::young::YoungDiagram;

/// Largest strand count for which decompositions are attempted.
const MAX_DECOMPOSE_STRANDS: usize = 5;

/// One braid and the values known for its closure. Absent fields are not
/// checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub strands: usize,
    /// Space- or comma-separated letters; `-k` is `σ_k⁻¹`.
    pub braid: String,
    /// Replace the braid by its mirror image before computing.
    #[serde(default)]
    pub mirror: bool,
    /// Normalised HOMFLY–PT polynomial `H`.
    pub homfly: Option<String>,
    /// HZ denominator exponents before cancellation, descending.
    pub beta: Option<Vec<i64>>,
    /// The rendered HZ function.
    pub hz: Option<String>,
    pub factorisable: Option<bool>,
    /// Numerator exponents `α` of a factorisable HZ function, descending.
    pub numerator_exponents: Option<Vec<i64>>,
    /// A decomposition into factorised forms; it must expand to the HZ
    /// function exactly.
    pub decomposition: Option<String>,
    /// Whether the stated decomposition has the same terms as the computed one.
    pub decomposition_matches: Option<bool>,
    pub jones: Option<String>,
    pub alexander: Option<String>,
    /// Racah coefficients keyed by diagram, e.g. `"[2,1]"`.
    #[serde(default)]
    pub racah: BTreeMap<String, String>,
    /// Whether the sufficient factorisability conditions hold.
    pub conditions: Option<bool>,
}

/// A fixture file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureSet {
    #[serde(default)]
    pub description: String,
    pub fixtures: Vec<Fixture>,
}

impl FixtureSet {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HzError::Malformed(format!("fixture file: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| HzError::Malformed(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Runs every fixture in parallel, in file order.
    pub fn run(&self) -> Vec<FixtureOutcome> {
        run_all(&self.fixtures)
    }
}

/// The checks performed for one fixture.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub checks: Vec<Condition>,
    /// Set when the pipeline itself failed before any comparison.
    pub error: Option<String>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.satisfied)
    }

    pub fn failures(&self) -> Vec<&Condition> {
        self.checks.iter().filter(|c| !c.satisfied).collect()
    }
}

fn compare<T: PartialEq + std::fmt::Display>(name: impl Into<String>, expected: &T, computed: &T) -> Condition {
    Condition {
        name: name.into(),
        satisfied: expected == computed,
        detail: format!("expected {expected}, computed {computed}"),
    }
}

fn flag(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Condition {
    Condition {
        name: name.into(),
        satisfied: ok,
        detail: detail.into(),
    }
}

fn list(v: &[i64]) -> String {
    format!("{v:?}")
}

fn poly(text: &str) -> Result<LaurentPoly> {
    parse_laurent(text).map_err(HzError::from)
}

impl Fixture {
    /// The braid to compute with, mirrored if requested.
    pub fn braid_word(&self) -> Result<BraidWord> {
        let b = BraidWord::parse(&self.braid, Some(self.strands))?;
        Ok(if self.mirror { b.mirror() } else { b })
    }

    /// Runs the pipeline and every applicable check.
    pub fn run(&self) -> FixtureOutcome {
        let mut checks = Vec::new();
        let error = self.collect(&mut checks).err().map(|e| e.to_string());
        FixtureOutcome {
            name: self.name.clone(),
            checks,
            error,
        }
    }

    fn collect(&self, checks: &mut Vec<Condition>) -> Result<()> {
        let b = self.braid_word()?;
        let m = b.strands();
        let h = homfly(&b)?;
        let z = hz_transform(&h)?;
        let cert = factorise(&z);
        let knot = h.is_knot();

        for (key, value) in &self.racah {
            let q: YoungDiagram = key.parse()?;
            checks.push(compare(format!("h^{q}"), &poly(value)?, &racah_coeff(&b, &q)?));
        }
        if let Some(text) = &self.homfly {
            let expected = parse_laurent_a(text)?;
            let computed = h
                .normalised_poly()
                .ok_or_else(|| HzError::Consistency(format!("H = {} is not Laurent", h.normalised)))?;
            checks.push(compare("H", &expected, &computed));
        }
        if let Some(text) = &self.jones {
            checks.push(compare("Jones", &poly(text)?, &jones(&b)?));
        }
        if let Some(text) = &self.alexander {
            checks.push(compare("Alexander", &poly(text)?, &alexander(&b)?));
        }
        if let Some(h_poly) = h.normalised_poly().filter(|_| knot) {
            checks.push(compare("Jones = H(A = q^2)", &h_poly.subst_a_qpow(2), &jones(&b)?));
            checks.push(compare("Alexander = H(A = 1)", &h_poly.at_a_one(), &alexander(&b)?));
        }

        let terms = m + 3;
        let oracle = hz_summation_oracle(&h, terms)?;
        let series = z.series(terms);
        checks.push(flag(
            format!("series to λ^{terms} matches H̄(q^N)"),
            series == oracle,
            format!("series {series:?}, oracle {oracle:?}"),
        ));
        let back = inverse_hz(&z)?;
        checks.push(compare("inverse transform recovers H̄", &h.unnormalised, &back));

        if let Some(beta) = &self.beta {
            checks.push(flag(
                "β",
                *beta == z.beta_full(),
                format!("expected {}, computed {}", list(beta), list(&z.beta_full())),
            ));
        }
        if let Some(text) = &self.hz {
            checks.push(flag(
                "HZ",
                *text == z.to_string(),
                format!("expected {text}, computed {z}"),
            ));
        }
        if let Some(expected) = self.factorisable {
            checks.push(compare("factorisable", &expected, &cert.is_factorisable()));
        }
        if let Some(alpha) = &self.numerator_exponents {
            let computed: Vec<i64> = cert.full_factors().iter().map(|f| f.1).collect();
            let ok = cert.is_factorisable() && *alpha == computed;
            checks.push(flag(
                "α",
                ok,
                format!("expected {}, computed {}", list(alpha), list(&computed)),
            ));
        }

        let computed_decomposition = if knot && z.beta().len() >= 2 && z.beta().len() - 1 <= MAX_DECOMPOSE_STRANDS {
            let d = decompose(&z)?;
            checks.push(compare("decomposition expands to Z", &z, &d.expand()));
            let sum = d.coefficient_sum();
            if knot {
                checks.push(flag(
                    "coefficients sum to 1",
                    sum == num_traits::One::one(),
                    format!("sum {sum}"),
                ));
            }
            let total: i64 = d.beta().iter().sum();
            let balanced = d.terms().iter().all(|(_, t)| d.beta().len() < 2 || t.sum() == total);
            checks.push(flag(
                "every Σα equals Σβ",
                balanced,
                format!("Σβ = {total}, decomposition {d}"),
            ));
            Some(d)
        } else {
            None
        };
        if let Some(text) = &self.decomposition {
            let stated = Decomposition::parse(text, &z.beta_full())
                .ok()
                .filter(|d| d.expand() == z)
                .or_else(|| Decomposition::parse(text, z.beta()).ok());
            let stated = stated.ok_or_else(|| HzError::Malformed(format!("cannot read decomposition {text:?}")))?;
            checks.push(compare("stated decomposition expands to Z", &z, &stated.expand()));
            if let (Some(expected), Some(d)) = (self.decomposition_matches, &computed_decomposition) {
                checks.push(flag(
                    "stated and computed decompositions agree term by term",
                    reduce_to(&stated, d.beta()).is_some_and(|s| s.same_terms(d)) == expected,
                    format!("stated {stated}, computed {d}"),
                ));
            }
        }

        if (3..=MAX_STRANDS.min(5)).contains(&m) {
            let report = check_fact_conditions(&b)?;
            let satisfied = report.satisfied();
            checks.push(flag(
                "conditions imply factorisability",
                !satisfied || cert.is_factorisable(),
                format!("conditions {satisfied}, factorisable {}", cert.is_factorisable()),
            ));
            if let Some(expected) = self.conditions {
                checks.push(compare("conditions", &expected, &satisfied));
            }
        }
        Ok(())
    }
}

/// The decomposition over the smaller denominator `beta`, when every term
/// carries each dropped exponent as a plain factor.
fn reduce_to(d: &Decomposition, beta: &[i64]) -> Option<Decomposition> {
    if d.beta() == beta {
        return Some(d.clone());
    }
    let dropped: Vec<i64> = d.beta().iter().copied().filter(|b| !beta.contains(b)).collect();
    let mut terms = Vec::new();
    for (c, t) in d.terms() {
        let mut factors = t.factors().to_vec();
        for b in &dropped {
            let i = factors.iter().position(|&f| f == (*b, false))?;
            factors.remove(i);
        }
        terms.push((c.clone(), Bracket::signed(factors)));
    }
    Decomposition::new(beta.to_vec(), terms).ok()
}

/// Runs `run_fixture` over all fixtures on the rayon pool, preserving order.
pub fn run_all(fixtures: &[Fixture]) -> Vec<FixtureOutcome> {
    fixtures.par_iter().map(Fixture::run).collect()
}

/// Runs a single fixture.
pub fn run_fixture(f: &Fixture) -> FixtureOutcome {
    f.run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(json: &str) -> Fixture {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn passing_and_failing_fixtures() {
        let good =
            fixture(r#"{"name": "4_1", "strands": 3, "braid": "1 -2 1 -2", "jones": "q^4 - q^2 + 1 - q^-2 + q^-4"}"#);
        let outcome = good.run();
        assert!(outcome.passed(), "{outcome:?}");
        let bad = fixture(r#"{"name": "4_1", "strands": 3, "braid": "1 -2 1 -2", "factorisable": true}"#);
        let outcome = bad.run();
        assert!(!outcome.passed());
        assert_eq!(outcome.failures()[0].name, "factorisable");
    }

    #[test]
    fn mirror_flag_and_errors() {
        let f = fixture(r#"{"name": "3_1", "strands": 2, "braid": "1,1,1", "mirror": true, "beta": [5, 3, 1]}"#);
        assert!(f.run().passed());
        let broken = fixture(r#"{"name": "x", "strands": 2, "braid": "1 5"}"#);
        assert!(broken.run().error.is_some());
        assert!(
            FixtureSet::from_json(r#"{"fixtures": [{"name": "x", "strands": 2, "braid": "", "colour": 1}]}"#).is_err()
        );
    }
}
