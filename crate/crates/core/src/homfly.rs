//! HOMFLY–PT polynomials from the character expansion
//! `H̄ = A^{−w} Σ_Q h^Q S_Q`, and the Jones and Alexander specialisations
//! through their own character formulas.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{HzError, Result};
use crate::qring::{qbracket, qint, LaurentPoly, LaurentPolyA, RatFuncA, RatFuncQ};
use crate::rmatrix::{racah_coeff, racah_table};
use crate::young::{schur, YoungDiagram};

/// The unnormalised and normalised HOMFLY–PT polynomial of a braid closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomflyPoly {
    /// `H̄`, with `H̄ = {A}/{q}` for the unknot.
    pub unnormalised: RatFuncA,
    /// `H = ({q}/{A}) H̄`; a Laurent polynomial for knots.
    pub normalised: RatFuncA,
    pub writhe: i64,
    pub strands: usize,
    pub components: usize,
    pub racah: BTreeMap<YoungDiagram, LaurentPoly>,
}

impl HomflyPoly {
    /// `H` as a Laurent polynomial, for knots.
    pub fn normalised_poly(&self) -> Option<LaurentPolyA> {
        self.normalised.as_laurent_a()
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }
}

/// `({q}/{A}) H̄`, dividing the numerator by `{A}` exactly.
pub fn normalise(hbar: &RatFuncA) -> Result<RatFuncA> {
    let num = hbar
        .num()
        .scale(&qbracket(1))
        .div_a_bracket()
        .ok_or_else(|| HzError::Consistency(format!("{hbar} is not divisible by {{A}}")))?;
    Ok(RatFuncA::new(num, hbar.den().clone()))
}

/// `A^{−w} Σ_Q h^Q S_Q` for a given table of Racah coefficients.
pub fn assemble(racah: &BTreeMap<YoungDiagram, LaurentPoly>, writhe: i64) -> Result<RatFuncA> {
    let mut total = RatFuncA::zero();
    for (q, h) in racah {
        if h.is_zero() {
            continue;
        }
        let s = schur(q)?.to_ratfunc();
        let term = RatFuncA::new(s.num().scale(h).shift_a(-writhe), s.den().clone());
        total = &total + &term;
    }
    Ok(total)
}

/// The HOMFLY–PT polynomial of the closure of `b` (at most five strands).
pub fn homfly(b: &BraidWord) -> Result<HomflyPoly> {
    let racah = racah_table(b)?;
    let unnormalised = assemble(&racah, b.writhe())?;
    let normalised = normalise(&unnormalised)?;
    let components = b.component_count();
    if components == 1 && normalised.as_laurent_a().is_none() {
        return Err(HzError::Consistency(format!(
            "normalised HOMFLY-PT of a knot is not a Laurent polynomial: {normalised}"
        )));
    }
    Ok(HomflyPoly {
        unnormalised,
        normalised,
        writhe: b.writhe(),
        strands: b.strands(),
        components,
        racah,
    })
}

/// The two-row diagram `[m−i, i]`.
fn two_row(m: usize, i: usize) -> YoungDiagram {
    if i == 0 {
        YoungDiagram::row(m)
    } else {
        YoungDiagram::from_rows(&[m - i, i])
    }
}

/// The Jones polynomial `J(q²) = q^{−2w} Σ_i h^{[m−i,i]} {q^{m+1−2i}}/{q²}`,
/// returned as a Laurent polynomial in `q`.
pub fn jones(b: &BraidWord) -> Result<LaurentPoly> {
    let m = b.strands();
    let mut num = LaurentPoly::zero();
    for i in 0..=m / 2 {
        let h = racah_coeff(b, &two_row(m, i))?;
        num += &(&h * &qbracket(m as i64 + 1 - 2 * i as i64));
    }
    let value = RatFuncQ::new(num.shift(-2 * b.writhe()), qbracket(2));
    value
        .as_laurent()
        .ok_or_else(|| HzError::Consistency(format!("Jones polynomial {value} is not Laurent")))
}

/// The Alexander polynomial `Δ(q²) = Σ_{hooks} (−1)^{leg} h^Q / [m]` of a knot.
pub fn alexander(b: &BraidWord) -> Result<LaurentPoly> {
    let components = b.component_count();
    if components != 1 {
        return Err(HzError::NotAKnot(components));
    }
    let m = b.strands();
    let mut num = LaurentPoly::zero();
    for r in 0..m {
        let h = racah_coeff(b, &YoungDiagram::hook(m, r))?;
        if r % 2 == 0 {
            num += &h;
        } else {
            num -= &h;
        }
    }
    num.div_exact(&qint(m as i64))
        .ok_or_else(|| HzError::Consistency("Alexander sum is not divisible by [m]".into()))
}

/// `h^{[21]} = q^{2w} J(q²) − q^w (q² + q⁻²)` for a three-strand braid of
/// writhe `w` whose Jones polynomial is `J`.
pub fn racah_from_jones(j: &LaurentPoly, w: i64) -> LaurentPoly {
    &j.shift(2 * w) - &LaurentPoly::from_int_terms(&[(w + 2, 1), (w - 2, 1)])
}

/// Rendered summary used by the command-line front-end.
#[derive(Debug, Clone, Serialize)]
pub struct HomflyReport {
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "Hbar")]
    pub hbar: String,
    pub jones: Option<String>,
    pub alexander: Option<String>,
    pub racah: BTreeMap<String, String>,
}

impl HomflyReport {
    pub fn new(b: &BraidWord, h: &HomflyPoly) -> Self {
        HomflyReport {
            h: h.normalised.to_string(),
            hbar: h.unnormalised.to_string(),
            jones: jones(b).ok().map(|p| p.to_string()),
            alexander: alexander(b).ok().map(|p| p.to_string()),
            racah: h.racah.iter().map(|(q, p)| (q.to_string(), p.to_string())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::torus_braid;
    use crate::qring::{parse_laurent, parse_laurent_a, parse_ratfunc_a};

    fn word(m: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(m, letters.to_vec()).unwrap()
    }

    fn h_of(b: &BraidWord) -> LaurentPolyA {
        homfly(b).unwrap().normalised_poly().unwrap()
    }

    #[test]
    fn trefoil_on_two_and_three_strands() {
        let expected = parse_laurent_a("A^-2*(q^2 + q^-2) - A^-4").unwrap();
        assert_eq!(h_of(&word(2, &[1, 1, 1])), expected);
        assert_eq!(h_of(&word(3, &[1, 2, 1, 2])), expected);
    }

    #[test]
    fn figure_eight_and_six_one() {
        let expected = parse_laurent_a("A^2 - q^2 - q^-2 + 1 + A^-2").unwrap();
        assert_eq!(h_of(&word(3, &[1, -2, 1, -2])), expected);
        let expected = parse_laurent_a("A^-4 + A^2 + (1 - q^-2 - q^2)*A^-2 - q^-2*(q^2 - 1)^2").unwrap();
        assert_eq!(h_of(&word(4, &[-1, 2, -3, -1, 2, 3, 3])), expected);
    }

    #[test]
    fn unknots_and_unlinks() {
        let unknot = parse_ratfunc_a("(A - A^-1)/(q - q^-1)").unwrap();
        for b in [word(1, &[]), word(2, &[1]), word(3, &[2, -1]), word(5, &[4, 3, 2, 1])] {
            let h = homfly(&b).unwrap();
            assert_eq!(h.unnormalised, unknot, "{b}");
            assert_eq!(h.normalised_poly().unwrap(), LaurentPolyA::one());
            assert_eq!(jones(&b).unwrap(), LaurentPoly::one());
            assert_eq!(alexander(&b).unwrap(), LaurentPoly::one());
        }
        let unlink = homfly(&word(3, &[])).unwrap();
        let cube = parse_ratfunc_a("(A - A^-1)^3/(q - q^-1)^3").unwrap();
        assert_eq!(unlink.unnormalised, cube);
        assert!(alexander(&word(3, &[])).is_err());
    }

    #[test]
    fn jones_and_alexander_values() {
        let b41 = word(3, &[1, -2, 1, -2]);
        assert_eq!(
            jones(&b41).unwrap(),
            parse_laurent("q^4 - q^2 + 1 - q^-2 + q^-4").unwrap()
        );
        assert_eq!(alexander(&b41).unwrap(), parse_laurent("3 - q^2 - q^-2").unwrap());
        let t53 = torus_braid(5, 3).unwrap();
        assert_eq!(
            alexander(&t53).unwrap(),
            parse_laurent("q^8 - q^6 + q^2 - 1 + q^-2 - q^-6 + q^-8").unwrap()
        );
    }

    #[test]
    fn specialisations_agree_with_homfly() {
        for b in [
            word(3, &[1, -2, 1, -2]),
            word(4, &[-1, 2, -3, -1, 2, 3, 3]),
            torus_braid(5, 3).unwrap(),
        ] {
            let h = h_of(&b);
            assert_eq!(jones(&b).unwrap(), h.subst_a_qpow(2), "{b}");
            assert_eq!(alexander(&b).unwrap(), h.at_a_one(), "{b}");
            assert_eq!(h.subst_a_qpow(1), LaurentPoly::one());
        }
    }

    #[test]
    fn mirror_and_rotation() {
        let b = word(4, &[-1, 2, -3, -1, 2, 3, 3]);
        let h = homfly(&b).unwrap();
        assert_eq!(homfly(&b.inverse()).unwrap().normalised, h.normalised.mirror());
        assert_eq!(homfly(&b.rotate(3)).unwrap().normalised, h.normalised);
    }

    #[test]
    fn racah_from_jones_round_trips() {
        for b in [
            word(3, &[1, -2, 1, -2]),
            word(3, &[1, 2, 1, 2]),
            word(3, &[2, 1]),
            word(3, &[1, 1, 1, -2, 1, -2]),
        ] {
            let h21 = racah_coeff(&b, &YoungDiagram::from_rows(&[2, 1])).unwrap();
            assert_eq!(racah_from_jones(&jones(&b).unwrap(), b.writhe()), h21, "{b}");
        }
        let j41 = parse_laurent("q^4 - q^2 + 1 - q^-2 + q^-4").unwrap();
        assert_eq!(
            racah_from_jones(&j41, 0),
            parse_laurent("q^4 - 2q^2 + 1 - 2q^-2 + q^-4").unwrap()
        );
    }
}
