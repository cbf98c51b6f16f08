//! Young diagrams, hook lengths and the quantum-dimension Schur functions
//! `S_Q`, `S*_Q` stored as explicit products of quantum brackets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HzError, Result};
use crate::qring::{qbracket, LaurentPoly, LaurentPolyA, RatFuncA, RatFuncQ};

/// Largest diagram size the Schur-function routines accept.
pub const MAX_BOXES: usize = 6;

/// A partition, given by weakly decreasing positive row lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = HzError;
    fn try_from(rows: Vec<usize>) -> Result<Self> {
        YoungDiagram::new(rows)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Self {
        d.rows
    }
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() {
            return Err(HzError::InvalidDiagram("empty diagram".into()));
        }
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(HzError::InvalidDiagram(format!("{rows:?} is not a partition")));
        }
        Ok(Self { rows })
    }

    /// Builds a diagram from trusted row lengths.
    pub fn from_rows(rows: &[usize]) -> Self {
        Self::new(rows.to_vec()).expect("valid partition")
    }

    /// The one-row diagram `[m]`.
    pub fn row(m: usize) -> Self {
        Self { rows: vec![m] }
    }

    /// The one-column diagram `[1^m]`.
    pub fn column(m: usize) -> Self {
        Self { rows: vec![1; m] }
    }

    /// The hook `[m−r, 1^r]`.
    pub fn hook(m: usize, r: usize) -> Self {
        let mut rows = vec![m - r];
        rows.extend(std::iter::repeat(1).take(r));
        Self { rows }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> Self {
        let cols = self.rows[0];
        let rows = (0..cols)
            .map(|c| self.rows.iter().filter(|&&r| r > c).count())
            .collect();
        Self { rows }
    }

    /// At most one row longer than a single box.
    pub fn is_hook(&self) -> bool {
        self.rows.len() < 2 || self.rows[1] <= 1
    }

    /// Leg length of a hook: the number of rows below the first.
    pub fn leg(&self) -> usize {
        self.rows.len() - 1
    }

    /// Boxes as `(i, j)` with `i` the column and `j` the row, both from 1.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |c| (c, r + 1)))
    }

    /// Hook length of every box, keyed by `(i, j)` = (column, row).
    pub fn hook_lengths(&self) -> BTreeMap<(usize, usize), usize> {
        let t = self.transpose();
        self.boxes()
            .map(|(i, j)| {
                let right = self.rows[j - 1] - i;
                let below = t.rows[i - 1] - j;
                ((i, j), right + below + 1)
            })
            .collect()
    }

    /// Contents `i − j` of every box, in row-major order.
    pub fn contents(&self) -> Vec<i64> {
        self.boxes().map(|(i, j)| i as i64 - j as i64).collect()
    }

    /// All partitions of `m`, in decreasing lexicographic order.
    pub fn partitions(m: usize) -> Vec<YoungDiagram> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if rem == 0 {
                out.push(YoungDiagram { rows: cur.clone() });
                return;
            }
            for part in (1..=rem.min(max)).rev() {
                cur.push(part);
                rec(rem - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if m > 0 {
            rec(m, m, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for YoungDiagram {
    type Err = HzError;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let rows = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| HzError::InvalidDiagram(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        YoungDiagram::new(rows)
    }
}

/// A product `∏{A q^{c}} · ∏{q^{k}} / ∏{q^{h}}` of quantum brackets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurFn {
    /// Exponents `c` of the factors `{A q^c}`.
    pub a_factors: Vec<i64>,
    /// Exponents `k` of the numerator factors `{q^k}`.
    pub q_num: Vec<i64>,
    /// Exponents `h` of the denominator factors `{q^h}`.
    pub q_den: Vec<i64>,
}

/// How to specialise `A` in a Schur function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ASpecialisation {
    /// `A = q^N`.
    QPow(i64),
    /// The limit `A → 1`.
    One,
}

fn check_size(q: &YoungDiagram) -> Result<()> {
    if q.size() > MAX_BOXES {
        return Err(HzError::UnsupportedDiagram {
            strands: q.size(),
            diagram: q.to_string(),
        });
    }
    Ok(())
}

/// The unnormalised Schur function `S_Q = ∏_{(i,j)} {A q^{i−j}} / {q^{h_{i,j}}}`.
pub fn schur(q: &YoungDiagram) -> Result<SchurFn> {
    check_size(q)?;
    Ok(SchurFn {
        a_factors: q.contents(),
        q_num: Vec::new(),
        q_den: q.hook_lengths().values().map(|&h| h as i64).collect(),
    })
}

/// The normalised Schur function `S*_Q = ({q}/{A}) S_Q`.
pub fn schur_star(q: &YoungDiagram) -> Result<SchurFn> {
    let mut s = schur(q)?;
    let pos = s
        .a_factors
        .iter()
        .position(|&c| c == 0)
        .expect("corner box has content 0");
    s.a_factors.remove(pos);
    s.q_num.push(1);
    Ok(s)
}

/// `S*_Q` specialised at `A = q^N` or in the limit `A → 1`.
pub fn schur_at_a(q: &YoungDiagram, spec: ASpecialisation) -> Result<RatFuncQ> {
    Ok(schur_star(q)?.specialise(spec))
}

fn bracket_product(exps: &[i64]) -> LaurentPoly {
    exps.iter().fold(LaurentPoly::one(), |acc, &k| &acc * &qbracket(k))
}

impl SchurFn {
    /// The full expansion as a ratio of a polynomial in `A, q` by one in `q`.
    pub fn to_ratfunc(&self) -> RatFuncA {
        let num = self
            .a_factors
            .iter()
            .fold(LaurentPolyA::one(), |acc, &c| &acc * &LaurentPolyA::a_bracket(c))
            .scale(&bracket_product(&self.q_num));
        RatFuncA::new(num, bracket_product(&self.q_den))
    }

    /// Substitutes into the factors, then cancels.
    pub fn specialise(&self, spec: ASpecialisation) -> RatFuncQ {
        let n = match spec {
            ASpecialisation::QPow(n) => n,
            ASpecialisation::One => 0,
        };
        let num: Vec<i64> = self
            .a_factors
            .iter()
            .map(|c| c + n)
            .chain(self.q_num.iter().copied())
            .collect();
        if num.contains(&0) {
            return RatFuncQ::zero();
        }
        RatFuncQ::new(bracket_product(&num), bracket_product(&self.q_den))
    }

    /// `S_Q` at `A = q^N`, which is always a Laurent polynomial when no
    /// extra `{q^k}` numerator factors are present.
    pub fn at_qpow(&self, n: i64) -> LaurentPoly {
        self.specialise(ASpecialisation::QPow(n))
            .as_laurent()
            .expect("quantum dimension is a Laurent polynomial")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::{parse_laurent, parse_ratfunc_a, rat};
    use num_rational::BigRational;

    fn d(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::from_rows(rows)
    }

    #[test]
    fn hook_length_tables() {
        let h = d(&[2]).hook_lengths();
        assert_eq!(h, BTreeMap::from([((1, 1), 2), ((2, 1), 1)]));
        let h = d(&[2, 1]).hook_lengths();
        assert_eq!(h, BTreeMap::from([((1, 1), 3), ((2, 1), 1), ((1, 2), 1)]));
        let h = d(&[2, 2]).hook_lengths();
        assert_eq!(h, BTreeMap::from([((1, 1), 3), ((2, 1), 2), ((1, 2), 2), ((2, 2), 1)]));
    }

    #[test]
    fn diagram_basics() {
        assert_eq!(d(&[3, 1, 1]).transpose(), d(&[3, 1, 1]));
        assert_eq!(d(&[3, 2]).transpose(), d(&[2, 2, 1]));
        assert!(d(&[4, 1]).is_hook() && !d(&[2, 2]).is_hook());
        let counts: Vec<usize> = (1..=6).map(|m| YoungDiagram::partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(YoungDiagram::partitions(3), vec![d(&[3]), d(&[2, 1]), d(&[1, 1, 1])]);
        assert_eq!("[4,1,1]".parse::<YoungDiagram>().unwrap(), d(&[4, 1, 1]));
        assert_eq!(d(&[4, 1, 1]).to_string(), "[4,1,1]");
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        for m in 1..=6 {
            for q in YoungDiagram::partitions(m) {
                assert_eq!(q.transpose().transpose(), q);
            }
        }
    }

    #[test]
    fn normalised_schur_functions() {
        let cases = [
            (vec![2], "(A*q - A^-1*q^-1)/(q^2 - q^-2)"),
            (
                vec![2, 1],
                "(A*q - A^-1*q^-1)*(A*q^-1 - A^-1*q)/((q^3 - q^-3)*(q - q^-1))",
            ),
            (
                vec![3, 1, 1],
                "(A*q^2 - A^-1*q^-2)*(A*q - A^-1*q^-1)*(A*q^-1 - A^-1*q)*(A*q^-2 - A^-1*q^2)\
                 /((q^5 - q^-5)*(q^2 - q^-2)*(q^2 - q^-2)*(q - q^-1))",
            ),
        ];
        for (rows, expected) in cases {
            let s = schur_star(&YoungDiagram::new(rows).unwrap()).unwrap();
            assert_eq!(s.to_ratfunc(), parse_ratfunc_a(expected).unwrap());
        }
        assert!(schur(&d(&[4, 3])).is_err());
    }

    #[test]
    fn specialisations() {
        let j5 = schur_at_a(&d(&[5]), ASpecialisation::QPow(2)).unwrap();
        assert_eq!(j5.as_laurent().unwrap(), parse_laurent("q^4 + 1 + q^-4").unwrap());
        assert!(schur_at_a(&d(&[3, 1, 1]), ASpecialisation::QPow(2)).unwrap().is_zero());
        let a41 = schur_at_a(&d(&[4, 1]), ASpecialisation::One).unwrap();
        assert_eq!(a41, RatFuncQ::new(-qbracket(1), qbracket(5)));
    }

    #[test]
    fn weyl_dimension_limit() {
        for m in 1..=6 {
            for q in YoungDiagram::partitions(m) {
                let s = schur(&q).unwrap();
                for n in 2..=5i64 {
                    let mut weyl = BigRational::from_integer(1.into());
                    for (c, h) in q.contents().iter().zip(q.hook_lengths().values()) {
                        weyl = weyl * rat(n + c) / rat(*h as i64);
                    }
                    assert_eq!(s.at_qpow(n).eval_one(), weyl, "{q} at N={n}");
                }
            }
        }
    }

    #[test]
    fn transpose_symmetry() {
        for m in 1..=5 {
            for q in YoungDiagram::partitions(m) {
                let a = schur_star(&q.transpose()).unwrap().to_ratfunc();
                let b = schur_star(&q).unwrap().to_ratfunc().mirror_q();
                let neg = &RatFuncA::zero() - &b;
                assert!(a == b || a == neg, "{q}");
            }
        }
    }

    #[test]
    fn limits_select_hooks_and_two_rows() {
        for m in 1..=6 {
            for q in YoungDiagram::partitions(m) {
                let one = schur_at_a(&q, ASpecialisation::One).unwrap();
                if q.is_hook() {
                    let sign = if q.leg() % 2 == 0 { 1 } else { -1 };
                    let expected = RatFuncQ::new(qbracket(1).scale(&rat(sign)), qbracket(m as i64));
                    assert_eq!(one, expected, "{q}");
                } else {
                    assert!(one.is_zero(), "{q}");
                }
                let two = schur_at_a(&q, ASpecialisation::QPow(2)).unwrap();
                assert_eq!(two.is_zero(), q.num_rows() > 2, "{q}");
            }
        }
    }
}
