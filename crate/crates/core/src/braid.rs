//! Braid words, their combinatorial invariants, and builders for twists,
//! torus braids and the hyperbolic-extension families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HzError, Result};

/// An `m`-strand braid word; letter `k` is `σ_k`, letter `-k` is `σ_k⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    strands: usize,
    word: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = HzError;
    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::new(raw.strands, raw.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(b: BraidWord) -> Self {
        RawBraid {
            strands: b.strands,
            word: b.letters,
        }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(HzError::TooFewStrands { min: 1, got: 0 });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(HzError::InvalidLetter { letter: l, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    /// The trivial braid on `strands` strands.
    pub fn identity(strands: usize) -> Self {
        Self {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    /// Parses whitespace-separated signed generator indices. When `strands`
    /// is `None` the minimal strand count for the letters is used.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let l: i32 = tok
                .parse()
                .map_err(|_| HzError::BraidParse(format!("bad letter {tok:?}")))?;
            letters.push(l);
        }
        let needed = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        Self::new(strands.unwrap_or(needed), letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the signs of the letters.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// The permutation of strand positions, as images of `0..m`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize;
            perm.swap(k - 1, k);
        }
        perm
    }

    /// Number of components of the closure.
    pub fn component_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut count = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        count
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Joins two words on the same number of strands.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(HzError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// The group inverse: reversed order, inverted letters.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// The mirror image: every crossing switched.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }

    /// The `n`-th power; negative powers use the group inverse.
    pub fn pow(&self, n: i64) -> BraidWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Cyclic rotation by `k` letters (same closure).
    pub fn rotate(&self, k: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// The same letters regarded on more strands.
    pub fn with_strands(&self, strands: usize) -> Result<BraidWord> {
        BraidWord::new(strands, self.letters.clone())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = HzError;
    fn from_str(s: &str) -> Result<Self> {
        BraidWord::parse(s, None)
    }
}

fn check_strands(m: usize, min: usize) -> Result<()> {
    if m < min {
        Err(HzError::TooFewStrands { min, got: m })
    } else {
        Ok(())
    }
}

/// `σ_{k−1} … σ_1` acting on the first `k` of `m` strands.
fn descending_cycle(k: usize, m: usize) -> BraidWord {
    BraidWord {
        strands: m,
        letters: (1..k as i32).rev().collect(),
    }
}

/// The full twist `F_m = (σ_{m−1} … σ_1)^m`.
pub fn full_twist(m: usize) -> Result<BraidWord> {
    full_twist_in(m, m)
}

/// The partial full twist `F_k` acting on strands `1..k` of an `m`-strand braid.
pub fn full_twist_in(k: usize, m: usize) -> Result<BraidWord> {
    check_strands(k, 2)?;
    check_strands(m, k)?;
    Ok(descending_cycle(k, m).pow(k as i64))
}

/// The Jucys–Murphy twist `Ẽ_m = σ_{m−1} … σ_2 σ_1² σ_2 … σ_{m−1}`.
pub fn jm_twist(m: usize) -> Result<BraidWord> {
    check_strands(m, 2)?;
    let mut letters: Vec<i32> = (1..m as i32).rev().collect();
    letters.extend(1..m as i32);
    Ok(BraidWord { strands: m, letters })
}

/// The twist `E_m = σ_1 σ_2 … σ_{m−1}² … σ_2 σ_1`.
pub fn e_twist(m: usize) -> Result<BraidWord> {
    check_strands(m, 2)?;
    let mut letters: Vec<i32> = (1..m as i32).collect();
    letters.extend((1..m as i32).rev());
    Ok(BraidWord { strands: m, letters })
}

/// The torus braid `(σ_{m−1} … σ_1)^n`.
pub fn torus_braid(m: usize, n: i64) -> Result<BraidWord> {
    check_strands(m, 2)?;
    Ok(descending_cycle(m, m).pow(n))
}

/// Index of the family `K^(m)_{j,k,l} = σ_{m−1}…σ_1 ⊗ F_{m−1}^j ⊗ Ẽ_m^k ⊗ F_m^l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyIndex {
    pub m: usize,
    pub j: i64,
    pub k: i64,
    pub l: i64,
}

impl FamilyIndex {
    pub fn new(m: usize, j: i64, k: i64, l: i64) -> Self {
        Self { m, j, k, l }
    }

    /// `w = (m−1)(1 + lm + 2k + (m−2)j)`.
    pub fn writhe(&self) -> i64 {
        let m = self.m as i64;
        (m - 1) * (1 + self.l * m + 2 * self.k + (m - 2) * self.j)
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K^({})_{{{},{},{}}}", self.m, self.j, self.k, self.l)
    }
}

/// The braid of `K^(m)_{j,k,l}`.
pub fn family_braid(idx: FamilyIndex) -> Result<BraidWord> {
    let m = idx.m;
    check_strands(m, 3)?;
    let word = descending_cycle(m, m)
        .concat(&full_twist_in(m - 1, m)?.pow(idx.j))?
        .concat(&jm_twist(m)?.pow(idx.k))?
        .concat(&full_twist(m)?.pow(idx.l))?;
    if word.writhe() != idx.writhe() {
        return Err(HzError::Consistency(format!(
            "family {idx} has writhe {} instead of {}",
            word.writhe(),
            idx.writhe()
        )));
    }
    Ok(word)
}
