//! R-matrices of the braid group on irreducible representations labelled by
//! Young diagrams, and the Racah coefficients `h^Q` as traces of braid words.
//!
//! Two independent constructions are provided: the orthogonal form over the
//! radical extension ring (matching the published Racah matrices up to
//! basis signs) and the radical-free seminormal form used on the hot path.
//! Both must give identical traces.

mod construct;
mod matrix;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

pub use construct::{
    hecke_power_coeffs, letter_runs, orthogonal_generators, satisfies_braid_relations, seminormal_generators,
    standard_tableaux, word_product, Orientation, SparseGen, Tableau,
};
pub use matrix::Matrix;

use crate::braid::{full_twist, full_twist_in, jm_twist, BraidWord};
use crate::error::{HzError, Result};
use crate::qring::{mirror_q, ExtScalar, LaurentPoly, RatFuncQ};
use crate::young::YoungDiagram;

/// Largest strand count with R-matrices for every diagram.
pub const MAX_STRANDS: usize = 5;

/// The orthogonal R-matrices `R_1 … R_{m−1}` of one representation.
#[derive(Debug, Clone)]
pub struct RMatrixSet {
    pub strands: usize,
    pub diagram: YoungDiagram,
    pub matrices: Vec<Matrix<ExtScalar>>,
    pub inverses: Vec<Matrix<ExtScalar>>,
    generators: Vec<SparseGen<ExtScalar>>,
}

impl RMatrixSet {
    pub fn dim(&self) -> usize {
        self.matrices.first().map(|m| m.dim()).unwrap_or(1)
    }

    pub fn generators(&self) -> &[SparseGen<ExtScalar>] {
        &self.generators
    }

    /// The product of `R_k^{±1}` along a word.
    pub fn word_matrix(&self, b: &BraidWord) -> Matrix<ExtScalar> {
        word_product(&self.generators, b.letters())
    }
}

fn check_supported(m: usize, q: &YoungDiagram) -> Result<()> {
    if q.size() != m {
        return Err(HzError::UnsupportedDiagram {
            strands: m,
            diagram: q.to_string(),
        });
    }
    if m > MAX_STRANDS {
        return Err(HzError::UnsupportedStrands {
            strands: m,
            what: "R-matrix construction",
        });
    }
    Ok(())
}

/// Builds the orthogonal R-matrices for `m` strands in representation `q`.
pub fn build_rmatrices(m: usize, q: &YoungDiagram) -> Result<RMatrixSet> {
    check_supported(m, q)?;
    let generators = orthogonal_generators(q)?;
    if !satisfies_braid_relations(&generators) {
        return Err(HzError::Consistency(format!("braid relations fail for {q}")));
    }
    let matrices: Vec<_> = generators.iter().map(|g| g.to_matrix()).collect();
    let inverses: Vec<_> = generators.iter().map(|g| g.power(-1).to_matrix()).collect();
    Ok(RMatrixSet {
        strands: m,
        diagram: q.clone(),
        matrices,
        inverses,
        generators,
    })
}

type SeminormalCache = Mutex<HashMap<YoungDiagram, Arc<Vec<SparseGen<RatFuncQ>>>>>;

/// Seminormal generators with an orientation satisfying the braid
/// relations, memoised per diagram. Concurrent first use may build twice;
/// construction is deterministic so either result is kept.
fn seminormal(q: &YoungDiagram) -> Result<Arc<Vec<SparseGen<RatFuncQ>>>> {
    static CACHE: OnceLock<SeminormalCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().expect("cache lock").get(q) {
        return Ok(g.clone());
    }
    let gens = [Orientation::PositiveRow, Orientation::NegativeRow]
        .into_iter()
        .map(|o| seminormal_generators(q, o))
        .find(|g| satisfies_braid_relations(g))
        .ok_or_else(|| HzError::Consistency(format!("no seminormal orientation for {q}")))?;
    let gens = Arc::new(gens);
    cache
        .lock()
        .expect("cache lock")
        .entry(q.clone())
        .or_insert(gens.clone());
    Ok(gens)
}

fn one_dimensional(b: &BraidWord, q: &YoungDiagram) -> Option<LaurentPoly> {
    let w = b.writhe();
    if q.num_rows() == 1 {
        Some(LaurentPoly::q_pow(w))
    } else if q.rows()[0] == 1 {
        Some(mirror_q(&LaurentPoly::q_pow(w)))
    } else {
        None
    }
}

/// Whether `q` is computed directly rather than from its transpose.
fn is_canonical(q: &YoungDiagram) -> bool {
    *q >= q.transpose()
}

/// The Racah coefficient `h^Q(b)`: the trace of the R-matrix word.
///
/// One-row and one-column diagrams are handled for any strand count; other
/// diagrams need at most five strands. Transposed diagrams are obtained by
/// `q → −q⁻¹`.
pub fn racah_coeff(b: &BraidWord, q: &YoungDiagram) -> Result<LaurentPoly> {
    if q.size() != b.strands() {
        return Err(HzError::UnsupportedDiagram {
            strands: b.strands(),
            diagram: q.to_string(),
        });
    }
    if let Some(h) = one_dimensional(b, q) {
        return Ok(h);
    }
    check_supported(b.strands(), q)?;
    if !is_canonical(q) {
        return Ok(mirror_q(&racah_coeff(b, &q.transpose())?));
    }
    racah_coeff_direct(b, q)
}

/// `h^Q(b)` through the seminormal form, with no transpose shortcut.
pub fn racah_coeff_direct(b: &BraidWord, q: &YoungDiagram) -> Result<LaurentPoly> {
    check_supported(b.strands(), q)?;
    let gens = seminormal(q)?;
    let tr = word_product(&gens, b.letters()).trace();
    tr.as_laurent()
        .ok_or_else(|| HzError::Consistency(format!("trace {tr} for {q} is not a Laurent polynomial")))
}

/// `h^Q(b)` through the orthogonal form; any radical residue is an error.
pub fn racah_coeff_orthogonal(b: &BraidWord, q: &YoungDiagram) -> Result<LaurentPoly> {
    if let Some(h) = one_dimensional(b, q) {
        return Ok(h);
    }
    let set = build_rmatrices(b.strands(), q)?;
    let tr = set.word_matrix(b).trace();
    let value = tr
        .as_rational()
        .ok_or_else(|| HzError::RadicalResidue(tr.to_string()))?;
    value
        .as_laurent()
        .ok_or_else(|| HzError::Consistency(format!("trace {value} is not a Laurent polynomial")))
}

/// All Racah coefficients of a braid, keyed by diagram.
pub fn racah_table(b: &BraidWord) -> Result<BTreeMap<YoungDiagram, LaurentPoly>> {
    let parts = YoungDiagram::partitions(b.strands());
    if b.strands() > MAX_STRANDS {
        return Err(HzError::UnsupportedStrands {
            strands: b.strands(),
            what: "Racah coefficients",
        });
    }
    parts
        .into_par_iter()
        .map(|q| racah_coeff(b, &q).map(|h| (q, h)))
        .collect()
}

/// The twists whose representations are diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    /// `F_m` on all strands.
    Full,
    /// `F_{m−1}` on the first `m−1` strands.
    FullSub,
    /// The Jucys–Murphy twist `Ẽ_m`.
    JucysMurphy,
}

impl Twist {
    pub fn braid(self, m: usize) -> Result<BraidWord> {
        match self {
            Twist::Full => full_twist(m),
            Twist::FullSub => full_twist_in(m - 1, m),
            Twist::JucysMurphy => jm_twist(m),
        }
    }
}

/// The representation matrix of a twist, checked to be diagonal.
pub fn twist_rep(m: usize, q: &YoungDiagram, twist: Twist) -> Result<Matrix<ExtScalar>> {
    let set = build_rmatrices(m, q)?;
    let mat = set.word_matrix(&twist.braid(m)?);
    if !mat.is_diagonal() {
        return Err(HzError::NotDiagonal(format!("{twist:?} on {q}")));
    }
    Ok(mat)
}

/// Closed-form diagonal of a twist in the tableau basis: `F_m` acts by
/// `q^{2Σc}` over all boxes, `F_{m−1}` by the same sum without the box of
/// `m`, and `Ẽ_m` by `q^{2c(m)}`.
pub fn twist_eigenvalues(q: &YoungDiagram, twist: Twist) -> Vec<LaurentPoly> {
    let total: i64 = q.contents().iter().sum();
    let m = q.size();
    standard_tableaux(q)
        .iter()
        .map(|t| {
            let (r, c) = t.position(m);
            let last = c as i64 - r as i64;
            let e = match twist {
                Twist::Full => 2 * total,
                Twist::FullSub => 2 * (total - last),
                Twist::JucysMurphy => 2 * last,
            };
            LaurentPoly::q_pow(e)
        })
        .collect()
}

#[cfg(test)]
mod tests;
