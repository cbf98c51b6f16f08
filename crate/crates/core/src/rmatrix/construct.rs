//! Standard Young tableaux and the braid generators acting on them.
//!
//! For a generator `σ_k` and a tableau `T`, let `ρ = c(k+1) − c(k)` be the
//! axial distance between the boxes holding `k+1` and `k` (content
//! `c = column − row`). Then `σ_k` acts by `q` when `k, k+1` share a row, by
//! `−q⁻¹` when they share a column, and otherwise by the 2×2 block
//!
//! ```text
//!   ( q^ρ/[ρ]     s_|ρ|        )      s_n = √([n−1][n+1]) / [n]
//!   ( s_|ρ|       q^−ρ/[−ρ]    )
//! ```
//!
//! on `T` and `T' = s_k T`. This is the orthogonal form, whose entries live in
//! [`ExtScalar`]. Conjugating by a diagonal matrix gives the seminormal form,
//! with off-diagonal pair `(s², 1)` and no radicals; traces agree.

use crate::error::{HzError, Result};
use crate::qring::{qint, ExtScalar, LaurentPoly, RatFuncQ, Ring};
use crate::young::YoungDiagram;

use super::Matrix;

/// Largest axial distance with a supported radical `s_n`.
const MAX_RADICAL: i64 = 4;

/// A standard Young tableau, stored as the `(row, column)` of each entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    pos: Vec<(usize, usize)>,
}

impl Tableau {
    /// Position of entry `e` (1-based).
    pub fn position(&self, e: usize) -> (usize, usize) {
        self.pos[e - 1]
    }

    /// Row (0-based) of each entry in order.
    pub fn row_sequence(&self) -> Vec<usize> {
        self.pos.iter().map(|p| p.0).collect()
    }

    fn content(&self, e: usize) -> i64 {
        let (r, c) = self.position(e);
        c as i64 - r as i64
    }

    /// Axial distance `c(k+1) − c(k)`.
    pub fn axial_distance(&self, k: usize) -> i64 {
        self.content(k + 1) - self.content(k)
    }

    fn swapped(&self, k: usize) -> Tableau {
        let mut pos = self.pos.clone();
        pos.swap(k - 1, k);
        Tableau { pos }
    }
}

/// All standard tableaux of shape `q`, ordered so that tableaux whose largest
/// entries sit in lower rows come first (descending lexicographic order of the
/// reversed row sequence).
pub fn standard_tableaux(q: &YoungDiagram) -> Vec<Tableau> {
    fn rec(shape: &[usize], fill: &mut Vec<usize>, pos: &mut Vec<(usize, usize)>, out: &mut Vec<Tableau>) {
        if pos.len() == shape.iter().sum::<usize>() {
            out.push(Tableau { pos: pos.clone() });
            return;
        }
        for r in 0..shape.len() {
            let c = fill[r];
            if c < shape[r] && (r == 0 || fill[r - 1] > c) {
                fill[r] += 1;
                pos.push((r, c));
                rec(shape, fill, pos, out);
                pos.pop();
                fill[r] -= 1;
            }
        }
    }
    let shape = q.rows();
    let mut out = Vec::new();
    rec(shape, &mut vec![0; shape.len()], &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        let ra: Vec<usize> = a.row_sequence().into_iter().rev().collect();
        let rb: Vec<usize> = b.row_sequence().into_iter().rev().collect();
        rb.cmp(&ra)
    });
    out
}

/// A generator in sparse form: a diagonal plus at most one off-diagonal
/// entry per column.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseGen<R: Ring> {
    diag: Vec<R>,
    /// For column `j`: `(i, R[i][j])` with `i ≠ j`.
    col_off: Vec<Option<(usize, R)>>,
}

/// `α_n`, `β_n` with `R^n = α_n R + β_n I` for any `R` with eigenvalues
/// `q` and `−q⁻¹`.
pub fn hecke_power_coeffs(n: i64) -> (LaurentPoly, LaurentPoly) {
    let q_n = LaurentPoly::q_pow(n);
    let mq_n = LaurentPoly::q_pow(-n).scale(&crate::qring::rat(if n % 2 == 0 { 1 } else { -1 }));
    let alpha = (&q_n - &mq_n)
        .div_exact(&qint(2))
        .expect("q + q⁻¹ divides q^n − (−q⁻¹)^n");
    let beta = &q_n - &alpha.shift(1);
    (alpha, beta)
}

impl<R: Ring> SparseGen<R> {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_matrix(&self) -> Matrix<R> {
        let mut m = Matrix::from_diagonal(self.diag.clone());
        for (j, off) in self.col_off.iter().enumerate() {
            if let Some((i, v)) = off {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    /// `R^n` for any integer `n`, through the quadratic (Hecke) relation.
    pub fn power(&self, n: i64) -> SparseGen<R> {
        if n == 1 {
            return self.clone();
        }
        let (alpha, beta) = hecke_power_coeffs(n);
        let a = R::from_laurent(&alpha);
        let b = R::from_laurent(&beta);
        SparseGen {
            diag: self.diag.iter().map(|d| d.mul(&a).add(&b)).collect(),
            col_off: self
                .col_off
                .iter()
                .map(|o| o.as_ref().map(|(i, v)| (*i, v.mul(&a))).filter(|(_, v)| !v.is_zero()))
                .collect(),
        }
    }

    /// `P · self`.
    pub fn right_mul(&self, p: &Matrix<R>) -> Matrix<R> {
        let n = self.dim();
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut v = p.get(i, j).mul(&self.diag[j]);
                if let Some((t, r)) = &self.col_off[j] {
                    let pit = p.get(i, *t);
                    if !pit.is_zero() {
                        v = v.add(&pit.mul(r));
                    }
                }
                out.set(i, j, v);
            }
        }
        out
    }
}

fn ratio(num: LaurentPoly, den: LaurentPoly) -> RatFuncQ {
    RatFuncQ::new(num, den)
}

/// The diagonal entry `q^ρ/[ρ]`, also covering `ρ = ±1`.
fn diagonal_entry(rho: i64) -> RatFuncQ {
    ratio(LaurentPoly::q_pow(rho), qint(rho))
}

/// Which side of a `ρ`-pair carries `s²` in the seminormal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// The row of the tableau with `ρ > 0` carries `s²`.
    PositiveRow,
    /// The row of the tableau with `ρ < 0` carries `s²`.
    NegativeRow,
}

fn generators<R: Ring>(
    q: &YoungDiagram,
    off_entry: impl Fn(i64) -> Result<R>,
    convert: impl Fn(RatFuncQ) -> R,
) -> Result<Vec<SparseGen<R>>> {
    let tabs = standard_tableaux(q);
    let m = q.size();
    let index = |t: &Tableau| tabs.iter().position(|u| u == t).expect("swapped tableau is standard");
    let mut gens = Vec::with_capacity(m.saturating_sub(1));
    for k in 1..m {
        let mut diag = Vec::with_capacity(tabs.len());
        let mut col_off = vec![None; tabs.len()];
        for (t, tab) in tabs.iter().enumerate() {
            let rho = tab.axial_distance(k);
            diag.push(convert(diagonal_entry(rho)));
            if rho.abs() >= 2 {
                let partner = index(&tab.swapped(k));
                // column `partner` receives the entry in row `t`
                col_off[partner] = Some((t, off_entry(rho)?));
            }
        }
        gens.push(SparseGen { diag, col_off });
    }
    Ok(gens)
}

/// Orthogonal generators `R_1 … R_{m−1}` with entries in the radical extension.
pub fn orthogonal_generators(q: &YoungDiagram) -> Result<Vec<SparseGen<ExtScalar>>> {
    generators(
        q,
        |rho| {
            let n = rho.abs();
            if n > MAX_RADICAL {
                return Err(HzError::UnsupportedDiagram {
                    strands: q.size(),
                    diagram: q.to_string(),
                });
            }
            Ok(ExtScalar::radical(n as usize).scale(&ratio(LaurentPoly::one(), qint(n))))
        },
        ExtScalar::rational,
    )
}

/// Radical-free seminormal generators over `Q(q)`.
pub fn seminormal_generators(q: &YoungDiagram, orientation: Orientation) -> Vec<SparseGen<RatFuncQ>> {
    generators(
        q,
        |rho| {
            let carries = match orientation {
                Orientation::PositiveRow => rho > 0,
                Orientation::NegativeRow => rho < 0,
            };
            let n = rho.abs();
            Ok(if carries {
                ratio(&qint(n - 1) * &qint(n + 1), &qint(n) * &qint(n))
            } else {
                RatFuncQ::one()
            })
        },
        |x| x,
    )
    .expect("seminormal entries need no radicals")
}

/// Whether adjacent generators satisfy `R_i R_{i+1} R_i = R_{i+1} R_i R_{i+1}`
/// and distant ones commute.
pub fn satisfies_braid_relations<R: Ring>(gens: &[SparseGen<R>]) -> bool {
    let mats: Vec<Matrix<R>> = gens.iter().map(|g| g.to_matrix()).collect();
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let (a, b) = (&mats[i], &mats[j]);
            let ok = if j == i + 1 {
                a.mul(b).mul(a) == b.mul(a).mul(b)
            } else {
                a.mul(b) == b.mul(a)
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// The product of generator powers along a braid word, as a matrix.
pub fn word_product<R: Ring>(gens: &[SparseGen<R>], letters: &[i32]) -> Matrix<R> {
    let dim = gens.first().map(|g| g.dim()).unwrap_or(1);
    let mut acc = Matrix::identity(dim);
    for (k, e) in letter_runs(letters) {
        acc = gens[k - 1].power(e).right_mul(&acc);
    }
    acc
}

/// Maximal runs of one generator, as `(k, signed exponent)`; runs that
/// cancel to zero are dropped.
pub fn letter_runs(letters: &[i32]) -> Vec<(usize, i64)> {
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for &l in letters {
        let k = l.unsigned_abs() as usize;
        let s = l.signum() as i64;
        match runs.last_mut() {
            Some((kk, e)) if *kk == k => *e += s,
            _ => runs.push((k, s)),
        }
    }
    runs.retain(|&(_, e)| e != 0);
    runs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tableau_counts_and_order() {
        let counts: Vec<usize> = ["[2,1]", "[3,1]", "[2,2]", "[4,1]", "[3,2]", "[3,1,1]"]
            .iter()
            .map(|s| standard_tableaux(&s.parse().unwrap()).len())
            .collect();
        assert_eq!(counts, vec![2, 3, 2, 4, 5, 6]);
        let t = standard_tableaux(&"[2,1]".parse().unwrap());
        assert_eq!(t[0].row_sequence(), vec![0, 0, 1]);
        assert_eq!(t[1].row_sequence(), vec![0, 1, 0]);
    }

    #[test]
    fn hecke_powers() {
        let (a, b) = hecke_power_coeffs(-1);
        assert_eq!(a, LaurentPoly::one());
        assert_eq!(b, -crate::qring::qbracket(1));
        let (a, b) = hecke_power_coeffs(0);
        assert!(a.is_zero());
        assert!(b.is_one());
    }

    #[test]
    fn runs() {
        assert_eq!(letter_runs(&[1, 1, -1, 2, -2, 2, 2]), vec![(1, 1), (2, 2)]);
        assert_eq!(letter_runs(&[1, -1]), vec![]);
    }
}
