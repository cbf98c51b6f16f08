//! Small dense square matrices over any [`Ring`].

use std::fmt;

use crate::qring::Ring;

#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            data: vec![R::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, R::one())
    }

    pub fn scalar(n: usize, c: R) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_diagonal(diag: Vec<R>) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, c) in diag.into_iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> R {
        (0..self.n).fold(R::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<R> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Whether `D·self·D = other` for some diagonal `D` with entries `±1`.
    ///
    /// Orthogonal Racah matrices are only fixed up to such sign changes of
    /// basis vectors.
    #[allow(clippy::needless_range_loop)] // `j` indexes both matrices and the sign table
    pub fn equal_up_to_signature(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let n = self.n;
        let mut sign: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(true);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let si = sign[i].unwrap();
                for j in 0..n {
                    let a = self.get(i, j);
                    let b = other.get(i, j);
                    let flip = if *a == *b {
                        false
                    } else if *a == b.neg() {
                        true
                    } else {
                        return false;
                    };
                    if i == j {
                        if flip {
                            return false;
                        }
                        continue;
                    }
                    if a.is_zero() {
                        continue;
                    }
                    let want = si ^ flip;
                    match sign[j] {
                        None => {
                            sign[j] = Some(want);
                            stack.push(j);
                        }
                        Some(s) if s != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> + '_ {
        self.data.chunks(self.n.max(1))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}
