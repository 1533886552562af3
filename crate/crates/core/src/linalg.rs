//! Exact dense linear algebra over a field and small polynomial matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::Field;

/// Rank by Gaussian elimination.
pub fn rank<C: Field>(mut rows: Vec<Vec<C>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][col].inv();
        for i in (r + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone() * inv.clone();
            let (above, below) = rows.split_at_mut(i);
            for (x, p) in below[0][col..ncols].iter_mut().zip(&above[r][col..ncols]) {
                *x = x.clone() - p.clone() * factor.clone();
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Determinant by cofactor expansion; intended for the `n ≤ 4` matrices that
/// appear in transformation laws.
pub fn det_poly<C: Field>(m: &[Vec<MultiPoly<C>>], nvars: usize) -> MultiPoly<C> {
    let n = m.len();
    match n {
        0 => MultiPoly::one(nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = MultiPoly::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MultiPoly<C>>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = &m[0][j] * &det_poly(&minor, nvars);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Matrix with polynomial entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<C> {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<MultiPoly<C>>>,
}

impl<C: Field> PolyMatrix<C> {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        Self { nvars, rows, cols, entries: vec![vec![MultiPoly::zero(nvars); cols]; rows] }
    }

    pub fn from_rows(nvars: usize, entries: Vec<Vec<MultiPoly<C>>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        for r in &entries {
            if r.len() != cols {
                return Err(Error::Precondition("ragged matrix".into()));
            }
            if let Some(p) = r.iter().find(|p| p.nvars() != nvars) {
                return Err(Error::VarMismatch { left: nvars, right: p.nvars() });
            }
        }
        Ok(Self { nvars, rows, cols, entries })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nvars: usize, rows: usize, columns: &[Vec<MultiPoly<C>>]) -> Self {
        let mut m = Self::zeros(nvars, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                m.entries[i][j] = p.clone();
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<C> {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly<C>) {
        self.entries[i][j] = p;
    }

    pub fn entries(&self) -> &[Vec<MultiPoly<C>>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<MultiPoly<C>> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<MultiPoly<C>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Precondition(format!("shape mismatch: {}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(self.nvars);
                for k in 0..self.cols {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(MultiPoly::is_zero)
    }

    pub fn eval_exact(&self, point: &[C]) -> Result<Vec<Vec<C>>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.eval_exact(point)).collect()).collect()
    }

    pub fn rank_at(&self, point: &[C]) -> Result<usize> {
        Ok(rank(self.eval_exact(point)?))
    }

    pub fn without_row(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.entries.remove(i);
        m.rows -= 1;
        m
    }

    pub fn without_column(&self, j: usize) -> Self {
        let mut m = self.clone();
        for r in m.entries.iter_mut() {
            r.remove(j);
        }
        m.cols -= 1;
        m
    }
}

impl fmt::Display for PolyMatrix<crate::scalar::GaussianRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.entries {
            let cells: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::GaussianRational as Q;

    #[test]
    fn rank_of_singular_matrix() {
        let m =
            vec![vec![Q::from(1), Q::from(2), Q::from(3)], vec![Q::from(2), Q::from(4), Q::from(6)], vec![Q::from(0), Q::from(1), Q::i()]];
        assert_eq!(rank(m), 2);
        assert_eq!(rank::<Q>(vec![]), 0);
    }

    #[test]
    fn polynomial_determinant() {
        let p = |s: &str| parse_poly(s, 2).unwrap();
        let m = vec![vec![p("z + w"), p("0")], vec![p("1"), p("1")]];
        assert_eq!(det_poly(&m, 2), p("z + w"));
        let m3 = vec![vec![p("z"), p("1"), p("0")], vec![p("0"), p("w"), p("1")], vec![p("1"), p("0"), p("z")]];
        // z(wz) - 1(0 - 1) + 0
        assert_eq!(det_poly(&m3, 2), p("z^2*w + 1"));
    }
}
