//! Exact linear algebra over [`RadicalScalar`].
//!
//! Everything here is plain elimination with exact scalar division; there
//! is no pivot-size heuristic beyond determinism. Inertia uses congruence
//! (Schur complements), which preserves the signature by Sylvester's law.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::radical::RadicalScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RadicalScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![RadicalScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = RadicalScalar::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<RadicalScalar>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            *m.at_mut(i, i) = e;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RadicalScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &RadicalScalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut RadicalScalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = RadicalScalar::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(i, k) * rhs.at(k, j));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != self.at(j, i).conj() {
                    return false;
                }
            }
        }
        true
    }

    /// Row rank by Gaussian elimination; pivots are the first nonzero
    /// entry in each column, scanned top down.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot_row) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot_row);
            let pivot = m.at(rank, col).clone();
            for r in rank + 1..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m
                    .at(r, col)
                    .checked_div(&pivot)
                    .expect("pivot is nonzero");
                for c in col..m.cols {
                    let delta = &factor * m.at(rank, c);
                    *m.at_mut(r, c) = &*m.at(r, c) - &delta;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_symmetric(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.swap_rows(a, b);
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// Signature (positive, negative) of a Hermitian matrix, computed by
    /// exact congruence diagonalization: symmetric pivoting on the
    /// largest-magnitude diagonal entry, and when every remaining diagonal
    /// entry is zero, a 2x2 off-diagonal block [[0, c], [cbar, 0]] which
    /// contributes (1, 1). The rank is positive + negative.
    pub fn inertia(&self) -> Result<(usize, usize)> {
        if self.rows != self.cols {
            return Err(Error::NotHermitian(0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != self.at(j, i).conj() {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        let mut m = self.clone();
        let mut pos = 0usize;
        let mut neg = 0usize;
        let mut start = 0usize;
        let n = m.rows;
        while start < n {
            // Largest |diagonal| among the active block, ties to the
            // smallest index; the comparison is exact.
            let mut best: Option<usize> = None;
            for i in start..n {
                if m.at(i, i).is_zero() {
                    continue;
                }
                best = Some(match best {
                    None => i,
                    Some(b) => {
                        if m.at(i, i).cmp_abs_real(m.at(b, b))? == Ordering::Greater {
                            i
                        } else {
                            b
                        }
                    }
                });
            }
            if let Some(b) = best {
                m.swap_symmetric(start, b);
                let d = m.at(start, start).clone();
                match d.sign_of_real()? {
                    1 => pos += 1,
                    -1 => neg += 1,
                    _ => unreachable!("pivot is nonzero"),
                }
                // Schur complement: M[i][j] -= M[i][start] * M[start][j] / d.
                let w: Vec<RadicalScalar> = (start + 1..n)
                    .map(|j| m.at(start, j).checked_div(&d).expect("nonzero pivot"))
                    .collect();
                for i in start + 1..n {
                    let li = m.at(i, start).clone();
                    if li.is_zero() {
                        continue;
                    }
                    for j in start + 1..n {
                        let delta = &li * &w[j - start - 1];
                        *m.at_mut(i, j) = &*m.at(i, j) - &delta;
                    }
                }
                for k in start..n {
                    *m.at_mut(start, k) = RadicalScalar::zero();
                    *m.at_mut(k, start) = RadicalScalar::zero();
                }
                start += 1;
                continue;
            }
            // All diagonals vanish; find an off-diagonal entry.
            let mut found: Option<(usize, usize)> = None;
            'scan: for i in start..n {
                for j in i + 1..n {
                    if !m.at(i, j).is_zero() {
                        found = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = found else {
                break; // zero block, done
            };
            // i < j and start <= i force j > start, so the two swaps move
            // the tracked entry to (start, start + 1) without aliasing.
            m.swap_symmetric(start, i);
            m.swap_symmetric(start + 1, j);
            let c = m.at(start, start + 1).clone();
            let csq = c.norm_sq();
            pos += 1;
            neg += 1;
            // Schur complement of the block [[0, c], [cbar, 0]]:
            // M[i][j] -= (M[i][start+1] cbar M[start][j]
            //             + M[i][start] c M[start+1][j]) / |c|^2.
            let u: Vec<RadicalScalar> = (start + 2..n)
                .map(|k| {
                    (&c.conj() * m.at(start, k))
                        .checked_div(&csq)
                        .expect("|c|^2 is nonzero")
                })
                .collect();
            let v: Vec<RadicalScalar> = (start + 2..n)
                .map(|k| {
                    (&c * m.at(start + 1, k))
                        .checked_div(&csq)
                        .expect("|c|^2 is nonzero")
                })
                .collect();
            for r in start + 2..n {
                let a0 = m.at(r, start).clone();
                let a1 = m.at(r, start + 1).clone();
                for k in start + 2..n {
                    let delta = &(&a1 * &u[k - start - 2]) + &(&a0 * &v[k - start - 2]);
                    *m.at_mut(r, k) = &*m.at(r, k) - &delta;
                }
            }
            for k in start..n {
                for b in [start, start + 1] {
                    *m.at_mut(b, k) = RadicalScalar::zero();
                    *m.at_mut(k, b) = RadicalScalar::zero();
                }
            }
            start += 2;
        }
        Ok((pos, neg))
    }

    /// One solution of `self * x = b` with free variables set to zero, or
    /// None when the system is inconsistent.
    pub fn solve(&self, b: &[RadicalScalar]) -> Option<Vec<RadicalScalar>> {
        assert_eq!(b.len(), self.rows);
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        let mut pivot_cols: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut row = 0usize;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            rhs.swap(row, p);
            let pivot = m.at(row, col).clone();
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).checked_div(&pivot).expect("nonzero pivot");
                for c in col..m.cols {
                    let delta = &factor * m.at(row, c);
                    *m.at_mut(r, c) = &*m.at(r, c) - &delta;
                }
                let delta = &factor * &rhs[row];
                rhs[r] = &rhs[r] - &delta;
            }
            pivot_cols.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        // Zero rows with nonzero right-hand side mean inconsistency.
        for r in row..m.rows {
            if !rhs[r].is_zero() {
                return None;
            }
        }
        let mut x = vec![RadicalScalar::zero(); self.cols];
        for (r, c) in pivot_cols {
            x[c] = rhs[r]
                .checked_div(m.at(r, c))
                .expect("nonzero pivot");
        }
        Some(x)
    }
}
