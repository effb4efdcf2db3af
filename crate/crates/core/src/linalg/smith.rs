//! Integer matrices, Smith normal form, and finitely generated abelian groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{vanishes_in, FieldSpec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_i64_shape(rows.len(), cols, rows)
    }

    /// Like [`IntMatrix::from_i64`] but with an explicit column count, so empty row
    /// lists still produce the right shape.
    pub fn from_i64_shape(nrows: usize, cols: usize, rows: &[Vec<i64>]) -> Self {
        assert_eq!(rows.len(), nrows);
        let mut m = Self::zeros(nrows, cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = BigInt::from(v);
            }
        }
        m
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.data[r * columns.len() + c] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        // Bareiss fraction-free elimination.
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(src, c) * q;
            if !v.is_zero() {
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, src) * q;
            if !v.is_zero() {
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, kept so lattice coordinates can be read off directly.
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with least-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    let move_pivot = |d: &mut IntMatrix,
                      u: &mut IntMatrix,
                      v: &mut IntMatrix,
                      v_inv: &mut IntMatrix,
                      t: usize,
                      r: usize,
                      c: usize| {
        d.swap_rows(t, r);
        u.swap_rows(t, r);
        d.swap_cols(t, c);
        v.swap_cols(t, c);
        v_inv.swap_rows(t, c);
    };

    for t in 0..rows.min(cols) {
        let Some((r, c)) = min_abs_entry(&d, t, |i, j| i >= t && j >= t) else {
            break;
        };
        move_pivot(&mut d, &mut u, &mut v, &mut v_inv, t, r, c);
        loop {
            let pivot = d.get(t, t).clone();
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(&pivot);
                let nq = -&q;
                d.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(&pivot);
                let nq = -&q;
                d.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                v_inv.add_row(t, j, &q);
            }
            // Remainders left in the pivot row/column are smaller than the pivot.
            if let Some((r, c)) = min_abs_entry(&d, t, |i, j| (i == t && j > t) || (j == t && i > t)) {
                move_pivot(&mut d, &mut u, &mut v, &mut v_inv, t, r, c);
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v, v_inv }
}

fn min_abs_entry(d: &IntMatrix, _t: usize, keep: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in 0..d.rows {
        for j in 0..d.cols {
            if !keep(i, j) {
                continue;
            }
            let a = d.get(i, j).abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// `Z^free_rank + Z/d1 + Z/d2 + ...` with `d1 | d2 | ...` and every `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form from a list of diagonal entries of a presentation matrix
    /// (zeros contribute free summands, units are dropped).
    pub fn from_diagonal(generators: usize, diagonal: &[BigInt]) -> Self {
        let nonzero: Vec<BigInt> = diagonal.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        let free_rank = generators - nonzero.len();
        // Re-run SNF on the diagonal so arbitrary entries become a divisibility chain.
        let n = nonzero.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in nonzero.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        let snf = smith_normal_form(&m);
        let torsion = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroup { free_rank, torsion }
    }

    /// Direct sum, re-canonicalized.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let diag: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let g = AbelianGroup::from_diagonal(diag.len(), &diag);
        AbelianGroup { free_rank: self.free_rank + other.free_rank, torsion: g.torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^ambient_rank / (column lattice of image_columns)` in invariant-factor form.
pub fn cokernel_group(ambient_rank: usize, image_columns: &IntMatrix) -> AbelianGroup {
    assert_eq!(image_columns.rows(), ambient_rank, "image columns must live in the ambient lattice");
    let snf = smith_normal_form(image_columns);
    AbelianGroup::from_diagonal(ambient_rank, &snf.invariant_factors())
}

/// `dim_k Hom(g, k+)`: free rank, plus the p-rank in characteristic p.
pub fn dual_dimension(g: &AbelianGroup, k: FieldSpec) -> usize {
    match k {
        FieldSpec::Rationals => g.free_rank,
        FieldSpec::Prime(_) => g.free_rank + g.torsion.iter().filter(|d| vanishes_in(k, d)).count(),
    }
}
