//! Dense exact linear algebra over a prime field `F_p`.
//!
//! Every Hom, Ext, trace and decomposition computation in the crate bottoms
//! out here. Matrices are tiny (a few dozen rows at most), so everything is
//! dense and row-major.

use std::fmt;

/// Default characteristic. Interval modules of type A only use 0/1 structure
/// maps, so dimensions do not depend on the choice.
pub const DEFAULT_PRIME: u32 = 2;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<F{}>{}x{}[", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v.rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * out.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols, self.p), (other.rows, other.cols, other.p));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| (a + b) % self.p).collect();
        Matrix { data, ..*self }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|&a| (self.p - a) % self.p).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let p = self.p as u64;
        let data = self.data.iter().map(|&a| (a as u64 * s as u64 % p) as u32).collect();
        Matrix { data, ..*self }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        gauss(self).rank
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        solve_columns(self, &Matrix::identity(self.p, self.rows))
    }
}

/// Output of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub rank: usize,
    /// Pivot column of each nonzero row of `rref`.
    pub pivots: Vec<usize>,
    pub rref: Matrix,
    /// Basis of `{v : m v = 0}`.
    pub nullspace: Vec<Vec<u32>>,
    /// Basis of the column space, taken from the pivot columns of the input.
    pub colspace: Vec<Vec<u32>>,
}

/// Gauss-Jordan elimination. Total: empty matrices are fine.
pub fn gauss(m: &Matrix) -> Reduction {
    let p = m.p as u64;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for c in 0..a.cols {
                a.data.swap(pr * a.cols + c, row * a.cols + c);
            }
        }
        let inv = inv_mod(a.get(row, col), m.p) as u64;
        for c in col..a.cols {
            let v = a.get(row, c) as u64 * inv % p;
            a.set(row, c, v as u32);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.get(r, col) as u64;
            if f == 0 {
                continue;
            }
            for c in col..a.cols {
                let v = (a.get(r, c) as u64 + p * p - f * a.get(row, c) as u64) % p;
                a.set(r, c, v as u32);
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();

    let mut nullspace = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; m.cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (m.p - a.get(r, free)) % m.p;
        }
        nullspace.push(v);
    }
    let colspace = pivots.iter().map(|&c| m.column(c)).collect();
    Reduction { rank, pivots, rref: a, nullspace, colspace }
}

/// Solves `a x = b`, returning one solution if any exists.
pub fn solve(a: &Matrix, b: &[u32]) -> Option<Vec<u32>> {
    let bm = Matrix::from_columns(a.p, a.rows, &[b.to_vec()]);
    solve_columns(a, &bm).map(|x| x.column(0))
}

/// Solves `a X = b` column by column.
pub fn solve_columns(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows);
    let aug = a.hstack(b);
    let red = gauss(&aug);
    if red.pivots.iter().any(|&c| c >= a.cols) {
        return None;
    }
    let mut x = Matrix::zeros(a.p, a.cols, b.cols);
    for (r, &pc) in red.pivots.iter().enumerate() {
        for c in 0..b.cols {
            x.set(pc, c, red.rref.get(r, a.cols + c));
        }
    }
    Some(x)
}

/// Reduces a spanning set to a basis of its span.
pub fn span_basis(p: u32, dim: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    gauss(&Matrix::from_columns(p, dim, vectors)).colspace
}

pub fn in_span(p: u32, dim: usize, basis: &[Vec<u32>], v: &[u32]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    solve(&Matrix::from_columns(p, dim, basis), v).is_some()
}

/// Extends a linearly independent list to a basis of `F_p^dim` with standard
/// vectors; returns only the added vectors.
pub fn complement(p: u32, dim: usize, basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut current: Vec<Vec<u32>> = basis.to_vec();
    let mut added = Vec::new();
    let mut rank = span_basis(p, dim, &current).len();
    for i in 0..dim {
        if rank == dim {
            break;
        }
        let mut e = vec![0; dim];
        e[i] = 1;
        current.push(e.clone());
        let r = span_basis(p, dim, &current).len();
        if r > rank {
            rank = r;
            added.push(e);
        } else {
            current.pop();
        }
    }
    added
}

/// All vectors of `F_p^len`, in lexicographic order.
pub fn all_vectors(p: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(len as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (k % p as u64) as u32;
            k /= p as u64;
        }
        v
    })
}

/// Every subspace of `F_p^dim`, each as a `dim x k` matrix whose columns form
/// a basis. Enumerated through reduced row echelon forms, so each subspace
/// appears exactly once.
pub fn subspaces(p: u32, dim: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for k in 0..=dim {
        for pivots in combinations(dim, k) {
            // Free slots: (row i, column j) with j > pivot_i and j not a pivot.
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let piv = &pivots;
                    (pivots[i] + 1..dim).filter(move |j| !piv.contains(j)).map(move |j| (i, j))
                })
                .collect();
            for values in all_vectors(p, free.len()) {
                let mut rows = Matrix::zeros(p, k, dim);
                for (i, &pc) in pivots.iter().enumerate() {
                    rows.set(i, pc, 1);
                }
                for (&(i, j), &v) in free.iter().zip(&values) {
                    rows.set(i, j, v);
                }
                out.push(rows.transpose());
            }
        }
    }
    out
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_has_full_rank() {
        let r = gauss(&Matrix::identity(2, 3));
        assert_eq!(r.rank, 3);
        assert!(r.nullspace.is_empty());
    }

    #[test]
    fn zero_matrix_has_full_nullspace() {
        let r = gauss(&Matrix::zeros(2, 2, 4));
        assert_eq!(r.rank, 0);
        assert_eq!(r.nullspace.len(), 4);
    }

    #[test]
    fn all_ones_over_f2() {
        let m = Matrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        let r = gauss(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.nullspace, vec![vec![1, 1]]);
    }

    #[test]
    fn empty_matrix_is_fine() {
        let r = gauss(&Matrix::zeros(3, 0, 0));
        assert_eq!(r.rank, 0);
        assert!(r.nullspace.is_empty() && r.colspace.is_empty());
    }

    #[test]
    fn inverse_mod_three() {
        let m = Matrix::from_rows(3, &[vec![1, 2], vec![0, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3, 2));
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        // Subspaces of F_2^3: 1 + 7 + 7 + 1; of F_3^2: 1 + 4 + 1.
        assert_eq!(subspaces(2, 3).len(), 16);
        assert_eq!(subspaces(3, 2).len(), 6);
    }

    #[test]
    fn complement_completes_a_basis() {
        let b = vec![vec![1, 1, 0]];
        let c = complement(2, 3, &b);
        assert_eq!(c.len(), 2);
        let mut all = b.clone();
        all.extend(c);
        assert_eq!(span_basis(2, 3, &all).len(), 3);
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (prop_oneof![Just(2u32), Just(3), Just(5)], 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            proptest::collection::vec(0..p, r * c).prop_map(move |data| Matrix { p, rows: r, cols: c, data })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let r = gauss(&m);
            prop_assert_eq!(r.rank + r.nullspace.len(), m.cols());
            for v in &r.nullspace {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rank_of_transpose(m in matrix_strategy()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn colspace_spans_image(m in matrix_strategy()) {
            let r = gauss(&m);
            prop_assert_eq!(r.colspace.len(), r.rank);
            for c in 0..m.cols() {
                prop_assert!(in_span(m.p(), m.rows(), &r.colspace, &m.column(c)));
            }
        }
    }
}
