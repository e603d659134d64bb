//! Linear algebra over prime fields for flags: column-reduced forms, the
//! block decomposition of `GL(n) / P(n, d)` into cells indexed by ordered
//! set partitions, and brute-force flag enumeration.
//!
//! Matrix indices are 0-based. Ordered set partitions, pivot sequences and
//! permutations live on `[n] = {1, ..., n}` and are 1-based.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::inversions::{enumerate_words, MultisetWord};
use crate::qanalogue::FlagShape;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if p >= 1 << 31 || !is_prime(p) {
        return Err(Error::invalid(format!("modulus must be a prime below 2^31, got {p}")));
    }
    Ok(())
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Dense matrix over `F_p`, entries stored row-major as residues in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    /// Builds a matrix from row-major integer entries, reducing mod `p`.
    pub fn new(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        check_prime(p)?;
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let data = entries.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged rows"));
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        FpMatrix::new(p, rows.len(), cols, &flat)
    }

    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(FpMatrix::zeros_unchecked(p, rows, cols))
    }

    fn zeros_unchecked(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = FpMatrix::zeros(p, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    /// The `n x e` matrix with a 1 in row `s_j` of column `j` (1-based `s`).
    pub fn selector(p: u64, n: usize, s: &[usize]) -> Result<Self> {
        let mut m = FpMatrix::zeros(p, n, s.len())?;
        for (j, &row) in s.iter().enumerate() {
            if row == 0 || row > n {
                return Err(Error::invalid(format!("row {row} outside 1..={n}")));
            }
            m.set(row - 1, j, 1);
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: Range<usize>) -> FpMatrix {
        let mut out = FpMatrix::zeros_unchecked(self.p, self.rows, range.len());
        for i in 0..self.rows {
            for (k, j) in range.clone().enumerate() {
                out.data[i * out.cols + k] = self.get(i, j);
            }
        }
        out
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, range: Range<usize>) -> FpMatrix {
        FpMatrix {
            p: self.p,
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.rows != other.rows {
            return Err(Error::invalid("hstack needs equal row counts and moduli"));
        }
        let mut out = FpMatrix::zeros_unchecked(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * out.cols..(i + 1) * out.cols];
            dst[..self.cols].copy_from_slice(self.row(i));
            dst[self.cols..].copy_from_slice(other.row(i));
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.cols != other.cols {
            return Err(Error::invalid("vstack needs equal column counts and moduli"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_col(&mut self, j: usize, f: u64) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = *x * f % self.p;
        }
    }

    /// `col[dst] -= f * col[src]`.
    fn sub_col_multiple(&mut self, dst: usize, src: usize, f: u64) {
        if f == 0 {
            return;
        }
        let p = self.p;
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src];
            let x = &mut self.data[i * self.cols + dst];
            *x = (*x + p - s * f % p) % p;
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && rank(self) == self.rows
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {self})", self.p)
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

pub fn mat_mul(a: &FpMatrix, b: &FpMatrix) -> Result<FpMatrix> {
    if a.p != b.p {
        return Err(Error::invalid("moduli differ"));
    }
    if a.cols != b.rows {
        return Err(Error::invalid(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let p = a.p;
    let mut out = FpMatrix::zeros_unchecked(p, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x == 0 {
                continue;
            }
            for j in 0..b.cols {
                let y = &mut out.data[i * b.cols + j];
                *y = (*y + x * b.get(k, j)) % p;
            }
        }
    }
    Ok(out)
}

/// Rank by Gaussian elimination.
pub fn rank(a: &FpMatrix) -> usize {
    let p = a.p;
    let mut m = a.data.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(r * cols + j, piv * cols + j);
        }
        let inv = inv_mod(m[r * cols + c], p);
        for i in r + 1..rows {
            let f = m[i * cols + c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                m[i * cols + j] = (m[i * cols + j] + p - f * m[r * cols + j] % p) % p;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Inverse by Gauss-Jordan elimination.
pub fn mat_inverse(a: &FpMatrix) -> Result<FpMatrix> {
    if !a.is_square() {
        return Err(Error::invalid("only square matrices have inverses"));
    }
    let n = a.rows;
    let p = a.p;
    let mut aug = a.hstack(&FpMatrix::identity(p, n)?)?;
    let w = aug.cols;
    for c in 0..n {
        let piv = (c..n).find(|&i| aug.get(i, c) != 0).ok_or(Error::Singular)?;
        for j in 0..w {
            aug.data.swap(c * w + j, piv * w + j);
        }
        let inv = inv_mod(aug.get(c, c), p);
        for j in 0..w {
            aug.data[c * w + j] = aug.data[c * w + j] * inv % p;
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = aug.get(i, c);
            if f == 0 {
                continue;
            }
            for j in 0..w {
                let s = aug.data[c * w + j];
                aug.data[i * w + j] = (aug.data[i * w + j] + p - f * s % p) % p;
            }
        }
    }
    Ok(aug.columns(n..2 * n))
}

/// Column-reduces the columns in `cols`, looking for pivots only in the
/// first `search_rows` rows (rows below that only ride along).
///
/// Straight variant: pivots are taken top-down, so each column ends with a
/// 1 in its pivot row, zeros above it, and zeros in the other pivot rows.
/// Anti variant: pivots are taken bottom-up, leaving zeros below.
/// Returns the 0-based pivot rows in column order, or `None` when the
/// columns are linearly dependent.
fn reduce_columns(
    work: &mut FpMatrix,
    search_rows: usize,
    cols: Range<usize>,
    anti: bool,
) -> Option<Vec<usize>> {
    let p = work.p;
    let mut pivots = vec![0; cols.len()];
    let order: Vec<usize> = if anti {
        cols.clone().rev().collect()
    } else {
        cols.clone().collect()
    };
    for &j in &order {
        // columns not yet given a pivot
        let open: Vec<usize> = if anti {
            (cols.start..=j).collect()
        } else {
            (j..cols.end).collect()
        };
        let candidate = |i: usize| open.iter().copied().find(|&c| work.get(i, c) != 0);
        let found = if anti {
            (0..search_rows).rev().find_map(|i| candidate(i).map(|c| (i, c)))
        } else {
            (0..search_rows).find_map(|i| candidate(i).map(|c| (i, c)))
        };
        let (row, c) = found?;
        work.swap_cols(j, c);
        work.scale_col(j, inv_mod(work.get(row, j), p));
        for other in cols.clone() {
            if other != j {
                let f = work.get(row, other);
                work.sub_col_multiple(other, j, f);
            }
        }
        pivots[j - cols.start] = row;
    }
    Some(pivots)
}

/// Output of [`s_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SReduced {
    /// Pivot rows `s_1 < ... < s_e` (1-based).
    pub pivots: Vec<usize>,
    /// The reduced matrix `M = N g`.
    pub reduced: FpMatrix,
    /// The invertible `e x e` matrix `g`.
    pub transform: FpMatrix,
}

/// Brings a full-column-rank `n x e` matrix into (anti) `s`-reduced form
/// by invertible column operations.
pub fn s_reduce(mat: &FpMatrix, anti: bool) -> Result<SReduced> {
    let (n, e) = (mat.rows, mat.cols);
    let mut work = mat.vstack(&FpMatrix::identity(mat.p, e)?)?;
    let pivots = reduce_columns(&mut work, n, 0..e, anti)
        .ok_or_else(|| Error::invalid(format!("matrix does not have full column rank {e}")))?;
    Ok(SReduced {
        pivots: pivots.into_iter().map(|i| i + 1).collect(),
        reduced: work.row_block(0..n),
        transform: work.row_block(n..n + e),
    })
}

/// True when `mat` is already in (anti) `s`-reduced form for pivot rows `s`.
pub fn is_s_reduced(mat: &FpMatrix, s: &[usize], anti: bool) -> bool {
    if s.len() != mat.cols || s.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    (0..mat.cols).all(|j| {
        (0..mat.rows).all(|i| {
            let row = i + 1;
            let v = mat.get(i, j);
            if row == s[j] {
                v == 1
            } else if s.contains(&row) || (!anti && row < s[j]) || (anti && row > s[j]) {
                v == 0
            } else {
                true
            }
        })
    })
}

/// Block-upper-triangular invertible matrices with respect to the blocks of
/// `shape`.
pub fn is_parabolic_member(g: &FpMatrix, shape: &FlagShape) -> bool {
    if !g.is_square() || g.rows != shape.n() || !g.is_invertible() {
        return false;
    }
    let b = shape.boundaries();
    for (bi, rows) in b.windows(2).enumerate() {
        for cols in b.windows(2).take(bi) {
            for i in rows[0]..rows[1] {
                for j in cols[0]..cols[1] {
                    if g.get(i, j) != 0 {
                        return false;
                    }
                }
            }
        }
        let diag = g.columns(rows[0]..rows[1]).row_block(rows[0]..rows[1]);
        if !diag.is_invertible() {
            return false;
        }
    }
    true
}

/// `(sigma_1, ..., sigma_{r+1})`: a partition of `[n]` into blocks of the
/// sizes `e_i` of `shape`, each block stored increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    shape: FlagShape,
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn new(shape: &FlagShape, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let sizes = shape.blocks();
        if blocks.len() != sizes.len() {
            return Err(Error::invalid(format!(
                "expected {} blocks, got {}",
                sizes.len(),
                blocks.len()
            )));
        }
        let mut seen = vec![false; shape.n() + 1];
        for (b, &e) in blocks.iter_mut().zip(&sizes) {
            if b.len() != e {
                return Err(Error::invalid(format!("block {b:?} should have {e} elements")));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > shape.n() || seen[x] {
                    return Err(Error::invalid(format!("blocks do not partition 1..={}", shape.n())));
                }
                seen[x] = true;
            }
        }
        Ok(OrderedSetPartition {
            shape: shape.clone(),
            blocks,
        })
    }

    /// Partition with `sigma_m = { v : word[v] = m }`.
    pub fn from_word(shape: &FlagShape, word: &MultisetWord) -> Self {
        let mut blocks = vec![Vec::new(); shape.num_blocks()];
        for (v, &l) in word.letters().iter().enumerate() {
            blocks[l - 1].push(v + 1);
        }
        OrderedSetPartition {
            shape: shape.clone(),
            blocks,
        }
    }

    /// Every partition of the shape, at most `cap` of them.
    pub fn all(shape: &FlagShape, cap: u64) -> Result<Vec<OrderedSetPartition>> {
        Ok(enumerate_words(shape, cap)?
            .map(|w| OrderedSetPartition::from_word(shape, &w))
            .collect())
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `sigma(j)` for `j = 1..n`: the blocks read left to right.
    pub fn permutation(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// 1-based index of the block containing `v`.
    pub fn block_containing(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&v).is_ok())
            .expect("value in [n]")
            + 1
    }

    /// The partition with every block `{1..a} -> identity`: `sigma_i =
    /// (d_{i-1}, d_i]`.
    pub fn identity(shape: &FlagShape) -> Self {
        let blocks = shape
            .boundaries()
            .windows(2)
            .map(|w| (w[0] + 1..=w[1]).collect())
            .collect();
        OrderedSetPartition {
            shape: shape.clone(),
            blocks,
        }
    }
}

impl fmt::Debug for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedSetPartition({self})")
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let xs: Vec<String> = b.iter().map(ToString::to_string).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Statistics attached to a partition `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaStats {
    /// `sigma(j)`, `j = 1..n`.
    pub perm: Vec<usize>,
    /// `mu(j)`: block index of position `j`.
    pub mu: Vec<usize>,
    /// `delta(sigma, j) = |Delta(sigma, j)|`.
    pub delta: Vec<usize>,
    /// `lambda(sigma) = sum_j delta(sigma, j)`.
    pub lambda: usize,
}

/// `Delta(sigma, j) = { t in T(mu(j)) : t > sigma(j) }` where
/// `T(m) = [n] \ { sigma(i) : i <= d_m }`; `j` is 1-based.
pub fn delta_set(sigma: &OrderedSetPartition, j: usize) -> Vec<usize> {
    let shape = &sigma.shape;
    let perm = sigma.permutation();
    let m = shape.block_of(j);
    let dm = shape.boundaries()[m];
    let removed: BTreeSet<usize> = perm[..dm].iter().copied().collect();
    (1..=shape.n())
        .filter(|t| !removed.contains(t) && *t > perm[j - 1])
        .collect()
}

/// The rows below the pivot that stay free in the anti variant:
/// `{ t in T(mu(j)) : t < sigma(j) }`.
pub fn anti_delta_set(sigma: &OrderedSetPartition, j: usize) -> Vec<usize> {
    let shape = &sigma.shape;
    let perm = sigma.permutation();
    let dm = shape.boundaries()[shape.block_of(j)];
    let removed: BTreeSet<usize> = perm[..dm].iter().copied().collect();
    (1..=shape.n())
        .filter(|t| !removed.contains(t) && *t < perm[j - 1])
        .collect()
}

pub fn sigma_stats(sigma: &OrderedSetPartition) -> SigmaStats {
    let n = sigma.shape.n();
    let delta: Vec<usize> = (1..=n).map(|j| delta_set(sigma, j).len()).collect();
    SigmaStats {
        perm: sigma.permutation(),
        mu: (1..=n).map(|j| sigma.shape.block_of(j)).collect(),
        lambda: delta.iter().sum(),
        delta,
    }
}

/// The multiset word attached to `sigma` through the reversal
/// `Theta_sigma(i) = n - sigma(i) + 1`: the letter at position
/// `Theta_sigma(i)` is `mu(i)`. Equivalently, position `p` carries the block
/// index of the value `n + 1 - p`. Its inversion count is `lambda(sigma)`.
pub fn theta_word(sigma: &OrderedSetPartition) -> MultisetWord {
    let shape = &sigma.shape;
    let n = shape.n();
    let mut letters = vec![0; n];
    for (i, &s) in sigma.permutation().iter().enumerate() {
        letters[n - s] = shape.block_of(i + 1);
    }
    MultisetWord::new(shape, letters).expect("theta word has the shape's letters")
}

/// The word `v -> (block containing v)`, whose inversion count is the
/// dimension of the anti cell.
pub fn anti_word(sigma: &OrderedSetPartition) -> MultisetWord {
    let letters = (1..=sigma.shape.n()).map(|v| sigma.block_containing(v)).collect();
    MultisetWord::new(&sigma.shape, letters).expect("anti word has the shape's letters")
}

/// A cell representative: `matrix` is in (anti) `sigma`-form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellForm {
    pub sigma: OrderedSetPartition,
    pub matrix: FpMatrix,
    pub anti: bool,
}

/// Positions `(row, col)` (0-based) left unconstrained by the (anti)
/// `sigma`-form pattern: column `j` may be nonzero only at its pivot row
/// `sigma(j)` (where it is 1) and at the rows of `Delta(sigma, j)` (anti:
/// the mirrored set below the pivot).
pub fn free_positions(sigma: &OrderedSetPartition, anti: bool) -> Vec<(usize, usize)> {
    (1..=sigma.shape.n())
        .flat_map(|j| {
            let rows = if anti {
                anti_delta_set(sigma, j)
            } else {
                delta_set(sigma, j)
            };
            rows.into_iter().map(move |t| (t - 1, j - 1))
        })
        .collect()
}

impl CellForm {
    /// Checks the entry pattern: 1 at `(sigma(j), j)`, zero outside the free
    /// positions.
    pub fn matches_pattern(&self) -> bool {
        let perm = self.sigma.permutation();
        let free: BTreeSet<(usize, usize)> = free_positions(&self.sigma, self.anti).into_iter().collect();
        let n = self.sigma.shape.n();
        if self.matrix.rows != n || self.matrix.cols != n {
            return false;
        }
        (0..n).all(|j| {
            (0..n).all(|i| {
                let v = self.matrix.get(i, j);
                if i + 1 == perm[j] {
                    v == 1
                } else {
                    free.contains(&(i, j)) || v == 0
                }
            })
        })
    }

    /// Number of unconstrained entries of the pattern.
    pub fn dimension(&self) -> usize {
        free_positions(&self.sigma, self.anti).len()
    }

    /// Every matrix of the cell: the pattern with all `p^dim` fillings of
    /// the free positions.
    pub fn all_in_cell(sigma: &OrderedSetPartition, p: u64, anti: bool) -> Result<Vec<FpMatrix>> {
        let n = sigma.shape.n();
        let free = free_positions(sigma, anti);
        let mut base = FpMatrix::zeros(p, n, n)?;
        for (j, &s) in sigma.permutation().iter().enumerate() {
            base.set(s - 1, j, 1);
        }
        let mut out = Vec::new();
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut m = base.clone();
            for (&(i, j), &v) in free.iter().zip(&digits) {
                m.set(i, j, v);
            }
            out.push(m);
            let Some(pos) = digits.iter().position(|&d| d + 1 < p) else {
                break;
            };
            digits[pos] += 1;
            digits[..pos].iter_mut().for_each(|d| *d = 0);
        }
        Ok(out)
    }
}

/// Output of [`cell_form`]: `form.matrix = A * transform`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition {
    pub form: CellForm,
    pub transform: FpMatrix,
}

/// Finds the unique `sigma` and parabolic `g` with `A g` in (anti)
/// `sigma`-form.
///
/// Works block by block: the columns of block `m` first have the pivot
/// rows of earlier blocks cleared using the already-reduced earlier
/// columns, then are column-reduced on their own. All column operations
/// are mirrored on an identity matrix stacked below `A`, which therefore
/// ends up holding `g`.
pub fn cell_form(a: &FpMatrix, shape: &FlagShape, anti: bool) -> Result<CellDecomposition> {
    let n = shape.n();
    if !a.is_square() || a.rows != n {
        return Err(Error::invalid(format!("expected a {n}x{n} matrix")));
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let mut work = a.vstack(&FpMatrix::identity(a.p, n)?)?;
    let bounds = shape.boundaries();
    // (row, column) of every pivot fixed so far, in block order
    let mut fixed: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(shape.num_blocks());
    for w in bounds.windows(2) {
        let cols = w[0]..w[1];
        for &(row, src) in &fixed {
            for j in cols.clone() {
                let f = work.get(row, j);
                work.sub_col_multiple(j, src, f);
            }
        }
        let pivots = reduce_columns(&mut work, n, cols.clone(), anti).ok_or(Error::Singular)?;
        fixed.extend(pivots.iter().copied().zip(cols));
        blocks.push(pivots.into_iter().map(|i| i + 1).collect());
    }
    let sigma = OrderedSetPartition::new(shape, blocks)?;
    Ok(CellDecomposition {
        form: CellForm {
            sigma,
            matrix: work.row_block(0..n),
            anti,
        },
        transform: work.row_block(n..2 * n),
    })
}

/// `sum_{sigma} x^{dim}` over all partitions of the shape, where `dim`
/// counts the free entries of the (anti) `sigma`-form pattern.
pub fn cell_sum_poly(shape: &FlagShape, anti: bool, cap: u64) -> Result<crate::polycore::IntPoly> {
    let mut hist = vec![0u64; shape.nu() + 1];
    for sigma in OrderedSetPartition::all(shape, cap)? {
        hist[free_positions(&sigma, anti).len()] += 1;
    }
    Ok(crate::polycore::IntPoly::from_coeffs(
        hist.into_iter().map(num_bigint::BigInt::from).collect(),
    ))
}

/// A two-block partition `(tau_1, tau_2)` with `lambda = k`, for
/// `d = (d1)` and `0 <= k <= d1 (n - d1)`.
///
/// With `k = a e_2 + b`, `b < e_2`: `tau_1 = {1..e_1}` when `a = e_1`,
/// otherwise `{1..a}`, the top run `{n - j : 0 <= j <= e_1 - a - 2}`, and the
/// single element `n - e_1 + a + 1 - b`.
pub fn tau_for_lambda(n: usize, d1: usize, k: usize) -> Result<OrderedSetPartition> {
    let shape = FlagShape::new(n, vec![d1])?;
    let (e1, e2) = (d1, n - d1);
    if k > e1 * e2 {
        return Err(Error::invalid(format!("k = {k} exceeds e1*e2 = {}", e1 * e2)));
    }
    let (a, b) = (k / e2, k % e2);
    let tau1: Vec<usize> = if a == e1 {
        (1..=e1).collect()
    } else {
        let mut t: Vec<usize> = (1..=a).collect();
        t.extend((0..e1 - a - 1).map(|j| n - j));
        t.push(n - e1 + a + 1 - b);
        t
    };
    let set: BTreeSet<usize> = tau1.iter().copied().collect();
    let tau2 = (1..=n).filter(|x| !set.contains(x)).collect();
    OrderedSetPartition::new(&shape, vec![tau1, tau2])
}

/// A `d`-flag in `F_p^n`, each subspace stored by its reduced
/// column-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub shape: FlagShape,
    pub p: u64,
    pub bases: Vec<FpMatrix>,
}

/// `V_m` = span of the first `d_m` columns of `A`.
pub fn phi_flag(a: &FpMatrix, shape: &FlagShape) -> Result<Flag> {
    if !a.is_square() || a.rows != shape.n() {
        return Err(Error::invalid(format!("expected a {0}x{0} matrix", shape.n())));
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let bases = shape
        .d()
        .iter()
        .map(|&dm| s_reduce(&a.columns(0..dm), false).map(|r| r.reduced))
        .collect::<Result<_>>()?;
    Ok(Flag {
        shape: shape.clone(),
        p: a.p,
        bases,
    })
}

/// All `dim`-dimensional subspaces of `F_p^n` as reduced column-echelon
/// bases, built directly from pivot sets and free entries.
pub fn enumerate_subspaces(n: usize, dim: usize, p: u64) -> Result<Vec<FpMatrix>> {
    check_prime(p)?;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(dim);
    fn choose(start: usize, n: usize, dim: usize, p: u64, pivots: &mut Vec<usize>, out: &mut Vec<FpMatrix>) {
        if pivots.len() == dim {
            fill(n, p, pivots, out);
            return;
        }
        for s in start..=n {
            pivots.push(s);
            choose(s + 1, n, dim, p, pivots, out);
            pivots.pop();
        }
    }
    fn fill(n: usize, p: u64, pivots: &[usize], out: &mut Vec<FpMatrix>) {
        let base = FpMatrix::selector(p, n, pivots).expect("valid pivots");
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(j, &s)| {
                (s + 1..=n)
                    .filter(|row| !pivots.contains(row))
                    .map(move |row| (row - 1, j))
            })
            .collect();
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut m = base.clone();
            for (&(i, j), &v) in free.iter().zip(&digits) {
                m.set(i, j, v);
            }
            out.push(m);
            let Some(pos) = digits.iter().position(|&d| d + 1 < p) else {
                break;
            };
            digits[pos] += 1;
            digits[..pos].iter_mut().for_each(|d| *d = 0);
        }
    }
    choose(1, n, dim, p, &mut pivots, &mut out);
    Ok(out)
}

/// Every `d`-flag of `F_p^n`, found by chaining subspaces under inclusion.
/// Fails when the number of flags exceeds `cap`.
pub fn enumerate_flags(shape: &FlagShape, p: u64, cap: u64) -> Result<Vec<Flag>> {
    let expected = flag_count_group_formula(shape, p)?;
    if expected > BigUint::from(cap) {
        return Err(Error::cap("flag enumeration", expected, cap));
    }
    let n = shape.n();
    let layers: Vec<Vec<FpMatrix>> = shape
        .d()
        .iter()
        .map(|&dm| enumerate_subspaces(n, dm, p))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut chain: Vec<FpMatrix> = Vec::with_capacity(layers.len());
    fn extend(layers: &[Vec<FpMatrix>], chain: &mut Vec<FpMatrix>, shape: &FlagShape, p: u64, out: &mut Vec<Flag>) {
        let level = chain.len();
        if level == layers.len() {
            out.push(Flag {
                shape: shape.clone(),
                p,
                bases: chain.clone(),
            });
            return;
        }
        for cand in &layers[level] {
            let contains_prev = match chain.last() {
                None => true,
                Some(prev) => rank(&prev.hstack(cand).expect("same n")) == cand.cols(),
            };
            if contains_prev {
                chain.push(cand.clone());
                extend(layers, chain, shape, p, out);
                chain.pop();
            }
        }
    }
    extend(&layers, &mut chain, shape, p, &mut out);
    Ok(out)
}

/// `|GL(n, F_p)| = prod_{i<n} (p^n - p^i)`.
pub fn gl_order(n: usize, p: u64) -> BigUint {
    let q = BigUint::from(p);
    let qn: BigUint = Pow::pow(&q, n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - Pow::pow(&q, i)))
}

/// `|P(n, d, F_p)| = prod_i |GL(e_i)| * prod_{i<j} p^{e_i e_j}`.
pub fn parabolic_order(shape: &FlagShape, p: u64) -> BigUint {
    let q = BigUint::from(p);
    let diag = shape
        .blocks()
        .iter()
        .fold(BigUint::one(), |acc, &e| acc * gl_order(e, p));
    diag * Pow::pow(&q, shape.nu())
}

/// `|GL(n, F_p)| / |P(n, d, F_p)|`.
pub fn flag_count_group_formula(shape: &FlagShape, p: u64) -> Result<BigUint> {
    check_prime(p)?;
    Ok(gl_order(shape.n(), p) / parabolic_order(shape, p))
}

/// Every element of `GL(n, F_p)`, at most `cap` of them.
///
/// For `p = 2, n <= 4` all `2^{n^2}` matrices are scanned and the singular
/// ones dropped; otherwise columns are chosen one at a time outside the
/// span of the previous ones.
pub fn enumerate_gl(n: usize, p: u64, cap: u64) -> Result<Vec<FpMatrix>> {
    check_prime(p)?;
    let order = gl_order(n, p);
    if order > BigUint::from(cap) {
        return Err(Error::cap("GL enumeration", order, cap));
    }
    if p == 2 && n <= 4 {
        let cells = n * n;
        return Ok((0u64..1 << cells)
            .filter_map(|bits| {
                let entries: Vec<i64> = (0..cells).map(|i| (bits >> i & 1) as i64).collect();
                let m = FpMatrix::new(p, n, n, &entries).expect("sizes match");
                m.is_invertible().then_some(m)
            })
            .collect());
    }
    let vectors: Vec<Vec<u64>> = (0..p.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cols: Vec<&Vec<u64>> = Vec::with_capacity(n);
    fn build<'a>(n: usize, p: u64, vectors: &'a [Vec<u64>], cols: &mut Vec<&'a Vec<u64>>, out: &mut Vec<FpMatrix>) {
        if cols.len() == n {
            let mut m = FpMatrix::zeros_unchecked(p, n, n);
            for (j, c) in cols.iter().enumerate() {
                for (i, &v) in c.iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            out.push(m);
            return;
        }
        for v in vectors {
            let mut m = FpMatrix::zeros_unchecked(p, n, cols.len() + 1);
            for (j, c) in cols.iter().chain(std::iter::once(&v)).enumerate() {
                for (i, &x) in c.iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            if rank(&m) == cols.len() + 1 {
                cols.push(v);
                build(n, p, vectors, cols, out);
                cols.pop();
            }
        }
    }
    build(n, p, &vectors, &mut cols, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qanalogue::q_multinomial;
    use num_bigint::BigInt;

    fn shape(n: usize, d: &[usize]) -> FlagShape {
        FlagShape::new(n, d.to_vec()).unwrap()
    }

    fn m2(p: u64, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn primes_and_construction() {
        assert!(is_prime(2) && is_prime(3) && is_prime(101));
        assert!(!is_prime(1) && !is_prime(9));
        assert!(FpMatrix::zeros(4, 2, 2).is_err());
        assert!(FpMatrix::new(3, 2, 2, &[1, 2, 3]).is_err());
        let m = FpMatrix::new(3, 1, 3, &[-1, 4, 3]).unwrap();
        assert_eq!(m.row(0), &[2, 1, 0]);
    }

    #[test]
    fn arithmetic_examples() {
        let a = m2(5, &[&[1, 2, 3], &[0, 4, 1]]);
        assert_eq!(mat_mul(&FpMatrix::identity(5, 2).unwrap(), &a).unwrap(), a);
        assert!(mat_mul(&a, &a).is_err());
        let sel = FpMatrix::selector(7, 5, &[1, 3, 4]).unwrap();
        assert_eq!(rank(&sel), 3);
        let u = m2(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(mat_inverse(&u).unwrap(), u);
        assert_eq!(mat_inverse(&m2(3, &[&[1, 2], &[2, 1]])), Err(Error::Singular));
        let b = m2(7, &[&[2, 5, 1], &[3, 3, 0], &[6, 1, 4]]);
        let inv = mat_inverse(&b).unwrap();
        assert_eq!(mat_mul(&b, &inv).unwrap(), FpMatrix::identity(7, 3).unwrap());
    }

    #[test]
    fn s_reduce_examples() {
        let sel = FpMatrix::selector(3, 4, &[2, 4]).unwrap();
        for anti in [false, true] {
            let r = s_reduce(&sel, anti).unwrap();
            assert_eq!(r.pivots, vec![2, 4]);
            assert_eq!(r.reduced, sel);
            assert_eq!(r.transform, FpMatrix::identity(3, 2).unwrap());
        }
        let col = m2(2, &[&[1], &[1]]);
        let r = s_reduce(&col, false).unwrap();
        assert_eq!(r.pivots, vec![1]);
        assert_eq!(r.reduced, col);
        let r = s_reduce(&col, true).unwrap();
        assert_eq!(r.pivots, vec![2]);
        assert!(s_reduce(&m2(3, &[&[1, 2], &[2, 4]]), false).is_err());
    }

    #[test]
    fn s_reduce_is_canonical() {
        // every 4x2 full-rank matrix over F_3: reduced form is valid,
        // idempotent, and M = N g
        let p = 3;
        for bits in 0..3u32.pow(8) {
            let entries: Vec<i64> = (0..8).map(|i| (bits / 3u32.pow(i) % 3) as i64).collect();
            let n_mat = FpMatrix::new(p, 4, 2, &entries).unwrap();
            if rank(&n_mat) < 2 {
                continue;
            }
            for anti in [false, true] {
                let r = s_reduce(&n_mat, anti).unwrap();
                assert!(is_s_reduced(&r.reduced, &r.pivots, anti));
                assert_eq!(mat_mul(&n_mat, &r.transform).unwrap(), r.reduced);
                assert!(r.transform.is_invertible());
                let again = s_reduce(&r.reduced, anti).unwrap();
                assert_eq!(again.reduced, r.reduced);
                assert_eq!(again.transform, FpMatrix::identity(p, 2).unwrap());
            }
        }
    }

    #[test]
    fn parabolic_membership() {
        let s = shape(3, &[1]);
        assert!(is_parabolic_member(&FpMatrix::identity(5, 3).unwrap(), &s));
        let upper = m2(5, &[&[2, 3, 1], &[0, 1, 4], &[0, 0, 3]]);
        for d in [&[][..], &[1], &[2], &[1, 2]] {
            assert!(is_parabolic_member(&upper, &shape(3, d)));
        }
        let swap = m2(5, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(!is_parabolic_member(&swap, &s));
        assert!(is_parabolic_member(&swap, &shape(3, &[2])));
        assert!(!is_parabolic_member(&m2(5, &[&[1, 1], &[1, 1]]), &shape(2, &[])));
    }

    #[test]
    fn partitions_and_stats() {
        let s = shape(3, &[2]);
        assert!(OrderedSetPartition::new(&s, vec![vec![1, 2], vec![2]]).is_err());
        assert!(OrderedSetPartition::new(&s, vec![vec![1], vec![2, 3]]).is_err());
        let sigma = OrderedSetPartition::new(&s, vec![vec![1, 2], vec![3]]).unwrap();
        let st = sigma_stats(&sigma);
        assert_eq!(st.perm, vec![1, 2, 3]);
        assert_eq!(st.mu, vec![1, 1, 2]);
        assert_eq!(st.delta, vec![1, 1, 0]);
        assert_eq!(st.lambda, 2);
        assert_eq!(OrderedSetPartition::all(&s, 100).unwrap().len(), 3);
    }

    #[test]
    fn lambda_extremes() {
        for n in 2..=6 {
            for s in FlagShape::all(n) {
                let id = OrderedSetPartition::identity(&s);
                assert_eq!(sigma_stats(&id).lambda, s.nu());
                // blocks taken from the top: sigma_i = (n - d_i, n - d_{i-1}]
                let b = s.boundaries();
                let top = b
                    .windows(2)
                    .map(|w| (n - w[1] + 1..=n - w[0]).collect())
                    .collect();
                let top = OrderedSetPartition::new(&s, top).unwrap();
                assert_eq!(sigma_stats(&top).lambda, 0);
                for sigma in OrderedSetPartition::all(&s, 1 << 20).unwrap() {
                    let st = sigma_stats(&sigma);
                    assert!(st.lambda <= s.nu());
                    let is_identity = st.perm.iter().enumerate().all(|(i, &x)| x == i + 1);
                    assert_eq!(st.lambda == s.nu(), is_identity);
                    assert_eq!(st.lambda == 0, sigma == top);
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        let s = shape(3, &[2]);
        let sigma = OrderedSetPartition::new(&s, vec![vec![1, 2], vec![3]]).unwrap();
        let w = theta_word(&sigma);
        assert_eq!(w.letters(), &[2, 1, 1]);
        assert_eq!(w.inversions(), 2);

        let s = shape(2, &[1]);
        let sigma = OrderedSetPartition::new(&s, vec![vec![2], vec![1]]).unwrap();
        assert_eq!(theta_word(&sigma).letters(), &[1, 2]);
        assert_eq!(sigma_stats(&sigma).lambda, 0);

        // lambda = 1 here; reading the letters as mu(n - sigma(i) + 1)
        // would give 221 with two inversions
        let s = shape(3, &[1]);
        let sigma = OrderedSetPartition::new(&s, vec![vec![2], vec![1, 3]]).unwrap();
        assert_eq!(theta_word(&sigma).letters(), &[2, 1, 2]);
        assert_eq!(sigma_stats(&sigma).lambda, 1);
    }

    #[test]
    fn theta_is_bijective_and_transports_lambda() {
        for n in 1..=6 {
            for s in FlagShape::all(n) {
                let parts = OrderedSetPartition::all(&s, 1 << 20).unwrap();
                let words: BTreeSet<MultisetWord> = parts.iter().map(theta_word).collect();
                assert_eq!(BigUint::from(words.len()), s.multinomial());
                for sigma in &parts {
                    assert_eq!(theta_word(sigma).inversions() as usize, sigma_stats(sigma).lambda);
                    assert_eq!(
                        anti_word(sigma).inversions() as usize,
                        free_positions(sigma, true).len()
                    );
                }
            }
        }
    }

    #[test]
    fn cell_sums() {
        assert_eq!(
            cell_sum_poly(&shape(2, &[1]), false, 100).unwrap(),
            crate::polycore::IntPoly::from_i64s(&[1, 1])
        );
        for n in 1..=6 {
            for s in FlagShape::all(n) {
                let straight = cell_sum_poly(&s, false, 1 << 20).unwrap();
                assert_eq!(straight, cell_sum_poly(&s, true, 1 << 20).unwrap());
                assert_eq!(straight, q_multinomial(&s));
            }
        }
    }

    #[test]
    fn cell_form_examples() {
        let s = shape(2, &[1]);
        let id = FpMatrix::identity(3, 2).unwrap();
        let dec = cell_form(&id, &s, false).unwrap();
        assert_eq!(dec.form.sigma.blocks(), &[vec![1], vec![2]]);
        assert_eq!(dec.form.matrix, id);
        assert_eq!(dec.transform, id);
        assert_eq!(cell_form(&m2(3, &[&[1, 2], &[2, 4]]), &s, false), Err(Error::Singular));
    }

    #[test]
    fn cell_form_gl3_f2() {
        let gl = enumerate_gl(3, 2, 1000).unwrap();
        assert_eq!(gl.len(), 168);
        let s = shape(3, &[1, 2]);
        for anti in [false, true] {
            let forms: BTreeSet<FpMatrix> = gl
                .iter()
                .map(|a| cell_form(a, &s, anti).unwrap().form.matrix)
                .collect();
            assert_eq!(forms.len(), 21);
        }
    }

    #[test]
    fn cells_are_filled_patterns() {
        let s = shape(3, &[1]);
        for anti in [false, true] {
            for sigma in OrderedSetPartition::all(&s, 100).unwrap() {
                for m in CellForm::all_in_cell(&sigma, 3, anti).unwrap() {
                    assert!(m.is_invertible());
                    let dec = cell_form(&m, &s, anti).unwrap();
                    assert_eq!(dec.form.sigma, sigma);
                    assert_eq!(dec.form.matrix, m);
                    assert_eq!(dec.transform, FpMatrix::identity(3, 3).unwrap());
                }
            }
        }
    }

    #[test]
    fn tau_examples() {
        let t = tau_for_lambda(4, 2, 3).unwrap();
        assert_eq!(t.blocks()[0], vec![1, 3]);
        assert_eq!(sigma_stats(&t).lambda, 3);
        let t = tau_for_lambda(6, 2, 0).unwrap();
        assert_eq!(t.blocks()[0], vec![5, 6]);
        let t = tau_for_lambda(6, 2, 8).unwrap();
        assert_eq!(t.blocks()[0], vec![1, 2]);
        assert!(tau_for_lambda(6, 2, 9).is_err());
        assert!(tau_for_lambda(6, 6, 0).is_err());
        for n in 2..=8 {
            for d1 in 1..n {
                for k in 0..=d1 * (n - d1) {
                    assert_eq!(sigma_stats(&tau_for_lambda(n, d1, k).unwrap()).lambda, k);
                }
            }
        }
    }

    #[test]
    fn flag_enumeration_examples() {
        assert_eq!(enumerate_flags(&shape(2, &[1]), 2, 1000).unwrap().len(), 3);
        assert_eq!(enumerate_flags(&shape(3, &[1, 2]), 2, 1000).unwrap().len(), 21);
        assert_eq!(enumerate_flags(&shape(4, &[2]), 2, 1000).unwrap().len(), 35);
        assert_eq!(enumerate_flags(&shape(4, &[]), 3, 1000).unwrap().len(), 1);
        assert!(enumerate_flags(&shape(4, &[1, 2, 3]), 3, 100).unwrap_err().is_resource());
    }

    #[test]
    fn group_formula_examples() {
        assert_eq!(flag_count_group_formula(&shape(3, &[1, 2]), 2).unwrap(), BigUint::from(21u32));
        assert_eq!(gl_order(3, 2), BigUint::from(168u32));
        assert_eq!(parabolic_order(&shape(3, &[1, 2]), 2), BigUint::from(8u32));
        assert_eq!(flag_count_group_formula(&shape(2, &[1]), 3).unwrap(), BigUint::from(4u32));
        assert_eq!(flag_count_group_formula(&shape(5, &[]), 7).unwrap(), BigUint::one());
        assert!(flag_count_group_formula(&shape(2, &[1]), 4).is_err());
        for n in 1..=5 {
            for s in FlagShape::all(n) {
                for p in [2u64, 3, 5] {
                    let want = q_multinomial(&s).eval(&BigInt::from(p));
                    assert_eq!(BigInt::from(flag_count_group_formula(&s, p).unwrap()), want);
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let s = shape(3, &[1, 2]);
        let id = FpMatrix::identity(2, 3).unwrap();
        let f = phi_flag(&id, &s).unwrap();
        assert_eq!(f.bases[0], FpMatrix::selector(2, 3, &[1]).unwrap());
        assert_eq!(f.bases[1], FpMatrix::selector(2, 3, &[1, 2]).unwrap());
        assert!(phi_flag(&FpMatrix::zeros(2, 3, 3).unwrap(), &s).is_err());
    }

    #[test]
    fn gl_enumeration_routes() {
        assert_eq!(enumerate_gl(2, 3, 1000).unwrap().len(), 48);
        assert_eq!(enumerate_gl(2, 2, 1000).unwrap().len(), 6);
        assert!(enumerate_gl(4, 3, 1000).unwrap_err().is_resource());
        let scanned: BTreeSet<FpMatrix> = enumerate_gl(3, 2, 1000).unwrap().into_iter().collect();
        assert_eq!(scanned.len(), 168);
        let built: BTreeSet<FpMatrix> = enumerate_gl(2, 5, 1000).unwrap().into_iter().collect();
        assert_eq!(BigUint::from(built.len()), gl_order(2, 5));
        assert!(built.iter().all(FpMatrix::is_invertible));
    }

    #[test]
    fn coset_law_sampled_gl3_f3() {
        use rand::{Rng, SeedableRng};
        let gl = enumerate_gl(3, 3, 20_000).unwrap();
        assert_eq!(gl.len(), 11232);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for s in FlagShape::all(3) {
            let parabolic: Vec<&FpMatrix> = gl.iter().filter(|g| is_parabolic_member(g, &s)).collect();
            assert_eq!(BigUint::from(parabolic.len()), parabolic_order(&s, 3));
            for _ in 0..400 {
                let a = &gl[rng.gen_range(0..gl.len())];
                let g = parabolic[rng.gen_range(0..parabolic.len())];
                let ag = mat_mul(a, g).unwrap();
                assert_eq!(phi_flag(a, &s).unwrap(), phi_flag(&ag, &s).unwrap());
                let b = &gl[rng.gen_range(0..gl.len())];
                let same = phi_flag(a, &s).unwrap() == phi_flag(b, &s).unwrap();
                let q = mat_mul(&mat_inverse(b).unwrap(), a).unwrap();
                assert_eq!(same, is_parabolic_member(&q, &s));
            }
        }
    }
}
