//! Dense exact linear algebra over [`Ring`].
//!
//! All elimination uses unit pivots only. Over `Z/p^eZ` a square matrix is
//! invertible exactly when its determinant is a unit, and a set of rows is
//! independent (extends to an invertible matrix) exactly when the rows stay
//! independent modulo `p`. The number of unit pivots found by elimination is
//! therefore the size of the largest invertible minor, which we call the
//! *unit rank*.
//!
//! Pivot policy: columns are scanned left to right and the topmost unit entry
//! of the working submatrix is taken. Columns whose remaining entries are all
//! nilpotent are skipped. This keeps every transcript deterministic.

use std::fmt;

use thiserror::Error;

use crate::ring::{Residue, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("DimensionMismatch: {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("RingMismatch: operands live over {left} and {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("NotFullRowRank: unit rank {rank} is below the row count {rows}")]
    NotFullRowRank { rank: usize, rows: usize },
    #[error("Singular: unit rank {rank} of a {n}x{n} matrix")]
    Singular { rank: usize, n: usize },
    #[error("NotEnoughIndependentRows: requested {requested}, only {available} independent")]
    NotEnoughIndependentRows { requested: usize, available: usize },
    #[error("residue out of range: {value} is not below {modulus}")]
    OutOfRange { value: u64, modulus: u32 },
}

fn check_ring(left: Ring, right: Ring) -> Result<(), LinalgError> {
    if left == right {
        Ok(())
    } else {
        Err(LinalgError::RingMismatch { left, right })
    }
}

fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}

/// A row vector over a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RVector {
    ring: Ring,
    entries: Vec<Residue>,
}

impl RVector {
    pub fn new(ring: Ring, entries: Vec<Residue>) -> Self {
        debug_assert!(entries.iter().all(|r| ring.contains(r.value() as u64)));
        RVector { ring, entries }
    }

    /// Builds a vector from arbitrary integers, reducing each modulo `m`.
    pub fn from_i64(ring: Ring, values: &[i64]) -> Self {
        RVector {
            ring,
            entries: values.iter().map(|&v| ring.elem(v)).collect(),
        }
    }

    /// Builds a vector from integers that must already be canonical residues.
    pub fn from_canonical(ring: Ring, values: &[u64]) -> Result<Self, LinalgError> {
        let entries = values
            .iter()
            .map(|&v| {
                ring.residue(v).ok_or(LinalgError::OutOfRange {
                    value: v,
                    modulus: ring.modulus(),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(RVector { ring, entries })
    }

    pub fn zeros(ring: Ring, len: usize) -> Self {
        RVector {
            ring,
            entries: vec![Residue::ZERO; len],
        }
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[Residue] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize) -> Residue {
        self.entries[i]
    }

    pub fn values(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.value()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.is_zero())
    }

    /// Standard bilinear form `u · v^T`.
    pub fn dot(&self, other: &RVector) -> Result<Residue, LinalgError> {
        check_ring(self.ring, other.ring)?;
        check_dim("dot product length", self.len(), other.len())?;
        Ok(dot(self.ring, &self.entries, &other.entries))
    }

    pub fn add(&self, other: &RVector) -> Result<RVector, LinalgError> {
        check_ring(self.ring, other.ring)?;
        check_dim("vector sum length", self.len(), other.len())?;
        let r = self.ring;
        Ok(RVector {
            ring: r,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| r.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, a: Residue) -> RVector {
        let r = self.ring;
        RVector {
            ring: r,
            entries: self.entries.iter().map(|&x| r.mul(a, x)).collect(),
        }
    }

    /// The first `len` coordinates.
    pub fn prefix(&self, len: usize) -> RVector {
        RVector {
            ring: self.ring,
            entries: self.entries[..len.min(self.len())].to_vec(),
        }
    }

    /// `v · M`
    pub fn mul_matrix(&self, m: &RMatrix) -> Result<RVector, LinalgError> {
        check_ring(self.ring, m.ring)?;
        check_dim("vector-matrix product", m.rows, self.len())?;
        let r = self.ring;
        let mut out = vec![Residue::ZERO; m.cols];
        for (i, &a) in self.entries.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(m.row(i)) {
                *o = r.mul_add(*o, a, b);
            }
        }
        Ok(RVector {
            ring: r,
            entries: out,
        })
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn dot(r: Ring, a: &[Residue], b: &[Residue]) -> Residue {
    a.iter()
        .zip(b)
        .fold(Residue::ZERO, |acc, (&x, &y)| r.mul_add(acc, x, y))
}

/// Dense row-major matrix over a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Residue>,
}

impl RMatrix {
    pub fn new(
        ring: Ring,
        rows: usize,
        cols: usize,
        entries: Vec<Residue>,
    ) -> Result<Self, LinalgError> {
        check_dim("matrix entry count", rows * cols, entries.len())?;
        Ok(RMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from integer rows, reducing every entry modulo `m`.
    /// Panics if the rows are ragged.
    pub fn from_rows(ring: Ring, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RMatrix {
            ring,
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&v| ring.elem(v)).collect(),
        }
    }

    /// Builds a `rows x cols` matrix from integer rows that must already be
    /// canonical. `cols` is explicit so that empty matrices keep their width.
    pub fn from_canonical_rows(
        ring: Ring,
        cols: usize,
        rows: &[Vec<u64>],
    ) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            check_dim("row length", cols, row.len())?;
            for &v in row {
                entries.push(ring.residue(v).ok_or(LinalgError::OutOfRange {
                    value: v,
                    modulus: ring.modulus(),
                })?);
            }
        }
        Ok(RMatrix {
            ring,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Stacks row vectors of length `cols`.
    pub fn from_row_vectors(
        ring: Ring,
        cols: usize,
        rows: &[RVector],
    ) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for v in rows {
            check_ring(ring, v.ring)?;
            check_dim("row length", cols, v.len())?;
            entries.extend_from_slice(&v.entries);
        }
        Ok(RMatrix {
            ring,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        RMatrix {
            ring,
            rows,
            cols,
            entries: vec![Residue::ZERO; rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = RMatrix::zeros(ring, n, n);
        let one = ring.elem(1);
        for i in 0..n {
            m.entries[i * n + i] = one;
        }
        m
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Residue {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Residue] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> RVector {
        RVector {
            ring: self.ring,
            entries: self.row(i).to_vec(),
        }
    }

    pub fn row_values(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|r| r.value()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> RMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        RMatrix {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix, LinalgError> {
        check_ring(self.ring, other.ring)?;
        check_dim("matrix product inner dimension", self.cols, other.rows)?;
        let r = self.ring;
        let mut entries = vec![Residue::ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            let out = &mut entries[i * other.cols..(i + 1) * other.cols];
            for (l, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, &b) in out.iter_mut().zip(other.row(l)) {
                    *o = r.mul_add(*o, a, b);
                }
            }
        }
        Ok(RMatrix {
            ring: r,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// `M · x^T`, returned as a vector.
    pub fn mul_column(&self, x: &RVector) -> Result<RVector, LinalgError> {
        check_ring(self.ring, x.ring)?;
        check_dim("matrix-vector product", self.cols, x.len())?;
        Ok(RVector {
            ring: self.ring,
            entries: (0..self.rows)
                .map(|i| dot(self.ring, self.row(i), &x.entries))
                .collect(),
        })
    }

    /// Stacks `self` over `lower`.
    pub fn vstack(&self, lower: &RMatrix) -> Result<RMatrix, LinalgError> {
        check_ring(self.ring, lower.ring)?;
        check_dim("stacked column count", self.cols, lower.cols)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&lower.entries);
        Ok(RMatrix {
            ring: self.ring,
            rows: self.rows + lower.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn select_rows(&self, indices: &[usize]) -> RMatrix {
        let mut entries = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            entries.extend_from_slice(self.row(i));
        }
        RMatrix {
            ring: self.ring,
            rows: indices.len(),
            cols: self.cols,
            entries,
        }
    }

    /// The leading `count` columns.
    pub fn leading_columns(&self, count: usize) -> RMatrix {
        let count = count.min(self.cols);
        let mut entries = Vec::with_capacity(self.rows * count);
        for i in 0..self.rows {
            entries.extend_from_slice(&self.row(i)[..count]);
        }
        RMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: count,
            entries,
        }
    }

    /// Number of unit pivots, i.e. the size of the largest invertible minor.
    pub fn unit_rank(&self) -> usize {
        Elimination::run(self, false).pivots.len()
    }

    pub fn is_full_row_rank(&self) -> bool {
        self.unit_rank() == self.rows
    }

    /// A matrix `N` (`cols x rows`) with `self · N = I`.
    ///
    /// The pivot columns of the elimination form an invertible square
    /// submatrix `S`; `N` carries `S^{-1}` on those rows and zeros elsewhere.
    pub fn right_inverse(&self) -> Result<RMatrix, LinalgError> {
        let elim = Elimination::run(self, true);
        if elim.pivots.len() < self.rows {
            return Err(LinalgError::NotFullRowRank {
                rank: elim.pivots.len(),
                rows: self.rows,
            });
        }
        let transform = elim.transform.expect("tracked");
        let mut n = RMatrix::zeros(self.ring, self.cols, self.rows);
        for (j, &(_, col)) in elim.pivots.iter().enumerate() {
            let src = &transform.entries[j * self.rows..(j + 1) * self.rows];
            n.entries[col * self.rows..(col + 1) * self.rows].copy_from_slice(src);
        }
        Ok(n)
    }

    /// Two-sided inverse of a square matrix.
    pub fn inverse(&self) -> Result<RMatrix, LinalgError> {
        check_dim("square matrix", self.rows, self.cols)?;
        let elim = Elimination::run(self, true);
        if elim.pivots.len() < self.rows {
            return Err(LinalgError::Singular {
                rank: elim.pivots.len(),
                n: self.rows,
            });
        }
        Ok(elim.transform.expect("tracked"))
    }

    /// The unique `x` with `self · x^T = b^T`.
    pub fn solve_unique(&self, b: &RVector) -> Result<RVector, LinalgError> {
        check_ring(self.ring, b.ring)?;
        check_dim("square system", self.rows, self.cols)?;
        check_dim("right-hand side length", self.rows, b.len())?;
        self.inverse()?.mul_column(b)
    }

    /// Greedy lowest-index-first selection of `count` rows forming a full
    /// row-rank submatrix.
    pub fn select_independent_rows(&self, count: usize) -> Result<Vec<usize>, LinalgError> {
        if count > self.rows {
            return Err(LinalgError::NotEnoughIndependentRows {
                requested: count,
                available: self.unit_rank(),
            });
        }
        let mut chosen = Vec::with_capacity(count);
        let mut basis = Incremental::new(self.ring);
        for i in 0..self.rows {
            if chosen.len() == count {
                break;
            }
            if basis.try_insert(self.row(i)) {
                chosen.push(i);
            }
        }
        if chosen.len() < count {
            return Err(LinalgError::NotEnoughIndependentRows {
                requested: count,
                available: chosen.len(),
            });
        }
        Ok(chosen)
    }

    /// A nonzero `x` with `x · self = 0`, or `None` when the matrix is full
    /// row-rank.
    ///
    /// After elimination `T · M = E`, the rows of `E` below the last pivot are
    /// entirely nilpotent, so `p^(e-1)` times the matching row of `T` kills
    /// `M` while staying nonzero (rows of the invertible `T` contain a unit).
    pub fn left_null_vector(&self) -> Option<RVector> {
        let elim = Elimination::run(self, true);
        let rank = elim.pivots.len();
        if rank == self.rows {
            return None;
        }
        let transform = elim.transform.expect("tracked");
        Some(
            transform
                .row_vector(rank)
                .scale(self.ring.socle_generator()),
        )
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|r| r.to_string()).collect();
            writeln!(f, "[{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination with unit pivots.
///
/// `transform` (when tracked) is the invertible `rows x rows` matrix with
/// `transform · input = reduced`.
struct Elimination {
    pivots: Vec<(usize, usize)>,
    transform: Option<RMatrix>,
}

impl Elimination {
    fn run(m: &RMatrix, track: bool) -> Self {
        let ring = m.ring;
        let (rows, cols) = (m.rows, m.cols);
        let mut work = m.entries.clone();
        let mut t = track.then(|| RMatrix::identity(ring, rows).entries);
        let mut pivots = Vec::new();
        let mut next = 0;

        for col in 0..cols {
            if next == rows {
                break;
            }
            let Some(pr) = (next..rows).find(|&i| ring.is_unit(work[i * cols + col])) else {
                continue;
            };
            swap_rows(&mut work, cols, pr, next);
            if let Some(t) = t.as_mut() {
                swap_rows(t, rows, pr, next);
            }
            let inv = ring.inverse(work[next * cols + col]).expect("unit pivot");
            scale_row(ring, &mut work, cols, next, inv);
            if let Some(t) = t.as_mut() {
                scale_row(ring, t, rows, next, inv);
            }
            for i in 0..rows {
                if i == next {
                    continue;
                }
                let f = work[i * cols + col];
                if f.is_zero() {
                    continue;
                }
                let f = ring.neg(f);
                axpy_row(ring, &mut work, cols, i, next, f);
                if let Some(t) = t.as_mut() {
                    axpy_row(ring, t, rows, i, next, f);
                }
            }
            pivots.push((next, col));
            next += 1;
        }

        Elimination {
            pivots,
            transform: t.map(|entries| RMatrix {
                ring,
                rows,
                cols: rows,
                entries,
            }),
        }
    }
}

fn swap_rows(data: &mut [Residue], width: usize, a: usize, b: usize) {
    if a == b {
        return;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let (head, tail) = data.split_at_mut(hi * width);
    head[lo * width..(lo + 1) * width].swap_with_slice(&mut tail[..width]);
}

fn scale_row(ring: Ring, data: &mut [Residue], width: usize, row: usize, f: Residue) {
    for x in &mut data[row * width..(row + 1) * width] {
        *x = ring.mul(*x, f);
    }
}

/// `row[dst] += f * row[src]`
fn axpy_row(ring: Ring, data: &mut [Residue], width: usize, dst: usize, src: usize, f: Residue) {
    for j in 0..width {
        let s = data[src * width + j];
        let d = &mut data[dst * width + j];
        *d = ring.mul_add(*d, f, s);
    }
}

/// Row-reduced basis that grows one candidate row at a time.
struct Incremental {
    ring: Ring,
    // (pivot column, normalized row with unit 1 at the pivot)
    basis: Vec<(usize, Vec<Residue>)>,
}

impl Incremental {
    fn new(ring: Ring) -> Self {
        Incremental {
            ring,
            basis: Vec::new(),
        }
    }

    fn try_insert(&mut self, row: &[Residue]) -> bool {
        let ring = self.ring;
        let mut v = row.to_vec();
        for (col, b) in &self.basis {
            let f = v[*col];
            if !f.is_zero() {
                let f = ring.neg(f);
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = ring.mul_add(*x, f, y);
                }
            }
        }
        let Some(col) = v.iter().position(|&x| ring.is_unit(x)) else {
            return false;
        };
        let inv = ring.inverse(v[col]).expect("unit");
        for x in &mut v {
            *x = ring.mul(*x, inv);
        }
        for (_, b) in &mut self.basis {
            let f = b[col];
            if !f.is_zero() {
                let f = ring.neg(f);
                for (x, &y) in b.iter_mut().zip(&v) {
                    *x = ring.mul_add(*x, f, y);
                }
            }
        }
        self.basis.push((col, v));
        true
    }
}
