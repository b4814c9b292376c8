//! Linear codes over `Z/p^eZ` given by a generator `G` and a parity check `H`.

use std::collections::HashSet;

use thiserror::Error;

use crate::linalg::{LinalgError, RMatrix, RVector};
use crate::ring::{Residue, Ring};
use crate::rng::SplitMix64;

/// Rejection-sampling budget for [`random_lcd_code`].
pub const MAX_GENERATION_DRAWS: usize = 10_000;

/// Largest codeword count [`LinearCode::is_lcd_oracle`] will enumerate per side.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("BadParameters: need 0 <= k <= n and n >= 1, got n = {n}, k = {k}")]
    BadParameters { n: usize, k: usize },
    #[error("NotFullRowRank: the {0} matrix is not full row-rank")]
    NotFullRowRank(&'static str),
    #[error("GH^T != 0")]
    NotOrthogonal,
    #[error("TooLargeToEnumerate: {count} codewords exceed the limit of {limit}")]
    TooLargeToEnumerate { count: u128, limit: u64 },
    #[error("GenerationFailed: no LCD code found after {draws} draws")]
    GenerationFailed { draws: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A free code of length `n` and rank `k` with its parity-check matrix.
///
/// `H` is stored rather than recomputed, since share values depend on the
/// exact matrix. When `k = n`, `H` is a `0 x n` matrix and the dual is `{0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    ring: Ring,
    n: usize,
    k: usize,
    generator: RMatrix,
    parity_check: RMatrix,
}

impl LinearCode {
    /// Validates `G` (`k x n`) and `H` (`(n-k) x n`): both full row-rank and
    /// `G H^T = 0`.
    pub fn new(generator: RMatrix, parity_check: RMatrix) -> Result<Self, CodeError> {
        let ring = generator.ring();
        let n = generator.cols();
        let k = generator.rows();
        if n == 0 || parity_check.cols() != n || parity_check.rows() + k != n {
            return Err(CodeError::BadParameters { n, k });
        }
        if parity_check.ring() != ring {
            return Err(LinalgError::RingMismatch {
                left: ring,
                right: parity_check.ring(),
            }
            .into());
        }
        if !generator.is_full_row_rank() {
            return Err(CodeError::NotFullRowRank("generator"));
        }
        if !parity_check.is_full_row_rank() {
            return Err(CodeError::NotFullRowRank("parity-check"));
        }
        if !generator.mul(&parity_check.transpose())?.is_zero() {
            return Err(CodeError::NotOrthogonal);
        }
        Ok(LinearCode {
            ring,
            n,
            k,
            generator,
            parity_check,
        })
    }

    /// Builds the code of `G`, deriving `H` with [`parity_check_from_generator`].
    pub fn from_generator(generator: RMatrix) -> Result<Self, CodeError> {
        let h = parity_check_from_generator(&generator)?;
        LinearCode::new(generator, h)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// `n`
    pub fn length(&self) -> usize {
        self.n
    }

    /// `k`
    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &RMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &RMatrix {
        &self.parity_check
    }

    /// `l · G`
    pub fn encode(&self, l: &RVector) -> Result<RVector, CodeError> {
        Ok(l.mul_matrix(&self.generator)?)
    }

    /// `c · H^T`
    pub fn syndrome(&self, c: &RVector) -> Result<RVector, CodeError> {
        Ok(self.parity_check.mul_column(c)?)
    }

    pub fn is_codeword(&self, c: &RVector) -> bool {
        c.ring() == self.ring
            && c.len() == self.n
            && self.syndrome(c).map(|s| s.is_zero()).unwrap_or(false)
    }

    /// `G` stacked over `H`, an `n x n` matrix.
    pub fn stacked(&self) -> RMatrix {
        self.generator
            .vstack(&self.parity_check)
            .expect("same ring and width")
    }

    /// LCD test through invertibility of the stacked matrix `(G; H)`.
    pub fn is_lcd(&self) -> bool {
        self.stacked().unit_rank() == self.n
    }

    /// LCD test by enumerating `C` and `C^⊥` and intersecting them.
    pub fn is_lcd_oracle(&self) -> Result<bool, CodeError> {
        let m = self.ring.modulus() as u128;
        let dual_rank = self.n - self.k;
        for rank in [self.k, dual_rank] {
            let count = m.pow(rank as u32);
            if count > ENUMERATION_LIMIT as u128 {
                return Err(CodeError::TooLargeToEnumerate {
                    count,
                    limit: ENUMERATION_LIMIT,
                });
            }
        }
        let (small, large) = if self.k <= dual_rank {
            (&self.generator, &self.parity_check)
        } else {
            (&self.parity_check, &self.generator)
        };
        let mut seen = HashSet::new();
        for_each_combination(small, |w| {
            seen.insert(w.to_vec());
            true
        });
        let mut trivial = true;
        for_each_combination(large, |w| {
            if w.iter().any(|x| !x.is_zero()) && seen.contains(w) {
                trivial = false;
            }
            trivial
        });
        Ok(trivial)
    }

    /// The dual code, with the roles of `G` and `H` exchanged.
    pub fn dual(&self) -> LinearCode {
        LinearCode {
            ring: self.ring,
            n: self.n,
            k: self.n - self.k,
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
        }
    }
}

/// Visits every `R`-linear combination of the rows of `m` (including zero)
/// until `visit` returns `false`.
///
/// Odometer over coefficient vectors: bumping digit `i` adds row `i` once;
/// after `m` bumps the digit wraps and the row has contributed `m * row = 0`,
/// so the running sum stays correct without subtraction.
fn for_each_combination(m: &RMatrix, mut visit: impl FnMut(&[Residue]) -> bool) {
    let ring = m.ring();
    let modulus = ring.modulus();
    let mut digits = vec![0u32; m.rows()];
    let mut word = vec![Residue::ZERO; m.cols()];
    loop {
        if !visit(&word) {
            return;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            for (w, &g) in word.iter_mut().zip(m.row(i)) {
                *w = ring.add(*w, g);
            }
            digits[i] += 1;
            if digits[i] < modulus {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// A parity-check matrix for the code generated by `G`.
///
/// `G` is brought to `[I_k | A]` by row operations and column swaps, then
/// `H = [-A^T | I_{n-k}]` with the column swaps undone, so `G H^T = 0` holds
/// for the original `G`.
pub fn parity_check_from_generator(generator: &RMatrix) -> Result<RMatrix, CodeError> {
    let ring = generator.ring();
    let (k, n) = (generator.rows(), generator.cols());
    if k > n {
        return Err(CodeError::NotFullRowRank("generator"));
    }
    let mut work: Vec<Vec<Residue>> = (0..k).map(|i| generator.row(i).to_vec()).collect();
    // perm[j] = original column now sitting at position j
    let mut perm: Vec<usize> = (0..n).collect();

    for r in 0..k {
        let found = (r..n).find_map(|j| (r..k).find(|&i| ring.is_unit(work[i][j])).map(|i| (i, j)));
        let Some((pi, pj)) = found else {
            return Err(CodeError::NotFullRowRank("generator"));
        };
        if pj != r {
            for row in &mut work {
                row.swap(pj, r);
            }
            perm.swap(pj, r);
        }
        work.swap(pi, r);
        let inv = ring.inverse(work[r][r]).expect("unit pivot");
        for x in &mut work[r] {
            *x = ring.mul(*x, inv);
        }
        let pivot_row = work[r].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i == r || row[r].is_zero() {
                continue;
            }
            let f = ring.neg(row[r]);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ring.mul_add(*x, f, y);
            }
        }
    }

    let mut h = vec![Residue::ZERO; (n - k) * n];
    for i in 0..n - k {
        for (j, row) in work.iter().enumerate() {
            h[i * n + perm[j]] = ring.neg(row[k + i]);
        }
        h[i * n + perm[k + i]] = ring.elem(1);
    }
    Ok(RMatrix::new(ring, n - k, n, h)?)
}

/// Draws uniform `k x n` generators from a seeded SplitMix64 stream until one
/// is full row-rank and yields an LCD code.
pub fn random_lcd_code(ring: Ring, n: usize, k: usize, seed: u64) -> Result<LinearCode, CodeError> {
    if k == 0 || k > n {
        return Err(CodeError::BadParameters { n, k });
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..MAX_GENERATION_DRAWS {
        let g = rng.matrix(ring, k, n);
        if !g.is_full_row_rank() {
            continue;
        }
        let code = LinearCode::from_generator(g)?;
        if code.is_lcd() {
            return Ok(code);
        }
    }
    Err(CodeError::GenerationFailed {
        draws: MAX_GENERATION_DRAWS,
    })
}
