//! Seeded pseudo-random source used for code generation and dealing.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood): a Weyl sequence with
//! increment `0x9E3779B97F4A7C15` followed by a xor-shift/multiply finalizer.
//! It is pinned so that the same seed yields the same codes and shares in any
//! implementation. Uniform residues are drawn by rejection: a 64-bit output
//! `x` is accepted when `x < 2^64 - (2^64 mod m)` and mapped to `x mod m`.

use crate::linalg::{RMatrix, RVector};
use crate::ring::{Residue, Ring};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[0, bound)`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // 2^64 mod bound
        let rem = (u64::MAX % bound + 1) % bound;
        let cutoff = u64::MAX - rem;
        loop {
            let x = self.next_u64();
            if rem == 0 || x <= cutoff {
                return x % bound;
            }
        }
    }

    pub fn residue(&mut self, ring: Ring) -> Residue {
        ring.elem(self.below(ring.modulus() as u64) as i64)
    }

    pub fn vector(&mut self, ring: Ring, len: usize) -> RVector {
        RVector::new(ring, (0..len).map(|_| self.residue(ring)).collect())
    }

    /// Row-major fill of a `rows x cols` matrix.
    pub fn matrix(&mut self, ring: Ring, rows: usize, cols: usize) -> RMatrix {
        let entries = (0..rows * cols).map(|_| self.residue(ring)).collect();
        RMatrix::new(ring, rows, cols, entries).expect("shape matches")
    }
}
