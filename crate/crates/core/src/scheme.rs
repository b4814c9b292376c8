//! Multi-secret sharing with an LCD code.
//!
//! The secret is a whole vector `s ∈ R^n`. Participant `i` receives a
//! codeword `c_i = l_i G`, the value `x_i = c_i · s` and the value
//! `y_i = c'_i · s` where `c'_i = l'_i H` and `l'_i` is the first `n - k`
//! coordinates of `l_i`. Any `k` participants whose codewords are independent
//! recover `s` by solving an `n x n` system built from their codewords (which
//! span `C`) and `n - k` dual codewords recomputed from them (which span
//! `C^⊥`). The code being LCD makes that stacked system invertible.

use std::fmt;

use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::linalg::{LinalgError, RMatrix, RVector};
use crate::ring::{Residue, Ring};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("NotLcd: the code's stacked matrix (G; H) is not invertible")]
    NotLcd,
    #[error("BadParameters: {0}")]
    BadParameters(String),
    #[error("DimensionMismatch: {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("RingMismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },
    #[error("InvalidShare: participant {id} holds a vector that is not a codeword")]
    InvalidShare { id: u32 },
    #[error(
        "NotEnoughIndependentShares: need {required} independent codewords, found {available}"
    )]
    NotEnoughIndependentShares { required: usize, available: usize },
    #[error(
        "InternalSingular: the recovery system is not invertible; the shares or code are corrupted"
    )]
    InternalSingular,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The shared vector `s ∈ R^n`; each coordinate is one of the `n` secrets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Secret(RVector);

impl Secret {
    pub fn new(values: RVector) -> Self {
        Secret(values)
    }

    pub fn from_i64(ring: Ring, values: &[i64]) -> Self {
        Secret(RVector::from_i64(ring, values))
    }

    pub fn ring(&self) -> Ring {
        self.0.ring()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_vector(&self) -> &RVector {
        &self.0
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.values()
    }
}

impl fmt::Display for Secret {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Participant `P_id = (c, x, y)`. Ids start at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Share {
    pub id: u32,
    pub c: RVector,
    pub x: Residue,
    pub y: Residue,
}

/// The dealer's private coefficient vectors. Anyone holding it can recompute
/// every share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DealRecord {
    pub seed: Option<u64>,
    pub coefficients: Vec<(u32, RVector)>,
}

/// Intermediate values of a recovery, kept for auditing and tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovery {
    pub secret: Secret,
    /// Ids of the `k` shares whose codewords were used, in selection order.
    pub share_ids: Vec<u32>,
    /// Ids (among `share_ids`) whose dual codewords and `y` values were used.
    pub dual_ids: Vec<u32>,
    /// Recovered coefficient vectors, one row per selected share.
    pub coefficients: RMatrix,
    /// The `n x n` system matrix.
    pub system: RMatrix,
    pub rhs: RVector,
    /// Surplus shares that do not agree with the recovered secret.
    pub inconsistent_ids: Vec<u32>,
}

fn ensure_ring(expected: Ring, found: Ring) -> Result<(), SchemeError> {
    if expected == found {
        Ok(())
    } else {
        Err(SchemeError::RingMismatch { expected, found })
    }
}

fn ensure_len(what: &'static str, expected: usize, found: usize) -> Result<(), SchemeError> {
    if expected == found {
        Ok(())
    } else {
        Err(SchemeError::DimensionMismatch {
            what,
            expected,
            found,
        })
    }
}

/// The code must be LCD with `2k >= n`.
pub fn check_code(code: &LinearCode) -> Result<(), SchemeError> {
    let (n, k) = (code.length(), code.dimension());
    if 2 * k < n {
        return Err(SchemeError::BadParameters(format!(
            "need 2k >= n, got n = {n}, k = {k}"
        )));
    }
    if !code.is_lcd() {
        return Err(SchemeError::NotLcd);
    }
    Ok(())
}

/// `c' = l' H` with `l'` the leading `n - k` coordinates of `l`.
pub fn dual_codeword(code: &LinearCode, l: &RVector) -> Result<RVector, SchemeError> {
    let dual_rank = code.length() - code.dimension();
    Ok(l.prefix(dual_rank).mul_matrix(code.parity_check())?)
}

/// Builds one share from the coefficient vector `l`.
pub fn deal_one(
    code: &LinearCode,
    secret: &Secret,
    id: u32,
    l: &RVector,
) -> Result<Share, SchemeError> {
    check_code(code)?;
    ensure_ring(code.ring(), secret.ring())?;
    ensure_ring(code.ring(), l.ring())?;
    ensure_len("secret length", code.length(), secret.len())?;
    ensure_len("coefficient vector length", code.dimension(), l.len())?;
    share_from(code, secret, id, l)
}

fn share_from(
    code: &LinearCode,
    secret: &Secret,
    id: u32,
    l: &RVector,
) -> Result<Share, SchemeError> {
    let c = code.encode(l)?;
    let c_dual = dual_codeword(code, l)?;
    let s = secret.as_vector();
    Ok(Share {
        id,
        x: c.dot(s)?,
        y: c_dual.dot(s)?,
        c,
    })
}

/// Deals with caller-supplied coefficient vectors; ids run `1..=ls.len()`.
pub fn deal_with_coefficients(
    code: &LinearCode,
    secret: &Secret,
    ls: &[RVector],
) -> Result<(Vec<Share>, DealRecord), SchemeError> {
    check_code(code)?;
    ensure_ring(code.ring(), secret.ring())?;
    ensure_len("secret length", code.length(), secret.len())?;
    let mut shares = Vec::with_capacity(ls.len());
    let mut coefficients = Vec::with_capacity(ls.len());
    for (i, l) in ls.iter().enumerate() {
        ensure_ring(code.ring(), l.ring())?;
        ensure_len("coefficient vector length", code.dimension(), l.len())?;
        let id = i as u32 + 1;
        shares.push(share_from(code, secret, id, l)?);
        coefficients.push((id, l.clone()));
    }
    Ok((
        shares,
        DealRecord {
            seed: None,
            coefficients,
        },
    ))
}

/// Deals `count` shares with coefficient vectors drawn uniformly from `R^k`.
/// No independence among them is enforced.
pub fn deal(
    code: &LinearCode,
    secret: &Secret,
    count: usize,
    seed: u64,
) -> Result<(Vec<Share>, DealRecord), SchemeError> {
    if count == 0 {
        return Err(SchemeError::BadParameters(
            "share count must be at least 1".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let ls: Vec<RVector> = (0..count)
        .map(|_| rng.vector(code.ring(), code.dimension()))
        .collect();
    let (shares, mut record) = deal_with_coefficients(code, secret, &ls)?;
    record.seed = Some(seed);
    Ok((shares, record))
}

/// Recovers the secret from shares. See [`recover_with_transcript`].
pub fn recover(code: &LinearCode, shares: &[Share]) -> Result<Secret, SchemeError> {
    recover_with_transcript(code, shares).map(|r| r.secret)
}

/// Recovers the secret and reports the values used along the way.
///
/// 1. every share must carry a codeword;
/// 2. the first `k` shares (lowest position first) with independent
///    codewords are selected;
/// 3. their coefficient vectors `l''_i = c_i N` come from a right inverse `N`
///    of `G`;
/// 4. `L'` keeps the leading `n - k` columns of those vectors;
/// 5. `n - k` independent rows `J` of `L'` give dual codewords `L'_J H`;
/// 6. the system stacks the selected codewords over those dual codewords,
///    with right-hand side the matching `x` then `y` values;
/// 7. the unique solution is the secret.
pub fn recover_with_transcript(
    code: &LinearCode,
    shares: &[Share],
) -> Result<Recovery, SchemeError> {
    check_code(code)?;
    let ring = code.ring();
    let (n, k) = (code.length(), code.dimension());

    for share in shares {
        ensure_ring(ring, share.c.ring())?;
        ensure_len("share codeword length", n, share.c.len())?;
        if !code.is_codeword(&share.c) {
            return Err(SchemeError::InvalidShare { id: share.id });
        }
    }

    let codewords: Vec<RVector> = shares.iter().map(|s| s.c.clone()).collect();
    let stacked = RMatrix::from_row_vectors(ring, n, &codewords)?;
    let selected = stacked.select_independent_rows(k).map_err(|e| match e {
        LinalgError::NotEnoughIndependentRows { available, .. } => {
            SchemeError::NotEnoughIndependentShares {
                required: k,
                available,
            }
        }
        other => other.into(),
    })?;

    let upper = stacked.select_rows(&selected);
    let coefficients = upper.mul(&code.generator().right_inverse()?)?;
    let truncated = coefficients.leading_columns(n - k);
    let dual_rows = truncated
        .select_independent_rows(n - k)
        .map_err(|_| SchemeError::InternalSingular)?;
    let lower = truncated.select_rows(&dual_rows).mul(code.parity_check())?;
    let system = upper.vstack(&lower)?;

    let rhs_values: Vec<Residue> = selected
        .iter()
        .map(|&i| shares[i].x)
        .chain(dual_rows.iter().map(|&j| shares[selected[j]].y))
        .collect();
    let rhs = RVector::new(ring, rhs_values);

    let solution = system.solve_unique(&rhs).map_err(|e| match e {
        LinalgError::Singular { .. } => SchemeError::InternalSingular,
        other => other.into(),
    })?;
    let secret = Secret::new(solution);

    let inconsistent_ids = shares
        .iter()
        .enumerate()
        .filter(|(i, _)| !selected.contains(i))
        .filter(|(_, s)| !verify_share(code, &secret, s))
        .map(|(_, s)| s.id)
        .collect();

    Ok(Recovery {
        share_ids: selected.iter().map(|&i| shares[i].id).collect(),
        dual_ids: dual_rows.iter().map(|&j| shares[selected[j]].id).collect(),
        coefficients,
        system,
        rhs,
        secret,
        inconsistent_ids,
    })
}

/// Checks a share against a known secret: `c` is a codeword, `x = c · s`, and
/// `y = (c G^+)' H · s` where `G^+` is a right inverse of `G`.
pub fn verify_share(code: &LinearCode, secret: &Secret, share: &Share) -> bool {
    let n = code.length();
    if secret.ring() != code.ring() || secret.len() != n || !code.is_codeword(&share.c) {
        return false;
    }
    let Ok(ginv) = code.generator().right_inverse() else {
        return false;
    };
    let check = || -> Result<bool, SchemeError> {
        let s = secret.as_vector();
        let l = share.c.mul_matrix(&ginv)?;
        let y = dual_codeword(code, &l)?.dot(s)?;
        Ok(share.c.dot(s)? == share.x && y == share.y)
    };
    check().unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::random_lcd_code;

    fn small_code() -> LinearCode {
        random_lcd_code(Ring::new(3, 1).unwrap(), 5, 3, 11).unwrap()
    }

    #[test]
    fn zero_secret_gives_zero_values() {
        let code = small_code();
        let secret = Secret::from_i64(code.ring(), &[0; 5]);
        let l = RVector::from_i64(code.ring(), &[1, 2, 1]);
        let share = deal_one(&code, &secret, 1, &l).unwrap();
        assert_eq!(share.c, code.encode(&l).unwrap());
        assert_eq!((share.x, share.y), (Residue::ZERO, Residue::ZERO));
        assert!(verify_share(&code, &secret, &share));
    }

    #[test]
    fn parameter_checks() {
        let ring = Ring::new(2, 1).unwrap();
        let low_rate = random_lcd_code(ring, 5, 2, 3).unwrap();
        let secret = Secret::from_i64(ring, &[1, 0, 1, 0, 1]);
        assert!(matches!(
            deal(&low_rate, &secret, 3, 0),
            Err(SchemeError::BadParameters(_))
        ));

        let self_dual = LinearCode::new(
            RMatrix::from_rows(ring, &[vec![1, 1]]),
            RMatrix::from_rows(ring, &[vec![1, 1]]),
        )
        .unwrap();
        assert_eq!(
            deal(&self_dual, &Secret::from_i64(ring, &[1, 0]), 3, 0),
            Err(SchemeError::NotLcd)
        );

        let code = small_code();
        let wrong_len = Secret::from_i64(code.ring(), &[1, 2]);
        assert!(matches!(
            deal(&code, &wrong_len, 3, 0),
            Err(SchemeError::DimensionMismatch { .. })
        ));
        let ok = Secret::from_i64(code.ring(), &[1, 2, 0, 0, 1]);
        assert!(matches!(
            deal(&code, &ok, 0, 0),
            Err(SchemeError::BadParameters(_))
        ));
        let l = RVector::from_i64(code.ring(), &[1, 2]);
        assert!(matches!(
            deal_one(&code, &ok, 1, &l),
            Err(SchemeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn deal_is_deterministic() {
        let code = small_code();
        let secret = Secret::from_i64(code.ring(), &[2, 1, 0, 2, 2]);
        let a = deal(&code, &secret, 1, 99).unwrap();
        let b = deal(&code, &secret, 1, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.1.seed, Some(99));
        assert_eq!(a.0[0].id, 1);
    }

    #[test]
    fn tampered_share_fails_verification() {
        let code = small_code();
        let secret = Secret::from_i64(code.ring(), &[2, 1, 0, 2, 2]);
        let (shares, _) = deal(&code, &secret, 4, 5).unwrap();
        for s in &shares {
            assert!(verify_share(&code, &secret, s));
            let mut bad = s.clone();
            bad.x = code.ring().add(bad.x, Residue::ONE);
            assert!(!verify_share(&code, &secret, &bad));
            let mut bad = s.clone();
            bad.y = code.ring().add(bad.y, Residue::ONE);
            assert!(!verify_share(&code, &secret, &bad));
        }
    }

    #[test]
    fn non_codeword_is_rejected() {
        let code = small_code();
        let secret = Secret::from_i64(code.ring(), &[2, 1, 0, 2, 2]);
        let (mut shares, _) = deal(&code, &secret, 6, 5).unwrap();
        let ring = code.ring();
        let mut entries = shares[2].c.entries().to_vec();
        entries[0] = ring.add(entries[0], Residue::ONE);
        shares[2].c = RVector::new(ring, entries);
        assert_eq!(
            recover(&code, &shares),
            Err(SchemeError::InvalidShare { id: 3 })
        );
    }

    #[test]
    fn surplus_shares_are_audited() {
        let code = small_code();
        let secret = Secret::from_i64(code.ring(), &[2, 1, 0, 2, 2]);
        let (mut shares, _) = deal(&code, &secret, 12, 8).unwrap();
        let rec = recover_with_transcript(&code, &shares).unwrap();
        assert_eq!(rec.secret, secret);
        assert!(rec.inconsistent_ids.is_empty());
        let last = shares.len() - 1;
        assert!(!rec.share_ids.contains(&shares[last].id));
        shares[last].x = code.ring().add(shares[last].x, Residue::ONE);
        let rec = recover_with_transcript(&code, &shares).unwrap();
        assert_eq!(rec.secret, secret);
        assert_eq!(rec.inconsistent_ids, vec![shares[last].id]);
    }

    #[test]
    fn too_few_shares() {
        let code = small_code();
        let secret = Secret::from_i64(code.ring(), &[2, 1, 0, 2, 2]);
        let (shares, _) = deal(&code, &secret, 6, 5).unwrap();
        assert!(matches!(
            recover(&code, &shares[..2]),
            Err(SchemeError::NotEnoughIndependentShares { required: 3, .. })
        ));
        assert!(matches!(
            recover(&code, &[]),
            Err(SchemeError::NotEnoughIndependentShares {
                required: 3,
                available: 0
            })
        ));
    }

    #[test]
    fn half_rate_truncation_is_identity() {
        let ring = Ring::new(2, 2).unwrap();
        let code = random_lcd_code(ring, 6, 3, 4).unwrap();
        let secret = Secret::from_i64(ring, &[1, 2, 3, 0, 1, 2]);
        let (shares, record) = deal(&code, &secret, 12, 6).unwrap();
        let rec = recover_with_transcript(&code, &shares).unwrap();
        assert_eq!(rec.secret, secret);
        assert_eq!(rec.coefficients.leading_columns(3), rec.coefficients);
        for (row, id) in rec.share_ids.iter().enumerate() {
            let original = &record.coefficients[*id as usize - 1].1;
            assert_eq!(&rec.coefficients.row_vector(row), original);
        }
        assert_eq!(rec.system.unit_rank(), 6);
    }
}
