mod common;

use common::*;
use lcdmss::codes::parity_check_from_generator;
use lcdmss::scheme::{
    deal, deal_one, deal_with_coefficients, dual_codeword, recover, recover_with_transcript,
    verify_share, SchemeError,
};
use lcdmss::{RMatrix, Residue, Secret};

fn check_dealing(w: &Worked) {
    let ring = w.ring();
    let (shares, record) = deal_with_coefficients(&w.code, &w.secret, &w.coefficients).unwrap();
    assert_eq!(record.seed, None);
    for (i, share) in shares.iter().enumerate() {
        assert_eq!(share.id as usize, i + 1);
        assert_eq!(share.c, vector(ring, w.codewords[i]), "c_{}", i + 1);
        assert_eq!(
            dual_codeword(&w.code, &w.coefficients[i]).unwrap(),
            vector(ring, w.dual_codewords[i]),
            "c'_{}",
            i + 1
        );
        assert_eq!(share.x.value(), w.x[i], "x_{}", i + 1);
        assert_eq!(share.y.value(), w.y[i], "y_{}", i + 1);
        assert!(verify_share(&w.code, &w.secret, share));
    }
}

#[test]
fn dealing_tables() {
    check_dealing(&z4_8_4());
    check_dealing(&f2_8_5());
    check_dealing(&f2_8_4());
}

#[test]
fn derived_parity_checks_match_the_given_ones() {
    for w in [z4_8_4(), f2_8_5(), f2_8_4()] {
        let h = parity_check_from_generator(w.code.generator()).unwrap();
        assert_eq!(&h, w.code.parity_check());
    }
}

#[test]
fn worked_codes_are_lcd() {
    for w in [z4_8_4(), f2_8_5(), f2_8_4()] {
        assert!(w.code.is_lcd());
        assert_eq!(w.code.is_lcd_oracle(), Ok(true));
        assert!(w.code.generator().is_full_row_rank());
    }
}

#[test]
fn encode_and_right_inverse() {
    let w = z4_8_4();
    let ring = w.ring();
    assert_eq!(
        w.code.encode(&vector(ring, "1000")).unwrap(),
        vector(ring, "10000121")
    );
    assert_eq!(
        w.code.encode(&vector(ring, "1122")).unwrap(),
        vector(ring, "11221110")
    );
    assert!(w.code.encode(&vector(ring, "0000")).unwrap().is_zero());

    let n = w.code.generator().right_inverse().unwrap();
    assert_eq!(
        w.code.generator().mul(&n).unwrap(),
        RMatrix::identity(ring, 4)
    );
    assert_eq!(
        vector(ring, "10000121").mul_matrix(&n).unwrap(),
        vector(ring, "1000")
    );
    assert_eq!(
        vector(ring, "11221110").mul_matrix(&n).unwrap(),
        vector(ring, "1122")
    );
}

/// Number of `s ∈ R^n` with `A s^T = b^T`, by enumeration.
fn count_solutions(a: &RMatrix, b: &lcdmss::RVector) -> (usize, Vec<Vec<u32>>) {
    let ring = a.ring();
    let m = ring.modulus() as usize;
    let n = a.cols();
    let mut found = Vec::new();
    for idx in 0..m.pow(n as u32) {
        let s: Vec<i64> = (0..n)
            .map(|j| ((idx / m.pow(j as u32)) % m) as i64)
            .collect();
        let s = lcdmss::RVector::from_i64(ring, &s);
        if &a.mul_column(&s).unwrap() == b {
            found.push(s.values());
        }
    }
    (found.len(), found)
}

#[test]
fn z4_listed_recovery_set_is_not_independent() {
    let w = z4_8_4();
    let ring = w.ring();
    let a = matrix(
        ring,
        &[
            "10000121", "11001312", "11101300", "11221110", "03021000", "31031100", "12121110",
            "11231122",
        ],
    );
    let b = vector(ring, "20002020");
    // 2 c_3 + 2 c_9 = 0 over Z/4Z, so the system is singular
    let c3 = vector(ring, w.codewords[2]);
    let c9 = vector(ring, w.codewords[8]);
    assert!(c3.add(&c9).unwrap().scale(ring.elem(2)).is_zero());
    assert_eq!(a.unit_rank(), 6);
    assert!(matches!(
        a.solve_unique(&b),
        Err(lcdmss::linalg::LinalgError::Singular { rank: 6, n: 8 })
    ));
    let (count, solutions) = count_solutions(&a, &b);
    assert_eq!(count, 4);
    assert!(solutions.contains(&vec![2, 2, 0, 0, 0, 0, 0, 0]));

    let (shares, _) = deal_with_coefficients(&w.code, &w.secret, &w.coefficients).unwrap();
    assert_eq!(
        recover(&w.code, &subset(&shares, &w.recover_ids)),
        Err(SchemeError::NotEnoughIndependentShares {
            required: 4,
            available: 3
        })
    );
    // every listed coefficient vector has a nilpotent last coordinate
    assert_eq!(
        recover(&w.code, &shares),
        Err(SchemeError::NotEnoughIndependentShares {
            required: 4,
            available: 3
        })
    );
}

#[test]
fn z4_recovery_with_an_independent_set() {
    let w = z4_8_4();
    let ring = w.ring();
    let mut ls = w.coefficients.clone();
    ls.push(vector(ring, "0001"));
    let (shares, _) = deal_with_coefficients(&w.code, &w.secret, &ls).unwrap();
    let rec = recover_with_transcript(&w.code, &subset(&shares, &[1, 3, 4, 11])).unwrap();
    assert_eq!(rec.secret, w.secret);
    assert_eq!(rec.share_ids, vec![1, 3, 4, 11]);
    assert_eq!(rec.dual_ids, vec![1, 3, 4, 11]);
    assert_eq!(rec.system.unit_rank(), 8);
    assert!(rec.inconsistent_ids.is_empty());
    // full set: greedy picks 1, 2, 3, 11
    let rec = recover_with_transcript(&w.code, &shares).unwrap();
    assert_eq!(rec.secret, w.secret);
    assert_eq!(rec.share_ids, vec![1, 2, 3, 11]);
}

#[test]
fn f2_8_5_recovery_selects_three_dual_rows() {
    let w = f2_8_5();
    let ring = w.ring();
    let dual_rows = matrix(
        ring,
        &["01001100", "00101001", "00000000", "01110110", "01001100"],
    );
    assert_eq!(dual_rows.select_independent_rows(3).unwrap(), vec![0, 1, 3]);

    let (shares, _) = deal_with_coefficients(&w.code, &w.secret, &w.coefficients).unwrap();
    let rec = recover_with_transcript(&w.code, &subset(&shares, &w.recover_ids)).unwrap();
    assert_eq!(rec.secret.values(), vec![1, 1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(rec.share_ids, vec![1, 3, 4, 6, 9]);
    assert_eq!(rec.dual_ids, vec![1, 3, 6]);
    let expected = matrix(
        ring,
        &[
            "10000000", "00100011", "00010010", "11000100", "10001111", "01001100", "00101001",
            "01110110",
        ],
    );
    assert_eq!(rec.system, expected);
    assert_eq!(rec.rhs, vector(ring, "10001101"));
    // recovered coefficient vectors equal the dealer's
    for (row, &id) in rec.share_ids.iter().enumerate() {
        assert_eq!(
            rec.coefficients.row_vector(row),
            w.coefficients[id as usize - 1]
        );
    }
}

#[test]
fn f2_8_4_recovery() {
    let w = f2_8_4();
    let ring = w.ring();
    let a = matrix(
        ring,
        &[
            "10000001", "11001100", "11100000", "11111011", "01111000", "00011100", "00001110",
            "11011111",
        ],
    );
    let b = vector(ring, "00011001");
    assert_eq!(a.solve_unique(&b).unwrap(), vector(ring, "11000001"));

    let (shares, _) = deal_with_coefficients(&w.code, &w.secret, &w.coefficients).unwrap();
    let rec = recover_with_transcript(&w.code, &subset(&shares, &w.recover_ids)).unwrap();
    assert_eq!(rec.secret, w.secret);
    assert_eq!(rec.system, a);
    assert_eq!(rec.rhs, b);
}

#[test]
fn dependent_shares_are_not_enough() {
    let w = z4_8_4();
    let ring = w.ring();
    let c1 = vector(ring, w.codewords[0]);
    assert_eq!(c1.scale(ring.elem(2)), vector(ring, w.codewords[4]));

    let (shares, _) = deal_with_coefficients(&w.code, &w.secret, &w.coefficients).unwrap();
    assert_eq!(
        recover(&w.code, &subset(&shares, &[1, 3, 4, 5])),
        Err(SchemeError::NotEnoughIndependentShares {
            required: 4,
            available: 3
        })
    );
}

#[test]
fn all_shares_recover_with_lowest_index_selection() {
    for w in [f2_8_5(), f2_8_4()] {
        let (shares, _) = deal_with_coefficients(&w.code, &w.secret, &w.coefficients).unwrap();
        let rec = recover_with_transcript(&w.code, &shares).unwrap();
        assert_eq!(rec.secret, w.secret);
        assert!(rec.inconsistent_ids.is_empty());
    }
}

#[test]
fn single_share_dealing() {
    let w = z4_8_4();
    let ring = w.ring();
    let share = deal_one(&w.code, &w.secret, 1, &vector(ring, "1000")).unwrap();
    assert_eq!(share.c, vector(ring, "10000121"));
    assert_eq!((share.x.value(), share.y.value()), (2, 2));

    let w = f2_8_5();
    let share = deal_one(&w.code, &w.secret, 1, &vector(w.ring(), "10000")).unwrap();
    assert_eq!(share.c, vector(w.ring(), "10000000"));
    assert_eq!((share.x.value(), share.y.value()), (1, 1));

    let zero = Secret::from_i64(w.ring(), &[0; 8]);
    let share = deal_one(&w.code, &zero, 1, &vector(w.ring(), "11011")).unwrap();
    assert_eq!((share.x, share.y), (Residue::ZERO, Residue::ZERO));
}

#[test]
fn verification_catches_tampering() {
    let w = z4_8_4();
    let (shares, _) = deal_with_coefficients(&w.code, &w.secret, &w.coefficients).unwrap();
    let mut p1 = shares[0].clone();
    assert!(verify_share(&w.code, &w.secret, &p1));
    p1.x = w.ring().elem(3);
    assert!(!verify_share(&w.code, &w.secret, &p1));
}

#[test]
fn seeded_deal_repeats() {
    let w = z4_8_4();
    let a = deal(&w.code, &w.secret, 1, 2024).unwrap();
    let b = deal(&w.code, &w.secret, 1, 2024).unwrap();
    assert_eq!(a, b);
    let (shares, _) = deal(&w.code, &w.secret, 20, 2024).unwrap();
    let rec = recover_with_transcript(&w.code, &shares).unwrap();
    assert_eq!(rec.secret, w.secret);
    assert!(rec.inconsistent_ids.is_empty());
}
