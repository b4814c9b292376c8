#![allow(dead_code)]

use lcdmss::{LinearCode, RMatrix, RVector, Ring, Secret};

/// Parses a run of single digits such as `"10000121"`.
pub fn digits(s: &str) -> Vec<i64> {
    s.chars().map(|c| c.to_digit(10).unwrap() as i64).collect()
}

pub fn vector(ring: Ring, s: &str) -> RVector {
    RVector::from_i64(ring, &digits(s))
}

pub fn matrix(ring: Ring, rows: &[&str]) -> RMatrix {
    RMatrix::from_rows(ring, &rows.iter().map(|r| digits(r)).collect::<Vec<_>>())
}

pub struct Worked {
    pub code: LinearCode,
    pub secret: Secret,
    pub coefficients: Vec<RVector>,
    pub codewords: Vec<&'static str>,
    pub dual_codewords: Vec<&'static str>,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub recover_ids: Vec<u32>,
}

impl Worked {
    pub fn ring(&self) -> Ring {
        self.code.ring()
    }
}

/// `[8, 4]` LCD code over `Z/4Z`, secret `22000000`.
pub fn z4_8_4() -> Worked {
    let ring = Ring::new(2, 2).unwrap();
    let g = matrix(ring, &["10000121", "01001231", "00100032", "00012311"]);
    let h = matrix(ring, &["03021000", "32010100", "21130010", "33230001"]);
    Worked {
        code: LinearCode::new(g, h).unwrap(),
        secret: Secret::new(vector(ring, "22000000")),
        coefficients: [
            "1000", "0010", "1100", "1110", "2000", "0200", "3000", "1200", "1122", "2200",
        ]
        .iter()
        .map(|l| vector(ring, l))
        .collect(),
        codewords: vec![
            "10000121", "00100032", "11001312", "11101300", "20000202", "02002022", "30000323",
            "12002103", "11221110", "22002220",
        ],
        dual_codewords: vec![
            "03021000", "21130010", "31031100", "12121110", "02002000", "20020200", "01023000",
            "23001200", "11231122", "22022200",
        ],
        x: vec![2, 0, 0, 0, 0, 0, 2, 2, 0, 0],
        y: vec![2, 2, 0, 2, 0, 0, 2, 2, 0, 0],
        recover_ids: vec![1, 3, 4, 9],
    }
}

/// `[8, 5]` LCD code over `F_2`, secret `11000000`.
///
/// The sixth codeword is `l_6 G = 11000100` and the sixth dual codeword is
/// `l'_6 H = 01110110`.
pub fn f2_8_5() -> Worked {
    let ring = Ring::new(2, 1).unwrap();
    let g = matrix(
        ring,
        &["10000000", "01000100", "00100011", "00010010", "00001111"],
    );
    let h = matrix(ring, &["01001100", "00111010", "00101001"]);
    Worked {
        code: LinearCode::new(g, h).unwrap(),
        secret: Secret::new(vector(ring, "11000000")),
        coefficients: [
            "10000", "01000", "00100", "00010", "00001", "11000", "10100", "10010", "10001",
            "01100",
        ]
        .iter()
        .map(|l| vector(ring, l))
        .collect(),
        codewords: vec![
            "10000000", "01000100", "00100011", "00010010", "00001111", "11000100", "10100011",
            "10010010", "10001111", "01100111",
        ],
        dual_codewords: vec![
            "01001100", "00111010", "00101001", "00000000", "00000000", "01110110", "01100101",
            "01001100", "01001100", "00010011",
        ],
        x: vec![1, 1, 0, 0, 0, 0, 1, 1, 1, 1],
        y: vec![1, 0, 0, 0, 0, 1, 1, 1, 1, 0],
        recover_ids: vec![1, 3, 4, 6, 9],
    }
}

/// `[8, 4]` LCD code over `F_2`, secret `11000001`, all sixteen coefficient
/// vectors of `F_2^4`.
///
/// Entries 6, 12 and 13 are the values `l_i G` and `l_i H` actually produce.
pub fn f2_8_4() -> Worked {
    let ring = Ring::new(2, 1).unwrap();
    let g = matrix(ring, &["10000001", "01001101", "00101100", "00011011"]);
    let h = matrix(ring, &["01111000", "01100100", "00010010", "11010001"]);
    Worked {
        code: LinearCode::new(g, h).unwrap(),
        secret: Secret::new(vector(ring, "11000001")),
        coefficients: [
            "1000", "0100", "0010", "0001", "1100", "1010", "1001", "0110", "0011", "0101", "1110",
            "1101", "0111", "1011", "1111", "0000",
        ]
        .iter()
        .map(|l| vector(ring, l))
        .collect(),
        codewords: vec![
            "10000001", "01001101", "00101100", "00011011", "11001100", "10101101", "10011010",
            "01100001", "00110111", "01010110", "11100000", "11010111", "01111010", "10110110",
            "11111011", "00000000",
        ],
        dual_codewords: vec![
            "01111000", "01100100", "00010010", "11010001", "00011100", "01101010", "10101001",
            "01110110", "11000011", "10110101", "00001110", "11001101", "10100111", "10111011",
            "11011111", "00000000",
        ],
        x: vec![0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0],
        y: vec![1, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1, 0, 0, 1, 0],
        recover_ids: vec![1, 5, 11, 15],
    }
}

pub fn subset<T: Clone>(items: &[T], ids: &[u32]) -> Vec<T> {
    ids.iter().map(|&i| items[i as usize - 1].clone()).collect()
}
