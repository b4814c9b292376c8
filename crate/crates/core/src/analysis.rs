//! Security and efficiency figures of the scheme, evaluated exactly.
//!
//! * `X(k, t) = prod_{i<k} (q^k - q^i) / ((k - t)! * prod_{i<t} (q^t - q^i))`,
//!   the number of ways a basis of a `t`-dimensional subspace extends to a
//!   basis of the `k`-dimensional code;
//! * guess probability of a coalition of `t < k` independent participants,
//!   `1 / (X(k, t) * q^(k - t))`;
//! * information rate `n / (n + 2)`;
//! * the comparison row `A = q^k`, `B = q^n`, `C = X(k, 0)`, `rho`.
//!
//! The extension count is derived for vector spaces over `F_q`. For `Z/p^eZ`
//! with `e > 1` the same formulas are evaluated with `q = p^e` and the report
//! marks them as heuristic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("BadParameters: {0}")]
    BadParameters(String),
}

fn check(k: u32, t: u32, q: u64) -> Result<(), AnalysisError> {
    if t > k {
        return Err(AnalysisError::BadParameters(format!(
            "coalition size t = {t} exceeds k = {k}"
        )));
    }
    if q < 2 {
        return Err(AnalysisError::BadParameters(format!(
            "alphabet size q = {q} must be at least 2"
        )));
    }
    Ok(())
}

fn pow(q: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// `prod_{i<d} (q^d - q^i)`, the number of ordered bases of `F_q^d`.
fn ordered_bases(d: u32, q: u64) -> BigInt {
    let top = pow(q, d);
    (0..d).map(|i| &top - pow(q, i)).product()
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn extension_count(k: u32, t: u32, q: u64) -> Result<BigRational, AnalysisError> {
    check(k, t, q)?;
    let numer = ordered_bases(k, q);
    let denom = factorial(k - t) * ordered_bases(t, q);
    Ok(BigRational::new(numer, denom))
}

pub fn guess_probability(k: u32, t: u32, q: u64) -> Result<BigRational, AnalysisError> {
    let x = extension_count(k, t, q)?;
    Ok((x * BigRational::from_integer(pow(q, k - t))).recip())
}

pub fn information_rate(n: u64) -> Result<BigRational, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::BadParameters(
            "code length must be at least 1".into(),
        ));
    }
    Ok(BigRational::new(BigInt::from(n), BigInt::from(n + 2)))
}

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecurityReport {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub q: u64,
    /// `A = q^k`
    pub participants: BigInt,
    /// `B = q^n`
    pub secret_space: BigInt,
    /// `X(k, t)`
    pub extension_count: BigRational,
    pub guess_probability: BigRational,
    pub information_rate: BigRational,
    /// `C = X(k, 0)`
    pub coalition_count: BigRational,
    /// Set when `q` is not prime, i.e. the ring is `Z/p^eZ` with `e > 1`.
    pub ring_heuristic: bool,
}

/// The comparison-table row for an `[n, k]` code over an alphabet of size `q`,
/// with the empty coalition (`t = 0`).
pub fn table_row(n: u32, k: u32, q: u64) -> Result<SecurityReport, AnalysisError> {
    security_report(n, k, q, 0)
}

/// Full report including the guess probability of a `t`-coalition.
pub fn security_report(n: u32, k: u32, q: u64, t: u32) -> Result<SecurityReport, AnalysisError> {
    if k == 0 || k > n {
        return Err(AnalysisError::BadParameters(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    check(k, t, q)?;
    Ok(SecurityReport {
        n,
        k,
        t,
        q,
        participants: pow(q, k),
        secret_space: pow(q, n),
        extension_count: extension_count(k, t, q)?,
        guess_probability: guess_probability(k, t, q)?,
        information_rate: information_rate(n as u64)?,
        coalition_count: extension_count(k, 0, q)?,
        ring_heuristic: !is_prime(q),
    })
}

/// `"numerator/denominator"`, or just the numerator for integers.
pub fn format_ratio(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Decimal approximation with `sig` significant digits (round half up),
/// in `%g` style: scientific notation below `1e-4` or from `10^sig` up.
pub fn format_decimal(v: &BigRational, sig: u32) -> String {
    assert!(sig >= 1);
    if v.is_zero() {
        return "0".into();
    }
    let sign = if v.is_negative() { "-" } else { "" };
    let a = v.numer().abs();
    let b = v.denom().clone();
    let ten = BigInt::from(10);
    let tenpow = |e: i64| num_traits::pow(ten.clone(), e.unsigned_abs() as usize);

    // a/b >= 10^e
    let at_least = |e: i64| {
        if e >= 0 {
            a >= &b * tenpow(e)
        } else {
            &a * tenpow(e) >= b
        }
    };
    let mut exp = a.to_string().len() as i64 - b.to_string().len() as i64;
    while !at_least(exp) {
        exp -= 1;
    }
    while at_least(exp + 1) {
        exp += 1;
    }

    let shift = sig as i64 - 1 - exp;
    let (num, den) = if shift >= 0 {
        (&a * tenpow(shift), b)
    } else {
        (a, b * tenpow(shift))
    };
    let mut scaled: BigInt = (num * 2 + &den) / (den * 2);
    if scaled == tenpow(sig as i64) {
        scaled /= 10;
        exp += 1;
    }
    let digits = scaled.to_string();

    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    let body = if exp < -4 || exp >= sig as i64 {
        let mantissa = trim(format!("{}.{}", &digits[..1], &digits[1..]));
        format!("{mantissa}e{exp}")
    } else if exp >= 0 {
        let split = exp as usize + 1;
        trim(format!("{}.{}", &digits[..split], &digits[split..]))
    } else {
        trim(format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits))
    };
    format!("{sign}{body}")
}

fn rational_json(v: &BigRational) -> Value {
    json!({
        "exact": format_ratio(v),
        "approx": format_decimal(v, 6),
    })
}

impl SecurityReport {
    /// Machine-readable form; exact values as strings with a 6-digit decimal.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "q": self.q,
            "participants": self.participants.to_string(),
            "secret_space": self.secret_space.to_string(),
            "coalition_count": rational_json(&self.coalition_count),
            "extension_count": rational_json(&self.extension_count),
            "guess_probability": rational_json(&self.guess_probability),
            "information_rate": rational_json(&self.information_rate),
            "ring_heuristic": self.ring_heuristic,
        })
    }

    pub fn render_text(&self) -> String {
        let line = |label: &str, v: &BigRational| {
            format!(
                "{label:<34} {} ({})\n",
                format_ratio(v),
                format_decimal(v, 6)
            )
        };
        let mut out = String::new();
        out += &format!(
            "[n, k] = [{}, {}], alphabet size q = {}, coalition size t = {}\n",
            self.n, self.k, self.q, self.t
        );
        out += &format!("{:<34} {}\n", "participants A = q^k:", self.participants);
        out += &format!("{:<34} {}\n", "secret space B = q^n:", self.secret_space);
        out += &line("coalitions C = X(k, 0):", &self.coalition_count);
        out += &line("extension count X(k, t):", &self.extension_count);
        out += &line("guess probability 1/(X q^(k-t)):", &self.guess_probability);
        out += &line("information rate rho = n/(n+2):", &self.information_rate);
        if self.ring_heuristic {
            out += "note: q is not prime; the counts assume a vector space over F_q and are heuristic for Z/p^eZ\n";
        }
        out += "note: every participant also holds a y-value, but recovery uses only n - k of them; their effect on coalitions is not included above\n";
        out
    }
}
