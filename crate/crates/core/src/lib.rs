//! Multi-secret sharing over the chain rings `Z/p^eZ` built on linear
//! complementary dual (LCD) codes.
//!
//! A dealer fixes an `[n, k]` LCD code with `2k >= n` and shares a vector
//! secret `s ∈ R^n`; any `k` participants whose codewords are independent
//! recover all `n` coordinates by solving one linear system.
//!
//! ```
//! use lcdmss::codes::random_lcd_code;
//! use lcdmss::ring::Ring;
//! use lcdmss::scheme::{deal, recover, Secret};
//!
//! let ring = Ring::new(2, 2).unwrap(); // Z/4Z
//! let code = random_lcd_code(ring, 8, 4, 1).unwrap();
//! let secret = Secret::from_i64(ring, &[2, 2, 0, 0, 0, 0, 0, 0]);
//! let (shares, _record) = deal(&code, &secret, 10, 7).unwrap();
//! assert_eq!(recover(&code, &shares).unwrap(), secret);
//! ```

pub mod analysis;
pub mod codes;
pub mod io_formats;
pub mod linalg;
pub mod ring;
pub mod rng;
pub mod scheme;

pub use codes::LinearCode;
pub use linalg::{RMatrix, RVector};
pub use ring::{Residue, Ring};
pub use scheme::{DealRecord, Secret, Share};
