//! Sine and cosine matrices indexed by the units mod `n` up to sign.
//!
//! For `n >= 3` let `R = {l : 1 <= l <= n/2, gcd(l, n) = 1}`. The sine matrix is
//! `S = (2 sin(2π j k*/n))` and the cosine matrix `C = (2 cos(2π j k*/n))`, with
//! `j, k ∈ R` and `k*` the inverse of `k` mod `n`.
//!
//! The crate builds both matrices, decides when they are invertible, writes
//! down their inverses in closed form (exactly, as integer tables over the
//! denominator `n`, and numerically), computes their eigenvalues as Gauss sums
//! of Dirichlet characters, and checks all of it against brute-force oracles.
//!
//! ```
//! use cyclomat::trigmat::{hat_coefficients, Kind};
//!
//! let inv = hat_coefficients(15, Kind::Sine).unwrap();
//! // ŝ_1 = (3 s_1 − s_2 + 0 s_4 + s_7) / 15
//! assert_eq!(inv.expansion(1).unwrap(), &[3, -1, 0, 1]);
//! assert_eq!(inv.denominator(), 15);
//! ```

pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod gauss;
pub mod linalg;
pub mod ntheory;
pub mod output;
pub mod trigmat;
pub mod verify;

pub use error::{Error, Obstruction, Result};
pub use trigmat::Kind;
