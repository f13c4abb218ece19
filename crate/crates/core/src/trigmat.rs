//! The sine and cosine matrices `S = (s_{jk*})`, `C = (c_{jk*})` over the
//! representative set `R`, with `s_x = 2 sin(2πx/n)` and `c_x = 2 cos(2πx/n)`.
//!
//! Their inverses have the same shape: replace each entry `ε·s_l` by `ε·ŝ_l`
//! (resp. `c_l` by `ĉ_l`), where
//!
//! ```text
//! ŝ_l = (1/n) Σ_{m∈R} (λ(ml) − λ(−ml))       s_m
//! ĉ_l = (1/n) Σ_{m∈R} (λ(ml) + λ(−ml) + ρ_n) c_m
//! ```
//!
//! with `λ` from [`lambda_count`] and `ρ_n` = 2 for odd `n`, 4 for even `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::characters::Parity;
use crate::cyclotomic::angle_to_complex;
use crate::error::{Error, Obstruction, Result};
use crate::linalg::Matrix;
use crate::ntheory::{
    is_coprime, lambda_count, mod_inverse, reduce, square_divisor, CanonicalResidue,
    RepresentativeSet, Sign,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sine,
    Cosine,
}

impl Kind {
    pub const ALL: [Kind; 2] = [Kind::Sine, Kind::Cosine];

    /// Parity of the characters diagonalizing this matrix.
    pub fn parity(self) -> Parity {
        match self {
            Kind::Sine => Parity::Odd,
            Kind::Cosine => Parity::Even,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Kind::Sine => 's',
            Kind::Cosine => 'c',
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sine => "sine",
            Kind::Cosine => "cosine",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sine" | "sin" | "s" => Ok(Kind::Sine),
            "cosine" | "cos" | "c" => Ok(Kind::Cosine),
            other => Err(format!(
                "unknown matrix kind {other:?} (expected sine or cosine)"
            )),
        }
    }
}

/// `s_x` or `c_x` for any integer `x`.
pub fn trig_value(kind: Kind, x: i64, n: u64) -> f64 {
    let z = angle_to_complex(reduce(x, n), n);
    match kind {
        Kind::Sine => 2.0 * z.im,
        Kind::Cosine => 2.0 * z.re,
    }
}

/// `ρ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RhoConstant(pub i64);

impl RhoConstant {
    pub fn for_modulus(n: u64) -> Self {
        RhoConstant(if n.is_multiple_of(2) { 4 } else { 2 })
    }
}

/// One entry `ε·s_l` (or `c_l`, where `ε` is always `+`).
///
/// For an inverse matrix `value` holds `ε·ŝ_l` (resp. `ĉ_l`) instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigEntry {
    pub kind: Kind,
    pub sign: Sign,
    pub index: u64,
    pub value: f64,
}

/// Square matrix over `R × R`; row `j`, column `k` holds the class of `j·k*`.
#[derive(Debug, Clone)]
pub struct TrigMatrix {
    kind: Kind,
    reps: RepresentativeSet,
    entries: Vec<TrigEntry>,
}

impl TrigMatrix {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn modulus(&self) -> u64 {
        self.reps.modulus()
    }

    pub fn representatives(&self) -> &RepresentativeSet {
        &self.reps
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &TrigEntry {
        &self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[TrigEntry] {
        &self.entries
    }

    pub fn values(&self) -> Matrix<f64> {
        let d = self.dim();
        Matrix::from_rows(d, d, self.entries.iter().map(|e| e.value).collect())
    }
}

// (ε, l) for j·k* over R × R, row-major
fn index_pattern(reps: &RepresentativeSet) -> Vec<CanonicalResidue> {
    let n = reps.modulus();
    let mut out = Vec::with_capacity(reps.len() * reps.len());
    for &j in reps.members() {
        for &k in reps.members() {
            let kinv = mod_inverse(k as i64, n).expect("members are units");
            let x = (j as u128 * kinv as u128 % n as u128) as i64;
            out.push(reps.canonical_residue(x).expect("product of units"));
        }
    }
    out
}

fn entry_sign(kind: Kind, sign: Sign) -> Sign {
    match kind {
        Kind::Sine => sign,
        Kind::Cosine => Sign::Plus,
    }
}

pub fn build_matrix(n: u64, kind: Kind) -> Result<TrigMatrix> {
    let reps = RepresentativeSet::new(n)?;
    let entries = index_pattern(&reps)
        .into_iter()
        .map(|c| {
            let sign = entry_sign(kind, c.sign);
            TrigEntry {
                kind,
                sign,
                index: c.representative,
                value: sign.as_f64() * trig_value(kind, c.representative as i64, n),
            }
        })
        .collect();
    Ok(TrigMatrix {
        kind,
        reps,
        entries,
    })
}

/// `None` when the matrix is invertible, otherwise the reason it is not.
pub fn obstruction(n: u64, kind: Kind) -> Result<Option<Obstruction>> {
    if n < 3 {
        return Err(Error::ModulusTooSmall { n, min: 3 });
    }
    let square = square_divisor(n)?.map(|prime| Obstruction::SquareDivisor { n, prime });
    Ok(match (kind, n) {
        (Kind::Sine, 4) => None,
        (Kind::Cosine, 4) => Some(Obstruction::CosineAtFour),
        _ => square,
    })
}

/// Sine: `n` square-free or `n = 4`. Cosine: `n` square-free.
pub fn is_invertible(n: u64, kind: Kind) -> Result<bool> {
    Ok(obstruction(n, kind)?.is_none())
}

fn require_invertible(n: u64, kind: Kind) -> Result<()> {
    match obstruction(n, kind)? {
        None => Ok(()),
        Some(reason) => Err(Error::Singular { n, kind, reason }),
    }
}

/// Exact expansions of `ŝ_l` (or `ĉ_l`) over `{s_m}` (or `{c_m}`), all over the
/// common denominator `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicInverse {
    kind: Kind,
    modulus: u64,
    members: Vec<u64>,
    // numerators[l_idx][m_idx]
    numerators: Vec<Vec<i64>>,
}

impl SymbolicInverse {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Always `n`; never reduced.
    pub fn denominator(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    /// Numerators of `ŝ_l` over `s_m`, `m` in `R` order.
    pub fn expansion(&self, l: u64) -> Option<&[i64]> {
        let idx = self.members.binary_search(&l).ok()?;
        Some(&self.numerators[idx])
    }

    pub fn numerator(&self, l: u64, m: u64) -> Option<i64> {
        let col = self.members.binary_search(&m).ok()?;
        self.expansion(l).map(|row| row[col])
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.numerators
    }

    /// Numeric `ŝ_l` (or `ĉ_l`) for each `l` in `R`.
    pub fn hat_values(&self) -> Vec<f64> {
        let n = self.modulus;
        let basis: Vec<f64> = self
            .members
            .iter()
            .map(|&m| trig_value(self.kind, m as i64, n))
            .collect();
        self.numerators
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&basis)
                    .map(|(&c, &b)| c as f64 * b)
                    .sum::<f64>()
                    / n as f64
            })
            .collect()
    }
}

fn hat_row(kind: Kind, l: u64, reps: &RepresentativeSet) -> Vec<i64> {
    let n = reps.modulus();
    let rho = RhoConstant::for_modulus(n).0;
    reps.members()
        .iter()
        .map(|&m| {
            let x = (m as u128 * l as u128 % n as u128) as i64;
            let plus = lambda_count(x, n).expect("unit") as i64;
            let minus = lambda_count(-x, n).expect("unit") as i64;
            match kind {
                Kind::Sine => plus - minus,
                Kind::Cosine => plus + minus + rho,
            }
        })
        .collect()
}

pub fn hat_coefficients(n: u64, kind: Kind) -> Result<SymbolicInverse> {
    require_invertible(n, kind)?;
    let reps = RepresentativeSet::new(n)?;
    let numerators = reps
        .members()
        .iter()
        .map(|&l| hat_row(kind, l, &reps))
        .collect();
    Ok(SymbolicInverse {
        kind,
        modulus: n,
        members: reps.members().to_vec(),
        numerators,
    })
}

/// The inverse assembled from the `ŝ_l`/`ĉ_l`, carrying the same `(ε, l)` tags
/// as the matrix it inverts.
#[derive(Debug, Clone)]
pub struct ExplicitInverse {
    coefficients: SymbolicInverse,
    hat: Vec<f64>,
    reps: RepresentativeSet,
    entries: Vec<TrigEntry>,
}

impl ExplicitInverse {
    pub fn kind(&self) -> Kind {
        self.coefficients.kind
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn coefficients(&self) -> &SymbolicInverse {
        &self.coefficients
    }

    pub fn representatives(&self) -> &RepresentativeSet {
        &self.reps
    }

    /// `ŝ_l` for each `l` in `R`.
    pub fn hat_values(&self) -> &[f64] {
        &self.hat
    }

    pub fn entry(&self, row: usize, col: usize) -> &TrigEntry {
        &self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[TrigEntry] {
        &self.entries
    }

    pub fn values(&self) -> Matrix<f64> {
        let d = self.dim();
        Matrix::from_rows(d, d, self.entries.iter().map(|e| e.value).collect())
    }
}

pub fn explicit_inverse(n: u64, kind: Kind) -> Result<ExplicitInverse> {
    let coefficients = hat_coefficients(n, kind)?;
    let hat = coefficients.hat_values();
    let reps = RepresentativeSet::new(n)?;
    let entries = index_pattern(&reps)
        .into_iter()
        .map(|c| {
            let sign = entry_sign(kind, c.sign);
            let idx = reps.index_of(c.representative).expect("member");
            TrigEntry {
                kind,
                sign,
                index: c.representative,
                value: sign.as_f64() * hat[idx],
            }
        })
        .collect();
    Ok(ExplicitInverse {
        coefficients,
        hat,
        reps,
        entries,
    })
}

/// `ŝ_k` (or `ĉ_k`) for any unit `k`, via `ŝ_{−k} = −ŝ_k` and `ĉ_{−k} = ĉ_k`.
pub fn hat_value(k: i64, n: u64, kind: Kind) -> Result<f64> {
    require_invertible(n, kind)?;
    if !is_coprime(k, n) {
        return Err(Error::NotCoprime { k, n });
    }
    let reps = RepresentativeSet::new(n)?;
    let c = reps.canonical_residue(k)?;
    let row = hat_row(kind, c.representative, &reps);
    let value = row
        .iter()
        .zip(reps.members())
        .map(|(&coef, &m)| coef as f64 * trig_value(kind, m as i64, n))
        .sum::<f64>()
        / n as f64;
    Ok(entry_sign(kind, c.sign).as_f64() * value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntheory::large_divisor_count;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn tag(e: &TrigEntry) -> (i64, u64) {
        (e.sign.as_i64(), e.index)
    }

    #[test]
    fn fifteen_sine_pattern() {
        let s = build_matrix(15, Kind::Sine).unwrap();
        let expected = [
            [(1, 1), (-1, 7), (1, 4), (-1, 2)],
            [(1, 2), (1, 1), (-1, 7), (-1, 4)],
            [(1, 4), (1, 2), (1, 1), (1, 7)],
            [(1, 7), (-1, 4), (-1, 2), (1, 1)],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                assert_eq!(tag(s.entry(i, j)), want, "({i}, {j})");
                let e = s.entry(i, j);
                let v = e.sign.as_f64() * 2.0 * (TAU * e.index as f64 / 15.0).sin();
                assert!((e.value - v).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn small_matrices() {
        let s = build_matrix(3, Kind::Sine).unwrap();
        assert_eq!(s.dim(), 1);
        assert!((s.entry(0, 0).value - 3f64.sqrt()).abs() < 1e-15);
        let c = build_matrix(4, Kind::Cosine).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.entry(0, 0).value.abs() < 1e-15);
        assert!(matches!(
            build_matrix(2, Kind::Sine),
            Err(Error::ModulusTooSmall { n: 2, .. })
        ));
    }

    #[test]
    fn diagonal_and_cosine_signs() {
        for n in 3..80 {
            for kind in Kind::ALL {
                let m = build_matrix(n, kind).unwrap();
                for i in 0..m.dim() {
                    assert_eq!(tag(m.entry(i, i)), (1, 1));
                }
                if kind == Kind::Cosine {
                    assert!(m.entries().iter().all(|e| e.sign == Sign::Plus));
                }
            }
        }
    }

    #[test]
    fn invertibility_examples() {
        assert!(is_invertible(4, Kind::Sine).unwrap());
        assert!(!is_invertible(4, Kind::Cosine).unwrap());
        assert!(!is_invertible(9, Kind::Sine).unwrap());
        assert!(is_invertible(15, Kind::Cosine).unwrap());
        assert_eq!(
            obstruction(9, Kind::Sine).unwrap().unwrap().to_string(),
            "9 is divisible by 3²"
        );
        assert_eq!(
            obstruction(4, Kind::Cosine).unwrap(),
            Some(Obstruction::CosineAtFour)
        );
    }

    #[test]
    fn fifteen_sine_coefficients() {
        let h = hat_coefficients(15, Kind::Sine).unwrap();
        assert_eq!(h.denominator(), 15);
        assert_eq!(h.expansion(1).unwrap(), &[3, -1, 0, 1]);
        assert_eq!(h.expansion(2).unwrap(), &[-1, 0, -1, -3]);
        assert_eq!(h.expansion(4).unwrap(), &[0, -1, 3, 1]);
        assert_eq!(h.expansion(7).unwrap(), &[1, -3, 1, 0]);
    }

    #[test]
    fn seven_cosine_coefficients() {
        let h = hat_coefficients(7, Kind::Cosine).unwrap();
        assert_eq!(h.expansion(1).unwrap(), &[3, 2, 2]);
        assert_eq!(h.denominator(), 7);
    }

    #[test]
    fn singular_inputs_rejected() {
        let err = hat_coefficients(9, Kind::Sine).unwrap_err();
        assert!(err.to_string().contains("9 is divisible by 3²"), "{err}");
        assert!(explicit_inverse(4, Kind::Cosine).is_err());
        assert!(hat_value(1, 12, Kind::Cosine).is_err());
        assert!(hat_value(3, 15, Kind::Sine).is_err());
    }

    #[test]
    fn prime_inverse_is_scaled_transpose() {
        for p in [3u64, 5, 7, 11, 13] {
            let s = build_matrix(p, Kind::Sine).unwrap().values();
            let inv = explicit_inverse(p, Kind::Sine).unwrap().values();
            let expected = s.transpose().map(|x| x / p as f64);
            assert!(inv.max_abs_diff(&expected) < 1e-12, "p = {p}");
        }
        let inv = explicit_inverse(3, Kind::Sine).unwrap();
        assert!((inv.entry(0, 0).value - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn inverse_reconstructs_identity() {
        for n in 3..=60 {
            for kind in Kind::ALL {
                if !is_invertible(n, kind).unwrap() {
                    continue;
                }
                let m = build_matrix(n, kind).unwrap().values();
                let inv = explicit_inverse(n, kind).unwrap();
                let id = Matrix::identity(m.rows());
                assert!(
                    m.matmul(&inv.values()).max_abs_diff(&id) < 1e-10,
                    "{kind} n = {n}"
                );
                assert!(
                    inv.values().matmul(&m).max_abs_diff(&id) < 1e-10,
                    "{kind} n = {n}"
                );
            }
        }
    }

    #[test]
    fn inverse_tags_follow_matrix() {
        let s = build_matrix(15, Kind::Sine).unwrap();
        let inv = explicit_inverse(15, Kind::Sine).unwrap();
        for (a, b) in s.entries().iter().zip(inv.entries()) {
            assert_eq!(tag(a), tag(b));
        }
    }

    #[test]
    fn hat_value_examples() {
        let h14 = hat_value(14, 15, Kind::Sine).unwrap();
        let h1 = hat_value(1, 15, Kind::Sine).unwrap();
        assert_eq!(h14, -h1);
        assert_eq!(
            hat_value(13, 15, Kind::Cosine).unwrap(),
            hat_value(2, 15, Kind::Cosine).unwrap()
        );
        let s1 = hat_value(1, 7, Kind::Sine).unwrap();
        assert!((s1 - 2.0 * (TAU / 7.0).sin() / 7.0).abs() < 1e-15);
        assert!((s1 - 0.2233804).abs() < 1e-7);
    }

    #[test]
    fn coefficient_bounds() {
        for n in 3..=200u64 {
            for kind in Kind::ALL {
                let Ok(h) = hat_coefficients(n, kind) else {
                    continue;
                };
                let bound = large_divisor_count(n).unwrap() as i64
                    + match kind {
                        Kind::Sine => 0,
                        Kind::Cosine => RhoConstant::for_modulus(n).0,
                    };
                for row in h.rows() {
                    assert!(row.iter().all(|c| c.abs() <= bound), "{kind} n = {n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn sign_equivariance(n in 3u64..120, k in 1i64..1000) {
            for kind in Kind::ALL {
                if !is_invertible(n, kind).unwrap() || !is_coprime(k, n) {
                    continue;
                }
                let a = hat_value(k, n, kind).unwrap();
                let b = hat_value(-k, n, kind).unwrap();
                match kind {
                    Kind::Sine => prop_assert_eq!(a, -b),
                    Kind::Cosine => prop_assert_eq!(a, b),
                }
            }
        }

        #[test]
        fn entries_recomputable(n in 3u64..120) {
            for kind in Kind::ALL {
                let m = build_matrix(n, kind).unwrap();
                for e in m.entries() {
                    let v = e.sign.as_f64() * trig_value(kind, e.index as i64, n);
                    prop_assert_eq!(e.value, v);
                }
            }
        }
    }
}
