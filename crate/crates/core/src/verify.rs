//! Independent checks of every structural claim about the sine and cosine
//! matrices.
//!
//! The linear-algebra ground truth is a plain Gaussian elimination with
//! partial pivoting ([`oracle_inverse`], [`elimination_rank`],
//! [`oracle_determinant`]); it knows nothing about characters or Gauss sums.
//! The character-sum checks evaluate both sides of each identity separately
//! and never reuse the closed-form inverse coefficients.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{enumerate_characters, DirichletCharacter, Parity};
use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::gauss::{self, gauss_product_check, gauss_sum_direct, gauss_sum_reduced};
use crate::linalg::Matrix;
use crate::ntheory::{self, euler_phi, is_squarefree, lambda_count, reduce, RepresentativeSet};
use crate::trigmat::{build_matrix, explicit_inverse, is_invertible, Kind, RhoConstant};

/// Pivots below `RANK_TOL · max|a_ij|` are treated as zero when computing ranks.
pub const RANK_TOL: f64 = 1e-7;

/// Pivots below `INVERSE_TOL · max|a_ij|` make [`oracle_inverse`] give up.
pub const INVERSE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Pure character-sum identities.
    pub identity: f64,
    /// Gauss-sum comparisons.
    pub gauss: f64,
    /// Matrix products, which accumulate error with the dimension.
    pub matrix: f64,
    /// Relative error of `Π λ` against the elimination determinant.
    pub determinant: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity: 1e-10,
            gauss: 1e-9,
            matrix: 1e-8,
            determinant: 1e-6,
        }
    }
}

impl Tolerances {
    /// Applies overrides like `matrix=1e-7,identity=1e-9`; a bare number sets all.
    pub fn apply_overrides(&mut self, overrides: &str) -> std::result::Result<(), String> {
        for part in overrides.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let parse = |v: &str| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite() && *x >= 0.0)
                    .ok_or_else(|| format!("bad tolerance value {v:?}"))
            };
            match part.split_once('=') {
                None => {
                    let v = parse(part)?;
                    *self = Tolerances {
                        identity: v,
                        gauss: v,
                        matrix: v,
                        determinant: v,
                    };
                }
                Some((key, v)) => {
                    let v = parse(v)?;
                    match key.trim() {
                        "identity" => self.identity = v,
                        "gauss" => self.gauss = v,
                        "matrix" => self.matrix = v,
                        "determinant" => self.determinant = v,
                        other => return Err(format!("unknown tolerance {other:?}")),
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Orthogonality,
    Unitary,
    Diagonalization,
    Lemma2,
    GaussReduction,
    GaussProduct,
    Determinant,
    Invertibility,
    Reconstruction,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::Orthogonality,
        CheckKind::Unitary,
        CheckKind::Diagonalization,
        CheckKind::Lemma2,
        CheckKind::GaussReduction,
        CheckKind::GaussProduct,
        CheckKind::Determinant,
        CheckKind::Invertibility,
        CheckKind::Reconstruction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Orthogonality => "orthogonality",
            CheckKind::Unitary => "unitary",
            CheckKind::Diagonalization => "diagonalization",
            CheckKind::Lemma2 => "lemma2",
            CheckKind::GaussReduction => "gauss-reduction",
            CheckKind::GaussProduct => "gauss-product",
            CheckKind::Determinant => "determinant",
            CheckKind::Invertibility => "invertibility",
            CheckKind::Reconstruction => "reconstruction",
        }
    }

    /// Parses a comma-separated list; `all` selects everything.
    pub fn parse_list(s: &str) -> std::result::Result<Vec<CheckKind>, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                return Ok(CheckKind::ALL.to_vec());
            }
            let c: CheckKind = part.parse()?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        if out.is_empty() {
            return Err("empty check list".into());
        }
        Ok(out)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckKind::ALL.iter().map(|c| c.name()).collect();
                format!(
                    "unknown check {s:?} (expected one of: all, {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: CheckKind,
    pub modulus: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    /// `None` for skipped checks.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

// wall time is not part of a report's identity
impl PartialEq for CheckReport {
    fn eq(&self, other: &Self) -> bool {
        self.check == other.check
            && self.modulus == other.modulus
            && self.variant == other.variant
            && self.max_residual == other.max_residual
            && self.tolerance == other.tolerance
            && self.outcome == other.outcome
            && self.detail == other.detail
    }
}

impl CheckReport {
    fn measured(
        check: CheckKind,
        modulus: u64,
        variant: Option<String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let outcome = if residual <= tolerance {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        CheckReport {
            check,
            modulus,
            variant,
            max_residual: Some(residual),
            tolerance,
            outcome,
            detail: None,
            elapsed_ms: 0.0,
        }
    }

    fn skipped(check: CheckKind, modulus: u64, variant: Option<String>, why: String) -> Self {
        CheckReport {
            check,
            modulus,
            variant,
            max_residual: None,
            tolerance: 0.0,
            outcome: Outcome::Skip,
            detail: Some(why),
            elapsed_ms: 0.0,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

#[derive(Debug, Clone)]
pub struct OracleInverse {
    pub inverse: Matrix<f64>,
    /// Smallest pivot magnitude encountered, relative to `max|a_ij|`.
    pub min_pivot: f64,
}

/// Gauss–Jordan inversion with partial pivoting.
pub fn oracle_inverse(m: &Matrix<f64>) -> Result<OracleInverse> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let d = m.rows();
    let scale = m.max_abs();
    let threshold = INVERSE_TOL * scale;
    let mut a: Vec<Vec<f64>> = (0..d).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut min_pivot = f64::INFINITY;

    for col in 0..d {
        let p = (col..d)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("nonempty range");
        let pivot = a[p][col];
        min_pivot = min_pivot.min(pivot.abs() / scale.max(f64::MIN_POSITIVE));
        if pivot.abs() <= threshold || scale == 0.0 {
            return Err(Error::SingularToPrecision {
                pivot: pivot.abs(),
                threshold,
            });
        }
        a.swap(col, p);
        inv.swap(col, p);
        let inv_pivot = 1.0 / pivot;
        for j in 0..d {
            a[col][j] *= inv_pivot;
            inv[col][j] *= inv_pivot;
        }
        for r in 0..d {
            if r == col {
                continue;
            }
            let f = a[r][col];
            if f == 0.0 {
                continue;
            }
            for j in 0..d {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    Ok(OracleInverse {
        inverse: Matrix::from_rows(d, d, inv.into_iter().flatten().collect()),
        min_pivot,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    pub dim: usize,
    /// Smallest pivot relative to `max|a_ij|` among the columns examined
    /// (including rejected ones).
    pub min_pivot: f64,
}

/// Numerical rank by row reduction with partial pivoting.
pub fn elimination_rank(m: &Matrix<f64>) -> RankReport {
    let (rows, cols) = (m.rows(), m.cols());
    let scale = m.max_abs();
    let mut a: Vec<Vec<f64>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    let mut min_pivot = f64::INFINITY;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let p = (rank..rows)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("nonempty range");
        let rel = if scale > 0.0 {
            a[p][col].abs() / scale
        } else {
            0.0
        };
        min_pivot = min_pivot.min(rel);
        if rel < RANK_TOL {
            continue;
        }
        a.swap(rank, p);
        for r in rank + 1..rows {
            let (top, bottom) = a.split_at_mut(r);
            let (pivot, row) = (&top[rank], &mut bottom[0]);
            let f = row[col] / pivot[col];
            if f == 0.0 {
                continue;
            }
            for (x, &y) in row[col..cols].iter_mut().zip(&pivot[col..cols]) {
                *x -= f * y;
            }
        }
        rank += 1;
    }
    RankReport {
        rank,
        dim: rows.min(cols),
        min_pivot: if min_pivot.is_finite() {
            min_pivot
        } else {
            0.0
        },
    }
}

/// Determinant as the signed product of elimination pivots.
pub fn oracle_determinant(m: &Matrix<f64>) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let d = m.rows();
    let mut a: Vec<Vec<f64>> = (0..d).map(|i| m.row(i).to_vec()).collect();
    let mut det = 1.0;
    for col in 0..d {
        let p = (col..d)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("nonempty range");
        if a[p][col] == 0.0 {
            return Ok(0.0);
        }
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..d {
            let (top, bottom) = a.split_at_mut(r);
            let (pivot, row) = (&top[col], &mut bottom[0]);
            let f = row[col] / pivot[col];
            for (x, &y) in row[col..d].iter_mut().zip(&pivot[col..d]) {
                *x -= f * y;
            }
        }
    }
    Ok(det)
}

fn parity_characters(n: u64, parity: Parity) -> Result<Vec<DirichletCharacter>> {
    Ok(enumerate_characters(n)?
        .into_iter()
        .filter(|c| c.parity() == parity)
        .collect())
}

/// `X = √(2/φ(n)) · (χ(k))_{k ∈ R, χ}` for characters of one parity.
pub fn character_matrix(n: u64, chars: &[DirichletCharacter]) -> Result<Matrix<Complex64>> {
    let reps = RepresentativeSet::new(n)?;
    let norm = (2.0 / euler_phi(n)? as f64).sqrt();
    Ok(Matrix::from_fn(reps.len(), chars.len(), |i, j| {
        chars[j].evaluate_complex(reps.members()[i] as i64) * norm
    }))
}

/// `Σ_χ χ(k)` over one parity, for every unit `k`, exactly and in floats.
pub fn check_orthogonality(n: u64, parity: Parity, tol: f64) -> Result<CheckReport> {
    let chars = parity_characters(n, parity)?;
    let phi = euler_phi(n)? as i64;
    let order = chars[0].basis().exponent();
    let mut residual: f64 = 0.0;
    let mut mismatch = None;
    for k in 1..n as i64 {
        if !ntheory::is_coprime(k, n) {
            continue;
        }
        let r = reduce(k, n);
        let expected = if r == 1 {
            phi / 2
        } else if r == n - 1 {
            match parity {
                Parity::Odd => -phi / 2,
                Parity::Even => phi / 2,
            }
        } else {
            0
        };
        let mut exact = CyclotomicInteger::zero(order);
        let mut float = Complex64::new(0.0, 0.0);
        for chi in &chars {
            let v = chi.evaluate(k).root().expect("unit");
            exact.add_root(v, 1);
            float += v.to_complex();
        }
        let mut res = (float - Complex64::new(expected as f64, 0.0)).norm();
        if exact.as_integer() != Some(expected) {
            res = res.max(1.0);
            mismatch.get_or_insert(k);
        }
        residual = residual.max(res);
    }
    let report = CheckReport::measured(
        CheckKind::Orthogonality,
        n,
        Some(parity.to_string()),
        residual,
        tol,
    );
    Ok(match mismatch {
        Some(k) => report.with_detail(format!("exact sum differs at k = {k}")),
        None => report.with_detail("exact"),
    })
}

/// `max(‖X·X̄ᵗ − I‖, ‖X̄ᵗ·X − I‖)`, entrywise.
pub fn check_unitary(n: u64, parity: Parity, tol: f64) -> Result<CheckReport> {
    let chars = parity_characters(n, parity)?;
    let x = character_matrix(n, &chars)?;
    let xh = x.adjoint();
    let id = Matrix::identity(x.rows());
    let residual = x
        .matmul(&xh)
        .max_abs_diff(&id)
        .max(xh.matmul(&x).max_abs_diff(&id));
    Ok(CheckReport::measured(
        CheckKind::Unitary,
        n,
        Some(parity.to_string()),
        residual,
        tol,
    ))
}

/// `‖X̄ᵗ M X − D‖` with `D = −iT` (sine) or `T` (cosine), `T = diag(τ(χ̄))`.
pub fn check_diagonalization(n: u64, kind: Kind, tol: f64) -> Result<CheckReport> {
    let spectrum = gauss::spectrum(n, kind)?;
    let chars: Vec<DirichletCharacter> = spectrum.characters().into_iter().cloned().collect();
    let x = character_matrix(n, &chars)?;
    let m = build_matrix(n, kind)?.values().to_complex();
    let lhs = x.adjoint().matmul(&m).matmul(&x);
    let d = Matrix::diagonal(&spectrum.eigenvalues());
    let residual = lhs.max_abs_diff(&d);
    let zeros = spectrum.zero_count();
    let report = CheckReport::measured(
        CheckKind::Diagonalization,
        n,
        Some(kind.to_string()),
        residual,
        tol,
    );
    Ok(if zeros > 0 {
        report.with_detail(format!("{zeros} zero eigenvalue(s)"))
    } else {
        report
    })
}

/// `Σ_χ χ(k)/f_χ` against `(φ(n)/2n)·Δ(k)`, with `Δ(k) = λ(k) − λ(−k)` for odd
/// characters and `λ(k) + λ(−k) + ρ_n` for even ones.
///
/// Needs `n` square-free (or `n = 4` for odd characters).
pub fn check_lemma2(n: u64, parity: Parity, tol: f64) -> Result<CheckReport> {
    let sf = is_squarefree(n)?;
    let ok = match parity {
        Parity::Odd => sf || n == 4,
        Parity::Even => sf,
    };
    if !ok {
        return Err(Error::Hypothesis {
            check: "lemma2",
            n,
            reason: match parity {
                Parity::Odd => format!("{n} is neither square-free nor 4"),
                Parity::Even => format!("{n} is not square-free"),
            },
        });
    }
    let chars = parity_characters(n, parity)?;
    let conductors: Vec<f64> = chars.iter().map(|c| c.conductor() as f64).collect();
    let phi = euler_phi(n)? as f64;
    let rho = RhoConstant::for_modulus(n).0;
    let mut residual: f64 = 0.0;
    for k in 1..n as i64 {
        if !ntheory::is_coprime(k, n) {
            continue;
        }
        let lhs: Complex64 = chars
            .iter()
            .zip(&conductors)
            .map(|(c, &f)| c.evaluate_complex(k) / f)
            .sum();
        let plus = lambda_count(k, n)? as i64;
        let minus = lambda_count(-k, n)? as i64;
        let delta = match parity {
            Parity::Odd => plus - minus,
            Parity::Even => plus + minus + rho,
        };
        let rhs = phi / (2.0 * n as f64) * delta as f64;
        residual = residual.max((lhs - Complex64::new(rhs, 0.0)).norm());
    }
    Ok(CheckReport::measured(
        CheckKind::Lemma2,
        n,
        Some(parity.to_string()),
        residual,
        tol,
    ))
}

/// Reduction formula against direct summation, for every character mod `n`.
pub fn check_gauss_reduction(n: u64, tol: f64) -> Result<CheckReport> {
    let residual = enumerate_characters(n)?
        .iter()
        .map(|c| (gauss_sum_direct(c) - gauss_sum_reduced(c)).norm())
        .fold(0.0, f64::max);
    Ok(CheckReport::measured(
        CheckKind::GaussReduction,
        n,
        None,
        residual,
        tol,
    ))
}

/// `τ(χ_f)τ(χ̄_f) = ∓f` for every character, and `|τ(χ)|² = f` for primitive ones.
pub fn check_gauss_product(n: u64, tol: f64) -> Result<CheckReport> {
    let chars = enumerate_characters(n)?;
    let mut residual: f64 = 0.0;
    let mut primitive = 0;
    for c in &chars {
        residual = residual.max(gauss_product_check(c));
        if c.is_primitive() {
            primitive += 1;
            let t = gauss_sum_direct(c);
            residual = residual.max((t.norm_sqr() - c.conductor() as f64).abs());
        }
    }
    Ok(
        CheckReport::measured(CheckKind::GaussProduct, n, None, residual, tol)
            .with_detail(format!("{primitive} primitive character(s)")),
    )
}

/// `Π λ` from the Gauss-sum spectrum against the elimination determinant,
/// relative to `max(1, |det|)`.
pub fn check_determinant(n: u64, kind: Kind, tol: f64) -> Result<CheckReport> {
    let spectrum = gauss::spectrum(n, kind)?;
    let det = oracle_determinant(&build_matrix(n, kind)?.values())?;
    let prod = spectrum.determinant();
    let residual = (prod - Complex64::new(det, 0.0)).norm() / det.abs().max(1.0);
    Ok(CheckReport::measured(
        CheckKind::Determinant,
        n,
        Some(kind.to_string()),
        residual,
        tol,
    ))
}

/// The closed-form criterion, the elimination rank and the spectral zero
/// count must all agree. The residual is the number of disagreements.
pub fn check_invertibility(n: u64, kind: Kind) -> Result<CheckReport> {
    let criterion = is_invertible(n, kind)?;
    let rank = elimination_rank(&build_matrix(n, kind)?.values());
    let zeros = gauss::spectrum(n, kind)?.zero_count();
    let by_rank = rank.rank == rank.dim;
    let by_spectrum = zeros == 0;
    let disagreements = [
        by_rank != criterion,
        by_spectrum != criterion,
        rank.dim - rank.rank != zeros,
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    let status = if criterion {
        "invertible".to_string()
    } else {
        format!(
            "expected-singular (rank {} of {}, {} zero eigenvalue(s))",
            rank.rank, rank.dim, zeros
        )
    };
    Ok(CheckReport::measured(
        CheckKind::Invertibility,
        n,
        Some(kind.to_string()),
        disagreements as f64,
        0.0,
    )
    .with_detail(status))
}

/// `‖M·M̂ − I‖`, `‖M̂·M − I‖` and `‖M̂ − oracle⁻¹‖`, entrywise.
pub fn check_reconstruction(n: u64, kind: Kind, tol: f64) -> Result<CheckReport> {
    if !is_invertible(n, kind)? {
        return Ok(CheckReport::skipped(
            CheckKind::Reconstruction,
            n,
            Some(kind.to_string()),
            "matrix is singular".into(),
        ));
    }
    let m = build_matrix(n, kind)?.values();
    let inv = explicit_inverse(n, kind)?.values();
    let id = Matrix::identity(m.rows());
    let oracle = oracle_inverse(&m)?;
    let residual = m
        .matmul(&inv)
        .max_abs_diff(&id)
        .max(inv.matmul(&m).max_abs_diff(&id))
        .max(inv.max_abs_diff(&oracle.inverse));
    Ok(CheckReport::measured(
        CheckKind::Reconstruction,
        n,
        Some(kind.to_string()),
        residual,
        tol,
    ))
}

fn timed(f: impl FnOnce() -> Result<CheckReport>) -> Result<CheckReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

/// All reports of one check kind for one modulus.
pub fn run_check(check: CheckKind, n: u64, tol: &Tolerances) -> Result<Vec<CheckReport>> {
    let parities = [Parity::Odd, Parity::Even];
    match check {
        CheckKind::Orthogonality => parities
            .iter()
            .map(|&p| timed(|| check_orthogonality(n, p, tol.identity)))
            .collect(),
        CheckKind::Unitary => parities
            .iter()
            .map(|&p| timed(|| check_unitary(n, p, tol.matrix)))
            .collect(),
        CheckKind::Diagonalization => Kind::ALL
            .iter()
            .map(|&k| timed(|| check_diagonalization(n, k, tol.matrix)))
            .collect(),
        CheckKind::Lemma2 => parities
            .iter()
            .map(|&p| {
                timed(|| match check_lemma2(n, p, tol.identity) {
                    Err(Error::Hypothesis { reason, .. }) => Ok(CheckReport::skipped(
                        CheckKind::Lemma2,
                        n,
                        Some(p.to_string()),
                        reason,
                    )),
                    other => other,
                })
            })
            .collect(),
        CheckKind::GaussReduction => Ok(vec![timed(|| check_gauss_reduction(n, tol.gauss))?]),
        CheckKind::GaussProduct => Ok(vec![timed(|| check_gauss_product(n, tol.gauss))?]),
        CheckKind::Determinant => Kind::ALL
            .iter()
            .map(|&k| timed(|| check_determinant(n, k, tol.determinant)))
            .collect(),
        CheckKind::Invertibility => Kind::ALL
            .iter()
            .map(|&k| timed(|| check_invertibility(n, k)))
            .collect(),
        CheckKind::Reconstruction => Kind::ALL
            .iter()
            .map(|&k| timed(|| check_reconstruction(n, k, tol.matrix)))
            .collect(),
    }
}

/// Runs `checks` for every `n` in `n_min..=n_max`. Moduli are processed in
/// parallel; the result is ordered by `n`, then by check, then by variant.
pub fn sweep(
    n_min: u64,
    n_max: u64,
    checks: &[CheckKind],
    tol: &Tolerances,
) -> Result<Vec<CheckReport>> {
    if n_min < 3 {
        return Err(Error::ModulusTooSmall { n: n_min, min: 3 });
    }
    let per_n: Vec<Vec<CheckReport>> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Vec<CheckReport>> {
            let mut out = Vec::new();
            for &c in checks {
                out.extend(run_check(c, n, tol)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.outcome {
                Outcome::Pass => s.passed += 1,
                Outcome::Fail => s.failed += 1,
                Outcome::Skip => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}
