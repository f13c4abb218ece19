//! Gauss sums and the spectra of the sine and cosine matrices.
//!
//! Every function returns `τ` of the character it is given; callers wanting
//! `τ(χ̄)` pass `chi.conj()`.

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::{characters_of_parity, CharacterValue, DirichletCharacter, Parity};
use crate::cyclotomic::angle_to_complex;
use crate::error::Result;
use crate::ntheory;
use crate::trigmat::Kind;

/// Eigenvalues below this modulus count as zero. Nonzero eigenvalues have
/// modulus `√f_χ >= 1`, so the gap is about nine orders of magnitude.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Reduced,
}

#[derive(Debug, Clone)]
pub struct GaussSum {
    pub character: DirichletCharacter,
    pub value: Complex64,
    pub method: Method,
}

impl GaussSum {
    pub fn direct(chi: &DirichletCharacter) -> Self {
        GaussSum {
            character: chi.clone(),
            value: gauss_sum_direct(chi),
            method: Method::Direct,
        }
    }

    pub fn reduced(chi: &DirichletCharacter) -> Self {
        GaussSum {
            character: chi.clone(),
            value: gauss_sum_reduced(chi),
            method: Method::Reduced,
        }
    }
}

/// `τ(χ) = Σ_{k=1}^{n} χ(k) ζ_n^k`.
///
/// Each term is evaluated from the exact combined angle `a/m + k/n`, so the
/// only rounding is one `sin`/`cos` per term plus the summation.
pub fn gauss_sum_direct(chi: &DirichletCharacter) -> Complex64 {
    let n = chi.modulus();
    (1..=n)
        .filter_map(|k| match chi.evaluate(k as i64) {
            CharacterValue::Zero => None,
            CharacterValue::Root(r) => {
                let m = r.order();
                Some(angle_to_complex(r.numerator() * n + k * m, m * n))
            }
        })
        .sum()
}

/// `τ(χ)` through the primitive character: `μ(n/f)·χ_f(n/f)·τ(χ_f)`.
pub fn gauss_sum_reduced(chi: &DirichletCharacter) -> Complex64 {
    let n = chi.modulus();
    let f = chi.conductor();
    let cofactor = n / f;
    let mu = ntheory::moebius(cofactor).expect("cofactor > 0");
    let prim = chi.primitive_part();
    match prim.evaluate(cofactor as i64) {
        _ if mu == 0 => Complex64::new(0.0, 0.0),
        CharacterValue::Zero => Complex64::new(0.0, 0.0),
        CharacterValue::Root(r) => r.to_complex() * gauss_sum_direct(&prim) * mu as f64,
    }
}

/// `|τ(χ_f)·τ(χ̄_f) − σ·f|` with `σ = −1` for odd χ and `+1` for even χ.
pub fn gauss_product_check(chi: &DirichletCharacter) -> f64 {
    let prim = chi.primitive_part();
    let f = prim.modulus() as f64;
    let sigma = match chi.parity() {
        Parity::Odd => -1.0,
        Parity::Even => 1.0,
    };
    let product = gauss_sum_direct(&prim) * gauss_sum_direct(&prim.conj());
    (product - Complex64::new(sigma * f, 0.0)).norm()
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub character: DirichletCharacter,
    /// `τ(χ̄)`, the diagonal entry of `T`.
    pub gauss_conj: Complex64,
    pub eigenvalue: Complex64,
}

/// Eigenvalues of the sine (odd χ) or cosine (even χ) matrix, one per
/// character, in canonical character order.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub kind: Kind,
    pub modulus: u64,
    pub pairs: Vec<Eigenpair>,
}

impl SpectralData {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.pairs.iter().map(|p| p.eigenvalue).collect()
    }

    /// Diagonal of `T = diag(τ(χ̄))`.
    pub fn diagonal(&self) -> Vec<Complex64> {
        self.pairs.iter().map(|p| p.gauss_conj).collect()
    }

    pub fn characters(&self) -> Vec<&DirichletCharacter> {
        self.pairs.iter().map(|p| &p.character).collect()
    }

    pub fn zero_count(&self) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.eigenvalue.norm() < ZERO_EIGENVALUE_TOL)
            .count()
    }

    pub fn abs_determinant(&self) -> f64 {
        self.pairs.iter().map(|p| p.eigenvalue.norm()).product()
    }

    pub fn determinant(&self) -> Complex64 {
        self.pairs.iter().map(|p| p.eigenvalue).product()
    }
}

pub fn spectrum(n: u64, kind: Kind) -> Result<SpectralData> {
    let pairs = characters_of_parity(n, kind.parity())?
        .into_iter()
        .map(|character| {
            let gauss_conj = gauss_sum_direct(&character.conj());
            let eigenvalue = match kind {
                Kind::Sine => -Complex64::i() * gauss_conj,
                Kind::Cosine => gauss_conj,
            };
            Eigenpair {
                character,
                gauss_conj,
                eigenvalue,
            }
        })
        .collect();
    Ok(SpectralData {
        kind,
        modulus: n,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{enumerate_characters, UnitGroupBasis};
    use crate::ntheory::gcd;
    use std::f64::consts::TAU;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    // Σ_{gcd(k,n)=1} ζ_n^k by plain floating-point summation
    fn ramanujan_sum(n: u64) -> Complex64 {
        (1..=n)
            .filter(|&k| gcd(k, n) == 1)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
            .sum()
    }

    fn odd_char(n: u64) -> DirichletCharacter {
        characters_of_parity(n, Parity::Odd).unwrap().remove(0)
    }

    #[test]
    fn direct_examples() {
        let t = gauss_sum_direct(&odd_char(3));
        assert!(close(t, Complex64::new(0.0, 3f64.sqrt()), 1e-12), "{t}");
        let t = gauss_sum_direct(&odd_char(4));
        assert!(close(t, Complex64::new(0.0, 2.0), 1e-12), "{t}");
        for n in 3..60u64 {
            let p = UnitGroupBasis::new(n).unwrap().principal();
            let mu = ntheory::moebius(n).unwrap() as f64;
            assert!(close(gauss_sum_direct(&p), ramanujan_sum(n), 1e-10));
            assert!(close(gauss_sum_direct(&p), Complex64::new(mu, 0.0), 1e-10));
        }
        let trivial = UnitGroupBasis::any_modulus(1).unwrap().principal();
        assert!(close(
            gauss_sum_direct(&trivial),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
    }

    #[test]
    fn reduced_examples() {
        for chi in enumerate_characters(7).unwrap().into_iter().skip(1) {
            assert!(close(
                gauss_sum_reduced(&chi),
                gauss_sum_direct(&chi),
                1e-12
            ));
        }
        let quad9 = enumerate_characters(9)
            .unwrap()
            .into_iter()
            .find(|c| c.order() == 2)
            .unwrap();
        assert_eq!(gauss_sum_reduced(&quad9), Complex64::new(0.0, 0.0));
        assert!(gauss_sum_direct(&quad9).norm() < 1e-12);

        let c3 = enumerate_characters(15)
            .unwrap()
            .into_iter()
            .find(|c| c.is_odd() && c.conductor() == 3)
            .unwrap();
        let prim = c3.primitive_part();
        let expected = prim.evaluate(5).to_complex() * gauss_sum_direct(&prim) * -1.0;
        assert!(close(gauss_sum_reduced(&c3), expected, 1e-12));
        assert!(close(gauss_sum_reduced(&c3), gauss_sum_direct(&c3), 1e-10));
    }

    #[test]
    fn reduction_agrees_with_direct() {
        for n in 3..=100u64 {
            for chi in enumerate_characters(n).unwrap() {
                let d = gauss_sum_direct(&chi);
                let r = gauss_sum_reduced(&chi);
                assert!(close(d, r, 1e-9), "n = {n}, {chi:?}: {d} vs {r}");
            }
        }
    }

    #[test]
    fn product_examples() {
        assert!(gauss_product_check(&odd_char(3)) < 1e-12);
        let even5 = enumerate_characters(5)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_odd() && !c.is_principal())
            .unwrap();
        assert!(gauss_product_check(&even5) < 1e-10);
        let trivial = UnitGroupBasis::any_modulus(1).unwrap().principal();
        assert_eq!(gauss_product_check(&trivial), 0.0);
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(3, Kind::Sine).unwrap();
        assert_eq!(s.pairs.len(), 1);
        assert!(close(
            s.eigenvalues()[0],
            Complex64::new(3f64.sqrt(), 0.0),
            1e-12
        ));

        let s = spectrum(9, Kind::Sine).unwrap();
        assert!(s.zero_count() > 0);

        let s = spectrum(4, Kind::Sine).unwrap();
        assert!(close(s.eigenvalues()[0], Complex64::new(2.0, 0.0), 1e-12));

        let c = spectrum(4, Kind::Cosine).unwrap();
        assert_eq!(c.zero_count(), 1);
    }

    #[test]
    fn zero_eigenvalues_iff_criterion() {
        for n in 3..=200u64 {
            let sf = ntheory::is_squarefree(n).unwrap();
            let s = spectrum(n, Kind::Sine).unwrap();
            let c = spectrum(n, Kind::Cosine).unwrap();
            assert_eq!(s.zero_count() > 0, !(sf || n == 4), "sine n = {n}");
            assert_eq!(c.zero_count() > 0, !sf, "cosine n = {n}");
            for p in s.pairs.iter().chain(&c.pairs) {
                let m = p.eigenvalue.norm();
                assert!(
                    !(ZERO_EIGENVALUE_TOL..=0.999).contains(&m),
                    "n = {n}: |λ| = {m}"
                );
            }
        }
    }
}
