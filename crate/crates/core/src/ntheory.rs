//! Elementary arithmetic on residues mod `n`.
//!
//! Everything here works by trial division; moduli are expected to be small
//! (a few times 10⁵ at most).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reduces `x` into `[0, n)`.
pub fn reduce(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

pub fn is_coprime(k: i64, n: u64) -> bool {
    gcd(reduce(k, n), n) == 1
}

/// Prime factorization as ascending `(p, e)` pairs. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

pub fn moebius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    Ok(moebius(n)? != 0)
}

/// Smallest prime whose square divides `n`, if any.
pub fn square_divisor(n: u64) -> Result<Option<u64>> {
    Ok(factorize(n)?
        .into_iter()
        .find(|&(_, e)| e > 1)
        .map(|(p, _)| p))
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n)? {
        let base = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(base.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// The inverse of `k` mod `n`, reduced to `[1, n-1]` (or 0 when `n = 1`).
pub fn mod_inverse(k: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let (mut r0, mut r1) = (n as i128, reduce(k, n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    Ok(t0.rem_euclid(n as i128) as u64)
}

/// The number of divisors `q >= 3` of `n` with `k ≡ 1 (mod q)`.
pub fn lambda_count(k: i64, n: u64) -> Result<u32> {
    if !is_coprime(k, n) {
        return Err(Error::NotCoprime { k, n });
    }
    Ok(divisors(n)?
        .into_iter()
        .filter(|&q| q >= 3 && reduce(k - 1, q) == 0)
        .count() as u32)
}

/// Number of divisors of `n` that are at least 3; an upper bound for
/// `lambda_count(k) + lambda_count(-k)`.
pub fn large_divisor_count(n: u64) -> Result<u32> {
    Ok(divisors(n)?.into_iter().filter(|&q| q >= 3).count() as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.as_i64() as f64
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// A residue class written as `sign · representative (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalResidue {
    pub sign: Sign,
    pub representative: u64,
}

/// The units mod `n` up to sign: `{l : 1 <= l <= n/2, gcd(l, n) = 1}` in
/// ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeSet {
    modulus: u64,
    members: Vec<u64>,
    // residue mod n -> position in `members` of the representative of ±residue
    position: Vec<Option<usize>>,
}

impl RepresentativeSet {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::ModulusTooSmall { n, min: 3 });
        }
        let members: Vec<u64> = (1..=n / 2).filter(|&l| gcd(l, n) == 1).collect();
        let mut position = vec![None; n as usize];
        for (i, &l) in members.iter().enumerate() {
            position[l as usize] = Some(i);
            position[(n - l) as usize] = Some(i);
        }
        Ok(RepresentativeSet {
            modulus: n,
            members,
            position,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of `l` in the member list, if it is a member.
    pub fn index_of(&self, l: u64) -> Option<usize> {
        self.members.binary_search(&l).ok()
    }

    /// Position of the representative of `±x`.
    pub fn class_index(&self, x: i64) -> Result<usize> {
        self.position[reduce(x, self.modulus) as usize].ok_or(Error::NotCoprime {
            k: x,
            n: self.modulus,
        })
    }

    /// Writes `x ≡ ε·l (mod n)` with `l` a member.
    pub fn canonical_residue(&self, x: i64) -> Result<CanonicalResidue> {
        let r = reduce(x, self.modulus);
        let idx = self.class_index(x)?;
        let l = self.members[idx];
        let sign = if l == r { Sign::Plus } else { Sign::Minus };
        Ok(CanonicalResidue {
            sign,
            representative: l,
        })
    }
}

pub fn representative_set(n: u64) -> Result<RepresentativeSet> {
    RepresentativeSet::new(n)
}

pub fn canonical_residue(x: i64, reps: &RepresentativeSet) -> Result<CanonicalResidue> {
    reps.canonical_residue(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    fn brute_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    fn brute_moebius(n: u64) -> i64 {
        let mut m = n;
        let mut count = 0;
        for p in 2..=n {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                count += 1;
            }
        }
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(15).unwrap(), 8);
        assert_eq!(euler_phi(4).unwrap(), 2);
        assert_eq!(euler_phi(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(9).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(15).unwrap());
        assert!(!is_squarefree(9).unwrap());
        assert!(!is_squarefree(4).unwrap());
        assert_eq!(square_divisor(18).unwrap(), Some(3));
        assert_eq!(square_divisor(12).unwrap(), Some(2));
        assert_eq!(square_divisor(15).unwrap(), None);
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(15).unwrap(), vec![1, 3, 5, 15]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn agrees_with_brute_force_up_to_ten_thousand() {
        for n in 1..=10_000u64 {
            assert_eq!(euler_phi(n).unwrap(), brute_phi(n), "phi({n})");
            assert_eq!(divisors(n).unwrap(), brute_divisors(n), "divisors({n})");
        }
        // brute moebius is quadratic-ish; still fine at this range
        for n in 1..=10_000u64 {
            assert_eq!(moebius(n).unwrap(), brute_moebius(n), "mu({n})");
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, 15).unwrap(), 1);
        assert_eq!(mod_inverse(4, 15).unwrap(), 4);
        assert_eq!(mod_inverse(2, 15).unwrap(), 8);
        assert_eq!(mod_inverse(-2, 15).unwrap(), 7);
        assert_eq!(mod_inverse(3, 15), Err(Error::NotCoprime { k: 3, n: 15 }));
    }

    #[test]
    fn inverse_matches_search() {
        for n in 2..200u64 {
            for k in 1..n {
                let found = (1..n).find(|x| (k * x) % n == 1);
                match found {
                    Some(x) => assert_eq!(mod_inverse(k as i64, n).unwrap(), x),
                    None => assert!(mod_inverse(k as i64, n).is_err()),
                }
            }
        }
    }

    #[test]
    fn representative_examples() {
        assert_eq!(representative_set(15).unwrap().members(), &[1, 2, 4, 7]);
        assert_eq!(representative_set(7).unwrap().members(), &[1, 2, 3]);
        assert_eq!(representative_set(4).unwrap().members(), &[1]);
        assert_eq!(representative_set(3).unwrap().members(), &[1]);
        assert_eq!(
            representative_set(2),
            Err(Error::ModulusTooSmall { n: 2, min: 3 })
        );
    }

    #[test]
    fn canonical_residue_examples() {
        let r = representative_set(15).unwrap();
        let c = r.canonical_residue(13).unwrap();
        assert_eq!((c.sign, c.representative), (Sign::Minus, 2));
        let x = 7 * mod_inverse(4, 15).unwrap() as i64;
        let c = r.canonical_residue(x).unwrap();
        assert_eq!((c.sign, c.representative), (Sign::Minus, 2));
        let c = r.canonical_residue(1).unwrap();
        assert_eq!((c.sign, c.representative), (Sign::Plus, 1));
        assert!(r.canonical_residue(5).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_count(1, 15).unwrap(), 3);
        assert_eq!(lambda_count(13, 15).unwrap(), 1);
        assert_eq!(lambda_count(2, 15).unwrap(), 0);
        assert_eq!(lambda_count(-1, 15).unwrap(), 0);
        assert!(lambda_count(6, 15).is_err());
    }

    #[test]
    fn representative_set_size_is_half_phi() {
        for n in 3..=500u64 {
            let r = representative_set(n).unwrap();
            assert_eq!(r.len() as u64, euler_phi(n).unwrap() / 2, "n = {n}");
            assert!(r.members().windows(2).all(|w| w[0] < w[1]));
            for k in 1..n {
                if gcd(k, n) != 1 {
                    continue;
                }
                let hits = r
                    .members()
                    .iter()
                    .filter(|&&l| l == k || l == n - k)
                    .count();
                assert_eq!(hits, 1, "n = {n}, k = {k}");
            }
        }
    }
}
