//! Dirichlet characters mod `n`.
//!
//! The unit group `(Z/nZ)ˣ` is split by CRT into prime-power components, each
//! given fixed cyclic generators:
//!
//! * odd `p^e`: the smallest primitive root mod `p^e`;
//! * `2`: no generators (trivial group);
//! * `4`: `3`, of order 2;
//! * `2^e`, `e >= 3`: `2^e - 1` (order 2) and `5` (order `2^(e-2)`).
//!
//! A character is an exponent vector over these generators, so `χ(g_i)` is
//! `exp(2πi · a_i / o_i)`. Values are exact [`RootOfUnity`] pairs; complex
//! floats are only a view.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{lcm, RootOfUnity};
use crate::error::{Error, Result};
use crate::ntheory::{self, gcd, reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicFactor {
    /// Generator as a residue mod the component's prime power.
    pub generator: u64,
    pub order: u64,
}

/// One prime-power factor `(Z/p^eZ)ˣ` of the unit group.
#[derive(Debug, Clone)]
pub struct Component {
    pub prime: u64,
    pub exponent: u32,
    pub prime_power: u64,
    pub factors: Vec<CyclicFactor>,
    // residue mod prime_power -> exponents over `factors`
    dlog: Vec<Option<Vec<u64>>>,
}

impl Component {
    fn new(prime: u64, exponent: u32) -> Self {
        let pe = prime.pow(exponent);
        let factors = match (prime, exponent) {
            (2, 1) => vec![],
            (2, 2) => vec![CyclicFactor {
                generator: 3,
                order: 2,
            }],
            (2, e) => vec![
                CyclicFactor {
                    generator: pe - 1,
                    order: 2,
                },
                CyclicFactor {
                    generator: 5,
                    order: 1 << (e - 2),
                },
            ],
            (p, _) => {
                let phi = (p - 1) * pe / p;
                let g = (2..pe)
                    .find(|&g| g % p != 0 && multiplicative_order(g, pe) == phi)
                    .expect("odd prime powers have primitive roots");
                vec![CyclicFactor {
                    generator: g,
                    order: phi,
                }]
            }
        };

        let mut dlog = vec![None; pe as usize];
        let orders: Vec<u64> = factors.iter().map(|f| f.order).collect();
        for exps in mixed_radix(&orders) {
            let r = factors.iter().zip(&exps).fold(1 % pe, |acc, (f, &a)| {
                acc * pow_mod(f.generator, a, pe) % pe
            });
            debug_assert!(dlog[r as usize].is_none());
            dlog[r as usize] = Some(exps);
        }

        Component {
            prime,
            exponent,
            prime_power: pe,
            factors,
            dlog,
        }
    }

    /// Exponents of `x` over this component's generators.
    pub fn discrete_log(&self, x: u64) -> Option<&[u64]> {
        self.dlog[(x % self.prime_power) as usize].as_deref()
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * g % m;
        k += 1;
    }
    k
}

// All vectors `a` with `0 <= a_i < radices_i`, lexicographic (first index most significant).
fn mixed_radix(radices: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &r in radices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..r).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// CRT decomposition of `(Z/nZ)ˣ` with fixed generators and full discrete-log tables.
#[derive(Debug, Clone)]
pub struct UnitGroupBasis {
    modulus: u64,
    components: Vec<Component>,
    orders: Vec<u64>,
    // generators lifted to residues mod n (≡ 1 on every other component)
    lifted: Vec<u64>,
    exponent: u64,
}

impl UnitGroupBasis {
    /// Public entry point; the group is only interesting for `n >= 3`.
    pub fn new(n: u64) -> Result<Arc<Self>> {
        if n < 3 {
            return Err(Error::ModulusTooSmall { n, min: 3 });
        }
        Self::any_modulus(n)
    }

    /// Same as [`UnitGroupBasis::new`] but also accepts `n = 1, 2`, which arise as
    /// conductors.
    pub fn any_modulus(n: u64) -> Result<Arc<Self>> {
        let components: Vec<Component> = ntheory::factorize(n)?
            .into_iter()
            .map(|(p, e)| Component::new(p, e))
            .collect();
        let mut orders = Vec::new();
        let mut lifted = Vec::new();
        for c in &components {
            let cofactor = n / c.prime_power;
            for f in &c.factors {
                orders.push(f.order);
                lifted.push(crt_pair(f.generator, c.prime_power, 1, cofactor));
            }
        }
        let exponent = orders.iter().copied().fold(1, lcm);
        Ok(Arc::new(UnitGroupBasis {
            modulus: n,
            components,
            orders,
            lifted,
            exponent,
        }))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Orders of the cyclic factors, in exponent-vector order.
    pub fn factor_orders(&self) -> &[u64] {
        &self.orders
    }

    /// Generators as residues mod `n`, in exponent-vector order.
    pub fn generators(&self) -> &[u64] {
        &self.lifted
    }

    /// Exponent of the group (lcm of factor orders).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn group_order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent vector of `k`, or `None` when `gcd(k, n) > 1`.
    pub fn discrete_log(&self, k: i64) -> Option<Vec<u64>> {
        let x = reduce(k, self.modulus);
        let mut out = Vec::with_capacity(self.orders.len());
        for c in &self.components {
            out.extend_from_slice(c.discrete_log(x)?);
        }
        Some(out)
    }

    /// All characters in lexicographic exponent order.
    pub fn characters(self: &Arc<Self>) -> Vec<DirichletCharacter> {
        mixed_radix(&self.orders)
            .into_iter()
            .map(|e| DirichletCharacter::from_exponents(self.clone(), e))
            .collect()
    }

    pub fn principal(self: &Arc<Self>) -> DirichletCharacter {
        DirichletCharacter::from_exponents(self.clone(), vec![0; self.orders.len()])
    }
}

// x ≡ a mod m, x ≡ b mod k with gcd(m, k) = 1; result in [0, mk).
fn crt_pair(a: u64, m: u64, b: u64, k: u64) -> u64 {
    let mk = m * k;
    if mk == 1 {
        return 0;
    }
    // x = a + m·t, m·t ≡ b - a (mod k)
    let t = if k == 1 {
        0
    } else {
        let minv = ntheory::mod_inverse(m as i64, k).expect("coprime moduli");
        reduce(b as i64 - a as i64, k) * minv % k
    };
    (a + m * t) % mk
}

/// `χ(k)`: zero off the units, otherwise an exact root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterValue {
    Zero,
    Root(RootOfUnity),
}

impl CharacterValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            CharacterValue::Zero => Complex64::new(0.0, 0.0),
            CharacterValue::Root(r) => r.to_complex(),
        }
    }

    pub fn root(&self) -> Option<RootOfUnity> {
        match self {
            CharacterValue::Zero => None,
            CharacterValue::Root(r) => Some(*r),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, CharacterValue::Root(r) if r.is_one())
    }
}

/// A Dirichlet character, stored as exponents over the generators of its basis.
#[derive(Clone)]
pub struct DirichletCharacter {
    basis: Arc<UnitGroupBasis>,
    exponents: Vec<u64>,
    parity: Parity,
    conductor: OnceLock<u64>,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("modulus", &self.modulus())
            .field("exponents", &self.exponents)
            .field("parity", &self.parity)
            .finish()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// Exponents are reduced mod the factor orders.
    pub fn from_exponents(basis: Arc<UnitGroupBasis>, exponents: Vec<u64>) -> Self {
        assert_eq!(
            exponents.len(),
            basis.orders.len(),
            "exponent vector length"
        );
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(&basis.orders)
            .map(|(&a, &o)| a % o)
            .collect();
        let mut chi = DirichletCharacter {
            basis,
            exponents,
            parity: Parity::Even,
            conductor: OnceLock::new(),
        };
        let n = chi.modulus() as i64;
        if chi.evaluate(n - 1).root().and_then(|r| r.as_sign()) == Some(-1) {
            chi.parity = Parity::Odd;
        }
        chi
    }

    /// The character taking the given values on `basis.generators()`.
    pub fn from_generator_values(
        basis: Arc<UnitGroupBasis>,
        values: &[RootOfUnity],
    ) -> Option<Self> {
        if values.len() != basis.orders.len() {
            return None;
        }
        let mut exps = Vec::with_capacity(values.len());
        for (v, &o) in values.iter().zip(&basis.orders) {
            if o % v.order() != 0 {
                return None;
            }
            exps.push(v.numerator() * (o / v.order()));
        }
        Some(Self::from_exponents(basis, exps))
    }

    pub fn basis(&self) -> &Arc<UnitGroupBasis> {
        &self.basis
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// Order of χ as an element of the character group.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.basis.orders)
            .map(|(&a, &o)| o / gcd(a, o))
            .fold(1, lcm)
    }

    pub fn evaluate(&self, k: i64) -> CharacterValue {
        let Some(dlog) = self.basis.discrete_log(k) else {
            return CharacterValue::Zero;
        };
        let m = self.basis.exponent;
        let a = dlog
            .iter()
            .zip(&self.exponents)
            .zip(&self.basis.orders)
            .fold(0u64, |acc, ((&d, &e), &o)| (acc + d * e % o * (m / o)) % m);
        CharacterValue::Root(RootOfUnity::new(a, m))
    }

    pub fn evaluate_complex(&self, k: i64) -> Complex64 {
        self.evaluate(k).to_complex()
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(&self.basis.orders)
            .map(|(&a, &o)| (o - a) % o)
            .collect();
        Self::from_exponents(self.basis.clone(), exps)
    }

    /// Smallest divisor `d` of `n` such that `χ(k) = 1` for every unit `k ≡ 1 (mod d)`.
    pub fn conductor(&self) -> u64 {
        *self.conductor.get_or_init(|| {
            let n = self.modulus();
            let units: Vec<u64> = (1..=n).filter(|&k| gcd(k, n) == 1).collect();
            ntheory::divisors(n)
                .expect("n > 0")
                .into_iter()
                .find(|&d| {
                    units
                        .iter()
                        .filter(|&&k| (k - 1) % d == 0)
                        .all(|&k| self.evaluate(k as i64).is_one())
                })
                .expect("d = n always qualifies")
        })
    }

    /// The primitive character mod `conductor()` that induces χ.
    pub fn primitive_part(&self) -> DirichletCharacter {
        let n = self.modulus();
        let f = self.conductor();
        let basis_f = UnitGroupBasis::any_modulus(f).expect("f > 0");
        let values: Vec<RootOfUnity> = basis_f
            .generators()
            .iter()
            .map(|&g| {
                let lift = (0..)
                    .map(|t| g + t * f)
                    .find(|&l| gcd(l, n) == 1)
                    .expect("a unit lift exists");
                self.evaluate(lift as i64).root().expect("lift is a unit")
            })
            .collect();
        DirichletCharacter::from_generator_values(basis_f, &values)
            .expect("χ is trivial on units ≡ 1 mod its conductor")
    }

    /// The character mod `n` obtained by composing with reduction mod `self.modulus()`.
    pub fn induce(&self, n: u64) -> Result<DirichletCharacter> {
        let q = self.modulus();
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        if !n.is_multiple_of(q) {
            return Err(Error::NotDivisor { q, n });
        }
        let basis_n = UnitGroupBasis::any_modulus(n)?;
        let values: Vec<RootOfUnity> = basis_n
            .generators()
            .iter()
            .map(|&g| self.evaluate(g as i64).root().expect("g is a unit mod q"))
            .collect();
        Ok(DirichletCharacter::from_generator_values(basis_n, &values)
            .expect("generator values have compatible orders"))
    }
}

pub fn unit_group_basis(n: u64) -> Result<Arc<UnitGroupBasis>> {
    UnitGroupBasis::new(n)
}

pub fn enumerate_characters(n: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(UnitGroupBasis::new(n)?.characters())
}

/// Characters of the given parity, in canonical order.
pub fn characters_of_parity(n: u64, parity: Parity) -> Result<Vec<DirichletCharacter>> {
    Ok(enumerate_characters(n)?
        .into_iter()
        .filter(|c| c.parity() == parity)
        .collect())
}

pub fn evaluate(chi: &DirichletCharacter, k: i64) -> CharacterValue {
    chi.evaluate(k)
}

pub fn parity(chi: &DirichletCharacter) -> Parity {
    chi.parity()
}

pub fn conductor(chi: &DirichletCharacter) -> u64 {
    chi.conductor()
}

pub fn primitive_part(chi: &DirichletCharacter) -> DirichletCharacter {
    chi.primitive_part()
}

pub fn induced_character(base: &DirichletCharacter, n: u64) -> Result<DirichletCharacter> {
    base.induce(n)
}
