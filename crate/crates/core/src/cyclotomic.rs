//! Exact arithmetic with roots of unity.
//!
//! A [`CyclotomicInteger`] is an integer combination of powers of `ζ_m`.
//! Equality is decided by reducing modulo the cyclotomic polynomial `Φ_m`,
//! so sums like `Σ_χ χ(k)` can be compared with integers without any
//! floating-point tolerance.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ntheory::{divisors, gcd};

/// `exp(2πi · numerator / order)`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    numerator: u64,
    order: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity {
        numerator: 0,
        order: 1,
    };

    pub fn new(numerator: u64, order: u64) -> Self {
        assert!(order > 0, "root of unity with order 0");
        let a = numerator % order;
        let g = gcd(a, order);
        RootOfUnity {
            numerator: a / g,
            order: order / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    /// Exact multiplicative order.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// `Some(±1)` when the value is real.
    pub fn as_sign(&self) -> Option<i64> {
        match self.order {
            1 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn conj(&self) -> Self {
        RootOfUnity::new(self.order - self.numerator, self.order)
    }

    pub fn pow(&self, e: u64) -> Self {
        RootOfUnity::new(
            ((self.numerator as u128 * e as u128) % self.order as u128) as u64,
            self.order,
        )
    }

    pub fn to_complex(&self) -> Complex64 {
        angle_to_complex(self.numerator, self.order)
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let m = lcm(self.order, rhs.order);
        RootOfUnity::new(
            self.numerator * (m / self.order) + rhs.numerator * (m / rhs.order),
            m,
        )
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `exp(2πi · a / m)`, with the angle reduced to the first quadrant first so
/// that multiples of `π/2` come out exact (`cos(π/2)` is `0.0`, not `6e-17`).
pub fn angle_to_complex(a: u64, m: u64) -> Complex64 {
    let a = (a % m) as u128;
    let m128 = m as u128;
    let quadrant = 4 * a / m128;
    let rest = 4 * a - quadrant * m128;
    let t = FRAC_PI_2 * rest as f64 / m as f64;
    let (s, c) = t.sin_cos();
    match quadrant {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// Coefficients (constant term first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m > 0);
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache poisoned").get(&m) {
        return p.clone();
    }
    // x^m - 1 = Π_{d | m} Φ_d
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in divisors(m).expect("m > 0") {
        if d < m {
            poly = exact_quotient(&poly, &cyclotomic_polynomial(d));
        }
    }
    cache
        .lock()
        .expect("cache poisoned")
        .insert(m, poly.clone());
    poly
}

// Quotient of `num` by a monic `den`, asserting there is no remainder.
fn exact_quotient(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

// Remainder of `num` modulo a monic `den`.
fn remainder(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() > dd {
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            for (j, &dj) in den.iter().enumerate() {
                rem[i - dd + j] -= c * dj;
            }
        }
        rem.truncate(dd);
    }
    rem
}

/// `Σ_a c_a ζ_m^a` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicInteger {
    order: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(order: u64) -> Self {
        assert!(order > 0);
        CyclotomicInteger {
            order,
            coeffs: vec![0; order as usize],
        }
    }

    pub fn from_integer(order: u64, value: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Adds `times · root`; the root's order must divide `self.order()`.
    pub fn add_root(&mut self, root: RootOfUnity, times: i64) {
        assert_eq!(
            self.order % root.order(),
            0,
            "root of order {} does not live in Q(ζ_{})",
            root.order(),
            self.order
        );
        let a = root.numerator() * (self.order / root.order());
        self.coeffs[a as usize] += times;
    }

    pub fn add_integer(&mut self, value: i64) {
        self.coeffs[0] += value;
    }

    /// Canonical form: remainder modulo `Φ_m`, of length `φ(m)`.
    pub fn reduced(&self) -> Vec<i64> {
        remainder(&self.coeffs, &cyclotomic_polynomial(self.order))
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    /// The integer this element equals, if it is rational.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        if r[1..].iter().all(|&c| c == 0) {
            Some(r[0])
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(a, &c)| angle_to_complex(a as u64, self.order) * c as f64)
            .sum()
    }
}
