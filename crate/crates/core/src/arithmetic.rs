//! Rational arithmetic behind the counterexamples: primality, power residues,
//! local square classes, and decomposition groups in biquadratic fields.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::ArithmeticError;
use crate::group::{Group, Subgroup};
use crate::linalg::factor_u64;

/// Default exclusive upper bound for [`find_q`].
pub const DEFAULT_Q_BOUND: u64 = 1 << 32;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve prime bases suffice below 2⁶⁴.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Euler's criterion for `ℓ`-th powers: `q^((p-1)/ℓ) ≡ 1 (mod p)`.
pub fn is_ellth_power_residue(q: u64, p: u64, ell: u64) -> Result<bool, ArithmeticError> {
    if ell == 0 || p < 2 || !(p - 1).is_multiple_of(ell) {
        return Err(ArithmeticError::ResidueUndefined { ell, p });
    }
    Ok(pow_mod(q, (p - 1) / ell, p) == 1)
}

/// The residue `q^((p-1)/ℓ) mod p`, used as a witness in certificates.
pub fn residue_witness(q: u64, p: u64, ell: u64) -> u64 {
    pow_mod(q, (p - 1) / ell, p)
}

fn check_prime(x: u64) -> Result<(), ArithmeticError> {
    if is_prime(x) {
        Ok(())
    } else {
        Err(ArithmeticError::NotPrime(x))
    }
}

/// Least prime `p ≥ start` with `p ≡ 1 (mod ℓⁿ)`.
pub fn find_p(ell: u64, n: u32, start: u64) -> Result<u64, ArithmeticError> {
    check_prime(ell)?;
    if n == 0 {
        return Err(ArithmeticError::ZeroExponent);
    }
    let step = ell.checked_pow(n).ok_or(ArithmeticError::Overflow)?;
    let start = start.max(2);
    // smallest candidate ≥ start in the class of 1
    let offset = (start - 1) % step;
    let mut x = if offset == 0 {
        start
    } else {
        (start - offset)
            .checked_add(step)
            .ok_or(ArithmeticError::Overflow)?
    };
    if x == 1 {
        x = x.checked_add(step).ok_or(ArithmeticError::Overflow)?;
    }
    loop {
        if is_prime(x) {
            return Ok(x);
        }
        x = x.checked_add(step).ok_or(ArithmeticError::Overflow)?;
    }
}

/// The congruence modulus imposed on `q`: 8 for `ℓ = 2`, `ℓ²` otherwise.
pub fn q_modulus(ell: u64) -> u64 {
    if ell == 2 {
        8
    } else {
        ell * ell
    }
}

/// Least odd prime `q < bound`, `q ≠ p`, with `q ≡ 1 (mod q_modulus(ℓ))` and
/// `q` not an `ℓ`-th power modulo `p`.
pub fn find_q(ell: u64, p: u64, bound: u64) -> Result<u64, ArithmeticError> {
    check_prime(ell)?;
    check_prime(p)?;
    if !(p - 1).is_multiple_of(ell) {
        return Err(ArithmeticError::ResidueUndefined { ell, p });
    }
    if ell.checked_mul(ell).is_none() {
        return Err(ArithmeticError::Overflow);
    }
    let step = q_modulus(ell);
    let mut q = 1 + step;
    while q < bound {
        if q != p && is_prime(q) && !is_ellth_power_residue(q, p, ell)? {
            return Ok(q);
        }
        q = match q.checked_add(step) {
            Some(v) => v,
            None => break,
        };
    }
    Err(ArithmeticError::SearchExhausted { bound })
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

pub fn is_squarefree(d: i64) -> bool {
    d != 0 && factor_u64(d.unsigned_abs()).iter().all(|&(_, k)| k == 1)
}

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => f.pad(&p.to_string()),
            Place::Infinite => f.pad("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(Place::Infinite);
        }
        let p: u64 = s.parse().map_err(|_| ArithmeticError::NotPrime(0))?;
        check_prime(p)?;
        Ok(Place::Prime(p))
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Whether a squarefree `d` is a square in `Q_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSquareClass {
    pub place: Place,
    #[serde(serialize_with = "crate::cohomology::as_decimal")]
    pub value: i64,
    pub is_square: bool,
}

/// Square test for squarefree `d`: at odd `p`, `p ∤ d` and `d` a residue; at 2,
/// `d ≡ 1 (mod 8)`; at infinity, `d > 0`.
pub fn local_square(d: i64, place: Place) -> LocalSquareClass {
    let is_square = match place {
        Place::Infinite => d > 0,
        Place::Prime(2) => d.rem_euclid(8) == 1,
        Place::Prime(p) => d.rem_euclid(p as i64) != 0 && jacobi(d, p) == 1,
    };
    LocalSquareClass {
        place,
        value: d,
        is_square,
    }
}

/// Two independent square classes `a, b`, defining `L = Q(√a, √b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KummerPair {
    #[serde(serialize_with = "crate::cohomology::as_decimal")]
    a: i64,
    #[serde(serialize_with = "crate::cohomology::as_decimal")]
    b: i64,
}

impl KummerPair {
    pub fn new(a: i64, b: i64) -> Result<Self, ArithmeticError> {
        let bad = |reason| Err(ArithmeticError::KummerPair { a, b, reason });
        if a == 0 || b == 0 {
            return bad("entries must be nonzero");
        }
        if !is_squarefree(a) || !is_squarefree(b) {
            return bad("entries must be squarefree");
        }
        if a == 1 || b == 1 {
            return bad("entries must not be squares");
        }
        if a == b {
            return bad("entries must have independent square classes");
        }
        if a.checked_mul(b).is_none() {
            return bad("product leaves the 64-bit range");
        }
        Ok(KummerPair { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Squarefree representative of the class of `ab`.
    pub fn ab(&self) -> i64 {
        let g = gcd(self.a.unsigned_abs(), self.b.unsigned_abs()) as i64;
        (self.a / g) * (self.b / g)
    }

    /// The nontrivial classes `[a, b, ab]`.
    pub fn classes(&self) -> [i64; 3] {
        [self.a, self.b, self.ab()]
    }

    /// `Gal(L/Q)` as the Klein four group: bit 0 of an element index flips `√a`,
    /// bit 1 flips `√b`.
    pub fn galois_group(&self) -> Group {
        Group::direct_product_cyclic(&[2, 2])
    }

    /// Places of `Q` ramifying in `L`.
    pub fn ramified_places(&self) -> Vec<Place> {
        let mut out = Vec::new();
        if self.classes().iter().any(|d| d.rem_euclid(4) != 1) {
            out.push(Place::Prime(2));
        }
        let mut odd: Vec<u64> = factor_u64(self.a.unsigned_abs())
            .into_iter()
            .chain(factor_u64(self.b.unsigned_abs()))
            .map(|(p, _)| p)
            .filter(|&p| p != 2)
            .collect();
        odd.sort_unstable();
        odd.dedup();
        out.extend(odd.into_iter().map(Place::Prime));
        if self.a < 0 || self.b < 0 {
            out.push(Place::Infinite);
        }
        out
    }

    pub fn is_ramified(&self, place: Place) -> bool {
        self.ramified_places().contains(&place)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Local square classes of `a`, `b`, `ab` at `place`.
pub fn local_square_table(pair: &KummerPair, place: Place) -> [LocalSquareClass; 3] {
    pair.classes().map(|d| local_square(d, place))
}

/// `D_v = { g : g fixes √d for every d ∈ {a, b, ab} that is a square at v }`.
pub fn decomposition_subgroup(pair: &KummerPair, place: Place) -> Subgroup {
    let g = pair.galois_group();
    let table = local_square_table(pair, place);
    // g fixes √a iff bit 0 is clear, √b iff bit 1 is clear, √ab iff the bits agree
    let fixes = |x: usize, class: usize| match class {
        0 => x & 1 == 0,
        1 => x & 2 == 0,
        _ => (x & 1 == 0) == (x & 2 == 0),
    };
    let elements: Vec<usize> = g
        .elements()
        .filter(|&x| (0..3).all(|c| !table[c].is_square || fixes(x, c)))
        .collect();
    Subgroup::from_elements(&g, &elements).expect("annihilator of square classes is a subgroup")
}

/// `Σ₀`: places with non-cyclic decomposition group, as sorted decimal labels.
/// Only ramified finite places can qualify.
pub fn sigma0_biquadratic(pair: &KummerPair) -> Vec<String> {
    let mut primes: Vec<u64> = pair
        .ramified_places()
        .into_iter()
        .filter_map(|v| match v {
            Place::Prime(p) => Some(p),
            Place::Infinite => None,
        })
        .filter(|&p| !decomposition_subgroup(pair, Place::Prime(p)).is_cyclic())
        .collect();
    primes.sort_unstable();
    primes.into_iter().map(|p| p.to_string()).collect()
}
