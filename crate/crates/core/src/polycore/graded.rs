use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::laurent::{divide_exact, Division, LaurentPoly};
use crate::error::PolyError;

/// The `k`-th cyclotomic polynomial, obtained from `t^k - 1` by dividing out
/// `Phi_d` for every proper divisor `d` of `k`.
pub fn cyclotomic(k: u64) -> LaurentPoly {
    assert!(k >= 1, "cyclotomic index must be positive");
    static CACHE: OnceLock<Mutex<BTreeMap<u64, LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&k) {
        return p.clone();
    }
    let mut acc = &LaurentPoly::t_pow(k as i64) - &LaurentPoly::one();
    for d in divisors(k).into_iter().filter(|&d| d < k) {
        acc = match divide_exact(&acc, &cyclotomic(d)).expect("nonzero divisor") {
            Division::Exact(q) => q,
            other => unreachable!("Phi_{d} must divide t^{k} - 1, got {other:?}"),
        };
    }
    cache.lock().unwrap().insert(k, acc.clone());
    acc
}

pub(crate) fn divisors(a: u64) -> Vec<u64> {
    (1..=a).filter(|d| a.is_multiple_of(*d)).collect()
}

/// Multiplicities of cyclotomic factors `Phi_k`. A value is the product
/// `prod Phi_k^{e_k}` up to the sign carried by whoever built it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CycloFactorisation {
    multiplicities: BTreeMap<u64, i64>,
}

impl CycloFactorisation {
    pub fn multiplicities(&self) -> &BTreeMap<u64, i64> {
        &self.multiplicities
    }

    pub fn multiplicity(&self, k: u64) -> i64 {
        self.multiplicities.get(&k).copied().unwrap_or(0)
    }

    fn add(&mut self, k: u64, e: i64) {
        let slot = self.multiplicities.entry(k).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.multiplicities.remove(&k);
        }
    }

    /// Smallest index with a negative multiplicity.
    pub fn first_negative(&self) -> Option<u64> {
        self.multiplicities
            .iter()
            .find(|(_, e)| **e < 0)
            .map(|(k, _)| *k)
    }

    /// Expands `prod Phi_k^{e_k}` over the factors with positive multiplicity.
    fn expand_positive(&self) -> LaurentPoly {
        self.multiplicities
            .iter()
            .filter(|(_, e)| **e > 0)
            .fold(LaurentPoly::one(), |acc, (k, e)| {
                &acc * &cyclotomic(*k).pow(*e as u32)
            })
    }
}

/// A formal product `scalar * t^shift * prod_a (1 - t^a)^{e_a}` with integer
/// multiplicities of either sign.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedProduct {
    scalar: BigInt,
    factors: BTreeMap<u64, i64>,
    shift: i64,
}

impl Default for GradedProduct {
    fn default() -> Self {
        GradedProduct::one()
    }
}

impl GradedProduct {
    pub fn one() -> Self {
        GradedProduct {
            scalar: BigInt::one(),
            factors: BTreeMap::new(),
            shift: 0,
        }
    }

    pub fn new(scalar: BigInt, shift: i64) -> Self {
        GradedProduct {
            scalar,
            factors: BTreeMap::new(),
            shift,
        }
    }

    /// Multiplies in `(1 - t^a)^mult`.
    pub fn with_factor(mut self, a: u64, mult: i64) -> Self {
        assert!(a >= 1, "factor 1 - t^0 vanishes");
        let slot = self.factors.entry(a).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.factors.remove(&a);
        }
        self
    }

    pub fn with_shift(mut self, k: i64) -> Self {
        self.shift += k;
        self
    }

    pub fn scalar(&self) -> &BigInt {
        &self.scalar
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Multiplicity of `(1 - t^a)` as stored (before any cancellation).
    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn mul(&self, other: &GradedProduct) -> GradedProduct {
        let mut out = GradedProduct::new(&self.scalar * &other.scalar, self.shift + other.shift);
        out.factors = self.factors.clone();
        for (a, e) in &other.factors {
            out = out.with_factor(*a, *e);
        }
        out
    }

    /// Reciprocal; the scalar must be a unit.
    pub fn inverse(&self) -> GradedProduct {
        assert!(
            self.scalar.is_one() || self.scalar == -BigInt::one(),
            "only unit scalars are invertible"
        );
        GradedProduct {
            scalar: self.scalar.clone(),
            factors: self.factors.iter().map(|(a, e)| (*a, -e)).collect(),
            shift: -self.shift,
        }
    }

    /// Substitutes `t -> t^m`.
    pub fn substitute_power(&self, m: u64) -> GradedProduct {
        assert!(m >= 1);
        GradedProduct {
            scalar: self.scalar.clone(),
            factors: self.factors.iter().map(|(a, e)| (a * m, *e)).collect(),
            shift: self.shift * m as i64,
        }
    }

    /// `(1 - t^a) = -prod_{k | a} Phi_k`, accumulated over all factors.
    pub fn cyclo_factorisation(&self) -> CycloFactorisation {
        let mut cf = CycloFactorisation::default();
        for (a, e) in &self.factors {
            for k in divisors(*a) {
                cf.add(k, *e);
            }
        }
        cf
    }

    fn sign_and_scalar(&self) -> BigInt {
        let total: i64 = self.factors.values().sum();
        if total.rem_euclid(2) == 1 {
            -self.scalar.clone()
        } else {
            self.scalar.clone()
        }
    }

    /// Cancels cyclotomic factors and expands. Fails with the smallest `Phi_k`
    /// left with negative multiplicity.
    pub fn reduce(&self) -> Result<LaurentPoly, PolyError> {
        let cf = self.cyclo_factorisation();
        if let Some(k) = cf.first_negative() {
            return Err(PolyError::NotAPolynomial(k));
        }
        Ok(cf
            .expand_positive()
            .scale(&self.sign_and_scalar())
            .shift(self.shift))
    }

    /// Reduces `self * extra`, where `extra` is an arbitrary Laurent polynomial
    /// that may absorb denominator factors. Each leftover denominator `Phi_k` is
    /// divided out of the numerator in turn; the first one that does not divide
    /// is reported.
    pub fn reduce_times(&self, extra: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let cf = self.cyclo_factorisation();
        let mut acc = &cf.expand_positive() * extra;
        for (k, e) in cf.multiplicities().iter().filter(|(_, e)| **e < 0) {
            let phi = cyclotomic(*k);
            for _ in 0..(-e) {
                acc = match divide_exact(&acc, &phi)? {
                    Division::Exact(q) => q,
                    _ => return Err(PolyError::NotAPolynomial(*k)),
                };
            }
        }
        Ok(acc.scale(&self.sign_and_scalar()).shift(self.shift))
    }
}

impl fmt::Display for GradedProduct {
    /// E.g. `t^2 * (1 - t^3)(1 - t^2)^2 / (1 - t)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |a: u64, e: i64| {
            let base = if a == 1 {
                "(1 - t)".to_string()
            } else {
                format!("(1 - t^{a})")
            };
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        };
        let num: String = self
            .factors
            .iter()
            .rev()
            .filter(|(_, e)| **e > 0)
            .map(|(a, e)| factor(*a, *e))
            .collect();
        let den: String = self
            .factors
            .iter()
            .rev()
            .filter(|(_, e)| **e < 0)
            .map(|(a, e)| factor(*a, -e))
            .collect();
        let mut head = Vec::new();
        if !self.scalar.is_one() {
            head.push(self.scalar.to_string());
        }
        match self.shift {
            0 => {}
            1 => head.push("t".into()),
            s => head.push(format!("t^{s}")),
        }
        if !num.is_empty() {
            head.push(num);
        }
        if head.is_empty() {
            head.push("1".into());
        }
        write!(f, "{}", head.join(" * "))?;
        if !den.is_empty() {
            write!(f, " / {den}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedProduct({self})")
    }
}

/// Convenience wrapper matching the free-function style of the other operations.
pub fn graded_reduce(gp: &GradedProduct) -> Result<LaurentPoly, PolyError> {
    gp.reduce()
}
