//! Fake degrees of the irreducible representations of `G(m,p,n)`, their
//! dimensions, and the Poincare polynomial of the coinvariant ring.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::{orbits, Multipartition, MultipartitionOrbit, Partition};
use crate::error::GroupError;
use crate::polycore::{GradedProduct, LaurentPoly};

/// The imprimitive reflection group `G(m,p,n)` with `p | m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct GroupSpec {
    m: u32,
    p: u32,
    n: u32,
}

impl GroupSpec {
    pub fn new(m: u32, p: u32, n: u32) -> Result<Self, GroupError> {
        let bad = |reason: &str| GroupError::InvalidGroup {
            m,
            p,
            n,
            reason: reason.to_string(),
        };
        if m == 0 || p == 0 || n == 0 {
            return Err(bad("m, p and n must be positive integers"));
        }
        if !m.is_multiple_of(p) {
            return Err(bad("p must divide m"));
        }
        Ok(GroupSpec { m, p, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `d = m / p`.
    pub fn d(&self) -> u32 {
        self.m / self.p
    }

    /// `m^n * n! / p`.
    pub fn order(&self) -> BigInt {
        let fact: BigInt = (1..=self.n).map(BigInt::from).product();
        BigInt::from(self.m).pow(self.n) * fact / BigInt::from(self.p)
    }

    /// `order()` as `u64`, saturating.
    pub fn order_u64(&self) -> u64 {
        self.order().to_u64().unwrap_or(u64::MAX)
    }

    /// Degrees of the basic invariants: `m, 2m, ..., (n-1)m, dn`.
    pub fn degrees(&self) -> Vec<u64> {
        let m = self.m as u64;
        let mut out: Vec<u64> = (1..self.n as u64).map(|i| i * m).collect();
        out.push(self.d() as u64 * self.n as u64);
        out
    }

    /// Cases where the monomial reflection representation is reducible:
    /// the permutation realisation (`m = 1`, `n >= 2`) and `G(2,2,2)`.
    pub fn reflection_rep_reducible(&self) -> bool {
        (self.m == 1 && self.n >= 2) || (self.m, self.p, self.n) == (2, 2, 2)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.m, self.p, self.n)
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// `G(m,p,n)`, whitespace tolerated.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let err = |reason: &str| GroupError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("G(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err("expected G(m,p,n)"))?;
        let nums = inner
            .split(',')
            .map(|x| {
                x.parse::<u32>()
                    .map_err(|_| err("m, p and n must be positive integers"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let [m, p, n] = nums[..] else {
            return Err(err("expected exactly three integers"));
        };
        GroupSpec::new(m, p, n)
    }
}

/// An irreducible representation: a shift orbit plus an index into its stabiliser.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IrrLabel {
    pub orbit: MultipartitionOrbit,
    pub eps_index: u32,
}

impl IrrLabel {
    pub fn rep(&self) -> &Multipartition {
        self.orbit.canonical_rep()
    }
}

impl fmt::Display for IrrLabel {
    /// `2,2|-` when the stabiliser is trivial, otherwise `1|1#0`, `1|1#1`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orbit.stab_order() == 1 {
            write!(f, "{}", self.rep())
        } else {
            write!(f, "{}#{}", self.rep(), self.eps_index)
        }
    }
}

/// Shift orbits of the ambient multipartitions, ordered by canonical representative.
pub fn group_orbits(g: &GroupSpec) -> Vec<MultipartitionOrbit> {
    orbits(g.m as usize, g.n, g.p, g.d())
}

/// The shift orbit of `mu` under `g`'s cyclic action.
pub fn orbit_of(g: &GroupSpec, mu: &Multipartition) -> MultipartitionOrbit {
    assert_eq!(
        mu.width(),
        g.m() as usize,
        "multipartition has the wrong number of components"
    );
    MultipartitionOrbit::of(mu, g.p(), g.d())
}

/// One label per (orbit, stabiliser element), orbits in canonical order.
pub fn irr_labels(g: &GroupSpec) -> Vec<IrrLabel> {
    group_orbits(g)
        .into_iter()
        .flat_map(|orbit| {
            (0..orbit.stab_order()).map(move |eps_index| IrrLabel {
                orbit: orbit.clone(),
                eps_index,
            })
        })
        .collect()
}

/// `R(t) = t^k * R~(t)` with `t^k` the largest power of `t` dividing `R`.
pub fn split_r_poly(orbit: &MultipartitionOrbit) -> (i64, LaurentPoly) {
    let r = orbit.r_poly();
    let k = r.trailing_degree().expect("orbits are nonempty");
    (k, r.shift(-k))
}

/// Fake degree of the labels sharing `orbit`:
/// `(1 - t^{dn}) / (1 - t^{mn}) * R(t) * I(t^m)`.
pub fn fake_degree(g: &GroupSpec, orbit: &MultipartitionOrbit) -> LaurentPoly {
    assert_eq!(
        orbit.canonical_rep().width(),
        g.m as usize,
        "orbit built for another m"
    );
    let (m, d, n) = (g.m as u64, g.d() as u64, g.n as u64);
    let (k, r_tilde) = split_r_poly(orbit);
    let gp = GradedProduct::one()
        .with_factor(d * n, 1)
        .with_factor(m * n, -1)
        .mul(&orbit.canonical_rep().i_poly().substitute_power(m))
        .with_shift(k);
    let f = gp.reduce_times(&r_tilde).unwrap_or_else(|e| {
        panic!(
            "fake degree of {} in {g} is not a polynomial: {e}",
            orbit.canonical_rep()
        )
    });
    assert!(
        !f.is_zero() && f.has_nonnegative_coeffs(),
        "fake degree must be nonzero with nonnegative coefficients"
    );
    f
}

/// Predicted trailing degree `k + m * sum n(lambda^i)`.
pub fn predicted_trailing_degree(g: &GroupSpec, orbit: &MultipartitionOrbit) -> i64 {
    let (k, _) = split_r_poly(orbit);
    k + g.m as i64 * orbit.canonical_rep().n_stat_sum() as i64
}

/// Number of standard Young tableaux, `|lambda|! / prod hooks`.
pub fn syt_count(lambda: &Partition) -> BigInt {
    let num: BigInt = (1..=lambda.size()).map(BigInt::from).product();
    let den: BigInt = lambda
        .hook_multiset()
        .into_iter()
        .map(BigInt::from)
        .product();
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `multinomial(n; |lambda^i|) * prod syt(lambda^i) / stab_order`.
pub fn irr_dimension(label: &IrrLabel) -> BigInt {
    let rep = label.rep();
    let n = rep.size();
    let mut dim: BigInt = (1..=n).map(BigInt::from).product();
    for c in rep.components() {
        let fact: BigInt = (1..=c.size()).map(BigInt::from).product();
        dim = dim / fact * syt_count(c);
    }
    let stab = BigInt::from(label.orbit.stab_order());
    assert!(
        (&dim % &stab).is_zero(),
        "dimension of {label} is not divisible by its stabiliser order"
    );
    dim / stab
}

/// `prod_i (1 - t^{d_i}) / (1 - t)`.
pub fn coinv_poincare(g: &GroupSpec) -> LaurentPoly {
    poincare_from_degrees(&g.degrees())
}

pub fn poincare_from_degrees(degrees: &[u64]) -> LaurentPoly {
    degrees
        .iter()
        .fold(GradedProduct::one(), |gp, &d| {
            gp.with_factor(d, 1).with_factor(1, -1)
        })
        .reduce()
        .expect("(1 - t) divides every 1 - t^d")
}

/// Enumeration bound for [`syt_major_index_oracle`].
pub const SYT_ORACLE_MAX: u32 = 8;

/// `sum over standard tableaux T of shape lambda of t^{maj(T)}`, where `i` is
/// a descent when `i + 1` sits in a strictly lower row.
pub fn syt_major_index_oracle(lambda: &Partition) -> Result<LaurentPoly, GroupError> {
    if lambda.size() > SYT_ORACLE_MAX {
        return Err(GroupError::Invariant(format!(
            "tableau enumeration is limited to |lambda| <= {SYT_ORACLE_MAX}, got {}",
            lambda.size()
        )));
    }
    let shape: Vec<u32> = lambda.parts().to_vec();
    let mut filled = vec![0u32; shape.len()];
    let mut row_of = Vec::with_capacity(lambda.size() as usize);
    let mut terms = Vec::new();
    walk(&shape, &mut filled, &mut row_of, &mut terms);
    Ok(LaurentPoly::from_terms(terms))
}

/// Places entries `1, 2, ...` one at a time at the end of some row while keeping
/// the filled region a partition.
fn walk(
    shape: &[u32],
    filled: &mut [u32],
    row_of: &mut Vec<usize>,
    terms: &mut Vec<(i64, BigInt)>,
) {
    if row_of.len() as u32 == shape.iter().sum::<u32>() {
        let maj: usize = row_of
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] > w[0])
            .map(|(i, _)| i + 1)
            .sum();
        terms.push((maj as i64, BigInt::one()));
        return;
    }
    for r in 0..shape.len() {
        let fits = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
        if fits {
            filled[r] += 1;
            row_of.push(r);
            walk(shape, filled, row_of, terms);
            row_of.pop();
            filled[r] -= 1;
        }
    }
}
