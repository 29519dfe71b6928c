use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::partition::{t_factorial, Partition};
use crate::error::GroupError;
use crate::polycore::{GradedProduct, LaurentPoly};

/// An ordered tuple of partitions `(lambda^0, ..., lambda^{m-1})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(
            !components.is_empty(),
            "a multipartition has at least one component"
        );
        Multipartition { components }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    /// Number of components `m`.
    pub fn width(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> u32 {
        self.components.iter().map(Partition::size).sum()
    }

    /// Component `i` moves to position `i + d` (indices mod `m`).
    pub fn shift(&self, d: i64) -> Multipartition {
        let m = self.width() as i64;
        Multipartition {
            components: (0..m)
                .map(|i| self.components[(i - d).rem_euclid(m) as usize].clone())
                .collect(),
        }
    }

    /// `sum_i i * |mu^i|`.
    pub fn r_stat(&self) -> u64 {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| i as u64 * c.size() as u64)
            .sum()
    }

    pub fn n_stat_sum(&self) -> u64 {
        self.components.iter().map(Partition::n_stat).sum()
    }

    /// `(t)_n * prod_i t^{n(lambda^i)} / H_{lambda^i}(t)` with `n = |self|`,
    /// unreduced.
    pub fn i_poly(&self) -> GradedProduct {
        let denom = self
            .components
            .iter()
            .fold(GradedProduct::one(), |acc, c| acc.mul(&c.hook_poly()));
        t_factorial(self.size())
            .mul(&denom.inverse())
            .with_shift(self.n_stat_sum() as i64)
    }
}

/// All `m`-multipartitions of `n`, sorted by [`Multipartition`]'s order
/// (component-wise [`Partition`] order).
pub fn multipartitions(m: usize, n: u32) -> Vec<Multipartition> {
    assert!(m >= 1, "need at least one component");
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    build(m, n, &mut cur, &mut out);
    out
}

fn build(m: usize, rest: u32, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
    if cur.len() == m - 1 {
        for p in Partition::all(rest) {
            cur.push(p);
            out.push(Multipartition {
                components: cur.clone(),
            });
            cur.pop();
        }
        return;
    }
    for k in (0..=rest).rev() {
        for p in Partition::all(k) {
            cur.push(p);
            build(m, rest - k, cur, out);
            cur.pop();
        }
    }
}

/// Orbit of a multipartition under the cyclic group generated by shifting by `d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultipartitionOrbit {
    members: Vec<Multipartition>,
    stab_order: u32,
}

impl MultipartitionOrbit {
    /// Orbit under `Z/p` acting by shift-by-`d`; requires `p * d = m`.
    pub fn of(mu: &Multipartition, p: u32, d: u32) -> Self {
        assert_eq!((p * d) as usize, mu.width(), "shift action needs p * d = m");
        let mut seen = BTreeSet::new();
        let mut cur = mu.clone();
        for _ in 0..p {
            seen.insert(cur.clone());
            cur = cur.shift(d as i64);
        }
        debug_assert_eq!(&cur, mu, "p-fold shift must be the identity");
        let size = seen.len() as u32;
        MultipartitionOrbit {
            members: seen.into_iter().collect(),
            stab_order: p / size,
        }
    }

    pub fn members(&self) -> &[Multipartition] {
        &self.members
    }

    /// Least member in [`Multipartition`] order.
    pub fn canonical_rep(&self) -> &Multipartition {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn stab_order(&self) -> u32 {
        self.stab_order
    }

    /// `sum over members of t^{r(member)}`.
    pub fn r_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.members.iter().map(|mu| (mu.r_stat() as i64, 1.into())))
    }
}

/// All shift orbits of `m`-multipartitions of `n`, ordered by canonical representative.
pub fn orbits(m: usize, n: u32, p: u32, d: u32) -> Vec<MultipartitionOrbit> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mu in multipartitions(m, n) {
        if seen.contains(&mu) {
            continue;
        }
        let orbit = MultipartitionOrbit::of(&mu, p, d);
        seen.extend(orbit.members().iter().cloned());
        out.push(orbit);
    }
    out
}

impl fmt::Display for Multipartition {
    /// `2,2|-|1` for `((2,2), (), (1))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&s.join("|"))
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Multipartition {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let components = s
            .split('|')
            .map(str::parse::<Partition>)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Multipartition::new(components))
    }
}

impl Serialize for Multipartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
