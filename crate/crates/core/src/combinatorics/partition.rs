use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::GroupError;
use crate::polycore::GradedProduct;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Panics if the parts are not positive and weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Self {
        Partition::try_new(parts).expect("parts must be positive and weakly decreasing")
    }

    pub fn try_new(parts: Vec<u32>) -> Option<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        ok.then_some(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count() as u32)
                .collect(),
        }
    }

    /// Hook length of every cell, row by row.
    pub fn hook_multiset(&self) -> Vec<u32> {
        let cols = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = cols.parts[j as usize] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// `prod over cells (1 - t^hook)`.
    pub fn hook_poly(&self) -> GradedProduct {
        self.hook_multiset()
            .into_iter()
            .fold(GradedProduct::one(), |gp, h| gp.with_factor(h as u64, 1))
    }

    /// `sum (i - 1) * lambda_i` over rows numbered from one.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Partitions of `n` in reverse lexicographic order: `(n)` first, `(1^n)` last.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, n, &mut cur, &mut out);
        out
    }
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for k in (1..=rest.min(max)).rev() {
        cur.push(k);
        fill(rest - k, k, cur, out);
        cur.pop();
    }
}

/// `(t)_n = (1 - t)(1 - t^2)...(1 - t^n)`.
pub fn t_factorial(n: u32) -> GradedProduct {
    (1..=n as u64).fold(GradedProduct::one(), |gp, a| gp.with_factor(a, 1))
}

impl Ord for Partition {
    /// Larger partitions first; within a size, reverse lexicographic
    /// (`(2)` before `(1,1)`). This is the enumeration order of [`Partition::all`].
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    /// `2,2,1`, or `-` for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let err = |reason: &str| GroupError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| err("parts must be positive integers"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::try_new(parts).ok_or_else(|| err("parts must be positive and weakly decreasing"))
    }
}
