//! `G(m,p,n)` as monomial matrices over `Q(z_m)`: elements, reflection
//! classes, class sums of restricted symplectic forms, and the Molien series.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::GroupError;
use crate::fake_degree::GroupSpec;
use crate::field::{CycloField, CycloNumber, Scalar};
use crate::linalg::Matrix;
use crate::polycore::{series_divide, series_quotient, GradedProduct};
use crate::symplectic::{class_form_sum, CMatrix, ClassFormSum};

/// Default bound on the group order for element-level work.
pub const DEFAULT_MAX_ORDER: u64 = 1_000_000;

/// `w e_i = z^{exps[i]} e_{perm[i]}` with `z = z_m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonomialElement {
    perm: Vec<usize>,
    exps: Vec<u32>,
    m: u32,
}

impl MonomialElement {
    pub fn new(perm: Vec<usize>, exps: Vec<u32>, m: u32) -> Self {
        assert_eq!(
            perm.len(),
            exps.len(),
            "perm and exps must have equal length"
        );
        assert!(
            perm.iter().copied().sorted().eq(0..perm.len()),
            "perm must be a permutation of 0..n"
        );
        let exps = exps.into_iter().map(|a| a % m).collect();
        MonomialElement { perm, exps, m }
    }

    pub fn identity(m: u32, n: usize) -> Self {
        MonomialElement::new((0..n).collect(), vec![0; n], m)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn exp_sum(&self) -> u32 {
        self.exps.iter().sum::<u32>() % self.m
    }

    /// Whether this element lies in `G(m,p,n)`.
    pub fn belongs_to(&self, g: &GroupSpec) -> bool {
        self.m == g.m() && self.rank() == g.n() as usize && self.exp_sum().is_multiple_of(g.p())
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &MonomialElement) -> MonomialElement {
        assert_eq!(
            (self.m, self.rank()),
            (other.m, other.rank()),
            "elements of different groups"
        );
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let exps = (0..self.rank())
            .map(|i| (other.exps[i] + self.exps[other.perm[i]]) % self.m)
            .collect();
        MonomialElement {
            perm,
            exps,
            m: self.m,
        }
    }

    pub fn inverse(&self) -> MonomialElement {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            exps[self.perm[i]] = (self.m - self.exps[i]) % self.m;
        }
        MonomialElement {
            perm,
            exps,
            m: self.m,
        }
    }

    pub fn matrix(&self) -> CMatrix {
        let field = CycloField::get(self.m as u64);
        let zero = CycloNumber::zero(&field);
        let mut mat = Matrix::filled(self.rank(), self.rank(), &zero);
        for i in 0..self.rank() {
            mat.set(
                self.perm[i],
                i,
                CycloNumber::root_of_unity(&field, self.exps[i] as i64),
            );
        }
        mat
    }

    pub fn trace(&self) -> CycloNumber {
        let field = CycloField::get(self.m as u64);
        (0..self.rank())
            .filter(|&i| self.perm[i] == i)
            .fold(CycloNumber::zero(&field), |acc, i| {
                acc.add(&CycloNumber::root_of_unity(&field, self.exps[i] as i64))
            })
    }

    /// Cycles of the permutation as `(length, exponent sum mod m)`, sorted.
    /// `det(1 - t w) = prod over cycles (1 - z^s t^l)`.
    pub fn cycle_type(&self) -> Vec<(usize, u32)> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let (mut len, mut sum, mut i) = (0, 0, start);
            while !seen[i] {
                seen[i] = true;
                len += 1;
                sum = (sum + self.exps[i]) % self.m;
                i = self.perm[i];
            }
            out.push((len, sum));
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for MonomialElement {
    /// `[perm; exps]` with one-based permutation images.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm = self.perm.iter().map(|i| (i + 1).to_string()).join(",");
        let exps = self.exps.iter().join(",");
        write!(f, "[{perm}; {exps}]")
    }
}

/// Refuses groups whose order exceeds `max_order`.
pub fn check_order(g: &GroupSpec, max_order: u64) -> Result<u64, GroupError> {
    let order = g.order_u64();
    if order > max_order {
        return Err(GroupError::OrderBound {
            order,
            bound: max_order,
        });
    }
    Ok(order)
}

/// Every element exactly once, permutations in lexicographic order and
/// exponent vectors lexicographic within each permutation.
pub fn elements(g: &GroupSpec, max_order: u64) -> Result<Vec<MonomialElement>, GroupError> {
    check_order(g, max_order)?;
    let (m, p, n) = (g.m(), g.p(), g.n() as usize);
    let exps: Vec<Vec<u32>> = (0..n)
        .map(|_| 0..m)
        .multi_cartesian_product()
        .filter(|e| e.iter().sum::<u32>() % p == 0)
        .collect();
    let out: Vec<MonomialElement> = (0..n)
        .permutations(n)
        .flat_map(|perm| {
            exps.iter().map(move |e| MonomialElement {
                perm: perm.clone(),
                exps: e.clone(),
                m,
            })
        })
        .collect();
    debug_assert_eq!(out.len() as u64, g.order_u64());
    Ok(out)
}

/// Conjugacy class of reflections with their common nontrivial eigenvalue
/// `zeta = exp(2 pi i k / N)`, stored as the reduced fraction `zeta_turn = (k, N)`.
#[derive(Clone, Debug)]
pub struct ReflectionClass {
    pub members: Vec<MonomialElement>,
    pub zeta_turn: (u32, u32),
    pub zeta: CycloNumber,
}

impl ReflectionClass {
    /// `-1`, `z3`, `z3^2`, ... with `zN` a primitive `N`-th root of unity.
    pub fn zeta_label(&self) -> String {
        match self.zeta_turn {
            (1, 2) => "-1".to_string(),
            (1, n) => format!("z{n}"),
            (k, n) => format!("z{n}^{k}"),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn is_reflection(w: &MonomialElement) -> bool {
    let mat = w.matrix();
    Matrix::identity(mat.rows(), mat.get(0, 0)).sub(&mat).rank() == 1
}

/// Reflection classes by brute-force conjugation, ordered by their least member.
pub fn reflection_classes(
    g: &GroupSpec,
    elems: &[MonomialElement],
) -> Result<Vec<ReflectionClass>, GroupError> {
    let field = CycloField::get(g.m() as u64);
    let refl: BTreeSet<MonomialElement> =
        elems.iter().filter(|w| is_reflection(w)).cloned().collect();
    let mut done = BTreeSet::new();
    let mut out = Vec::new();
    for r in &refl {
        if done.contains(r) {
            continue;
        }
        let class: BTreeSet<MonomialElement> = elems
            .iter()
            .map(|x| x.compose(r).compose(&x.inverse()))
            .collect();
        if !class.is_subset(&refl) {
            return Err(GroupError::Invariant(
                "conjugate of a reflection is not a reflection".into(),
            ));
        }
        let zeta = r
            .trace()
            .sub(&CycloNumber::from_int(&field, g.n() as i64 - 1));
        let zeta_turn = if zeta == CycloNumber::from_int(&field, -1) {
            (1, 2)
        } else {
            let e = (0..g.m())
                .find(|&e| CycloNumber::root_of_unity(&field, e as i64) == zeta)
                .ok_or_else(|| {
                    GroupError::Invariant("reflection eigenvalue is not a root of unity".into())
                })?;
            let gcd = num_integer::gcd(e, g.m());
            (e / gcd, g.m() / gcd)
        };
        done.extend(class.iter().cloned());
        out.push(ReflectionClass {
            members: class.into_iter().collect(),
            zeta_turn,
            zeta,
        });
    }
    Ok(out)
}

pub fn reflections(g: &GroupSpec, max_order: u64) -> Result<Vec<ReflectionClass>, GroupError> {
    reflection_classes(g, &elements(g, max_order)?)
}

/// `(1/|W|) sum chi(w) chi(w^{-1})` for the monomial character.
pub fn character_norm(elems: &[MonomialElement]) -> CycloNumber {
    let first = elems.first().expect("groups are nonempty");
    let field = first.trace().field().clone();
    let total = elems.iter().fold(CycloNumber::zero(&field), |acc, w| {
        acc.add(&w.trace().mul(&w.trace().conj()))
    });
    total.mul(
        &CycloNumber::from_int(&field, elems.len() as i64)
            .inv()
            .expect("nonempty"),
    )
}

pub fn is_irreducible(elems: &[MonomialElement]) -> bool {
    character_norm(elems) == CycloNumber::from_int(character_norm(elems).field(), 1)
}

/// Lemma certificate for one class; refuses reducible representations.
pub fn omega_class_sum(
    g: &GroupSpec,
    elems: &[MonomialElement],
    class: &ReflectionClass,
) -> Result<ClassFormSum, GroupError> {
    if !is_irreducible(elems) {
        return Err(GroupError::Reducible(g.to_string()));
    }
    let mats: Vec<CMatrix> = class.members.iter().map(MonomialElement::matrix).collect();
    let cert = class_form_sum(&mats)?;
    if !cert.matches_closed_form() {
        return Err(GroupError::Invariant(format!(
            "class sum scalar {} differs from the closed form {}",
            cert.lambda, cert.closed_form
        )));
    }
    Ok(cert)
}

/// One certificate per reflection class, in class order.
pub fn omega_class_sums(
    g: &GroupSpec,
    max_order: u64,
) -> Result<Vec<(ReflectionClass, ClassFormSum)>, GroupError> {
    let elems = elements(g, max_order)?;
    if !is_irreducible(&elems) {
        return Err(GroupError::Reducible(g.to_string()));
    }
    reflection_classes(g, &elems)?
        .into_iter()
        .map(|class| {
            let cert = omega_class_sum(g, &elems, &class)?;
            Ok((class, cert))
        })
        .collect()
}

/// Molien series of the invariants against the product over the degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct MolienComparison {
    pub truncation: usize,
    pub series: Vec<BigInt>,
    pub expected: Vec<BigInt>,
}

impl MolienComparison {
    pub fn matches(&self) -> bool {
        self.series == self.expected
    }
}

fn det_one_minus_tw(field: &Arc<CycloField>, cycles: &[(usize, u32)]) -> Vec<CycloNumber> {
    let one = CycloNumber::from_int(field, 1);
    cycles.iter().fold(vec![one.clone()], |acc, &(len, s)| {
        let mut out = vec![CycloNumber::zero(field); acc.len() + len];
        let c = CycloNumber::root_of_unity(field, s as i64).neg();
        for (i, a) in acc.iter().enumerate() {
            out[i] = out[i].add(a);
            out[i + len] = out[i + len].add(&a.mul(&c));
        }
        out
    })
}

/// `(1/|W|) sum_w 1/det(1 - t w)` through `t^truncation`, required to be integral.
pub fn molien_trivial(
    g: &GroupSpec,
    truncation: usize,
    max_order: u64,
) -> Result<Vec<BigInt>, GroupError> {
    let elems = elements(g, max_order)?;
    let field = CycloField::get(g.m() as u64);
    let mut counts: BTreeMap<Vec<(usize, u32)>, i64> = BTreeMap::new();
    for w in &elems {
        *counts.entry(w.cycle_type()).or_default() += 1;
    }
    let classes: Vec<_> = counts.into_iter().collect();
    let parts: Vec<Vec<CycloNumber>> = classes
        .par_iter()
        .map(|(cycles, count)| {
            let den = det_one_minus_tw(&field, cycles);
            let num = [CycloNumber::from_int(&field, 1)];
            let s = series_divide(&num, &den, truncation).expect("det(1 - tw) has constant term 1");
            let c = CycloNumber::from_int(&field, *count);
            s.into_iter().map(|x| x.mul(&c)).collect()
        })
        .collect();
    let inv_order = CycloNumber::from_int(&field, elems.len() as i64)
        .inv()
        .expect("nonempty group");
    (0..=truncation)
        .map(|k| {
            let total = parts
                .iter()
                .fold(CycloNumber::zero(&field), |acc, s| acc.add(&s[k]))
                .mul(&inv_order);
            total.as_integer().ok_or_else(|| {
                GroupError::Invariant(format!(
                    "Molien coefficient of t^{k} is not an integer: {total}"
                ))
            })
        })
        .collect()
}

/// Coefficients of `prod 1/(1 - t^{d_i})` through `t^truncation`.
pub fn degrees_series(degrees: &[u64], truncation: usize) -> Vec<BigInt> {
    let den = degrees
        .iter()
        .fold(GradedProduct::one(), |gp, &d| gp.with_factor(d, 1))
        .reduce()
        .expect("a product of binomials is a polynomial");
    series_quotient(&crate::polycore::LaurentPoly::one(), &den, truncation)
        .expect("constant term 1")
        .into_iter()
        .map(|q: BigRational| {
            assert!(q.is_integer(), "integer series");
            q.to_integer()
        })
        .collect()
}

pub fn molien_comparison(
    g: &GroupSpec,
    truncation: usize,
    max_order: u64,
) -> Result<MolienComparison, GroupError> {
    Ok(MolienComparison {
        truncation,
        series: molien_trivial(g, truncation, max_order)?,
        expected: degrees_series(&g.degrees(), truncation),
    })
}

/// The groups `G(m,p,n)` with `m <= max_m`, `n <= max_n` and order at most `max_order`.
pub fn group_battery(max_m: u32, max_n: u32, max_order: u64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for p in (1..=m).filter(|p| m % p == 0) {
            for n in 1..=max_n {
                let g = GroupSpec::new(m, p, n).expect("p divides m");
                if g.order_u64() <= max_order {
                    out.push(g);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: u32, p: u32, n: u32) -> GroupSpec {
        GroupSpec::new(m, p, n).unwrap()
    }

    #[test]
    fn element_counts() {
        assert_eq!(elements(&g(1, 1, 3), DEFAULT_MAX_ORDER).unwrap().len(), 6);
        assert_eq!(elements(&g(2, 2, 2), DEFAULT_MAX_ORDER).unwrap().len(), 4);
        assert_eq!(elements(&g(3, 3, 2), DEFAULT_MAX_ORDER).unwrap().len(), 6);
        assert!(matches!(
            elements(&g(6, 1, 4), 1000),
            Err(GroupError::OrderBound {
                order: 31104,
                bound: 1000
            })
        ));
    }

    #[test]
    fn composition_matches_matrices() {
        let elems = elements(&g(3, 1, 2), DEFAULT_MAX_ORDER).unwrap();
        for a in elems.iter().step_by(5) {
            for b in elems.iter().step_by(7) {
                assert_eq!(a.compose(b).matrix(), a.matrix().mul(&b.matrix()));
            }
            assert_eq!(a.compose(&a.inverse()), MonomialElement::identity(3, 2));
        }
    }

    #[test]
    fn reflection_examples() {
        let cls = reflections(&g(1, 1, 3), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].len(), 3);
        assert_eq!(cls[0].zeta_label(), "-1");

        let cls = reflections(&g(2, 1, 2), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(
            cls.iter().map(ReflectionClass::len).collect::<Vec<_>>(),
            vec![2, 2]
        );
        assert!(cls.iter().all(|c| c.zeta_turn == (1, 2)));

        let cls = reflections(&g(3, 1, 1), DEFAULT_MAX_ORDER).unwrap();
        let mut labels: Vec<String> = cls.iter().map(|c| c.zeta_label()).collect();
        labels.sort();
        assert_eq!(labels, ["z3", "z3^2"]);
    }

    #[test]
    fn irreducibility_flags() {
        for gs in [g(1, 1, 3), g(2, 2, 2), g(1, 1, 2)] {
            assert!(
                !is_irreducible(&elements(&gs, DEFAULT_MAX_ORDER).unwrap()),
                "{gs}"
            );
            assert!(gs.reflection_rep_reducible());
        }
        for gs in [
            g(2, 2, 3),
            g(3, 3, 2),
            g(3, 1, 2),
            g(4, 2, 2),
            g(1, 1, 1),
            g(2, 1, 1),
        ] {
            assert!(
                is_irreducible(&elements(&gs, DEFAULT_MAX_ORDER).unwrap()),
                "{gs}"
            );
            assert!(!gs.reflection_rep_reducible());
        }
    }

    #[test]
    fn class_sum_examples() {
        let gs = g(3, 1, 2);
        let certs = omega_class_sums(&gs, DEFAULT_MAX_ORDER).unwrap();
        let f = CycloField::get(3);
        let z3 = certs.iter().find(|(c, _)| c.zeta_turn == (1, 3)).unwrap();
        assert_eq!(z3.1.lambda, CycloNumber::from_int(&f, 1));
        assert!(matches!(
            omega_class_sums(&g(1, 1, 3), DEFAULT_MAX_ORDER),
            Err(GroupError::Reducible(_))
        ));
    }

    #[test]
    fn molien_examples() {
        for (gs, n) in [(g(1, 1, 2), 4), (g(4, 2, 2), 12), (g(3, 3, 3), 12)] {
            let cmp = molien_comparison(&gs, n, DEFAULT_MAX_ORDER).unwrap();
            assert!(
                cmp.matches(),
                "{gs}: {:?} vs {:?}",
                cmp.series,
                cmp.expected
            );
        }
        let s: Vec<i64> = degrees_series(&[1, 2], 4)
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(s, vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn battery_contents() {
        let b = group_battery(6, 4, 2000);
        assert!(b.contains(&g(3, 1, 4)));
        assert!(!b.contains(&g(4, 1, 4)));
        assert!(b.iter().all(|x| x.order_u64() <= 2000));
    }
}
