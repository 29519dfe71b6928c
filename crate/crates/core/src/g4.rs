//! The binary tetrahedral group `G4` as unit quaternions: conjugacy classes,
//! the character table over `Q(z12)`, decompositions of `End(E)` and `End(F)`,
//! and the class sums of restricted symplectic forms.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::GroupError;
use crate::field::{CycloField, CycloNumber, Scalar};
use crate::linalg::Matrix;
use crate::symplectic::{class_form_sum, CMatrix, ClassFormSum};

/// `a + b i + c j + d k` with rational components.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Quaternion {
    pub a: Rational64,
    pub b: Rational64,
    pub c: Rational64,
    pub d: Rational64,
}

impl Quaternion {
    pub fn new(a: Rational64, b: Rational64, c: Rational64, d: Rational64) -> Self {
        Quaternion { a, b, c, d }
    }

    /// From twice the components, e.g. `half(-1, 1, 1, -1) = (-1 + i + j - k)/2`.
    pub fn half(a: i64, b: i64, c: i64, d: i64) -> Self {
        let h = |x| Rational64::new(x, 2);
        Quaternion::new(h(a), h(b), h(c), h(d))
    }

    pub fn int(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::half(2 * a, 2 * b, 2 * c, 2 * d)
    }

    pub fn one() -> Self {
        Quaternion::int(1, 0, 0, 0)
    }

    pub fn norm(&self) -> Rational64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Quaternion::one(), |acc, _| acc * *self)
    }

    /// Multiplicative order, for unit quaternions of finite order.
    pub fn order(&self) -> u32 {
        let mut x = *self;
        let mut k = 1;
        while x != Quaternion::one() {
            x = x * *self;
            k += 1;
            assert!(k <= 1000, "element of infinite order");
        }
        k
    }

    /// `[[a + b i, c + d i], [-c + d i, a - b i]]` over `Q(z12)` with `i = z12^3`.
    pub fn matrix(&self) -> CMatrix {
        let f = field();
        let q = |r: Rational64| {
            CycloNumber::from_rational(
                &f,
                BigRational::new((*r.numer()).into(), (*r.denom()).into()),
            )
        };
        let i = CycloNumber::root_of_unity(&f, 3);
        let cplx = |re: Rational64, im: Rational64| q(re).add(&q(im).mul(&i));
        let entries = [
            cplx(self.a, self.b),
            cplx(self.c, self.d),
            cplx(-self.c, self.d),
            cplx(self.a, -self.b),
        ];
        Matrix::from_fn(2, 2, |r, c| entries[2 * r + c].clone())
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.a * o.a - self.b * o.b - self.c * o.c - self.d * o.d,
            self.a * o.b + self.b * o.a + self.c * o.d - self.d * o.c,
            self.a * o.c - self.b * o.d + self.c * o.a + self.d * o.b,
            self.a * o.d + self.b * o.c - self.c * o.b + self.d * o.a,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (v, unit) in [(self.a, ""), (self.b, "i"), (self.c, "j"), (self.d, "k")] {
            if v.is_zero() {
                continue;
            }
            let coeff = if v.abs().is_one() && !unit.is_empty() {
                if v < Rational64::zero() {
                    "-".to_string()
                } else {
                    String::new()
                }
            } else {
                v.to_string()
            };
            parts.push(format!("{coeff}{unit}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

fn field() -> Arc<CycloField> {
    CycloField::get(12)
}

/// The reflections listed for the two reflection classes.
pub fn s_elements() -> [Quaternion; 4] {
    [
        Quaternion::half(-1, 1, 1, -1),
        Quaternion::half(-1, 1, -1, 1),
        Quaternion::half(-1, -1, 1, 1),
        Quaternion::half(-1, -1, -1, -1),
    ]
}

pub fn t_elements() -> [Quaternion; 4] {
    [
        Quaternion::half(-1, -1, -1, 1),
        Quaternion::half(-1, 1, -1, -1),
        Quaternion::half(-1, -1, 1, -1),
        Quaternion::half(-1, 1, 1, 1),
    ]
}

pub const CLASS_SIZES: [usize; 7] = [1, 1, 4, 4, 6, 4, 4];
/// Element orders per class. The printed table gives `1` for `Cl2 = {-1}`,
/// whose order is `2`; [`PRINTED_CLASS_ORDERS`] keeps the printed row.
pub const CLASS_ORDERS: [u32; 7] = [1, 2, 3, 3, 4, 6, 6];
pub const PRINTED_CLASS_ORDERS: [u32; 7] = [1, 1, 3, 3, 4, 6, 6];
pub const IRREP_NAMES: [&str; 7] = ["T", "V1", "V2", "W", "h", "h*", "U"];

/// The group with its multiplication closure and labelled classes.
#[derive(Clone, Debug)]
pub struct G4 {
    pub elements: Vec<Quaternion>,
    /// Element indices of `Cl1..Cl7`.
    pub classes: [Vec<usize>; 7],
}

impl G4 {
    pub fn index(&self, q: &Quaternion) -> Option<usize> {
        self.elements.binary_search(q).ok()
    }

    /// Class number `0..7` of an element.
    pub fn class_of(&self, q: &Quaternion) -> Option<usize> {
        let idx = self.index(q)?;
        self.classes.iter().position(|c| c.contains(&idx))
    }

    pub fn class_members(&self, k: usize) -> Vec<Quaternion> {
        self.classes[k].iter().map(|&i| self.elements[i]).collect()
    }
}

/// The 24 elements `+-1, +-i, +-j, +-k, (+-1 +-i +-j +-k)/2`, sorted, after
/// checking closure, generation by `s1, s2` and the presentation relations.
pub fn build_g4() -> Result<G4, GroupError> {
    let mut elems = BTreeSet::new();
    for axis in 0..4 {
        for sign in [1, -1] {
            let mut v = [0; 4];
            v[axis] = sign;
            elems.insert(Quaternion::int(v[0], v[1], v[2], v[3]));
        }
    }
    for mask in 0..16 {
        let s = |bit: i64| if mask & (1 << bit) != 0 { -1 } else { 1 };
        elems.insert(Quaternion::half(s(0), s(1), s(2), s(3)));
    }
    let invariant = |msg: &str| GroupError::Invariant(format!("G4: {msg}"));
    if elems.len() != 24 || elems.iter().any(|q| !q.norm().is_one()) {
        return Err(invariant("expected 24 unit quaternions"));
    }
    for x in &elems {
        for y in &elems {
            if !elems.contains(&(*x * *y)) {
                return Err(invariant("not closed under multiplication"));
            }
        }
    }
    let (s1, s2) = (s_elements()[0], s_elements()[1]);
    if s1.pow(3) != Quaternion::one()
        || s2.pow(3) != Quaternion::one()
        || (s1 * s2).pow(6) != Quaternion::one()
    {
        return Err(invariant("presentation relations fail"));
    }
    let mut generated = BTreeSet::from([Quaternion::one()]);
    loop {
        let next: BTreeSet<Quaternion> = generated
            .iter()
            .flat_map(|x| [*x * s1, *x * s2])
            .chain(generated.iter().copied())
            .collect();
        if next.len() == generated.len() {
            break;
        }
        generated = next;
    }
    if generated != elems {
        return Err(invariant("s1 and s2 do not generate the group"));
    }
    let elements: Vec<Quaternion> = elems.into_iter().collect();
    let classes = conjugacy_classes(&elements)?;
    Ok(G4 { elements, classes })
}

/// Brute-force classes, labelled by the representatives `1, -1, s1, t1, i, t1 t2, s1 s2`.
pub fn conjugacy_classes(elements: &[Quaternion]) -> Result<[Vec<usize>; 7], GroupError> {
    let (s, t) = (s_elements(), t_elements());
    let reps = [
        Quaternion::one(),
        -Quaternion::one(),
        s[0],
        t[0],
        Quaternion::int(0, 1, 0, 0),
        t[0] * t[1],
        s[0] * s[1],
    ];
    let mut classes: [Vec<usize>; 7] = Default::default();
    for (k, rep) in reps.iter().enumerate() {
        let members: BTreeSet<Quaternion> = elements.iter().map(|g| *g * *rep * g.conj()).collect();
        classes[k] = members
            .iter()
            .map(|q| elements.binary_search(q).expect("closed group"))
            .collect();
        if classes[k].len() != CLASS_SIZES[k] || rep.order() != CLASS_ORDERS[k] {
            return Err(GroupError::Invariant(format!(
                "G4: class {} has size {} and order {}, expected {} and {}",
                k + 1,
                classes[k].len(),
                rep.order(),
                CLASS_SIZES[k],
                CLASS_ORDERS[k]
            )));
        }
    }
    let covered: BTreeSet<usize> = classes.iter().flatten().copied().collect();
    if covered.len() != elements.len() {
        return Err(GroupError::Invariant(
            "G4: classes do not partition the group".into(),
        ));
    }
    Ok(classes)
}

/// Values on `Cl1..Cl7`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction(pub [CycloNumber; 7]);

impl ClassFunction {
    pub fn from_ints(v: [i64; 7]) -> Self {
        let f = field();
        ClassFunction(v.map(|x| CycloNumber::from_int(&f, x)))
    }

    pub fn add(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction(std::array::from_fn(|k| self.0[k].add(&o.0[k])))
    }

    pub fn mul(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction(std::array::from_fn(|k| self.0[k].mul(&o.0[k])))
    }

    pub fn scale(&self, c: i64) -> ClassFunction {
        let c = CycloNumber::from_int(&field(), c);
        ClassFunction(std::array::from_fn(|k| self.0[k].mul(&c)))
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction(std::array::from_fn(|k| self.0[k].conj()))
    }

    /// `(1/24) sum size * self * conj(other)`.
    pub fn inner(&self, o: &ClassFunction) -> CycloNumber {
        let f = field();
        let total = (0..7).fold(CycloNumber::zero(&f), |acc, k| {
            acc.add(
                &CycloNumber::from_int(&f, CLASS_SIZES[k] as i64)
                    .mul(&self.0[k])
                    .mul(&o.0[k].conj()),
            )
        });
        total.mul(&CycloNumber::from_int(&f, 24).inv().expect("nonzero"))
    }
}

/// Rows `T, V1, V2, W, h, h*, U` with `omega = z12^4`.
pub fn character_table() -> [ClassFunction; 7] {
    let f = field();
    let int = |k: i64| CycloNumber::from_int(&f, k);
    let w = CycloNumber::root_of_unity(&f, 4);
    let w2 = CycloNumber::root_of_unity(&f, 8);
    let row = |v: [CycloNumber; 7]| ClassFunction(v);
    [
        ClassFunction::from_ints([1; 7]),
        row([
            int(1),
            int(1),
            w2.clone(),
            w.clone(),
            int(1),
            w2.clone(),
            w.clone(),
        ]),
        row([
            int(1),
            int(1),
            w.clone(),
            w2.clone(),
            int(1),
            w.clone(),
            w2.clone(),
        ]),
        ClassFunction::from_ints([2, -2, -1, -1, 0, 1, 1]),
        row([
            int(2),
            int(-2),
            w2.neg(),
            w.neg(),
            int(0),
            w2.clone(),
            w.clone(),
        ]),
        row([
            int(2),
            int(-2),
            w.neg(),
            w2.neg(),
            int(0),
            w.clone(),
            w2.clone(),
        ]),
        ClassFunction::from_ints([3, 3, 0, 0, -1, 0, 0]),
    ]
}

/// Row and column orthogonality of the table.
pub fn orthogonality_holds() -> bool {
    let table = character_table();
    let f = field();
    let rows_ok = (0..7).all(|a| {
        (0..7).all(|b| table[a].inner(&table[b]) == CycloNumber::from_int(&f, (a == b) as i64))
    });
    let cols_ok = (0..7).all(|k| {
        (0..7).all(|l| {
            let s = table.iter().fold(CycloNumber::zero(&f), |acc, r| {
                acc.add(&r.0[k].mul(&r.0[l].conj()))
            });
            let expect = if k == l {
                24 / CLASS_SIZES[k] as i64
            } else {
                0
            };
            s == CycloNumber::from_int(&f, expect)
        })
    });
    rows_ok && cols_ok
}

/// Multiplicities of `T, V1, V2, W, h, h*, U`.
pub fn decompose(chi: &ClassFunction) -> Result<[BigInt; 7], GroupError> {
    let table = character_table();
    let mut out: [BigInt; 7] = Default::default();
    for (k, row) in table.iter().enumerate() {
        out[k] = chi
            .inner(row)
            .as_integer()
            .ok_or_else(|| GroupError::Invariant("not a virtual character".into()))?;
    }
    Ok(out)
}

/// `E = T + V1 + V2 + 3U`.
pub fn chi_e() -> ClassFunction {
    let t = character_table();
    t[0].add(&t[1]).add(&t[2]).add(&t[6].scale(3))
}

/// `F = h + h* + W`.
pub fn chi_f() -> ClassFunction {
    let t = character_table();
    t[4].add(&t[5]).add(&t[3])
}

/// Character of `End(V) = V (x) V*`.
pub fn end_character(chi: &ClassFunction) -> ClassFunction {
    chi.mul(&chi.conj())
}

/// `L = aE + bF` for a character with values `(n, m, 0, ..., 0)`; `None` when
/// `a` or `b` is not a nonnegative integer.
pub fn claim1_solve(n: i64, m: i64) -> Option<(u64, u64)> {
    let (a_num, b_num) = (n + m, 2 * (n - m));
    if a_num < 0 || b_num < 0 || a_num % 24 != 0 || b_num % 24 != 0 {
        return None;
    }
    Some(((a_num / 24) as u64, (b_num / 24) as u64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandCheck {
    pub module: String,
    pub multiplicities: Vec<(String, String)>,
    pub h_multiplicity: String,
    pub hstar_multiplicity: String,
}

impl SummandCheck {
    pub fn h_free(&self) -> bool {
        self.h_multiplicity == "0" && self.hstar_multiplicity == "0"
    }
}

fn summand_check(module: &str, chi: &ClassFunction) -> Result<SummandCheck, GroupError> {
    let mult = decompose(&end_character(chi))?;
    Ok(SummandCheck {
        module: format!("End({module})"),
        multiplicities: IRREP_NAMES
            .iter()
            .zip(&mult)
            .map(|(n, k)| (n.to_string(), k.to_string()))
            .collect(),
        h_multiplicity: mult[4].to_string(),
        hstar_multiplicity: mult[5].to_string(),
    })
}

/// Multiplicities of `h` and `h*` in `End(E)` and `End(F)`.
pub fn summand_absence_check() -> Result<[SummandCheck; 2], GroupError> {
    Ok([summand_check("E", &chi_e())?, summand_check("F", &chi_f())?])
}

/// Class products used in the trace argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub product: String,
    pub expected_class: usize,
    pub found_class: usize,
}

pub fn class_product_check(g: &G4) -> Vec<ProductCheck> {
    let (s, t) = (s_elements(), t_elements());
    let mut out = Vec::new();
    let mut push = |name: String, q: Quaternion, expected: usize| {
        out.push(ProductCheck {
            product: name,
            expected_class: expected,
            found_class: g.class_of(&q).map_or(0, |k| k + 1),
        });
    };
    for i in 1..4 {
        push(format!("s1 s{}", i + 1), s[0] * s[i], 7);
    }
    for (j, tj) in t.iter().enumerate().skip(1) {
        push(format!("s1 t{}", j + 1), s[0] * *tj, 5);
    }
    for (j, tj) in t.iter().enumerate().skip(1) {
        push(format!("t1 t{}", j + 1), t[0] * *tj, 6);
    }
    push("t1^2".into(), t[0] * t[0], 3);
    out
}

/// The representation `h = V1 (x) W`: `V1(g)` times the quaternion matrix.
pub fn h_matrix(g: &G4, q: &Quaternion) -> CMatrix {
    let class = g.class_of(q).expect("group element");
    let v1 = character_table()[1].0[class].clone();
    q.matrix().scale(&v1)
}

#[derive(Clone, Debug)]
pub struct G4FormCheck {
    pub class: usize,
    pub cert: ClassFormSum,
}

/// Class sums of restricted forms over `Cl3` and `Cl4` acting on `h + h*`.
pub fn g4_reflection_form_check(g: &G4) -> Result<[G4FormCheck; 2], GroupError> {
    let mut out = Vec::new();
    for class in [2usize, 3] {
        let mats: Vec<CMatrix> = g
            .class_members(class)
            .iter()
            .map(|q| h_matrix(g, q))
            .collect();
        let cert = class_form_sum(&mats)?;
        if !cert.matches_closed_form() {
            return Err(GroupError::Invariant(format!(
                "G4: class {} sum {} differs from the closed form {}",
                class + 1,
                cert.lambda,
                cert.closed_form
            )));
        }
        out.push(G4FormCheck {
            class: class + 1,
            cert,
        });
    }
    Ok(out.try_into().expect("two classes"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub a: u64,
    pub b: u64,
    pub name: String,
    pub dim: u64,
    /// Whether `End(aE + bF)` has neither `h` nor `h*` as a summand.
    pub h_free_endomorphisms: bool,
    /// Coefficients of `(c1, c2) * omega(x, y)` in the trace identity on a constituent.
    pub trace_identity: Option<(String, i64, i64)>,
    pub eliminated: bool,
}

fn shape_name(a: u64, b: u64) -> String {
    let part = |k: u64, s: &str| match k {
        0 => None,
        1 => Some(s.to_string()),
        k => Some(format!("{k}{s}")),
    };
    if (a, b) == (1, 2) {
        return "E+2F=CG4".into();
    }
    [part(a, "E"), part(b, "F")]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("+")
}

/// Coefficient of `c1`, `c2` when the commutator relation is traced on the constituent `row`:
/// `chi(Cl3) * lambda3` and `chi(Cl4) * lambda4`.
pub fn constituent_trace_identity(
    row: usize,
    lambdas: (&CycloNumber, &CycloNumber),
) -> Option<(i64, i64)> {
    let table = character_table();
    let c1 = table[row].0[2].mul(lambdas.0).as_integer()?;
    let c2 = table[row].0[3].mul(lambdas.1).as_integer()?;
    Some((c1.try_into().ok()?, c2.try_into().ok()?))
}

/// Nonnegative `(a, b) != (0, 0)` with `12a + 6b <= 24`.
pub fn claim2_dimension_filter(
    lambdas: (&CycloNumber, &CycloNumber),
) -> Result<Vec<Shape>, GroupError> {
    let mut out = Vec::new();
    for a in 0..=2u64 {
        for b in 0..=4u64 {
            let dim = 12 * a + 6 * b;
            if dim == 0 || dim > 24 {
                continue;
            }
            let chi = chi_e().scale(a as i64).add(&chi_f().scale(b as i64));
            let mult = decompose(&end_character(&chi))?;
            let h_free = mult[4].is_zero() && mult[5].is_zero();
            let trace_identity = if b == 0 {
                constituent_trace_identity(0, lambdas).map(|(x, y)| ("T".to_string(), x, y))
            } else if a == 0 {
                constituent_trace_identity(3, lambdas).map(|(x, y)| ("W".to_string(), x, y))
            } else {
                None
            };
            let eliminated = h_free
                && trace_identity
                    .as_ref()
                    .is_some_and(|(_, x, y)| *x != 0 || *y != 0);
            out.push(Shape {
                a,
                b,
                name: shape_name(a, b),
                dim,
                h_free_endomorphisms: h_free,
                trace_identity,
                eliminated,
            });
        }
    }
    Ok(out)
}

/// One line of the battery report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn fmt_mult(m: &[BigInt; 7]) -> String {
    IRREP_NAMES
        .iter()
        .zip(m)
        .filter(|(_, k)| !k.is_zero())
        .map(|(n, k)| format!("{k}{n}"))
        .collect::<Vec<_>>()
        .join("+")
}

/// Every check of the verifier, in a fixed order.
pub fn run_battery() -> Result<Vec<CheckLine>, GroupError> {
    let g = build_g4()?;
    let mut out = vec![
        check(
            "order",
            g.elements.len() == 24,
            g.elements.len().to_string(),
        ),
        check(
            "presentation s1^3 = s2^3 = (s1 s2)^6 = 1 and generation",
            true,
            "verified while building",
        ),
    ];
    let sizes: Vec<usize> = g.classes.iter().map(Vec::len).collect();
    out.push(check(
        "class sizes",
        sizes == CLASS_SIZES,
        format!("{sizes:?}"),
    ));
    let orders: Vec<u32> = (0..7).map(|k| g.class_members(k)[0].order()).collect();
    out.push(check(
        "class element orders",
        orders == CLASS_ORDERS,
        format!("{orders:?}; printed row {PRINTED_CLASS_ORDERS:?} lists 1 for Cl2"),
    ));
    for c in class_product_check(&g) {
        out.push(check(
            &format!("{} in Cl{}", c.product, c.expected_class),
            c.found_class == c.expected_class,
            format!("Cl{}", c.found_class),
        ));
    }
    out.push(check(
        "character table orthogonality",
        orthogonality_holds(),
        "rows and columns",
    ));
    let w = &character_table()[3];
    let traces_ok = g
        .elements
        .iter()
        .all(|q| Some(&q.matrix().trace()) == g.class_of(q).map(|k| &w.0[k]));
    out.push(check("quaternion trace = W row", traces_ok, "24 elements"));
    let end_e = decompose(&end_character(&chi_e()))?;
    let want_e = [12, 12, 12, 0, 0, 0, 36].map(BigInt::from);
    out.push(check(
        "End(E) decomposition",
        end_e == want_e,
        fmt_mult(&end_e),
    ));
    let end_f = decompose(&end_character(&chi_f()))?;
    let want_f = [3, 3, 3, 0, 0, 0, 9].map(BigInt::from);
    out.push(check(
        "End(F) decomposition",
        end_f == want_f,
        fmt_mult(&end_f),
    ));
    for sc in summand_absence_check()? {
        out.push(check(
            &format!("h, h* not summands of {}", sc.module),
            sc.h_free(),
            format!("h {} h* {}", sc.h_multiplicity, sc.hstar_multiplicity),
        ));
    }
    for ((n, m), want) in [
        ((12, 12), (1, 0)),
        ((6, -6), (0, 1)),
        ((24, 0), (1, 2)),
        ((18, 6), (1, 1)),
    ] {
        let got = claim1_solve(n, m);
        out.push(check(
            &format!("multiplicities from dimensions ({n},{m})"),
            got == Some(want),
            format!("{got:?}"),
        ));
    }
    out.push(check(
        "multiplicities from dimensions (1,2) infeasible",
        claim1_solve(1, 2).is_none(),
        "3/24 not integral",
    ));
    let forms = g4_reflection_form_check(&g)?;
    let two = CycloNumber::from_int(&field(), 2);
    for fc in &forms {
        out.push(check(
            &format!("sum of restricted forms over Cl{} = 2 omega", fc.class),
            fc.cert.lambda == two && fc.cert.matches_closed_form(),
            format!(
                "lambda {} closed form {} zeta {}",
                fc.cert.lambda, fc.cert.closed_form, fc.cert.zeta
            ),
        ));
    }
    let shapes = claim2_dimension_filter((&forms[0].cert.lambda, &forms[1].cert.lambda))?;
    let kept: Vec<&str> = shapes
        .iter()
        .filter(|s| !s.eliminated)
        .map(|s| s.name.as_str())
        .collect();
    let all: Vec<&str> = shapes.iter().map(|s| s.name.as_str()).collect();
    out.push(check(
        "candidate module shapes",
        kept == ["E+F", "E+2F=CG4"] && shapes.len() == 8,
        format!("candidates {} retained {}", all.join(","), kept.join(",")),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: [i64; 7]) -> [BigInt; 7] {
        v.map(BigInt::from)
    }

    #[test]
    fn battery_passes() {
        let lines = run_battery().unwrap();
        assert!(lines.iter().all(|l| l.passed), "{lines:#?}");
        assert!(lines.len() > 20);
    }

    #[test]
    fn quaternion_basics() {
        let (i, j, k) = (
            Quaternion::int(0, 1, 0, 0),
            Quaternion::int(0, 0, 1, 0),
            Quaternion::int(0, 0, 0, 1),
        );
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(s_elements()[0].pow(3), Quaternion::one());
        assert_eq!(s_elements()[0].to_string(), "-1/2 + 1/2i + 1/2j - 1/2k");
    }

    #[test]
    fn classes_match_the_listing() {
        let g = build_g4().unwrap();
        assert_eq!(g.elements.len(), 24);
        let cl3: BTreeSet<_> = g.class_members(2).into_iter().collect();
        assert_eq!(cl3, s_elements().into_iter().collect());
        let cl4: BTreeSet<_> = g.class_members(3).into_iter().collect();
        assert_eq!(cl4, t_elements().into_iter().collect());
        let cl5: BTreeSet<_> = g.class_members(4).into_iter().collect();
        let units: BTreeSet<_> = [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
            .into_iter()
            .flat_map(|(a, b, c, d)| [Quaternion::int(a, b, c, d), -Quaternion::int(a, b, c, d)])
            .collect();
        assert_eq!(cl5, units);
    }

    #[test]
    fn quaternion_trace_is_the_w_row() {
        let g = build_g4().unwrap();
        let w = &character_table()[3];
        for q in &g.elements {
            let k = g.class_of(q).unwrap();
            assert_eq!(q.matrix().trace(), w.0[k]);
        }
    }

    #[test]
    fn h_is_a_representation_with_the_h_row() {
        let g = build_g4().unwrap();
        let h = &character_table()[4];
        for x in &g.elements {
            assert_eq!(h_matrix(&g, x).trace(), h.0[g.class_of(x).unwrap()]);
            for y in &g.elements {
                assert_eq!(
                    h_matrix(&g, &(*x * *y)),
                    h_matrix(&g, x).mul(&h_matrix(&g, y))
                );
            }
        }
    }

    #[test]
    fn decompositions() {
        assert!(orthogonality_holds());
        assert_eq!(
            decompose(&end_character(&chi_e())).unwrap(),
            ints([12, 12, 12, 0, 0, 0, 36])
        );
        assert_eq!(
            decompose(&end_character(&chi_f())).unwrap(),
            ints([3, 3, 3, 0, 0, 0, 9])
        );
        let regular = ClassFunction::from_ints([24, 0, 0, 0, 0, 0, 0]);
        assert_eq!(decompose(&regular).unwrap(), ints([1, 1, 1, 2, 2, 2, 3]));
        assert_eq!(chi_e(), ClassFunction::from_ints([12, 12, 0, 0, 0, 0, 0]));
        assert_eq!(chi_f(), ClassFunction::from_ints([6, -6, 0, 0, 0, 0, 0]));
        assert!(decompose(&ClassFunction::from_ints([1, 0, 0, 0, 0, 0, 0])).is_err());
        let checks = summand_absence_check().unwrap();
        assert!(checks.iter().all(SummandCheck::h_free));
    }

    #[test]
    fn tensor_products_decompose_nonnegatively() {
        let t = character_table();
        for a in &t {
            for b in &t {
                let m = decompose(&a.mul(b)).unwrap();
                assert!(m.iter().all(|x| *x >= BigInt::zero()));
            }
        }
    }

    #[test]
    fn claim1_examples() {
        assert_eq!(claim1_solve(12, 12), Some((1, 0)));
        assert_eq!(claim1_solve(6, -6), Some((0, 1)));
        assert_eq!(claim1_solve(24, 0), Some((1, 2)));
        assert_eq!(claim1_solve(18, 6), Some((1, 1)));
        assert_eq!(claim1_solve(1, 2), None);
        assert_eq!(claim1_solve(-12, -12), None);
        for n in 0..=96 {
            for m in -96..=96 {
                if let Some((a, b)) = claim1_solve(n, m) {
                    assert_eq!((12 * a + 6 * b) as i64, n);
                    assert_eq!(12 * a as i64 - 6 * b as i64, m);
                }
            }
        }
    }

    #[test]
    fn class_products() {
        let g = build_g4().unwrap();
        for c in class_product_check(&g) {
            assert_eq!(c.found_class, c.expected_class, "{}", c.product);
        }
    }

    #[test]
    fn reflection_forms_and_shapes() {
        let g = build_g4().unwrap();
        let f = field();
        let [c3, c4] = g4_reflection_form_check(&g).unwrap();
        assert_eq!(c3.cert.lambda, CycloNumber::from_int(&f, 2));
        assert_eq!(c4.cert.lambda, CycloNumber::from_int(&f, 2));
        assert_eq!(c3.cert.zeta, CycloNumber::root_of_unity(&f, 4));
        let shapes = claim2_dimension_filter((&c3.cert.lambda, &c4.cert.lambda)).unwrap();
        let names: Vec<&str> = shapes.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["F", "2F", "3F", "4F", "E", "E+F", "E+2F=CG4", "2E"]);
        let kept: Vec<&str> = shapes
            .iter()
            .filter(|s| !s.eliminated)
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(kept, ["E+F", "E+2F=CG4"]);
        let e = shapes.iter().find(|s| s.name == "E").unwrap();
        assert_eq!(e.trace_identity, Some(("T".into(), 2, 2)));
        let f1 = shapes.iter().find(|s| s.name == "F").unwrap();
        assert_eq!(f1.trace_identity, Some(("W".into(), -2, -2)));
    }

    #[test]
    fn fixed_vectors_are_killed_by_the_restricted_form() {
        use crate::symplectic::{omega_restricted, symplectic_action, SymplecticVector};
        let g = build_g4().unwrap();
        let s1 = h_matrix(&g, &s_elements()[0]);
        let big = symplectic_action(&s1);
        let fixed = Matrix::identity(4, big.get(0, 0)).sub(&big).null_space();
        let f = field();
        let x1 = fixed
            .iter()
            .map(|v| SymplecticVector::from_coords(v))
            .find(|v| v.h_part.iter().all(Scalar::is_zero))
            .expect("a fixed vector in h*");
        for k in 0..4 {
            let mut e = vec![CycloNumber::zero(&f); 4];
            e[k] = CycloNumber::from_int(&f, 1);
            assert!(
                omega_restricted(&s1, &x1, &SymplecticVector::from_coords(&e))
                    .unwrap()
                    .is_zero()
            );
        }
    }
}
