//! Exact scalar fields: the rationals and cyclotomic fields `Q(z_m)`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::polycore::cyclotomic;

/// Minimal exact-field interface used by the generic series and matrix code.
/// Elements carry their own field context, so identities are built from an
/// existing element.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// `Q(z_m) = Q[x] / Phi_m(x)`; shared by all of its elements.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    modulus: u64,
    /// Coefficients of `Phi_m`, ascending, monic.
    phi: Vec<BigInt>,
}

impl CycloField {
    /// Shared field instance for `Q(z_m)`.
    pub fn get(m: u64) -> Arc<CycloField> {
        assert!(m >= 1, "cyclotomic modulus must be positive");
        static FIELDS: OnceLock<Mutex<BTreeMap<u64, Arc<CycloField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(|| Mutex::new(BTreeMap::new()));
        let mut guard = fields.lock().unwrap();
        guard
            .entry(m)
            .or_insert_with(|| {
                let phi = cyclotomic(m)
                    .dense_coeffs()
                    .expect("cyclotomic polynomials are honest polynomials");
                Arc::new(CycloField { modulus: m, phi })
            })
            .clone()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

/// Element of `Q(z_m)` as a residue polynomial of degree below `phi(m)`.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNumber {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn from_rational(field: &Arc<CycloField>, q: BigRational) -> Self {
        let mut z = CycloNumber::zero(field);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(field: &Arc<CycloField>, k: i64) -> Self {
        CycloNumber::from_rational(field, BigRational::from_integer(k.into()))
    }

    /// `z_m^k` for any integer `k`.
    pub fn root_of_unity(field: &Arc<CycloField>, k: i64) -> Self {
        let m = field.modulus as i64;
        let e = k.rem_euclid(m) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        CycloNumber::reduce(field, raw)
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn reduce(field: &Arc<CycloField>, mut raw: Vec<BigRational>) -> Self {
        let deg = field.degree();
        // Phi_m is monic, so plain long division stays in Q.
        while raw.len() > deg {
            let top = raw.pop().unwrap();
            if !Zero::is_zero(&top) {
                let shift = raw.len() - deg;
                for (i, c) in field.phi[..deg].iter().enumerate() {
                    if !c.is_zero() {
                        raw[shift + i] -= &top * BigRational::from_integer(c.clone());
                    }
                }
            }
        }
        raw.resize(deg, BigRational::zero());
        CycloNumber {
            field: field.clone(),
            coeffs: raw,
        }
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// The integer value, if this element lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Complex conjugation, the automorphism `z -> z^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.field.modulus as usize;
        let mut raw = vec![BigRational::zero(); m.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(m - i) % m] += c;
        }
        CycloNumber::reduce(&self.field, raw)
    }

    /// Re-expresses this element in `Q(z_n)` for a multiple `n` of the modulus.
    pub fn embed(&self, target: &Arc<CycloField>) -> Self {
        let (m, n) = (self.field.modulus, target.modulus);
        assert!(n % m == 0, "Q(z_{m}) does not embed in Q(z_{n})");
        let step = (n / m) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] += c;
        }
        CycloNumber::reduce(target, raw)
    }

    fn check_same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.modulus == other.field.modulus,
            "mixing Q(z_{}) and Q(z_{})",
            self.field.modulus,
            other.field.modulus
        );
    }

    fn rational_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); (a.len() + b.len()).saturating_sub(1)];
        for (i, x) in a.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !Zero::is_zero(y) {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }
}

impl Scalar for CycloNumber {
    fn zero_like(&self) -> Self {
        CycloNumber::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        CycloNumber::from_int(&self.field, 1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add(&self, o: &Self) -> Self {
        self.check_same_field(o);
        CycloNumber {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.check_same_field(o);
        CycloNumber {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        self.check_same_field(o);
        CycloNumber::reduce(
            &self.field,
            Self::rational_poly_mul(&self.coeffs, &o.coeffs),
        )
    }

    fn neg(&self) -> Self {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Extended Euclid in `Q[x]` against `Phi_m`.
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let phi: Vec<BigRational> = self
            .field
            .phi
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        // Invariant: s_i * self == r_i (mod phi).
        let (mut r0, mut r1) = (phi, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &Self::rational_poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].recip();
        let raw: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        Some(CycloNumber::reduce(&self.field, raw))
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && Zero::is_zero(v.last().unwrap()) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![BigRational::zero()], trim(rem));
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for top in (db..rem.len()).rev() {
        if Zero::is_zero(&rem[top]) {
            continue;
        }
        let c = &rem[top] / &b[db];
        for (i, y) in b.iter().enumerate() {
            rem[top - db + i] -= &c * y;
        }
        q[top - db] = c;
    }
    rem.truncate(db.max(1));
    (trim(q), trim(rem))
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.modulus == other.field.modulus && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl Hash for CycloNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.modulus.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for CycloNumber {
    /// Residue polynomial in `z = exp(2 pi i / m)`, e.g. `-z - 1` or `1/2*z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match i {
                0 => None,
                1 => Some("z".to_string()),
                i => Some(format!("z^{i}")),
            };
            match (var, mag.is_one()) {
                (None, _) => write!(f, "{mag}")?,
                (Some(v), true) => f.write_str(&v)?,
                (Some(v), false) => write!(f, "{mag}*{v}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.field.modulus, self)
    }
}
