//! The symplectic space `h + h*` of a linear group, restricted forms of
//! reflections and their class sums.

use crate::error::GroupError;
use crate::field::{CycloNumber, Scalar};
use crate::linalg::Matrix;

pub type CMatrix = Matrix<CycloNumber>;

/// A vector of `h + h*` in coordinates: `h_part` in the standard basis of `h`,
/// `hstar_part` in the dual basis.
#[derive(Clone, PartialEq, Debug)]
pub struct SymplecticVector {
    pub h_part: Vec<CycloNumber>,
    pub hstar_part: Vec<CycloNumber>,
}

impl SymplecticVector {
    pub fn new(h_part: Vec<CycloNumber>, hstar_part: Vec<CycloNumber>) -> Self {
        assert_eq!(
            h_part.len(),
            hstar_part.len(),
            "h and h* parts must have equal length"
        );
        SymplecticVector { h_part, hstar_part }
    }

    pub fn rank(&self) -> usize {
        self.h_part.len()
    }

    pub fn coords(&self) -> Vec<CycloNumber> {
        self.h_part
            .iter()
            .chain(&self.hstar_part)
            .cloned()
            .collect()
    }

    pub fn from_coords(v: &[CycloNumber]) -> Self {
        let n = v.len() / 2;
        SymplecticVector::new(v[..n].to_vec(), v[n..].to_vec())
    }

    /// `omega((f1,f2),(g1,g2)) = f2(g1) - g2(f1)`.
    pub fn omega(&self, other: &SymplecticVector) -> CycloNumber {
        let dot = |a: &[CycloNumber], b: &[CycloNumber]| {
            a.iter()
                .zip(b)
                .fold(a[0].zero_like(), |acc, (x, y)| acc.add(&x.mul(y)))
        };
        dot(&self.hstar_part, &other.h_part).sub(&dot(&other.hstar_part, &self.h_part))
    }
}

/// Gram matrix `J = [[0, -I], [I, 0]]` of `omega` on `h + h*` with `dim h = n`.
pub fn omega_gram(n: usize, sample: &CycloNumber) -> CMatrix {
    let (zero, one) = (sample.zero_like(), sample.one_like());
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if c == r + n {
            one.neg()
        } else if r == c + n {
            one.clone()
        } else {
            zero.clone()
        }
    })
}

/// `g` acting on `h + h*`: `diag(g, (g^{-1})^T)`.
pub fn symplectic_action(g: &CMatrix) -> CMatrix {
    let n = g.rows();
    let dual = g
        .inverse()
        .expect("group elements are invertible")
        .transpose();
    let zero = g.get(0, 0).zero_like();
    Matrix::from_fn(2 * n, 2 * n, |r, c| match (r < n, c < n) {
        (true, true) => g.get(r, c).clone(),
        (false, false) => dual.get(r - n, c - n).clone(),
        _ => zero.clone(),
    })
}

/// Nontrivial eigenvalue of a reflection of `h`, or an error if `rank(1 - s) != 1`.
pub fn reflection_eigenvalue(s: &CMatrix) -> Result<CycloNumber, GroupError> {
    let id = Matrix::identity(s.rows(), s.get(0, 0));
    if id.sub(s).rank() != 1 {
        return Err(GroupError::NotAReflection);
    }
    let n_minus_1 = CycloNumber::from_int(s.get(0, 0).field(), s.rows() as i64 - 1);
    Ok(s.trace().sub(&n_minus_1))
}

/// Projection of `h + h*` onto `Im(1 - s)` along `Ker(1 - s)`.
pub fn reflection_projection(s: &CMatrix) -> Result<CMatrix, GroupError> {
    reflection_eigenvalue(s)?;
    let big = symplectic_action(s);
    let one_minus = Matrix::identity(big.rows(), big.get(0, 0)).sub(&big);
    let image = one_minus.column_space();
    let kernel = one_minus.null_space();
    let k = image.len();
    let basis: Vec<_> = image.into_iter().chain(kernel).collect();
    let c = Matrix::from_columns(&basis);
    let c_inv = c
        .inverse()
        .ok_or_else(|| GroupError::Invariant("image and kernel of 1 - s do not span".into()))?;
    let zero = big.get(0, 0).zero_like();
    let one = zero.one_like();
    let keep = Matrix::from_fn(big.rows(), big.rows(), |r, col| {
        if r == col && r < k {
            one.clone()
        } else {
            zero.clone()
        }
    });
    Ok(c.mul(&keep).mul(&c_inv))
}

/// Gram matrix of `omega_s(x, y) = omega(pi_s x, pi_s y)`.
pub fn restricted_gram(s: &CMatrix) -> Result<CMatrix, GroupError> {
    let pi = reflection_projection(s)?;
    let j = omega_gram(s.rows(), s.get(0, 0));
    Ok(pi.transpose().mul(&j).mul(&pi))
}

/// `omega_s(x, y)` for a reflection `s` of `h`.
pub fn omega_restricted(
    s: &CMatrix,
    x: &SymplecticVector,
    y: &SymplecticVector,
) -> Result<CycloNumber, GroupError> {
    let pi = reflection_projection(s)?;
    let px = SymplecticVector::from_coords(&pi.apply(&x.coords()));
    let py = SymplecticVector::from_coords(&pi.apply(&y.coords()));
    Ok(px.omega(&py))
}

/// `(k/n) (1 - z)^{-1} (1 - z^{-1})^{-1} (2 - z - z^{-1})`.
pub fn lemma_scalar(k: usize, n: usize, zeta: &CycloNumber) -> CycloNumber {
    let f = zeta.field();
    let one = zeta.one_like();
    let zinv = zeta.inv().expect("eigenvalues are nonzero");
    let a = one.sub(zeta).inv().expect("nontrivial eigenvalue");
    let b = one.sub(&zinv).inv().expect("nontrivial eigenvalue");
    let c = CycloNumber::from_int(f, 2).sub(zeta).sub(&zinv);
    let kn = CycloNumber::from_int(f, k as i64)
        .mul(&CycloNumber::from_int(f, n as i64).inv().expect("n > 0"));
    kn.mul(&a).mul(&b).mul(&c)
}

/// Certificate for one reflection class: `Omega = lambda * omega`.
#[derive(Clone, Debug)]
pub struct ClassFormSum {
    pub class_size: usize,
    pub zeta: CycloNumber,
    pub lambda: CycloNumber,
    pub closed_form: CycloNumber,
    pub omega_sum: CMatrix,
}

impl ClassFormSum {
    pub fn matches_closed_form(&self) -> bool {
        self.lambda == self.closed_form
    }
}

/// Sums the restricted forms over a conjugacy class of reflections and checks
/// that the result is a scalar multiple of `omega`.
pub fn class_form_sum(class: &[CMatrix]) -> Result<ClassFormSum, GroupError> {
    let first = class
        .first()
        .ok_or_else(|| GroupError::Invariant("empty reflection class".into()))?;
    let n = first.rows();
    let zeta = reflection_eigenvalue(first)?;
    let mut total: Option<CMatrix> = None;
    for s in class {
        if reflection_eigenvalue(s)? != zeta {
            return Err(GroupError::Invariant(
                "reflections in one class have different eigenvalues".into(),
            ));
        }
        let g = restricted_gram(s)?;
        total = Some(match total {
            None => g,
            Some(t) => t.add(&g),
        });
    }
    let total = total.expect("class is nonempty");
    let j = omega_gram(n, first.get(0, 0));
    // J[n][0] = 1, so the candidate scalar sits at the same position of Omega.
    let lambda = total.get(n, 0).clone();
    if total != j.scale(&lambda) {
        return Err(GroupError::Invariant(
            "sum of restricted forms is not proportional to omega".into(),
        ));
    }
    let closed_form = lemma_scalar(class.len(), n, &zeta);
    Ok(ClassFormSum {
        class_size: class.len(),
        zeta,
        lambda,
        closed_form,
        omega_sum: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CycloField;

    fn cm(m: u64, rows: &[&[i64]]) -> CMatrix {
        let f = CycloField::get(m);
        Matrix::from_fn(rows.len(), rows.len(), |r, c| {
            CycloNumber::from_int(&f, rows[r][c])
        })
    }

    #[test]
    fn omega_is_alternating() {
        let f = CycloField::get(3);
        let z = |k| CycloNumber::root_of_unity(&f, k);
        let x = SymplecticVector::new(vec![z(1), z(0)], vec![z(2), CycloNumber::zero(&f)]);
        let y = SymplecticVector::new(vec![z(0), z(2)], vec![z(1), z(1)]);
        assert!(x.omega(&x).is_zero());
        assert_eq!(x.omega(&y), y.omega(&x).neg());
        let gram = omega_gram(2, &z(0));
        let via_gram: CycloNumber = x
            .coords()
            .iter()
            .zip(gram.apply(&y.coords()))
            .fold(CycloNumber::zero(&f), |acc, (a, b)| acc.add(&a.mul(&b)));
        assert_eq!(via_gram, x.omega(&y));
    }

    #[test]
    fn transposition_kernel_is_killed() {
        let s = cm(1, &[&[0, 1], &[1, 0]]);
        let f = CycloField::get(1);
        let one = CycloNumber::from_int(&f, 1);
        let zero = CycloNumber::zero(&f);
        let fixed = SymplecticVector::new(
            vec![one.clone(), one.clone()],
            vec![zero.clone(), zero.clone()],
        );
        let y = SymplecticVector::new(
            vec![one.clone(), zero.clone()],
            vec![zero.clone(), one.clone()],
        );
        assert!(omega_restricted(&s, &fixed, &y).unwrap().is_zero());
        let x = SymplecticVector::new(
            vec![zero.clone(), zero.clone()],
            vec![one.clone(), one.neg()],
        );
        assert!(!omega_restricted(&s, &y, &x).unwrap().is_zero());
    }

    #[test]
    fn non_reflections_are_rejected() {
        let id = cm(1, &[&[1, 0], &[0, 1]]);
        let minus = cm(1, &[&[-1, 0], &[0, -1]]);
        let f = CycloField::get(1);
        let v = SymplecticVector::new(
            vec![CycloNumber::zero(&f); 2],
            vec![CycloNumber::zero(&f); 2],
        );
        assert!(matches!(
            omega_restricted(&id, &v, &v),
            Err(GroupError::NotAReflection)
        ));
        assert!(matches!(
            restricted_gram(&minus),
            Err(GroupError::NotAReflection)
        ));
    }

    #[test]
    fn projection_is_idempotent() {
        let s = cm(1, &[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let p = reflection_projection(&s).unwrap();
        assert_eq!(p.mul(&p), p);
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn lemma_scalar_examples() {
        let f = CycloField::get(3);
        let z = CycloNumber::root_of_unity(&f, 1);
        assert_eq!(lemma_scalar(2, 2, &z), CycloNumber::from_int(&f, 1));
        let f2 = CycloField::get(2);
        let minus = CycloNumber::from_int(&f2, -1);
        assert_eq!(lemma_scalar(3, 3, &minus), CycloNumber::from_int(&f2, 1));
    }
}
