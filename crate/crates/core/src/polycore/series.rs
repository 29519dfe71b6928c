use num_rational::BigRational;

use super::laurent::LaurentPoly;
use crate::error::PolyError;
use crate::field::Scalar;

/// First `n + 1` coefficients of `num / den` as a formal power series over
/// any exact field. `den[0]` must be invertible.
pub fn series_divide<F: Scalar>(num: &[F], den: &[F], n: usize) -> Result<Vec<F>, PolyError> {
    let lead = den.first().ok_or(PolyError::ZeroConstantTerm)?;
    let inv = lead.inv().ok_or(PolyError::ZeroConstantTerm)?;
    let zero = lead.zero_like();
    let mut out: Vec<F> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.get(k).cloned().unwrap_or_else(|| zero.clone());
        for j in 1..=k.min(den.len() - 1) {
            if !den[j].is_zero() {
                acc = acc.sub(&den[j].mul(&out[k - j]));
            }
        }
        out.push(acc.mul(&inv));
    }
    Ok(out)
}

/// Truncated power-series quotient of two integer polynomials.
pub fn series_quotient(
    num: &LaurentPoly,
    den: &LaurentPoly,
    n: usize,
) -> Result<Vec<BigRational>, PolyError> {
    let to_q = |p: &LaurentPoly| -> Result<Vec<BigRational>, PolyError> {
        Ok(p.dense_coeffs()?
            .into_iter()
            .map(BigRational::from_integer)
            .collect())
    };
    let d = to_q(den)?;
    if d.first()
        .is_none_or(|c| *c == BigRational::from_integer(0.into()))
    {
        return Err(PolyError::ZeroConstantTerm);
    }
    series_divide(&to_q(num)?, &d, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|x| BigRational::from_integer((*x).into()))
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(
            series_quotient(&p("1"), &p("1 - t"), 3).unwrap(),
            ints(&[1, 1, 1, 1])
        );
        let sq = p("1 - t") * p("1 - t");
        assert_eq!(series_quotient(&p("1"), &sq, 2).unwrap(), ints(&[1, 2, 3]));
        assert_eq!(
            series_quotient(&p("1 - t^2"), &p("1 - t"), 4).unwrap(),
            ints(&[1, 1, 0, 0, 0])
        );
    }

    #[test]
    fn rejects_bad_denominators() {
        assert_eq!(
            series_quotient(&p("1"), &p("t + t^2"), 3),
            Err(PolyError::ZeroConstantTerm)
        );
        assert_eq!(
            series_quotient(&p("1"), &LaurentPoly::zero(), 3),
            Err(PolyError::ZeroConstantTerm)
        );
        assert_eq!(
            series_quotient(&p("t^-1"), &p("1"), 3),
            Err(PolyError::NegativeExponent(-1))
        );
    }

    #[test]
    fn rational_coefficients() {
        // 1 / (2 - t) = 1/2 + t/4 + t^2/8
        let s = series_quotient(&p("1"), &p("2 - t"), 2).unwrap();
        let expect: Vec<BigRational> = [(1, 2), (1, 4), (1, 8)]
            .iter()
            .map(|(a, b)| BigRational::new((*a).into(), (*b).into()))
            .collect();
        assert_eq!(s, expect);
    }
}
