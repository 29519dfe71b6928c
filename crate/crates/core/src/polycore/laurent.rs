use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Univariate polynomial in `t` and `t^-1` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored, so structural equality
/// is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

/// Outcome of [`divide_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    /// `num = den * quotient` with an integral quotient.
    Exact(LaurentPoly),
    /// `den` divides `num` over the rationals but not over the integers:
    /// `denominator * num = den * quotient`. Only possible when `den` has
    /// content other than one.
    Fractional {
        quotient: LaurentPoly,
        denominator: BigInt,
    },
    /// `den` does not divide `num`. The remainder of long division, cleared of
    /// denominators when the leading coefficient of `den` is not a unit.
    Remainder(LaurentPoly),
}

impl Division {
    pub fn is_divisible(&self) -> bool {
        !matches!(self, Division::Remainder(_))
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigInt::one(), 0)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        LaurentPoly::monomial(c.into(), 0)
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        LaurentPoly::monomial(BigInt::one(), e)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// Polynomial with `coeffs[i]` as the coefficient of `t^i`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        LaurentPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone().into())),
        )
    }

    /// Sums the given `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Least exponent with a nonzero coefficient.
    pub fn trailing_degree(&self) -> Result<i64, PolyError> {
        self.terms
            .keys()
            .next()
            .copied()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `t -> t^m`.
    pub fn substitute_power(&self, m: i64) -> Self {
        assert!(m > 0, "substitution exponent must be positive");
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Greatest common divisor of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Coefficients of `t^0..=t^deg` for a polynomial with no negative exponents.
    pub fn dense_coeffs(&self) -> Result<Vec<BigInt>, PolyError> {
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        let low = self.trailing_degree()?;
        if low < 0 {
            return Err(PolyError::NegativeExponent(low));
        }
        let mut out = vec![BigInt::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

/// Exact division of Laurent polynomials.
///
/// Powers of `t` are units, so both operands are first normalised to have a
/// nonzero constant term; long division then proceeds by descending exponent
/// over the rationals. Divisibility is decided over the rationals, which for
/// integer polynomials coincides with divisibility in `C[t, 1/t]`.
pub fn divide_exact(num: &LaurentPoly, den: &LaurentPoly) -> Result<Division, PolyError> {
    let den_low = den
        .trailing_degree()
        .map_err(|_| PolyError::DivisionByZero)?;
    let Ok(num_low) = num.trailing_degree() else {
        return Ok(Division::Exact(LaurentPoly::zero()));
    };
    let n = to_rational_dense(&num.shift(-num_low));
    let d = to_rational_dense(&den.shift(-den_low));
    let (q, r) = long_division(n, &d);

    if r.iter().all(Zero::is_zero) {
        let (q_int, denom) = clear_denominators(&q);
        let quotient = q_int.shift(num_low - den_low);
        return Ok(if denom.is_one() {
            Division::Exact(quotient)
        } else {
            Division::Fractional {
                quotient,
                denominator: denom,
            }
        });
    }
    let (r_int, _) = clear_denominators(&r);
    Ok(Division::Remainder(r_int.shift(num_low)))
}

fn to_rational_dense(p: &LaurentPoly) -> Vec<BigRational> {
    let coeffs = p
        .dense_coeffs()
        .expect("normalised polynomial has no negative exponents");
    coeffs.into_iter().map(BigRational::from_integer).collect()
}

/// Returns `(quotient, remainder)` with `deg remainder < deg den`.
fn long_division(
    mut rem: Vec<BigRational>,
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = den.len() - 1;
    let lead = &den[dd];
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        if rem[top].is_zero() {
            continue;
        }
        let c = &rem[top] / lead;
        let shift = top - dd;
        for (i, dc) in den.iter().enumerate() {
            if !dc.is_zero() {
                rem[shift + i] -= &c * dc;
            }
        }
        quot[shift] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

fn clear_denominators(coeffs: &[BigRational]) -> (LaurentPoly, BigInt) {
    let denom = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let poly = LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(i, c)| {
        (
            i as i64,
            (c * BigRational::from_integer(denom.clone())).to_integer(),
        )
    }));
    (poly, denom)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(e, c)| (*e, c.clone())),
        )
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (Some(a_hi), Some(b_hi)) = (self.degree(), rhs.degree()) else {
            return LaurentPoly::zero();
        };
        let a_lo = *self.terms.keys().next().unwrap();
        let b_lo = *rhs.terms.keys().next().unwrap();
        let width = (a_hi - a_lo + b_hi - b_lo + 1) as usize;
        let mut acc = vec![BigInt::zero(); width];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                acc[(ea - a_lo + eb - b_lo) as usize] += ca * cb;
            }
        }
        LaurentPoly::from_terms(
            acc.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + a_lo + b_lo, c)),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, e.g. `t^8 + 2*t^5`, `-t^2 + 3`, `t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match *e {
                0 => None,
                1 => Some("t".to_string()),
                e => Some(format!("t^{e}")),
            };
            match (var, mag.is_one()) {
                (None, _) => write!(f, "{mag}")?,
                (Some(v), true) => f.write_str(&v)?,
                (Some(v), false) => write!(f, "{mag}*{v}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Accepts `c*t^e` terms joined by `+`/`-` in any order, with `*` optional
    /// and `t^1`/`t` or bare constants allowed.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let err = |reason: &str| PolyError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(err("expected '+' or '-' between terms")),
            };
            first = false;
            // A term ends at the next sign that is not an exponent sign.
            let bytes = rest.as_bytes();
            let mut end = 0;
            while end < bytes.len() {
                let b = bytes[end];
                if (b == b'+' || b == b'-') && end > 0 && bytes[end - 1] != b'^' {
                    break;
                }
                end += 1;
            }
            let term = &rest[..end];
            rest = &rest[end..];
            let (coeff, exp) = parse_term(term).map_err(|r| err(&r))?;
            terms.push((exp, if negative { -coeff } else { coeff }));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

fn parse_term(term: &str) -> Result<(BigInt, i64), String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    let Some(tpos) = term.find('t') else {
        let c = term
            .parse::<BigInt>()
            .map_err(|_| format!("bad constant {term:?}"))?;
        return Ok((c, 0));
    };
    let coeff_part = term[..tpos].trim_end_matches('*');
    let coeff = if coeff_part.is_empty() {
        BigInt::one()
    } else {
        coeff_part
            .parse::<BigInt>()
            .map_err(|_| format!("bad coefficient {coeff_part:?}"))?
    };
    let var_part = &term[tpos + 1..];
    let exp = if var_part.is_empty() {
        1
    } else if let Some(e) = var_part.strip_prefix('^') {
        e.parse::<i64>()
            .map_err(|_| format!("bad exponent {e:?}"))?
    } else {
        return Err(format!("unexpected {var_part:?} after t"));
    };
    Ok((coeff, exp))
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p("1 + t") * p("1 - t"), p("1 - t^2"));
        assert_eq!(p("3*t^2 - t^-1") * LaurentPoly::one(), p("3*t^2 - t^-1"));
        assert_eq!(p("1 + t + t^2") * p("1 - t"), p("1 - t^3"));
        assert!((p("1 + t") * LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn division_examples() {
        assert_eq!(
            divide_exact(&p("1 - t^4"), &p("1 - t^2")).unwrap(),
            Division::Exact(p("1 + t^2"))
        );
        let d = divide_exact(&p("1 + t + t^2 + t^3 + t^4"), &p("1 - t + t^2")).unwrap();
        match d {
            Division::Remainder(r) => assert_eq!(r, p("t - 1")),
            other => panic!("expected a remainder, got {other:?}"),
        }
        let num = p("1 + t") * p("1 + t + t^2 + t^3");
        assert_eq!(
            divide_exact(&num, &p("1 + t^2")).unwrap(),
            Division::Exact(p("1 + 2*t + t^2"))
        );
    }

    #[test]
    fn division_errors_and_units() {
        assert_eq!(
            divide_exact(&p("1 + t"), &LaurentPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
        assert_eq!(
            divide_exact(&p("t^5 + t^3"), &p("t^-2")).unwrap(),
            Division::Exact(p("t^7 + t^5"))
        );
        assert_eq!(
            divide_exact(&LaurentPoly::zero(), &p("t")).unwrap(),
            Division::Exact(LaurentPoly::zero())
        );
    }

    #[test]
    fn fractional_and_scaled_remainders() {
        assert_eq!(
            divide_exact(&p("1 + t"), &p("2 + 2*t")).unwrap(),
            Division::Fractional {
                quotient: LaurentPoly::one(),
                denominator: BigInt::from(2)
            }
        );
        // (t^2 + 1) / (2t + 1): quotient t/2 - 1/4, remainder 5/4 -> cleared to 5.
        assert_eq!(
            divide_exact(&p("t^2 + 1"), &p("2*t + 1")).unwrap(),
            Division::Remainder(p("5"))
        );
    }

    #[test]
    fn trailing_degree_examples() {
        assert_eq!(p("t + t^2").trailing_degree(), Ok(1));
        assert_eq!(p("7").trailing_degree(), Ok(0));
        assert_eq!(p("2*t^5 + t^8").trailing_degree(), Ok(5));
        assert_eq!(
            LaurentPoly::zero().trailing_degree(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn text_format() {
        assert_eq!(p("2*t^5 + 1*t^8").to_string(), "t^8 + 2*t^5");
        assert_eq!(p("-t^2+3").to_string(), "-t^2 + 3");
        assert_eq!(p("t^-2 - 4t").to_string(), "-4*t + t^-2");
        assert_eq!(p("1 - t").to_string(), "-t + 1");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("t + t"), p("2*t"));
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("t^x".parse::<LaurentPoly>().is_err());
        assert!("2 t t".parse::<LaurentPoly>().is_err());
    }
}
