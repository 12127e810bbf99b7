//! Exact field elements: rationals with an optional Gaussian-rational extension.
//!
//! A [`Scalar`] is either a real rational or a pair `re + im·i` with `im ≠ 0`.
//! The split keeps the common real path as cheap as a single `BigRational`
//! while still allowing the complex parameter choices of the bundled examples.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Real(BigRational),
    /// Invariant: the imaginary part is nonzero.
    Complex(BigRational, BigRational),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Real(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Real(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Real(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        if im.is_zero() {
            Scalar::Real(re)
        } else {
            Scalar::Complex(re, im)
        }
    }

    pub fn i() -> Self {
        Scalar::Complex(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Real(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Real(r) if r.is_one())
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Scalar::Real(_))
    }

    pub fn re(&self) -> BigRational {
        match self {
            Scalar::Real(r) | Scalar::Complex(r, _) => r.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match self {
            Scalar::Real(_) => BigRational::zero(),
            Scalar::Complex(_, i) => i.clone(),
        }
    }

    /// Exact magnitude used for residuals: `|x|` for reals and `|re| + |im|`
    /// for Gaussian rationals. Zero iff the scalar is zero.
    pub fn magnitude(&self) -> BigRational {
        match self {
            Scalar::Real(r) => r.abs(),
            Scalar::Complex(re, im) => re.abs() + im.abs(),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Real(_) => self.clone(),
            Scalar::Complex(re, im) => Scalar::Complex(re.clone(), -im),
        }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        match self {
            Scalar::Real(r) if r.is_zero() => None,
            Scalar::Real(r) => Some(Scalar::Real(r.recip())),
            Scalar::Complex(re, im) => {
                let norm = re * re + im * im;
                Some(Scalar::complex(re / &norm, -(im / &norm)))
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Real part as `f64`; `None` for non-real scalars.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Scalar::Real(r) => r.to_f64(),
            Scalar::Complex(..) => None,
        }
    }

    pub fn from_f64_exact(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Scalar::Real)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Real(v)
    }
}

fn add_parts(a: &Scalar, b: &Scalar, sign: bool) -> Scalar {
    match (a, b) {
        (Scalar::Real(x), Scalar::Real(y)) => Scalar::Real(if sign { x + y } else { x - y }),
        _ => {
            let (re, im) = if sign {
                (a.re() + b.re(), a.im() + b.im())
            } else {
                (a.re() - b.re(), a.im() - b.im())
            };
            Scalar::complex(re, im)
        }
    }
}

fn mul_parts(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Real(x), Scalar::Real(y)) => Scalar::Real(x * y),
        (Scalar::Real(x), Scalar::Complex(re, im)) | (Scalar::Complex(re, im), Scalar::Real(x)) => {
            Scalar::complex(x * re, x * im)
        }
        (Scalar::Complex(a_re, a_im), Scalar::Complex(b_re, b_im)) => {
            Scalar::complex(a_re * b_re - a_im * b_im, a_re * b_im + a_im * b_re)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_parts(a, b, true));
forward_binop!(Sub, sub, |a, b| add_parts(a, b, false));
forward_binop!(Mul, mul, mul_parts);
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| {
    let inv = b.checked_inv().expect("division by zero scalar");
    mul_parts(a, &inv)
});

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Real(x), Scalar::Real(y)) => *x += y,
            _ => *self = add_parts(self, rhs, true),
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Real(x), Scalar::Real(y)) => *x -= y,
            _ => *self = add_parts(self, rhs, false),
        }
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_parts(self, rhs);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Real(r) => Scalar::Real(-r),
            Scalar::Complex(re, im) => Scalar::Complex(-re, -im),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Real(r) => f.write_str(&fmt_rational(r)),
            Scalar::Complex(re, im) => {
                if re.is_zero() {
                    write!(f, "{}i", fmt_rational(im))
                } else if im.is_negative() {
                    write!(f, "{}-{}i", fmt_rational(re), fmt_rational(&-im))
                } else {
                    write!(f, "{}+{}i", fmt_rational(re), fmt_rational(im))
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p`, `p/q`, `-p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl Scalar {
    /// Parses a rational, or when `complex` is set a Gaussian rational such as
    /// `1/2+3/4i`, `-i`, `2i`.
    pub fn parse(s: &str, complex: bool) -> Result<Self, Error> {
        let t = s.trim();
        if !complex || !t.ends_with('i') {
            return parse_rational(t).map(Scalar::Real);
        }
        let body = &t[..t.len() - 1];
        // The split point is the last sign that is not the leading character.
        let split = body
            .char_indices()
            .filter(|&(pos, c)| pos > 0 && (c == '+' || c == '-'))
            .map(|(pos, _)| pos)
            .next_back();
        let (re_str, im_str) = match split {
            Some(pos) => (&body[..pos], &body[pos..]),
            None => ("0", body),
        };
        let im_str = match im_str.trim() {
            "" | "+" => "1",
            "-" => "-1",
            other => other.strip_prefix('+').unwrap_or(other),
        };
        let re = parse_rational(re_str)?;
        let im = parse_rational(im_str)?;
        Ok(Scalar::complex(re, im))
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Scalar::parse(s, true)
    }
}

/// Orders residual magnitudes.
pub fn max_magnitude<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigRational {
    values
        .into_iter()
        .map(Scalar::magnitude)
        .max_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
        .unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = Scalar::ratio(2, -4);
        assert_eq!(a, Scalar::ratio(-1, 2));
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(Scalar::ratio(6, 3).to_string(), "2");
    }

    #[test]
    fn field_ops() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        assert_eq!(&a + &b, Scalar::ratio(1, 2));
        assert_eq!(&a - &b, Scalar::ratio(1, 6));
        assert_eq!(&a * &b, Scalar::ratio(1, 18));
        assert_eq!(&a / &b, Scalar::from_int(2));
        assert!(Scalar::zero().checked_inv().is_none());
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        let z = Scalar::parse("1/2-3/4i", true).unwrap();
        assert_eq!(z.re(), BigRational::new(1.into(), 2.into()));
        assert_eq!(z.im(), BigRational::new((-3).into(), 4.into()));
        assert_eq!(z.to_string(), "1/2-3/4i");
        let w = z.checked_inv().unwrap();
        assert!((&z * &w).is_one());
        // i - i collapses back to a real
        assert!((&i - &i).is_real());
        assert_eq!(z.magnitude(), BigRational::new(5.into(), 4.into()));
    }

    #[test]
    fn parse_forms() {
        for (src, shown) in [
            ("3", "3"),
            ("-4/6", "-2/3"),
            ("i", "1i"),
            ("-i", "-1i"),
            ("2+i", "2+1i"),
            ("-1/2-2i", "-1/2-2i"),
        ] {
            assert_eq!(Scalar::parse(src, true).unwrap().to_string(), shown);
        }
        assert!(Scalar::parse("1/0", false).is_err());
        assert!(Scalar::parse("abc", false).is_err());
        assert!(Scalar::parse("2i", false).is_err());
    }
}
