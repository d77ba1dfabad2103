//! Exact Gaussian-rational arithmetic: the coefficient field `Q(i)`.
//!
//! Every coefficient in the library is a [`Scalar`], a pair of
//! arbitrary-precision rationals `re + im*i` kept in canonical reduced form.
//! All operations are exact; division by zero is reported as an error value,
//! never a panic.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative power of zero")]
    ZeroToNegativePower,
}

/// Parse failure for the `a/b+c/d*i` text syntax, with a byte offset into
/// the (whitespace-stripped) input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar at offset {offset}: {message}")]
pub struct ParseScalarError {
    pub offset: usize,
    pub message: String,
}

/// An element of `Q(i)`: `re + im*i` with both parts reduced rationals.
///
/// The derived ordering is the structural (lexicographic on `(re, im)`)
/// order used for canonical sorting and map keys; it is not an algebraic
/// order on complex numbers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// Real rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// Gaussian rational `a/b + (c/d)i`. Panics if a denominator is zero.
    pub fn gaussian(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(b != 0 && d != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(a), BigInt::from(b)),
            im: BigRational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`, the rational square norm.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power. `pow(a, 0) = 1` for every `a` (the `0^0 = 1`
    /// convention); negative exponents require `a != 0`.
    pub fn pow(&self, n: i64) -> Result<Self, ScalarError> {
        if n == 0 {
            return Ok(Scalar::one());
        }
        let base = if n < 0 {
            if self.is_zero() {
                return Err(ScalarError::ZeroToNegativePower);
            }
            self.inv()?
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}
forward_binop!(Add, add);

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}
forward_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = (&*self) * rhs;
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
    /// Canonical text form, re-parseable by [`Scalar::from_str`]:
    /// `0`, `3`, `-3/4`, `i`, `-i`, `2/3*i`, `1+i`, `5/2-7*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
        }
        if !self.im.is_zero() {
            let (sign, mag) = if self.im.is_negative() {
                ("-", -self.im.clone())
            } else {
                ("+", self.im.clone())
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            if mag.is_one() {
                out.push('i');
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push_str("*i");
            }
        }
        write!(f, "{out}")
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseScalarError> {
        Err(ParseScalarError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseScalarError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(BigInt::from_str(text).unwrap())
    }

    fn rational(&mut self) -> Result<BigRational, ParseScalarError> {
        let numer = self.digits()?;
        if self.eat(b'/') {
            let denom_at = self.pos;
            let denom = self.digits()?;
            if denom.is_zero() {
                self.pos = denom_at;
                return self.err("zero denominator");
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// One signed component: a real rational, or a rational followed by an
    /// optional `*` and `i`, or a bare `i`.
    fn component(&mut self, sign_required: bool) -> Result<(BigRational, bool), ParseScalarError> {
        let negative = if self.eat(b'-') {
            true
        } else if self.eat(b'+') {
            false
        } else if sign_required {
            return self.err("expected '+' or '-'");
        } else {
            false
        };
        let (mag, imaginary) = if self.eat(b'i') {
            (BigRational::one(), true)
        } else {
            let mag = self.rational()?;
            let star = self.eat(b'*');
            if self.eat(b'i') {
                (mag, true)
            } else if star {
                return self.err("expected 'i' after '*'");
            } else {
                (mag, false)
            }
        };
        Ok((if negative { -mag } else { mag }, imaginary))
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `a/b`, `a/b+c/d*i`, `i`, `-i`, `2i`, `3-i` and the like,
    /// ignoring all whitespace. A bare `i` means `0+1i`. At most one real
    /// and one imaginary component are allowed, real part first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let stripped: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            bytes: stripped.as_bytes(),
            pos: 0,
        };
        if p.bytes.is_empty() {
            return p.err("empty input");
        }
        let (first, first_imag) = p.component(false)?;
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        if first_imag {
            im = first;
        } else {
            re = first;
        }
        if p.peek().is_some() {
            if first_imag {
                return p.err("real component must precede the imaginary one");
            }
            let at = p.pos;
            let (second, second_imag) = p.component(true)?;
            if !second_imag {
                p.pos = at;
                return p.err("second component must be imaginary");
            }
            im = second;
        }
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(Scalar::new(re, im))
    }
}
