//! Exact arithmetic in a real quadratic field Q(sqrt(d)).
//!
//! A [`Surd`] is a value `r + s*sqrt(d)` with rational `r`, `s` and a
//! squarefree kernel `d`. Values are kept canonical at all times: `d` is
//! squarefree, and purely rational values fold to `d = 0, s = 0`, so
//! structural equality coincides with numerical equality and surds can be
//! hashed and used as map keys. Signs, floors and comparisons are decided by
//! integer arithmetic only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Arbitrary-precision rational numbers, always gcd-reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// Errors from exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("operands live in different quadratic fields: sqrt({left}) vs sqrt({right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivByZero,
    #[error("square kernel {0} exceeds the supported range")]
    KernelTooLarge(BigInt),
}

/// A syntax or field error in a surd literal, with a byte position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{msg} at position {pos}")]
pub struct ParseSurdError {
    pub pos: usize,
    pub msg: String,
}

/// An exact element `r + s*sqrt(d)` of a real quadratic field.
///
/// Canonical form: `d` is squarefree and nonnegative; if the value is
/// rational then `s = 0` and `d = 0`. Two surds are equal iff their
/// `(d, r, s)` triples are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    d: u64,
    r: Rational,
    s: Rational,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat_int(n: i64) -> Rational {
    Rational::from_integer(big(n))
}

/// Splits `n` into `(f, k)` with `n = f^2 * k` and `k` squarefree.
///
/// Trial division by small primes, then a perfect-square check on the
/// cofactor. Any cofactor surviving both passes has no square divisor below
/// 2^40, which is far beyond the data handled here.
fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_negative(), "radicand must be nonnegative");
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let mut square_root = BigInt::one();
    let mut rest = n.clone();
    let mut p = big(2);
    while &p * &p * &p * &p <= rest || p < big(1 << 20) {
        if &p * &p > rest {
            break;
        }
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            square_root *= &p;
        }
        p += 1;
    }
    let isq = rest.sqrt();
    if &isq * &isq == rest {
        square_root *= isq;
        rest = BigInt::one();
    }
    (square_root, rest)
}

impl Surd {
    /// Builds `r + s*sqrt(d)`, extracting square factors of `d` and folding
    /// rational values to kernel 0.
    pub fn new(d: u64, r: Rational, s: Rational) -> Surd {
        let (f, k) = squarefree_decompose(&BigInt::from(d));
        let (d, s) = match k.to_u64().expect("squarefree kernel fits u64") {
            0 => (0u64, Rational::zero()),
            1 => return Surd { d: 0, r: r + s * Rational::from_integer(f), s: Rational::zero() },
            k => (k, s * Rational::from_integer(f)),
        };
        if s.is_zero() {
            Surd { d: 0, r, s }
        } else {
            Surd { d, r, s }
        }
    }

    /// The square root of a nonnegative integer.
    pub fn sqrt(n: u64) -> Surd {
        Surd::new(n, Rational::zero(), Rational::one())
    }

    pub fn from_rational(r: Rational) -> Surd {
        Surd { d: 0, r, s: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Surd {
        Surd::from_rational(rat_int(n))
    }

    pub fn zero() -> Surd {
        Surd::from_int(0)
    }

    pub fn one() -> Surd {
        Surd::from_int(1)
    }

    /// Squarefree kernel of the field; 0 for rational values.
    pub fn kernel(&self) -> u64 {
        self.d
    }

    pub fn rational_part(&self) -> &Rational {
        &self.r
    }

    pub fn surd_part(&self) -> &Rational {
        &self.s
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.r)
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.r.is_integer()
    }

    /// The common kernel of two values, or an error when both are properly
    /// irrational in different fields.
    fn join_kernel(&self, rhs: &Surd) -> Result<u64, NumError> {
        match (self.d, rhs.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(NumError::FieldMismatch { left: a, right: b }),
        }
    }

    pub fn checked_add(&self, rhs: &Surd) -> Result<Surd, NumError> {
        let d = self.join_kernel(rhs)?;
        Ok(Surd::new(d, &self.r + &rhs.r, &self.s + &rhs.s))
    }

    pub fn checked_sub(&self, rhs: &Surd) -> Result<Surd, NumError> {
        let d = self.join_kernel(rhs)?;
        Ok(Surd::new(d, &self.r - &rhs.r, &self.s - &rhs.s))
    }

    pub fn checked_mul(&self, rhs: &Surd) -> Result<Surd, NumError> {
        let d = self.join_kernel(rhs)?;
        let dr = rat_int(d as i64);
        let r = &self.r * &rhs.r + &self.s * &rhs.s * dr;
        let s = &self.r * &rhs.s + &self.s * &rhs.r;
        Ok(Surd::new(d, r, s))
    }

    pub fn checked_div(&self, rhs: &Surd) -> Result<Surd, NumError> {
        if rhs.is_zero() {
            return Err(NumError::DivByZero);
        }
        // 1/(r + s*sqrt(d)) = (r - s*sqrt(d)) / (r^2 - s^2 d)
        let d = self.join_kernel(rhs)?;
        let dr = rat_int(d as i64);
        let norm = &rhs.r * &rhs.r - &rhs.s * &rhs.s * dr;
        let inv = Surd::new(d, &rhs.r / &norm, -&rhs.s / &norm);
        self.checked_mul(&inv)
    }

    /// Galois conjugate `r - s*sqrt(d)`.
    pub fn conj(&self) -> Surd {
        Surd { d: self.d, r: self.r.clone(), s: -&self.s }
    }

    pub fn abs(&self) -> Surd {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact sign, decided integrally: when `r` and `s` disagree in sign the
    /// comparison reduces to `r^2` against `s^2 d` with denominators cleared.
    pub fn signum(&self) -> i32 {
        let sr = sign_of(&self.r);
        if self.s.is_zero() {
            return sr;
        }
        let ss = sign_of(&self.s);
        if sr == 0 {
            return ss;
        }
        if sr == ss {
            return sr;
        }
        // r and s have strictly opposite signs; |r| vs |s| sqrt(d).
        let dr = rat_int(self.d as i64);
        let cmp = &self.r * &self.r - &self.s * &self.s * dr;
        sr * sign_of(&cmp)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// The unique integer `n` with `n <= x < n + 1`, via integer square root
    /// bracketing of `s^2 d`.
    pub fn floor(&self) -> BigInt {
        // Clear to (a + b*sqrt(d)) / c with c > 0.
        let c = self.r.denom().lcm(self.s.denom());
        let a = self.r.numer() * (&c / self.r.denom());
        let b = self.s.numer() * (&c / self.s.denom());
        if b.is_zero() {
            return a.div_floor(&c);
        }
        let t = &b * &b * big(self.d as i64);
        let root = t.sqrt();
        // d squarefree and b nonzero make b*sqrt(d) irrational, so the floor
        // of b*sqrt(d) is root (b > 0) or -root - 1 (b < 0).
        let fl = if b.is_positive() { root } else { -root - 1 };
        (a + fl).div_floor(&c)
    }

    pub fn ceil(&self) -> BigInt {
        -((-self).floor())
    }

    /// `floor(x / y)`.
    pub fn floor_div(&self, y: &Surd) -> Result<BigInt, NumError> {
        Ok(self.checked_div(y)?.floor())
    }

    /// Decimal expansion with `sig` significant digits, exactly rounded
    /// (half away from zero). Returns plain decimal notation.
    pub fn decimal(&self, sig: usize) -> String {
        assert!(sig > 0);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let x = self.abs();
        // e = floor(log10 x), found by exact comparison against powers of 10.
        let mut e: i64 = 0;
        let ten = Surd::from_int(10);
        let mut low = Surd::one();
        if x.partial_cmp(&low) == Some(Ordering::Less) {
            while x.partial_cmp(&low) == Some(Ordering::Less) {
                low = &low / &ten;
                e -= 1;
            }
        } else {
            let mut high = &low * &ten;
            while x.partial_cmp(&high) != Some(Ordering::Less) {
                low = high;
                high = &low * &ten;
                e += 1;
            }
        }
        // digits = round(x * 10^(sig - 1 - e)), an integer with sig digits
        // (sig + 1 if rounding carries past a power of ten; harmless).
        let shift = sig as i64 - 1 - e;
        let pow = Rational::from_integer(big(10)).pow(shift as i32);
        let scaled = &x * &Surd::from_rational(pow);
        let digits = (&scaled + &Surd::from_rational(Rational::new(big(1), big(2)))).floor();
        let ds = digits.to_string();
        let e = e + (ds.len() as i64 - sig as i64); // carry correction
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if e >= 0 {
            let point = (e + 1) as usize;
            if point >= ds.len() {
                out.push_str(&ds);
                out.push_str(&"0".repeat(point - ds.len()));
            } else {
                out.push_str(&ds[..point]);
                out.push('.');
                out.push_str(&ds[point..]);
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-e - 1) as usize));
            out.push_str(&ds);
        }
        // Trim trailing zeros after a decimal point.
        if out.contains('.') {
            while out.ends_with('0') {
                out.pop();
            }
            if out.ends_with('.') {
                out.pop();
            }
        }
        out
    }

    /// Fixed-point decimal with `places` digits after the point, exactly
    /// rounded. Used by figure quantization.
    pub fn decimal_fixed(&self, places: u32) -> String {
        let scale = Rational::from_integer(big(10).pow(places));
        let scaled = self * &Surd::from_rational(scale);
        let half = Surd::from_rational(Rational::new(big(1), big(2)));
        let n = if self.is_negative() {
            -(&-&scaled + &half).floor()
        } else {
            (&scaled + &half).floor()
        };
        let neg = n.is_negative();
        let digits = n.abs().to_string();
        let digits = if digits.len() <= places as usize {
            format!("{}{}", "0".repeat(places as usize + 1 - digits.len()), digits)
        } else {
            digits
        };
        let point = digits.len() - places as usize;
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&digits[..point]);
        if places > 0 {
            out.push('.');
            out.push_str(&digits[point..]);
        }
        out
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for Surd {
    /// Exact order; `None` when the values live in different irrational
    /// fields and cannot be subtracted.
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        let diff = self.checked_sub(other).ok()?;
        Some(match diff.signum() {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        })
    }
}

macro_rules! surd_ops {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Surd {
            type Output = Surd;
            fn $method(self, rhs: &Surd) -> Surd {
                self.$checked(rhs).expect("surd arithmetic in mismatched fields")
            }
        }
        impl $trait for Surd {
            type Output = Surd;
            fn $method(self, rhs: Surd) -> Surd {
                (&self).$method(&rhs)
            }
        }
    };
}

surd_ops!(Add, add, checked_add);
surd_ops!(Sub, sub, checked_sub);
surd_ops!(Mul, mul, checked_mul);
surd_ops!(Div, div, checked_div);

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { d: self.d, r: -&self.r, s: -&self.s }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Surd {
    /// Canonical literal: `1+sqrt(3)`, `-3/4-1/4*sqrt(5)`, `2*sqrt(3)`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            return write!(f, "{}", fmt_rational(&self.r));
        }
        let mut out = String::new();
        if !self.r.is_zero() {
            out.push_str(&fmt_rational(&self.r));
            if self.s.is_positive() {
                out.push('+');
            }
        }
        let abs_s = self.s.abs();
        if self.s.is_negative() {
            out.push('-');
        }
        if !abs_s.is_one() {
            out.push_str(&fmt_rational(&abs_s));
            out.push('*');
        }
        out.push_str(&format!("sqrt({})", self.d));
        write!(f, "{}", out)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// Literal grammar
//
//   surd := term (('+'|'-') term)*
//   term := rat | rat? 'sqrt(' uint ')' | rat '*' 'sqrt(' uint ')'
//   rat  := '-'? uint ('/' uint)?
//
// Whitespace is allowed between tokens. All radicands in one expression must
// share the same squarefree kernel after extraction of square factors.
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseSurdError> {
        Err(ParseSurdError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
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

    fn uint(&mut self) -> Result<BigInt, ParseSurdError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a digit");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(BigInt::from_str(text).unwrap())
    }

    fn rat(&mut self, neg: bool) -> Result<Rational, ParseSurdError> {
        let n = self.uint()?;
        let n = if neg { -n } else { n };
        if self.eat(b'/') {
            let pos = self.pos;
            let d = self.uint()?;
            if d.is_zero() {
                self.pos = pos;
                return self.err("zero denominator");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn sqrt_arg(&mut self) -> Result<u64, ParseSurdError> {
        // caller consumed "sqrt"
        if !self.eat(b'(') {
            return self.err("expected '(' after sqrt");
        }
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&b'-') {
            return self.err("negative radicand");
        }
        let pos = self.pos;
        let n = self.uint()?;
        let n = match n.to_u64() {
            Some(n) => n,
            None => {
                self.pos = pos;
                return self.err("radicand too large");
            }
        };
        if !self.eat(b')') {
            return self.err("expected ')'");
        }
        Ok(n)
    }

    fn starts_sqrt(&mut self) -> bool {
        self.skip_ws();
        self.bytes[self.pos..].starts_with(b"sqrt")
    }

    fn term(&mut self, neg: bool) -> Result<Surd, ParseSurdError> {
        if self.starts_sqrt() {
            self.pos += 4;
            let n = self.sqrt_arg()?;
            let coef = if neg { rat_int(-1) } else { Rational::one() };
            return Ok(Surd::new(n, Rational::zero(), coef));
        }
        let coef = self.rat(neg)?;
        let explicit_mul = self.eat(b'*');
        if self.starts_sqrt() {
            self.pos += 4;
            let n = self.sqrt_arg()?;
            Ok(Surd::new(n, Rational::zero(), coef))
        } else if explicit_mul {
            self.err("expected sqrt after '*'")
        } else {
            Ok(Surd::from_rational(coef))
        }
    }

    fn surd(&mut self) -> Result<Surd, ParseSurdError> {
        let mut neg = self.eat(b'-');
        let mut acc = self.term(neg)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                None => break,
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
            self.pos += 1;
            let term = self.term(neg)?;
            match acc.checked_add(&term) {
                Ok(v) => acc = v,
                Err(NumError::FieldMismatch { left, right }) => {
                    return self.err(format!(
                        "mixed field kernels sqrt({}) and sqrt({})",
                        left, right
                    ))
                }
                Err(e) => return self.err(e.to_string()),
            }
        }
        Ok(acc)
    }
}

impl FromStr for Surd {
    type Err = ParseSurdError;

    fn from_str(text: &str) -> Result<Surd, ParseSurdError> {
        let mut p = Parser::new(text);
        p.skip_ws();
        if p.pos == p.bytes.len() {
            return p.err("empty surd literal");
        }
        p.surd()
    }
}

// JSON encoding: {"d": uint, "r": "p/q", "s": "p/q"}.

#[derive(Serialize, Deserialize)]
struct SurdRepr {
    d: u64,
    r: String,
    s: String,
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let n = BigInt::from_str(n.trim()).map_err(|e| format!("bad numerator: {e}"))?;
    let d = match d {
        Some(d) => BigInt::from_str(d.trim()).map_err(|e| format!("bad denominator: {e}"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(n, d))
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SurdRepr { d: self.d, r: fmt_rational(&self.r), s: fmt_rational(&self.s) }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Surd, D::Error> {
        let repr = SurdRepr::deserialize(de)?;
        let r = parse_rational(&repr.r).map_err(D::Error::custom)?;
        let s = parse_rational(&repr.s).map_err(D::Error::custom)?;
        Ok(Surd::new(repr.d, r, s))
    }
}

/// Serde adapters encoding big integers as decimal strings, keeping JSON
/// output human-checkable and free of precision limits.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        BigInt::from_str(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for integer lattice points as string pairs.
pub mod bigint_pair_string {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
    use serde::ser::SerializeTuple;
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &(BigInt, BigInt), s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&v.0.to_string())?;
        t.serialize_element(&v.1.to_string())?;
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(BigInt, BigInt), D::Error> {
        let (a, b) = <(String, String)>::deserialize(d)?;
        Ok((
            BigInt::from_str(&a).map_err(D::Error::custom)?,
            BigInt::from_str(&b).map_err(D::Error::custom)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use proptest::prelude::*;
    use rand::Rng;

    fn s(text: &str) -> Surd {
        text.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&s("1+sqrt(3)") * &s("1-sqrt(3)"), Surd::from_int(-2));
    }

    #[test]
    fn additive_identity() {
        assert_eq!(&s("1+sqrt(3)") + &Surd::zero(), s("1+sqrt(3)"));
    }

    #[test]
    fn scalar_division() {
        let q = (&s("3+sqrt(5)") / &Surd::from_int(-4)).to_string();
        assert_eq!(q, "-3/4-1/4*sqrt(5)");
    }

    #[test]
    fn mismatched_kernels_error() {
        let e = s("sqrt(2)").checked_add(&s("sqrt(3)")).unwrap_err();
        assert_eq!(e, NumError::FieldMismatch { left: 2, right: 3 });
        assert!(s("1+sqrt(2)").checked_mul(&s("1+sqrt(3)")).is_err());
    }

    #[test]
    fn division_by_zero_error() {
        assert_eq!(Surd::one().checked_div(&Surd::zero()), Err(NumError::DivByZero));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(s("5-2*sqrt(5)").signum(), 1);
        assert_eq!(s("1-sqrt(3)").signum(), -1);
        assert_eq!(Surd::zero().signum(), 0);
    }

    #[test]
    fn floor_examples() {
        assert_eq!(s("2+sqrt(5)").floor(), big(4));
        assert_eq!(s("1+sqrt(3)").floor_div(&Surd::one()).unwrap(), big(2));
        // -(3+sqrt(5))/4: cross-checked below against a 100-digit expansion.
        let x = s("-3/4-1/4*sqrt(5)");
        assert_eq!(x.floor(), big(-2));
        let dec = x.decimal(100);
        let approx: f64 = dec.parse().unwrap();
        assert_eq!(approx.floor() as i64, -2);
    }

    #[test]
    fn square_factor_extraction() {
        let x = s("sqrt(12)");
        assert_eq!(x, Surd::new(3, rat_int(0), rat_int(2)));
        assert_eq!(&x * &x, Surd::from_int(12));
        assert_eq!(s("sqrt(4)"), Surd::from_int(2));
        assert_eq!(s("sqrt(0)"), Surd::zero());
        assert_eq!(s("sqrt(1)"), Surd::one());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(s("1+sqrt(3)"), Surd::new(3, rat_int(1), rat_int(1)));
        assert_eq!(
            s("-3/4-1/4*sqrt(5)"),
            Surd::new(5, Rational::new(big(-3), big(4)), Rational::new(big(-1), big(4)))
        );
        assert_eq!(s("2sqrt(2)"), s("2*sqrt(2)"));
        assert_eq!(s(" 1 + 2 * sqrt( 7 ) "), Surd::new(7, rat_int(1), rat_int(2)));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = "1+sqrt(-3)".parse::<Surd>().unwrap_err();
        assert_eq!(e.pos, 7);
        assert!(e.msg.contains("negative radicand"));
        let e = "sqrt(2)+sqrt(3)".parse::<Surd>().unwrap_err();
        assert!(e.msg.contains("mixed field"));
        assert!("".parse::<Surd>().is_err());
        assert!("1+".parse::<Surd>().is_err());
        assert!("1/0".parse::<Surd>().is_err());
        assert!("2*3".parse::<Surd>().is_err());
    }

    #[test]
    fn decimal_expansions() {
        assert_eq!(s("sqrt(2)").decimal(10), "1.414213562");
        assert_eq!(Surd::from_int(1200).decimal(2), "1200");
        assert_eq!(s("-1/8").decimal(3), "-0.125");
        assert_eq!(Surd::zero().decimal(5), "0");
        // Rounding carry: 0.999... at 2 digits becomes 1.0.
        assert_eq!(Surd::from_rational(Rational::new(big(999), big(1000))).decimal(2), "1");
        assert_eq!(s("sqrt(3)").decimal_fixed(6), "1.732051");
        assert_eq!(s("-sqrt(3)").decimal_fixed(6), "-1.732051");
        assert_eq!(Surd::from_int(2).decimal_fixed(3), "2.000");
    }

    #[test]
    fn field_axioms_hold_exactly() {
        let mut rng = sampling::rng(11);
        for _ in 0..2500 {
            let d = [2u64, 3, 5][rng.gen_range(0..3)];
            let a = sampling::random_surd(&mut rng, d, 6);
            let b = sampling::random_surd(&mut rng, d, 6);
            let c = sampling::random_surd(&mut rng, d, 6);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a + &(-&a), Surd::zero());
            if !a.is_zero() {
                assert_eq!(&(&b / &a) * &a, b);
                assert_eq!(&a / &a, Surd::one());
            }
        }
    }

    #[test]
    fn floor_brackets_value() {
        let mut rng = sampling::rng(12);
        for _ in 0..10_000 {
            let d = [0u64, 2, 3, 5, 7][rng.gen_range(0..5)];
            let x = sampling::random_surd(&mut rng, d, 20);
            let n = Surd::from_rational(Rational::from_integer(x.floor()));
            assert!((&x - &n).signum() >= 0, "floor({x:?}) too high");
            assert!((&(&x - &n) - &Surd::one()).signum() < 0, "floor({x:?}) too low");
        }
    }

    #[test]
    fn sign_agrees_with_decimal_evaluation() {
        let mut rng = sampling::rng(13);
        for _ in 0..10_000 {
            let d = [2u64, 3, 5, 13][rng.gen_range(0..4)];
            let x = sampling::random_surd(&mut rng, d, 12);
            let dec = x.decimal(100);
            let from_dec = if dec == "0" {
                0
            } else if dec.starts_with('-') {
                -1
            } else {
                1
            };
            assert_eq!(x.signum(), from_dec, "sign mismatch for {x:?} = {dec}");
        }
    }

    #[test]
    fn serde_roundtrip_matches_schema() {
        let x = s("-3/4-1/4*sqrt(5)");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"d":5,"r":"-3/4","s":"-1/4"}"#);
        assert_eq!(serde_json::from_str::<Surd>(&json).unwrap(), x);
        // Non-canonical input canonicalizes on read.
        let y: Surd = serde_json::from_str(r#"{"d":12,"r":"0","s":"1"}"#).unwrap();
        assert_eq!(y, s("2*sqrt(3)"));
    }

    proptest! {
        #[test]
        fn format_parse_roundtrip(r1 in -40i64..40, r2 in 1i64..9, s1 in -40i64..40, s2 in 1i64..9,
                                  d in prop::sample::select(vec![0u64, 2, 3, 5, 6, 7, 10])) {
            let x = Surd::new(d, Rational::new(big(r1), big(r2)), Rational::new(big(s1), big(s2)));
            let text = x.to_string();
            prop_assert_eq!(text.parse::<Surd>().unwrap(), x);
        }

        #[test]
        fn floor_quot_consistent(a in -60i64..60, b in 1i64..30) {
            let x = Surd::from_int(a);
            let y = Surd::from_int(b);
            prop_assert_eq!(x.floor_div(&y).unwrap(), big(a.div_euclid(b)));
        }
    }
}
