//! Ground-field scalars.
//!
//! Three fields are supported: exact rationals `Q`, exact Gaussian
//! rationals `Qi`, and complex doubles `C64`. The first two compare
//! exactly; `C64` compares up to an absolute tolerance, so every
//! floating verdict in the crate is explicitly tolerance-based.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Absolute tolerance for all complex-double comparisons.
pub const C64_EPS: f64 = 1e-9;

pub type Rational = BigRational;

/// Tag identifying a ground field at runtime, e.g. in serialized files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Q,
    Qi,
    C64,
}

impl FieldTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FieldTag::Q => "Q",
            FieldTag::Qi => "Qi",
            FieldTag::C64 => "C64",
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(FieldTag::Q),
            "Qi" => Ok(FieldTag::Qi),
            "C64" => Ok(FieldTag::C64),
            other => Err(Error::InvalidParameter(format!(
                "unknown field tag {other:?}, expected Q, Qi, or C64"
            ))),
        }
    }
}

/// Scalar operations every ground field must provide.
///
/// Equality through `PartialEq` is exact for `Q` and `Qi` and
/// tolerance-based for `C64`; algorithms in this crate rely on nothing
/// stronger than that.
pub trait Field:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const TAG: FieldTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    /// A square root of -1 if the field has one.
    fn imaginary_unit() -> Option<Self>;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; None exactly when `is_zero`.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Approximate magnitude, used for pivoting and floating verdicts.
    fn abs_f64(&self) -> f64;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Total order used only to make enumeration and serialization
    /// deterministic; it has no algebraic meaning.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// Exact n-th roots of -1 that exist in this field, in canonical
    /// order. `C64` returns all n numeric roots.
    fn minus_one_nth_roots(n: u32) -> Vec<Self>;

    /// Bounded-height elements for exhaustive searches: integers for
    /// `Q`, Gaussian integers for `Qi`, empty for `C64`.
    fn lattice(height: u32) -> Vec<Self>;

    /// Principal numeric n-th root; None on exact fields.
    fn nth_root(&self, n: u32) -> Option<Self>;

    /// Small random element for samplers and generated test data.
    fn random(rng: &mut ChaCha8Rng) -> Self;

    /// Serialize as a `[re, im]` pair. Exact fields use canonical
    /// rational strings; `C64` uses JSON numbers.
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    /// Parse the CLI scalar syntax, e.g. `-3/4`, `1/2-2/3i`, `0.25`.
    fn parse(s: &str) -> Result<Self>;
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, plain integers, and finite decimals, all exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let bad = |why: &str| Error::Parse(format!("bad rational {s:?}: {why}"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad("numerator"))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad("denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.strip_prefix('-').unwrap_or(int);
        let int_digits = if int_digits.is_empty() { "0" } else { int_digits };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("fractional digits"));
        }
        let whole = BigInt::from_str(int_digits).map_err(|_| bad("integer part"))?;
        let frac_num = BigInt::from_str(frac).map_err(|_| bad("fraction"))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mut value = BigRational::new(whole * &scale + frac_num, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n = BigInt::from_str(s).map_err(|_| bad("integer"))?;
    Ok(BigRational::from(n))
}

fn rational_from_json(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            let f = n.as_f64().ok_or_else(|| {
                Error::Json(format!("{what}: number out of f64 range"))
            })?;
            BigRational::from_float(f)
                .ok_or_else(|| Error::Json(format!("{what}: non-finite number")))
        }
        other => Err(Error::Json(format!(
            "{what}: expected string or number, got {other}"
        ))),
    }
}

/// Splits `a+bi` syntax into real and imaginary substrings. The
/// imaginary part is returned without its trailing `i`; `"1"` for a
/// bare `i`. Sign characters inside exponents are not split points.
fn split_complex(s: &str) -> Result<(Option<&str>, Option<&str>)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let bytes = s.as_bytes();
    let mut split_at = None;
    for i in (1..bytes.len()).rev() {
        let b = bytes[i];
        if (b == b'+' || b == b'-')
            && !matches!(bytes[i - 1], b'e' | b'E' | b'+' | b'-')
        {
            split_at = Some(i);
            break;
        }
    }
    fn imag_body(t: &str) -> &str {
        match t {
            "" | "+" => "1",
            "-" => "-1",
            _ => t,
        }
    }
    match split_at {
        Some(i) if s.ends_with('i') => {
            let re = &s[..i];
            let im_full = &s[i..s.len() - 1];
            Ok((Some(re), Some(imag_body(im_full))))
        }
        Some(_) | None if s.ends_with('i') => {
            let im_full = &s[..s.len() - 1];
            Ok((None, Some(imag_body(im_full))))
        }
        _ => Ok((Some(s), None)),
    }
}

impl Field for BigRational {
    const TAG: FieldTag = FieldTag::Q;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from(BigInt::from(v))
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        Ord::cmp(self, other)
    }

    fn minus_one_nth_roots(n: u32) -> Vec<Self> {
        if n % 2 == 1 {
            vec![<Self as Field>::from_int(-1)]
        } else {
            Vec::new()
        }
    }

    fn lattice(height: u32) -> Vec<Self> {
        let h = height as i64;
        (-h..=h).map(<Self as Field>::from_int).collect()
    }

    fn nth_root(&self, _n: u32) -> Option<Self> {
        None
    }

    fn random(rng: &mut ChaCha8Rng) -> Self {
        let numer = rng.gen_range(-3i64..=3);
        let denom = rng.gen_range(1i64..=2);
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_json(&self) -> Value {
        json!([rational_to_string(self), "0"])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Json(format!("expected [re, im], got {v}")))?;
        let re = rational_from_json(&pair[0], "re")?;
        let im = rational_from_json(&pair[1], "im")?;
        if !Zero::is_zero(&im) {
            return Err(Error::FieldError(format!(
                "imaginary component {} is not representable over Q",
                rational_to_string(&im)
            )));
        }
        Ok(re)
    }

    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

/// Exact element of Q(i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussianRational::new(
            <BigRational as Field>::from_int(re),
            <BigRational as Field>::from_int(im),
        )
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational::new(re, Zero::zero())
    }

    pub fn i() -> Self {
        GaussianRational::from_parts(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// re^2 + im^2; zero exactly when the element is zero.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re_zero = Zero::is_zero(&self.re);
        let im_zero = Zero::is_zero(&self.im);
        if im_zero {
            return f.write_str(&rational_to_string(&self.re));
        }
        let one: BigRational = One::one();
        let im_body = if self.im == one {
            "".to_string()
        } else if self.im == -&one {
            "-".to_string()
        } else {
            rational_to_string(&self.im)
        };
        if re_zero {
            return write!(f, "{im_body}i");
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", rational_to_string(&self.re), im_body)
        } else {
            write!(f, "{}+{}i", rational_to_string(&self.re), im_body)
        }
    }
}

impl std::ops::Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl std::ops::Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl std::ops::Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl std::ops::Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Field for GaussianRational {
    const TAG: FieldTag = FieldTag::Qi;

    fn zero() -> Self {
        GaussianRational::from_parts(0, 0)
    }

    fn one() -> Self {
        GaussianRational::from_parts(1, 0)
    }

    fn from_int(v: i64) -> Self {
        GaussianRational::from_parts(v, 0)
    }

    fn imaginary_unit() -> Option<Self> {
        Some(GaussianRational::i())
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }

    fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_f64_pair();
        re.hypot(im)
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.re
            .cmp(&other.re)
            .then_with(|| self.im.cmp(&other.im))
    }

    fn minus_one_nth_roots(n: u32) -> Vec<Self> {
        // Any solution of z^n = -1 in Q(i) is a root of unity, and the
        // only roots of unity in Q(i) are the fourth roots 1, i, -1, -i.
        match n % 4 {
            1 | 3 => vec![GaussianRational::from_parts(-1, 0)],
            2 => vec![
                GaussianRational::from_parts(0, -1),
                GaussianRational::from_parts(0, 1),
            ],
            _ => Vec::new(),
        }
    }

    fn lattice(height: u32) -> Vec<Self> {
        let h = height as i64;
        let mut out = Vec::with_capacity(((2 * h + 1) * (2 * h + 1)) as usize);
        for re in -h..=h {
            for im in -h..=h {
                out.push(GaussianRational::from_parts(re, im));
            }
        }
        out
    }

    fn nth_root(&self, _n: u32) -> Option<Self> {
        None
    }

    fn random(rng: &mut ChaCha8Rng) -> Self {
        GaussianRational::new(
            <BigRational as Field>::random(rng),
            <BigRational as Field>::random(rng),
        )
    }

    fn to_json(&self) -> Value {
        json!([rational_to_string(&self.re), rational_to_string(&self.im)])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Json(format!("expected [re, im], got {v}")))?;
        Ok(GaussianRational::new(
            rational_from_json(&pair[0], "re")?,
            rational_from_json(&pair[1], "im")?,
        ))
    }

    fn parse(s: &str) -> Result<Self> {
        let (re, im) = split_complex(s)?;
        let re = re.map(parse_rational).transpose()?.unwrap_or_else(Zero::zero);
        let im = im.map(parse_rational).transpose()?.unwrap_or_else(Zero::zero);
        Ok(GaussianRational::new(re, im))
    }
}

/// Complex double with tolerance-based equality. Not transitive;
/// adequate for the desk-scale comparisons this crate performs.
#[derive(Debug, Clone, Copy)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(&self) -> Self {
        C64::new(self.re, -self.im)
    }
}

impl PartialEq for C64 {
    fn eq(&self, other: &Self) -> bool {
        (self.re - other.re).hypot(self.im - other.im) <= C64_EPS
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            return write!(f, "{}", self.re);
        }
        if self.re == 0.0 {
            return write!(f, "{}i", self.im);
        }
        if self.im < 0.0 {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    f64::from_str(s.trim())
        .map_err(|_| Error::Parse(format!("bad float {s:?}")))
}

impl Field for C64 {
    const TAG: FieldTag = FieldTag::C64;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }

    fn one() -> Self {
        C64::new(1.0, 0.0)
    }

    fn from_int(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn imaginary_unit() -> Option<Self> {
        Some(C64::new(0.0, 1.0))
    }

    fn add(&self, rhs: &Self) -> Self {
        C64::new(self.re + rhs.re, self.im + rhs.im)
    }

    fn sub(&self, rhs: &Self) -> Self {
        C64::new(self.re - rhs.re, self.im - rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        C64::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }

    fn neg(&self) -> Self {
        C64::new(-self.re, -self.im)
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let n = self.re * self.re + self.im * self.im;
        Some(C64::new(self.re / n, -self.im / n))
    }

    fn is_zero(&self) -> bool {
        self.abs() <= C64_EPS
    }

    fn abs_f64(&self) -> f64 {
        self.abs()
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.re
            .total_cmp(&other.re)
            .then_with(|| self.im.total_cmp(&other.im))
    }

    fn minus_one_nth_roots(n: u32) -> Vec<Self> {
        (0..n)
            .map(|k| {
                let theta = std::f64::consts::PI * (2.0 * k as f64 + 1.0) / n as f64;
                C64::new(theta.cos(), theta.sin())
            })
            .collect()
    }

    fn lattice(_height: u32) -> Vec<Self> {
        Vec::new()
    }

    fn nth_root(&self, n: u32) -> Option<Self> {
        let r = self.abs();
        if n == 0 {
            return None;
        }
        let theta = self.im.atan2(self.re);
        let root_r = r.powf(1.0 / n as f64);
        let root_theta = theta / n as f64;
        Some(C64::new(
            root_r * root_theta.cos(),
            root_r * root_theta.sin(),
        ))
    }

    fn random(rng: &mut ChaCha8Rng) -> Self {
        C64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
    }

    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Json(format!("expected [re, im], got {v}")))?;
        let comp = |x: &Value, what: &str| -> Result<f64> {
            match x {
                Value::Number(n) => n
                    .as_f64()
                    .ok_or_else(|| Error::Json(format!("{what}: out of range"))),
                Value::String(s) => {
                    parse_rational(s).and_then(|r| {
                        r.to_f64().ok_or_else(|| {
                            Error::Json(format!("{what}: out of range"))
                        })
                    })
                }
                other => Err(Error::Json(format!("{what}: bad component {other}"))),
            }
        };
        Ok(C64::new(comp(&pair[0], "re")?, comp(&pair[1], "im")?))
    }

    fn parse(s: &str) -> Result<Self> {
        let (re, im) = split_complex(s)?;
        let re = re.map(parse_f64).transpose()?.unwrap_or(0.0);
        let im = im.map(parse_f64).transpose()?.unwrap_or(0.0);
        Ok(C64::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rational_parse_forms() {
        assert_eq!(q("-3/4"), BigRational::new(BigInt::from(-3), BigInt::from(4)));
        assert_eq!(q("12"), <BigRational as Field>::from_int(12));
        assert_eq!(q("0.25"), q("1/4"));
        assert_eq!(q("-1.5"), q("-3/2"));
        assert_eq!(q("+2/6"), q("1/3"));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_string_roundtrip() {
        for s in ["0", "7", "-7", "3/4", "-22/7"] {
            assert_eq!(rational_to_string(&q(s)), s);
        }
    }

    #[test]
    fn gaussian_parse_and_display() {
        let cases = [
            ("i", (0, 1, 1, 1)),
            ("-i", (0, 1, -1, 1)),
            ("2", (2, 1, 0, 1)),
            ("1/2-2/3i", (1, 2, -2, 3)),
            ("-1+i", (-1, 1, 1, 1)),
            ("3i", (0, 1, 3, 1)),
        ];
        for (s, (rn, rd, im_n, im_d)) in cases {
            let g = <GaussianRational as Field>::parse(s).unwrap();
            assert_eq!(g.re, BigRational::new(BigInt::from(rn), BigInt::from(rd)));
            assert_eq!(g.im, BigRational::new(BigInt::from(im_n), BigInt::from(im_d)));
            let back = <GaussianRational as Field>::parse(&g.to_string()).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn gaussian_inverse() {
        let z = <GaussianRational as Field>::parse("3+4i").unwrap();
        let inv = Field::inv(&z).unwrap();
        assert_eq!(z.mul(&inv), Field::one());
        assert!(Field::inv(&GaussianRational::zero()).is_none());
    }

    #[test]
    fn minus_one_roots_by_field() {
        assert_eq!(
            <BigRational as Field>::minus_one_nth_roots(3),
            vec![<BigRational as Field>::from_int(-1)]
        );
        assert!(<BigRational as Field>::minus_one_nth_roots(4).is_empty());
        let qi2 = GaussianRational::minus_one_nth_roots(2);
        assert_eq!(qi2.len(), 2);
        for z in &qi2 {
            assert_eq!(z.mul(z), Field::from_int(-1));
        }
        assert!(GaussianRational::minus_one_nth_roots(4).is_empty());
        let c3 = C64::minus_one_nth_roots(3);
        assert_eq!(c3.len(), 3);
        for z in &c3 {
            assert!(z.pow(3).sub(&C64::from_int(-1)).abs() < 1e-12);
        }
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(<BigRational as Field>::lattice(2).len(), 5);
        assert_eq!(GaussianRational::lattice(2).len(), 25);
        assert!(C64::lattice(2).is_empty());
    }

    #[test]
    fn c64_tolerance_eq() {
        let a = C64::new(1.0, 0.0);
        let b = C64::new(1.0 + 1e-12, -1e-12);
        assert_eq!(a, b);
        assert_ne!(a, C64::new(1.0 + 1e-6, 0.0));
        assert!(Field::is_zero(&C64::new(1e-12, -1e-12)));
    }

    #[test]
    fn c64_nth_root_solves() {
        let target = C64::new(-0.3, 0.8);
        let root = target.nth_root(4).unwrap();
        assert!(root.pow(4).sub(&target).abs() < 1e-12);
    }

    #[test]
    fn json_roundtrips() {
        let g = <GaussianRational as Field>::parse("1/2-2/3i").unwrap();
        assert_eq!(GaussianRational::from_json(&g.to_json()).unwrap(), g);
        let r = q("-22/7");
        assert_eq!(<BigRational as Field>::from_json(&Field::to_json(&r)).unwrap(), r);
        assert!(<BigRational as Field>::from_json(&json!(["1", "1"])).is_err());
        let c = C64::new(0.125, -2.5);
        assert_eq!(C64::from_json(&Field::to_json(&c)).unwrap(), c);
    }

    #[test]
    fn canonical_cmp_orders_lattice() {
        let mut pts = GaussianRational::lattice(1);
        let sorted = pts.clone();
        pts.reverse();
        pts.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(pts, sorted);
    }
}
