//! Exact arithmetic on quadratic surds a + b*sqrt(d) with rational
//! a, b and rational d >= 0. Wall positions along stability segments
//! are roots of rational quadratics, so they live here.
//!
//! Comparisons are exact, including across different radicands, via
//! sign analysis and squaring; no floating point is consulted.

use std::cmp::Ordering;
use std::fmt;

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::scalar::rational_to_string;

#[derive(Debug, Clone)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    d: BigRational,
}

/// sqrt of a nonnegative rational when it is itself rational.
fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    debug_assert!(!r.is_negative());
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

fn sign_rational(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Surd {
    /// Canonicalizes: zero coefficient or zero radicand collapse to a
    /// rational, and perfect-square radicands fold into the rational
    /// part. `d` must be nonnegative.
    pub fn new(a: BigRational, b: BigRational, d: BigRational) -> Surd {
        assert!(!d.is_negative(), "negative radicand {d}");
        if b.is_zero() || d.is_zero() {
            return Surd {
                a,
                b: Zero::zero(),
                d: Zero::zero(),
            };
        }
        if let Some(s) = exact_sqrt(&d) {
            return Surd {
                a: a + b * s,
                b: Zero::zero(),
                d: Zero::zero(),
            };
        }
        Surd { a, b, d }
    }

    pub fn rational(a: BigRational) -> Surd {
        Surd {
            a,
            b: Zero::zero(),
            d: Zero::zero(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_coeff(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigRational {
        &self.d
    }

    pub fn add(&self, other: &Surd) -> Surd {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.combine(other, true)
    }

    fn combine(&self, other: &Surd, negate: bool) -> Surd {
        let ob = if negate { -&other.b } else { other.b.clone() };
        let oa = if negate { -&other.a } else { other.a.clone() };
        if other.is_rational() {
            return Surd::new(&self.a + oa, self.b.clone(), self.d.clone());
        }
        if self.is_rational() {
            return Surd::new(&self.a + oa, ob, other.d.clone());
        }
        assert_eq!(self.d, other.d, "mixed radicands in surd addition");
        Surd::new(&self.a + oa, &self.b + ob, self.d.clone())
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        if other.is_rational() {
            return Surd::new(&self.a * &other.a, &self.b * &other.a, self.d.clone());
        }
        if self.is_rational() {
            return other.mul(self);
        }
        assert_eq!(self.d, other.d, "mixed radicands in surd product");
        Surd::new(
            &self.a * &other.a + &self.b * &other.b * &self.d,
            &self.a * &other.b + &self.b * &other.a,
            self.d.clone(),
        )
    }

    pub fn scale(&self, r: &BigRational) -> Surd {
        Surd::new(&self.a * r, &self.b * r, self.d.clone())
    }

    pub fn neg(&self) -> Surd {
        Surd {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Exact sign of a + b*sqrt(d).
    pub fn sign(&self) -> i8 {
        if self.b.is_zero() {
            return sign_rational(&self.a);
        }
        let sa = sign_rational(&self.a);
        let sb = sign_rational(&self.b);
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: compare a^2 against b^2 d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Exact comparison, radicands may differ.
    pub fn cmp_exact(&self, other: &Surd) -> Ordering {
        // sign of (a1 - a2) + b1 sqrt(d1) - b2 sqrt(d2)
        let p = &self.a - &other.a;
        let s = sign_sum(&p, &self.b, &self.d, &(-&other.b), &other.d);
        match s {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": rational_to_string(&self.a),
            "q": rational_to_string(&self.b),
            "d": rational_to_string(&self.d),
        })
    }
}

/// Exact sign of p + q*sqrt(u) + r*sqrt(v).
fn sign_sum(p: &BigRational, q: &BigRational, u: &BigRational, r: &BigRational, v: &BigRational) -> i8 {
    let left = Surd::new(p.clone(), q.clone(), u.clone());
    if r.is_zero() || v.is_zero() {
        return left.sign();
    }
    if left.is_rational() {
        return Surd::new(left.a, r.clone(), v.clone()).sign();
    }
    let ls = left.sign();
    let ms = sign_rational(r);
    if ls == 0 {
        return ms;
    }
    if ms == 0 || ls == ms {
        return ls;
    }
    // opposite signs: compare left^2 against r^2 v, both exact
    let left_sq = left.mul(&left);
    let diff = left_sq.sub(&Surd::rational(r * r * v));
    match diff.sign() {
        1 => ls,
        -1 => ms,
        _ => 0,
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&rational_to_string(&self.a));
        }
        let (sign, mag) = if self.b.is_negative() {
            ("-", -&self.b)
        } else {
            ("+", self.b.clone())
        };
        let one: BigRational = One::one();
        if mag == one {
            write!(
                f,
                "{}{}sqrt({})",
                rational_to_string(&self.a),
                sign,
                rational_to_string(&self.d)
            )
        } else {
            write!(
                f,
                "{}{}{}*sqrt({})",
                rational_to_string(&self.a),
                sign,
                rational_to_string(&mag),
                rational_to_string(&self.d)
            )
        }
    }
}

/// Evaluates c0 + c1 t + c2 t^2 exactly at a surd t.
pub fn eval_quadratic(c: &[BigRational; 3], t: &Surd) -> Surd {
    let t2 = t.mul(t);
    Surd::rational(c[0].clone())
        .add(&t.scale(&c[1]))
        .add(&t2.scale(&c[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn surd(a: &str, b: &str, d: &str) -> Surd {
        Surd::new(q(a), q(b), q(d))
    }

    #[test]
    fn perfect_squares_collapse() {
        let s = surd("1", "3", "4/9");
        assert!(s.is_rational());
        assert_eq!(*s.rational_part(), q("3"));
        assert!(surd("1", "0", "2").is_rational());
    }

    #[test]
    fn signs() {
        assert_eq!(surd("0", "1", "2").sign(), 1);
        assert_eq!(surd("-3/2", "1", "2").sign(), -1); // sqrt(2) < 3/2
        assert_eq!(surd("-7/5", "1", "2").sign(), 1); // sqrt(2) > 7/5
        assert_eq!(surd("-3", "3/2", "4").sign(), 0);
        assert_eq!(surd("2", "-1", "5").sign(), -1); // sqrt(5) > 2
        assert_eq!(surd("0", "0", "0").sign(), 0);
    }

    #[test]
    fn cross_radicand_compare() {
        // sqrt(2) < sqrt(3) < 2 - wait, sqrt(3) > sqrt(2), both < 2
        let r2 = surd("0", "1", "2");
        let r3 = surd("0", "1", "3");
        assert_eq!(r2.cmp_exact(&r3), Ordering::Less);
        assert_eq!(r3.cmp_exact(&surd("2", "0", "0")), Ordering::Less);
        // 1 + sqrt(2) vs sqrt(6): 2.414... vs 2.449...
        let lhs = surd("1", "1", "2");
        let rhs = surd("0", "1", "6");
        assert_eq!(lhs.cmp_exact(&rhs), Ordering::Less);
        // sqrt(8) = 2 sqrt(2)
        assert_eq!(surd("0", "1", "8"), surd("0", "2", "2"));
    }

    #[test]
    fn arithmetic() {
        let s = surd("1/2", "1", "5");
        let t = s.add(&s);
        assert_eq!(t, surd("1", "2", "5"));
        let p = s.mul(&s); // 1/4 + 5 + sqrt(5) = 21/4 + sqrt(5)
        assert_eq!(p, surd("21/4", "1", "5"));
        assert_eq!(s.sub(&s).sign(), 0);
        assert_eq!(s.neg().sign(), -1);
    }

    #[test]
    fn quadratic_roots_evaluate_to_zero() {
        // t^2 - t - 1 has root (1 + sqrt(5))/2
        let c = [q("-1"), q("-1"), q("1")];
        let root = surd("1/2", "1/2", "5");
        assert_eq!(eval_quadratic(&c, &root).sign(), 0);
        let shifted = eval_quadratic(&c, &root.add(&Surd::rational(q("1/1000"))));
        assert_eq!(shifted.sign(), 1);
        let back = eval_quadratic(&c, &root.sub(&Surd::rational(q("1/1000"))));
        assert_eq!(back.sign(), -1);
    }

    #[test]
    fn f64_projection() {
        let s = surd("1/2", "1/2", "5");
        assert!((s.to_f64() - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn display_forms() {
        assert_eq!(surd("1/2", "0", "0").to_string(), "1/2");
        assert_eq!(surd("1/2", "-1/3", "5").to_string(), "1/2-1/3*sqrt(5)");
        assert_eq!(surd("0", "1", "2").to_string(), "0+sqrt(2)");
    }
}
