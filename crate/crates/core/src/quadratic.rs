//! Exact numbers of the form `a + b·√d` with rational `a`, `b` and `d ≥ 0`.
//!
//! Bounds such as `2/(14 + √96)` live here so that comparisons between them
//! are decided exactly. Values with different radicands can still be
//! compared; only arithmetic requires a common radicand.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

#[derive(Clone, Debug)]
pub struct QuadIrrational {
    rational: Rational,
    coeff: Rational,
    radicand: Rational,
}

impl QuadIrrational {
    /// `rational + coeff·√radicand`. Panics on a negative radicand.
    pub fn new(rational: Rational, coeff: Rational, radicand: Rational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        Self {
            rational,
            coeff,
            radicand,
        }
        .normalized()
    }

    pub fn from_rational(value: Rational) -> Self {
        Self::new(value, Rational::zero(), Rational::zero())
    }

    /// `√value`.
    pub fn sqrt(value: Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), value)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    /// `Some` when the value is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeff.is_zero().then_some(&self.rational)
    }

    fn normalized(mut self) -> Self {
        if self.coeff.is_zero() || self.radicand.is_zero() {
            self.coeff = Rational::zero();
            self.radicand = Rational::zero();
            return self;
        }
        if let Some(root) = rational_sqrt(&self.radicand) {
            self.rational += &self.coeff * root;
            self.coeff = Rational::zero();
            self.radicand = Rational::zero();
        }
        self
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.coeff.is_zero() {
            return a;
        }
        let b = self.coeff.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    /// Decimal rendering with `digits` digits after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!("{:.*}", digits, self.to_f64())
    }

    fn common_radicand(&self, other: &Self) -> Rational {
        match (self.coeff.is_zero(), other.coeff.is_zero()) {
            (true, _) => other.radicand.clone(),
            (_, true) => self.radicand.clone(),
            _ => {
                assert!(
                    self.radicand == other.radicand,
                    "arithmetic needs a common radicand ({} vs {})",
                    self.radicand,
                    other.radicand
                );
                self.radicand.clone()
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.common_radicand(other);
        Self::new(&self.rational + &other.rational, &self.coeff + &other.coeff, d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            rational: -&self.rational,
            coeff: -&self.coeff,
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.common_radicand(other);
        Self::new(
            &self.rational * &other.rational + &self.coeff * &other.coeff * &d,
            &self.rational * &other.coeff + &self.coeff * &other.rational,
            d,
        )
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(
            &self.rational * factor,
            &self.coeff * factor,
            self.radicand.clone(),
        )
    }

    /// Reciprocal via the conjugate. Panics on zero.
    pub fn recip(&self) -> Self {
        let norm = &self.rational * &self.rational - &self.coeff * &self.coeff * &self.radicand;
        assert!(!norm.is_zero(), "reciprocal of zero");
        Self::new(
            &self.rational / &norm,
            -&self.coeff / &norm,
            self.radicand.clone(),
        )
    }

    pub fn signum(&self) -> Ordering {
        sign3(&self.rational, &self.coeff, &self.radicand, &Rational::zero(), &Rational::zero())
    }
}

impl PartialEq for QuadIrrational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadIrrational {}

impl PartialOrd for QuadIrrational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadIrrational {
    fn cmp(&self, other: &Self) -> Ordering {
        sign3(
            &(&self.rational - &other.rational),
            &self.coeff,
            &self.radicand,
            &(-&other.coeff),
            &other.radicand,
        )
    }
}

impl From<Rational> for QuadIrrational {
    fn from(value: Rational) -> Self {
        Self::from_rational(value)
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", self.rational);
        }
        if !self.rational.is_zero() {
            write!(f, "{} ", self.rational)?;
            f.write_str(if self.coeff.is_negative() { "- " } else { "+ " })?;
        } else if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        let c = self.coeff.abs();
        if !c.is_one() {
            write!(f, "{c}*")?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = integer_sqrt(value.numer())?;
    let d = integer_sqrt(value.denom())?;
    Some(Rational::new(n, d))
}

fn integer_sqrt(x: &BigInt) -> Option<BigInt> {
    let root = x.sqrt();
    (&root * &root == *x).then_some(root)
}

/// Sign of `b·√d`.
fn sign_term(b: &Rational, d: &Rational) -> Ordering {
    if d.is_zero() {
        Ordering::Equal
    } else {
        b.cmp(&Rational::zero())
    }
}

/// Sign of `a + b·√d`.
fn sign2(a: &Rational, b: &Rational, d: &Rational) -> Ordering {
    let sa = a.cmp(&Rational::zero());
    let sb = sign_term(b, d);
    if sa == sb || sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    // opposite signs: compare a² with b²d
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b·√d + c·√e`.
fn sign3(a: &Rational, b: &Rational, d: &Rational, c: &Rational, e: &Rational) -> Ordering {
    // sign of the radical part v = b√d + c√e
    let sv = {
        let s1 = sign_term(b, d);
        let s2 = sign_term(c, e);
        if s1 == s2 || s2 == Ordering::Equal {
            s1
        } else if s1 == Ordering::Equal {
            s2
        } else {
            match (b * b * d).cmp(&(c * c * e)) {
                Ordering::Greater => s1,
                Ordering::Less => s2,
                Ordering::Equal => Ordering::Equal,
            }
        }
    };
    let sa = a.cmp(&Rational::zero());
    if sa == sv || sv == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal {
        return sv;
    }
    // a and v have opposite signs: compare a² with v² = b²d + c²e + 2bc√(de)
    let rest = a * a - b * b * d - c * c * e;
    let cross = -(Rational::from_integer(2.into()) * b * c);
    match sign2(&rest, &cross, &(d * e)) {
        Ordering::Greater => sa,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}
