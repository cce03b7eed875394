//! Exact arithmetic in the cyclotomic field Q(zeta_12).
//!
//! The field has degree 4 over Q and contains every constant the engine
//! needs: the sixth root of unity zeta_6 = z^2, the imaginary unit i = z^3,
//! and sqrt(3) = z + z^11. Elements are stored in the power basis
//! {1, z, z^2, z^3} and kept reduced by the minimal polynomial
//! z^4 = z^2 - 1, so equality is coefficient-wise.
//!
//! Sign decisions for totally real elements are exact: a real element lies
//! in Q(sqrt 3) and is written p + q*sqrt(3); its sign under the standard
//! embedding z = e^{i pi/6} is decided by comparing p^2 against 3 q^2
//! together with the signs of p and q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational; denominator positive, always reduced.
pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact sign of a totally real element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar {0} is not totally real")]
    NotReal(String),
    #[error("galois index {0} is not invertible modulo 12")]
    BadGaloisIndex(u32),
}

/// An element c0 + c1*z + c2*z^2 + c3*z^3 of Q(zeta_12), reduced.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloScalar {
    c: [Rational; 4],
}

impl CycloScalar {
    pub fn new(c: [Rational; 4]) -> Self {
        CycloScalar { c }
    }

    pub fn zero() -> Self {
        CycloScalar {
            c: [
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut s = Self::zero();
        s.c[0] = r;
        s
    }

    /// z^k for any integer k, reduced into the power basis.
    pub fn root_of_unity(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        // z^6 = -1, so powers 6..11 are the negatives of powers 0..5.
        let (base, negate) = if k < 6 { (k, false) } else { (k - 6, true) };
        let mut c = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        match base {
            0..=3 => c[base] = Rational::one(),
            4 => {
                // z^4 = z^2 - 1
                c[0] = -Rational::one();
                c[2] = Rational::one();
            }
            5 => {
                // z^5 = z^3 - z
                c[1] = -Rational::one();
                c[3] = Rational::one();
            }
            _ => unreachable!(),
        }
        let s = CycloScalar { c };
        if negate {
            -&s
        } else {
            s
        }
    }

    /// The imaginary unit i = z^3.
    pub fn i() -> Self {
        Self::root_of_unity(3)
    }

    /// zeta_6^k, with zeta_6 = z^2.
    pub fn zeta6_pow(k: i64) -> Self {
        Self::root_of_unity(2 * k.rem_euclid(6))
    }

    pub fn coefficients(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// Some(r) when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloScalar {
            c: [
                &self.c[0] * r,
                &self.c[1] * r,
                &self.c[2] * r,
                &self.c[3] * r,
            ],
        }
    }

    /// The Galois automorphism z -> z^k for k coprime to 12.
    pub fn galois(&self, k: u32) -> Result<Self, ScalarError> {
        if ![1, 5, 7, 11].contains(&(k % 12)) {
            return Err(ScalarError::BadGaloisIndex(k));
        }
        let mut out = Self::from_rational(self.c[0].clone());
        for (j, coeff) in self.c.iter().enumerate().skip(1) {
            let power = Self::root_of_unity((k as i64) * (j as i64));
            out = &out + &power.scale(coeff);
        }
        Ok(out)
    }

    /// Complex conjugation z -> z^11 = z^{-1}; an involution.
    pub fn conj(&self) -> Self {
        // Closed form of galois(11): z -> z - z^3, z^2 -> 1 - z^2, z^3 -> -z^3.
        CycloScalar {
            c: [
                &self.c[0] + &self.c[2],
                self.c[1].clone(),
                -&self.c[2],
                -(&self.c[1] + &self.c[3]),
            ],
        }
    }

    /// Multiplicative inverse via the product of Galois conjugates.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let s5 = self.galois(5).unwrap();
        let s7 = self.galois(7).unwrap();
        let s11 = self.galois(11).unwrap();
        let cof = &(&s5 * &s7) * &s11;
        let norm = self * &cof;
        let n = norm
            .as_rational()
            .expect("field norm must be rational");
        debug_assert!(!n.is_zero());
        Ok(cof.scale(&n.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Multiplicative order when the element is a root of unity.
    pub fn root_order(&self) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=12u32 {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Decompose a totally real element as p + q*sqrt(3).
    pub fn real_parts(&self) -> Result<(Rational, Rational), ScalarError> {
        // Real elements have c2 = 0 and c3 = -c1/2; then sqrt(3) = 2 z - z^3
        // gives p = c0, q = c1/2.
        let half = rat(1, 2);
        if !self.c[2].is_zero() || self.c[3] != -(&self.c[1] * &half) {
            return Err(ScalarError::NotReal(self.to_string()));
        }
        Ok((self.c[0].clone(), &self.c[1] * &half))
    }

    /// Exact sign under the standard embedding z = e^{i pi/6}.
    pub fn sign_of_real(&self) -> Result<Sign, ScalarError> {
        let (p, q) = self.real_parts()?;
        let sign_of = |r: &Rational| {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        };
        let (sp, sq) = (sign_of(&p), sign_of(&q));
        let s = match (sp, sq) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // Mixed signs: compare p^2 against 3 q^2.
                let p2 = &p * &p;
                let q3 = &q * &q * rat(3, 1);
                match p2.cmp(&q3) {
                    std::cmp::Ordering::Greater => sp,
                    std::cmp::Ordering::Less => sq,
                    std::cmp::Ordering::Equal => 0,
                }
            }
        };
        Ok(match s {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        })
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        CycloScalar {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        CycloScalar {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        // Polynomial product up to degree 6, then substitute
        // z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1.
        let mut p = vec![Rational::zero(); 7];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                p[i + j] += a * b;
            }
        }
        CycloScalar {
            c: [
                &p[0] - &p[4] - &p[6],
                &p[1] - &p[5],
                &p[2] + &p[4],
                &p[3] + &p[5],
            ],
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{}", mag)?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}z", if unit_coeff { "" } else { "*" })?,
                _ => write!(f, "{}z^{}", if unit_coeff { "" } else { "*" }, k)?,
            }
        }
        Ok(())
    }
}

// Debug output reads like the token syntax, which keeps failure messages short.
impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
