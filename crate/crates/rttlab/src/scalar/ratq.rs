//! Exact rational functions in `q`, optionally extended by `w` with `w^2 = -q`.
//!
//! Every value is kept in a canonical reduced form, so structural equality is
//! semantic equality. The `w` component exists only while a computation
//! actually involves half-integer powers of `-q`; plain values stay plain.

use super::poly::QPoly;
use num_traits::Signed;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient not invertible: {0}")]
    NotInvertible(String),
    #[error("series inversion direction is ambiguous for a window spanning zero")]
    AmbiguousDirection,
    #[error("value has a nonzero w-component where a plain value was required")]
    ResidualWComponent,
}

/// Reduced fraction of Laurent polynomials in `q`.
///
/// Invariants: denominator nonzero, `gcd(num, den)` a unit, denominator with
/// lowest exponent zero and positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFrac {
    num: QPoly,
    den: QPoly,
}

impl RatFrac {
    fn normalized(num: QPoly, den: QPoly) -> RatFrac {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFrac { num: QPoly::zero(), den: QPoly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        // unit normalization: den.lo = 0, positive leading coefficient
        let shift = den.min_exp().unwrap();
        den = den.mul_qpow(-shift);
        num = num.mul_qpow(-shift);
        if den.leading_coeff().is_negative() {
            den = den.neg();
            num = num.neg();
        }
        RatFrac { num, den }
    }

    pub fn zero() -> Self {
        RatFrac { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        RatFrac { num: QPoly::one(), den: QPoly::one() }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFrac { num: p, den: QPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    fn add(&self, rhs: &RatFrac) -> RatFrac {
        RatFrac::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn neg(&self) -> RatFrac {
        RatFrac { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, rhs: &RatFrac) -> RatFrac {
        RatFrac::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn inv(&self) -> Result<RatFrac, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(RatFrac::normalized(self.den.clone(), self.num.clone()))
    }

    fn invert_q(&self) -> RatFrac {
        RatFrac::normalized(self.num.invert_q(), self.den.invert_q())
    }
}

impl fmt::Display for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Element `a + w*b` of the coefficient field, `w^2 = -q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatQ {
    a: RatFrac,
    b: Option<Box<RatFrac>>,
}

impl RatQ {
    fn make(a: RatFrac, b: Option<RatFrac>) -> RatQ {
        match b {
            Some(b) if !b.is_zero() => RatQ { a, b: Some(Box::new(b)) },
            _ => RatQ { a, b: None },
        }
    }

    pub fn zero() -> Self {
        RatQ { a: RatFrac::zero(), b: None }
    }

    pub fn one() -> Self {
        RatQ { a: RatFrac::one(), b: None }
    }

    pub fn from_int(n: i64) -> Self {
        RatQ { a: RatFrac::from_poly(QPoly::from_int(n)), b: None }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatQ { a: RatFrac::from_poly(p), b: None }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        RatQ::from_poly(QPoly::term(1, exp))
    }

    /// `c * q^exp`.
    pub fn term(c: i64, exp: i64) -> Self {
        RatQ::from_poly(QPoly::term(c, exp))
    }

    /// Laurent polynomial from `(coefficient, exponent)` pairs.
    pub fn poly(terms: &[(i64, i64)]) -> Self {
        RatQ::from_poly(QPoly::from_terms(terms))
    }

    /// The generator `w` of the quadratic extension.
    pub fn w() -> Self {
        RatQ { a: RatFrac::zero(), b: Some(Box::new(RatFrac::one())) }
    }

    /// `(-q)^(e/2)`: plain for even `e`, a `w`-multiple for odd `e`.
    pub fn neg_q_half_pow(e: i64) -> Self {
        let half = e.div_euclid(2);
        let plain = RatQ::from_poly(QPoly::term(if half % 2 == 0 { 1 } else { -1 }, half));
        if e.rem_euclid(2) == 0 {
            plain
        } else {
            plain.mul(&RatQ::w())
        }
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i64) -> Self {
        RatQ::from_poly(QPoly::term(if e.rem_euclid(2) == 0 { 1 } else { -1 }, e))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_none() && self.a == RatFrac::one()
    }

    pub fn has_w(&self) -> bool {
        self.b.is_some()
    }

    /// Asserts the value is plain (no `w`-component) and returns it.
    pub fn project_plain(&self) -> Result<&RatQ, ScalarError> {
        if self.has_w() {
            Err(ScalarError::ResidualWComponent)
        } else {
            Ok(self)
        }
    }

    pub fn add(&self, rhs: &RatQ) -> RatQ {
        let b = match (&self.b, &rhs.b) {
            (None, None) => None,
            (Some(x), None) => Some((**x).clone()),
            (None, Some(y)) => Some((**y).clone()),
            (Some(x), Some(y)) => Some(x.add(y)),
        };
        RatQ::make(self.a.add(&rhs.a), b)
    }

    pub fn neg(&self) -> RatQ {
        RatQ {
            a: self.a.neg(),
            b: self.b.as_ref().map(|b| Box::new(b.neg())),
        }
    }

    pub fn sub(&self, rhs: &RatQ) -> RatQ {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatQ) -> RatQ {
        // (a1 + w b1)(a2 + w b2) = (a1 a2 - q b1 b2) + w (a1 b2 + a2 b1)
        let a1 = &self.a;
        let a2 = &rhs.a;
        let mut re = a1.mul(a2);
        let mut im: Option<RatFrac> = None;
        match (&self.b, &rhs.b) {
            (None, None) => {}
            (Some(b1), None) => im = Some(b1.mul(a2)),
            (None, Some(b2)) => im = Some(a1.mul(b2)),
            (Some(b1), Some(b2)) => {
                let minus_q = RatFrac::from_poly(QPoly::term(-1, 1));
                re = re.add(&minus_q.mul(&b1.mul(b2)));
                im = Some(a1.mul(b2).add(&a2.mul(b1)));
            }
        }
        RatQ::make(re, im)
    }

    pub fn inv(&self) -> Result<RatQ, ScalarError> {
        match &self.b {
            None => Ok(RatQ { a: self.a.inv()?, b: None }),
            Some(b) => {
                // (a + wb)^-1 = (a - wb) / (a^2 + q b^2)
                let q = RatFrac::from_poly(QPoly::term(1, 1));
                let norm = self.a.mul(&self.a).add(&q.mul(&b.mul(b)));
                if norm.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                let ninv = norm.inv()?;
                Ok(RatQ::make(self.a.mul(&ninv), Some(b.neg().mul(&ninv))))
            }
        }
    }

    pub fn div(&self, rhs: &RatQ) -> Result<RatQ, ScalarError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Substitutes `q -> q^-1`. Rejects `w`-extended values, whose image is
    /// not in the ring.
    pub fn invert_q(&self) -> RatQ {
        assert!(self.b.is_none(), "q-inversion of a w-extended value");
        RatQ { a: self.a.invert_q(), b: None }
    }

    pub fn plain_parts(&self) -> (&QPoly, &QPoly) {
        (self.a.num(), self.a.den())
    }

    /// Coefficient of an integer power of `q` in the numerator when the value
    /// is a plain Laurent polynomial; used by tests.
    pub fn as_poly(&self) -> Option<&QPoly> {
        if self.b.is_none() && self.a.den().is_one() {
            Some(self.a.num())
        } else {
            None
        }
    }
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.b {
            None => write!(f, "{}", self.a),
            Some(b) => write!(f, "{} + w*({})", self.a, b),
        }
    }
}

impl fmt::Debug for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `q - q^-1`, the ubiquitous structure constant.
pub fn q_minus_qinv() -> RatQ {
    RatQ::poly(&[(1, 1), (-1, -1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_inverse_cancels() {
        let a = q_minus_qinv();
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn polynomial_cancellation() {
        // (q^2 - 1)/(q - 1) = q + 1
        let num = RatQ::poly(&[(1, 2), (-1, 0)]);
        let den = RatQ::poly(&[(1, 1), (-1, 0)]);
        assert_eq!(num.div(&den).unwrap(), RatQ::poly(&[(1, 1), (1, 0)]));
    }

    #[test]
    fn w_squares_to_minus_q() {
        let w = RatQ::w();
        assert_eq!(w.mul(&w), RatQ::term(-1, 1));
    }

    #[test]
    fn w_inverse() {
        let x = RatQ::one().add(&RatQ::w());
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
    }

    #[test]
    fn neg_q_half_powers_multiply() {
        // (-q)^(1/2) * (-q)^(3/2) = (-q)^2 = q^2
        let a = RatQ::neg_q_half_pow(1);
        let b = RatQ::neg_q_half_pow(3);
        assert_eq!(a.mul(&b), RatQ::q_pow(2));
        assert!(!a.mul(&b).has_w());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(RatQ::one().div(&RatQ::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn q_inversion_is_a_field_map() {
        let x = RatQ::poly(&[(1, 1), (2, 0)]).div(&RatQ::poly(&[(1, 3), (-1, 0)])).unwrap();
        let y = RatQ::poly(&[(5, -2), (1, 0)]);
        assert_eq!(x.mul(&y).invert_q(), x.invert_q().mul(&y.invert_q()));
    }
}
