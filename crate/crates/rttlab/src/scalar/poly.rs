//! Integer-coefficient Laurent polynomials in the deformation parameter `q`.
//!
//! These are the building blocks of the exact coefficient field: a rational
//! function is a reduced quotient of two `QPoly` values. Exponents are machine
//! integers, coefficients are arbitrary precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Laurent polynomial `sum_k c_k q^(lo+k)` with `c_0` and `c_last` nonzero.
///
/// The zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly { lo: exp, coeffs: vec![c] }
    }

    pub fn from_int(n: i64) -> Self {
        QPoly::monomial(BigInt::from(n), 0)
    }

    /// `c * q^exp` with a machine-integer coefficient.
    pub fn term(c: i64, exp: i64) -> Self {
        QPoly::monomial(BigInt::from(c), exp)
    }

    /// Builds from a list of `(coefficient, exponent)` pairs.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut acc = QPoly::zero();
        for &(c, e) in terms {
            acc = acc.add(&QPoly::term(c, e));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.lo == 0 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient. Zero polynomial has none.
    pub fn min_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo)
        }
    }

    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        if self.is_zero() || exp < self.lo || exp > self.max_exp().unwrap() {
            BigInt::zero()
        } else {
            self.coeffs[(exp - self.lo) as usize].clone()
        }
    }

    /// Leading (highest-exponent) coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    fn trim(mut lo: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            coeffs.drain(..leading_zeros);
            lo += leading_zeros as i64;
        }
        if coeffs.is_empty() {
            lo = 0;
        }
        QPoly { lo, coeffs }
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.lo - lo) as usize + k] += c;
        }
        QPoly::trim(lo, coeffs)
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QPoly::trim(self.lo + rhs.lo, coeffs)
    }

    pub fn mul_qpow(&self, exp: i64) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        QPoly { lo: self.lo + exp, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `q -> q^-1`.
    pub fn invert_q(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let hi = self.max_exp().unwrap();
        let coeffs: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        QPoly::trim(-hi, coeffs)
    }

    /// Integer content (gcd of all coefficients), nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    /// Divides every coefficient by `d`; panics if not exact.
    fn div_content(&self, d: &BigInt) -> QPoly {
        assert!(!d.is_zero());
        QPoly {
            lo: self.lo,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    let (qt, r) = num_integer::Integer::div_rem(c, d);
                    assert!(r.is_zero(), "content division must be exact");
                    qt
                })
                .collect(),
        }
    }

    /// Shifts the polynomial so the lowest exponent is zero (unit part stripped).
    fn positive_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        QPoly { lo: 0, coeffs: self.coeffs.clone() }
    }

    /// Exact division; returns `None` when `rhs` does not divide `self`.
    pub fn exact_div(&self, rhs: &QPoly) -> Option<QPoly> {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let mut rem = self.positive_part();
        let div = rhs.positive_part();
        let dlead = div.leading_coeff();
        let ddeg = div.coeffs.len() as i64 - 1;
        let mut quo_terms: Vec<(BigInt, i64)> = Vec::new();
        while !rem.is_zero() {
            let rdeg = rem.max_exp().unwrap();
            if rdeg < ddeg {
                return None;
            }
            let (c, r) = num_integer::Integer::div_rem(&rem.leading_coeff(), &dlead);
            if !r.is_zero() {
                return None;
            }
            let shift = rdeg - ddeg;
            quo_terms.push((c.clone(), shift));
            rem = rem.sub(&div.mul(&QPoly::monomial(c, shift)));
        }
        let mut quo = QPoly::zero();
        for (c, e) in quo_terms {
            quo = quo.add(&QPoly::monomial(c, e));
        }
        // restore the q-power unit
        Some(quo.mul_qpow(self.lo - rhs.lo))
    }

    /// Primitive pseudo-remainder based gcd, ignoring `q`-power units.
    ///
    /// The result is normalized to lowest exponent zero and positive leading
    /// coefficient, so it is a canonical representative up to units.
    pub fn gcd(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.canonical_unit_normal();
        }
        if rhs.is_zero() {
            return self.canonical_unit_normal();
        }
        let ca = self.content();
        let cb = rhs.content();
        let cg = num_integer::Integer::gcd(&ca, &cb);
        let mut a = self.positive_part().div_content(&ca);
        let mut b = rhs.positive_part().div_content(&cb);
        // primitive PRS
        loop {
            if b.is_zero() {
                break;
            }
            if a.coeffs.len() < b.coeffs.len() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = match r {
                Some(r) if !r.is_zero() => {
                    let c = r.content();
                    r.positive_part().div_content(&c)
                }
                _ => QPoly::zero(),
            };
        }
        let g = a.canonical_unit_normal();
        g.mul(&QPoly::monomial(cg, 0))
    }

    /// Pseudo-remainder of `self` by `div` (both taken with lo = 0).
    fn pseudo_rem(&self, div: &QPoly) -> Option<QPoly> {
        let mut rem = self.positive_part();
        let div = div.positive_part();
        let dlead = div.leading_coeff();
        let ddeg = div.coeffs.len() as i64 - 1;
        let steps = self.coeffs.len() as i64 - ddeg;
        if steps < 0 {
            return Some(rem);
        }
        for _ in 0..=steps {
            if rem.is_zero() {
                break;
            }
            let rdeg = rem.max_exp().unwrap();
            if rdeg < ddeg {
                break;
            }
            let rlead = rem.leading_coeff();
            rem = rem
                .mul(&QPoly::monomial(dlead.clone(), 0))
                .sub(&div.mul(&QPoly::monomial(rlead, rdeg - ddeg)));
        }
        Some(rem)
    }

    /// Unit-normal form: lowest exponent zero, positive leading coefficient.
    pub fn canonical_unit_normal(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut p = self.positive_part();
        if p.leading_coeff().is_negative() {
            p = p.neg();
        }
        p
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let e = self.lo + k as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", exp_str(e))?;
            } else {
                write!(f, "{}*{}", mag, exp_str(e))?;
            }
        }
        Ok(())
    }
}

fn exp_str(e: i64) -> String {
    if e == 1 {
        "q".to_string()
    } else {
        format!("q^{}", e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_cancel() {
        let a = QPoly::from_terms(&[(1, 1), (-1, -1)]); // q - q^-1
        let b = QPoly::from_terms(&[(-1, 1), (1, -1)]);
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn mul_laurent() {
        let a = QPoly::from_terms(&[(1, 1), (1, -1)]);
        let b = QPoly::from_terms(&[(1, 1), (-1, -1)]);
        // (q + q^-1)(q - q^-1) = q^2 - q^-2
        assert_eq!(a.mul(&b), QPoly::from_terms(&[(1, 2), (-1, -2)]));
    }

    #[test]
    fn gcd_cancels_cyclotomic_factor() {
        // q^2 - 1 and q - 1 share the factor q - 1
        let a = QPoly::from_terms(&[(1, 2), (-1, 0)]);
        let b = QPoly::from_terms(&[(1, 1), (-1, 0)]);
        let g = a.gcd(&b);
        assert_eq!(g, b.canonical_unit_normal());
        assert_eq!(a.exact_div(&g).unwrap(), QPoly::from_terms(&[(1, 1), (1, 0)]));
    }

    #[test]
    fn gcd_with_units_and_content() {
        // 2q^3(q+1) and 4q^-2(q+1)(q-1): gcd up to units is 2(q+1)
        let a = QPoly::from_terms(&[(2, 4), (2, 3)]);
        let b = QPoly::from_terms(&[(4, 0), (-4, -2)]);
        let g = a.gcd(&b);
        assert_eq!(g, QPoly::from_terms(&[(2, 1), (2, 0)]));
    }

    #[test]
    fn invert_q_involution() {
        let a = QPoly::from_terms(&[(3, 2), (1, 0), (-2, -5)]);
        assert_eq!(a.invert_q().invert_q(), a);
    }

    #[test]
    fn exact_div_detects_nondivisibility() {
        let a = QPoly::from_terms(&[(1, 2), (1, 0)]);
        let b = QPoly::from_terms(&[(1, 1), (1, 0)]);
        assert!(a.exact_div(&b).is_none());
    }
}
