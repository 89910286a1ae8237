//! Truncated spectral-graded series: finitely many powers of the formal
//! variable `u` with `RatQ` coefficients, kept inside a per-computation
//! retention window.

use super::ratq::{RatQ, ScalarError};
use std::collections::BTreeMap;
use std::fmt;

/// Retained degree window `[lo, hi]`, inclusive.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub const ALL: Window = Window { lo: i64::MIN / 4, hi: i64::MAX / 4 };

    pub fn new(lo: i64, hi: i64) -> Window {
        assert!(lo <= hi, "empty window");
        Window { lo, hi }
    }

    /// Series in `u^-1` down to `u^-k`.
    pub fn lower(k: i64) -> Window {
        Window::new(-k, 0)
    }

    /// Series in `u` up to `u^k`.
    pub fn upper(k: i64) -> Window {
        Window::new(0, k)
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn intersect(&self, other: &Window) -> Window {
        Window { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn flip(&self) -> Window {
        Window { lo: -self.hi, hi: -self.lo }
    }
}

/// Truncated Laurent series in the spectral variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedCoeff {
    terms: BTreeMap<i64, RatQ>,
    window: Window,
}

impl GradedCoeff {
    pub fn zero(window: Window) -> Self {
        GradedCoeff { terms: BTreeMap::new(), window }
    }

    pub fn one(window: Window) -> Self {
        GradedCoeff::monomial(RatQ::one(), 0, window)
    }

    pub fn monomial(c: RatQ, degree: i64, window: Window) -> Self {
        let mut s = GradedCoeff::zero(window);
        s.add_term(degree, c);
        s
    }

    pub fn scalar(c: RatQ) -> Self {
        GradedCoeff::monomial(c, 0, Window::ALL)
    }

    pub fn from_terms(terms: &[(RatQ, i64)], window: Window) -> Self {
        let mut s = GradedCoeff::zero(window);
        for (c, d) in terms {
            s.add_term(*d, c.clone());
        }
        s
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, degree: i64) -> RatQ {
        self.terms.get(&degree).cloned().unwrap_or_else(RatQ::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &RatQ)> {
        self.terms.iter()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, degree: i64, c: RatQ) {
        if c.is_zero() || !self.window.contains(degree) {
            return;
        }
        let entry = self.terms.entry(degree).or_insert_with(RatQ::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&degree);
        }
    }

    fn rewindow(&self, window: Window) -> GradedCoeff {
        let mut out = GradedCoeff::zero(window);
        for (&d, c) in &self.terms {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn add(&self, rhs: &GradedCoeff) -> GradedCoeff {
        let window = self.window.intersect(&rhs.window);
        let mut out = self.rewindow(window);
        for (&d, c) in &rhs.terms {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn neg(&self) -> GradedCoeff {
        GradedCoeff {
            terms: self.terms.iter().map(|(&d, c)| (d, c.neg())).collect(),
            window: self.window,
        }
    }

    pub fn sub(&self, rhs: &GradedCoeff) -> GradedCoeff {
        self.add(&rhs.neg())
    }

    /// Cauchy product truncated to the window intersection.
    pub fn mul(&self, rhs: &GradedCoeff) -> GradedCoeff {
        let window = self.window.intersect(&rhs.window);
        let mut out = GradedCoeff::zero(window);
        for (&da, ca) in &self.terms {
            for (&db, cb) in &rhs.terms {
                out.add_term(da + db, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatQ) -> GradedCoeff {
        let mut out = GradedCoeff::zero(self.window);
        for (&d, x) in &self.terms {
            out.add_term(d, x.mul(c));
        }
        out
    }

    /// Substitutes `u -> q^c u`: the degree-`d` coefficient picks up `q^(c*d)`.
    pub fn shift_arg(&self, c: i64) -> GradedCoeff {
        let mut out = GradedCoeff::zero(self.window);
        for (&d, x) in &self.terms {
            out.add_term(d, x.mul(&RatQ::q_pow(c * d)));
        }
        out
    }

    /// Substitutes `u -> u^-1`, flipping every degree and the window.
    pub fn invert_arg(&self) -> GradedCoeff {
        let mut out = GradedCoeff::zero(self.window.flip());
        for (&d, x) in &self.terms {
            out.add_term(-d, x.clone());
        }
        out
    }

    /// Substitutes `q -> q^-1` in every coefficient.
    pub fn invert_q(&self) -> GradedCoeff {
        let mut out = GradedCoeff::zero(self.window);
        for (&d, x) in &self.terms {
            out.add_term(d, x.invert_q());
        }
        out
    }

    /// Two-sided inverse up to truncation.
    ///
    /// The expansion is anchored at the window end closest to degree zero: a
    /// series living in nonpositive degrees is inverted as a series in `u^-1`
    /// (the anchor is its highest-degree term), one living in nonnegative
    /// degrees as a series in `u`. A window spanning zero is rejected.
    pub fn invert(&self) -> Result<GradedCoeff, ScalarError> {
        let down = if self.window.hi <= 0 {
            true
        } else if self.window.lo >= 0 {
            false
        } else {
            return Err(ScalarError::AmbiguousDirection);
        };
        let anchor_deg = if down { self.max_degree() } else { self.min_degree() };
        let anchor_deg = anchor_deg
            .ok_or_else(|| ScalarError::NotInvertible("zero series".to_string()))?;
        let anchor = self.coeff(anchor_deg);
        if down && anchor_deg < 0 {
            // inverse would need degrees above the window top
            return Err(ScalarError::NotInvertible(format!(
                "series starts at degree {} inside a u^-1 window",
                anchor_deg
            )));
        }
        if !down && anchor_deg > 0 {
            return Err(ScalarError::NotInvertible(format!(
                "series starts at degree {} inside a u^+1 window",
                anchor_deg
            )));
        }
        let c0inv = anchor.inv().map_err(|_| {
            ScalarError::NotInvertible("leading coefficient is zero".to_string())
        })?;
        // x = c0 u^d (1 + y); x^-1 = c0^-1 u^-d sum (-y)^k
        let mut rest = self.clone();
        rest.terms.remove(&anchor_deg);
        let y = rest.scale(&c0inv).shift_deg(-anchor_deg);
        let mut acc = GradedCoeff::one(self.window);
        let mut pow = GradedCoeff::one(self.window);
        let depth = (self.window.hi - self.window.lo).unsigned_abs() + 1;
        for _ in 0..depth {
            pow = pow.mul(&y).neg();
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Ok(acc.scale(&c0inv).shift_deg(-anchor_deg))
    }

    /// Multiplies by `u^k` without touching coefficients.
    pub fn shift_deg(&self, k: i64) -> GradedCoeff {
        let mut out = GradedCoeff::zero(self.window);
        for (&d, x) in &self.terms {
            out.add_term(d + k, x.clone());
        }
        out
    }

    /// Asserts every coefficient is plain (no `w`-component).
    pub fn project_plain(&self) -> Result<&GradedCoeff, ScalarError> {
        for c in self.terms.values() {
            c.project_plain()?;
        }
        Ok(self)
    }
}

impl fmt::Display for GradedCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*u^{}", c, d)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u_series(terms: &[(i64, i64, i64)], lo: i64, hi: i64) -> GradedCoeff {
        // (coeff, q-exp, u-deg) triples
        let parts: Vec<(RatQ, i64)> =
            terms.iter().map(|&(c, qe, d)| (RatQ::term(c, qe), d)).collect();
        GradedCoeff::from_terms(&parts, Window::new(lo, hi))
    }

    #[test]
    fn cauchy_product_truncates() {
        // (1 + u^-1)(1 - u^-1) = 1 - u^-2 in window [-2, 0]
        let a = u_series(&[(1, 0, 0), (1, 0, -1)], -2, 0);
        let b = u_series(&[(1, 0, 0), (-1, 0, -1)], -2, 0);
        assert_eq!(a.mul(&b), u_series(&[(1, 0, 0), (-1, 0, -2)], -2, 0));
    }

    #[test]
    fn identity_element() {
        let x = u_series(&[(3, 1, 0), (1, -2, -2)], -3, 0);
        assert_eq!(GradedCoeff::one(Window::lower(3)).mul(&x), x);
    }

    #[test]
    fn geometric_inverse() {
        // (1 - u^-2)^-1 = 1 + u^-2 + u^-4 in window [-4, 0]
        let x = u_series(&[(1, 0, 0), (-1, 0, -2)], -4, 0);
        let inv = x.invert().unwrap();
        assert_eq!(inv, u_series(&[(1, 0, 0), (1, 0, -2), (1, 0, -4)], -4, 0));
        assert_eq!(x.mul(&inv), GradedCoeff::one(Window::new(-4, 0)));
    }

    #[test]
    fn constant_inverse() {
        let x = GradedCoeff::monomial(RatQ::q_pow(1), 0, Window::lower(2));
        assert_eq!(
            x.invert().unwrap(),
            GradedCoeff::monomial(RatQ::q_pow(-1), 0, Window::lower(2))
        );
    }

    #[test]
    fn long_division_example() {
        // (q + u^-1)^-1 = q^-1 - q^-2 u^-1 + q^-3 u^-2 in window [-2, 0]
        let x = u_series(&[(1, 1, 0), (1, 0, -1)], -2, 0);
        let expected = u_series(&[(1, -1, 0), (-1, -2, -1), (1, -3, -2)], -2, 0);
        assert_eq!(x.invert().unwrap(), expected);
        assert_eq!(x.mul(&x.invert().unwrap()), GradedCoeff::one(Window::lower(2)));
    }

    #[test]
    fn upward_inverse_for_positive_series() {
        // (1 - u)^-1 = 1 + u + u^2 in window [0, 2]
        let x = u_series(&[(1, 0, 0), (-1, 0, 1)], 0, 2);
        assert_eq!(x.invert().unwrap(), u_series(&[(1, 0, 0), (1, 0, 1), (1, 0, 2)], 0, 2));
    }

    #[test]
    fn shift_arg_multiplies_by_q_powers() {
        // u -> q^-2 u on a u^-r series multiplies the u^-r coefficient by q^(2r)
        let x = u_series(&[(1, 0, -1), (1, 0, -2)], -2, 0);
        let shifted = x.shift_arg(-2);
        assert_eq!(shifted.coeff(-1), RatQ::q_pow(2));
        assert_eq!(shifted.coeff(-2), RatQ::q_pow(4));
    }

    #[test]
    fn mixed_window_inverse_is_rejected() {
        let x = u_series(&[(1, 0, -1), (1, 0, 1)], -2, 2);
        assert_eq!(x.invert(), Err(ScalarError::AmbiguousDirection));
    }
}
