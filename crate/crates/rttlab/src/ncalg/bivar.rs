//! Bivariate spectral series with noncommutative coefficients.
//!
//! Defining relations of the affine presentations involve two independent
//! spectral variables. Expanding both sides as series in `(u, v)` and
//! comparing coefficients is how relation rows are extracted and how the
//! two-variable identities are verified.

use super::elem::{NCElem, NCPoly};
use crate::scalar::{CoeffRing, RatQ, Window};
use std::collections::BTreeMap;

/// Truncated series in two spectral variables with `NCElem` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivarNC {
    terms: BTreeMap<(i64, i64), NCElem>,
    uwin: Window,
    vwin: Window,
}

impl BivarNC {
    pub fn zero(uwin: Window, vwin: Window) -> BivarNC {
        BivarNC { terms: BTreeMap::new(), uwin, vwin }
    }

    pub fn from_elem(e: NCElem, du: i64, dv: i64, uwin: Window, vwin: Window) -> BivarNC {
        let mut b = BivarNC::zero(uwin, vwin);
        b.add_elem(du, dv, e);
        b
    }

    /// `u^1` as a monomial.
    pub fn u_var(uwin: Window, vwin: Window) -> BivarNC {
        BivarNC::from_elem(NCElem::one(), 1, 0, uwin, vwin)
    }

    /// `v^1` as a monomial.
    pub fn v_var(uwin: Window, vwin: Window) -> BivarNC {
        BivarNC::from_elem(NCElem::one(), 0, 1, uwin, vwin)
    }

    /// Lifts a univariate series into the `u` slot (`v` slot when `as_v`).
    pub fn from_poly(p: &NCPoly, as_v: bool, uwin: Window, vwin: Window) -> BivarNC {
        let mut b = BivarNC::zero(uwin, vwin);
        for (&d, e) in p.degrees() {
            if as_v {
                b.add_elem(0, d, e.clone());
            } else {
                b.add_elem(d, 0, e.clone());
            }
        }
        b
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, du: i64, dv: i64) -> NCElem {
        self.terms.get(&(du, dv)).cloned().unwrap_or_else(NCElem::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &NCElem)> {
        self.terms.iter()
    }

    pub fn add_elem(&mut self, du: i64, dv: i64, e: NCElem) {
        if e.is_zero() || !self.uwin.contains(du) || !self.vwin.contains(dv) {
            return;
        }
        let entry = self.terms.entry((du, dv)).or_insert_with(NCElem::zero);
        *entry = entry.add(&e);
        if entry.is_zero() {
            self.terms.remove(&(du, dv));
        }
    }

    pub fn add(&self, rhs: &BivarNC) -> BivarNC {
        let uwin = self.uwin.intersect(&rhs.uwin);
        let vwin = self.vwin.intersect(&rhs.vwin);
        let mut out = BivarNC::zero(uwin, vwin);
        for (&(du, dv), e) in &self.terms {
            out.add_elem(du, dv, e.clone());
        }
        for (&(du, dv), e) in &rhs.terms {
            out.add_elem(du, dv, e.clone());
        }
        out
    }

    pub fn neg(&self) -> BivarNC {
        BivarNC {
            terms: self.terms.iter().map(|(&k, e)| (k, e.neg())).collect(),
            uwin: self.uwin,
            vwin: self.vwin,
        }
    }

    pub fn mul(&self, rhs: &BivarNC) -> BivarNC {
        let uwin = self.uwin.intersect(&rhs.uwin);
        let vwin = self.vwin.intersect(&rhs.vwin);
        let mut out = BivarNC::zero(uwin, vwin);
        for (&(ua, va), ea) in &self.terms {
            for (&(ub, vb), eb) in &rhs.terms {
                if !uwin.contains(ua + ub) || !vwin.contains(va + vb) {
                    continue;
                }
                out.add_elem(ua + ub, va + vb, ea.mul(eb));
            }
        }
        out
    }
}

impl CoeffRing for BivarNC {
    fn ring_zero() -> Self {
        BivarNC::zero(Window::ALL, Window::ALL)
    }
    fn ring_one() -> Self {
        BivarNC::from_elem(NCElem::one(), 0, 0, Window::ALL, Window::ALL)
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_from_ratq(c: &RatQ) -> Self {
        BivarNC::from_elem(NCElem::scalar(c.clone()), 0, 0, Window::ALL, Window::ALL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bivariate_product_convolves_both_degrees() {
        let uw = Window::new(-2, 2);
        let vw = Window::new(-2, 2);
        let u = BivarNC::u_var(uw, vw);
        let v = BivarNC::v_var(uw, vw);
        let p = u.add(&v).mul(&u.add(&v.neg()));
        // (u + v)(u - v) = u^2 - v^2
        assert_eq!(p.coeff(2, 0), NCElem::one());
        assert_eq!(p.coeff(0, 2), NCElem::one().neg());
        assert!(p.coeff(1, 1).is_zero());
    }
}
