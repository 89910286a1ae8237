//! Elements of the free algebra and their spectral series.
//!
//! `NCElem` is a finite `RatQ`-combination of words; `NCPoly` attaches a
//! spectral degree to each component and truncates to a window, so it models
//! a Laurent series in the spectral variable with `NCElem` coefficients.

use super::Word;
use crate::scalar::{CoeffRing, GradedCoeff, RatQ, Window};
use std::collections::BTreeMap;

/// Finite linear combination of words with `RatQ` coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NCElem {
    terms: BTreeMap<Word, RatQ>,
}

impl NCElem {
    pub fn zero() -> NCElem {
        NCElem { terms: BTreeMap::new() }
    }

    pub fn one() -> NCElem {
        NCElem::monomial(Vec::new(), RatQ::one())
    }

    pub fn monomial(word: Word, coeff: RatQ) -> NCElem {
        let mut e = NCElem::zero();
        e.add_term(word, coeff);
        e
    }

    pub fn gen(rank: u32) -> NCElem {
        NCElem::monomial(vec![rank], RatQ::one())
    }

    pub fn scalar(c: RatQ) -> NCElem {
        NCElem::monomial(Vec::new(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatQ)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, RatQ)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, word: &[u32]) -> RatQ {
        self.terms.get(word).cloned().unwrap_or_else(RatQ::zero)
    }

    pub fn add_term(&mut self, word: Word, coeff: RatQ) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                *existing = existing.add(&coeff);
                if existing.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add(&self, rhs: &NCElem) -> NCElem {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NCElem {
        NCElem {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &NCElem) -> NCElem {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &RatQ) -> NCElem {
        if c.is_zero() {
            return NCElem::zero();
        }
        let mut out = NCElem::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.mul(c));
        }
        out
    }

    /// Word-concatenation product.
    pub fn mul(&self, rhs: &NCElem) -> NCElem {
        let mut out = NCElem::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca.mul(cb));
            }
        }
        out
    }

    /// Largest word-length appearing.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

/// Truncated spectral series with `NCElem` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCPoly {
    terms: BTreeMap<i64, NCElem>,
    window: Window,
}

impl NCPoly {
    pub fn zero(window: Window) -> NCPoly {
        NCPoly { terms: BTreeMap::new(), window }
    }

    pub fn one(window: Window) -> NCPoly {
        NCPoly::from_elem(NCElem::one(), 0, window)
    }

    pub fn from_elem(e: NCElem, degree: i64, window: Window) -> NCPoly {
        let mut p = NCPoly::zero(window);
        p.add_elem(degree, e);
        p
    }

    pub fn scalar(c: RatQ, window: Window) -> NCPoly {
        NCPoly::from_elem(NCElem::scalar(c), 0, window)
    }

    /// Lifts a graded scalar series to a series of scalar elements.
    pub fn from_graded(g: &GradedCoeff, window: Window) -> NCPoly {
        let mut p = NCPoly::zero(window);
        for (&d, c) in g.terms() {
            p.add_elem(d, NCElem::scalar(c.clone()));
        }
        p
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, degree: i64) -> NCElem {
        self.terms.get(&degree).cloned().unwrap_or_else(NCElem::zero)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&i64, &NCElem)> {
        self.terms.iter()
    }

    pub fn add_elem(&mut self, degree: i64, e: NCElem) {
        if e.is_zero() || !self.window.contains(degree) {
            return;
        }
        let entry = self.terms.entry(degree).or_insert_with(NCElem::zero);
        *entry = entry.add(&e);
        if entry.is_zero() {
            self.terms.remove(&degree);
        }
    }

    pub fn add_term(&mut self, degree: i64, word: Word, coeff: RatQ) {
        self.add_elem(degree, NCElem::monomial(word, coeff));
    }

    fn rewindow(&self, window: Window) -> NCPoly {
        let mut out = NCPoly::zero(window);
        for (&d, e) in &self.terms {
            out.add_elem(d, e.clone());
        }
        out
    }

    pub fn add(&self, rhs: &NCPoly) -> NCPoly {
        let window = self.window.intersect(&rhs.window);
        let mut out = self.rewindow(window);
        for (&d, e) in &rhs.terms {
            out.add_elem(d, e.clone());
        }
        out
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(&d, e)| (d, e.neg())).collect(),
            window: self.window,
        }
    }

    pub fn sub(&self, rhs: &NCPoly) -> NCPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &NCPoly) -> NCPoly {
        let window = self.window.intersect(&rhs.window);
        let mut out = NCPoly::zero(window);
        for (&da, ea) in &self.terms {
            for (&db, eb) in &rhs.terms {
                if !window.contains(da + db) {
                    continue;
                }
                out.add_elem(da + db, ea.mul(eb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatQ) -> NCPoly {
        let mut out = NCPoly::zero(self.window);
        for (&d, e) in &self.terms {
            out.add_elem(d, e.scale(c));
        }
        out
    }

    /// Multiplies by a scalar graded series.
    pub fn scale_graded(&self, g: &GradedCoeff) -> NCPoly {
        self.mul(&NCPoly::from_graded(g, self.window.intersect(&g.window())))
    }

    /// Substitutes `u -> q^c u`: degree `d` picks up `q^(c d)`.
    pub fn shift_arg(&self, c: i64) -> NCPoly {
        let mut out = NCPoly::zero(self.window);
        for (&d, e) in &self.terms {
            out.add_elem(d, e.scale(&RatQ::q_pow(c * d)));
        }
        out
    }

    /// Substitutes `u -> u^-1`.
    pub fn invert_arg(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.window.flip());
        for (&d, e) in &self.terms {
            out.add_elem(-d, e.clone());
        }
        out
    }

    /// Sum of all coefficients' word counts; a cheap size measure.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(|e| e.len()).sum()
    }
}

/// Bilinear embedding helpers between plain and spectral representations.
impl From<NCElem> for NCPoly {
    fn from(e: NCElem) -> NCPoly {
        NCPoly::from_elem(e, 0, Window::ALL)
    }
}

impl CoeffRing for NCPoly {
    fn ring_zero() -> Self {
        NCPoly::zero(Window::ALL)
    }
    fn ring_one() -> Self {
        NCPoly::one(Window::ALL)
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
        NCPoly::scalar(c.clone(), Window::ALL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_product_concatenates() {
        let a = NCElem::gen(3);
        let b = NCElem::gen(1);
        assert_eq!(a.mul(&b), NCElem::monomial(vec![3, 1], RatQ::one()));
    }

    #[test]
    fn series_product_truncates() {
        let w = Window::lower(1);
        let x = NCPoly::from_elem(NCElem::gen(0), -1, w);
        let y = x.mul(&x);
        assert!(y.is_zero(), "u^-2 is outside the window");
    }

    #[test]
    fn shift_arg_scales_by_degree() {
        let w = Window::lower(2);
        let mut p = NCPoly::zero(w);
        p.add_term(-1, vec![0], RatQ::one());
        p.add_term(-2, vec![1], RatQ::one());
        let s = p.shift_arg(-2);
        assert_eq!(s.coeff(-1), NCElem::monomial(vec![0], RatQ::q_pow(2)));
        assert_eq!(s.coeff(-2), NCElem::monomial(vec![1], RatQ::q_pow(4)));
    }
}
