//! Sparse linear operators on `(C^N)^(x m)` with slot-addressed composition,
//! partial transpose and trace, and constructors for the constant and
//! spectral matrices of the R-matrix calculus.

pub mod matrices;
pub mod projectors;

pub use matrices::{
    f_coeffs, make_const, make_spectral, r_uv, rt_uv, ConstMatrixKind, SpectralKind,
};
pub use projectors::{fused_projector, fused_projector_on, fused_r, pq_sigma, ProjectorKind};

use crate::scalar::CoeffRing;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("operator shapes differ: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("slot index {0} out of range for {1} slots")]
    SlotOutOfRange(usize, usize),
    #[error("matrix kind requires an even site dimension, got {0}")]
    OddDimension(usize),
    #[error("spectral argument is not expandable: {0}")]
    NotExpandable(String),
}

/// Convention flag: ordinary (`q`) or `q -> q^-1` mirrored constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QSign {
    Plus,
    Minus,
}

impl QSign {
    /// `q^e` under this convention.
    pub fn q_pow(&self, e: i64) -> crate::scalar::RatQ {
        match self {
            QSign::Plus => crate::scalar::RatQ::q_pow(e),
            QSign::Minus => crate::scalar::RatQ::q_pow(-e),
        }
    }

    /// `(-q)^e` under this convention.
    pub fn neg_q_pow(&self, e: i64) -> crate::scalar::RatQ {
        match self {
            QSign::Plus => crate::scalar::RatQ::neg_q_pow(e),
            QSign::Minus => crate::scalar::RatQ::neg_q_pow(-e),
        }
    }

    /// Applies the convention to a plain scalar.
    pub fn adjust(&self, c: &crate::scalar::RatQ) -> crate::scalar::RatQ {
        match self {
            QSign::Plus => c.clone(),
            QSign::Minus => c.invert_q(),
        }
    }

    /// Sign of argument shifts: minors under `q^-1` conventions shift by
    /// `q^(+2)` where the plain ones shift by `q^(-2)`.
    pub fn dir(&self) -> i64 {
        match self {
            QSign::Plus => 1,
            QSign::Minus => -1,
        }
    }
}

/// Multi-index over `m` slots with components in `1..=n`, packed row-major.
pub fn pack(components: &[usize], n: usize) -> u32 {
    let mut key: u32 = 0;
    for &c in components {
        debug_assert!((1..=n).contains(&c));
        key = key * n as u32 + (c as u32 - 1);
    }
    key
}

pub fn unpack(mut key: u32, n: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0usize; m];
    for slot in (0..m).rev() {
        out[slot] = (key % n as u32) as usize + 1;
        key /= n as u32;
    }
    out
}

/// Sparse operator on `(C^N)^(x m)` with coefficients in `T`.
///
/// Entries are stored as `(row multi-index, column multi-index) -> value`
/// with no explicit zeros; equality is structural and therefore semantic.
#[derive(Clone, PartialEq)]
pub struct SparseOp<T: CoeffRing> {
    n: usize,
    m: usize,
    entries: BTreeMap<(u32, u32), T>,
}

impl<T: CoeffRing> SparseOp<T> {
    pub fn zero(n: usize, m: usize) -> Self {
        SparseOp { n, m, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        let mut op = SparseOp::zero(n, m);
        for k in 0..(n as u32).pow(m as u32) {
            op.entries.insert((k, k), T::ring_one());
        }
        op
    }

    pub fn site_dim(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.m as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.entries.iter()
    }

    pub fn set(&mut self, row: &[usize], col: &[usize], value: T) {
        assert_eq!(row.len(), self.m);
        assert_eq!(col.len(), self.m);
        self.set_packed(pack(row, self.n), pack(col, self.n), value);
    }

    pub fn add_entry(&mut self, row: &[usize], col: &[usize], value: T) {
        let key = (pack(row, self.n), pack(col, self.n));
        self.accumulate(key, value);
    }

    fn set_packed(&mut self, row: u32, col: u32, value: T) {
        if value.is_ring_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    fn accumulate(&mut self, key: (u32, u32), value: T) {
        if value.is_ring_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(existing) => {
                let sum = existing.ring_add(&value);
                if sum.is_ring_zero() {
                    self.entries.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.entries.insert(key, value);
            }
        }
    }

    pub fn get(&self, row: &[usize], col: &[usize]) -> T {
        self.entries
            .get(&(pack(row, self.n), pack(col, self.n)))
            .cloned()
            .unwrap_or_else(T::ring_zero)
    }

    pub fn add(&self, rhs: &SparseOp<T>) -> Result<SparseOp<T>, TensorError> {
        self.check_shape(rhs)?;
        let mut out = self.clone();
        for (&key, v) in &rhs.entries {
            out.accumulate(key, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &SparseOp<T>) -> Result<SparseOp<T>, TensorError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> SparseOp<T> {
        SparseOp {
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(|(&k, v)| (k, v.ring_neg())).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> SparseOp<T> {
        if c.is_ring_zero() {
            return SparseOp::zero(self.n, self.m);
        }
        let mut out = SparseOp::zero(self.n, self.m);
        for (&k, v) in &self.entries {
            out.accumulate(k, v.ring_mul(c));
        }
        out
    }

    /// Left-multiplies the coefficient: useful for noncommutative scalars.
    pub fn scale_left(&self, c: &T) -> SparseOp<T> {
        if c.is_ring_zero() {
            return SparseOp::zero(self.n, self.m);
        }
        let mut out = SparseOp::zero(self.n, self.m);
        for (&k, v) in &self.entries {
            out.accumulate(k, c.ring_mul(v));
        }
        out
    }

    /// Operator product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &SparseOp<T>) -> Result<SparseOp<T>, TensorError> {
        self.check_shape(rhs)?;
        let mut out = SparseOp::zero(self.n, self.m);
        let hi = u32::MAX;
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in rhs.entries.range((k, 0)..=(k, hi)) {
                out.accumulate((i, j), a.ring_mul(b));
            }
        }
        Ok(out)
    }

    fn check_shape(&self, rhs: &SparseOp<T>) -> Result<(), TensorError> {
        if self.n != rhs.n || self.m != rhs.m {
            Err(TensorError::ShapeMismatch(self.n, self.m, rhs.n, rhs.m))
        } else {
            Ok(())
        }
    }

    /// Transposes the tensor factor at `slot` (1-based).
    pub fn partial_transpose(&self, slot: usize) -> Result<SparseOp<T>, TensorError> {
        if slot == 0 || slot > self.m {
            return Err(TensorError::SlotOutOfRange(slot, self.m));
        }
        let mut out = SparseOp::zero(self.n, self.m);
        for (&(r, c), v) in &self.entries {
            let mut row = unpack(r, self.n, self.m);
            let mut col = unpack(c, self.n, self.m);
            std::mem::swap(&mut row[slot - 1], &mut col[slot - 1]);
            out.accumulate((pack(&row, self.n), pack(&col, self.n)), v.clone());
        }
        Ok(out)
    }

    /// Full transpose.
    pub fn transpose(&self) -> SparseOp<T> {
        let mut out = SparseOp::zero(self.n, self.m);
        for (&(r, c), v) in &self.entries {
            out.accumulate((c, r), v.clone());
        }
        out
    }

    /// Traces out the given slots (1-based), producing an operator on the
    /// remaining slots. Tracing every slot yields a 0-slot operator whose
    /// single entry is the full trace.
    pub fn partial_trace(&self, slots: &[usize]) -> Result<SparseOp<T>, TensorError> {
        for &s in slots {
            if s == 0 || s > self.m {
                return Err(TensorError::SlotOutOfRange(s, self.m));
            }
        }
        let keep: Vec<usize> = (1..=self.m).filter(|s| !slots.contains(s)).collect();
        let mut out = SparseOp::zero(self.n, keep.len());
        for (&(r, c), v) in &self.entries {
            let row = unpack(r, self.n, self.m);
            let col = unpack(c, self.n, self.m);
            if slots.iter().any(|&s| row[s - 1] != col[s - 1]) {
                continue;
            }
            let rkeep: Vec<usize> = keep.iter().map(|&s| row[s - 1]).collect();
            let ckeep: Vec<usize> = keep.iter().map(|&s| col[s - 1]).collect();
            out.accumulate((pack(&rkeep, self.n), pack(&ckeep, self.n)), v.clone());
        }
        Ok(out)
    }

    /// Full trace as a coefficient value.
    pub fn trace(&self) -> T {
        let mut acc = T::ring_zero();
        for (&(r, c), v) in &self.entries {
            if r == c {
                acc = acc.ring_add(v);
            }
        }
        acc
    }

    /// Places this operator into the listed slots (1-based, distinct) of an
    /// identity on `m_total` slots.
    pub fn embed(&self, slots: &[usize], m_total: usize) -> Result<SparseOp<T>, TensorError> {
        assert_eq!(slots.len(), self.m, "slot list must match operator arity");
        for &s in slots {
            if s == 0 || s > m_total {
                return Err(TensorError::SlotOutOfRange(s, m_total));
            }
        }
        let others: Vec<usize> = (1..=m_total).filter(|s| !slots.contains(s)).collect();
        let fill = (self.n as u32).pow(others.len() as u32);
        let mut out = SparseOp::zero(self.n, m_total);
        for (&(r, c), v) in &self.entries {
            let row = unpack(r, self.n, self.m);
            let col = unpack(c, self.n, self.m);
            for fillkey in 0..fill {
                let vals = unpack(fillkey, self.n, others.len());
                let mut rfull = vec![0usize; m_total];
                let mut cfull = vec![0usize; m_total];
                for (k, &s) in slots.iter().enumerate() {
                    rfull[s - 1] = row[k];
                    cfull[s - 1] = col[k];
                }
                for (k, &s) in others.iter().enumerate() {
                    rfull[s - 1] = vals[k];
                    cfull[s - 1] = vals[k];
                }
                out.accumulate((pack(&rfull, self.n), pack(&cfull, self.n)), v.clone());
            }
        }
        Ok(out)
    }

    /// Tensor product: the result acts on the concatenated slot list.
    pub fn kron(&self, rhs: &SparseOp<T>) -> SparseOp<T> {
        assert_eq!(self.n, rhs.n);
        let mut out = SparseOp::zero(self.n, self.m + rhs.m);
        let scale = (self.n as u32).pow(rhs.m as u32);
        for (&(r1, c1), a) in &self.entries {
            for (&(r2, c2), b) in &rhs.entries {
                out.accumulate((r1 * scale + r2, c1 * scale + c2), a.ring_mul(b));
            }
        }
        out
    }

    /// Relabels slots: slot `k` of the result is slot `perm[k]` of `self`.
    pub fn permute_slots(&self, perm: &[usize]) -> Result<SparseOp<T>, TensorError> {
        assert_eq!(perm.len(), self.m);
        let mut out = SparseOp::zero(self.n, self.m);
        for (&(r, c), v) in &self.entries {
            let row = unpack(r, self.n, self.m);
            let col = unpack(c, self.n, self.m);
            let rnew: Vec<usize> = perm.iter().map(|&s| row[s - 1]).collect();
            let cnew: Vec<usize> = perm.iter().map(|&s| col[s - 1]).collect();
            out.accumulate((pack(&rnew, self.n), pack(&cnew, self.n)), v.clone());
        }
        Ok(out)
    }

    /// Maps every coefficient through `f`, dropping zeros.
    pub fn map<U: CoeffRing>(&self, f: impl Fn(&T) -> U) -> SparseOp<U> {
        let mut out = SparseOp::zero(self.n, self.m);
        for (&k, v) in &self.entries {
            out.accumulate(k, f(v));
        }
        out
    }
}

impl<T: CoeffRing + fmt::Display> fmt::Debug for SparseOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseOp(n={}, m={}, nnz={})", self.n, self.m, self.entries.len())?;
        for (&(r, c), v) in &self.entries {
            writeln!(
                f,
                "  {:?} <- {:?}: {}",
                unpack(r, self.n, self.m),
                unpack(c, self.n, self.m),
                v
            )?;
        }
        Ok(())
    }
}
