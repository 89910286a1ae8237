//! Free associative algebra over `RatQ` on leveled generators, with a
//! relation-driven rewriting engine producing normal forms with respect to a
//! per-presentation monomial order.
//!
//! Generators are interned: a presentation sorts its generators once into the
//! monomial generator order and words are vectors of ranks, so word
//! comparison is integer comparison.

pub mod bivar;
pub mod elem;
pub mod rules;

pub use bivar::BivarNC;
pub use elem::{NCElem, NCPoly};
pub use rules::{derive_ruleset, Budget, MonKey, RuleSet};

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("rewriting budget exhausted after {steps} steps (word {word})")]
    BudgetExhausted { steps: u64, word: String },
    #[error("presentation is inconsistent: relations imply 1 = 0")]
    InconsistentPresentation,
    #[error("no rule solves the disordered pair {0}")]
    UnsolvablePair(String),
    #[error("a derived rule would not decrease the monomial order: {0}")]
    IllFoundedRule(String),
    #[error("word mixes generators from different presentations")]
    MixedPresentation,
    #[error("generator {0} has no registered two-sided inverse")]
    NoInverse(String),
}

/// Generator families across all supported presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenFamily {
    /// `l^-` modes (listed before `l^+` in the monomial order).
    LMinus,
    /// `l^+` modes.
    LPlus,
    /// Twisted generators `s`.
    S,
    /// Symplectic inverses of the level-0 antidiagonal generators.
    SInv,
}

impl GenFamily {
    pub fn symbol(&self) -> &'static str {
        match self {
            GenFamily::LMinus => "lm",
            GenFamily::LPlus => "lp",
            GenFamily::S => "s",
            GenFamily::SInv => "sinv",
        }
    }
}

/// One generator of a presentation: family, level and matrix position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenId {
    pub family: GenFamily,
    pub level: u16,
    pub row: u8,
    pub col: u8,
}

impl GenId {
    pub fn new(family: GenFamily, level: u16, row: usize, col: usize) -> GenId {
        GenId { family, level, row: row as u8, col: col as u8 }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^({})_{{{},{}}}",
            self.family.symbol(),
            self.level,
            self.row,
            self.col
        )
    }
}

/// A word in the free algebra: generator ranks of one presentation.
pub type Word = Vec<u32>;

static NEXT_TABLE_TAG: AtomicU32 = AtomicU32::new(1);

/// Interned, ordered generator table of one presentation.
///
/// Rank order equals the monomial generator order; `weights` drive the
/// weighted-lexicographic word order used to orient rules.
pub struct GenTable {
    tag: u32,
    gens: Vec<GenId>,
    weights: Vec<u64>,
    inverse: Vec<Option<u32>>,
    by_id: HashMap<GenId, u32>,
}

impl GenTable {
    /// Builds a table from generators already sorted into the desired order,
    /// with their weights.
    pub fn new(gens: Vec<(GenId, u64)>) -> GenTable {
        let mut by_id = HashMap::new();
        let mut ids = Vec::with_capacity(gens.len());
        let mut weights = Vec::with_capacity(gens.len());
        for (rank, (id, w)) in gens.into_iter().enumerate() {
            assert!(w >= 1, "generator weights must be positive");
            let prev = by_id.insert(id, rank as u32);
            assert!(prev.is_none(), "duplicate generator {}", id);
            ids.push(id);
            weights.push(w);
        }
        GenTable {
            tag: NEXT_TABLE_TAG.fetch_add(1, AtomicOrdering::Relaxed),
            gens: ids,
            inverse: vec![None; weights.len()],
            weights,
            by_id,
        }
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn id(&self, rank: u32) -> GenId {
        self.gens[rank as usize]
    }

    pub fn rank(&self, id: &GenId) -> Option<u32> {
        self.by_id.get(id).copied()
    }

    pub fn rank_or_panic(&self, id: &GenId) -> u32 {
        self.rank(id).unwrap_or_else(|| panic!("unknown generator {}", id))
    }

    pub fn weight(&self, rank: u32) -> u64 {
        self.weights[rank as usize]
    }

    pub fn word_weight(&self, word: &[u32]) -> u64 {
        word.iter().map(|&r| self.weight(r)).sum()
    }

    /// Registers `a` and `b` as two-sided inverses of each other.
    pub fn set_inverse_pair(&mut self, a: u32, b: u32) {
        self.inverse[a as usize] = Some(b);
        self.inverse[b as usize] = Some(a);
    }

    pub fn inverse_of(&self, rank: u32) -> Option<u32> {
        self.inverse[rank as usize]
    }

    /// Reversed word of inverses, i.e. the inverse of a monomial.
    pub fn word_inverse(&self, word: &[u32]) -> Result<Word, NcError> {
        let mut out = Vec::with_capacity(word.len());
        for &r in word.iter().rev() {
            out.push(
                self.inverse_of(r)
                    .ok_or_else(|| NcError::NoInverse(self.id(r).to_string()))?,
            );
        }
        Ok(out)
    }

    pub fn ranks(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.gens.len() as u32
    }

    pub fn word_to_string(&self, word: &[u32]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&r| self.id(r).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for GenTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenTable(tag={}, {} generators)", self.tag, self.gens.len())
    }
}
