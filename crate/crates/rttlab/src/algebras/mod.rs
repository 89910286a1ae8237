//! Concrete presentations of the quantum algebras: generator enumeration,
//! defining-relation extraction, rewriting rule sets, generator matrices,
//! series-matrix inversion, structure homomorphisms and the evaluation
//! oracle.

pub mod homs;
pub mod matrices;
pub mod oracle;
pub mod relations;

pub use homs::{evaluation_to_finite, twisted_evaluation, TwistedEmbedding};
pub use matrices::{invert_series_matrix, mat_mul, ConstInvKind, SeriesMatrix};
pub use oracle::OracleRep;

use crate::ncalg::{
    derive_ruleset, GenFamily, GenId, GenTable, NCElem, NCPoly, NcError, RuleSet, Word,
};
use crate::scalar::{RatQ, Window};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgError {
    #[error("symplectic presentations require even N, got {0}")]
    OddSymplectic(usize),
    #[error(transparent)]
    Rewrite(#[from] NcError),
    #[error("unsupported operation for {0:?}")]
    Unsupported(AlgKind),
}

/// The six supported algebra kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgKind {
    /// Finite quantum enveloping algebra, RTT presentation.
    UqGl,
    /// Finite twisted algebra, orthogonal reflection presentation.
    UqTwO,
    /// Finite twisted algebra, symplectic reflection presentation.
    UqTwSp,
    /// Quantum affine algebra at level zero.
    UqAffine,
    /// Twisted q-Yangian, orthogonal.
    YqTwO,
    /// Twisted q-Yangian, symplectic.
    YqTwSp,
}

impl AlgKind {
    pub fn is_twisted(&self) -> bool {
        matches!(self, AlgKind::UqTwO | AlgKind::UqTwSp | AlgKind::YqTwO | AlgKind::YqTwSp)
    }

    pub fn is_symplectic(&self) -> bool {
        matches!(self, AlgKind::UqTwSp | AlgKind::YqTwSp)
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, AlgKind::UqAffine | AlgKind::YqTwO | AlgKind::YqTwSp)
    }
}

/// Base letter weight; level increments sit on top so that word length
/// dominates, then total level, then ranks lexicographically.
const BASE_WEIGHT: u64 = 1 << 16;

/// A frozen presentation: generators, rewriting rules, and bookkeeping.
pub struct Presentation {
    pub kind: AlgKind,
    pub n: usize,
    /// Series depth: identity checks run to this order.
    pub depth: i64,
    /// Generators materialized up to this level.
    pub gen_cap: u16,
    pub table: Arc<GenTable>,
    pub rules: RuleSet,
}

impl Presentation {
    /// Default series window: `u^-1` series for twisted kinds, symmetric for
    /// the affine algebra (which carries both `l^+` and `l^-` modes), and a
    /// degree-0 window for the finite kinds.
    pub fn window(&self) -> Window {
        match self.kind {
            AlgKind::UqGl | AlgKind::UqTwO | AlgKind::UqTwSp => Window::new(0, 0),
            AlgKind::UqAffine => Window::new(-self.depth, self.depth),
            AlgKind::YqTwO | AlgKind::YqTwSp => Window::lower(self.depth),
        }
    }

    pub fn rank(&self, family: GenFamily, level: u16, i: usize, j: usize) -> Option<u32> {
        self.table.rank(&GenId::new(family, level, i, j))
    }

    /// The level-0 value of a generator-matrix entry: a generator word, one,
    /// or zero, depending on the presentation's constraints.
    pub fn level0_entry(&self, family: GenFamily, i: usize, j: usize) -> NCElem {
        match self.kind {
            AlgKind::UqGl | AlgKind::UqAffine => match family {
                GenFamily::LMinus if i < j => NCElem::zero(),
                GenFamily::LPlus if i > j => NCElem::zero(),
                _ => NCElem::gen(self.table.rank_or_panic(&GenId::new(family, 0, i, j))),
            },
            AlgKind::UqTwO | AlgKind::YqTwO => {
                if i < j {
                    NCElem::zero()
                } else if i == j {
                    NCElem::one()
                } else {
                    NCElem::gen(self.table.rank_or_panic(&GenId::new(GenFamily::S, 0, i, j)))
                }
            }
            AlgKind::UqTwSp | AlgKind::YqTwSp => {
                if i < j && j != pair_index(i) {
                    NCElem::zero()
                } else {
                    NCElem::gen(self.table.rank_or_panic(&GenId::new(GenFamily::S, 0, i, j)))
                }
            }
        }
    }

    /// Generator series entry, e.g. `s_ij(u) = sum_r s_ij^(r) u^(-r)` for the
    /// twisted kinds or `l_ij^+(u) = sum_r l^(r) u^r` for `LPlus`.
    ///
    /// The result is the series at the bare argument `u`; apply `shift_arg`
    /// and `invert_arg` for shifted or inverted arguments.
    pub fn series_entry(&self, family: GenFamily, i: usize, j: usize, window: Window) -> NCPoly {
        let mut p = NCPoly::zero(window);
        let dir: i64 = match family {
            GenFamily::LPlus => 1,
            GenFamily::LMinus => -1,
            GenFamily::S => -1,
            GenFamily::SInv => panic!("sinv has no series"),
        };
        let zero_elem = self.level0_entry(family, i, j);
        p.add_elem(0, zero_elem);
        for r in 1..=self.gen_cap {
            if !window.contains(dir * r as i64) {
                continue;
            }
            if let Some(rank) = self.rank(family, r, i, j) {
                p.add_elem(dir * r as i64, NCElem::gen(rank));
            }
        }
        p
    }

    /// All generator ranks with level at most `cap`, in rank order.
    pub fn ranks_up_to_level(&self, cap: u16) -> Vec<u32> {
        self.table
            .ranks()
            .filter(|&r| self.table.id(r).level <= cap)
            .collect()
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        self.table.word_to_string(w)
    }
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Presentation({:?}, N={}, depth={}, cap={}, {} gens, {} rules)",
            self.kind,
            self.n,
            self.depth,
            self.gen_cap,
            self.table.len(),
            self.rules.len()
        )
    }
}

/// Symplectic pairing `(2k-1)' = 2k`, `(2k)' = 2k-1`.
pub fn pair_index(i: usize) -> usize {
    if i % 2 == 1 {
        i + 1
    } else {
        i - 1
    }
}

/// Generator family carried by a kind's generator matrix.
pub fn main_family(kind: AlgKind) -> GenFamily {
    match kind {
        AlgKind::UqGl | AlgKind::UqAffine => GenFamily::LPlus,
        _ => GenFamily::S,
    }
}

fn enumerate_generators(kind: AlgKind, n: usize, cap: u16) -> Vec<(GenId, u64)> {
    let mut gens: Vec<(GenId, u64)> = Vec::new();
    match kind {
        AlgKind::UqGl | AlgKind::UqAffine => {
            let levels = if kind == AlgKind::UqGl { 0 } else { cap };
            for family in [GenFamily::LMinus, GenFamily::LPlus] {
                for level in 0..=levels {
                    for i in 1..=n {
                        for j in 1..=n {
                            let keep = if level == 0 {
                                match family {
                                    GenFamily::LMinus => i >= j,
                                    GenFamily::LPlus => i <= j,
                                    _ => unreachable!(),
                                }
                            } else {
                                true
                            };
                            if keep {
                                gens.push((
                                    GenId::new(family, level, i, j),
                                    BASE_WEIGHT + level as u64,
                                ));
                            }
                        }
                    }
                }
            }
        }
        AlgKind::UqTwO | AlgKind::YqTwO => {
            let levels = if kind == AlgKind::UqTwO { 0 } else { cap };
            for level in 0..=levels {
                for i in 1..=n {
                    for j in 1..=n {
                        let keep = if level == 0 { i > j } else { true };
                        if keep {
                            gens.push((
                                GenId::new(GenFamily::S, level, i, j),
                                BASE_WEIGHT + level as u64,
                            ));
                        }
                    }
                }
            }
        }
        AlgKind::UqTwSp | AlgKind::YqTwSp => {
            // level 0 in the basis order: for each odd i the block
            // s_i1 .. s_ii, s_ii', sinv_ii', s_i'i', s_i'1 .. s_i'(i-1);
            // the straightened generators s_i'i come last with heavy weight.
            for i in (1..=n).step_by(2) {
                let ip = i + 1;
                for j in 1..=i {
                    gens.push((GenId::new(GenFamily::S, 0, i, j), BASE_WEIGHT));
                }
                gens.push((GenId::new(GenFamily::S, 0, i, ip), BASE_WEIGHT));
                gens.push((GenId::new(GenFamily::SInv, 0, i, ip), BASE_WEIGHT));
                gens.push((GenId::new(GenFamily::S, 0, ip, ip), BASE_WEIGHT));
                for j in 1..i {
                    gens.push((GenId::new(GenFamily::S, 0, ip, j), BASE_WEIGHT));
                }
            }
            for i in (1..=n).step_by(2) {
                gens.push((GenId::new(GenFamily::S, 0, i + 1, i), 3 * BASE_WEIGHT));
            }
            if kind == AlgKind::YqTwSp {
                for level in 1..=cap {
                    for i in 1..=n {
                        for j in 1..=n {
                            gens.push((
                                GenId::new(GenFamily::S, level, i, j),
                                BASE_WEIGHT + level as u64,
                            ));
                        }
                    }
                }
            }
        }
    }
    gens
}

/// Builds a presentation: enumerate generators, extract the defining
/// relations, run the elimination, and install the straightening rules.
pub fn build_with_cap(
    kind: AlgKind,
    n: usize,
    depth: i64,
    cap: u16,
) -> Result<Arc<Presentation>, AlgError> {
    if kind.is_symplectic() && n % 2 != 0 {
        return Err(AlgError::OddSymplectic(n));
    }
    let key = (kind, n, depth, cap);
    {
        let cache = PRES_CACHE.lock().unwrap();
        if let Some(p) = cache.get(&key) {
            return Ok(p.clone());
        }
    }
    let mut table = GenTable::new(enumerate_generators(kind, n, cap));
    register_inverses(kind, n, &mut table);
    let table = Arc::new(table);
    let half = Presentation {
        kind,
        n,
        depth,
        gen_cap: cap,
        table: table.clone(),
        rules: derive_ruleset(table.clone(), Vec::new())?,
    };
    let rows = relations::relation_rows(&half);
    let mut rules = derive_ruleset(table.clone(), rows)?;
    if kind.is_symplectic() {
        add_symplectic_straightening(&half, &mut rules)?;
    }
    let pres = Arc::new(Presentation { kind, n, depth, gen_cap: cap, table, rules });
    PRES_CACHE.lock().unwrap().insert(key, pres.clone());
    Ok(pres)
}

/// Builds with the default generator cap `depth + 2`, which covers the
/// products and commutators the identity suite performs at that depth.
pub fn build(kind: AlgKind, n: usize, depth: i64) -> Result<Arc<Presentation>, AlgError> {
    build_with_cap(kind, n, depth, (depth + 2) as u16)
}

type PresKey = (AlgKind, usize, i64, u16);
static PRES_CACHE: Lazy<Mutex<HashMap<PresKey, Arc<Presentation>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn register_inverses(kind: AlgKind, n: usize, table: &mut GenTable) {
    match kind {
        AlgKind::UqGl | AlgKind::UqAffine => {
            for i in 1..=n {
                let a = table.rank_or_panic(&GenId::new(GenFamily::LMinus, 0, i, i));
                let b = table.rank_or_panic(&GenId::new(GenFamily::LPlus, 0, i, i));
                table.set_inverse_pair(a, b);
            }
        }
        AlgKind::UqTwSp | AlgKind::YqTwSp => {
            for i in (1..=n).step_by(2) {
                let a = table.rank_or_panic(&GenId::new(GenFamily::S, 0, i, i + 1));
                let b = table.rank_or_panic(&GenId::new(GenFamily::SInv, 0, i, i + 1));
                table.set_inverse_pair(a, b);
            }
        }
        _ => {}
    }
}

/// The symplectic level-0 constraint solves the `(i', i)` generator in terms
/// of the basis ones: `s_i'i = q^-2 s_i'i' s_ii sinv - q sinv`.
fn add_symplectic_straightening(pres: &Presentation, rules: &mut RuleSet) -> Result<(), AlgError> {
    for i in (1..=pres.n).step_by(2) {
        let ip = i + 1;
        let s_pi = pres.table.rank_or_panic(&GenId::new(GenFamily::S, 0, ip, i));
        let s_pp = pres.table.rank_or_panic(&GenId::new(GenFamily::S, 0, ip, ip));
        let s_ii = pres.table.rank_or_panic(&GenId::new(GenFamily::S, 0, i, i));
        let sinv = pres.table.rank_or_panic(&GenId::new(GenFamily::SInv, 0, i, ip));
        let mut rhs = NCElem::monomial(vec![s_pp, s_ii, sinv], RatQ::q_pow(-2));
        rhs.add_term(vec![sinv], RatQ::q_pow(1).neg());
        rules.add_manual_rule(vec![s_pi], rhs)?;
    }
    Ok(())
}
