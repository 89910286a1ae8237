//! Rule derivation (sparse Gaussian elimination over the defining relations)
//! and the normal-form rewriting engine.
//!
//! The monomial order is weighted-lexicographic: words are compared by total
//! generator weight, then letterwise by rank. Rules come out of a reduced row
//! echelon form with columns sorted by this order, so every right-hand side
//! strictly precedes its left-hand side and rewriting terminates.

use super::elem::{NCElem, NCPoly};
use super::{GenTable, NcError, Word};
use crate::scalar::RatQ;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Monomial sort key: total weight, then letterwise rank comparison.
///
/// With strictly positive weights two distinct words of equal weight are
/// never prefixes of one another, so the tuple order is a total monoid order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MonKey(pub u64, pub Word);

impl MonKey {
    pub fn of(table: &GenTable, word: &[u32]) -> MonKey {
        MonKey(table.word_weight(word), word.to_vec())
    }
}

/// Rewrite step budget. Exceeding the limit aborts with a diagnostic instead
/// of silently truncating.
#[derive(Debug, Clone)]
pub struct Budget {
    pub limit: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }

    /// Default per-call budget of one million reductions.
    pub fn default_budget() -> Budget {
        Budget::new(1_000_000)
    }

    fn spend(&mut self, word: &Word, table: &GenTable) -> Result<(), NcError> {
        self.used += 1;
        if self.used > self.limit {
            Err(NcError::BudgetExhausted {
                steps: self.used,
                word: table.word_to_string(word),
            })
        } else {
            Ok(())
        }
    }
}

/// A frozen rewriting system for one presentation.
pub struct RuleSet {
    table: Arc<GenTable>,
    /// LHS word (length 1 or 2) to RHS combination, strictly smaller.
    rules: HashMap<Word, NCElem>,
    single: Vec<bool>,
}

impl RuleSet {
    pub fn table(&self) -> &Arc<GenTable> {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn has_rule(&self, lhs: &[u32]) -> bool {
        self.rules.contains_key(lhs)
    }

    pub fn rule_rhs(&self, lhs: &[u32]) -> Option<&NCElem> {
        self.rules.get(lhs)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Word, &NCElem)> {
        self.rules.iter()
    }

    /// Deterministic listing, sorted by LHS.
    pub fn sorted_rules(&self) -> Vec<(&Word, &NCElem)> {
        let mut v: Vec<_> = self.rules.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Adds a hand-derived rule, verifying the order strictly decreases.
    pub fn add_manual_rule(&mut self, lhs: Word, rhs: NCElem) -> Result<(), NcError> {
        let key = MonKey::of(&self.table, &lhs);
        for (w, _) in rhs.terms() {
            if MonKey::of(&self.table, w) >= key {
                return Err(NcError::IllFoundedRule(format!(
                    "{} -> ... {} ...",
                    self.table.word_to_string(&lhs),
                    self.table.word_to_string(w)
                )));
            }
        }
        if lhs.len() == 1 {
            self.single[lhs[0] as usize] = true;
        }
        self.rules.insert(lhs, rhs);
        Ok(())
    }

    /// Clone with the coefficient of one term of one rule multiplied by `q`;
    /// used by mutation-sensitivity tests. Rules are indexed in sorted order.
    pub fn perturbed(&self, rule_index: usize, term_index: usize) -> RuleSet {
        let sorted = self.sorted_rules();
        let (lhs, rhs) = sorted[rule_index % sorted.len()];
        let lhs = lhs.clone();
        let terms: Vec<(Word, RatQ)> =
            rhs.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut rhs2 = NCElem::zero();
        if terms.is_empty() {
            // rule with zero RHS: perturb by adding a constant
            rhs2.add_term(Vec::new(), RatQ::q_pow(1));
        } else {
            let k = term_index % terms.len();
            for (i, (w, c)) in terms.into_iter().enumerate() {
                let c = if i == k { c.mul(&RatQ::q_pow(1)) } else { c };
                rhs2.add_term(w, c);
            }
        }
        let mut rules = self.rules.clone();
        rules.insert(lhs, rhs2);
        RuleSet { table: self.table.clone(), rules, single: self.single.clone() }
    }

    /// Finds the leftmost redex in `word`: a single-letter or adjacent-pair
    /// rule match. Returns `(position, matched length)`.
    fn find_redex(&self, word: &[u32]) -> Option<(usize, usize)> {
        for i in 0..word.len() {
            if self.single[word[i] as usize] && self.rules.contains_key(&word[i..i + 1]) {
                return Some((i, 1));
            }
            if i + 1 < word.len() && self.rules.contains_key(&word[i..i + 2]) {
                return Some((i, 2));
            }
        }
        None
    }

    fn nf_word(
        &self,
        word: &Word,
        budget: &mut Budget,
        memo: &mut HashMap<Word, NCElem>,
    ) -> Result<NCElem, NcError> {
        if let Some(hit) = memo.get(word) {
            return Ok(hit.clone());
        }
        let result = match self.find_redex(word) {
            None => NCElem::monomial(word.clone(), RatQ::one()),
            Some((pos, len)) => {
                budget.spend(word, &self.table)?;
                let rhs = self.rules.get(&word[pos..pos + len]).unwrap().clone();
                let mut acc = NCElem::zero();
                for (mid, c) in rhs.terms() {
                    let mut w = Vec::with_capacity(word.len() - len + mid.len());
                    w.extend_from_slice(&word[..pos]);
                    w.extend_from_slice(mid);
                    w.extend_from_slice(&word[pos + len..]);
                    acc = acc.add(&self.nf_word(&w, budget, memo)?.scale(c));
                }
                acc
            }
        };
        memo.insert(word.clone(), result.clone());
        Ok(result)
    }

    /// Normal form of an element. No rule's left side occurs in the result.
    pub fn normal_form_elem(&self, e: &NCElem, budget: &mut Budget) -> Result<NCElem, NcError> {
        let mut memo = HashMap::new();
        self.normal_form_elem_memo(e, budget, &mut memo)
    }

    /// Normal form reusing a caller-provided memo table.
    pub fn normal_form_elem_memo(
        &self,
        e: &NCElem,
        budget: &mut Budget,
        memo: &mut HashMap<Word, NCElem>,
    ) -> Result<NCElem, NcError> {
        let mut out = NCElem::zero();
        for (w, c) in e.terms() {
            out = out.add(&self.nf_word(w, budget, memo)?.scale(c));
        }
        Ok(out)
    }

    /// Normal form of a spectral series, degree by degree.
    pub fn normal_form(&self, p: &NCPoly, budget: &mut Budget) -> Result<NCPoly, NcError> {
        let mut memo = HashMap::new();
        let mut out = NCPoly::zero(p.window());
        for (&d, e) in p.degrees() {
            out.add_elem(d, self.normal_form_elem_memo(e, budget, &mut memo)?);
        }
        Ok(out)
    }

    /// True when the element reduces to zero.
    pub fn reduces_to_zero(&self, p: &NCPoly, budget: &mut Budget) -> Result<bool, NcError> {
        Ok(self.normal_form(p, budget)?.is_zero())
    }
}

impl std::fmt::Debug for RuleSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RuleSet({} rules over {:?})", self.rules.len(), self.table)
    }
}

/// Sparse relation row under elimination: terms sorted by descending MonKey.
struct Row {
    terms: Vec<(MonKey, RatQ)>,
}

impl Row {
    fn from_elem(table: &GenTable, e: &NCElem) -> Row {
        let mut terms: Vec<(MonKey, RatQ)> = e
            .terms()
            .map(|(w, c)| (MonKey::of(table, w), c.clone()))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Row { terms }
    }

    fn leading(&self) -> Option<&(MonKey, RatQ)> {
        self.terms.first()
    }

    /// `self -= coeff * rhs_of_pivot` where the pivot row is stored in rule
    /// form (`pivot = rhs`), i.e. substitutes the pivot monomial.
    fn substitute(&mut self, coeff: &RatQ, rhs: &[(MonKey, RatQ)]) {
        let mut map: BTreeMap<MonKey, RatQ> = BTreeMap::new();
        for (k, c) in self.terms.drain(..) {
            map.insert(k, c);
        }
        // the leading term was the pivot occurrence; caller removes it before calling
        for (k, c) in rhs {
            let add = coeff.mul(c);
            match map.get_mut(k) {
                Some(existing) => {
                    *existing = existing.add(&add);
                    if existing.is_zero() {
                        map.remove(k);
                    }
                }
                None => {
                    map.insert(k.clone(), add);
                }
            }
        }
        self.terms = map.into_iter().rev().collect();
    }
}

/// Gaussian elimination over the relation rows, producing oriented rules.
///
/// Every pivot must be a word of length at most two (the relations are at
/// most quadratic); a pivot on the empty word signals an inconsistent
/// presentation.
pub fn derive_ruleset(table: Arc<GenTable>, rows: Vec<NCElem>) -> Result<RuleSet, NcError> {
    // pivot key -> rule RHS (pivot = sum of strictly smaller terms)
    let mut pivots: BTreeMap<MonKey, Vec<(MonKey, RatQ)>> = BTreeMap::new();
    for e in &rows {
        let mut row = Row::from_elem(&table, e);
        loop {
            let (lead_key, lead_coeff) = match row.leading() {
                None => break,
                Some((k, c)) => (k.clone(), c.clone()),
            };
            if let Some(rhs) = pivots.get(&lead_key) {
                row.terms.remove(0);
                row.substitute(&lead_coeff, rhs);
            } else {
                // new pivot: normalize to pivot = -rest/coeff
                let inv = lead_coeff.inv().expect("nonzero leading coefficient");
                let rhs: Vec<(MonKey, RatQ)> = row.terms[1..]
                    .iter()
                    .map(|(k, c)| (k.clone(), c.mul(&inv).neg()))
                    .collect();
                pivots.insert(lead_key, rhs);
                break;
            }
        }
    }
    // back-substitution, ascending so substituted tails are already clean
    let keys: Vec<MonKey> = pivots.keys().cloned().collect();
    for key in keys {
        let rhs = pivots.get(&key).unwrap().clone();
        let mut clean: BTreeMap<MonKey, RatQ> = BTreeMap::new();
        let mut dirty = false;
        for (k, c) in rhs {
            if let Some(sub) = pivots.get(&k) {
                dirty = true;
                for (k2, c2) in sub {
                    let add = c.mul(c2);
                    let entry = clean.entry(k2.clone()).or_insert_with(RatQ::zero);
                    *entry = entry.add(&add);
                }
            } else {
                let entry = clean.entry(k).or_insert_with(RatQ::zero);
                *entry = entry.add(&c);
            }
        }
        if dirty {
            let rhs2: Vec<(MonKey, RatQ)> = clean
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            pivots.insert(key, rhs2);
        }
    }
    // orient
    let mut rules: HashMap<Word, NCElem> = HashMap::new();
    let mut single = vec![false; table.len()];
    for (MonKey(_, word), rhs) in pivots {
        if word.is_empty() {
            return Err(NcError::InconsistentPresentation);
        }
        debug_assert!(word.len() <= 2, "relations are at most quadratic");
        let mut e = NCElem::zero();
        for (MonKey(_, w), c) in rhs {
            e.add_term(w, c);
        }
        if word.len() == 1 {
            single[word[0] as usize] = true;
        }
        rules.insert(word, e);
    }
    Ok(RuleSet { table, rules, single })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{GenFamily, GenId};

    fn toy_table() -> Arc<GenTable> {
        // two generators x < y, weight 1 each
        let x = GenId::new(GenFamily::S, 0, 2, 1);
        let y = GenId::new(GenFamily::S, 0, 3, 1);
        Arc::new(GenTable::new(vec![(x, 1), (y, 1)]))
    }

    #[test]
    fn q_commuting_pair_straightens() {
        let table = toy_table();
        // relation: y x - q x y = 0
        let mut rel = NCElem::zero();
        rel.add_term(vec![1, 0], RatQ::one());
        rel.add_term(vec![0, 1], RatQ::q_pow(1).neg());
        let rs = derive_ruleset(table.clone(), vec![rel]).unwrap();
        assert_eq!(rs.len(), 1);
        let mut budget = Budget::default_budget();
        // y y x -> q^2 x y y
        let e = NCElem::monomial(vec![1, 1, 0], RatQ::one());
        let nf = rs.normal_form_elem(&e, &mut budget).unwrap();
        assert_eq!(nf, NCElem::monomial(vec![0, 1, 1], RatQ::q_pow(2)));
    }

    #[test]
    fn idempotent_normal_form() {
        let table = toy_table();
        let mut rel = NCElem::zero();
        rel.add_term(vec![1, 0], RatQ::one());
        rel.add_term(vec![0, 1], RatQ::q_pow(1).neg());
        rel.add_term(vec![], crate::scalar::q_minus_qinv());
        let rs = derive_ruleset(table, vec![rel]).unwrap();
        let mut budget = Budget::default_budget();
        let e = NCElem::monomial(vec![1, 0, 1, 0], RatQ::one());
        let nf = rs.normal_form_elem(&e, &mut budget).unwrap();
        let nf2 = rs.normal_form_elem(&nf, &mut budget).unwrap();
        assert_eq!(nf, nf2);
    }

    #[test]
    fn dependent_relations_collapse() {
        let table = toy_table();
        let mut rel1 = NCElem::zero();
        rel1.add_term(vec![1, 0], RatQ::one());
        rel1.add_term(vec![0, 1], RatQ::q_pow(1).neg());
        let rel2 = rel1.scale(&RatQ::poly(&[(2, 3)]));
        let rs = derive_ruleset(table, vec![rel1, rel2]).unwrap();
        assert_eq!(rs.len(), 1);
    }

    #[test]
    fn inconsistent_presentation_detected() {
        let table = toy_table();
        let rel = NCElem::scalar(RatQ::one());
        assert!(matches!(
            derive_ruleset(table, vec![rel]),
            Err(NcError::InconsistentPresentation)
        ));
    }

    #[test]
    fn budget_exhaustion_reports() {
        let table = toy_table();
        let mut rel = NCElem::zero();
        rel.add_term(vec![1, 0], RatQ::one());
        rel.add_term(vec![0, 1], RatQ::q_pow(1).neg());
        let rs = derive_ruleset(table, vec![rel]).unwrap();
        let mut tiny = Budget::new(2);
        let e = NCElem::monomial(vec![1, 1, 1, 0], RatQ::one());
        assert!(matches!(
            rs.normal_form_elem(&e, &mut tiny),
            Err(NcError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn manual_rule_must_decrease() {
        let table = toy_table();
        let rs = derive_ruleset(table, vec![]).unwrap();
        let mut rs = rs;
        // x -> y is ill-founded (same weight, y is larger)
        let bad = rs.add_manual_rule(vec![0], NCElem::gen(1));
        assert!(matches!(bad, Err(NcError::IllFoundedRule(_))));
        // y -> x is fine
        rs.add_manual_rule(vec![1], NCElem::gen(0)).unwrap();
        assert!(rs.has_rule(&[1]));
    }

    #[test]
    fn inverse_pair_reduction() {
        // generators a, ainv with a*ainv = ainv*a = 1
        let a = GenId::new(GenFamily::S, 0, 1, 2);
        let ainv = GenId::new(GenFamily::SInv, 0, 1, 2);
        let mut table = GenTable::new(vec![(a, 1), (ainv, 1)]);
        table.set_inverse_pair(0, 1);
        let table = Arc::new(table);
        let mut rel1 = NCElem::monomial(vec![0, 1], RatQ::one());
        rel1.add_term(vec![], RatQ::from_int(-1));
        let mut rel2 = NCElem::monomial(vec![1, 0], RatQ::one());
        rel2.add_term(vec![], RatQ::from_int(-1));
        let rs = derive_ruleset(table.clone(), vec![rel1, rel2]).unwrap();
        let mut budget = Budget::default_budget();
        let e = NCElem::monomial(vec![0, 0, 1, 1], RatQ::one());
        assert_eq!(rs.normal_form_elem(&e, &mut budget).unwrap(), NCElem::one());
        assert_eq!(table.word_inverse(&[0, 0]).unwrap(), vec![1, 1]);
    }
}
