//! Exact enumeration of a system's closure, stratified by word length.
//!
//! Every rule that fires makes its word strictly longer, so processing
//! lengths in increasing order sees each word exactly once: when a length
//! is popped from the pending map, all of its words are already known.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::cyclic::phi_profile;
use crate::error::{Error, Result};
use crate::rules::{successors_with_rules, ReplicationRule, StringSystem};
use crate::word::Word;

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_length: usize,
    /// Upper bound on distinct words discovered, pending ones included.
    pub max_states: usize,
    pub store_witnesses: bool,
    pub store_traces: bool,
}

impl EnumerationBudget {
    pub fn new(max_length: usize) -> Self {
        EnumerationBudget {
            max_length,
            max_states: DEFAULT_MAX_STATES,
            store_witnesses: false,
            store_traces: false,
        }
    }

    /// `|s| + 8k` with the default state guard.
    pub fn default_for(system: &StringSystem) -> Self {
        EnumerationBudget::new(system.seed.len() + 8 * system.family.k())
    }

    pub fn with_states(mut self, max_states: usize) -> Self {
        self.max_states = max_states;
        self
    }

    pub fn with_witnesses(mut self) -> Self {
        self.store_witnesses = true;
        self
    }

    pub fn with_traces(mut self) -> Self {
        self.store_traces = true;
        self
    }

    fn validate(&self, system: &StringSystem) -> Result<()> {
        if self.max_length < system.seed.len() {
            return Err(Error::param(format!(
                "max length {} is below the seed length {}",
                self.max_length,
                system.seed.len()
            )));
        }
        if self.max_states == 0 {
            return Err(Error::param("max states must be positive"));
        }
        Ok(())
    }
}

/// Exact per-length counts of a closure up to `max_length`, optionally with
/// the words themselves (sorted) and one derivation per word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelProfile {
    pub system: StringSystem,
    pub max_length: usize,
    counts: BTreeMap<usize, u64>,
    witnesses: Option<BTreeMap<usize, Vec<Word>>>,
    traces: Option<BTreeMap<usize, Vec<Vec<ReplicationRule>>>>,
}

impl LevelProfile {
    /// `N(n)`; zero for lengths the closure never reaches.
    pub fn count_at_length(&self, n: usize) -> Result<u64> {
        if n > self.max_length {
            return Err(Error::param(format!(
                "length {n} is beyond the enumerated bound {}",
                self.max_length
            )));
        }
        Ok(self.counts.get(&n).copied().unwrap_or(0))
    }

    /// Reachable lengths with their counts, ascending.
    pub fn counts(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&n, &c)| (n, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn witnesses(&self, n: usize) -> Option<&[Word]> {
        self.witnesses.as_ref()?.get(&n).map(Vec::as_slice)
    }

    pub fn traces(&self, n: usize) -> Option<&[Vec<ReplicationRule>]> {
        self.traces.as_ref()?.get(&n).map(Vec::as_slice)
    }

    pub fn has_witnesses(&self) -> bool {
        self.witnesses.is_some()
    }

    pub fn has_traces(&self) -> bool {
        self.traces.is_some()
    }

    /// All stored words with their traces (if kept), in lexicographic order.
    pub fn all_witnesses(&self) -> Vec<(&Word, Option<&[ReplicationRule]>)> {
        let Some(levels) = &self.witnesses else { return Vec::new() };
        let mut out: Vec<(&Word, Option<&[ReplicationRule]>)> = levels
            .iter()
            .flat_map(|(n, words)| {
                let traces = self.traces.as_ref().and_then(|t| t.get(n));
                words
                    .iter()
                    .enumerate()
                    .map(move |(i, w)| (w, traces.map(|t| t[i].as_slice())))
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }

    /// `n<TAB>count` lines for every reachable length.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tcount\n");
        for (n, c) in self.counts() {
            s.push_str(&format!("{n}\t{c}\n"));
        }
        s
    }

    pub fn witness_lines(&self) -> String {
        self.all_witnesses()
            .iter()
            .map(|(w, _)| self.system.format_word(w) + "\n")
            .collect()
    }

    /// One line per witness, same order as [`Self::witness_lines`].
    pub fn trace_lines(&self) -> String {
        self.all_witnesses()
            .iter()
            .map(|(_, t)| crate::rules::format_trace(t.unwrap_or(&[])) + "\n")
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
struct Back {
    parent_len: usize,
    parent_idx: usize,
    rule: ReplicationRule,
}

struct Level {
    words: Vec<Word>,
    backs: Vec<Option<Back>>,
}

/// Breadth-first expansion shared by [`enumerate_closure`] and
/// [`membership`].
struct Explorer<'a> {
    system: &'a StringSystem,
    budget: EnumerationBudget,
    keep_levels: bool,
    pending: BTreeMap<usize, HashMap<Word, Option<Back>>>,
    done: BTreeMap<usize, Level>,
    counts: BTreeMap<usize, u64>,
    discovered: usize,
}

enum Step {
    Finished,
    Found(usize),
}

impl<'a> Explorer<'a> {
    fn new(system: &'a StringSystem, budget: EnumerationBudget, keep_levels: bool) -> Self {
        let mut pending = BTreeMap::new();
        pending.insert(system.seed.len(), HashMap::from([(system.seed.clone(), None)]));
        Explorer {
            system,
            budget,
            keep_levels,
            pending,
            done: BTreeMap::new(),
            counts: BTreeMap::new(),
            discovered: 1,
        }
    }

    fn run(&mut self, target: Option<&Word>) -> Result<Step> {
        let family = self.system.family;
        let max_len = self.budget.max_length;
        while let Some((len, map)) = self.pending.pop_first() {
            let mut entries: Vec<(Word, Option<Back>)> = map.into_iter().collect();
            entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            let count = u64::try_from(entries.len()).map_err(|_| Error::Overflow("level count"))?;
            self.counts.insert(len, count);
            let (words, backs): (Vec<Word>, Vec<Option<Back>>) = entries.into_iter().unzip();

            let found = target
                .filter(|t| t.len() == len)
                .and_then(|t| words.binary_search(t).ok());

            if found.is_none() && len < max_len {
                // Children are merged in parent order, so the result does
                // not depend on how rayon splits the work.
                let children: Vec<Vec<(Word, ReplicationRule)>> = words
                    .par_iter()
                    .map(|x| successors_with_rules(&family, x, Some(max_len)))
                    .collect();
                for (parent_idx, kids) in children.into_iter().enumerate() {
                    for (child, rule) in kids {
                        let level = self.pending.entry(child.len()).or_default();
                        if level.contains_key(&child) {
                            continue;
                        }
                        level.insert(child, Some(Back { parent_len: len, parent_idx, rule }));
                        self.discovered += 1;
                        if self.discovered > self.budget.max_states {
                            return Err(self.exceeded(len));
                        }
                    }
                }
            }
            if self.keep_levels {
                self.done.insert(len, Level { words, backs });
            }
            if let Some(idx) = found {
                return Ok(Step::Found(idx));
            }
        }
        Ok(Step::Finished)
    }

    fn exceeded(&self, completed_through: usize) -> Error {
        let frontier = self.pending.values().map(HashMap::len).sum();
        let completed = LevelProfile {
            system: self.system.clone(),
            max_length: completed_through,
            counts: self.counts.clone(),
            witnesses: None,
            traces: None,
        };
        Error::BudgetExceeded { frontier, completed: Box::new(completed) }
    }

    fn trace_of(&self, len: usize, idx: usize) -> Vec<ReplicationRule> {
        let mut out = Vec::new();
        let (mut len, mut idx) = (len, idx);
        while let Some(back) = self.done[&len].backs[idx] {
            out.push(back.rule);
            len = back.parent_len;
            idx = back.parent_idx;
        }
        out.reverse();
        out
    }

    fn into_profile(self) -> LevelProfile {
        let traces = self.budget.store_traces.then(|| {
            let mut traces: BTreeMap<usize, Vec<Vec<ReplicationRule>>> = BTreeMap::new();
            for (&len, level) in &self.done {
                let here = level
                    .backs
                    .iter()
                    .map(|b| match b {
                        None => Vec::new(),
                        Some(b) => {
                            let mut t = traces[&b.parent_len][b.parent_idx].clone();
                            t.push(b.rule);
                            t
                        }
                    })
                    .collect();
                traces.insert(len, here);
            }
            traces
        });
        let witnesses = self
            .budget
            .store_witnesses
            .then(|| self.done.into_iter().map(|(n, l)| (n, l.words)).collect());
        LevelProfile {
            system: self.system.clone(),
            max_length: self.budget.max_length,
            counts: self.counts,
            witnesses,
            traces,
        }
    }
}

/// All distinct words of length at most `budget.max_length` reachable from
/// the seed.
pub fn enumerate_closure(system: &StringSystem, budget: &EnumerationBudget) -> Result<LevelProfile> {
    budget.validate(system)?;
    let keep = budget.store_witnesses || budget.store_traces;
    let mut explorer = Explorer::new(system, *budget, keep);
    explorer.run(None)?;
    Ok(explorer.into_profile())
}

/// Like [`enumerate_closure`], but a tripped state guard yields the levels
/// completed so far instead of an error.
pub fn enumerate_partial(system: &StringSystem, budget: &EnumerationBudget) -> Result<(LevelProfile, bool)> {
    match enumerate_closure(system, budget) {
        Ok(p) => Ok((p, true)),
        Err(Error::BudgetExceeded { completed, .. }) => Ok((*completed, false)),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Reachable; the derivation is present when traces were requested.
    Member { trace: Option<Vec<ReplicationRule>> },
    NotMember,
    /// The state guard tripped before the target's length was settled.
    Inconclusive { frontier: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

pub fn membership(system: &StringSystem, target: &Word, budget: &EnumerationBudget) -> Result<Membership> {
    budget.validate(system)?;
    system.alphabet.check(target)?;
    if target.len() > budget.max_length {
        return Err(Error::precondition(format!(
            "target length {} exceeds the budget {}",
            target.len(),
            budget.max_length
        )));
    }
    let seed = &system.seed;
    let found_trace = |t: Vec<ReplicationRule>| Membership::Member {
        trace: budget.store_traces.then_some(t),
    };
    if target == seed {
        return Ok(found_trace(Vec::new()));
    }
    // Rules copy existing symbols and only lengthen words.
    if target.len() <= seed.len() || target.alpha_representation() != seed.alpha_representation() {
        return Ok(Membership::NotMember);
    }
    if let Some(step) = system.family.fixed_step() {
        if !(target.len() - seed.len()).is_multiple_of(step) {
            return Ok(Membership::NotMember);
        }
    }
    let narrowed = EnumerationBudget { max_length: target.len(), ..*budget };
    let mut explorer = Explorer::new(system, narrowed, budget.store_traces);
    match explorer.run(Some(target)) {
        Ok(Step::Found(idx)) => {
            let trace = budget.store_traces.then(|| explorer.trace_of(target.len(), idx));
            Ok(Membership::Member { trace })
        }
        Ok(Step::Finished) => Ok(Membership::NotMember),
        Err(Error::BudgetExceeded { frontier, .. }) => Ok(Membership::Inconclusive { frontier }),
        Err(e) => Err(e),
    }
}

/// `C(n, r)` with checked 64-bit arithmetic.
pub fn binomial(n: u64, r: u64) -> Result<u64> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// Number of distinct words after exactly `m` fixed-length tandem
/// replications of block length `k`: `C(b + m - 1, b - 1)` where `b` is the
/// number of window-class bins of the seed.
pub fn tandem_bins_count(seed: &Word, k: usize, m: u64) -> Result<u64> {
    let bins = phi_profile(seed, k)?.bins as u64;
    let n = (bins + m).checked_sub(1).ok_or(Error::Overflow("bins count"))?;
    binomial(n, bins - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{trace_replay, RuleFamily, Variant};
    use crate::word::{w, Alphabet};

    fn system(variant: Variant, seed: &str, k: usize) -> StringSystem {
        let seed = w(seed);
        let sigma = seed.symbols().iter().max().map_or(1, |&m| m as usize + 1).max(2);
        StringSystem::new(Alphabet::new(sigma).unwrap(), seed, RuleFamily::fixed(variant, k).unwrap()).unwrap()
    }

    fn counts(p: &LevelProfile) -> Vec<u64> {
        p.counts().map(|(_, c)| c).collect()
    }

    #[test]
    fn reversed_tandem_reference_rows() {
        let p = enumerate_closure(&system(Variant::ReversedTandem, "01", 2), &EnumerationBudget::new(14)).unwrap();
        assert_eq!(counts(&p), [1, 1, 3, 10, 37, 145, 584]);
        let p = enumerate_closure(&system(Variant::ReversedTandem, "010", 3), &EnumerationBudget::new(21)).unwrap();
        assert_eq!(counts(&p), [1, 1, 3, 14, 78, 467, 2894]);
    }

    #[test]
    fn end_k1_is_free_extension() {
        let p = enumerate_closure(&system(Variant::End, "01", 1), &EnumerationBudget::new(10)).unwrap();
        for t in 0..=8 {
            assert_eq!(p.count_at_length(2 + t).unwrap(), 1 << t);
        }
    }

    #[test]
    fn periodic_gap_seed_has_single_words() {
        let sys = StringSystem::new(Alphabet::new(2).unwrap(), w("0101"), RuleFamily::gap(2, 2).unwrap()).unwrap();
        let p = enumerate_closure(&sys, &EnumerationBudget::new(20)).unwrap();
        assert!(p.counts().all(|(_, c)| c == 1));
        assert_eq!(p.counts().count(), 9);
    }

    #[test]
    fn count_lookup() {
        let p = enumerate_closure(&system(Variant::ReversedTandem, "01", 2), &EnumerationBudget::new(14)).unwrap();
        assert_eq!(p.count_at_length(2).unwrap(), 1);
        assert_eq!(p.count_at_length(7).unwrap(), 0);
        assert_eq!(p.count_at_length(1).unwrap(), 0);
        assert!(p.count_at_length(15).is_err());
        assert!(p.to_tsv().starts_with("n\tcount\n2\t1\n4\t1\n6\t3\n"));
    }

    #[test]
    fn witnesses_and_traces_replay() {
        let sys = system(Variant::ReversedTandem, "01", 2);
        let budget = EnumerationBudget::new(10).with_witnesses().with_traces();
        let p = enumerate_closure(&sys, &budget).unwrap();
        for (word, trace) in p.all_witnesses() {
            let trace = trace.unwrap();
            assert_eq!(trace_replay(&sys.seed, trace), *word);
            assert_eq!(trace.len(), (word.len() - 2) / 2);
        }
        assert_eq!(p.witness_lines().lines().count() as u64, p.total());
        assert_eq!(p.trace_lines().lines().count() as u64, p.total());
        assert_eq!(p.witnesses(6).unwrap().len(), 3);
    }

    #[test]
    fn state_guard_reports_partial_levels() {
        let sys = system(Variant::ReversedTandem, "01", 2);
        let err = enumerate_closure(&sys, &EnumerationBudget::new(14).with_states(10)).unwrap_err();
        match err {
            Error::BudgetExceeded { frontier, completed } => {
                assert!(frontier > 0);
                assert_eq!(counts(&completed)[..3], [1, 1, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let (partial, complete) = enumerate_partial(&sys, &EnumerationBudget::new(14).with_states(10)).unwrap();
        assert!(!complete);
        assert!(partial.max_length < 14);
        assert!(enumerate_closure(&sys, &EnumerationBudget::new(1)).is_err());
        assert!(enumerate_closure(&sys, &EnumerationBudget::new(4).with_states(0)).is_err());
    }

    #[test]
    fn membership_examples() {
        let tan = system(Variant::Tandem, "01", 2);
        let budget = EnumerationBudget::new(10).with_traces();
        match membership(&tan, &w("0101"), &budget).unwrap() {
            Membership::Member { trace: Some(t) } => assert_eq!(trace_replay(&tan.seed, &t), w("0101")),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            membership(&tan, &w("01"), &budget).unwrap(),
            Membership::Member { trace: Some(vec![]) }
        );
        let rt = system(Variant::ReversedTandem, "00", 2);
        assert_eq!(membership(&rt, &w("01"), &budget).unwrap(), Membership::NotMember);
        assert_eq!(membership(&tan, &w("0110"), &budget).unwrap(), Membership::NotMember);
        assert!(membership(&tan, &w("010101010101"), &budget).is_err());

        let rt01 = system(Variant::ReversedTandem, "01", 2);
        let tiny = EnumerationBudget::new(14).with_states(5);
        assert!(matches!(
            membership(&rt01, &w("01100110011001"), &tiny).unwrap(),
            Membership::Inconclusive { .. }
        ));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(10, 0).unwrap(), 1);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(62, 31).unwrap(), 465428353255261088);
        assert!(binomial(200, 100).is_err());
    }

    #[test]
    fn bins_count_examples() {
        assert_eq!(tandem_bins_count(&w("0011"), 2, 0).unwrap(), 1);
        for m in 0..6 {
            assert_eq!(tandem_bins_count(&w("0101"), 2, m).unwrap(), 1);
        }
        assert_eq!(tandem_bins_count(&w("0011"), 2, 2).unwrap(), 6);
        let p = enumerate_closure(&system(Variant::Tandem, "0011", 2), &EnumerationBudget::new(8)).unwrap();
        assert_eq!(p.count_at_length(8).unwrap(), 6);
        assert!(tandem_bins_count(&w("0"), 2, 1).is_err());
    }

    #[test]
    fn enumeration_is_thread_count_independent() {
        let sys = system(Variant::ReversedTandem, "012", 3);
        let budget = EnumerationBudget::new(15).with_witnesses().with_traces();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| enumerate_closure(&sys, &budget).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
        assert_eq!(one.trace_lines(), run(3).trace_lines());
    }

    #[test]
    fn every_longer_witness_has_a_predecessor() {
        let sys = system(Variant::ReversedTandem, "012", 3);
        let p = enumerate_closure(&sys, &EnumerationBudget::new(15).with_witnesses()).unwrap();
        let fam = sys.family;
        for n in [6, 9, 12, 15] {
            for word in p.witnesses(n).unwrap() {
                let has_parent = p
                    .witnesses(n - 3)
                    .unwrap()
                    .iter()
                    .any(|x| crate::rules::successors(&fam, x).contains(word));
                assert!(has_parent, "{word} has no predecessor");
            }
        }
    }
}
