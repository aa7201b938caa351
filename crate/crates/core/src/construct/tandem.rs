use std::fmt;

use super::{Builder, ConstructionResult};
use crate::error::{Error, Result};
use crate::rules::ReplicationRule;
use crate::word::{Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compaction {
    pub construction: ConstructionResult,
    /// 1-based start of a window of length `|R(s)|` holding every symbol once.
    pub window_start: usize,
}

/// Uses `|R(s)| - 1` tandem duplications to create a window in which every
/// symbol of `s` appears exactly once.
pub fn tandem_compact_distinct(s: &Word) -> Result<Compaction> {
    if s.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut seen = [false; 256];
    let firsts: Vec<usize> = s
        .symbols()
        .iter()
        .enumerate()
        .filter(|&(_, &c)| !std::mem::replace(&mut seen[c as usize], true))
        .map(|(p, _)| p)
        .collect();
    let delta = firsts.len();
    if delta < 2 {
        return Err(Error::precondition("compaction needs at least two distinct symbols"));
    }
    let last = firsts[delta - 1];

    let mut b = Builder::new(s);
    for j in 1..delta {
        let p = firsts[delta - 1 - j];
        b.step(ReplicationRule::tandem(p, last - p + j));
    }
    Ok(Compaction { construction: b.finish(), window_start: last + 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternOrientation {
    /// `a^k b`
    RunFirst,
    /// `b a^k`
    RunLast,
}

/// A run `a^k` adjacent to a different symbol `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedPattern {
    /// 1-based position of the first symbol of the pattern.
    pub start: usize,
    pub run: Symbol,
    pub other: Symbol,
    pub k: usize,
    pub orientation: PatternOrientation,
}

impl fmt::Display for SeedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, k) = (self.run, self.other, self.k);
        match self.orientation {
            PatternOrientation::RunFirst => write!(f, "pattern={a}^{k} {b} at {}", self.start),
            PatternOrientation::RunLast => write!(f, "pattern={b} {a}^{k} at {}", self.start),
        }
    }
}

/// Applies `T_{0,k}, T_{0,k+1}, ..., T_{0,2k-1}` so that positions
/// `k+1..=2k` all hold the first symbol of `s`, then locates a run of that
/// symbol next to a different one.
pub fn tandem_gek_seed_prep(s: &Word, k: usize) -> Result<(ConstructionResult, SeedPattern)> {
    if k == 0 {
        return Err(Error::param("k must be positive"));
    }
    if s.len() < k {
        return Err(Error::precondition(format!("|s| = {} is below k = {k}", s.len())));
    }
    if s.alpha_diversity() < 2 {
        return Err(Error::precondition("the seed needs at least two distinct symbols"));
    }
    let mut b = Builder::new(s);
    for len in k..2 * k {
        b.step(ReplicationRule::tandem(0, len));
    }
    let out = b.current.symbols();
    let a = out[0];
    debug_assert!(out[k..2 * k].iter().all(|&c| c == a));

    let n = out.len();
    let mut right = 2 * k - 1;
    while right + 1 < n && out[right + 1] == a {
        right += 1;
    }
    let pattern = if right + 1 < n {
        SeedPattern { start: right + 2 - k, run: a, other: out[right + 1], k, orientation: PatternOrientation::RunFirst }
    } else {
        let mut left = k;
        while left > 0 && out[left - 1] == a {
            left -= 1;
        }
        // some other symbol exists, so the run cannot cover the whole word
        debug_assert!(left > 0);
        SeedPattern { start: left, run: a, other: out[left - 1], k, orientation: PatternOrientation::RunLast }
    };
    Ok((b.finish(), pattern))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::trace_replay;
    use crate::word::w;
    use proptest::prelude::*;

    #[test]
    fn compaction_example() {
        let c = tandem_compact_distinct(&w("012")).unwrap();
        assert_eq!(c.construction.output, w("012101212"));
        assert_eq!(c.window_start, 3);
        assert_eq!(c.construction.output.window(2, 3), Some(w("210")));
        assert!(tandem_compact_distinct(&w("000")).is_err());
        let c = tandem_compact_distinct(&w("001")).unwrap();
        assert_eq!(c.construction.steps(), 1);
        assert_eq!(c.construction.output.window(c.window_start - 1, 2), Some(w("10")));
    }

    #[test]
    fn seed_prep_example() {
        let (c, p) = tandem_gek_seed_prep(&w("01"), 2).unwrap();
        assert_eq!(c.steps(), 2);
        let at = p.start - 1;
        let seg = c.output.window(at, 3).unwrap();
        assert_eq!(seg, w("001"));
        assert!(tandem_gek_seed_prep(&w("11"), 2).is_err());
    }

    fn check_pattern(out: &Word, p: &SeedPattern) -> bool {
        let mut expect = vec![p.run; p.k];
        match p.orientation {
            PatternOrientation::RunFirst => expect.push(p.other),
            PatternOrientation::RunLast => expect.insert(0, p.other),
        }
        p.run != p.other && out.window(p.start - 1, p.k + 1) == Some(Word::new(expect))
    }

    proptest! {
        #[test]
        fn compaction_window_is_distinct(s in prop::collection::vec(0u8..5, 1..12)) {
            let s = Word::new(s);
            prop_assume!(s.alpha_diversity() >= 2);
            let c = tandem_compact_distinct(&s).unwrap();
            let delta = s.alpha_diversity();
            prop_assert_eq!(c.construction.steps(), delta - 1);
            prop_assert_eq!(trace_replay(&s, &c.construction.trace), c.construction.output.clone());
            let win = c.construction.output.window(c.window_start - 1, delta).unwrap();
            prop_assert_eq!(win.alpha_diversity(), delta);
        }

        #[test]
        fn seed_prep_finds_pattern(s in prop::collection::vec(0u8..3, 1..10), k in 1usize..5) {
            let s = Word::new(s);
            prop_assume!(s.len() >= k && s.alpha_diversity() >= 2);
            let (c, p) = tandem_gek_seed_prep(&s, k).unwrap();
            prop_assert_eq!(c.steps(), k);
            prop_assert!(c.output.symbols()[k..2 * k].iter().all(|&x| x == s.symbols()[0]));
            prop_assert!(check_pattern(&c.output, &p));
        }
    }
}
