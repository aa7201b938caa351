use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use super::{ReplicationRule, Variant};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Block length exactly `k`.
    Fixed(usize),
    /// Every block length `k' >= k`.
    AtLeast(usize),
}

impl Mode {
    pub fn k(self) -> usize {
        match self {
            Mode::Fixed(k) | Mode::AtLeast(k) => k,
        }
    }

    pub fn is_at_least(self) -> bool {
        matches!(self, Mode::AtLeast(_))
    }
}

/// A set of rules of one variant: all offsets, and either one block length
/// or every block length from `k` upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuleFamily {
    pub variant: Variant,
    pub mode: Mode,
    pub gap: Option<usize>,
}

impl RuleFamily {
    pub fn new(variant: Variant, mode: Mode, gap: Option<usize>) -> Result<Self> {
        // validates k and the gap parameter
        ReplicationRule::new(variant, 0, mode.k(), gap)?;
        if mode.is_at_least() && !variant.replicator().supports_at_least() {
            return Err(Error::param(format!(
                "the at-least family is only defined for end and tandem replication, not {variant}"
            )));
        }
        Ok(RuleFamily { variant, mode, gap })
    }

    pub fn fixed(variant: Variant, k: usize) -> Result<Self> {
        RuleFamily::new(variant, Mode::Fixed(k), None)
    }

    pub fn at_least(variant: Variant, k: usize) -> Result<Self> {
        RuleFamily::new(variant, Mode::AtLeast(k), None)
    }

    pub fn gap(k: usize, gap: usize) -> Result<Self> {
        RuleFamily::new(Variant::Gap, Mode::Fixed(k), Some(gap))
    }

    pub fn k(&self) -> usize {
        self.mode.k()
    }

    /// Length the seed needs before the family's theorems apply.
    pub fn min_seed_len(&self) -> usize {
        self.k() + self.gap.unwrap_or(0)
    }

    /// Length increment of one application, when it is the same for every rule.
    pub fn fixed_step(&self) -> Option<usize> {
        match self.mode {
            Mode::Fixed(k) => Some(k),
            Mode::AtLeast(_) => None,
        }
    }

    /// Every rule of the family that changes `x`, in order of block length
    /// then offset. Rules producing words longer than `max_len` are skipped.
    pub fn instantiate(&self, x: &Word, max_len: Option<usize>) -> Vec<ReplicationRule> {
        let n = x.len();
        let room = max_len.map_or(usize::MAX, |m| m.saturating_sub(n));
        let lengths: Vec<usize> = match self.mode {
            Mode::Fixed(k) => vec![k],
            // blocks longer than |x| never match
            Mode::AtLeast(k) => (k..=n).collect(),
        };
        let mut out = Vec::new();
        for k in lengths.into_iter().filter(|&k| k <= room) {
            let probe = ReplicationRule { variant: self.variant, offset: 0, k, gap: self.gap };
            let span = probe.span();
            if span > n {
                continue;
            }
            out.extend((0..=n - span).map(|offset| ReplicationRule { offset, ..probe }));
        }
        out
    }
}

/// Distinct one-step successors together with the first rule (in
/// [`RuleFamily::instantiate`] order) producing each.
pub fn successors_with_rules(
    family: &RuleFamily,
    x: &Word,
    max_len: Option<usize>,
) -> Vec<(Word, ReplicationRule)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rule in family.instantiate(x, max_len) {
        let y = rule.apply(x);
        if y != *x && seen.insert(y.clone()) {
            out.push((y, rule));
        }
    }
    out
}

/// `{ T(x) : T in family, T(x) != x }`.
pub fn successors(family: &RuleFamily, x: &Word) -> BTreeSet<Word> {
    successors_with_rules(family, x, None).into_iter().map(|(y, _)| y).collect()
}

/// Alphabet, seed word and rule family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringSystem {
    pub alphabet: Alphabet,
    pub seed: Word,
    pub family: RuleFamily,
}

impl StringSystem {
    pub fn new(alphabet: Alphabet, seed: Word, family: RuleFamily) -> Result<Self> {
        alphabet.check(&seed)?;
        Ok(StringSystem { alphabet, seed, family })
    }

    /// `Some(reason)` when the seed is shorter than the family's theorems
    /// require (`|s| >= k`, or `|s| >= k + k'` for gap replication).
    pub fn length_violation(&self) -> Option<String> {
        let need = self.family.min_seed_len();
        (self.seed.len() < need).then(|| {
            format!("seed length {} is below the required {need}", self.seed.len())
        })
    }

    pub fn require_length(&self) -> Result<()> {
        match self.length_violation() {
            Some(msg) => Err(Error::Precondition(msg)),
            None => Ok(()),
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format_word(w)
    }

    /// Canonical descriptor, e.g. `variant:rt; k=2; mode=fixed; seed=01; alphabet=2`.
    pub fn descriptor(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for StringSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "variant:{}; k={}", self.family.variant, self.family.k())?;
        if let Some(g) = self.family.gap {
            write!(f, "; kprime={g}")?;
        }
        let mode = if self.family.mode.is_at_least() { "atleast" } else { "fixed" };
        write!(
            f,
            "; mode={mode}; seed={}; alphabet={}",
            self.alphabet.format_word(&self.seed),
            self.alphabet.descriptor()
        )
    }
}

impl FromStr for StringSystem {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut variant = None;
        let mut k = None;
        let mut gap = None;
        let mut at_least = false;
        let mut seed = None;
        let mut alphabet = None;
        for field in text.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once(['=', ':'])
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{field}'")))?;
            let value = value.trim();
            let int = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("'{key}' needs an integer, got '{v}'")))
            };
            match key.trim() {
                "variant" => variant = Some(value.parse::<Variant>()?),
                "k" => k = Some(int(value)?),
                "kprime" => gap = Some(int(value)?),
                "mode" => {
                    at_least = match value {
                        "fixed" => false,
                        "atleast" => true,
                        other => return Err(Error::Parse(format!("unknown mode '{other}'"))),
                    }
                }
                "seed" => seed = Some(value.to_string()),
                "alphabet" => alphabet = Some(Alphabet::from_descriptor(value)?),
                other => return Err(Error::Parse(format!("unknown descriptor key '{other}'"))),
            }
        }
        let variant = variant.ok_or_else(|| Error::Parse("descriptor lacks 'variant'".into()))?;
        let k = k.ok_or_else(|| Error::Parse("descriptor lacks 'k'".into()))?;
        let seed = seed.ok_or_else(|| Error::Parse("descriptor lacks 'seed'".into()))?;
        let alphabet = match alphabet {
            Some(a) => a,
            None => Alphabet::infer(&seed)?,
        };
        let mode = if at_least { Mode::AtLeast(k) } else { Mode::Fixed(k) };
        let family = RuleFamily::new(variant, mode, gap)?;
        let seed = alphabet.parse_word(&seed)?;
        StringSystem::new(alphabet, seed, family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    #[test]
    fn successor_examples() {
        let tan2 = RuleFamily::fixed(Variant::Tandem, 2).unwrap();
        assert_eq!(successors(&tan2, &w("01")), BTreeSet::from([w("0101")]));
        let rt2 = RuleFamily::fixed(Variant::ReversedTandem, 2).unwrap();
        assert_eq!(successors(&rt2, &w("01")), BTreeSet::from([w("0110")]));
        let end1 = RuleFamily::fixed(Variant::End, 1).unwrap();
        assert_eq!(successors(&end1, &w("01")), BTreeSet::from([w("010"), w("011")]));
        // no rule fits
        assert!(successors(&tan2, &w("0")).is_empty());
    }

    #[test]
    fn at_least_family_truncates_at_word_length() {
        let fam = RuleFamily::at_least(Variant::Tandem, 1).unwrap();
        let rules = fam.instantiate(&w("012"), None);
        assert_eq!(rules.iter().map(|r| r.k).max(), Some(3));
        assert_eq!(rules.len(), 3 + 2 + 1);
        assert!(RuleFamily::new(Variant::ReversedTandem, Mode::AtLeast(2), None).is_err());
        assert!(RuleFamily::new(Variant::Gap, Mode::AtLeast(2), Some(1)).is_err());
    }

    #[test]
    fn descriptor_roundtrip_and_errors() {
        let text = "variant:rt; k=2; mode=fixed; seed=01; alphabet=2";
        let sys: StringSystem = text.parse().unwrap();
        assert_eq!(sys.to_string(), text);
        let text = "variant:gap; k=2; kprime=1; mode=fixed; seed=TCATGC; alphabet=ACGT";
        assert_eq!(text.parse::<StringSystem>().unwrap().to_string(), text);
        let inferred: StringSystem = "variant:tan;k=3;seed=0012".parse().unwrap();
        assert_eq!(inferred.to_string(), "variant:tan; k=3; mode=fixed; seed=0012; alphabet=3");
        assert!("variant:tan; k=0; seed=01".parse::<StringSystem>().is_err());
        assert!("variant:gap; k=2; seed=01".parse::<StringSystem>().is_err());
        assert!("variant:tan; k=2; seed=03; alphabet=2".parse::<StringSystem>().is_err());
        assert!("variant:xyz; k=2; seed=01".parse::<StringSystem>().is_err());
        let short: StringSystem = "variant:gap; k=2; kprime=2; seed=010".parse().unwrap();
        assert!(short.length_violation().is_some());
        assert!(short.require_length().is_err());
    }

    fn family() -> impl Strategy<Value = RuleFamily> {
        (0usize..6, 1usize..4, 1usize..4).prop_map(|(v, k, g)| match v {
            0 => RuleFamily::fixed(Variant::End, k).unwrap(),
            1 => RuleFamily::fixed(Variant::Tandem, k).unwrap(),
            2 => RuleFamily::fixed(Variant::ReversedTandem, k).unwrap(),
            3 => RuleFamily::gap(k, g).unwrap(),
            4 => RuleFamily::at_least(Variant::End, k).unwrap(),
            _ => RuleFamily::at_least(Variant::Tandem, k).unwrap(),
        })
    }

    proptest! {
        #[test]
        fn successors_are_genuine_rule_images(symbols in prop::collection::vec(0u8..3, 0..9), fam in family()) {
            let x = Word::new(symbols);
            let rules = fam.instantiate(&x, None);
            for (y, rule) in successors_with_rules(&fam, &x, None) {
                prop_assert_ne!(&y, &x);
                prop_assert_eq!(rule.apply(&x), y.clone());
                prop_assert!(rules.contains(&rule));
            }
            // and nothing is missed
            let brute: BTreeSet<Word> = rules.iter().map(|r| r.apply(&x)).filter(|y| *y != x).collect();
            prop_assert_eq!(successors(&fam, &x), brute);
        }

        #[test]
        fn descriptor_format_parse_roundtrip(fam in family(), seed in prop::collection::vec(0u8..3, 1..8)) {
            let sys = StringSystem::new(Alphabet::new(3).unwrap(), Word::new(seed), fam).unwrap();
            let text = sys.to_string();
            let back: StringSystem = text.parse().unwrap();
            prop_assert_eq!(&back, &sys);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
