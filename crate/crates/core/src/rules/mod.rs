//! The four replication transformations.
//!
//! Each variant is a [`Replicator`] registered under a short name; rules and
//! families carry a [`Variant`] tag and dispatch through the registry, so a
//! system can be selected by name at runtime (`end`, `tan`, `rt`, `gap`).

mod end;
mod gap;
mod reversed;
mod system;
mod tandem;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

pub use end::EndReplication;
pub use gap::GapReplication;
pub use reversed::ReversedTandemReplication;
pub use system::{successors, successors_with_rules, Mode, RuleFamily, StringSystem};
pub use tandem::TandemReplication;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    End,
    Tandem,
    ReversedTandem,
    Gap,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::End, Variant::Tandem, Variant::ReversedTandem, Variant::Gap];

    pub fn name(self) -> &'static str {
        self.replicator().name()
    }

    pub fn replicator(self) -> &'static dyn Replicator {
        registry()
            .by_variant(self)
            .expect("every variant has a registered replicator")
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        registry()
            .get(s)
            .map(|r| r.variant())
            .ok_or_else(|| Error::Parse(format!("unknown replication rule '{s}'")))
    }
}

/// One replication transformation. Implementations only describe the
/// rewrite of a matching word; the "otherwise unchanged" branch lives in
/// [`ReplicationRule::apply`].
pub trait Replicator: Send + Sync {
    fn name(&self) -> &'static str;

    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    fn variant(&self) -> Variant;

    /// Whether the "all block lengths at least k" family is defined.
    fn supports_at_least(&self) -> bool {
        false
    }

    fn needs_gap(&self) -> bool {
        false
    }

    /// Number of symbols the pattern occupies from offset `i`.
    fn span(&self, k: usize, gap: usize) -> usize {
        k + gap
    }

    /// Rewrites `x`, assuming `offset + span(k, gap) <= x.len()`.
    fn rewrite(&self, x: &[Symbol], offset: usize, k: usize, gap: usize, out: &mut Vec<Symbol>);
}

pub struct Registry {
    entries: Vec<&'static dyn Replicator>,
}

impl Registry {
    fn builtin() -> Self {
        static END: EndReplication = EndReplication;
        static TANDEM: TandemReplication = TandemReplication;
        static REVERSED: ReversedTandemReplication = ReversedTandemReplication;
        static GAP: GapReplication = GapReplication;
        Registry { entries: vec![&END, &TANDEM, &REVERSED, &GAP] }
    }

    pub fn get(&self, name: &str) -> Option<&'static dyn Replicator> {
        let name = name.trim();
        self.entries
            .iter()
            .copied()
            .find(|r| r.name().eq_ignore_ascii_case(name) || r.aliases().iter().any(|a| a.eq_ignore_ascii_case(name)))
    }

    pub fn by_variant(&self, v: Variant) -> Option<&'static dyn Replicator> {
        self.entries.iter().copied().find(|r| r.variant() == v)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|r| r.name())
    }
}

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Registry::builtin)
}

/// A single parameterized rule: `T_{i,k}` or, for gap replication,
/// `T_{i,k,k'}`. The offset `i` is the length of the untouched prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReplicationRule {
    pub variant: Variant,
    pub offset: usize,
    pub k: usize,
    pub gap: Option<usize>,
}

impl ReplicationRule {
    pub fn new(variant: Variant, offset: usize, k: usize, gap: Option<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("block length k must be at least 1"));
        }
        match (variant.replicator().needs_gap(), gap) {
            (true, Some(0)) | (true, None) => Err(Error::param("gap replication needs k' >= 1")),
            (false, Some(_)) => Err(Error::param(format!("{variant} replication takes no k'"))),
            _ => Ok(ReplicationRule { variant, offset, k, gap }),
        }
    }

    pub fn end(offset: usize, k: usize) -> Self {
        ReplicationRule { variant: Variant::End, offset, k, gap: None }
    }

    pub fn tandem(offset: usize, k: usize) -> Self {
        ReplicationRule { variant: Variant::Tandem, offset, k, gap: None }
    }

    pub fn reversed(offset: usize, k: usize) -> Self {
        ReplicationRule { variant: Variant::ReversedTandem, offset, k, gap: None }
    }

    pub fn gap(offset: usize, k: usize, gap: usize) -> Self {
        ReplicationRule { variant: Variant::Gap, offset, k, gap: Some(gap) }
    }

    pub fn span(&self) -> usize {
        self.variant.replicator().span(self.k, self.gap.unwrap_or(0))
    }

    /// True when the pattern fits, i.e. `apply` changes the word.
    pub fn matches(&self, x: &Word) -> bool {
        self.offset + self.span() <= x.len()
    }

    pub fn apply(&self, x: &Word) -> Word {
        if !self.matches(x) {
            return x.clone();
        }
        let mut out = Vec::with_capacity(x.len() + self.k);
        self.variant
            .replicator()
            .rewrite(x.symbols(), self.offset, self.k, self.gap.unwrap_or(0), &mut out);
        Word::new(out)
    }
}

impl fmt::Display for ReplicationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gap {
            Some(g) => write!(f, "{}({},{},{})", self.variant, self.offset, self.k, g),
            None => write!(f, "{}({},{})", self.variant, self.offset, self.k),
        }
    }
}

impl FromStr for ReplicationRule {
    type Err = Error;

    /// Parses `variant(i,k)` or `gap(i,k,k')`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad rule descriptor '{s}'"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let variant: Variant = s[..open].parse()?;
        let nums = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match nums.as_slice() {
            [i, k] => ReplicationRule::new(variant, *i, *k, None),
            [i, k, g] => ReplicationRule::new(variant, *i, *k, Some(*g)),
            _ => Err(bad()),
        }
    }
}

pub fn apply(rule: &ReplicationRule, x: &Word) -> Word {
    rule.apply(x)
}

/// Left fold of [`apply`] over `trace`.
pub fn trace_replay(start: &Word, trace: &[ReplicationRule]) -> Word {
    trace.iter().fold(start.clone(), |x, r| r.apply(&x))
}

/// Semicolon-separated rule descriptors, the shared trace text form.
pub fn format_trace(trace: &[ReplicationRule]) -> String {
    trace.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(";")
}

pub fn parse_trace(text: &str) -> Result<Vec<ReplicationRule>> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{w, Alphabet};
    use proptest::prelude::*;

    fn dna(x: &str) -> Word {
        Alphabet::with_labels("ACGT").unwrap().parse_word(x).unwrap()
    }

    #[test]
    fn introduction_examples() {
        let x = dna("TCATGC");
        assert_eq!(ReplicationRule::end(1, 3).apply(&x), dna("TCATGCCAT"));
        assert_eq!(ReplicationRule::tandem(1, 3).apply(&x), dna("TCATCATGC"));
        assert_eq!(ReplicationRule::reversed(1, 3).apply(&x), dna("TCATTACGC"));
        assert_eq!(ReplicationRule::gap(1, 3, 1).apply(&x), dna("TCATGCATC"));
        assert_eq!(ReplicationRule::tandem(5, 3).apply(&x), x);
    }

    #[test]
    fn registry_lookup() {
        let names: Vec<_> = registry().names().collect();
        assert_eq!(names, ["end", "tan", "rt", "gap"]);
        assert_eq!("tandem".parse::<Variant>().unwrap(), Variant::Tandem);
        assert_eq!("RT".parse::<Variant>().unwrap(), Variant::ReversedTandem);
        assert!("swap".parse::<Variant>().is_err());
        for v in Variant::ALL {
            assert_eq!(v.replicator().variant(), v);
        }
    }

    #[test]
    fn rule_validation_and_text() {
        assert!(ReplicationRule::new(Variant::Tandem, 0, 0, None).is_err());
        assert!(ReplicationRule::new(Variant::Gap, 0, 2, None).is_err());
        assert!(ReplicationRule::new(Variant::Gap, 0, 2, Some(0)).is_err());
        assert!(ReplicationRule::new(Variant::End, 0, 2, Some(1)).is_err());
        let trace = vec![ReplicationRule::reversed(0, 2), ReplicationRule::gap(3, 2, 1)];
        let text = format_trace(&trace);
        assert_eq!(text, "rt(0,2);gap(3,2,1)");
        assert_eq!(parse_trace(&text).unwrap(), trace);
        assert!(parse_trace("tan(1)").is_err());
        assert!(parse_trace("").unwrap().is_empty());
    }

    #[test]
    fn replay_examples() {
        assert_eq!(trace_replay(&w("01"), &[]), w("01"));
        let trace = vec![ReplicationRule::tandem(0, 2); 3];
        assert_eq!(trace_replay(&w("01"), &trace).len(), 2 + 3 * 2);
    }

    fn any_rule() -> impl Strategy<Value = ReplicationRule> {
        (0usize..4, 0usize..10, 1usize..5, 1usize..4).prop_map(|(v, i, k, g)| match v {
            0 => ReplicationRule::end(i, k),
            1 => ReplicationRule::tandem(i, k),
            2 => ReplicationRule::reversed(i, k),
            _ => ReplicationRule::gap(i, k, g),
        })
    }

    proptest! {
        #[test]
        fn rules_copy_existing_symbols(symbols in prop::collection::vec(0u8..4, 0..12), rule in any_rule()) {
            let x = Word::new(symbols);
            let y = rule.apply(&x);
            prop_assert_eq!(x.alpha_representation(), y.alpha_representation());
            if rule.matches(&x) {
                prop_assert_eq!(y.len(), x.len() + rule.k);
            } else {
                prop_assert_eq!(&y, &x);
            }
        }

        #[test]
        fn tandem_copy_is_adjacent(symbols in prop::collection::vec(0u8..3, 1..12), i in 0usize..12, k in 1usize..5) {
            let x = Word::new(symbols);
            prop_assume!(i + k <= x.len());
            let y = ReplicationRule::tandem(i, k).apply(&x);
            prop_assert_eq!(&x.symbols()[i..i + k], &y.symbols()[i + k..i + 2 * k]);
            prop_assert_eq!(&y.symbols()[i..i + k], &y.symbols()[i + k..i + 2 * k]);
        }

        #[test]
        fn rule_text_roundtrip(rule in any_rule()) {
            prop_assert_eq!(rule.to_string().parse::<ReplicationRule>().unwrap(), rule);
        }
    }
}
