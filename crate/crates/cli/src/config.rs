use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use replicap::closure::DEFAULT_MAX_STATES;
use replicap::rules::Mode;
use replicap::{Alphabet, EnumerationBudget, RuleFamily, StringSystem, Symbol, Variant, Word};

fn is_false(b: &bool) -> bool {
    !*b
}

/// Every option a command may read. Command-line flags and config-file keys
/// share these names; flags win when both are given.
#[derive(Args, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    /// Command to run (config files only; used by `run`).
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,

    /// Whole system as a descriptor, e.g. "variant:rt; k=2; seed=01".
    #[arg(long, conflicts_with_all = ["rule", "seed", "k", "kprime", "at_least"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,

    /// Replication rule: end, tan, rt or gap.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,

    /// Alphabet size or label string (e.g. 4 or ACGT); inferred when absent.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,

    /// Gap length k' for gap replication.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kprime: Option<usize>,

    /// Use every block length >= k.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "is_false")]
    pub at_least: bool,

    /// Longest word to enumerate (default |s| + 8k).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_states: Option<usize>,

    #[arg(long)]
    #[serde(default, skip_serializing_if = "is_false")]
    pub witnesses: bool,

    #[arg(long)]
    #[serde(default, skip_serializing_if = "is_false")]
    pub traces: bool,

    /// Output file, or directory for `enumerate`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,

    /// Target word for `membership`, `end-force-suffix` and `rt-embed`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,

    /// Symbol to push for `rt-push` and `gap-push`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol: Option<String>,

    /// Construction to run (see `construct --list`).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub procedure: Option<String>,

    /// Number of distinct symbols for the tandem automaton.
    #[arg(long, conflicts_with_all = ["sigma", "d"])]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,

    /// Alphabet size of a De Bruijn graph.
    #[arg(long, requires = "d")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<usize>,

    /// De Bruijn order minus one (also the residue modulus for pruning).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,

    /// Allowed residues for pruning, comma separated (may be empty).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allowed: Option<String>,

    /// Number of k-blocks in the reversed tandem block-power bound.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_power: Option<usize>,

    /// Also write the adjacency matrix as TSV.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).context("invalid config file")
    }

    pub fn format(&self) -> String {
        toml::to_string(self).expect("config fields serialize")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text)
    }

    /// Fills every unset field of `self` from `base`.
    pub fn over(self, base: RunConfig) -> RunConfig {
        RunConfig {
            command: self.command.or(base.command),
            system: self.system.or(base.system),
            rule: self.rule.or(base.rule),
            seed: self.seed.or(base.seed),
            alphabet: self.alphabet.or(base.alphabet),
            k: self.k.or(base.k),
            kprime: self.kprime.or(base.kprime),
            at_least: self.at_least || base.at_least,
            max_len: self.max_len.or(base.max_len),
            max_states: self.max_states.or(base.max_states),
            witnesses: self.witnesses || base.witnesses,
            traces: self.traces || base.traces,
            out: self.out.or(base.out),
            target: self.target.or(base.target),
            symbol: self.symbol.or(base.symbol),
            procedure: self.procedure.or(base.procedure),
            delta: self.delta.or(base.delta),
            sigma: self.sigma.or(base.sigma),
            d: self.d.or(base.d),
            allowed: self.allowed.or(base.allowed),
            block_power: self.block_power.or(base.block_power),
            matrix: self.matrix.or(base.matrix),
        }
    }

    fn alphabet_for(&self, words: &[&str]) -> Result<Alphabet> {
        if let Some(a) = &self.alphabet {
            return Ok(Alphabet::from_descriptor(a)?);
        }
        let sep = if words.iter().any(|w| w.contains('.')) { "." } else { "" };
        let joined: Vec<&str> = words.iter().copied().filter(|w| !w.is_empty()).collect();
        Ok(Alphabet::infer(&joined.join(sep))?)
    }

    /// The system given by `--system` or by the individual flags.
    pub fn system(&self) -> Result<StringSystem> {
        if let Some(text) = &self.system {
            let mut sys: StringSystem = text.parse()?;
            if let Some(a) = &self.alphabet {
                let alphabet = Alphabet::from_descriptor(a)?;
                let seed = alphabet.parse_word(&sys.alphabet.format_word(&sys.seed))?;
                sys = StringSystem::new(alphabet, seed, sys.family)?;
            }
            return Ok(sys);
        }
        let rule = self.rule.as_deref().ok_or_else(|| anyhow!("--rule or --system is required"))?;
        let variant: Variant = rule.parse()?;
        let k = self.k.ok_or_else(|| anyhow!("--k is required"))?;
        let seed = self.seed.as_deref().ok_or_else(|| anyhow!("--seed is required"))?;
        let mode = if self.at_least { Mode::AtLeast(k) } else { Mode::Fixed(k) };
        let family = RuleFamily::new(variant, mode, self.kprime)?;
        let mut words = vec![seed];
        words.extend(self.target.as_deref());
        let alphabet = self.alphabet_for(&words)?;
        let seed = alphabet.parse_word(seed)?;
        Ok(StringSystem::new(alphabet, seed, family)?)
    }

    pub fn budget(&self, system: &StringSystem) -> Result<EnumerationBudget> {
        let mut b = EnumerationBudget::default_for(system).with_states(self.max_states.unwrap_or(DEFAULT_MAX_STATES));
        if let Some(n) = self.max_len {
            b.max_length = n;
        }
        if self.witnesses {
            b = b.with_witnesses();
        }
        if self.traces {
            b = b.with_traces();
        }
        Ok(b)
    }

    pub fn parse_symbol(&self, alphabet: &Alphabet) -> Result<Option<Symbol>> {
        let Some(text) = &self.symbol else { return Ok(None) };
        let w = alphabet.parse_word(text)?;
        match w.symbols() {
            [a] => Ok(Some(*a)),
            _ => bail!("--symbol must be a single symbol, got '{text}'"),
        }
    }

    pub fn parse_target(&self, alphabet: &Alphabet) -> Result<Option<Word>> {
        self.target.as_deref().map(|t| alphabet.parse_word(t)).transpose().map_err(Into::into)
    }

    /// Alphabet for constructions, which take a bare word and parameters.
    pub fn construction_alphabet(&self) -> Result<Alphabet> {
        let mut words: Vec<&str> = self.seed.as_deref().into_iter().collect();
        words.extend(self.target.as_deref());
        words.extend(self.symbol.as_deref());
        self.alphabet_for(&words)
    }
}
