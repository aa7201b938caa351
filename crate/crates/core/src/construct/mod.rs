//! Executable versions of the step-by-step constructions behind the capacity
//! results. Each procedure records the rules it applies so the outcome can
//! be replayed and its step count checked.

mod end;
mod gap;
mod reversed;
mod tandem;

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::rules::{format_trace, ReplicationRule};
use crate::word::{Symbol, Word};

pub use end::end_force_suffix;
pub use gap::{gap_distinct_round, gap_push_to_end, hamming_window_distance};
pub use reversed::{rt_embed_as_suffix, rt_push_to_end};
pub use tandem::{tandem_compact_distinct, tandem_gek_seed_prep, Compaction, PatternOrientation, SeedPattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub input: Word,
    pub output: Word,
    pub trace: Vec<ReplicationRule>,
}

impl ConstructionResult {
    pub fn steps(&self) -> usize {
        self.trace.len()
    }
}

/// Applies rules one at a time, refusing any that would leave the word
/// unchanged.
struct Builder {
    input: Word,
    current: Word,
    trace: Vec<ReplicationRule>,
}

impl Builder {
    fn new(input: &Word) -> Self {
        Builder { input: input.clone(), current: input.clone(), trace: Vec::new() }
    }

    fn len(&self) -> usize {
        self.current.len()
    }

    fn at(&self, pos: usize) -> Symbol {
        self.current.symbols()[pos]
    }

    fn step(&mut self, rule: ReplicationRule) {
        assert!(rule.matches(&self.current), "{rule} does not fit a word of length {}", self.len());
        self.current = rule.apply(&self.current);
        self.trace.push(rule);
    }

    fn finish(self) -> ConstructionResult {
        ConstructionResult { input: self.input, output: self.current, trace: self.trace }
    }
}

fn require_symbol(y: &Word, a: Symbol) -> Result<()> {
    if y.occurrences(a) == 0 {
        return Err(Error::precondition(format!("symbol {a} does not occur in {y}")));
    }
    Ok(())
}

/// Inputs understood by the named procedures; each uses a subset.
#[derive(Clone, Debug, Default)]
pub struct ProcedureInput {
    pub word: Word,
    pub k: usize,
    pub kprime: Option<usize>,
    pub target: Option<Word>,
    pub symbol: Option<Symbol>,
}

#[derive(Clone, Debug, Default)]
pub struct ProcedureOutput {
    pub construction: Option<ConstructionResult>,
    pub words: Vec<Word>,
    pub note: Option<String>,
}

/// A construction selectable by name.
pub trait Procedure: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, input: &ProcedureInput) -> Result<ProcedureOutput>;
}

fn need<T: Copy>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::param(format!("this procedure needs {what}")))
}

fn built(c: ConstructionResult) -> ProcedureOutput {
    ProcedureOutput { construction: Some(c), ..Default::default() }
}

struct ForceSuffix;
struct Compact;
struct SeedPrep;
struct RtPush;
struct RtEmbed;
struct GapPush;
struct GapRound;

impl Procedure for ForceSuffix {
    fn name(&self) -> &'static str {
        "end-force-suffix"
    }
    fn summary(&self) -> &'static str {
        "end replication: make a given k-word the suffix in at most 2k steps"
    }
    fn run(&self, p: &ProcedureInput) -> Result<ProcedureOutput> {
        let target = p.target.as_ref().ok_or_else(|| Error::param("this procedure needs a target word"))?;
        end_force_suffix(&p.word, p.k, target).map(built)
    }
}

impl Procedure for Compact {
    fn name(&self) -> &'static str {
        "tandem-compact"
    }
    fn summary(&self) -> &'static str {
        "tandem replication: gather all distinct symbols into one window"
    }
    fn run(&self, p: &ProcedureInput) -> Result<ProcedureOutput> {
        let c = tandem_compact_distinct(&p.word)?;
        Ok(ProcedureOutput {
            note: Some(format!("distinct window starts at position {}", c.window_start)),
            ..built(c.construction)
        })
    }
}

impl Procedure for SeedPrep {
    fn name(&self) -> &'static str {
        "tandem-seed-prep"
    }
    fn summary(&self) -> &'static str {
        "tandem replication (blocks >= k): create a run a^k next to another symbol"
    }
    fn run(&self, p: &ProcedureInput) -> Result<ProcedureOutput> {
        let (c, pat) = tandem_gek_seed_prep(&p.word, p.k)?;
        Ok(ProcedureOutput { note: Some(pat.to_string()), ..built(c) })
    }
}

impl Procedure for RtPush {
    fn name(&self) -> &'static str {
        "rt-push"
    }
    fn summary(&self) -> &'static str {
        "reversed tandem: push a symbol to the end"
    }
    fn run(&self, p: &ProcedureInput) -> Result<ProcedureOutput> {
        rt_push_to_end(&p.word, p.k, need(p.symbol, "a symbol")?).map(built)
    }
}

impl Procedure for RtEmbed {
    fn name(&self) -> &'static str {
        "rt-embed"
    }
    fn summary(&self) -> &'static str {
        "reversed tandem: derive a word ending with the target"
    }
    fn run(&self, p: &ProcedureInput) -> Result<ProcedureOutput> {
        let target = p.target.as_ref().ok_or_else(|| Error::param("this procedure needs a target word"))?;
        rt_embed_as_suffix(&p.word, p.k, target).map(built)
    }
}

impl Procedure for GapPush {
    fn name(&self) -> &'static str {
        "gap-push"
    }
    fn summary(&self) -> &'static str {
        "gap replication with coprime k, k': push a symbol to the end"
    }
    fn run(&self, p: &ProcedureInput) -> Result<ProcedureOutput> {
        gap_push_to_end(&p.word, p.k, need(p.kprime, "k'")?, need(p.symbol, "a symbol")?).map(built)
    }
}

impl Procedure for GapRound {
    fn name(&self) -> &'static str {
        "gap-round"
    }
    fn summary(&self) -> &'static str {
        "gap replication: distinct words from one round of k+1 placements"
    }
    fn run(&self, p: &ProcedureInput) -> Result<ProcedureOutput> {
        let kp = need(p.kprime, "k'")?;
        let words: Vec<Word> = gap_distinct_round(&p.word, p.k, kp)?.into_iter().collect();
        let dist = hamming_window_distance(&p.word, p.k, kp)?;
        Ok(ProcedureOutput {
            note: Some(format!("distinct={} window_distance={dist}", words.len())),
            words,
            construction: None,
        })
    }
}

pub struct ProcedureRegistry {
    entries: Vec<Box<dyn Procedure>>,
}

impl ProcedureRegistry {
    pub fn get(&self, name: &str) -> Option<&dyn Procedure> {
        self.entries.iter().find(|p| p.name() == name.trim()).map(|p| p.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Procedure> {
        self.entries.iter().map(|p| p.as_ref())
    }
}

pub fn procedures() -> &'static ProcedureRegistry {
    static REGISTRY: OnceLock<ProcedureRegistry> = OnceLock::new();
    REGISTRY.get_or_init(|| ProcedureRegistry {
        entries: vec![
            Box::new(ForceSuffix),
            Box::new(Compact),
            Box::new(SeedPrep),
            Box::new(RtPush),
            Box::new(RtEmbed),
            Box::new(GapPush),
            Box::new(GapRound),
        ],
    })
}

/// Text block used by the CLI: output word, step count and trace.
pub fn describe(result: &ConstructionResult, render: impl Fn(&Word) -> String) -> String {
    format!(
        "input={}\noutput={}\nsteps={}\ntrace={}\n",
        render(&result.input),
        render(&result.output),
        result.steps(),
        format_trace(&result.trace)
    )
}
