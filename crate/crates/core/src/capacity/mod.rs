//! Capacity statements as computable reports.
//!
//! Each report carries a value in bits per symbol, what kind of statement it
//! is (exact, bound, estimate), and a content-named provenance id. The
//! per-variant [`CapacityAnalyzer`]s collect every statement that applies to
//! a [`StringSystem`].

mod bounds;

use std::fmt;
use std::sync::OnceLock;

use crate::closure::DEFAULT_MAX_STATES;
use crate::error::Result;
use crate::rules::{Mode, StringSystem, Variant};
use crate::word::{Alphabet, Word};

pub use bounds::{
    empirical_estimate, end_capacity, gap_hamming_lower, gap_strict_upper_flag, gap_zero_iff_periodic,
    is_reverse_relabeling, rt_alternating_lower, rt_empirical_lower, rt_zero_iff, tandem_fixed_capacity,
    tandem_ge1_lower, tandem_gek_lower, unary_zero,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportKind {
    Exact,
    LowerBound,
    ZeroExact,
    /// Carries a flag: the capacity is strictly below `log2 delta(s)`.
    StrictlyBelowMax,
    EmpiricalLowerBound,
    /// Finite-length view only; certifies nothing about the limit.
    EmpiricalEstimate,
}

impl ReportKind {
    pub fn name(self) -> &'static str {
        match self {
            ReportKind::Exact => "exact",
            ReportKind::LowerBound => "lower-bound",
            ReportKind::ZeroExact => "zero-exact",
            ReportKind::StrictlyBelowMax => "strictly-below-max",
            ReportKind::EmpiricalLowerBound => "empirical-lower-bound",
            ReportKind::EmpiricalEstimate => "empirical-estimate",
        }
    }

    /// Whether the value is a proven lower bound on the capacity.
    pub fn is_lower_bound(self) -> bool {
        !matches!(self, ReportKind::StrictlyBelowMax | ReportKind::EmpiricalEstimate)
    }
}

impl fmt::Display for ReportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CapacityReport {
    /// Bits per symbol.
    pub value: f64,
    pub kind: ReportKind,
    pub provenance: &'static str,
    /// Descriptor of the system the statement is about.
    pub system: String,
    pub witness: Option<String>,
    /// Set for [`ReportKind::StrictlyBelowMax`].
    pub flag: Option<bool>,
}

impl CapacityReport {
    fn new(kind: ReportKind, value: f64, provenance: &'static str, system: String) -> Self {
        CapacityReport { value, kind, provenance, system, witness: None, flag: None }
    }

    fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    /// One line: `system="..." kind=... value=... provenance=... [witness=...]`.
    pub fn record(&self) -> String {
        let mut out = format!(
            "system=\"{}\" kind={} value={:.6} provenance={}",
            self.system, self.kind, self.value, self.provenance
        );
        let mut witness = self.witness.clone();
        if let Some(flag) = self.flag {
            witness = Some(match witness {
                Some(w) => format!("flag={flag};{w}"),
                None => format!("flag={flag}"),
            });
        }
        if let Some(w) = witness {
            if w.contains(char::is_whitespace) {
                out.push_str(&format!(" witness=\"{w}\""));
            } else {
                out.push_str(&format!(" witness={w}"));
            }
        }
        out
    }
}

impl fmt::Display for CapacityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

/// Truncates to two decimals, the way printed bounds such as "at least
/// 0.65" are stated.
pub fn floor2(x: f64) -> f64 {
    (x * 100.0).floor() / 100.0
}

/// Descriptor for a word-level statement, with the alphabet taken as
/// `0..=max symbol`.
fn descriptor_for(s: &Word, variant: Variant, mode: Mode, gap: Option<usize>) -> String {
    let sigma = s.symbols().iter().max().map_or(1, |&m| m as usize + 1);
    let family = crate::rules::RuleFamily { variant, mode, gap };
    let alphabet = Alphabet::new(sigma).expect("at most 256 symbols");
    StringSystem { alphabet, seed: s.clone(), family }.descriptor()
}

/// Knobs for enumeration-backed statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Number of blocks `p` in the reversed-tandem block-power bound.
    pub block_power: usize,
    pub max_states: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { block_power: 7, max_states: DEFAULT_MAX_STATES }
    }
}

/// All capacity statements for systems of one replication variant.
pub trait CapacityAnalyzer: Send + Sync {
    fn name(&self) -> &'static str;
    fn variant(&self) -> Variant;
    fn analyze(&self, system: &StringSystem, options: &AnalysisOptions) -> Result<Vec<CapacityReport>>;
}

struct EndAnalyzer;
struct TandemAnalyzer;
struct ReversedAnalyzer;
struct GapAnalyzer;

impl CapacityAnalyzer for EndAnalyzer {
    fn name(&self) -> &'static str {
        "end"
    }
    fn variant(&self) -> Variant {
        Variant::End
    }
    fn analyze(&self, sys: &StringSystem, _: &AnalysisOptions) -> Result<Vec<CapacityReport>> {
        Ok(vec![end_capacity(&sys.seed, sys.family.k(), sys.family.mode.is_at_least())?])
    }
}

impl CapacityAnalyzer for TandemAnalyzer {
    fn name(&self) -> &'static str {
        "tandem"
    }
    fn variant(&self) -> Variant {
        Variant::Tandem
    }
    fn analyze(&self, sys: &StringSystem, _: &AnalysisOptions) -> Result<Vec<CapacityReport>> {
        let s = &sys.seed;
        match sys.family.mode {
            Mode::Fixed(k) => Ok(vec![tandem_fixed_capacity(s, k)?]),
            Mode::AtLeast(k) => {
                sys.require_length()?;
                if s.alpha_diversity() < 2 {
                    return Ok(vec![unary_zero(s, sys.family)]);
                }
                let mut out = Vec::new();
                if k == 1 {
                    let mut r = tandem_ge1_lower(s)?;
                    // the trivial upper bound log2 sigma meets the bound
                    if s.alpha_diversity() == 2 && sys.alphabet.size() == 2 {
                        r.kind = ReportKind::Exact;
                        r.provenance = "binary-tandem-ge1-exact";
                    }
                    out.push(r);
                }
                out.push(tandem_gek_lower(s, k)?);
                Ok(out)
            }
        }
    }
}

impl CapacityAnalyzer for ReversedAnalyzer {
    fn name(&self) -> &'static str {
        "rt"
    }
    fn variant(&self) -> Variant {
        Variant::ReversedTandem
    }
    fn analyze(&self, sys: &StringSystem, opts: &AnalysisOptions) -> Result<Vec<CapacityReport>> {
        let (s, k) = (&sys.seed, sys.family.k());
        let main = rt_zero_iff(s, k, opts)?;
        let mut out = vec![];
        let empirical_done = main.kind == ReportKind::EmpiricalLowerBound;
        let zero = main.kind == ReportKind::ZeroExact;
        out.push(main);
        if !zero && !empirical_done && s.len() == k && is_reverse_relabeling(s) {
            let budget = crate::closure::EnumerationBudget::new(opts.block_power * k).with_states(opts.max_states);
            let sub = StringSystem { alphabet: sys.alphabet.clone(), seed: s.clone(), family: sys.family };
            let (profile, _) = crate::closure::enumerate_partial(&sub, &budget)?;
            let p = (1..=opts.block_power).rev().find(|p| p * k <= profile.max_length).unwrap_or(1);
            out.push(rt_empirical_lower(s, k, p, &profile)?);
        }
        Ok(out)
    }
}

impl CapacityAnalyzer for GapAnalyzer {
    fn name(&self) -> &'static str {
        "gap"
    }
    fn variant(&self) -> Variant {
        Variant::Gap
    }
    fn analyze(&self, sys: &StringSystem, opts: &AnalysisOptions) -> Result<Vec<CapacityReport>> {
        let (s, k) = (&sys.seed, sys.family.k());
        let kp = sys.family.gap.expect("gap families carry k'");
        Ok(vec![
            gap_zero_iff_periodic(s, k, kp, opts)?,
            gap_hamming_lower(s, k, kp)?,
            gap_strict_upper_flag(s, k, kp)?,
        ])
    }
}

pub struct AnalyzerRegistry {
    entries: Vec<Box<dyn CapacityAnalyzer>>,
}

impl AnalyzerRegistry {
    pub fn get(&self, variant: Variant) -> Option<&dyn CapacityAnalyzer> {
        self.entries.iter().find(|a| a.variant() == variant).map(|a| a.as_ref())
    }

    pub fn by_name(&self, name: &str) -> Option<&dyn CapacityAnalyzer> {
        let v: Variant = name.parse().ok()?;
        self.get(v)
    }
}

pub fn analyzers() -> &'static AnalyzerRegistry {
    static REGISTRY: OnceLock<AnalyzerRegistry> = OnceLock::new();
    REGISTRY.get_or_init(|| AnalyzerRegistry {
        entries: vec![Box::new(EndAnalyzer), Box::new(TandemAnalyzer), Box::new(ReversedAnalyzer), Box::new(GapAnalyzer)],
    })
}

/// Runs the analyzer registered for the system's variant; every report is
/// tagged with the system's own descriptor.
pub fn analyze(system: &StringSystem, options: &AnalysisOptions) -> Result<Vec<CapacityReport>> {
    system.require_length()?;
    let analyzer = analyzers()
        .get(system.family.variant)
        .expect("every variant has an analyzer");
    let mut reports = analyzer.analyze(system, options)?;
    let descriptor = system.descriptor();
    for r in &mut reports {
        r.system = descriptor.clone();
    }
    Ok(reports)
}
