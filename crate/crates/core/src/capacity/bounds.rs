use std::collections::HashMap;

use super::{descriptor_for, AnalysisOptions, CapacityReport, ReportKind};
use crate::closure::{enumerate_partial, EnumerationBudget, LevelProfile};
use crate::construct::hamming_window_distance;
use crate::cyclic::phi_profile;
use crate::error::{Error, Result};
use crate::positions::rho_sets;
use crate::rules::{Mode, RuleFamily, StringSystem, Variant};
use crate::spectral::{gek_polynomial, lb1_characteristic};
use crate::word::{Alphabet, Symbol, Word};

fn require_len(s: &Word, need: usize) -> Result<()> {
    if s.len() < need {
        return Err(Error::precondition(format!("|s| = {} is below {need}", s.len())));
    }
    Ok(())
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::param("k must be positive"));
    }
    Ok(())
}

/// A seed with one distinct symbol has one word per reachable length.
pub fn unary_zero(s: &Word, family: RuleFamily) -> CapacityReport {
    CapacityReport::new(ReportKind::ZeroExact, 0.0, "unary-seed", descriptor_for(s, family.variant, family.mode, family.gap))
}

/// End replication: `log2 delta(s)`, for block length `k` or all lengths `>= k`.
pub fn end_capacity(s: &Word, k: usize, at_least: bool) -> Result<CapacityReport> {
    require_k(k)?;
    require_len(s, k)?;
    let mode = if at_least { Mode::AtLeast(k) } else { Mode::Fixed(k) };
    let provenance = if at_least { "end-replication-exact-atleast" } else { "end-replication-exact" };
    let value = (s.alpha_diversity() as f64).log2();
    Ok(CapacityReport::new(ReportKind::Exact, value, provenance, descriptor_for(s, Variant::End, mode, None))
        .witness(format!("delta={}", s.alpha_diversity())))
}

/// Tandem replication with a fixed block length has zero capacity: words
/// are determined by a multiset of cyclic classes over `b` bins.
pub fn tandem_fixed_capacity(s: &Word, k: usize) -> Result<CapacityReport> {
    require_k(k)?;
    require_len(s, k)?;
    let bins = phi_profile(s, k)?.bins;
    Ok(CapacityReport::new(
        ReportKind::ZeroExact,
        0.0,
        "tandem-fixed-zero",
        descriptor_for(s, Variant::Tandem, Mode::Fixed(k), None),
    )
    .witness(format!("bins={bins}")))
}

/// `log2(1 + r)` with `r` the root in `[1, 2]` of
/// `x^delta - sum_{i<=delta-2} x^i`.
pub fn tandem_ge1_lower(s: &Word) -> Result<CapacityReport> {
    let delta = s.alpha_diversity();
    if delta < 2 {
        return Err(Error::precondition("the bound needs at least two distinct symbols"));
    }
    let r = lb1_characteristic(delta)?.largest_real_root(1.0, 2.0)?;
    Ok(CapacityReport::new(
        ReportKind::LowerBound,
        (1.0 + r).log2(),
        "tandem-ge1-automaton-bound",
        descriptor_for(s, Variant::Tandem, Mode::AtLeast(1), None),
    )
    .witness(format!("delta={delta};root={r:.9}")))
}

/// `log2 r` with `r` the root in `[1, 2]` of `x^{k+1} - x - 1`.
///
/// The theorem is stated for binary seeds; its argument only relabels two
/// of the symbols, so any seed with two or more distinct symbols is
/// accepted and marked as such.
pub fn tandem_gek_lower(s: &Word, k: usize) -> Result<CapacityReport> {
    require_k(k)?;
    require_len(s, k)?;
    let delta = s.alpha_diversity();
    if delta < 2 {
        return Err(Error::precondition("the bound needs at least two distinct symbols"));
    }
    let r = gek_polynomial(k)?.largest_real_root(1.0, 2.0)?;
    assert!(r > 1.0, "x^(k+1) - x - 1 is negative at 1");
    let provenance = if delta == 2 { "tandem-gek-bound" } else { "tandem-gek-bound-nonbinary-by-proof" };
    Ok(CapacityReport::new(
        ReportKind::LowerBound,
        r.log2(),
        provenance,
        descriptor_for(s, Variant::Tandem, Mode::AtLeast(k), None),
    )
    .witness(format!("root={r:.9}")))
}

/// Alternating blocks `s` and `rev(s)` give `1/k` when `|s| = k` and `s`
/// is not a palindrome.
pub fn rt_alternating_lower(s: &Word, k: usize) -> Result<CapacityReport> {
    require_k(k)?;
    if s.len() != k {
        return Err(Error::LengthMismatch { left: s.len(), right: k });
    }
    if *s == s.reverse() {
        return Err(Error::precondition("the seed is a palindrome"));
    }
    Ok(CapacityReport::new(
        ReportKind::LowerBound,
        1.0 / k as f64,
        "rt-alternating-blocks",
        descriptor_for(s, Variant::ReversedTandem, Mode::Fixed(k), None),
    ))
}

/// True when some bijection of symbols maps `rev(s)` onto `s`
/// (palindromes included).
pub fn is_reverse_relabeling(s: &Word) -> bool {
    let mut fwd: HashMap<Symbol, Symbol> = HashMap::new();
    let mut back: HashMap<Symbol, Symbol> = HashMap::new();
    s.reverse().symbols().iter().zip(s.symbols()).all(|(&from, &to)| {
        *fwd.entry(from).or_insert(to) == to && *back.entry(to).or_insert(from) == from
    })
}

/// `log2 N(pk) / (pk)`, where `N` counts words of length `pk` in the
/// reversed-tandem closure of `s` (`|s| = k`). Concatenations of such words
/// (relabeled as needed) stay in the closure, which turns one finite count
/// into a bound on the limit.
pub fn rt_empirical_lower(s: &Word, k: usize, p: usize, profile: &LevelProfile) -> Result<CapacityReport> {
    require_k(k)?;
    if p == 0 {
        return Err(Error::param("p must be positive"));
    }
    if s.len() != k {
        return Err(Error::LengthMismatch { left: s.len(), right: k });
    }
    if !is_reverse_relabeling(s) {
        return Err(Error::precondition("the seed is not a relabeling of its reverse"));
    }
    let fam = profile.system.family;
    if profile.system.seed != *s || fam.variant != Variant::ReversedTandem || fam.mode != Mode::Fixed(k) {
        return Err(Error::precondition("the profile belongs to a different system"));
    }
    let n = p * k;
    if profile.max_length < n {
        return Err(Error::precondition(format!("the profile stops at length {} < {n}", profile.max_length)));
    }
    let count = profile.count_at_length(n)?;
    let value = if count == 0 { 0.0 } else { (count as f64).log2() / n as f64 };
    Ok(CapacityReport::new(
        ReportKind::EmpiricalLowerBound,
        value,
        "rt-block-power-bound",
        descriptor_for(s, Variant::ReversedTandem, Mode::Fixed(k), None),
    )
    .witness(format!("n={n};count={count}")))
}

/// Zero exactly for unary seeds. Block length 1 is tandem duplication of
/// single symbols, so its capacity is zero for every seed. Otherwise the
/// capacity is positive and the best available lower bound is reported.
pub fn rt_zero_iff(s: &Word, k: usize, opts: &AnalysisOptions) -> Result<CapacityReport> {
    require_k(k)?;
    require_len(s, k)?;
    let desc = descriptor_for(s, Variant::ReversedTandem, Mode::Fixed(k), None);
    if s.alpha_diversity() == 1 {
        return Ok(CapacityReport::new(ReportKind::ZeroExact, 0.0, "rt-zero-iff-unary", desc));
    }
    if k == 1 {
        let bins = phi_profile(s, 1)?.bins;
        return Ok(CapacityReport::new(ReportKind::ZeroExact, 0.0, "rt-unit-block-is-tandem", desc)
            .witness(format!("bins={bins}")));
    }
    let windows = || (0..=s.len() - k).map(|i| (i, s.window(i, k).expect("in range")));
    if let Some((i, w)) = windows().find(|(_, w)| *w != w.reverse()) {
        let mut r = rt_alternating_lower(&w, k)?;
        r.system = desc;
        return Ok(r.witness(format!("window={w}@{}", i + 1)));
    }
    // every k-window is a palindrome; one of them has two symbols
    let (i, w) = windows()
        .find(|(_, w)| w.alpha_diversity() >= 2)
        .expect("overlapping unary windows would make s unary");
    let sigma = w.symbols().iter().max().map_or(1, |&m| m as usize + 1);
    let sub = StringSystem::new(Alphabet::new(sigma)?, w.clone(), RuleFamily::fixed(Variant::ReversedTandem, k)?)?;
    let budget = EnumerationBudget::new(opts.block_power * k).with_states(opts.max_states);
    let (profile, _) = enumerate_partial(&sub, &budget)?;
    let p = (1..=opts.block_power).rev().find(|p| p * k <= profile.max_length).unwrap_or(1);
    let mut r = rt_empirical_lower(&w, k, p, &profile)?;
    r.system = desc;
    let detail = r.witness.take().unwrap_or_default();
    Ok(r.witness(format!("window={w}@{};{detail}", i + 1)))
}

/// `(1/k) log2(1 + d_H(t_{1,k}, (t t)_{k+1,k}))` with `t` the
/// `(k + k')`-prefix of `s`.
pub fn gap_hamming_lower(s: &Word, k: usize, kp: usize) -> Result<CapacityReport> {
    require_k(k)?;
    require_k(kp)?;
    require_len(s, k + kp)?;
    let d = hamming_window_distance(s, k, kp)?;
    Ok(CapacityReport::new(
        ReportKind::LowerBound,
        ((1 + d) as f64).log2() / k as f64,
        "gap-hamming-bound",
        descriptor_for(s, Variant::Gap, Mode::Fixed(k), Some(kp)),
    )
    .witness(format!("distance={d}")))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Zero exactly when `s` has period `gcd(k, k')`. Otherwise the largest
/// window-distance bound over `(k + k')`-windows of `s` and of short closure
/// words is reported; the enumeration estimate is the fallback when every
/// window gives zero.
pub fn gap_zero_iff_periodic(s: &Word, k: usize, kp: usize, opts: &AnalysisOptions) -> Result<CapacityReport> {
    require_k(k)?;
    require_k(kp)?;
    require_len(s, k + kp)?;
    let d = gcd(k, kp);
    let desc = descriptor_for(s, Variant::Gap, Mode::Fixed(k), Some(kp));
    if s.is_periodic(d)? {
        return Ok(CapacityReport::new(ReportKind::ZeroExact, 0.0, "gap-zero-iff-periodic", desc)
            .witness(format!("period={d}")));
    }
    let sigma = s.symbols().iter().max().map_or(1, |&m| m as usize + 1);
    let system = StringSystem::new(Alphabet::new(sigma)?, s.clone(), RuleFamily::gap(k, kp)?)?;
    let reach = s.len() + (kp.div_ceil(k) + 2) * k;
    let budget = EnumerationBudget::new(reach).with_states(opts.max_states.min(200_000)).with_witnesses();
    let (profile, _) = enumerate_partial(&system, &budget)?;

    let mut best: Option<(usize, Word)> = None;
    for (word, _) in profile.all_witnesses() {
        for i in 0..=word.len() - (k + kp) {
            let t = word.window(i, k + kp).expect("in range");
            let dist = hamming_window_distance(&t, k, kp)?;
            if best.as_ref().is_none_or(|(b, _)| dist > *b) {
                best = Some((dist, t));
            }
        }
    }
    match best {
        Some((dist, t)) if dist > 0 => Ok(CapacityReport::new(
            ReportKind::LowerBound,
            ((1 + dist) as f64).log2() / k as f64,
            "gap-zero-iff-periodic+hamming",
            desc,
        )
        .witness(format!("window={t};distance={dist}"))),
        _ => {
            let mut r = empirical_estimate(&profile);
            r.system = desc;
            r.provenance = "gap-zero-iff-periodic+estimate";
            Ok(r)
        }
    }
}

/// Flag set when some pair `(a, b)` of seed symbols has fewer than
/// `gcd(k, k')` residues of position differences; the capacity is then
/// strictly below `log2 delta(s)`.
pub fn gap_strict_upper_flag(s: &Word, k: usize, kp: usize) -> Result<CapacityReport> {
    require_k(k)?;
    require_k(kp)?;
    require_len(s, k + kp)?;
    let d = gcd(k, kp);
    let rho = rho_sets(s, d)?;
    let hit = rho.iter().find(|(_, set)| set.len() < d).map(|(&pair, _)| pair);
    let mut r = CapacityReport::new(
        ReportKind::StrictlyBelowMax,
        (s.alpha_diversity() as f64).log2(),
        "gap-rho-strict-upper",
        descriptor_for(s, Variant::Gap, Mode::Fixed(k), Some(kp)),
    );
    r.flag = Some(hit.is_some());
    if let Some((a, b)) = hit {
        r.witness = Some(format!("pair={a},{b}"));
    }
    Ok(r)
}

/// `max_n log2 N(n) / n` over the enumerated lengths. A finite view that
/// does not certify the limit.
pub fn empirical_estimate(profile: &LevelProfile) -> CapacityReport {
    let (n, value) = profile
        .counts()
        .filter(|&(n, c)| n > 0 && c > 0)
        .map(|(n, c)| (n, (c as f64).log2() / n as f64))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let r = CapacityReport::new(ReportKind::EmpiricalEstimate, value, "finite-profile-estimate", profile.system.descriptor());
    if n > 0 {
        r.witness(format!("n={n}"))
    } else {
        r
    }
}
