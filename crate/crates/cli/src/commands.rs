use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

use replicap::capacity::{analyze, AnalysisOptions};
use replicap::closure::DEFAULT_MAX_STATES;
use replicap::construct::{describe, procedures, ProcedureInput};
use replicap::reference::{format_checks, reproduce, reversed_tandem_rows};
use replicap::rules::format_trace;
use replicap::spectral::{debruijn_graph, lb1_automaton, prune_debruijn, spectral_radius};
use replicap::{enumerate_closure, membership, EnumerationBudget, Error as LibError, LevelProfile, Membership};

use crate::config::RunConfig;
use crate::Exit;

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Writes to `--out` when given, else prints.
fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_profile(cfg: &RunConfig, profile: &LevelProfile) -> Result<()> {
    match &cfg.out {
        Some(dir) => {
            write_file(&dir.join("profile.tsv"), &profile.to_tsv())?;
            if profile.has_witnesses() {
                write_file(&dir.join("witnesses.txt"), &profile.witness_lines())?;
            }
            if profile.has_traces() {
                write_file(&dir.join("traces.txt"), &profile.trace_lines())?;
            }
        }
        None => {
            print!("{}", profile.to_tsv());
            if profile.has_witnesses() || profile.has_traces() {
                println!();
                for (w, t) in profile.all_witnesses() {
                    match t {
                        Some(t) if profile.has_traces() => {
                            println!("{}\t{}", profile.system.format_word(w), format_trace(t))
                        }
                        _ => println!("{}", profile.system.format_word(w)),
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn enumerate(cfg: &RunConfig) -> Result<Exit> {
    let system = cfg.system()?;
    system.require_length()?;
    let budget = cfg.budget(&system)?;
    match enumerate_closure(&system, &budget) {
        Ok(profile) => {
            write_profile(cfg, &profile)?;
            Ok(Exit::Ok)
        }
        Err(LibError::BudgetExceeded { frontier, completed }) => {
            write_profile(cfg, &completed)?;
            eprintln!(
                "state budget of {} exceeded with {frontier} words pending; profile is complete up to length {}",
                budget.max_states, completed.max_length
            );
            Ok(Exit::Budget)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn capacity(cfg: &RunConfig) -> Result<Exit> {
    let system = cfg.system()?;
    let defaults = AnalysisOptions::default();
    let opts = AnalysisOptions {
        block_power: cfg.block_power.unwrap_or(defaults.block_power),
        max_states: cfg.max_states.unwrap_or(DEFAULT_MAX_STATES),
    };
    let text: String = analyze(&system, &opts)?.iter().map(|r| r.record() + "\n").collect();
    emit(cfg, &text)?;
    Ok(Exit::Ok)
}

pub fn table1(cfg: &RunConfig) -> Result<Exit> {
    let checks = reproduce(&reversed_tandem_rows())?;
    emit(cfg, &format_checks(&checks))?;
    if checks.iter().all(|c| c.pass()) {
        Ok(Exit::Ok)
    } else {
        eprintln!("reference counts do not match");
        Ok(Exit::Mismatch)
    }
}

fn parse_residues(text: &str) -> Result<BTreeSet<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| anyhow!(LibError::Parse(format!("bad residue '{t}'")))))
        .collect()
}

pub fn automaton(cfg: &RunConfig) -> Result<Exit> {
    let (graph, name, removed) = match (cfg.delta, cfg.sigma, cfg.d) {
        (Some(delta), _, _) => (lb1_automaton(delta)?, format!("tandem-ge1 delta={delta}"), None),
        (None, Some(sigma), Some(d)) => {
            let g = debruijn_graph(sigma, d)?;
            match &cfg.allowed {
                Some(text) => {
                    let allowed = parse_residues(text)?;
                    let list: Vec<String> = allowed.iter().map(usize::to_string).collect();
                    let p = prune_debruijn(&g, &allowed, d)?;
                    (p.graph, format!("debruijn sigma={sigma} d={d} allowed={{{}}}", list.join(",")), Some(p.removed))
                }
                None => (g, format!("debruijn sigma={sigma} d={d}"), None),
            }
        }
        _ => bail!(LibError::InvalidParameter("give --delta, or --sigma with --d".into())),
    };
    let matrix = graph.adjacency_matrix();
    let lambda = spectral_radius(&matrix)?;
    let mut record = format!(
        "graph=\"{name}\" vertices={} edges={} lambda={lambda:.6} capacity={:.6}",
        graph.vertex_count(),
        graph.edge_count(),
        if lambda > 0.0 { lambda.log2() } else { 0.0 }
    );
    if let Some(r) = removed {
        let _ = write!(record, " removed={r}");
    }
    if let Some(path) = &cfg.matrix {
        write_file(path, &matrix.to_tsv())?;
    }
    match &cfg.out {
        Some(path) => {
            write_file(path, &graph.to_dot(None))?;
            println!("{record}");
        }
        None => print!("// {record}\n{}", graph.to_dot(None)),
    }
    Ok(Exit::Ok)
}

pub fn membership_cmd(cfg: &RunConfig) -> Result<Exit> {
    let system = cfg.system()?;
    system.require_length()?;
    let target = cfg.parse_target(&system.alphabet)?.ok_or_else(|| anyhow!(required("--target")))?;
    let mut budget = EnumerationBudget::new(cfg.max_len.unwrap_or(target.len()).max(target.len()))
        .with_states(cfg.max_states.unwrap_or(DEFAULT_MAX_STATES));
    if cfg.traces {
        budget = budget.with_traces();
    }
    let word = system.format_word(&target);
    let (line, exit) = match membership(&system, &target, &budget)? {
        Membership::Member { trace: Some(t) } => (format!("target={word} member=true trace={}", format_trace(&t)), Exit::Ok),
        Membership::Member { trace: None } => (format!("target={word} member=true"), Exit::Ok),
        Membership::NotMember => (format!("target={word} member=false"), Exit::Ok),
        Membership::Inconclusive { frontier } => {
            (format!("target={word} member=inconclusive frontier={frontier}"), Exit::Budget)
        }
    };
    emit(cfg, &(line + "\n"))?;
    Ok(exit)
}

pub fn list_procedures() -> Result<Exit> {
    for p in procedures().iter() {
        println!("{}\t{}", p.name(), p.summary());
    }
    Ok(Exit::Ok)
}

pub fn construct(cfg: &RunConfig) -> Result<Exit> {
    let name = cfg.procedure.as_deref().ok_or_else(|| anyhow!(required("--procedure")))?;
    let procedure = procedures()
        .get(name)
        .ok_or_else(|| anyhow!(LibError::InvalidParameter(format!("unknown procedure '{name}'"))))?;
    let alphabet = cfg.construction_alphabet()?;
    let seed = cfg.seed.as_deref().ok_or_else(|| anyhow!(required("--seed")))?;
    let input = ProcedureInput {
        word: alphabet.parse_word(seed)?,
        k: cfg.k.ok_or_else(|| anyhow!(required("--k")))?,
        kprime: cfg.kprime,
        target: cfg.parse_target(&alphabet)?,
        symbol: cfg.parse_symbol(&alphabet)?,
    };
    let out = procedure.run(&input)?;
    let mut text = format!("procedure={}\n", procedure.name());
    if let Some(c) = &out.construction {
        text.push_str(&describe(c, |w| alphabet.format_word(w)));
    }
    for w in &out.words {
        let _ = writeln!(text, "word={}", alphabet.format_word(w));
    }
    if let Some(note) = &out.note {
        let _ = writeln!(text, "{note}");
    }
    emit(cfg, &text)?;
    Ok(Exit::Ok)
}

fn required(flag: &str) -> LibError {
    LibError::InvalidParameter(format!("{flag} is required"))
}
