use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::SquareMatrix;
use crate::error::{Error, Result};
use crate::positions::rho_sets;
use crate::word::{Alphabet, Symbol, Word};

pub const MAX_DEBRUIJN_VERTICES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabeledEdge {
    pub from: usize,
    pub to: usize,
    pub label: Symbol,
}

/// Directed multigraph with symbol-labeled edges and a start set used for
/// path counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertex_count: usize,
    edges: Vec<LabeledEdge>,
    starts: Vec<usize>,
    names: Vec<String>,
    /// Vertex contents for word-indexed graphs; empty otherwise.
    words: Vec<Word>,
}

impl LabeledGraph {
    pub fn new(vertex_count: usize) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::param("a graph needs at least one vertex"));
        }
        Ok(LabeledGraph {
            vertex_count,
            edges: Vec::new(),
            starts: (0..vertex_count).collect(),
            names: (0..vertex_count).map(|v| v.to_string()).collect(),
            words: Vec::new(),
        })
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: Symbol) -> Result<()> {
        if from >= self.vertex_count || to >= self.vertex_count {
            return Err(Error::param(format!("edge {from}->{to} leaves a graph of {} vertices", self.vertex_count)));
        }
        self.edges.push(LabeledEdge { from, to, label });
        Ok(())
    }

    pub fn set_starts(&mut self, starts: Vec<usize>) -> Result<()> {
        if let Some(&v) = starts.iter().find(|&&v| v >= self.vertex_count) {
            return Err(Error::param(format!("start vertex {v} is out of range")));
        }
        self.starts = starts;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }

    /// Entry `(i, j)` counts the edges from `i` to `j`.
    pub fn adjacency_matrix(&self) -> SquareMatrix {
        let mut m = SquareMatrix::zeros(self.vertex_count).expect("vertex count is positive");
        for e in &self.edges {
            m.set(e.from, e.to, m.get(e.from, e.to) + 1);
        }
        m
    }

    /// Graphviz text; edge labels are rendered with `alphabet` when given.
    pub fn to_dot(&self, alphabet: Option<&Alphabet>) -> String {
        let label = |a: Symbol| alphabet.map_or_else(|| a.to_string(), |al| al.format_symbol(a));
        let mut out = String::from("digraph G {\n");
        for v in 0..self.vertex_count {
            let shape = if self.starts.contains(&v) { ", shape=doublecircle" } else { "" };
            let _ = writeln!(out, "  {v} [label=\"{}\"{shape}];", self.names[v]);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, label(e.label));
        }
        out.push_str("}\n");
        out
    }
}

/// Automaton of words `a_d^+ (a_{d-1}^+ ( ... (a_1^+)^+ ... )^+)^+` over
/// `delta` symbols. Vertex `v` reads symbol `delta - 1 - v` (named
/// `a_{delta - v}`); every edge is labeled with the symbol of its target.
/// Its adjacency matrix is [`lb1_matrix`](super::lb1_matrix).
pub fn lb1_automaton(delta: usize) -> Result<LabeledGraph> {
    if delta < 2 {
        return Err(Error::param("the automaton needs at least two symbols"));
    }
    let mut g = LabeledGraph::new(delta)?;
    let symbol = |v: usize| (delta - 1 - v) as Symbol;
    g.names = (0..delta).map(|v| format!("a{}", delta - v)).collect();
    for v in 0..delta - 1 {
        g.add_edge(v, v, symbol(v))?;
        g.add_edge(v, v + 1, symbol(v + 1))?;
    }
    for u in 0..delta {
        g.add_edge(delta - 1, u, symbol(u))?;
    }
    g.set_starts(vec![0])?;
    Ok(g)
}

/// De Bruijn graph of order `d + 1`: vertices are all words of length
/// `d + 1` (numbered in base `sigma`, first symbol most significant) and
/// `v -> v'` when `v'` drops the first symbol of `v` and appends a new one,
/// which labels the edge. Every vertex is a start.
pub fn debruijn_graph(sigma: usize, d: usize) -> Result<LabeledGraph> {
    if sigma == 0 || sigma > 256 || d == 0 {
        return Err(Error::param("need 1 <= sigma <= 256 and d >= 1"));
    }
    let n = u32::try_from(d + 1)
        .ok()
        .and_then(|e| sigma.checked_pow(e))
        .filter(|&n| n <= MAX_DEBRUIJN_VERTICES)
        .ok_or_else(|| Error::param(format!("sigma^(d+1) exceeds {MAX_DEBRUIJN_VERTICES} vertices")))?;
    let alphabet = Alphabet::new(sigma)?;
    let mut g = LabeledGraph::new(n)?;
    g.words = (0..n)
        .map(|mut v| {
            let mut s = vec![0; d + 1];
            for slot in s.iter_mut().rev() {
                *slot = (v % sigma) as Symbol;
                v /= sigma;
            }
            Word::new(s)
        })
        .collect();
    g.names = g.words.iter().map(|w| alphabet.format_word(w)).collect();
    for v in 0..n {
        for c in 0..sigma {
            g.add_edge(v, (v * sigma) % n + c, c as Symbol)?;
        }
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct PrunedGraph {
    pub graph: LabeledGraph,
    pub removed: usize,
}

/// Removes every edge `v -> u` for which some pair `(a, b)` has
/// `rho_{v,d}(a,b) ∪ rho_{u,d}(a,b)` outside `allowed`. Needs `|allowed| < d`
/// and a word-indexed graph such as [`debruijn_graph`].
pub fn prune_debruijn(g: &LabeledGraph, allowed: &BTreeSet<usize>, d: usize) -> Result<PrunedGraph> {
    if d == 0 || allowed.len() >= d {
        return Err(Error::precondition(format!("the residue set must have fewer than d = {d} elements")));
    }
    if let Some(r) = allowed.iter().find(|&&r| r >= d) {
        return Err(Error::param(format!("residue {r} is not below d = {d}")));
    }
    if g.words.len() != g.vertex_count {
        return Err(Error::precondition("pruning needs a graph whose vertices are words"));
    }
    // the union fails to fit iff one of the two sides already fails
    let bad: Vec<bool> = g
        .words
        .iter()
        .map(|w| Ok(rho_sets(w, d)?.values().any(|rho| !rho.is_subset(allowed))))
        .collect::<Result<_>>()?;
    let mut out = g.clone();
    out.edges.retain(|e| !bad[e.from] && !bad[e.to]);
    let removed = g.edges.len() - out.edges.len();
    Ok(PrunedGraph { graph: out, removed })
}

/// Number of edge paths of length `n` leaving the start set, counted
/// exactly by dynamic programming.
pub fn count_labeled_paths(g: &LabeledGraph, n: usize) -> Result<u128> {
    let mut ways = vec![0u128; g.vertex_count];
    for &s in &g.starts {
        ways[s] += 1;
    }
    for _ in 0..n {
        let mut next = vec![0u128; g.vertex_count];
        for e in &g.edges {
            if ways[e.from] != 0 {
                next[e.to] = next[e.to].checked_add(ways[e.from]).ok_or(Error::Overflow("path count"))?;
            }
        }
        ways = next;
    }
    ways.iter()
        .try_fold(0u128, |acc, &w| acc.checked_add(w))
        .ok_or(Error::Overflow("path count"))
}
