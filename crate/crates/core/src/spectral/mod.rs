//! Matrices, automata and root finding behind the capacity bounds.

mod graph;

use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};

pub use graph::{
    count_labeled_paths, debruijn_graph, lb1_automaton, prune_debruijn, LabeledEdge, LabeledGraph, PrunedGraph,
    MAX_DEBRUIJN_VERTICES,
};

pub const MAX_POWER_ITERATIONS: usize = 1_000_000;
const RELATIVE_TOLERANCE: f64 = 1e-12;
const ROOT_WIDTH: f64 = 1e-12;

/// Dense square matrix with non-negative integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<u64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("matrix dimension must be at least 1"));
        }
        Ok(SquareMatrix { dim, entries: vec![0; dim * dim] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len())?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m.dim {
                return Err(Error::LengthMismatch { left: row.len(), right: m.dim });
            }
            m.entries[i * m.dim..(i + 1) * m.dim].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&v| v != 0).count()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// The matrix of the distinct-symbol automaton: ones on the diagonal and
/// superdiagonal, and a full last row.
pub fn lb1_matrix(delta: usize) -> Result<SquareMatrix> {
    if delta < 2 {
        return Err(Error::param("the automaton needs at least two symbols"));
    }
    let mut m = SquareMatrix::zeros(delta)?;
    for i in 0..delta - 1 {
        m.set(i, i, 1);
        m.set(i, i + 1, 1);
    }
    for j in 0..delta {
        m.set(delta - 1, j, 1);
    }
    Ok(m)
}

/// Largest eigenvalue modulus of a non-negative matrix.
///
/// The matrix is split into strongly connected components; each
/// irreducible block is handled by power iteration on `B + I` (primitive,
/// same Perron vector) from the all-ones vector, stopping once the
/// Collatz-Wielandt bounds `min (Bx)_i / x_i <= lambda <= max (Bx)_i / x_i`
/// agree to a relative 1e-12. The largest block value is returned.
pub fn spectral_radius(a: &SquareMatrix) -> Result<f64> {
    let n = a.dim();
    let mut g = DiGraph::<(), ()>::with_capacity(n, a.nonzero_count());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j) != 0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut best = 0.0f64;
    for comp in tarjan_scc(&g) {
        let idx: Vec<usize> = comp.iter().map(|v| v.index()).collect();
        let value = if idx.len() == 1 {
            a.get(idx[0], idx[0]) as f64
        } else {
            component_radius(a, &idx)?
        };
        best = best.max(value);
    }
    Ok(best)
}

fn component_radius(a: &SquareMatrix, idx: &[usize]) -> Result<f64> {
    let m = idx.len();
    // sparse rows of the block; the identity shift is added in the loop
    let rows: Vec<Vec<(usize, f64)>> = idx
        .iter()
        .map(|&i| {
            idx.iter()
                .enumerate()
                .filter(|&(_, &j)| a.get(i, j) != 0)
                .map(|(c, &j)| (c, a.get(i, j) as f64))
                .collect()
        })
        .collect();
    let mut x = vec![1.0f64; m];
    let mut y = vec![0.0f64; m];
    for _ in 0..MAX_POWER_ITERATIONS {
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (r, row) in rows.iter().enumerate() {
            let v = x[r] + row.iter().map(|&(c, w)| w * x[c]).sum::<f64>();
            y[r] = v;
            let ratio = v / x[r];
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        if hi - lo <= RELATIVE_TOLERANCE * hi {
            return Ok((lo + hi) / 2.0 - 1.0);
        }
        let scale = y.iter().cloned().fold(0.0, f64::max);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / scale;
        }
    }
    Err(Error::NonConvergence(MAX_POWER_ITERATIONS))
}

/// Real polynomial with coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::param("the zero polynomial has no leading coefficient"));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Bisection on `[lo, hi]` keeping `f(lo) <= 0 < f(hi)`, down to width
    /// 1e-12. Returns the left end, which never exceeds the root.
    pub fn largest_real_root(&self, lo: f64, hi: f64) -> Result<f64> {
        let (mut lo, mut hi) = (lo, hi);
        if !(lo < hi) || self.eval(lo) > 0.0 || self.eval(hi) <= 0.0 {
            return Err(Error::param(format!("[{lo}, {hi}] does not bracket a sign change from <= 0 to > 0")));
        }
        while hi - lo > ROOT_WIDTH {
            let mid = lo + (hi - lo) / 2.0;
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let mag = c.abs();
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if mag == 1.0 && d > 0 { String::new() } else { format!("{mag}") };
            match d {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{d}")?,
            }
        }
        Ok(())
    }
}

/// `x^delta - sum_{i=0}^{delta-2} x^i`; its root in `[1, 2]` is
/// `lambda(lb1_matrix(delta)) - 1`.
pub fn lb1_characteristic(delta: usize) -> Result<Polynomial> {
    if delta < 2 {
        return Err(Error::param("the automaton needs at least two symbols"));
    }
    let mut c = vec![-1.0; delta + 1];
    c[delta - 1] = 0.0;
    c[delta] = 1.0;
    Polynomial::new(c)
}

/// `x^{k+1} - x - 1`, whose largest root bounds tandem capacity for block
/// lengths at least `k`.
pub fn gek_polynomial(k: usize) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::param("k must be positive"));
    }
    let mut c = vec![0.0; k + 2];
    c[0] = -1.0;
    c[1] = -1.0;
    c[k + 1] = 1.0;
    Polynomial::new(c)
}
