//! Position-difference sets Δ and their residues ρ modulo a fixed modulus.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// For every ordered pair `(a, b)` of symbols present in a word, the set of
/// offsets `j` with `x_i = a` and `x_{i+j} = b` for some `i`, and those
/// offsets reduced modulo `modulus` into `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionDifferenceProfile {
    pub modulus: usize,
    pub delta: BTreeMap<(Symbol, Symbol), BTreeSet<isize>>,
    pub rho: BTreeMap<(Symbol, Symbol), BTreeSet<usize>>,
}

impl PositionDifferenceProfile {
    pub fn rho(&self, a: Symbol, b: Symbol) -> BTreeSet<usize> {
        self.rho.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn delta(&self, a: Symbol, b: Symbol) -> BTreeSet<isize> {
        self.delta.get(&(a, b)).cloned().unwrap_or_default()
    }
}

pub fn position_profile(w: &Word, modulus: usize) -> Result<PositionDifferenceProfile> {
    if modulus == 0 {
        return Err(Error::param("modulus must be positive"));
    }
    let mut positions: BTreeMap<Symbol, Vec<isize>> = BTreeMap::new();
    for (i, &s) in w.symbols().iter().enumerate() {
        positions.entry(s).or_default().push(i as isize);
    }
    let mut delta = BTreeMap::new();
    let mut rho = BTreeMap::new();
    for (&a, pa) in &positions {
        for (&b, pb) in &positions {
            let d: BTreeSet<isize> = pa.iter().flat_map(|&i| pb.iter().map(move |&j| j - i)).collect();
            let r: BTreeSet<usize> = d.iter().map(|&j| residue(j, modulus)).collect();
            delta.insert((a, b), d);
            rho.insert((a, b), r);
        }
    }
    Ok(PositionDifferenceProfile { modulus, delta, rho })
}

/// Only the residue sets, which is all the gap-system checks need.
pub fn rho_sets(w: &Word, modulus: usize) -> Result<BTreeMap<(Symbol, Symbol), BTreeSet<usize>>> {
    if modulus == 0 {
        return Err(Error::param("modulus must be positive"));
    }
    let mut residues: BTreeMap<Symbol, BTreeSet<usize>> = BTreeMap::new();
    for (i, &s) in w.symbols().iter().enumerate() {
        residues.entry(s).or_default().insert(i % modulus);
    }
    let mut out = BTreeMap::new();
    for (&a, ra) in &residues {
        for (&b, rb) in &residues {
            let set = ra
                .iter()
                .flat_map(|&i| rb.iter().map(move |&j| (j + modulus - i) % modulus))
                .collect();
            out.insert((a, b), set);
        }
    }
    Ok(out)
}

pub(crate) fn residue(j: isize, modulus: usize) -> usize {
    j.rem_euclid(modulus as isize) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let p = position_profile(&w("01"), 1).unwrap();
        assert_eq!(p.delta(0, 1), BTreeSet::from([1]));
        assert_eq!(p.delta(1, 0), BTreeSet::from([-1]));

        let p = position_profile(&w("00"), 1).unwrap();
        assert_eq!(p.delta(0, 0), BTreeSet::from([-1, 0, 1]));

        let p = position_profile(&w("0101"), 2).unwrap();
        assert_eq!(p.rho(0, 1), BTreeSet::from([1]));
        assert_eq!(p.rho(0, 0), BTreeSet::from([0]));
        // symbols absent from the word have no entries
        assert!(p.rho(0, 2).is_empty());
        assert!(position_profile(&w("01"), 0).is_err());
    }

    /// Direct quadratic scan over index pairs.
    fn brute_delta(x: &Word, a: Symbol, b: Symbol) -> BTreeSet<isize> {
        let s = x.symbols();
        let mut out = BTreeSet::new();
        for i in 0..s.len() {
            for j in 0..s.len() {
                if s[i] == a && s[j] == b {
                    out.insert(j as isize - i as isize);
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn matches_brute_force(symbols in prop::collection::vec(0u8..3, 0..12), m in 1usize..5) {
            let x = Word::new(symbols);
            let p = position_profile(&x, m).unwrap();
            let fast = rho_sets(&x, m).unwrap();
            for a in 0..3 {
                for b in 0..3 {
                    let d = brute_delta(&x, a, b);
                    prop_assert_eq!(&p.delta(a, b), &d);
                    let r: BTreeSet<usize> = d.iter().map(|&j| residue(j, m)).collect();
                    prop_assert_eq!(&p.rho(a, b), &r);
                    prop_assert_eq!(&fast.get(&(a, b)).cloned().unwrap_or_default(), &r);
                }
            }
        }
    }
}
