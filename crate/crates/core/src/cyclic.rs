//! Rotation classes of words and the window-class profile used to count
//! fixed-length tandem systems.

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// `E^j w`: rotate left by `j` positions (mod `|w|`).
pub fn cyclic_shift(w: &Word, j: usize) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let s = w.symbols();
    let j = j % s.len();
    let mut out = Vec::with_capacity(s.len());
    out.extend_from_slice(&s[j..]);
    out.extend_from_slice(&s[..j]);
    Ok(Word::new(out))
}

/// Equivalence class of a word under rotation, represented by its
/// lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicClass(Word);

impl CyclicClass {
    pub fn of(w: &Word) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        let s = w.symbols();
        let n = s.len();
        // O(n^2) scan over rotations; windows here are short.
        let best = (0..n)
            .min_by(|&a, &b| {
                let ra = s[a..].iter().chain(&s[..a]);
                let rb = s[b..].iter().chain(&s[..b]);
                ra.cmp(rb)
            })
            .unwrap_or(0);
        cyclic_shift(w, best).map(CyclicClass)
    }

    pub fn representative(&self) -> &Word {
        &self.0
    }

    pub fn contains(&self, w: &Word) -> bool {
        CyclicClass::of(w).map(|c| c == *self).unwrap_or(false)
    }
}

pub fn cyclic_class(w: &Word) -> Result<CyclicClass> {
    CyclicClass::of(w)
}

/// Classes of the `n-k+1` overlapping `k`-windows of a word, together with
/// its first window. `bins` is one more than the number of adjacent class
/// changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiProfile {
    pub k: usize,
    pub first_window: Word,
    pub classes: Vec<CyclicClass>,
    pub bins: usize,
}

pub fn phi_profile(w: &Word, k: usize) -> Result<PhiProfile> {
    if k == 0 {
        return Err(Error::param("window length must be positive"));
    }
    if w.len() < k {
        return Err(Error::precondition(format!(
            "word of length {} is shorter than the window {k}",
            w.len()
        )));
    }
    let classes = w
        .symbols()
        .windows(k)
        .map(|win| CyclicClass::of(&Word::from(win)))
        .collect::<Result<Vec<_>>>()?;
    let bins = 1 + classes.windows(2).filter(|p| p[0] != p[1]).count();
    Ok(PhiProfile {
        k,
        first_window: w.prefix(k).expect("checked length"),
        classes,
        bins,
    })
}

/// Inverse of [`phi_profile`]: rebuilds the word from its first window and
/// window classes. Each step must be realizable by sliding the window one
/// symbol; the extending symbol is unique when it exists.
pub fn reconstruct_from_phi(first_window: &Word, classes: &[CyclicClass]) -> Result<Word> {
    let first = classes.first().ok_or_else(|| Error::param("empty class sequence"))?;
    if CyclicClass::of(first_window)? != *first {
        return Err(Error::InconsistentPhi { position: 1 });
    }
    let k = first_window.len();
    let mut out: Vec<Symbol> = first_window.symbols().to_vec();
    for (idx, class) in classes.iter().enumerate().skip(1) {
        if class.representative().len() != k {
            return Err(Error::InconsistentPhi { position: idx + 1 });
        }
        let tail = &out[out.len() - (k - 1)..];
        // The new symbol must be one the target class contains.
        let mut candidates: Vec<Symbol> = class.representative().symbols().to_vec();
        candidates.sort_unstable();
        candidates.dedup();
        let next = candidates.into_iter().find(|&c| {
            let mut win = tail.to_vec();
            win.push(c);
            class.contains(&Word::new(win))
        });
        match next {
            Some(c) => out.push(c),
            None => return Err(Error::InconsistentPhi { position: idx + 1 }),
        }
    }
    Ok(Word::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{w, Alphabet};
    use proptest::prelude::*;

    fn phi(x: &str) -> CyclicClass {
        CyclicClass::of(&w(x)).unwrap()
    }

    #[test]
    fn shift_examples() {
        let abc = w("012");
        assert_eq!(cyclic_shift(&abc, 1).unwrap(), w("120"));
        assert_eq!(cyclic_shift(&abc, 0).unwrap(), abc);
        assert_eq!(cyclic_shift(&abc, 3).unwrap(), abc);
        assert!(matches!(cyclic_shift(&Word::empty(), 1), Err(Error::EmptyWord)));
    }

    #[test]
    fn class_examples() {
        assert_eq!(phi("01"), phi("10"));
        assert_ne!(phi("01"), phi("00"));
        assert_eq!(phi("010"), phi("001"));
        assert_eq!(phi("001"), phi("100"));
        assert_eq!(phi("201").representative(), &w("012"));
        assert!(cyclic_class(&Word::empty()).is_err());
    }

    #[test]
    fn phi_profile_examples() {
        let p = phi_profile(&w("0101"), 2).unwrap();
        assert_eq!(p.classes, vec![phi("01"), phi("10"), phi("01")]);
        assert_eq!(p.bins, 1);

        let p = phi_profile(&w("0011"), 2).unwrap();
        assert_eq!(p.classes, vec![phi("00"), phi("01"), phi("11")]);
        assert_eq!(p.bins, 3);

        let p = phi_profile(&w("00"), 2).unwrap();
        assert_eq!(p.classes.len(), 1);
        assert_eq!(p.bins, 1);

        assert!(phi_profile(&w("0"), 2).is_err());
    }

    #[test]
    fn reconstruct_examples() {
        let p = phi_profile(&w("0011"), 2).unwrap();
        assert_eq!(reconstruct_from_phi(&p.first_window, &p.classes).unwrap(), w("0011"));

        let dna = Alphabet::with_labels("ACGT").unwrap();
        let x = dna.parse_word("TCATGC").unwrap();
        let p = phi_profile(&x, 3).unwrap();
        assert_eq!(reconstruct_from_phi(&p.first_window, &p.classes).unwrap(), x);

        let err = reconstruct_from_phi(&w("00"), &[phi("00"), phi("11")]);
        assert!(matches!(err, Err(Error::InconsistentPhi { position: 2 })));
    }

    #[test]
    fn classes_agree_with_rotation_orbits_exhaustively() {
        // Every word up to length 6 over 3 symbols: the class is constant on
        // the rotation orbit and distinct orbits get distinct classes.
        for n in 1..=6u32 {
            for code in 0..3usize.pow(n) {
                let mut c = code;
                let word: Vec<Symbol> = (0..n)
                    .map(|_| {
                        let s = (c % 3) as Symbol;
                        c /= 3;
                        s
                    })
                    .collect();
                let x = Word::new(word);
                let cls = phi_class(&x);
                let orbit: Vec<Word> = (0..x.len()).map(|j| cyclic_shift(&x, j).unwrap()).collect();
                for r in &orbit {
                    assert_eq!(phi_class(r), cls);
                }
                assert_eq!(cls.representative(), orbit.iter().min().unwrap());
            }
        }
    }

    fn phi_class(x: &Word) -> CyclicClass {
        CyclicClass::of(x).unwrap()
    }

    proptest! {
        #[test]
        fn phi_roundtrip(symbols in prop::collection::vec(0u8..3, 1..14), k in 1usize..5) {
            prop_assume!(symbols.len() >= k);
            let x = Word::new(symbols);
            let p = phi_profile(&x, k).unwrap();
            prop_assert_eq!(p.classes.len(), x.len() - k + 1);
            prop_assert!(p.bins <= p.classes.len());
            prop_assert_eq!(reconstruct_from_phi(&p.first_window, &p.classes).unwrap(), x);
        }
    }
}
