use super::{require_symbol, Builder, ConstructionResult};
use crate::error::{Error, Result};
use crate::rules::ReplicationRule;
use crate::word::{Symbol, Word};

/// Derives, by reversed tandem duplications of length `k >= 2`, a word that
/// ends with `a`.
///
/// The copy of `a` is first moved to a position with at least `k` symbols on
/// each side. Each further step moves it right by a fixed amount (`k+1`,
/// `k+2` or `2k-1`) while its distance to the end drops by 1, 2 or `k-1`.
pub fn rt_push_to_end(y: &Word, k: usize, a: Symbol) -> Result<ConstructionResult> {
    if k < 2 {
        return Err(Error::param("pushing a symbol needs k >= 2"));
    }
    if y.len() < k {
        return Err(Error::precondition(format!("|y| = {} is below k = {k}", y.len())));
    }
    require_symbol(y, a)?;

    let mut b = Builder::new(y);
    while b.len() < 2 * k {
        b.step(ReplicationRule::reversed(0, k));
    }
    if b.current.last() == Some(a) {
        return Ok(b.finish());
    }

    // positions below are 1-based
    let m = b.len();
    let occ: Vec<usize> = (1..=m).filter(|&i| b.at(i - 1) == a).collect();
    let mut pos = match occ.iter().copied().find(|&i| i >= k && m - i >= k) {
        Some(i) => i,
        None if occ[0] < k => {
            b.step(ReplicationRule::reversed(0, k));
            2 * k - occ[0] + 1
        }
        None => {
            let i = occ[0];
            b.step(ReplicationRule::reversed(i - k, k));
            i
        }
    };
    debug_assert_eq!(b.at(pos - 1), a);

    let mut dist = b.len() - pos;
    if k % 2 == 1 && (dist % (k - 1)) % 2 == 1 {
        // duplicate the block starting at `a`: the original stays put
        b.step(ReplicationRule::reversed(pos - 1, k));
        dist += k;
    }
    let target = dist / (k - 1) * (k - 1);
    while dist > target {
        if k.is_multiple_of(2) {
            b.step(ReplicationRule::reversed(pos - k / 2, k));
            pos += k + 1;
            dist -= 1;
        } else {
            b.step(ReplicationRule::reversed(pos - (k - 1) / 2, k));
            pos += k + 2;
            dist -= 2;
        }
        debug_assert_eq!(b.at(pos - 1), a);
    }
    while dist > 0 {
        b.step(ReplicationRule::reversed(pos - 1, k));
        pos += 2 * k - 1;
        dist -= k - 1;
    }
    debug_assert_eq!(pos, b.len());
    Ok(b.finish())
}

/// Derives a word ending with `x` from `y`, provided every symbol occurs in
/// `y` at least as often as in `x` and `k >= 2`. Symbols of `x` are pushed to
/// the end right to left, each time working on the part before the symbols
/// already placed.
pub fn rt_embed_as_suffix(y: &Word, k: usize, x: &Word) -> Result<ConstructionResult> {
    if k < 2 {
        return Err(Error::param("embedding needs k >= 2"));
    }
    if y.len() < k {
        return Err(Error::precondition(format!("|y| = {} is below k = {k}", y.len())));
    }
    for a in x.alpha_representation() {
        if x.occurrences(a) > y.occurrences(a) {
            return Err(Error::precondition(format!(
                "symbol {a} occurs {} times in the target but {} times in y",
                x.occurrences(a),
                y.occurrences(a)
            )));
        }
    }

    let mut b = Builder::new(y);
    // keep every working prefix at least k long
    while b.len() < x.len() + k {
        b.step(ReplicationRule::reversed(0, k));
    }
    for (placed, &a) in x.symbols().iter().rev().enumerate() {
        let cut = b.len() - placed;
        let prefix = Word::new(b.current.symbols()[..cut].to_vec());
        let pushed = rt_push_to_end(&prefix, k, a)?;
        // every rule acts inside the prefix, so it acts the same on the full word
        for rule in pushed.trace {
            b.step(rule);
        }
    }
    debug_assert!(b.current.ends_with(x));
    Ok(b.finish())
}
