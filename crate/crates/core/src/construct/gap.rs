use std::collections::BTreeSet;

use super::{require_symbol, Builder, ConstructionResult};
use crate::error::{Error, Result};
use crate::rules::ReplicationRule;
use crate::word::{Symbol, Word};

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_params(k: usize, kp: usize) -> Result<()> {
    if k == 0 || kp == 0 {
        return Err(Error::param("k and k' must be positive"));
    }
    Ok(())
}

/// Derives a word ending with `a` by gap duplications `T_{i,k,k'}` with
/// `gcd(k, k') = 1`.
///
/// An occurrence of `a` at a 1-based position `i >= k` is fixed. Blocks
/// starting at it move the distance to the end up by `k` until it is a
/// multiple of `k'`; then blocks ending at it each carry a copy `k + k'`
/// further right, closing the distance by `k'`.
pub fn gap_push_to_end(y: &Word, k: usize, kp: usize, a: Symbol) -> Result<ConstructionResult> {
    check_params(k, kp)?;
    if gcd(k, kp) != 1 {
        return Err(Error::precondition(format!("gcd({k}, {kp}) must be 1")));
    }
    if y.len() < k + kp {
        return Err(Error::precondition(format!("|y| = {} is below k + k' = {}", y.len(), k + kp)));
    }
    require_symbol(y, a)?;

    let mut b = Builder::new(y);
    if y.last() == Some(a) {
        return Ok(b.finish());
    }
    let first = (1..=y.len()).find(|&i| b.at(i - 1) == a).expect("symbol occurs");
    let mut pos = match (k..=y.len()).find(|&i| b.at(i - 1) == a) {
        Some(i) => i,
        None => {
            b.step(ReplicationRule::gap(0, k, kp));
            first + k + kp
        }
    };
    debug_assert_eq!(b.at(pos - 1), a);

    let mut dist = b.len() - pos;
    // Blocks starting at `a` need k + k' - 1 symbols after it; appending the
    // tail block creates room without moving `a`.
    while !dist.is_multiple_of(kp) && dist < k + kp - 1 {
        b.step(ReplicationRule::gap(b.len() - k - kp, k, kp));
        dist += k;
    }
    while !dist.is_multiple_of(kp) {
        b.step(ReplicationRule::gap(pos - 1, k, kp));
        dist += k;
    }
    while dist > 0 {
        b.step(ReplicationRule::gap(pos - k, k, kp));
        pos += k + kp;
        dist -= kp;
    }
    debug_assert_eq!(b.current.last(), Some(a));
    Ok(b.finish())
}

/// Distinct words produced by `T_{i,k,k'}(T_{0,k,k'}(s))` for `i = 0..=k`,
/// where `s` is cut to its first `k + k'` symbols.
pub fn gap_distinct_round(s: &Word, k: usize, kp: usize) -> Result<BTreeSet<Word>> {
    check_params(k, kp)?;
    let seed = s
        .prefix(k + kp)
        .ok_or(Error::LengthMismatch { left: s.len(), right: k + kp })?;
    let first = ReplicationRule::gap(0, k, kp).apply(&seed);
    Ok((0..=k).map(|i| ReplicationRule::gap(i, k, kp).apply(&first)).collect())
}

/// Hamming distance between the first k-window of `t` and the k-window of
/// `t t` starting after it, where `t` is the `(k + k')`-prefix of `s`.
pub fn hamming_window_distance(s: &Word, k: usize, kp: usize) -> Result<usize> {
    check_params(k, kp)?;
    let t = s
        .prefix(k + kp)
        .ok_or(Error::LengthMismatch { left: s.len(), right: k + kp })?;
    let tt = t.concat(&t);
    t.prefix(k).expect("k <= |t|").hamming(&tt.window(k, k).expect("2k <= 2|t|"))
}
