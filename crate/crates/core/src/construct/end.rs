use super::{Builder, ConstructionResult};
use crate::error::{Error, Result};
use crate::rules::ReplicationRule;
use crate::word::Word;

/// Appends k-blocks until `x` ends with `suffix` (`|suffix| = k`), using at
/// most `2k` end replications: one copy of the k-prefix, one block ending in
/// the first target symbol, then two blocks per remaining symbol.
pub fn end_force_suffix(x: &Word, k: usize, suffix: &Word) -> Result<ConstructionResult> {
    if k == 0 {
        return Err(Error::param("k must be positive"));
    }
    if x.len() < k {
        return Err(Error::precondition(format!("|x| = {} is below k = {k}", x.len())));
    }
    if suffix.len() != k {
        return Err(Error::LengthMismatch { left: suffix.len(), right: k });
    }
    if !suffix.alpha_representation().is_subset(&x.alpha_representation()) {
        return Err(Error::precondition("the suffix uses symbols absent from x"));
    }

    let mut b = Builder::new(x);
    b.step(ReplicationRule::end(0, k));
    // After copying the prefix every symbol starts some k-window and ends
    // some k-window of this word, which stays a prefix from here on.
    let base = b.current.clone();
    let windows = base.len() - k + 1;
    let s = base.symbols();
    let w = suffix.symbols();

    let first = (0..windows).find(|&p| s[p + k - 1] == w[0]).expect("symbol ends a window");
    b.step(ReplicationRule::end(first, k));

    for &want in &w[1..] {
        let start = (0..windows).find(|&p| s[p] == want).expect("symbol starts a window");
        let before = b.len();
        b.step(ReplicationRule::end(start, k));
        // last k-1 symbols of the old word followed by `want`
        b.step(ReplicationRule::end(before - k + 1, k));
    }
    Ok(b.finish())
}
