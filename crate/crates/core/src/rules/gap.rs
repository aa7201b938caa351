use super::{Replicator, Variant};
use crate::word::Symbol;

/// `uvwz -> uvwvz` with `|u| = i`, `|v| = k`, `|w| = k'`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GapReplication;

impl Replicator for GapReplication {
    fn name(&self) -> &'static str {
        "gap"
    }

    fn variant(&self) -> Variant {
        Variant::Gap
    }

    fn needs_gap(&self) -> bool {
        true
    }

    fn rewrite(&self, x: &[Symbol], offset: usize, k: usize, gap: usize, out: &mut Vec<Symbol>) {
        let insert_at = offset + k + gap;
        out.extend_from_slice(&x[..insert_at]);
        out.extend_from_slice(&x[offset..offset + k]);
        out.extend_from_slice(&x[insert_at..]);
    }
}
