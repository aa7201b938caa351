use super::{Replicator, Variant};
use crate::word::Symbol;

/// `uvw -> uvwv` with `|u| = i`, `|v| = k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EndReplication;

impl Replicator for EndReplication {
    fn name(&self) -> &'static str {
        "end"
    }

    fn variant(&self) -> Variant {
        Variant::End
    }

    fn supports_at_least(&self) -> bool {
        true
    }

    fn rewrite(&self, x: &[Symbol], offset: usize, k: usize, _gap: usize, out: &mut Vec<Symbol>) {
        out.extend_from_slice(x);
        out.extend_from_slice(&x[offset..offset + k]);
    }
}
