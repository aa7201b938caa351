use super::{Replicator, Variant};
use crate::word::Symbol;

/// `uvw -> uvvw` with `|u| = i`, `|v| = k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TandemReplication;

impl Replicator for TandemReplication {
    fn name(&self) -> &'static str {
        "tan"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["tandem"]
    }

    fn variant(&self) -> Variant {
        Variant::Tandem
    }

    fn supports_at_least(&self) -> bool {
        true
    }

    fn rewrite(&self, x: &[Symbol], offset: usize, k: usize, _gap: usize, out: &mut Vec<Symbol>) {
        out.extend_from_slice(&x[..offset + k]);
        out.extend_from_slice(&x[offset..]);
    }
}
