use super::{Replicator, Variant};
use crate::word::Symbol;

/// `uvw -> u v rev(v) w` with `|u| = i`, `|v| = k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReversedTandemReplication;

impl Replicator for ReversedTandemReplication {
    fn name(&self) -> &'static str {
        "rt"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["reversed", "reversed-tandem"]
    }

    fn variant(&self) -> Variant {
        Variant::ReversedTandem
    }

    fn rewrite(&self, x: &[Symbol], offset: usize, k: usize, _gap: usize, out: &mut Vec<Symbol>) {
        out.extend_from_slice(&x[..offset + k]);
        out.extend(x[offset..offset + k].iter().rev());
        out.extend_from_slice(&x[offset + k..]);
    }
}
