//! Published per-length counts for reversed tandem replication, and a
//! recomputation that checks them.

use std::fmt::Write as _;

use crate::closure::{enumerate_closure, EnumerationBudget};
use crate::error::Result;
use crate::rules::{RuleFamily, StringSystem, Variant};
use crate::word::{Alphabet, Word};

/// Counts `N(k), N(2k), ..., N(mk)` for the closure of a length-`k` seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub seed: &'static str,
    pub k: usize,
    pub expected: Vec<u64>,
}

impl ReferenceRow {
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.expected.len()).map(move |j| j * self.k)
    }
}

pub fn reversed_tandem_rows() -> Vec<ReferenceRow> {
    vec![
        ReferenceRow { seed: "01", k: 2, expected: vec![1, 1, 3, 10, 37, 145, 584] },
        ReferenceRow { seed: "010", k: 3, expected: vec![1, 1, 3, 14, 78, 467, 2894] },
        ReferenceRow { seed: "012", k: 3, expected: vec![1, 1, 4, 25, 182, 1423, 11577] },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub row: ReferenceRow,
    pub computed: Vec<u64>,
}

impl RowCheck {
    pub fn pass(&self) -> bool {
        self.computed == self.row.expected
    }
}

/// Enumerates each row's system from scratch.
pub fn reproduce(rows: &[ReferenceRow]) -> Result<Vec<RowCheck>> {
    rows.iter()
        .map(|row| {
            let seed = Word::from_digits(row.seed)?;
            let sigma = seed.symbols().iter().max().map_or(1, |&m| m as usize + 1);
            let system = StringSystem::new(
                Alphabet::new(sigma)?,
                seed,
                RuleFamily::fixed(Variant::ReversedTandem, row.k)?,
            )?;
            let max_len = row.k * row.expected.len();
            let profile = enumerate_closure(&system, &EnumerationBudget::new(max_len))?;
            let computed = row.lengths().map(|n| profile.count_at_length(n)).collect::<Result<_>>()?;
            Ok(RowCheck { row: row.clone(), computed })
        })
        .collect()
}

/// Tab-separated table: one line per (row, length) with both counts and a
/// PASS/FAIL column.
pub fn format_checks(checks: &[RowCheck]) -> String {
    let mut out = String::from("seed\tk\tn\texpected\tcomputed\tstatus\n");
    for c in checks {
        for ((n, e), got) in c.row.lengths().zip(&c.row.expected).zip(&c.computed) {
            let status = if e == got { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{}\t{}\t{n}\t{e}\t{got}\t{status}", c.row.seed, c.row.k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_reproduce() {
        let checks = reproduce(&reversed_tandem_rows()).unwrap();
        assert!(checks.iter().all(RowCheck::pass));
        let text = format_checks(&checks);
        assert_eq!(text.lines().count(), 1 + 21);
        assert!(!text.contains("FAIL"));
    }

    #[test]
    fn corrupted_expectation_fails() {
        let mut rows = reversed_tandem_rows();
        rows.truncate(1);
        rows[0].expected[6] = 585;
        let checks = reproduce(&rows).unwrap();
        assert!(!checks[0].pass());
        let text = format_checks(&checks);
        assert_eq!(text.matches("FAIL").count(), 1);
        assert!(text.contains("01\t2\t14\t585\t584\tFAIL"));
    }
}
