//! Catalog experiments over semigroups enumerated by Frobenius number:
//! the quotient table with isomorphism colors, the symmetric-collision
//! scan, and the irreducible-realization check for `⟨4,11,13,18⟩`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::quotient_isomorphisms;
use crate::numerical::{enumerate_by_frobenius, frobenius_limit, NumericalSemigroup};
use crate::quotient::{minimal_generating_system, nilpotency_class, ReesQuotient};

/// One semigroup with its conductor-cut quotient.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub notation: String,
    pub small_elements: Vec<u64>,
    pub generators: Vec<u64>,
    pub irreducible: bool,
    pub quotient_size: usize,
    pub nilpotency_class: usize,
    pub quotient_generators: usize,
    /// Isomorphism class index among quotients of the same size, in
    /// first-seen order.
    pub color: usize,
    #[serde(skip)]
    pub semigroup: NumericalSemigroup,
    /// `None` when the conductor equals the multiplicity and the quotient
    /// is the one-element semigroup `{∞}`.
    #[serde(skip)]
    pub quotient: Option<ReesQuotient>,
}

impl TableEntry {
    fn new(s: NumericalSemigroup) -> Result<Self> {
        let quotient = conductor_quotient(&s);
        let (size, class, gens) = match &quotient {
            Some(q) => (
                q.len(),
                nilpotency_class(q.table())?,
                minimal_generating_system(q.table()).len(),
            ),
            None => (1, 1, 0),
        };
        Ok(TableEntry {
            notation: s.small_element_notation(),
            small_elements: s.small_elements().to_vec(),
            generators: s.min_generators().to_vec(),
            irreducible: s.is_irreducible()?,
            quotient_size: size,
            nilpotency_class: class,
            quotient_generators: gens,
            color: 0,
            semigroup: s,
            quotient,
        })
    }
}

/// `S/I_{c(S)}`, or `None` for the one-element quotient of `S = {0, c, c+1, …}`.
pub fn conductor_quotient(s: &NumericalSemigroup) -> Option<ReesQuotient> {
    (s.is_naturals() || s.conductor() > s.multiplicity()).then(|| ReesQuotient::at_conductor(s).unwrap())
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub frobenius: u64,
    pub irreducible: Vec<TableEntry>,
    pub non_irreducible: Vec<TableEntry>,
}

impl TableRow {
    pub fn entries(&self) -> impl Iterator<Item = &TableEntry> {
        self.irreducible.iter().chain(&self.non_irreducible)
    }

    pub fn len(&self) -> usize {
        self.irreducible.len() + self.non_irreducible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub max_frobenius: u64,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn entries(&self) -> impl Iterator<Item = &TableEntry> {
        self.rows.iter().flat_map(TableRow::entries)
    }

    /// One markdown row per Frobenius number, entries tagged `size.color`.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| F | irreducible | non-irreducible |\n|---|---|---|\n");
        let cell = |es: &[TableEntry]| -> String {
            es.iter()
                .map(|e| format!("{} [{}.{}]", e.notation, e.quotient_size, e.color))
                .collect::<Vec<_>>()
                .join(", ")
        };
        for row in &self.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                row.frobenius,
                cell(&row.irreducible),
                cell(&row.non_irreducible)
            );
        }
        out
    }
}

fn check_scope(max_frobenius: u64) -> Result<()> {
    let limit = frobenius_limit();
    if max_frobenius > limit {
        return Err(Error::ResourceBound {
            what: format!("Frobenius number {max_frobenius}"),
            bound: limit,
        });
    }
    Ok(())
}

fn entries_with_frobenius(f: u64) -> Result<Vec<TableEntry>> {
    enumerate_by_frobenius(f)?
        .into_par_iter()
        .map(TableEntry::new)
        .collect()
}

fn isomorphic(a: Option<&ReesQuotient>, b: Option<&ReesQuotient>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(a), Some(b)) => {
            a.len() == b.len()
                && !quotient_isomorphisms(a, b).expect("quotients carry their own presentations").is_empty()
        }
        _ => false,
    }
}

/// All semigroups with Frobenius number `1..=max_frobenius`, split by
/// irreducibility, with isomorphism colors per quotient size.
pub fn build_table(max_frobenius: u64) -> Result<TableReport> {
    check_scope(max_frobenius)?;
    let mut rows: Vec<TableRow> = (1..=max_frobenius)
        .into_par_iter()
        .map(|f| {
            let (irreducible, non_irreducible) = entries_with_frobenius(f)?.into_iter().partition(|e| e.irreducible);
            Ok(TableRow {
                frobenius: f,
                irreducible,
                non_irreducible,
            })
        })
        .collect::<Result<_>>()?;
    let mut buckets: BTreeMap<usize, Vec<Option<ReesQuotient>>> = BTreeMap::new();
    for row in &mut rows {
        for e in row.irreducible.iter_mut().chain(row.non_irreducible.iter_mut()) {
            let bucket = buckets.entry(e.quotient_size).or_default();
            e.color = match bucket.iter().position(|rep| isomorphic(rep.as_ref(), e.quotient.as_ref())) {
                Some(i) => i,
                None => {
                    bucket.push(e.quotient.clone());
                    bucket.len() - 1
                }
            };
        }
    }
    Ok(TableReport { max_frobenius, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeClassCheck {
    pub holds: bool,
    /// The first pair where isomorphism and equal `(size, class)` disagree.
    pub failing_pair: Option<(String, String)>,
}

/// Whether quotients in the report are isomorphic exactly when they share
/// size and nilpotency class.
pub fn verify_size_class_claim(report: &TableReport) -> SizeClassCheck {
    let entries: Vec<&TableEntry> = report.entries().collect();
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            let iso = a.quotient_size == b.quotient_size && a.color == b.color;
            let same = a.quotient_size == b.quotient_size && a.nilpotency_class == b.nilpotency_class;
            if iso != same {
                return SizeClassCheck {
                    holds: false,
                    failing_pair: Some((a.notation.clone(), b.notation.clone())),
                };
            }
        }
    }
    SizeClassCheck {
        holds: true,
        failing_pair: None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub max_frobenius: u64,
    pub symmetric: Vec<String>,
    /// Unordered pairs of distinct symmetric semigroups.
    pub pairs: usize,
    /// Pairs whose quotients share every cheap invariant and were tested.
    pub isomorphism_tests: usize,
    pub collisions: Vec<(String, String)>,
}

/// Pairwise isomorphism tests among the conductor-cut quotients of all
/// symmetric semigroups with Frobenius number at most `max_frobenius`.
pub fn scan_conjecture_symmetric(max_frobenius: u64) -> Result<ScanReport> {
    check_scope(max_frobenius)?;
    let mut symmetric: Vec<(NumericalSemigroup, Option<ReesQuotient>)> = Vec::new();
    for f in (1..=max_frobenius).step_by(2) {
        for s in enumerate_by_frobenius(f)? {
            if s.is_symmetric()? {
                let q = conductor_quotient(&s);
                symmetric.push((s, q));
            }
        }
    }
    let invariants: Vec<(usize, usize, usize)> = symmetric
        .iter()
        .map(|(_, q)| match q {
            Some(q) => {
                let t = q.table();
                (q.len(), nilpotency_class(t).unwrap(), minimal_generating_system(t).len())
            }
            None => (1, 1, 0),
        })
        .collect();
    let n = symmetric.len();
    let candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| invariants[i] == invariants[j])
        .collect();
    let collisions: Vec<(String, String)> = candidates
        .par_iter()
        .filter(|&&(i, j)| isomorphic(symmetric[i].1.as_ref(), symmetric[j].1.as_ref()))
        .map(|&(i, j)| (symmetric[i].0.to_string(), symmetric[j].0.to_string()))
        .collect();
    Ok(ScanReport {
        max_frobenius,
        symmetric: symmetric.iter().map(|(s, _)| s.to_string()).collect(),
        pairs: n * n.saturating_sub(1) / 2,
        isomorphism_tests: candidates.len(),
        collisions,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub semigroup: String,
    pub frobenius: u64,
    pub quotient_size: usize,
    pub quotient_generators: usize,
    pub nilpotency_class: usize,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub target: String,
    pub quotient_size: usize,
    pub quotient_generators: usize,
    pub nilpotency_class: usize,
    pub candidates: Vec<CandidateReport>,
    /// No irreducible semigroup has a conductor-cut quotient isomorphic to
    /// the target's.
    pub no_irreducible_realization: bool,
}

/// Compares the conductor cut of `⟨4,11,13,18⟩` with those of every
/// irreducible semigroup having the same number of small elements.
pub fn verify_non_irreducible_counterexample() -> Result<CounterexampleReport> {
    let target_semigroup = NumericalSemigroup::from_generators(&[4, 11, 13, 18])?;
    let target = ReesQuotient::at_conductor(&target_semigroup)?;
    let size = target.len();
    // Irreducible semigroups with n small elements have Frobenius 2n-1 or 2n.
    let frobenius = [2 * size as u64 - 1, 2 * size as u64];
    let mut candidates = Vec::new();
    for f in frobenius {
        for s in enumerate_by_frobenius(f)? {
            if !s.is_irreducible()? || s.small_elements().len() != size {
                continue;
            }
            let q = ReesQuotient::at_conductor(&s)?;
            candidates.push(CandidateReport {
                semigroup: s.to_string(),
                frobenius: f,
                quotient_size: q.len(),
                quotient_generators: minimal_generating_system(q.table()).len(),
                nilpotency_class: nilpotency_class(q.table())?,
                isomorphic: isomorphic(Some(&q), Some(&target)),
            });
        }
    }
    Ok(CounterexampleReport {
        target: target_semigroup.generator_notation(),
        quotient_size: size,
        quotient_generators: minimal_generating_system(target.table()).len(),
        nilpotency_class: nilpotency_class(target.table())?,
        no_irreducible_realization: candidates.iter().all(|c| !c.isomorphic),
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table() {
        let t = build_table(5).unwrap();
        let counts: Vec<(usize, usize)> = t.rows.iter().map(|r| (r.len(), r.irreducible.len())).collect();
        assert_eq!(counts, vec![(1, 1), (1, 1), (2, 1), (2, 1), (5, 2)]);
        assert_eq!(t.rows[0].irreducible[0].notation, "{2^>}");
        assert!(verify_size_class_claim(&build_table(1).unwrap()).holds);
        assert!(t.to_markdown().lines().nth(2).unwrap().starts_with("| 1 | {2^>} [1.0] |"));
    }

    #[test]
    fn scope_limit() {
        assert!(matches!(build_table(frobenius_limit() + 1), Err(Error::ResourceBound { .. })));
    }
}
