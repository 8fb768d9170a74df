//! Verification reports and the deterministic parallel sweep behind every
//! verifier.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::tensor::unflatten;

/// How the terms of a witness relate when the identity holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// All terms should be equal.
    Equal,
    /// The terms should sum to zero.
    SumZero,
}

/// A failing identity instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Which identity family failed.
    pub label: String,
    /// 0-based multi-index of the failing instance.
    pub index: Vec<usize>,
    /// Named evaluated terms, e.g. the left and right sides.
    pub terms: Vec<(String, String)>,
    pub relation: Relation,
}

impl Witness {
    pub fn new(label: impl Into<String>, index: Vec<usize>, relation: Relation) -> Witness {
        Witness {
            label: label.into(),
            index,
            terms: Vec::new(),
            relation,
        }
    }

    pub fn term(mut self, name: impl Into<String>, value: impl ToString) -> Witness {
        self.terms.push((name.into(), value.to_string()));
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.index.iter().map(|i| i.to_string()).collect();
        write!(f, "{} fails at ({})", self.label, idx.join(","))?;
        let terms: Vec<String> = self.terms.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        if !terms.is_empty() {
            let sep = match self.relation {
                Relation::Equal => "; expected equal",
                Relation::SumZero => "; expected zero sum",
            };
            write!(f, ": {}{sep}", terms.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of a verifier.
///
/// `verdict` is true exactly when `witness` is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub verdict: bool,
    pub witness: Option<Witness>,
    /// Identity instances examined, counted in lexicographic order up to and
    /// including the witness. Independent of scheduling.
    pub checked: u64,
    pub notes: Vec<String>,
    /// Sub-reports for composite checks.
    pub parts: Vec<VerificationReport>,
    /// Disagreements between independent engines. Never auto-resolved.
    pub disagreements: Vec<String>,
}

impl VerificationReport {
    pub fn pass(name: impl Into<String>, checked: u64) -> VerificationReport {
        VerificationReport {
            name: name.into(),
            verdict: true,
            witness: None,
            checked,
            notes: Vec::new(),
            parts: Vec::new(),
            disagreements: Vec::new(),
        }
    }

    pub fn from_outcome(name: impl Into<String>, outcome: SweepOutcome) -> VerificationReport {
        VerificationReport {
            name: name.into(),
            verdict: outcome.witness.is_none(),
            witness: outcome.witness,
            checked: outcome.checked,
            notes: Vec::new(),
            parts: Vec::new(),
            disagreements: Vec::new(),
        }
    }

    /// Conjunction of sub-reports; the witness is the first failing part's.
    pub fn all_of(name: impl Into<String>, parts: Vec<VerificationReport>) -> VerificationReport {
        let witness = parts.iter().find(|p| !p.verdict).and_then(|p| p.witness.clone()).or_else(|| {
            // a failing part with no witness of its own (e.g. a precondition)
            parts
                .iter()
                .find(|p| !p.verdict)
                .map(|p| Witness::new(p.name.clone(), Vec::new(), Relation::Equal))
        });
        let disagreements = parts.iter().flat_map(|p| p.disagreements.iter().cloned()).collect();
        VerificationReport {
            name: name.into(),
            verdict: witness.is_none(),
            witness,
            checked: parts.iter().map(|p| p.checked).sum(),
            notes: Vec::new(),
            parts,
            disagreements,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> VerificationReport {
        self.notes.push(note.into());
        self
    }

    /// The parts of a report that must agree between independent engines.
    pub fn outcome(&self) -> (bool, Option<Witness>, u64) {
        (self.verdict, self.witness.clone(), self.checked)
    }

    pub fn has_disagreement(&self) -> bool {
        !self.disagreements.is_empty()
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let verdict = if self.verdict { "PASS" } else { "FAIL" };
        writeln!(f, "{pad}{}: {verdict} ({} checked)", self.name, self.checked)?;
        if let Some(w) = &self.witness {
            writeln!(f, "{pad}  witness: {w}")?;
        }
        for n in &self.notes {
            writeln!(f, "{pad}  note: {n}")?;
        }
        if depth == 0 {
            for d in &self.disagreements {
                writeln!(f, "{pad}  disagreement: {d}")?;
            }
        }
        for p in &self.parts {
            p.write_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// Result of a sweep: the smallest failing instance, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub witness: Option<Witness>,
    pub checked: u64,
}

/// Runs `check` on every multi-index of `dims` and returns the failure at
/// the lexicographically smallest index.
///
/// Work is split into chunks across the current rayon pool. A shared bound
/// lets chunks past an already-found failure stop early; the final answer is
/// a minimum, so it does not depend on scheduling.
pub fn sweep<F>(dims: &[usize], check: F) -> SweepOutcome
where
    F: Fn(&[usize]) -> Option<Witness> + Sync,
{
    let total: usize = dims.iter().product();
    if total == 0 {
        return SweepOutcome {
            witness: None,
            checked: 0,
        };
    }
    let workers = rayon::current_num_threads().max(1);
    let chunk = (total / (workers * 8)).clamp(1, 4096);
    let chunks = total.div_ceil(chunk);
    let best = AtomicUsize::new(usize::MAX);

    let found = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let start = c * chunk;
            let end = (start + chunk).min(total);
            for flat in start..end {
                if flat > best.load(Ordering::Relaxed) {
                    return None;
                }
                let idx = unflatten(dims, flat);
                if let Some(w) = check(&idx) {
                    best.fetch_min(flat, Ordering::Relaxed);
                    return Some((flat, w));
                }
            }
            None
        })
        .min_by_key(|(flat, _)| *flat);

    match found {
        Some((flat, w)) => SweepOutcome {
            witness: Some(w),
            checked: flat as u64 + 1,
        },
        None => SweepOutcome {
            witness: None,
            checked: total as u64,
        },
    }
}

/// Runs `f` inside a dedicated pool of `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build thread pool");
    pool.install(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_multiple(dims: &[usize], m: usize) -> SweepOutcome {
        sweep(dims, |idx| {
            let s: usize = idx.iter().sum();
            (s > 0 && s % m == 0).then(|| Witness::new("m", idx.to_vec(), Relation::Equal))
        })
    }

    #[test]
    fn empty_space_passes() {
        let out = sweep(&[3, 0, 2], |_| unreachable!());
        assert!(out.witness.is_none());
        assert_eq!(out.checked, 0);
    }

    #[test]
    fn smallest_failure_wins() {
        let out = first_multiple(&[5, 5, 5], 7);
        // (0,2,5) is out of range; lexicographic order reaches (0,3,4) first
        assert_eq!(out.witness.unwrap().index, vec![0, 3, 4]);
        assert_eq!(out.checked, 3 * 5 + 4 + 1);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let dims = [7, 7, 7, 7];
        let one = with_workers(1, || first_multiple(&dims, 23));
        for w in [2, 3, 8] {
            assert_eq!(with_workers(w, || first_multiple(&dims, 23)), one);
        }
    }

    #[test]
    fn conjunction_takes_first_failure() {
        let ok = VerificationReport::pass("a", 3);
        let bad = VerificationReport::from_outcome(
            "b",
            SweepOutcome {
                witness: Some(Witness::new("b", vec![1], Relation::SumZero)),
                checked: 2,
            },
        );
        let all = VerificationReport::all_of("both", vec![ok, bad]);
        assert!(!all.verdict);
        assert_eq!(all.witness.unwrap().index, vec![1]);
        assert_eq!(all.checked, 5);
    }
}
