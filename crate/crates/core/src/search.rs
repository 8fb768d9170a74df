//! Exhaustive enumeration of small structure-constant tensors.
//!
//! Candidates are the flattened entry tuples in lexicographic order, the
//! first entry most significant, with field elements ordered `0 < 1 < … <
//! p−1` (or `−B < … < B` for bounded rational entries). Bialgebra
//! candidates list the product entries before the coproduct entries.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{TernaryAlgebra, Variant, SMALL_CHAR_NOTE};
use crate::bialgebra::InfBialgebra;
use crate::coalgebra::TernaryCoalgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::tensor::DenseTensor4;

pub const DEFAULT_GUARD: u128 = 100_000_000;

const BATCH: u128 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntrySpace {
    /// Every element of a prime field.
    Prime(FieldSpec),
    /// Rational integers in `[−B, B]`.
    Bounded(u32),
}

impl EntrySpace {
    pub fn field(self) -> FieldSpec {
        match self {
            EntrySpace::Prime(f) => f,
            EntrySpace::Bounded(_) => FieldSpec::Rational,
        }
    }

    fn size(self) -> u128 {
        match self {
            EntrySpace::Prime(f) => f.order().expect("prime field") as u128,
            EntrySpace::Bounded(b) => 2 * b as u128 + 1,
        }
    }

    fn value(self, digit: u128) -> Scalar {
        match self {
            EntrySpace::Prime(f) => f.element(digit as u64),
            EntrySpace::Bounded(b) => FieldSpec::Rational.from_i64(digit as i64 - b as i64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    TotalAlg,
    PartialAlg,
    WeakAlg,
    TotalCo,
    PartialCo,
    WeakCo,
    Bialgebra(Variant),
}

impl Target {
    fn tensors(self) -> u32 {
        match self {
            Target::Bialgebra(_) => 2,
            _ => 1,
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        let t = match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "totalalg" | "total" => Target::TotalAlg,
            "partialalg" | "partial" => Target::PartialAlg,
            "weakalg" | "weak" => Target::WeakAlg,
            "totalco" => Target::TotalCo,
            "partialco" => Target::PartialCo,
            "weakco" => Target::WeakCo,
            "totalbialgebra" | "bialgebra" => Target::Bialgebra(Variant::Total),
            "partialbialgebra" => Target::Bialgebra(Variant::Partial),
            "weakbialgebra" => Target::Bialgebra(Variant::Weak),
            _ => return Err(Error::UnsupportedVariant(format!("search target {s:?}"))),
        };
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub dim: usize,
    pub entries: EntrySpace,
    pub target: Target,
    pub limit: Option<usize>,
    pub guard: u128,
}

impl SearchSpec {
    pub fn new(dim: usize, entries: EntrySpace, target: Target) -> SearchSpec {
        SearchSpec {
            dim,
            entries,
            target,
            limit: None,
            guard: DEFAULT_GUARD,
        }
    }

    fn entry_count(&self) -> u32 {
        (self.dim as u32).pow(4) * self.target.tensors()
    }

    /// Number of candidates, or `None` if it overflows `u128`.
    pub fn space_size(&self) -> Option<u128> {
        self.entries.size().checked_pow(self.entry_count())
    }

    fn checked_size(&self) -> Result<u128> {
        if let EntrySpace::Prime(f) = self.entries {
            if !matches!(f, FieldSpec::Prime(_)) {
                return Err(Error::UnsupportedVariant("search over a non-prime field".into()));
            }
        }
        match self.space_size() {
            Some(s) if s <= self.guard => Ok(s),
            Some(s) => Err(Error::SearchSpaceTooLarge {
                size: s.to_string(),
                guard: self.guard,
            }),
            None => Err(Error::SearchSpaceTooLarge {
                size: format!("{}^{}", self.entries.size(), self.entry_count()),
                guard: self.guard,
            }),
        }
    }

    fn tensor_at(&self, index: u128, which: u32) -> DenseTensor4 {
        let q = self.entries.size();
        let len = self.dim.pow(4);
        let total = self.entry_count() as usize;
        // digit d of the flattened tuple has weight q^(total-1-d)
        let mut digits = vec![0u128; total];
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = rest % q;
            rest /= q;
        }
        let start = which as usize * len;
        let entries = digits[start..start + len].iter().map(|&d| self.entries.value(d)).collect();
        DenseTensor4::from_entries(self.entries.field(), [self.dim; 4], entries).expect("sized")
    }

    /// The candidate at a position of the enumeration.
    pub fn candidate(&self, index: u128) -> Structure {
        match self.target {
            Target::TotalAlg | Target::PartialAlg | Target::WeakAlg => {
                Structure::Algebra(TernaryAlgebra::new(self.tensor_at(index, 0)).expect("cubical"))
            }
            Target::TotalCo | Target::PartialCo | Target::WeakCo => {
                Structure::Coalgebra(TernaryCoalgebra::new(self.tensor_at(index, 0)).expect("cubical"))
            }
            Target::Bialgebra(v) => {
                let a = TernaryAlgebra::new(self.tensor_at(index, 0)).expect("cubical");
                let c = TernaryCoalgebra::new(self.tensor_at(index, 1)).expect("cubical");
                Structure::Bialgebra(InfBialgebra::new(a, c, v).expect("matching"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Algebra(TernaryAlgebra),
    Coalgebra(TernaryCoalgebra),
    Bialgebra(InfBialgebra),
}

impl Structure {
    pub fn passes(&self, target: Target) -> bool {
        match (self, target) {
            (Structure::Algebra(a), Target::TotalAlg) => a.check_total().verdict,
            (Structure::Algebra(a), Target::PartialAlg) => a.check_partial().verdict,
            (Structure::Algebra(a), Target::WeakAlg) => a.check_weak().verdict,
            (Structure::Coalgebra(c), Target::TotalCo) => c.check_total_co().verdict,
            (Structure::Coalgebra(c), Target::PartialCo) => c.check_partial_co().verdict,
            (Structure::Coalgebra(c), Target::WeakCo) => c.check_weak_co().verdict,
            (Structure::Bialgebra(b), Target::Bialgebra(_)) => b.check_bialgebra().verdict,
            _ => false,
        }
    }

    fn verdicts(&self) -> [bool; 3] {
        match self {
            Structure::Algebra(a) => Variant::ALL.map(|v| a.check(v).verdict),
            Structure::Coalgebra(c) => Variant::ALL.map(|v| c.check(v).verdict),
            Structure::Bialgebra(b) => Variant::ALL.map(|v| {
                let mut b = b.clone();
                b.variant = v;
                b.check_bialgebra().verdict
            }),
        }
    }
}

/// Candidates examined and hits found so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub space: u128,
    pub candidates: u128,
    pub hits: u64,
    pub notes: Vec<String>,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "examined {} of {} candidates, {} hits",
            self.candidates, self.space, self.hits
        )?;
        for n in &self.notes {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}

/// A lazy, deterministic stream of passing candidates.
pub struct Search {
    spec: SearchSpec,
    next: u128,
    buffer: std::collections::VecDeque<(u128, Structure)>,
    summary: Summary,
}

impl Search {
    pub fn summary(&self) -> &Summary {
        &self.summary
    }

    fn refill(&mut self) {
        while self.buffer.is_empty() && self.next < self.summary.space {
            let end = (self.next + BATCH).min(self.summary.space);
            let spec = &self.spec;
            let hits: Vec<(u128, Structure)> = (self.next..end)
                .into_par_iter()
                .filter_map(|i| {
                    let s = spec.candidate(i);
                    s.passes(spec.target).then_some((i, s))
                })
                .collect();
            self.buffer.extend(hits);
            self.next = end;
            if self.buffer.is_empty() {
                self.summary.candidates = end;
            }
        }
    }
}

impl Iterator for Search {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        if self.spec.limit.is_some_and(|l| self.summary.hits as usize >= l) {
            return None;
        }
        self.refill();
        match self.buffer.pop_front() {
            Some((i, s)) => {
                self.summary.candidates = i + 1;
                self.summary.hits += 1;
                Some(s)
            }
            None => {
                self.summary.candidates = self.summary.space;
                None
            }
        }
    }
}

fn notes(field: FieldSpec) -> Vec<String> {
    if field.is_small_characteristic() {
        vec![SMALL_CHAR_NOTE.to_string()]
    } else {
        Vec::new()
    }
}

pub fn enumerate(spec: SearchSpec) -> Result<Search> {
    let space = spec.checked_size()?;
    let field = spec.entries.field();
    Ok(Search {
        spec,
        next: 0,
        buffer: Default::default(),
        summary: Summary {
            space,
            candidates: 0,
            hits: 0,
            notes: notes(field),
        },
    })
}

/// Joint verdicts `(total, partial, weak)` over the whole space. The target
/// only selects the kind of structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCounts {
    pub candidates: u128,
    pub total: u64,
    pub partial: u64,
    pub weak: u64,
    pub joint: BTreeMap<[bool; 3], u64>,
    pub notes: Vec<String>,
}

impl ClassCounts {
    pub fn weak_not_total(&self) -> u64 {
        self.joint.iter().filter(|(k, _)| k[2] && !k[0]).map(|(_, v)| v).sum()
    }
}

impl fmt::Display for ClassCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "candidates: {}", self.candidates)?;
        writeln!(f, "total: {}", self.total)?;
        writeln!(f, "partial: {}", self.partial)?;
        writeln!(f, "weak: {}", self.weak)?;
        writeln!(f, "weak but not total: {}", self.weak_not_total())?;
        for (k, v) in &self.joint {
            let flag = |b: bool| if b { "yes" } else { "no" };
            writeln!(f, "total={} partial={} weak={}: {v}", flag(k[0]), flag(k[1]), flag(k[2]))?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

pub fn count_by_class(spec: &SearchSpec) -> Result<ClassCounts> {
    let space = spec.checked_size()?;
    let joint = (0..space)
        .into_par_iter()
        .map(|i| {
            let mut m = BTreeMap::new();
            m.insert(spec.candidate(i).verdicts(), 1u64);
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let count = |slot: usize| joint.iter().filter(|(k, _)| k[slot]).map(|(_, v)| v).sum();
    Ok(ClassCounts {
        candidates: space,
        total: count(0),
        partial: count(1),
        weak: count(2),
        joint,
        notes: notes(spec.entries.field()),
    })
}
