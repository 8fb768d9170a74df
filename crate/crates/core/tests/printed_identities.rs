//! The printed trimodule and matched-pair identities, evaluated verbatim,
//! against the blocks of the sum product they expand.

use std::collections::BTreeMap;

use ternary_core::printed::{self, MATCHED_PARTIAL, MATCHED_TOTAL, TRIMODULE_PARTIAL, TRIMODULE_TOTAL};
use ternary_core::random::{random_actions, random_algebra, rng};
use ternary_core::{FieldSpec, MatchedPairData, Trimodule, Variant};

fn pair(seed: u64, variant: Variant) -> MatchedPairData {
    let f5 = FieldSpec::prime(5).unwrap();
    let mut r = rng(seed);
    let sparsity = 4 + (seed % 3) as u32 * 2;
    MatchedPairData::new(
        random_algebra(f5, 2, seed, sparsity),
        random_algebra(f5, 2, seed + 7, sparsity),
        random_actions(f5, 2, 2, &mut r, sparsity),
        random_actions(f5, 2, 2, &mut r, sparsity),
        variant,
        false,
    )
    .unwrap()
}

fn families_disagreeing(variant: Variant, seeds: std::ops::Range<u64>) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for seed in seeds {
        for d in pair(seed, variant).check().unwrap().disagreements {
            let name = d.split_whitespace().nth(1).unwrap().trim_end_matches(':').to_string();
            *out.entry(name).or_default() += 1;
        }
    }
    out
}

#[test]
fn total_matched_pair_identities_agree_with_the_bicrossed_sum() {
    assert!(families_disagreeing(Variant::Total, 0..150).is_empty());
}

#[test]
fn partial_matched_pair_identities_disagree_only_in_bbaaa() {
    // the printed BBAAA sum has R_A(y,z)(b) where the total form and the
    // bicrossed product have R_A(x,y)(b)
    let d = families_disagreeing(Variant::Partial, 0..150);
    assert_eq!(d.keys().collect::<Vec<_>>(), vec!["BBAAA"], "{d:?}");
}

#[test]
fn trimodule_identities_agree_with_the_semidirect_sum() {
    let f5 = FieldSpec::prime(5).unwrap();
    for seed in 0..150u64 {
        for v in [Variant::Total, Variant::Partial] {
            let acts = random_actions(f5, 2, 2, &mut rng(seed), 4);
            let t = Trimodule::new(random_algebra(f5, 2, seed, 6), acts, v, true).unwrap();
            let r = t.check().unwrap();
            assert!(r.disagreements.is_empty(), "seed {seed}: {:?}", r.disagreements);
        }
    }
}

#[test]
fn only_noted_families_are_reread() {
    let reread = |fams: &[printed::Family]| -> Vec<&str> {
        fams.iter().filter(|f| f.printed != f.reading).map(|f| f.name).collect()
    };
    assert!(reread(&TRIMODULE_TOTAL).is_empty());
    assert!(reread(&TRIMODULE_PARTIAL).is_empty());
    assert!(reread(&MATCHED_TOTAL).is_empty());
    assert_eq!(reread(&MATCHED_PARTIAL), vec!["BAAAB"]);
    assert!(printed::parse(MATCHED_PARTIAL[8].printed).is_err());
    assert_eq!(reread(&printed::DUAL_TOTAL), vec!["dual MR", "dual ML"]);
}

#[test]
fn every_pattern_is_covered_once() {
    // the patterns with two or three B arguments
    let mut names: Vec<&str> = MATCHED_TOTAL.iter().map(|f| f.name).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), 20);
    for n in names {
        let bs = n.chars().filter(|&c| c == 'B').count();
        assert!((2..=3).contains(&bs), "{n}");
    }
}
