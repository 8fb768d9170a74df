//! Seeded generators for fuzzing. Every generator is a pure function of its
//! seed (ChaCha8), so runs are reproducible across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{TernaryAlgebra, Variant};
use crate::bialgebra::InfBialgebra;
use crate::coalgebra::TernaryCoalgebra;
use crate::field::{FieldSpec, Scalar};
use crate::morphisms::LinearMap;
use crate::tensor::DenseTensor4;
use crate::trimodule::ActionTriple;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random scalar that is zero with probability at least
/// `sparsity / (sparsity + 1)`. Rationals are small fractions.
pub fn random_scalar(field: FieldSpec, rng: &mut impl Rng, sparsity: u32) -> Scalar {
    if sparsity > 0 && rng.gen_range(0..=sparsity) != 0 {
        return field.zero();
    }
    match field {
        FieldSpec::Prime(p) => field.element(rng.gen_range(0..p as u64)),
        FieldSpec::Rational => {
            let num = rng.gen_range(-3i64..=3);
            let den = if rng.gen_bool(0.2) { rng.gen_range(2i64..=3) } else { 1 };
            field.from_ratio(num, den).expect("nonzero denominator")
        }
    }
}

pub fn random_tensor4(field: FieldSpec, dims: [usize; 4], rng: &mut impl Rng, sparsity: u32) -> DenseTensor4 {
    let n: usize = dims.iter().product();
    let entries = (0..n).map(|_| random_scalar(field, rng, sparsity)).collect();
    DenseTensor4::from_entries(field, dims, entries).expect("sized")
}

pub fn random_algebra(field: FieldSpec, n: usize, seed: u64, sparsity: u32) -> TernaryAlgebra {
    TernaryAlgebra::new(random_tensor4(field, [n; 4], &mut rng(seed), sparsity)).expect("cubical")
}

pub fn random_coalgebra(field: FieldSpec, n: usize, seed: u64, sparsity: u32) -> TernaryCoalgebra {
    TernaryCoalgebra::new(random_tensor4(field, [n; 4], &mut rng(seed ^ 0xc0a1), sparsity)).expect("cubical")
}

pub fn random_bialgebra(field: FieldSpec, n: usize, seed: u64, sparsity: u32, variant: Variant) -> InfBialgebra {
    let mut r = rng(seed);
    let a = TernaryAlgebra::new(random_tensor4(field, [n; 4], &mut r, sparsity)).expect("cubical");
    let c = TernaryCoalgebra::new(random_tensor4(field, [n; 4], &mut r, sparsity)).expect("cubical");
    InfBialgebra::new(a, c, variant).expect("matching")
}

/// A random invertible `n × n` matrix (rejection sampling).
pub fn random_invertible(field: FieldSpec, n: usize, seed: u64) -> LinearMap {
    let mut r = rng(seed);
    loop {
        let entries = (0..n * n).map(|_| random_scalar(field, &mut r, 0)).collect();
        let m = LinearMap::new(field, n, n, entries).expect("sized");
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random actions of an `n`-dimensional algebra on an `m`-dimensional module.
pub fn random_actions(field: FieldSpec, n: usize, m: usize, rng: &mut impl Rng, sparsity: u32) -> ActionTriple {
    let dims = [n, n, m, m];
    ActionTriple::new(
        random_tensor4(field, dims, rng, sparsity),
        random_tensor4(field, dims, rng, sparsity),
        random_tensor4(field, dims, rng, sparsity),
    )
    .expect("consistent dims")
}
