//! Worked examples as exact tables, 0-based (`e_1` of the printed examples
//! is index 0 here).

use crate::algebra::{BinaryAlgebra, TernaryAlgebra, Variant};
use crate::bialgebra::InfBialgebra;
use crate::coalgebra::TernaryCoalgebra;
use crate::field::FieldSpec;
use crate::morphisms::LinearMap;

const Q: FieldSpec = FieldSpec::Rational;

/// Two-dimensional totally associative algebra.
pub fn et1() -> TernaryAlgebra {
    TernaryAlgebra::from_table(
        Q,
        2,
        &[
            ([0, 0, 0, 0], 1),
            ([0, 0, 1, 1], 1),
            ([0, 1, 0, 1], 1),
            ([1, 0, 0, 1], 1),
            ([1, 1, 0, 0], 1),
            ([1, 1, 0, 1], 1),
            ([1, 1, 1, 0], 1),
            ([1, 1, 1, 1], 2),
            ([0, 1, 1, 0], 1),
            ([0, 1, 1, 1], 1),
            ([1, 0, 1, 0], 1),
            ([1, 0, 1, 1], 1),
        ],
    )
    .expect("static table")
}

/// The coproduct `μ*` on the dual of [`et1`], as printed (records `(l,r,s,t)`).
pub fn et1_dual() -> TernaryCoalgebra {
    TernaryCoalgebra::from_table(Q, 2, ET1_DUAL_TABLE).expect("static table")
}

const ET1_DUAL_TABLE: &[([usize; 4], i64)] = &[
    ([0, 0, 0, 0], 1),
    ([0, 0, 1, 1], 1),
    ([0, 1, 1, 0], 1),
    ([0, 1, 1, 1], 1),
    ([0, 1, 0, 1], 1),
    ([1, 0, 0, 1], 1),
    ([1, 0, 1, 1], 1),
    ([1, 1, 0, 0], 1),
    ([1, 1, 1, 0], 1),
    ([1, 1, 0, 1], 1),
    ([1, 0, 1, 0], 1),
    ([1, 1, 1, 1], 2),
];

/// `μ(e_1,e_1,e_1) = e_2`, all else zero; partially associative.
pub fn ep1() -> TernaryAlgebra {
    TernaryAlgebra::from_table(Q, 2, &[([0, 0, 0, 1], 1)]).expect("static table")
}

/// `μ*(e_2*) = e_1*⊗e_1*⊗e_1*`, `μ*(e_1*) = 0`.
pub fn ep1_dual() -> TernaryCoalgebra {
    TernaryCoalgebra::from_table(Q, 2, &[([1, 0, 0, 0], 1)]).expect("static table")
}

/// Binary products of the two-dimensional associative algebras `A_1 … A_7`,
/// as `([i, j, k], v)`: `m(e_i, e_j)` has coefficient `v` on `e_k`.
pub fn binary(which: usize) -> BinaryAlgebra {
    let table: &[([usize; 3], i64)] = match which {
        1 => &[([0, 0, 0], 1), ([1, 1, 1], 1)],
        2 => &[([1, 1, 1], 1), ([0, 1, 0], 1), ([1, 0, 0], 1)],
        3 => &[([0, 0, 0], 1)],
        4 => &[],
        5 => &[([0, 0, 1], 1)],
        6 => &[([1, 0, 0], 1), ([1, 1, 1], 1)],
        7 => &[([0, 1, 0], 1), ([1, 1, 1], 1)],
        _ => panic!("A_{which} does not exist; expected 1..=7"),
    };
    BinaryAlgebra::from_table(Q, 2, table).expect("static table")
}

/// The ternary tables listed next to each `A_i`.
pub fn induced_printed(which: usize) -> TernaryAlgebra {
    let table: &[([usize; 4], i64)] = match which {
        1 => &[([0, 0, 0, 0], 1), ([1, 1, 1, 1], 1)],
        2 => &[([1, 1, 1, 1], 1), ([0, 1, 1, 0], 1), ([1, 0, 1, 0], 1), ([1, 1, 0, 0], 1)],
        3 => &[([0, 0, 0, 0], 1)],
        4 | 5 => &[],
        6 => &[([1, 1, 0, 0], 1), ([1, 1, 1, 1], 1)],
        7 => &[([0, 1, 1, 0], 1), ([1, 1, 1, 1], 1)],
        _ => panic!("A_{which} does not exist; expected 1..=7"),
    };
    TernaryAlgebra::from_table(Q, 2, table).expect("static table")
}

/// Partially associative infinitesimal bialgebra on [`ep1`] with
/// `Δ(e_1) = e_2⊗e_2⊗e_2`, `Δ(e_2) = 0`.
pub fn ep2() -> InfBialgebra {
    let delta = TernaryCoalgebra::from_table(Q, 2, &[([0, 1, 1, 1], 1)]).expect("static table");
    InfBialgebra::new(ep1(), delta, Variant::Partial).expect("matching dims")
}

/// The printed dual of [`ep2`].
pub fn ep2_dual() -> InfBialgebra {
    let alg = TernaryAlgebra::from_table(Q, 2, &[([1, 1, 1, 0], 1)]).expect("static table");
    let co = TernaryCoalgebra::from_table(Q, 2, &[([1, 0, 0, 0], 1)]).expect("static table");
    InfBialgebra::new(alg, co, Variant::Partial).expect("matching dims")
}

/// The printed totally associative example built on [`et1`]. Its coproduct
/// table coincides with [`et1_dual`].
pub fn et2() -> InfBialgebra {
    let delta = TernaryCoalgebra::from_table(Q, 2, ET1_DUAL_TABLE).expect("static table");
    InfBialgebra::new(et1(), delta, Variant::Total).expect("matching dims")
}

/// `(P, μ_1, Δ_1)` and `(P, μ_2, Δ_2)`, equivalent through [`swap_map`].
pub fn swap_pair() -> (InfBialgebra, InfBialgebra) {
    let mut b1 = ep2();
    b1.variant = Variant::Partial;
    let mu2 = TernaryAlgebra::from_table(Q, 2, &[([1, 1, 1, 0], 1)]).expect("static table");
    let delta2 = TernaryCoalgebra::from_table(Q, 2, &[([1, 0, 0, 0], 1)]).expect("static table");
    let b2 = InfBialgebra::new(mu2, delta2, Variant::Partial).expect("matching dims");
    (b1, b2)
}

/// `f(e_1) = e_2`, `f(e_2) = e_1`.
pub fn swap_map() -> LinearMap {
    LinearMap::permutation(Q, &[1, 0])
}

/// Over `F_2`: `μ(e_2,e_1,e_2) = e_2`, all else zero. Weak totally
/// associative but not totally associative; the first such product in
/// lexicographic order of the 2^16 candidates.
pub fn weak_not_total_f2() -> TernaryAlgebra {
    let f2 = FieldSpec::prime(2).expect("2 is prime");
    TernaryAlgebra::from_table(f2, 2, &[([1, 0, 1, 1], 1)]).expect("static table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::induced_from_binary;

    #[test]
    fn binary_examples_are_associative_and_match() {
        for i in 1..=7 {
            let (t, assoc) = induced_from_binary(&binary(i));
            assert!(assoc.verdict, "A_{i}");
            assert_eq!(t, induced_printed(i), "A_{i}");
            assert!(t.check_total().verdict, "A_{i}");
        }
    }

    #[test]
    fn et2_coproduct_equals_et1_product_read_dually() {
        assert_eq!(et2().coalgebra, crate::coalgebra::dualize_algebra(&et1()));
    }
}
