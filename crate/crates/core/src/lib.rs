//! Exact verification of ternary (3-ary) algebras, coalgebras, trimodules,
//! matched pairs and infinitesimal bialgebras from their structure
//! constants.
//!
//! Scalars are exact: arbitrary-precision rationals or elements of a prime
//! field. Every verifier sweeps all basis instances of its identity and
//! reports the lexicographically smallest failure, independent of how many
//! threads run the sweep.
//!
//! ```
//! use ternary_core::{fixtures, Variant};
//!
//! let et1 = fixtures::et1();
//! assert!(et1.check(Variant::Total).verdict);
//! let partial = et1.check(Variant::Partial);
//! assert_eq!(partial.witness.unwrap().index, vec![0, 0, 0, 0, 0, 0]);
//! ```

pub mod algebra;
pub mod bialgebra;
pub mod coalgebra;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod matched_pair;
pub mod morphisms;
pub mod printed;
pub mod random;
pub mod report;
pub mod search;
pub mod tensor;
pub mod trimodule;

pub use algebra::{induced_from_binary, BinaryAlgebra, OperatorKind, TernaryAlgebra, Variant};
pub use bialgebra::{dual_bialgebra, is_bialgebra_equivalence, Engine, InfBialgebra};
pub use coalgebra::{dualize_algebra, dualize_coalgebra, TernaryCoalgebra};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matched_pair::{bicross_sum, check_matched_pair, self_dual_pair, MatchedPairData};
pub use morphisms::{is_algebra_morphism, is_coalgebra_morphism, iso_search, LinearMap};
pub use report::{with_workers, Relation, VerificationReport, Witness};
pub use search::{count_by_class, enumerate, EntrySpace, SearchSpec, Target};
pub use tensor::{DenseTensor4, Tensor, Vector};
pub use trimodule::{check_trimodule, dual_trimodule, regular_trimodule, semidirect_sum, ActionTriple, Regular, Trimodule};
