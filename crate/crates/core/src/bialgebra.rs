//! Infinitesimal bialgebras `(A, μ, Δ)` and the compatibility condition
//!
//! ```text
//! Δ μ(x,y,z) = (L(x,y)⊗id⊗id) Δ(z) + (id⊗M(x,z)⊗id) Δ(y) + (id⊗id⊗R(y,z)) Δ(x)
//! ```
//!
//! checked by three independent engines.

use crate::algebra::{OperatorKind, TernaryAlgebra, Variant};
use crate::coalgebra::{dualize_algebra, dualize_coalgebra, TernaryCoalgebra};
use crate::error::{dim_mismatch, Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::morphisms::{is_algebra_morphism, is_coalgebra_morphism, LinearMap};
use crate::report::{sweep, Relation, SweepOutcome, VerificationReport, Witness};
use crate::tensor::{multi_indices, Tensor, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfBialgebra {
    pub algebra: TernaryAlgebra,
    pub coalgebra: TernaryCoalgebra,
    pub variant: Variant,
}

/// Compatibility engine selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Operators `L, M, R` applied to one slot of `Δ` on basis triples.
    Operators,
    /// The structure-constant identity.
    Constants,
    /// The composite form with the exchange `σ⊗id⊗σ` on the five-fold tensor power.
    Sigma,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Operators, Engine::Constants, Engine::Sigma];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Operators => "operators",
            Engine::Constants => "constants",
            Engine::Sigma => "sigma",
        }
    }
}

fn witness_at(ijk: &[usize], rst: &[usize], lhs: &Scalar, rhs: &Scalar) -> Witness {
    let mut index = ijk.to_vec();
    index.extend_from_slice(rst);
    Witness::new("compatibility", index, Relation::Equal)
        .term("lhs", lhs)
        .term("rhs", rhs)
}

/// First `(r,s,t)` where two rank-3 tensors differ.
fn first_difference(ijk: &[usize], lhs: &Tensor, rhs: &Tensor) -> Option<Witness> {
    if lhs == rhs {
        return None;
    }
    multi_indices(lhs.dims()).find_map(|rst| {
        let (a, b) = (lhs.get(&rst).expect("in range"), rhs.get(&rst).expect("in range"));
        (a != b).then(|| witness_at(ijk, &rst, a, b))
    })
}

/// Applies `f` to one tensor slot of a rank-3 tensor.
fn apply_on_slot(f: &LinearMap, t: &Tensor, slot: usize) -> Tensor {
    let mut out = Tensor::zeros(t.field(), t.dims());
    for (idx, w) in t.nonzeros() {
        for r in 0..f.rows() {
            let c = f.get(r, idx[slot]);
            if c.is_zero() {
                continue;
            }
            let mut at = idx.clone();
            at[slot] = r;
            out.get_mut(&at).add_product(w, c);
        }
    }
    out
}

/// Rank-5 tensor with basis vectors at the given positions and a rank-3
/// tensor spliced in at `pos`.
fn splice(t: &Tensor, pos: usize, before: &[usize], after: &[usize]) -> Tensor {
    let n = t.dims()[0];
    let mut out = Tensor::zeros(t.field(), &[n; 5]);
    debug_assert_eq!(before.len(), pos);
    for (idx, w) in t.nonzeros() {
        let mut at = before.to_vec();
        at.extend(idx);
        at.extend_from_slice(after);
        *out.get_mut(&at) = w.clone();
    }
    out
}

/// Applies `μ` to slots `start..start+3` of a rank-5 tensor.
fn mu_on_slots(a: &TernaryAlgebra, t: &Tensor, start: usize) -> Tensor {
    let n = a.dim();
    let mut out = Tensor::zeros(t.field(), &[n; 3]);
    for (idx, w) in t.nonzeros() {
        let prod = a.product().fiber(idx[start], idx[start + 1], idx[start + 2]);
        let mut at: Vec<usize> = idx[..start].iter().chain(&idx[start + 3..]).copied().collect();
        at.insert(start, 0);
        for (l, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            at[start] = l;
            out.get_mut(&at).add_product(w, c);
        }
    }
    out
}

impl InfBialgebra {
    pub fn new(algebra: TernaryAlgebra, coalgebra: TernaryCoalgebra, variant: Variant) -> Result<InfBialgebra> {
        if algebra.field() != coalgebra.field() {
            return Err(Error::FieldMismatch {
                left: algebra.field(),
                right: coalgebra.field(),
            });
        }
        if algebra.dim() != coalgebra.dim() {
            return Err(dim_mismatch(algebra.dim(), coalgebra.dim()));
        }
        Ok(InfBialgebra {
            algebra,
            coalgebra,
            variant,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    fn operators_engine(&self) -> SweepOutcome {
        let (a, c) = (&self.algebra, &self.coalgebra);
        let n = self.dim();
        let e = |i| Vector::basis(self.field(), n, i);
        sweep(&[n; 3], |ijk| {
            let (x, y, z) = (e(ijk[0]), e(ijk[1]), e(ijk[2]));
            let lhs = c.apply(&a.evaluate(&x, &y, &z).expect("dims")).expect("dims");
            let l = a.operator(OperatorKind::Left, &x, &y).expect("dims").map;
            let m = a.operator(OperatorKind::Middle, &x, &z).expect("dims").map;
            let r = a.operator(OperatorKind::Right, &y, &z).expect("dims").map;
            let mut rhs = apply_on_slot(&l, &c.apply(&z).expect("dims"), 0);
            rhs.add_assign(&apply_on_slot(&m, &c.apply(&y).expect("dims"), 1));
            rhs.add_assign(&apply_on_slot(&r, &c.apply(&x).expect("dims"), 2));
            first_difference(ijk, &lhs, &rhs)
        })
    }

    fn constants_engine(&self) -> SweepOutcome {
        let (a, c) = (self.algebra.product(), self.coalgebra.coproduct());
        let n = self.dim();
        let f = self.field();
        sweep(&[n; 3], |ijk| {
            let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
            for rst in multi_indices(&[n; 3]) {
                let (r, s, t) = (rst[0], rst[1], rst[2]);
                let mut lhs = f.zero();
                let mut rhs = f.zero();
                for l in 0..n {
                    lhs.add_product(c.at(l, r, s, t), a.at(i, j, k, l));
                    rhs.add_product(c.at(k, l, s, t), a.at(i, j, l, r));
                    rhs.add_product(c.at(j, r, l, t), a.at(i, l, k, s));
                    rhs.add_product(c.at(i, r, s, l), a.at(l, j, k, t));
                }
                if lhs != rhs {
                    return Some(witness_at(ijk, &rst, &lhs, &rhs));
                }
            }
            None
        })
    }

    fn sigma_engine(&self) -> SweepOutcome {
        let (a, c) = (&self.algebra, &self.coalgebra);
        let n = self.dim();
        sweep(&[n; 3], |ijk| {
            let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
            let lhs = c.apply(&a.basis_product(i, j, k)).expect("dims");
            // (μ⊗id⊗id)(id⊗id⊗Δ)
            let mut rhs = mu_on_slots(a, &splice(&c.coproduct_of_basis(k), 2, &[i, j], &[]), 0);
            // (id⊗μ⊗id)(σ⊗id⊗σ)(id⊗Δ⊗id)
            let mid = splice(&c.coproduct_of_basis(j), 1, &[i], &[k]).swap_axes(0, 1).swap_axes(3, 4);
            rhs.add_assign(&mu_on_slots(a, &mid, 1));
            // (id⊗id⊗μ)(Δ⊗id⊗id)
            rhs.add_assign(&mu_on_slots(a, &splice(&c.coproduct_of_basis(i), 0, &[], &[j, k]), 2));
            first_difference(ijk, &lhs, &rhs)
        })
    }

    /// Runs one compatibility engine.
    pub fn compatibility_engine(&self, engine: Engine) -> VerificationReport {
        let out = match engine {
            Engine::Operators => self.operators_engine(),
            Engine::Constants => self.constants_engine(),
            Engine::Sigma => self.sigma_engine(),
        };
        VerificationReport::from_outcome(format!("compatibility ({})", engine.name()), out)
    }

    /// Runs all three engines. The verdict and witness are the shared ones;
    /// any difference between engines is listed in `disagreements`, and the
    /// constants engine's result is reported.
    pub fn check_compatibility(&self) -> VerificationReport {
        let reports: Vec<VerificationReport> = Engine::ALL.iter().map(|&e| self.compatibility_engine(e)).collect();
        let base = &reports[1];
        let mut out = VerificationReport::from_outcome(
            "compatibility",
            SweepOutcome {
                witness: base.witness.clone(),
                checked: base.checked,
            },
        );
        for r in &reports {
            if r.outcome() != base.outcome() {
                out.disagreements.push(format!(
                    "{} says {} at {:?}, {} says {} at {:?}",
                    r.name,
                    r.verdict,
                    r.witness.as_ref().map(|w| &w.index),
                    base.name,
                    base.verdict,
                    base.witness.as_ref().map(|w| &w.index),
                ));
            }
        }
        out
    }

    /// Like [`InfBialgebra::check_compatibility`] but turns an engine
    /// disagreement into an error.
    pub fn check_compatibility_strict(&self) -> Result<VerificationReport> {
        let r = self.check_compatibility();
        match r.disagreements.first() {
            Some(d) => Err(Error::EngineDisagreement(d.clone())),
            None => Ok(r),
        }
    }

    /// Algebra law, coalgebra law and compatibility for the variant.
    pub fn check_bialgebra(&self) -> VerificationReport {
        let parts = vec![
            self.algebra.check(self.variant),
            self.coalgebra.check(self.variant),
            self.check_compatibility(),
        ];
        VerificationReport::all_of(format!("{} infinitesimal bialgebra", self.variant), parts)
    }

    /// `(μ, Δ)`, `(-μ, Δ)`, `(μ, -Δ)`, `(-μ, -Δ)`.
    pub fn sign_variants(&self) -> [InfBialgebra; 4] {
        let (a, c) = (&self.algebra, &self.coalgebra);
        let make = |a: TernaryAlgebra, c: TernaryCoalgebra| InfBialgebra {
            algebra: a,
            coalgebra: c,
            variant: self.variant,
        };
        [
            make(a.clone(), c.clone()),
            make(a.negated(), c.clone()),
            make(a.clone(), c.negated()),
            make(a.negated(), c.negated()),
        ]
    }

    /// `(A*, Δ*, μ*)`.
    pub fn dual(&self) -> InfBialgebra {
        InfBialgebra {
            algebra: dualize_coalgebra(&self.coalgebra),
            coalgebra: dualize_algebra(&self.algebra),
            variant: self.variant,
        }
    }

    pub fn over(&self, field: FieldSpec) -> Result<InfBialgebra> {
        InfBialgebra::new(self.algebra.over(field)?, self.coalgebra.over(field)?, self.variant)
    }
}

pub fn dual_bialgebra(b: &InfBialgebra) -> InfBialgebra {
    b.dual()
}

/// An invertible `f` that is both an algebra and a coalgebra morphism.
pub fn is_bialgebra_equivalence(f: &LinearMap, b1: &InfBialgebra, b2: &InfBialgebra) -> Result<VerificationReport> {
    if !f.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let parts = vec![
        is_algebra_morphism(f, &b1.algebra, &b2.algebra)?,
        is_coalgebra_morphism(f, &b1.coalgebra, &b2.coalgebra)?,
    ];
    Ok(VerificationReport::all_of("bialgebra equivalence", parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_algebra, random_bialgebra, random_coalgebra, random_invertible};
    use proptest::prelude::*;

    #[test]
    fn ep2_is_a_partial_bialgebra() {
        let b = fixtures::ep2();
        let r = b.check_bialgebra();
        assert!(r.verdict, "{r}");
        assert!(r.parts.iter().all(|p| p.verdict));
    }

    #[test]
    fn et2_parts() {
        // The algebra and coalgebra laws hold; compatibility does not (see the
        // acceptance suite for the analysis).
        let b = fixtures::et2();
        let r = b.check_bialgebra();
        assert!(r.parts[0].verdict);
        assert!(r.parts[1].verdict);
        let compat = &r.parts[2];
        assert!(!compat.verdict);
        assert!(compat.disagreements.is_empty());
        assert_eq!(compat.witness.as_ref().unwrap().index, vec![0; 6]);
    }

    #[test]
    fn zero_coproduct_is_compatible() {
        let q = FieldSpec::Rational;
        let b = InfBialgebra::new(fixtures::et1(), TernaryCoalgebra::zero(q, 2), Variant::Total).unwrap();
        assert!(b.check_compatibility().verdict);
    }

    #[test]
    fn mixed_pair_engines_agree() {
        let b = InfBialgebra::new(fixtures::et1(), fixtures::ep2().coalgebra, Variant::Total).unwrap();
        let r = b.check_compatibility();
        assert!(r.disagreements.is_empty());
        assert_eq!(r.verdict, b.compatibility_engine(Engine::Operators).verdict);
    }

    #[test]
    fn ep2_signs_and_dual() {
        let b = fixtures::ep2();
        for v in b.sign_variants() {
            assert!(v.check_bialgebra().verdict);
        }
        let d = b.dual();
        assert_eq!(d, fixtures::ep2_dual());
        assert!(d.check_bialgebra().verdict);
        assert_eq!(d.dual(), b);
    }

    #[test]
    fn zero_bialgebra_signs_coincide() {
        let q = FieldSpec::Rational;
        let z = InfBialgebra::new(TernaryAlgebra::zero(q, 2), TernaryCoalgebra::zero(q, 2), Variant::Partial).unwrap();
        let v = z.sign_variants();
        assert!(v.iter().all(|x| x == &z && x.check_bialgebra().verdict));
    }

    #[test]
    fn et2_dual_swaps_roles() {
        let b = fixtures::et2();
        let d = b.dual();
        assert_eq!(d.algebra, b.algebra);
        assert_eq!(d.coalgebra, b.coalgebra);
    }

    #[test]
    fn swap_equivalence() {
        let (b1, b2) = fixtures::swap_pair();
        let f = fixtures::swap_map();
        assert!(is_bialgebra_equivalence(&f, &b1, &b2).unwrap().verdict);
        assert!(!is_bialgebra_equivalence(&f, &b1, &b1).unwrap().verdict);
        let id = LinearMap::identity(FieldSpec::Rational, 2);
        assert!(is_bialgebra_equivalence(&id, &b1, &b1).unwrap().verdict);
        let singular = LinearMap::zero(FieldSpec::Rational, 2, 2);
        assert!(matches!(is_bialgebra_equivalence(&singular, &b1, &b2), Err(Error::NotInvertible)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn engines_agree(seed in any::<u64>(), n in 1usize..4, sparse in 0u32..5) {
            let f3 = FieldSpec::prime(3).unwrap();
            let b = random_bialgebra(f3, n, seed, sparse, Variant::Total);
            let reports: Vec<_> = Engine::ALL.iter().map(|&e| b.compatibility_engine(e)).collect();
            prop_assert_eq!(reports[0].outcome(), reports[1].outcome());
            prop_assert_eq!(reports[1].outcome(), reports[2].outcome());
        }

        #[test]
        fn duality_preserves_verdicts(seed in any::<u64>(), n in 1usize..3, v in 0usize..3) {
            let f2 = FieldSpec::prime(2).unwrap();
            let b = random_bialgebra(f2, n, seed, 3, Variant::ALL[v]);
            let d = b.dual();
            prop_assert_eq!(b.check_bialgebra().verdict, d.check_bialgebra().verdict);
            prop_assert_eq!(b.check_compatibility().verdict, d.check_compatibility().verdict);
        }

        #[test]
        fn signs_preserve_passing(seed in any::<u64>()) {
            // dense random pairs rarely pass; a zero coproduct always satisfies
            // the compatibility, so pair random algebras with sparse coproducts
            let f3 = FieldSpec::prime(3).unwrap();
            let b = InfBialgebra::new(random_algebra(f3, 2, seed, 4), random_coalgebra(f3, 2, seed ^ 1, 6), Variant::Weak).unwrap();
            if b.check_bialgebra().verdict {
                for s in b.sign_variants() {
                    prop_assert!(s.check_bialgebra().verdict);
                }
            }
        }

        #[test]
        fn equivalence_transports_verdicts(seed in any::<u64>(), n in 1usize..3) {
            let f5 = FieldSpec::prime(5).unwrap();
            let b1 = random_bialgebra(f5, n, seed, 2, Variant::Total);
            let g = random_invertible(f5, n, seed ^ 3);
            let b2 = InfBialgebra::new(
                crate::morphisms::transport_algebra(&b1.algebra, &g).unwrap(),
                crate::coalgebra::transport_coalgebra(&b1.coalgebra, &g).unwrap(),
                Variant::Total,
            ).unwrap();
            prop_assert!(is_bialgebra_equivalence(&g, &b1, &b2).unwrap().verdict);
            prop_assert_eq!(b1.check_bialgebra().verdict, b2.check_bialgebra().verdict);
        }
    }
}
