//! Ternary coalgebras `Δ(e_l) = Σ a^{rst}_l e_r⊗e_s⊗e_t`, stored at index
//! `(l, r, s, t)`, and the duality with ternary algebras.

use crate::algebra::{field_notes, judge, sweep_constants, TernaryAlgebra, Variant};
use crate::error::{dim_mismatch, Result};
use crate::field::FieldSpec;
use crate::morphisms::{push_forward, LinearMap};
use crate::report::{sweep, VerificationReport};
use crate::tensor::{DenseTensor4, Tensor, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryCoalgebra {
    coproduct: DenseTensor4,
}

impl TernaryCoalgebra {
    pub fn new(coproduct: DenseTensor4) -> Result<TernaryCoalgebra> {
        let [a, b, c, d] = coproduct.dims();
        if !(a == b && b == c && c == d) {
            return Err(dim_mismatch(format!("({a},{a},{a},{a})"), format!("{:?}", coproduct.dims())));
        }
        Ok(TernaryCoalgebra { coproduct })
    }

    pub fn zero(field: FieldSpec, dim: usize) -> TernaryCoalgebra {
        TernaryCoalgebra {
            coproduct: DenseTensor4::zeros(field, [dim; 4]),
        }
    }

    /// Builds a coalgebra from `((l, r, s, t), value)` integer entries.
    pub fn from_table(field: FieldSpec, dim: usize, table: &[([usize; 4], i64)]) -> Result<TernaryCoalgebra> {
        let mut t = DenseTensor4::zeros(field, [dim; 4]);
        for &(idx, v) in table {
            t.set(idx, field.from_i64(v))?;
        }
        TernaryCoalgebra::new(t)
    }

    pub fn dim(&self) -> usize {
        self.coproduct.dims()[0]
    }

    pub fn field(&self) -> FieldSpec {
        self.coproduct.field()
    }

    pub fn coproduct(&self) -> &DenseTensor4 {
        &self.coproduct
    }

    pub fn negated(&self) -> TernaryCoalgebra {
        TernaryCoalgebra {
            coproduct: self.coproduct.negated(),
        }
    }

    /// Re-reads every constant in another field.
    pub fn over(&self, field: FieldSpec) -> Result<TernaryCoalgebra> {
        let entries = self.coproduct.entries().iter().map(|s| field.reduce(s)).collect::<Result<_>>()?;
        TernaryCoalgebra::new(DenseTensor4::from_entries(field, self.coproduct.dims(), entries)?)
    }

    /// `Δ(e_l)` as a rank-3 tensor.
    pub fn coproduct_of_basis(&self, l: usize) -> Tensor {
        let n = self.dim();
        let mut out = Tensor::zeros(self.field(), &[n; 3]);
        for r in 0..n {
            for s in 0..n {
                for (t, v) in self.coproduct.fiber(l, r, s).iter().enumerate() {
                    if !v.is_zero() {
                        *out.get_mut(&[r, s, t]) = v.clone();
                    }
                }
            }
        }
        out
    }

    /// `Δ(x) = Σ_l x_l Δ(e_l)`.
    pub fn apply(&self, x: &Vector) -> Result<Tensor> {
        let n = self.dim();
        x.check(self.field(), n)?;
        let mut out = Tensor::zeros(self.field(), &[n; 3]);
        for (l, xl) in x.support() {
            for r in 0..n {
                for s in 0..n {
                    for (t, v) in self.coproduct.fiber(l, r, s).iter().enumerate() {
                        out.get_mut(&[r, s, t]).add_product(xl, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Structure-constant verifier: the associativity identity applied to
    /// the coproduct constants read as a product on the dual space.
    ///
    /// A witness `(i,j,k,s,t,l)` names the coefficient of
    /// `e_i⊗e_j⊗e_k⊗e_s⊗e_t` in the iterated coproducts of `e_l`.
    pub fn check(&self, variant: Variant) -> VerificationReport {
        let name = format!("{variant} coassociativity");
        let dual = self.coproduct.permute_axes([1, 2, 3, 0]);
        let out = sweep_constants(&dual, variant, variant.name());
        field_notes(VerificationReport::from_outcome(name, out), self.field())
    }

    pub fn check_total_co(&self) -> VerificationReport {
        self.check(Variant::Total)
    }

    pub fn check_partial_co(&self) -> VerificationReport {
        self.check(Variant::Partial)
    }

    pub fn check_weak_co(&self) -> VerificationReport {
        self.check(Variant::Weak)
    }

    /// The three iterated coproducts `(Δ⊗id⊗id)Δ(e_l)`, `(id⊗Δ⊗id)Δ(e_l)`,
    /// `(id⊗id⊗Δ)Δ(e_l)`, computed by applying `Δ` to one tensor slot.
    pub fn iterated(&self, l: usize) -> [Tensor; 3] {
        let n = self.dim();
        let first = self.coproduct_of_basis(l);
        let mut out = [(); 3].map(|_| Tensor::zeros(self.field(), &[n; 5]));
        for (idx, w) in first.nonzeros() {
            for (slot, acc) in out.iter_mut().enumerate() {
                let inner = self.coproduct_of_basis(idx[slot]);
                for (sub, v) in inner.nonzeros() {
                    let mut at = Vec::with_capacity(5);
                    at.extend_from_slice(&idx[..slot]);
                    at.extend_from_slice(&sub);
                    at.extend_from_slice(&idx[slot + 1..]);
                    acc.get_mut(&at).add_product(w, v);
                }
            }
        }
        out
    }

    /// Slow path built from [`TernaryCoalgebra::iterated`].
    pub fn check_oracle(&self, variant: Variant) -> VerificationReport {
        let n = self.dim();
        let iterated: Vec<[Tensor; 3]> = (0..n).map(|l| self.iterated(l)).collect();
        let out = sweep(&[n; 5], |idx| {
            let pick = |which: usize| iterated.iter().map(|c| c[which].get(idx).expect("in range").clone()).collect();
            let middle = (variant != Variant::Weak).then(|| pick(1));
            judge(variant, variant.name(), idx, [Some(pick(0)), middle, Some(pick(2))])
        });
        let name = format!("{variant} coassociativity (oracle)");
        field_notes(VerificationReport::from_outcome(name, out), self.field())
    }
}

/// `<μ*(ξ), x⊗y⊗z> = <ξ, μ(x,y,z)>`: the coproduct constants of the result
/// are the product constants of `A`.
pub fn dualize_algebra(a: &TernaryAlgebra) -> TernaryCoalgebra {
    TernaryCoalgebra {
        coproduct: a.product().permute_axes([3, 0, 1, 2]),
    }
}

/// `<Δ*(ξ,η,γ), x> = <ξ⊗η⊗γ, Δ(x)>`.
pub fn dualize_coalgebra(c: &TernaryCoalgebra) -> TernaryAlgebra {
    TernaryAlgebra::new(c.coproduct().permute_axes([1, 2, 3, 0])).expect("cubical")
}

/// `Δ'(x) = (g⊗g⊗g) Δ(g⁻¹ x)`, making `g` a coalgebra isomorphism onto the
/// result.
pub fn transport_coalgebra(c: &TernaryCoalgebra, g: &LinearMap) -> Result<TernaryCoalgebra> {
    let n = c.dim();
    if g.rows() != n || g.cols() != n {
        return Err(dim_mismatch(format!("{n}x{n} map"), format!("{}x{}", g.rows(), g.cols())));
    }
    let h = g.inverse()?;
    let mut out = DenseTensor4::zeros(c.field(), [n; 4]);
    for l in 0..n {
        let img = push_forward(g, &c.apply(&h.column(l))?);
        for (idx, v) in img.nonzeros() {
            out.set([l, idx[0], idx[1], idx[2]], v.clone())?;
        }
    }
    TernaryCoalgebra::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_algebra, random_coalgebra};
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn ep2_coproduct_values() {
        let c = fixtures::ep2().coalgebra;
        let e = |i| Vector::basis(q(), 2, i);
        let d1 = c.apply(&e(0)).unwrap();
        assert_eq!(d1.to_string(), "e1⊗e1⊗e1");
        assert!(c.apply(&e(1)).unwrap().is_zero());
        assert!(c.apply(&Vector::zeros(q(), 2)).unwrap().is_zero());
    }

    #[test]
    fn dual_of_et1_is_totally_coassociative() {
        let c = dualize_algebra(&fixtures::et1());
        assert_eq!(c, fixtures::et1_dual());
        assert!(c.check_total_co().verdict);
    }

    #[test]
    fn ep1_dual() {
        let c = dualize_algebra(&fixtures::ep1());
        assert_eq!(c.coproduct_of_basis(1).to_string(), "e0⊗e0⊗e0");
        assert!(c.coproduct_of_basis(0).is_zero());
        assert!(c.check_partial_co().verdict);
    }

    #[test]
    fn ep2_is_partially_coassociative() {
        assert!(fixtures::ep2().coalgebra.check_partial_co().verdict);
    }

    #[test]
    fn zero_coalgebra_passes_all() {
        let c = TernaryCoalgebra::zero(q(), 2);
        for v in Variant::ALL {
            assert!(c.check(v).verdict);
            assert!(c.check_oracle(v).verdict);
        }
        assert!(dualize_coalgebra(&c).product().is_zero());
        assert!(dualize_algebra(&TernaryAlgebra::zero(q(), 2)).coproduct().is_zero());
    }

    #[test]
    fn ep2_dual_algebra() {
        let a = dualize_coalgebra(&fixtures::ep2().coalgebra);
        assert_eq!(a, TernaryAlgebra::from_table(q(), 2, &[([1, 1, 1, 0], 1)]).unwrap());
    }

    #[test]
    fn double_dual_of_et1() {
        let a = fixtures::et1();
        assert_eq!(dualize_coalgebra(&dualize_algebra(&a)), a);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn duality_is_an_involution(seed in any::<u64>(), n in 0usize..4) {
            let a = random_algebra(q(), n, seed, 1);
            prop_assert_eq!(&dualize_coalgebra(&dualize_algebra(&a)), &a);
            let c = random_coalgebra(q(), n, seed, 1);
            prop_assert_eq!(&dualize_algebra(&dualize_coalgebra(&c)), &c);
        }

        #[test]
        fn variants_transfer(seed in any::<u64>(), n in 1usize..4, sparse in 0u32..4) {
            let f5 = FieldSpec::prime(5).unwrap();
            let a = random_algebra(f5, n, seed, sparse);
            let c = dualize_algebra(&a);
            for v in Variant::ALL {
                prop_assert_eq!(a.check(v).outcome(), c.check(v).outcome());
            }
        }

        #[test]
        fn fast_path_matches_oracle(seed in any::<u64>(), n in 1usize..4, sparse in 0u32..4) {
            let f3 = FieldSpec::prime(3).unwrap();
            let c = random_coalgebra(f3, n, seed, sparse);
            for v in Variant::ALL {
                prop_assert_eq!(c.check(v).outcome(), c.check_oracle(v).outcome());
            }
        }
    }
}
