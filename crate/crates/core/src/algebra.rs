//! Ternary algebras given by structure constants `c^l_{ijk}`, stored at
//! index `(i, j, k, l)` of a rank-4 tensor.

use std::fmt;
use std::str::FromStr;

use crate::error::{dim_mismatch, Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::morphisms::LinearMap;
use crate::report::{sweep, Relation, SweepOutcome, VerificationReport, Witness};
use crate::tensor::{DenseTensor4, Tensor, Vector};

/// Which associativity law a structure is expected to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// All three nestings of a five-argument composite agree.
    Total,
    /// The three nestings sum to zero.
    Partial,
    /// Only the outer-left and outer-right nestings agree.
    Weak,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Total, Variant::Partial, Variant::Weak];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Total => "total",
            Variant::Partial => "partial",
            Variant::Weak => "weak",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "total" => Ok(Variant::Total),
            "partial" => Ok(Variant::Partial),
            "weak" => Ok(Variant::Weak),
            other => Err(Error::UnsupportedVariant(other.to_string())),
        }
    }
}

pub(crate) const SMALL_CHAR_NOTE: &str =
    "small characteristic: the coefficient 3 in the partial identity degenerates over F_2 and F_3";

/// The three nested composites of five basis elements `(i,j,k,s,t)`, as
/// coefficient vectors over the output basis:
///
/// * `left   = μ(μ(e_i,e_j,e_k), e_s, e_t)`
/// * `middle = μ(e_i, μ(e_j,e_k,e_s), e_t)`
/// * `right  = μ(e_i, e_j, μ(e_k,e_s,e_t))`
///
/// Only the composites flagged in `want` are computed.
pub(crate) fn composites(c: &DenseTensor4, idx: &[usize], want: [bool; 3]) -> [Option<Vec<Scalar>>; 3] {
    let (i, j, k, s, t) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
    let n = c.dims()[3];
    let field = c.field();
    let contract = |inner: &[Scalar], outer: &dyn Fn(usize) -> usize| -> Vec<Scalar> {
        let mut acc = vec![field.zero(); n];
        for (r, w) in inner.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let fiber = {
                let o = outer(r);
                &c.entries()[o * n..o * n + n]
            };
            for (a, b) in acc.iter_mut().zip(fiber) {
                a.add_product(w, b);
            }
        }
        acc
    };
    // offsets of fibers (x,y,z) -> ((x*n + y)*n + z)
    let off = |x: usize, y: usize, z: usize| (x * n + y) * n + z;
    [
        want[0].then(|| contract(c.fiber(i, j, k), &|r| off(r, s, t))),
        want[1].then(|| contract(c.fiber(j, k, s), &|r| off(i, r, t))),
        want[2].then(|| contract(c.fiber(k, s, t), &|r| off(i, j, r))),
    ]
}

/// Compares the composites of one five-tuple under a variant and builds the
/// witness at the first failing output coordinate.
pub(crate) fn judge(variant: Variant, label: &str, idx: &[usize], vals: [Option<Vec<Scalar>>; 3]) -> Option<Witness> {
    let [left, middle, right] = vals;
    let left = left.expect("left composite is always computed");
    let right = right.expect("right composite is always computed");
    for l in 0..left.len() {
        let mut at = idx.to_vec();
        at.push(l);
        match variant {
            Variant::Total => {
                let m = &middle.as_ref().expect("middle composite")[l];
                if &left[l] != m || m != &right[l] {
                    return Some(
                        Witness::new(label, at, Relation::Equal)
                            .term("left", &left[l])
                            .term("middle", m)
                            .term("right", &right[l]),
                    );
                }
            }
            Variant::Weak => {
                if left[l] != right[l] {
                    return Some(
                        Witness::new(label, at, Relation::Equal)
                            .term("left", &left[l])
                            .term("right", &right[l]),
                    );
                }
            }
            Variant::Partial => {
                let m = &middle.as_ref().expect("middle composite")[l];
                let sum = &(&left[l] + m) + &right[l];
                if !sum.is_zero() {
                    return Some(
                        Witness::new(label, at, Relation::SumZero)
                            .term("left", &left[l])
                            .term("middle", m)
                            .term("right", &right[l])
                            .term("sum", sum),
                    );
                }
            }
        }
    }
    None
}

/// Structure-constant sweep of one associativity law over all `(i,j,k,s,t)`.
pub(crate) fn sweep_constants(c: &DenseTensor4, variant: Variant, label: &str) -> SweepOutcome {
    let n = c.dims()[0];
    let want = [true, variant != Variant::Weak, true];
    sweep(&[n; 5], |idx| judge(variant, label, idx, composites(c, idx, want)))
}

pub(crate) fn field_notes(report: VerificationReport, field: FieldSpec) -> VerificationReport {
    if field.is_small_characteristic() {
        report.with_note(SMALL_CHAR_NOTE)
    } else {
        report
    }
}

/// A ternary algebra `(A, μ)` with `μ(e_i, e_j, e_k) = Σ_l c^l_{ijk} e_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryAlgebra {
    product: DenseTensor4,
}

impl TernaryAlgebra {
    pub fn new(product: DenseTensor4) -> Result<TernaryAlgebra> {
        let [a, b, c, d] = product.dims();
        if !(a == b && b == c && c == d) {
            return Err(dim_mismatch(format!("({a},{a},{a},{a})"), format!("{:?}", product.dims())));
        }
        Ok(TernaryAlgebra { product })
    }

    pub fn zero(field: FieldSpec, dim: usize) -> TernaryAlgebra {
        TernaryAlgebra {
            product: DenseTensor4::zeros(field, [dim; 4]),
        }
    }

    /// Builds an algebra from `((i, j, k, l), value)` integer entries.
    pub fn from_table(field: FieldSpec, dim: usize, table: &[([usize; 4], i64)]) -> Result<TernaryAlgebra> {
        let mut t = DenseTensor4::zeros(field, [dim; 4]);
        for &(idx, v) in table {
            t.set(idx, field.from_i64(v))?;
        }
        TernaryAlgebra::new(t)
    }

    pub fn dim(&self) -> usize {
        self.product.dims()[0]
    }

    pub fn field(&self) -> FieldSpec {
        self.product.field()
    }

    pub fn product(&self) -> &DenseTensor4 {
        &self.product
    }

    pub fn into_product(self) -> DenseTensor4 {
        self.product
    }

    /// Re-reads every constant in another field.
    pub fn over(&self, field: FieldSpec) -> Result<TernaryAlgebra> {
        let entries = self.product.entries().iter().map(|s| field.reduce(s)).collect::<Result<_>>()?;
        TernaryAlgebra::new(DenseTensor4::from_entries(field, self.product.dims(), entries)?)
    }

    /// `c^l_{ijk}`.
    pub fn constant(&self, i: usize, j: usize, k: usize, l: usize) -> Result<&Scalar> {
        self.product.get([i, j, k, l])
    }

    /// `μ(e_i, e_j, e_k)`.
    pub fn basis_product(&self, i: usize, j: usize, k: usize) -> Vector {
        Vector::from_entries(self.field(), self.product.fiber(i, j, k).to_vec()).expect("same field")
    }

    /// `μ(x, y, z)`, extended trilinearly from the basis table.
    pub fn evaluate(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        let n = self.dim();
        for v in [x, y, z] {
            v.check(self.field(), n)?;
        }
        let mut out = Vector::zeros(self.field(), n);
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                let xy = xi * yj;
                for (k, zk) in z.support() {
                    let w = &xy * zk;
                    for (l, c) in self.product.fiber(i, j, k).iter().enumerate() {
                        out.entry_mut(l).add_product(&w, c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> TernaryAlgebra {
        TernaryAlgebra {
            product: self.product.negated(),
        }
    }

    /// Structure-constant verifier for the given law.
    pub fn check(&self, variant: Variant) -> VerificationReport {
        let name = format!("{variant} associativity");
        let out = sweep_constants(&self.product, variant, variant.name());
        field_notes(VerificationReport::from_outcome(name, out), self.field())
    }

    pub fn check_total(&self) -> VerificationReport {
        self.check(Variant::Total)
    }

    pub fn check_partial(&self) -> VerificationReport {
        self.check(Variant::Partial)
    }

    pub fn check_weak(&self) -> VerificationReport {
        self.check(Variant::Weak)
    }

    /// Slow path: evaluates the five-argument composites with
    /// [`TernaryAlgebra::evaluate`] on every basis tuple.
    pub fn check_oracle(&self, variant: Variant) -> VerificationReport {
        let n = self.dim();
        let f = self.field();
        let e = |i: usize| Vector::basis(f, n, i);
        let mu = |x: &Vector, y: &Vector, z: &Vector| self.evaluate(x, y, z).expect("dims checked");
        let out = sweep(&[n; 5], |idx| {
            let [a, b, c, d, g] = [0, 1, 2, 3, 4].map(|p| e(idx[p]));
            let left = mu(&mu(&a, &b, &c), &d, &g).entries().to_vec();
            let middle = (variant != Variant::Weak).then(|| mu(&a, &mu(&b, &c, &d), &g).entries().to_vec());
            let right = mu(&a, &b, &mu(&c, &d, &g)).entries().to_vec();
            judge(variant, variant.name(), idx, [Some(left), middle, Some(right)])
        });
        let name = format!("{variant} associativity (oracle)");
        field_notes(VerificationReport::from_outcome(name, out), f)
    }

    /// The operator `L(x,y)`, `M(x,y)` or `R(x,y)` as a matrix on `A`.
    pub fn operator(&self, kind: OperatorKind, x: &Vector, y: &Vector) -> Result<MultiplicationOperator> {
        let n = self.dim();
        x.check(self.field(), n)?;
        y.check(self.field(), n)?;
        let mut cols = Vec::with_capacity(n);
        for z in 0..n {
            let ez = Vector::basis(self.field(), n, z);
            let img = match kind {
                OperatorKind::Left => self.evaluate(x, y, &ez)?,
                OperatorKind::Middle => self.evaluate(x, &ez, y)?,
                OperatorKind::Right => self.evaluate(&ez, x, y)?,
            };
            cols.push(img);
        }
        Ok(MultiplicationOperator {
            kind,
            map: LinearMap::from_columns(self.field(), n, &cols),
        })
    }
}

/// Slot of the free argument in a multiplication operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// `z ↦ μ(x, y, z)`
    Left,
    /// `z ↦ μ(x, z, y)`
    Middle,
    /// `z ↦ μ(z, x, y)`
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationOperator {
    pub kind: OperatorKind,
    pub map: LinearMap,
}

impl MultiplicationOperator {
    pub fn apply(&self, z: &Vector) -> Result<Vector> {
        self.map.apply(z)
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

/// A bilinear algebra `(A, m)` with `m(e_i, e_j) = Σ_k b^k_{ij} e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryAlgebra {
    table: Tensor,
}

impl BinaryAlgebra {
    pub fn new(table: Tensor) -> Result<BinaryAlgebra> {
        let d = table.dims();
        if d.len() != 3 || d[0] != d[1] || d[1] != d[2] {
            return Err(dim_mismatch("(n,n,n)", format!("{d:?}")));
        }
        Ok(BinaryAlgebra { table })
    }

    pub fn from_table(field: FieldSpec, dim: usize, table: &[([usize; 3], i64)]) -> Result<BinaryAlgebra> {
        let mut t = Tensor::zeros(field, &[dim; 3]);
        for &(idx, v) in table {
            t.get(&idx)?;
            *t.get_mut(&idx) = field.from_i64(v);
        }
        BinaryAlgebra::new(t)
    }

    pub fn dim(&self) -> usize {
        self.table.dims()[0]
    }

    pub fn field(&self) -> FieldSpec {
        self.table.field()
    }

    pub fn table(&self) -> &Tensor {
        &self.table
    }

    fn at(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.table.get(&[i, j, k]).expect("in range")
    }

    /// `m(m(e_i,e_j),e_k) = m(e_i,m(e_j,e_k))` on all basis triples.
    pub fn check_associative(&self) -> VerificationReport {
        let n = self.dim();
        let f = self.field();
        let out = sweep(&[n; 3], |idx| {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            for l in 0..n {
                let mut lhs = f.zero();
                let mut rhs = f.zero();
                for r in 0..n {
                    lhs.add_product(self.at(i, j, r), self.at(r, k, l));
                    rhs.add_product(self.at(j, k, r), self.at(i, r, l));
                }
                if lhs != rhs {
                    return Some(
                        Witness::new("binary", vec![i, j, k, l], Relation::Equal)
                            .term("left", lhs)
                            .term("right", rhs),
                    );
                }
            }
            None
        });
        VerificationReport::from_outcome("binary associativity", out)
    }

    /// `μ(x, y, z) = m(m(x, y), z)`.
    pub fn induced(&self) -> TernaryAlgebra {
        let n = self.dim();
        let f = self.field();
        let mut c = DenseTensor4::zeros(f, [n; 4]);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = f.zero();
                        for r in 0..n {
                            acc.add_product(self.at(i, j, r), self.at(r, k, l));
                        }
                        c.set([i, j, k, l], acc).expect("in range");
                    }
                }
            }
        }
        TernaryAlgebra { product: c }
    }
}

/// Ternary algebra induced by a binary product, with the binary
/// associativity report alongside.
pub fn induced_from_binary(b: &BinaryAlgebra) -> (TernaryAlgebra, VerificationReport) {
    (b.induced(), b.check_associative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::random_algebra;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn v(entries: &[i64]) -> Vector {
        Vector::from_i64(q(), entries)
    }

    #[test]
    fn et1_table_lookup() {
        let a = fixtures::et1();
        assert_eq!(a.constant(1, 1, 1, 0).unwrap(), &q().from_i64(1));
        assert_eq!(a.constant(1, 1, 1, 1).unwrap(), &q().from_i64(2));
    }

    #[test]
    fn et1_evaluation() {
        let a = fixtures::et1();
        assert_eq!(a.evaluate(&v(&[0, 1]), &v(&[0, 1]), &v(&[0, 1])).unwrap(), v(&[1, 2]));
        assert_eq!(a.evaluate(&v(&[1, 1]), &v(&[1, 0]), &v(&[1, 0])).unwrap(), v(&[1, 1]));
    }

    #[test]
    fn zero_algebra_evaluates_to_zero() {
        let (a4, _) = induced_from_binary(&fixtures::binary(4));
        assert!(a4.evaluate(&v(&[3, -1]), &v(&[1, 2]), &v(&[5, 5])).unwrap().is_zero());
    }

    #[test]
    fn evaluate_rejects_bad_dims() {
        let a = fixtures::et1();
        let short = v(&[1]);
        assert!(matches!(a.evaluate(&short, &short, &short), Err(Error::DimMismatch { .. })));
        let f5 = Vector::from_i64(FieldSpec::prime(5).unwrap(), &[1, 0]);
        assert!(matches!(a.evaluate(&f5, &f5, &f5), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn et1_laws() {
        let a = fixtures::et1();
        assert!(a.check_total().verdict);
        assert!(a.check_weak().verdict);
        let p = a.check_partial();
        assert!(!p.verdict);
        let w = p.witness.unwrap();
        assert_eq!(w.index, vec![0; 6]);
        assert!(w.terms.contains(&("sum".to_string(), "3".to_string())));
    }

    #[test]
    fn ep1_is_partial() {
        assert!(fixtures::ep1().check_partial().verdict);
    }

    #[test]
    fn zero_algebra_passes_everything() {
        let z = TernaryAlgebra::zero(q(), 3);
        for v in Variant::ALL {
            assert!(z.check(v).verdict);
        }
    }

    #[test]
    fn dimension_zero_is_vacuous() {
        let z = TernaryAlgebra::zero(q(), 0);
        for v in Variant::ALL {
            let r = z.check(v);
            assert!(r.verdict);
            assert_eq!(r.checked, 0);
        }
    }

    #[test]
    fn one_dimensional_products() {
        for c in -3..=3 {
            let a = TernaryAlgebra::from_table(q(), 1, &[([0, 0, 0, 0], c)]).unwrap();
            assert!(a.check_total().verdict);
            assert!(a.check_weak().verdict);
            assert_eq!(a.check_partial().verdict, c == 0);
        }
    }

    #[test]
    fn weak_but_not_total_over_f2() {
        // found by exhaustive search over all 2^16 products in dimension 2
        let a = fixtures::weak_not_total_f2();
        assert!(a.check_weak().verdict);
        assert!(!a.check_total().verdict);
        assert_eq!(a.check_oracle(Variant::Total).outcome(), a.check_total().outcome());
    }

    #[test]
    fn operators() {
        let a = fixtures::et1();
        let e = |i| Vector::basis(q(), 2, i);
        let l = a.operator(OperatorKind::Left, &e(0), &e(0)).unwrap();
        assert_eq!(l.apply(&e(1)).unwrap(), e(1));
        let m = a.operator(OperatorKind::Middle, &e(0), &e(1)).unwrap();
        assert_eq!(m.apply(&e(1)).unwrap(), v(&[1, 1]));
        let r = a.operator(OperatorKind::Right, &e(1), &e(0)).unwrap();
        assert_eq!(r.apply(&e(0)).unwrap(), a.basis_product(0, 1, 0));
        let z = TernaryAlgebra::zero(q(), 2);
        for kind in [OperatorKind::Left, OperatorKind::Middle, OperatorKind::Right] {
            assert!(z.operator(kind, &e(0), &e(1)).unwrap().is_zero());
        }
    }

    #[test]
    fn induced_tables() {
        let (a2, assoc) = induced_from_binary(&fixtures::binary(2));
        assert!(assoc.verdict);
        assert_eq!(a2, fixtures::induced_printed(2));
        let (a5, _) = induced_from_binary(&fixtures::binary(5));
        assert!(a5.product().is_zero());
        let (a3, _) = induced_from_binary(&fixtures::binary(3));
        assert_eq!(a3, TernaryAlgebra::from_table(q(), 2, &[([0, 0, 0, 0], 1)]).unwrap());
    }

    #[test]
    fn non_associative_binary_is_flagged() {
        // m(e1,e1) = e2, m(e2,e1) = e1: (e1e1)e1 = e1 but e1(e1e1) = 0
        let b = BinaryAlgebra::from_table(q(), 2, &[([0, 0, 1], 1), ([1, 0, 0], 1)]).unwrap();
        assert!(!b.check_associative().verdict);
    }

    #[test]
    fn small_characteristic_is_flagged() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = TernaryAlgebra::zero(f3, 1);
        assert!(a.check_partial().notes.iter().any(|n| n.contains("small characteristic")));
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(TernaryAlgebra::zero(f5, 1).check_partial().notes.is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fast_path_matches_oracle(seed in any::<u64>(), n in 1usize..4, sparse in 0u32..4) {
            let f5 = FieldSpec::prime(5).unwrap();
            let a = random_algebra(f5, n, seed, sparse);
            for v in Variant::ALL {
                prop_assert_eq!(a.check_oracle(v).outcome(), a.check(v).outcome());
            }
        }

        #[test]
        fn total_implies_weak(seed in any::<u64>(), n in 1usize..3) {
            let f2 = FieldSpec::prime(2).unwrap();
            let a = random_algebra(f2, n, seed, 2);
            if a.check_total().verdict {
                prop_assert!(a.check_weak().verdict);
            }
        }

        #[test]
        fn evaluation_is_trilinear(seed in any::<u64>(), xs in prop::collection::vec(-4i64..5, 9), s in -3i64..4) {
            let a = random_algebra(q(), 3, seed, 1);
            let (x, y, z) = (v(&xs[0..3]), v(&xs[3..6]), v(&xs[6..9]));
            let s = q().from_i64(s);
            let base = a.evaluate(&x, &y, &z).unwrap();
            prop_assert_eq!(a.evaluate(&x.scale(&s), &y, &z).unwrap(), base.scale(&s));
            prop_assert_eq!(a.evaluate(&x, &y.add(&z), &z).unwrap(), base.add(&a.evaluate(&x, &z, &z).unwrap()));
        }
    }
}
