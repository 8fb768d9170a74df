//! Trimodules over ternary algebras, the semidirect sum `A ⋉ V`, regular
//! and dual trimodules.
//!
//! Actions are stored as `(n, n, m, m)` tensors indexed `[a, b, row, col]`:
//! `L(a,b)(e_col) = Σ_row T[a][b][row][col] e_row`, and likewise for `M` and
//! `R`. `L(a,b)(v)` is the action on `a⊗b⊗v`, `M(a,c)(v)` on `a⊗v⊗c` and
//! `R(b,c)(v)` on `v⊗b⊗c`.

use crate::algebra::{judge, TernaryAlgebra, Variant};
use crate::error::{dim_mismatch, Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::printed::{self, Context, Family, Side};
use crate::report::{sweep, SweepOutcome, VerificationReport};
use crate::tensor::{DenseTensor4, Vector};

/// Default bound on `n` and `m` for the six-argument middle-action axiom,
/// whose sweep costs `n⁶·m²` scalar comparisons.
pub const MIDDLE_AXIOM_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    Left,
    Middle,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionTriple {
    left: DenseTensor4,
    middle: DenseTensor4,
    right: DenseTensor4,
}

impl ActionTriple {
    pub fn new(left: DenseTensor4, middle: DenseTensor4, right: DenseTensor4) -> Result<ActionTriple> {
        let d = left.dims();
        if d[0] != d[1] || d[2] != d[3] {
            return Err(dim_mismatch("(n,n,m,m)", format!("{d:?}")));
        }
        for t in [&middle, &right] {
            if t.dims() != d {
                return Err(dim_mismatch(format!("{d:?}"), format!("{:?}", t.dims())));
            }
            if t.field() != left.field() {
                return Err(Error::FieldMismatch {
                    left: left.field(),
                    right: t.field(),
                });
            }
        }
        Ok(ActionTriple { left, middle, right })
    }

    pub fn zero(field: FieldSpec, n: usize, m: usize) -> ActionTriple {
        let z = DenseTensor4::zeros(field, [n, n, m, m]);
        ActionTriple {
            left: z.clone(),
            middle: z.clone(),
            right: z,
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.left.dims()[0]
    }

    pub fn module_dim(&self) -> usize {
        self.left.dims()[2]
    }

    pub fn field(&self) -> FieldSpec {
        self.left.field()
    }

    pub fn left(&self) -> &DenseTensor4 {
        &self.left
    }

    pub fn middle(&self) -> &DenseTensor4 {
        &self.middle
    }

    pub fn right(&self) -> &DenseTensor4 {
        &self.right
    }

    pub fn get(&self, kind: ActionKind) -> &DenseTensor4 {
        match kind {
            ActionKind::Left => &self.left,
            ActionKind::Middle => &self.middle,
            ActionKind::Right => &self.right,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.middle.is_zero() && self.right.is_zero()
    }

    /// `kind(p, q)(v)`.
    pub fn apply(&self, kind: ActionKind, p: &Vector, q: &Vector, v: &Vector) -> Result<Vector> {
        let (n, m) = (self.algebra_dim(), self.module_dim());
        p.check(self.field(), n)?;
        q.check(self.field(), n)?;
        v.check(self.field(), m)?;
        let t = self.get(kind);
        let mut out = Vector::zeros(self.field(), m);
        for (a, x) in p.support() {
            for (b, y) in q.support() {
                let xy = x * y;
                for (col, z) in v.support() {
                    let w = &xy * z;
                    for row in 0..m {
                        out.entry_mut(row).add_product(&w, t.at(a, b, row, col));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Each action replaced by its transpose on the module, i.e. the action
    /// on the dual space through the pairing.
    pub fn transposed(&self) -> ActionTriple {
        let t = |x: &DenseTensor4| x.permute_axes([0, 1, 3, 2]);
        ActionTriple {
            left: t(&self.left),
            middle: t(&self.middle),
            right: t(&self.right),
        }
    }

    pub fn over(&self, field: FieldSpec) -> Result<ActionTriple> {
        let re = |x: &DenseTensor4| -> Result<DenseTensor4> {
            let e = x.entries().iter().map(|s| field.reduce(s)).collect::<Result<_>>()?;
            DenseTensor4::from_entries(field, x.dims(), e)
        };
        ActionTriple::new(re(&self.left)?, re(&self.middle)?, re(&self.right)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trimodule {
    pub base: TernaryAlgebra,
    pub actions: ActionTriple,
    /// `Total` or `Partial`.
    pub variant: Variant,
    /// Skip the middle-action axiom.
    pub quasi: bool,
}

fn check_variant(variant: Variant) -> Result<()> {
    match variant {
        Variant::Total | Variant::Partial => Ok(()),
        Variant::Weak => Err(Error::UnsupportedVariant(format!("{variant} trimodule"))),
    }
}

impl Trimodule {
    pub fn new(base: TernaryAlgebra, actions: ActionTriple, variant: Variant, quasi: bool) -> Result<Trimodule> {
        check_variant(variant)?;
        if base.dim() != actions.algebra_dim() {
            return Err(dim_mismatch(
                format!("actions of a {}-dimensional algebra", base.dim()),
                actions.algebra_dim(),
            ));
        }
        if base.field() != actions.field() {
            return Err(Error::FieldMismatch {
                left: base.field(),
                right: actions.field(),
            });
        }
        Ok(Trimodule {
            base,
            actions,
            variant,
            quasi,
        })
    }

    pub fn module_dim(&self) -> usize {
        self.actions.module_dim()
    }

    fn tau(&self) -> Tau<'_> {
        Tau {
            n: self.base.dim(),
            m: self.module_dim(),
            mu_a: self.base.product(),
            mu_b: None,
            on_b: &self.actions,
            on_a: None,
            letters: ['A', 'V'],
        }
    }

    fn context(&self) -> TrimoduleContext<'_> {
        TrimoduleContext {
            base: self.base.product(),
            actions: &self.actions,
            transposed: self.actions.transposed(),
        }
    }

    /// Verifies the trimodule axioms with the default middle-axiom cap.
    pub fn check(&self) -> Result<VerificationReport> {
        self.check_with_cap(MIDDLE_AXIOM_CAP)
    }

    /// The verdict comes from associativity of the semidirect-sum product,
    /// evaluated directly from the actions, plus the middle-action axiom
    /// unless `quasi`. The printed identities are evaluated as a cross-check
    /// and any family whose verdict differs from its block of the semidirect
    /// sum is listed as a disagreement.
    pub fn check_with_cap(&self, cap: usize) -> Result<VerificationReport> {
        let tau = self.tau();
        let mut parts = vec![VerificationReport::from_outcome(
            "semidirect-sum associativity",
            tau.sweep(self.variant, None),
        )];
        if !self.quasi {
            parts.push(middle_axiom(&self.context(), self.base.dim(), self.module_dim(), cap)?);
        }
        let kind = if self.quasi { "quasi-trimodule" } else { "trimodule" };
        let mut report = VerificationReport::all_of(format!("{} {kind}", self.variant), parts);

        let families = match self.variant {
            Variant::Partial => &printed::TRIMODULE_PARTIAL,
            _ => &printed::TRIMODULE_TOTAL,
        };
        let ctx = self.context();
        for fam in families {
            let part = printed_report(&ctx, fam);
            let block = tau.sweep(self.variant, Some(&pattern_sides(fam.name)));
            if part.verdict != block.witness.is_none() {
                report.disagreements.push(disagreement(fam.name, &part, &block));
            }
            report.parts.push(part);
        }
        if self.base.field().is_small_characteristic() && self.variant == Variant::Partial {
            report.notes.push(crate::algebra::SMALL_CHAR_NOTE.to_string());
        }
        Ok(report)
    }

    /// The identities stated for the transposed actions `L*, M*, R*` of this
    /// trimodule (which together with the base algebra describe the dual
    /// trimodule), swept verbatim where they parse.
    pub fn check_dual_identities(&self) -> Result<VerificationReport> {
        let ctx = self.context();
        let families = match self.variant {
            Variant::Partial => &printed::DUAL_PARTIAL,
            _ => &printed::DUAL_TOTAL,
        };
        let mut parts = vec![self.base.check(self.variant)];
        parts.extend(families.iter().map(|f| printed_report(&ctx, f)));
        if !self.quasi {
            let (n, m) = (self.base.dim(), self.module_dim());
            guard_middle(n, m, MIDDLE_AXIOM_CAP)?;
            parts.push(printed_report(&ctx, &printed::DUAL_MIDDLE));
        }
        Ok(VerificationReport::all_of("dual identities", parts))
    }
}

fn guard_middle(n: usize, m: usize, cap: usize) -> Result<()> {
    if n > cap || m > cap {
        let size = (n as u128).pow(6) * (m as u128) * (m as u128);
        let guard = (cap as u128).pow(8);
        return Err(Error::SearchSpaceTooLarge {
            size: size.to_string(),
            guard,
        });
    }
    Ok(())
}

fn middle_axiom(ctx: &dyn Context, n: usize, m: usize, cap: usize) -> Result<VerificationReport> {
    guard_middle(n, m, cap)?;
    let mut r = printed_report(ctx, &printed::MIDDLE_AXIOM);
    r.name = "middle axiom".into();
    Ok(r)
}

pub(crate) fn printed_report(ctx: &dyn Context, fam: &Family) -> VerificationReport {
    let id = printed::parse(fam.reading).expect("built-in identities parse");
    let out = printed::sweep_identity(ctx, fam.name, &id).expect("built-in identities are well typed");
    let mut r = VerificationReport::from_outcome(format!("printed {}", fam.name), out);
    if fam.printed != fam.reading {
        r.notes.push(format!("printed as `{}`, evaluated as `{}`", fam.printed, fam.reading));
    }
    r
}

pub(crate) fn disagreement(name: &str, printed: &VerificationReport, block: &SweepOutcome) -> String {
    match (&printed.witness, &block.witness) {
        (Some(w), None) => format!("printed {name}: {w}, but the {name} block of the sum holds"),
        (None, Some(w)) => format!("printed {name} holds, but the {name} block of the sum fails: {w}"),
        _ => unreachable!("only called on differing verdicts"),
    }
}

pub(crate) fn pattern_sides(name: &str) -> Vec<Side> {
    name.chars().map(|c| if c == 'A' { Side::First } else { Side::Second }).collect()
}

struct TrimoduleContext<'a> {
    base: &'a DenseTensor4,
    actions: &'a ActionTriple,
    transposed: ActionTriple,
}

impl Context for TrimoduleContext<'_> {
    fn field(&self) -> FieldSpec {
        self.base.field()
    }

    fn dim(&self, side: Side) -> usize {
        match side {
            Side::First => self.base.dims()[0],
            Side::Second => self.actions.module_dim(),
        }
    }

    fn var_side(&self, var: char) -> Side {
        if matches!(var, 'u' | 'v' | 'w') {
            Side::Second
        } else {
            Side::First
        }
    }

    fn product(&self, name: &str) -> Option<(&DenseTensor4, Side)> {
        (name == "mu").then_some((self.base, Side::First))
    }

    fn action(&self, name: &str) -> Option<(&DenseTensor4, Side, Side)> {
        let t = match name {
            "L" => &self.actions.left,
            "M" => &self.actions.middle,
            "R" => &self.actions.right,
            "Ls" => &self.transposed.left,
            "Ms" => &self.transposed.middle,
            "Rs" => &self.transposed.right,
            _ => return None,
        };
        Some((t, Side::First, Side::Second))
    }
}

/// The product `τ` on `A ⊕ B` (basis of `A` first), evaluated case by case
/// from the two products and the actions. With `mu_b` and `on_a` absent
/// this is the semidirect sum.
pub(crate) struct Tau<'a> {
    pub n: usize,
    pub m: usize,
    pub mu_a: &'a DenseTensor4,
    pub mu_b: Option<&'a DenseTensor4>,
    /// `A` acting on `B`, dims `(n,n,m,m)`.
    pub on_b: &'a ActionTriple,
    /// `B` acting on `A`, dims `(m,m,n,n)`.
    pub on_a: Option<&'a ActionTriple>,
    pub letters: [char; 2],
}

impl Tau<'_> {
    fn field(&self) -> FieldSpec {
        self.mu_a.field()
    }

    /// `τ(e_i, e_j, e_k)` in the combined basis.
    fn basis(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let (n, m) = (self.n, self.m);
        let mut out = vec![self.field().zero(); n + m];
        let into_b = |out: &mut Vec<Scalar>, t: &DenseTensor4, a: usize, b: usize, col: usize| {
            for row in 0..m {
                out[n + row] = t.at(a, b, row, col).clone();
            }
        };
        let into_a = |out: &mut Vec<Scalar>, t: &DenseTensor4, a: usize, b: usize, col: usize| {
            for row in 0..n {
                out[row] = t.at(a, b, row, col).clone();
            }
        };
        match (i >= n, j >= n, k >= n) {
            (false, false, false) => out[..n].clone_from_slice(self.mu_a.fiber(i, j, k)),
            (true, true, true) => {
                if let Some(mb) = self.mu_b {
                    out[n..].clone_from_slice(mb.fiber(i - n, j - n, k - n));
                }
            }
            // L_A(x,y)(c)
            (false, false, true) => into_b(&mut out, &self.on_b.left, i, j, k - n),
            // M_A(x,z)(b)
            (false, true, false) => into_b(&mut out, &self.on_b.middle, i, k, j - n),
            // R_A(y,z)(a)
            (true, false, false) => into_b(&mut out, &self.on_b.right, j, k, i - n),
            (true, true, false) => {
                if let Some(t) = self.on_a {
                    into_a(&mut out, &t.left, i - n, j - n, k);
                }
            }
            (true, false, true) => {
                if let Some(t) = self.on_a {
                    into_a(&mut out, &t.middle, i - n, k - n, j);
                }
            }
            (false, true, true) => {
                if let Some(t) = self.on_a {
                    into_a(&mut out, &t.right, j - n, k - n, i);
                }
            }
        }
        out
    }

    fn contract(&self, inner: &[Scalar], outer: impl Fn(usize) -> Vec<Scalar>) -> Vec<Scalar> {
        let mut acc = vec![self.field().zero(); self.n + self.m];
        for (r, w) in inner.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(outer(r)) {
                a.add_product(w, &b);
            }
        }
        acc
    }

    fn composites(&self, idx: &[usize]) -> [Option<Vec<Scalar>>; 3] {
        let (i, j, k, s, t) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        [
            Some(self.contract(&self.basis(i, j, k), |r| self.basis(r, s, t))),
            Some(self.contract(&self.basis(j, k, s), |r| self.basis(i, r, t))),
            Some(self.contract(&self.basis(k, s, t), |r| self.basis(i, j, r))),
        ]
    }

    fn pattern(&self, idx: &[usize]) -> String {
        idx.iter().map(|&x| self.letters[usize::from(x >= self.n)]).collect()
    }

    /// Associativity of `τ` over all five-tuples of the combined basis, or
    /// only over those whose slots lie in the given sides. Witness indices
    /// are in the combined basis either way, labelled with the tuple's
    /// pattern.
    pub fn sweep(&self, variant: Variant, sides: Option<&[Side]>) -> SweepOutcome {
        let (n, m) = (self.n, self.m);
        let run = |idx: &[usize]| {
            let label = self.pattern(idx);
            judge(variant, &label, idx, self.composites(idx))
        };
        match sides {
            None => sweep(&[n + m; 5], run),
            Some(sides) => {
                let dims: Vec<usize> = sides.iter().map(|s| if *s == Side::First { n } else { m }).collect();
                sweep(&dims, |local| {
                    let idx: Vec<usize> = local
                        .iter()
                        .zip(sides)
                        .map(|(&x, s)| if *s == Side::First { x } else { n + x })
                        .collect();
                    run(&idx)
                })
            }
        }
    }
}

/// Copies the blocks of `τ` into one product tensor on `A ⊕ B`.
pub(crate) fn sum_tensor(
    mu_a: &DenseTensor4,
    mu_b: Option<&DenseTensor4>,
    on_b: &ActionTriple,
    on_a: Option<&ActionTriple>,
) -> DenseTensor4 {
    let n = mu_a.dims()[0];
    let m = on_b.module_dim();
    let mut t = DenseTensor4::zeros(mu_a.field(), [n + m; 4]);
    let mut put = |idx: [usize; 4], v: &Scalar| t.set(idx, v.clone()).expect("in range");
    for ([i, j, k, l], v) in mu_a.nonzeros() {
        put([i, j, k, l], v);
    }
    if let Some(mb) = mu_b {
        for ([i, j, k, l], v) in mb.nonzeros() {
            put([n + i, n + j, n + k, n + l], v);
        }
    }
    for ([x, y, row, col], v) in on_b.left.nonzeros() {
        put([x, y, n + col, n + row], v);
    }
    for ([x, z, row, col], v) in on_b.middle.nonzeros() {
        put([x, n + col, z, n + row], v);
    }
    for ([y, z, row, col], v) in on_b.right.nonzeros() {
        put([n + col, y, z, n + row], v);
    }
    if let Some(oa) = on_a {
        for ([a, b, row, col], v) in oa.left.nonzeros() {
            put([n + a, n + b, col, row], v);
        }
        for ([a, c, row, col], v) in oa.middle.nonzeros() {
            put([n + a, col, n + c, row], v);
        }
        for ([b, c, row, col], v) in oa.right.nonzeros() {
            put([col, n + b, n + c, row], v);
        }
    }
    t
}

/// The product `τ[(x+a),(y+b),(z+c)] = μ(x,y,z) + L(x,y)(c) + M(x,z)(b) +
/// R(y,z)(a)` on `A ⊕ V`.
pub fn semidirect_sum(t: &Trimodule) -> TernaryAlgebra {
    TernaryAlgebra::new(sum_tensor(t.base.product(), None, &t.actions, None)).expect("cubical")
}

/// Which regular trimodule to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regular {
    /// `(L_μ, M_μ, R_μ)` on `A`.
    Lmr,
    /// `(L_μ, 0, 0)`.
    L00,
    /// `(0, 0, R_μ)`.
    Zr,
    /// `(R*_μ, M*_μ, L*_μ)` on `A*`.
    DualRml,
    /// `(R*_μ, 0, 0)`.
    DualR00,
    /// `(0, 0, L*_μ)`.
    DualZl,
}

impl Regular {
    pub const ALL: [Regular; 6] = [
        Regular::Lmr,
        Regular::L00,
        Regular::Zr,
        Regular::DualRml,
        Regular::DualR00,
        Regular::DualZl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regular::Lmr => "LMR",
            Regular::L00 => "L00",
            Regular::Zr => "00R",
            Regular::DualRml => "dual_RML",
            Regular::DualR00 => "dual_R00",
            Regular::DualZl => "dual_00L",
        }
    }
}

impl std::str::FromStr for Regular {
    type Err = Error;

    fn from_str(s: &str) -> Result<Regular> {
        Regular::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedVariant(format!("regular trimodule {s:?}")))
    }
}

/// The multiplication operators of `A` as action tensors:
/// `L_μ(x,y)z = μ(x,y,z)`, `M_μ(x,y)z = μ(x,z,y)`, `R_μ(x,y)z = μ(z,x,y)`.
pub fn multiplication_actions(a: &TernaryAlgebra) -> ActionTriple {
    let c = a.product();
    ActionTriple {
        left: c.permute_axes([0, 1, 3, 2]),
        middle: c.permute_axes([0, 2, 3, 1]),
        right: c.permute_axes([1, 2, 3, 0]),
    }
}

pub fn regular_trimodule(a: &TernaryAlgebra, which: Regular, variant: Variant, quasi: bool) -> Result<Trimodule> {
    let ops = multiplication_actions(a);
    let dual = ops.transposed();
    let z = || DenseTensor4::zeros(a.field(), [a.dim(); 4]);
    let actions = match which {
        Regular::Lmr => ops,
        Regular::L00 => ActionTriple::new(ops.left, z(), z())?,
        Regular::Zr => ActionTriple::new(z(), z(), ops.right)?,
        Regular::DualRml => ActionTriple::new(dual.right, dual.middle, dual.left)?,
        Regular::DualR00 => ActionTriple::new(dual.right, z(), z())?,
        Regular::DualZl => ActionTriple::new(z(), z(), dual.left)?,
    };
    Trimodule::new(a.clone(), actions, variant, quasi)
}

/// `(R*, M*, L*)` on `V*`: left and right swap and every action is
/// transposed.
pub fn dual_trimodule(t: &Trimodule) -> Trimodule {
    let d = t.actions.transposed();
    Trimodule {
        base: t.base.clone(),
        actions: ActionTriple {
            left: d.right,
            middle: d.middle,
            right: d.left,
        },
        variant: t.variant,
        quasi: t.quasi,
    }
}

pub fn check_trimodule(t: &Trimodule) -> Result<VerificationReport> {
    t.check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_actions, random_algebra, rng};
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    #[test]
    fn zero_actions_pass() {
        for (base, variant) in [(fixtures::et1(), Variant::Total), (fixtures::ep1(), Variant::Partial)] {
            for m in 0..3 {
                let t = Trimodule::new(base.clone(), ActionTriple::zero(q(), 2, m), variant, false).unwrap();
                let r = t.check().unwrap();
                assert!(r.verdict, "{r}");
                assert!(!r.has_disagreement());
            }
        }
    }

    #[test]
    fn weak_is_rejected() {
        let r = Trimodule::new(fixtures::et1(), ActionTriple::zero(q(), 2, 1), Variant::Weak, true);
        assert!(matches!(r, Err(Error::UnsupportedVariant(_))));
    }

    #[test]
    fn regular_trimodules_of_et1() {
        for which in Regular::ALL {
            let t = regular_trimodule(&fixtures::et1(), which, Variant::Total, false).unwrap();
            let r = t.check().unwrap();
            assert!(r.verdict, "{}: {r}", which.name());
            assert!(!r.has_disagreement(), "{}: {r}", which.name());
        }
    }

    #[test]
    fn regular_operators_match_the_product() {
        let a = fixtures::et1();
        let ops = multiplication_actions(&a);
        let e = |i| Vector::basis(q(), 2, i);
        for (x, y, z) in [(0, 1, 1), (1, 1, 0), (1, 0, 1)] {
            assert_eq!(ops.apply(ActionKind::Left, &e(x), &e(y), &e(z)).unwrap(), a.basis_product(x, y, z));
            assert_eq!(ops.apply(ActionKind::Middle, &e(x), &e(y), &e(z)).unwrap(), a.basis_product(x, z, y));
            assert_eq!(ops.apply(ActionKind::Right, &e(x), &e(y), &e(z)).unwrap(), a.basis_product(z, x, y));
        }
    }

    #[test]
    fn semidirect_sum_of_zero_actions_is_block_diagonal() {
        let t = Trimodule::new(fixtures::et1(), ActionTriple::zero(q(), 2, 1), Variant::Total, true).unwrap();
        let s = semidirect_sum(&t);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.product().nonzeros().count(), fixtures::et1().product().nonzeros().count());
        assert!(s.check_total().verdict);
    }

    #[test]
    fn regular_semidirect_sums() {
        let t = regular_trimodule(&fixtures::et1(), Regular::Lmr, Variant::Total, false).unwrap();
        assert!(semidirect_sum(&t).check_total().verdict);
        let p = regular_trimodule(&fixtures::ep1(), Regular::Lmr, Variant::Partial, true).unwrap();
        assert!(semidirect_sum(&p).check_partial().verdict);
        assert!(p.check().unwrap().verdict);
    }

    #[test]
    fn perturbed_regular_trimodule_fails() {
        let t = regular_trimodule(&fixtures::et1(), Regular::Lmr, Variant::Total, true).unwrap();
        let mut left = t.actions.left().clone();
        left.set([0, 0, 1, 0], q().from_i64(1)).unwrap();
        let bad = Trimodule::new(
            t.base.clone(),
            ActionTriple::new(left, t.actions.middle().clone(), t.actions.right().clone()).unwrap(),
            Variant::Total,
            true,
        )
        .unwrap();
        let r = bad.check().unwrap();
        let oracle = semidirect_sum(&bad).check_total();
        assert!(!r.verdict);
        assert_eq!(r.verdict, oracle.verdict);
        assert_eq!(r.witness.as_ref().unwrap().index, oracle.witness.as_ref().unwrap().index);
        assert!(!r.has_disagreement(), "{r}");
    }

    #[test]
    fn dual_of_regular_lmr() {
        let t = regular_trimodule(&fixtures::et1(), Regular::Lmr, Variant::Total, false).unwrap();
        let d = dual_trimodule(&t);
        assert_eq!(d, regular_trimodule(&fixtures::et1(), Regular::DualRml, Variant::Total, false).unwrap());
        let r1 = d.check().unwrap();
        let r2 = t.check_dual_identities().unwrap();
        assert!(r1.verdict && r2.verdict, "{r1}\n{r2}");
    }

    #[test]
    fn middle_axiom_cap() {
        let t = Trimodule::new(fixtures::et1(), ActionTriple::zero(q(), 2, 3), Variant::Total, false).unwrap();
        assert!(matches!(t.check_with_cap(2), Err(Error::SearchSpaceTooLarge { .. })));
        let quasi = Trimodule { quasi: true, ..t };
        assert!(quasi.check_with_cap(2).unwrap().verdict);
    }

    #[test]
    fn witness_is_a_mixed_five_tuple() {
        let base = TernaryAlgebra::zero(q(), 1);
        let mut left = DenseTensor4::zeros(q(), [1, 1, 1, 1]);
        left.set([0, 0, 0, 0], q().one()).unwrap();
        let z = DenseTensor4::zeros(q(), [1, 1, 1, 1]);
        let t = Trimodule::new(base, ActionTriple::new(left, z.clone(), z).unwrap(), Variant::Total, true).unwrap();
        let r = t.check().unwrap();
        // L(e,e)L(e,e)v = v but μ = 0
        let w = r.witness.unwrap();
        assert_eq!(w.label, "AAAAV");
        assert_eq!(w.index, vec![0, 0, 0, 0, 1, 1]);
    }

    fn random_trimodule(seed: u64, n: usize, m: usize, variant: Variant, quasi: bool, sparsity: u32) -> Trimodule {
        let mut r = rng(seed);
        let base = if seed % 3 == 0 {
            random_algebra(f5(), n, seed, sparsity)
        } else {
            TernaryAlgebra::zero(f5(), n)
        };
        let actions = random_actions(f5(), n, m, &mut r, sparsity + 2);
        Trimodule::new(base, actions, variant, quasi).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_semidirect_sum(seed in any::<u64>(), n in 1usize..3, m in 1usize..3, partial in any::<bool>()) {
            let variant = if partial { Variant::Partial } else { Variant::Total };
            let t = random_trimodule(seed, n, m, variant, true, 1);
            let r = t.check().unwrap();
            let oracle = semidirect_sum(&t).check(variant);
            prop_assert_eq!(r.verdict, oracle.verdict);
            prop_assert_eq!(r.witness.map(|w| w.index), oracle.witness.map(|w| w.index));
            prop_assert_eq!(r.checked, oracle.checked);
        }

        #[test]
        fn dual_is_an_involution(seed in any::<u64>(), n in 0usize..3, m in 0usize..3) {
            let t = random_trimodule(seed, n, m, Variant::Total, false, 1);
            prop_assert_eq!(dual_trimodule(&dual_trimodule(&t)), t);
        }

        #[test]
        fn dual_identities_track_the_printed_axioms(seed in any::<u64>(), n in 1usize..3, m in 1usize..3, partial in any::<bool>()) {
            let variant = if partial { Variant::Partial } else { Variant::Total };
            let t = random_trimodule(seed, n, m, variant, true, 2);
            let printed_ok = t.check().unwrap().parts.iter().skip(1).all(|p| p.verdict);
            let dual = t.check_dual_identities().unwrap();
            prop_assert_eq!(dual.parts.iter().skip(1).all(|p| p.verdict), printed_ok);
        }
    }
}
