//! Matched pairs of ternary algebras and the bicrossed sum `A ⋈ B`.

use crate::algebra::{TernaryAlgebra, Variant};
use crate::error::{dim_mismatch, Error, Result};
use crate::field::FieldSpec;
use crate::printed::{self, Context, Side};
use crate::report::VerificationReport;
use crate::tensor::DenseTensor4;
use crate::trimodule::{
    disagreement, multiplication_actions, pattern_sides, printed_report, sum_tensor, ActionTriple, Tau, Trimodule,
};

pub const STRICT_NOTE: &str = "strict extras (interpretation documented): the middle-action axiom of each component \
     action, with the six algebra arguments in the acting algebra and the acted-on element in the other one";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedPairData {
    pub a: TernaryAlgebra,
    pub b: TernaryAlgebra,
    /// `A` acting on `B`, dims `(n,n,m,m)`.
    pub on_b: ActionTriple,
    /// `B` acting on `A`, dims `(m,m,n,n)`.
    pub on_a: ActionTriple,
    pub variant: Variant,
    /// Also require the middle-action axiom of both components.
    pub strict: bool,
}

impl MatchedPairData {
    pub fn new(
        a: TernaryAlgebra,
        b: TernaryAlgebra,
        on_b: ActionTriple,
        on_a: ActionTriple,
        variant: Variant,
        strict: bool,
    ) -> Result<MatchedPairData> {
        if variant == Variant::Weak {
            return Err(Error::UnsupportedVariant(format!("{variant} matched pair")));
        }
        let (n, m) = (a.dim(), b.dim());
        let want_b = (n, m);
        let got_b = (on_b.algebra_dim(), on_b.module_dim());
        if got_b != want_b {
            return Err(dim_mismatch(format!("{:?}", [n, n, m, m]), format!("{:?}", on_b.left().dims())));
        }
        if (on_a.algebra_dim(), on_a.module_dim()) != (m, n) {
            return Err(dim_mismatch(format!("{:?}", [m, m, n, n]), format!("{:?}", on_a.left().dims())));
        }
        let f = a.field();
        for g in [b.field(), on_b.field(), on_a.field()] {
            if g != f {
                return Err(Error::FieldMismatch { left: f, right: g });
            }
        }
        Ok(MatchedPairData {
            a,
            b,
            on_b,
            on_a,
            variant,
            strict,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    fn tau(&self) -> Tau<'_> {
        Tau {
            n: self.a.dim(),
            m: self.b.dim(),
            mu_a: self.a.product(),
            mu_b: Some(self.b.product()),
            on_b: &self.on_b,
            on_a: Some(&self.on_a),
            letters: ['A', 'B'],
        }
    }

    /// `A` acting on `B` as a quasi-trimodule.
    pub fn component_on_b(&self) -> Trimodule {
        Trimodule::new(self.a.clone(), self.on_b.clone(), self.variant, true).expect("validated")
    }

    /// `B` acting on `A` as a quasi-trimodule.
    pub fn component_on_a(&self) -> Trimodule {
        Trimodule::new(self.b.clone(), self.on_a.clone(), self.variant, true).expect("validated")
    }

    /// The same data with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> MatchedPairData {
        MatchedPairData {
            a: self.b.clone(),
            b: self.a.clone(),
            on_b: self.on_a.clone(),
            on_a: self.on_b.clone(),
            variant: self.variant,
            strict: self.strict,
        }
    }

    /// The verdict is associativity of `τ` on `A ⊕ B` (plus the strict
    /// extras when `strict`). Witnesses are five-tuples of the combined
    /// basis (`A` first) followed by the output coordinate.
    ///
    /// Also reported, without affecting the verdict: whether each component
    /// is a quasi-trimodule, and each printed cross identity, with a
    /// disagreement whenever a printed identity and its block of `τ`
    /// disagree.
    pub fn check(&self) -> Result<VerificationReport> {
        let tau = self.tau();
        let mut parts = vec![VerificationReport::from_outcome(
            "bicrossed-sum associativity",
            tau.sweep(self.variant, None),
        )];
        if self.strict {
            for (name, t) in [("on B", self.component_on_b()), ("on A", self.component_on_a())] {
                let full = Trimodule { quasi: false, ..t };
                let mut r = full.check()?;
                // only the middle axiom is extra here
                let mut middle = r.parts.remove(1);
                middle.name = format!("strict extra: middle axiom {name}");
                middle.notes.push(STRICT_NOTE.into());
                parts.push(middle);
            }
        }
        let mut report = VerificationReport::all_of(format!("{} matched pair", self.variant), parts);

        for (name, t) in [("on B", self.component_on_b()), ("on A", self.component_on_a())] {
            let mut r = t.check()?;
            r.name = format!("precondition: quasi-trimodule {name}");
            if !r.verdict {
                report.notes.push(format!("precondition violated: {name} is not a quasi-trimodule"));
            }
            report.disagreements.append(&mut r.disagreements);
            report.parts.push(r);
        }

        let ctx = PairContext { pair: self };
        let families = match self.variant {
            Variant::Partial => &printed::MATCHED_PARTIAL,
            _ => &printed::MATCHED_TOTAL,
        };
        for fam in families {
            let part = printed_report(&ctx, fam);
            let block = tau.sweep(self.variant, Some(&pattern_sides(fam.name)));
            if part.verdict != block.witness.is_none() {
                report.disagreements.push(disagreement(fam.name, &part, &block));
            }
            report.parts.push(part);
        }
        if self.field().is_small_characteristic() && self.variant == Variant::Partial {
            report.notes.push(crate::algebra::SMALL_CHAR_NOTE.to_string());
        }
        Ok(report)
    }
}

struct PairContext<'a> {
    pair: &'a MatchedPairData,
}

impl Context for PairContext<'_> {
    fn field(&self) -> FieldSpec {
        self.pair.field()
    }

    fn dim(&self, side: Side) -> usize {
        match side {
            Side::First => self.pair.a.dim(),
            Side::Second => self.pair.b.dim(),
        }
    }

    fn var_side(&self, var: char) -> Side {
        if matches!(var, 'x' | 'y' | 'z') {
            Side::First
        } else {
            Side::Second
        }
    }

    fn product(&self, name: &str) -> Option<(&DenseTensor4, Side)> {
        match name {
            "muA" => Some((self.pair.a.product(), Side::First)),
            "muB" => Some((self.pair.b.product(), Side::Second)),
            _ => None,
        }
    }

    fn action(&self, name: &str) -> Option<(&DenseTensor4, Side, Side)> {
        let (p, s, t) = match name {
            "LA" => (self.pair.on_b.left(), Side::First, Side::Second),
            "MA" => (self.pair.on_b.middle(), Side::First, Side::Second),
            "RA" => (self.pair.on_b.right(), Side::First, Side::Second),
            "LB" => (self.pair.on_a.left(), Side::Second, Side::First),
            "MB" => (self.pair.on_a.middle(), Side::Second, Side::First),
            "RB" => (self.pair.on_a.right(), Side::Second, Side::First),
            _ => return None,
        };
        Some((p, s, t))
    }
}

/// The product `τ` on `A ⊕ B`:
/// `[μ_A(x,y,z) + L_B(a,b)z + M_B(a,c)y + R_B(b,c)x] + [μ_B(a,b,c) +
/// L_A(x,y)c + M_A(x,z)b + R_A(y,z)a]`.
pub fn bicross_sum(mp: &MatchedPairData) -> TernaryAlgebra {
    let t = sum_tensor(mp.a.product(), Some(mp.b.product()), &mp.on_b, Some(&mp.on_a));
    TernaryAlgebra::new(t).expect("cubical")
}

pub fn check_matched_pair(mp: &MatchedPairData) -> Result<VerificationReport> {
    mp.check()
}

/// `(A, A*, R*_μ, M*_μ, L*_μ, R*_ν, M*_ν, L*_ν)`: each algebra acts on the
/// other through the transposes of its multiplication operators, placed in
/// the slots in that order.
pub fn self_dual_pair(a: &TernaryAlgebra, nu: &TernaryAlgebra, variant: Variant) -> Result<MatchedPairData> {
    if a.dim() != nu.dim() {
        return Err(dim_mismatch(a.dim(), nu.dim()));
    }
    let dual_actions = |alg: &TernaryAlgebra| {
        let d = multiplication_actions(alg).transposed();
        ActionTriple::new(d.right().clone(), d.middle().clone(), d.left().clone()).expect("same dims")
    };
    MatchedPairData::new(a.clone(), nu.clone(), dual_actions(a), dual_actions(nu), variant, false)
}
