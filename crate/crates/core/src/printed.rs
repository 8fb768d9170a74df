//! A tiny language for the printed trimodule and matched-pair identities,
//! so they can be checked verbatim on basis elements.
//!
//! Terms look like `muA(LB(a,b)(x), y, z)`: `mu`, `muA`, `muB` are ternary
//! products and two-argument names such as `L`, `Ms`, `RB` are actions
//! applied to a third argument in a separate bracket. Square brackets are
//! accepted wherever round ones are. An identity is either a chain
//! `t1 = t2 = t3` or a sum `t1 + t2 + t3 = 0`.

use std::collections::BTreeSet;

use crate::field::{FieldSpec, Scalar};
use crate::report::{sweep, Relation, SweepOutcome, Witness};
use crate::tensor::{DenseTensor4, Vector};

/// The two spaces an identity talks about: the algebra and the module (or
/// the second algebra of a matched pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(char),
    Product(String, Box<[Expr; 3]>),
    Action(String, Box<[Expr; 3]>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub terms: Vec<Expr>,
    pub relation: Relation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Open,
    Close,
    Comma,
    Eq,
    Plus,
    Zero,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' => {
                chars.next();
            }
            '(' | '[' => {
                chars.next();
                out.push(Tok::Open);
            }
            ')' | ']' => {
                chars.next();
                out.push(Tok::Close);
            }
            ',' => {
                chars.next();
                out.push(Tok::Comma);
            }
            '=' => {
                chars.next();
                out.push(Tok::Eq);
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '0' => {
                chars.next();
                out.push(Tok::Zero);
            }
            c if c.is_ascii_alphabetic() => {
                let mut id = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphabetic() {
                        id.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(id));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(format!("expected {t:?}, found {got:?} at token {}", self.pos - 1)),
        }
    }

    fn term(&mut self) -> Result<Expr, String> {
        let Some(Tok::Ident(id)) = self.next() else {
            return Err(format!("expected a name at token {}", self.pos - 1));
        };
        if id.len() == 1 && id.chars().all(|c| c.is_ascii_lowercase()) {
            return Ok(Expr::Var(id.chars().next().expect("one char")));
        }
        self.expect(Tok::Open)?;
        let a = self.term()?;
        self.expect(Tok::Comma)?;
        let b = self.term()?;
        if id.starts_with("mu") {
            self.expect(Tok::Comma)?;
            let c = self.term()?;
            self.expect(Tok::Close)?;
            Ok(Expr::Product(id, Box::new([a, b, c])))
        } else {
            self.expect(Tok::Close)?;
            self.expect(Tok::Open)?;
            let v = self.term()?;
            self.expect(Tok::Close)?;
            Ok(Expr::Action(id, Box::new([a, b, v])))
        }
    }
}

/// Parses a chain `t = t = …` or a sum `t + t + … = 0`.
pub fn parse(text: &str) -> Result<Identity, String> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let mut terms = vec![p.term()?];
    let relation = match p.peek() {
        Some(Tok::Plus) => {
            while p.peek() == Some(&Tok::Plus) {
                p.next();
                terms.push(p.term()?);
            }
            p.expect(Tok::Eq)?;
            p.expect(Tok::Zero)?;
            Relation::SumZero
        }
        _ => {
            while p.peek() == Some(&Tok::Eq) {
                p.next();
                terms.push(p.term()?);
            }
            Relation::Equal
        }
    };
    if p.pos != p.toks.len() {
        return Err(format!("trailing input after token {}", p.pos));
    }
    Ok(Identity { terms, relation })
}

impl Expr {
    fn vars(&self, out: &mut BTreeSet<char>) {
        match self {
            Expr::Var(c) => {
                out.insert(*c);
            }
            Expr::Product(_, args) | Expr::Action(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }
}

impl Identity {
    /// Variables in alphabetical order; witnesses list basis indices in
    /// this order.
    pub fn vars(&self) -> Vec<char> {
        let mut s = BTreeSet::new();
        self.terms.iter().for_each(|t| t.vars(&mut s));
        s.into_iter().collect()
    }
}

/// Supplies spaces and operations for evaluating identities.
pub trait Context: Sync {
    fn field(&self) -> FieldSpec;
    fn dim(&self, side: Side) -> usize;
    fn var_side(&self, var: char) -> Side;
    /// A ternary product and the side it lives on.
    fn product(&self, name: &str) -> Option<(&DenseTensor4, Side)>;
    /// An action `(args, args) -> End(target)` stored as `[a, b, row, col]`,
    /// with the side of its two arguments and of the acted-on space.
    fn action(&self, name: &str) -> Option<(&DenseTensor4, Side, Side)>;
}

fn eval(ctx: &dyn Context, e: &Expr, assign: &dyn Fn(char) -> usize) -> Result<(Vector, Side), String> {
    match e {
        Expr::Var(c) => {
            let side = ctx.var_side(*c);
            Ok((Vector::basis(ctx.field(), ctx.dim(side), assign(*c)), side))
        }
        Expr::Product(name, args) => {
            let (t, side) = ctx.product(name).ok_or_else(|| format!("unknown product {name}"))?;
            let mut vs = Vec::with_capacity(3);
            for a in args.iter() {
                let (v, s) = eval(ctx, a, assign)?;
                if s != side {
                    return Err(format!("{name} applied to an element of the wrong space"));
                }
                vs.push(v);
            }
            let n = ctx.dim(side);
            let mut out = Vector::zeros(ctx.field(), n);
            for (i, x) in vs[0].support() {
                for (j, y) in vs[1].support() {
                    let xy = x * y;
                    for (k, z) in vs[2].support() {
                        let w = &xy * z;
                        for (l, c) in t.fiber(i, j, k).iter().enumerate() {
                            out.entry_mut(l).add_product(&w, c);
                        }
                    }
                }
            }
            Ok((out, side))
        }
        Expr::Action(name, args) => {
            let (t, arg_side, target) = ctx.action(name).ok_or_else(|| format!("unknown action {name}"))?;
            let (p, ps) = eval(ctx, &args[0], assign)?;
            let (q, qs) = eval(ctx, &args[1], assign)?;
            let (v, vs) = eval(ctx, &args[2], assign)?;
            if ps != arg_side || qs != arg_side || vs != target {
                return Err(format!("{name} applied to an element of the wrong space"));
            }
            let m = ctx.dim(target);
            let mut out = Vector::zeros(ctx.field(), m);
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
            Ok((out, target))
        }
    }
}

/// Evaluates every term of `id` at one assignment of basis indices.
pub fn evaluate(ctx: &dyn Context, id: &Identity, vars: &[char], values: &[usize]) -> Result<Vec<Vector>, String> {
    let assign = |c: char| values[vars.iter().position(|&v| v == c).expect("known var")];
    id.terms.iter().map(|t| eval(ctx, t, &assign).map(|(v, _)| v)).collect()
}

fn judge_terms(label: &str, values: &[usize], terms: &[Vector], relation: Relation) -> Option<Witness> {
    let field = terms[0].field();
    for l in 0..terms[0].dim() {
        let fails = match relation {
            Relation::Equal => terms.iter().any(|t| t.get(l) != terms[0].get(l)),
            Relation::SumZero => {
                let mut s: Scalar = field.zero();
                for t in terms {
                    s = &s + t.get(l);
                }
                !s.is_zero()
            }
        };
        if fails {
            let mut index = values.to_vec();
            index.push(l);
            let mut w = Witness::new(label, index, relation);
            for (i, t) in terms.iter().enumerate() {
                w = w.term(format!("term{}", i + 1), t.get(l));
            }
            return Some(w);
        }
    }
    None
}

/// Sweeps an identity over all basis assignments of its variables.
///
/// The witness index lists the variables' basis indices (alphabetical
/// variable order) followed by the failing output coordinate. Ill-typed
/// identities are reported as an error.
pub fn sweep_identity(ctx: &dyn Context, label: &str, id: &Identity) -> Result<SweepOutcome, String> {
    let vars = id.vars();
    let dims: Vec<usize> = vars.iter().map(|&c| ctx.dim(ctx.var_side(c))).collect();
    // type-check once on the first assignment (basis index 0 everywhere)
    if dims.iter().all(|&d| d > 0) {
        evaluate(ctx, id, &vars, &vec![0; vars.len()])?;
    }
    Ok(sweep(&dims, |values| {
        let terms = evaluate(ctx, id, &vars, values).expect("type-checked");
        judge_terms(label, values, &terms, id.relation)
    }))
}

/// One printed identity family.
#[derive(Debug, Clone, Copy)]
pub struct Family {
    /// Short name; for the mixed identities this is the pattern of algebra
    /// (`A`) and module or second-algebra (`V`/`B`) arguments of the
    /// five-argument composite it expands.
    pub name: &'static str,
    /// As printed, transcribed into the term language.
    pub printed: &'static str,
    /// What is evaluated; differs from `printed` only where the printed
    /// form cannot be read as it stands.
    pub reading: &'static str,
}

const fn same(name: &'static str, text: &'static str) -> Family {
    Family {
        name,
        printed: text,
        reading: text,
    }
}

pub const TRIMODULE_TOTAL: [Family; 5] = [
    same("AAAAV", "L(a,b)(L(c,d)(v)) = L(mu(a,b,c),d)(v) = L(a,mu(b,c,d))(v)"),
    same("VAAAA", "R(c,d)(R(a,b)(v)) = R(a,mu(b,c,d))(v) = R(mu(a,b,c),d)(v)"),
    same("AAAVA", "M(a,d)(L(b,c)(v)) = L(a,b)(M(c,d)(v)) = M(mu(a,b,c),d)(v)"),
    same("AVAAA", "M(a,d)(R(b,c)(v)) = R(c,d)(M(a,b)(v)) = M(a,mu(b,c,d))(v)"),
    same("AAVAA", "R(c,d)(L(a,b)(v)) = L(a,b)(R(c,d)(v)) = M(a,d)(M(b,c)(v))"),
];

pub const TRIMODULE_PARTIAL: [Family; 5] = [
    same("AAAAV", "L(a,b)(L(c,d)(v)) + L(mu(a,b,c),d)(v) + L(a,mu(b,c,d))(v) = 0"),
    same("VAAAA", "R(c,d)(R(a,b)(v)) + R(a,mu(b,c,d))(v) + R(mu(a,b,c),d)(v) = 0"),
    same("AAAVA", "M(a,d)(L(b,c)(v)) + L(a,b)(M(c,d)(v)) + M(mu(a,b,c),d)(v) = 0"),
    same("AVAAA", "M(a,d)(R(b,c)(v)) + R(c,d)(M(a,b)(v)) + M(a,mu(b,c,d))(v) = 0"),
    same("AAVAA", "R(c,d)(L(a,b)(v)) + L(a,b)(R(c,d)(v)) + M(a,d)(M(b,c)(v)) = 0"),
];

/// The six-argument middle-action identity; printed as an equality for both
/// variants.
pub const MIDDLE_AXIOM: Family = same("middle axiom", "M(a,z)(M(b,y)(M(c,x)(v))) = M(mu(a,b,c),mu(x,y,z))(v)");

/// Identities stated for the transposed actions `Ls, Ms, Rs` of a trimodule.
pub const DUAL_TOTAL: [Family; 5] = [
    same("dual RR", "Rs(a,b)(Rs(c,d)(u)) = Rs(mu(a,b,c),d)(u) = Rs(a,mu(b,c,d))(u)"),
    same("dual LL", "Ls(c,d)(Ls(a,b)(u)) = Ls(a,mu(b,c,d))(u) = Ls(mu(a,b,c),d)(u)"),
    Family {
        name: "dual MR",
        printed: "Ms(a,d)(Rs mu(b,c)(u)) = Rs(d,b)(Ms(a,c)(u)) = Ms(a,mu(d,b,c))(u)",
        reading: "Ms(a,d)(Rs(b,c)(u)) = Rs(d,b)(Ms(a,c)(u)) = Ms(a,mu(d,b,c))(u)",
    },
    Family {
        name: "dual ML",
        printed: "M(a,d)(R(b,c)(u)) = Ls(c,a)(Ms(b,d)(u)) = Ms(mu(b,c,a),d)(u)",
        reading: "Ms(a,d)(Ls(b,c)(u)) = Ls(c,a)(Ms(b,d)(u)) = Ms(mu(b,c,a),d)(u)",
    },
    same("dual LR", "Ls(c,d)(Rs(a,b)(u)) = Rs(a,b)(Ls(c,d)(u)) = Ms(d,a)(Ms(c,b)(u))"),
];

pub const DUAL_PARTIAL: [Family; 5] = [
    same("dual RR", "Rs(a,b)(Rs(c,d)(u)) + Rs(mu(a,b,c),d)(u) + Rs(a,mu(b,c,d))(u) = 0"),
    same("dual LL", "Ls(c,d)(Ls(a,b)(u)) + Ls(a,mu(b,c,d))(u) + Ls(mu(a,b,c),d)(u) = 0"),
    Family {
        name: "dual MR",
        printed: "Ms(a,d)(Rs mu(b,c)(u)) + Rs(d,b)(Ms(a,c)(u)) + Ms(a,mu(d,b,c))(u) = 0",
        reading: "Ms(a,d)(Rs(b,c)(u)) + Rs(d,b)(Ms(a,c)(u)) + Ms(a,mu(d,b,c))(u) = 0",
    },
    Family {
        name: "dual ML",
        printed: "M(a,d)(R(b,c)(u)) + Ls(c,a)(Ms(b,d)(u)) + Ms(mu(b,c,a),d)(u) = 0",
        reading: "Ms(a,d)(Ls(b,c)(u)) + Ls(c,a)(Ms(b,d)(u)) + Ms(mu(b,c,a),d)(u) = 0",
    },
    same("dual LR", "Ls(c,d)(Rs(a,b)(u)) + Rs(a,b)(Ls(c,d)(u)) + Ms(d,a)(Ms(c,b)(u)) = 0"),
];

pub const DUAL_MIDDLE: Family = same("dual middle", "Ms(a,z)(Ms(b,y)(Ms(c,x)(u))) = Ms(mu(c,b,a),mu(z,y,x))(u)");

/// Cross conditions of a matched pair, `x, y, z` in the first algebra and
/// `a, b, c` in the second.
pub const MATCHED_TOTAL: [Family; 20] = [
    same("BBAAA", "muA(LB(a,b)(x),y,z) = LB[a,RA(x,y)(b)](z) = LB(a,b)(muA(x,y,z))"),
    same("BABAA", "muA(MB(a,b)(x),y,z) = LB[a,MA(x,y)(b)](z) = MB[a,RA(y,z)(b)](x)"),
    same("ABBAA", "muA(RB(a,b)(x),y,z) = muA[x,LB(a,b)(y),z] = RB[a,RA(y,z)(b)](x)"),
    same("AABBA", "LB[LA(x,y)(a),b](z) = muA[x,RB(a,b)(y),z] = muA[x,y,LB(a,b)(z)]"),
    same("ABABA", "LB[MA(x,y)(a),b](z) = muA[x,MB(a,b)(y),z] = RB[a,MA(y,z)(b)](x)"),
    same("BAABA", "LB[RA(x,y)(a),b](z) = LB[a,LA(x,y)(b)](z) = MB[a,MA(y,z)(b)](x)"),
    same("AABAB", "MB[LA(x,y)(a),b](z) = RB[MA(y,z)(a),b](x) = muA[x,y,MB(a,b)(z)]"),
    same("ABAAB", "MB[MA(x,y)(a),b](z) = RB[RA(y,z)(a),b](x) = RB[a,LA(y,z)(b)](x)"),
    same("BAAAB", "MB[RA(x,y)(a),b](z) = MB(a,b)(muA(x,y,z)) = MB[a,LA(y,z)(b)](x)"),
    same("AAABB", "RB(a,b)(muA(x,y,z)) = RB[LA(y,z)(a),b](x) = muA[x,y,RB(a,b)(z)]"),
    same("AABBB", "muB[LA(x,y)(a),b,c] = LA[x,RB(a,b)(y)](c) = LA(x,y)(muB(a,b,c))"),
    same("ABABB", "muB[MA(x,y)(a),b,c] = LA[x,MB(a,b)(y)](c) = MA[x,RB(b,c)(y)](a)"),
    same("BAABB", "muB[RA(x,y)(a),b,c] = muB[a,LA(x,y)(b),c] = RA[x,RB(b,c)(y)](a)"),
    same("BBAAB", "LA[LB(a,b)(x),y](c) = muB[a,RA(x,y)(b),c] = muB[a,b,LA(x,y)(c)]"),
    same("BABAB", "LA[MB(a,b)(x),y](c) = muB[a,MA(x,y)(b),c] = RA[x,MB(b,c)(y)](a)"),
    same("ABBAB", "LA[RB(a,b)(x),y](c) = LA[x,LB(a,b)(y)](c) = MA[x,MB(b,c)(y)](a)"),
    same("BBABA", "MA[LB(a,b)(x),y](c) = RA[MB(b,c)(x),y](a) = muB[a,b,MA(x,y)(c)]"),
    same("BABBA", "MA[MB(a,b)(x),y](c) = RA[RB(b,c)(x),y](a) = RA[x,LB(b,c)(y)](a)"),
    same("ABBBA", "MA[RB(a,b)(x),y](c) = MA(x,y)(muB(a,b,c)) = MA[x,LB(b,c)(y)](a)"),
    same("BBBAA", "RA(x,y)(muB(a,b,c)) = RA[LB(b,c)(x),y](a) = muB[a,b,RA(x,y)(c)]"),
];

pub const MATCHED_PARTIAL: [Family; 20] = [
    same("BBAAA", "muA(LB(a,b)(x),y,z) + LB[a,RA(y,z)(b)](z) + LB(a,b)(muA(x,y,z)) = 0"),
    same("BABAA", "muA(MB(a,b)(x),y,z) + LB[a,MA(x,y)(b)](z) + MB[a,RA(y,z)(b)](x) = 0"),
    same("ABBAA", "muA(RB(a,b)(x),y,z) + muA[x,LB(a,b)(y),z] + RB[a,RA(y,z)(b)](x) = 0"),
    same("AABBA", "LB[LA(x,y)(a),b](z) + muA[x,RB(a,b)(y),z] + muA[x,y,LB(a,b)(z)] = 0"),
    same("ABABA", "LB[MA(x,y)(a),b](z) + muA[x,MB(a,b)(y),z] + RB[a,MA(y,z)(b)](x) = 0"),
    same("BAABA", "LB[RA(x,y)(a),b](z) + LB[a,LA(x,y)(b)](z) + MB[a,MA(y,z)(b)](x) = 0"),
    same("AABAB", "MB[LA(x,y)(a),b](z) + RB[MA(y,z)(a),b](x) + muA[x,y,MB(a,b)(z)] = 0"),
    same("ABAAB", "MB[MA(x,y)(a),b](z) + RB[RA(y,z)(a),b](x) + RB[a,LA(y,z)(b)](x) = 0"),
    Family {
        name: "BAAAB",
        printed: "MB[RA(x,y)(a),b](z) + MB(a,b) (muA(x,y,z) + MB[a,LA(y,z)(b)](x) = 0",
        reading: "MB[RA(x,y)(a),b](z) + MB(a,b)(muA(x,y,z)) + MB[a,LA(y,z)(b)](x) = 0",
    },
    same("AAABB", "RB(a,b)(muA(x,y,z)) + RB[LA(y,z)(a),b](x) + muA[x,y,RB(a,b)(z)] = 0"),
    same("AABBB", "muB[LA(x,y)(a),b,c] + LA[x,RB(a,b)(y)](c) + LA(x,y)(muB(a,b,c)) = 0"),
    same("ABABB", "muB[MA(x,y)(a),b,c] + LA[x,MB(a,b)(y)](c) + MA[x,RB(b,c)(y)](a) = 0"),
    same("BAABB", "muB[RA(x,y)(a),b,c] + muB[a,LA(x,y)(b),c] + RA[x,RB(b,c)(y)](a) = 0"),
    same("BBAAB", "LA[LB(a,b)(x),y](c) + muB[a,RA(x,y)(b),c] + muB[a,b,LA(x,y)(c)] = 0"),
    same("BABAB", "LA[MB(a,b)(x),y](c) + muB[a,MA(x,y)(b),c] + RA[x,MB(b,c)(y)](a) = 0"),
    same("ABBAB", "LA[RB(a,b)(x),y](c) + LA[x,LB(a,b)(y)](c) + MA[x,MB(b,c)(y)](a) = 0"),
    same("BBABA", "MA[LB(a,b)(x),y](c) + RA[MB(b,c)(x),y](a) + muB[a,b,MA(x,y)(c)] = 0"),
    same("BABBA", "MA[MB(a,b)(x),y](c) + RA[RB(b,c)(x),y](a) + RA[x,LB(b,c)(y)](a) = 0"),
    same("ABBBA", "MA[RB(a,b)(x),y](c) + MA(x,y)(muB(a,b,c)) + MA[x,LB(b,c)(y)](a) = 0"),
    same("BBBAA", "RA(x,y)(muB(a,b,c)) + RA[LB(b,c)(x),y](a) + muB[a,b,RA(x,y)(c)] = 0"),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_chains_and_sums() {
        let id = parse("L(a,b)(L(c,d)(v)) = L(mu(a,b,c),d)(v)").unwrap();
        assert_eq!(id.terms.len(), 2);
        assert_eq!(id.relation, Relation::Equal);
        assert_eq!(id.vars(), vec!['a', 'b', 'c', 'd', 'v']);
        let id = parse("muA[x,y,z] + muA(x,y,z) = 0").unwrap();
        assert_eq!(id.relation, Relation::SumZero);
    }

    #[test]
    fn every_reading_parses() {
        let all = TRIMODULE_TOTAL
            .iter()
            .chain(&TRIMODULE_PARTIAL)
            .chain(&DUAL_TOTAL)
            .chain(&DUAL_PARTIAL)
            .chain(&MATCHED_TOTAL)
            .chain(&MATCHED_PARTIAL)
            .chain([&MIDDLE_AXIOM, &DUAL_MIDDLE]);
        for f in all {
            let id = parse(f.reading).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert_eq!(id.terms.len(), if f.name.contains("middle") { 2 } else { 3 }, "{}", f.name);
        }
    }

    #[test]
    fn unbalanced_printed_form_is_rejected() {
        let f = MATCHED_PARTIAL.iter().find(|f| f.printed != f.reading).unwrap();
        assert!(parse(f.printed).is_err());
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "L(a,b)", "mu(a,b)", "a = ", "a + b", "a ? b", "L(a,b)(v) extra"] {
            assert!(parse(bad).is_err(), "{bad:?}");
        }
    }
}
