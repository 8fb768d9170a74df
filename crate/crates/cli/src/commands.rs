use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use ternary_core::random::{random_actions, random_algebra, random_bialgebra, random_coalgebra, rng};
use ternary_core::search::{count_by_class, EntrySpace, SearchSpec, Target};
use ternary_core::{
    bicross_sum, dual_trimodule, dualize_algebra, dualize_coalgebra, fixtures, is_algebra_morphism,
    is_bialgebra_equivalence, is_coalgebra_morphism, iso_search, semidirect_sum, with_workers, Engine, FieldSpec,
    LinearMap, MatchedPairData, Trimodule, Variant, VerificationReport,
};

use crate::format::{self, Document, Structure};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ternary", version, about = "Exact checks for ternary algebras, coalgebras and bialgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a structure file against an associativity variant.
    Verify {
        file: PathBuf,
        /// Defaults to the file's own variant, or total.
        #[arg(long)]
        variant: Option<Variant>,
        #[arg(long = "as", value_enum)]
        as_kind: Option<AsKind>,
        #[arg(long, value_enum, default_value_t = EngineChoice::Fast)]
        engine: EngineChoice,
        /// Source structure for `--as morphism`.
        #[arg(long)]
        source: Option<PathBuf>,
        /// Target structure for `--as morphism`.
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Write the dual structure.
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the semidirect-sum algebra of a trimodule.
    Semidirect {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the bicrossed-sum algebra of a matched pair.
    Bicross {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for an isomorphism between two algebras over a prime field.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate structures of a target class.
    Search {
        #[arg(long)]
        dim: usize,
        /// `q` or `p<prime>`, e.g. `p3`.
        #[arg(long)]
        field: String,
        /// Entry bound for `--field q`.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long)]
        target: String,
        #[arg(long)]
        limit: Option<usize>,
        /// Write one file per hit here instead of streaming to stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Print class counts of the whole space instead of hits.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print a built-in example.
    Example {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check seeded random structures and print one report per instance.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AsKind {
    Algebra,
    Coalgebra,
    Trimodule,
    MatchedPair,
    Bialgebra,
    Morphism,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Fast,
    Oracle,
    All,
}

/// Failure of a command before any verdict: bad input, unreadable files.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

type Outcome = Result<i32, InputError>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn load(path: &Path) -> Result<Document, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    format::read(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit(doc: &Document, output: Option<&Path>, out: &mut dyn Write) -> Result<(), InputError> {
    let text = format::write(doc);
    match output {
        Some(p) => fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(InputError::from),
    }
}

fn pooled<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match workers {
        Some(w) => with_workers(w, f),
        None => f(),
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Verify {
            file,
            variant,
            as_kind,
            engine,
            source,
            target,
            workers,
        } => {
            let doc = load(&file)?;
            if as_kind == Some(AsKind::Morphism) {
                let (Some(s), Some(t)) = (source, target) else {
                    return Err(InputError("--as morphism needs --source and --target".into()));
                };
                let (s, t) = (load(&s)?, load(&t)?);
                let report = pooled(workers, || verify_morphism(&doc.structure, &s.structure, &t.structure))?;
                writeln!(out, "{report}")?;
                return Ok(if report.verdict { EXIT_PASS } else { EXIT_FAIL });
            }
            if let Some(k) = as_kind {
                check_kind(k, &doc.structure)?;
            }
            let variant = variant.unwrap_or_else(|| file_variant(&doc.structure));
            let (code, text) = pooled(workers, || verify(&doc.structure, variant, engine))?;
            out.write_all(text.as_bytes())?;
            Ok(code)
        }
        Command::Dualize { file, output } => {
            let doc = load(&file)?;
            let dual = dual_of(doc.structure)?;
            let comment = doc.comment.map(|c| format!("dual of: {c}"));
            emit(&Document { structure: dual, comment }, output.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Semidirect { file, output } => {
            let Structure::Trimodule(t) = load(&file)?.structure else {
                return Err(InputError("semidirect expects a trimodule file".into()));
            };
            let doc = Document::with_comment(Structure::Algebra(semidirect_sum(&t)), "semidirect sum");
            emit(&doc, output.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Bicross { file, output } => {
            let Structure::MatchedPair(mp) = load(&file)?.structure else {
                return Err(InputError("bicross expects a matched_pair file".into()));
            };
            let doc = Document::with_comment(Structure::Algebra(bicross_sum(&mp)), "bicrossed sum");
            emit(&doc, output.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Iso { a, b, output } => {
            let (a, b) = (algebra_of(load(&a)?.structure)?, algebra_of(load(&b)?.structure)?);
            match iso_search(&a, &b)? {
                Some(f) => {
                    emit(&Document::with_comment(Structure::Map(f), "isomorphism"), output.as_deref(), out)?;
                    Ok(EXIT_PASS)
                }
                None => {
                    writeln!(out, "none")?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Search {
            dim,
            field,
            bound,
            target,
            limit,
            out_dir,
            count,
            workers,
        } => {
            let entries = entry_space(&field, bound)?;
            let target: Target = target.parse()?;
            let mut spec = SearchSpec::new(dim, entries, target);
            spec.limit = limit;
            search(spec, workers, out_dir.as_deref(), count, out, err)
        }
        Command::Example { name, list, output } => {
            if list || name.is_none() {
                for (n, about) in EXAMPLES {
                    writeln!(out, "{n:<20} {about}")?;
                }
                return Ok(EXIT_PASS);
            }
            let name = name.expect("checked");
            let doc = example(&name).ok_or_else(|| InputError(format!("unknown example {name:?}; try --list")))?;
            emit(&doc, output.as_deref(), out)?;
            Ok(EXIT_PASS)
        }
        Command::Fuzz { seed, count, workers } => {
            let text = pooled(workers, || fuzz(seed, count));
            out.write_all(text.as_bytes())?;
            Ok(EXIT_PASS)
        }
    }
}

/// Algebra and coalgebra swap; bialgebras, trimodules and maps stay in kind.
pub fn dual_of(s: Structure) -> Result<Structure, InputError> {
    Ok(match s {
        Structure::Algebra(a) => Structure::Coalgebra(dualize_algebra(&a)),
        Structure::Coalgebra(c) => Structure::Algebra(dualize_coalgebra(&c)),
        Structure::Bialgebra(b) => Structure::Bialgebra(b.dual()),
        Structure::Trimodule(t) => Structure::Trimodule(dual_trimodule(&t)),
        Structure::Map(m) => Structure::Map(ternary_core::morphisms::dual_map(&m)),
        Structure::MatchedPair(_) => return Err(InputError("matched pairs have no dual here".into())),
    })
}

fn check_kind(k: AsKind, s: &Structure) -> Result<(), InputError> {
    let ok = matches!(
        (k, s),
        (AsKind::Algebra, Structure::Algebra(_))
            | (AsKind::Coalgebra, Structure::Coalgebra(_))
            | (AsKind::Trimodule, Structure::Trimodule(_))
            | (AsKind::MatchedPair, Structure::MatchedPair(_))
            | (AsKind::Bialgebra, Structure::Bialgebra(_))
    );
    if ok {
        Ok(())
    } else {
        Err(InputError(format!("file holds a {}, not {k:?}", s.kind()).to_lowercase()))
    }
}

fn file_variant(s: &Structure) -> Variant {
    match s {
        Structure::Trimodule(t) => t.variant,
        Structure::MatchedPair(m) => m.variant,
        Structure::Bialgebra(b) => b.variant,
        _ => Variant::Total,
    }
}

fn algebra_of(s: Structure) -> Result<ternary_core::TernaryAlgebra, InputError> {
    match s {
        Structure::Algebra(a) => Ok(a),
        other => Err(InputError(format!("expected a ternary_algebra, found {}", other.kind()))),
    }
}

fn entry_space(field: &str, bound: Option<u32>) -> Result<EntrySpace, InputError> {
    if field == "q" {
        let b = bound.ok_or_else(|| InputError("--field q needs --bound".into()))?;
        return Ok(EntrySpace::Bounded(b));
    }
    let p = field
        .strip_prefix('p')
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| InputError(format!("bad field {field:?}; expected q or p<prime>")))?;
    Ok(EntrySpace::Prime(FieldSpec::prime(p)?))
}

/// Runs the requested engines and renders the report. Returns the exit code
/// and the text.
pub fn verify(s: &Structure, variant: Variant, engine: EngineChoice) -> Result<(i32, String), InputError> {
    let fast = || fast_report(s, variant);
    let (report, mut disagreements) = match engine {
        EngineChoice::Fast => (fast()?, Vec::new()),
        EngineChoice::Oracle => (oracle_report(s, variant)?, Vec::new()),
        EngineChoice::All => {
            let f = fast()?;
            let o = oracle_report(s, variant)?;
            let mut d = f.disagreements.clone();
            let index = |r: &VerificationReport| r.witness.as_ref().map(|w| w.index.clone());
            if f.verdict != o.verdict || index(&f) != index(&o) {
                d.push(format!(
                    "fast says {} at {:?}, oracle says {} at {:?}",
                    f.verdict,
                    index(&f),
                    o.verdict,
                    index(&o)
                ));
            }
            let mut combined = VerificationReport::all_of(format!("{} (all engines)", f.name), vec![f, o]);
            combined.disagreements.clear();
            (combined, d)
        }
    };
    let mut text = report.to_string();
    let code = if engine == EngineChoice::All && !disagreements.is_empty() {
        for d in disagreements.drain(..) {
            text.push_str(&format!("engine disagreement: {d}\n"));
        }
        EXIT_DISAGREE
    } else if report.verdict {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    text.push_str(if report.verdict { "verdict: PASS\n" } else { "verdict: FAIL\n" });
    Ok((code, text))
}

fn trimodule_with(t: &Trimodule, variant: Variant) -> Result<Trimodule, InputError> {
    Ok(Trimodule::new(t.base.clone(), t.actions.clone(), variant, t.quasi)?)
}

fn pair_with(m: &MatchedPairData, variant: Variant) -> Result<MatchedPairData, InputError> {
    Ok(MatchedPairData::new(m.a.clone(), m.b.clone(), m.on_b.clone(), m.on_a.clone(), variant, m.strict)?)
}

fn fast_report(s: &Structure, variant: Variant) -> Result<VerificationReport, InputError> {
    Ok(match s {
        Structure::Algebra(a) => a.check(variant),
        Structure::Coalgebra(c) => c.check(variant),
        Structure::Trimodule(t) => trimodule_with(t, variant)?.check()?,
        Structure::MatchedPair(m) => pair_with(m, variant)?.check()?,
        Structure::Bialgebra(b) => {
            let mut b = b.clone();
            b.variant = variant;
            b.check_bialgebra()
        }
        Structure::Map(_) => return Err(InputError("verify a linear_map with --as morphism".into())),
    })
}

/// The slow path: five-argument composites evaluated on vectors, and the
/// operator form of the compatibility condition.
fn oracle_report(s: &Structure, variant: Variant) -> Result<VerificationReport, InputError> {
    Ok(match s {
        Structure::Algebra(a) => a.check_oracle(variant),
        Structure::Coalgebra(c) => c.check_oracle(variant),
        Structure::Trimodule(t) => {
            let t = trimodule_with(t, variant)?;
            let mut parts = vec![semidirect_sum(&t).check_oracle(variant)];
            if !t.quasi {
                let fast = t.check()?;
                parts.extend(fast.parts.into_iter().filter(|p| p.name == "middle axiom"));
            }
            VerificationReport::all_of(format!("{variant} trimodule (oracle)"), parts)
        }
        Structure::MatchedPair(m) => {
            let m = pair_with(m, variant)?;
            let mut parts = vec![bicross_sum(&m).check_oracle(variant)];
            if m.strict {
                let fast = m.check()?;
                parts.extend(fast.parts.into_iter().filter(|p| p.name.starts_with("strict extra")));
            }
            VerificationReport::all_of(format!("{variant} matched pair (oracle)"), parts)
        }
        Structure::Bialgebra(b) => VerificationReport::all_of(
            format!("{variant} infinitesimal bialgebra (oracle)"),
            vec![
                b.algebra.check_oracle(variant),
                b.coalgebra.check_oracle(variant),
                b.compatibility_engine(Engine::Operators),
            ],
        ),
        Structure::Map(_) => return Err(InputError("verify a linear_map with --as morphism".into())),
    })
}

fn verify_morphism(map: &Structure, source: &Structure, target: &Structure) -> Result<VerificationReport, InputError> {
    let Structure::Map(f) = map else {
        return Err(InputError(format!("--as morphism expects a linear_map, found {}", map.kind())));
    };
    let invertible = |f: &LinearMap| {
        let mut r = VerificationReport::pass("invertible", 1);
        if !f.is_invertible() {
            r.verdict = false;
            r.witness = Some(ternary_core::Witness::new("invertible", Vec::new(), ternary_core::Relation::Equal));
        }
        r
    };
    let report = match (source, target) {
        (Structure::Algebra(a), Structure::Algebra(b)) => VerificationReport::all_of(
            "algebra isomorphism",
            vec![invertible(f), is_algebra_morphism(f, a, b)?],
        ),
        (Structure::Coalgebra(a), Structure::Coalgebra(b)) => VerificationReport::all_of(
            "coalgebra isomorphism",
            vec![invertible(f), is_coalgebra_morphism(f, a, b)?],
        ),
        (Structure::Bialgebra(a), Structure::Bialgebra(b)) => {
            if !f.is_invertible() {
                VerificationReport::all_of("bialgebra equivalence", vec![invertible(f)])
            } else {
                is_bialgebra_equivalence(f, a, b)?
            }
        }
        (s, t) => {
            return Err(InputError(format!("no morphism check from {} to {}", s.kind(), t.kind())));
        }
    };
    Ok(report)
}

fn search(
    spec: SearchSpec,
    workers: Option<usize>,
    out_dir: Option<&Path>,
    count: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    if count {
        let counts = pooled(workers, || count_by_class(&spec))?;
        writeln!(out, "{counts}")?;
        return Ok(EXIT_PASS);
    }
    if let Some(d) = out_dir {
        fs::create_dir_all(d).map_err(|e| InputError(format!("{}: {e}", d.display())))?;
    }
    let (hits, summary) = pooled(workers, || {
        ternary_core::enumerate(spec).map(|mut it| {
            let hits: Vec<_> = it.by_ref().collect();
            (hits, it.summary().clone())
        })
    })?;
    for (n, s) in hits.into_iter().enumerate() {
        let doc = Document::new(s.into());
        match out_dir {
            Some(d) => {
                let p = d.join(format!("hit-{n:06}.json"));
                fs::write(&p, format::write(&doc)).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
            }
            None => writeln!(out, "{}", format::write_line(&doc))?,
        }
    }
    writeln!(err, "{summary}")?;
    Ok(EXIT_PASS)
}

pub const EXAMPLES: &[(&str, &str)] = &[
    ("et1", "two-dimensional totally associative algebra"),
    ("et1-dual", "printed coproduct on the dual of et1"),
    ("ep1", "partially associative algebra mu(e1,e1,e1) = e2"),
    ("ep1-dual", "printed coproduct on the dual of ep1"),
    ("a1", "ternary product induced by A1 (likewise a2 ... a7)"),
    ("ep2", "partially associative infinitesimal bialgebra on ep1"),
    ("ep2-dual", "printed dual of ep2"),
    ("et2", "totally associative bialgebra example on et1"),
    ("swap-1", "first member of the swap-equivalent pair"),
    ("swap-2", "second member of the swap-equivalent pair"),
    ("swap-map", "the swap e1 <-> e2 certifying the equivalence"),
    ("weak-not-total-f2", "weak totally but not totally associative, over F2"),
];

/// A built-in fixture as a document with a descriptive comment.
pub fn example(name: &str) -> Option<Document> {
    let d = |s: Structure, c: &str| Some(Document::with_comment(s, c));
    if let Some(i) = name.strip_prefix('a').and_then(|i| i.parse::<usize>().ok()) {
        if (1..=7).contains(&i) {
            let (alg, _) = ternary_core::induced_from_binary(&fixtures::binary(i));
            return d(Structure::Algebra(alg), &format!("Example A{i}: ternary product induced by A{i}"));
        }
        return None;
    }
    match name {
        "et1" => d(Structure::Algebra(fixtures::et1()), "Example et1: totally associative"),
        "et1-dual" => d(Structure::Coalgebra(fixtures::et1_dual()), "Example et1: printed dual coproduct"),
        "ep1" => d(Structure::Algebra(fixtures::ep1()), "Example ep1: partially associative"),
        "ep1-dual" => d(Structure::Coalgebra(fixtures::ep1_dual()), "Example ep1: printed dual coproduct"),
        "ep2" => d(Structure::Bialgebra(fixtures::ep2()), "Example ep2: partial infinitesimal bialgebra"),
        "ep2-dual" => d(Structure::Bialgebra(fixtures::ep2_dual()), "Example ep2: printed dual"),
        "et2" => d(Structure::Bialgebra(fixtures::et2()), "Example et2: total infinitesimal bialgebra as printed"),
        "swap-1" => d(Structure::Bialgebra(fixtures::swap_pair().0), "swap example: (P, mu1, Delta1)"),
        "swap-2" => d(Structure::Bialgebra(fixtures::swap_pair().1), "swap example: (P, mu2, Delta2)"),
        "swap-map" => d(Structure::Map(fixtures::swap_map()), "swap example: f(e1) = e2, f(e2) = e1"),
        "weak-not-total-f2" => d(
            Structure::Algebra(fixtures::weak_not_total_f2()),
            "first weak totally but not totally associative product over F2",
        ),
        _ => None,
    }
}

/// Checks `count` random structures derived from `seed` and renders every
/// report. The text depends only on the arguments.
pub fn fuzz(seed: u64, count: u64) -> String {
    let f5 = FieldSpec::prime(5).expect("5 is prime");
    let mut text = format!("fuzz seed={seed} count={count}\n");
    for i in 0..count {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
        let variant = Variant::ALL[(i % 3) as usize];
        let field = if i % 4 == 3 { FieldSpec::Rational } else { f5 };
        let (label, report) = match i % 5 {
            0 => ("algebra", random_algebra(field, 2, s, 1).check(variant)),
            1 => ("coalgebra", random_coalgebra(field, 2, s, 1).check(variant)),
            2 => ("bialgebra", random_bialgebra(field, 2, s, 2, variant).check_bialgebra()),
            3 => {
                let v = if variant == Variant::Weak { Variant::Total } else { variant };
                let mut r = rng(s);
                let base = random_algebra(f5, 2, s, 3);
                let acts = random_actions(f5, 2, 2, &mut r, 3);
                let t = Trimodule::new(base, acts, v, false).expect("valid dims");
                ("trimodule", t.check().expect("under the cap"))
            }
            _ => {
                let v = if variant == Variant::Weak { Variant::Partial } else { variant };
                let mut r = rng(s);
                let a = random_algebra(f5, 1, s, 2);
                let b = random_algebra(f5, 2, s ^ 1, 2);
                let on_b = random_actions(f5, 1, 2, &mut r, 2);
                let on_a = random_actions(f5, 2, 1, &mut r, 2);
                let mp = MatchedPairData::new(a, b, on_b, on_a, v, false).expect("valid dims");
                ("matched pair", mp.check().expect("under the cap"))
            }
        };
        text.push_str(&format!("--- instance {i} ({label}, seed {s})\n{report}"));
    }
    text
}
