//! The structure file: UTF-8 JSON with a `kind`, a field descriptor, sizes
//! and sparse tensor sections of `{"idx": [...], "val": "..."}` records.
//!
//! ```json
//! {
//!   "kind": "ternary_algebra",
//!   "field": {"type": "prime", "p": 5},
//!   "dim": 2,
//!   "product": [
//!     {"idx": [0, 0, 0, 1], "val": "1"}
//!   ]
//! }
//! ```
//!
//! Index conventions: algebra records `[i,j,k,l]` give `c^l_{ijk}`,
//! coalgebra records `[l,r,s,t]` give `a^{rst}_l`, action records are
//! `[a,b,row,col]` and linear-map records `[row,col]`. Unlisted entries are
//! zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::Deserialize;
use serde_json::Value;

use ternary_core::{
    ActionTriple, DenseTensor4, FieldSpec, InfBialgebra, LinearMap, MatchedPairData, TernaryAlgebra,
    TernaryCoalgebra, Trimodule, Variant,
};

/// A malformed structure file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based line of a JSON syntax error.
    pub line: Option<usize>,
    /// Section and 0-based record number of a bad record.
    pub record: Option<(String, usize)>,
    pub message: String,
}

impl FormatError {
    fn msg(message: impl Into<String>) -> FormatError {
        FormatError {
            line: None,
            record: None,
            message: message.into(),
        }
    }

    fn at(section: &str, record: usize, message: impl Into<String>) -> FormatError {
        FormatError {
            line: None,
            record: Some((section.to_string(), record)),
            message: message.into(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some((s, r)) = &self.record {
            write!(f, "section `{s}`, record {r}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for FormatError {}

type Result<T> = std::result::Result<T, FormatError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Algebra(TernaryAlgebra),
    Coalgebra(TernaryCoalgebra),
    Trimodule(Trimodule),
    MatchedPair(MatchedPairData),
    Bialgebra(InfBialgebra),
    Map(LinearMap),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Algebra(_) => "ternary_algebra",
            Structure::Coalgebra(_) => "ternary_coalgebra",
            Structure::Trimodule(_) => "trimodule",
            Structure::MatchedPair(_) => "matched_pair",
            Structure::Bialgebra(_) => "inf_bialgebra",
            Structure::Map(_) => "linear_map",
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Structure::Algebra(a) => a.field(),
            Structure::Coalgebra(c) => c.field(),
            Structure::Trimodule(t) => t.base.field(),
            Structure::MatchedPair(m) => m.field(),
            Structure::Bialgebra(b) => b.field(),
            Structure::Map(m) => m.field(),
        }
    }
}

impl From<ternary_core::search::Structure> for Structure {
    fn from(s: ternary_core::search::Structure) -> Structure {
        use ternary_core::search::Structure as S;
        match s {
            S::Algebra(a) => Structure::Algebra(a),
            S::Coalgebra(c) => Structure::Coalgebra(c),
            S::Bialgebra(b) => Structure::Bialgebra(b),
        }
    }
}

/// A structure with its optional free-text comment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub structure: Structure,
    pub comment: Option<String>,
}

impl Document {
    pub fn new(structure: Structure) -> Document {
        Document {
            structure,
            comment: None,
        }
    }

    pub fn with_comment(structure: Structure, comment: impl Into<String>) -> Document {
        Document {
            structure,
            comment: Some(comment.into()),
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum FieldDesc {
    Rational,
    Prime { p: u64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    idx: Vec<usize>,
    val: String,
}

const SIZE_KEYS: [&str; 6] = ["dim", "dim_a", "dim_b", "module_dim", "rows", "cols"];

fn sections_for(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "ternary_algebra" => &["product"],
        "ternary_coalgebra" => &["coproduct"],
        "trimodule" => &["product", "left", "middle", "right"],
        "matched_pair" => &[
            "product_a",
            "product_b",
            "a_on_b_left",
            "a_on_b_middle",
            "a_on_b_right",
            "b_on_a_left",
            "b_on_a_middle",
            "b_on_a_right",
        ],
        "inf_bialgebra" => &["product", "coproduct"],
        "linear_map" => &["entries"],
        _ => return None,
    })
}

fn sizes_for(kind: &str) -> &'static [&'static str] {
    match kind {
        "trimodule" => &["dim", "module_dim"],
        "matched_pair" => &["dim_a", "dim_b"],
        "linear_map" => &["rows", "cols"],
        _ => &["dim"],
    }
}

fn flags_for(kind: &str) -> &'static [&'static str] {
    match kind {
        "trimodule" => &["variant", "quasi"],
        "matched_pair" => &["variant", "strict"],
        "inf_bialgebra" => &["variant"],
        _ => &[],
    }
}

fn line_of(e: &serde_json::Error) -> FormatError {
    FormatError {
        line: Some(e.line()),
        record: None,
        message: e.to_string(),
    }
}

struct Reader {
    obj: serde_json::Map<String, Value>,
    field: FieldSpec,
}

impl Reader {
    fn size(&self, key: &str) -> Result<usize> {
        match self.obj.get(key) {
            Some(Value::Number(n)) => n
                .as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| FormatError::msg(format!("`{key}` must be a non-negative integer"))),
            Some(_) => Err(FormatError::msg(format!("`{key}` must be a non-negative integer"))),
            None => Err(FormatError::msg(format!("missing `{key}`"))),
        }
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.obj.get(key) {
            None => Ok(false),
            Some(Value::Bool(b)) => Ok(*b),
            Some(_) => Err(FormatError::msg(format!("`{key}` must be true or false"))),
        }
    }

    fn variant(&self) -> Result<Variant> {
        match self.obj.get("variant") {
            None => Err(FormatError::msg("missing `variant`")),
            Some(Value::String(s)) => s.parse().map_err(|e: ternary_core::Error| FormatError::msg(e.to_string())),
            Some(_) => Err(FormatError::msg("`variant` must be a string")),
        }
    }

    fn records(&self, section: &str) -> Result<Vec<RawRecord>> {
        let Some(v) = self.obj.get(section) else {
            return Ok(Vec::new());
        };
        let Value::Array(items) = v else {
            return Err(FormatError::msg(format!("section `{section}` must be a list of records")));
        };
        items
            .iter()
            .enumerate()
            .map(|(i, item)| {
                RawRecord::deserialize(item).map_err(|e| FormatError::at(section, i, format!("malformed record: {e}")))
            })
            .collect()
    }

    fn tensor(&self, section: &str, dims: [usize; 4]) -> Result<DenseTensor4> {
        let mut t = DenseTensor4::zeros(self.field, dims);
        let mut seen = BTreeSet::new();
        for (i, r) in self.records(section)?.into_iter().enumerate() {
            let idx: [usize; 4] = r
                .idx
                .as_slice()
                .try_into()
                .map_err(|_| FormatError::at(section, i, format!("expected 4 indices, found {}", r.idx.len())))?;
            if idx.iter().zip(dims).any(|(&x, d)| x >= d) {
                return Err(FormatError::at(section, i, format!("index {idx:?} out of range for {dims:?}")));
            }
            if !seen.insert(idx) {
                return Err(FormatError::at(section, i, format!("duplicate idx {idx:?}")));
            }
            let v = self.field.parse_scalar(&r.val).map_err(|e| FormatError::at(section, i, e.to_string()))?;
            t.set(idx, v).expect("range checked");
        }
        Ok(t)
    }

    fn map(&self, rows: usize, cols: usize) -> Result<LinearMap> {
        let mut m = LinearMap::zero(self.field, rows, cols);
        let mut seen = BTreeSet::new();
        for (i, r) in self.records("entries")?.into_iter().enumerate() {
            let [row, col] = r.idx[..] else {
                return Err(FormatError::at("entries", i, format!("expected 2 indices, found {}", r.idx.len())));
            };
            if row >= rows || col >= cols {
                return Err(FormatError::at("entries", i, format!("index [{row}, {col}] out of range")));
            }
            if !seen.insert((row, col)) {
                return Err(FormatError::at("entries", i, format!("duplicate idx [{row}, {col}]")));
            }
            let v = self.field.parse_scalar(&r.val).map_err(|e| FormatError::at("entries", i, e.to_string()))?;
            m.set(row, col, v).expect("range checked");
        }
        Ok(m)
    }
}

fn core(e: ternary_core::Error) -> FormatError {
    FormatError::msg(e.to_string())
}

/// Parses a structure file.
pub fn read(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| line_of(&e))?;
    let Value::Object(obj) = value else {
        return Err(FormatError::msg("top level must be an object"));
    };
    let kind = match obj.get("kind") {
        Some(Value::String(k)) => k.clone(),
        _ => return Err(FormatError::msg("missing string member `kind`")),
    };
    let sections = sections_for(&kind).ok_or_else(|| FormatError::msg(format!("unknown kind {kind:?}")))?;
    for key in obj.keys() {
        let known = ["kind", "comment", "field"].contains(&key.as_str())
            || sizes_for(&kind).contains(&key.as_str())
            || flags_for(&kind).contains(&key.as_str())
            || sections.contains(&key.as_str());
        if !known {
            return Err(FormatError::msg(format!("unexpected member `{key}` for kind {kind}")));
        }
    }
    let comment = match obj.get("comment") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(FormatError::msg("`comment` must be a string")),
    };
    let field = match obj.get("field") {
        None => return Err(FormatError::msg("missing `field`")),
        Some(v) => match FieldDesc::deserialize(v).map_err(|e| FormatError::msg(format!("bad field descriptor: {e}")))? {
            FieldDesc::Rational => FieldSpec::Rational,
            FieldDesc::Prime { p } => FieldSpec::prime(p).map_err(core)?,
        },
    };
    let r = Reader { obj, field };
    let structure = match kind.as_str() {
        "ternary_algebra" => {
            let n = r.size("dim")?;
            Structure::Algebra(TernaryAlgebra::new(r.tensor("product", [n; 4])?).map_err(core)?)
        }
        "ternary_coalgebra" => {
            let n = r.size("dim")?;
            Structure::Coalgebra(TernaryCoalgebra::new(r.tensor("coproduct", [n; 4])?).map_err(core)?)
        }
        "inf_bialgebra" => {
            let n = r.size("dim")?;
            let a = TernaryAlgebra::new(r.tensor("product", [n; 4])?).map_err(core)?;
            let c = TernaryCoalgebra::new(r.tensor("coproduct", [n; 4])?).map_err(core)?;
            Structure::Bialgebra(InfBialgebra::new(a, c, r.variant()?).map_err(core)?)
        }
        "trimodule" => {
            let (n, m) = (r.size("dim")?, r.size("module_dim")?);
            let a = TernaryAlgebra::new(r.tensor("product", [n; 4])?).map_err(core)?;
            let d = [n, n, m, m];
            let acts = ActionTriple::new(r.tensor("left", d)?, r.tensor("middle", d)?, r.tensor("right", d)?)
                .map_err(core)?;
            Structure::Trimodule(Trimodule::new(a, acts, r.variant()?, r.flag("quasi")?).map_err(core)?)
        }
        "matched_pair" => {
            let (n, m) = (r.size("dim_a")?, r.size("dim_b")?);
            let a = TernaryAlgebra::new(r.tensor("product_a", [n; 4])?).map_err(core)?;
            let b = TernaryAlgebra::new(r.tensor("product_b", [m; 4])?).map_err(core)?;
            let (db, da) = ([n, n, m, m], [m, m, n, n]);
            let on_b = ActionTriple::new(
                r.tensor("a_on_b_left", db)?,
                r.tensor("a_on_b_middle", db)?,
                r.tensor("a_on_b_right", db)?,
            )
            .map_err(core)?;
            let on_a = ActionTriple::new(
                r.tensor("b_on_a_left", da)?,
                r.tensor("b_on_a_middle", da)?,
                r.tensor("b_on_a_right", da)?,
            )
            .map_err(core)?;
            Structure::MatchedPair(
                MatchedPairData::new(a, b, on_b, on_a, r.variant()?, r.flag("strict")?).map_err(core)?,
            )
        }
        "linear_map" => Structure::Map(r.map(r.size("rows")?, r.size("cols")?)?),
        _ => unreachable!("kind validated"),
    };
    Ok(Document { structure, comment })
}

fn field_json(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rational => r#"{"type": "rational"}"#.to_string(),
        FieldSpec::Prime(p) => format!(r#"{{"type": "prime", "p": {p}}}"#),
    }
}

type Records = Vec<(Vec<usize>, String)>;

fn records<I: Iterator<Item = (Vec<usize>, String)>>(it: I) -> Records {
    let mut v: Vec<_> = it.collect();
    v.sort();
    v
}

fn tensor_records(t: &DenseTensor4) -> Records {
    records(t.nonzeros().map(|(i, v)| (i.to_vec(), v.to_string())))
}

fn write_section(out: &mut String, name: &str, recs: &[(Vec<usize>, String)]) {
    if recs.is_empty() {
        let _ = write!(out, ",\n  {}: []", json_str(name));
        return;
    }
    let _ = write!(out, ",\n  {}: [", json_str(name));
    for (i, (idx, val)) in recs.iter().enumerate() {
        let idx: Vec<String> = idx.iter().map(|x| x.to_string()).collect();
        let sep = if i + 1 == recs.len() { "" } else { "," };
        let _ = write!(out, "\n    {{\"idx\": [{}], \"val\": {}}}{sep}", idx.join(", "), json_str(val));
    }
    out.push_str("\n  ]");
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Serializes a document with records sorted by index, one per line.
pub fn write(doc: &Document) -> String {
    let s = &doc.structure;
    let mut out = format!("{{\n  \"kind\": {}", json_str(s.kind()));
    if let Some(c) = &doc.comment {
        let _ = write!(out, ",\n  \"comment\": {}", json_str(c));
    }
    let _ = write!(out, ",\n  \"field\": {}", field_json(s.field()));
    let mut sizes: BTreeMap<&str, usize> = BTreeMap::new();
    let mut flags: Vec<(&str, String)> = Vec::new();
    let mut sections: Vec<(&str, Records)> = Vec::new();
    match s {
        Structure::Algebra(a) => {
            sizes.insert("dim", a.dim());
            sections.push(("product", tensor_records(a.product())));
        }
        Structure::Coalgebra(c) => {
            sizes.insert("dim", c.dim());
            sections.push(("coproduct", tensor_records(c.coproduct())));
        }
        Structure::Bialgebra(b) => {
            sizes.insert("dim", b.dim());
            flags.push(("variant", json_str(b.variant.name())));
            sections.push(("product", tensor_records(b.algebra.product())));
            sections.push(("coproduct", tensor_records(b.coalgebra.coproduct())));
        }
        Structure::Trimodule(t) => {
            sizes.insert("dim", t.base.dim());
            sizes.insert("module_dim", t.module_dim());
            flags.push(("variant", json_str(t.variant.name())));
            flags.push(("quasi", t.quasi.to_string()));
            sections.push(("product", tensor_records(t.base.product())));
            sections.push(("left", tensor_records(t.actions.left())));
            sections.push(("middle", tensor_records(t.actions.middle())));
            sections.push(("right", tensor_records(t.actions.right())));
        }
        Structure::MatchedPair(m) => {
            sizes.insert("dim_a", m.a.dim());
            sizes.insert("dim_b", m.b.dim());
            flags.push(("variant", json_str(m.variant.name())));
            flags.push(("strict", m.strict.to_string()));
            sections.push(("product_a", tensor_records(m.a.product())));
            sections.push(("product_b", tensor_records(m.b.product())));
            sections.push(("a_on_b_left", tensor_records(m.on_b.left())));
            sections.push(("a_on_b_middle", tensor_records(m.on_b.middle())));
            sections.push(("a_on_b_right", tensor_records(m.on_b.right())));
            sections.push(("b_on_a_left", tensor_records(m.on_a.left())));
            sections.push(("b_on_a_middle", tensor_records(m.on_a.middle())));
            sections.push(("b_on_a_right", tensor_records(m.on_a.right())));
        }
        Structure::Map(m) => {
            sizes.insert("rows", m.rows());
            sizes.insert("cols", m.cols());
            let recs = (0..m.rows())
                .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
                .filter(|&(r, c)| !m.get(r, c).is_zero())
                .map(|(r, c)| (vec![r, c], m.get(r, c).to_string()));
            sections.push(("entries", records(recs)));
        }
    }
    for key in SIZE_KEYS {
        if let Some(v) = sizes.get(key) {
            let _ = write!(out, ",\n  {}: {v}", json_str(key));
        }
    }
    for (k, v) in flags {
        let _ = write!(out, ",\n  {}: {v}", json_str(k));
    }
    for (name, recs) in &sections {
        write_section(&mut out, name, recs);
    }
    out.push_str("\n}\n");
    out
}

/// Compact single-line form, for streaming search results.
pub fn write_line(doc: &Document) -> String {
    let v: Value = serde_json::from_str(&write(doc)).expect("writer emits valid JSON");
    serde_json::to_string(&v).expect("serializes")
}
