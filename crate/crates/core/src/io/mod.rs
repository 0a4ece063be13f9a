//! Text format for dg categories.
//!
//! Two TOML layouts are accepted. The full layout lists structure constants:
//!
//! ```toml
//! field = "q"
//! objects = ["1", "2"]
//! basis = [
//!   { source = "1", target = "1", label = "id_1", degree = 0 },
//!   { source = "2", target = "2", label = "id_2", degree = 0 },
//!   { source = "1", target = "2", label = "a", degree = 0 },
//! ]
//! differential = []
//! composition = [
//!   { g = "a", f = "id_1", h = "a", scalar = 1 },
//!   { g = "id_2", f = "a", h = "a", scalar = 1 },
//! ]
//! units = { "1" = "id_1", "2" = "id_2" }
//! ```
//!
//! A differential entry `{ from, to, scalar }` says that `d(from)` contains
//! `scalar * to`; a composition entry says that `g∘f` contains `scalar * h`.
//! Basis labels are unique across the whole category. Entries of the same
//! hom space keep their file order. A unit is either one basis label or a
//! list of `{ label, scalar }` terms.
//!
//! The quiver shorthand is recognised by its `vertices` key:
//!
//! ```toml
//! field = "q"
//! vertices = ["x"]
//! wordlength_bound = 3
//! arrows = [{ label = "e", source = "x", target = "x" }]
//! relations = ["e*e"]
//! ```
//!
//! Arrows take an optional `degree` (default 0) and an optional
//! `differential` polynomial; relations are polynomials in the arrows, and the
//! optional `degree_bound` caps the absolute degree of realized words. The
//! loader realizes the presentation and records whether it closed up.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::dgcore::{BasisElement, CategoryParts, DgCategory, Finiteness, Hom, Presentation};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar, SparseVec};

/// Degree cap used when a quiver file does not set `degree_bound`.
pub const DEFAULT_DEGREE_BOUND: i64 = 64;

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarText {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisEntry {
    source: String,
    target: String,
    label: String,
    degree: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiffEntry {
    from: String,
    to: String,
    scalar: ScalarText,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompEntry {
    g: String,
    f: String,
    h: String,
    scalar: ScalarText,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitTerm {
    label: String,
    scalar: ScalarText,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum UnitEntry {
    Label(String),
    Terms(Vec<UnitTerm>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    field: Spanned<String>,
    objects: Vec<Spanned<String>>,
    #[serde(default)]
    finiteness: Option<Finiteness>,
    #[serde(default)]
    basis: Vec<Spanned<BasisEntry>>,
    #[serde(default)]
    differential: Vec<Spanned<DiffEntry>>,
    #[serde(default)]
    composition: Vec<Spanned<CompEntry>>,
    units: Spanned<BTreeMap<String, Spanned<UnitEntry>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowEntry {
    label: String,
    source: String,
    target: String,
    #[serde(default)]
    degree: i64,
    #[serde(default)]
    differential: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    field: Spanned<String>,
    vertices: Vec<Spanned<String>>,
    wordlength_bound: Spanned<usize>,
    #[serde(default)]
    degree_bound: Option<i64>,
    #[serde(default)]
    arrows: Vec<Spanned<ArrowEntry>>,
    #[serde(default)]
    relations: Vec<Spanned<String>>,
}

/// A quiver presentation with the bounds its file asks to realize it at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverFile {
    pub presentation: Presentation,
    pub degree_bound: i64,
    pub wordlength_bound: usize,
}

impl QuiverFile {
    pub fn realize(&self) -> Result<DgCategory> {
        self.presentation.realize(self.degree_bound, self.wordlength_bound)
    }
}

/// The contents of a category file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Category(DgCategory),
    Quiver(QuiverFile),
}

impl Document {
    /// The category the file describes, realizing a quiver if needed.
    pub fn into_category(self) -> Result<DgCategory> {
        match self {
            Document::Category(c) => Ok(c),
            Document::Quiver(q) => q.realize(),
        }
    }
}

struct Source<'a> {
    text: &'a str,
    field: Option<FieldSpec>,
}

impl Source<'_> {
    fn field(&self, declared: &Spanned<String>) -> Result<FieldSpec> {
        match self.field {
            Some(f) => Ok(f),
            None => declared.get_ref().parse().map_err(|e| self.wrap(declared.span(), e)),
        }
    }

    fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error(&self, span: Range<usize>, message: impl Into<String>) -> Error {
        let (line, column) = self.position(span.start);
        Error::Parse { line, column, message: message.into() }
    }

    fn wrap(&self, span: Range<usize>, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => self.error(span, other.to_string()),
        }
    }

    fn toml_error(&self, e: toml::de::Error) -> Error {
        let span = e.span().unwrap_or(0..0);
        self.error(span, e.message().trim().to_string())
    }
}

fn scalar(field: FieldSpec, s: &ScalarText) -> Result<Scalar> {
    match s {
        ScalarText::Int(v) => Ok(field.from_i64(*v)),
        ScalarText::Text(t) => field.parse_scalar(t),
    }
}

/// Parses either layout.
pub fn parse_document(text: &str) -> Result<Document> {
    parse_document_over(text, None)
}

/// Parses either layout, replacing the declared field by `field` when given.
pub fn parse_document_over(text: &str, field: Option<FieldSpec>) -> Result<Document> {
    let src = Source { text, field };
    let table: toml::Table = text.parse().map_err(|e| src.toml_error(e))?;
    if table.contains_key("vertices") {
        let doc: QuiverDoc = toml::from_str(text).map_err(|e| src.toml_error(e))?;
        quiver_from_doc(&src, doc).map(Document::Quiver)
    } else if table.contains_key("objects") {
        let doc: CategoryDoc = toml::from_str(text).map_err(|e| src.toml_error(e))?;
        category_from_doc(&src, doc).map(Document::Category)
    } else {
        Err(src.error(0..0, "expected an `objects` list (full layout) or a `vertices` list (quiver shorthand)"))
    }
}

/// Parses either layout into a category.
pub fn parse_category(text: &str) -> Result<DgCategory> {
    parse_document(text)?.into_category()
}

/// Reads and parses a category file.
pub fn load_category(path: impl AsRef<Path>) -> Result<DgCategory> {
    parse_category(&read(path.as_ref())?)
}

/// Reads and parses a file of either layout, optionally over another field.
pub fn load_document(path: impl AsRef<Path>, field: Option<FieldSpec>) -> Result<Document> {
    parse_document_over(&read(path.as_ref())?, field)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn category_from_doc(src: &Source, doc: CategoryDoc) -> Result<DgCategory> {
    let field = src.field(&doc.field)?;
    let objects: Vec<String> = doc.objects.iter().map(|o| o.get_ref().clone()).collect();
    let n = objects.len();
    let mut object_index = HashMap::new();
    for (i, o) in doc.objects.iter().enumerate() {
        if object_index.insert(o.get_ref().as_str(), i).is_some() {
            return Err(src.error(o.span(), format!("duplicate object `{}`", o.get_ref())));
        }
    }
    let object = |name: &str, span: Range<usize>| {
        object_index.get(name).copied().ok_or_else(|| src.error(span, format!("unknown object `{name}`")))
    };

    let mut bases: Vec<Vec<BasisElement>> = vec![Vec::new(); n * n];
    let mut labels: HashMap<String, (usize, usize, usize)> = HashMap::new();
    for entry in &doc.basis {
        let b = entry.get_ref();
        let x = object(&b.source, entry.span())?;
        let y = object(&b.target, entry.span())?;
        let pair = &mut bases[x * n + y];
        if labels.insert(b.label.clone(), (x, y, pair.len())).is_some() {
            return Err(src.error(entry.span(), format!("duplicate basis label `{}`", b.label)));
        }
        pair.push(BasisElement::new(b.label.clone(), b.degree));
    }
    let lookup = |label: &str, span: Range<usize>| {
        labels.get(label).copied().ok_or_else(|| src.error(span, format!("unknown basis label `{label}`")))
    };

    let mut diff_terms: Vec<Vec<Vec<(usize, Scalar)>>> = bases.iter().map(|b| vec![Vec::new(); b.len()]).collect();
    for entry in &doc.differential {
        let d = entry.get_ref();
        let (x, y, i) = lookup(&d.from, entry.span())?;
        let (x2, y2, j) = lookup(&d.to, entry.span())?;
        if (x, y) != (x2, y2) {
            return Err(src.error(entry.span(), format!("`{}` and `{}` lie in different hom spaces", d.from, d.to)));
        }
        let c = scalar(field, &d.scalar).map_err(|e| src.wrap(entry.span(), e))?;
        diff_terms[x * n + y][i].push((j, c));
    }
    let homs = bases
        .into_iter()
        .zip(diff_terms)
        .map(|(basis, cols)| {
            let dim = basis.len();
            let cols = cols.into_iter().map(|t| SparseVec::from_terms(t, &field)).collect();
            Hom { basis, diff: Matrix::from_columns(field, dim, cols) }
        })
        .collect();

    let mut compositions = Vec::new();
    for entry in &doc.composition {
        let c = entry.get_ref();
        let (x, y, f) = lookup(&c.f, entry.span())?;
        let (y2, z, g) = lookup(&c.g, entry.span())?;
        let (x2, z2, h) = lookup(&c.h, entry.span())?;
        if y != y2 {
            return Err(src.error(entry.span(), format!("`{}` and `{}` are not composable", c.g, c.f)));
        }
        if (x, z) != (x2, z2) {
            return Err(src.error(entry.span(), format!("`{}` does not lie in the hom space of `{}∘{}`", c.h, c.g, c.f)));
        }
        let s = scalar(field, &c.scalar).map_err(|e| src.wrap(entry.span(), e))?;
        compositions.push((x, y, z, g, f, h, s));
    }

    let mut units = vec![None; n];
    for (name, entry) in doc.units.get_ref() {
        let x = object(name, entry.span())?;
        let terms: Vec<(&str, Scalar)> = match entry.get_ref() {
            UnitEntry::Label(l) => vec![(l.as_str(), field.one())],
            UnitEntry::Terms(ts) => ts
                .iter()
                .map(|t| Ok((t.label.as_str(), scalar(field, &t.scalar)?)))
                .collect::<Result<_>>()
                .map_err(|e| src.wrap(entry.span(), e))?,
        };
        let mut v = Vec::new();
        for (label, c) in terms {
            let (a, b, i) = lookup(label, entry.span())?;
            if (a, b) != (x, x) {
                return Err(src.error(entry.span(), format!("unit term `{label}` is not an endomorphism of `{name}`")));
            }
            v.push((i, c));
        }
        units[x] = Some(SparseVec::from_terms(v, &field));
    }
    let units = units
        .into_iter()
        .enumerate()
        .map(|(x, u)| u.ok_or_else(|| src.error(doc.units.span(), format!("no unit given for `{}`", objects[x]))))
        .collect::<Result<Vec<_>>>()?;

    let cat = DgCategory::new(CategoryParts { field, objects, homs, compositions, units })
        .map_err(|e| src.wrap(0..0, e))?;
    Ok(cat.with_finiteness(doc.finiteness.unwrap_or(Finiteness::Closed)))
}

fn quiver_from_doc(src: &Source, doc: QuiverDoc) -> Result<QuiverFile> {
    let field = src.field(&doc.field)?;
    let mut p = Presentation::new(field);
    for v in &doc.vertices {
        p.add_object(v.get_ref()).map_err(|e| src.wrap(v.span(), e))?;
    }
    for entry in &doc.arrows {
        let a = entry.get_ref();
        let s = p.object_index(&a.source).map_err(|e| src.wrap(entry.span(), e))?;
        let t = p.object_index(&a.target).map_err(|e| src.wrap(entry.span(), e))?;
        p.add_generator(&a.label, s, t, a.degree).map_err(|e| src.wrap(entry.span(), e))?;
    }
    for (g, entry) in doc.arrows.iter().enumerate() {
        if let Some(d) = &entry.get_ref().differential {
            let gen = &p.generators()[g];
            let poly = p.parse_poly(d, Some((gen.source, gen.target))).map_err(|e| src.wrap(entry.span(), e))?;
            p.set_differential(g, poly).map_err(|e| src.wrap(entry.span(), e))?;
        }
    }
    for r in &doc.relations {
        let poly = p.parse_poly(r.get_ref(), None).map_err(|e| src.wrap(r.span(), e))?;
        p.add_relation(poly).map_err(|e| src.wrap(r.span(), e))?;
    }
    let wordlength_bound = *doc.wordlength_bound.get_ref();
    if wordlength_bound == 0 {
        return Err(src.error(doc.wordlength_bound.span(), "wordlength_bound must be positive"));
    }
    Ok(QuiverFile { presentation: p, degree_bound: doc.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND), wordlength_bound })
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn scalar_text(field: FieldSpec, c: &Scalar) -> String {
    let s = field.display(c);
    if s.contains('/') {
        quote(&s)
    } else {
        s
    }
}

/// Writes a category in the full layout. The output is deterministic and
/// [`parse_category`] recovers the category exactly.
pub fn emit_category(c: &DgCategory) -> String {
    let field = c.field();
    let n = c.n_objects();
    let mut out = String::new();
    if c.finiteness() == Finiteness::Truncated {
        out.push_str("# warning: truncated realization; homology commands refuse this file\n");
    }
    let _ = writeln!(out, "field = {}", quote(&field.to_string()));
    let objects: Vec<String> = c.objects().iter().map(|o| quote(o)).collect();
    let _ = writeln!(out, "objects = [{}]", objects.join(", "));
    let finiteness = match c.finiteness() {
        Finiteness::Closed => "closed",
        Finiteness::Truncated => "truncated",
    };
    let _ = writeln!(out, "finiteness = {}", quote(finiteness));
    let name = |x: usize| quote(&c.objects()[x]);

    out.push_str("basis = [\n");
    for x in 0..n {
        for y in 0..n {
            for (i, b) in c.hom(x, y).basis.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {{ source = {}, target = {}, label = {}, degree = {} }},",
                    name(x),
                    name(y),
                    quote(c.label(x, y, i)),
                    b.degree
                );
            }
        }
    }
    out.push_str("]\n");

    out.push_str("differential = [\n");
    for x in 0..n {
        for y in 0..n {
            let h = c.hom(x, y);
            for i in 0..h.dim() {
                for (j, s) in h.diff.column(i).iter() {
                    let _ = writeln!(
                        out,
                        "  {{ from = {}, to = {}, scalar = {} }},",
                        quote(c.label(x, y, i)),
                        quote(c.label(x, y, j)),
                        scalar_text(field, s)
                    );
                }
            }
        }
    }
    out.push_str("]\n");

    out.push_str("composition = [\n");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for g in 0..c.dim(y, z) {
                    for f in 0..c.dim(x, y) {
                        for (h, s) in c.compose_basis(x, y, z, g, f).iter() {
                            let _ = writeln!(
                                out,
                                "  {{ g = {}, f = {}, h = {}, scalar = {} }},",
                                quote(c.label(y, z, g)),
                                quote(c.label(x, y, f)),
                                quote(c.label(x, z, h)),
                                scalar_text(field, s)
                            );
                        }
                    }
                }
            }
        }
    }
    out.push_str("]\n");

    out.push_str("\n[units]\n");
    for x in 0..n {
        let u = c.unit(x);
        let value = match u.leading() {
            Some((i, s)) if u.nnz() == 1 && *s == field.one() => quote(c.label(x, x, i)),
            _ => {
                let terms: Vec<String> = u
                    .iter()
                    .map(|(i, s)| format!("{{ label = {}, scalar = {} }}", quote(c.label(x, x, i)), scalar_text(field, s)))
                    .collect();
                format!("[{}]", terms.join(", "))
            }
        };
        let _ = writeln!(out, "{} = {value}", name(x));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dgcore::sphere_cell;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn corpus_round_trips() {
        for (name, c) in corpus::named(Q) {
            let text = emit_category(&c);
            assert_eq!(parse_category(&text).unwrap(), c, "{name}\n{text}");
        }
        let s = sphere_cell(-3, FieldSpec::prime(5).unwrap());
        assert_eq!(parse_category(&emit_category(&s)).unwrap(), s);
    }

    #[test]
    fn quiver_shorthand_realizes() {
        let text = "field = \"q\"\nvertices = [\"x\"]\nwordlength_bound = 3\n\
                    arrows = [{ label = \"e\", source = \"x\", target = \"x\" }]\nrelations = [\"e*e\"]\n";
        let c = parse_category(text).unwrap();
        assert_eq!(c.total_dim(), 2);
        assert_eq!(c.finiteness(), Finiteness::Closed);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_category("field = \"q\"\nobjects = [\"x\"\n") {
            Err(Error::Parse { line, .. }) => assert!(line >= 2),
            other => panic!("{other:?}"),
        }
        let text = "field = \"q\"\nobjects = [\"x\"]\nbasis = [\n  { source = \"x\", target = \"y\", label = \"i\", degree = 0 },\n]\n[units]\nx = \"i\"\n";
        match parse_category(text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (4, 3));
                assert!(message.contains("unknown object"));
            }
            other => panic!("{other:?}"),
        }
    }
}
