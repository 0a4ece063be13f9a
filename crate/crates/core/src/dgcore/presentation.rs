use std::collections::HashMap;

use num_traits::Zero;

use super::category::{BasisElement, CategoryParts, DgCategory, Finiteness, Hom};
use crate::error::{Error, Result};
use crate::exactfield::{Echelon, FieldSpec, Matrix, Scalar, SparseVec};

/// A word in the generators, written in composition order: `[g, f]` is `g∘f`.
pub type Word = Vec<usize>;

/// A noncommutative polynomial in `hom(source, target)` of the free category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(Scalar, Word)>,
}

impl Poly {
    pub fn zero(source: usize, target: usize) -> Self {
        Poly { source, target, terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalized(mut self, field: &FieldSpec) -> Self {
        let mut acc: Vec<(Scalar, Word)> = Vec::new();
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        for (c, w) in self.terms {
            match acc.last_mut() {
                Some((c0, w0)) if *w0 == w => *c0 = field.add(c0, &c),
                _ => acc.push((c, w)),
            }
        }
        acc.retain(|(c, _)| !c.is_zero());
        self.terms = acc;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
    pub differential: Poly,
}

/// Objects, generating morphisms with their differentials, and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: FieldSpec,
    objects: Vec<String>,
    generators: Vec<Generator>,
    relations: Vec<Poly>,
}

impl Presentation {
    pub fn new(field: FieldSpec) -> Self {
        Presentation { field, objects: Vec::new(), generators: Vec::new(), relations: Vec::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    pub fn add_object(&mut self, name: &str) -> Result<usize> {
        if name.is_empty() || self.objects.iter().any(|o| o == name) {
            return Err(Error::Presentation(format!("invalid or duplicate object `{name}`")));
        }
        self.objects.push(name.to_string());
        Ok(self.objects.len() - 1)
    }

    fn check_label(&self, label: &str) -> Result<()> {
        let ok_start = label.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_');
        if !ok_start
            || label.starts_with("id_")
            || label.contains(['*', '+', '-', ' ', '⊗', '(', ')'])
            || self.generator_index(label).is_some()
        {
            return Err(Error::Presentation(format!("invalid or duplicate generator label `{label}`")));
        }
        Ok(())
    }

    /// Adds a generator with zero differential.
    pub fn add_generator(&mut self, label: &str, source: usize, target: usize, degree: i64) -> Result<usize> {
        self.check_label(label)?;
        if source >= self.objects.len() || target >= self.objects.len() {
            return Err(Error::Presentation(format!("generator `{label}` has an unknown endpoint")));
        }
        self.generators.push(Generator {
            label: label.to_string(),
            source,
            target,
            degree,
            differential: Poly::zero(source, target),
        });
        Ok(self.generators.len() - 1)
    }

    pub fn rename_generator(&mut self, generator: usize, label: &str) -> Result<()> {
        if self.generators[generator].label == label {
            return Ok(());
        }
        self.check_label(label)?;
        self.generators[generator].label = label.to_string();
        Ok(())
    }

    pub fn set_differential(&mut self, generator: usize, d: Poly) -> Result<()> {
        let g = &self.generators[generator];
        if (d.source, d.target) != (g.source, g.target) {
            return Err(Error::Presentation(format!("differential of `{}` has wrong endpoints", g.label)));
        }
        for (_, w) in &d.terms {
            if self.word_degree(w) != g.degree + 1 {
                return Err(Error::DegreeMismatch(format!(
                    "term `{}` of d({}) must have degree {}",
                    self.word_label(d.source, w),
                    g.label,
                    g.degree + 1
                )));
            }
        }
        let d = d.normalized(&self.field);
        self.generators[generator].differential = d;
        Ok(())
    }

    pub fn add_relation(&mut self, r: Poly) -> Result<()> {
        let r = r.normalized(&self.field);
        if r.is_zero() {
            return Ok(());
        }
        let deg = self.word_degree(&r.terms[0].1);
        if r.terms.iter().any(|(_, w)| self.word_degree(w) != deg) {
            return Err(Error::DegreeMismatch("relations must be homogeneous in degree".into()));
        }
        self.relations.push(r);
        Ok(())
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&g| self.generators[g].degree).sum()
    }

    /// Renders a word as `g*f`, or `id_x` for the empty word at `x`.
    pub fn word_label(&self, source: usize, w: &[usize]) -> String {
        if w.is_empty() {
            return format!("id_{}", self.objects[source]);
        }
        w.iter().map(|&g| self.generators[g].label.as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn poly_degree(&self, p: &Poly) -> Option<i64> {
        p.terms.first().map(|(_, w)| self.word_degree(w))
    }

    /// Parses `2*a*b - c*d + 1/2*id_x` against this presentation. A bare `0`
    /// needs `endpoints`.
    pub fn parse_poly(&self, s: &str, endpoints: Option<(usize, usize)>) -> Result<Poly> {
        let s = s.trim();
        if s == "0" {
            let (x, y) = endpoints.ok_or_else(|| Error::Presentation("cannot place the zero polynomial".into()))?;
            return Ok(Poly::zero(x, y));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for ch in s.chars() {
            if ch == '+' || ch == '-' {
                if !current.trim().is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                } else if !pieces.is_empty() {
                    return Err(Error::Presentation(format!("dangling operator in `{s}`")));
                }
                current.clear();
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(Error::Presentation(format!("empty term in `{s}`")));
        }
        pieces.push((negative, current));

        let mut ends = endpoints;
        let mut terms = Vec::new();
        for (neg, text) in pieces {
            let factors: Vec<&str> = text.split('*').map(str::trim).collect();
            if factors.iter().any(|f| f.is_empty()) {
                return Err(Error::Presentation(format!("malformed term `{}`", text.trim())));
            }
            let (mut coeff, rest) = match self.field.parse_scalar(factors[0]) {
                Ok(c) if factors.len() > 1 => (c, &factors[1..]),
                Ok(_) => return Err(Error::Presentation(format!("scalar `{}` needs a morphism", factors[0]))),
                Err(_) => (self.field.one(), &factors[..]),
            };
            if neg {
                coeff = self.field.neg(&coeff);
            }
            let mut word = Vec::new();
            let mut identity_at = None;
            for f in rest {
                if let Some(obj) = f.strip_prefix("id_") {
                    identity_at = Some(self.object_index(obj)?);
                } else {
                    let g = self
                        .generator_index(f)
                        .ok_or_else(|| Error::Presentation(format!("unknown generator `{f}`")))?;
                    word.push(g);
                }
            }
            for pair in word.windows(2) {
                if self.generators[pair[0]].source != self.generators[pair[1]].target {
                    return Err(Error::Presentation(format!("term `{}` is not composable", text.trim())));
                }
            }
            let term_ends = match (word.first(), word.last()) {
                (Some(&outer), Some(&inner)) => (self.generators[inner].source, self.generators[outer].target),
                _ => {
                    let x = identity_at.expect("term has at least one factor");
                    (x, x)
                }
            };
            if let Some(x) = identity_at {
                if x != term_ends.0 && x != term_ends.1 {
                    return Err(Error::Presentation(format!("identity in `{}` does not fit", text.trim())));
                }
            }
            match ends {
                None => ends = Some(term_ends),
                Some(e) if e != term_ends => {
                    return Err(Error::Presentation(format!("terms of `{s}` have different endpoints")));
                }
                _ => {}
            }
            terms.push((coeff, word));
        }
        let (source, target) = ends.expect("at least one term");
        Ok(Poly { source, target, terms }.normalized(&self.field))
    }

    /// `d` of a word by the Leibniz rule, in the free category.
    pub fn word_differential(&self, w: &[usize]) -> Vec<(Scalar, Word)> {
        let mut out = Vec::new();
        let mut prefix_degree = 0;
        for (i, &g) in w.iter().enumerate() {
            let sign = self.field.sign(prefix_degree);
            for (c, dw) in &self.generators[g].differential.terms {
                let mut nw = w[..i].to_vec();
                nw.extend_from_slice(dw);
                nw.extend_from_slice(&w[i + 1..]);
                out.push((self.field.mul(&sign, c), nw));
            }
            prefix_degree += self.generators[g].degree;
        }
        out
    }

    pub fn poly_differential(&self, p: &Poly) -> Poly {
        let mut terms = Vec::new();
        for (c, w) in &p.terms {
            for (c2, w2) in self.word_differential(w) {
                terms.push((self.field.mul(c, &c2), w2));
            }
        }
        Poly { source: p.source, target: p.target, terms }.normalized(&self.field)
    }

    fn max_word_length(&self) -> usize {
        let gen_len = self.generators.iter().flat_map(|g| g.differential.terms.iter().map(|(_, w)| w.len()));
        let rel_len = self.relations.iter().flat_map(|r| r.terms.iter().map(|(_, w)| w.len()));
        gen_len.chain(rel_len).max().unwrap_or(1).max(1)
    }

    /// Realizes the presented category on normal words of length at most
    /// `wordlength_bound` and absolute degree at most `degree_bound`.
    ///
    /// The result is marked [`Finiteness::Closed`] when no normal word of
    /// length `wordlength_bound + 1` survives and no word was dropped for its
    /// degree; otherwise it is [`Finiteness::Truncated`].
    pub fn realize(&self, degree_bound: i64, wordlength_bound: usize) -> Result<DgCategory> {
        if degree_bound < 0 || wordlength_bound == 0 {
            return Err(Error::Presentation("realization bounds must be positive".into()));
        }
        let red = Reducer::new(self, degree_bound, wordlength_bound);
        for g in &self.generators {
            let d2 = self.poly_differential(&g.differential);
            if !red.reduce_poly(&d2).is_zero() {
                return Err(Error::InconsistentDifferential(format!("d(d({})) is nonzero", g.label)));
            }
        }
        for r in &self.relations {
            if !red.reduce_poly(&self.poly_differential(r)).is_zero() {
                return Err(Error::InconsistentDifferential(format!(
                    "d of relation `{}` is not in the relation ideal",
                    self.poly_label(r)
                )));
            }
        }
        let cat = red.build()?;
        if cat.finiteness() == Finiteness::Closed {
            let n = cat.n_objects();
            for x in 0..n {
                for y in 0..n {
                    let d = &cat.hom(x, y).diff;
                    if !d.mul(d).is_zero() {
                        return Err(Error::InconsistentDifferential(format!(
                            "d² ≠ 0 on hom({}, {})",
                            self.objects[x], self.objects[y]
                        )));
                    }
                }
            }
        }
        Ok(cat)
    }

    fn poly_label(&self, p: &Poly) -> String {
        p.terms
            .iter()
            .map(|(c, w)| format!("{}*{}", self.field.display(c), self.word_label(p.source, w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Adds a fresh object (pushout along the empty category into the unit).
pub fn attach_object(p: &Presentation, name: &str) -> Result<Presentation> {
    let mut q = p.clone();
    q.add_object(name)?;
    Ok(q)
}

/// Pushout along `ι(n)`: adds a generator `h` of degree `n - 2` with `d(h) = f`
/// for a closed element `f` of degree `n - 1`.
pub fn pushout_attach(p: &Presentation, n: i64, f: &Poly) -> Result<Presentation> {
    let field = p.field;
    let f = f.clone().normalized(&field);
    if let Some(d) = p.poly_degree(&f) {
        if d != n - 1 {
            return Err(Error::DegreeMismatch(format!("attaching map has degree {d}, expected {}", n - 1)));
        }
    }
    let df = p.poly_differential(&f);
    if !df.is_zero() {
        let bound = df.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(1).max(p.max_word_length());
        let red = Reducer::new(p, i64::MAX, bound);
        if !red.reduce_poly(&df).is_zero() {
            return Err(Error::Presentation("attaching map is not closed".into()));
        }
    }
    let mut q = p.clone();
    let mut k = q.generators.len();
    let label = loop {
        let candidate = format!("h{k}");
        if q.generator_index(&candidate).is_none() {
            break candidate;
        }
        k += 1;
    };
    let h = q.add_generator(&label, f.source, f.target, n - 2)?;
    q.generators[h].differential = f;
    Ok(q)
}

struct PairWords {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    ideal: Echelon,
}

struct Reducer<'a> {
    p: &'a Presentation,
    bound: usize,
    skipped: bool,
    pairs: Vec<PairWords>,
}

impl<'a> Reducer<'a> {
    fn new(p: &'a Presentation, degree_bound: i64, bound: usize) -> Self {
        let n = p.objects.len();
        let field = p.field;
        let mut pairs: Vec<Vec<Word>> = vec![Vec::new(); n * n];
        let mut skipped = false;
        for x in 0..n {
            let mut level: Vec<(Word, usize)> = vec![(Vec::new(), x)];
            pairs[x * n + x].push(Vec::new());
            for _ in 0..bound + 1 {
                let mut next = Vec::new();
                for (w, t) in &level {
                    for (gi, g) in p.generators.iter().enumerate() {
                        if g.source == *t {
                            let mut nw = Vec::with_capacity(w.len() + 1);
                            nw.push(gi);
                            nw.extend_from_slice(w);
                            if p.word_degree(&nw).abs() <= degree_bound {
                                pairs[x * n + g.target].push(nw.clone());
                            } else {
                                skipped = true;
                            }
                            next.push((nw, g.target));
                        }
                    }
                }
                level = next;
            }
        }
        let mut out: Vec<PairWords> = pairs
            .into_iter()
            .map(|mut words| {
                words.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
                let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
                PairWords { words, index, ideal: Echelon::new(field) }
            })
            .collect();

        for r in &p.relations {
            let rlen = r.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0);
            if rlen > bound + 1 {
                continue;
            }
            for xs in 0..n {
                let inner: Vec<Word> = out[xs * n + r.source]
                    .words
                    .iter()
                    .filter(|v| v.len() + rlen <= bound + 1)
                    .cloned()
                    .collect();
                for yt in 0..n {
                    let outer: Vec<Word> = out[r.target * n + yt].words.clone();
                    for v in &inner {
                        for u in &outer {
                            if u.len() + rlen + v.len() > bound + 1 {
                                continue;
                            }
                            let pair = &mut out[xs * n + yt];
                            let mut terms = Vec::with_capacity(r.terms.len());
                            let mut complete = true;
                            for (c, w) in &r.terms {
                                let mut full = u.clone();
                                full.extend_from_slice(w);
                                full.extend_from_slice(v);
                                match pair.index.get(&full) {
                                    Some(&i) => terms.push((i, c.clone())),
                                    None => complete = false,
                                }
                            }
                            if complete {
                                pair.ideal.insert(&SparseVec::from_terms(terms, &field));
                            }
                        }
                    }
                }
            }
        }
        Reducer { p, bound, skipped, pairs: out }
    }

    fn source_of(&self, w: &[usize], fallback: usize) -> usize {
        w.last().map(|&g| self.p.generators[g].source).unwrap_or(fallback)
    }

    fn target_of(&self, w: &[usize], fallback: usize) -> usize {
        w.first().map(|&g| self.p.generators[g].target).unwrap_or(fallback)
    }

    /// Reduces a word of any length to normal words of length at most `bound`.
    fn reduce_word(&self, x: usize, w: &[usize]) -> Vec<(Scalar, Word)> {
        let field = &self.p.field;
        let n = self.p.objects.len();
        let y = self.target_of(w, x);
        if w.len() <= self.bound + 1 {
            let pair = &self.pairs[x * n + y];
            let Some(&i) = pair.index.get(w) else {
                return Vec::new();
            };
            let r = pair.ideal.reduce_full(&SparseVec::unit(i, field));
            return r
                .iter()
                .filter(|(j, _)| pair.words[*j].len() <= self.bound)
                .map(|(j, c)| (c.clone(), pair.words[j].clone()))
                .collect();
        }
        let (head, tail) = w.split_at(self.bound + 1);
        let mid = self.source_of(head, x);
        let mut out = Vec::new();
        for (c, nw) in self.reduce_word(mid, head) {
            let mut full = nw;
            full.extend_from_slice(tail);
            for (c2, w2) in self.reduce_word(x, &full) {
                out.push((field.mul(&c, &c2), w2));
            }
        }
        out
    }

    fn reduce_poly(&self, p: &Poly) -> Poly {
        let field = &self.p.field;
        let mut terms = Vec::new();
        for (c, w) in &p.terms {
            for (c2, w2) in self.reduce_word(p.source, w) {
                terms.push((field.mul(c, &c2), w2));
            }
        }
        Poly { source: p.source, target: p.target, terms }.normalized(field)
    }

    fn build(&self) -> Result<DgCategory> {
        let p = self.p;
        let field = p.field;
        let n = p.objects.len();
        let mut closed = !self.skipped;
        let mut bases: Vec<Vec<Word>> = Vec::with_capacity(n * n);
        for pair in &self.pairs {
            let pivots: std::collections::HashSet<usize> = pair.ideal.pivot_indices().collect();
            let mut normal: Vec<Word> = Vec::new();
            for (i, w) in pair.words.iter().enumerate() {
                if pivots.contains(&i) {
                    continue;
                }
                if w.len() > self.bound {
                    closed = false;
                } else {
                    normal.push(w.clone());
                }
            }
            normal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            bases.push(normal);
        }
        let lookup: Vec<HashMap<Word, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        let to_vec = |x: usize, y: usize, terms: Vec<(Scalar, Word)>| -> SparseVec {
            SparseVec::from_terms(
                terms.into_iter().filter_map(|(c, w)| lookup[x * n + y].get(&w).map(|&i| (i, c))),
                &field,
            )
        };
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let words = &bases[x * n + y];
                let basis = words
                    .iter()
                    .map(|w| BasisElement::new(p.word_label(x, w), p.word_degree(w)))
                    .collect();
                let cols = words
                    .iter()
                    .map(|w| {
                        let mut terms = Vec::new();
                        for (c, dw) in p.word_differential(w) {
                            for (c2, w2) in self.reduce_word(x, &dw) {
                                terms.push((field.mul(&c, &c2), w2));
                            }
                        }
                        to_vec(x, y, terms)
                    })
                    .collect();
                homs.push(Hom { basis, diff: Matrix::from_columns(field, words.len(), cols) });
            }
        }
        let mut compositions = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for (gi, g) in bases[y * n + z].iter().enumerate() {
                        for (fi, f) in bases[x * n + y].iter().enumerate() {
                            let mut w = g.clone();
                            w.extend_from_slice(f);
                            for (h, c) in to_vec(x, z, self.reduce_word(x, &w)).iter() {
                                compositions.push((x, y, z, gi, fi, h, c.clone()));
                            }
                        }
                    }
                }
            }
        }
        let units = (0..n).map(|x| to_vec(x, x, self.reduce_word(x, &[]))).collect();
        let cat = DgCategory::new(CategoryParts { field, objects: p.objects.clone(), homs, compositions, units })?;
        Ok(cat.with_finiteness(if closed { Finiteness::Closed } else { Finiteness::Truncated }))
    }
}
