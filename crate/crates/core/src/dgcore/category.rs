use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{ChainComplex, FieldSpec, Matrix, Scalar, SparseVec};

/// One basis vector of a hom complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        BasisElement { label: label.into(), degree }
    }
}

/// A hom complex given by a graded basis and a degree `+1` differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub basis: Vec<BasisElement>,
    /// `dim x dim`; column `i` is `d(basis[i])`.
    pub diff: Matrix,
}

impl Hom {
    pub fn zero(field: FieldSpec) -> Self {
        Hom { basis: Vec::new(), diff: Matrix::zero(field, 0, 0) }
    }

    pub fn with_zero_differential(field: FieldSpec, basis: Vec<BasisElement>) -> Self {
        let n = basis.len();
        Hom { basis, diff: Matrix::zero(field, n, n) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }
}

/// Whether a category came out of a presentation whose word enumeration closed
/// up below the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Finiteness {
    Closed,
    Truncated,
}

/// A finite dg category: finitely many objects, finite-dimensional hom
/// complexes, composition given by structure constants.
///
/// Composition of `g: y -> z` after `f: x -> y` is written `g∘f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgCategory {
    field: FieldSpec,
    objects: Vec<String>,
    homs: Vec<Hom>,
    /// Indexed by `(x, y, z)`; entry `g * dim(x,y) + f` is `g∘f` in `hom(x,z)`.
    compose: Vec<Vec<SparseVec>>,
    units: Vec<SparseVec>,
    finiteness: Finiteness,
}

/// Builder input for [`DgCategory::new`].
pub struct CategoryParts {
    pub field: FieldSpec,
    pub objects: Vec<String>,
    /// `homs[x * n + y]` is `hom(x, y)`.
    pub homs: Vec<Hom>,
    /// Sparse composition entries `(x, y, z, g, f, h, scalar)`: `g∘f` contains `scalar * h`.
    pub compositions: Vec<(usize, usize, usize, usize, usize, usize, Scalar)>,
    pub units: Vec<SparseVec>,
}

impl DgCategory {
    /// Assembles a category from structure constants. Checks shapes and label
    /// uniqueness only; use [`DgCategory::validate`] for the axioms.
    pub fn new(parts: CategoryParts) -> Result<Self> {
        let CategoryParts { field, objects, homs, compositions, units } = parts;
        let n = objects.len();
        if homs.len() != n * n {
            return Err(Error::InvalidCategory(format!("expected {} hom spaces, got {}", n * n, homs.len())));
        }
        if units.len() != n {
            return Err(Error::InvalidCategory("one unit per object required".into()));
        }
        let mut seen_objects = HashSet::new();
        for o in &objects {
            if !seen_objects.insert(o) {
                return Err(Error::InvalidCategory(format!("duplicate object `{o}`")));
            }
        }
        let mut seen = HashSet::new();
        for h in &homs {
            if h.diff.rows() != h.dim() || h.diff.cols() != h.dim() {
                return Err(Error::InvalidCategory("differential shape mismatch".into()));
            }
            for b in &h.basis {
                if !seen.insert(b.label.clone()) {
                    return Err(Error::InvalidCategory(format!("duplicate basis label `{}`", b.label)));
                }
            }
        }
        for (x, u) in units.iter().enumerate() {
            if u.max_index().is_some_and(|m| m >= homs[x * n + x].dim()) {
                return Err(Error::InvalidCategory(format!("unit of `{}` out of range", objects[x])));
            }
        }
        let mut table: Vec<Vec<Vec<(usize, Scalar)>>> = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let len = homs[y * n + z].dim() * homs[x * n + y].dim();
                    table.push(vec![Vec::new(); len]);
                }
            }
        }
        for (x, y, z, g, f, h, c) in compositions {
            if x >= n || y >= n || z >= n {
                return Err(Error::InvalidCategory("composition object out of range".into()));
            }
            let (dg, df, dh) = (homs[y * n + z].dim(), homs[x * n + y].dim(), homs[x * n + z].dim());
            if g >= dg || f >= df || h >= dh {
                return Err(Error::InvalidCategory("composition index out of range".into()));
            }
            table[(x * n + y) * n + z][g * df + f].push((h, c));
        }
        let compose = table
            .into_iter()
            .map(|t| t.into_iter().map(|terms| SparseVec::from_terms(terms, &field)).collect())
            .collect();
        Ok(DgCategory { field, objects, homs, compose, units, finiteness: Finiteness::Closed })
    }

    pub fn with_finiteness(mut self, f: Finiteness) -> Self {
        self.finiteness = f;
        self
    }

    pub fn finiteness(&self) -> Finiteness {
        self.finiteness
    }

    /// Errors unless the category is a closed realization.
    pub fn require_closed(&self) -> Result<()> {
        match self.finiteness {
            Finiteness::Closed => Ok(()),
            Finiteness::Truncated => Err(Error::Truncated),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn hom(&self, x: usize, y: usize) -> &Hom {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).dim()
    }

    pub fn degree(&self, x: usize, y: usize, i: usize) -> i64 {
        self.hom(x, y).degree(i)
    }

    pub fn total_dim(&self) -> usize {
        self.homs.iter().map(Hom::dim).sum()
    }

    pub fn unit(&self, x: usize) -> &SparseVec {
        &self.units[x]
    }

    fn triple(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.objects.len();
        (x * n + y) * n + z
    }

    /// `g∘f` for basis elements `g` of `hom(y,z)` and `f` of `hom(x,y)`.
    pub fn compose_basis(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> &SparseVec {
        &self.compose[self.triple(x, y, z)][g * self.dim(x, y) + f]
    }

    /// Bilinear extension of composition.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &SparseVec, f: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (gi, gc) in g.iter() {
            for (fi, fc) in f.iter() {
                let c = self.field.mul(gc, fc);
                out.add_assign_scaled(&c, self.compose_basis(x, y, z, gi, fi), &self.field);
            }
        }
        out
    }

    pub fn differential(&self, x: usize, y: usize, v: &SparseVec) -> SparseVec {
        self.hom(x, y).diff.apply(v)
    }

    /// The hom complex `hom(x,y)` as a bounded cochain complex.
    pub fn hom_complex(&self, x: usize, y: usize) -> ChainComplex {
        graded_complex(self.field, &self.hom(x, y).basis, &self.hom(x, y).diff)
    }

    /// Smallest and largest degree over all hom bases, if any.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let degs: Vec<i64> = self.homs.iter().flat_map(|h| h.basis.iter().map(|b| b.degree)).collect();
        Some((*degs.iter().min()?, *degs.iter().max()?))
    }

    pub fn is_concentrated_in_degree_zero(&self) -> bool {
        self.homs.iter().all(|h| h.basis.iter().all(|b| b.degree == 0))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.homs.iter().all(|h| h.diff.is_zero())
    }

    pub fn label(&self, x: usize, y: usize, i: usize) -> &str {
        &self.hom(x, y).basis[i].label
    }

    fn describe(&self, x: usize, y: usize, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| format!("{}*{}", self.field.display(c), self.label(x, y, i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Checks every axiom on basis tuples and lists all violations.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n_objects();
        let f = self.field;
        let mut violations = Vec::new();
        // grading and d^2 = 0
        for x in 0..n {
            for y in 0..n {
                let h = self.hom(x, y);
                for i in 0..h.dim() {
                    let di = h.diff.column(i);
                    for (j, _) in di.iter() {
                        if h.degree(j) != h.degree(i) + 1 {
                            violations.push(Violation::Grading(format!(
                                "d({}) has a term {} of degree {}",
                                h.basis[i].label,
                                h.basis[j].label,
                                h.degree(j)
                            )));
                        }
                    }
                    let dd = h.diff.apply(di);
                    if !dd.is_zero() {
                        violations.push(Violation::DSquared { element: h.basis[i].label.clone() });
                    }
                }
            }
        }
        // units
        for x in 0..n {
            let u = self.unit(x);
            if u.is_zero() {
                violations.push(Violation::Unit { object: self.objects[x].clone(), detail: "unit is zero".into() });
                continue;
            }
            if u.iter().any(|(i, _)| self.degree(x, x, i) != 0) {
                violations.push(Violation::Unit { object: self.objects[x].clone(), detail: "unit not of degree 0".into() });
            }
            let du = self.differential(x, x, u);
            if !du.is_zero() {
                violations.push(Violation::Unit {
                    object: self.objects[x].clone(),
                    detail: format!("d(unit) = {}", self.describe(x, x, &du)),
                });
            }
            for y in 0..n {
                for i in 0..self.dim(x, y) {
                    let e = SparseVec::unit(i, &f);
                    let left = self.compose(x, y, y, self.unit(y), &e);
                    if left != e {
                        violations.push(Violation::Unit {
                            object: self.objects[y].clone(),
                            detail: format!("unit∘{} = {}", self.label(x, y, i), self.describe(x, y, &left)),
                        });
                    }
                }
                for i in 0..self.dim(x, y) {
                    let e = SparseVec::unit(i, &f);
                    let right = self.compose(x, x, y, &e, u);
                    if right != e {
                        violations.push(Violation::Unit {
                            object: self.objects[x].clone(),
                            detail: format!("{}∘unit = {}", self.label(x, y, i), self.describe(x, y, &right)),
                        });
                    }
                }
            }
        }
        // composition grading and Leibniz
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for g in 0..self.dim(y, z) {
                        for fi in 0..self.dim(x, y) {
                            let gf = self.compose_basis(x, y, z, g, fi);
                            let deg = self.degree(y, z, g) + self.degree(x, y, fi);
                            if gf.iter().any(|(h, _)| self.degree(x, z, h) != deg) {
                                violations.push(Violation::Grading(format!(
                                    "{}∘{} leaves degree {}",
                                    self.label(y, z, g),
                                    self.label(x, y, fi),
                                    deg
                                )));
                            }
                            let lhs = self.differential(x, z, gf);
                            let ge = SparseVec::unit(g, &f);
                            let fe = SparseVec::unit(fi, &f);
                            let dg = self.differential(y, z, &ge);
                            let df = self.differential(x, y, &fe);
                            let rhs = self.compose(x, y, z, &dg, &fe).axpy(
                                &f.sign(self.degree(y, z, g)),
                                &self.compose(x, y, z, &ge, &df),
                                &f,
                            );
                            if lhs != rhs {
                                violations.push(Violation::Leibniz {
                                    g: self.label(y, z, g).to_string(),
                                    f: self.label(x, y, fi).to_string(),
                                });
                            }
                        }
                    }
                }
            }
        }
        // associativity
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for h in 0..self.dim(y, z) {
                            for g in 0..self.dim(x, y) {
                                let hg = self.compose_basis(x, y, z, h, g);
                                for fi in 0..self.dim(w, x) {
                                    let fe = SparseVec::unit(fi, &f);
                                    let left = self.compose(w, x, z, hg, &fe);
                                    let gf = self.compose_basis(w, x, y, g, fi);
                                    let right = self.compose(w, y, z, &SparseVec::unit(h, &f), gf);
                                    if left != right {
                                        violations.push(Violation::Associativity {
                                            h: self.label(y, z, h).to_string(),
                                            g: self.label(x, y, g).to_string(),
                                            f: self.label(w, x, fi).to_string(),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// The opposite category: `op(x,y) = hom(y,x)` and
    /// `g ∘op f = (-1)^{|f||g|} f∘g`.
    pub fn opposite(&self) -> DgCategory {
        let n = self.n_objects();
        let f = self.field;
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                homs.push(self.hom(y, x).clone());
            }
        }
        let mut compose = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // g in op(y,z) = hom(z,y), fe in op(x,y) = hom(y,x); result in hom(z,x)
                    let (dg, df) = (self.dim(z, y), self.dim(y, x));
                    let mut t = Vec::with_capacity(dg * df);
                    for g in 0..dg {
                        for fe in 0..df {
                            let s = f.sign(self.degree(z, y, g) * self.degree(y, x, fe));
                            t.push(self.compose_basis(z, y, x, fe, g).scale(&s, &f));
                        }
                    }
                    compose.push(t);
                }
            }
        }
        DgCategory {
            field: f,
            objects: self.objects.clone(),
            homs,
            compose,
            units: self.units.clone(),
            finiteness: self.finiteness,
        }
    }

    /// Tensor product. Objects are pairs `(x, x')` ordered lexicographically;
    /// hom bases are pairs `a⊗b`, `a`-major. Signs:
    /// `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db` and
    /// `(g⊗g')∘(f⊗f') = (-1)^{|g'||f|} (g∘f)⊗(g'∘f')`.
    pub fn tensor(&self, other: &DgCategory) -> Result<DgCategory> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let f = self.field;
        let (na, nb) = (self.n_objects(), other.n_objects());
        let n = na * nb;
        let split = |p: usize| (p / nb, p % nb);
        let mut objects = Vec::with_capacity(n);
        for x in &self.objects {
            for y in &other.objects {
                objects.push(format!("({x},{y})"));
            }
        }
        let mut homs = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let ((x, xp), (y, yp)) = (split(p), split(q));
                let (ha, hb) = (self.hom(x, y), other.hom(xp, yp));
                let mut basis = Vec::with_capacity(ha.dim() * hb.dim());
                for a in &ha.basis {
                    for b in &hb.basis {
                        basis.push(BasisElement::new(
                            format!("{}⊗{}", wrap(&a.label), wrap(&b.label)),
                            a.degree + b.degree,
                        ));
                    }
                }
                let db = hb.dim();
                let mut cols = Vec::with_capacity(basis.len());
                for i in 0..ha.dim() {
                    for j in 0..db {
                        let mut terms = Vec::new();
                        for (k, c) in ha.diff.column(i).iter() {
                            terms.push((k * db + j, c.clone()));
                        }
                        let s = f.sign(ha.degree(i));
                        for (k, c) in hb.diff.column(j).iter() {
                            terms.push((i * db + k, f.mul(&s, c)));
                        }
                        cols.push(SparseVec::from_terms(terms, &f));
                    }
                }
                let dim = basis.len();
                homs.push(Hom { basis, diff: Matrix::from_columns(f, dim, cols) });
            }
        }
        let mut compose = Vec::with_capacity(n * n * n);
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let ((x, xp), (y, yp), (z, zp)) = (split(p), split(q), split(r));
                    let (dga, dgb) = (self.dim(y, z), other.dim(yp, zp));
                    let (dfa, dfb) = (self.dim(x, y), other.dim(xp, yp));
                    let out_b = other.dim(xp, zp);
                    let mut t = Vec::with_capacity(dga * dgb * dfa * dfb);
                    for ga in 0..dga {
                        for gb in 0..dgb {
                            for fa in 0..dfa {
                                for fb in 0..dfb {
                                    let s = f.sign(other.degree(yp, zp, gb) * self.degree(x, y, fa));
                                    let ca = self.compose_basis(x, y, z, ga, fa);
                                    let cb = other.compose_basis(xp, yp, zp, gb, fb);
                                    let mut terms = Vec::with_capacity(ca.nnz() * cb.nnz());
                                    for (i, u) in ca.iter() {
                                        for (j, v) in cb.iter() {
                                            terms.push((i * out_b + j, f.mul(&s, &f.mul(u, v))));
                                        }
                                    }
                                    t.push(SparseVec::from_terms(terms, &f));
                                }
                            }
                        }
                    }
                    compose.push(t);
                }
            }
        }
        let mut units = Vec::with_capacity(n);
        for x in 0..na {
            for xp in 0..nb {
                let db = other.dim(xp, xp);
                let mut terms = Vec::new();
                for (i, u) in self.unit(x).iter() {
                    for (j, v) in other.unit(xp).iter() {
                        terms.push((i * db + j, f.mul(u, v)));
                    }
                }
                units.push(SparseVec::from_terms(terms, &f));
            }
        }
        let finiteness = if self.finiteness == Finiteness::Closed && other.finiteness == Finiteness::Closed {
            Finiteness::Closed
        } else {
            Finiteness::Truncated
        };
        Ok(DgCategory { field: f, objects, homs, compose, units, finiteness })
    }

    /// Per-degree dimensions of `hom(x,y)`.
    pub fn hom_dims(&self, x: usize, y: usize) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for b in &self.hom(x, y).basis {
            *out.entry(b.degree).or_insert(0) += 1;
        }
        out
    }

    /// Replaces the name of every object (same order).
    pub fn rename_objects(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.objects.len() {
            return Err(Error::InvalidCategory("object count mismatch in rename".into()));
        }
        self.objects = names;
        Ok(self)
    }

    /// Corrupts the differential of one basis element (test helper for the validator).
    #[doc(hidden)]
    pub fn with_differential_entry(mut self, x: usize, y: usize, from: usize, to: usize, c: Scalar) -> Self {
        let n = self.n_objects();
        let h = &mut self.homs[x * n + y];
        let mut cols: Vec<SparseVec> = h.diff.columns().to_vec();
        let f = self.field;
        cols[from] = cols[from].axpy(&c, &SparseVec::unit(to, &f), &f);
        h.diff = Matrix::from_columns(f, h.dim(), cols);
        self
    }
}

fn wrap(label: &str) -> String {
    if label.contains('⊗') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// Groups a flat graded basis into a cochain complex.
pub(crate) fn graded_complex(field: FieldSpec, basis: &[BasisElement], diff: &Matrix) -> ChainComplex {
    if basis.is_empty() {
        return ChainComplex::zero(field);
    }
    let lo = basis.iter().map(|b| b.degree).min().unwrap();
    let hi = basis.iter().map(|b| b.degree).max().unwrap();
    let mut positions: Vec<Vec<usize>> = vec![Vec::new(); (hi - lo + 1) as usize];
    for (i, b) in basis.iter().enumerate() {
        positions[(b.degree - lo) as usize].push(i);
    }
    let mut local = vec![0usize; basis.len()];
    for p in &positions {
        for (k, &i) in p.iter().enumerate() {
            local[i] = k;
        }
    }
    let bases: Vec<Vec<String>> =
        positions.iter().map(|p| p.iter().map(|&i| basis[i].label.clone()).collect()).collect();
    let mut diffs = Vec::new();
    for d in 0..positions.len().saturating_sub(1) {
        let cols = positions[d]
            .iter()
            .map(|&i| {
                SparseVec::from_terms(
                    diff.column(i)
                        .iter()
                        .filter(|(j, _)| basis[*j].degree == lo + d as i64 + 1)
                        .map(|(j, c)| (local[j], c.clone())),
                    &field,
                )
            })
            .collect();
        diffs.push(Matrix::from_columns(field, positions[d + 1].len(), cols));
    }
    ChainComplex::new(field, lo, bases, diffs).expect("hom differential squares to zero")
}

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Grading(String),
    DSquared { element: String },
    Leibniz { g: String, f: String },
    Associativity { h: String, g: String, f: String },
    Unit { object: String, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading(s) => write!(f, "grading: {s}"),
            Violation::DSquared { element } => write!(f, "d^2 != 0 on {element}"),
            Violation::Leibniz { g, f: ff } => write!(f, "Leibniz rule fails on ({g}, {ff})"),
            Violation::Associativity { h, g, f: ff } => write!(f, "associativity fails on ({h}, {g}, {ff})"),
            Violation::Unit { object, detail } => write!(f, "unit axiom at {object}: {detail}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_unit_violation(&self) -> bool {
        self.violations.iter().any(|v| matches!(v, Violation::Unit { .. }))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}
