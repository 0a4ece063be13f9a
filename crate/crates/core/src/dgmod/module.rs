use crate::dgcore::{graded_complex, BasisElement, DgCategory, Hom};
use crate::error::{Error, Result};
use crate::exactfield::{ChainComplex, FieldSpec, Matrix, Scalar, SparseVec};

/// A right dg module over a finite dg category: a complex `M(x)` per object
/// and an action `M(y) ⊗ A(x,y) -> M(x)`, `m ⊗ f ↦ m·f`.
///
/// Axioms: `m·(g∘f) = (m·g)·f`, `m·unit = m` and
/// `d(m·f) = dm·f + (-1)^{|m|} m·df`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    base: DgCategory,
    values: Vec<Hom>,
    /// `action[x * n + y][f * dim M(y) + m]` is `m·f` in `M(x)`.
    action: Vec<Vec<SparseVec>>,
}

/// A family of linear maps `M(x) -> N(x)` of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub degree: i64,
    pub maps: Vec<Matrix>,
}

impl DgModule {
    /// Builds a module from sparse action entries `(x, y, m, f, out, c)`:
    /// `m·f` contains `c * out`, with `m` in `M(y)`, `f` in `A(x,y)`.
    pub fn new(
        base: DgCategory,
        values: Vec<Hom>,
        entries: Vec<(usize, usize, usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let n = base.n_objects();
        let field = base.field();
        if values.len() != n {
            return Err(Error::InvalidModule(format!("expected {n} values, got {}", values.len())));
        }
        for v in &values {
            if v.diff.rows() != v.dim() || v.diff.cols() != v.dim() {
                return Err(Error::InvalidModule("value differential shape mismatch".into()));
            }
        }
        let mut table: Vec<Vec<Vec<(usize, Scalar)>>> = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(vec![Vec::new(); base.dim(x, y) * values[y].dim()]);
            }
        }
        for (x, y, m, f, out, c) in entries {
            if x >= n || y >= n || m >= values[y].dim() || f >= base.dim(x, y) || out >= values[x].dim() {
                return Err(Error::InvalidModule("action entry out of range".into()));
            }
            table[x * n + y][f * values[y].dim() + m].push((out, c));
        }
        let action = table
            .into_iter()
            .map(|t| t.into_iter().map(|terms| SparseVec::from_terms(terms, &field)).collect())
            .collect();
        Ok(DgModule { base, values, action })
    }

    pub(crate) fn from_raw(base: DgCategory, values: Vec<Hom>, action: Vec<Vec<SparseVec>>) -> Self {
        DgModule { base, values, action }
    }

    /// The zero module.
    pub fn zero(base: &DgCategory) -> Self {
        let n = base.n_objects();
        let field = base.field();
        DgModule {
            base: base.clone(),
            values: vec![Hom::zero(field); n],
            action: vec![Vec::new(); n * n],
        }
    }

    pub fn base(&self) -> &DgCategory {
        &self.base
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    pub fn value(&self, x: usize) -> &Hom {
        &self.values[x]
    }

    pub fn values(&self) -> &[Hom] {
        &self.values
    }

    pub fn dim(&self, x: usize) -> usize {
        self.values[x].dim()
    }

    pub fn degree(&self, x: usize, i: usize) -> i64 {
        self.values[x].degree(i)
    }

    pub fn label(&self, x: usize, i: usize) -> &str {
        &self.values[x].basis[i].label
    }

    pub fn total_dim(&self) -> usize {
        self.values.iter().map(Hom::dim).sum()
    }

    pub fn value_complex(&self, x: usize) -> ChainComplex {
        graded_complex(self.field(), &self.values[x].basis, &self.values[x].diff)
    }

    pub fn differential(&self, x: usize, v: &SparseVec) -> SparseVec {
        self.values[x].diff.apply(v)
    }

    /// `m·f` for basis elements `m` of `M(y)` and `f` of `A(x,y)`.
    pub fn act_basis(&self, x: usize, y: usize, m: usize, f: usize) -> &SparseVec {
        &self.action[x * self.base.n_objects() + y][f * self.values[y].dim() + m]
    }

    /// Bilinear extension of the action.
    pub fn act(&self, x: usize, y: usize, m: &SparseVec, f: &SparseVec) -> SparseVec {
        let field = self.field();
        let mut out = SparseVec::new();
        for (mi, mc) in m.iter() {
            for (fi, fc) in f.iter() {
                out.add_assign_scaled(&field.mul(mc, fc), self.act_basis(x, y, mi, fi), &field);
            }
        }
        out
    }

    /// Smallest and largest degree over all values.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let degs: Vec<i64> = self.values.iter().flat_map(|h| h.basis.iter().map(|b| b.degree)).collect();
        Some((*degs.iter().min()?, *degs.iter().max()?))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.values.iter().all(|h| h.diff.is_zero())
    }

    /// Lists every violated module axiom; empty iff the module is valid.
    pub fn validate(&self) -> Vec<String> {
        let a = &self.base;
        let field = self.field();
        let n = a.n_objects();
        let mut out = Vec::new();
        for x in 0..n {
            let v = &self.values[x];
            for i in 0..v.dim() {
                let di = v.diff.column(i);
                if di.iter().any(|(j, _)| v.degree(j) != v.degree(i) + 1) {
                    out.push(format!("d({}) is not of degree {}", v.basis[i].label, v.degree(i) + 1));
                }
                if !v.diff.apply(di).is_zero() {
                    out.push(format!("d² ≠ 0 on {}", v.basis[i].label));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for f in 0..a.dim(x, y) {
                    let fe = SparseVec::unit(f, &field);
                    let df = a.differential(x, y, &fe);
                    for m in 0..self.dim(y) {
                        let me = SparseVec::unit(m, &field);
                        let mf = self.act_basis(x, y, m, f);
                        let deg = self.degree(y, m) + a.degree(x, y, f);
                        if mf.iter().any(|(k, _)| self.degree(x, k) != deg) {
                            out.push(format!("{}·{} leaves degree {deg}", self.label(y, m), a.label(x, y, f)));
                        }
                        let lhs = self.differential(x, mf);
                        let dm = self.differential(y, &me);
                        let rhs = self.act(x, y, &dm, &fe).axpy(
                            &field.sign(self.degree(y, m)),
                            &self.act(x, y, &me, &df),
                            &field,
                        );
                        if lhs != rhs {
                            out.push(format!("action is not a chain map on {}·{}", self.label(y, m), a.label(x, y, f)));
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for m in 0..self.dim(x) {
                let me = SparseVec::unit(m, &field);
                if self.act(x, x, &me, a.unit(x)) != me {
                    out.push(format!("unit axiom fails on {}", self.label(x, m)));
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for g in 0..a.dim(x, y) {
                        for f in 0..a.dim(w, x) {
                            let gf = a.compose_basis(w, x, y, g, f);
                            let fe = SparseVec::unit(f, &field);
                            for m in 0..self.dim(y) {
                                let me = SparseVec::unit(m, &field);
                                let lhs = self.act(w, y, &me, gf);
                                let rhs = self.act(w, x, self.act_basis(x, y, m, g), &fe);
                                if lhs != rhs {
                                    out.push(format!(
                                        "associativity fails on {}·({}∘{})",
                                        self.label(y, m),
                                        a.label(x, y, g),
                                        a.label(w, x, f)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `M ⊗ k[n]`: degrees raised by `n`, same differential, action
    /// `(m⊗1)·a = (-1)^{n|a|} (m·a)⊗1`.
    pub fn tensor_shift(&self, n: i64) -> DgModule {
        let a = &self.base;
        let field = self.field();
        let no = a.n_objects();
        let values = self
            .values
            .iter()
            .map(|h| Hom {
                basis: h
                    .basis
                    .iter()
                    .map(|b| BasisElement::new(format!("{}[{n}]", b.label), b.degree + n))
                    .collect(),
                diff: h.diff.clone(),
            })
            .collect();
        let mut action = self.action.clone();
        for x in 0..no {
            for y in 0..no {
                let dm = self.dim(y);
                for f in 0..a.dim(x, y) {
                    let s = field.sign(n * a.degree(x, y, f));
                    for m in 0..dm {
                        let e = &mut action[x * no + y][f * dm + m];
                        *e = e.scale(&s, &field);
                    }
                }
            }
        }
        DgModule { base: self.base.clone(), values, action }
    }

    /// The canonical degree-`n` map `M -> M ⊗ k[n]`, `m ↦ m⊗1`.
    pub fn tensor_shift_map(&self, n: i64) -> ModuleMap {
        let field = self.field();
        ModuleMap {
            degree: n,
            maps: self.values.iter().map(|h| Matrix::identity(field, h.dim())).collect(),
        }
    }

    /// Objectwise direct sum; basis of `self` first.
    pub fn direct_sum(&self, other: &DgModule) -> Result<DgModule> {
        if self.base != other.base {
            return Err(Error::InvalidModule("direct sum of modules over different categories".into()));
        }
        let field = self.field();
        let n = self.base.n_objects();
        let mut values = Vec::with_capacity(n);
        for x in 0..n {
            let (h1, h2) = (&self.values[x], &other.values[x]);
            let off = h1.dim();
            let mut basis = h1.basis.clone();
            basis.extend(h2.basis.iter().cloned());
            let mut cols: Vec<SparseVec> = h1.diff.columns().to_vec();
            cols.extend(h2.diff.columns().iter().map(|c| c.reindex(|i| Some(i + off), &field)));
            let dim = basis.len();
            values.push(Hom { basis, diff: Matrix::from_columns(field, dim, cols) });
        }
        let mut action = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (d1, d2) = (self.dim(y), other.dim(y));
                let off = self.dim(x);
                let mut t = Vec::with_capacity(self.base.dim(x, y) * (d1 + d2));
                for f in 0..self.base.dim(x, y) {
                    for m in 0..d1 {
                        t.push(self.act_basis(x, y, m, f).clone());
                    }
                    for m in 0..d2 {
                        t.push(other.act_basis(x, y, m, f).reindex(|i| Some(i + off), &field));
                    }
                }
                action.push(t);
            }
        }
        Ok(DgModule { base: self.base.clone(), values, action })
    }

    /// Checks that `f` is a module map of its degree up to the sign
    /// `f(m·a) = (-1)^{deg f·|a|} f(m)·a`, commuting with `d`.
    pub fn check_map(&self, target: &DgModule, f: &ModuleMap) -> Vec<String> {
        let a = &self.base;
        let field = self.field();
        let n = a.n_objects();
        let mut out = Vec::new();
        if f.maps.len() != n {
            return vec!["map has the wrong number of components".into()];
        }
        for x in 0..n {
            let fx = &f.maps[x];
            if fx.cols() != self.dim(x) || fx.rows() != target.dim(x) {
                out.push(format!("component at {} has the wrong shape", a.objects()[x]));
                return out;
            }
            for m in 0..self.dim(x) {
                let img = fx.column(m);
                if img.iter().any(|(k, _)| target.degree(x, k) != self.degree(x, m) + f.degree) {
                    out.push(format!("f({}) has the wrong degree", self.label(x, m)));
                }
                let me = SparseVec::unit(m, &field);
                if target.differential(x, img) != fx.apply(&self.differential(x, &me)) {
                    out.push(format!("f does not commute with d on {}", self.label(x, m)));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for g in 0..a.dim(x, y) {
                    let ge = SparseVec::unit(g, &field);
                    let s = field.sign(f.degree * a.degree(x, y, g));
                    for m in 0..self.dim(y) {
                        let lhs = f.maps[x].apply(self.act_basis(x, y, m, g)).scale(&s, &field);
                        let rhs = target.act(x, y, f.maps[y].column(m), &ge);
                        if lhs != rhs {
                            out.push(format!("f is not linear on {}·{}", self.label(y, m), a.label(x, y, g)));
                        }
                    }
                }
            }
        }
        out
    }
}

/// The representable module `A(-, x)` with action by composition.
pub fn yoneda_module(a: &DgCategory, x: usize) -> Result<DgModule> {
    let n = a.n_objects();
    if x >= n {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    let values: Vec<Hom> = (0..n).map(|y| a.hom(y, x).clone()).collect();
    let mut action = Vec::with_capacity(n * n);
    for z in 0..n {
        for y in 0..n {
            let mut t = Vec::with_capacity(a.dim(z, y) * a.dim(y, x));
            for f in 0..a.dim(z, y) {
                for m in 0..a.dim(y, x) {
                    t.push(a.compose_basis(z, y, x, m, f).clone());
                }
            }
            action.push(t);
        }
    }
    Ok(DgModule { base: a.clone(), values, action })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dgcore::sphere_cell;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn yoneda_modules_are_valid() {
        let u = corpus::unit(Q);
        let y = yoneda_module(&u, 0).unwrap();
        assert!(y.validate().is_empty());
        assert_eq!(y.value(0).dim(), 1);
        let s = sphere_cell(3, Q);
        let y = yoneda_module(&s, 1).unwrap();
        assert!(y.validate().is_empty(), "{:?}", y.validate());
        assert_eq!(y.value(0).basis[0].degree, 3);
        assert!(yoneda_module(&s, 2).is_err());
    }

    #[test]
    fn shifts_and_sums_are_valid() {
        let s = sphere_cell(1, Q);
        let y = yoneda_module(&s, 1).unwrap();
        for n in -2..=2 {
            let z = y.tensor_shift(n);
            assert!(z.validate().is_empty(), "{:?}", z.validate());
            assert!(y.check_map(&z, &y.tensor_shift_map(n)).is_empty());
        }
        let sum = y.direct_sum(&yoneda_module(&s, 0).unwrap()).unwrap();
        assert!(sum.validate().is_empty());
        assert_eq!(sum.total_dim(), 3);
    }

    #[test]
    fn broken_unit_is_detected() {
        let u = corpus::unit(Q);
        let y = yoneda_module(&u, 0).unwrap();
        let bad = DgModule::new(u.clone(), y.values().to_vec(), vec![]).unwrap();
        assert!(bad.validate().iter().any(|v| v.contains("unit")));
    }
}
