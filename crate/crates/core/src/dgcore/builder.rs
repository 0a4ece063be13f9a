use std::collections::BTreeMap;

use super::category::{BasisElement, CategoryParts, DgCategory, Hom};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Matrix, Scalar, SparseVec};

/// Incremental construction of small categories whose units are basis
/// elements. Identity compositions are filled in by [`CategoryBuilder::build`].
pub struct CategoryBuilder {
    field: FieldSpec,
    objects: Vec<String>,
    bases: BTreeMap<(usize, usize), Vec<BasisElement>>,
    diffs: Vec<(usize, usize, usize, usize, Scalar)>,
    comps: Vec<(usize, usize, usize, usize, usize, usize, Scalar)>,
    identities: Vec<Option<usize>>,
}

impl CategoryBuilder {
    pub fn new(field: FieldSpec) -> Self {
        CategoryBuilder {
            field,
            objects: Vec::new(),
            bases: BTreeMap::new(),
            diffs: Vec::new(),
            comps: Vec::new(),
            identities: Vec::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Adds an object together with its identity `id_<name>`.
    pub fn object(&mut self, name: &str) -> usize {
        let x = self.objects.len();
        self.objects.push(name.to_string());
        self.identities.push(None);
        let i = self.basis(x, x, &format!("id_{name}"), 0);
        self.identities[x] = Some(i);
        x
    }

    pub fn basis(&mut self, x: usize, y: usize, label: &str, degree: i64) -> usize {
        let v = self.bases.entry((x, y)).or_default();
        v.push(BasisElement::new(label, degree));
        v.len() - 1
    }

    /// `d(from)` gains `c * to`, both in `hom(x,y)`.
    pub fn diff(&mut self, x: usize, y: usize, from: usize, to: usize, c: i64) -> &mut Self {
        let c = self.field.from_i64(c);
        self.diffs.push((x, y, from, to, c));
        self
    }

    /// `g∘f` gains `c * h` for `g` in `hom(y,z)`, `f` in `hom(x,y)`.
    #[allow(clippy::too_many_arguments)]
    pub fn compose(&mut self, x: usize, y: usize, z: usize, g: usize, f: usize, h: usize, c: i64) -> &mut Self {
        let c = self.field.from_i64(c);
        self.comps.push((x, y, z, g, f, h, c));
        self
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x].expect("object registered with identity")
    }

    pub fn build(self) -> Result<DgCategory> {
        let n = self.objects.len();
        let f = self.field;
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let basis = self.bases.get(&(x, y)).cloned().unwrap_or_default();
                let dim = basis.len();
                let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
                for (a, b, from, to, c) in &self.diffs {
                    if (*a, *b) == (x, y) {
                        if *from >= dim || *to >= dim {
                            return Err(Error::InvalidCategory("differential index out of range".into()));
                        }
                        cols[*from].push((*to, c.clone()));
                    }
                }
                let cols = cols.into_iter().map(|t| SparseVec::from_terms(t, &f)).collect();
                homs.push(Hom { basis, diff: Matrix::from_columns(f, dim, cols) });
            }
        }
        let mut compositions = self.comps;
        for x in 0..n {
            for y in 0..n {
                let dim = homs[x * n + y].dim();
                let idy = self.identities[y].unwrap();
                let idx = self.identities[x].unwrap();
                for i in 0..dim {
                    if x == y && i == idx {
                        compositions.push((x, x, x, idx, idx, idx, f.one()));
                        continue;
                    }
                    compositions.push((x, y, y, idy, i, i, f.one()));
                    compositions.push((x, x, y, i, idx, i, f.one()));
                }
            }
        }
        let units = (0..n).map(|x| SparseVec::unit(self.identities[x].unwrap(), &f)).collect();
        DgCategory::new(CategoryParts { field: f, objects: self.objects, homs, compositions, units })
    }
}
