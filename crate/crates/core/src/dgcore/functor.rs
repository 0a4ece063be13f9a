use super::category::DgCategory;
use crate::error::{Error, Result};
use crate::exactfield::{rank, Matrix, SparseVec};

/// A dg functor between finite dg categories, stored as an object map and a
/// degree-0 linear map per ordered pair of source objects.
#[derive(Clone, Debug)]
pub struct DgFunctor {
    source: DgCategory,
    target: DgCategory,
    object_map: Vec<usize>,
    /// `hom_maps[x * n + y]`: `dim target(Fx,Fy) x dim source(x,y)`.
    hom_maps: Vec<Matrix>,
}

impl DgFunctor {
    pub fn new(source: DgCategory, target: DgCategory, object_map: Vec<usize>, hom_maps: Vec<Matrix>) -> Result<Self> {
        let n = source.n_objects();
        if object_map.len() != n || hom_maps.len() != n * n {
            return Err(Error::InvalidCategory("functor data has the wrong size".into()));
        }
        if object_map.iter().any(|&o| o >= target.n_objects()) {
            return Err(Error::InvalidCategory("functor object map out of range".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let m = &hom_maps[x * n + y];
                let (fx, fy) = (object_map[x], object_map[y]);
                if m.cols() != source.dim(x, y) || m.rows() != target.dim(fx, fy) {
                    return Err(Error::InvalidCategory("functor hom map has the wrong shape".into()));
                }
            }
        }
        Ok(DgFunctor { source, target, object_map, hom_maps })
    }

    pub fn source(&self) -> &DgCategory {
        &self.source
    }

    pub fn target(&self) -> &DgCategory {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn hom_map(&self, x: usize, y: usize) -> &Matrix {
        &self.hom_maps[x * self.source.n_objects() + y]
    }

    /// Lists violated functor axioms: grading, differentials, composition, units.
    pub fn validate(&self) -> Vec<String> {
        let (s, t) = (&self.source, &self.target);
        let field = s.field();
        let n = s.n_objects();
        let fo = &self.object_map;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let m = self.hom_map(x, y);
                for i in 0..s.dim(x, y) {
                    let img = m.column(i);
                    if img.iter().any(|(j, _)| t.degree(fo[x], fo[y], j) != s.degree(x, y, i)) {
                        out.push(format!("{} is not sent to its degree", s.label(x, y, i)));
                    }
                    let e = SparseVec::unit(i, &field);
                    let lhs = t.differential(fo[x], fo[y], img);
                    let rhs = m.apply(&s.differential(x, y, &e));
                    if lhs != rhs {
                        out.push(format!("F does not commute with d on {}", s.label(x, y, i)));
                    }
                }
            }
            let u = self.hom_map(x, x).apply(s.unit(x));
            if &u != t.unit(fo[x]) {
                out.push(format!("F does not preserve the unit of {}", s.objects()[x]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for g in 0..s.dim(y, z) {
                        for f in 0..s.dim(x, y) {
                            let lhs = self.hom_map(x, z).apply(s.compose_basis(x, y, z, g, f));
                            let rhs = t.compose(
                                fo[x],
                                fo[y],
                                fo[z],
                                self.hom_map(y, z).column(g),
                                self.hom_map(x, y).column(f),
                            );
                            if lhs != rhs {
                                out.push(format!(
                                    "F does not preserve {}∘{}",
                                    s.label(y, z, g),
                                    s.label(x, y, f)
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether every hom map is a linear isomorphism.
    pub fn is_fully_invertible(&self) -> bool {
        let n = self.source.n_objects();
        let mut hit = vec![false; self.target.n_objects()];
        for &o in &self.object_map {
            if hit[o] {
                return false;
            }
            hit[o] = true;
        }
        if hit.iter().any(|h| !h) {
            return false;
        }
        (0..n).all(|x| {
            (0..n).all(|y| {
                let m = self.hom_map(x, y);
                m.rows() == m.cols() && rank(m) == m.cols()
            })
        })
    }

    /// The symmetry `A⊗B -> B⊗A`, `a⊗b ↦ (-1)^{|a||b|} b⊗a`.
    pub fn tensor_swap(a: &DgCategory, b: &DgCategory) -> Result<DgFunctor> {
        let ab = a.tensor(b)?;
        let ba = b.tensor(a)?;
        let field = a.field();
        let (na, nb) = (a.n_objects(), b.n_objects());
        let object_map: Vec<usize> = (0..na * nb).map(|p| (p % nb) * na + p / nb).collect();
        let mut maps = Vec::with_capacity(ab.n_objects().pow(2));
        for p in 0..na * nb {
            for q in 0..na * nb {
                let ((x, xp), (y, yp)) = ((p / nb, p % nb), (q / nb, q % nb));
                let (da, db) = (a.dim(x, y), b.dim(xp, yp));
                let mut cols = Vec::with_capacity(da * db);
                for i in 0..da {
                    for j in 0..db {
                        let s = field.sign(a.degree(x, y, i) * b.degree(xp, yp, j));
                        cols.push(SparseVec::from_terms([(j * da + i, s)], &field));
                    }
                }
                maps.push(Matrix::from_columns(field, da * db, cols));
            }
        }
        DgFunctor::new(ab, ba, object_map, maps)
    }
}
