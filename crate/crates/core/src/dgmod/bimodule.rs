use super::module::DgModule;
use crate::dgcore::{BasisElement, DgCategory, Hom};
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, SparseVec};

/// A `B`-`A` bimodule, stored as a right module over `B^op ⊗ A`. The value at
/// `(x, y)` sits at object index `x * |A| + y` of the tensor category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: DgCategory,
    right: DgCategory,
    module: DgModule,
}

impl Bimodule {
    pub fn new(left: DgCategory, right: DgCategory, module: DgModule) -> Result<Self> {
        if *module.base() != left.opposite().tensor(&right)? {
            return Err(Error::InvalidModule("bimodule base is not B^op ⊗ A".into()));
        }
        Ok(Bimodule { left, right, module })
    }

    pub fn left(&self) -> &DgCategory {
        &self.left
    }

    pub fn right(&self) -> &DgCategory {
        &self.right
    }

    pub fn module(&self) -> &DgModule {
        &self.module
    }

    pub fn into_module(self) -> DgModule {
        self.module
    }

    pub fn pair_index(&self, x: usize, y: usize) -> usize {
        x * self.right.n_objects() + y
    }

    pub fn value(&self, x: usize, y: usize) -> &Hom {
        self.module.value(self.pair_index(x, y))
    }

    pub fn validate(&self) -> Vec<String> {
        self.module.validate()
    }

    /// The transpose `M^t(y, x) = M(x, y)`, an `A^op`-`B^op` bimodule, with
    /// `m·(g⊗f) = (-1)^{|f||g|} m·(f⊗g)`.
    pub fn transpose(&self) -> Result<Bimodule> {
        let field = self.right.field();
        let (b, a) = (&self.left, &self.right);
        let (nb, na) = (b.n_objects(), a.n_objects());
        let bop = b.opposite();
        let base = a.tensor(&bop)?;
        let values: Vec<Hom> = (0..na * nb).map(|p| self.value(p % nb, p / nb).clone()).collect();
        let mut action = Vec::with_capacity(na * nb * na * nb);
        for pt in 0..na * nb {
            let (yp, xp) = (pt / nb, pt % nb);
            for qt in 0..na * nb {
                let (y, x) = (qt / nb, qt % nb);
                let (da, db) = (a.dim(yp, y), bop.dim(xp, x));
                let (p, q) = (self.pair_index(xp, yp), self.pair_index(x, y));
                let dm = self.module.dim(q);
                let mut tbl = Vec::with_capacity(da * db * dm);
                for g in 0..da {
                    for f in 0..db {
                        let s = field.sign(a.degree(yp, y, g) * bop.degree(xp, x, f));
                        for m in 0..dm {
                            tbl.push(self.module.act_basis(p, q, m, f * da + g).scale(&s, &field));
                        }
                    }
                }
                action.push(tbl);
            }
        }
        let module = DgModule::from_raw(base, values, action);
        Ok(Bimodule { left: a.opposite(), right: bop, module })
    }
}

/// The diagonal bimodule `(x, y) ↦ A(y, x)` with action
/// `m·(f⊗g) = (-1)^{|f||m|} f∘m∘g`.
pub fn diagonal_bimodule(a: &DgCategory) -> Result<Bimodule> {
    let field = a.field();
    let n = a.n_objects();
    let t = a.opposite().tensor(a)?;
    let values: Vec<Hom> = (0..n * n).map(|p| a.hom(p % n, p / n).clone()).collect();
    let mut action = Vec::with_capacity(n * n * n * n);
    for p in 0..n * n {
        let (xp, yp) = (p / n, p % n);
        for q in 0..n * n {
            let (x, y) = (q / n, q % n);
            // f ⊗ g in op(x', x) ⊗ A(y', y), m in A(y, x), result in A(y', x').
            let (dfo, dg, dm) = (a.dim(x, xp), a.dim(yp, y), a.dim(y, x));
            let mut tbl = Vec::with_capacity(dfo * dg * dm);
            for f in 0..dfo {
                for g in 0..dg {
                    let ge = SparseVec::unit(g, &field);
                    let fe = SparseVec::unit(f, &field);
                    for m in 0..dm {
                        let s = field.sign(a.degree(x, xp, f) * a.degree(y, x, m));
                        let mg = a.compose(yp, y, x, &SparseVec::unit(m, &field), &ge);
                        tbl.push(a.compose(yp, x, xp, &fe, &mg).scale(&s, &field));
                    }
                }
            }
            action.push(tbl);
        }
    }
    let module = DgModule::from_raw(t, values, action);
    Ok(Bimodule { left: a.clone(), right: a.clone(), module })
}

/// The right `A`-module `y ↦ X(x, y)` obtained by restricting along
/// `A -> B^op ⊗ A`, `g ↦ unit_x ⊗ g`.
pub fn restrict(x: usize, m: &Bimodule) -> Result<DgModule> {
    let (b, a) = (&m.left, &m.right);
    if x >= b.n_objects() {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    let field = a.field();
    let n = a.n_objects();
    let ux = b.unit(x);
    let values: Vec<Hom> = (0..n).map(|y| m.value(x, y).clone()).collect();
    let mut action = Vec::with_capacity(n * n);
    for yp in 0..n {
        for y in 0..n {
            let dg = a.dim(yp, y);
            let (p, q) = (m.pair_index(x, yp), m.pair_index(x, y));
            let mut tbl = Vec::with_capacity(dg * values[y].dim());
            for g in 0..dg {
                let fg = SparseVec::from_terms(ux.iter().map(|(i, c)| (i * dg + g, c.clone())), &field);
                for mi in 0..values[y].dim() {
                    tbl.push(m.module.act(p, q, &SparseVec::unit(mi, &field), &fg));
                }
            }
            action.push(tbl);
        }
    }
    Ok(DgModule::from_raw(a.clone(), values, action))
}

/// The external tensor product `M ⊠ N` of a right `B^op`-module and a right
/// `A`-module: `(x, y) ↦ M(x) ⊗ N(y)` with
/// `(m⊗n)·(f⊗g) = (-1)^{|n||f|} (m·f)⊗(n·g)`.
pub fn external_tensor(m: &DgModule, n: &DgModule) -> Result<Bimodule> {
    let field = m.field();
    if field != n.field() {
        return Err(Error::FieldMismatch(field.to_string(), n.field().to_string()));
    }
    let bop = m.base();
    let a = n.base();
    let t = bop.tensor(a)?;
    let (nb, na) = (bop.n_objects(), a.n_objects());
    let mut values = Vec::with_capacity(nb * na);
    for x in 0..nb {
        for y in 0..na {
            let (hm, hn) = (m.value(x), n.value(y));
            let mut basis = Vec::with_capacity(hm.dim() * hn.dim());
            for u in &hm.basis {
                for v in &hn.basis {
                    basis.push(BasisElement::new(format!("{}⊠{}", u.label, v.label), u.degree + v.degree));
                }
            }
            let dn = hn.dim();
            let mut cols = Vec::with_capacity(basis.len());
            for i in 0..hm.dim() {
                for j in 0..dn {
                    let mut terms: Vec<_> = hm.diff.column(i).iter().map(|(k, c)| (k * dn + j, c.clone())).collect();
                    let s = field.sign(hm.degree(i));
                    terms.extend(hn.diff.column(j).iter().map(|(k, c)| (i * dn + k, field.mul(&s, c))));
                    cols.push(SparseVec::from_terms(terms, &field));
                }
            }
            let dim = basis.len();
            values.push(Hom { basis, diff: Matrix::from_columns(field, dim, cols) });
        }
    }
    let mut action = Vec::with_capacity((nb * na) * (nb * na));
    for p in 0..nb * na {
        let (xp, yp) = (p / na, p % na);
        for q in 0..nb * na {
            let (x, y) = (q / na, q % na);
            let (df, dg) = (bop.dim(xp, x), a.dim(yp, y));
            let (dmx, dny) = (m.dim(x), n.dim(y));
            let dnyp = n.dim(yp);
            let mut tbl = Vec::with_capacity(df * dg * dmx * dny);
            for f in 0..df {
                for g in 0..dg {
                    for mi in 0..dmx {
                        for ni in 0..dny {
                            let s = field.sign(n.degree(y, ni) * bop.degree(xp, x, f));
                            let mf = m.act_basis(xp, x, mi, f);
                            let ng = n.act_basis(yp, y, ni, g);
                            let mut terms = Vec::with_capacity(mf.nnz() * ng.nnz());
                            for (i, c) in mf.iter() {
                                for (j, d) in ng.iter() {
                                    terms.push((i * dnyp + j, field.mul(&s, &field.mul(c, d))));
                                }
                            }
                            tbl.push(SparseVec::from_terms(terms, &field));
                        }
                    }
                }
            }
            action.push(tbl);
        }
    }
    let module = DgModule::from_raw(t, values, action);
    Ok(Bimodule { left: bop.opposite(), right: a.clone(), module })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dgcore::sphere_cell;
    use crate::dgmod::module::yoneda_module;
    use crate::exactfield::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn diagonal_is_valid() {
        for (name, a) in corpus::named(Q) {
            let d = diagonal_bimodule(&a).unwrap();
            assert!(d.validate().is_empty(), "{name}: {:?}", d.validate());
        }
        for n in [-1, 0, 2] {
            let s = sphere_cell(n, Q);
            let d = diagonal_bimodule(&s).unwrap();
            assert!(d.validate().is_empty(), "{:?}", d.validate());
            assert_eq!(d.value(1, 0).dim(), 1);
            assert_eq!(d.value(0, 1).dim(), 0);
        }
    }

    #[test]
    fn transpose_of_diagonal_is_diagonal_of_opposite() {
        let mut cats: Vec<DgCategory> = corpus::named(Q).into_iter().map(|(_, a)| a).collect();
        cats.extend([-1, 0, 3].map(|n| sphere_cell(n, Q)));
        for a in cats {
            let t = diagonal_bimodule(&a).unwrap().transpose().unwrap();
            assert!(t.validate().is_empty(), "{:?}", t.validate());
            assert_eq!(t, diagonal_bimodule(&a.opposite()).unwrap());
            assert_eq!(t.transpose().unwrap(), diagonal_bimodule(&a).unwrap());
        }
    }

    #[test]
    fn restriction_of_diagonal_is_representable() {
        let a = corpus::path_a2(Q);
        let d = diagonal_bimodule(&a).unwrap();
        for x in 0..2 {
            let r = restrict(x, &d).unwrap();
            assert!(r.validate().is_empty());
            assert_eq!(r, yoneda_module(&a, x).unwrap());
        }
    }

    #[test]
    fn external_tensor_restricts_to_copies() {
        let s = sphere_cell(1, Q);
        let m = yoneda_module(&s.opposite(), 0).unwrap();
        let n = yoneda_module(&s, 1).unwrap();
        let x = external_tensor(&m, &n).unwrap();
        assert!(x.validate().is_empty(), "{:?}", x.validate());
        for b in 0..2 {
            let r = restrict(b, &x).unwrap();
            assert!(r.validate().is_empty());
            for y in 0..2 {
                assert_eq!(r.dim(y), m.dim(b) * n.dim(y));
            }
        }
    }
}
