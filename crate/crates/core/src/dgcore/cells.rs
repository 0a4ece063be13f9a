//! The generating dg cells: the unit category, spheres `S(n)`, disks `D(n)`
//! and the inclusions `S(n-1) -> D(n)`.
//!
//! Degree convention (cohomological): `D(n)(3,4)` is `k` in degree `n-2`
//! mapping by the identity onto `k` in degree `n-1`. The inclusion sends the
//! sphere generator of degree `n-1` to the degree `n-1` generator, so `D(n)` is
//! acyclic and the inclusion is the identity in degree `n-1`.

use super::builder::CategoryBuilder;
use super::category::DgCategory;
use super::functor::DgFunctor;
use crate::exactfield::{FieldSpec, Matrix, SparseVec};

/// One object `*` with `hom(*,*) = k` in degree 0.
pub fn unit_category(field: FieldSpec) -> DgCategory {
    let mut b = CategoryBuilder::new(field);
    b.object("*");
    b.build().expect("unit category is well formed")
}

/// `S(n)`: objects `1, 2`; `hom(1,2)` spanned by `s` in degree `n`.
pub fn sphere_cell(n: i64, field: FieldSpec) -> DgCategory {
    let mut b = CategoryBuilder::new(field);
    let x = b.object("1");
    let y = b.object("2");
    b.basis(x, y, "s", n);
    b.build().expect("sphere cell is well formed")
}

/// `D(n)`: objects `3, 4`; `hom(3,4)` spanned by `h` (degree `n-2`) and
/// `s` (degree `n-1`) with `d(h) = s`.
pub fn disk_cell(n: i64, field: FieldSpec) -> DgCategory {
    let mut b = CategoryBuilder::new(field);
    let x = b.object("3");
    let y = b.object("4");
    let s = b.basis(x, y, "s", n - 1);
    let h = b.basis(x, y, "h", n - 2);
    b.diff(x, y, h, s, 1);
    b.build().expect("disk cell is well formed")
}

/// `ι(n): S(n-1) -> D(n)`, sending `1 ↦ 3`, `2 ↦ 4`, `s ↦ s`.
pub fn cell_inclusion(n: i64, field: FieldSpec) -> DgFunctor {
    let source = sphere_cell(n - 1, field);
    let target = disk_cell(n, field);
    let mut maps = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            let cols = (0..source.dim(x, y))
                .map(|i| {
                    let label = source.label(x, y, i).replace("id_1", "id_3").replace("id_2", "id_4");
                    let j = (0..target.dim(x, y))
                        .find(|&j| target.label(x, y, j) == label)
                        .expect("matching generator");
                    SparseVec::unit(j, &field)
                })
                .collect();
            maps.push(Matrix::from_columns(field, target.dim(x, y), cols));
        }
    }
    DgFunctor::new(source, target, vec![0, 1], maps).expect("inclusion has the right shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn unit_shape() {
        let k = unit_category(Q);
        assert_eq!(k.n_objects(), 1);
        assert_eq!(k.hom_dims(0, 0), BTreeMap::from([(0, 1)]));
        assert!(k.validate().is_valid());
        let k2 = unit_category(FieldSpec::Prime(2));
        assert_eq!(k2.hom_dims(0, 0), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn corrupted_unit_is_reported() {
        // Give hom(*,*) a second basis element and make d(id) hit it.
        let mut b = CategoryBuilder::new(Q);
        let x = b.object("*");
        b.basis(x, x, "t", 1);
        let c = b.build().unwrap().with_differential_entry(0, 0, 0, 1, Q.one());
        let report = c.validate();
        assert!(report.has_unit_violation(), "{report}");
    }

    #[test]
    fn sphere_and_disk() {
        for n in -2..=3 {
            let s = sphere_cell(n, Q);
            assert!(s.validate().is_valid());
            assert_eq!(s.hom_dims(0, 1), BTreeMap::from([(n, 1)]));
            assert_eq!(s.dim(1, 0), 0);
            let d = disk_cell(n, Q);
            assert!(d.validate().is_valid());
            let h = d.hom_complex(0, 1);
            assert_eq!(h.support(), vec![n - 2, n - 1]);
            assert!(h.homology_dims(n - 3..=n).unwrap().values().all(|&v| v == 0));
            assert_eq!(crate::exactfield::rank(&h.diff(n - 2).unwrap()), 1);
        }
    }

    #[test]
    fn inclusion_is_a_functor() {
        for n in -1..=2 {
            let i = cell_inclusion(n, Q);
            assert!(i.validate().is_empty(), "{:?}", i.validate());
        }
    }
}
