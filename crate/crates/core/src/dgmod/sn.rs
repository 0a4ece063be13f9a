//! Modules over `S(n)^op ⊗ A` as triples `(M, M', f)` with `f: M -> M'` of
//! degree `n`.
//!
//! Objects of `S(n)^op ⊗ A` are `(1, x)` and `(2, x)`. The packed module is
//! `M` over the objects `(1, x)` and `M'` over `(2, x)`. The generator `s`
//! acts by `m·(s⊗a) = f(m)·a`; identities act through the module actions.

use super::module::{DgModule, ModuleMap};
use crate::dgcore::{sphere_cell, DgCategory, Hom};
use crate::error::{Error, Result};
use crate::exactfield::{Matrix, SparseVec};

fn base_for(n: i64, a: &DgCategory) -> Result<DgCategory> {
    sphere_cell(n, a.field()).opposite().tensor(a)
}

/// Packs `(M, M', f)` into a module over `S(n)^op ⊗ A`.
pub fn sn_pack(m: &DgModule, m2: &DgModule, f: &ModuleMap, n: i64) -> Result<DgModule> {
    let a = m.base();
    if m2.base() != a {
        return Err(Error::InvalidModule("both modules must live over the same category".into()));
    }
    if f.degree != n {
        return Err(Error::DegreeMismatch(format!("map has degree {}, expected {n}", f.degree)));
    }
    let na = a.n_objects();
    if f.maps.len() != na || (0..na).any(|x| f.maps[x].cols() != m.dim(x) || f.maps[x].rows() != m2.dim(x)) {
        return Err(Error::InvalidModule("map components have the wrong shape".into()));
    }
    let field = a.field();
    let t = base_for(n, a)?;
    let values: Vec<Hom> = m.values().iter().chain(m2.values()).cloned().collect();
    let mut action = Vec::with_capacity(4 * na * na);
    for p in 0..2 * na {
        let (ip, xp) = (p / na, p % na);
        for q in 0..2 * na {
            let (i, x) = (q / na, q % na);
            let da = a.dim(xp, x);
            let src = if i == 0 { m } else { m2 };
            let mut tbl = Vec::new();
            match (ip, i) {
                (0, 0) | (1, 1) => {
                    // the single basis element of op(i,i) is the identity
                    for g in 0..da {
                        for k in 0..src.dim(x) {
                            tbl.push(src.act_basis(xp, x, k, g).clone());
                        }
                    }
                }
                (1, 0) => {
                    for g in 0..da {
                        let ge = SparseVec::unit(g, &field);
                        for k in 0..m.dim(x) {
                            tbl.push(m2.act(xp, x, f.maps[x].column(k), &ge));
                        }
                    }
                }
                _ => {}
            }
            action.push(tbl);
        }
    }
    Ok(DgModule::from_raw(t, values, action))
}

/// Recovers `(M, M', f)` from a module over `S(n)^op ⊗ A`.
pub fn sn_unpack(x: &DgModule, n: i64, a: &DgCategory) -> Result<(DgModule, DgModule, ModuleMap)> {
    let t = base_for(n, a)?;
    if *x.base() != t {
        return Err(Error::InvalidModule("module does not live over S(n)^op ⊗ A".into()));
    }
    let field = a.field();
    let na = a.n_objects();
    let part = |i: usize| -> DgModule {
        let values: Vec<Hom> = (0..na).map(|y| x.value(i * na + y).clone()).collect();
        let mut action = Vec::with_capacity(na * na);
        for yp in 0..na {
            for y in 0..na {
                let mut tbl = Vec::new();
                for g in 0..a.dim(yp, y) {
                    for k in 0..values[y].dim() {
                        tbl.push(x.act_basis(i * na + yp, i * na + y, k, g).clone());
                    }
                }
                action.push(tbl);
            }
        }
        DgModule::from_raw(a.clone(), values, action)
    };
    let (m, m2) = (part(0), part(1));
    let maps = (0..na)
        .map(|y| {
            let cols = (0..m.dim(y))
                .map(|k| x.act(na + y, y, &SparseVec::unit(k, &field), a.unit(y)))
                .collect();
            Matrix::from_columns(field, m2.dim(y), cols)
        })
        .collect();
    Ok((m, m2, ModuleMap { degree: n, maps }))
}

/// The left adjoint at the object `1`: `M ↦ (M, M ⊗ k[n], m ↦ m⊗1)`.
pub fn induce_first(m: &DgModule, n: i64) -> Result<DgModule> {
    sn_pack(m, &m.tensor_shift(n), &m.tensor_shift_map(n), n)
}

/// The left adjoint at the object `2`: `M ↦ (0, M, 0)`.
pub fn induce_second(m: &DgModule, n: i64) -> Result<DgModule> {
    let a = m.base();
    let zero = DgModule::zero(a);
    let maps = (0..a.n_objects()).map(|x| Matrix::zero(a.field(), m.dim(x), 0)).collect();
    sn_pack(&zero, m, &ModuleMap { degree: n, maps }, n)
}
