use serde::Serialize;

use super::chains::{CyclicBar, CyclicChain};
use super::complex::{all_chains, auto_bar_bound, hochschild_complex};
use crate::dgcore::DgCategory;
use crate::dgmod::Soundness;
use crate::error::{Error, Result};
use crate::exactfield::{HomologyBasis, Matrix, Scalar, SparseVec};

/// The class of an idempotent in `HH_0`, in coordinates of a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ch0 {
    #[serde(serialize_with = "crate::exactfield::serialize_scalars")]
    pub coordinates: Vec<Scalar>,
    pub hh0_dim: usize,
    pub status: Soundness,
}

/// Square matrices with entries in `A(x,x)`.
pub type EndoMatrix = Vec<Vec<SparseVec>>;

/// Matrix product `(e·f)_{ik} = Σ_j e_ij ∘ f_jk`.
pub fn endo_mul(a: &DgCategory, x: usize, e: &EndoMatrix, f: &EndoMatrix) -> EndoMatrix {
    let field = a.field();
    let n = e.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let mut acc = SparseVec::new();
                    for j in 0..n {
                        acc.add_assign_scaled(&field.one(), &a.compose(x, x, x, &e[i][j], &f[j][k]), &field);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// The degree-zero Chern character: the class of `Σ_i e_ii` in `HH_0`, for an
/// idempotent matrix `e` of closed degree-zero endomorphisms of object `x`.
pub fn ch0(a: &DgCategory, x: usize, e: &EndoMatrix) -> Result<Ch0> {
    let field = a.field();
    if x >= a.n_objects() {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    let n = e.len();
    if e.iter().any(|row| row.len() != n) {
        return Err(Error::NotIdempotent("matrix is not square".into()));
    }
    for v in e.iter().flatten() {
        if v.iter().any(|(i, _)| i >= a.dim(x, x) || a.degree(x, x, i) != 0) {
            return Err(Error::NotIdempotent("entries must be endomorphisms of degree 0".into()));
        }
        if !a.differential(x, x, v).is_zero() {
            return Err(Error::NotIdempotent("entries must be closed".into()));
        }
    }
    if endo_mul(a, x, e, e) != *e {
        return Err(Error::NotIdempotent("e·e ≠ e".into()));
    }
    let mut trace = SparseVec::new();
    for (i, row) in e.iter().enumerate() {
        trace.add_assign_scaled(&field.one(), &row[i], &field);
    }
    let bound = auto_bar_bound(a, 0);
    let hc = hochschild_complex(a, bound)?;
    let cb = CyclicBar::new(a, true);
    let degree_zero: Vec<CyclicChain> =
        all_chains(&cb, bound).into_iter().filter(|(d, _, _)| *d == 0).map(|(_, c, _)| c).collect();
    let z = SparseVec::from_terms(
        trace.iter().map(|(k, c)| {
            let chain = CyclicChain { objs: vec![x], a: vec![k] };
            let pos = degree_zero.iter().position(|c| *c == chain).expect("degree-zero endomorphism chain");
            (pos, c.clone())
        }),
        &field,
    );
    let dim0 = hc.total.dim(0);
    let incoming = hc.total.diff(-1).unwrap_or_else(|| Matrix::zero(field, dim0, 0));
    let outgoing = hc.total.diff(0).unwrap_or_else(|| Matrix::zero(field, 0, dim0));
    let hb = HomologyBasis::new(&incoming, &outgoing);
    let coordinates = hb.coordinates(&z).ok_or_else(|| Error::Internal("trace is not a cycle".into()))?;
    Ok(Ch0 { coordinates, hh0_dim: hb.dim(), status: hc.status_at(0) })
}
