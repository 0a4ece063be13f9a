use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_traits::Zero;

use super::field::{FieldSpec, Scalar};
use super::matrix::{kernel_basis, rank, Echelon, Matrix, SparseVec};
use crate::error::{Error, Result};

/// Bounded (or one-sidedly truncated) cochain complex: the differential raises
/// degree. Spaces are stored for degrees `lo..=hi`; outside that range a side
/// is either known to vanish or unspecified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: FieldSpec,
    lo: i64,
    bases: Vec<Vec<String>>,
    diffs: Vec<Matrix>,
    zero_below: bool,
    zero_above: bool,
}

impl ChainComplex {
    /// A complex vanishing outside `lo..lo+bases.len()`. `diffs[i]` maps degree
    /// `lo+i` to `lo+i+1`.
    pub fn new(field: FieldSpec, lo: i64, bases: Vec<Vec<String>>, diffs: Vec<Matrix>) -> Result<Self> {
        Self::with_extent(field, lo, bases, diffs, true, true)
    }

    pub fn with_extent(
        field: FieldSpec,
        lo: i64,
        bases: Vec<Vec<String>>,
        diffs: Vec<Matrix>,
        zero_below: bool,
        zero_above: bool,
    ) -> Result<Self> {
        if diffs.len() + 1 != bases.len().max(1) {
            return Err(Error::Complex(format!(
                "{} spaces need {} differentials, got {}",
                bases.len(),
                bases.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.cols() != bases[i].len() || d.rows() != bases[i + 1].len() {
                return Err(Error::Complex(format!(
                    "differential from degree {} has shape {}x{}, expected {}x{}",
                    lo + i as i64,
                    d.rows(),
                    d.cols(),
                    bases[i + 1].len(),
                    bases[i].len()
                )));
            }
        }
        let c = ChainComplex { field, lo, bases, diffs, zero_below, zero_above };
        for i in 1..c.diffs.len() {
            if !c.diffs[i].mul(&c.diffs[i - 1]).is_zero() {
                return Err(Error::Complex(format!(
                    "d^2 != 0 starting in degree {}",
                    lo + i as i64 - 1
                )));
            }
        }
        Ok(c)
    }

    pub fn zero(field: FieldSpec) -> Self {
        ChainComplex { field, lo: 0, bases: Vec::new(), diffs: Vec::new(), zero_below: true, zero_above: true }
    }

    /// The field concentrated in a single degree.
    pub fn concentrated(field: FieldSpec, degree: i64, labels: Vec<String>) -> Self {
        ChainComplex { field, lo: degree, bases: vec![labels], diffs: Vec::new(), zero_below: true, zero_above: true }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_bounded(&self) -> bool {
        self.zero_below && self.zero_above
    }

    /// Stored degree range (may include zero spaces).
    pub fn stored_range(&self) -> RangeInclusive<i64> {
        self.lo..=self.lo + self.bases.len() as i64 - 1
    }

    /// Degrees carrying a nonzero space.
    pub fn support(&self) -> Vec<i64> {
        self.stored_range().filter(|d| self.dim(*d) > 0).collect()
    }

    fn index(&self, d: i64) -> Option<usize> {
        let i = d - self.lo;
        (i >= 0 && (i as usize) < self.bases.len()).then_some(i as usize)
    }

    /// Whether degree `d` is known (stored, or in a vanishing tail).
    pub fn is_specified(&self, d: i64) -> bool {
        if self.index(d).is_some() {
            return true;
        }
        if self.bases.is_empty() {
            return self.zero_below && self.zero_above;
        }
        (d < self.lo && self.zero_below) || (d > *self.stored_range().end() && self.zero_above)
    }

    pub fn dim(&self, d: i64) -> usize {
        self.index(d).map_or(0, |i| self.bases[i].len())
    }

    pub fn basis(&self, d: i64) -> &[String] {
        self.index(d).map_or(&[], |i| self.bases[i].as_slice())
    }

    /// Differential from degree `d` to `d+1`; `None` when not specified.
    pub fn diff(&self, d: i64) -> Option<Matrix> {
        if !self.is_specified(d) || !self.is_specified(d + 1) {
            return None;
        }
        match (self.index(d), self.index(d + 1)) {
            (Some(i), Some(_)) => Some(self.diffs[i].clone()),
            _ => Some(Matrix::zero(self.field, self.dim(d + 1), self.dim(d))),
        }
    }

    fn homology_dim_raw(&self, d: i64) -> usize {
        let outgoing = match (self.index(d), self.index(d + 1)) {
            (Some(i), Some(_)) => rank(&self.diffs[i]),
            _ => 0,
        };
        let incoming = match (self.index(d - 1), self.index(d)) {
            (Some(i), Some(_)) => rank(&self.diffs[i]),
            _ => 0,
        };
        self.dim(d) - outgoing - incoming
    }

    /// `dim ker diff(d) - rank diff(d-1)` for every `d` in the window.
    pub fn homology_dims(&self, window: RangeInclusive<i64>) -> Result<BTreeMap<i64, usize>> {
        let mut out = BTreeMap::new();
        for d in window {
            if !(self.is_specified(d - 1) && self.is_specified(d) && self.is_specified(d + 1)) {
                return Err(Error::UnspecifiedDegrees(d));
            }
            out.insert(d, self.homology_dim_raw(d));
        }
        Ok(out)
    }

    /// Homology of the stored data, treating unspecified neighbours as zero.
    /// Callers track exactness themselves.
    pub fn homology_dims_truncated(&self, window: RangeInclusive<i64>) -> BTreeMap<i64, usize> {
        window.map(|d| (d, self.homology_dim_raw(d))).collect()
    }

    pub fn euler_char(&self) -> Result<i64> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        Ok(self
            .stored_range()
            .map(|d| if d.rem_euclid(2) == 0 { self.dim(d) as i64 } else { -(self.dim(d) as i64) })
            .sum())
    }

    /// The complex shifted so that degree `d` of the result is degree `d + k` here,
    /// with differential multiplied by `(-1)^k`.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let s = self.field.sign(k);
        ChainComplex {
            field: self.field,
            lo: self.lo - k,
            bases: self.bases.clone(),
            diffs: self.diffs.iter().map(|m| m.scale(&s)).collect(),
            zero_below: self.zero_below,
            zero_above: self.zero_above,
        }
    }
}

/// A chosen basis of `ker(out) / im(in)` at one degree, with coordinates of cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    field: FieldSpec,
    boundaries: Echelon,
    representatives: Vec<SparseVec>,
    reduced: Vec<SparseVec>,
}

impl HomologyBasis {
    /// `incoming`: C^{d-1} -> C^d, `outgoing`: C^d -> C^{d+1}.
    pub fn new(incoming: &Matrix, outgoing: &Matrix) -> Self {
        let field = outgoing.field();
        let mut boundaries = Echelon::new(field);
        for c in incoming.columns() {
            boundaries.insert(c);
        }
        let kernel = kernel_basis(outgoing);
        let mut span = boundaries.clone();
        let mut representatives = Vec::new();
        for z in kernel.columns() {
            if span.insert(z) {
                representatives.push(z.clone());
            }
        }
        let reduced = representatives.iter().map(|r| boundaries.reduce_full(r)).collect();
        HomologyBasis { field, boundaries, representatives, reduced }
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    pub fn is_boundary(&self, v: &SparseVec) -> bool {
        self.boundaries.contains(v)
    }

    /// Coordinates of the class of the cycle `z`. Returns `None` when `z` is
    /// not in the span of cycles represented here.
    pub fn coordinates(&self, z: &SparseVec) -> Option<Vec<Scalar>> {
        let target = self.boundaries.reduce_full(z);
        solve_combination(&self.reduced, &target, &self.field)
    }
}

/// Solves `target = sum c_i vectors[i]` for independent `vectors`.
pub fn solve_combination(vectors: &[SparseVec], target: &SparseVec, field: &FieldSpec) -> Option<Vec<Scalar>> {
    // Tracked elimination: each echelon row remembers its combination of inputs.
    let n = vectors.len();
    let mut rows: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    for (k, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        let mut combo = SparseVec::unit(k, field);
        while let Some((i, c)) = v.leading() {
            match rows.get(&i) {
                Some((r, rc)) => {
                    let c = field.neg(c);
                    v = v.axpy(&c, r, field);
                    combo = combo.axpy(&c, rc, field);
                }
                None => break,
            }
        }
        if let Some((i, c)) = v.leading() {
            let inv = field.inv(c);
            rows.insert(i, (v.scale(&inv, field), combo.scale(&inv, field)));
        }
    }
    let mut v = target.clone();
    let mut combo = SparseVec::new();
    while let Some((i, c)) = v.leading() {
        let (r, rc) = rows.get(&i)?;
        let c = c.clone();
        v = v.axpy(&field.neg(&c), r, field);
        combo = combo.axpy(&c, rc, field);
    }
    let mut out = vec![Scalar::zero(); n];
    for (i, c) in combo.iter() {
        out[i] = c.clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn contractible_pair() {
        let c = ChainComplex::new(q(), 0, vec![labels(1), labels(1)], vec![Matrix::identity(q(), 1)]).unwrap();
        let h = c.homology_dims(0..=1).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 0), (1, 0)]));
        assert_eq!(c.euler_char().unwrap(), 0);
    }

    #[test]
    fn point_complex() {
        let c = ChainComplex::concentrated(q(), 0, labels(1));
        assert_eq!(c.homology_dims(0..=0).unwrap()[&0], 1);
        assert_eq!(c.homology_dims(-3..=3).unwrap().values().sum::<usize>(), 1);
        assert_eq!(c.euler_char().unwrap(), 1);
    }

    #[test]
    fn exact_three_term() {
        // 0 -> k -> k^2 -> k -> 0 with ranks 1, 1.
        let d0 = Matrix::from_rows_i64(q(), &[vec![1], vec![1]]);
        let d1 = Matrix::from_rows_i64(q(), &[vec![1, -1]]);
        let c = ChainComplex::new(q(), 0, vec![labels(1), labels(2), labels(1)], vec![d0, d1]).unwrap();
        // rank arithmetic: dims 1,2,1; ranks 1,1 -> 1-1, 2-1-1, 1-1
        assert!(c.homology_dims(-1..=3).unwrap().values().all(|&h| h == 0));
        assert_eq!(c.euler_char().unwrap(), 0);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = Matrix::identity(q(), 1);
        assert!(ChainComplex::new(q(), 0, vec![labels(1), labels(1), labels(1)], vec![d.clone(), d]).is_err());
    }

    #[test]
    fn unspecified_window() {
        let c = ChainComplex::with_extent(q(), 0, vec![labels(1), labels(1)], vec![Matrix::zero(q(), 1, 1)], false, true)
            .unwrap();
        assert!(matches!(c.homology_dims(0..=1), Err(Error::UnspecifiedDegrees(0))));
        assert_eq!(c.homology_dims(1..=3).unwrap()[&1], 1);
        assert!(matches!(c.euler_char(), Err(Error::Unbounded)));
    }

    #[test]
    fn homology_coordinates() {
        // k^2 -> k^2 with image spanned by (1,1); H = k, represented by a vector off the diagonal.
        let din = Matrix::from_rows_i64(q(), &[vec![1, 0], vec![1, 0]]);
        let dout = Matrix::zero(q(), 0, 2);
        let h = HomologyBasis::new(&din, &dout);
        assert_eq!(h.dim(), 1);
        let f = q();
        let a = SparseVec::from_terms([(0, f.one())], &f);
        let b = SparseVec::from_terms([(1, f.one())], &f);
        let ca = h.coordinates(&a).unwrap();
        let cb = h.coordinates(&b).unwrap();
        assert_eq!(f.add(&ca[0], &cb[0]), Scalar::zero());
        assert!(!ca[0].is_zero());
    }
}
