use std::collections::BTreeMap;

use num_traits::Zero;

use super::field::{FieldSpec, Scalar};

/// Sparse vector: strictly increasing indices, nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, field: &FieldSpec) -> Self {
        SparseVec { entries: vec![(i, field.one())] }
    }

    /// Builds a vector from unsorted, possibly repeated terms.
    pub fn from_terms<I>(terms: I, field: &FieldSpec) -> Self
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in terms {
            let e = acc.entry(i).or_insert_with(Scalar::zero);
            *e = field.add(e, &v);
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec, field: &FieldSpec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, field.mul(c, y)));
                        b.next();
                    } else {
                        let v = field.add(x, &field.mul(c, y));
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, field.mul(c, y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add_assign_scaled(&mut self, c: &Scalar, other: &SparseVec, field: &FieldSpec) {
        *self = self.axpy(c, other, field);
    }

    pub fn scale(&self, c: &Scalar, field: &FieldSpec) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, field.mul(c, v))).collect(),
        }
    }

    pub fn dot_dense(&self, other: &[Scalar], field: &FieldSpec) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, v) in &self.entries {
            acc = field.add(&acc, &field.mul(v, &other[*i]));
        }
        acc
    }

    /// Reindexes through `map`; entries mapping to `None` are dropped.
    pub fn reindex(&self, map: impl Fn(usize) -> Option<usize>, field: &FieldSpec) -> SparseVec {
        SparseVec::from_terms(
            self.entries.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))),
            field,
        )
    }
}

/// Sparse matrix over a field, stored by columns. Column `j` is the image of
/// the `j`-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Matrix {
            field,
            rows: n,
            cols: (0..n).map(|i| SparseVec::unit(i, &field)).collect(),
        }
    }

    pub fn from_columns(field: FieldSpec, rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        Matrix { field, rows, cols }
    }

    /// Builds from a dense row-major integer table (test and example helper).
    pub fn from_rows_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let cols = (0..nc)
            .map(|j| {
                SparseVec::from_terms((0..nr).map(|i| (i, field.from_i64(rows[i][j]))), &field)
            })
            .collect();
        Matrix { field, rows: nr, cols }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut terms: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                terms[i].push((j, v.clone()));
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols.len(),
            cols: terms.into_iter().map(|t| SparseVec { entries: t }).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.add_assign_scaled(c, &self.cols[j], &self.field);
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols(), rhs.rows, "shape mismatch in product");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: rhs.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&self.field.one(), rhs)
    }

    pub fn add_scaled(&self, c: &Scalar, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols()), (rhs.rows, rhs.cols()), "shape mismatch in sum");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| a.axpy(c, b, &self.field))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols.iter().map(|col| col.scale(c, &self.field)).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                out[i][j] = v.clone();
            }
        }
        out
    }
}

/// Incrementally maintained echelon basis of a subspace. Each stored vector
/// has leading coefficient one at a distinct pivot index.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: FieldSpec) -> Self {
        Echelon { field, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored basis until its leading index is not a pivot.
    pub fn reduce_leading(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        while let Some((i, c)) = v.leading() {
            match self.pivots.get(&i) {
                Some(p) => {
                    let c = self.field.neg(c);
                    v = v.axpy(&c, p, &self.field);
                }
                None => break,
            }
        }
        v
    }

    /// Fully reduces `v`: no remaining entry sits on a pivot index.
    pub fn reduce_full(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let hit = v.iter().find(|(i, _)| self.pivots.contains_key(i)).map(|(i, c)| (i, c.clone()));
            match hit {
                Some((i, c)) => {
                    let c = self.field.neg(&c);
                    v = v.axpy(&c, &self.pivots[&i], &self.field);
                }
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_leading(v).is_zero()
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce_leading(v);
        match r.leading() {
            None => false,
            Some((i, c)) => {
                let inv = self.field.inv(c);
                let r = r.scale(&inv, &self.field);
                self.pivots.insert(i, r);
                true
            }
        }
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Converts to reduced row echelon form (every pivot column cleared in all other rows).
    pub fn into_reduced(mut self) -> Vec<(usize, SparseVec)> {
        let keys: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &k in &keys {
            let row = self.pivots[&k].clone();
            let reduced = {
                let mut v = row;
                loop {
                    let hit = v
                        .iter()
                        .find(|(i, _)| *i != k && self.pivots.contains_key(i))
                        .map(|(i, c)| (i, c.clone()));
                    match hit {
                        Some((i, c)) => {
                            let c = self.field.neg(&c);
                            v = v.axpy(&c, &self.pivots[&i], &self.field);
                        }
                        None => break v,
                    }
                }
            };
            self.pivots.insert(k, reduced);
        }
        self.pivots.into_iter().collect()
    }
}

/// Rank over the matrix's field, computed exactly.
pub fn rank(m: &Matrix) -> usize {
    // Eliminate along the shorter dimension.
    let vectors: Vec<SparseVec> = if m.cols() <= m.rows() {
        m.cols.clone()
    } else {
        m.transpose().cols
    };
    let mut order: Vec<&SparseVec> = vectors.iter().collect();
    order.sort_by_key(|v| v.nnz());
    let mut ech = Echelon::new(m.field);
    for v in order {
        ech.insert(v);
        if ech.rank() == m.rows().min(m.cols()) {
            break;
        }
    }
    ech.rank()
}

/// Basis of the null space, returned as the columns of a `m.cols() x nullity` matrix.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let field = m.field;
    let rows = m.transpose();
    let mut ech = Echelon::new(field);
    for r in rows.columns() {
        ech.insert(r);
    }
    let reduced = ech.into_reduced();
    let pivot_set: BTreeMap<usize, &SparseVec> = reduced.iter().map(|(k, v)| (*k, v)).collect();
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|j| !pivot_set.contains_key(j)) {
        let mut terms = vec![(free, field.one())];
        for (&p, row) in &pivot_set {
            let c = row.get(free);
            if !c.is_zero() {
                terms.push((p, field.neg(&c)));
            }
        }
        basis.push(SparseVec::from_terms(terms, &field));
    }
    Matrix::from_columns(field, m.cols(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(q(), 2)), 2);
        assert_eq!(rank(&Matrix::zero(q(), 3, 4)), 0);
        assert_eq!(rank(&Matrix::from_rows_i64(q(), &[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 3)).cols(), 0);
        let k = kernel_basis(&Matrix::zero(q(), 2, 3));
        assert_eq!(k.cols(), 3);
        assert_eq!(rank(&k), 3);

        let m = Matrix::from_rows_i64(q(), &[vec![1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert_eq!(v.get(0), q().neg(&v.get(1)));
        assert!(!v.is_zero());
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows = [vec![1, 1], vec![1, -1]];
        assert_eq!(rank(&Matrix::from_rows_i64(q(), &rows)), 2);
        assert_eq!(rank(&Matrix::from_rows_i64(FieldSpec::Prime(2), &rows)), 1);
    }

    #[test]
    fn echelon_membership() {
        let f = q();
        let mut e = Echelon::new(f);
        let a = SparseVec::from_terms([(0, f.one()), (2, f.from_i64(3))], &f);
        let b = SparseVec::from_terms([(1, f.one())], &f);
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        let c = a.axpy(&f.from_i64(5), &b, &f);
        assert!(e.contains(&c));
        assert!(!e.insert(&c));
        assert!(e.reduce_full(&c).is_zero());
    }
}
