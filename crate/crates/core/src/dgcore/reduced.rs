use super::category::DgCategory;
use crate::exactfield::{FieldSpec, Scalar, SparseVec};

/// The reduced hom spaces `Ā(x,y)`: `A(x,y)` for `x ≠ y` and `A(x,x)/k·unit`.
///
/// The quotient is modelled by the span of all basis elements except the
/// leading index of the unit. Elements are reduced by subtracting the right
/// multiple of the unit.
#[derive(Clone, Debug)]
pub struct ReducedHoms<'a> {
    cat: &'a DgCategory,
    /// Per object: the dropped index and the inverse unit coefficient there.
    dropped: Vec<Option<(usize, Scalar)>>,
    /// `kept[x * n + y]`: full indices of the reduced basis.
    kept: Vec<Vec<usize>>,
    /// `position[x * n + y][full]`: reduced index of a kept element.
    position: Vec<Vec<Option<usize>>>,
}

impl<'a> ReducedHoms<'a> {
    pub fn new(cat: &'a DgCategory) -> Self {
        let n = cat.n_objects();
        let field = cat.field();
        let dropped: Vec<Option<(usize, Scalar)>> = (0..n)
            .map(|x| cat.unit(x).leading().map(|(j, c)| (j, field.inv(c))))
            .collect();
        let mut kept = Vec::with_capacity(n * n);
        let mut position = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let skip = if x == y { dropped[x].as_ref().map(|(j, _)| *j) } else { None };
                let ks: Vec<usize> = (0..cat.dim(x, y)).filter(|&i| Some(i) != skip).collect();
                let mut pos = vec![None; cat.dim(x, y)];
                for (r, &i) in ks.iter().enumerate() {
                    pos[i] = Some(r);
                }
                kept.push(ks);
                position.push(pos);
            }
        }
        ReducedHoms { cat, dropped, kept, position }
    }

    pub fn category(&self) -> &DgCategory {
        self.cat
    }

    fn idx(&self, x: usize, y: usize) -> usize {
        x * self.cat.n_objects() + y
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.kept[self.idx(x, y)].len()
    }

    pub fn full_index(&self, x: usize, y: usize, i: usize) -> usize {
        self.kept[self.idx(x, y)][i]
    }

    pub fn degree(&self, x: usize, y: usize, i: usize) -> i64 {
        self.cat.degree(x, y, self.full_index(x, y, i))
    }

    pub fn label(&self, x: usize, y: usize, i: usize) -> &str {
        self.cat.label(x, y, self.full_index(x, y, i))
    }

    /// The chosen lift of a reduced basis element as a full vector.
    pub fn lift(&self, x: usize, y: usize, i: usize) -> SparseVec {
        SparseVec::unit(self.full_index(x, y, i), &self.cat.field())
    }

    /// Projects a full vector of `A(x,y)` onto `Ā(x,y)` in reduced coordinates.
    pub fn reduce(&self, x: usize, y: usize, v: &SparseVec) -> SparseVec {
        let field: FieldSpec = self.cat.field();
        let mut v = v.clone();
        if x == y {
            if let Some((j, inv)) = &self.dropped[x] {
                let c = v.get(*j);
                if c != field.zero() {
                    let k = field.neg(&field.mul(&c, inv));
                    v = v.axpy(&k, self.cat.unit(x), &field);
                }
            }
        }
        let pos = &self.position[self.idx(x, y)];
        v.reindex(|i| pos[i], &field)
    }

    /// Smallest and largest degree of any reduced basis element.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let n = self.cat.n_objects();
        let mut out: Option<(i64, i64)> = None;
        for x in 0..n {
            for y in 0..n {
                for i in 0..self.dim(x, y) {
                    let d = self.degree(x, y, i);
                    out = Some(match out {
                        None => (d, d),
                        Some((lo, hi)) => (lo.min(d), hi.max(d)),
                    });
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.kept.iter().all(Vec::is_empty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn unit_reduces_to_zero() {
        let q = FieldSpec::Rationals;
        let a = corpus::dual_numbers(q);
        let r = ReducedHoms::new(&a);
        assert_eq!(r.dim(0, 0), 1);
        assert!(r.reduce(0, 0, a.unit(0)).is_zero());
        assert_eq!(r.label(0, 0, 0), "x");
        let p = corpus::path_a2(q);
        let r = ReducedHoms::new(&p);
        assert_eq!(r.dim(0, 1), 1);
        assert_eq!(r.dim(0, 0), 0);
        assert_eq!(r.degree_range(), Some((0, 0)));
    }
}
