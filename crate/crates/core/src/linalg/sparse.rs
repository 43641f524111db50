use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::rational::Rational;

/// Sparse rational matrix stored as a `(row, col) -> value` association.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseRationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<(usize, Rational)>]) -> Self {
        let mut m = Self::new(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.add(*i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to entry `(i, j)`. Panics when the index is out of range.
    pub fn add(&mut self, i: usize, j: usize, v: &Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn columns(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (&(i, j), v) in &self.entries {
            cols[j].push((i, v.clone()));
        }
        cols
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            out[i] += a * &v[j];
        }
        out
    }
}

/// Result of a nullspace computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub rank: usize,
    pub columns: usize,
    /// Dense basis vectors of length `columns`. Each vector has coefficient 1
    /// at its own free column and zero at every later column.
    pub basis: Vec<Vec<Rational>>,
}

impl Kernel {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

pub fn rational_kernel(m: &SparseRationalMatrix) -> Kernel {
    let mut elim = Eliminator::new(true);
    let mut basis = Vec::new();
    for col in m.columns() {
        if let Some(rel) = elim.insert(&col) {
            let mut v = vec![Rational::zero(); m.cols];
            for (j, c) in rel {
                v[j] = c;
            }
            basis.push(v);
        }
    }
    Kernel {
        rank: elim.rank(),
        columns: m.cols,
        basis,
    }
}

type IVec = BTreeMap<usize, BigInt>;

#[derive(Clone, Debug)]
struct Pivot {
    image: IVec,
    combo: IVec,
}

/// Incremental column echelon form.
///
/// Columns are inserted one at a time. An inserted column either becomes a
/// new pivot or reduces to zero, in which case the linear relation with the
/// previously inserted columns is returned (when tracking is enabled).
#[derive(Clone, Debug)]
pub struct Eliminator {
    pivots: FxHashMap<usize, Pivot>,
    inserted: usize,
    track: bool,
}

impl Eliminator {
    pub fn new(track: bool) -> Self {
        Self {
            pivots: FxHashMap::default(),
            inserted: 0,
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Inserts the next column. Returns the kernel relation `Σ c_j col_j = 0`
    /// (normalised so the new column has coefficient 1) when the column is
    /// dependent and tracking is on; `Some(vec![])` when dependent without tracking.
    pub fn insert(&mut self, col: &[(usize, Rational)]) -> Option<Vec<(usize, Rational)>> {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut image, scale) = integerize(col);
        let mut combo = IVec::new();
        if self.track {
            combo.insert(idx, scale);
        }
        loop {
            let lead = match image.iter().next() {
                Some((&k, _)) => k,
                None => {
                    if !self.track {
                        return Some(Vec::new());
                    }
                    let own = combo[&idx].clone();
                    let rel = combo
                        .into_iter()
                        .map(|(j, c)| (j, Rational::new(c, own.clone())))
                        .collect();
                    return Some(rel);
                }
            };
            let Some(piv) = self.pivots.get(&lead) else {
                self.pivots.insert(lead, Pivot { image, combo });
                return None;
            };
            let a = piv.image[&lead].clone();
            let b = image[&lead].clone();
            let g = a.gcd(&b);
            let (a, b) = (a / &g, b / &g);
            image = axpy(&a, &image, &b, &piv.image);
            if self.track {
                combo = axpy(&a, &combo, &b, &piv.combo);
            }
            normalize_content(&mut image, &mut combo);
        }
    }

    /// True when `col` lies in the span of the inserted columns. Does not insert.
    pub fn contains(&self, col: &[(usize, Rational)]) -> bool {
        let (mut image, _) = integerize(col);
        loop {
            let lead = match image.iter().next() {
                Some((&k, _)) => k,
                None => return true,
            };
            let Some(piv) = self.pivots.get(&lead) else {
                return false;
            };
            let a = piv.image[&lead].clone();
            let b = image[&lead].clone();
            let g = a.gcd(&b);
            image = axpy(&(a / &g), &image, &(b / &g), &piv.image);
            let mut empty = IVec::new();
            normalize_content(&mut image, &mut empty);
        }
    }
}

/// `a * x - b * y`.
fn axpy(a: &BigInt, x: &IVec, b: &BigInt, y: &IVec) -> IVec {
    let mut out = IVec::new();
    for (k, v) in x {
        out.insert(*k, a * v);
    }
    for (k, v) in y {
        let e = out.entry(*k).or_insert_with(BigInt::zero);
        *e -= b * v;
        if e.is_zero() {
            out.remove(k);
        }
    }
    out
}

fn normalize_content(image: &mut IVec, combo: &mut IVec) {
    let mut g = BigInt::zero();
    for v in image.values().chain(combo.values()) {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in image.values_mut().chain(combo.values_mut()) {
        *v /= &g;
    }
}

/// Scales a rational column by the lcm of its denominators; returns the
/// integer vector and the scale factor.
fn integerize(col: &[(usize, Rational)]) -> (IVec, BigInt) {
    let mut l = BigInt::one();
    for (_, v) in col {
        l = l.lcm(v.denom());
    }
    let mut out = IVec::new();
    for (k, v) in col {
        let e = out.entry(*k).or_insert_with(BigInt::zero);
        *e += v.numer() * (&l / v.denom());
    }
    out.retain(|_, v| !v.is_zero());
    (out, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn dense(rows: &[&[i64]]) -> SparseRationalMatrix {
        let mut m = SparseRationalMatrix::new(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.add(i, j, &int(*v));
            }
        }
        m
    }

    #[test]
    fn zero_matrix_has_full_nullity() {
        let k = rational_kernel(&SparseRationalMatrix::new(3, 3));
        assert_eq!(k.nullity(), 3);
        assert_eq!(k.rank, 0);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let k = rational_kernel(&dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(k.nullity(), 0);
        assert_eq!(k.rank, 3);
    }

    #[test]
    fn rank_one_example() {
        let k = rational_kernel(&dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.nullity(), 1);
        assert_eq!(k.basis[0], vec![int(-2), int(1)]);
    }

    #[test]
    fn rational_entries() {
        let mut m = SparseRationalMatrix::new(2, 3);
        m.add(0, 0, &rat(1, 2));
        m.add(0, 1, &rat(1, 3));
        m.add(1, 2, &rat(2, 7));
        m.add(1, 1, &rat(-1, 5));
        let k = rational_kernel(&m);
        assert_eq!(k.rank + k.nullity(), 3);
        for v in &k.basis {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn contains_checks_span() {
        let mut e = Eliminator::new(false);
        e.insert(&[(0, int(1)), (1, int(1))]);
        e.insert(&[(1, int(2)), (2, int(3))]);
        assert!(e.contains(&[(0, int(2)), (1, int(4)), (2, int(3))]));
        assert!(!e.contains(&[(2, int(1))]));
    }
}
