//! Exact rational linear algebra: sparse matrices over `ℚ`, row echelon
//! forms, kernels and coset coordinates.
//!
//! Every degree-sliced computation in the crate reduces to the routines in
//! this module, so the contract is strict: no rounding ever, and fully
//! deterministic pivoting (leftmost nonzero column, first nonzero row).

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar. Always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

/// Sparse vector: index → nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Parses `"p"` or `"p/q"` (optionally signed) into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, crate::Error> {
    Rat::from_str(s.trim()).map_err(|e| crate::Error::BadInput(format!("rational `{s}`: {e}")))
}

pub fn sv_is_zero(v: &SparseVec) -> bool {
    v.is_empty()
}

pub fn sv_insert(v: &mut SparseVec, idx: usize, val: Rat) {
    if val.is_zero() {
        v.remove(&idx);
    } else {
        v.insert(idx, val);
    }
}

pub fn sv_add_scaled(target: &mut SparseVec, c: &Rat, source: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (idx, val) in source {
        let entry = target.entry(*idx).or_insert_with(Rat::zero);
        *entry += c * val;
        if entry.is_zero() {
            target.remove(idx);
        }
    }
}

pub fn sv_scale(v: &mut SparseVec, c: &Rat) {
    if c.is_zero() {
        v.clear();
        return;
    }
    for val in v.values_mut() {
        *val *= c;
    }
}

pub fn sv_from_dense(dense: &[Rat]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Sparse rational matrix. Out-of-bounds writes are caller bugs and panic;
/// explicit zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = RatMatrix::new(nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat(n)).collect())
                .collect(),
        )
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rat) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let entry = self.entries.entry((i, j)).or_insert_with(Rat::zero);
        *entry += v;
        if entry.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row(&self, i: usize) -> SparseVec {
        self.entries
            .range((i, 0)..=(i, self.cols.max(1) - 1))
            .map(|(&(_, j), v)| (j, v.clone()))
            .collect()
    }

    pub fn to_rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::new(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.set(j, i, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let other_rows = other.to_rows();
        let mut out = RatMatrix::new(self.rows, other.cols);
        for (&(i, k), v) in &self.entries {
            for (j, w) in &other_rows[k] {
                out.add_to(i, *j, &(v * w));
            }
        }
        out
    }

    /// Matrix · column vector, both sparse.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(i, j), m) in &self.entries {
            if let Some(c) = v.get(&j) {
                let entry = out.entry(i).or_insert_with(Rat::zero);
                *entry += m * c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        let mut out = RatMatrix::new(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, c * v);
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_to(i, j, &-v.clone());
        }
        out
    }
}

/// Row space of a matrix in reduced row echelon form.
///
/// Basis rows are linearly independent, pivots strictly increasing, each
/// pivot entry is 1 and is the only nonzero in its column among basis rows.
/// Two `Subspace` values are equal iff they are the same subspace, because
/// the RREF is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<SparseVec>,
    pub pivot_cols: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        sv_is_zero(&coset_coordinates(self, v))
    }

    /// Span of the union of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient mismatch");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        echelon_rows(self.ambient_dim, rows)
    }
}

/// Reduced row echelon form of a list of sparse row vectors.
///
/// Pivoting is deterministic: columns are processed left to right and the
/// first remaining row with a nonzero entry in the column is chosen.
pub fn echelon_rows(ambient_dim: usize, rows: Vec<SparseVec>) -> Subspace {
    let mut pending: Vec<SparseVec> = rows.into_iter().filter(|r| !sv_is_zero(r)).collect();
    let mut basis: Vec<SparseVec> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();

    loop {
        // Leftmost column carrying a nonzero among pending rows.
        let col = match pending
            .iter()
            .filter_map(|r| r.keys().next().copied())
            .min()
        {
            Some(c) => c,
            None => break,
        };
        let idx = pending
            .iter()
            .position(|r| r.keys().next() == Some(&col))
            .expect("column chosen from pending rows");
        let mut pivot_row = pending.swap_remove(idx);
        let inv = {
            let lead = pivot_row.get(&col).expect("pivot entry").clone();
            lead.recip()
        };
        sv_scale(&mut pivot_row, &inv);
        for row in pending.iter_mut() {
            if let Some(c) = row.get(&col).cloned() {
                sv_add_scaled(row, &-c, &pivot_row);
            }
        }
        for row in basis.iter_mut() {
            if let Some(c) = row.get(&col).cloned() {
                sv_add_scaled(row, &-c, &pivot_row);
            }
        }
        basis.push(pivot_row);
        pivot_cols.push(col);
        pending.retain(|r| !sv_is_zero(r));
    }

    // swap_remove disturbs discovery order, but pivots are found in strictly
    // increasing column order, so sorting pairs restores the invariant.
    let mut paired: Vec<(usize, SparseVec)> = pivot_cols.into_iter().zip(basis).collect();
    paired.sort_by_key(|(c, _)| *c);
    let (pivot_cols, basis) = paired.into_iter().unzip();
    Subspace {
        ambient_dim,
        basis,
        pivot_cols,
    }
}

/// Row space and rank of a matrix.
pub fn echelon(m: &RatMatrix) -> (Subspace, usize) {
    let span = echelon_rows(m.cols, m.to_rows());
    let rank = span.dim();
    (span, rank)
}

pub fn rank(m: &RatMatrix) -> usize {
    echelon(m).1
}

/// Basis of `{v : m·v = 0}` as a subspace of `ℚ^cols`.
pub fn kernel_basis(m: &RatMatrix) -> Subspace {
    let (row_space, _) = echelon(m);
    let pivot_set: Vec<usize> = row_space.pivot_cols.clone();
    let mut kernel_rows: Vec<SparseVec> = Vec::new();
    for free_col in 0..m.cols {
        if pivot_set.binary_search(&free_col).is_ok() {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(free_col, Rat::one());
        for (row, &p) in row_space.basis.iter().zip(&row_space.pivot_cols) {
            if let Some(c) = row.get(&free_col) {
                sv_insert(&mut v, p, -c.clone());
            }
        }
        kernel_rows.push(v);
    }
    echelon_rows(m.cols, kernel_rows)
}

/// Dimension of the quotient of the ambient space by a span.
pub fn quotient_dim(ambient_dim: usize, span: &Subspace) -> usize {
    assert_eq!(span.ambient_dim, ambient_dim, "ambient mismatch");
    ambient_dim - span.dim()
}

/// Coordinates of `v + span` in the complement spanned by the non-pivot unit
/// coordinates: reduces `v` by the echelon rows until every pivot coordinate
/// vanishes. Returns zero iff `v` lies in the span.
pub fn coset_coordinates(span: &Subspace, v: &SparseVec) -> SparseVec {
    if let Some(&last) = v.keys().next_back() {
        assert!(last < span.ambient_dim, "vector outside ambient space");
    }
    let mut out = v.clone();
    for (row, &p) in span.basis.iter().zip(&span.pivot_cols) {
        if let Some(c) = out.get(&p).cloned() {
            sv_add_scaled(&mut out, &-c, row);
        }
    }
    out
}

/// One exact solution of `m·x = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero, so the answer is deterministic.
pub fn solve(m: &RatMatrix, b: &SparseVec) -> Option<SparseVec> {
    let aug_col = m.cols;
    let mut rows = m.to_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        if let Some(c) = b.get(&i) {
            row.insert(aug_col, c.clone());
        }
    }
    let rref = echelon_rows(m.cols + 1, rows);
    let mut x = SparseVec::new();
    for (row, &p) in rref.basis.iter().zip(&rref.pivot_cols) {
        if p == aug_col {
            return None; // row (0 ... 0 | 1): inconsistent
        }
        if let Some(c) = row.get(&aug_col) {
            x.insert(p, c.clone());
        }
    }
    Some(x)
}

/// 2x2 determinant helper used by the classifier.
pub fn det2(m: &RatMatrix) -> Rat {
    assert!(m.rows == 2 && m.cols == 2);
    m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(m.rows, m.cols, "inverse of non-square matrix");
    let n = m.rows;
    let mut rows = m.to_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        row.insert(n + i, Rat::one());
    }
    let rref = echelon_rows(2 * n, rows);
    if rref.pivot_cols.len() != n || rref.pivot_cols.iter().any(|&p| p >= n) {
        return None;
    }
    let mut inv = RatMatrix::new(n, n);
    for (row, &p) in rref.basis.iter().zip(&rref.pivot_cols) {
        for (&j, v) in row.range(n..) {
            inv.set(p, j - n, v.clone());
        }
    }
    Some(inv)
}

/// Renders a rational with a guaranteed `p` or `p/q` shape.
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.denom().is_negative() {
        // num-rational keeps denominators positive; defensive branch only.
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
