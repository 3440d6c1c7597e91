//! Shared result types: homology tables keyed by (homological index,
//! internal degree) and named pass/fail checks for verification reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::{coset_coordinates, echelon_rows, kernel_basis, RatMatrix, SparseVec};

/// Map `(p, d) → dimension`, with optional witness bases of cycle
/// representatives in coset coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    pub dims: BTreeMap<(usize, usize), usize>,
    pub witnesses: BTreeMap<(usize, usize), Vec<SparseVec>>,
}

impl HomologyTable {
    pub fn dim(&self, p: usize, d: usize) -> usize {
        self.dims.get(&(p, d)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, p: usize, d: usize, dim: usize) {
        self.dims.insert((p, d), dim);
    }

    /// Rows `[p, d, dim]` in key order, zero entries included so tables are
    /// byte-stable for fixed inputs.
    pub fn rows(&self) -> Vec<[usize; 3]> {
        self.dims.iter().map(|(&(p, d), &n)| [p, d, n]).collect()
    }
}

/// Homology of one degree slice: `dim ker(boundary_out) − rank(boundary_in)`,
/// plus witness cycles whose classes span the quotient.
///
/// `boundary_out` maps the middle space outward (its kernel gives cycles);
/// `boundary_in` maps into the middle space (its image gives boundaries).
pub fn slice_homology(
    boundary_out: &RatMatrix,
    boundary_in: &RatMatrix,
    want_witnesses: bool,
) -> (usize, Vec<SparseVec>) {
    assert_eq!(
        boundary_out.cols, boundary_in.rows,
        "middle space dimension mismatch"
    );
    let cycles = kernel_basis(boundary_out);
    let image = echelon_rows(boundary_in.rows, boundary_in.transpose().to_rows());
    let dim = cycles.dim() - image.dim();
    let mut witnesses = Vec::new();
    if want_witnesses && dim > 0 {
        // Greedily keep cycle representatives whose classes modulo the
        // boundary span stay independent.
        let mut class_span = image.clone();
        for v in &cycles.basis {
            let class = coset_coordinates(&class_span, v);
            if !class.is_empty() {
                witnesses.push(v.clone());
                let mut rows = class_span.basis.clone();
                rows.push(class);
                class_span = echelon_rows(boundary_in.rows, rows);
                if witnesses.len() == dim {
                    break;
                }
            }
        }
    }
    (dim, witnesses)
}

/// One named verification outcome.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Accumulates checks and remembers whether all of them passed.
#[derive(Clone, Debug, Default)]
pub struct CheckList {
    pub checks: Vec<Check>,
}

impl CheckList {
    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn extend(&mut self, other: CheckList) {
        self.checks.extend(other.checks);
    }
}
