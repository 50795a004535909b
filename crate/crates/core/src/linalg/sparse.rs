//! Incremental sparse elimination for large affine systems with few nonzeros
//! per equation. Equations are reduced as they arrive, so memory stays bounded
//! by the number of unknowns.

use std::collections::BTreeMap;

use super::scalar::{FieldSpec, Scalar};

type Row = Vec<(usize, Scalar)>;

/// An equation that reduced to `0 = c` with `c ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistency {
    pub block: String,
    pub equation: usize,
}

#[derive(Clone, Debug)]
pub struct AffineSystem {
    field: FieldSpec,
    unknowns: usize,
    // pivot column -> row normalized to 1 at the pivot; the constant sits at index `unknowns`
    pivots: BTreeMap<usize, Row>,
    equations: usize,
    inconsistency: Option<Inconsistency>,
}

fn axpy(row: &Row, factor: &Scalar, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, factor * &pivot[j].1));
            j += 1;
        } else {
            let mut v = row[i].1.clone();
            v.add_mul_assign(factor, &pivot[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl AffineSystem {
    pub fn new(field: FieldSpec, unknowns: usize) -> Self {
        AffineSystem { field, unknowns, pivots: BTreeMap::new(), equations: 0, inconsistency: None }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn inconsistency(&self) -> Option<&Inconsistency> {
        self.inconsistency.as_ref()
    }

    /// Adds `Σ coeffs = rhs`. Repeated columns in `coeffs` are summed.
    pub fn add_equation(&mut self, coeffs: impl IntoIterator<Item = (usize, Scalar)>, rhs: Scalar, block: &str) {
        self.equations += 1;
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in coeffs {
            assert!(c < self.unknowns, "unknown index out of range");
            if v.is_zero() {
                continue;
            }
            acc.entry(c)
                .and_modify(|x| *x = x.add_ref(&v))
                .or_insert(v);
        }
        if !rhs.is_zero() {
            acc.insert(self.unknowns, rhs.neg_ref());
        }
        let mut row: Row = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        loop {
            let Some((lead, val)) = row.first().cloned() else {
                return;
            };
            if lead == self.unknowns {
                if self.inconsistency.is_none() {
                    self.inconsistency = Some(Inconsistency {
                        block: block.to_string(),
                        equation: self.equations - 1,
                    });
                }
                return;
            }
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &val.neg_ref(), p),
                None => {
                    let inv = val.inv().expect("nonzero lead");
                    for e in row.iter_mut() {
                        e.1 = e.1.mul_ref(&inv);
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// A particular solution with all free unknowns set to zero.
    pub fn solve(&self) -> Option<Vec<Scalar>> {
        if self.inconsistency.is_some() {
            return None;
        }
        let mut x = vec![self.field.zero(); self.unknowns];
        for (&p, row) in self.pivots.iter().rev() {
            // row: x_p + Σ_{c>p} a_c x_c + a_const = 0
            let mut v = self.field.zero();
            for (c, a) in &row[1..] {
                if *c == self.unknowns {
                    v = v.sub_ref(a);
                } else if !x[*c].is_zero() {
                    v = v.sub_ref(&a.mul_ref(&x[*c]));
                }
            }
            x[p] = v;
        }
        Some(x)
    }
}
