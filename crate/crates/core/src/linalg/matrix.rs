use crate::error::{Error, Result};

use super::scalar::{FieldSpec, Scalar};
use super::subspace::Subspace;

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in place,
/// dropping zero rows. Returns the pivot column of each surviving row.
pub fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                *x = x.mul_ref(&inv);
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].neg_ref();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    x.add_mul_assign(&factor, y);
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A linear map between coordinate spaces, stored as a `target × source` matrix
/// acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    field: FieldSpec,
    target: usize,
    source: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearMap[{}x{} over {}]", self.target, self.source, self.field)?;
        for r in 0..self.target {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl LinearMap {
    pub fn zero(field: FieldSpec, target: usize, source: usize) -> Self {
        LinearMap { field, target, source, data: vec![field.zero(); target * source] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a map from its matrix rows; every row must have length `source`.
    pub fn from_rows(field: FieldSpec, source: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let target = rows.len();
        let mut data = Vec::with_capacity(target * source);
        for row in rows {
            if row.len() != source {
                return Err(Error::Dimension(format!(
                    "matrix row of length {} where {source} expected",
                    row.len()
                )));
            }
            if let Some(x) = row.iter().find(|x| !field.contains(x)) {
                return Err(Error::Format(format!("scalar {x} not in {field}")));
            }
            data.extend(row);
        }
        Ok(LinearMap { field, target, source, data })
    }

    /// Builds a map whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, target: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zero(field, target, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != target {
                return Err(Error::Dimension(format!(
                    "column of length {} where {target} expected",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let source = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, source, rows).expect("rectangular literal")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn source_dim(&self) -> usize {
        self.source
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.source + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.source + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.source..(r + 1) * self.source]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.target).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.target).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.source).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.source, "vector length mismatch");
        let mut out = vec![self.field.zero(); self.target];
        for (r, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(r).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    o.add_mul_assign(a, b);
                }
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        assert_eq!(self.source, inner.target, "composition dimension mismatch");
        let mut out = LinearMap::zero(self.field, self.target, inner.source);
        for r in 0..self.target {
            for k in 0..self.source {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let base = r * inner.source;
                for c in 0..inner.source {
                    let b = inner.get(k, c);
                    if !b.is_zero() {
                        out.data[base + c].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn try_compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if self.source != inner.target {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} after {}x{}",
                self.target, self.source, inner.target, inner.source
            )));
        }
        Ok(self.compose(inner))
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.target, self.source), (other.target, other.source));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        LinearMap { field: self.field, target: self.target, source: self.source, data }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.target, self.source), (other.target, other.source));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        LinearMap { field: self.field, target: self.target, source: self.source, data }
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        let data = self.data.iter().map(|a| a * s).collect();
        LinearMap { field: self.field, target: self.target, source: self.source, data }
    }

    pub fn transpose(&self) -> LinearMap {
        let mut out = LinearMap::zero(self.field, self.source, self.target);
        for r in 0..self.target {
            for c in 0..self.source {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Kronecker product `f ⊗ g`. The basis vector `e_i ⊗ e_j` of a tensor
    /// product `V ⊗ W` has index `i * dim W + j`; this ordering is used everywhere.
    pub fn tensor(&self, g: &LinearMap) -> LinearMap {
        let (t, s) = (self.target * g.target, self.source * g.source);
        let mut out = LinearMap::zero(self.field, t, s);
        for r1 in 0..self.target {
            for c1 in 0..self.source {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..g.target {
                    for c2 in 0..g.source {
                        let b = g.get(r2, c2);
                        if !b.is_zero() {
                            out.set(r1 * g.target + r2, c1 * g.source + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Stacks maps with a common source: `v ↦ (f_1 v, ..., f_k v)`.
    pub fn stack(field: FieldSpec, source: usize, maps: &[&LinearMap]) -> LinearMap {
        let target = maps.iter().map(|m| m.target).sum();
        let mut out = LinearMap::zero(field, target, source);
        let mut off = 0;
        for m in maps {
            assert_eq!(m.source, source);
            for r in 0..m.target {
                for c in 0..source {
                    out.set(off + r, c, m.get(r, c).clone());
                }
            }
            off += m.target;
        }
        out
    }

    /// Juxtaposes maps with a common target: `(v_1, ..., v_k) ↦ Σ f_i v_i`.
    pub fn juxtapose(field: FieldSpec, target: usize, maps: &[&LinearMap]) -> LinearMap {
        let source = maps.iter().map(|m| m.source).sum();
        let mut out = LinearMap::zero(field, target, source);
        let mut off = 0;
        for m in maps {
            assert_eq!(m.target, target);
            for r in 0..target {
                for c in 0..m.source {
                    out.set(r, off + c, m.get(r, c).clone());
                }
            }
            off += m.source;
        }
        out
    }

    /// Block diagonal map `f_1 ⊕ ... ⊕ f_k`.
    pub fn direct_sum(field: FieldSpec, maps: &[&LinearMap]) -> LinearMap {
        let target = maps.iter().map(|m| m.target).sum();
        let source = maps.iter().map(|m| m.source).sum();
        let mut out = LinearMap::zero(field, target, source);
        let (mut ro, mut co) = (0, 0);
        for m in maps {
            for r in 0..m.target {
                for c in 0..m.source {
                    out.set(ro + r, co + c, m.get(r, c).clone());
                }
            }
            ro += m.target;
            co += m.source;
        }
        out
    }

    /// Swap map `V ⊗ W → W ⊗ V` for `dim V = m`, `dim W = n`.
    pub fn flip(field: FieldSpec, m: usize, n: usize) -> LinearMap {
        let mut out = LinearMap::zero(field, m * n, m * n);
        for i in 0..m {
            for j in 0..n {
                out.set(j * m + i, i * n + j, field.one());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        rref(&mut rows, self.source).len()
    }

    pub fn kernel(&self) -> Subspace {
        let mut rows = self.rows();
        let pivots = rref(&mut rows, self.source);
        let free: Vec<usize> = (0..self.source).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.source];
                v[f] = self.field.one();
                for (row, &p) in rows.iter().zip(&pivots) {
                    v[p] = row[f].neg_ref();
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.source, basis).expect("kernel vectors have source length")
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.target, self.columns()).expect("columns have target length")
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target
    }

    pub fn is_bijective(&self) -> bool {
        self.source == self.target && self.is_surjective()
    }

    /// Exact solution of `self(x) = b`: `Ok(Some(x))`, `Ok(None)` when infeasible.
    pub fn solve_affine(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.target {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for a map with target dimension {}",
                b.len(),
                self.target
            )));
        }
        let mut rows: Vec<Vec<Scalar>> = (0..self.target)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref(&mut rows, self.source + 1);
        if pivots.last() == Some(&self.source) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.source];
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row[self.source].clone();
        }
        Ok(Some(x))
    }

    /// Two-sided inverse of a bijective map.
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.target != self.source {
            return None;
        }
        self.right_inverse()
    }

    /// A right inverse `g` with `self ∘ g = id`, when `self` is surjective.
    pub fn right_inverse(&self) -> Option<LinearMap> {
        let n = self.target;
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![self.field.zero(); n];
            e[i] = self.field.one();
            cols.push(self.solve_affine(&e).ok()??);
        }
        Some(LinearMap::from_columns(self.field, self.source, &cols).expect("solutions have source length"))
    }

    /// Linear functional `v ↦ Σ coeffs[i] v[i]` as a `1 × n` map.
    pub fn functional(field: FieldSpec, coeffs: Vec<Scalar>) -> LinearMap {
        let n = coeffs.len();
        LinearMap { field, target: 1, source: n, data: coeffs }
    }

    /// The map `k → V` sending `1` to `v`.
    pub fn vector(field: FieldSpec, v: Vec<Scalar>) -> LinearMap {
        let n = v.len();
        LinearMap { field, target: n, source: 1, data: v }
    }

    /// Restriction of `self` to the subspace `U` of its source, in the basis of `U`.
    pub fn restrict_to(&self, u: &Subspace) -> LinearMap {
        let cols: Vec<Vec<Scalar>> = u.basis().iter().map(|b| self.apply(b)).collect();
        LinearMap::from_columns(self.field, self.target, &cols).expect("images have target length")
    }
}

/// Tensor product of two coordinate vectors in the fixed row-major ordering.
pub fn tensor_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| s * x).collect()
}

pub fn is_zero_vector(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}
