use crate::error::{Error, Result};

use super::matrix::{rref, LinearMap};
use super::scalar::{FieldSpec, Scalar};

/// A subspace of `k^n` held by its reduced row echelon basis.
///
/// The echelon basis is canonical, so derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        LinearMap::identity(field, ambient).image()
    }

    pub fn span(field: FieldSpec, ambient: usize, mut vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::Dimension(format!(
                "vector of length {} in a space of dimension {ambient}",
                v.len()
            )));
        }
        let pivots = rref(&mut vectors, ambient);
        Ok(Subspace { field, ambient, basis: vectors, pivots })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "subspaces of k^{} and k^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Reduces `v` modulo this subspace; the result vanishes on all pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].neg_ref();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    x.add_mul_assign(&factor, y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates in the echelon basis.
    pub fn vector(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                x.add_mul_assign(c, y);
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.field, self.ambient, vectors)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // (a, b) with Σ a_i u_i = Σ b_j v_j
        let u = self.inclusion();
        let v = other.inclusion().scale(&self.field.from_i64(-1));
        let joint = LinearMap::juxtapose(self.field, self.ambient, &[&u, &v]);
        let vectors = joint
            .kernel()
            .basis()
            .iter()
            .map(|k| u.apply(&k[..self.dim()]))
            .collect();
        Subspace::span(self.field, self.ambient, vectors)
    }

    /// Combined sum/intersection entry point.
    pub fn combine(&self, other: &Subspace, mode: Combine) -> Result<Subspace> {
        match mode {
            Combine::Sum => self.sum(other),
            Combine::Intersection => self.intersection(other),
        }
    }

    /// The inclusion `k^dim → k^ambient` in the echelon basis.
    pub fn inclusion(&self) -> LinearMap {
        LinearMap::from_columns(self.field, self.ambient, &self.basis).expect("basis has ambient length")
    }

    /// `U ⊗ V` inside `k^m ⊗ k^n`. Tensors of echelon bases are already echelon.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        let n = other.ambient;
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        let mut pivots = Vec::with_capacity(self.dim() * other.dim());
        for (a, pa) in self.basis.iter().zip(&self.pivots) {
            for (b, pb) in other.basis.iter().zip(&other.pivots) {
                basis.push(super::matrix::tensor_vectors(a, b));
                pivots.push(pa * n + pb);
            }
        }
        Subspace { field: self.field, ambient: self.ambient * n, basis, pivots }
    }

    /// Image of this subspace under `f`.
    pub fn image_under(&self, f: &LinearMap) -> Subspace {
        let vectors = self.basis.iter().map(|b| f.apply(b)).collect();
        Subspace::span(self.field, f.target_dim(), vectors).expect("images have target length")
    }

    /// Standard basis vectors at the non-pivot columns; they span a complement.
    pub fn complement_basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| super::matrix::unit_vector(self.field, self.ambient, c))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Intersection,
}

/// The quotient `k^n → k^n / J` with a linear section.
///
/// The quotient basis is the image of the standard vectors at the non-pivot
/// columns of `J`, so `J = 0` gives the identity projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub projection: LinearMap,
    pub section: LinearMap,
}

pub fn quotient_with_section(ambient: usize, j: &Subspace) -> Result<Quotient> {
    if j.ambient_dim() != ambient {
        return Err(Error::Dimension(format!(
            "subspace of k^{} used as a subspace of k^{ambient}",
            j.ambient_dim()
        )));
    }
    let field = j.field();
    let free: Vec<usize> = (0..ambient).filter(|c| !j.pivots().contains(c)).collect();
    let mut projection = LinearMap::zero(field, free.len(), ambient);
    // reduce(e_c) has entries only on free columns; read them off
    for c in 0..ambient {
        let mut e = vec![field.zero(); ambient];
        e[c] = field.one();
        let r = j.reduce(&e);
        for (qi, &f) in free.iter().enumerate() {
            projection.set(qi, c, r[f].clone());
        }
    }
    let section = LinearMap::from_columns(field, ambient, &j.complement_basis())?;
    Ok(Quotient { projection, section })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::gf5()
    }

    fn line(v: &[i64]) -> Subspace {
        let field = f();
        Subspace::span(field, v.len(), vec![v.iter().map(|&x| field.from_i64(x)).collect()]).unwrap()
    }

    #[test]
    fn idempotence() {
        let u = line(&[1, 2, 3]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersection(&u).unwrap(), u);
    }

    #[test]
    fn coordinate_lines() {
        let e1 = line(&[1, 0]);
        let e2 = line(&[0, 1]);
        assert!(e1.sum(&e2).unwrap().is_full());
        assert!(e1.intersection(&e2).unwrap().is_zero());
    }

    #[test]
    fn three_lines_are_not_distributive() {
        let (l1, l2, l3) = (line(&[1, 0]), line(&[0, 1]), line(&[1, 1]));
        let lhs = l1.intersection(&l2.sum(&l3).unwrap()).unwrap();
        let rhs = l1.intersection(&l2).unwrap().sum(&l1.intersection(&l3).unwrap()).unwrap();
        assert_eq!(lhs, l1);
        assert!(rhs.is_zero());
    }

    #[test]
    fn ambient_mismatch() {
        assert!(matches!(line(&[1, 0]).sum(&line(&[1, 0, 0])), Err(Error::Dimension(_))));
    }

    #[test]
    fn quotient_cases() {
        let field = f();
        let q = quotient_with_section(3, &Subspace::zero(field, 3)).unwrap();
        assert_eq!(q.projection, LinearMap::identity(field, 3));

        let q = quotient_with_section(3, &Subspace::full(field, 3)).unwrap();
        assert_eq!(q.projection.target_dim(), 0);

        let j = line(&[0, 0, 1]);
        let q = quotient_with_section(3, &j).unwrap();
        assert_eq!(q.projection.target_dim(), 2);
        assert_eq!(q.projection.compose(&q.section), LinearMap::identity(field, 2));
        assert_eq!(q.projection.kernel(), j);
    }

    #[test]
    fn kernel_tensor_identity() {
        // ker(f ⊗ id) ∩ ker(id ⊗ f) = ker f ⊗ ker f
        let field = f();
        let map = LinearMap::from_i64_rows(field, &[&[1, 1]]);
        let id = LinearMap::identity(field, 2);
        let a = map.tensor(&id).kernel();
        let b = id.tensor(&map).kernel();
        let k = map.kernel();
        assert_eq!(a.intersection(&b).unwrap(), k.tensor(&k));
        assert_eq!(k.tensor(&k).dim(), 1);
    }
}
