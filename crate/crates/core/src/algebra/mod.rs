//! Finite-dimensional unital associative algebras given by structure constants.

mod covering;
mod crt;
mod morphism;
mod pullback;

pub use covering::{covering_check, CoveringData, IdealOracle};
pub use crt::{crt_glue, restrict_element, GlueResult};
pub use morphism::{ideal_generated, is_ideal, quotient_algebra, AlgebraMorphism, Ideal, QuotientAlgebra};
pub use pullback::{
    fibre_product, multi_pullback, reconstruct, surjectivity_criterion, FibreProduct, MultiPullback, Overlap,
    Reconstruction, Stage, SurjectivityCertificate,
};

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, LinearMap, Scalar, Subspace};

/// An algebra with basis `e_0..e_{n-1}` and `e_i e_j = Σ_k c_{ij}^k e_k`.
///
/// Dimension zero is allowed and gives the zero algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    // c[(i * dim + j) * dim + k]
    structure: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl Algebra {
    /// Builds an algebra and checks associativity and the unit.
    pub fn new(field: FieldSpec, dim: usize, structure: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Self> {
        let a = Self::new_unchecked(field, dim, structure, unit)?;
        a.verify()?;
        Ok(a)
    }

    /// Builds an algebra checking only shapes.
    pub fn new_unchecked(field: FieldSpec, dim: usize, structure: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Self> {
        if structure.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::Dimension(format!(
                "{} structure constants and unit of length {} for dimension {dim}",
                structure.len(),
                unit.len()
            )));
        }
        if structure.iter().chain(&unit).any(|x| !field.contains(x)) {
            return Err(Error::FieldMismatch(format!("structure constants not all in {field}")));
        }
        Ok(Algebra { field, dim, structure, unit })
    }

    /// Builds an algebra from the products of basis elements, `products[i][j] = e_i e_j`.
    pub fn from_products(field: FieldSpec, products: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let dim = products.len();
        let mut structure = Vec::with_capacity(dim * dim * dim);
        for row in products {
            if row.len() != dim {
                return Err(Error::Dimension("product table is not square".into()));
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::Dimension("product of wrong length".into()));
                }
                structure.extend(v);
            }
        }
        Self::new(field, dim, structure, unit)
    }

    pub fn zero_algebra(field: FieldSpec) -> Self {
        Algebra { field, dim: 0, structure: Vec::new(), unit: Vec::new() }
    }

    /// `Fun({1..n})` with the basis of point indicators `δ_i`.
    pub fn function_algebra(field: FieldSpec, n: usize) -> Self {
        let mut structure = vec![field.zero(); n * n * n];
        for i in 0..n {
            structure[(i * n + i) * n + i] = field.one();
        }
        Algebra { field, dim: n, structure, unit: vec![field.one(); n] }
    }

    /// `k ⊕ V` with `V² = 0`; basis `1, v_1, ..., v_m`.
    pub fn square_zero(field: FieldSpec, m: usize) -> Self {
        let n = m + 1;
        let mut structure = vec![field.zero(); n * n * n];
        for i in 0..n {
            structure[i * n * n + i] = field.one();
            structure[i * n + i] = field.one();
        }
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Algebra { field, dim: n, structure, unit }
    }

    /// The direct product `A_1 × ... × A_k`, basis concatenated.
    pub fn direct_sum(field: FieldSpec, parts: &[&Algebra]) -> Self {
        let n: usize = parts.iter().map(|a| a.dim).sum();
        let mut structure = vec![field.zero(); n * n * n];
        let mut unit = Vec::with_capacity(n);
        let mut off = 0;
        for a in parts {
            for i in 0..a.dim {
                for j in 0..a.dim {
                    for k in 0..a.dim {
                        structure[((off + i) * n + off + j) * n + off + k] = a.c(i, j, k).clone();
                    }
                }
            }
            unit.extend(a.unit.iter().cloned());
            off += a.dim;
        }
        Algebra { field, dim: n, structure, unit }
    }

    /// The tensor product algebra `A ⊗ B` in the row-major tensor basis.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (m, n) = (self.dim, other.dim);
        let d = m * n;
        let mut structure = vec![self.field.zero(); d * d * d];
        for i1 in 0..m {
            for j1 in 0..m {
                for k1 in 0..m {
                    let a = self.c(i1, j1, k1);
                    if a.is_zero() {
                        continue;
                    }
                    for i2 in 0..n {
                        for j2 in 0..n {
                            for k2 in 0..n {
                                let b = other.c(i2, j2, k2);
                                if !b.is_zero() {
                                    let (i, j, k) = (i1 * n + i2, j1 * n + j2, k1 * n + k2);
                                    structure[(i * d + j) * d + k] = a * b;
                                }
                            }
                        }
                    }
                }
            }
        }
        let unit = crate::linalg::tensor_vectors(&self.unit, &other.unit);
        Algebra { field: self.field, dim: d, structure, unit }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.dim == 0
    }

    /// Structure constant `c_{ij}^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure(&self) -> &[Scalar] {
        &self.structure
    }

    /// `e_i e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.structure[start..start + self.dim]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !c.is_zero() {
                        o.add_mul_assign(&ab, c);
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        crate::linalg::unit_vector(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    /// Left multiplication `x ↦ a x`.
    pub fn left_mult(&self, a: &[Scalar]) -> LinearMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        LinearMap::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Right multiplication `x ↦ x a`.
    pub fn right_mult(&self, a: &[Scalar]) -> LinearMap {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        LinearMap::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Multiplication `A ⊗ A → A`.
    pub fn mult_map(&self) -> LinearMap {
        let n = self.dim;
        let mut m = LinearMap::zero(self.field, n, n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        m.set(k, i * n + j, c.clone());
                    }
                }
            }
        }
        m
    }

    /// Unit map `k → A`.
    pub fn unit_map(&self) -> LinearMap {
        LinearMap::vector(self.field, self.unit.clone())
    }

    pub fn identity(&self) -> LinearMap {
        LinearMap::identity(self.field, self.dim)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Checks associativity on basis triples and that the unit is two-sided.
    pub fn verify(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), self.basis_product(j, k));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "(e{i} e{j}) e{k} != e{i} (e{j} e{k})"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit does not fix e{i}")));
            }
        }
        Ok(())
    }

    /// The subalgebra on a subspace closed under multiplication and containing 1,
    /// with basis the echelon basis of `s`.
    pub fn subalgebra(&self, s: &Subspace) -> Result<(Algebra, LinearMap)> {
        if s.ambient_dim() != self.dim {
            return Err(Error::Dimension("subspace of a different algebra".into()));
        }
        let basis = s.basis();
        let unit = s
            .coordinates(&self.unit)
            .ok_or_else(|| Error::InvalidAlgebra("subspace does not contain the unit".into()))?;
        let mut products = Vec::with_capacity(basis.len());
        for a in basis {
            let mut row = Vec::with_capacity(basis.len());
            for b in basis {
                let p = self.mul(a, b);
                row.push(
                    s.coordinates(&p)
                        .ok_or_else(|| Error::InvalidAlgebra("subspace not closed under multiplication".into()))?,
                );
            }
            products.push(row);
        }
        let m = basis.len();
        let structure = products.into_iter().flatten().flatten().collect();
        let sub = Algebra::new_unchecked(self.field, m, structure, unit)?;
        Ok((sub, s.inclusion()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_verify() {
        let f = FieldSpec::gf5();
        Algebra::function_algebra(f, 4).verify().unwrap();
        Algebra::square_zero(f, 2).verify().unwrap();
        Algebra::zero_algebra(f).verify().unwrap();
        let a = Algebra::function_algebra(f, 2);
        let b = Algebra::square_zero(f, 1);
        Algebra::direct_sum(f, &[&a, &b]).verify().unwrap();
        a.tensor(&b).verify().unwrap();
    }

    #[test]
    fn non_associative_rejected() {
        let f = FieldSpec::gf5();
        // e0 unit, e1 e1 = e0 + e1 is fine; break it with e1 e1 e1 asymmetry
        let mut s = Algebra::square_zero(f, 2).structure().to_vec();
        // e1 e2 = e1, e2 e1 = 0: (e1 e2) e2 = e1 but e1 (e2 e2) = 0
        s[(3 + 2) * 3 + 1] = f.one();
        let unit = vec![f.one(), f.zero(), f.zero()];
        assert!(matches!(Algebra::new(f, 3, s, unit), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn mult_map_matches_mul() {
        let f = FieldSpec::gf7();
        let a = Algebra::square_zero(f, 2);
        let x = vec![f.from_i64(2), f.from_i64(3), f.from_i64(1)];
        let y = vec![f.from_i64(5), f.from_i64(0), f.from_i64(4)];
        let xy = crate::linalg::tensor_vectors(&x, &y);
        assert_eq!(a.mult_map().apply(&xy), a.mul(&x, &y));
        assert_eq!(a.left_mult(&x).apply(&y), a.mul(&x, &y));
        assert_eq!(a.right_mult(&y).apply(&x), a.mul(&x, &y));
    }
}
