use crate::error::{Error, Result};
use crate::linalg::{quotient_with_section, LinearMap, Scalar, Subspace};

use super::Algebra;

/// A unital algebra homomorphism given by its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    map: LinearMap,
}

impl AlgebraMorphism {
    /// Checks shape, multiplicativity on basis pairs and unitality.
    ///
    /// Maps into the zero algebra are always morphisms; the only morphism out
    /// of the zero algebra goes to the zero algebra.
    pub fn new(source: Algebra, target: Algebra, map: LinearMap) -> Result<Self> {
        let m = Self::new_unchecked(source, target, map)?;
        m.verify()?;
        Ok(m)
    }

    pub fn new_unchecked(source: Algebra, target: Algebra, map: LinearMap) -> Result<Self> {
        if map.source_dim() != source.dim() || map.target_dim() != target.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map from dimension {} to {}",
                map.target_dim(),
                map.source_dim(),
                source.dim(),
                target.dim()
            )));
        }
        if source.field() != target.field() || map.field() != source.field() {
            return Err(Error::FieldMismatch("morphism between algebras over different fields".into()));
        }
        Ok(AlgebraMorphism { source, target, map })
    }

    pub fn identity(a: &Algebra) -> Self {
        AlgebraMorphism { source: a.clone(), target: a.clone(), map: a.identity() }
    }

    pub fn verify(&self) -> Result<()> {
        if self.target.is_zero_algebra() {
            return Ok(());
        }
        if self.source.is_zero_algebra() {
            return Err(Error::InvalidMorphism("no unital map from the zero algebra to a nonzero algebra".into()));
        }
        if self.map.apply(self.source.unit()) != self.target.unit() {
            return Err(Error::InvalidMorphism("not unital".into()));
        }
        let n = self.source.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| self.map.column(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.map.apply(self.source.basis_product(i, j));
                let rhs = self.target.mul(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(Error::InvalidMorphism(format!("f(e{i} e{j}) != f(e{i}) f(e{j})")));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &LinearMap {
        &self.map
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.map.apply(v)
    }

    pub fn kernel(&self) -> Subspace {
        self.map.kernel()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.map.is_bijective()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if inner.target != self.source {
            return Err(Error::InvalidMorphism("composition of non-matching morphisms".into()));
        }
        Ok(AlgebraMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&inner.map),
        })
    }

    /// Linear right inverse of a surjective morphism.
    pub fn linear_section(&self) -> Result<LinearMap> {
        self.map
            .right_inverse()
            .ok_or_else(|| Error::InvalidMorphism("morphism is not surjective".into()))
    }
}

/// A two-sided ideal of a given algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub space: Subspace,
}

impl Ideal {
    pub fn new(parent: &Algebra, space: Subspace) -> Result<Self> {
        if !is_ideal(parent, &space) {
            return Err(Error::NotAnIdeal("subspace not closed under multiplication by the algebra".into()));
        }
        Ok(Ideal { space })
    }
}

pub fn is_ideal(p: &Algebra, j: &Subspace) -> bool {
    if j.ambient_dim() != p.dim() {
        return false;
    }
    (0..p.dim()).all(|i| {
        let e = p.basis_vector(i);
        j.basis().iter().all(|v| j.contains(&p.mul(&e, v)) && j.contains(&p.mul(v, &e)))
    })
}

/// The smallest two-sided ideal containing `vectors`.
pub fn ideal_generated(p: &Algebra, vectors: &[Vec<Scalar>]) -> Result<Ideal> {
    let mut space = Subspace::span(p.field(), p.dim(), vectors.to_vec())?;
    loop {
        let mut more = space.basis().to_vec();
        for i in 0..p.dim() {
            let e = p.basis_vector(i);
            for v in space.basis() {
                more.push(p.mul(&e, v));
                more.push(p.mul(v, &e));
            }
        }
        let next = Subspace::span(p.field(), p.dim(), more)?;
        if next.dim() == space.dim() {
            return Ok(Ideal { space });
        }
        space = next;
    }
}

/// `P/J` with the projection and a linear section.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: Algebra,
    pub projection: AlgebraMorphism,
    pub section: LinearMap,
}

/// Structure constants induced on the complement basis of the echelon form of `J`.
pub fn quotient_algebra(p: &Algebra, j: &Subspace) -> Result<QuotientAlgebra> {
    if j.ambient_dim() != p.dim() {
        return Err(Error::Dimension("ideal of a different algebra".into()));
    }
    if !is_ideal(p, j) {
        return Err(Error::NotAnIdeal("cannot form the quotient".into()));
    }
    let q = quotient_with_section(p.dim(), j)?;
    let m = q.projection.target_dim();
    let lifts = q.section.columns();
    let mut structure = Vec::with_capacity(m * m * m);
    for a in &lifts {
        for b in &lifts {
            structure.extend(q.projection.apply(&p.mul(a, b)));
        }
    }
    let unit = q.projection.apply(p.unit());
    let algebra = Algebra::new_unchecked(p.field(), m, structure, unit)?;
    let projection = AlgebraMorphism::new_unchecked(p.clone(), algebra.clone(), q.projection)?;
    Ok(QuotientAlgebra { algebra, projection, section: q.section })
}
