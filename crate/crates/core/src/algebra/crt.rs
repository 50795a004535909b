use crate::error::{Error, Result};
use crate::lattice::Antichain;
use crate::linalg::{sub_vectors, LinearMap, Scalar, Subspace};

use super::covering::CoveringData;
use super::morphism::quotient_algebra;

#[derive(Clone, Debug)]
pub struct GlueResult {
    /// The union of the given opens.
    pub union: Antichain,
    /// The glued element in the coordinates of `P / R(union)`.
    pub element: Vec<Scalar>,
    /// A representative in `P`.
    pub lift: Vec<Scalar>,
    /// The map from the glued section space into the product of the local ones is injective.
    pub unique: bool,
}

/// Glues local elements `p_i ∈ P / R(U_i)` that agree on overlaps.
///
/// Coordinates in each `P / R(U)` are those of [`quotient_algebra`]. Refuses
/// coverings whose ideal lattice is not distributive.
pub fn crt_glue(covering: &CoveringData, opens: &[Antichain], local: &[Vec<Scalar>]) -> Result<GlueResult> {
    if !covering.distributivity.is_distributive() {
        return Err(Error::NotDistributive);
    }
    if opens.is_empty() {
        return Err(Error::Incompatible("nothing to glue".into()));
    }
    if opens.len() != local.len() {
        return Err(Error::Dimension(format!("{} opens but {} local elements", opens.len(), local.len())));
    }
    let p = &covering.algebra;
    let mut ideals = Vec::with_capacity(opens.len());
    let mut lifts = Vec::with_capacity(opens.len());
    for (i, (u, x)) in opens.iter().zip(local).enumerate() {
        let k = covering.ideal_of(u)?;
        let q = quotient_algebra(p, &k)?;
        if x.len() != q.algebra.dim() {
            return Err(Error::Dimension(format!(
                "local element {} has length {}, section has dimension {}",
                i + 1,
                x.len(),
                q.algebra.dim()
            )));
        }
        if x.iter().any(|s| !p.field().contains(s)) {
            return Err(Error::FieldMismatch(format!("local element {} not over {}", i + 1, p.field())));
        }
        lifts.push(q.section.apply(x));
        ideals.push(k);
    }
    for i in 0..opens.len() {
        for j in i + 1..opens.len() {
            let overlap = ideals[i].sum(&ideals[j])?;
            if !overlap.contains(&sub_vectors(&lifts[i], &lifts[j])) {
                return Err(Error::Incompatible(format!(
                    "elements {} and {} differ on the overlap {}",
                    i + 1,
                    j + 1,
                    opens[i].meet(&opens[j])?
                )));
            }
        }
    }

    let field = p.field();
    let mut glued = lifts[0].clone();
    let mut kernel = ideals[0].clone();
    let mut union = opens[0];
    for k in 1..opens.len() {
        // glued - lift_k = a + b with a ∈ kernel, b ∈ ideals[k]; then glued - a works
        let cols: Vec<Vec<Scalar>> = kernel.basis().iter().chain(ideals[k].basis()).cloned().collect();
        let m = LinearMap::from_columns(field, p.dim(), &cols)?;
        let rhs = sub_vectors(&glued, &lifts[k]);
        let c = m.solve_affine(&rhs)?.ok_or_else(|| {
            Error::Incompatible(format!("no common extension for element {} (lattice not distributive?)", k + 1))
        })?;
        let a = kernel.vector(&c[..kernel.dim()]);
        glued = sub_vectors(&glued, &a);
        kernel = kernel.intersection(&ideals[k])?;
        union = union.join(&opens[k])?;
    }
    let total = covering.ideal_of(&union)?;
    debug_assert_eq!(total, kernel);
    let q = quotient_algebra(p, &total)?;
    let element = q.projection.apply(&glued);
    let local_maps = ideals
        .iter()
        .map(|k| Ok(quotient_algebra(p, k)?.projection.matrix().compose(&q.section)))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&LinearMap> = local_maps.iter().collect();
    let unique = LinearMap::stack(field, q.algebra.dim(), &refs).is_injective();
    let lift = q.section.apply(&element);
    Ok(GlueResult { union, element, lift, unique })
}

/// Restricts a global element of `P` to `P / R(U)`.
pub fn restrict_element(covering: &CoveringData, u: &Antichain, p: &[Scalar]) -> Result<Vec<Scalar>> {
    let k: Subspace = covering.ideal_of(u)?;
    Ok(quotient_algebra(&covering.algebra, &k)?.projection.apply(p))
}
