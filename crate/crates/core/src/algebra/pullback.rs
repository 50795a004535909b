use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Subspace};

use super::morphism::{quotient_algebra, AlgebraMorphism};
use super::Algebra;

/// Expresses a map whose image lies in `s` in the echelon coordinates of `s`.
pub(crate) fn corestrict(f: &LinearMap, s: &Subspace) -> Result<LinearMap> {
    let cols = f
        .columns()
        .iter()
        .map(|c| s.coordinates(c).ok_or_else(|| Error::Dimension("image leaves the subspace".into())))
        .collect::<Result<Vec<_>>>()?;
    LinearMap::from_columns(f.field(), s.dim(), &cols)
}

/// Projection of `⊕ dims` onto block `k`.
pub(crate) fn block_projection(field: crate::linalg::FieldSpec, dims: &[usize], k: usize) -> LinearMap {
    let total: usize = dims.iter().sum();
    let off: usize = dims[..k].iter().sum();
    let mut m = LinearMap::zero(field, dims[k], total);
    for i in 0..dims[k] {
        m.set(i, off + i, field.one());
    }
    m
}

/// `P1 ×_{P12} P2` as a subalgebra of `P1 ⊕ P2`.
#[derive(Clone, Debug)]
pub struct FibreProduct {
    pub algebra: Algebra,
    /// The subspace of matching pairs inside `P1 ⊕ P2`.
    pub space: Subspace,
    /// `P → P1 ⊕ P2`.
    pub inclusion: LinearMap,
    pub pr1: AlgebraMorphism,
    pub pr2: AlgebraMorphism,
}

pub fn fibre_product(pi1: &AlgebraMorphism, pi2: &AlgebraMorphism) -> Result<FibreProduct> {
    if pi1.target() != pi2.target() {
        return Err(Error::InvalidMorphism("fibre product over different targets".into()));
    }
    let (p1, p2) = (pi1.source(), pi2.source());
    let field = p1.field();
    let sum = Algebra::direct_sum(field, &[p1, p2]);
    let neg = pi2.matrix().scale(&field.from_i64(-1));
    let diff = LinearMap::juxtapose(field, pi1.target().dim(), &[pi1.matrix(), &neg]);
    let space = diff.kernel();
    let (algebra, inclusion) = sum.subalgebra(&space)?;
    let dims = [p1.dim(), p2.dim()];
    let pr1 = AlgebraMorphism::new_unchecked(
        algebra.clone(),
        p1.clone(),
        block_projection(field, &dims, 0).compose(&inclusion),
    )?;
    let pr2 = AlgebraMorphism::new_unchecked(
        algebra.clone(),
        p2.clone(),
        block_projection(field, &dims, 1).compose(&inclusion),
    )?;
    Ok(FibreProduct { algebra, space, inclusion, pr1, pr2 })
}

/// The outcome of testing surjectivity of `η: V → V1 ×_{V12} V2` in two ways.
#[derive(Clone, Debug)]
pub struct SurjectivityCertificate {
    /// Rank of `η` equals the dimension of the fibre product.
    pub surjective: bool,
    /// `ker(π1∘φ1) = ker φ1 + ker φ2`.
    pub kernel_criterion: bool,
    pub kernel_eta: Subspace,
    /// `ker η = ker φ1 ∩ ker φ2`.
    pub kernel_eta_is_intersection: bool,
    /// `η` into `V1 ⊕ V2`.
    pub eta: LinearMap,
    pub fibre: Subspace,
}

impl SurjectivityCertificate {
    /// Both routes agree.
    pub fn consistent(&self) -> bool {
        self.surjective == self.kernel_criterion && self.kernel_eta_is_intersection
    }
}

/// Decides surjectivity of the induced map to the fibre product, for a
/// commuting square of linear surjections `π1 φ1 = π2 φ2`.
pub fn surjectivity_criterion(
    phi1: &LinearMap,
    phi2: &LinearMap,
    pi1: &LinearMap,
    pi2: &LinearMap,
) -> Result<SurjectivityCertificate> {
    if phi1.source_dim() != phi2.source_dim()
        || pi1.source_dim() != phi1.target_dim()
        || pi2.source_dim() != phi2.target_dim()
        || pi1.target_dim() != pi2.target_dim()
    {
        return Err(Error::Dimension("maps do not form a square".into()));
    }
    for (name, m) in [("φ1", phi1), ("φ2", phi2), ("π1", pi1), ("π2", pi2)] {
        if !m.is_surjective() {
            return Err(Error::InvalidMorphism(format!("{name} is not surjective")));
        }
    }
    let composite = pi1.compose(phi1);
    if composite != pi2.compose(phi2) {
        return Err(Error::Incompatible("square does not commute".into()));
    }
    let field = phi1.field();
    let neg = pi2.scale(&field.from_i64(-1));
    let fibre = LinearMap::juxtapose(field, pi1.target_dim(), &[pi1, &neg]).kernel();
    let eta = LinearMap::stack(field, phi1.source_dim(), &[phi1, phi2]);
    let surjective = eta.rank() == fibre.dim();
    let (k1, k2) = (phi1.kernel(), phi2.kernel());
    let kernel_criterion = composite.kernel() == k1.sum(&k2)?;
    let kernel_eta = eta.kernel();
    let kernel_eta_is_intersection = kernel_eta == k1.intersection(&k2)?;
    Ok(SurjectivityCertificate { surjective, kernel_criterion, kernel_eta, kernel_eta_is_intersection, eta, fibre })
}

/// An overlap constraint `left(p_i) = right(p_j)` between pieces `i < j`.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub i: usize,
    pub j: usize,
    pub left: AlgebraMorphism,
    pub right: AlgebraMorphism,
}

#[derive(Clone, Debug)]
pub struct MultiPullback {
    pub algebra: Algebra,
    pub space: Subspace,
    pub inclusion: LinearMap,
    pub projections: Vec<AlgebraMorphism>,
}

/// Tuples in `⊕ P_i` agreeing on every listed overlap.
pub fn multi_pullback(pieces: &[Algebra], overlaps: &[Overlap]) -> Result<MultiPullback> {
    let field = pieces
        .first()
        .map(|p| p.field())
        .ok_or_else(|| Error::Dimension("multi-pullback of no algebras".into()))?;
    let dims: Vec<usize> = pieces.iter().map(|p| p.dim()).collect();
    let total: usize = dims.iter().sum();
    let refs: Vec<&Algebra> = pieces.iter().collect();
    let sum = Algebra::direct_sum(field, &refs);
    let mut constraints = Vec::new();
    for o in overlaps {
        if o.i >= pieces.len() || o.j >= pieces.len() {
            return Err(Error::Dimension(format!("overlap ({}, {}) out of range", o.i, o.j)));
        }
        if o.left.source() != &pieces[o.i] || o.right.source() != &pieces[o.j] || o.left.target() != o.right.target() {
            return Err(Error::InvalidMorphism(format!("overlap ({}, {}) has mismatched maps", o.i, o.j)));
        }
        let l = o.left.matrix().compose(&block_projection(field, &dims, o.i));
        let r = o.right.matrix().compose(&block_projection(field, &dims, o.j));
        constraints.push(l.sub(&r));
    }
    let crefs: Vec<&LinearMap> = constraints.iter().collect();
    let space = if crefs.is_empty() {
        Subspace::full(field, total)
    } else {
        LinearMap::stack(field, total, &crefs).kernel()
    };
    let (algebra, inclusion) = sum.subalgebra(&space)?;
    let projections = pieces
        .iter()
        .enumerate()
        .map(|(k, p)| {
            AlgebraMorphism::new_unchecked(
                algebra.clone(),
                p.clone(),
                block_projection(field, &dims, k).compose(&inclusion),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiPullback { algebra, space, inclusion, projections })
}

/// One step `R_{k+1} = R_k ×_{P/(I_k + J_{k+1})} P_{k+1}` of the induction.
#[derive(Clone, Debug)]
pub struct Stage {
    pub fibre: FibreProduct,
    /// `R_k → P/(I_k + J_{k+1})`.
    pub left: AlgebraMorphism,
    /// `P_{k+1} → P/(I_k + J_{k+1})`.
    pub right: AlgebraMorphism,
    /// `P → R_{k+1}`.
    pub eta: AlgebraMorphism,
    pub certificate: SurjectivityCertificate,
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub algebra: Algebra,
    /// `P → R_N`, `p ↦ (π_1 p, ..., π_N p)` in fibre-product coordinates.
    pub eta: AlgebraMorphism,
    pub stages: Vec<Stage>,
    pub isomorphism: bool,
}

/// Rebuilds `P` from surjections `π_i: P → P_i` by iterated fibre products.
pub fn reconstruct(p: &Algebra, maps: &[AlgebraMorphism]) -> Result<Reconstruction> {
    let first = maps.first().ok_or_else(|| Error::Covering("no maps".into()))?;
    for m in maps {
        if m.source() != p {
            return Err(Error::Covering("map with a different source".into()));
        }
        if !m.is_surjective() {
            return Err(Error::Covering("map is not surjective".into()));
        }
    }
    let mut eta = first.clone();
    let mut stages = Vec::new();
    for next in &maps[1..] {
        let ik = eta.kernel();
        let j = next.kernel();
        let q = quotient_algebra(p, &ik.sum(&j)?)?;
        // lifts are well defined modulo I_k and J respectively
        let left_map = q.projection.matrix().compose(&eta.linear_section()?);
        let right_map = q.projection.matrix().compose(&next.linear_section()?);
        let left = AlgebraMorphism::new(eta.target().clone(), q.algebra.clone(), left_map)?;
        let right = AlgebraMorphism::new(next.target().clone(), q.algebra.clone(), right_map)?;
        let certificate = surjectivity_criterion(eta.matrix(), next.matrix(), left.matrix(), right.matrix())?;
        let fibre = fibre_product(&left, &right)?;
        let eta_map = corestrict(&certificate.eta, &fibre.space)?;
        let new_eta = AlgebraMorphism::new_unchecked(p.clone(), fibre.algebra.clone(), eta_map)?;
        stages.push(Stage { fibre, left, right, eta: new_eta.clone(), certificate });
        eta = new_eta;
    }
    let isomorphism = eta.is_isomorphism();
    Ok(Reconstruction { algebra: eta.target().clone(), eta, stages, isomorphism })
}
