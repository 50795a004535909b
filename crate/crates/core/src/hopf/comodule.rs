use crate::algebra::{fibre_product, quotient_algebra, Algebra, AlgebraMorphism, FibreProduct};
use crate::error::{Error, Result};
use crate::linalg::{quotient_with_section, FieldSpec, LinearMap, Quotient, Scalar, Subspace};

use super::group::GroupAction;
use super::hopf_data::HopfData;

/// A right `H`-comodule algebra `(P, Δ_P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleAlgebra {
    algebra: Algebra,
    hopf: HopfData,
    coaction: LinearMap,
}

impl ComoduleAlgebra {
    pub fn new(algebra: Algebra, hopf: HopfData, coaction: LinearMap) -> Result<Self> {
        let c = Self::new_unchecked(algebra, hopf, coaction)?;
        c.verify()?;
        Ok(c)
    }

    pub fn new_unchecked(algebra: Algebra, hopf: HopfData, coaction: LinearMap) -> Result<Self> {
        if algebra.field() != hopf.field() {
            return Err(Error::FieldMismatch("algebra and Hopf algebra over different fields".into()));
        }
        if coaction.source_dim() != algebra.dim() || coaction.target_dim() != algebra.dim() * hopf.dim() {
            return Err(Error::InvalidComodule("coaction has the wrong shape".into()));
        }
        Ok(ComoduleAlgebra { algebra, hopf, coaction })
    }

    /// Checks that `Δ_P` is a unital algebra map, counital and coassociative.
    pub fn verify(&self) -> Result<()> {
        let p = &self.algebra;
        let h = &self.hopf;
        let d = &self.coaction;
        let bad = |what: String| Err(Error::InvalidComodule(what));
        let ph = p.tensor(h.algebra());
        if !p.is_zero_algebra() && d.apply(p.unit()) != ph.unit() {
            return bad("coaction is not unital".into());
        }
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                if d.apply(p.basis_product(i, j)) != ph.mul(&d.column(i), &d.column(j)) {
                    return bad(format!("coaction not multiplicative on e{i} e{j}"));
                }
            }
        }
        let id = p.identity();
        if id.tensor(h.counit()).compose(d) != id {
            return bad("coaction is not counital".into());
        }
        let lhs = d.tensor(&h.algebra().identity()).compose(d);
        let rhs = id.tensor(h.coproduct()).compose(d);
        if lhs != rhs {
            return bad("coaction is not coassociative".into());
        }
        Ok(())
    }

    /// `p ↦ p ⊗ 1`.
    pub fn trivial(algebra: Algebra, hopf: HopfData) -> Self {
        let coaction = algebra.identity().tensor(&LinearMap::vector(hopf.field(), hopf.unit().to_vec()));
        ComoduleAlgebra { algebra, hopf, coaction }
    }

    /// `H` coacting on itself by `Δ`.
    pub fn regular(hopf: HopfData) -> Self {
        ComoduleAlgebra { algebra: hopf.algebra().clone(), coaction: hopf.coproduct().clone(), hopf }
    }

    /// `Fun(X)` for a right `G`-set `X`, coacted on by `k^G`:
    /// `Δ_P(δ_x) = Σ_g δ_{x·g⁻¹} ⊗ δ_g`.
    pub fn of_group_action(field: FieldSpec, action: &GroupAction) -> Result<Self> {
        let hopf = HopfData::function_algebra(field, &action.group)?;
        let n = action.points();
        let k = action.group.order();
        let mut coaction = LinearMap::zero(field, n * k, n);
        for y in 0..n {
            for g in 0..k {
                let x = action.act(y, action.group.inverse(g));
                coaction.set(x * k + g, y, field.one());
            }
        }
        Self::new(Algebra::function_algebra(field, n), hopf, coaction)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn hopf(&self) -> &HopfData {
        &self.hopf
    }

    pub fn coaction(&self) -> &LinearMap {
        &self.coaction
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    /// `p ↦ S⁻¹(p₍₁₎) ⊗ p₍₀₎`, a map `P → H ⊗ P`.
    pub fn left_coaction(&self) -> LinearMap {
        let f = self.field();
        let (n, k) = (self.dim(), self.hopf.dim());
        let twisted = self.algebra.identity().tensor(self.hopf.antipode_inverse()).compose(&self.coaction);
        LinearMap::flip(f, n, k).compose(&twisted)
    }

    /// `(f ⊗ id) Δ_P = Δ_Q f`.
    pub fn is_colinear(&self, f: &LinearMap, target: &ComoduleAlgebra) -> bool {
        f.source_dim() == self.dim()
            && f.target_dim() == target.dim()
            && f.tensor(&self.hopf.algebra().identity()).compose(&self.coaction) == target.coaction.compose(f)
    }

    /// `Δ_P(J) ⊆ J ⊗ H`.
    pub fn is_subcomodule(&self, j: &Subspace) -> bool {
        let jh = j.tensor(&Subspace::full(self.field(), self.hopf.dim()));
        j.basis().iter().all(|v| jh.contains(&self.coaction.apply(v)))
    }

    pub fn is_comodule_ideal(&self, j: &Subspace) -> bool {
        crate::algebra::is_ideal(&self.algebra, j) && self.is_subcomodule(j)
    }
}

/// The coaction-invariant subalgebra `P^{coH}`.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub space: Subspace,
    pub algebra: Algebra,
    pub inclusion: LinearMap,
}

pub fn coinvariants(p: &ComoduleAlgebra) -> Result<Coinvariants> {
    let u = LinearMap::vector(p.field(), p.hopf.unit().to_vec());
    let space = p.coaction.sub(&p.algebra.identity().tensor(&u)).kernel();
    let (algebra, inclusion) = p
        .algebra
        .subalgebra(&space)
        .map_err(|e| Error::InvalidComodule(format!("coinvariants: {e}")))?;
    Ok(Coinvariants { space, algebra, inclusion })
}

/// `P/J` for a comodule ideal, with the induced coaction.
#[derive(Clone, Debug)]
pub struct ComoduleQuotient {
    pub comodule: ComoduleAlgebra,
    pub projection: LinearMap,
    pub section: LinearMap,
}

pub fn quotient_comodule(p: &ComoduleAlgebra, j: &Subspace) -> Result<ComoduleQuotient> {
    if !p.is_subcomodule(j) {
        return Err(Error::InvalidComodule("ideal is not a subcomodule".into()));
    }
    let q = quotient_algebra(&p.algebra, j)?;
    let proj = q.projection.matrix().clone();
    let coaction = proj.tensor(&p.hopf.algebra().identity()).compose(&p.coaction).compose(&q.section);
    let comodule = ComoduleAlgebra::new(q.algebra, p.hopf.clone(), coaction)?;
    Ok(ComoduleQuotient { comodule, projection: proj, section: q.section })
}

/// Expresses a map with image in `s ⊗ H` in the coordinates of `s ⊗ H`.
pub(crate) fn corestrict(f: &LinearMap, s: &Subspace) -> Result<LinearMap> {
    let cols = f
        .columns()
        .iter()
        .map(|c| s.coordinates(c).ok_or_else(|| Error::InvalidComodule("image leaves the subspace".into())))
        .collect::<Result<Vec<_>>>()?;
    LinearMap::from_columns(f.field(), s.dim(), &cols)
}

/// A fibre product of comodule algebras over colinear surjections.
#[derive(Clone, Debug)]
pub struct ComoduleFibre {
    pub comodule: ComoduleAlgebra,
    pub fibre: FibreProduct,
}

pub fn fibre_product_comodule(
    p1: &ComoduleAlgebra,
    p2: &ComoduleAlgebra,
    p12: &ComoduleAlgebra,
    pi1: &LinearMap,
    pi2: &LinearMap,
) -> Result<ComoduleFibre> {
    if p1.hopf != p2.hopf || p1.hopf != p12.hopf {
        return Err(Error::InvalidComodule("pieces coacted on by different Hopf algebras".into()));
    }
    if !p1.is_colinear(pi1, p12) || !p2.is_colinear(pi2, p12) {
        return Err(Error::InvalidComodule("gluing maps are not colinear".into()));
    }
    let m1 = AlgebraMorphism::new(p1.algebra.clone(), p12.algebra.clone(), pi1.clone())?;
    let m2 = AlgebraMorphism::new(p2.algebra.clone(), p12.algebra.clone(), pi2.clone())?;
    let fibre = fibre_product(&m1, &m2)?;
    let f = p1.field();
    let sum_coaction = LinearMap::direct_sum(f, &[&p1.coaction, &p2.coaction]);
    let fh = fibre.space.tensor(&Subspace::full(f, p1.hopf.dim()));
    let coaction = corestrict(&sum_coaction.compose(&fibre.inclusion), &fh)?;
    let comodule = ComoduleAlgebra::new(fibre.algebra.clone(), p1.hopf.clone(), coaction)?;
    Ok(ComoduleFibre { comodule, fibre })
}

/// The canonical map `P ⊗_B P → P ⊗ H` and its lift to `P ⊗ P`.
#[derive(Clone, Debug)]
pub struct CanonicalMap {
    pub coinvariants: Coinvariants,
    /// `span{pb ⊗ q − p ⊗ bq}` inside `P ⊗ P`.
    pub relations: Subspace,
    /// `P ⊗ P → P ⊗_B P`.
    pub balanced: Quotient,
    /// `p ⊗ q ↦ p q₍₀₎ ⊗ q₍₁₎`.
    pub can_tilde: LinearMap,
    pub can: LinearMap,
    pub galois: bool,
}

pub fn canonical_map(p: &ComoduleAlgebra) -> Result<CanonicalMap> {
    let b = coinvariants(p)?;
    let a = &p.algebra;
    let n = a.dim();
    let f = p.field();
    let id = a.identity();
    let mut rels: Vec<Vec<Scalar>> = Vec::new();
    for v in b.space.basis() {
        let m = a.right_mult(v).tensor(&id).sub(&id.tensor(&a.left_mult(v)));
        rels.extend(m.columns().into_iter().filter(|c| c.iter().any(|x| !x.is_zero())));
    }
    let relations = Subspace::span(f, n * n, rels)?;
    let balanced = quotient_with_section(n * n, &relations)?;
    let can_tilde = a.mult_map().tensor(&p.hopf.algebra().identity()).compose(&id.tensor(&p.coaction));
    let can = can_tilde.compose(&balanced.section);
    let galois = can.is_bijective();
    Ok(CanonicalMap { coinvariants: b, relations, balanced, can_tilde, can, galois })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::group::FiniteGroup;

    fn f() -> FieldSpec {
        FieldSpec::gf5()
    }

    #[test]
    fn coinvariants_of_standard_examples() {
        let h = HopfData::group_algebra(f(), &FiniteGroup::cyclic(3)).unwrap();
        let reg = ComoduleAlgebra::regular(h.clone());
        reg.verify().unwrap();
        assert_eq!(coinvariants(&reg).unwrap().space.dim(), 1);

        let triv = ComoduleAlgebra::trivial(Algebra::function_algebra(f(), 2), h);
        triv.verify().unwrap();
        assert!(coinvariants(&triv).unwrap().space.is_full());

        let free = ComoduleAlgebra::of_group_action(f(), &GroupAction::free_cyclic(2, 3)).unwrap();
        let b = coinvariants(&free).unwrap();
        assert_eq!(b.space.dim(), 3);
        // orbit indicator δ_0 + δ_1
        let v: Vec<_> = [1, 1, 0, 0, 0, 0].iter().map(|&x| f().from_i64(x)).collect();
        assert!(b.space.contains(&v));
    }

    #[test]
    fn galois_flags() {
        let h = HopfData::group_algebra(f(), &FiniteGroup::cyclic(2)).unwrap();
        assert!(canonical_map(&ComoduleAlgebra::regular(h.clone())).unwrap().galois);
        let triv = ComoduleAlgebra::trivial(Algebra::function_algebra(f(), 1), h);
        assert!(!canonical_map(&triv).unwrap().galois);

        let free = ComoduleAlgebra::of_group_action(f(), &GroupAction::free_cyclic(2, 2)).unwrap();
        assert!(canonical_map(&free).unwrap().galois);
        let fixed = GroupAction::new(FiniteGroup::cyclic(2), vec![vec![0, 1], vec![1, 0], vec![2, 2]]).unwrap();
        let fixed = ComoduleAlgebra::of_group_action(f(), &fixed).unwrap();
        assert!(!canonical_map(&fixed).unwrap().galois);
    }

    #[test]
    fn left_coaction_is_coassociative() {
        let p = ComoduleAlgebra::of_group_action(f(), &GroupAction::free_cyclic(3, 1)).unwrap();
        let l = p.left_coaction();
        let h = p.hopf();
        let lhs = h.algebra().identity().tensor(&l).compose(&l);
        let rhs = h.coproduct().tensor(&p.algebra().identity()).compose(&l);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_by_stable_subset() {
        let p = ComoduleAlgebra::of_group_action(f(), &GroupAction::free_cyclic(2, 2)).unwrap();
        // functions vanishing on orbit {0,1}
        let j = Subspace::span(f(), 4, vec![p.algebra().basis_vector(0), p.algebra().basis_vector(1)]).unwrap();
        assert!(p.is_comodule_ideal(&j));
        let q = quotient_comodule(&p, &j).unwrap();
        assert_eq!(q.comodule.dim(), 2);
        assert!(p.is_colinear(&q.projection, &q.comodule));
        let unstable = Subspace::span(f(), 4, vec![p.algebra().basis_vector(0)]).unwrap();
        assert!(!p.is_subcomodule(&unstable));
    }
}
