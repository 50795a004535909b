use crate::error::{Error, Result};
use crate::lattice::{distributivity_check, r_map, Antichain, Distributivity, LatticeOracle};
use crate::linalg::{FieldSpec, Subspace};

use super::morphism::AlgebraMorphism;
use super::Algebra;

/// The lattice generated by finitely many ideals, ordered by reverse
/// inclusion: meet is `+`, join is `∩`, and the bottom is the unit ideal.
#[derive(Clone, Debug)]
pub struct IdealOracle {
    field: FieldSpec,
    ambient: usize,
    generators: Vec<Subspace>,
}

impl IdealOracle {
    pub fn new(field: FieldSpec, ambient: usize, generators: Vec<Subspace>) -> Self {
        IdealOracle { field, ambient, generators }
    }
}

impl LatticeOracle for IdealOracle {
    type Element = Subspace;

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn generator(&self, i: usize) -> Subspace {
        self.generators[i - 1].clone()
    }

    fn meet(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        a.sum(b)
    }

    fn join(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        a.intersection(b)
    }

    fn leq(&self, a: &Subspace, b: &Subspace) -> Result<bool> {
        Ok(b.is_subspace_of(a))
    }

    fn bottom(&self) -> Subspace {
        Subspace::full(self.field, self.ambient)
    }
}

/// An algebra with `N` surjections out of it, their kernels and verdicts.
#[derive(Clone, Debug)]
pub struct CoveringData {
    pub algebra: Algebra,
    pub maps: Vec<AlgebraMorphism>,
    pub kernels: Vec<Subspace>,
    /// `∩ ker π_i = 0`.
    pub weak: bool,
    pub distributivity: Distributivity,
}

impl CoveringData {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn is_covering(&self) -> bool {
        self.weak && self.distributivity.is_distributive()
    }

    pub fn oracle(&self) -> IdealOracle {
        IdealOracle::new(self.algebra.field(), self.algebra.dim(), self.kernels.clone())
    }

    /// `R(l)` under the ideal oracle: `⋂_{u ∈ l} Σ_{i ∈ u} ker π_i`.
    pub fn ideal_of(&self, l: &Antichain) -> Result<Subspace> {
        r_map(&self.oracle(), l)
    }
}

/// Checks the maps, computes kernels, weakness and distributivity.
pub fn covering_check(p: &Algebra, maps: Vec<AlgebraMorphism>, cap: usize) -> Result<CoveringData> {
    if maps.is_empty() {
        return Err(Error::Covering("a covering needs at least one map".into()));
    }
    for (i, m) in maps.iter().enumerate() {
        if m.source() != p {
            return Err(Error::Covering(format!("map {} has a different source", i + 1)));
        }
        if !m.is_surjective() {
            return Err(Error::Covering(format!("map {} is not surjective", i + 1)));
        }
    }
    let kernels: Vec<Subspace> = maps.iter().map(|m| m.kernel()).collect();
    let mut meet = Subspace::full(p.field(), p.dim());
    for k in &kernels {
        meet = meet.intersection(k)?;
    }
    let oracle = IdealOracle::new(p.field(), p.dim(), kernels.clone());
    let distributivity = distributivity_check(&oracle, cap)?;
    Ok(CoveringData { algebra: p.clone(), maps, kernels, weak: meet.is_zero(), distributivity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_CAP;
    use crate::linalg::LinearMap;

    fn f() -> FieldSpec {
        FieldSpec::gf5()
    }

    fn restriction(n: usize, keep: &[usize]) -> AlgebraMorphism {
        let mut m = LinearMap::zero(f(), keep.len(), n);
        for (r, &c) in keep.iter().enumerate() {
            m.set(r, c, f().one());
        }
        AlgebraMorphism::new(Algebra::function_algebra(f(), n), Algebra::function_algebra(f(), keep.len()), m).unwrap()
    }

    #[test]
    fn identity_is_a_covering() {
        let p = Algebra::function_algebra(f(), 3);
        let c = covering_check(&p, vec![AlgebraMorphism::identity(&p)], DEFAULT_CAP).unwrap();
        assert!(c.is_covering());
    }

    #[test]
    fn function_algebra_restrictions_distributive() {
        let p = Algebra::function_algebra(f(), 3);
        let c = covering_check(&p, vec![restriction(3, &[0, 1]), restriction(3, &[1, 2])], DEFAULT_CAP).unwrap();
        assert!(c.is_covering());
        let k = c.ideal_of(&Antichain::from_key(2, "[[1,2]]").unwrap()).unwrap();
        assert_eq!(k, c.kernels[0].sum(&c.kernels[1]).unwrap());
        let k = c.ideal_of(&Antichain::from_key(2, "[[1],[2]]").unwrap()).unwrap();
        assert!(k.is_zero());
        assert!(c.ideal_of(&Antichain::empty(2)).unwrap().is_full());
    }

    #[test]
    fn three_lines_not_distributive() {
        let p = Algebra::square_zero(f(), 2);
        // quotients by the lines spanned by v1, v2, v1+v2
        let lines = [[0, 1, 0], [0, 0, 1], [0, 1, 1]];
        let maps = lines
            .iter()
            .map(|l| {
                let v: Vec<_> = l.iter().map(|&x| f().from_i64(x)).collect();
                let j = Subspace::span(f(), 3, vec![v]).unwrap();
                crate::algebra::quotient_algebra(&p, &j).unwrap().projection
            })
            .collect();
        let c = covering_check(&p, maps, DEFAULT_CAP).unwrap();
        assert!(c.weak);
        assert!(!c.distributivity.is_distributive());
        assert!(!c.is_covering());
    }

    #[test]
    fn oracle_order_consistent_with_meet() {
        let p = Algebra::function_algebra(f(), 3);
        let c = covering_check(&p, vec![restriction(3, &[0, 1]), restriction(3, &[1, 2])], DEFAULT_CAP).unwrap();
        let o = c.oracle();
        let elems = [o.generator(1), o.generator(2), o.bottom(), Subspace::zero(f(), 3)];
        for a in &elems {
            for b in &elems {
                assert_eq!(o.leq(a, b).unwrap(), &o.meet(a, b).unwrap() == a);
            }
        }
    }
}
