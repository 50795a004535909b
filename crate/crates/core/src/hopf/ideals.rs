use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, LinearMap, Scalar, Subspace};

use super::comodule::{coinvariants, ComoduleAlgebra};
use super::connection::{default_functional, splittings};

/// Comodule ideals spanned by subsets of the standard basis. For function
/// algebras every ideal is of this form, so the list is then complete.
pub fn coordinate_comodule_ideals(p: &ComoduleAlgebra, max_dim: usize) -> Result<Vec<Subspace>> {
    let n = p.dim();
    if n > max_dim {
        return Err(Error::CapExceeded { n, cap: max_dim });
    }
    let f = p.field();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let vecs = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| unit_vector(f, n, i)).collect();
        let j = Subspace::span(f, n, vecs)?;
        if p.is_comodule_ideal(&j) {
            out.push(j);
        }
    }
    Ok(out)
}

/// `span{a x b : a ∈ left, x ∈ j, b ∈ right}`, with `None` meaning the unit.
fn products(a: &Algebra, left: Option<&Subspace>, j: &Subspace, right: Option<&Subspace>) -> Result<Subspace> {
    let one = [a.unit().to_vec()];
    let ls = left.map_or(&one[..], |s| s.basis());
    let rs = right.map_or(&one[..], |s| s.basis());
    let mut vecs = Vec::new();
    for l in ls {
        for x in j.basis() {
            let lx = a.mul(l, x);
            for r in rs {
                vecs.push(a.mul(&lx, r));
            }
        }
    }
    Subspace::span(a.field(), a.dim(), vecs)
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionCheck {
    /// `dim (J ∩ B)`.
    pub dim: usize,
    /// `s(J) ⊆ (J∩B) ⊗ P`.
    pub s_maps_into: bool,
    /// `s′(J) ⊆ P ⊗ (J∩B)`.
    pub s_prime_maps_into: bool,
    /// `P(J∩B) = J`.
    pub left_generates: bool,
    /// `(J∩B)P = J`.
    pub right_generates: bool,
}

impl ContractionCheck {
    pub fn passes(&self) -> bool {
        self.s_maps_into && self.s_prime_maps_into && self.left_generates && self.right_generates
    }
}

/// `ℒ(J) = J ∩ B` for a comodule ideal `J` of `P`, with the checks that make
/// `ℒ` injective.
pub fn ideal_contraction(p: &ComoduleAlgebra, l: &LinearMap, j: &Subspace) -> Result<(Subspace, ContractionCheck)> {
    if !p.is_comodule_ideal(j) {
        return Err(Error::NotAnIdeal("not a comodule ideal".into()));
    }
    let f = p.field();
    let a = p.algebra();
    let b = coinvariants(p)?;
    let jb = j.intersection(&b.space)?;
    let sp = splittings(p, l, &default_functional(p)?)?;
    let full = Subspace::full(f, a.dim());
    let left_target = jb.tensor(&full);
    let right_target = full.tensor(&jb);
    let check = ContractionCheck {
        dim: jb.dim(),
        s_maps_into: j.basis().iter().all(|v| left_target.contains(&sp.s.apply(v))),
        s_prime_maps_into: j.basis().iter().all(|v| right_target.contains(&sp.s_prime.apply(v))),
        left_generates: &products(a, Some(&full), &jb, None)? == j,
        right_generates: &products(a, None, &jb, Some(&full))? == j,
    };
    Ok((jb, check))
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionLattice {
    pub ideals: usize,
    pub every_contraction_generates: bool,
    pub preserves_sum: bool,
    pub preserves_intersection: bool,
    pub injective: bool,
}

impl ContractionLattice {
    pub fn passes(&self) -> bool {
        self.every_contraction_generates && self.preserves_sum && self.preserves_intersection && self.injective
    }
}

/// Checks that `ℒ` is an injective lattice map on the given family; sums and
/// intersections of members are contracted as well, whether or not they are
/// in the family.
pub fn contraction_lattice(p: &ComoduleAlgebra, l: &LinearMap, ideals: &[Subspace]) -> Result<ContractionLattice> {
    let mut images = Vec::with_capacity(ideals.len());
    let mut every = true;
    for j in ideals {
        let (c, check) = ideal_contraction(p, l, j)?;
        every &= check.passes();
        images.push(c);
    }
    let contract = |j: &Subspace| ideal_contraction(p, l, j).map(|x| x.0);
    let (mut sum, mut meet, mut injective) = (true, true, true);
    for (x, jx) in ideals.iter().enumerate() {
        for (y, jy) in ideals.iter().enumerate().skip(x + 1) {
            sum &= contract(&jx.sum(jy)?)? == images[x].sum(&images[y])?;
            meet &= contract(&jx.intersection(jy)?)? == images[x].intersection(&images[y])?;
            injective &= (jx == jy) == (images[x] == images[y]);
        }
    }
    Ok(ContractionLattice {
        ideals: ideals.len(),
        every_contraction_generates: every,
        preserves_sum: sum,
        preserves_intersection: meet,
        injective,
    })
}

pub fn is_right_ideal(a: &Algebra, j: &Subspace) -> bool {
    j.basis().iter().all(|x| (0..a.dim()).all(|k| j.contains(&a.mul(x, &a.basis_vector(k)))))
}

pub fn is_left_ideal(a: &Algebra, j: &Subspace) -> bool {
    j.basis().iter().all(|x| (0..a.dim()).all(|k| j.contains(&a.mul(&a.basis_vector(k), x))))
}

/// For an ideal `I` of `B = P^{coH}`, the right ideal `IP`; if it is not
/// two-sided, no comodule ideal of a principal `P` contracts to `I`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionCheck {
    pub dim: usize,
    pub right_ideal: bool,
    pub left_ideal: bool,
}

pub fn extend_ideal(p: &ComoduleAlgebra, i: &[Vec<Scalar>]) -> Result<(Subspace, ExtensionCheck)> {
    let a = p.algebra();
    let b = coinvariants(p)?;
    if i.iter().any(|v| !b.space.contains(v)) {
        return Err(Error::NotAnIdeal("generators are not coaction-invariant".into()));
    }
    let gens = Subspace::span(p.field(), a.dim(), i.to_vec())?;
    let ip = products(a, None, &gens, Some(&Subspace::full(p.field(), a.dim())))?;
    let check = ExtensionCheck { dim: ip.dim(), right_ideal: is_right_ideal(a, &ip), left_ideal: is_left_ideal(a, &ip) };
    Ok((ip, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::connection::strong_connection_solve;
    use crate::hopf::group::GroupAction;
    use crate::hopf::smash::root_of_unity_example;
    use crate::linalg::FieldSpec;

    #[test]
    fn free_action_contraction_is_orbit_vanishing() {
        let f = FieldSpec::gf5();
        let x = GroupAction::free_cyclic(2, 3);
        let p = ComoduleAlgebra::of_group_action(f, &x).unwrap();
        let l = strong_connection_solve(&p).unwrap().connection.unwrap();
        let ideals = coordinate_comodule_ideals(&p, 12).unwrap();
        // vanishing ideals of unions of orbits
        assert_eq!(ideals.len(), 8);
        for j in &ideals {
            let (c, check) = ideal_contraction(&p, &l, j).unwrap();
            assert!(check.passes());
            assert_eq!(c.dim() * 2, j.dim());
        }
        let lat = contraction_lattice(&p, &l, &ideals).unwrap();
        assert!(lat.passes());
        let (zero, _) = ideal_contraction(&p, &l, &Subspace::zero(f, 6)).unwrap();
        assert!(zero.is_zero());
        let (all, _) = ideal_contraction(&p, &l, &Subspace::full(f, 6)).unwrap();
        assert_eq!(all, coinvariants(&p).unwrap().space);
    }

    #[test]
    fn root_of_unity_extension_is_one_sided() {
        for (f, n, q) in [(FieldSpec::gf7(), 3, 2), (FieldSpec::gf5(), 2, 4)] {
            let ex = root_of_unity_example(f, n, q).unwrap();
            let nh = ex.hopf.dim();
            // u − 1, embedded as (u − 1) # 1
            let mut g = vec![f.zero(); n * nh];
            g[nh] = f.one();
            g[0] = f.from_i64(-1);
            let (_, check) = extend_ideal(&ex.smash, &[g]).unwrap();
            assert!(check.right_ideal && !check.left_ideal);
        }
    }
}
