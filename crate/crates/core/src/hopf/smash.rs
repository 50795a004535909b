use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, LinearMap, Scalar};

use super::comodule::ComoduleAlgebra;
use super::group::FiniteGroup;
use super::hopf_data::HopfData;

/// Checks that `actions[x]` (the operator of the `x`-th basis element of `H`)
/// make `B` a left `H`-module algebra.
pub fn verify_module_algebra(b: &Algebra, h: &HopfData, actions: &[LinearMap]) -> Result<()> {
    let nb = b.dim();
    let nh = h.dim();
    let bad = |m: String| Err(Error::InvalidHopf(m));
    if actions.len() != nh || actions.iter().any(|a| a.source_dim() != nb || a.target_dim() != nb) {
        return bad("one B-endomorphism per basis element of H expected".into());
    }
    // ρ(h) = Σ_x h_x actions[x]
    let rho = |v: &[Scalar]| {
        let mut out = LinearMap::zero(b.field(), nb, nb);
        for (x, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&actions[x].scale(c));
            }
        }
        out
    };
    if rho(h.unit()) != b.identity() {
        return bad("the unit of H does not act as the identity".into());
    }
    let hh = h.algebra();
    for x in 0..nh {
        for y in 0..nh {
            if rho(hh.basis_product(x, y)) != actions[x].compose(&actions[y]) {
                return bad(format!("action is not multiplicative on h{x} h{y}"));
            }
        }
    }
    let m = b.mult_map();
    let delta = h.coproduct();
    for x in 0..nh {
        let dx = delta.column(x);
        let mut twisted = LinearMap::zero(b.field(), nb, nb * nb);
        for c in 0..nh {
            for d in 0..nh {
                let s = &dx[c * nh + d];
                if !s.is_zero() {
                    twisted = twisted.add(&m.compose(&actions[c].tensor(&actions[d])).scale(s));
                }
            }
        }
        if actions[x].compose(&m) != twisted {
            return bad(format!("h{x} does not act by a twisted derivation of the product"));
        }
        let eps = h.counit().get(0, x);
        let expect: Vec<Scalar> = b.unit().iter().map(|u| u * eps).collect();
        if actions[x].apply(b.unit()) != expect {
            return bad(format!("h{x} ▷ 1 ≠ ε(h{x}) 1"));
        }
    }
    Ok(())
}

/// `B # H` with `(b#h)(b′#h′) = b(h₍₁₎▷b′) # h₍₂₎h′` and coaction `id ⊗ Δ`.
/// Basis `b_i # h_x` sits at index `i·dim H + x`.
pub fn smash_product(b: &Algebra, h: &HopfData, actions: &[LinearMap]) -> Result<ComoduleAlgebra> {
    if b.field() != h.field() {
        return Err(Error::FieldMismatch("smash product factors over different fields".into()));
    }
    verify_module_algebra(b, h, actions)?;
    let f = b.field();
    let (nb, nh) = (b.dim(), h.dim());
    let n = nb * nh;
    let hh = h.algebra();
    let delta = h.coproduct();
    let mut structure = vec![f.zero(); n * n * n];
    for i in 0..nb {
        for x in 0..nh {
            for j in 0..nb {
                for y in 0..nh {
                    let row = ((i * nh + x) * n + j * nh + y) * n;
                    for c in 0..nh {
                        for d in 0..nh {
                            let s = delta.get(c * nh + d, x);
                            if s.is_zero() {
                                continue;
                            }
                            let acted = actions[c].column(j);
                            let bpart = b.mul(&b.basis_vector(i), &acted);
                            let hpart = hh.basis_product(d, y);
                            for (k, bk) in bpart.iter().enumerate() {
                                if bk.is_zero() {
                                    continue;
                                }
                                for (z, hz) in hpart.iter().enumerate() {
                                    if !hz.is_zero() {
                                        structure[row + k * nh + z].add_mul_assign(s, &(bk * hz));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let unit = crate::linalg::tensor_vectors(b.unit(), h.unit());
    let algebra = Algebra::new(f, n, structure, unit)?;
    let coaction = b.identity().tensor(delta);
    ComoduleAlgebra::new(algebra, h.clone(), coaction)
}

/// The trivial action `h ▷ b = ε(h) b`.
pub fn trivial_action(b: &Algebra, h: &HopfData) -> Vec<LinearMap> {
    (0..h.dim()).map(|x| b.identity().scale(h.counit().get(0, x))).collect()
}

/// `k[u]/(uⁿ − 1)` with basis `1, u, …, uⁿ⁻¹`.
pub fn cyclic_group_ring(field: FieldSpec, n: usize) -> Algebra {
    let g = FiniteGroup::cyclic(n);
    HopfData::group_algebra(field, &g).expect("cyclic group").algebra().clone()
}

/// The root-of-unity model: `B = k[u]/(uⁿ−1)`, `H = k[ℤ/n]` with generator `v`,
/// `vʲ ▷ uⁱ = q^{ij} uⁱ`. Requires `q` to be a primitive `n`-th root of unity.
#[derive(Clone, Debug)]
pub struct RootOfUnityExample {
    pub base: Algebra,
    pub hopf: HopfData,
    pub actions: Vec<LinearMap>,
    pub smash: ComoduleAlgebra,
}

pub fn root_of_unity_example(field: FieldSpec, n: usize, q: i64) -> Result<RootOfUnityExample> {
    let qs = field.from_i64(q);
    let mut power = field.one();
    for k in 1..=n {
        power = &power * &qs;
        if power.is_one() != (k == n) {
            return Err(Error::InvalidHopf(format!("{q} is not a primitive {n}-th root of unity")));
        }
    }
    let base = cyclic_group_ring(field, n);
    let hopf = HopfData::group_algebra(field, &FiniteGroup::cyclic(n))?;
    let pow = |e: usize| (0..e).fold(field.one(), |acc, _| &acc * &qs);
    let actions = (0..n)
        .map(|j| {
            let mut a = LinearMap::zero(field, n, n);
            for i in 0..n {
                a.set(i, i, pow(i * j % n));
            }
            a
        })
        .collect::<Vec<_>>();
    let smash = smash_product(&base, &hopf, &actions)?;
    Ok(RootOfUnityExample { base, hopf, actions, smash })
}

/// A claimed isomorphism of comodule algebras `P_i → B # H`.
#[derive(Clone, Debug)]
pub struct Trivialization {
    pub smash: ComoduleAlgebra,
    pub iso: LinearMap,
}

impl Trivialization {
    /// Whether `iso` is a bijective colinear algebra map from `p` onto the smash product.
    pub fn verify(&self, p: &ComoduleAlgebra) -> Result<bool> {
        verify_trivialization(p, &self.smash, &self.iso)
    }
}

pub fn verify_trivialization(p: &ComoduleAlgebra, smash: &ComoduleAlgebra, iso: &LinearMap) -> Result<bool> {
    if iso.source_dim() != p.dim() || iso.target_dim() != smash.dim() {
        return Err(Error::Dimension("trivialization has the wrong shape".into()));
    }
    let algebra_map = AlgebraMorphism::new(p.algebra().clone(), smash.algebra().clone(), iso.clone()).is_ok();
    Ok(algebra_map && iso.is_bijective() && p.is_colinear(iso, smash))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::connection::strong_connection_solve;
    use crate::hopf::group::GroupAction;

    #[test]
    fn trivial_action_gives_tensor_product() {
        let f = FieldSpec::gf5();
        let h = HopfData::group_algebra(f, &FiniteGroup::cyclic(2)).unwrap();
        let b = Algebra::function_algebra(f, 2);
        let p = smash_product(&b, &h, &trivial_action(&b, &h)).unwrap();
        assert_eq!(p.algebra(), &b.tensor(h.algebra()));
        assert!(strong_connection_solve(&p).unwrap().principal());
    }

    #[test]
    fn root_of_unity_smash_products_are_principal() {
        for (f, n, q) in [(FieldSpec::gf7(), 3, 2), (FieldSpec::gf5(), 2, 4)] {
            let ex = root_of_unity_example(f, n, q).unwrap();
            assert_eq!(ex.smash.dim(), n * n);
            assert!(!ex.smash.algebra().is_commutative());
            assert!(strong_connection_solve(&ex.smash).unwrap().principal());
        }
        assert!(root_of_unity_example(FieldSpec::gf7(), 3, 1).is_err());
    }

    #[test]
    fn non_module_algebra_action_rejected() {
        let f = FieldSpec::gf7();
        let ex = root_of_unity_example(f, 3, 2).unwrap();
        let mut bad = ex.actions.clone();
        bad[1] = bad[1].scale(&f.from_i64(2));
        assert!(smash_product(&ex.base, &ex.hopf, &bad).is_err());
    }

    #[test]
    fn free_orbit_is_trivial() {
        // Fun(ℤ/2) with the regular k^G coaction is the smash product k # k^G
        let f = FieldSpec::gf5();
        let p = ComoduleAlgebra::of_group_action(f, &GroupAction::free_cyclic(2, 1)).unwrap();
        let b = Algebra::function_algebra(f, 1);
        let smash = smash_product(&b, p.hopf(), &trivial_action(&b, p.hopf())).unwrap();
        let t = Trivialization { smash, iso: LinearMap::identity(f, 2) };
        assert!(t.verify(&p).unwrap());
        // translation by the generator is another trivialization; scaling is not
        let swap = LinearMap::from_i64_rows(f, &[&[0, 1], &[1, 0]]);
        assert!(verify_trivialization(&p, &t.smash, &swap).unwrap());
        let doubled = LinearMap::identity(f, 2).scale(&f.from_i64(2));
        assert!(!verify_trivialization(&p, &t.smash, &doubled).unwrap());
    }
}
