use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, LinearMap};

use super::group::FiniteGroup;

/// A finite-dimensional Hopf algebra with bijective antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    algebra: Algebra,
    coproduct: LinearMap,
    counit: LinearMap,
    antipode: LinearMap,
    antipode_inverse: LinearMap,
}

impl HopfData {
    /// Checks all Hopf axioms; the inverse antipode is computed when absent.
    pub fn new(
        algebra: Algebra,
        coproduct: LinearMap,
        counit: LinearMap,
        antipode: LinearMap,
        antipode_inverse: Option<LinearMap>,
    ) -> Result<Self> {
        let n = algebra.dim();
        let f = algebra.field();
        let shape = |m: &LinearMap, t: usize, s: usize, name: &str| {
            if m.target_dim() != t || m.source_dim() != s || m.field() != f {
                Err(Error::InvalidHopf(format!("{name} has the wrong shape or field")))
            } else {
                Ok(())
            }
        };
        shape(&coproduct, n * n, n, "coproduct")?;
        shape(&counit, 1, n, "counit")?;
        shape(&antipode, n, n, "antipode")?;
        let antipode_inverse = match antipode_inverse {
            Some(s) => {
                shape(&s, n, n, "antipode inverse")?;
                s
            }
            None => antipode.inverse().ok_or_else(|| Error::InvalidHopf("antipode is not bijective".into()))?,
        };
        let h = HopfData { algebra, coproduct, counit, antipode, antipode_inverse };
        h.verify()?;
        Ok(h)
    }

    pub fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        a.verify()?;
        if a.is_zero_algebra() {
            return Err(Error::InvalidHopf("the zero algebra is not a Hopf algebra".into()));
        }
        let f = a.field();
        let n = a.dim();
        let id = a.identity();
        let d = &self.coproduct;
        let e = &self.counit;
        let bad = |what: &str| Err(Error::InvalidHopf(what.into()));

        if d.tensor(&id).compose(d) != id.tensor(d).compose(d) {
            return bad("coproduct is not coassociative");
        }
        if e.tensor(&id).compose(d) != id || id.tensor(e).compose(d) != id {
            return bad("counit law fails");
        }
        let hh = a.tensor(a);
        if d.apply(a.unit()) != hh.unit() {
            return bad("coproduct is not unital");
        }
        if e.apply(a.unit()) != vec![f.one()] {
            return bad("counit is not unital");
        }
        for i in 0..n {
            for j in 0..n {
                let ab = a.basis_product(i, j);
                let (di, dj) = (d.column(i), d.column(j));
                if d.apply(ab) != hh.mul(&di, &dj) {
                    return Err(Error::InvalidHopf(format!("coproduct not multiplicative on e{i} e{j}")));
                }
                let ei = e.get(0, i);
                let ej = e.get(0, j);
                if e.apply(ab)[0] != ei * ej {
                    return Err(Error::InvalidHopf(format!("counit not multiplicative on e{i} e{j}")));
                }
            }
        }
        let m = a.mult_map();
        let ue = a.unit_map().compose(e);
        if m.compose(&self.antipode.tensor(&id)).compose(d) != ue || m.compose(&id.tensor(&self.antipode)).compose(d) != ue
        {
            return bad("antipode axiom fails");
        }
        if self.antipode.compose(&self.antipode_inverse) != id || self.antipode_inverse.compose(&self.antipode) != id {
            return bad("antipode inverse is not inverse to the antipode");
        }
        Ok(())
    }

    /// The group algebra `kG`: group-likes `Δg = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
    pub fn group_algebra(field: FieldSpec, g: &FiniteGroup) -> Result<Self> {
        let n = g.order();
        let mut structure = vec![field.zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                structure[(a * n + b) * n + g.mul(a, b)] = field.one();
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        let algebra = Algebra::new(field, n, structure, unit)?;
        let mut coproduct = LinearMap::zero(field, n * n, n);
        let mut antipode = LinearMap::zero(field, n, n);
        for a in 0..n {
            coproduct.set(a * n + a, a, field.one());
            antipode.set(g.inverse(a), a, field.one());
        }
        let counit = LinearMap::functional(field, vec![field.one(); n]);
        Self::new(algebra, coproduct, counit, antipode, None)
    }

    /// The function algebra `k^G` with `Δδ_g = Σ_{ab=g} δ_a⊗δ_b`, `ε(δ_g) = [g = e]`,
    /// `S δ_g = δ_{g⁻¹}`.
    pub fn function_algebra(field: FieldSpec, g: &FiniteGroup) -> Result<Self> {
        let n = g.order();
        let algebra = Algebra::function_algebra(field, n);
        let mut coproduct = LinearMap::zero(field, n * n, n);
        let mut antipode = LinearMap::zero(field, n, n);
        for a in 0..n {
            for b in 0..n {
                coproduct.set(a * n + b, g.mul(a, b), field.one());
            }
            antipode.set(g.inverse(a), a, field.one());
        }
        let mut eps = vec![field.zero(); n];
        eps[0] = field.one();
        Self::new(algebra, coproduct, LinearMap::functional(field, eps), antipode, None)
    }

    /// The one-dimensional Hopf algebra `k`.
    pub fn trivial(field: FieldSpec) -> Self {
        Self::group_algebra(field, &FiniteGroup::cyclic(1)).expect("trivial group")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn coproduct(&self) -> &LinearMap {
        &self.coproduct
    }

    pub fn counit(&self) -> &LinearMap {
        &self.counit
    }

    pub fn antipode(&self) -> &LinearMap {
        &self.antipode
    }

    pub fn antipode_inverse(&self) -> &LinearMap {
        &self.antipode_inverse
    }

    pub fn unit(&self) -> &[crate::linalg::Scalar] {
        self.algebra.unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_and_function_hopf_algebras() {
        for f in [FieldSpec::gf5(), FieldSpec::gf7(), FieldSpec::rationals()] {
            for n in 1..4 {
                let g = FiniteGroup::cyclic(n);
                HopfData::group_algebra(f, &g).unwrap();
                HopfData::function_algebra(f, &g).unwrap();
            }
        }
    }

    #[test]
    fn broken_antipode_rejected() {
        let f = FieldSpec::gf5();
        let h = HopfData::group_algebra(f, &FiniteGroup::cyclic(3)).unwrap();
        let err = HopfData::new(
            h.algebra().clone(),
            h.coproduct().clone(),
            h.counit().clone(),
            LinearMap::identity(f, 3),
            None,
        );
        assert!(matches!(err, Err(Error::InvalidHopf(_))));
    }

    #[test]
    fn broken_coproduct_rejected() {
        let f = FieldSpec::gf5();
        let h = HopfData::group_algebra(f, &FiniteGroup::cyclic(2)).unwrap();
        let mut d = h.coproduct().clone();
        d.set(1, 1, f.one());
        assert!(HopfData::new(h.algebra().clone(), d, h.counit().clone(), h.antipode().clone(), None).is_err());
    }
}
