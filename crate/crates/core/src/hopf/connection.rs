use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{tensor_vectors, AffineSystem, LinearMap, Scalar, Subspace};

use super::comodule::{canonical_map, coinvariants, CanonicalMap, ComoduleAlgebra};

/// Which identity of a strong connection is being checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Unital,
    RightColinear,
    LeftColinear,
    Splitting,
    /// `ℓ(h)⟨1⟩ ℓ(h)⟨2⟩ = ε(h)`.
    CounitProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionCheck {
    pub unital: bool,
    pub right_colinear: bool,
    pub left_colinear: bool,
    pub splitting: bool,
    pub counit_product: bool,
}

impl ConnectionCheck {
    pub fn passes(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<Axiom> {
        [
            (self.unital, Axiom::Unital),
            (self.right_colinear, Axiom::RightColinear),
            (self.left_colinear, Axiom::LeftColinear),
            (self.splitting, Axiom::Splitting),
            (self.counit_product, Axiom::CounitProduct),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, a)| a)
    }
}

fn check_shape(p: &ComoduleAlgebra, l: &LinearMap) -> Result<()> {
    let n = p.dim();
    if l.target_dim() != n * n || l.source_dim() != p.hopf().dim() || l.field() != p.field() {
        return Err(Error::Connection(format!(
            "expected a {}x{} matrix, got {}x{}",
            n * n,
            p.hopf().dim(),
            l.target_dim(),
            l.source_dim()
        )));
    }
    Ok(())
}

/// `p ⊗ q ↦ p q₍₀₎ ⊗ q₍₁₎`.
pub fn can_tilde(p: &ComoduleAlgebra) -> LinearMap {
    let a = p.algebra();
    a.mult_map().tensor(&p.hopf().algebra().identity()).compose(&a.identity().tensor(p.coaction()))
}

/// Checks the four defining identities and the derived `m ∘ ℓ = u ∘ ε`.
pub fn strong_connection_verify(p: &ComoduleAlgebra, l: &LinearMap) -> Result<ConnectionCheck> {
    check_shape(p, l)?;
    let f = p.field();
    let h = p.hopf();
    let a = p.algebra();
    let id_p = a.identity();
    let id_h = h.algebra().identity();
    let delta = h.coproduct();
    let unit_p = LinearMap::vector(f, a.unit().to_vec());

    let unital = l.apply(h.unit()) == tensor_vectors(a.unit(), a.unit());
    let right_colinear = id_p.tensor(p.coaction()).compose(l) == l.tensor(&id_h).compose(delta);
    let left_colinear = p.left_coaction().tensor(&id_p).compose(l) == id_h.tensor(l).compose(delta);
    let splitting = can_tilde(p).compose(l) == unit_p.tensor(&id_h);
    let counit_product = a.mult_map().compose(l) == unit_p.compose(h.counit());
    Ok(ConnectionCheck { unital, right_colinear, left_colinear, splitting, counit_product })
}

/// Result of the exact feasibility test for strong connections.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// A verified strong connection, when one exists.
    pub connection: Option<LinearMap>,
    /// The first equation block found inconsistent.
    pub inconsistent_block: Option<String>,
    pub unknowns: usize,
    pub rank: usize,
}

impl SolveOutcome {
    pub fn principal(&self) -> bool {
        self.connection.is_some()
    }
}

/// Decides principality by solving the affine system whose unknowns are the
/// entries `ℓ[r, h]` (index `r·dim H + h`, `r` a basis index of `P ⊗ P`).
pub fn strong_connection_solve(p: &ComoduleAlgebra) -> Result<SolveOutcome> {
    let f = p.field();
    let h = p.hopf();
    let a = p.algebra();
    let n = a.dim();
    let k = h.dim();
    let n2 = n * n;
    let var = |r: usize, x: usize| r * k + x;
    let mut sys = AffineSystem::new(f, n2 * k);
    let minus = |s: &Scalar| s.neg_ref();

    let uu = tensor_vectors(a.unit(), a.unit());
    for r in 0..n2 {
        let coeffs = (0..k).filter(|&x| !h.unit()[x].is_zero()).map(|x| (var(r, x), h.unit()[x].clone()));
        sys.add_equation(coeffs.collect::<Vec<_>>(), uu[r].clone(), "unital");
    }

    let dp = p.coaction();
    let delta = h.coproduct();
    // (id ⊗ Δ_P) ℓ = (ℓ ⊗ id) Δ, row (p1, p2, c) for each h
    for p1 in 0..n {
        for p2 in 0..n {
            for c in 0..k {
                for x in 0..k {
                    let mut row = Vec::new();
                    for q in 0..n {
                        let s = dp.get(p2 * k + c, q);
                        if !s.is_zero() {
                            row.push((var(p1 * n + q, x), s.clone()));
                        }
                    }
                    for y in 0..k {
                        let s = delta.get(y * k + c, x);
                        if !s.is_zero() {
                            row.push((var(p1 * n + p2, y), minus(s)));
                        }
                    }
                    sys.add_equation(row, f.zero(), "right-colinearity");
                }
            }
        }
    }

    let left = p.left_coaction();
    // (_PΔ ⊗ id) ℓ = (id ⊗ ℓ) Δ, row (c, p1, p2) for each h
    for c in 0..k {
        for p1 in 0..n {
            for p2 in 0..n {
                for x in 0..k {
                    let mut row = Vec::new();
                    for q in 0..n {
                        let s = left.get(c * n + p1, q);
                        if !s.is_zero() {
                            row.push((var(q * n + p2, x), s.clone()));
                        }
                    }
                    for y in 0..k {
                        let s = delta.get(c * k + y, x);
                        if !s.is_zero() {
                            row.push((var(p1 * n + p2, y), minus(s)));
                        }
                    }
                    sys.add_equation(row, f.zero(), "left-colinearity");
                }
            }
        }
    }

    let ct = can_tilde(p);
    for i in 0..n {
        for c in 0..k {
            let crow = ct.row(i * k + c);
            for x in 0..k {
                let row: Vec<_> =
                    (0..n2).filter(|&r| !crow[r].is_zero()).map(|r| (var(r, x), crow[r].clone())).collect();
                let rhs = if c == x { a.unit()[i].clone() } else { f.zero() };
                sys.add_equation(row, rhs, "splitting");
            }
        }
    }

    let rank = sys.rank();
    let unknowns = sys.unknowns();
    if let Some(bad) = sys.inconsistency() {
        return Ok(SolveOutcome { connection: None, inconsistent_block: Some(bad.block.clone()), unknowns, rank });
    }
    let x = sys.solve().expect("consistent system");
    let mut l = LinearMap::zero(f, n2, k);
    for r in 0..n2 {
        for c in 0..k {
            l.set(r, c, x[var(r, c)].clone());
        }
    }
    let check = strong_connection_verify(p, &l)?;
    if !check.passes() {
        return Err(Error::Connection(format!("solver output fails {:?}", check.first_failure())));
    }
    Ok(SolveOutcome { connection: Some(l), inconsistent_block: None, unknowns, rank })
}

fn require_verified(p: &ComoduleAlgebra, l: &LinearMap) -> Result<()> {
    let c = strong_connection_verify(p, l)?;
    match c.first_failure() {
        None => Ok(()),
        Some(a) => Err(Error::Connection(format!("not a strong connection: {a:?} fails"))),
    }
}

/// `p ⊗ h ↦ p ℓ(h)⟨1⟩ ⊗ ℓ(h)⟨2⟩` as a map `P ⊗ H → P ⊗ P`.
pub fn translation_lift(p: &ComoduleAlgebra, l: &LinearMap) -> LinearMap {
    let a = p.algebra();
    a.mult_map().tensor(&a.identity()).compose(&a.identity().tensor(l))
}

/// The inverse of `can`, as a map `P ⊗ H → P ⊗_B P`, together with whether it
/// is a two-sided inverse.
pub fn can_inverse_from_connection(p: &ComoduleAlgebra, l: &LinearMap) -> Result<(LinearMap, bool)> {
    require_verified(p, l)?;
    let cm: CanonicalMap = canonical_map(p)?;
    let inv = cm.balanced.projection.compose(&translation_lift(p, l));
    let n_ph = p.dim() * p.hopf().dim();
    let q = cm.balanced.projection.target_dim();
    let two_sided = cm.can.compose(&inv) == LinearMap::identity(p.field(), n_ph)
        && inv.compose(&cm.can) == LinearMap::identity(p.field(), q);
    Ok((inv, two_sided))
}

/// `(π ⊗ π) ∘ ℓ`.
pub fn quotient_connection(pi: &LinearMap, l: &LinearMap) -> LinearMap {
    pi.tensor(pi).compose(l)
}

/// The default unital functional: the dual basis element at the first nonzero
/// coordinate of the unit, normalized so that `φ(1) = 1`.
pub fn default_functional(p: &ComoduleAlgebra) -> Result<LinearMap> {
    let u = p.algebra().unit();
    let c = u
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::InvalidComodule("zero algebra has no unital functional".into()))?;
    let mut coeffs = vec![p.field().zero(); u.len()];
    coeffs[c] = u[c].inv().expect("nonzero");
    Ok(LinearMap::functional(p.field(), coeffs))
}

/// The splitting maps built from a strong connection.
#[derive(Clone, Debug)]
pub struct Splittings {
    /// `s: P → B ⊗ P ⊆ P ⊗ P`.
    pub s: LinearMap,
    /// `s′: P → P ⊗ B ⊆ P ⊗ P`.
    pub s_prime: LinearMap,
    /// `σ: P → B ⊆ P` for the given functional.
    pub sigma: LinearMap,
}

pub fn splittings(p: &ComoduleAlgebra, l: &LinearMap, phi: &LinearMap) -> Result<Splittings> {
    require_verified(p, l)?;
    let a = p.algebra();
    let h = p.hopf();
    let f = p.field();
    let (n, k) = (a.dim(), h.dim());
    if phi.source_dim() != n || phi.target_dim() != 1 || phi.apply(a.unit()) != vec![f.one()] {
        return Err(Error::Connection("φ must be a unital functional on P".into()));
    }
    let id = a.identity();
    let m = a.mult_map();
    let s = translation_lift(p, l).compose(p.coaction());
    let s_prime = id
        .tensor(&m)
        .compose(&l.tensor(&id))
        .compose(&h.antipode_inverse().tensor(&id))
        .compose(&LinearMap::flip(f, n, k))
        .compose(p.coaction());
    let sigma = m
        .compose(&id.tensor(&id.tensor(phi)))
        .compose(&id.tensor(l))
        .compose(p.coaction());
    Ok(Splittings { s, s_prime, sigma })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingCheck {
    pub s_splits: bool,
    pub s_in_b_tensor_p: bool,
    pub s_left_b_linear: bool,
    pub s_right_colinear: bool,
    pub s_prime_splits: bool,
    pub s_prime_in_p_tensor_b: bool,
    pub s_prime_right_b_linear: bool,
    pub s_prime_left_colinear: bool,
    pub sigma_retracts: bool,
    pub sigma_in_b: bool,
    pub sigma_left_b_linear: bool,
}

impl SplittingCheck {
    pub fn passes(&self) -> bool {
        [
            self.s_splits,
            self.s_in_b_tensor_p,
            self.s_left_b_linear,
            self.s_right_colinear,
            self.s_prime_splits,
            self.s_prime_in_p_tensor_b,
            self.s_prime_right_b_linear,
            self.s_prime_left_colinear,
            self.sigma_retracts,
            self.sigma_in_b,
            self.sigma_left_b_linear,
        ]
        .iter()
        .all(|&b| b)
    }
}

pub fn verify_splittings(p: &ComoduleAlgebra, sp: &Splittings) -> Result<SplittingCheck> {
    let a = p.algebra();
    let f = p.field();
    let id = a.identity();
    let id_h = p.hopf().algebra().identity();
    let m = a.mult_map();
    let b = coinvariants(p)?;
    let full = Subspace::full(f, a.dim());
    let bp = b.space.tensor(&full);
    let pb = full.tensor(&b.space);
    let all_in = |map: &LinearMap, s: &Subspace| map.columns().iter().all(|c| s.contains(c));
    let bvecs = b.space.basis();

    let s_left_b_linear = bvecs
        .iter()
        .all(|v| sp.s.compose(&a.left_mult(v)) == a.left_mult(v).tensor(&id).compose(&sp.s));
    let s_prime_right_b_linear = bvecs
        .iter()
        .all(|v| sp.s_prime.compose(&a.right_mult(v)) == id.tensor(&a.right_mult(v)).compose(&sp.s_prime));
    let sigma_left_b_linear =
        bvecs.iter().all(|v| sp.sigma.compose(&a.left_mult(v)) == a.left_mult(v).compose(&sp.sigma));
    let left = p.left_coaction();
    Ok(SplittingCheck {
        s_splits: m.compose(&sp.s) == id,
        s_in_b_tensor_p: all_in(&sp.s, &bp),
        s_left_b_linear,
        s_right_colinear: id.tensor(p.coaction()).compose(&sp.s) == sp.s.tensor(&id_h).compose(p.coaction()),
        s_prime_splits: m.compose(&sp.s_prime) == id,
        s_prime_in_p_tensor_b: all_in(&sp.s_prime, &pb),
        s_prime_right_b_linear,
        s_prime_left_colinear: left.tensor(&id).compose(&sp.s_prime) == id_h.tensor(&sp.s_prime).compose(&left),
        sigma_retracts: bvecs.iter().all(|v| &sp.sigma.apply(v) == v),
        sigma_in_b: all_in(&sp.sigma, &b.space),
        sigma_left_b_linear,
    })
}
