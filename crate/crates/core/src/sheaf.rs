//! Flabby sheaves of algebras on `ℙ^{N-1}(ℤ/2)`, indexed by canonical antichains.

use std::collections::BTreeMap;

use crate::algebra::{covering_check, quotient_algebra, Algebra, AlgebraMorphism, CoveringData};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_antichains, Antichain, Subset};
use crate::linalg::{FieldSpec, LinearMap, Subspace};
use crate::projspace::{open_from_antichain, OpenSet};

/// Largest `N` for which every irredundant cover is checked.
pub const ALL_COVERS_MAX_N: usize = 3;

/// A presheaf of algebras: a section algebra per open set and a restriction
/// matrix per comparable pair `U ⊆ U'`, identities included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafData {
    n: usize,
    field: FieldSpec,
    sections: BTreeMap<Antichain, Algebra>,
    // keyed by (larger, smaller)
    restrictions: BTreeMap<(Antichain, Antichain), LinearMap>,
}

impl SheafData {
    /// Assembles and validates a presheaf.
    pub fn new(
        n: usize,
        field: FieldSpec,
        sections: BTreeMap<Antichain, Algebra>,
        restrictions: BTreeMap<(Antichain, Antichain), LinearMap>,
        cap: usize,
    ) -> Result<Self> {
        let s = SheafData { n, field, sections, restrictions };
        s.validate(cap)?;
        Ok(s)
    }

    /// Checks that every open has a section, every comparable pair a
    /// restriction that is an algebra map, identities, functoriality, and a
    /// zero section over the empty set.
    pub fn validate(&self, cap: usize) -> Result<()> {
        let opens = enumerate_antichains(self.n, cap)?;
        if self.sections.len() != opens.len() {
            return Err(Error::InvalidSheaf(format!(
                "{} sections for {} open sets",
                self.sections.len(),
                opens.len()
            )));
        }
        for u in &opens {
            let a = self
                .sections
                .get(u)
                .ok_or_else(|| Error::InvalidSheaf(format!("no section over {u}")))?;
            if a.field() != self.field {
                return Err(Error::InvalidSheaf(format!("section over {u} is over {}", a.field())));
            }
        }
        if !self.section(&Antichain::empty(self.n)).is_zero_algebra() {
            return Err(Error::InvalidSheaf("section over the empty set is not the zero algebra".into()));
        }
        let pairs = comparable_pairs(&opens)?;
        if self.restrictions.len() != pairs.len() {
            return Err(Error::InvalidSheaf(format!(
                "{} restrictions for {} comparable pairs",
                self.restrictions.len(),
                pairs.len()
            )));
        }
        for (big, small) in &pairs {
            let m = self
                .restrictions
                .get(&(*big, *small))
                .ok_or_else(|| Error::InvalidSheaf(format!("no restriction {big} -> {small}")))?;
            AlgebraMorphism::new(self.section(big).clone(), self.section(small).clone(), m.clone())
                .map_err(|e| Error::InvalidSheaf(format!("restriction {big} -> {small}: {e}")))?;
            if big == small && *m != LinearMap::identity(self.field, m.source_dim()) {
                return Err(Error::InvalidSheaf(format!("restriction {big} -> {big} is not the identity")));
            }
        }
        for (a, b) in &pairs {
            for c in &opens {
                if c.leq(b)? {
                    let lhs = self.restriction(b, c).compose(self.restriction(a, b));
                    if &lhs != self.restriction(a, c) {
                        return Err(Error::InvalidSheaf(format!("restrictions {a} -> {b} -> {c} do not compose")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn opens(&self) -> Vec<Antichain> {
        self.sections.keys().copied().collect()
    }

    pub fn sections(&self) -> &BTreeMap<Antichain, Algebra> {
        &self.sections
    }

    pub fn restrictions(&self) -> &BTreeMap<(Antichain, Antichain), LinearMap> {
        &self.restrictions
    }

    pub fn section(&self, u: &Antichain) -> &Algebra {
        &self.sections[u]
    }

    /// The restriction `𝒫(big) → 𝒫(small)`; panics if `small ⊄ big`.
    pub fn restriction(&self, big: &Antichain, small: &Antichain) -> &LinearMap {
        &self.restrictions[&(*big, *small)]
    }

    pub fn restriction_morphism(&self, big: &Antichain, small: &Antichain) -> Result<AlgebraMorphism> {
        let m = self
            .restrictions
            .get(&(*big, *small))
            .ok_or_else(|| Error::InvalidSheaf(format!("{small} is not contained in {big}")))?;
        AlgebraMorphism::new_unchecked(self.section(big).clone(), self.section(small).clone(), m.clone())
    }

    /// Replaces one section and the restrictions touching it; used to build counterexamples.
    pub fn with_section_unchecked(
        mut self,
        u: Antichain,
        algebra: Algebra,
        restrictions: BTreeMap<(Antichain, Antichain), LinearMap>,
    ) -> Self {
        self.sections.insert(u, algebra);
        self.restrictions.extend(restrictions);
        self
    }
}

fn comparable_pairs(opens: &[Antichain]) -> Result<Vec<(Antichain, Antichain)>> {
    let mut pairs = Vec::new();
    for a in opens {
        for b in opens {
            if b.leq(a)? {
                pairs.push((*a, *b));
            }
        }
    }
    Ok(pairs)
}

/// The sheaf `U ↦ P / R(U)` of a covering, with quotient restrictions.
pub fn from_covering(c: &CoveringData, cap: usize) -> Result<SheafData> {
    if !c.distributivity.is_distributive() {
        return Err(Error::NotDistributive);
    }
    if !c.weak {
        return Err(Error::Covering("kernels do not intersect to zero".into()));
    }
    let n = c.len();
    let p = &c.algebra;
    let opens = enumerate_antichains(n, cap)?;
    let mut quotients = BTreeMap::new();
    for u in &opens {
        quotients.insert(*u, quotient_algebra(p, &c.ideal_of(u)?)?);
    }
    let mut restrictions = BTreeMap::new();
    for (big, small) in comparable_pairs(&opens)? {
        let m = quotients[&small].projection.matrix().compose(&quotients[&big].section);
        restrictions.insert((big, small), m);
    }
    let sections = quotients.into_iter().map(|(u, q)| (u, q.algebra)).collect();
    Ok(SheafData { n, field: p.field(), sections, restrictions })
}

/// Global sections with the restrictions to the subbasic opens `A_i`.
pub fn to_covering(s: &SheafData, cap: usize) -> Result<CoveringData> {
    let top = Antichain::top(s.n);
    let maps = (1..=s.n)
        .map(|i| s.restriction_morphism(&top, &Antichain::singleton(s.n, Subset::singleton(i))))
        .collect::<Result<Vec<_>>>()?;
    covering_check(s.section(&top), maps, cap)
}

/// The first comparable pair whose restriction is not surjective.
pub fn verify_flabby(s: &SheafData) -> Option<(Antichain, Antichain)> {
    s.restrictions.iter().find(|(_, m)| !m.is_surjective()).map(|(k, _)| *k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    Basis,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GluingFailure {
    /// Two distinct sections agree on every member of the cover.
    Uniqueness,
    /// A compatible family has no gluing.
    Existence,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SheafWitness {
    pub open: Antichain,
    pub cover: Vec<Antichain>,
    pub failure: GluingFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SheafVerdict {
    pub covers_checked: usize,
    pub witness: Option<SheafWitness>,
}

impl SheafVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that `𝒫(U)` maps isomorphically onto the equalizer of every cover
/// of every open `U`: basic covers `{B_u : u ∈ U}` or all irredundant covers.
pub fn verify_sheaf_axiom(s: &SheafData, mode: CoverMode) -> Result<SheafVerdict> {
    if mode == CoverMode::All && s.n > ALL_COVERS_MAX_N {
        return Err(Error::CapExceeded { n: s.n, cap: ALL_COVERS_MAX_N });
    }
    let opens = s.opens();
    let mut covers_checked = 0;
    for u in &opens {
        let covers = match mode {
            CoverMode::Basis => vec![u.members().into_iter().map(|m| Antichain::singleton(s.n, m)).collect()],
            CoverMode::All => irredundant_covers(&opens, u)?,
        };
        for cover in covers {
            covers_checked += 1;
            if let Some(failure) = check_cover(s, u, &cover)? {
                return Ok(SheafVerdict { covers_checked, witness: Some(SheafWitness { open: *u, cover, failure }) });
            }
        }
    }
    Ok(SheafVerdict { covers_checked, witness: None })
}

fn check_cover(s: &SheafData, u: &Antichain, cover: &[Antichain]) -> Result<Option<GluingFailure>> {
    let dims: Vec<usize> = cover.iter().map(|v| s.section(v).dim()).collect();
    let total: usize = dims.iter().sum();
    let restr: Vec<&LinearMap> = cover.iter().map(|v| s.restriction(u, v)).collect();
    let rho = LinearMap::stack(s.field, s.section(u).dim(), &restr);
    if !rho.is_injective() {
        return Ok(Some(GluingFailure::Uniqueness));
    }
    let mut constraints = Vec::new();
    let mut offsets = Vec::with_capacity(dims.len());
    let mut off = 0;
    for d in &dims {
        offsets.push(off);
        off += d;
    }
    for j in 0..cover.len() {
        for k in j + 1..cover.len() {
            let w = cover[j].meet(&cover[k])?;
            let dw = s.section(&w).dim();
            let mut c = LinearMap::zero(s.field, dw, total);
            let left = s.restriction(&cover[j], &w);
            let right = s.restriction(&cover[k], &w);
            for r in 0..dw {
                for i in 0..dims[j] {
                    c.set(r, offsets[j] + i, left.get(r, i).clone());
                }
                for i in 0..dims[k] {
                    c.set(r, offsets[k] + i, right.get(r, i).neg_ref());
                }
            }
            constraints.push(c);
        }
    }
    let refs: Vec<&LinearMap> = constraints.iter().collect();
    let equalizer = if refs.is_empty() {
        Subspace::full(s.field, total)
    } else {
        LinearMap::stack(s.field, total, &refs).kernel()
    };
    if rho.rank() != equalizer.dim() {
        return Ok(Some(GluingFailure::Existence));
    }
    Ok(None)
}

/// Families of nonempty opens inside `u` with union `u` and no redundant member.
fn irredundant_covers(opens: &[Antichain], u: &Antichain) -> Result<Vec<Vec<Antichain>>> {
    let target = open_from_antichain(u);
    let mut candidates: Vec<(Antichain, OpenSet)> = Vec::new();
    for v in opens {
        let o = open_from_antichain(v);
        if !o.is_empty() && o.is_subset_of(&target) {
            candidates.push((*v, o));
        }
    }
    let mut out = Vec::new();
    if target.is_empty() {
        out.push(Vec::new());
        return Ok(out);
    }
    let mut chosen: Vec<usize> = Vec::new();
    search(&candidates, target.bits(), 0, 0, &mut chosen, &mut out);
    Ok(out)
}

fn search(
    cands: &[(Antichain, OpenSet)],
    target: u64,
    start: usize,
    covered: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<Antichain>>,
) {
    if covered == target {
        let irredundant = chosen.iter().all(|&i| {
            let rest = chosen.iter().filter(|&&j| j != i).fold(0u64, |acc, &j| acc | cands[j].1.bits());
            rest != target
        });
        if irredundant {
            out.push(chosen.iter().map(|&i| cands[i].0).collect());
        }
        return;
    }
    // each member of an irredundant cover owns a point, so the size is bounded
    if chosen.len() >= target.count_ones() as usize {
        return;
    }
    for i in start..cands.len() {
        let bits = cands[i].1.bits();
        if bits & !covered == 0 {
            continue;
        }
        chosen.push(i);
        search(cands, target, i + 1, covered | bits, chosen, out);
        chosen.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RoundTrip {
    pub ok: bool,
    pub detail: String,
}

impl RoundTrip {
    fn pass() -> Self {
        RoundTrip { ok: true, detail: "canonical maps are isomorphisms".into() }
    }

    fn fail(detail: String) -> Self {
        RoundTrip { ok: false, detail }
    }
}

/// Covering → sheaf → covering: the canonical maps `P/J_i → P_i` are
/// isomorphisms compatible with the projections.
pub fn roundtrip_covering(c: &CoveringData, cap: usize) -> Result<RoundTrip> {
    let s = from_covering(c, cap)?;
    let back = to_covering(&s, cap)?;
    if back.algebra != c.algebra {
        return Ok(RoundTrip::fail("global sections differ from the covered algebra".into()));
    }
    if !back.is_covering() {
        return Ok(RoundTrip::fail("recovered family is not a covering".into()));
    }
    for (i, (orig, rec)) in c.maps.iter().zip(&back.maps).enumerate() {
        let psi = orig.matrix().compose(&rec.linear_section()?);
        let iso = match AlgebraMorphism::new(rec.target().clone(), orig.target().clone(), psi.clone()) {
            Ok(m) => m,
            Err(e) => return Ok(RoundTrip::fail(format!("piece {}: {e}", i + 1))),
        };
        if !iso.is_isomorphism() {
            return Ok(RoundTrip::fail(format!("piece {}: canonical map not bijective", i + 1)));
        }
        if psi.compose(rec.matrix()) != *orig.matrix() {
            return Ok(RoundTrip::fail(format!("piece {}: projections do not match", i + 1)));
        }
    }
    Ok(RoundTrip::pass())
}

/// Sheaf → covering → sheaf: `𝒫(top)/R(U) → 𝒫(U)` is an isomorphism for every
/// open and the isomorphisms commute with restrictions.
pub fn roundtrip_sheaf(s: &SheafData, cap: usize) -> Result<RoundTrip> {
    let c = to_covering(s, cap)?;
    if !c.is_covering() {
        return Ok(RoundTrip::fail("global sections do not form a covering".into()));
    }
    let back = from_covering(&c, cap)?;
    let top = Antichain::top(s.n);
    let mut theta = BTreeMap::new();
    for u in s.opens() {
        let q = quotient_algebra(&c.algebra, &c.ideal_of(&u)?)?;
        let m = s.restriction(&top, &u).compose(&q.section);
        if back.section(&u) != &q.algebra {
            return Ok(RoundTrip::fail(format!("section over {u} rebuilt inconsistently")));
        }
        match AlgebraMorphism::new(q.algebra, s.section(&u).clone(), m.clone()) {
            Ok(iso) if iso.is_isomorphism() => {}
            Ok(_) => return Ok(RoundTrip::fail(format!("section over {u} is not isomorphic to its quotient"))),
            Err(e) => return Ok(RoundTrip::fail(format!("section over {u}: {e}"))),
        }
        theta.insert(u, m);
    }
    for ((big, small), r) in &s.restrictions {
        let lhs = theta[small].compose(back.restriction(big, small));
        let rhs = r.compose(&theta[big]);
        if lhs != rhs {
            return Ok(RoundTrip::fail(format!("restriction {big} -> {small} not natural")));
        }
    }
    Ok(RoundTrip::pass())
}

/// A family of algebra maps between two sheaves on the same space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafMorphism {
    pub components: BTreeMap<Antichain, LinearMap>,
}

impl SheafMorphism {
    /// Checks every component is an algebra map and every naturality square commutes.
    pub fn verify(&self, source: &SheafData, target: &SheafData) -> Result<()> {
        for u in source.opens() {
            let m = self
                .components
                .get(&u)
                .ok_or_else(|| Error::InvalidMorphism(format!("no component over {u}")))?;
            AlgebraMorphism::new(source.section(&u).clone(), target.section(&u).clone(), m.clone())?;
        }
        for (big, small) in source.restrictions.keys() {
            let lhs = self.components[small].compose(source.restriction(big, small));
            let rhs = target.restriction(big, small).compose(&self.components[big]);
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!("square {big} -> {small} does not commute")));
            }
        }
        Ok(())
    }
}

/// Induces `p + R_c(U) ↦ ξ(p) + R_d(U)` from a morphism of coverings, i.e.
/// `ξ: P → Q` and `ξ_i: P_i → Q_i` with `η_i ξ = ξ_i π_i`.
pub fn morphism_from_covering_morphism(
    c: &CoveringData,
    d: &CoveringData,
    xi: &AlgebraMorphism,
    pieces: &[AlgebraMorphism],
    cap: usize,
) -> Result<(SheafData, SheafData, SheafMorphism)> {
    if c.len() != d.len() || pieces.len() != c.len() {
        return Err(Error::GeneratorMismatch(c.len(), d.len()));
    }
    if xi.source() != &c.algebra || xi.target() != &d.algebra {
        return Err(Error::InvalidMorphism("ξ does not go between the covered algebras".into()));
    }
    for (i, x) in pieces.iter().enumerate() {
        if d.maps[i].matrix().compose(xi.matrix()) != x.matrix().compose(c.maps[i].matrix()) {
            return Err(Error::InvalidMorphism(format!("square for piece {} does not commute", i + 1)));
        }
    }
    let sc = from_covering(c, cap)?;
    let sd = from_covering(d, cap)?;
    let mut components = BTreeMap::new();
    for u in sc.opens() {
        let kc = c.ideal_of(&u)?;
        let kd = d.ideal_of(&u)?;
        if !kc.image_under(xi.matrix()).is_subspace_of(&kd) {
            return Err(Error::InvalidMorphism(format!("ξ does not map the ideal of {u} into the target ideal")));
        }
        let qc = quotient_algebra(&c.algebra, &kc)?;
        let qd = quotient_algebra(&d.algebra, &kd)?;
        components.insert(u, qd.projection.matrix().compose(xi.matrix()).compose(&qc.section));
    }
    let m = SheafMorphism { components };
    m.verify(&sc, &sd)?;
    Ok((sc, sd, m))
}

/// Extra consistency checks on a flabby sheaf: for all opens `U, U'`,
/// `ker π_{U∪U'} = ker π_U ∩ ker π_{U'}`, `ker π_{U∩U'} = ker π_U + ker π_{U'}`,
/// and dimensions grow with the open set. Returns the first failing pair.
pub fn kernel_identities(s: &SheafData) -> Result<Option<(Antichain, Antichain)>> {
    let top = Antichain::top(s.n);
    let opens = s.opens();
    let kernels: BTreeMap<Antichain, Subspace> =
        opens.iter().map(|u| (*u, s.restriction(&top, u).kernel())).collect();
    for a in &opens {
        for b in &opens {
            let join = a.join(b)?;
            let meet = a.meet(b)?;
            if kernels[&join] != kernels[a].intersection(&kernels[b])?
                || kernels[&meet] != kernels[a].sum(&kernels[b])?
            {
                return Ok(Some((*a, *b)));
            }
            if a.leq(b)? && s.section(a).dim() > s.section(b).dim() {
                return Ok(Some((*a, *b)));
            }
        }
    }
    Ok(None)
}
