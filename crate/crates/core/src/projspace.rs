//! The finite space ℙ^{N-1}(ℤ/2), its open-set lattice Γ_N and the embedding
//! of finite covered sets.
//!
//! A point is an `N`-bit word with at least one bit set. An open set is a
//! bitset over the `2^N - 1` points (bit `z` for the point with word `z`).

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::lattice::{self, Antichain, LatticeOracle, Subset, MAX_GENERATORS};

/// Default cap for [`enumerate_topology`]. The pairwise closure is quadratic in
/// |Γ_N|, which rules out `N = 6` (|Γ_6| ≈ 7.8 million).
pub const DEFAULT_TOPOLOGY_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(u32);

impl Point {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n == 0 || bits == 0 || u64::from(bits) >= 1u64 << n {
            return Err(Error::Format(format!("{bits:#b} is not a point for N = {n}")));
        }
        Ok(Point(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Coordinates `(z_1, ..., z_N)`.
    pub fn coordinates(self, n: usize) -> Vec<u8> {
        (0..n).map(|i| (self.0 >> i & 1) as u8).collect()
    }
}

/// All points, in increasing word order.
pub fn points(n: usize) -> Vec<Point> {
    (1..(1u32 << n)).map(Point).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenSet {
    n: u8,
    points: u64,
}

impl OpenSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS);
        OpenSet { n: n as u8, points: 0 }
    }

    pub fn whole(n: usize) -> Self {
        let all = points(n).into_iter().fold(0u64, |acc, p| acc | 1 << p.0);
        OpenSet { n: n as u8, points: all }
    }

    pub fn generator_count(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.points
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points >> p.0 & 1 == 1
    }

    pub fn points(&self) -> Vec<Point> {
        points(self.n as usize).into_iter().filter(|p| self.contains(*p)).collect()
    }

    pub fn len(&self) -> usize {
        self.points.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    pub fn intersection(&self, other: &OpenSet) -> OpenSet {
        OpenSet { n: self.n, points: self.points & other.points }
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet { n: self.n, points: self.points | other.points }
    }

    pub fn is_subset_of(&self, other: &OpenSet) -> bool {
        self.points & !other.points == 0
    }

    /// The canonical antichain `L(U)`.
    pub fn antichain(&self) -> Antichain {
        antichain_from_open(self)
    }
}

/// The subbasic open `A_i = {z : z_i ≠ 0}`.
pub fn subbasic(i: usize, n: usize) -> Result<OpenSet> {
    if n == 0 || n > MAX_GENERATORS {
        return Err(Error::CapExceeded { n, cap: MAX_GENERATORS });
    }
    if i == 0 || i > n {
        return Err(Error::OutOfRange { index: i, n });
    }
    let bits = points(n)
        .into_iter()
        .filter(|p| p.0 >> (i - 1) & 1 == 1)
        .fold(0u64, |acc, p| acc | 1 << p.0);
    Ok(OpenSet { n: n as u8, points: bits })
}

/// The open-set oracle: generators `A_i`, meet ∩, join ∪, order ⊆.
pub struct OpenSetOracle {
    n: usize,
    generators: Vec<OpenSet>,
}

impl OpenSetOracle {
    pub fn new(n: usize) -> Result<Self> {
        let generators = (1..=n).map(|i| subbasic(i, n)).collect::<Result<_>>()?;
        Ok(OpenSetOracle { n, generators })
    }
}

impl LatticeOracle for OpenSetOracle {
    type Element = OpenSet;

    fn generator_count(&self) -> usize {
        self.n
    }

    fn generator(&self, i: usize) -> OpenSet {
        self.generators[i - 1]
    }

    fn meet(&self, a: &OpenSet, b: &OpenSet) -> Result<OpenSet> {
        Ok(a.intersection(b))
    }

    fn join(&self, a: &OpenSet, b: &OpenSet) -> Result<OpenSet> {
        Ok(a.union(b))
    }

    fn leq(&self, a: &OpenSet, b: &OpenSet) -> Result<bool> {
        Ok(a.is_subset_of(b))
    }

    fn bottom(&self) -> OpenSet {
        OpenSet::empty(self.n)
    }
}

/// `R(l)`: points `z` whose support contains some member of `l`.
pub fn open_from_antichain(l: &Antichain) -> OpenSet {
    let n = l.generator_count();
    let members = l.members();
    let bits = points(n)
        .into_iter()
        .filter(|p| members.iter().any(|u| u.is_subset_of(Subset::from_bits(p.0))))
        .fold(0u64, |acc, p| acc | 1 << p.0);
    OpenSet { n: n as u8, points: bits }
}

/// `L(U)`: the minimal index sets `u` with `⋂_{i∈u} A_i ⊆ U`.
///
/// `⋂_{i∈u} A_i` is the set of words containing `u`, so the test reduces to
/// membership of every superset word.
pub fn antichain_from_open(u: &OpenSet) -> Antichain {
    let n = u.generator_count();
    let inside: Vec<Subset> = lattice::nonempty_subsets(n)
        .into_iter()
        .filter(|s| {
            points(n)
                .into_iter()
                .filter(|p| s.is_subset_of(Subset::from_bits(p.0)))
                .all(|p| u.contains(p))
        })
        .collect();
    lattice::min_antichain(n, inside).expect("subsets of 1..=n")
}

/// Closes `{A_1, ..., A_N, ∅}` under pairwise ∪ and ∩ to a fixpoint. The
/// result is sorted by canonical antichain.
pub fn enumerate_topology(n: usize, cap: usize) -> Result<Vec<OpenSet>> {
    let cap = cap.min(MAX_GENERATORS);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut seen: HashSet<OpenSet> = HashSet::new();
    let mut all: Vec<OpenSet> = Vec::new();
    let mut frontier: Vec<OpenSet> = Vec::new();
    let push = |o: OpenSet, seen: &mut HashSet<OpenSet>, all: &mut Vec<OpenSet>, frontier: &mut Vec<OpenSet>| {
        if seen.insert(o) {
            all.push(o);
            frontier.push(o);
        }
    };
    push(OpenSet::empty(n), &mut seen, &mut all, &mut frontier);
    for i in 1..=n {
        push(subbasic(i, n)?, &mut seen, &mut all, &mut frontier);
    }
    while let Some(o) = frontier.pop() {
        let snapshot: Vec<OpenSet> = all.clone();
        for other in snapshot {
            push(o.union(&other), &mut seen, &mut all, &mut frontier);
            push(o.intersection(&other), &mut seen, &mut all, &mut frontier);
        }
    }
    let mut keyed: Vec<(Antichain, OpenSet)> = all.into_iter().map(|o| (o.antichain(), o)).collect();
    keyed.sort_by_key(|a| (a.0.len(), a.0.members()));
    Ok(keyed.into_iter().map(|(_, o)| o).collect())
}

/// A finite set `X = U_1 ∪ ... ∪ U_N`, with elements indexed `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveredSet {
    pub len: usize,
    pub covers: Vec<BTreeSet<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// Equivalence classes of elements with equal membership signature.
    pub classes: Vec<Vec<usize>>,
    /// The signature of each class as a point of ℙ^{N-1}(ℤ/2).
    pub points: Vec<Point>,
    /// Whether the covers are in generic position.
    pub generic: bool,
}

/// Quotients `X` by equal cover membership and maps each class to its signature.
pub fn quotient_and_embed(x: &CoveredSet) -> Result<Embedding> {
    let n = x.covers.len();
    if n == 0 || n > MAX_GENERATORS {
        return Err(Error::CapExceeded { n, cap: MAX_GENERATORS });
    }
    if let Some(bad) = x.covers.iter().flatten().find(|&&e| e >= x.len) {
        return Err(Error::Format(format!("cover member {bad} outside X")));
    }
    let mut by_signature: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for e in 0..x.len {
        let sig = x
            .covers
            .iter()
            .enumerate()
            .filter(|(_, u)| u.contains(&e))
            .fold(0u32, |acc, (i, _)| acc | 1 << i);
        if sig == 0 {
            return Err(Error::Covering(format!("element {e} lies in no cover set")));
        }
        by_signature.entry(sig).or_default().push(e);
    }
    let signatures: Vec<u32> = by_signature.keys().copied().collect();
    let generic = generic_position(n, &signatures);
    let (points, classes) = by_signature.into_iter().map(|(s, c)| (Point(s), c)).unzip();
    Ok(Embedding { classes, points, generic })
}

/// Every `⋂_{i∈Λ} U_i ∩ ⋂_{j∈Γ} (X \ U_j)` with nonempty `Λ` and `Λ ∩ Γ = ∅` is nonempty.
fn generic_position(n: usize, signatures: &[u32]) -> bool {
    let full = (1u32 << n) - 1;
    (1..=full).all(|lambda| {
        let rest = full & !lambda;
        // iterate over all Γ ⊆ rest
        let mut gamma = rest;
        loop {
            if !signatures.iter().any(|&s| s & lambda == lambda && s & gamma == 0) {
                return false;
            }
            if gamma == 0 {
                return true;
            }
            gamma = (gamma - 1) & rest;
        }
    })
}

impl Embedding {
    /// Opens of the quotient `X/∼` in the topology generated by the images of
    /// the `U_i`, as bitsets over class indices.
    pub fn quotient_topology(&self, n: usize) -> BTreeSet<u64> {
        let gens: Vec<u64> = (0..n)
            .map(|i| {
                self.points
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.0 >> i & 1 == 1)
                    .fold(0u64, |acc, (c, _)| acc | 1 << c)
            })
            .collect();
        let mut opens: BTreeSet<u64> = BTreeSet::new();
        opens.insert(0);
        opens.extend(gens.iter().copied());
        loop {
            let cur: Vec<u64> = opens.iter().copied().collect();
            let before = opens.len();
            for a in &cur {
                for b in &cur {
                    opens.insert(a | b);
                    opens.insert(a & b);
                }
            }
            if opens.len() == before {
                return opens;
            }
        }
    }

    /// `ξ⁻¹(V)` as a bitset over class indices.
    pub fn preimage(&self, v: &OpenSet) -> u64 {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| v.contains(**p))
            .fold(0u64, |acc, (c, _)| acc | 1 << c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate_antichains, l_map, r_map, DEFAULT_CAP};

    fn pt(n: usize, coords: &[u8]) -> Point {
        let bits = coords.iter().enumerate().fold(0u32, |acc, (i, &z)| acc | (z as u32) << i);
        Point::new(n, bits).unwrap()
    }

    #[test]
    fn subbasic_examples() {
        assert_eq!(subbasic(1, 1).unwrap().points(), vec![pt(1, &[1])]);
        assert_eq!(subbasic(1, 2).unwrap().points(), vec![pt(2, &[1, 0]), pt(2, &[1, 1])]);
        for n in 1..=5 {
            let all = (1..=n)
                .map(|i| subbasic(i, n).unwrap())
                .fold(OpenSet::whole(n), |a, b| a.intersection(&b));
            assert_eq!(all.points(), vec![pt(n, &vec![1; n])]);
            for i in 1..=n {
                assert_eq!(subbasic(i, n).unwrap().len(), 1 << (n - 1));
            }
        }
        assert!(subbasic(3, 2).is_err());
    }

    #[test]
    fn topology_n2() {
        let t = enumerate_topology(2, DEFAULT_TOPOLOGY_CAP).unwrap();
        assert_eq!(t.len(), 5);
        let a1 = subbasic(1, 2).unwrap();
        let a2 = subbasic(2, 2).unwrap();
        let expected: HashSet<OpenSet> =
            [OpenSet::empty(2), a1, a2, a1.intersection(&a2), a1.union(&a2)].into_iter().collect();
        assert_eq!(t.iter().copied().collect::<HashSet<_>>(), expected);
        assert!(t.contains(&OpenSet::whole(2)));
    }

    #[test]
    fn topology_counts_match_antichains() {
        for n in 1..=4 {
            assert_eq!(
                enumerate_topology(n, DEFAULT_TOPOLOGY_CAP).unwrap().len(),
                enumerate_antichains(n, DEFAULT_CAP).unwrap().len()
            );
        }
        assert!(enumerate_topology(6, DEFAULT_TOPOLOGY_CAP).is_err());
    }

    #[test]
    fn open_antichain_examples() {
        let l = Antichain::from_lists(3, &[vec![1, 2]]).unwrap();
        assert_eq!(open_from_antichain(&l).points(), vec![pt(3, &[1, 1, 0]), pt(3, &[1, 1, 1])]);
        assert!(open_from_antichain(&Antichain::empty(3)).is_empty());
        assert_eq!(antichain_from_open(&OpenSet::empty(3)), Antichain::empty(3));
        assert_eq!(antichain_from_open(&OpenSet::whole(2)), Antichain::top(2));
        for u in enumerate_topology(3, DEFAULT_TOPOLOGY_CAP).unwrap() {
            assert_eq!(open_from_antichain(&antichain_from_open(&u)), u);
        }
    }

    #[test]
    fn generic_oracle_maps_agree_with_direct_maps() {
        let o = OpenSetOracle::new(3).unwrap();
        for l in enumerate_antichains(3, DEFAULT_CAP).unwrap() {
            let u = r_map(&o, &l).unwrap();
            assert_eq!(u, open_from_antichain(&l));
            assert_eq!(l_map(&o, &u).unwrap(), l);
        }
        let two = OpenSetOracle::new(2).unwrap();
        let l = Antichain::from_lists(2, &[vec![1, 2]]).unwrap();
        assert_eq!(r_map(&two, &l).unwrap().points(), vec![pt(2, &[1, 1])]);
    }

    #[test]
    fn embedding_of_the_space_itself() {
        let n = 3;
        let covers = (1..=n)
            .map(|i| {
                points(n)
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.bits() >> (i - 1) & 1 == 1)
                    .map(|(e, _)| e)
                    .collect()
            })
            .collect();
        let e = quotient_and_embed(&CoveredSet { len: 7, covers }).unwrap();
        assert!(e.generic);
        assert_eq!(e.points, points(3));
    }

    #[test]
    fn embedding_degenerate_cases() {
        let one = CoveredSet { len: 1, covers: vec![[0].into(), [0].into()] };
        let e = quotient_and_embed(&one).unwrap();
        assert_eq!(e.classes, vec![vec![0]]);
        assert_eq!(e.points, vec![pt(2, &[1, 1])]);
        assert!(!e.generic);

        let split = CoveredSet { len: 2, covers: vec![[0].into(), [1].into()] };
        let e = quotient_and_embed(&split).unwrap();
        assert_eq!(e.points, vec![pt(2, &[1, 0]), pt(2, &[0, 1])]);
        assert!(!e.generic);

        let bad = CoveredSet { len: 2, covers: vec![[0].into()] };
        assert!(matches!(quotient_and_embed(&bad), Err(Error::Covering(_))));
    }

    #[test]
    fn quotient_opens_are_pulled_back_opens() {
        let x = CoveredSet {
            len: 5,
            covers: vec![[0, 1, 2].into(), [2, 3].into(), [3, 4, 0].into()],
        };
        let e = quotient_and_embed(&x).unwrap();
        let opens = e.quotient_topology(3);
        let pulled: BTreeSet<u64> = enumerate_topology(3, DEFAULT_TOPOLOGY_CAP)
            .unwrap()
            .iter()
            .map(|v| e.preimage(v))
            .collect();
        assert_eq!(opens, pulled);
    }
}
