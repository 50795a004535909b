//! Antichain arithmetic and presentations of finitely generated lattices.
//!
//! Subsets of `{1..N}` are bitmasks and antichains are bitsets over those
//! masks, so `N` is limited to [`MAX_GENERATORS`]. Antichain members are
//! always nonempty; the empty antichain is the bottom element.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Largest generator count an [`Antichain`] can hold.
pub const MAX_GENERATORS: usize = 6;

/// Default enumeration cap for [`enumerate_antichains`].
pub const DEFAULT_CAP: usize = 6;

/// A subset of `{1..N}`; bit `i - 1` marks element `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(u32);

impl Subset {
    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a subset from 1-based indices, each of which must lie in `1..=n`.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::OutOfRange { index: i, n });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Subset(bits))
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << (i - 1))
    }

    pub fn full(n: usize) -> Self {
        Subset(((1u64 << n) - 1) as u32)
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }
}

/// Lexicographic order of the increasing index lists: `{1} < {1,2} < {2}`.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {
                    let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
                    if ia != ib {
                        return ia.cmp(&ib);
                    }
                    a &= a - 1;
                    b &= b - 1;
                }
            }
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// All nonempty subsets of `{1..n}` in lexicographic order.
pub fn nonempty_subsets(n: usize) -> Vec<Subset> {
    let mut v: Vec<Subset> = (1..(1u32 << n)).map(Subset).collect();
    v.sort();
    v
}

/// A canonical antichain of nonempty subsets of `{1..N}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain {
    n: u8,
    // bit s is set iff Subset(s) is a member
    members: u64,
}

impl Antichain {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Antichain { n: n as u8, members: 0 }
    }

    /// `{{1}, ..., {N}}`, the top element.
    pub fn top(n: usize) -> Self {
        let mut a = Self::empty(n);
        for i in 1..=n {
            a.members |= 1 << Subset::singleton(i).0;
        }
        a
    }

    pub fn singleton(n: usize, s: Subset) -> Self {
        let mut a = Self::empty(n);
        a.members = 1 << s.0;
        a
    }

    pub fn generator_count(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.0 < 64 && self.members >> s.0 & 1 == 1
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Vec<Subset> {
        let mut v: Vec<Subset> = (1..64u32).filter(|&s| self.members >> s & 1 == 1).map(Subset).collect();
        v.sort();
        v
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.members().into_iter().map(Subset::indices).collect()
    }

    /// Parses the nested-list form `[[1],[2,3]]`, canonicalizing via `min`.
    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let subsets = lists
            .iter()
            .map(|l| Subset::from_indices(n, l))
            .collect::<Result<Vec<_>>>()?;
        min_antichain(n, subsets)
    }

    /// JSON text of the canonical form, used as a map key.
    pub fn key(&self) -> String {
        serde_json::to_string(&self.to_lists()).expect("lists serialize")
    }

    pub fn from_key(n: usize, key: &str) -> Result<Self> {
        let lists: Vec<Vec<usize>> = serde_json::from_str(key)?;
        let a = Self::from_lists(n, &lists)?;
        if a.len() != lists.len() {
            return Err(Error::Format(format!("{key} is not an antichain")));
        }
        Ok(a)
    }

    pub fn meet(&self, other: &Antichain) -> Result<Antichain> {
        self.check_n(other)?;
        let mut out = Vec::new();
        for a in self.members() {
            for b in other.members() {
                out.push(a.union(b));
            }
        }
        min_antichain(self.n as usize, out)
    }

    pub fn join(&self, other: &Antichain) -> Result<Antichain> {
        self.check_n(other)?;
        Ok(min_of_bits(self.n, self.members | other.members))
    }

    /// `l1 ≤ l2` in the antichain order, i.e. `l1 ∨ l2 = l2`.
    pub fn leq(&self, other: &Antichain) -> Result<bool> {
        Ok(self.join(other)? == *other)
    }

    fn check_n(&self, other: &Antichain) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GeneratorMismatch(self.n as usize, other.n as usize));
        }
        Ok(())
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

impl Serialize for Antichain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let lists = self.to_lists();
        let mut seq = serializer.serialize_seq(Some(lists.len()))?;
        for l in &lists {
            seq.serialize_element(l)?;
        }
        seq.end()
    }
}

fn min_of_bits(n: u8, bits: u64) -> Antichain {
    let mut keep = bits;
    let mut rest = bits;
    while rest != 0 {
        let s = rest.trailing_zeros();
        rest &= rest - 1;
        let mut others = bits & !(1u64 << s);
        while others != 0 {
            let t = others.trailing_zeros();
            others &= others - 1;
            // t ⊊ s
            if t & !s == 0 {
                keep &= !(1u64 << s);
                break;
            }
        }
    }
    Antichain { n, members: keep }
}

/// `min l`: the inclusion-minimal members of a family of subsets.
pub fn min_antichain(n: usize, family: impl IntoIterator<Item = Subset>) -> Result<Antichain> {
    if n > MAX_GENERATORS {
        return Err(Error::CapExceeded { n, cap: MAX_GENERATORS });
    }
    let full = Subset::full(n);
    let mut bits = 0u64;
    for s in family {
        if !s.is_subset_of(full) {
            let index = s.indices().into_iter().find(|&i| i > n).unwrap_or(0);
            return Err(Error::OutOfRange { index, n });
        }
        if s.is_empty() {
            return Err(Error::EmptyMember);
        }
        bits |= 1 << s.0;
    }
    Ok(min_of_bits(n as u8, bits))
}

/// `𝔲(l)`: every subset of `{1..N}` containing some member of `l`.
pub fn upper_set(l: &Antichain) -> Vec<Subset> {
    let members = l.members();
    nonempty_subsets(l.generator_count())
        .into_iter()
        .filter(|u| members.iter().any(|v| v.is_subset_of(*u)))
        .collect()
}

/// Every antichain of nonempty subsets of `{1..n}`, starting with the empty one.
///
/// The order is that of a depth-first search over subsets in lexicographic
/// order, excluding before including; it is deterministic.
pub fn enumerate_antichains(n: usize, cap: usize) -> Result<Vec<Antichain>> {
    let cap = cap.min(MAX_GENERATORS);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let subsets = nonempty_subsets(n);
    let comparable: Vec<u64> = subsets
        .iter()
        .map(|s| {
            subsets
                .iter()
                .filter(|t| t.is_subset_of(*s) || s.is_subset_of(**t))
                .fold(0u64, |acc, t| acc | 1 << t.0)
        })
        .collect();
    let mut out = Vec::new();
    fn walk(i: usize, cur: u64, subsets: &[Subset], comparable: &[u64], n: u8, out: &mut Vec<Antichain>) {
        if i == subsets.len() {
            out.push(Antichain { n, members: cur });
            return;
        }
        walk(i + 1, cur, subsets, comparable, n, out);
        if cur & comparable[i] == 0 {
            walk(i + 1, cur | 1 << subsets[i].0, subsets, comparable, n, out);
        }
    }
    walk(0, 0, &subsets, &comparable, n as u8, &mut out);
    Ok(out)
}

/// A lattice generated by `N` elements, queried through its operations.
///
/// Ideal lattices use meet = sum, join = intersection, `a ≤ b ⇔ b ⊆ a`;
/// lattices of open sets use meet = ∩, join = ∪, `≤` = ⊆.
pub trait LatticeOracle {
    type Element: Clone + PartialEq + fmt::Debug;

    fn generator_count(&self) -> usize;
    /// The generator `λ_i` for `1 ≤ i ≤ N`.
    fn generator(&self, i: usize) -> Self::Element;
    fn meet(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn join(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn leq(&self, a: &Self::Element, b: &Self::Element) -> Result<bool>;
    /// The empty join.
    fn bottom(&self) -> Self::Element;
}

/// `λ_{i1} ∧ ... ∧ λ_{ik}` for a nonempty subset.
pub fn meet_of<O: LatticeOracle>(oracle: &O, s: Subset) -> Result<O::Element> {
    let mut it = s.indices().into_iter();
    let first = it.next().ok_or(Error::EmptyMember)?;
    let mut acc = oracle.generator(first);
    for i in it {
        acc = oracle.meet(&acc, &oracle.generator(i))?;
    }
    Ok(acc)
}

/// `R(l)`: the join over members of the meets of their generators.
pub fn r_map<O: LatticeOracle>(oracle: &O, l: &Antichain) -> Result<O::Element> {
    if l.generator_count() != oracle.generator_count() {
        return Err(Error::GeneratorMismatch(l.generator_count(), oracle.generator_count()));
    }
    let mut acc: Option<O::Element> = None;
    for s in l.members() {
        let m = meet_of(oracle, s)?;
        acc = Some(match acc {
            None => m,
            Some(a) => oracle.join(&a, &m)?,
        });
    }
    Ok(acc.unwrap_or_else(|| oracle.bottom()))
}

/// `L(λ)`: the minimal index sets whose generator meet lies below `λ`.
pub fn l_map<O: LatticeOracle>(oracle: &O, x: &O::Element) -> Result<Antichain> {
    let n = oracle.generator_count();
    let mut below = Vec::new();
    for s in nonempty_subsets(n) {
        if oracle.leq(&meet_of(oracle, s)?, x)? {
            below.push(s);
        }
    }
    min_antichain(n, below)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Meet,
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Distributivity {
    Distributive,
    Witness { left: Antichain, right: Antichain, side: Side },
}

impl Distributivity {
    pub fn is_distributive(&self) -> bool {
        matches!(self, Distributivity::Distributive)
    }
}

/// Decides whether the lattice generated by the oracle's generators is
/// distributive by testing that `R` preserves meets and joins on every ordered
/// pair of antichains. The first failing pair in enumeration order is reported.
pub fn distributivity_check<O: LatticeOracle>(oracle: &O, cap: usize) -> Result<Distributivity> {
    let n = oracle.generator_count();
    let all = enumerate_antichains(n, cap)?;
    let index: HashMap<Antichain, usize> = all.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let images = all.iter().map(|l| r_map(oracle, l)).collect::<Result<Vec<_>>>()?;
    for (i, l1) in all.iter().enumerate() {
        for (j, l2) in all.iter().enumerate() {
            let m = index[&l1.meet(l2)?];
            if images[m] != oracle.meet(&images[i], &images[j])? {
                return Ok(Distributivity::Witness { left: *l1, right: *l2, side: Side::Meet });
            }
            let k = index[&l1.join(l2)?];
            if images[k] != oracle.join(&images[i], &images[j])? {
                return Ok(Distributivity::Witness { left: *l1, right: *l2, side: Side::Join });
            }
        }
    }
    Ok(Distributivity::Distributive)
}

/// The free distributive lattice itself as an oracle, generated by `{{i}}`.
pub struct AntichainOracle {
    pub n: usize,
}

impl LatticeOracle for AntichainOracle {
    type Element = Antichain;

    fn generator_count(&self) -> usize {
        self.n
    }

    fn generator(&self, i: usize) -> Antichain {
        Antichain::singleton(self.n, Subset::singleton(i))
    }

    fn meet(&self, a: &Antichain, b: &Antichain) -> Result<Antichain> {
        a.meet(b)
    }

    fn join(&self, a: &Antichain, b: &Antichain) -> Result<Antichain> {
        a.join(b)
    }

    fn leq(&self, a: &Antichain, b: &Antichain) -> Result<bool> {
        a.leq(b)
    }

    fn bottom(&self) -> Antichain {
        Antichain::empty(self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ac(n: usize, lists: &[&[usize]]) -> Antichain {
        Antichain::from_lists(n, &lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn sub(n: usize, l: &[usize]) -> Subset {
        Subset::from_indices(n, l).unwrap()
    }

    #[test]
    fn min_examples() {
        assert_eq!(min_antichain(2, [sub(2, &[1]), sub(2, &[1, 2])]).unwrap(), ac(2, &[&[1]]));
        let l = ac(3, &[&[1, 2], &[3]]);
        assert_eq!(min_antichain(3, l.members()).unwrap(), l);
        assert_eq!(
            min_antichain(3, [sub(3, &[1, 2]), sub(3, &[2, 3]), sub(3, &[1, 2, 3])]).unwrap(),
            ac(3, &[&[1, 2], &[2, 3]])
        );
    }

    #[test]
    fn min_rejects_bad_members() {
        assert!(matches!(Subset::from_indices(2, &[3]), Err(Error::OutOfRange { index: 3, n: 2 })));
        assert!(matches!(min_antichain(2, [Subset::from_bits(0b100)]), Err(Error::OutOfRange { .. })));
        assert!(matches!(min_antichain(2, [Subset::from_bits(0)]), Err(Error::EmptyMember)));
    }

    #[test]
    fn upper_set_examples() {
        assert_eq!(upper_set(&ac(2, &[&[1]])), vec![sub(2, &[1]), sub(2, &[1, 2])]);
        assert!(upper_set(&Antichain::empty(2)).is_empty());
        let up = upper_set(&ac(3, &[&[1, 2], &[3]]));
        // brute force over the 7 nonempty subsets of {1,2,3}
        let expected: Vec<Subset> = (1u32..8)
            .map(Subset::from_bits)
            .filter(|u| (u.bits() & 0b011 == 0b011) || (u.bits() & 0b100 != 0))
            .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(up, expected);
        assert_eq!(up.len(), 5);
    }

    #[test]
    fn meet_join_examples() {
        let a = ac(2, &[&[1]]);
        let b = ac(2, &[&[2]]);
        assert_eq!(a.meet(&b).unwrap(), ac(2, &[&[1, 2]]));
        assert_eq!(a.join(&b).unwrap(), ac(2, &[&[1], &[2]]));
        assert_eq!(a.meet(&a).unwrap(), a);
        assert_eq!(a.join(&a).unwrap(), a);
        assert!(matches!(a.meet(&Antichain::empty(3)), Err(Error::GeneratorMismatch(2, 3))));
    }

    #[test]
    fn antichain_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_antichains(n, DEFAULT_CAP).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 5, 19, 167]);
        assert_eq!(enumerate_antichains(1, 6).unwrap(), vec![Antichain::empty(1), ac(1, &[&[1]])]);
        assert!(matches!(enumerate_antichains(4, 3), Err(Error::CapExceeded { n: 4, cap: 3 })));
    }

    #[test]
    fn distributive_over_all_triples_n2() {
        let all = enumerate_antichains(2, 6).unwrap();
        assert_eq!(all.len(), 5);
        for a in &all {
            for b in &all {
                for c in &all {
                    let lhs = a.meet(&b.join(c).unwrap()).unwrap();
                    let rhs = a.meet(b).unwrap().join(&a.meet(c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                    let lhs = a.join(&b.meet(c).unwrap()).unwrap();
                    let rhs = a.join(b).unwrap().meet(&a.join(c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn key_round_trip() {
        let l = ac(3, &[&[2, 3], &[1]]);
        assert_eq!(l.key(), "[[1],[2,3]]");
        assert_eq!(Antichain::from_key(3, "[[1],[2,3]]").unwrap(), l);
        assert!(Antichain::from_key(3, "[[1],[1,2]]").is_err());
        assert_eq!(serde_json::to_string(&l).unwrap(), "[[1],[2,3]]");
    }

    #[test]
    fn free_lattice_oracle_is_distributive() {
        for n in 1..=3 {
            let o = AntichainOracle { n };
            assert!(distributivity_check(&o, 6).unwrap().is_distributive());
            for l in enumerate_antichains(n, 6).unwrap() {
                assert_eq!(r_map(&o, &l).unwrap(), l);
                assert_eq!(l_map(&o, &l).unwrap(), l);
            }
        }
    }
}
