use crate::error::{Error, Result};

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidHopf("group table must be square with entries in range".into()));
        }
        let g = FiniteGroup { table };
        for a in 0..n {
            if g.mul(0, a) != a || g.mul(a, 0) != a {
                return Err(Error::InvalidHopf("element 0 is not the identity".into()));
            }
            if !(0..n).any(|b| g.mul(a, b) == 0) {
                return Err(Error::InvalidHopf(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::InvalidHopf("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(g)
    }

    /// `ℤ/n` with `a·b = a + b mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        FiniteGroup { table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect() }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("validated group")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A right action `x·g` of a finite group on `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GroupAction {
    pub group: FiniteGroup,
    /// `action[x][g] = x·g`.
    pub action: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = action.len();
        let order = group.order();
        if action.iter().any(|r| r.len() != order || r.iter().any(|&y| y >= n)) {
            return Err(Error::InvalidHopf("action table has the wrong shape".into()));
        }
        for (x, row) in action.iter().enumerate() {
            if row[0] != x {
                return Err(Error::InvalidHopf(format!("identity moves point {x}")));
            }
            for g in 0..order {
                for h in 0..order {
                    if action[row[g]][h] != row[group.mul(g, h)] {
                        return Err(Error::InvalidHopf("not a right action".into()));
                    }
                }
            }
        }
        Ok(GroupAction { group, action })
    }

    /// `m` free orbits of `ℤ/k`; point `o·k + i` is `i` in orbit `o`.
    pub fn free_cyclic(k: usize, m: usize) -> Self {
        let group = FiniteGroup::cyclic(k);
        let action = (0..m * k).map(|x| (0..k).map(|g| (x / k) * k + (x % k + g) % k).collect()).collect();
        GroupAction { group, action }
    }

    pub fn points(&self) -> usize {
        self.action.len()
    }

    pub fn act(&self, x: usize, g: usize) -> usize {
        self.action[x][g]
    }

    pub fn is_free(&self) -> bool {
        (0..self.points()).all(|x| (1..self.group.order()).all(|g| self.act(x, g) != x))
    }

    /// Orbits as sorted point lists, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points()];
        let mut out = Vec::new();
        for x in 0..self.points() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.action[x].clone();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// The action restricted to a stable subset, points renumbered in order.
    pub fn restrict(&self, subset: &[usize]) -> Result<GroupAction> {
        let index = |y: usize| subset.iter().position(|&s| s == y);
        let mut action = Vec::with_capacity(subset.len());
        for &x in subset {
            let row = self.action[x]
                .iter()
                .map(|&y| index(y).ok_or_else(|| Error::InvalidHopf(format!("subset not stable at point {x}"))))
                .collect::<Result<Vec<_>>>()?;
            action.push(row);
        }
        Ok(GroupAction { group: self.group.clone(), action })
    }
}
