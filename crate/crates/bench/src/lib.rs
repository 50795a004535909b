//! Benchmark fixtures.

use covalg::algebra::{covering_check, CoveringData};
use covalg::bundled::restriction_covering;
use covalg::hopf::{restriction_piece, ComoduleAlgebra, GroupAction, Piece};
use covalg::lattice::DEFAULT_CAP;
use covalg::linalg::FieldSpec;

/// `Fun` of `m` free `ℤ/k`-orbits over GF(7).
pub fn free_action(k: usize, m: usize) -> ComoduleAlgebra {
    ComoduleAlgebra::of_group_action(FieldSpec::gf7(), &GroupAction::free_cyclic(k, m)).expect("free action")
}

/// `Fun` of `m` free `ℤ/k`-orbits with consecutive overlapping pairs of orbits as pieces.
pub fn orbit_chain(k: usize, m: usize) -> (ComoduleAlgebra, Vec<Piece>) {
    let f = FieldSpec::gf7();
    let x = GroupAction::free_cyclic(k, m);
    let p = ComoduleAlgebra::of_group_action(f, &x).expect("free action");
    let pieces = (0..m - 1)
        .map(|o| restriction_piece(f, &x, &(o * k..o * k + 2 * k).collect::<Vec<_>>()).expect("stable"))
        .collect();
    (p, pieces)
}

/// `Fun({0..n})` covered by the `n` complements of single points.
pub fn complement_covering(n: usize) -> CoveringData {
    let subsets: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect();
    let refs: Vec<&[usize]> = subsets.iter().map(|s| s.as_slice()).collect();
    let (p, maps) = restriction_covering(FieldSpec::gf5(), n, &refs);
    covering_check(&p, maps, DEFAULT_CAP).expect("covering")
}
