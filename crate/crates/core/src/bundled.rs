//! The example inputs shipped under `data/`, built programmatically so the
//! files can be regenerated and checked for drift.

use serde::Serialize;

use crate::algebra::{covering_check, restrict_element, Algebra, AlgebraMorphism};
use crate::error::Result;
use crate::hopf::{
    restriction_piece, root_of_unity_example, smash_product, trivial_action, ComoduleAlgebra, FiniteGroup,
    GroupAction, HopfData, Piece, Trivialization,
};
use crate::io::{
    matrix_to_json, scalars_to_json, ComoduleJson, CoveringJson, CrtJson, GlueJson, HopfJson, PiecewiseJson,
    SheafJson,
};
use crate::lattice::{Antichain, DEFAULT_CAP};
use crate::linalg::{FieldSpec, LinearMap, Scalar};
use crate::sheaf::from_covering;

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum Bundled {
    Covering(CoveringJson),
    Crt(CrtJson),
    Sheaf(SheafJson),
    Hopf(HopfJson),
    Comodule(ComoduleJson),
    Glue(GlueJson),
    Piecewise(PiecewiseJson),
}

/// `Fun(X) → Fun(S_i)` restrictions; points are 0-based.
pub fn restriction_covering(field: FieldSpec, points: usize, subsets: &[&[usize]]) -> (Algebra, Vec<AlgebraMorphism>) {
    let p = Algebra::function_algebra(field, points);
    let maps = subsets
        .iter()
        .map(|s| {
            let mut m = LinearMap::zero(field, s.len(), points);
            for (r, &c) in s.iter().enumerate() {
                m.set(r, c, field.one());
            }
            AlgebraMorphism::new(p.clone(), Algebra::function_algebra(field, s.len()), m).expect("restriction")
        })
        .collect();
    (p, maps)
}

/// `Fun({1,2,3})` restricted to `{1,2}` and `{2,3}`.
pub fn fun3_two_pieces(field: FieldSpec) -> (Algebra, Vec<AlgebraMorphism>) {
    restriction_covering(field, 3, &[&[0, 1], &[1, 2]])
}

/// `Fun({1..4})` restricted to `{1,2,3}`, `{2,3,4}`, `{1,3,4}`; all three meet in `{3}`.
pub fn fun4_three_pieces(field: FieldSpec) -> (Algebra, Vec<AlgebraMorphism>) {
    restriction_covering(field, 4, &[&[0, 1, 2], &[1, 2, 3], &[0, 2, 3]])
}

/// `k ⊕ V`, `dim V = 2`, `V² = 0`, divided by the lines `v₁`, `v₂`, `v₁ + v₂`.
pub fn three_lines(field: FieldSpec) -> (Algebra, Vec<AlgebraMorphism>) {
    let p = Algebra::square_zero(field, 2);
    let target = Algebra::square_zero(field, 1);
    let rows: [&[&[i64]]; 3] = [&[&[1, 0, 0], &[0, 0, 1]], &[&[1, 0, 0], &[0, 1, 0]], &[&[1, 0, 0], &[0, 1, -1]]];
    let maps = rows
        .iter()
        .map(|r| AlgebraMorphism::new(p.clone(), target.clone(), LinearMap::from_i64_rows(field, r)).expect("quotient"))
        .collect();
    (p, maps)
}

fn ints(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| field.from_i64(x)).collect()
}

fn crt_example(
    description: &str,
    (p, maps): (Algebra, Vec<AlgebraMorphism>),
    global: &[i64],
    opens: &[Vec<Vec<usize>>],
) -> Result<CrtJson> {
    let n = maps.len();
    let covering = covering_check(&p, maps.clone(), DEFAULT_CAP)?;
    let g = ints(p.field(), global);
    let local = opens
        .iter()
        .map(|l| Ok(scalars_to_json(&restrict_element(&covering, &Antichain::from_lists(n, l)?, &g)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrtJson {
        covering: CoveringJson::from_parts(Some(description.into()), &p, &maps),
        opens: opens.to_vec(),
        local,
    })
}

/// `Fun` of `m` free `ℤ/k`-orbits, coacted on by `k^{ℤ/k}`.
pub fn free_action(field: FieldSpec, k: usize, m: usize) -> ComoduleAlgebra {
    ComoduleAlgebra::of_group_action(field, &GroupAction::free_cyclic(k, m)).expect("free action")
}

/// `ℤ/2` swapping points 0 and 1 and fixing 2.
pub fn fixed_point_action() -> GroupAction {
    GroupAction::new(FiniteGroup::cyclic(2), vec![vec![0, 1], vec![1, 0], vec![2, 2]]).expect("action")
}

/// `ℤ/3` rotating points 0..3 and fixing 3.
pub fn nonfree_z3_action() -> GroupAction {
    let mut a = GroupAction::free_cyclic(3, 1).action;
    a.push(vec![3, 3, 3]);
    GroupAction::new(FiniteGroup::cyclic(3), a).expect("action")
}

/// `Fun({1,2})` with the trivial coaction of `k[ℤ/2]`.
pub fn trivial_coaction(field: FieldSpec) -> ComoduleAlgebra {
    let h = HopfData::group_algebra(field, &FiniteGroup::cyclic(2)).expect("group algebra");
    ComoduleAlgebra::trivial(Algebra::function_algebra(field, 2), h)
}

fn orbits(k: usize, os: &[usize]) -> Vec<usize> {
    os.iter().flat_map(|&o| o * k..o * k + k).collect()
}

/// `Fun(A) ×_{Fun(A∩B)} Fun(B)` for unions `A`, `B` of free `ℤ/k`-orbits (0-based orbit indices).
pub fn orbit_fibre_product(field: FieldSpec, k: usize, a: &[usize], b: &[usize]) -> Result<GlueJson> {
    let total = a.iter().chain(b).max().map_or(0, |m| m + 1);
    let x = GroupAction::free_cyclic(k, total);
    let common: Vec<usize> = a.iter().copied().filter(|o| b.contains(o)).collect();
    let (pa, pb, pc) = (orbits(k, a), orbits(k, b), orbits(k, &common));
    let p1 = ComoduleAlgebra::of_group_action(field, &x.restrict(&pa)?)?;
    let p2 = ComoduleAlgebra::of_group_action(field, &x.restrict(&pb)?)?;
    let p12 = ComoduleAlgebra::of_group_action(field, &x.restrict(&pc)?)?;
    let restrict = |from: &[usize]| {
        let mut m = LinearMap::zero(field, pc.len(), from.len());
        for (r, y) in pc.iter().enumerate() {
            let c = from.iter().position(|z| z == y).expect("overlap inside piece");
            m.set(r, c, field.one());
        }
        m
    };
    let describe = |os: &[usize]| os.iter().map(|o| format!("O{}", o + 1)).collect::<Vec<_>>().join("∪");
    Ok(GlueJson {
        description: Some(format!(
            "Fun({}) ×_Fun({}) Fun({}) for free ℤ/{k}-orbits",
            describe(a),
            describe(&common),
            describe(b)
        )),
        p1: ComoduleJson::from_comodule(None, &p1),
        p2: ComoduleJson::from_comodule(None, &p2),
        p12: ComoduleJson::from_comodule(None, &p12),
        pi1: matrix_to_json(&restrict(&pa)),
        pi2: matrix_to_json(&restrict(&pb)),
        l1: None,
        l2: None,
    })
}

/// `Fun(m free ℤ/k-orbits)` with stable pieces given as orbit lists, each
/// trivialized as `Fun(orbits) # k^{ℤ/k}` with the trivial action.
pub fn orbit_pieces(field: FieldSpec, k: usize, m: usize, pieces: &[&[usize]]) -> Result<(ComoduleAlgebra, Vec<Piece>)> {
    let x = GroupAction::free_cyclic(k, m);
    let p = ComoduleAlgebra::of_group_action(field, &x)?;
    let pieces = pieces
        .iter()
        .map(|os| {
            let mut piece = restriction_piece(field, &x, &orbits(k, os))?;
            let b = Algebra::function_algebra(field, os.len());
            let smash = smash_product(&b, piece.comodule.hopf(), &trivial_action(&b, piece.comodule.hopf()))?;
            let iso = LinearMap::identity(field, piece.comodule.dim());
            piece.trivialization = Some(Trivialization { smash, iso });
            Ok(piece)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((p, pieces))
}

/// Every bundled input, by file stem.
pub fn all() -> Result<Vec<(&'static str, Bundled)>> {
    let gf5 = FieldSpec::gf5();
    let gf7 = FieldSpec::gf7();
    let q = FieldSpec::rationals();
    let cov = |d: &str, (p, maps): (Algebra, Vec<AlgebraMorphism>)| {
        Bundled::Covering(CoveringJson::from_parts(Some(d.into()), &p, &maps))
    };
    let como = |d: &str, p: &ComoduleAlgebra| Bundled::Comodule(ComoduleJson::from_comodule(Some(d.into()), p));
    let hopf = |g: usize, f: FieldSpec| -> Result<Bundled> {
        Ok(Bundled::Hopf(HopfJson::from_hopf(&HopfData::group_algebra(f, &FiniteGroup::cyclic(g))?)))
    };
    let (fun3, fun3_maps) = fun3_two_pieces(gf5);
    let fun3_cov = covering_check(&fun3, fun3_maps, DEFAULT_CAP)?;
    let root = root_of_unity_example(gf7, 3, 2)?;
    let (pw, pw_pieces) = orbit_pieces(gf5, 2, 3, &[&[0, 1], &[1, 2]])?;
    let (pw3, pw3_pieces) = orbit_pieces(gf7, 3, 3, &[&[0, 1], &[1, 2], &[0, 2]])?;

    Ok(vec![
        ("fun3", cov("Fun({1,2,3}) restricted to {1,2} and {2,3}", fun3_two_pieces(gf5))),
        ("fun4", cov("Fun({1,2,3,4}) restricted to {1,2,3}, {2,3,4}, {1,3,4}", fun4_three_pieces(gf5))),
        ("fun3_q", cov("Fun({1,2,3}) over Q restricted to {1,2} and {2,3}", fun3_two_pieces(q))),
        ("three_lines", cov("k⊕V, V²=0, dim V=2, divided by three distinct lines", three_lines(gf5))),
        (
            "crt_fun3",
            Bundled::Crt(crt_example(
                "glue f on {1,2} with g on {2,3}",
                fun3_two_pieces(gf5),
                &[1, 2, 3],
                &[vec![vec![1]], vec![vec![2]]],
            )?),
        ),
        (
            "crt_fun4",
            Bundled::Crt(crt_example(
                "glue three local functions on Fun({1,2,3,4})",
                fun4_three_pieces(gf5),
                &[4, 3, 2, 1],
                &[vec![vec![1]], vec![vec![2]], vec![vec![3]]],
            )?),
        ),
        ("sheaf_fun3", Bundled::Sheaf(SheafJson::from_sheaf(&from_covering(&fun3_cov, DEFAULT_CAP)?))),
        ("hopf_z2_gf5", hopf(2, gf5)?),
        ("hopf_z3_gf5", hopf(3, gf5)?),
        ("hopf_z2_gf7", hopf(2, gf7)?),
        ("hopf_z3_gf7", hopf(3, gf7)?),
        ("hopf_z2_q", hopf(2, q)?),
        ("hopf_z3_q", hopf(3, q)?),
        ("free_z2_4pt", como("Fun of two free ℤ/2-orbits", &free_action(gf5, 2, 2))),
        ("free_z2", como("Fun of three free ℤ/2-orbits", &free_action(gf5, 2, 3))),
        ("free_z3", como("Fun of two free ℤ/3-orbits", &free_action(gf7, 3, 2))),
        (
            "fixedpoint",
            como(
                "ℤ/2 swapping two points and fixing a third",
                &ComoduleAlgebra::of_group_action(gf5, &fixed_point_action())?,
            ),
        ),
        (
            "nonfree_z3",
            como("ℤ/3 rotating three points and fixing a fourth", &ComoduleAlgebra::of_group_action(gf7, &nonfree_z3_action())?),
        ),
        ("trivial_coaction", como("Fun({1,2}) with the trivial coaction of k[ℤ/2]", &trivial_coaction(gf5))),
        (
            "root_of_unity",
            como("k[u]/(u³−1) # k[ℤ/3] over GF(7), v▷u = 2u", &root.smash),
        ),
        ("glue_three_orbits", Bundled::Glue(orbit_fibre_product(gf5, 2, &[0, 1], &[1, 2])?)),
        ("glue_four_orbits", Bundled::Glue(orbit_fibre_product(gf5, 2, &[0, 1, 2], &[1, 2, 3])?)),
        (
            "piecewise_free_z2",
            Bundled::Piecewise(PiecewiseJson::from_parts(
                Some("three free ℤ/2-orbits, pieces O1∪O2 and O2∪O3, each trivialized".into()),
                &pw,
                &pw_pieces,
            )),
        ),
        (
            "piecewise_z3_three",
            Bundled::Piecewise(PiecewiseJson::from_parts(
                Some("three free ℤ/3-orbits over GF(7), pieces O1∪O2, O2∪O3, O1∪O3".into()),
                &pw3,
                &pw3_pieces,
            )),
        ),
    ])
}
