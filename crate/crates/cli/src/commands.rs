use std::path::Path;

use covalg::algebra::{covering_check, crt_glue, CoveringData};
use covalg::hopf::{
    can_inverse_from_connection, canonical_map, glue_connection, piecewise_principal_check, strong_connection_solve,
    strong_connection_verify, AlphaChoice, ComoduleAlgebra, SolveOutcome,
};
use covalg::io::{
    expect_field, matrix_to_json, scalars_to_json, ComoduleJson, CoveringJson, CrtJson, GlueJson, HopfJson,
    PiecewiseJson, SheafJson,
};
use covalg::lattice::{enumerate_antichains, l_map, r_map};
use covalg::linalg::FieldSpec;
use covalg::projspace::{enumerate_topology, OpenSetOracle};
use covalg::sheaf::{from_covering, roundtrip_covering, roundtrip_sheaf, verify_flabby, verify_sheaf_axiom, CoverMode};
use covalg::{Error, Result};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::report::Report;

pub struct Options {
    pub field: Option<FieldSpec>,
    pub cap: Option<usize>,
}

pub fn read_input<T: DeserializeOwned>(path: &Path) -> Result<(Vec<u8>, T)> {
    let bytes =
        std::fs::read(path).map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes)?;
    Ok((bytes, value))
}

pub fn lattice_enum(n: usize, opts: &Options) -> Result<Report> {
    let cap = opts.cap.unwrap_or(covalg::lattice::DEFAULT_CAP);
    let mut r = Report::new("lattice enum", format!("lattice enum -N {n}").as_bytes());
    let all = enumerate_antichains(n, cap)?;
    r.verdict("antichain-enumeration", true, json!({ "N": n, "count": all.len() }));
    if n <= covalg::projspace::DEFAULT_TOPOLOGY_CAP {
        let oracle = OpenSetOracle::new(n)?;
        let mut bad = None;
        for l in &all {
            if l_map(&oracle, &r_map(&oracle, l)?)? != *l {
                bad = Some(*l);
                break;
            }
        }
        r.verdict("antichain-open-set-roundtrip", bad.is_none(), json!({ "witness": bad }));
    }
    r.output = Some(serde_json::to_value(&all)?);
    Ok(r)
}

pub fn topology_enum(n: usize, opts: &Options) -> Result<Report> {
    let cap = opts.cap.unwrap_or(covalg::projspace::DEFAULT_TOPOLOGY_CAP);
    let mut r = Report::new("topology enum", format!("topology enum -N {n}").as_bytes());
    let opens = enumerate_topology(n, cap)?;
    let antichains = enumerate_antichains(n, cap)?;
    let oracle = OpenSetOracle::new(n)?;
    let mut images = antichains.iter().map(|l| r_map(&oracle, l)).collect::<Result<Vec<_>>>()?;
    images.sort();
    let mut sorted = opens.clone();
    sorted.sort();
    r.verdict(
        "topology-matches-free-lattice",
        sorted == images,
        json!({ "N": n, "open_sets": opens.len(), "antichains": antichains.len() }),
    );
    let listing: Vec<_> = opens
        .iter()
        .map(|u| json!({ "points": u.points().iter().map(|p| p.bits()).collect::<Vec<_>>(), "antichain": u.antichain() }))
        .collect();
    r.output = Some(json!(listing));
    Ok(r)
}

fn load_covering(path: &Path, opts: &Options, command: &str) -> Result<(Report, CoveringData, CoveringJson)> {
    let (bytes, file): (_, CoveringJson) = read_input(path)?;
    let (p, maps) = file.build()?;
    expect_field(opts.field, p.field())?;
    let c = covering_check(&p, maps, opts.cap.unwrap_or(covalg::lattice::DEFAULT_CAP))?;
    Ok((Report::new(command, &bytes), c, file))
}

fn covering_verdicts(r: &mut Report, c: &CoveringData) {
    r.verdict("kernels-intersect-to-zero", c.weak, json!({ "kernel_dims": c.kernels.iter().map(|k| k.dim()).collect::<Vec<_>>() }));
    r.verdict("ideal-lattice-distributive", c.distributivity.is_distributive(), &c.distributivity);
}

pub fn covering_check_cmd(path: &Path, opts: &Options) -> Result<Report> {
    let (mut r, c, _) = load_covering(path, opts, "covering check")?;
    covering_verdicts(&mut r, &c);
    Ok(r)
}

pub fn crt_glue_cmd(path: &Path, opts: &Options) -> Result<Report> {
    let (bytes, file): (_, CrtJson) = read_input(path)?;
    let (p, maps) = file.covering.build()?;
    expect_field(opts.field, p.field())?;
    let c = covering_check(&p, maps, opts.cap.unwrap_or(covalg::lattice::DEFAULT_CAP))?;
    let (opens, local) = file.parse_local(c.len(), p.field())?;
    let mut r = Report::new("crt glue", &bytes);
    covering_verdicts(&mut r, &c);
    match crt_glue(&c, &opens, &local) {
        Ok(g) => {
            r.verdict("crt-glue", true, json!({ "union": g.union, "element": scalars_to_json(&g.element) }));
            r.verdict("crt-unique", g.unique, json!({ "lift": scalars_to_json(&g.lift) }));
        }
        Err(e @ (Error::NotDistributive | Error::Incompatible(_))) => {
            r.verdict("crt-glue", false, e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok(r)
}

pub fn sheaf_build(path: &Path, opts: &Options) -> Result<Report> {
    let (mut r, c, _) = load_covering(path, opts, "sheaf build")?;
    let cap = opts.cap.unwrap_or(covalg::lattice::DEFAULT_CAP);
    covering_verdicts(&mut r, &c);
    if !c.is_covering() {
        return Ok(r);
    }
    let s = from_covering(&c, cap)?;
    let flabby = verify_flabby(&s);
    r.verdict("flabby", flabby.is_none(), json!({ "witness": flabby }));
    let v = verify_sheaf_axiom(&s, CoverMode::Basis)?;
    r.verdict("sheaf-axiom", v.holds(), &v);
    r.output = Some(serde_json::to_value(SheafJson::from_sheaf(&s))?);
    Ok(r)
}

pub fn sheaf_verify(path: &Path, all_covers: bool, opts: &Options) -> Result<Report> {
    let (bytes, file): (_, SheafJson) = read_input(path)?;
    expect_field(opts.field, file.field)?;
    let cap = opts.cap.unwrap_or(covalg::lattice::DEFAULT_CAP);
    let mut r = Report::new("sheaf verify", &bytes);
    let s = match file.build(cap) {
        Ok(s) => s,
        Err(e @ (Error::InvalidSheaf(_) | Error::InvalidMorphism(_))) => {
            r.verdict("presheaf-valid", false, e.to_string());
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    r.verdict("presheaf-valid", true, json!({ "opens": s.opens().len() }));
    let flabby = verify_flabby(&s);
    r.verdict("flabby", flabby.is_none(), json!({ "witness": flabby }));
    let basis = verify_sheaf_axiom(&s, CoverMode::Basis)?;
    if all_covers {
        let all = verify_sheaf_axiom(&s, CoverMode::All)?;
        r.verdict("sheaf-axiom", all.holds(), json!({ "mode": CoverMode::All, "result": all }));
        r.verdict("basis-covers-suffice", all.holds() == basis.holds(), json!({ "basis": basis.holds(), "all": all.holds() }));
    } else {
        r.verdict("sheaf-axiom", basis.holds(), json!({ "mode": CoverMode::Basis, "result": basis }));
    }
    Ok(r)
}

pub fn sheaf_roundtrip(path: &Path, opts: &Options) -> Result<Report> {
    let (mut r, c, _) = load_covering(path, opts, "sheaf roundtrip")?;
    let cap = opts.cap.unwrap_or(covalg::lattice::DEFAULT_CAP);
    covering_verdicts(&mut r, &c);
    if !c.is_covering() {
        return Ok(r);
    }
    let there = roundtrip_covering(&c, cap)?;
    r.verdict("covering-sheaf-covering-roundtrip", there.ok, &there.detail);
    let back = roundtrip_sheaf(&from_covering(&c, cap)?, cap)?;
    r.verdict("sheaf-covering-sheaf-roundtrip", back.ok, &back.detail);
    Ok(r)
}

fn is_axiom_error(e: &Error) -> bool {
    matches!(e, Error::InvalidAlgebra(_) | Error::InvalidHopf(_) | Error::InvalidComodule(_))
}

pub fn hopf_verify(path: &Path, opts: &Options) -> Result<Report> {
    let (bytes, value): (_, serde_json::Value) = read_input(path)?;
    let mut r = Report::new("hopf verify", &bytes);
    let comodule = value.get("coaction").is_some();
    let built = if comodule {
        let file: ComoduleJson = serde_json::from_value(value)?;
        expect_field(opts.field, file.algebra.field)?;
        file.build().map(|p| json!({ "kind": "comodule-algebra", "dim": p.dim(), "hopf_dim": p.hopf().dim() }))
    } else {
        let file: HopfJson = serde_json::from_value(value)?;
        expect_field(opts.field, file.algebra.field)?;
        file.build().map(|h| json!({ "kind": "hopf-algebra", "dim": h.dim() }))
    };
    let name = if comodule { "comodule-algebra-axioms" } else { "hopf-axioms" };
    match built {
        Ok(detail) => r.verdict(name, true, detail),
        Err(e) if is_axiom_error(&e) => r.verdict(name, false, e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn solve_verdicts(r: &mut Report, p: &ComoduleAlgebra, out: &SolveOutcome) -> Result<()> {
    match &out.connection {
        Some(l) => {
            r.verdict("strong-connection-feasibility", true, "feasible");
            let check = strong_connection_verify(p, l)?;
            r.verdict("strong-connection-axioms", check.passes(), &check);
            let (_, two_sided) = can_inverse_from_connection(p, l)?;
            r.verdict("canonical-map-inverse", two_sided, "translation map inverts can");
        }
        None => {
            let block = out.inconsistent_block.clone().unwrap_or_default();
            let galois = canonical_map(p)?.galois;
            r.verdict(
                "strong-connection-feasibility",
                false,
                json!({ "result": "infeasible", "inconsistent_block": block, "galois": galois }),
            );
        }
    }
    Ok(())
}

pub fn hopf_principal(path: &Path, opts: &Options) -> Result<Report> {
    let (bytes, file): (_, ComoduleJson) = read_input(path)?;
    expect_field(opts.field, file.algebra.field)?;
    let p = file.build()?;
    let mut r = Report::new("hopf principal", &bytes);
    let out = strong_connection_solve(&p)?;
    solve_verdicts(&mut r, &p, &out)?;
    if let Some(l) = &out.connection {
        r.output = Some(json!({ "connection": matrix_to_json(l) }));
    }
    Ok(r)
}

pub fn hopf_glue(path: &Path, opts: &Options) -> Result<Report> {
    let (bytes, file): (_, GlueJson) = read_input(path)?;
    expect_field(opts.field, file.p1.algebra.field)?;
    let g = file.build()?;
    let mut r = Report::new("hopf glue", &bytes);
    let mut conns = Vec::new();
    for (name, p, given) in [("first", &g.p1, &g.l1), ("second", &g.p2, &g.l2)] {
        let l = match given {
            Some(l) => Some(l.clone()),
            None => strong_connection_solve(p)?.connection,
        };
        r.verdict(&format!("{name}-piece-principal"), l.is_some(), json!(null));
        conns.extend(l);
    }
    if conns.len() < 2 {
        return Ok(r);
    }
    for choice in [AlphaChoice::BasisCompletion, AlphaChoice::Perturbed] {
        let glued = glue_connection(&g.p1, &g.p2, &g.p12, &g.pi1, &g.pi2, &conns[0], &conns[1], choice)?;
        let pass = glued.check.passes() && glued.in_tensor_square && glued.in_kernel_intersection;
        let tag = serde_json::to_value(choice)?;
        r.verdict(
            &format!("glued-connection-{}", tag.as_str().unwrap_or("alpha")),
            pass,
            json!({
                "axioms": glued.check,
                "in_tensor_square": glued.in_tensor_square,
                "in_kernel_intersection": glued.in_kernel_intersection,
                "alpha_perturbed": glued.alpha_perturbed,
            }),
        );
    }
    Ok(r)
}

pub fn hopf_piecewise(path: &Path, opts: &Options) -> Result<Report> {
    let (bytes, file): (_, PiecewiseJson) = read_input(path)?;
    expect_field(opts.field, file.total.algebra.field)?;
    let (p, pieces) = file.build()?;
    let cap = opts.cap.unwrap_or(covalg::lattice::DEFAULT_CAP);
    let mut r = Report::new("hopf piecewise", &bytes);
    let rep = piecewise_principal_check(&p, &pieces, file.alpha, Some(cap))?;
    r.verdict("principal", rep.direct, json!({ "inconsistent_block": rep.direct_block }));
    r.verdict(
        "principality-is-local",
        rep.agree,
        json!({
            "direct": rep.direct,
            "pieces": rep.pieces.iter().map(|p| p.principal).collect::<Vec<_>>(),
            "glued": rep.glued,
        }),
    );
    if rep.direct {
        let surj = rep.pieces.iter().all(|p| p.coinvariants_surject);
        r.verdict("coinvariants-surject", surj, json!(null));
        if let Some(c) = &rep.coverings {
            r.verdict("coinvariant-covering-agrees", c.covering == c.coinvariant_covering, c);
        }
    }
    let triv: Vec<Option<bool>> = rep.pieces.iter().map(|p| p.trivialization).collect();
    if triv.iter().any(|t| t.is_some()) {
        r.verdict("trivializations", triv.iter().all(|t| t != &Some(false)), &triv);
    }
    r.output = Some(serde_json::to_value(&rep)?);
    Ok(r)
}
