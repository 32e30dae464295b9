//! Invariant suite shared by the `verify` command and the FFI layer.

use serde::Serialize;

use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::graph::{generate, generate_with, CrystalGraph, GraphSpec, Payload, Realization};
use crate::path::{path_to_wall, wall_to_path};
use crate::perfect::PerfectCrystal;
use crate::slice::Pattern;

/// Deliberate corruption used to exercise failure reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Recolor the last arrow of the wall graph.
    RecolorEdge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: usize,
    pub k: usize,
    pub depth: usize,
    pub node_cap: usize,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

fn fail(msg: String) -> Error {
    Error::Invariant(msg)
}

/// Crystal axioms on `B`, exhaustively.
pub fn check_perfect_axioms(n: usize) -> Result<usize> {
    let bc = PerfectCrystal::new(n)?;
    let cd = CartanData::new(n)?;
    let mut cases = 0;
    for b in bc.elements() {
        let cwt = bc.cwt(&b);
        for i in 0..=n {
            cases += 1;
            let (phi, eps) = (bc.phi(i, &b) as i64, bc.eps(i, &b) as i64);
            if phi - eps != cd.pairing(i, &cwt)? {
                return Err(fail(format!("φ_{i} − ε_{i} ≠ ⟨h_{i}, wt⟩ at {b}")));
            }
            if let Some(c) = bc.f(i, &b) {
                if bc.e(i, &c).as_ref() != Some(&b) {
                    return Err(fail(format!("ẽ_{i} f̃_{i} {b} ≠ {b}")));
                }
                if bc.phi(i, &c) as i64 != phi - 1 || bc.eps(i, &c) as i64 != eps + 1 {
                    return Err(fail(format!("φ_{i}/ε_{i} do not step along {b} → {c}")));
                }
                if bc.cwt(&c) != &cwt - &cd.simple_root(i)?.classical() {
                    return Err(fail(format!(
                        "weight does not drop by α_{i} along {b} → {c}"
                    )));
                }
            } else if phi != 0 {
                return Err(fail(format!("f̃_{i} {b} = 0 with φ_{i} = {phi}")));
            }
            if bc.e(i, &b).is_none() && eps != 0 {
                return Err(fail(format!("ẽ_{i} {b} = 0 with ε_{i} = {eps}")));
            }
        }
    }
    Ok(cases)
}

/// Slices modulo δ form a crystal isomorphic to `B`.
pub fn check_slice_isomorphism(n: usize) -> Result<usize> {
    let bc = PerfectCrystal::new(n)?;
    let pat = Pattern::new(n)?;
    let canon = pat.canonical_slices();
    let elements = bc.elements();
    if canon.len() != elements.len() {
        return Err(fail(format!(
            "{} canonical slices but {} elements",
            canon.len(),
            elements.len()
        )));
    }
    let mut cases = 0;
    for b in &elements {
        let c = pat.from_perfect(b)?;
        if pat.to_perfect(c) != *b {
            return Err(fail(format!(
                "{b} does not survive a round trip through {c}"
            )));
        }
    }
    for &c in &canon {
        let b = pat.to_perfect(c);
        if pat.from_perfect(&b)? != c {
            return Err(fail(format!(
                "{c} does not survive a round trip through {b}"
            )));
        }
        for i in 0..=n {
            cases += 1;
            let f = pat.class_f(i, c).map(|d| pat.to_perfect(d));
            if f != bc.f(i, &b) {
                return Err(fail(format!("f̃_{i} disagrees at slice {c} / element {b}")));
            }
            let e = pat.class_e(i, c).map(|d| pat.to_perfect(d));
            if e != bc.e(i, &b) {
                return Err(fail(format!("ẽ_{i} disagrees at slice {c} / element {b}")));
            }
        }
    }
    Ok(cases)
}

/// Slice operators commute with adding δ, from a standing slice up.
pub fn check_delta_equivariance(n: usize) -> Result<usize> {
    let pat = Pattern::new(n)?;
    let mut cases = 0;
    for c in pat.canonical_slices() {
        let mut x = pat.standing(c);
        for _ in 0..2 {
            let up = pat.add_delta(x);
            for i in 0..=n {
                cases += 1;
                if pat.slice_f(i, up) != pat.slice_f(i, x).map(|d| pat.add_delta(d)) {
                    return Err(fail(format!("f̃_{i} does not commute with δ at {x}")));
                }
                if pat.slice_e(i, up) != pat.slice_e(i, x).map(|d| pat.add_delta(d)) {
                    return Err(fail(format!("ẽ_{i} does not commute with δ at {x}")));
                }
            }
            x = up;
        }
    }
    Ok(cases)
}

/// Every wall is proper and reduced; colors act as partial injections.
pub fn check_wall_image(g: &CrystalGraph) -> Result<usize> {
    g.check_functional()?;
    for v in &g.nodes {
        let y = v
            .payload
            .as_wall()
            .ok_or_else(|| fail("expected a wall graph".into()))?;
        if !y.is_proper() {
            return Err(fail(format!("node {} is not proper:\n{y}", v.id)));
        }
        if !y.is_reduced() {
            return Err(fail(format!("node {} is not reduced:\n{y}", v.id)));
        }
    }
    Ok(g.nodes.len())
}

/// `wt(target) = wt(source) − α_i` on every arrow.
pub fn check_weight_law(g: &CrystalGraph) -> Result<usize> {
    let cd = CartanData::new(g.n)?;
    if g.nodes[0].wt != crate::Weight::fundamental(g.n, g.k) {
        return Err(fail(format!("root weight is {}", g.nodes[0].wt)));
    }
    for &(u, i, v) in &g.edges {
        if g.nodes[v].wt != &g.nodes[u].wt - &cd.simple_root(i)? {
            return Err(fail(format!("arrow {u} -{i}-> {v} breaks the weight law")));
        }
    }
    Ok(g.edges.len())
}

/// `Φ` maps the wall graph onto the path graph node for node, keeping
/// `φ`, `ε` and arrows.
pub fn check_phi_intertwines(walls: &CrystalGraph, paths: &CrystalGraph) -> Result<usize> {
    if walls.nodes.len() != paths.nodes.len() {
        return Err(fail("node counts differ".into()));
    }
    let mut cases = 0;
    for (a, b) in walls.nodes.iter().zip(&paths.nodes) {
        let (Payload::Wall(y), Payload::Path(p)) = (&a.payload, &b.payload) else {
            return Err(fail("expected wall and path graphs".into()));
        };
        if wall_to_path(y)? != *p {
            return Err(fail(format!(
                "Φ of wall node {} is not path node {}",
                a.id, b.id
            )));
        }
        for i in 0..=walls.n {
            cases += 1;
            if y.phi(i) != p.phi(i) || y.eps(i) != p.eps(i) {
                return Err(fail(format!("φ_{i}/ε_{i} differ at node {}", a.id)));
            }
        }
    }
    Ok(cases)
}

/// `Ψ ∘ Φ` is the identity on walls and `Φ ∘ Ψ` on paths.
pub fn check_round_trips(walls: &CrystalGraph, paths: &CrystalGraph) -> Result<usize> {
    for v in &walls.nodes {
        let y = v
            .payload
            .as_wall()
            .ok_or_else(|| fail("expected walls".into()))?;
        if path_to_wall(&wall_to_path(y)?)? != *y {
            return Err(fail(format!("Ψ(Φ(Y)) ≠ Y for node {}:\n{y}", v.id)));
        }
    }
    for v in &paths.nodes {
        let p = v
            .payload
            .as_path()
            .ok_or_else(|| fail("expected paths".into()))?;
        if wall_to_path(&path_to_wall(p)?)? != *p {
            return Err(fail(format!("Φ(Ψ(p)) ≠ p for node {}", v.id)));
        }
    }
    Ok(walls.nodes.len() + paths.nodes.len())
}

/// Regenerates the wall graph, checking that each `f̃_i` acts on the same
/// column as `f̃_i` on the image path.
pub fn check_same_position(spec: &GraphSpec) -> Result<usize> {
    let mut cases = 0;
    let spec = GraphSpec {
        realization: Realization::Wall,
        ..*spec
    };
    generate_with(&spec, |src, i, j, _| {
        cases += 1;
        let y = src.as_wall().expect("wall realization");
        let p = wall_to_path(y)?;
        match p.f_at(i) {
            Some((pj, _)) if pj == j => Ok(()),
            Some((pj, _)) => Err(fail(format!(
                "f̃_{i} acts on column {j} of the wall but position {pj} of the path:\n{y}"
            ))),
            None => Err(fail(format!("f̃_{i} vanishes on Φ of\n{y}"))),
        }
    })?;
    Ok(cases)
}

/// Runs every check. Budget exhaustion is returned as an error; logic
/// failures are reported as failed outcomes.
pub fn run(cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let mut record = |check: &'static str, r: Result<usize>| -> Result<()> {
        let outcome = match r {
            Ok(cases) => CheckOutcome {
                check,
                passed: true,
                cases,
                counterexample: None,
            },
            Err(e) if e.is_budget() => return Err(e),
            Err(e) => CheckOutcome {
                check,
                passed: false,
                cases: 0,
                counterexample: Some(e.to_string()),
            },
        };
        log::info!("{check}: {}", if outcome.passed { "pass" } else { "FAIL" });
        out.push(outcome);
        Ok(())
    };
    let n = cfg.n;
    record("perfect_crystal_axioms", check_perfect_axioms(n))?;
    record("slice_isomorphism", check_slice_isomorphism(n))?;
    record("delta_equivariance", check_delta_equivariance(n))?;

    let spec = |realization| GraphSpec {
        realization,
        n,
        k: cfg.k,
        depth: cfg.depth,
        node_cap: cfg.node_cap,
    };
    let mut walls = generate(&spec(Realization::Wall))?;
    let paths = generate(&spec(Realization::Path))?;
    if cfg.fault == Some(Fault::RecolorEdge) {
        if let Some(e) = walls.edges.last_mut() {
            e.1 = (e.1 + 1) % (n + 1);
        }
    }
    record("wall_image", check_wall_image(&walls))?;
    record("weight_law_walls", check_weight_law(&walls))?;
    record("weight_law_paths", check_weight_law(&paths))?;
    record(
        "isomorphism",
        walls
            .isomorphic(&paths)
            .map(|()| walls.nodes.len())
            .map_err(|d| fail(d.to_string())),
    )?;
    record(
        "weight_multiplicities",
        if walls.weight_multiplicities() == paths.weight_multiplicities() {
            Ok(walls.weight_multiplicities().len())
        } else {
            Err(fail("multiplicity tables differ".into()))
        },
    )?;
    record("phi_intertwines", check_phi_intertwines(&walls, &paths))?;
    record("round_trips", check_round_trips(&walls, &paths))?;
    record(
        "same_position",
        check_same_position(&spec(Realization::Wall)),
    )?;
    Ok(out)
}
