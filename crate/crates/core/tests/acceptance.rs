//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use crystal_walls::{
    generate, generate_with, path_to_wall, wall_to_path, CrystalGraph, GraphSpec, Pattern,
    PerfectCrystal, PerfectElement, Realization, Slice, Wall, Weight,
};

type Outcome = Result<String, String>;
type Columns = &'static [(u32, u32)];
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------

/// Generalized Cartan matrix of C_n^(1), written out by hand.
fn cartan_oracle(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n + 1]; n + 1];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for i in 0..n {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    a[1][0] = -2;
    a[n - 1][n] = -2;
    a
}

/// `α_i = Σ_j a_ji Λ_j`, plus `δ` for `i = 0`.
fn root_oracle(n: usize, i: usize) -> Weight {
    let a = cartan_oracle(n);
    Weight {
        lam: (0..=n).map(|j| a[j][i]).collect(),
        delta2: if i == 0 { 2 } else { 0 },
    }
}

/// Letters `1 < … < n < n̄ < … < 1̄` encoded as `0..2n`.
fn letter_of(n: usize, i: usize, bar: bool) -> usize {
    if bar {
        2 * n - i
    } else {
        i - 1
    }
}

/// An element of `B` as a sorted row of at most two letters.
fn row_of(b: &PerfectElement) -> Vec<usize> {
    let n = b.x.len();
    let mut row = Vec::new();
    for i in 1..=n {
        row.extend(std::iter::repeat_n(
            letter_of(n, i, false),
            b.x[i - 1] as usize,
        ));
        row.extend(std::iter::repeat_n(
            letter_of(n, i, true),
            b.xbar[i - 1] as usize,
        ));
    }
    row.sort_unstable();
    row
}

fn element_of(n: usize, row: &[usize]) -> PerfectElement {
    let mut b = PerfectElement::zero(n);
    for &l in row {
        if l < n {
            b.x[l] += 1;
        } else {
            b.xbar[2 * n - 1 - l] += 1;
        }
    }
    b
}

/// Sign of a letter for color `i ≥ 1`: `+1` if `f̃_i` can act on it,
/// `-1` if `ẽ_i` can.
fn sign(n: usize, i: usize, l: usize) -> i32 {
    if i == n {
        return if l == letter_of(n, n, false) {
            1
        } else if l == letter_of(n, n, true) {
            -1
        } else {
            0
        };
    }
    if l == letter_of(n, i, false) || l == letter_of(n, i + 1, true) {
        1
    } else if l == letter_of(n, i + 1, false) || l == letter_of(n, i, true) {
        -1
    } else {
        0
    }
}

fn lower_letter(n: usize, i: usize, l: usize) -> usize {
    if i == n {
        letter_of(n, n, true)
    } else if l == letter_of(n, i, false) {
        letter_of(n, i + 1, false)
    } else {
        letter_of(n, i, true)
    }
}

fn raise_letter(n: usize, i: usize, l: usize) -> usize {
    if i == n {
        letter_of(n, n, false)
    } else if l == letter_of(n, i + 1, false) {
        letter_of(n, i, false)
    } else {
        letter_of(n, i + 1, true)
    }
}

/// Word-signature model for `i ≥ 1`, hand-transcribed case table for
/// `i = 0`. Returns the image under `f̃_i` (`lower`) or `ẽ_i`.
fn step_oracle(n: usize, i: usize, b: &PerfectElement, lower: bool) -> Option<PerfectElement> {
    let row = row_of(b);
    let one = letter_of(n, 1, false);
    let one_bar = letter_of(n, 1, true);
    if i == 0 {
        let ones = row.iter().filter(|&&l| l == one).count();
        let bars = row.iter().filter(|&&l| l == one_bar).count();
        let out: Vec<usize> = match (lower, row.len(), ones, bars) {
            (true, 0, _, _) => vec![one, one],
            (true, 2, _, 2) => vec![],
            (true, 2, 0, 1) => row
                .iter()
                .map(|&l| if l == one_bar { one } else { l })
                .collect(),
            (false, 0, _, _) => vec![one_bar, one_bar],
            (false, 2, 2, _) => vec![],
            (false, 2, 1, 0) => row
                .iter()
                .map(|&l| if l == one { one_bar } else { l })
                .collect(),
            _ => return None,
        };
        let mut out = out;
        out.sort_unstable();
        return Some(element_of(n, &out));
    }
    // Cancel each "-" against the nearest later "+".
    let mut plus: Vec<usize> = Vec::new();
    let mut minus: Vec<usize> = Vec::new();
    let mut pending_minus: Vec<usize> = Vec::new();
    for (p, &l) in row.iter().enumerate() {
        match sign(n, i, l) {
            1 => {
                if pending_minus.pop().is_none() {
                    plus.push(p);
                }
            }
            -1 => pending_minus.push(p),
            _ => {}
        }
    }
    minus.extend(pending_minus);
    let mut out = row.clone();
    if lower {
        let p = *plus.last()?;
        out[p] = lower_letter(n, i, row[p]);
    } else {
        let p = *minus.first()?;
        out[p] = raise_letter(n, i, row[p]);
    }
    out.sort_unstable();
    Some(element_of(n, &out))
}

fn phi_by_iteration(bc: &PerfectCrystal, i: usize, b: &PerfectElement) -> u32 {
    let mut cur = b.clone();
    let mut m = 0;
    while let Some(c) = bc.f(i, &cur) {
        cur = c;
        m += 1;
    }
    m
}

fn eps_by_iteration(bc: &PerfectCrystal, i: usize, b: &PerfectElement) -> u32 {
    let mut cur = b.clone();
    let mut m = 0;
    while let Some(c) = bc.e(i, &cur) {
        cur = c;
        m += 1;
    }
    m
}

fn el(s: &str) -> PerfectElement {
    s.parse().expect("valid element literal")
}

fn wall_graph(n: usize, k: usize, depth: usize) -> Result<CrystalGraph, String> {
    generate(&GraphSpec::new(Realization::Wall, n, k, depth)).map_err(|e| e.to_string())
}

fn path_graph(n: usize, k: usize, depth: usize) -> Result<CrystalGraph, String> {
    generate(&GraphSpec::new(Realization::Path, n, k, depth)).map_err(|e| e.to_string())
}

const ISO_CASES: [(usize, usize, usize); 6] = [
    (2, 0, 8),
    (2, 1, 8),
    (2, 2, 8),
    (3, 0, 6),
    (3, 1, 6),
    (3, 3, 6),
];

// ---------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------

fn c1_perfect_shape() -> Outcome {
    let bc = PerfectCrystal::new(2).map_err(|e| e.to_string())?;
    let els = bc.elements();
    ensure!(els.len() == 11, "{} elements for n = 2", els.len());
    let cited = [
        (0, "(0,0|0,0)", "(2,0|0,0)"),
        (1, "(2,0|0,0)", "(1,1|0,0)"),
        (2, "(1,1|0,0)", "(1,0|1,0)"),
        (1, "(0,0|2,0)", "(0,0|1,1)"),
    ];
    for (i, from, to) in cited {
        ensure!(bc.f(i, &el(from)) == Some(el(to)), "f̃_{i} {from} ≠ {to}");
    }
    let mut edges = 0;
    for n in 2..=4 {
        let bc = PerfectCrystal::new(n).map_err(|e| e.to_string())?;
        for b in bc.elements() {
            for i in 0..=n {
                let f = step_oracle(n, i, &b, true);
                let e = step_oracle(n, i, &b, false);
                ensure!(
                    bc.f(i, &b) == f,
                    "n={n}: f̃_{i} {b} is {:?}, oracle {:?}",
                    bc.f(i, &b),
                    f
                );
                ensure!(
                    bc.e(i, &b) == e,
                    "n={n}: ẽ_{i} {b} is {:?}, oracle {:?}",
                    bc.e(i, &b),
                    e
                );
                edges += usize::from(f.is_some());
            }
        }
    }
    Ok(format!(
        "11 elements, 4 cited arrows, {edges} arrows match the oracle for n = 2..4"
    ))
}

fn c2_crystal_axioms() -> Outcome {
    let mut cases = 0;
    for n in 2..=4 {
        let bc = PerfectCrystal::new(n).map_err(|e| e.to_string())?;
        for b in bc.elements() {
            let cwt = bc.cwt(&b);
            ensure!(cwt.delta2 == 0, "cwt({b}) has a δ part");
            for i in 0..=n {
                cases += 1;
                let (phi, eps) = (bc.phi(i, &b), bc.eps(i, &b));
                ensure!(
                    phi == phi_by_iteration(&bc, i, &b),
                    "φ_{i}({b}) ≠ iteration"
                );
                ensure!(
                    eps == eps_by_iteration(&bc, i, &b),
                    "ε_{i}({b}) ≠ iteration"
                );
                ensure!(
                    cwt.lam[i] == phi as i64 - eps as i64,
                    "φ−ε pairing fails at {b}, i={i}"
                );
                if let Some(c) = bc.f(i, &b) {
                    ensure!(bc.e(i, &c).as_ref() == Some(&b), "ẽ_{i} f̃_{i} {b} ≠ {b}");
                    ensure!(
                        bc.phi(i, &c) + 1 == phi && bc.eps(i, &c) == eps + 1,
                        "φ/ε step at {b}"
                    );
                    let alpha = root_oracle(n, i);
                    ensure!(
                        bc.cwt(&c) == &cwt - &alpha.classical(),
                        "cwt step at {b}, i={i}"
                    );
                }
                if let Some(c) = bc.e(i, &b) {
                    ensure!(bc.f(i, &c).as_ref() == Some(&b), "f̃_{i} ẽ_{i} {b} ≠ {b}");
                }
            }
        }
    }
    Ok(format!("{cases} (element, color) pairs for n = 2..4"))
}

fn c3_slices_are_b() -> Outcome {
    let mut cases = 0;
    for n in 2..=3 {
        let pat = Pattern::new(n).map_err(|e| e.to_string())?;
        let bc = PerfectCrystal::new(n).map_err(|e| e.to_string())?;
        let canon = pat.canonical_slices();
        let els: BTreeSet<PerfectElement> = bc.elements().into_iter().collect();
        ensure!(
            canon.len() == els.len(),
            "n={n}: {} slices vs {} elements",
            canon.len(),
            els.len()
        );
        let images: BTreeSet<PerfectElement> = canon.iter().map(|&c| pat.to_perfect(c)).collect();
        ensure!(images == els, "n={n}: to_perfect is not onto B");
        for b in &els {
            let c = pat.from_perfect(b).map_err(|e| e.to_string())?;
            ensure!(
                canon.contains(&c),
                "n={n}: from_perfect({b}) = {c} is not canonical"
            );
            ensure!(pat.to_perfect(c) == *b, "n={n}: round trip fails at {b}");
        }
        for &c in &canon {
            let b = pat.to_perfect(c);
            ensure!(
                pat.from_perfect(&b).map_err(|e| e.to_string())? == c,
                "n={n}: round trip fails at {c}"
            );
            for i in 0..=n {
                cases += 1;
                let f = pat.class_f(i, c).map(|d| pat.to_perfect(d));
                ensure!(
                    f == step_oracle(n, i, &b, true),
                    "n={n}: f̃_{i} on {c} vs {b}"
                );
                let e = pat.class_e(i, c).map(|d| pat.to_perfect(d));
                ensure!(
                    e == step_oracle(n, i, &b, false),
                    "n={n}: ẽ_{i} on {c} vs {b}"
                );
            }
        }
    }
    Ok(format!(
        "bijection and {cases} operator squares commute for n = 2, 3"
    ))
}

fn c4_delta_equivariance() -> Outcome {
    let mut cases = 0;
    let mut floor = 0;
    for n in 2..=3 {
        let pat = Pattern::new(n).map_err(|e| e.to_string())?;
        for c in pat.canonical_slices() {
            let lift1 = pat.add_delta(c);
            let lift2 = pat.add_delta(lift1);
            let mut pairs = vec![(lift1, lift2)];
            if c.h1 >= 1 {
                pairs.push((c, lift1));
            } else {
                floor += 1;
            }
            for (x, y) in pairs {
                for i in 0..=n {
                    cases += 1;
                    let shifted_f = pat.slice_f(i, x).map(|d| pat.add_delta(d));
                    ensure!(
                        pat.slice_f(i, y) == shifted_f,
                        "n={n}: f̃_{i} and δ disagree at {x}"
                    );
                    let shifted_e = pat.slice_e(i, x).map(|d| pat.add_delta(d));
                    ensure!(
                        pat.slice_e(i, y) == shifted_e,
                        "n={n}: ẽ_{i} and δ disagree at {x}"
                    );
                }
            }
        }
    }
    Ok(format!(
        "{cases} squares commute; {floor} canonical slices with an empty front layer checked from their first lift"
    ))
}

fn c5_top_of_lambda_0() -> Outcome {
    let g = wall_graph(2, 0, 6)?;
    let sizes = g.level_sizes();
    ensure!(sizes == [1, 1, 1, 2, 3, 4, 5], "level sizes {sizes:?}");
    // Columns listed Y(1) before Y(0).
    let wall = |cols: &[(u32, u32)]| {
        let cols: Vec<Slice> = cols.iter().rev().map(|&(a, b)| Slice::new(a, b)).collect();
        Wall::from_columns(2, 0, cols).expect("fixture wall")
    };
    let id: BTreeMap<Wall, usize> = g
        .nodes
        .iter()
        .map(|v| (v.payload.as_wall().expect("wall graph").clone(), v.id))
        .collect();
    let arrows: [(Columns, usize, Columns); 19] = [
        (&[], 0, &[(2, 2)]),
        (&[(2, 2)], 1, &[(2, 4)]),
        (&[(2, 4)], 2, &[(2, 6)]),
        (&[(2, 4)], 1, &[(4, 4)]),
        (&[(2, 6)], 1, &[(2, 8)]),
        (&[(4, 4)], 2, &[(4, 6)]),
        (&[(4, 4)], 0, &[(2, 2), (4, 4)]),
        (&[(2, 8)], 1, &[(4, 8)]),
        (&[(2, 8)], 0, &[(2, 2), (2, 8)]),
        (&[(4, 6)], 2, &[(6, 6)]),
        (&[(4, 6)], 0, &[(2, 2), (4, 6)]),
        (&[(2, 2), (4, 4)], 2, &[(2, 2), (4, 6)]),
        (&[(4, 8)], 0, &[(2, 2), (4, 8)]),
        (&[(4, 8)], 2, &[(6, 8)]),
        (&[(2, 2), (2, 8)], 1, &[(2, 4), (2, 8)]),
        (&[(6, 6)], 1, &[(6, 8)]),
        (&[(6, 6)], 0, &[(2, 2), (6, 6)]),
        (&[(2, 2), (4, 6)], 2, &[(2, 2), (6, 6)]),
        (&[(2, 2), (4, 6)], 1, &[(2, 4), (4, 6)]),
    ];
    let edges: BTreeSet<(usize, usize, usize)> = g.edges.iter().copied().collect();
    for (src, i, dst) in arrows {
        let (ws, wd) = (wall(src), wall(dst));
        let s = *id
            .get(&ws)
            .ok_or_else(|| format!("node {src:?} not generated"))?;
        let d = *id
            .get(&wd)
            .ok_or_else(|| format!("node {dst:?} not generated"))?;
        ensure!(
            edges.contains(&(s, i, d)),
            "arrow {src:?} -{i}-> {dst:?} missing"
        );
    }
    let root_out: Vec<usize> = g.edges.iter().filter(|e| e.0 == 0).map(|e| e.1).collect();
    ensure!(root_out == [0], "root arrows have colors {root_out:?}");
    let second: Vec<usize> = g.edges.iter().filter(|e| e.0 == 1).map(|e| e.1).collect();
    ensure!(second == [1], "second node's arrows have colors {second:?}");
    Ok(format!(
        "levels {sizes:?}; 19 reference arrows present among {} edges",
        g.edges.len()
    ))
}

fn c6_isomorphism() -> Outcome {
    let mut total = 0;
    for (n, k, d) in ISO_CASES {
        let (w, p) = (wall_graph(n, k, d)?, path_graph(n, k, d)?);
        w.isomorphic(&p)
            .map_err(|e| format!("(n,k,depth)=({n},{k},{d}): {e}"))?;
        ensure!(
            w.level_sizes() == p.level_sizes(),
            "({n},{k},{d}): level sizes differ"
        );
        total += w.nodes.len();
    }
    Ok(format!("6 parameter sets, {total} wall nodes matched"))
}

fn c7_image() -> Outcome {
    let mut checked = 0;
    for (n, k, d) in ISO_CASES {
        let g = wall_graph(n, k, d)?;
        for v in &g.nodes {
            let y = v.payload.as_wall().expect("wall graph");
            ensure!(
                y.is_proper(),
                "({n},{k},{d}) node {} not proper:\n{y}",
                v.id
            );
            ensure!(
                y.is_reduced(),
                "({n},{k},{d}) node {} not reduced:\n{y}",
                v.id
            );
            checked += 1;
        }
    }
    let s = Slice::new;
    let family = [
        ("a", s(1, 1), vec![]),
        ("b", s(1, 1), vec![s(1, 9)]),
        ("c", s(1, 1), vec![s(1, 9), s(1, 9)]),
        ("d", s(1, 1), vec![s(9, 9)]),
        ("e", s(1, 1), vec![s(9, 9), s(1, 9)]),
        ("f", s(1, 1), vec![s(9, 9), s(1, 9), s(1, 9)]),
        ("g", s(1, 9), vec![]),
        ("h", s(1, 9), vec![s(9, 9), s(9, 9)]),
        ("i", s(9, 9), vec![]),
    ];
    let mut reduced = Vec::new();
    for (name, tail, cols) in family {
        let y = Wall::with_tail(2, 0, tail, cols).map_err(|e| e.to_string())?;
        ensure!(y.is_proper(), "fixture wall {name} is not proper");
        if y.is_reduced() {
            reduced.push(name);
        }
    }
    ensure!(reduced.len() == 3, "reduced fixture walls: {reduced:?}");
    Ok(format!(
        "{checked} generated walls proper and reduced; fixture reduced set {reduced:?}"
    ))
}

fn c8_weight_law() -> Outcome {
    for n in 2..=4 {
        for k in 0..=n {
            let y = Wall::ground(n, k).map_err(|e| e.to_string())?;
            let mut lam = Weight::zero(n);
            lam.lam[k] = 1;
            ensure!(
                y.wt().map_err(|e| e.to_string())? == lam,
                "wt of ground wall n={n} k={k}"
            );
        }
    }
    let mut edges = 0;
    let mut zero_edges = 0;
    for (n, k, d) in ISO_CASES {
        let g = wall_graph(n, k, d)?;
        for &(u, i, v) in &g.edges {
            let yu = g.nodes[u].payload.as_wall().expect("wall graph");
            let yv = g.nodes[v].payload.as_wall().expect("wall graph");
            let (wu, wv) = (
                yu.wt().map_err(|e| e.to_string())?,
                yv.wt().map_err(|e| e.to_string())?,
            );
            ensure!(
                wv == &wu - &root_oracle(n, i),
                "({n},{k},{d}) arrow {u} -{i}-> {v}: {wu} to {wv}"
            );
            if i == 0 {
                ensure!(
                    wv.delta2 == wu.delta2 - 2,
                    "δ does not drop along a 0-arrow"
                );
                zero_edges += 1;
            }
            edges += 1;
        }
    }
    Ok(format!(
        "{edges} arrows obey the law ({zero_edges} with the δ drop); ground weights are Λ_k"
    ))
}

fn c9_same_position() -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for k in 0..=2 {
        let spec = GraphSpec::new(Realization::Wall, 2, k, 6);
        generate_with(&spec, |src, i, j, _| {
            let y = src.as_wall().expect("wall graph");
            let p = wall_to_path(y)?;
            checked += 1;
            match p.f_at(i) {
                Some((pj, _)) if pj == j => {}
                other => mismatches.push((k, i, j, other.map(|o| o.0))),
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    }
    ensure!(
        mismatches.is_empty(),
        "mismatches (k, i, wall column, path position): {mismatches:?}"
    );
    Ok(format!("{checked} arrows, zero mismatches"))
}

fn c10_admissible_once() -> Outcome {
    let y = Wall::from_columns(2, 0, vec![Slice::new(6, 8), Slice::new(2, 6)])
        .map_err(|e| e.to_string())?;
    ensure!(y.is_proper(), "fixture wall is not proper");
    let times = y.admissible_times(1, 1);
    ensure!(times == 1, "admissible_times(1, 1) = {times}");
    let pat = Pattern::new(2).map_err(|e| e.to_string())?;
    let one = pat.slice_f(1, y.column(1)).ok_or("f̃_1 vanishes on Y(1)")?;
    ensure!(
        y.with_column(1, one).is_proper(),
        "placing the first 1-block is improper"
    );
    let other = Slice::new(4, 6);
    ensure!(one != other, "both placements coincide");
    ensure!(
        y.with_column(1, other).is_proper(),
        "the other single 1-block placement is improper"
    );
    let two = pat.slice_f(1, one).ok_or("second f̃_1 vanishes")?;
    ensure!(
        !y.with_column(1, two).is_proper(),
        "a second 1-block stays proper"
    );
    Ok(format!(
        "admissible once; placements {one} and {other} proper, {two} not"
    ))
}

fn c11_round_trips() -> Outcome {
    let mut checked = 0;
    for k in 0..=2 {
        let p = path_graph(2, k, 6)?;
        for v in &p.nodes {
            let path = v.payload.as_path().expect("path graph");
            let y = path_to_wall(path).map_err(|e| e.to_string())?;
            ensure!(
                wall_to_path(&y).map_err(|e| e.to_string())? == *path,
                "Φ(Ψ(p)) ≠ p at node {}",
                v.id
            );
            checked += 1;
        }
        let w = wall_graph(2, k, 6)?;
        for v in &w.nodes {
            let y = v.payload.as_wall().expect("wall graph");
            let back = path_to_wall(&wall_to_path(y).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure!(back == *y, "Ψ(Φ(Y)) ≠ Y at node {}", v.id);
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} round trips for n = 2, k = 0..2, depth 6"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "perfect crystal cardinality and arrows",
            c1_perfect_shape,
            Some(Duration::from_secs(1)),
        ),
        (
            "crystal axioms on B, n = 2..4",
            c2_crystal_axioms,
            Some(Duration::from_secs(1)),
        ),
        (
            "slices modulo δ form B, n = 2, 3",
            c3_slices_are_b,
            Some(Duration::from_secs(1)),
        ),
        (
            "δ-equivariance of slice operators",
            c4_delta_equivariance,
            Some(Duration::from_secs(1)),
        ),
        (
            "top of B(Λ_0) for n = 2",
            c5_top_of_lambda_0,
            Some(Duration::from_secs(1)),
        ),
        (
            "wall and path graphs isomorphic",
            c6_isomorphism,
            Some(Duration::from_secs(60)),
        ),
        ("every generated wall proper and reduced", c7_image, None),
        ("affine weight law", c8_weight_law, None),
        ("same column and tensor position", c9_same_position, None),
        ("admissible-once fixture", c10_admissible_once, None),
        ("Φ and Ψ round trips", c11_round_trips, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (no, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = match panic::catch_unwind(AssertUnwindSafe(run)) {
            Ok(r) => r,
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]",
                no + 1
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]",
                    no + 1
                );
            }
        }
    }
    let _ = panic::take_hook();
    if failed == 0 {
        println!("acceptance: all 11 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 11 criteria fail");
        ExitCode::FAILURE
    }
}
