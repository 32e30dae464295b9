//! Crystal graphs generated from either realization.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::{check_index, check_rank, CartanData, Weight};
use crate::error::{Error, Result};
use crate::path::PathState;
use crate::wall::Wall;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Realization {
    Wall,
    Path,
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::Wall => "wall",
            Realization::Path => "path",
        })
    }
}

impl FromStr for Realization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wall" => Ok(Realization::Wall),
            "path" => Ok(Realization::Path),
            _ => Err(Error::invariant(format!("unknown realization {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Wall(Wall),
    Path(PathState),
}

impl Payload {
    pub fn ground(realization: Realization, n: usize, k: usize) -> Result<Payload> {
        Ok(match realization {
            Realization::Wall => Payload::Wall(Wall::ground(n, k)?),
            Realization::Path => Payload::Path(PathState::ground(n, k)?),
        })
    }

    /// `f̃_i` with the column or tensor position it acted on.
    pub fn f_at(&self, i: usize) -> Option<(usize, Payload)> {
        match self {
            Payload::Wall(y) => y.f_at(i).map(|(j, y)| (j, Payload::Wall(y))),
            Payload::Path(p) => p.f_at(i).map(|(j, p)| (j, Payload::Path(p))),
        }
    }

    pub fn e(&self, i: usize) -> Option<Payload> {
        match self {
            Payload::Wall(y) => y.e(i).map(Payload::Wall),
            Payload::Path(p) => p.e(i).map(Payload::Path),
        }
    }

    pub fn phi(&self, i: usize) -> u32 {
        match self {
            Payload::Wall(y) => y.phi(i),
            Payload::Path(p) => p.phi(i),
        }
    }

    pub fn eps(&self, i: usize) -> u32 {
        match self {
            Payload::Wall(y) => y.eps(i),
            Payload::Path(p) => p.eps(i),
        }
    }

    pub fn as_wall(&self) -> Option<&Wall> {
        match self {
            Payload::Wall(y) => Some(y),
            Payload::Path(_) => None,
        }
    }

    pub fn as_path(&self) -> Option<&PathState> {
        match self {
            Payload::Path(p) => Some(p),
            Payload::Wall(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: usize,
    pub depth: usize,
    pub wt: Weight,
    pub payload: Payload,
}

/// One `f̃_i` arrow, `(source, color, target)`.
pub type Edge = (usize, usize, usize);

/// A depth-limited piece of `B(Λ_k)` rooted at node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph {
    pub n: usize,
    pub k: usize,
    pub depth: usize,
    pub realization: Realization,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

/// Generation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphSpec {
    pub realization: Realization,
    pub n: usize,
    pub k: usize,
    pub depth: usize,
    pub node_cap: usize,
}

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

impl GraphSpec {
    pub fn new(realization: Realization, n: usize, k: usize, depth: usize) -> Self {
        GraphSpec {
            realization,
            n,
            k,
            depth,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

/// Breadth-first generation from the highest weight element.
///
/// Wall weights come from the walls themselves. Path weights are
/// propagated along edges from `Λ_k`, and every edge is checked for
/// consistency.
pub fn generate(spec: &GraphSpec) -> Result<CrystalGraph> {
    generate_with(spec, |_, _, _, _| Ok(()))
}

/// As [`generate`], calling `observe(source, color, acted_on, target)` for
/// every arrow found.
pub fn generate_with(
    spec: &GraphSpec,
    mut observe: impl FnMut(&Payload, usize, usize, &Payload) -> Result<()>,
) -> Result<CrystalGraph> {
    let GraphSpec {
        realization,
        n,
        k,
        depth,
        node_cap,
    } = *spec;
    check_rank(n)?;
    check_index(n, k)?;
    if node_cap == 0 {
        return Err(Error::NodeCapExceeded { cap: 0 });
    }
    let cartan = CartanData::new(n)?;
    let roots: Vec<Weight> = (0..=n)
        .map(|i| cartan.simple_root(i))
        .collect::<Result<_>>()?;
    let root = Payload::ground(realization, n, k)?;
    let mut index: HashMap<Payload, usize> = HashMap::new();
    index.insert(root.clone(), 0);
    let mut nodes = vec![Node {
        id: 0,
        depth: 0,
        wt: Weight::fundamental(n, k),
        payload: root,
    }];
    if let Payload::Wall(y) = &nodes[0].payload {
        let wt = y.wt()?;
        if wt != nodes[0].wt {
            return Err(Error::invariant(format!("ground wall has weight {wt}")));
        }
    }
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        if nodes[u].depth >= depth {
            continue;
        }
        for (i, root) in roots.iter().enumerate() {
            let Some((j, v)) = nodes[u].payload.f_at(i) else {
                continue;
            };
            observe(&nodes[u].payload, i, j, &v)?;
            let expected = &nodes[u].wt - root;
            let target = match index.get(&v) {
                Some(&t) => {
                    if nodes[t].wt != expected {
                        return Err(Error::invariant(format!(
                            "edge {u} -{i}-> {t} breaks the weight law"
                        )));
                    }
                    t
                }
                None => {
                    if nodes.len() >= node_cap {
                        return Err(Error::NodeCapExceeded { cap: node_cap });
                    }
                    let wt = match &v {
                        Payload::Wall(y) => {
                            let wt = y.wt()?;
                            if wt != expected {
                                return Err(Error::invariant(format!(
                                    "f̃_{i} moves weight {} to {wt}, expected {expected}",
                                    nodes[u].wt
                                )));
                            }
                            wt
                        }
                        Payload::Path(_) => expected,
                    };
                    let t = nodes.len();
                    index.insert(v.clone(), t);
                    nodes.push(Node {
                        id: t,
                        depth: nodes[u].depth + 1,
                        wt,
                        payload: v,
                    });
                    queue.push_back(t);
                    t
                }
            };
            edges.push((u, i, target));
        }
    }
    log::debug!(
        "generated {} nodes and {} edges ({realization}, n={n}, k={k}, depth={depth})",
        nodes.len(),
        edges.len()
    );
    Ok(CrystalGraph {
        n,
        k,
        depth,
        realization,
        nodes,
        edges,
    })
}

/// Where two graphs first disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub left: usize,
    pub right: usize,
    pub color: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nodes {} and {}", self.left, self.right)?;
        if let Some(c) = self.color {
            write!(f, ", color {c}")?;
        }
        write!(f, ": {}", self.reason)
    }
}

impl CrystalGraph {
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.depth + 1];
        for v in &self.nodes {
            sizes[v.depth] += 1;
        }
        sizes
    }

    /// Outgoing arrows per node, keyed by color.
    pub fn out_edges(&self) -> Vec<BTreeMap<usize, usize>> {
        let mut out = vec![BTreeMap::new(); self.nodes.len()];
        for &(u, i, v) in &self.edges {
            out[u].insert(i, v);
        }
        out
    }

    /// Checks that each color acts as a partial injection.
    pub fn check_functional(&self) -> Result<()> {
        let mut seen_out = HashMap::new();
        let mut seen_in = HashMap::new();
        for &(u, i, v) in &self.edges {
            if seen_out.insert((u, i), v).is_some() {
                return Err(Error::invariant(format!("node {u} has two {i}-arrows out")));
            }
            if seen_in.insert((v, i), u).is_some() {
                return Err(Error::invariant(format!("node {v} has two {i}-arrows in")));
            }
        }
        Ok(())
    }

    /// Rooted isomorphism by walking both graphs in lockstep.
    pub fn isomorphic(&self, other: &CrystalGraph) -> std::result::Result<(), Divergence> {
        let diverge = |l: usize, r: usize, color: Option<usize>, reason: String| Divergence {
            left: l,
            right: r,
            color,
            reason,
        };
        if self.n != other.n || self.k != other.k || self.depth != other.depth {
            return Err(diverge(
                0,
                0,
                None,
                "graphs have different parameters".into(),
            ));
        }
        let (lo, ro) = (self.out_edges(), other.out_edges());
        let mut fwd: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut back: Vec<Option<usize>> = vec![None; other.nodes.len()];
        if self.nodes.is_empty() || other.nodes.is_empty() {
            return Err(diverge(0, 0, None, "empty graph".into()));
        }
        fwd[0] = Some(0);
        back[0] = Some(0);
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        while let Some((l, r)) = queue.pop_front() {
            let (a, b) = (&self.nodes[l], &other.nodes[r]);
            if a.depth != b.depth {
                return Err(diverge(
                    l,
                    r,
                    None,
                    format!("depths {} and {}", a.depth, b.depth),
                ));
            }
            if a.wt != b.wt {
                return Err(diverge(
                    l,
                    r,
                    None,
                    format!("weights {} and {}", a.wt, b.wt),
                ));
            }
            let colors: Vec<usize> = lo[l].keys().chain(ro[r].keys()).copied().collect();
            for i in colors {
                let (lt, rt) = match (lo[l].get(&i), ro[r].get(&i)) {
                    (Some(&lt), Some(&rt)) => (lt, rt),
                    (Some(_), None) => {
                        return Err(diverge(l, r, Some(i), "arrow only on the left".into()))
                    }
                    (None, Some(_)) => {
                        return Err(diverge(l, r, Some(i), "arrow only on the right".into()))
                    }
                    (None, None) => unreachable!(),
                };
                match (fwd[lt], back[rt]) {
                    (None, None) => {
                        fwd[lt] = Some(rt);
                        back[rt] = Some(lt);
                        queue.push_back((lt, rt));
                    }
                    (Some(x), Some(y)) if x == rt && y == lt => {}
                    _ => {
                        return Err(diverge(
                            l,
                            r,
                            Some(i),
                            format!("targets {lt} and {rt} are matched elsewhere"),
                        ))
                    }
                }
            }
        }
        if let Some(l) = fwd.iter().position(Option::is_none) {
            return Err(diverge(
                l,
                0,
                None,
                "left node unreachable in lockstep".into(),
            ));
        }
        if let Some(r) = back.iter().position(Option::is_none) {
            return Err(diverge(
                0,
                r,
                None,
                "right node unreachable in lockstep".into(),
            ));
        }
        if self.edges.len() != other.edges.len() {
            return Err(diverge(0, 0, None, "edge counts differ".into()));
        }
        Ok(())
    }

    /// Node count per affine weight.
    pub fn weight_multiplicities(&self) -> BTreeMap<Weight, usize> {
        let mut m = BTreeMap::new();
        for v in &self.nodes {
            *m.entry(v.wt.clone()).or_insert(0) += 1;
        }
        m
    }

    /// `(depth, weight, multiplicity)` rows sorted by depth then weight.
    pub fn character(&self) -> Vec<(usize, Weight, usize)> {
        let mut m: BTreeMap<(usize, Weight), usize> = BTreeMap::new();
        for v in &self.nodes {
            *m.entry((v.depth, v.wt.clone())).or_insert(0) += 1;
        }
        m.into_iter().map(|((d, w), c)| (d, w, c)).collect()
    }

    pub fn export_dot(&self) -> String {
        let mut out = format!(
            "digraph crystal {{\n  // C_{}^(1), k = {}, depth = {}, realization = {}\n",
            self.n, self.k, self.depth, self.realization
        );
        for v in &self.nodes {
            out.push_str(&format!("  {} [label=\"{}:{}\"];\n", v.id, v.id, v.wt));
        }
        for &(u, i, v) in &self.edges {
            out.push_str(&format!("  {u} -> {v} [label=\"{i}\"];\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn export_json(&self) -> String {
        #[derive(Serialize)]
        struct Meta {
            #[serde(rename = "type")]
            ty: &'static str,
            n: usize,
            k: usize,
            depth: usize,
            realization: Realization,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            meta: Meta,
            nodes: &'a [Node],
            edges: &'a [Edge],
        }
        let doc = Doc {
            meta: Meta {
                ty: "C",
                n: self.n,
                k: self.k,
                depth: self.depth,
                realization: self.realization,
            },
            nodes: &self.nodes,
            edges: &self.edges,
        };
        let mut s = serde_json::to_string(&doc).expect("graph serializes");
        s.push('\n');
        s
    }

    /// Nodes then edges as tab-separated rows.
    pub fn export_tsv(&self) -> String {
        let mut out = String::from("# node\tdepth\tweight\n");
        for v in &self.nodes {
            out.push_str(&format!("{}\t{}\t{}\n", v.id, v.depth, v.wt));
        }
        out.push_str("# source\tcolor\ttarget\n");
        for &(u, i, v) in &self.edges {
            out.push_str(&format!("{u}\t{i}\t{v}\n"));
        }
        out
    }
}
