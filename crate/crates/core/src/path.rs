//! The path realization `P(Λ_k)` and the maps between paths and walls.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{check_index, check_rank, Weight};
use crate::error::{Error, Result};
use crate::perfect::{PerfectCrystal, PerfectElement};
use crate::signature::{column_entries, Origin, Signature};
use crate::slice::Pattern;
use crate::wall::Wall;

/// Copies of the tail tried before the signature must have settled.
const MAX_TAIL_COPIES: usize = 4;
/// Default bound on raising steps when inverting `Φ`.
pub const DEFAULT_UNWIND_BUDGET: usize = 10_000;

/// A path `⋯ ⊗ p(1) ⊗ p(0)` equal to the ground element beyond `dev`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathState {
    n: usize,
    k: usize,
    dev: Vec<PerfectElement>,
    tail: PerfectElement,
}

impl PathState {
    pub fn ground(n: usize, k: usize) -> Result<PathState> {
        check_rank(n)?;
        check_index(n, k)?;
        let tail = PerfectCrystal::new(n)?.ground_element(k)?;
        Ok(PathState {
            n,
            k,
            dev: Vec::new(),
            tail,
        })
    }

    /// A path from its components, `dev[0] = p(0)`.
    pub fn from_dev(n: usize, k: usize, dev: Vec<PerfectElement>) -> Result<PathState> {
        let mut p = PathState::ground(n, k)?;
        for b in &dev {
            if b.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    found: b.rank(),
                });
            }
            PerfectElement::new(b.x.clone(), b.xbar.clone())?;
        }
        p.dev = dev;
        p.normalize();
        Ok(p)
    }

    fn normalize(&mut self) {
        while self.dev.last() == Some(&self.tail) {
            self.dev.pop();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dev(&self) -> &[PerfectElement] {
        &self.dev
    }

    pub fn tail(&self) -> &PerfectElement {
        &self.tail
    }

    pub fn component(&self, j: usize) -> &PerfectElement {
        self.dev.get(j).unwrap_or(&self.tail)
    }

    fn crystal(&self) -> PerfectCrystal {
        PerfectCrystal::new(self.n).expect("rank checked at construction")
    }

    fn with_component(&self, j: usize, b: PerfectElement) -> PathState {
        let mut p = self.clone();
        if j >= p.dev.len() {
            p.dev.resize(j + 1, p.tail.clone());
        }
        p.dev[j] = b;
        p.normalize();
        p
    }

    fn signature_with_copies(&self, i: usize, copies: usize) -> Signature {
        let bc = self.crystal();
        let len = self.dev.len();
        let (te, tp) = (bc.eps(i, &self.tail), bc.phi(i, &self.tail));
        let tail_part = (0..copies).rev().flat_map(|m| {
            let ones = column_entries(Origin::Tail, te, 0);
            let zeros = column_entries(Origin::Column(len + m), 0, tp);
            ones.chain(zeros)
        });
        let finite = (0..len).rev().flat_map(|j| {
            let b = &self.dev[j];
            column_entries(Origin::Column(j), bc.eps(i, b), bc.phi(i, b))
        });
        Signature::reduce(tail_part.chain(finite).collect::<Vec<_>>())
    }

    /// The reduced `i`-signature with the tail's contribution settled.
    ///
    /// # Panics
    ///
    /// If the tail never settles, which cannot happen for a ground element.
    pub fn i_signature(&self, i: usize) -> Signature {
        let mut prev = self.signature_with_copies(i, 1);
        for copies in 2..=MAX_TAIL_COPIES {
            let next = self.signature_with_copies(i, copies);
            if next == prev {
                return prev;
            }
            prev = next;
        }
        panic!("tail of the {i}-signature did not settle");
    }

    /// `f̃_i` together with the tensor position it acted on.
    pub fn f_at(&self, i: usize) -> Option<(usize, PathState)> {
        let j = match self.i_signature(i).leftmost_zero()? {
            Origin::Column(j) => j,
            Origin::Tail => unreachable!("tail zeros carry a position"),
        };
        let b = self
            .crystal()
            .f(i, self.component(j))
            .expect("a surviving 0 has φ_i > 0");
        Some((j, self.with_component(j, b)))
    }

    /// `ẽ_i` together with the tensor position it acted on.
    pub fn e_at(&self, i: usize) -> Option<(usize, PathState)> {
        let j = match self.i_signature(i).rightmost_one()? {
            Origin::Column(j) => j,
            Origin::Tail => return None,
        };
        let b = self
            .crystal()
            .e(i, self.component(j))
            .expect("a surviving 1 has ε_i > 0");
        Some((j, self.with_component(j, b)))
    }

    pub fn f(&self, i: usize) -> Option<PathState> {
        self.f_at(i).map(|(_, p)| p)
    }

    pub fn e(&self, i: usize) -> Option<PathState> {
        self.e_at(i).map(|(_, p)| p)
    }

    pub fn phi(&self, i: usize) -> u32 {
        self.i_signature(i).zeros() as u32
    }

    pub fn eps(&self, i: usize) -> u32 {
        self.i_signature(i).finite_ones() as u32
    }

    /// `Σ (φ_i − ε_i) Λ_i`.
    pub fn cwt(&self) -> Weight {
        let mut w = Weight::zero(self.n);
        for i in 0..=self.n {
            w.lam[i] = self.phi(i) as i64 - self.eps(i) as i64;
        }
        w
    }

    /// Affine weight, taken from the corresponding wall.
    pub fn wt(&self) -> Result<Weight> {
        path_to_wall(self)?.wt()
    }
}

#[derive(Serialize, Deserialize)]
struct PathRecord {
    n: usize,
    k: usize,
    dev: Vec<PerfectElement>,
}

impl Serialize for PathState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathRecord {
            n: self.n,
            k: self.k,
            dev: self.dev.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PathState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PathRecord::deserialize(d)?;
        PathState::from_dev(r.n, r.k, r.dev).map_err(serde::de::Error::custom)
    }
}

/// The map `Φ`: each column goes to its perfect crystal element.
pub fn wall_to_path(y: &Wall) -> Result<PathState> {
    let mut p = PathState::ground(y.n(), y.k())?;
    let pat = Pattern::new(y.n())?;
    let tail = pat.to_perfect(y.tail());
    if tail != p.tail {
        return Err(Error::invariant(format!(
            "tail column {} maps to {tail}, not the ground element {}",
            y.tail(),
            p.tail
        )));
    }
    p.dev = y.cols().iter().map(|&c| pat.to_perfect(c)).collect();
    p.normalize();
    Ok(p)
}

/// The map `Ψ` with the default unwinding budget.
pub fn path_to_wall(p: &PathState) -> Result<Wall> {
    path_to_wall_with_budget(p, DEFAULT_UNWIND_BUDGET)
}

/// The map `Ψ`: raise `p` to the ground path, then lower the ground wall
/// along the same word.
pub fn path_to_wall_with_budget(p: &PathState, budget: usize) -> Result<Wall> {
    let ground = PathState::ground(p.n, p.k)?;
    let mut word = Vec::new();
    let mut cur = p.clone();
    while cur != ground {
        if word.len() >= budget {
            return Err(Error::StepBudgetExhausted { budget });
        }
        let (i, up) = (0..=p.n)
            .find_map(|i| cur.e(i).map(|q| (i, q)))
            .ok_or_else(|| Error::invariant("path is not in the highest weight component"))?;
        word.push(i);
        cur = up;
    }
    let mut y = Wall::ground(p.n, p.k)?;
    for &i in word.iter().rev() {
        y = y
            .f(i)
            .ok_or_else(|| Error::invariant(format!("f̃_{i} vanishes while replaying on\n{y}")))?;
    }
    if wall_to_path(&y)? != *p {
        return Err(Error::invariant(format!("Φ(Ψ(p)) ≠ p for\n{y}")));
    }
    Ok(y)
}
