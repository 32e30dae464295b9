//! Level-1 Young walls: columns of slices over a ground-state wall.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{check_index, check_rank, Weight};
use crate::error::{Error, Result};
use crate::signature::{column_entries, Origin, Signature};
use crate::slice::{Layer, Pattern, Slice, SplitSlice};

/// Extra columns of tail examined past the deviation.
const SENTINELS: usize = 2;
const MAX_WINDOW_GROWTH: usize = 16;
/// Bound on literal add/remove iterations within one column.
const MAX_COLUMN_STEPS: u32 = 256;

/// Column of the ground-state wall `Y_{Λ_k}`.
pub fn ground_column(n: usize, k: usize) -> Slice {
    let n32 = n as u32;
    let k32 = k as u32;
    match k {
        0 => Slice::new(1, 1),
        k if k == n => Slice::new(2 * n32, 2 * n32 + 2),
        _ => Slice::new(2 * k32, 4 * n32 + 2 - 2 * k32),
    }
}

/// A wall `(..., Y(2), Y(1), Y(0))` whose columns equal `tail` beyond
/// the stored prefix. Column `Y(0)` is `cols[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    n: usize,
    k: usize,
    tail: Slice,
    cols: Vec<Slice>,
}

/// A wall after splitting every column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitProfile {
    pub cols: Vec<SplitSlice>,
    pub tail: SplitSlice,
}

impl Wall {
    /// The ground-state wall `Y_{Λ_k}`.
    pub fn ground(n: usize, k: usize) -> Result<Wall> {
        check_rank(n)?;
        check_index(n, k)?;
        Ok(Wall {
            n,
            k,
            tail: ground_column(n, k),
            cols: Vec::new(),
        })
    }

    /// A wall over the ground of `Λ_k`, given its columns from `Y(0)`.
    pub fn from_columns(n: usize, k: usize, cols: Vec<Slice>) -> Result<Wall> {
        check_rank(n)?;
        check_index(n, k)?;
        Wall::with_tail(n, k, ground_column(n, k), cols)
    }

    /// A wall whose columns from `Y(cols.len())` on all equal `tail`.
    pub fn with_tail(n: usize, k: usize, tail: Slice, cols: Vec<Slice>) -> Result<Wall> {
        check_rank(n)?;
        check_index(n, k)?;
        let p = Pattern::new(n)?;
        p.validate(tail)?;
        for &c in &cols {
            p.validate(c)?;
        }
        let mut w = Wall { n, k, tail, cols };
        w.normalize();
        Ok(w)
    }

    fn normalize(&mut self) {
        while self.cols.last() == Some(&self.tail) {
            self.cols.pop();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tail(&self) -> Slice {
        self.tail
    }

    /// Stored columns, `Y(0)` first.
    pub fn cols(&self) -> &[Slice] {
        &self.cols
    }

    /// True when the tail agrees with the ground wall.
    pub fn has_ground_tail(&self) -> bool {
        self.tail == ground_column(self.n, self.k)
    }

    pub fn column(&self, j: usize) -> Slice {
        self.cols.get(j).copied().unwrap_or(self.tail)
    }

    fn pattern(&self) -> Pattern {
        Pattern::new(self.n).expect("rank checked at construction")
    }

    /// Copy with column `j` replaced.
    pub fn with_column(&self, j: usize, c: Slice) -> Wall {
        let mut w = self.clone();
        if j >= w.cols.len() {
            w.cols.resize(j + 1, w.tail);
        }
        w.cols[j] = c;
        w.normalize();
        w
    }

    pub fn split_all(&self) -> SplitProfile {
        let p = self.pattern();
        SplitProfile {
            cols: self.cols.iter().map(|&c| p.split_if_possible(c)).collect(),
            tail: p.split_if_possible(self.tail),
        }
    }

    /// Whether the wall is a proper level-1 Young wall.
    ///
    /// After splitting, no layer may rise from right to left, and no two
    /// columns may share an integer height in the same layer. The tail
    /// repeats forever, so its split heights must be fractional.
    pub fn is_proper(&self) -> bool {
        let p = self.pattern();
        if !p.is_valid(self.tail) || self.cols.iter().any(|&c| !p.is_valid(c)) {
            return false;
        }
        let s = self.split_all();
        for layer in [Layer::First, Layer::Second] {
            let hs: Vec<u32> = s.cols.iter().map(|c| c.height(layer)).collect();
            let t = s.tail.height(layer);
            if hs.windows(2).any(|w| w[1] > w[0]) {
                return false;
            }
            if hs.last().is_some_and(|&last| t > last) {
                return false;
            }
            if t.is_multiple_of(2) {
                return false;
            }
            let mut even: Vec<u32> = hs.iter().copied().filter(|h| h % 2 == 0).collect();
            let total = even.len();
            even.sort_unstable();
            even.dedup();
            if even.len() != total {
                return false;
            }
        }
        true
    }

    pub fn ensure_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::invariant(format!("wall is not proper:\n{self}")))
        }
    }

    /// Whether a δ can be taken off column `j` leaving a proper wall.
    pub fn has_removable_delta(&self, j: usize) -> bool {
        let p = self.pattern();
        p.remove_delta(self.column(j))
            .is_some_and(|d| self.with_column(j, d).is_proper())
    }

    /// A proper wall with no removable δ anywhere.
    pub fn is_reduced(&self) -> bool {
        self.is_proper() && (0..self.cols.len() + SENTINELS).all(|j| !self.has_removable_delta(j))
    }

    fn count_steps(&self, j: usize, step: impl Fn(Slice) -> Option<Slice>) -> u32 {
        let mut cur = self.clone();
        let mut count = 0;
        while let Some(d) = step(cur.column(j)) {
            let next = cur.with_column(j, d);
            if !next.is_proper() {
                break;
            }
            cur = next;
            count += 1;
            assert!(count < MAX_COLUMN_STEPS, "column {j} never stops growing");
        }
        count
    }

    /// How many `i`-blocks can be added to `Y(j)` one at a time while the
    /// wall stays proper.
    pub fn admissible_times(&self, j: usize, i: usize) -> u32 {
        let p = self.pattern();
        self.count_steps(j, |c| p.slice_f(i, c))
    }

    /// How many `i`-blocks can be removed from `Y(j)` one at a time while
    /// the wall stays proper.
    pub fn removable_times(&self, j: usize, i: usize) -> u32 {
        let p = self.pattern();
        self.count_steps(j, |c| p.slice_e(i, c))
    }

    /// The reduced `i`-signature, read over columns from the tail side
    /// down to `Y(0)`.
    ///
    /// # Panics
    ///
    /// If tail columns keep contributing, which only happens for an
    /// improper wall.
    pub fn i_signature(&self, i: usize) -> Signature {
        let len = self.cols.len();
        let mut width = SENTINELS;
        let marks = |j: usize| (self.removable_times(j, i), self.admissible_times(j, i));
        loop {
            let end = len + width;
            let quiet = (end - SENTINELS..end).all(|j| marks(j) == (0, 0));
            if quiet {
                let seq = (0..end)
                    .rev()
                    .flat_map(|j| {
                        let (ones, zeros) = marks(j);
                        column_entries(Origin::Column(j), ones, zeros)
                    })
                    .collect::<Vec<_>>();
                return Signature::reduce(seq);
            }
            width += 1;
            assert!(
                width <= MAX_WINDOW_GROWTH,
                "tail of the {i}-signature never becomes quiet:\n{self}"
            );
        }
    }

    fn column_of(origin: Origin) -> usize {
        match origin {
            Origin::Column(j) => j,
            Origin::Tail => unreachable!("wall signatures have finite origins"),
        }
    }

    /// `f̃_i` together with the column it acted on.
    pub fn f_at(&self, i: usize) -> Option<(usize, Wall)> {
        let j = Self::column_of(self.i_signature(i).leftmost_zero()?);
        let d = self
            .pattern()
            .slice_f(i, self.column(j))
            .expect("a surviving 0 is an admissible slot");
        let w = self.with_column(j, d);
        debug_assert!(w.is_proper());
        Some((j, w))
    }

    /// `ẽ_i` together with the column it acted on.
    pub fn e_at(&self, i: usize) -> Option<(usize, Wall)> {
        let j = Self::column_of(self.i_signature(i).rightmost_one()?);
        let d = self
            .pattern()
            .slice_e(i, self.column(j))
            .expect("a surviving 1 is a removable block");
        let w = self.with_column(j, d);
        debug_assert!(w.is_proper());
        Some((j, w))
    }

    pub fn f(&self, i: usize) -> Option<Wall> {
        self.f_at(i).map(|(_, w)| w)
    }

    pub fn e(&self, i: usize) -> Option<Wall> {
        self.e_at(i).map(|(_, w)| w)
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

    /// Count of 0-colored half-units above the ground wall.
    pub fn excess_zeros(&self) -> Result<u32> {
        if !self.has_ground_tail() {
            return Err(Error::invariant("wall is not built on its ground state"));
        }
        let p = self.pattern();
        let g = ground_column(self.n, self.k);
        let mut total = 0u32;
        for &c in &self.cols {
            if c.h1 < g.h1 || c.h2 < g.h2 {
                return Err(Error::invariant(format!(
                    "column {c} lies below the ground column {g}"
                )));
            }
            total +=
                p.zero_count(c.h1) + p.zero_count(c.h2) - p.zero_count(g.h1) - p.zero_count(g.h2);
        }
        Ok(total)
    }

    /// Affine weight: the classical weight less half a δ per excess 0-half.
    pub fn wt(&self) -> Result<Weight> {
        let mut w = self.cwt();
        w.delta2 -= self.excess_zeros()? as i64;
        Ok(w)
    }

    /// Per-column block colors, `Y(0)` last as drawn.
    pub fn render(&self) -> String {
        let p = self.pattern();
        let mut out = String::new();
        let fmt_layer = |h: u32| {
            p.layer_colors(h)
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!(
            "tail {}: c1 [{}] c2 [{}]\n",
            self.tail,
            fmt_layer(self.tail.h1),
            fmt_layer(self.tail.h2)
        ));
        for (j, c) in self.cols.iter().enumerate().rev() {
            out.push_str(&format!(
                "Y({j}) {c}: c1 [{}] c2 [{}]\n",
                fmt_layer(c.h1),
                fmt_layer(c.h2)
            ));
        }
        out
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct WallRecord {
    n: usize,
    k: usize,
    cols: Vec<Slice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<Slice>,
}

impl Serialize for Wall {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WallRecord {
            n: self.n,
            k: self.k,
            cols: self.cols.clone(),
            tail: (!self.has_ground_tail()).then_some(self.tail),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Wall {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WallRecord::deserialize(d)?;
        let tail = match r.tail {
            Some(t) => t,
            None => {
                check_rank(r.n).map_err(serde::de::Error::custom)?;
                check_index(r.n, r.k).map_err(serde::de::Error::custom)?;
                ground_column(r.n, r.k)
            }
        };
        Wall::with_tail(r.n, r.k, tail, r.cols).map_err(serde::de::Error::custom)
    }
}
