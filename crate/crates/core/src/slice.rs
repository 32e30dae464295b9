//! Level-1 slices and their crystal structure.
//!
//! A level-½ column always follows the fixed block pattern from its base,
//! so it is determined by its height. Heights are counted in half-units:
//! a 0-block is one half-unit tall, every other block two. One period of
//! the pattern (a δ) is `4n` half-units:
//!
//! ```text
//! [0,1)  0 covering        [1,2)  0 supporting
//! [2i, 2i+2)        supporting i   (1 <= i < n)
//! [2n, 2n+2)        n              (both roles)
//! [4n-2i, 4n-2i+2)  covering i     (1 <= i < n)
//! ```
//!
//! A level-1 slice is a pair of such heights `(h1, h2)` with
//! `h1 <= h2 <= h1 + 4n` and an even number of 0-blocks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{check_index, check_rank};
use crate::error::{Error, Result};
use crate::perfect::PerfectElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Supporting,
    Covering,
    Both,
}

/// One block position of the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternSlot {
    pub color: usize,
    pub role: Role,
    /// Height of the block in half-units.
    pub span: u32,
    /// Start of the block within its period.
    pub base_offset: u32,
}

impl PatternSlot {
    fn is_covering(&self) -> bool {
        matches!(self.role, Role::Covering | Role::Both)
    }
}

/// Front (`First`) or back (`Second`) level-½ constituent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Layer {
    First,
    Second,
}

impl Layer {
    pub fn other(self) -> Layer {
        match self {
            Layer::First => Layer::Second,
            Layer::Second => Layer::First,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slice {
    pub h1: u32,
    pub h2: u32,
}

impl Slice {
    pub const fn new(h1: u32, h2: u32) -> Self {
        Slice { h1, h2 }
    }

    pub fn height(&self, layer: Layer) -> u32 {
        match layer {
            Layer::First => self.h1,
            Layer::Second => self.h2,
        }
    }

    fn with_height(self, layer: Layer, h: u32) -> Slice {
        match layer {
            Layer::First => Slice { h1: h, ..self },
            Layer::Second => Slice { h2: h, ..self },
        }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h1, self.h2)
    }
}

/// A slice with a standalone rank, as written to JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRecord {
    pub h1: u32,
    pub h2: u32,
    pub n: usize,
}

/// A column after splitting; heights may sit mid-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitSlice {
    pub g1: u32,
    pub g2: u32,
    pub split_color: Option<usize>,
}

impl SplitSlice {
    pub fn height(&self, layer: Layer) -> u32 {
        match layer {
            Layer::First => self.g1,
            Layer::Second => self.g2,
        }
    }
}

/// A possible split: the covering block of `color` on top of `mover`
/// loses its upper half to the other layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Split {
    pub color: usize,
    pub mover: Layer,
}

/// The block pattern for a fixed rank, and every slice operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pattern {
    n: usize,
}

impl Pattern {
    pub fn new(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(Pattern { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Half-units in one δ.
    pub fn period(&self) -> u32 {
        4 * self.n as u32
    }

    /// The slot containing `[h, h+1)`.
    pub fn slot(&self, h: u32) -> PatternSlot {
        let n = self.n as u32;
        let p = self.period();
        let r = h % p;
        let (color, role, span, base) = match r {
            0 => (0, Role::Covering, 1, 0),
            1 => (0, Role::Supporting, 1, 1),
            r if r < 2 * n => (r / 2, Role::Supporting, 2, r / 2 * 2),
            r if r < 2 * n + 2 => (n, Role::Both, 2, 2 * n),
            r => {
                let c = (p - r).div_ceil(2);
                (c, Role::Covering, 2, p - 2 * c)
            }
        };
        PatternSlot {
            color: color as usize,
            role,
            span,
            base_offset: base,
        }
    }

    /// The slot that starts exactly at `h`, if `h` is a block boundary.
    pub fn slot_at(&self, h: u32) -> Option<PatternSlot> {
        let s = self.slot(h);
        (h % self.period() == s.base_offset).then_some(s)
    }

    /// The whole block ending exactly at `h`.
    pub fn top_block(&self, h: u32) -> Option<PatternSlot> {
        if h == 0 {
            return None;
        }
        let s = self.slot(h - 1);
        (h % self.period() == (s.base_offset + s.span) % self.period()).then_some(s)
    }

    pub fn on_boundary(&self, h: u32) -> bool {
        self.slot_at(h).is_some()
    }

    /// Whole 0-blocks strictly below `h`.
    pub fn zero_count(&self, h: u32) -> u32 {
        let p = self.period();
        2 * (h / p) + (h % p).min(2)
    }

    pub fn is_valid(&self, c: Slice) -> bool {
        c.h1 <= c.h2
            && c.h2 <= c.h1 + self.period()
            && self.on_boundary(c.h1)
            && self.on_boundary(c.h2)
            && (self.zero_count(c.h1) + self.zero_count(c.h2)).is_multiple_of(2)
    }

    pub fn validate(&self, c: Slice) -> Result<Slice> {
        if self.is_valid(c) {
            Ok(c)
        } else {
            Err(Error::InvalidSlice {
                h1: c.h1,
                h2: c.h2,
                n: self.n,
            })
        }
    }

    pub fn add_delta(&self, c: Slice) -> Slice {
        Slice::new(c.h2, c.h1 + self.period())
    }

    pub fn remove_delta(&self, c: Slice) -> Option<Slice> {
        (c.h2 >= self.period()).then(|| Slice::new(c.h2 - self.period(), c.h1))
    }

    /// The representative of the δ-class with `h2 < 4n`.
    pub fn canonicalize(&self, mut c: Slice) -> Slice {
        while let Some(d) = self.remove_delta(c) {
            c = d;
        }
        c
    }

    /// All canonical level-1 slices; one per element of the perfect crystal.
    pub fn canonical_slices(&self) -> Vec<Slice> {
        let p = self.period();
        let mut out = Vec::new();
        for h2 in 0..p {
            for h1 in 0..=h2 {
                let c = Slice::new(h1, h2);
                if self.is_valid(c) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// The split available in `c`, if any.
    ///
    /// # Panics
    ///
    /// If two different colors could be split at once, which cannot happen
    /// for a valid slice.
    pub fn splittable(&self, c: Slice) -> Option<Split> {
        let mut found: Option<Split> = None;
        for mover in [Layer::First, Layer::Second] {
            let Some(top) = self.top_block(c.height(mover)) else {
                continue;
            };
            if top.color == 0 || !top.is_covering() {
                continue;
            }
            let receiver = c.height(mover.other());
            if receiver % self.period() != 2 * top.color as u32 {
                continue;
            }
            if let Some(prev) = found {
                assert_eq!(prev.color, top.color, "slice {c} splits two colors at once");
            }
            found = Some(Split {
                color: top.color,
                mover,
            });
        }
        found
    }

    pub fn split(&self, c: Slice) -> Result<SplitSlice> {
        let s = self
            .splittable(c)
            .ok_or_else(|| Error::invariant(format!("slice {c} has nothing to split")))?;
        let (mut g1, mut g2) = (c.h1, c.h2);
        match s.mover {
            Layer::First => {
                g1 -= 1;
                g2 += 1;
            }
            Layer::Second => {
                g2 -= 1;
                g1 += 1;
            }
        }
        Ok(SplitSlice {
            g1,
            g2,
            split_color: Some(s.color),
        })
    }

    pub fn split_if_possible(&self, c: Slice) -> SplitSlice {
        self.split(c).unwrap_or(SplitSlice {
            g1: c.h1,
            g2: c.h2,
            split_color: None,
        })
    }

    fn splits(&self, c: Slice, color: usize) -> bool {
        self.splittable(c).is_some_and(|s| s.color == color)
    }

    /// Kashiwara lowering operator on slices.
    pub fn slice_f(&self, i: usize, c: Slice) -> Option<Slice> {
        check_index(self.n, i).ok()?;
        let out = if i == 0 { self.f0(c)? } else { self.fi(i, c)? };
        self.is_valid(out).then_some(out)
    }

    fn f0(&self, c: Slice) -> Option<Slice> {
        if self.splits(c, 1) {
            return None;
        }
        let z1 = self.slot_at(c.h1).is_some_and(|s| s.color == 0);
        let z2 = self.slot_at(c.h2).is_some_and(|s| s.color == 0);
        match (z1, z2) {
            (true, true) => Some(Slice::new(c.h1 + 1, c.h2 + 1)),
            (true, false) => Some(Slice::new(c.h1 + 2, c.h2)),
            (false, true) => Some(Slice::new(c.h1, c.h2 + 2)),
            (false, false) => None,
        }
    }

    fn fi(&self, i: usize, c: Slice) -> Option<Slice> {
        if i != self.n && self.splits(c, i + 1) {
            return None;
        }
        let s1 = self.slot_at(c.h1).filter(|s| s.color == i);
        let s2 = self.slot_at(c.h2).filter(|s| s.color == i);
        let layer = match (s1, s2) {
            (None, None) => return None,
            (Some(_), None) => Layer::First,
            (None, Some(_)) => Layer::Second,
            (Some(a), Some(b)) if i == self.n || a.role == b.role => {
                if c.h1 != c.h2 {
                    Layer::First
                } else {
                    Layer::Second
                }
            }
            (Some(a), Some(_)) => {
                if a.role == Role::Covering {
                    Layer::First
                } else {
                    Layer::Second
                }
            }
        };
        Some(c.with_height(layer, c.height(layer) + 2))
    }

    /// Kashiwara raising operator on slices.
    pub fn slice_e(&self, i: usize, c: Slice) -> Option<Slice> {
        check_index(self.n, i).ok()?;
        let out = if i == 0 { self.e0(c)? } else { self.ei(i, c)? };
        self.is_valid(out).then_some(out)
    }

    fn e0(&self, c: Slice) -> Option<Slice> {
        if self.splits(c, 1) {
            return None;
        }
        let z1 = self.top_block(c.h1).is_some_and(|s| s.color == 0);
        let z2 = self.top_block(c.h2).is_some_and(|s| s.color == 0);
        match (z1, z2) {
            (true, true) => Some(Slice::new(c.h1 - 1, c.h2 - 1)),
            (true, false) => Some(Slice::new(c.h1.checked_sub(2)?, c.h2)),
            (false, true) => Some(Slice::new(c.h1, c.h2.checked_sub(2)?)),
            (false, false) => None,
        }
    }

    fn ei(&self, i: usize, c: Slice) -> Option<Slice> {
        if i != self.n && self.splits(c, i + 1) {
            return None;
        }
        let t1 = self.top_block(c.h1).filter(|s| s.color == i);
        let t2 = self.top_block(c.h2).filter(|s| s.color == i);
        let layer = match (t1, t2) {
            (None, None) => return None,
            (Some(_), None) => Layer::First,
            (None, Some(_)) => Layer::Second,
            (Some(a), Some(b)) if i == self.n || a.role == b.role => {
                if c.h1 != c.h2 {
                    Layer::Second
                } else {
                    Layer::First
                }
            }
            (Some(a), Some(_)) => {
                if a.role == Role::Supporting {
                    Layer::First
                } else {
                    Layer::Second
                }
            }
        };
        Some(c.with_height(layer, c.height(layer) - 2))
    }

    /// Lifts by δ until the front layer is nonempty. An empty layer has no
    /// top block, so operators only commute with δ from here on.
    pub fn standing(&self, mut c: Slice) -> Slice {
        while c.h1 == 0 {
            c = self.add_delta(c);
        }
        c
    }

    /// Lowering operator on δ-classes, returning the canonical representative.
    pub fn class_f(&self, i: usize, c: Slice) -> Option<Slice> {
        self.slice_f(i, self.standing(c))
            .map(|d| self.canonicalize(d))
    }

    /// Raising operator on δ-classes, returning the canonical representative.
    pub fn class_e(&self, i: usize, c: Slice) -> Option<Slice> {
        self.slice_e(i, self.standing(c))
            .map(|d| self.canonicalize(d))
    }

    /// Half-vector for a height in `[1, 4n]`: `None` for the zero half,
    /// otherwise `(i, barred)`.
    fn piece_of_height(&self, h: u32) -> Option<(usize, bool)> {
        let n = self.n as u32;
        let p = self.period();
        match h {
            1 => None,
            h if h % 2 == 0 && (2..=2 * n).contains(&h) => Some(((h / 2) as usize, false)),
            h if h % 2 == 0 && (2 * n + 2..=p).contains(&h) => {
                Some((((p + 2 - h) / 2) as usize, true))
            }
            _ => panic!("height {h} does not encode a half of a perfect crystal element"),
        }
    }

    fn height_of_piece(&self, piece: Option<(usize, bool)>) -> u32 {
        let n = self.n as u32;
        match piece {
            None => 1,
            Some((i, false)) => 2 * i as u32,
            Some((i, true)) => 4 * n + 2 - 2 * i as u32,
        }
    }

    /// Maps a slice to the perfect crystal element of its δ-class.
    ///
    /// # Panics
    ///
    /// On an invalid slice.
    pub fn to_perfect(&self, c: Slice) -> PerfectElement {
        assert!(
            self.is_valid(c),
            "{c} is not a valid slice for n = {}",
            self.n
        );
        let c = self.standing(self.canonicalize(c));
        let mut b = PerfectElement::zero(self.n);
        for h in [c.h1, c.h2] {
            if let Some((i, bar)) = self.piece_of_height(h) {
                if bar {
                    b.xbar[i - 1] += 1;
                } else {
                    b.x[i - 1] += 1;
                }
            }
        }
        b
    }

    /// Canonical slice of the class corresponding to `b`.
    pub fn from_perfect(&self, b: &PerfectElement) -> Result<Slice> {
        if b.rank() != self.n || !matches!(b.total(), 0 | 2) {
            return Err(Error::invariant(format!(
                "{b} is not an element of B for n = {}",
                self.n
            )));
        }
        let mut pieces: Vec<(usize, bool)> = Vec::with_capacity(2);
        for i in 1..=self.n {
            for _ in 0..b.x[i - 1] {
                pieces.push((i, false));
            }
            for _ in 0..b.xbar[i - 1] {
                pieces.push((i, true));
            }
        }
        let mut hs: Vec<u32> = match pieces.as_slice() {
            [] => vec![1, 1],
            [a, b] => vec![
                self.height_of_piece(Some(*a)),
                self.height_of_piece(Some(*b)),
            ],
            _ => unreachable!("total is 0 or 2"),
        };
        hs.sort_unstable();
        Ok(self.canonicalize(Slice::new(hs[0], hs[1])))
    }

    /// Block colors of one layer, bottom to top.
    pub fn layer_colors(&self, h: u32) -> Vec<usize> {
        let mut out = Vec::new();
        let mut at = 0;
        while at < h {
            let s = self.slot(at);
            out.push(s.color);
            at += s.span;
        }
        out
    }

    /// Text rendering for debug output.
    pub fn render(&self, c: Slice) -> String {
        let fmt_layer = |h: u32| {
            self.layer_colors(h)
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("c1: [{}]\nc2: [{}]", fmt_layer(c.h1), fmt_layer(c.h2))
    }
}
