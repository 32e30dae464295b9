//! The level-1 perfect crystal `B` of type C_n^(1).
//!
//! An element is a vector `(x_1, …, x_n | x̄_n, …, x̄_1)` of nonnegative
//! integers whose coordinates sum to 0 or 2. The `xbar` field stores the
//! barred coordinates in the order `x̄_1, …, x̄_n`; [`fmt::Display`] and
//! [`FromStr`] use the printed order `x̄_n, …, x̄_1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::{check_index, check_rank, Weight};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PerfectElement {
    /// `x_1, …, x_n`.
    pub x: Vec<u32>,
    /// `x̄_1, …, x̄_n`.
    pub xbar: Vec<u32>,
}

impl PerfectElement {
    pub fn zero(n: usize) -> Self {
        PerfectElement {
            x: vec![0; n],
            xbar: vec![0; n],
        }
    }

    /// Validating constructor; `xbar` is given as `x̄_1, …, x̄_n`.
    pub fn new(x: Vec<u32>, xbar: Vec<u32>) -> Result<Self> {
        let b = PerfectElement { x, xbar };
        if b.x.len() != b.xbar.len() || b.x.len() < 2 || !matches!(b.total(), 0 | 2) {
            return Err(Error::invariant(format!("{b:?} is not an element of B")));
        }
        Ok(b)
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn total(&self) -> u32 {
        self.x.iter().chain(&self.xbar).sum()
    }

    /// `x_i` with 1-based `i`.
    fn xi(&self, i: usize) -> i64 {
        self.x[i - 1] as i64
    }

    /// `x̄_i` with 1-based `i`.
    fn xb(&self, i: usize) -> i64 {
        self.xbar[i - 1] as i64
    }
}

impl fmt::Display for PerfectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.x.iter().map(u32::to_string).collect();
        let xbs: Vec<String> = self.xbar.iter().rev().map(u32::to_string).collect();
        write!(f, "({}|{})", xs.join(","), xbs.join(","))
    }
}

impl FromStr for PerfectElement {
    type Err = Error;

    /// Parses the printed form `(x_1,…,x_n|x̄_n,…,x̄_1)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invariant(format!("cannot parse perfect crystal element {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (left, right) = inner.split_once('|').ok_or_else(bad)?;
        let parse = |part: &str| -> Result<Vec<u32>> {
            part.split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
                .collect()
        };
        let x = parse(left)?;
        let mut xbar = parse(right)?;
        xbar.reverse();
        PerfectElement::new(x, xbar)
    }
}

/// Builds an element from signed coordinates, rejecting anything outside `B`.
fn from_signed(x: Vec<i64>, xbar: Vec<i64>) -> Option<PerfectElement> {
    if x.iter().chain(&xbar).any(|&c| c < 0) {
        return None;
    }
    let total: i64 = x.iter().chain(&xbar).sum();
    if total != 0 && total != 2 {
        return None;
    }
    Some(PerfectElement {
        x: x.into_iter().map(|c| c as u32).collect(),
        xbar: xbar.into_iter().map(|c| c as u32).collect(),
    })
}

/// Applies signed coordinate changes `(i, bar, delta)` with 1-based `i`.
fn shifted(b: &PerfectElement, moves: &[(usize, bool, i64)]) -> Option<PerfectElement> {
    let mut x: Vec<i64> = b.x.iter().map(|&c| c as i64).collect();
    let mut xbar: Vec<i64> = b.xbar.iter().map(|&c| c as i64).collect();
    for &(i, bar, d) in moves {
        if bar {
            xbar[i - 1] += d;
        } else {
            x[i - 1] += d;
        }
    }
    from_signed(x, xbar)
}

fn pos(v: i64) -> i64 {
    v.max(0)
}

/// The perfect crystal for a fixed rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerfectCrystal {
    n: usize,
}

impl PerfectCrystal {
    pub fn new(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(PerfectCrystal { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Every element, sorted lexicographically on `(x, xbar)`.
    pub fn elements(&self) -> Vec<PerfectElement> {
        let n = self.n;
        let mut out = vec![PerfectElement::zero(n)];
        for a in 0..2 * n {
            for b in a..2 * n {
                let mut coords = vec![0u32; 2 * n];
                coords[a] += 1;
                coords[b] += 1;
                let xbar = coords.split_off(n);
                out.push(PerfectElement { x: coords, xbar });
            }
        }
        out.sort();
        out
    }

    fn check(&self, i: usize, b: &PerfectElement) -> Result<()> {
        check_index(self.n, i)?;
        if b.rank() != self.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: b.rank(),
            });
        }
        Ok(())
    }

    /// Kashiwara lowering operator; `None` is the crystal zero.
    pub fn f(&self, i: usize, b: &PerfectElement) -> Option<PerfectElement> {
        self.check(i, b).ok()?;
        let n = self.n;
        if i == 0 {
            let (x1, xb1) = (b.xi(1), b.xb(1));
            if x1 >= xb1 {
                shifted(b, &[(1, false, 2)])
            } else if x1 == xb1 - 1 {
                shifted(b, &[(1, false, 1), (1, true, -1)])
            } else {
                shifted(b, &[(1, true, -2)])
            }
        } else if i < n {
            if b.xi(i + 1) >= b.xb(i + 1) {
                shifted(b, &[(i, false, -1), (i + 1, false, 1)])
            } else {
                shifted(b, &[(i + 1, true, -1), (i, true, 1)])
            }
        } else {
            shifted(b, &[(n, false, -1), (n, true, 1)])
        }
    }

    /// Kashiwara raising operator; `None` is the crystal zero.
    pub fn e(&self, i: usize, b: &PerfectElement) -> Option<PerfectElement> {
        self.check(i, b).ok()?;
        let n = self.n;
        if i == 0 {
            let (x1, xb1) = (b.xi(1), b.xb(1));
            if x1 >= xb1 + 2 {
                shifted(b, &[(1, false, -2)])
            } else if x1 == xb1 + 1 {
                shifted(b, &[(1, false, -1), (1, true, 1)])
            } else {
                shifted(b, &[(1, true, 2)])
            }
        } else if i < n {
            if b.xi(i + 1) > b.xb(i + 1) {
                shifted(b, &[(i, false, 1), (i + 1, false, -1)])
            } else {
                shifted(b, &[(i + 1, true, 1), (i, true, -1)])
            }
        } else {
            shifted(b, &[(n, false, 1), (n, true, -1)])
        }
    }

    pub fn phi(&self, i: usize, b: &PerfectElement) -> u32 {
        let n = self.n;
        let v = if i == 0 {
            1 - b.total() as i64 / 2 + pos(b.xb(1) - b.xi(1))
        } else if i < n {
            b.xi(i) + pos(b.xb(i + 1) - b.xi(i + 1))
        } else {
            b.xi(n)
        };
        v as u32
    }

    pub fn eps(&self, i: usize, b: &PerfectElement) -> u32 {
        let n = self.n;
        let v = if i == 0 {
            1 - b.total() as i64 / 2 + pos(b.xi(1) - b.xb(1))
        } else if i < n {
            b.xb(i) + pos(b.xi(i + 1) - b.xb(i + 1))
        } else {
            b.xb(n)
        };
        v as u32
    }

    /// Classical weight `Σ (φ_i - ε_i) Λ_i`.
    pub fn cwt(&self, b: &PerfectElement) -> Weight {
        Weight {
            lam: (0..=self.n)
                .map(|i| self.phi(i, b) as i64 - self.eps(i, b) as i64)
                .collect(),
            delta2: 0,
        }
    }

    /// The unique element with `φ(b) = ε(b) = Λ_k`, found by search.
    pub fn ground_element(&self, k: usize) -> Result<PerfectElement> {
        check_index(self.n, k)?;
        let target = |i: usize| u32::from(i == k);
        let hits: Vec<PerfectElement> = self
            .elements()
            .into_iter()
            .filter(|b| {
                (0..=self.n).all(|i| self.phi(i, b) == target(i) && self.eps(i, b) == target(i))
            })
            .collect();
        match hits.as_slice() {
            [b] => Ok(b.clone()),
            _ => Err(Error::invariant(format!(
                "{} elements have φ = ε = Λ_{k}",
                hits.len()
            ))),
        }
    }
}
