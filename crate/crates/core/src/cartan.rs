//! Root datum of type C_n^(1).
//!
//! Weights are written over the fundamental weights `Λ_0, …, Λ_n` plus a
//! multiple of the null root `δ`. The δ coefficient is stored doubled so
//! that half-integer multiples stay exact.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of `δ = α_0 + 2α_1 + … + 2α_{n-1} + α_n`.
pub fn delta_coefficients(n: usize) -> Vec<i64> {
    (0..=n)
        .map(|i| if i == 0 || i == n { 1 } else { 2 })
        .collect()
}

pub(crate) fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    Ok(())
}

pub(crate) fn check_index(n: usize, i: usize) -> Result<()> {
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

/// An element of the affine weight lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    /// Coefficient of `Λ_i` at position `i`.
    pub lam: Vec<i64>,
    /// Twice the coefficient of `δ`.
    pub delta2: i64,
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight {
            lam: vec![0; n + 1],
            delta2: 0,
        }
    }

    /// The fundamental weight `Λ_i`.
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut w = Weight::zero(n);
        w.lam[i] = 1;
        w
    }

    /// The null root `δ`.
    pub fn delta(n: usize) -> Self {
        Weight {
            lam: vec![0; n + 1],
            delta2: 2,
        }
    }

    pub fn rank(&self) -> usize {
        self.lam.len() - 1
    }

    /// Drops the δ part.
    pub fn classical(&self) -> Self {
        Weight {
            lam: self.lam.clone(),
            delta2: 0,
        }
    }

    pub fn is_classical(&self) -> bool {
        self.delta2 == 0
    }

    pub fn scaled(&self, c: i64) -> Self {
        Weight {
            lam: self.lam.iter().map(|x| x * c).collect(),
            delta2: self.delta2 * c,
        }
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.lam.len(), rhs.lam.len(), "weights of different rank");
        Weight {
            lam: self.lam.iter().zip(&rhs.lam).map(|(a, b)| a + b).collect(),
            delta2: self.delta2 + rhs.delta2,
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.lam.len(), rhs.lam.len(), "weights of different rank");
        Weight {
            lam: self.lam.iter().zip(&rhs.lam).map(|(a, b)| a - b).collect(),
            delta2: self.delta2 - rhs.delta2,
        }
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;

    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        *self = &*self - rhs;
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        self.scaled(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = self
            .lam
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (*c, format!("Λ_{i}")))
            .collect();
        let mut wrote = false;
        for (c, sym) in terms.drain(..) {
            write_term(f, c, &sym, wrote)?;
            wrote = true;
        }
        if self.delta2 != 0 {
            if self.delta2 % 2 == 0 {
                write_term(f, self.delta2 / 2, "δ", wrote)?;
            } else {
                let sign = if self.delta2 < 0 { "-" } else { "+" };
                if wrote {
                    write!(f, " {sign} ")?;
                } else if self.delta2 < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{}/2δ", self.delta2.abs())?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: i64, sym: &str, after_first: bool) -> fmt::Result {
    if after_first {
        write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
    } else if c < 0 {
        write!(f, "-")?;
    }
    match c.abs() {
        1 => write!(f, "{sym}"),
        a => write!(f, "{a}{sym}"),
    }
}

/// Generalized Cartan matrix of type C_n^(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    n: usize,
    a: Vec<Vec<i64>>,
}

impl CartanData {
    /// Builds the matrix for rank `n`.
    ///
    /// The Dynkin diagram is a chain on `0..=n`. Off-diagonal entries come
    /// from `⟨h_i, δ⟩ = 0`: a neighbour carrying a δ-coefficient of 2 gets
    /// `-1`, and whatever is left over is shared among neighbours whose
    /// coefficient is 1.
    pub fn new(n: usize) -> Result<Self> {
        check_rank(n)?;
        let d = delta_coefficients(n);
        let mut a = vec![vec![0i64; n + 1]; n + 1];
        for i in 0..=n {
            a[i][i] = 2;
            let nbrs: Vec<usize> = [i.checked_sub(1), (i < n).then_some(i + 1)]
                .into_iter()
                .flatten()
                .collect();
            let (long, short): (Vec<usize>, Vec<usize>) =
                nbrs.iter().partition(|&&j| d[j] == 2 && d[i] == 2);
            let mut residual = -2 * d[i];
            for &j in &long {
                a[i][j] = -1;
                residual += d[j];
            }
            let weight: i64 = short.iter().map(|&j| d[j]).sum();
            for &j in &short {
                debug_assert_eq!(residual % weight, 0);
                a[i][j] = residual / weight;
            }
        }
        let cd = CartanData { n, a };
        debug_assert!(cd.check().is_ok());
        Ok(cd)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// `α_i = Σ_j a_ji Λ_j`, plus `δ` when `i = 0`.
    pub fn simple_root(&self, i: usize) -> Result<Weight> {
        check_index(self.n, i)?;
        Ok(Weight {
            lam: (0..=self.n).map(|j| self.a[j][i]).collect(),
            delta2: if i == 0 { 2 } else { 0 },
        })
    }

    /// `⟨h_i, w⟩`.
    pub fn pairing(&self, i: usize, w: &Weight) -> Result<i64> {
        check_index(self.n, i)?;
        if w.rank() != self.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: w.rank(),
            });
        }
        Ok(w.lam[i])
    }

    fn check(&self) -> Result<()> {
        let d = delta_coefficients(self.n);
        for i in 0..=self.n {
            if self.a[i][i] != 2 {
                return Err(Error::invariant(format!("a[{i}][{i}] != 2")));
            }
            let row: i64 = (0..=self.n).map(|j| self.a[i][j] * d[j]).sum();
            if row != 0 {
                return Err(Error::invariant(format!("<h_{i}, δ> = {row}")));
            }
            for j in 0..=self.n {
                if i != j {
                    if ![0, -1, -2].contains(&self.a[i][j]) {
                        return Err(Error::invariant(format!("a[{i}][{j}] out of range")));
                    }
                    if (self.a[i][j] == 0) != (self.a[j][i] == 0) {
                        return Err(Error::invariant(format!("a[{i}][{j}] asymmetric zero")));
                    }
                }
            }
        }
        Ok(())
    }
}
