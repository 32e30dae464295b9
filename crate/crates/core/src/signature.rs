//! The (0,1)-cancellation rule shared by walls and paths.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mark {
    /// A removable unit.
    One,
    /// An admissible unit.
    Zero,
}

/// Where a signature entry came from: a finite column (or tensor
/// position) or the infinite tail to its left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    Column(usize),
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignatureEntry {
    pub column: Origin,
    pub kind: Mark,
}

/// A reduced signature: all surviving 1s, then all surviving 0s,
/// read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub entries: Vec<SignatureEntry>,
}

impl Signature {
    /// Cancels `(0, 1)` pairs in a left-to-right sequence.
    ///
    /// A 1 cancels the nearest uncancelled 0 to its left, which is the
    /// same as repeatedly deleting adjacent `01` pairs.
    pub fn reduce(seq: impl IntoIterator<Item = SignatureEntry>) -> Signature {
        let mut ones = Vec::new();
        let mut zeros: Vec<SignatureEntry> = Vec::new();
        for e in seq {
            match e.kind {
                Mark::Zero => zeros.push(e),
                Mark::One => {
                    if zeros.pop().is_none() {
                        ones.push(e);
                    }
                }
            }
        }
        ones.extend(zeros);
        Signature { entries: ones }
    }

    /// Column of the left-most surviving 0.
    pub fn leftmost_zero(&self) -> Option<Origin> {
        self.entries
            .iter()
            .find(|e| e.kind == Mark::Zero)
            .map(|e| e.column)
    }

    /// Column of the right-most surviving 1.
    pub fn rightmost_one(&self) -> Option<Origin> {
        self.entries
            .iter()
            .rev()
            .find(|e| e.kind == Mark::One)
            .map(|e| e.column)
    }

    pub fn zeros(&self) -> usize {
        self.entries.iter().filter(|e| e.kind == Mark::Zero).count()
    }

    /// Surviving 1s that come from finite columns.
    pub fn finite_ones(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.kind == Mark::One && e.column != Origin::Tail)
            .count()
    }

    /// True when no 0 precedes a 1.
    pub fn is_reduced(&self) -> bool {
        let first_zero = self.entries.iter().position(|e| e.kind == Mark::Zero);
        match first_zero {
            None => true,
            Some(p) => self.entries[p..].iter().all(|e| e.kind == Mark::Zero),
        }
    }

    pub fn to_bits(&self) -> String {
        self.entries
            .iter()
            .map(|e| match e.kind {
                Mark::One => '1',
                Mark::Zero => '0',
            })
            .collect()
    }
}

/// `ones` 1s followed by `zeros` 0s for one column.
pub(crate) fn column_entries(
    column: Origin,
    ones: u32,
    zeros: u32,
) -> impl Iterator<Item = SignatureEntry> {
    let one = SignatureEntry {
        column,
        kind: Mark::One,
    };
    let zero = SignatureEntry {
        column,
        kind: Mark::Zero,
    };
    std::iter::repeat_n(one, ones as usize).chain(std::iter::repeat_n(zero, zeros as usize))
}
