//! Length-graded reflected Gray order over binary strings.
//!
//! Index `j` (1-based) walks all strings of length 1, then length 2, and so
//! on. Inside a length group, rank `r` maps to the pattern `r ^ (r >> 1)`,
//! most significant bit first, so neighbours in a group differ in one cell.

use crate::bits::BitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InitialConditionIndex {
    pub j: u64,
    pub length: u32,
    pub rank: u64,
}

impl InitialConditionIndex {
    /// Panics if `j == 0`.
    pub fn from_global(j: u64) -> Self {
        assert!(j >= 1, "initial-condition index is 1-based");
        let length = (j + 1).ilog2();
        let rank = j + 1 - (1u64 << length);
        InitialConditionIndex { j, length, rank }
    }

    pub fn from_group(length: u32, rank: u64) -> Self {
        assert!((1..64).contains(&length) && rank < (1u64 << length));
        InitialConditionIndex {
            j: (1u64 << length) - 2 + rank + 1,
            length,
            rank,
        }
    }

    pub fn bits(&self) -> BitString {
        let g = self.rank ^ (self.rank >> 1);
        let cells = (0..self.length)
            .rev()
            .map(|i| ((g >> i) & 1) as u8)
            .collect();
        BitString::from_cells(cells)
    }
}

pub fn init_condition(j: u64) -> BitString {
    InitialConditionIndex::from_global(j).bits()
}

/// The first `n` initial conditions.
pub fn enumerate(n: usize) -> Vec<BitString> {
    (1..=n as u64).map(init_condition).collect()
}
