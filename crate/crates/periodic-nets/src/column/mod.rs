//! Column-count abstraction of the merger's behaviour on 0-1 inputs.
//!
//! A 0-1 register state with sorted matrix columns is fully described by the
//! vector of ones-counts per column. Each packed merger stage acts on that
//! vector as a fixed set of simple min/max functions ([`state`]); for
//! balanced vectors the dynamics reduces to half the positions
//! ([`reduced`]), and the reduced trajectory is confined by sequences of
//! interval descriptors ([`sequence`]). Unbalanced 2-flat vectors are
//! sandwiched between balanced ones ([`bounds`]).

mod bounds;
mod reduced;
mod sequence;
mod state;

pub use bounds::balanced_bounds;
pub use reduced::{
    cyc_reduced, dec_reduced, ext, min_reduced, minmax_reduced, reduce, reduced_q_stage,
    ReducedState,
};
pub use sequence::{seq_u, seq_v, seq_w, seq_z, state_sequence, IntervalTag};
pub use state::{cyc, dec, mov, q_stage_functions, ColumnFn};

use std::fmt;

use thiserror::Error;

use crate::params::NetworkParams;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColumnError {
    #[error("column state has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("column count {value} at position {position} outside [0, {max}]")]
    CountOutOfRange { position: usize, value: i64, max: i64 },
    #[error("sequence is not balanced")]
    NotBalanced,
    #[error("sequence is balanced; bounds apply only to unbalanced 2-flat sequences")]
    AlreadyBalanced,
    #[error("sequence is not 2-flat")]
    NotTwoFlat,
    #[error("stage index {x} outside 1..={period}")]
    StageOutOfRange { x: usize, period: usize },
    #[error("state-sequence index {i} outside 1..={max}")]
    StepOutOfRange { i: usize, max: usize },
    #[error("reduced values must all have the parity of the height")]
    ParityMismatch,
}

/// c_1 <= c_2 <= ... <= c_b <= c_1 + 1.
pub fn is_flat(values: &[i64]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
        && values.last().map_or(true, |&l| l <= values[0] + 1)
}

/// Odd-position and even-position subsequences each flat.
pub fn is_2flat(values: &[i64]) -> bool {
    let odd: Vec<i64> = values.iter().copied().step_by(2).collect();
    let even: Vec<i64> = values.iter().copied().skip(1).step_by(2).collect();
    is_flat(&odd) && is_flat(&even)
}

/// Every mirror pair sums to c_1 + c_b.
pub fn is_balanced(values: &[i64]) -> bool {
    let b = values.len();
    if b < 2 {
        return true;
    }
    let s = values[0] + values[b - 1];
    (0..b / 2).all(|i| values[i] + values[b - 1 - i] == s)
}

/// The mirror-pair sum of a balanced sequence.
pub fn height(values: &[i64]) -> Result<i64, ColumnError> {
    if !is_balanced(values) {
        return Err(ColumnError::NotBalanced);
    }
    Ok(values[0] + values[values.len() - 1])
}

/// Ones-counts of the matrix columns, length `cols`, each in [0, rows].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnState {
    params: NetworkParams,
    counts: Vec<i64>,
}

impl ColumnState {
    pub fn new(params: NetworkParams, counts: Vec<i64>) -> Result<Self, ColumnError> {
        if counts.len() != params.cols {
            return Err(ColumnError::WrongLength { expected: params.cols, got: counts.len() });
        }
        for (position, &value) in counts.iter().enumerate() {
            if value < 0 || value > params.rows as i64 {
                return Err(ColumnError::CountOutOfRange { position, value, max: params.rows as i64 });
            }
        }
        Ok(ColumnState { params, counts })
    }

    /// Count ones per column of a full 0-1 register state (merger numbering:
    /// register r lies in column r mod cols).
    pub fn from_registers(params: NetworkParams, bits: &[u8]) -> Result<Self, ColumnError> {
        if bits.len() != params.registers {
            return Err(ColumnError::WrongLength { expected: params.registers, got: bits.len() });
        }
        let mut counts = vec![0i64; params.cols];
        for (r, &bit) in bits.iter().enumerate() {
            counts[r % params.cols] += i64::from(bit);
        }
        ColumnState::new(params, counts)
    }

    /// The canonical sorted-column 0-1 register state with these counts:
    /// zeros at the low registers of each column.
    pub fn to_registers(&self) -> Vec<u8> {
        let (rows, cols) = (self.params.rows, self.params.cols);
        let mut bits = vec![0u8; self.params.registers];
        for t in 0..cols {
            let zeros = rows as i64 - self.counts[t];
            for i in 0..rows {
                if (i as i64) >= zeros {
                    bits[i * cols + t] = 1;
                }
            }
        }
        bits
    }

    pub fn params(&self) -> &NetworkParams {
        &self.params
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn is_flat(&self) -> bool {
        is_flat(&self.counts)
    }

    pub fn is_2flat(&self) -> bool {
        is_2flat(&self.counts)
    }

    pub fn is_balanced(&self) -> bool {
        is_balanced(&self.counts)
    }

    pub fn height(&self) -> Result<i64, ColumnError> {
        height(&self.counts)
    }

    /// Apply one packed stage (x in 1..=p) as its column-function set.
    pub fn q_stage(&self, x: usize) -> Result<ColumnState, ColumnError> {
        let fns = q_stage_functions(&self.params, x)?;
        let mut counts = self.counts.clone();
        for f in &fns {
            f.apply(&self.params, &mut counts);
        }
        Ok(ColumnState { params: self.params, counts })
    }

    /// Run `steps` stage applications, cycling x = 1..p.
    pub fn run_steps(&self, steps: usize) -> ColumnState {
        let mut state = self.clone();
        for i in 1..=steps {
            let x = (i - 1) % self.params.period + 1;
            state = state.q_stage(x).expect("stage index in range");
        }
        state
    }

    pub fn reduce(&self) -> Result<ReducedState, ColumnError> {
        reduce(self)
    }
}

impl fmt::Display for ColumnState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatness_predicates() {
        assert!(is_flat(&[2, 2, 3, 3]));
        assert!(!is_flat(&[2, 2, 4, 4]));
        assert!(!is_flat(&[3, 2, 3, 3]));
        // odd track (1,2), even track (4,5)
        assert!(is_2flat(&[1, 4, 2, 5]));
        assert!(!is_flat(&[1, 4, 2, 5]));
    }

    #[test]
    fn balance_and_height() {
        assert!(is_balanced(&[1, 2, 4, 5]));
        assert_eq!(height(&[1, 2, 4, 5]).unwrap(), 6);
        assert!(!is_balanced(&[1, 2, 4, 6]));
        assert_eq!(height(&[1, 2, 4, 6]).unwrap_err(), ColumnError::NotBalanced);
    }

    #[test]
    fn state_validation() {
        let params = NetworkParams::new(4, 5).unwrap();
        assert!(ColumnState::new(params, vec![0, 15, 0, 15]).is_ok());
        assert!(ColumnState::new(params, vec![0, 16, 0, 15]).is_err());
        assert!(ColumnState::new(params, vec![0, 15, 0]).is_err());
    }

    #[test]
    fn registers_round_trip() {
        let params = NetworkParams::new(4, 5).unwrap();
        let state = ColumnState::new(params, vec![3, 0, 15, 7]).unwrap();
        let bits = state.to_registers();
        assert_eq!(bits.len(), 60);
        let back = ColumnState::from_registers(params, &bits).unwrap();
        assert_eq!(back, state);
        // columns of the canonical matrix are sorted
        for t in 0..4 {
            let col: Vec<u8> = (0..15).map(|i| bits[i * 4 + t]).collect();
            assert!(col.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
