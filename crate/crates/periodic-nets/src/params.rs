//! Derived size parameters for a (period, size-exponent) pair.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("period {0} too small: merging needs period >= 4 (>= 3 with the extension flag)")]
    PeriodTooSmall(usize),
    #[error("size exponent k={k} must be at least the period p={p}")]
    ExponentBelowPeriod { p: usize, k: usize },
    #[error("size exponent k={0} too large for this build (register counts overflow)")]
    ExponentTooLarge(usize),
}

/// Sizes shared by the staged precursor and the periodic merger for one
/// (p, k) pair. The register set is viewed as a `rows x cols` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NetworkParams {
    /// p: the period of the merger, every register used in <= p consecutive stages.
    pub period: usize,
    /// k: size exponent; the merger handles two sorted runs of length registers/2.
    pub size_exponent: usize,
    /// Column height 2^(k-1) - 1.
    pub rows: usize,
    /// Number of columns 2*ceil((k-2)/(p-2)); always even.
    pub cols: usize,
    /// rows * cols registers in the merger.
    pub registers: usize,
    /// Depth k - 1 + cols/2 of the staged precursor.
    pub depth: usize,
}

impl NetworkParams {
    /// Standard parameter validation: k >= p >= 4.
    pub fn new(period: usize, size_exponent: usize) -> Result<Self, ParamError> {
        if period < 4 {
            return Err(ParamError::PeriodTooSmall(period));
        }
        Self::build(period, size_exponent)
    }

    /// Extension: also accepts period 3. Excluded from the verification
    /// campaigns' supported grid but constructible and runnable.
    pub fn new_extended(period: usize, size_exponent: usize) -> Result<Self, ParamError> {
        if period < 3 {
            return Err(ParamError::PeriodTooSmall(period));
        }
        Self::build(period, size_exponent)
    }

    fn build(p: usize, k: usize) -> Result<Self, ParamError> {
        if k < p {
            return Err(ParamError::ExponentBelowPeriod { p, k });
        }
        if k >= 40 {
            return Err(ParamError::ExponentTooLarge(k));
        }
        let rows = (1usize << (k - 1)) - 1;
        let cols = 2 * (k - 2).div_ceil(p - 2);
        Ok(NetworkParams {
            period: p,
            size_exponent: k,
            rows,
            cols,
            registers: rows * cols,
            depth: k - 1 + cols / 2,
        })
    }

    /// h(s) = 2^(k-s-1) - 1, the comparator reach of the s-th long stage;
    /// strictly decreasing in s, with h(k-1) = 0.
    pub fn h(&self, s: usize) -> usize {
        debug_assert!(s >= 1 && s <= self.size_exponent - 1);
        (1usize << (self.size_exponent - s - 1)) - 1
    }

    /// Passes of the periodic merger needed to merge: cols - 1.
    pub fn merge_passes(&self) -> usize {
        self.cols - 1
    }

    /// Total merge stages p * (cols - 1); also the step count after which the
    /// column dynamics flattens any 2-flat state.
    pub fn merge_stages(&self) -> usize {
        self.period * (self.cols - 1)
    }

    /// Step count after which the column dynamics flattens every *balanced*
    /// 2-flat state: p(cols-1) - (cols/2 - 1).
    pub fn balanced_merge_stages(&self) -> usize {
        self.merge_stages() - (self.cols / 2 - 1)
    }
}
