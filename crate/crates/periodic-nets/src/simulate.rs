//! Multi-pass periodic execution, merging and sorting drivers.

use thiserror::Error;

use crate::build::merger_network;
use crate::network::{Network, NetworkError};
use crate::params::NetworkParams;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("input sequence `{side}` is not sorted")]
    UnsortedInput { side: &'static str },
    #[error("input length {got} does not match half the register count {expected}")]
    HalfLengthMismatch { expected: usize, got: usize },
    #[error("network failed to reach a sorted state within {passes} passes")]
    NotSorted { passes: u64 },
}

/// Outcome of a periodic run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace<T> {
    pub stages_executed: u64,
    pub passes_executed: u64,
    pub stopped_early: bool,
    pub final_values: Vec<T>,
    /// Per-stage snapshots when requested; snapshot i is the state after the
    /// (i+1)-th executed stage.
    pub snapshots: Option<Vec<Vec<T>>>,
}

/// Apply the network repeatedly, up to `max_passes`. With `early_stop`, halt
/// after the first full pass in which no comparator exchanged (that pass's
/// stages are still counted).
pub fn run_periodic<T: Ord + Clone>(
    net: &Network,
    values: &[T],
    max_passes: u64,
    early_stop: bool,
) -> Result<RunTrace<T>, SimError> {
    run_periodic_traced(net, values, max_passes, early_stop, false)
}

/// As [`run_periodic`], optionally capturing the state after every stage.
pub fn run_periodic_traced<T: Ord + Clone>(
    net: &Network,
    values: &[T],
    max_passes: u64,
    early_stop: bool,
    capture: bool,
) -> Result<RunTrace<T>, SimError> {
    if values.len() != net.registers() {
        return Err(NetworkError::LengthMismatch { expected: net.registers(), got: values.len() }.into());
    }
    let mut state: Vec<T> = values.to_vec();
    let mut snapshots = if capture { Some(Vec::new()) } else { None };
    let mut stages_executed = 0u64;
    let mut passes_executed = 0u64;
    let mut stopped_early = false;
    while passes_executed < max_passes {
        let mut pass_exchanged = false;
        for stage in net.stages() {
            pass_exchanged |= stage.apply(&mut state);
            stages_executed += 1;
            if let Some(s) = snapshots.as_mut() {
                s.push(state.clone());
            }
        }
        passes_executed += 1;
        if early_stop && !pass_exchanged {
            stopped_early = true;
            break;
        }
    }
    Ok(RunTrace { stages_executed, passes_executed, stopped_early, final_values: state, snapshots })
}

pub fn is_sorted<T: Ord>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

/// Merge two sorted runs of length registers/2 on the periodic merger.
///
/// `a` is loaded into even internal registers 0, 2, 4, ... and `b` into odd
/// internal registers 1, 3, 5, ... (with 1-based register numbering these
/// are the odd and even registers, respectively). Runs cols-1 passes and
/// returns the register contents, which are checked to be sorted.
pub fn merge<T: Ord + Clone>(params: &NetworkParams, a: &[T], b: &[T]) -> Result<Vec<T>, SimError> {
    let half = params.registers / 2;
    for (side, run) in [("a", a), ("b", b)] {
        if run.len() != half {
            return Err(SimError::HalfLengthMismatch { expected: half, got: run.len() });
        }
        if !is_sorted(run) {
            return Err(SimError::UnsortedInput { side });
        }
    }
    let mut values: Vec<T> = Vec::with_capacity(params.registers);
    for i in 0..half {
        values.push(a[i].clone());
        values.push(b[i].clone());
    }
    let net = merger_network(params);
    let passes = params.merge_passes() as u64;
    let trace = run_periodic(&net, &values, passes, false)?;
    if !is_sorted(&trace.final_values) {
        return Err(SimError::NotSorted { passes });
    }
    Ok(trace.final_values)
}

/// Run the periodic merger with early stopping until no comparator fires,
/// with a safety cap of `registers` passes. The sorted outcome is verified.
pub fn sort_until_done<T: Ord + Clone>(
    params: &NetworkParams,
    values: &[T],
) -> Result<RunTrace<T>, SimError> {
    let net = merger_network(params);
    sort_with_network(&net, values)
}

/// As [`sort_until_done`] but on a pre-built network (the cap stays at one
/// pass per register).
pub fn sort_with_network<T: Ord + Clone>(
    net: &Network,
    values: &[T],
) -> Result<RunTrace<T>, SimError> {
    let cap = net.registers() as u64;
    let trace = run_periodic(net, values, cap, true)?;
    if !trace.stopped_early || !is_sorted(&trace.final_values) {
        return Err(SimError::NotSorted { passes: trace.passes_executed });
    }
    Ok(trace)
}
