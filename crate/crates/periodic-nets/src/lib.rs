//! Constant-periodic merging and sorting comparator networks.
//!
//! The crate provides:
//!
//! * structural comparator-network machinery (stages, delay, compact form,
//!   restriction, JSON/DOT output) — [`network`];
//! * builders for the Canfield–Williamson sorter, the staged precursor and
//!   the p-periodic merger derived from it — [`build`], sized by [`params`];
//! * periodic simulation with early stopping, merging and sorting drivers —
//!   [`simulate`];
//! * the column-counting abstraction of the merger's behaviour on 0-1
//!   inputs, its reduced half-space dynamics and the interval-descriptor
//!   state sequences that bound it — [`column`];
//! * verification campaigns turning the merging/sorting claims into
//!   pass/fail reports — [`verify`];
//! * an early-stopped sorting-time benchmark on random permutations —
//!   [`bench`].

pub mod bench;
pub mod build;
pub mod column;
pub mod network;
pub mod params;
pub mod simulate;
pub mod verify;

pub use build::{cw_network, merger_network, precursor_network};
pub use network::{Comparator, Network, NetworkError, Stage};
pub use params::{NetworkParams, ParamError};
pub use simulate::{merge, run_periodic, sort_until_done, RunTrace, SimError};
