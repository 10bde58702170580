//! Builders for the three network families.
//!
//! * `cw_network(k)` — the Canfield–Williamson (log N)-periodic sorter on
//!   2^k registers; merges in one pass, sorts in k passes.
//! * `precursor_network(params)` — the staged network on `registers + 2`
//!   registers with delay p, from which the merger is derived.
//! * `merger_network(params)` — the p-periodic merger on `registers`
//!   registers: the precursor with its first and last registers deleted,
//!   packed into p stages.

use crate::network::{Comparator, Network, Stage};
use crate::params::NetworkParams;

/// What generated a precursor stage; stage index q (1-based) determines the
/// kind uniquely.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    /// q = 1: short comparators at every column-block boundary plus the two
    /// boundary comparators on the extra end registers.
    Initial,
    /// q = pair + s: long comparators of reach h(s) between the pair-th
    /// column from the left and the pair-th from the right.
    Long { pair: usize, s: usize },
    /// q = (p-1)*pair + 1: short comparators shifting the pair boundary by
    /// one column on both sides.
    Shift { pair: usize },
}

/// The stage plan of the precursor: entry q-1 describes stage q.
///
/// Every stage index in 1..=depth is produced by exactly one generator; a
/// collision or gap means the parameters were not validated.
pub fn precursor_plan(params: &NetworkParams) -> Vec<StageKind> {
    let (p, k) = (params.period, params.size_exponent);
    let mut plan: Vec<Option<StageKind>> = vec![None; params.depth];
    let mut place = |q: usize, kind: StageKind| {
        assert!(q >= 1 && q <= plan.len(), "stage index {q} out of range for {kind:?}");
        assert!(plan[q - 1].is_none(), "stage collision at index {q}: {:?} vs {kind:?}", plan[q - 1]);
        plan[q - 1] = Some(kind);
    };
    place(1, StageKind::Initial);
    for pair in 1..=params.cols / 2 {
        let lo = (p - 2) * (pair - 1) + 1;
        let hi = ((p - 2) * pair).min(k - 1);
        for s in lo..=hi {
            place(pair + s, StageKind::Long { pair, s });
        }
    }
    for pair in 1..=(k - 2) / (p - 2) {
        place((p - 1) * pair + 1, StageKind::Shift { pair });
    }
    plan.into_iter()
        .enumerate()
        .map(|(i, kind)| kind.unwrap_or_else(|| panic!("no generator for stage {}", i + 1)))
        .collect()
}

fn comparator(lo: usize, hi: usize, kind: &StageKind, i: usize) -> Comparator {
    Comparator::new(lo, hi)
        .unwrap_or_else(|e| panic!("non-standard comparator in {kind:?} at i={i}: {e}"))
}

/// The staged precursor on registers 0..=registers+1.
pub fn precursor_network(params: &NetworkParams) -> Network {
    let b = params.cols;
    let n = params.rows;
    let big_n = params.registers;
    let stages = precursor_plan(params)
        .iter()
        .map(|kind| {
            let comps: Vec<Comparator> = match *kind {
                StageKind::Initial => (1..n)
                    .map(|i| comparator(b * i, b * i + 1, kind, i))
                    .chain([
                        comparator(0, 1, kind, 0),
                        comparator(big_n, big_n + 1, kind, n),
                    ])
                    .collect(),
                StageKind::Long { pair, s } => {
                    let h = params.h(s);
                    (0..=n - 1 - h)
                        .map(|i| comparator(b * i + pair, b * (i + h) + (b - pair + 1), kind, i))
                        .collect()
                }
                StageKind::Shift { pair } => (0..n)
                    .flat_map(|i| {
                        let left = (b * i + pair, b * i + pair + 1);
                        let right = (b * i + (b - pair), b * i + (b - pair + 1));
                        // at the middle the two families coincide
                        if left == right { vec![left] } else { vec![left, right] }
                    })
                    .map(|(lo, hi)| comparator(lo, hi, kind, lo / b))
                    .collect(),
            };
            Stage::new(comps).unwrap_or_else(|e| panic!("stage collision in {kind:?}: {e}"))
        })
        .collect();
    Network::new(big_n + 2, stages).expect("precursor registers in range")
}

/// The p-periodic merger: the precursor restricted to its inner registers,
/// packed into p stages. Merger register r corresponds to precursor register
/// r + 1; its matrix column is r % cols.
pub fn merger_network(params: &NetworkParams) -> Network {
    let precursor = precursor_network(params);
    let inner = precursor.restrict(&[0, params.registers + 1]);
    let merger = inner.compact_form().expect("inner precursor has delay p");
    assert_eq!(merger.depth(), params.period, "merger must pack into p stages");
    assert_eq!(merger.registers(), params.registers);
    merger
}

/// The Canfield–Williamson sorter on 2^k registers, k stages.
pub fn cw_network(k: usize) -> Network {
    assert!(k >= 1 && k <= 30, "cw size exponent out of range: {k}");
    let half = 1usize << (k - 1);
    let mut stages = Vec::with_capacity(k);
    stages.push(
        Stage::new(
            (0..half)
                .map(|i| Comparator::new(2 * i, 2 * i + 1).expect("standard"))
                .collect(),
        )
        .expect("disjoint"),
    );
    for j in 1..k {
        let reach = 1usize << (k - j);
        let count = half - (1usize << (k - j - 1));
        stages.push(
            Stage::new(
                (0..count)
                    .map(|i| Comparator::new(2 * i + 1, 2 * i + reach).expect("standard"))
                    .collect(),
            )
            .expect("disjoint"),
        );
    }
    Network::new(1usize << k, stages).expect("cw registers in range")
}
