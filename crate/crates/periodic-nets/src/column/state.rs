//! The per-stage column functions and their stage assignment.
//!
//! Positions are 0-based; `pair` keeps the structural 1-based numbering of
//! column pairs (pair j couples the j-th column from the left with the j-th
//! from the right), matching the stage plan of the precursor.

use super::ColumnError;
use crate::params::NetworkParams;

/// cyc: position 1 <- max(c_1, c_b - 1), position b <- min(c_1 + 1, c_b).
pub fn cyc(values: &mut [i64]) {
    let b = values.len();
    let (first, last) = (values[0], values[b - 1]);
    values[0] = first.max(last - 1);
    values[b - 1] = (first + 1).min(last);
}

/// dec with reach h on pair j: position j <- min(c_j, c_{b-j+1} + h),
/// position b-j+1 <- max(c_j - h, c_{b-j+1}).
pub fn dec(values: &mut [i64], pair: usize, h: i64) {
    let b = values.len();
    let (left, right) = (values[pair - 1], values[b - pair]);
    values[pair - 1] = left.min(right + h);
    values[b - pair] = (left - h).max(right);
}

/// mov on pair j: compare-exchange positions (j, j+1) and (b-j, b-j+1);
/// for j = b/2 the two pairs coincide into the middle pair.
pub fn mov(values: &mut [i64], pair: usize) {
    let b = values.len();
    let mut swap_pair = |lo: usize, hi: usize| {
        if values[lo] > values[hi] {
            values.swap(lo, hi);
        }
    };
    swap_pair(pair - 1, pair);
    if pair < b / 2 {
        swap_pair(b - pair - 1, b - pair);
    }
}

/// One column function of a packed stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnFn {
    Cyc,
    Dec { pair: usize, s: usize },
    Mov { pair: usize },
}

impl ColumnFn {
    /// Positions (0-based) the function may modify.
    pub fn args(&self, cols: usize) -> Vec<usize> {
        match *self {
            ColumnFn::Cyc => vec![0, cols - 1],
            ColumnFn::Dec { pair, .. } => vec![pair - 1, cols - pair],
            ColumnFn::Mov { pair } if pair == cols / 2 => vec![pair - 1, pair],
            ColumnFn::Mov { pair } => vec![pair - 1, pair, cols - pair - 1, cols - pair],
        }
    }

    pub fn apply(&self, params: &NetworkParams, values: &mut [i64]) {
        match *self {
            ColumnFn::Cyc => cyc(values),
            ColumnFn::Dec { pair, s } => dec(values, pair, params.h(s) as i64),
            ColumnFn::Mov { pair } => mov(values, pair),
        }
    }
}

/// The column functions of packed stage x (1-based), mirroring the stages of
/// the precursor whose index is congruent to x modulo p:
///
/// * cyc for the initial stage (x = 1 only);
/// * mov_j for every shift stage, j <= (k-2)/(p-2) with x + j = 1 (mod p);
/// * dec_{j,s} for every long stage: j <= cols/2, (x + j) mod p not in
///   {1, 2}, s = (p-2)(j-1) - 1 + ((x+j-1) mod p) clipped to 1..=k-1.
///
/// Distinct functions of one stage touch disjoint positions (asserted).
pub fn q_stage_functions(params: &NetworkParams, x: usize) -> Result<Vec<ColumnFn>, ColumnError> {
    let (p, k, b) = (params.period, params.size_exponent, params.cols);
    if x < 1 || x > p {
        return Err(ColumnError::StageOutOfRange { x, period: p });
    }
    let mut fns = Vec::new();
    if x == 1 {
        fns.push(ColumnFn::Cyc);
    }
    for pair in 1..=(k - 2) / (p - 2) {
        if (x + pair) % p == 1 % p {
            fns.push(ColumnFn::Mov { pair });
        }
    }
    for pair in 1..=b / 2 {
        let r = (x + pair) % p;
        if r != 1 % p && r != 2 % p {
            let s = (p - 2) * (pair - 1) + (x + pair - 1) % p - 1;
            if (1..=k - 1).contains(&s) {
                fns.push(ColumnFn::Dec { pair, s });
            }
        }
    }
    debug_assert!(args_disjoint(&fns, b), "overlapping args in stage {x}");
    Ok(fns)
}

fn args_disjoint(fns: &[ColumnFn], cols: usize) -> bool {
    let mut seen = vec![false; cols];
    for f in fns {
        for a in f.args(cols) {
            if seen[a] {
                return false;
            }
            seen[a] = true;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyc_examples() {
        let mut v = [3, 0, 5, 5];
        cyc(&mut v);
        assert_eq!(v, [4, 0, 5, 4]);

        let mut flat = [7, 7, 7, 7];
        cyc(&mut flat);
        assert_eq!(flat, [7, 7, 7, 7]);

        let mut edge = [0, 0, 0, 15];
        cyc(&mut edge);
        assert_eq!(edge, [14, 0, 0, 1]);
    }

    #[test]
    fn dec_examples() {
        // k = 5, pair 1, s = 2 gives h = 3
        let mut v = [10, 2, 7, 1];
        dec(&mut v, 1, 3);
        assert_eq!(v, [4, 2, 7, 7]);

        // h = 0 collapses to a plain compare-exchange of the pair
        let mut w = [9, 0, 0, 2];
        dec(&mut w, 1, 0);
        assert_eq!(w, [2, 0, 0, 9]);
    }

    #[test]
    fn dec_preserves_pair_sum() {
        for a in -5..12i64 {
            for b in -5..12i64 {
                for h in 0..8i64 {
                    let mut v = [a, 0, 0, b];
                    dec(&mut v, 1, h);
                    assert_eq!(v[0] + v[3], a + b);
                }
            }
        }
    }

    #[test]
    fn mov_examples() {
        let mut v = [5, 3, 9, 2];
        mov(&mut v, 1);
        assert_eq!(v, [3, 5, 2, 9]);
        mov(&mut v, 2);
        assert_eq!(v, [3, 2, 5, 9]);

        let mut flat = [2, 2, 2, 3];
        mov(&mut flat, 1);
        assert_eq!(flat, [2, 2, 2, 3]);
    }

    #[test]
    fn stage_sets_for_4_5() {
        // packed stages of the (4,5) merger: T1 = {cyc, dec_{2,3}},
        // T2 = {dec_{1,1}, dec_{2,4}}, T3 = {dec_{1,2}}, T4 = {mov_1}
        let params = NetworkParams::new(4, 5).unwrap();
        assert_eq!(
            q_stage_functions(&params, 1).unwrap(),
            vec![ColumnFn::Cyc, ColumnFn::Dec { pair: 2, s: 3 }]
        );
        assert_eq!(
            q_stage_functions(&params, 2).unwrap(),
            vec![ColumnFn::Dec { pair: 1, s: 1 }, ColumnFn::Dec { pair: 2, s: 4 }]
        );
        assert_eq!(
            q_stage_functions(&params, 3).unwrap(),
            vec![ColumnFn::Dec { pair: 1, s: 2 }]
        );
        assert_eq!(q_stage_functions(&params, 4).unwrap(), vec![ColumnFn::Mov { pair: 1 }]);
        assert!(q_stage_functions(&params, 5).is_err());
        assert!(q_stage_functions(&params, 0).is_err());
    }

    #[test]
    fn stage_sets_cover_every_precursor_stage() {
        // every stage of the plan appears in exactly one packed set
        use crate::build::{precursor_plan, StageKind};
        for (p, k) in [(4, 4), (4, 5), (4, 6), (4, 9), (5, 7), (5, 9), (6, 8), (6, 10)] {
            let params = NetworkParams::new(p, k).unwrap();
            let plan = precursor_plan(&params);
            for x in 1..=p {
                let expect: Vec<ColumnFn> = plan
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| idx % p == x - 1)
                    .map(|(_, kind)| match *kind {
                        StageKind::Initial => ColumnFn::Cyc,
                        StageKind::Long { pair, s } => ColumnFn::Dec { pair, s },
                        StageKind::Shift { pair } => ColumnFn::Mov { pair },
                    })
                    .collect();
                let mut got = q_stage_functions(&params, x).unwrap();
                let key = |f: &ColumnFn| match *f {
                    ColumnFn::Cyc => (0, 0, 0),
                    ColumnFn::Dec { pair, s } => (1, pair, s),
                    ColumnFn::Mov { pair } => (2, pair, 0),
                };
                got.sort_by_key(key);
                let mut expect = expect;
                expect.sort_by_key(key);
                assert_eq!(got, expect, "p={p} k={k} stage {x}");
            }
        }
    }

    #[test]
    fn args_are_disjoint_within_every_stage() {
        for (p, k) in [(4, 4), (4, 10), (5, 9), (6, 10), (7, 12)] {
            let params = NetworkParams::new(p, k).unwrap();
            for x in 1..=p {
                let fns = q_stage_functions(&params, x).unwrap();
                assert!(args_disjoint(&fns, params.cols), "p={p} k={k} x={x}");
            }
        }
    }

    #[test]
    fn flat_states_are_fixed_points() {
        let params = NetworkParams::new(4, 6).unwrap();
        for base in [0i64, 5, 31] {
            for ones in 0..=params.cols {
                let mut v: Vec<i64> = vec![base; params.cols];
                for t in params.cols - ones..params.cols {
                    if base < params.rows as i64 {
                        v[t] = base + 1;
                    }
                }
                let state = super::super::ColumnState::new(params, v.clone()).unwrap();
                assert!(state.is_flat());
                for x in 1..=params.period {
                    assert_eq!(state.q_stage(x).unwrap().counts(), &v[..], "x={x}");
                }
            }
        }
    }
}
