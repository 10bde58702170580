//! Structural representation of comparator networks.
//!
//! A network is a fixed number of registers together with an ordered list of
//! stages. Each stage is a set of standard comparators `[lo:hi]` (`lo < hi`)
//! on pairwise-disjoint registers, so all comparators of a stage can fire in
//! one parallel step. Applying a comparator writes the minimum of the two
//! register contents to `lo` and the maximum to `hi`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("comparator [{lo}:{hi}] is not standard (requires lo < hi)")]
    NonStandardComparator { lo: usize, hi: usize },
    #[error("register {register} used twice within one stage")]
    OverlappingRegisters { register: usize },
    #[error("comparator touches register {register} but the network has {registers} registers")]
    RegisterOutOfRange { register: usize, registers: usize },
    #[error("value sequence has length {got}, network has {expected} registers")]
    LengthMismatch { expected: usize, got: usize },
    #[error("network touches no register; compact form is undefined")]
    ZeroDelay,
    #[error("compact form collision: register {register} would be used twice in packed stage {stage}")]
    CompactCollision { stage: usize, register: usize },
    #[error("malformed network description: {0}")]
    BadDescription(String),
}

/// A standard comparator connecting two registers, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Comparator {
    lo: usize,
    hi: usize,
}

impl Comparator {
    pub fn new(lo: usize, hi: usize) -> Result<Self, NetworkError> {
        if lo >= hi {
            return Err(NetworkError::NonStandardComparator { lo, hi });
        }
        Ok(Comparator { lo, hi })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.lo, self.hi)
    }
}

/// One parallel step: comparators on pairwise-disjoint registers,
/// kept sorted by low register for canonical structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    comparators: Vec<Comparator>,
}

impl Stage {
    pub fn new(mut comparators: Vec<Comparator>) -> Result<Self, NetworkError> {
        comparators.sort_unstable();
        let mut seen = BTreeSet::new();
        for c in &comparators {
            for r in [c.lo, c.hi] {
                if !seen.insert(r) {
                    return Err(NetworkError::OverlappingRegisters { register: r });
                }
            }
        }
        Ok(Stage { comparators })
    }

    pub fn comparators(&self) -> &[Comparator] {
        &self.comparators
    }

    pub fn len(&self) -> usize {
        self.comparators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comparators.is_empty()
    }

    /// Registers touched by this stage.
    pub fn registers(&self) -> impl Iterator<Item = usize> + '_ {
        self.comparators.iter().flat_map(|c| [c.lo, c.hi])
    }

    /// Compare-exchange every comparator; returns true iff some pair was out
    /// of order (an exchange happened).
    pub fn apply<T: Ord>(&self, values: &mut [T]) -> bool {
        let mut exchanged = false;
        for c in &self.comparators {
            if values[c.lo] > values[c.hi] {
                values.swap(c.lo, c.hi);
                exchanged = true;
            }
        }
        exchanged
    }

    /// Bit-parallel form of `apply`: lane b of word r is the 0-1 content of
    /// register r in the b-th of 64 independent simulations. Returns the mask
    /// of lanes in which some comparator exchanged.
    pub fn apply_bits(&self, lanes: &mut [u64]) -> u64 {
        let mut exchanged = 0u64;
        for c in &self.comparators {
            let a = lanes[c.lo];
            let b = lanes[c.hi];
            lanes[c.lo] = a & b;
            lanes[c.hi] = a | b;
            exchanged |= a & !b;
        }
        exchanged
    }
}

/// A comparator network: `registers` registers and an ordered stage list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    registers: usize,
    stages: Vec<Stage>,
}

impl Network {
    pub fn new(registers: usize, stages: Vec<Stage>) -> Result<Self, NetworkError> {
        for stage in &stages {
            for r in stage.registers() {
                if r >= registers {
                    return Err(NetworkError::RegisterOutOfRange { register: r, registers });
                }
            }
        }
        Ok(Network { registers, stages })
    }

    pub fn registers(&self) -> usize {
        self.registers
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn depth(&self) -> usize {
        self.stages.len()
    }

    pub fn comparator_count(&self) -> usize {
        self.stages.iter().map(Stage::len).sum()
    }

    /// Run all stages in order. Returns true iff any stage exchanged.
    pub fn apply<T: Ord>(&self, values: &mut [T]) -> Result<bool, NetworkError> {
        if values.len() != self.registers {
            return Err(NetworkError::LengthMismatch { expected: self.registers, got: values.len() });
        }
        let mut exchanged = false;
        for stage in &self.stages {
            exchanged |= stage.apply(values);
        }
        Ok(exchanged)
    }

    /// Bit-parallel pass over all stages; see [`Stage::apply_bits`].
    pub fn apply_bits(&self, lanes: &mut [u64]) -> u64 {
        debug_assert_eq!(lanes.len(), self.registers);
        let mut exchanged = 0u64;
        for stage in &self.stages {
            exchanged |= stage.apply_bits(lanes);
        }
        exchanged
    }

    /// Maximum over all registers of the number of stages from the first to
    /// the last stage touching that register, inclusive. Registers touched by
    /// no stage contribute 0.
    pub fn delay(&self) -> usize {
        let mut first = vec![usize::MAX; self.registers];
        let mut last = vec![0usize; self.registers];
        for (idx, stage) in self.stages.iter().enumerate() {
            for r in stage.registers() {
                if first[r] == usize::MAX {
                    first[r] = idx + 1;
                }
                last[r] = idx + 1;
            }
        }
        (0..self.registers)
            .filter(|&r| first[r] != usize::MAX)
            .map(|r| last[r] - first[r] + 1)
            .max()
            .unwrap_or(0)
    }

    /// Pack the stage list into `delay()` stages: packed stage q is the union
    /// of stages q, q+D, q+2D, ... The delay property guarantees the unions
    /// are register-disjoint; a collision is reported as an error.
    pub fn compact_form(&self) -> Result<Network, NetworkError> {
        let d = self.delay();
        if d == 0 {
            return Err(NetworkError::ZeroDelay);
        }
        let mut buckets: Vec<Vec<Comparator>> = vec![Vec::new(); d];
        for (idx, stage) in self.stages.iter().enumerate() {
            buckets[idx % d].extend_from_slice(stage.comparators());
        }
        let stages = buckets
            .into_iter()
            .enumerate()
            .map(|(q, comps)| {
                Stage::new(comps).map_err(|e| match e {
                    NetworkError::OverlappingRegisters { register } => {
                        NetworkError::CompactCollision { stage: q + 1, register }
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Network::new(self.registers, stages)
    }

    /// Remove the given registers. Comparators touching a dropped register
    /// are removed entirely; the remaining registers are renumbered
    /// contiguously, preserving order.
    pub fn restrict(&self, dropped: &[usize]) -> Network {
        let dropped: BTreeSet<usize> = dropped.iter().copied().collect();
        let mut remap = vec![usize::MAX; self.registers];
        let mut next = 0usize;
        for r in 0..self.registers {
            if !dropped.contains(&r) {
                remap[r] = next;
                next += 1;
            }
        }
        let stages = self
            .stages
            .iter()
            .map(|stage| {
                let comps = stage
                    .comparators()
                    .iter()
                    .filter(|c| !dropped.contains(&c.lo) && !dropped.contains(&c.hi))
                    .map(|c| Comparator { lo: remap[c.lo], hi: remap[c.hi] })
                    .collect();
                Stage::new(comps).expect("restriction preserves disjointness")
            })
            .collect();
        Network::new(next, stages).expect("restriction preserves register bounds")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&NetworkRepr::from(self)).expect("network serializes")
    }

    pub fn from_json(text: &str) -> Result<Network, NetworkError> {
        let repr: NetworkRepr = serde_json::from_str(text)
            .map_err(|e| NetworkError::BadDescription(e.to_string()))?;
        repr.try_into()
    }

    /// Graphviz rendering in the register-matrix style: one column of point
    /// nodes per stage, one horizontal rank per register, comparators drawn
    /// as edges inside their stage column. Positions are pinned, so render
    /// with a layout engine that honours them (neato -n, fdp).
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("graph network {\n");
        out.push_str("  node [shape=point, width=0.08];\n");
        for (q, stage) in self.stages.iter().enumerate() {
            out.push_str(&format!("  subgraph stage_{} {{\n", q + 1));
            for r in 0..self.registers {
                out.push_str(&format!(
                    "    s{}_r{} [pos=\"{},{}!\"];\n",
                    q + 1,
                    r,
                    q + 1,
                    self.registers - r
                ));
            }
            for c in stage.comparators() {
                out.push_str(&format!("    s{}_r{} -- s{}_r{};\n", q + 1, c.lo, q + 1, c.hi));
            }
            out.push_str("  }\n");
        }
        // horizontal rails connecting consecutive stage columns
        for q in 1..self.stages.len() {
            for r in 0..self.registers {
                out.push_str(&format!(
                    "  s{}_r{} -- s{}_r{} [style=dotted];\n",
                    q, r, q + 1, r
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Wire format: {"registers": N, "stages": [[[i,j], ...], ...]}, 0-based.
#[derive(Serialize, Deserialize)]
struct NetworkRepr {
    registers: usize,
    stages: Vec<Vec<[usize; 2]>>,
}

impl From<&Network> for NetworkRepr {
    fn from(net: &Network) -> Self {
        NetworkRepr {
            registers: net.registers,
            stages: net
                .stages
                .iter()
                .map(|s| s.comparators().iter().map(|c| [c.lo, c.hi]).collect())
                .collect(),
        }
    }
}

impl TryFrom<NetworkRepr> for Network {
    type Error = NetworkError;

    fn try_from(repr: NetworkRepr) -> Result<Self, NetworkError> {
        let stages = repr
            .stages
            .into_iter()
            .map(|pairs| {
                pairs
                    .into_iter()
                    .map(|[lo, hi]| Comparator::new(lo, hi))
                    .collect::<Result<Vec<_>, _>>()
                    .and_then(Stage::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Network::new(repr.registers, stages)
    }
}

/// Convenience constructor used throughout tests and builders.
pub fn stage_of(pairs: &[(usize, usize)]) -> Stage {
    Stage::new(
        pairs
            .iter()
            .map(|&(lo, hi)| Comparator::new(lo, hi).expect("standard comparator"))
            .collect(),
    )
    .expect("disjoint stage")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(registers: usize, stages: &[&[(usize, usize)]]) -> Network {
        Network::new(registers, stages.iter().map(|s| stage_of(s)).collect()).unwrap()
    }

    #[test]
    fn comparator_must_be_standard() {
        assert!(Comparator::new(1, 1).is_err());
        assert!(Comparator::new(2, 1).is_err());
        assert!(Comparator::new(0, 1).is_ok());
    }

    #[test]
    fn stage_rejects_overlap() {
        let c01 = Comparator::new(0, 1).unwrap();
        let c12 = Comparator::new(1, 2).unwrap();
        assert_eq!(
            Stage::new(vec![c01, c12]).unwrap_err(),
            NetworkError::OverlappingRegisters { register: 1 }
        );
    }

    #[test]
    fn apply_stage_exchanges() {
        let s = stage_of(&[(0, 1)]);
        let mut v = [1, 0];
        assert!(s.apply(&mut v));
        assert_eq!(v, [0, 1]);
        assert!(!s.apply(&mut v));
        assert_eq!(v, [0, 1]);
    }

    #[test]
    fn apply_stage_disjoint_pairs() {
        let s = stage_of(&[(0, 2), (1, 3)]);
        let mut v = [3, 2, 1, 0];
        assert!(s.apply(&mut v));
        assert_eq!(v, [1, 0, 3, 2]);
    }

    #[test]
    fn apply_network_runs_stages_in_order() {
        let n = net(2, &[&[(0, 1)]]);
        let mut v = [5, 3];
        assert!(n.apply(&mut v).unwrap());
        assert_eq!(v, [3, 5]);
    }

    #[test]
    fn sorted_input_never_exchanges() {
        let n = net(4, &[&[(0, 1), (2, 3)], &[(1, 2)]]);
        let mut v = [1, 2, 3, 4];
        assert!(!n.apply(&mut v).unwrap());
        assert_eq!(v, [1, 2, 3, 4]);
    }

    #[test]
    fn apply_length_mismatch() {
        let n = net(2, &[&[(0, 1)]]);
        let mut v = [1, 2, 3];
        assert_eq!(
            n.apply(&mut v).unwrap_err(),
            NetworkError::LengthMismatch { expected: 2, got: 3 }
        );
    }

    #[test]
    fn delay_single_stage() {
        assert_eq!(net(2, &[&[(0, 1)]]).delay(), 1);
    }

    #[test]
    fn delay_counts_span_not_uses() {
        // register 0 first touched in stage 1, last in stage 3
        let n = net(4, &[&[(0, 1)], &[(2, 3)], &[(0, 1)]]);
        assert_eq!(n.delay(), 3);
    }

    #[test]
    fn delay_ignores_untouched_registers() {
        let n = net(10, &[&[(0, 1)]]);
        assert_eq!(n.delay(), 1);
    }

    #[test]
    fn compact_form_identity_when_depth_equals_delay() {
        let n = net(3, &[&[(0, 1)], &[(1, 2)]]);
        assert_eq!(n.delay(), 2);
        assert_eq!(n.compact_form().unwrap(), n);
    }

    #[test]
    fn compact_form_packs_disjoint_far_stages() {
        let n = net(5, &[&[(0, 1)], &[(1, 2)], &[(2, 3)], &[(3, 4)]]);
        assert_eq!(n.delay(), 2);
        let packed = n.compact_form().unwrap();
        assert_eq!(packed.depth(), 2);
        assert_eq!(packed.stages()[0], stage_of(&[(0, 1), (2, 3)]));
        assert_eq!(packed.stages()[1], stage_of(&[(1, 2), (3, 4)]));
        assert_eq!(packed.delay(), packed.depth());
    }

    #[test]
    fn compact_form_needs_a_comparator() {
        let n = Network::new(3, vec![]).unwrap();
        assert_eq!(n.compact_form().unwrap_err(), NetworkError::ZeroDelay);
    }

    #[test]
    fn restrict_drops_and_renumbers() {
        let n = net(2, &[&[(0, 1)]]);
        let r = n.restrict(&[0]);
        assert_eq!(r.registers(), 1);
        assert_eq!(r.comparator_count(), 0);
        assert_eq!(r.depth(), 1);
    }

    #[test]
    fn restrict_nothing_is_identity() {
        let n = net(4, &[&[(0, 1), (2, 3)], &[(1, 2)]]);
        assert_eq!(n.restrict(&[]), n);
    }

    #[test]
    fn json_round_trip() {
        let n = net(4, &[&[(0, 1), (2, 3)], &[(1, 2)]]);
        let text = n.to_json();
        assert_eq!(text, r#"{"registers":4,"stages":[[[0,1],[2,3]],[[1,2]]]}"#);
        assert_eq!(Network::from_json(&text).unwrap(), n);
    }

    #[test]
    fn json_rejects_bad_networks() {
        assert!(Network::from_json(r#"{"registers":2,"stages":[[[1,0]]]}"#).is_err());
        assert!(Network::from_json(r#"{"registers":2,"stages":[[[0,5]]]}"#).is_err());
    }

    #[test]
    fn bits_and_scalar_paths_agree() {
        let n = net(6, &[&[(0, 3), (1, 4), (2, 5)], &[(0, 1), (2, 3), (4, 5)], &[(1, 2), (3, 4)]]);
        // 64 random-ish 0-1 inputs per word via a fixed pattern
        let mut lanes: Vec<u64> = (0..6).map(|r| 0x9e3779b97f4a7c15u64.rotate_left(r * 11)).collect();
        let mut expect_ex = 0u64;
        let mut expect: Vec<Vec<u8>> = Vec::new();
        for lane in 0..64 {
            let mut v: Vec<u8> = (0..6).map(|r| ((lanes[r] >> lane) & 1) as u8).collect();
            if n.apply(&mut v).unwrap() {
                expect_ex |= 1 << lane;
            }
            expect.push(v);
        }
        let got_ex = n.apply_bits(&mut lanes);
        assert_eq!(got_ex, expect_ex);
        for lane in 0..64 {
            let got: Vec<u8> = (0..6).map(|r| ((lanes[r] >> lane) & 1) as u8).collect();
            assert_eq!(got, expect[lane], "lane {lane}");
        }
    }
}
