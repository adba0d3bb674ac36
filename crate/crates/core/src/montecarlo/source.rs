//! Where the faults of each executed segment instance come from.

use crate::circuit::{Fault, NoiseModel, Segment};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fmt;

/// Identifies one executed segment inside an ex-Rec trial: a root slot
/// (stored plus one) followed by up to three (tag, attempt) steps of 16
/// bits each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstanceKey(pub u64);

/// Root slot of the logical gate.
pub const GATE_SLOT: u16 = 0;

impl InstanceKey {
    pub fn root(slot: u16) -> Self {
        InstanceKey(slot as u64 + 1)
    }

    /// Leading EC on input block b.
    pub fn leading(b: usize) -> Self {
        Self::root(1 + b as u16)
    }

    /// Trailing EC on output block b of a `blocks`-block gate.
    pub fn trailing(blocks: usize, b: usize) -> Self {
        Self::root(1 + (blocks + b) as u16)
    }

    pub fn push(self, tag: u8, attempt: u8) -> Self {
        debug_assert!(self.0 >> 48 == 0, "instance key too deep");
        InstanceKey(self.0 << 16 | (tag as u64) << 8 | attempt as u64)
    }
}

impl fmt::Display for InstanceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut v = self.0;
        while v > 0xffff {
            parts.push(format!("{}.{}", (v >> 8) & 0xff, v & 0xff));
            v >>= 16;
        }
        write!(f, "slot{}", v - 1)?;
        for p in parts.iter().rev() {
            write!(f, "/{p}")?;
        }
        Ok(())
    }
}

pub trait FaultSource {
    /// Appends the faults hitting `seg` when executed as instance `key`.
    fn faults(&mut self, key: InstanceKey, seg: &Segment, out: &mut Vec<Fault>);
}

/// Independent depolarizing faults from one random stream.
pub struct RandomFaults {
    pub noise: NoiseModel,
    pub rng: ChaCha8Rng,
}

impl FaultSource for RandomFaults {
    fn faults(&mut self, _key: InstanceKey, seg: &Segment, out: &mut Vec<Fault>) {
        self.noise.sample(seg, &mut self.rng, out);
    }
}

/// A fixed fault set per instance; instances not listed are fault-free.
#[derive(Clone, Debug, Default)]
pub struct ExplicitFaults {
    pub map: HashMap<InstanceKey, Vec<Fault>>,
}

impl ExplicitFaults {
    pub fn single(key: InstanceKey, fault: Fault) -> Self {
        ExplicitFaults { map: HashMap::from([(key, vec![fault])]) }
    }
}

impl FaultSource for ExplicitFaults {
    fn faults(&mut self, key: InstanceKey, _seg: &Segment, out: &mut Vec<Fault>) {
        if let Some(f) = self.map.get(&key) {
            out.extend_from_slice(f);
        }
    }
}

/// Wraps another source and keeps everything it produced.
pub struct Recording<S> {
    pub inner: S,
    pub seen: ExplicitFaults,
}

impl<S: FaultSource> Recording<S> {
    pub fn new(inner: S) -> Self {
        Recording { inner, seen: ExplicitFaults::default() }
    }
}

impl<S: FaultSource> FaultSource for Recording<S> {
    fn faults(&mut self, key: InstanceKey, seg: &Segment, out: &mut Vec<Fault>) {
        let start = out.len();
        self.inner.faults(key, seg, out);
        if out.len() > start {
            self.seen.map.entry(key).or_default().extend_from_slice(&out[start..]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_distinct_and_printable() {
        let a = InstanceKey::leading(0).push(1, 0);
        let b = InstanceKey::leading(0).push(1, 1);
        let c = InstanceKey::trailing(2, 0).push(1, 0).push(3, 0);
        assert_ne!(a, b);
        assert_eq!(c.to_string(), "slot3/1.0/3.0");
    }
}
