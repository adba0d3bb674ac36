//! Location-level circuits, Pauli-frame propagation and fault sampling.

pub mod noise;
pub mod propagate;
pub mod segment;

pub use noise::{Fault, NoiseModel};
pub use propagate::propagate;
pub use segment::{Block, Segment, SegmentBuilder};

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate1 {
    H,
    S,
    Sdg,
    Cyc,
    Cycdg,
    X,
    Y,
    Z,
}

impl Gate1 {
    pub fn name(&self) -> &'static str {
        match self {
            Gate1::H => "h",
            Gate1::S => "s",
            Gate1::Sdg => "sdg",
            Gate1::Cyc => "cyc",
            Gate1::Cycdg => "cycdg",
            Gate1::X => "x",
            Gate1::Y => "y",
            Gate1::Z => "z",
        }
    }

    /// Image of the frame component (x, z) under conjugation.
    #[inline]
    pub fn forward(&self, x: bool, z: bool) -> (bool, bool) {
        match self {
            Gate1::H => (z, x),
            Gate1::S | Gate1::Sdg => (x, x ^ z),
            Gate1::Cyc => (x ^ z, x),
            Gate1::Cycdg => (z, x ^ z),
            Gate1::X | Gate1::Y | Gate1::Z => (x, z),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocKind {
    PrepZero,
    PrepPlus,
    Cnot,
    Gate(Gate1),
    MeasX,
    MeasZ,
    Wait,
}

impl LocKind {
    pub fn arity(&self) -> usize {
        if matches!(self, LocKind::Cnot) {
            2
        } else {
            1
        }
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, LocKind::MeasX | LocKind::MeasZ)
    }

    pub fn is_prep(&self) -> bool {
        matches!(self, LocKind::PrepZero | LocKind::PrepPlus)
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            LocKind::PrepZero => "prep0",
            LocKind::PrepPlus => "prep+",
            LocKind::Cnot => "cnot",
            LocKind::Gate(g) => g.name(),
            LocKind::MeasX => "measx",
            LocKind::MeasZ => "measz",
            LocKind::Wait => "wait",
        }
    }

    /// Number of distinct non-identity Paulis a fault here can take.
    pub fn fault_count(&self) -> u8 {
        if matches!(self, LocKind::Cnot) {
            15
        } else {
            3
        }
    }
}

/// One fault location. For a CNOT, `q = [control, target]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Location {
    pub kind: LocKind,
    pub q: [u32; 2],
    pub time: u32,
}

impl Location {
    pub fn qubits(&self) -> &[u32] {
        &self.q[..self.kind.arity()]
    }
}

/// Timestep-ordered list of locations on `qubits` wires.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    pub qubits: usize,
    pub locations: Vec<Location>,
}

/// Per-kind location counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub prep_zero: usize,
    pub prep_plus: usize,
    pub cnot: usize,
    pub gates: BTreeMap<&'static str, usize>,
    pub meas_x: usize,
    pub meas_z: usize,
    pub wait: usize,
}

impl Census {
    pub fn total(&self) -> usize {
        self.prep_zero + self.prep_plus + self.cnot + self.gates.values().sum::<usize>() + self.meas_x + self.meas_z + self.wait
    }

    pub fn add(&mut self, other: &Census, times: usize) {
        self.prep_zero += other.prep_zero * times;
        self.prep_plus += other.prep_plus * times;
        self.cnot += other.cnot * times;
        for (k, v) in &other.gates {
            *self.gates.entry(k).or_default() += v * times;
        }
        self.meas_x += other.meas_x * times;
        self.meas_z += other.meas_z * times;
        self.wait += other.wait * times;
    }
}

impl Circuit {
    pub fn new(qubits: usize) -> Self {
        Circuit { qubits, locations: Vec::new() }
    }

    pub fn depth(&self) -> u32 {
        self.locations.iter().map(|l| l.time).max().map_or(0, |t| t + 1)
    }

    pub fn census(&self) -> Census {
        let mut c = Census::default();
        for l in &self.locations {
            match l.kind {
                LocKind::PrepZero => c.prep_zero += 1,
                LocKind::PrepPlus => c.prep_plus += 1,
                LocKind::Cnot => c.cnot += 1,
                LocKind::Gate(g) => *c.gates.entry(g.name()).or_default() += 1,
                LocKind::MeasX => c.meas_x += 1,
                LocKind::MeasZ => c.meas_z += 1,
                LocKind::Wait => c.wait += 1,
            }
        }
        c
    }

    /// Checks ordering, operand ranges, collisions and measured-qubit reuse.
    pub fn validate(&self) -> Result<()> {
        let mut busy: std::collections::HashSet<(u32, u32)> = Default::default();
        let mut measured_at: BTreeMap<u32, u32> = BTreeMap::new();
        let mut last_t = 0;
        for (i, l) in self.locations.iter().enumerate() {
            if l.time < last_t {
                return Err(Error::Invariant(format!("location {i} out of time order")));
            }
            last_t = l.time;
            if l.kind == LocKind::Cnot && l.q[0] == l.q[1] {
                return Err(Error::Invariant(format!("location {i}: CNOT on a single qubit")));
            }
            for &q in l.qubits() {
                if q as usize >= self.qubits {
                    return Err(Error::Invariant(format!("location {i}: qubit {q} out of range")));
                }
                if !busy.insert((q, l.time)) {
                    return Err(Error::Invariant(format!("qubit {q} used twice at time {}", l.time)));
                }
                if let Some(&mt) = measured_at.get(&q) {
                    if l.time > mt && !l.kind.is_prep() {
                        return Err(Error::Invariant(format!("qubit {q} used after measurement")));
                    }
                    if l.kind.is_prep() {
                        measured_at.remove(&q);
                    }
                }
                if l.kind.is_measurement() {
                    measured_at.insert(q, l.time);
                }
            }
        }
        Ok(())
    }

    /// Text listing, one location per line, grouped under `# time t` headers.
    /// Qubits are written 1-based.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut cur: Option<u32> = None;
        for l in &self.locations {
            if cur != Some(l.time) {
                let _ = writeln!(s, "# time {}", l.time);
                cur = Some(l.time);
            }
            match l.kind {
                LocKind::Cnot => {
                    let _ = writeln!(s, "cnot {},{}", l.q[0] + 1, l.q[1] + 1);
                }
                k => {
                    let _ = writeln!(s, "{} {}", k.keyword(), l.q[0] + 1);
                }
            }
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Circuit> {
        let mut locations = Vec::new();
        let mut time = 0u32;
        let mut max_q = 0u32;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: {raw:?}", ln + 1));
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(t) = rest.strip_prefix("time") {
                    time = t.trim().parse().map_err(|_| bad())?;
                }
                continue;
            }
            let (kw, args) = line.split_once(char::is_whitespace).ok_or_else(bad)?;
            let qs: Vec<u32> = args
                .split(',')
                .map(|a| a.trim().parse::<u32>().ok().filter(|&q| q >= 1).map(|q| q - 1))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            let kind = match kw {
                "prep0" => LocKind::PrepZero,
                "prep+" => LocKind::PrepPlus,
                "cnot" => LocKind::Cnot,
                "measx" => LocKind::MeasX,
                "measz" => LocKind::MeasZ,
                "wait" => LocKind::Wait,
                "h" => LocKind::Gate(Gate1::H),
                "s" => LocKind::Gate(Gate1::S),
                "sdg" => LocKind::Gate(Gate1::Sdg),
                "cyc" => LocKind::Gate(Gate1::Cyc),
                "cycdg" => LocKind::Gate(Gate1::Cycdg),
                "x" => LocKind::Gate(Gate1::X),
                "y" => LocKind::Gate(Gate1::Y),
                "z" => LocKind::Gate(Gate1::Z),
                _ => return Err(bad()),
            };
            if qs.len() != kind.arity() {
                return Err(bad());
            }
            let q = if kind.arity() == 2 { [qs[0], qs[1]] } else { [qs[0], qs[0]] };
            max_q = max_q.max(q[0]).max(q[1]);
            locations.push(Location { kind, q, time });
        }
        let qubits = if locations.is_empty() { 0 } else { max_q as usize + 1 };
        let c = Circuit { qubits, locations };
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let text = "# time 0\nprep0 1\nprep+ 2\n# time 1\ncnot 2,1\n# time 2\nmeasz 1\nwait 2\n";
        let c = Circuit::parse_text(text).unwrap();
        assert_eq!(c.qubits, 2);
        assert_eq!(c.to_text(), text);
        let census = c.census();
        assert_eq!((census.prep_zero, census.prep_plus, census.cnot, census.meas_z, census.wait), (1, 1, 1, 1, 1));
    }

    #[test]
    fn collisions_rejected() {
        assert!(Circuit::parse_text("# time 0\ncnot 1,2\nh 2\n").is_err());
        assert!(Circuit::parse_text("# time 0\nmeasz 1\n# time 1\nh 1\n").is_err());
    }

    #[test]
    fn empty_census() {
        assert_eq!(Circuit::new(3).census().total(), 0);
    }
}
