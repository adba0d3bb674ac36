//! Circuit segments with input and output blocks and precomputed fault
//! effect tables.
//!
//! A segment's output space is a packed word vector. Each output block owns
//! an X field and a Z field; each record group owns one field with one bit
//! per record (a record is the parity of a set of measurements). The table
//! stores, for every location, the output-space image of an X or Z fault on
//! each of its qubits, so that running a trial is a sequence of XORs.

use super::noise::Fault;
use super::propagate::propagate;
use super::{Circuit, Gate1, LocKind, Location};
use crate::bits::{words_for, xor_into, BitVec};
use crate::error::{Error, Result};
use crate::stabilizer::Pauli;
use std::collections::HashMap;

/// Qubits of a code block together with an arrival time (inputs) or end
/// time (outputs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub qubits: Vec<u32>,
    pub time: u32,
}

#[derive(Clone, Debug, Default)]
pub struct SegmentBuilder {
    qubits: usize,
    locs: Vec<Location>,
    inputs: Vec<Block>,
    outputs: Vec<Block>,
    groups: Vec<Vec<Vec<usize>>>,
}

impl SegmentBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn alloc(&mut self, n: usize) -> Vec<u32> {
        let start = self.qubits as u32;
        self.qubits += n;
        (start..start + n as u32).collect()
    }

    fn push(&mut self, kind: LocKind, q: [u32; 2], time: u32) -> usize {
        self.locs.push(Location { kind, q, time });
        self.locs.len() - 1
    }

    pub fn prep_zero(&mut self, q: u32, t: u32) -> usize {
        self.push(LocKind::PrepZero, [q, q], t)
    }

    pub fn prep_plus(&mut self, q: u32, t: u32) -> usize {
        self.push(LocKind::PrepPlus, [q, q], t)
    }

    pub fn cnot(&mut self, c: u32, tg: u32, t: u32) -> usize {
        self.push(LocKind::Cnot, [c, tg], t)
    }

    pub fn gate(&mut self, g: Gate1, q: u32, t: u32) -> usize {
        self.push(LocKind::Gate(g), [q, q], t)
    }

    pub fn meas_x(&mut self, q: u32, t: u32) -> usize {
        self.push(LocKind::MeasX, [q, q], t)
    }

    pub fn meas_z(&mut self, q: u32, t: u32) -> usize {
        self.push(LocKind::MeasZ, [q, q], t)
    }

    pub fn input(&mut self, qubits: Vec<u32>, arrival: u32) -> usize {
        self.inputs.push(Block { qubits, time: arrival });
        self.inputs.len() - 1
    }

    pub fn output(&mut self, qubits: Vec<u32>, end: u32) -> usize {
        self.outputs.push(Block { qubits, time: end });
        self.outputs.len() - 1
    }

    /// Registers a record group; each record is a set of measurement ids as
    /// returned by `meas_x`/`meas_z`.
    pub fn group(&mut self, records: Vec<Vec<usize>>) -> usize {
        self.groups.push(records);
        self.groups.len() - 1
    }

    fn insert_waits(&mut self) -> Result<()> {
        let mut per_q: Vec<Vec<(u32, LocKind)>> = vec![Vec::new(); self.qubits];
        for l in &self.locs {
            for &q in l.qubits() {
                let Some(v) = per_q.get_mut(q as usize) else {
                    return Err(Error::Invariant(format!("qubit {q} was never allocated")));
                };
                v.push((l.time, l.kind));
            }
        }
        let mut arrival: HashMap<u32, u32> = HashMap::new();
        for b in &self.inputs {
            for &q in &b.qubits {
                if arrival.insert(q, b.time).is_some() {
                    return Err(Error::Invariant(format!("qubit {q} is in two input blocks")));
                }
            }
        }
        let mut end: HashMap<u32, u32> = HashMap::new();
        for b in &self.outputs {
            for &q in &b.qubits {
                if end.insert(q, b.time).is_some() {
                    return Err(Error::Invariant(format!("qubit {q} is in two output blocks")));
                }
            }
        }
        let mut waits = Vec::new();
        for (q, ev) in per_q.iter_mut().enumerate() {
            let q = q as u32;
            ev.sort_by_key(|e| e.0);
            let mut alive: Option<u32> = arrival.get(&q).copied();
            for &(t, k) in ev.iter() {
                if k.is_prep() {
                    if alive.is_some() {
                        return Err(Error::Invariant(format!("qubit {q} prepared while holding state")));
                    }
                    alive = Some(t + 1);
                    continue;
                }
                let a = alive.ok_or_else(|| Error::Invariant(format!("qubit {q} used at time {t} while not alive")))?;
                if t < a {
                    return Err(Error::Invariant(format!("qubit {q} used twice at time {t}")));
                }
                waits.extend((a..t).map(|s| (q, s)));
                alive = if k.is_measurement() { None } else { Some(t + 1) };
            }
            match (alive, end.get(&q)) {
                (Some(a), Some(&e)) => {
                    if e + 1 < a {
                        return Err(Error::Invariant(format!("qubit {q} used after its output time")));
                    }
                    waits.extend((a..=e).map(|s| (q, s)));
                }
                (Some(_), None) => return Err(Error::Invariant(format!("qubit {q} is left dangling"))),
                (None, Some(_)) => return Err(Error::Invariant(format!("output qubit {q} is not alive at the end"))),
                (None, None) => {}
            }
        }
        for (q, s) in waits {
            self.push(LocKind::Wait, [q, q], s);
        }
        Ok(())
    }

    pub fn build(mut self) -> Result<Segment> {
        self.insert_waits()?;
        let mut order: Vec<usize> = (0..self.locs.len()).collect();
        order.sort_by_key(|&i| self.locs[i].time);
        let mut pos = vec![0usize; order.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let circuit = Circuit { qubits: self.qubits, locations: order.iter().map(|&i| self.locs[i]).collect() };
        circuit.validate()?;
        let mut groups = Vec::with_capacity(self.groups.len());
        for g in &self.groups {
            let mut recs = Vec::with_capacity(g.len());
            for r in g {
                let mut rec = Vec::with_capacity(r.len());
                for &m in r {
                    let p = *pos.get(m).ok_or_else(|| Error::Invariant(format!("unknown measurement id {m}")))?;
                    if !circuit.locations[p].kind.is_measurement() {
                        return Err(Error::Invariant(format!("record refers to non-measurement location {m}")));
                    }
                    rec.push(p as u32);
                }
                recs.push(rec);
            }
            groups.push(recs);
        }
        Segment::new(circuit, self.inputs, self.outputs, groups)
    }
}

#[derive(Clone, Debug)]
pub struct Segment {
    pub circuit: Circuit,
    pub inputs: Vec<Block>,
    pub outputs: Vec<Block>,
    /// Records as sets of location indices, per group.
    pub groups: Vec<Vec<Vec<u32>>>,
    words: usize,
    out_off: Vec<(usize, usize)>,
    group_off: Vec<usize>,
    table: Vec<u64>,
    input_sens: Vec<Vec<u64>>,
    nonwait: Vec<u32>,
    waits: Vec<u32>,
}

impl Segment {
    fn new(circuit: Circuit, inputs: Vec<Block>, outputs: Vec<Block>, groups: Vec<Vec<Vec<u32>>>) -> Result<Segment> {
        let mut off = 0;
        let mut out_off = Vec::new();
        for b in &outputs {
            let w = words_for(b.qubits.len());
            out_off.push((off, off + w));
            off += 2 * w;
        }
        let mut group_off = Vec::new();
        for g in &groups {
            group_off.push(off);
            off += words_for(g.len());
        }
        let words = off.max(1);
        let nq = circuit.qubits;
        let mut sx = vec![0u64; nq * words];
        let mut sz = vec![0u64; nq * words];
        for (b, blk) in outputs.iter().enumerate() {
            for (i, &q) in blk.qubits.iter().enumerate() {
                let q = q as usize;
                sx[q * words + out_off[b].0 + i / 64] |= 1 << (i % 64);
                sz[q * words + out_off[b].1 + i / 64] |= 1 << (i % 64);
            }
        }
        let mut rec_of: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (g, recs) in groups.iter().enumerate() {
            for (r, rec) in recs.iter().enumerate() {
                for &m in rec {
                    rec_of.entry(m).or_default().push((g, r));
                }
            }
        }
        let nl = circuit.locations.len();
        let mut table = vec![0u64; nl * 4 * words];
        let mut tmp = vec![0u64; words];
        for li in (0..nl).rev() {
            let l = circuit.locations[li];
            let a = l.q[0] as usize;
            let b = l.q[1] as usize;
            let base = li * 4 * words;
            if l.kind.is_measurement() {
                let (xs, zs) = (&mut sx[a * words..(a + 1) * words], &mut sz[a * words..(a + 1) * words]);
                xs.fill(0);
                zs.fill(0);
                let target = if l.kind == LocKind::MeasZ { xs } else { zs };
                for &(g, r) in rec_of.get(&(li as u32)).map(|v| v.as_slice()).unwrap_or(&[]) {
                    target[group_off[g] + r / 64] ^= 1 << (r % 64);
                }
                table[base..base + words].copy_from_slice(&sx[a * words..(a + 1) * words]);
                table[base + words..base + 2 * words].copy_from_slice(&sz[a * words..(a + 1) * words]);
                continue;
            }
            table[base..base + words].copy_from_slice(&sx[a * words..(a + 1) * words]);
            table[base + words..base + 2 * words].copy_from_slice(&sz[a * words..(a + 1) * words]);
            if l.kind == LocKind::Cnot {
                table[base + 2 * words..base + 3 * words].copy_from_slice(&sx[b * words..(b + 1) * words]);
                table[base + 3 * words..base + 4 * words].copy_from_slice(&sz[b * words..(b + 1) * words]);
            }
            match l.kind {
                LocKind::PrepZero | LocKind::PrepPlus => {
                    sx[a * words..(a + 1) * words].fill(0);
                    sz[a * words..(a + 1) * words].fill(0);
                }
                LocKind::Cnot => {
                    tmp.copy_from_slice(&sx[b * words..(b + 1) * words]);
                    xor_into(&mut sx[a * words..(a + 1) * words], &tmp);
                    tmp.copy_from_slice(&sz[a * words..(a + 1) * words]);
                    xor_into(&mut sz[b * words..(b + 1) * words], &tmp);
                }
                LocKind::Gate(g) => {
                    let xs = &mut sx[a * words..(a + 1) * words];
                    let zs = &mut sz[a * words..(a + 1) * words];
                    for w in 0..words {
                        let (x, z) = (xs[w], zs[w]);
                        let (nx, nz) = match g {
                            Gate1::H => (z, x),
                            Gate1::S | Gate1::Sdg => (x ^ z, z),
                            Gate1::Cyc => (x ^ z, x),
                            Gate1::Cycdg => (z, x ^ z),
                            Gate1::X | Gate1::Y | Gate1::Z => (x, z),
                        };
                        xs[w] = nx;
                        zs[w] = nz;
                    }
                }
                _ => {}
            }
        }
        let mut input_sens = Vec::with_capacity(inputs.len());
        for blk in &inputs {
            let mut v = vec![0u64; blk.qubits.len() * 2 * words];
            for (i, &q) in blk.qubits.iter().enumerate() {
                let q = q as usize;
                v[2 * i * words..(2 * i + 1) * words].copy_from_slice(&sx[q * words..(q + 1) * words]);
                v[(2 * i + 1) * words..(2 * i + 2) * words].copy_from_slice(&sz[q * words..(q + 1) * words]);
            }
            input_sens.push(v);
        }
        let mut nonwait = Vec::new();
        let mut waits = Vec::new();
        for (i, l) in circuit.locations.iter().enumerate() {
            if l.kind == LocKind::Wait {
                waits.push(i as u32);
            } else {
                nonwait.push(i as u32);
            }
        }
        Ok(Segment { circuit, inputs, outputs, groups, words, out_off, group_off, table, input_sens, nonwait, waits })
    }

    /// Length of the packed output vector in words.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn nonwait_locations(&self) -> &[u32] {
        &self.nonwait
    }

    pub fn wait_locations(&self) -> &[u32] {
        &self.waits
    }

    pub fn location(&self, i: u32) -> &Location {
        &self.circuit.locations[i as usize]
    }

    /// XORs the image of input frames into `out`.
    pub fn apply_inputs(&self, inputs: &[&Pauli], out: &mut [u64]) {
        let w = self.words;
        for (b, p) in inputs.iter().enumerate() {
            let sens = &self.input_sens[b];
            for i in p.x.ones_iter() {
                xor_into(out, &sens[2 * i * w..(2 * i + 1) * w]);
            }
            for i in p.z.ones_iter() {
                xor_into(out, &sens[(2 * i + 1) * w..(2 * i + 2) * w]);
            }
        }
    }

    /// XORs the image of one fault into `out`.
    #[inline]
    pub fn apply_fault(&self, f: Fault, out: &mut [u64]) {
        let w = self.words;
        let base = f.loc as usize * 4 * w;
        for bit in 0..4 {
            if f.pauli & (1 << bit) != 0 {
                xor_into(out, &self.table[base + bit * w..base + (bit + 1) * w]);
            }
        }
    }

    /// Runs the segment on input frames and faults, returning the packed
    /// output vector.
    pub fn run(&self, inputs: &[&Pauli], faults: &[Fault]) -> Vec<u64> {
        let mut out = vec![0u64; self.words];
        self.apply_inputs(inputs, &mut out);
        for &f in faults {
            self.apply_fault(f, &mut out);
        }
        out
    }

    pub fn output_frame(&self, out: &[u64], b: usize) -> Pauli {
        let n = self.outputs[b].qubits.len();
        let w = words_for(n);
        let (xo, zo) = self.out_off[b];
        Pauli::from_parts(BitVec::from_words(n, &out[xo..xo + w]), BitVec::from_words(n, &out[zo..zo + w]))
    }

    pub fn records(&self, out: &[u64], g: usize) -> BitVec {
        let n = self.groups[g].len();
        let o = self.group_off[g];
        BitVec::from_words(n, &out[o..o + words_for(n)])
    }

    pub fn records_zero(&self, out: &[u64], g: usize) -> bool {
        let o = self.group_off[g];
        out[o..o + words_for(self.groups[g].len())].iter().all(|&w| w == 0)
    }

    /// Reference result by forward propagation: output frames and record
    /// groups.
    pub fn propagate(&self, inputs: &[&Pauli], faults: &[Fault]) -> (Vec<Pauli>, Vec<BitVec>) {
        let mut init = Pauli::identity(self.circuit.qubits);
        for (b, p) in inputs.iter().enumerate() {
            for (i, &q) in self.inputs[b].qubits.iter().enumerate() {
                init.set(q as usize, p.get(i));
            }
        }
        let (frame, flips) = propagate(&self.circuit, &init, faults);
        let outs = self
            .outputs
            .iter()
            .map(|blk| {
                let mut p = Pauli::identity(blk.qubits.len());
                for (i, &q) in blk.qubits.iter().enumerate() {
                    p.set(i, frame.get(q as usize));
                }
                p
            })
            .collect();
        let recs = self
            .groups
            .iter()
            .map(|g| {
                let mut v = BitVec::zeros(g.len());
                for (r, rec) in g.iter().enumerate() {
                    v.set(r, rec.iter().fold(false, |acc, &m| acc ^ flips.get(m as usize)));
                }
                v
            })
            .collect();
        (outs, recs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn waits_fill_idle_slots() {
        let mut b = SegmentBuilder::new();
        let d = b.alloc(2);
        b.input(d.clone(), 0);
        b.cnot(d[0], d[1], 2);
        b.output(d, 3);
        let s = b.build().unwrap();
        assert_eq!(s.circuit.census().wait, 6);
    }

    #[test]
    fn dangling_qubit_rejected() {
        let mut b = SegmentBuilder::new();
        let q = b.alloc(1);
        b.prep_zero(q[0], 0);
        assert!(b.build().is_err());
    }

    #[test]
    fn table_matches_propagation_on_small_segment() {
        let mut b = SegmentBuilder::new();
        let d = b.alloc(2);
        let a = b.alloc(1);
        b.input(d.clone(), 1);
        b.prep_plus(a[0], 0);
        b.cnot(a[0], d[0], 1);
        b.gate(Gate1::H, d[1], 1);
        b.cnot(d[1], a[0], 2);
        let m = b.meas_x(a[0], 3);
        b.group(vec![vec![m]]);
        b.output(d, 3);
        let s = b.build().unwrap();
        let input = Pauli::parse("YX").unwrap();
        for loc in 0..s.circuit.locations.len() as u32 {
            let k = s.location(loc).kind;
            let np = if k == LocKind::Cnot { 15 } else { 3 };
            for p in 1..=np {
                let f = [Fault { loc, pauli: p }];
                let out = s.run(&[&input], &f);
                let (frames, recs) = s.propagate(&[&input], &f);
                assert_eq!(s.output_frame(&out, 0), frames[0]);
                assert_eq!(s.records(&out, 0), recs[0]);
            }
        }
    }
}
