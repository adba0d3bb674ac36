//! Error-correction gadgets and logical gate segments.

use super::factory::Factory;
use crate::circuit::{Gate1, Segment, SegmentBuilder};
use crate::error::Result;
use crate::stabilizer::catalog::SurfaceLayout;
use std::sync::Arc;

/// Record groups of a Steane coupling segment.
pub const STEANE_X_RECORDS: usize = 0;
pub const STEANE_Z_RECORDS: usize = 1;

#[derive(Clone, Debug)]
pub enum EcGadget {
    /// Inputs: data, |0̄⟩, |+̄⟩. Output: data. Group 0 holds the X-basis
    /// outcomes of |0̄⟩, group 1 the Z-basis outcomes of |+̄⟩.
    Steane { coupling: Segment, zero: Arc<Factory>, plus: Arc<Factory> },
    /// Input and output: data. Groups 2r and 2r+1 hold the star and
    /// plaquette detectors of round r.
    Shor { segment: Segment, layout: Arc<SurfaceLayout>, rounds: usize },
    /// Teleportation through a noiseless Bell pair. Inputs: data, Bell half
    /// A. Group 0 holds the X-basis outcomes of the data, group 1 the
    /// Z-basis outcomes of A. No output block: the other Bell half carries
    /// the state.
    Knill { segment: Segment },
}

impl EcGadget {
    pub fn name(&self) -> &'static str {
        match self {
            EcGadget::Steane { .. } => "steane",
            EcGadget::Shor { .. } => "shor",
            EcGadget::Knill { .. } => "knill",
        }
    }

    /// CNOTs per EC, counting each factory attempt at full cost. With
    /// `coupling_per_attempt` the transversal coupling is also charged once
    /// per ancilla attempt.
    pub fn cnot_count(&self, n: usize, coupling_per_attempt: bool) -> usize {
        match self {
            EcGadget::Steane { zero, plus, .. } => [zero, plus]
                .iter()
                .map(|f| {
                    if f.perfect {
                        n
                    } else if coupling_per_attempt {
                        f.attempts * (f.attempt_cnots() + n)
                    } else {
                        f.attempts * f.attempt_cnots() + n
                    }
                })
                .sum(),
            EcGadget::Shor { segment, .. } => segment.circuit.census().cnot,
            EcGadget::Knill { segment } => segment.circuit.census().cnot,
        }
    }
}

/// Data-side coupling of Steane EC: CNOT |0̄⟩→data, X-measure |0̄⟩ together
/// with CNOT data→|+̄⟩, then Z-measure |+̄⟩.
pub fn steane_coupling(n: usize) -> Result<Segment> {
    let mut b = SegmentBuilder::new();
    let d = b.alloc(n);
    let a0 = b.alloc(n);
    let ap = b.alloc(n);
    b.input(d.clone(), 1);
    b.input(a0.clone(), 1);
    b.input(ap.clone(), 2);
    for i in 0..n {
        b.cnot(a0[i], d[i], 1);
    }
    let mx: Vec<usize> = a0.iter().map(|&q| b.meas_x(q, 2)).collect();
    for i in 0..n {
        b.cnot(d[i], ap[i], 2);
    }
    let mz: Vec<usize> = ap.iter().map(|&q| b.meas_z(q, 3)).collect();
    b.group(mx.into_iter().map(|m| vec![m]).collect());
    b.group(mz.into_iter().map(|m| vec![m]).collect());
    b.output(d, 2);
    b.build()
}

/// Shor EC for the surface code with one bare ancilla per check, repeated
/// `rounds` times. Each round measures all stars (X checks, ancilla order
/// up, down, left, right) and then all plaquettes (Z checks, order left,
/// right, up, down). Detectors compare each outcome with the previous round.
pub fn shor_surface(layout: &SurfaceLayout, rounds: usize) -> Result<Segment> {
    let n = layout.n();
    let mut b = SegmentBuilder::new();
    let d = b.alloc(n);
    b.input(d.clone(), 1);
    let mut prev: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut last_cnot = 0;
    for r in 0..rounds as u32 {
        for (phase, sites) in [&layout.stars, &layout.plaquettes].into_iter().enumerate() {
            let base = 10 * r + 5 * phase as u32;
            let anc = b.alloc(sites.len());
            let mut meas = Vec::with_capacity(sites.len());
            for (k, &site) in sites.iter().enumerate() {
                let nb = layout.neighbours(site);
                let a = anc[k];
                if phase == 0 {
                    b.prep_plus(a, base);
                    for (slot, q) in [nb[0], nb[1], nb[2], nb[3]].into_iter().enumerate() {
                        if let Some(q) = q {
                            b.cnot(a, d[q], base + 1 + slot as u32);
                        }
                    }
                    meas.push(b.meas_x(a, base + 5));
                } else {
                    b.prep_zero(a, base);
                    for (slot, q) in [nb[2], nb[3], nb[0], nb[1]].into_iter().enumerate() {
                        if let Some(q) = q {
                            b.cnot(d[q], a, base + 1 + slot as u32);
                        }
                    }
                    meas.push(b.meas_z(a, base + 5));
                }
            }
            last_cnot = base + 4;
            let recs: Vec<Vec<usize>> = meas
                .iter()
                .enumerate()
                .map(|(k, &m)| if r == 0 { vec![m] } else { vec![m, prev[phase][k]] })
                .collect();
            b.group(recs);
            prev[phase] = meas;
        }
    }
    b.output(d, last_cnot);
    b.build()
}

/// Bell measurement half of teleported EC: CNOT data→A, X-measure data,
/// Z-measure A.
pub fn knill_coupling(n: usize) -> Result<Segment> {
    let mut b = SegmentBuilder::new();
    let d = b.alloc(n);
    let a = b.alloc(n);
    b.input(d.clone(), 0);
    b.input(a.clone(), 0);
    for i in 0..n {
        b.cnot(d[i], a[i], 0);
    }
    let mx: Vec<usize> = d.iter().map(|&q| b.meas_x(q, 1)).collect();
    let mz: Vec<usize> = a.iter().map(|&q| b.meas_z(q, 1)).collect();
    b.group(mx.into_iter().map(|m| vec![m]).collect());
    b.group(mz.into_iter().map(|m| vec![m]).collect());
    b.build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    Cnot,
    T3,
}

impl GateKind {
    pub fn blocks(&self) -> usize {
        match self {
            GateKind::Cnot => 2,
            GateKind::T3 => 3,
        }
    }
}

/// Transversal CNOT from block 0 onto block 1.
pub fn transversal_cnot(n: usize) -> Result<Segment> {
    let mut b = SegmentBuilder::new();
    let c = b.alloc(n);
    let t = b.alloc(n);
    b.input(c.clone(), 0);
    b.input(t.clone(), 0);
    for i in 0..n {
        b.cnot(c[i], t[i], 0);
    }
    b.output(c, 0);
    b.output(t, 0);
    b.build()
}

/// Transversal T3 for the five-qubit code. Inputs and outputs are the
/// logical blocks q1, q2, q3 in order; internally the rows carry
/// (q2, q3, q1) on input and (q1, q2, q3) on output.
pub fn t3_gate(n: usize) -> Result<Segment> {
    let mut b = SegmentBuilder::new();
    let r1 = b.alloc(n);
    let r2 = b.alloc(n);
    let r3 = b.alloc(n);
    b.input(r3.clone(), 0);
    b.input(r1.clone(), 0);
    b.input(r2.clone(), 0);
    for i in 0..n {
        let (x1, x2, x3) = (r1[i], r2[i], r3[i]);
        b.gate(Gate1::Y, x1, 0);
        b.gate(Gate1::Y, x3, 0);
        b.gate(Gate1::Cycdg, x1, 1);
        b.gate(Gate1::Sdg, x1, 2);
        b.cnot(x3, x1, 3);
        b.gate(Gate1::S, x1, 4);
        b.gate(Gate1::Cyc, x3, 4);
        b.gate(Gate1::Cycdg, x1, 5);
        b.gate(Gate1::Sdg, x3, 5);
        b.gate(Gate1::Sdg, x1, 6);
        b.cnot(x2, x1, 7);
        b.cnot(x3, x2, 8);
        b.cnot(x1, x3, 9);
    }
    b.output(r1, 9);
    b.output(r2, 9);
    b.output(r3, 9);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::Pauli;

    #[test]
    fn t3_conjugation_table() {
        let seg = t3_gate(1).unwrap();
        let cases = [("XII", "XYZ"), ("IXI", "YXZ"), ("IIX", "XXX"), ("ZII", "ZXY"), ("IZI", "XZY"), ("IIZ", "ZZZ")];
        for (input, want) in cases {
            let p: Vec<Pauli> = input.chars().map(|c| Pauli::parse(&c.to_string()).unwrap()).collect();
            let out = seg.run(&[&p[0], &p[1], &p[2]], &[]);
            let got: String = (0..3).map(|b| seg.output_frame(&out, b).to_string()).collect();
            assert_eq!(got, want, "{input}");
        }
    }

    #[test]
    fn shor_cnot_count() {
        for l in [2usize, 3, 5] {
            let lay = SurfaceLayout::new(l);
            let seg = shor_surface(&lay, l).unwrap();
            let w = 2 * (4 * l * (l - 1) - 2 * (l - 1));
            assert_eq!(seg.circuit.census().cnot, l * w);
        }
    }
}
