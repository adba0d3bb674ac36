//! Error-detected preparation of the 49-qubit concatenated Steane ancilla.
//!
//! Seven 7-qubit blocks are encoded, then the 7-qubit |0̄⟩ encoder is applied
//! at the logical level with transversal CNOTs. Every block passes an error
//! detection step after its preparation and after every logical CNOT it
//! takes part in. A detection step couples the block to a verified 7-qubit
//! |0̄⟩ and |+̄⟩ (drawn from sub-factories with R attempts each); any nonzero
//! syndrome rejects the whole 49-qubit attempt.

use super::encoder::{span_encoder, Basis};
use super::factory::{css_factory, Factory};
use crate::circuit::SegmentBuilder;
use crate::error::{Error, Result};
use crate::stabilizer::catalog::hamming7_checks;
use crate::stabilizer::{build_code, CodeSpec, StabilizerCode};
use std::sync::Arc;

/// Detection steps per attempt: one after each block preparation and one
/// per block per logical CNOT.
pub const DETECTIONS: usize = 25;

pub fn concat49_factory(code: &StabilizerCode, basis: Basis, l: usize, r: usize) -> Result<Factory> {
    if code.n != 49 {
        return Err(Error::Synthesis(format!("{} is not the 49-qubit concatenated code", code.id)));
    }
    if l == 0 || r == 0 {
        return Err(Error::Parameter("L and R must be at least 1".into()));
    }
    let steane = build_code(CodeSpec::Steane)?;
    let zero7 = Arc::new(css_factory(CodeSpec::Steane, &steane, Basis::Zero, r, 1)?);
    let plus7 = Arc::new(css_factory(CodeSpec::Steane, &steane, Basis::Plus, r, 1)?);
    let h = hamming7_checks();
    let (enc0, _) = span_encoder(&h, false)?;
    let (encp, _) = span_encoder(&h, true)?;
    // logical-level encoder: pivots and CNOTs of the 7-qubit encoder for this basis
    let (outer, _) = span_encoder(&h, basis == Basis::Plus)?;
    let w1 = enc0.depth.max(encp.depth);

    let mut b = SegmentBuilder::new();
    let blocks: Vec<Vec<u32>> = (0..7).map(|_| b.alloc(7)).collect();
    for (i, blk) in blocks.iter().enumerate() {
        let inner = if outer.prep[i] == crate::circuit::LocKind::PrepPlus { &encp } else { &enc0 };
        inner.emit(&mut b, blk, w1 - inner.depth);
    }
    let mut children = Vec::new();
    let mut records = Vec::new();
    let hx = &steane.css()?.hx;
    let hz = &steane.css()?.hz;
    let mut detect = |b: &mut SegmentBuilder, blk: &[u32], t: u32, children: &mut Vec<Arc<Factory>>| {
        let a0 = b.alloc(7);
        let ap = b.alloc(7);
        b.input(a0.clone(), t);
        children.push(zero7.clone());
        b.input(ap.clone(), t + 1);
        children.push(plus7.clone());
        for i in 0..7 {
            b.cnot(a0[i], blk[i], t);
        }
        let mx: Vec<usize> = a0.iter().map(|&q| b.meas_x(q, t + 1)).collect();
        for i in 0..7 {
            b.cnot(blk[i], ap[i], t + 1);
        }
        let mz: Vec<usize> = ap.iter().map(|&q| b.meas_z(q, t + 2)).collect();
        for row in hx.rows() {
            records.push(row.ones_iter().map(|i| mx[i]).collect::<Vec<_>>());
        }
        for row in hz.rows() {
            records.push(row.ones_iter().map(|i| mz[i]).collect::<Vec<_>>());
        }
    };
    let mut t = w1 + 1;
    for blk in &blocks {
        detect(&mut b, blk, t, &mut children);
    }
    t += 2;
    for layer in 1..=outer.depth {
        let mut touched = Vec::new();
        for &(c, g, s) in &outer.cnots {
            if s == layer {
                for i in 0..7 {
                    b.cnot(blocks[c as usize][i], blocks[g as usize][i], t);
                }
                touched.push(c as usize);
                touched.push(g as usize);
            }
        }
        touched.sort_unstable();
        for &k in &touched {
            detect(&mut b, &blocks[k], t + 1, &mut children);
        }
        t += 3;
    }
    let end = t - 1;
    b.group(records);
    let all: Vec<u32> = blocks.concat();
    b.output(all, end);
    let seg = b.build()?;
    if children.len() != 2 * DETECTIONS {
        return Err(Error::Invariant(format!("expected {DETECTIONS} detection steps, built {}", children.len() / 2)));
    }
    Ok(Factory { label: format!("concat49-{}", basis.name()), attempt: seg, attempts: l, reject: vec![0], children, perfect: false })
}
