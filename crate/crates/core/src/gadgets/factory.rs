//! Ancilla factories: encoder plus error-detection rounds, repeated up to L
//! times until an attempt is accepted.

use super::encoder::{encoder, Basis, EncoderPlan};
use crate::circuit::{Segment, SegmentBuilder};
use crate::error::{Error, Result};
use crate::galois::BinaryMatrix;
use crate::stabilizer::{CodeSpec, StabilizerCode};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyStyle {
    /// Encoder only.
    None,
    /// Three fresh ancillas per round, wired as the standard one-round
    /// detection circuit (X errors and logical value on two copies, then Z
    /// errors through a third copy).
    ThreeAncilla,
    /// One fresh ancilla per round checking the error type that the
    /// encoder can spread.
    Checker,
}

/// Produces verified ancillas. An attempt is accepted when every record in
/// the `reject` groups is zero.
#[derive(Clone, Debug)]
pub struct Factory {
    pub label: String,
    pub attempt: Segment,
    pub attempts: usize,
    pub reject: Vec<usize>,
    /// Sub-factories feeding the input blocks of `attempt`, in order.
    pub children: Vec<Arc<Factory>>,
    /// Noiseless ancilla that is never rejected.
    pub perfect: bool,
}

impl Factory {
    /// CNOTs of one attempt, including those of child factories' attempts.
    pub fn attempt_cnots(&self) -> usize {
        self.attempt.circuit.census().cnot + self.children.iter().map(|c| c.attempts * c.attempt_cnots()).sum::<usize>()
    }

    /// Time at which the ancilla is ready inside the attempt segment.
    pub fn ready_time(&self) -> u32 {
        self.attempt.outputs[0].time
    }
}

/// Verification style used for a catalog code.
pub fn default_style(spec: CodeSpec, rounds: usize) -> VerifyStyle {
    match spec {
        _ if rounds == 0 => VerifyStyle::None,
        CodeSpec::BaconShor(3) => VerifyStyle::None,
        CodeSpec::BaconShor(_) => VerifyStyle::Checker,
        _ => VerifyStyle::ThreeAncilla,
    }
}

/// Parity checks on measurement outcomes of a fault-free ancilla:
/// (checks for Z-basis outcomes, checks for X-basis outcomes).
pub fn ancilla_checks(code: &StabilizerCode, basis: Basis) -> Result<(BinaryMatrix, BinaryMatrix)> {
    let css = code.css()?;
    Ok(match basis {
        Basis::Zero => (css.hz.stack(&css.lz), css.hx.clone()),
        Basis::Plus => (css.hz.clone(), css.hx.stack(&css.lx)),
    })
}

fn records_for(checks: &BinaryMatrix, meas: &[usize]) -> Vec<Vec<usize>> {
    checks.rows().iter().map(|h| h.ones_iter().map(|i| meas[i]).collect()).collect()
}

fn measure_block(b: &mut SegmentBuilder, q: &[u32], x_basis: bool, t: u32) -> Vec<usize> {
    q.iter().map(|&qq| if x_basis { b.meas_x(qq, t) } else { b.meas_z(qq, t) }).collect()
}

/// Transversal CNOT.
fn couple(b: &mut SegmentBuilder, ctl: &[u32], tgt: &[u32], t: u32) {
    for (&c, &g) in ctl.iter().zip(tgt) {
        b.cnot(c, g, t);
    }
}

/// One preparation attempt: encoder and `rounds` detection rounds. The
/// verified block is output 0; detection records form group 0.
pub fn attempt_segment(code: &StabilizerCode, enc: &EncoderPlan, basis: Basis, rounds: usize, style: VerifyStyle) -> Result<Segment> {
    let n = code.n;
    let w = enc.depth;
    let mut b = SegmentBuilder::new();
    let a1 = b.alloc(n);
    enc.emit(&mut b, &a1, 0);
    let mut records = Vec::new();
    let end = match style {
        VerifyStyle::None => w,
        VerifyStyle::ThreeAncilla => {
            let (zchk, xchk) = ancilla_checks(code, basis)?;
            for r in 0..rounds as u32 {
                let s = w + 1 + 2 * r;
                let a2 = b.alloc(n);
                let a3 = b.alloc(n);
                let a4 = b.alloc(n);
                for blk in [&a2, &a3, &a4] {
                    enc.emit(&mut b, blk, s - 1 - w);
                }
                match basis {
                    Basis::Zero => {
                        couple(&mut b, &a1, &a2, s);
                        couple(&mut b, &a3, &a4, s);
                        let m2 = measure_block(&mut b, &a2, false, s + 1);
                        let m4 = measure_block(&mut b, &a4, false, s + 1);
                        couple(&mut b, &a3, &a1, s + 1);
                        let m3 = measure_block(&mut b, &a3, true, s + 2);
                        records.extend(records_for(&zchk, &m2));
                        records.extend(records_for(&zchk, &m4));
                        records.extend(records_for(&xchk, &m3));
                    }
                    Basis::Plus => {
                        couple(&mut b, &a2, &a1, s);
                        couple(&mut b, &a4, &a3, s);
                        let m2 = measure_block(&mut b, &a2, true, s + 1);
                        let m4 = measure_block(&mut b, &a4, true, s + 1);
                        couple(&mut b, &a1, &a3, s + 1);
                        let m3 = measure_block(&mut b, &a3, false, s + 2);
                        records.extend(records_for(&xchk, &m2));
                        records.extend(records_for(&xchk, &m4));
                        records.extend(records_for(&zchk, &m3));
                    }
                }
            }
            if rounds == 0 {
                w
            } else {
                w + 2 * rounds as u32 + 1
            }
        }
        VerifyStyle::Checker => {
            let (zchk, xchk) = ancilla_checks(code, basis)?;
            for r in 0..rounds as u32 {
                let s = w + 1 + r;
                let c = b.alloc(n);
                enc.emit(&mut b, &c, s - 1 - w);
                match basis {
                    Basis::Zero => {
                        couple(&mut b, &c, &a1, s);
                        let m = measure_block(&mut b, &c, true, s + 1);
                        records.extend(records_for(&xchk, &m));
                    }
                    Basis::Plus => {
                        couple(&mut b, &a1, &c, s);
                        let m = measure_block(&mut b, &c, false, s + 1);
                        records.extend(records_for(&zchk, &m));
                    }
                }
            }
            if rounds == 0 {
                w
            } else {
                w + rounds as u32 + 1
            }
        }
    };
    b.group(records);
    b.output(a1, end);
    b.build()
}

/// Factory for a catalog CSS code.
pub fn css_factory(spec: CodeSpec, code: &StabilizerCode, basis: Basis, l: usize, rounds: usize) -> Result<Factory> {
    if l == 0 {
        return Err(Error::Parameter("L must be at least 1".into()));
    }
    let enc = encoder(spec, code, basis)?;
    let style = default_style(spec, rounds);
    let seg = attempt_segment(code, &enc, basis, rounds, style)?;
    Ok(Factory {
        label: format!("{}-{}", spec.id(), basis.name()),
        attempt: seg,
        attempts: l,
        reject: vec![0],
        children: Vec::new(),
        perfect: false,
    })
}

/// Noiseless ancilla source; the segment is empty apart from the block.
pub fn perfect_factory(n: usize, label: &str) -> Result<Factory> {
    let mut b = SegmentBuilder::new();
    let q = b.alloc(n);
    b.input(q.clone(), 0);
    b.output(q, 0);
    Ok(Factory { label: label.to_string(), attempt: b.build()?, attempts: 1, reject: Vec::new(), children: Vec::new(), perfect: true })
}
