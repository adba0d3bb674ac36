//! One ex-Rec trial: leading ECs, coset-leader replacement, gate, trailing
//! ECs and ideal decoding.

use super::source::{FaultSource, InstanceKey, GATE_SLOT};
use crate::circuit::{Fault, Segment};
use crate::decoders::surface::{CheckType, Defect, SurfaceDecoder};
use crate::decoders::{css_decoder, decoder, CssDecoder, Decoder, DecoderOptions};
use crate::error::{Error, Result};
use crate::gadgets::ec::{STEANE_X_RECORDS, STEANE_Z_RECORDS};
use crate::gadgets::{EcGadget, ExRec, Factory};
use crate::galois::BinaryMatrix;
use crate::stabilizer::{Pauli, StabilizerCode};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Correct,
    Malignant,
    AncillaExhausted,
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        *self != Verdict::Correct
    }
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub verdict: Verdict,
    /// Output errors after the trailing ECs, one per block (empty when the
    /// trial stopped early).
    pub residuals: Vec<Pauli>,
    /// Ancilla preparation attempts executed.
    pub attempts: u32,
}

/// Steane factory tags inside an EC instance.
const TAG_SEGMENT: u8 = 0;
const TAG_ZERO: u8 = 1;
const TAG_PLUS: u8 = 2;

/// Result of one EC instance.
enum EcOut {
    Data(Pauli),
    Exhausted,
}

/// Runs ex-Rec trials for one synthesized ex-Rec.
pub struct Engine {
    pub exrec: Arc<ExRec>,
    pub code: Arc<StabilizerCode>,
    pub decoder: Arc<dyn Decoder>,
    css: Option<(Arc<dyn CssDecoder>, BinaryMatrix, BinaryMatrix)>,
    surface: Option<SurfaceDecoder>,
}

impl Engine {
    pub fn new(exrec: Arc<ExRec>, opts: &DecoderOptions) -> Result<Self> {
        let spec = exrec.config.spec;
        let code = exrec.code.clone();
        if exrec.config.l > u8::MAX as usize {
            return Err(Error::Parameter(format!("L = {} exceeds 255", exrec.config.l)));
        }
        let dec = decoder(spec, &code, opts)?;
        let css = match &code.css {
            Some(c) => Some((css_decoder(spec, &code, opts)?, c.hx.clone(), c.hz.clone())),
            None => None,
        };
        let surface = match &*exrec.ec {
            EcGadget::Shor { layout, .. } => Some(SurfaceDecoder::new(layout.l)),
            _ => None,
        };
        Ok(Engine { exrec, code, decoder: dec, css, surface })
    }

    fn blocks(&self) -> usize {
        self.exrec.blocks()
    }

    /// Full trial on ideal inputs.
    pub fn run_trial(&self, src: &mut dyn FaultSource) -> TrialOutcome {
        let mut attempts = 0;
        match self.leading_errors(src, &mut attempts) {
            Some(lead) => {
                let mut out = self.rectangle(&lead, src);
                out.attempts += attempts;
                out
            }
            None => TrialOutcome { verdict: Verdict::AncillaExhausted, residuals: Vec::new(), attempts },
        }
    }

    /// Coset leaders of the leading-EC outputs on ideal inputs, or `None`
    /// when a leading EC ran out of ancillas.
    pub fn leading_errors(&self, src: &mut dyn FaultSource, attempts: &mut u32) -> Option<Vec<Pauli>> {
        let id = Pauli::identity(self.code.n);
        let mut lead = Vec::with_capacity(self.blocks());
        for b in 0..self.blocks() {
            match self.run_ec(InstanceKey::leading(b), &id, true, src, attempts) {
                EcOut::Data(e) => lead.push(self.coset_leader(&e)),
                EcOut::Exhausted => return None,
            }
        }
        Some(lead)
    }

    /// The decoder's representative of the syndrome coset of `e`.
    pub fn coset_leader(&self, e: &Pauli) -> Pauli {
        if e.is_identity() {
            return e.clone();
        }
        self.decoder.decode(&self.code.syndrome(e).expect("sized"))
    }

    /// Gate and trailing ECs applied to the given incoming errors, followed
    /// by ideal decoding of every output block.
    pub fn rectangle(&self, lead: &[Pauli], src: &mut dyn FaultSource) -> TrialOutcome {
        let mut attempts = 0;
        let ga = &self.exrec.ga;
        let refs: Vec<&Pauli> = lead.iter().collect();
        let frames = run_segment(ga, InstanceKey::root(GATE_SLOT).push(TAG_SEGMENT, 0), &refs, src);
        let mut residuals = Vec::with_capacity(self.blocks());
        for b in 0..self.blocks() {
            let f = match &frames {
                Some(o) => ga.output_frame(o, b),
                None => Pauli::identity(self.code.n),
            };
            match self.run_ec(InstanceKey::trailing(self.blocks(), b), &f, false, src, &mut attempts) {
                EcOut::Data(e) => residuals.push(e),
                EcOut::Exhausted => return TrialOutcome { verdict: Verdict::AncillaExhausted, residuals, attempts },
            }
        }
        let bad = residuals.iter().any(|e| {
            let c = self.coset_leader(e);
            self.code.anticommutes_with_logical(&e.mul(&c))
        });
        TrialOutcome { verdict: if bad { Verdict::Malignant } else { Verdict::Correct }, residuals, attempts }
    }

    fn run_ec(&self, key: InstanceKey, input: &Pauli, leading: bool, src: &mut dyn FaultSource, attempts: &mut u32) -> EcOut {
        match &*self.exrec.ec {
            EcGadget::Steane { coupling, zero, plus } => {
                let perfect_fallback = leading && self.exrec.reichardt;
                let mut get = |f: &Factory, tag: u8, attempts: &mut u32| match run_factory(f, key, tag, src, attempts) {
                    Some(p) => Some(p),
                    None if perfect_fallback => Some(Pauli::identity(self.code.n)),
                    None => None,
                };
                let Some(a0) = get(zero, TAG_ZERO, attempts) else { return EcOut::Exhausted };
                let Some(ap) = get(plus, TAG_PLUS, attempts) else { return EcOut::Exhausted };
                let Some(out) = run_segment(coupling, key.push(TAG_SEGMENT, 0), &[input, &a0, &ap], src) else {
                    return EcOut::Data(Pauli::identity(self.code.n));
                };
                let (dec, hx, hz) = self.css.as_ref().expect("Steane EC needs a CSS code");
                let mut d = coupling.output_frame(&out, 0);
                let sx = hx.mul_vec(&coupling.records(&out, STEANE_X_RECORDS));
                let sz = hz.mul_vec(&coupling.records(&out, STEANE_Z_RECORDS));
                if !sx.is_zero() {
                    d.z.xor_assign(&dec.correct_z(&sx));
                }
                if !sz.is_zero() {
                    d.x.xor_assign(&dec.correct_x(&sz));
                }
                EcOut::Data(d)
            }
            EcGadget::Shor { segment, rounds, .. } => {
                let Some(out) = run_segment(segment, key.push(TAG_SEGMENT, 0), &[input], src) else {
                    return EcOut::Data(Pauli::identity(self.code.n));
                };
                let dec = self.surface.as_ref().expect("surface decoder");
                let mut stars = Vec::new();
                let mut plaqs = Vec::new();
                for r in 0..*rounds {
                    for check in segment.records(&out, 2 * r).ones_iter() {
                        stars.push(Defect { round: r, check });
                    }
                    for check in segment.records(&out, 2 * r + 1).ones_iter() {
                        plaqs.push(Defect { round: r, check });
                    }
                }
                let mut d = segment.output_frame(&out, 0);
                d.z.xor_assign(&dec.correct_history(CheckType::Star, &stars, Some(*rounds)));
                d.x.xor_assign(&dec.correct_history(CheckType::Plaquette, &plaqs, Some(*rounds)));
                EcOut::Data(d)
            }
            EcGadget::Knill { segment } => {
                let n = self.code.n;
                let bell = Pauli::identity(n);
                let Some(out) = run_segment(segment, key.push(TAG_SEGMENT, 0), &[input, &bell], src) else {
                    return EcOut::Data(Pauli::identity(n));
                };
                // outcome flips become the teleported frame: X-basis → Z, Z-basis → X
                let p = Pauli::from_parts(segment.records(&out, 1), segment.records(&out, 0));
                let c = self.coset_leader(&p);
                EcOut::Data(p.mul(&c))
            }
        }
    }
}

/// Runs a segment instance; `None` when nothing can be nonzero.
fn run_segment(seg: &Segment, key: InstanceKey, inputs: &[&Pauli], src: &mut dyn FaultSource) -> Option<Vec<u64>> {
    let mut faults: Vec<Fault> = Vec::new();
    src.faults(key, seg, &mut faults);
    if faults.is_empty() && inputs.iter().all(|p| p.is_identity()) {
        return None;
    }
    Some(seg.run(inputs, &faults))
}

/// Draws one ancilla: attempts run in order until one passes every reject
/// group. Child ancillas are drawn per attempt; an exhausted child rejects
/// the attempt.
pub fn run_factory(f: &Factory, parent: InstanceKey, tag: u8, src: &mut dyn FaultSource, attempts: &mut u32) -> Option<Pauli> {
    let n = f.attempt.outputs[0].qubits.len();
    if f.perfect {
        return Some(Pauli::identity(n));
    }
    'attempt: for a in 0..f.attempts {
        *attempts += 1;
        let key = parent.push(tag, a as u8);
        let mut inputs = Vec::with_capacity(f.children.len());
        for (c, ch) in f.children.iter().enumerate() {
            match run_factory(ch, key, c as u8 + 1, src, attempts) {
                Some(p) => inputs.push(p),
                None => continue 'attempt,
            }
        }
        let refs: Vec<&Pauli> = inputs.iter().collect();
        let Some(out) = run_segment(&f.attempt, key, &refs, src) else {
            return Some(Pauli::identity(n));
        };
        if f.reject.iter().all(|&g| f.attempt.records_zero(&out, g)) {
            return Some(f.attempt.output_frame(&out, 0));
        }
    }
    None
}

