//! Exhaustive single-fault scan over every location of every first-attempt
//! segment instance of an ex-Rec.

use super::engine::{Engine, Verdict};
use super::source::{ExplicitFaults, InstanceKey, GATE_SLOT};
use crate::circuit::{Fault, Segment};
use crate::gadgets::{EcGadget, Factory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Malignancy {
    pub key: InstanceKey,
    pub fault: Fault,
    pub verdict: Verdict,
}

fn factory_instances<'a>(f: &'a Factory, key: InstanceKey, out: &mut Vec<(InstanceKey, &'a Segment)>) {
    if f.perfect {
        return;
    }
    out.push((key, &f.attempt));
    for (c, ch) in f.children.iter().enumerate() {
        factory_instances(ch, key.push(c as u8 + 1, 0), out);
    }
}

/// Every segment instance that runs when all first attempts succeed.
pub fn instances(engine: &Engine) -> Vec<(InstanceKey, &Segment)> {
    let x = &engine.exrec;
    let blocks = x.blocks();
    let mut out = vec![(InstanceKey::root(GATE_SLOT).push(0, 0), &x.ga)];
    let slots = (0..blocks).map(InstanceKey::leading).chain((0..blocks).map(|b| InstanceKey::trailing(blocks, b)));
    for key in slots {
        match &*x.ec {
            EcGadget::Steane { coupling, zero, plus } => {
                out.push((key.push(0, 0), coupling));
                factory_instances(zero, key.push(1, 0), &mut out);
                factory_instances(plus, key.push(2, 0), &mut out);
            }
            EcGadget::Shor { segment, .. } | EcGadget::Knill { segment } => out.push((key.push(0, 0), segment)),
        }
    }
    out
}

/// Number of (location, Pauli) pairs the scan visits.
pub fn scan_size(engine: &Engine) -> usize {
    instances(engine)
        .iter()
        .map(|(_, s)| s.circuit.locations.iter().map(|l| l.kind.fault_count() as usize).sum::<usize>())
        .sum()
}

/// Runs one trial per single fault and returns every fault whose trial is
/// not correct.
pub fn single_fault_scan(engine: &Engine) -> Vec<Malignancy> {
    let mut bad = Vec::new();
    for (key, seg) in instances(engine) {
        for (i, loc) in seg.circuit.locations.iter().enumerate() {
            for p in 1..=loc.kind.fault_count() {
                let fault = Fault { loc: i as u32, pauli: p };
                let mut src = ExplicitFaults::single(key, fault);
                let verdict = engine.run_trial(&mut src).verdict;
                if verdict != Verdict::Correct {
                    bad.push(Malignancy { key, fault, verdict });
                }
            }
        }
    }
    bad
}
