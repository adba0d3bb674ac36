use super::noise::Fault;
use super::{Circuit, LocKind};
use crate::bits::BitVec;
use crate::stabilizer::Pauli;

/// Forward Pauli-frame propagation.
///
/// `initial` is the frame on all wires before the first location. Faults
/// act after preparations, gates and waits and before measurements. Returns
/// the final frame and a bit per location that is set when a measurement
/// outcome is flipped.
pub fn propagate(circuit: &Circuit, initial: &Pauli, faults: &[Fault]) -> (Pauli, BitVec) {
    let mut frame = initial.clone();
    let mut flips = BitVec::zeros(circuit.locations.len());
    let mut sorted: Vec<Fault> = faults.to_vec();
    sorted.sort_by_key(|f| f.loc);
    let mut fi = 0;
    for (i, l) in circuit.locations.iter().enumerate() {
        let start = fi;
        while fi < sorted.len() && sorted[fi].loc as usize == i {
            fi += 1;
        }
        let here = &sorted[start..fi];
        let (a, b) = (l.q[0] as usize, l.q[1] as usize);
        if l.kind.is_measurement() {
            for f in here {
                inject(&mut frame, l.q, l.kind, f.pauli);
            }
            let flip = match l.kind {
                LocKind::MeasZ => frame.x.get(a),
                _ => frame.z.get(a),
            };
            flips.set(i, flip);
            frame.x.set(a, false);
            frame.z.set(a, false);
            continue;
        }
        match l.kind {
            LocKind::PrepZero | LocKind::PrepPlus => {
                frame.x.set(a, false);
                frame.z.set(a, false);
            }
            LocKind::Cnot => {
                if frame.x.get(a) {
                    frame.x.flip(b);
                }
                if frame.z.get(b) {
                    frame.z.flip(a);
                }
            }
            LocKind::Gate(g) => {
                let (x, z) = g.forward(frame.x.get(a), frame.z.get(a));
                frame.x.set(a, x);
                frame.z.set(a, z);
            }
            _ => {}
        }
        for f in here {
            inject(&mut frame, l.q, l.kind, f.pauli);
        }
    }
    (frame, flips)
}

fn inject(frame: &mut Pauli, q: [u32; 2], kind: LocKind, pauli: u8) {
    let a = q[0] as usize;
    if pauli & 1 != 0 {
        frame.x.flip(a);
    }
    if pauli & 2 != 0 {
        frame.z.flip(a);
    }
    if kind == LocKind::Cnot {
        let b = q[1] as usize;
        if pauli & 4 != 0 {
            frame.x.flip(b);
        }
        if pauli & 8 != 0 {
            frame.z.flip(b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnot_spreads_x_forward_and_z_backward() {
        let c = Circuit::parse_text("# time 0\ncnot 1,2\n").unwrap();
        let (f, _) = propagate(&c, &Pauli::parse("XI").unwrap(), &[]);
        assert_eq!(f.to_string(), "XX");
        let (f, _) = propagate(&c, &Pauli::parse("IZ").unwrap(), &[]);
        assert_eq!(f.to_string(), "ZZ");
    }

    #[test]
    fn measurement_flip() {
        let c = Circuit::parse_text("# time 0\nprep0 1\n# time 1\nmeasz 1\n").unwrap();
        let (_, fl) = propagate(&c, &Pauli::identity(1), &[Fault { loc: 0, pauli: 1 }]);
        assert!(fl.get(1));
        let (_, fl) = propagate(&c, &Pauli::identity(1), &[Fault { loc: 1, pauli: 2 }]);
        assert!(!fl.get(1));
    }
}
