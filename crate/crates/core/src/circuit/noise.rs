//! Depolarizing fault model and sampling.

use super::segment::Segment;
use super::LocKind;
use crate::error::{Error, Result};
use rand::Rng;

/// A Pauli fault at one location. For one-qubit locations `pauli` is 1 (X),
/// 2 (Z) or 3 (Y). For a CNOT the low two bits act on the control and the
/// high two bits on the target, with the same encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fault {
    pub loc: u32,
    pub pauli: u8,
}

/// Every non-wait location fails with probability `p0`, every wait with
/// probability `pmem`; a failure is a uniformly random non-identity Pauli.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    pub p0: f64,
    pub pmem: f64,
    ln_q0: f64,
    ln_qm: f64,
}

impl NoiseModel {
    pub fn new(p0: f64, pmem: f64) -> Result<Self> {
        for (name, p) in [("p0", p0), ("pmem", pmem)] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(Error::Parameter(format!("{name} = {p} is not a probability")));
            }
        }
        Ok(NoiseModel { p0, pmem, ln_q0: (1.0 - p0).ln(), ln_qm: (1.0 - pmem).ln() })
    }

    /// `pmem = p0` when `memory` is set, otherwise noiseless waits.
    pub fn uniform(p0: f64, memory: bool) -> Result<Self> {
        Self::new(p0, if memory { p0 } else { 0.0 })
    }

    /// Appends sampled faults for one execution of `seg` to `out`.
    pub fn sample<R: Rng + ?Sized>(&self, seg: &Segment, rng: &mut R, out: &mut Vec<Fault>) {
        sample_class(seg, seg.nonwait_locations(), self.p0, self.ln_q0, rng, out);
        sample_class(seg, seg.wait_locations(), self.pmem, self.ln_qm, rng, out);
    }
}

fn sample_class<R: Rng + ?Sized>(seg: &Segment, locs: &[u32], p: f64, ln_q: f64, rng: &mut R, out: &mut Vec<Fault>) {
    if p <= 0.0 || locs.is_empty() {
        return;
    }
    let mut i = 0usize;
    loop {
        if p < 1.0 {
            let u: f64 = 1.0 - rng.gen::<f64>();
            let skip = (u.ln() / ln_q).floor();
            if skip >= (locs.len() - i) as f64 {
                return;
            }
            i += skip as usize;
        }
        if i >= locs.len() {
            return;
        }
        let loc = locs[i];
        let n = if seg.location(loc).kind == LocKind::Cnot { 15 } else { 3 };
        out.push(Fault { loc, pauli: rng.gen_range(1..=n) });
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::SegmentBuilder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn idle_segment(n: usize, depth: u32) -> Segment {
        let mut b = SegmentBuilder::new();
        let q = b.alloc(n);
        b.input(q.clone(), 0);
        b.output(q, depth - 1);
        b.build().unwrap()
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(NoiseModel::new(1.5, 0.0).is_err());
        assert!(NoiseModel::new(0.1, -0.1).is_err());
    }

    #[test]
    fn fault_rate_matches_p() {
        let seg = idle_segment(50, 20);
        let nm = NoiseModel::new(0.0, 0.05).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut faults = Vec::new();
        for _ in 0..200 {
            nm.sample(&seg, &mut rng, &mut faults);
        }
        let mean = faults.len() as f64 / 200.0;
        assert!((mean - 50.0).abs() < 3.0, "mean {mean}");
        assert!(faults.iter().all(|f| (1..=3).contains(&f.pauli)));
    }

    #[test]
    fn certain_failure_hits_every_location() {
        let seg = idle_segment(3, 4);
        let nm = NoiseModel::new(0.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut faults = Vec::new();
        nm.sample(&seg, &mut rng, &mut faults);
        assert_eq!(faults.len(), 12);
    }
}
