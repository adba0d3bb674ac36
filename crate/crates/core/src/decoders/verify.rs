//! Exhaustive and sampled checks that a decoder corrects every error up to
//! its design weight.
//!
//! Errors are built from an alphabet: a list of positions, each with its
//! nonzero options. Binary CSS codes use qubits with a single X (or Z)
//! option, polynomial codes use GF(2^m) symbols with every nonzero bit
//! pattern, and non-CSS codes use qubits with X, Y and Z.

use super::lookup::{binomial, for_each_subset};
use super::{residual, Decoder};
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::stabilizer::{CodeSpec, Pauli, StabilizerCode};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest exhaustive scan per error class.
pub const EXHAUSTIVE_BUDGET: u64 = 50_000_000;
/// Failures kept verbatim in a report.
const KEEP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct ClassReport {
    pub name: &'static str,
    pub max_weight: usize,
    pub checked: u64,
    pub failed: u64,
    pub examples: Vec<Pauli>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub code_id: String,
    pub decoder: &'static str,
    pub mode: VerifyMode,
    pub classes: Vec<ClassReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| c.failed == 0)
    }

    pub fn checked(&self) -> u64 {
        self.classes.iter().map(|c| c.checked).sum()
    }
}

/// One error class: positions with their nonzero options.
struct Alphabet {
    name: &'static str,
    options: Vec<Vec<Pauli>>,
    t: usize,
}

impl Alphabet {
    fn size(&self) -> u64 {
        let a = self.options.first().map_or(0, Vec::len) as u64;
        (0..=self.t).map(|w| binomial(self.options.len(), w).saturating_mul(a.saturating_pow(w as u32))).fold(0u64, u64::saturating_add)
    }
}

fn alphabets(spec: CodeSpec, code: &StabilizerCode) -> Vec<Alphabet> {
    let n = code.n;
    let (tx, tz) = spec.correctable();
    if code.css.is_none() {
        let opts = (0..n).map(|q| (1..=3).map(|p| Pauli::single(n, q, p)).collect()).collect();
        return vec![Alphabet { name: "pauli", options: opts, t: tx.min(tz) }];
    }
    let m = match spec {
        CodeSpec::Polynomial21 => 3,
        CodeSpec::Polynomial60 => 4,
        _ => 1,
    };
    let build = |name: &'static str, t: usize, make: fn(BitVec) -> Pauli| {
        let options = (0..n / m)
            .map(|s| {
                (1..1u64 << m)
                    .map(|pat| {
                        let idx: Vec<usize> = (0..m).filter(|b| pat >> b & 1 == 1).map(|b| s * m + b).collect();
                        make(BitVec::from_indices(n, &idx))
                    })
                    .collect()
            })
            .collect();
        Alphabet { name, options, t }
    };
    vec![build("x", tx, Pauli::x_type), build("z", tz, Pauli::z_type)]
}

fn check(code: &StabilizerCode, dec: &dyn Decoder, e: &Pauli, rep: &mut ClassReport) -> Result<()> {
    let r = residual(code, dec, e)?;
    rep.checked += 1;
    if !code.syndrome(&r)?.is_zero() || code.anticommutes_with_logical(&r) {
        rep.failed += 1;
        if rep.examples.len() < KEEP {
            rep.examples.push(e.clone());
        }
    }
    Ok(())
}

fn exhaustive(code: &StabilizerCode, dec: &dyn Decoder, a: &Alphabet) -> Result<ClassReport> {
    let mut rep = ClassReport { name: a.name, max_weight: a.t, checked: 0, failed: 0, examples: Vec::new() };
    let npos = a.options.len();
    let nopt = a.options.first().map_or(0, Vec::len);
    let mut err = None;
    for w in 0..=a.t {
        for_each_subset(npos, w, |pos| {
            if err.is_some() {
                return;
            }
            let mut digits = vec![0usize; w];
            loop {
                let mut e = Pauli::identity(code.n);
                for (&p, &d) in pos.iter().zip(&digits) {
                    e.mul_assign(&a.options[p][d]);
                }
                if let Err(x) = check(code, dec, &e, &mut rep) {
                    err = Some(x);
                    return;
                }
                let Some(i) = digits.iter().position(|&d| d + 1 < nopt) else { break };
                digits[i] += 1;
                digits[..i].iter_mut().for_each(|d| *d = 0);
            }
        });
    }
    match err {
        Some(e) => Err(e),
        None => Ok(rep),
    }
}

fn sampled(code: &StabilizerCode, dec: &dyn Decoder, a: &Alphabet, samples: u64, rng: &mut ChaCha8Rng) -> Result<ClassReport> {
    let mut rep = ClassReport { name: a.name, max_weight: a.t, checked: 0, failed: 0, examples: Vec::new() };
    if a.t == 0 {
        return Ok(rep);
    }
    let npos = a.options.len();
    for _ in 0..samples {
        let w = rng.gen_range(1..=a.t.min(npos));
        let mut e = Pauli::identity(code.n);
        for p in sample(rng, npos, w) {
            let o = &a.options[p];
            e.mul_assign(&o[rng.gen_range(0..o.len())]);
        }
        check(code, dec, &e, &mut rep)?;
    }
    Ok(rep)
}

/// Checks that every error up to the design weight of each class is
/// corrected: zero residual syndrome and no logical action.
pub fn verify_decoder(spec: CodeSpec, code: &StabilizerCode, dec: &dyn Decoder, mode: VerifyMode) -> Result<VerifyReport> {
    let mut classes = Vec::new();
    let mut rng = match mode {
        VerifyMode::Sampled { seed, .. } => ChaCha8Rng::seed_from_u64(seed),
        VerifyMode::Exhaustive => ChaCha8Rng::seed_from_u64(0),
    };
    for a in alphabets(spec, code) {
        classes.push(match mode {
            VerifyMode::Exhaustive => {
                if a.size() > EXHAUSTIVE_BUDGET {
                    return Err(Error::Parameter(format!(
                        "{}: {} errors of class {} exceed the exhaustive budget; use sampling",
                        code.id,
                        a.size(),
                        a.name
                    )));
                }
                exhaustive(code, dec, &a)?
            }
            VerifyMode::Sampled { samples, .. } => sampled(code, dec, &a, samples, &mut rng)?,
        });
    }
    Ok(VerifyReport { code_id: code.id.clone(), decoder: dec.name(), mode, classes })
}

/// Number of errors an exhaustive scan visits.
pub fn exhaustive_size(spec: CodeSpec, code: &StabilizerCode) -> u64 {
    alphabets(spec, code).iter().map(Alphabet::size).sum()
}
