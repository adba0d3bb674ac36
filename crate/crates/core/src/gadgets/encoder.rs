//! Encoders for |0̄⟩ and |+̄⟩ of CSS and Bacon-Shor codes.

use super::schedule::{latin_schedule, LatinSchedule};
use crate::circuit::{Circuit, LocKind, SegmentBuilder};
use crate::error::{Error, Result};
use crate::galois::BinaryMatrix;
use crate::stabilizer::catalog::SurfaceLayout;
use crate::stabilizer::{CodeSpec, StabilizerCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Zero,
    Plus,
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Basis::Zero => "zero",
            Basis::Plus => "plus",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "zero" | "0" => Ok(Basis::Zero),
            "plus" | "+" => Ok(Basis::Plus),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// Preparations at step 0 followed by CNOT layers at steps 1..=depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncoderPlan {
    pub n: usize,
    pub prep: Vec<LocKind>,
    /// (control, target, step), step ≥ 1.
    pub cnots: Vec<(u32, u32, u32)>,
    pub depth: u32,
}

impl EncoderPlan {
    pub fn cnot_count(&self) -> usize {
        self.cnots.len()
    }

    /// Emits the encoder on `qubits` with preparations at `t0`; returns the
    /// time of the last CNOT layer.
    pub fn emit(&self, b: &mut SegmentBuilder, qubits: &[u32], t0: u32) -> u32 {
        for (i, k) in self.prep.iter().enumerate() {
            match k {
                LocKind::PrepPlus => b.prep_plus(qubits[i], t0),
                _ => b.prep_zero(qubits[i], t0),
            };
        }
        for &(c, t, s) in &self.cnots {
            b.cnot(qubits[c as usize], qubits[t as usize], t0 + s);
        }
        t0 + self.depth
    }

    /// Renames qubit j to `to[j]`.
    pub fn relabel(&self, to: &[usize]) -> EncoderPlan {
        let mut prep = vec![LocKind::PrepZero; self.n];
        for (j, k) in self.prep.iter().enumerate() {
            prep[to[j]] = *k;
        }
        let mut cnots: Vec<(u32, u32, u32)> = self.cnots.iter().map(|&(c, t, s)| (to[c as usize] as u32, to[t as usize] as u32, s)).collect();
        cnots.sort_by_key(|&(c, t, s)| (s, c, t));
        EncoderPlan { n: self.n, prep, cnots, depth: self.depth }
    }

    /// Stand-alone circuit with waits on idle qubits.
    pub fn circuit(&self) -> Result<Circuit> {
        let mut b = SegmentBuilder::new();
        let q = b.alloc(self.n);
        let end = self.emit(&mut b, &q, 0);
        b.output(q, end);
        Ok(b.build()?.circuit)
    }
}

/// The A block of the standard form (I | A) of `g` and the column
/// permutation that produced it.
pub fn standard_a(g: &BinaryMatrix) -> Result<(BinaryMatrix, Vec<usize>)> {
    let n = g.ncols();
    let (std, perm) = g.echelon().matrix.standard_form()?;
    let k = std.nrows();
    Ok((BinaryMatrix::from_rows(n - k, std.rows().iter().map(|r| r.slice(k, n - k)).collect()), perm))
}

/// Encoder for the uniform superposition over the row space of `g`.
///
/// With `conjugate` the Hadamard-conjugate circuit is produced instead:
/// pivots in |0⟩, the rest in |+⟩ and all CNOTs reversed, which prepares the
/// state stabilized by Z on the rows of `g`.
pub fn span_encoder(g: &BinaryMatrix, conjugate: bool) -> Result<(EncoderPlan, LatinSchedule)> {
    let n = g.ncols();
    let (a, perm) = standard_a(g)?;
    let k = a.nrows();
    let sched = latin_schedule(&a);
    let (pivot, other) = if conjugate { (LocKind::PrepZero, LocKind::PrepPlus) } else { (LocKind::PrepPlus, LocKind::PrepZero) };
    let mut prep = vec![other; n];
    for &p in &perm[..k] {
        prep[p] = pivot;
    }
    let mut cnots: Vec<(u32, u32, u32)> = sched
        .entries
        .iter()
        .map(|&(r, c, col)| {
            let (ctl, tgt) = (perm[r] as u32, perm[k + c] as u32);
            if conjugate {
                (tgt, ctl, col as u32 + 1)
            } else {
                (ctl, tgt, col as u32 + 1)
            }
        })
        .collect();
    cnots.sort_by_key(|&(c, t, s)| (s, c, t));
    Ok((EncoderPlan { n, prep, cnots, depth: sched.depth as u32 }, sched))
}

/// Encoder for |0̄⟩ or |+̄⟩ of a catalog code.
///
/// |0̄⟩ is either the span of the X checks or the conjugate circuit built
/// from the Z checks plus logical Z; |+̄⟩ is either the span of the X checks
/// plus logical X or the conjugate built from the Z checks. The candidate
/// with fewer CNOTs is used, then the shallower one. Bacon-Shor codes use
/// column cat states (|0̄⟩) and row GHZ states (|+̄⟩).
pub fn encoder(spec: CodeSpec, code: &StabilizerCode, basis: Basis) -> Result<EncoderPlan> {
    if let CodeSpec::BaconShor(s) = spec {
        return Ok(bacon_shor_encoder(s, basis));
    }
    let css = code.css().map_err(|_| Error::Synthesis(format!("{} has no CSS encoder", code.id)))?;
    let (direct, conj) = match basis {
        Basis::Zero => (css.hx.clone(), css.hz.stack(&css.lz)),
        Basis::Plus => (css.hx.stack(&css.lx), css.hz.clone()),
    };
    let n = code.n;
    let mut orders: Vec<Vec<usize>> = vec![(0..n).collect(), (0..n).rev().collect()];
    if let CodeSpec::Surface(l) = spec {
        // reflection in the diagonal swaps stars and plaquettes
        let lay = SurfaceLayout::new(l);
        orders.push(lay.coords.iter().map(|&(i, j)| lay.qubit(j as isize, i as isize).expect("square grid")).collect());
    }
    let mut best: Option<EncoderPlan> = None;
    for (g, conjugate) in [(&direct, false), (&conj, true)] {
        for o in &orders {
            let plan = span_encoder(&g.permute_columns(o), conjugate)?.0.relabel(o);
            if best.as_ref().is_none_or(|b| (plan.cnot_count(), plan.depth) < (b.cnot_count(), b.depth)) {
                best = Some(plan);
            }
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// s(s−1) CNOTs, depth s−1.
fn bacon_shor_encoder(s: usize, basis: Basis) -> EncoderPlan {
    let n = s * s;
    let q = |r: usize, c: usize| (r * s + c) as u32;
    let mut prep = vec![LocKind::PrepPlus; n];
    let mut cnots = Vec::new();
    for line in 0..s {
        // a column for |0̄⟩, a row for |+̄⟩
        let at = |k: usize| if basis == Basis::Zero { q(k, line) } else { q(line, k) };
        match basis {
            Basis::Zero => {
                prep[at(0) as usize] = LocKind::PrepZero;
                for k in 0..s - 1 {
                    cnots.push((at(k + 1), at(k), k as u32 + 1));
                }
            }
            Basis::Plus => {
                for k in 1..s {
                    prep[at(k) as usize] = LocKind::PrepZero;
                }
                for k in 0..s - 1 {
                    cnots.push((at(k), at(k + 1), k as u32 + 1));
                }
            }
        }
    }
    cnots.sort_by_key(|&(c, t, st)| (st, c, t));
    EncoderPlan { n, prep, cnots, depth: (s - 1) as u32 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::build_code;

    #[test]
    fn steane_zero_encoder_has_nine_cnots_depth_three() {
        let code = build_code(CodeSpec::Steane).unwrap();
        let e = encoder(CodeSpec::Steane, &code, Basis::Zero).unwrap();
        assert_eq!((e.cnot_count(), e.depth), (9, 3));
        let p = encoder(CodeSpec::Steane, &code, Basis::Plus).unwrap();
        assert_eq!(p.cnot_count(), 9);
    }

    #[test]
    fn bacon_shor_encoder_is_linear() {
        let code = build_code(CodeSpec::BaconShor(3)).unwrap();
        for b in [Basis::Zero, Basis::Plus] {
            let e = encoder(CodeSpec::BaconShor(3), &code, b).unwrap();
            assert!(e.cnot_count() <= 2 * 9);
        }
    }
}
