//! Meggitt decoding over GF(2^m) for binary images of Reed-Solomon codes.
//!
//! The binary syndrome is lifted to a word over GF(2^m), reduced modulo the
//! generator and matched against stored symbol-error patterns (locations
//! and amplitudes) with the top coordinate in error.

use super::{CssDecoder, Preimage};
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::galois::ReedSolomon;
use crate::stabilizer::catalog::PolynomialCode;
use crate::stabilizer::{CodeSpec, StabilizerCode};
use std::collections::HashMap;

/// Up to four (location, amplitude) pairs, one per 16 bits.
type Packed = u64;

fn pack(pairs: &[(usize, u16)]) -> Packed {
    pairs.iter().enumerate().fold(0, |acc, (i, &(p, a))| acc | ((p as u64) << 8 | a as u64) << (16 * i))
}

fn unpack(mut v: Packed) -> Vec<(usize, u16)> {
    let mut out = Vec::new();
    while v != 0 {
        out.push((((v >> 8) & 0xff) as usize, (v & 0xff) as u16));
        v >>= 16;
    }
    out
}

#[derive(Clone, Debug)]
pub struct NonbinaryDecoder {
    pub rs: ReedSolomon,
    pub basis: Vec<u16>,
    /// Correctable symbol errors.
    pub t: usize,
    /// rem(x^i) for every location.
    powers: Vec<Vec<u16>>,
    table: HashMap<u64, Packed>,
    pre_x: Preimage,
    pre_z: Preimage,
}

impl NonbinaryDecoder {
    pub fn new(spec: CodeSpec, code: &StabilizerCode) -> Result<Self> {
        let p = PolynomialCode::new(spec)?;
        let t = spec.correctable().0;
        if t > 4 {
            return Err(Error::Contract("at most four symbol errors".into()));
        }
        let css = code.css()?;
        let rs = p.rs;
        let n = rs.n;
        let powers: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                let mut w = vec![0u16; n];
                w[i] = 1;
                rs.remainder(&w)
            })
            .collect();
        let mut d = NonbinaryDecoder {
            rs,
            basis: p.basis,
            t,
            powers,
            table: HashMap::new(),
            pre_x: Preimage::new(&css.hz)?,
            pre_z: Preimage::new(&css.hx)?,
        };
        d.build_table();
        Ok(d)
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    fn key(&self, r: &[u16]) -> u64 {
        let m = self.basis.len();
        r.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c as u64) << (m * i))
    }

    fn remainder_of(&self, pairs: &[(usize, u16)]) -> Vec<u16> {
        let f = &self.rs.field;
        let mut r = vec![0u16; self.powers[0].len()];
        for &(p, a) in pairs {
            for (ri, &c) in r.iter_mut().zip(&self.powers[p]) {
                *ri ^= f.mul(a, c);
            }
        }
        r
    }

    fn build_table(&mut self) {
        let n = self.rs.n;
        let q = self.rs.field.size() as u16;
        let mut table = HashMap::new();
        let mut stack: Vec<(usize, u16)> = Vec::new();
        fn walk(d: &NonbinaryDecoder, q: u16, n: usize, start: usize, stack: &mut Vec<(usize, u16)>, out: &mut HashMap<u64, Packed>) {
            let r = d.remainder_of(stack);
            out.entry(d.key(&r)).or_insert_with(|| pack(stack));
            if stack.len() == d.t {
                return;
            }
            for p in start..n - 1 {
                for a in 1..q {
                    stack.push((p, a));
                    walk(d, q, n, p + 1, stack, out);
                    stack.pop();
                }
            }
        }
        if self.t > 0 {
            for a in 1..q {
                stack.push((n - 1, a));
                walk(self, q, n, 0, &mut stack, &mut table);
                stack.pop();
            }
        }
        self.table = table;
    }

    /// x·r(x) mod g(x).
    fn times_x(&self, r: &mut [u16]) {
        let f = &self.rs.field;
        let dg = r.len();
        let top = r[dg - 1];
        for i in (1..dg).rev() {
            r[i] = r[i - 1];
        }
        r[0] = 0;
        if top != 0 {
            for (ri, &gi) in r.iter_mut().zip(&self.rs.generator[..dg]) {
                *ri ^= f.mul(top, gi);
            }
        }
    }

    /// Symbol-error pattern explaining the word's coset, if within reach.
    pub fn decode_word(&self, word: &[u16]) -> Option<Vec<(usize, u16)>> {
        let n = self.rs.n;
        let mut r = self.rs.remainder(word);
        if r.iter().all(|&c| c == 0) {
            return Some(Vec::new());
        }
        for k in 0..n {
            if let Some(&p) = self.table.get(&self.key(&r)) {
                return Some(unpack(p).into_iter().map(|(pos, a)| ((pos + n - k) % n, a)).collect());
            }
            self.times_x(&mut r);
        }
        None
    }

    fn correct(&self, pre: &Preimage, s: &BitVec) -> BitVec {
        let f = &self.rs.field;
        let e0 = pre.solve(s);
        let word = f.contract(&self.basis, &e0);
        match self.decode_word(&word) {
            Some(pairs) => {
                let mut w = vec![0u16; self.rs.n];
                for (p, a) in pairs {
                    w[p] ^= a;
                }
                f.expand(&self.basis, &w)
            }
            None => e0,
        }
    }
}

impl CssDecoder for NonbinaryDecoder {
    fn name(&self) -> &'static str {
        "nonbinary-meggitt"
    }

    fn correct_x(&self, syndrome: &BitVec) -> BitVec {
        self.correct(&self.pre_x, syndrome)
    }

    fn correct_z(&self, syndrome: &BitVec) -> BitVec {
        self.correct(&self.pre_z, syndrome)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::build_code;

    #[test]
    fn pack_round_trip() {
        let v = vec![(6usize, 3u16), (2, 7)];
        assert_eq!(unpack(pack(&v)), v);
    }

    #[test]
    fn gf8_single_symbol_errors() {
        let code = build_code(CodeSpec::Polynomial21).unwrap();
        let d = NonbinaryDecoder::new(CodeSpec::Polynomial21, &code).unwrap();
        assert_eq!(d.table_len(), 7);
        for p in 0..7 {
            for a in 1..8u16 {
                let mut w = vec![0u16; 7];
                w[p] = a;
                assert_eq!(d.decode_word(&w), Some(vec![(p, a)]));
            }
        }
    }
}
