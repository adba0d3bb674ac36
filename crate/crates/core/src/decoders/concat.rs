//! Hierarchical decoding of the doubly concatenated Hamming code [[49,1,9]].
//!
//! Level one corrects each 7-bit register from its own three checks. The
//! three level-two checks, adjusted for the level-one flips, then name a
//! register carrying a logical flip. When exactly two registers were flagged
//! and the level-two syndrome is the sum of their columns, both flagged
//! registers are flipped instead: this is the two-plus-two pattern that
//! level one turns into two logical flips.

use super::CssDecoder;
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::stabilizer::StabilizerCode;

#[derive(Clone, Debug, Default)]
pub struct Concat49Decoder;

/// Hamming column of position p (0-based) is p + 1.
fn column(p: usize) -> usize {
    p + 1
}

impl Concat49Decoder {
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        let css = code.css()?;
        if code.n != 49 || css.hz.nrows() != 24 || css.hx.nrows() != 24 {
            return Err(Error::Contract(format!("{} is not the 49-qubit concatenated code", code.id)));
        }
        Ok(Concat49Decoder)
    }

    pub fn correct(&self, s: &BitVec) -> BitVec {
        let value = |off: usize| (0..3).fold(0usize, |acc, r| acc | (s.get(off + r) as usize) << r);
        let mut out = BitVec::zeros(49);
        let mut flags = Vec::new();
        let mut level2 = value(21);
        for b in 0..7 {
            let v = value(3 * b);
            if v != 0 {
                out.flip(7 * b + v - 1);
                flags.push(b);
                level2 ^= column(b);
            }
        }
        let flip_block = |out: &mut BitVec, b: usize| (0..7).for_each(|i| out.flip(7 * b + i));
        if flags.len() == 2 && level2 != 0 && level2 == column(flags[0]) ^ column(flags[1]) {
            flip_block(&mut out, flags[0]);
            flip_block(&mut out, flags[1]);
        } else if level2 != 0 {
            flip_block(&mut out, level2 - 1);
        }
        out
    }
}

impl CssDecoder for Concat49Decoder {
    fn name(&self) -> &'static str {
        "concatenated-hamming"
    }

    fn correct_x(&self, syndrome: &BitVec) -> BitVec {
        self.correct(syndrome)
    }

    fn correct_z(&self, syndrome: &BitVec) -> BitVec {
        self.correct(syndrome)
    }
}
