//! Majority decoding for the s×s Bacon-Shor code.
//!
//! Z errors only matter through the parity of each row, X errors through the
//! parity of each column. Adjacent-pair syndromes fix the parities up to a
//! global flip, and the lighter of the two candidates is applied.

use super::CssDecoder;
use crate::bits::BitVec;

#[derive(Clone, Debug)]
pub struct BaconShorDecoder {
    pub s: usize,
}

impl BaconShorDecoder {
    pub fn new(s: usize) -> Self {
        BaconShorDecoder { s }
    }

    /// Line parities from the s−1 adjacent-pair bits.
    pub fn parities(&self, syndrome: &BitVec) -> Vec<bool> {
        let mut p = vec![false; self.s];
        for i in 0..self.s - 1 {
            p[i + 1] = p[i] ^ syndrome.get(i);
        }
        if p.iter().filter(|&&b| b).count() > self.s / 2 {
            p.iter_mut().for_each(|b| *b = !*b);
        }
        p
    }
}

impl CssDecoder for BaconShorDecoder {
    fn name(&self) -> &'static str {
        "bacon-shor-majority"
    }

    fn correct_x(&self, syndrome: &BitVec) -> BitVec {
        let s = self.s;
        let idx: Vec<usize> = self.parities(syndrome).iter().enumerate().filter(|(_, &b)| b).map(|(c, _)| c).collect();
        BitVec::from_indices(s * s, &idx)
    }

    fn correct_z(&self, syndrome: &BitVec) -> BitVec {
        let s = self.s;
        let idx: Vec<usize> = self.parities(syndrome).iter().enumerate().filter(|(_, &b)| b).map(|(r, _)| r * s).collect();
        BitVec::from_indices(s * s, &idx)
    }
}
