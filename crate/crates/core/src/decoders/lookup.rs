//! Minimum-weight table lookup.

use super::{CssDecoder, Decoder, Preimage};
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::galois::BinaryMatrix;
use crate::stabilizer::{Pauli, StabilizerCode};

/// Largest syndrome length served by a dense table.
const MAX_BITS: usize = 24;
/// Enumeration stops once this many candidate errors have been tried.
const MAX_CANDIDATES: u64 = 1 << 22;

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// Visits all k-subsets of 0..n in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lookup for one error type: syndrome H·e → lowest-weight e found.
#[derive(Clone, Debug)]
pub struct PartLookup {
    h: BinaryMatrix,
    table: Vec<Option<BitVec>>,
    pre: Preimage,
    /// Largest weight fully enumerated.
    pub max_weight: usize,
}

impl PartLookup {
    pub fn new(h: &BinaryMatrix) -> Result<Self> {
        let r = h.nrows();
        let n = h.ncols();
        if r > MAX_BITS {
            return Err(Error::Resource(format!("syndrome of {r} bits is too long for a dense table")));
        }
        let mut table: Vec<Option<BitVec>> = vec![None; 1 << r];
        let mut filled = 0usize;
        let mut tried = 0u64;
        let mut max_weight = 0;
        for w in 0..=n {
            if filled == table.len() || tried + binomial(n, w) > MAX_CANDIDATES {
                break;
            }
            tried += binomial(n, w);
            for_each_subset(n, w, |s| {
                let e = BitVec::from_indices(n, s);
                let key = h.mul_vec(&e).as_u64() as usize;
                if table[key].is_none() {
                    table[key] = Some(e);
                    filled += 1;
                }
            });
            max_weight = w;
        }
        Ok(PartLookup { h: h.clone(), table, pre: Preimage::new(h)?, max_weight })
    }

    pub fn covered(&self) -> usize {
        self.table.iter().filter(|e| e.is_some()).count()
    }

    pub fn decode(&self, s: &BitVec) -> BitVec {
        match &self.table[s.as_u64() as usize] {
            Some(e) => e.clone(),
            None => self.pre.solve(s),
        }
    }

    pub fn checks(&self) -> &BinaryMatrix {
        &self.h
    }
}

/// Separate X and Z tables; the two may differ for codes with unequal
/// X and Z distance.
#[derive(Clone, Debug)]
pub struct CssLookup {
    pub x: PartLookup,
    pub z: PartLookup,
}

impl CssLookup {
    pub fn new(hx: &BinaryMatrix, hz: &BinaryMatrix) -> Result<Self> {
        Ok(CssLookup { x: PartLookup::new(hz)?, z: PartLookup::new(hx)? })
    }
}

impl CssDecoder for CssLookup {
    fn name(&self) -> &'static str {
        "lookup"
    }

    fn correct_x(&self, syndrome: &BitVec) -> BitVec {
        self.x.decode(syndrome)
    }

    fn correct_z(&self, syndrome: &BitVec) -> BitVec {
        self.z.decode(syndrome)
    }
}

/// Table over full Pauli syndromes, for non-CSS codes.
#[derive(Clone, Debug)]
pub struct PauliLookup {
    table: Vec<Option<Pauli>>,
}

impl PauliLookup {
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        let r = code.stabilizers.len();
        if r > MAX_BITS {
            return Err(Error::Resource(format!("syndrome of {r} bits is too long for a dense table")));
        }
        let n = code.n;
        let mut table: Vec<Option<Pauli>> = vec![None; 1 << r];
        let mut filled = 0;
        for w in 0..=n {
            if filled == table.len() {
                break;
            }
            for_each_subset(n, w, |s| {
                for mut k in 0..3usize.pow(w as u32) {
                    let mut p = Pauli::identity(n);
                    for &q in s {
                        p.set(q, (k % 3) as u8 + 1);
                        k /= 3;
                    }
                    let key = code.syndrome(&p).expect("sized").as_u64() as usize;
                    if table[key].is_none() {
                        table[key] = Some(p);
                        filled += 1;
                    }
                }
            });
        }
        if filled != table.len() {
            return Err(Error::Invariant(format!("{}: stabilizers are dependent", code.id)));
        }
        Ok(PauliLookup { table })
    }
}

impl Decoder for PauliLookup {
    fn name(&self) -> &'static str {
        "pauli-lookup"
    }

    fn decode(&self, syndrome: &BitVec) -> Pauli {
        self.table[syndrome.as_u64() as usize].clone().expect("table is complete")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::{build_code, CodeSpec};

    #[test]
    fn subsets_in_order() {
        let mut v = Vec::new();
        for_each_subset(4, 2, |s| v.push(s.to_vec()));
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], vec![0, 1]);
        assert_eq!(v[5], vec![2, 3]);
    }

    #[test]
    fn five_qubit_table_is_perfect() {
        let code = build_code(CodeSpec::FiveQubit).unwrap();
        let d = PauliLookup::new(&code).unwrap();
        assert!(d.table.iter().all(|p| p.as_ref().unwrap().weight() <= 1));
    }
}
