//! Meggitt decoding of binary cyclic codes.
//!
//! The table holds the remainder e(x) mod g(x) of every error of weight ≤ t
//! whose highest coordinate n−1 is set. Decoding rotates the received
//! remainder through all n cyclic shifts until a stored pattern appears.

use super::{CssDecoder, Preimage};
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::galois::cyclic::poly_mod;
use crate::galois::BinaryMatrix;
use crate::stabilizer::StabilizerCode;
use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

const MAGIC: &[u8; 4] = b"EXRT";
const VERSION: u32 = 1;

pub fn table_file(code_id: &str) -> String {
    format!("{code_id}.tbl")
}

/// Rotates the low n bits of `v` left by k.
#[inline]
pub fn rotate(v: u64, k: usize, n: usize) -> u64 {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let k = k % n;
    if k == 0 {
        return v & mask;
    }
    ((v << k) | (v >> (n - k))) & mask
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeggittTable {
    pub code_id: String,
    pub n: usize,
    pub g: u64,
    pub t: usize,
    /// remainder → error pattern with bit n−1 set
    pub entries: HashMap<u64, u64>,
}

impl MeggittTable {
    pub fn build(code_id: &str, n: usize, g: u64, t: usize) -> Self {
        let mut entries = HashMap::new();
        let top = 1u64 << (n - 1);
        let mut rest: Vec<usize> = Vec::new();
        fn walk(n: usize, g: u64, t: usize, top: u64, start: usize, rest: &mut Vec<usize>, out: &mut HashMap<u64, u64>) {
            let e = rest.iter().fold(top, |acc, &i| acc | 1u64 << i);
            out.entry(poly_mod(e, g)).or_insert(e);
            if rest.len() + 1 == t {
                return;
            }
            for i in start..n - 1 {
                rest.push(i);
                walk(n, g, t, top, i + 1, rest, out);
                rest.pop();
            }
        }
        if t > 0 {
            walk(n, g, t, top, 0, &mut rest, &mut entries);
        }
        MeggittTable { code_id: code_id.to_string(), n, g, t, entries }
    }

    /// Versioned little-endian format: magic, version, id, n, t, g, count,
    /// then (remainder, pattern) pairs sorted by remainder.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut b = Vec::with_capacity(32 + 16 * self.entries.len());
        b.extend_from_slice(MAGIC);
        b.extend_from_slice(&VERSION.to_le_bytes());
        b.extend_from_slice(&(self.code_id.len() as u32).to_le_bytes());
        b.extend_from_slice(self.code_id.as_bytes());
        b.extend_from_slice(&(self.n as u32).to_le_bytes());
        b.extend_from_slice(&(self.t as u32).to_le_bytes());
        b.extend_from_slice(&self.g.to_le_bytes());
        b.extend_from_slice(&(self.entries.len() as u64).to_le_bytes());
        let mut v: Vec<(&u64, &u64)> = self.entries.iter().collect();
        v.sort();
        for (k, e) in v {
            b.extend_from_slice(&k.to_le_bytes());
            b.extend_from_slice(&e.to_le_bytes());
        }
        b
    }

    pub fn from_bytes(b: &[u8]) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("decoder table: {m}"));
        let mut pos = 0usize;
        let mut take = |k: usize| -> Result<&[u8]> {
            let s = b.get(pos..pos + k).ok_or_else(|| bad("truncated"))?;
            pos += k;
            Ok(s)
        };
        if take(4)? != MAGIC {
            return Err(bad("bad magic"));
        }
        let u32_at = |s: &[u8]| u32::from_le_bytes(s.try_into().expect("4 bytes"));
        let u64_at = |s: &[u8]| u64::from_le_bytes(s.try_into().expect("8 bytes"));
        let version = u32_at(take(4)?);
        if version != VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        let idlen = u32_at(take(4)?) as usize;
        let code_id = String::from_utf8(take(idlen)?.to_vec()).map_err(|_| bad("id not utf-8"))?;
        let n = u32_at(take(4)?) as usize;
        let t = u32_at(take(4)?) as usize;
        let g = u64_at(take(8)?);
        let count = u64_at(take(8)?) as usize;
        let mut entries = HashMap::with_capacity(count);
        for _ in 0..count {
            let k = u64_at(take(8)?);
            let e = u64_at(take(8)?);
            entries.insert(k, e);
        }
        if pos != b.len() {
            return Err(bad("trailing bytes"));
        }
        Ok(MeggittTable { code_id, n, g, t, entries })
    }

    /// Writes through a temporary file and rename.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tbl.tmp");
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&self.to_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let b = fs::read(path).map_err(|e| Error::Resource(format!("decoder table {}: {e}", path.display())))?;
        Self::from_bytes(&b)
    }

    /// Error pattern with the given remainder, or None.
    pub fn decode_remainder(&self, r: u64) -> Option<u64> {
        if r == 0 {
            return Some(0);
        }
        let mut v = r;
        for k in 0..self.n {
            // v = x^k e(x) mod g(x), the remainder of e rotated by k
            if let Some(&p) = self.entries.get(&v) {
                return Some(rotate(p, self.n - k, self.n));
            }
            v = poly_mod(v << 1, self.g);
        }
        None
    }
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// CSS decoder for a code whose X and Z checks both span the dual of the
/// same cyclic code.
#[derive(Clone, Debug)]
pub struct CyclicDecoder {
    pub table: MeggittTable,
    pre_x: Preimage,
    pre_z: Preimage,
}

fn cyclic_poly(code: &StabilizerCode) -> Result<(usize, u64)> {
    let css = code.css()?;
    let n = code.n;
    if n >= 64 {
        return Err(Error::Contract("cyclic decoder needs n < 64".into()));
    }
    // g(x) = gcd of x^n − 1 and every codeword
    let g = css.hz.kernel().rows().iter().fold((1u64 << n) | 1, |acc, r| poly_gcd(acc, r.as_u64()));
    check_cyclic(&css.hz, &css.hx, n, g, &code.id)?;
    Ok((n, g))
}

fn check_cyclic(hz: &BinaryMatrix, hx: &BinaryMatrix, n: usize, g: u64, id: &str) -> Result<()> {
    let dg = 63 - g.leading_zeros() as usize;
    for i in 0..n - dg {
        let v = BitVec::from_u64(n, g << i);
        if !hz.mul_vec(&v).is_zero() || !hx.mul_vec(&v).is_zero() {
            return Err(Error::Contract(format!("{id}: checks are not those of a cyclic code")));
        }
    }
    if hz.rank() != dg || hx.rank() != dg {
        return Err(Error::Contract(format!("{id}: check rank differs from deg g")));
    }
    Ok(())
}

impl CyclicDecoder {
    pub fn build(code: &StabilizerCode, t: usize) -> Result<Self> {
        let (n, g) = cyclic_poly(code)?;
        Self::with_table(code, MeggittTable::build(&code.id, n, g, t))
    }

    /// Loads a persisted table; a missing file is a resource error.
    pub fn load(code: &StabilizerCode, path: &Path) -> Result<Self> {
        let table = MeggittTable::load(path)?;
        let (n, g) = cyclic_poly(code)?;
        if table.code_id != code.id || table.n != n || table.g != g {
            return Err(Error::Resource(format!("decoder table {} does not belong to {}", path.display(), code.id)));
        }
        Self::with_table(code, table)
    }

    pub fn save_table(&self, path: &Path) -> Result<()> {
        self.table.save(path)
    }

    fn with_table(code: &StabilizerCode, table: MeggittTable) -> Result<Self> {
        let css = code.css()?;
        Ok(CyclicDecoder { table, pre_x: Preimage::new(&css.hz)?, pre_z: Preimage::new(&css.hx)? })
    }

    fn correct(&self, pre: &Preimage, s: &BitVec) -> BitVec {
        let n = self.table.n;
        let e0 = pre.solve(s);
        let r = poly_mod(e0.as_u64(), self.table.g);
        match self.table.decode_remainder(r) {
            Some(p) => BitVec::from_u64(n, p),
            None => e0,
        }
    }
}

impl CssDecoder for CyclicDecoder {
    fn name(&self) -> &'static str {
        "meggitt"
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
    use crate::stabilizer::{build_code, CodeSpec};

    #[test]
    fn golay_table_has_254_entries() {
        let code = build_code(CodeSpec::Golay).unwrap();
        let d = CyclicDecoder::build(&code, 3).unwrap();
        assert_eq!(d.table.entries.len(), 1 + 22 + 231);
    }

    #[test]
    fn table_round_trips() {
        let t = MeggittTable::build("golay", 23, 0b1010_1110_0011, 3);
        let back = MeggittTable::from_bytes(&t.to_bytes()).unwrap();
        assert_eq!(t, back);
        let mut bytes = t.to_bytes();
        bytes[4] = 9;
        assert!(MeggittTable::from_bytes(&bytes).is_err());
    }

    #[test]
    fn rotation() {
        assert_eq!(rotate(0b1001, 1, 4), 0b0011);
        assert_eq!(rotate(0b1001, 4, 4), 0b1001);
    }
}
