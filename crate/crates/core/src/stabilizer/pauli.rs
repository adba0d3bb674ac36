use crate::bits::BitVec;
use crate::error::{Error, Result};
use std::fmt;

/// n-qubit Pauli operator modulo phase.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Pauli {
    pub x: BitVec,
    pub z: BitVec,
}

impl Pauli {
    pub fn identity(n: usize) -> Self {
        Pauli { x: BitVec::zeros(n), z: BitVec::zeros(n) }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len());
        Pauli { x, z }
    }

    pub fn x_type(x: BitVec) -> Self {
        let n = x.len();
        Pauli { x, z: BitVec::zeros(n) }
    }

    pub fn z_type(z: BitVec) -> Self {
        let n = z.len();
        Pauli { x: BitVec::zeros(n), z }
    }

    /// Single-qubit Pauli `p` (1 = X, 2 = Z, 3 = Y) on qubit `q`.
    pub fn single(n: usize, q: usize, p: u8) -> Self {
        let mut r = Self::identity(n);
        r.x.set(q, p & 1 == 1);
        r.z.set(q, p & 2 == 2);
        r
    }

    /// Parses strings like "XZZXI".
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Self::identity(chars.len());
        for (i, c) in chars.iter().enumerate() {
            match c.to_ascii_uppercase() {
                'I' | '_' => {}
                'X' => p.x.set(i, true),
                'Z' => p.z.set(i, true),
                'Y' => {
                    p.x.set(i, true);
                    p.z.set(i, true);
                }
                other => return Err(Error::Parse(format!("invalid Pauli character {other:?}"))),
            }
        }
        Ok(p)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Product, ignoring phase.
    #[inline]
    pub fn mul_assign(&mut self, other: &Pauli) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    pub fn mul(&self, other: &Pauli) -> Pauli {
        let mut r = self.clone();
        r.mul_assign(other);
        r
    }

    /// True iff the operators anticommute.
    #[inline]
    pub fn anticommutes(&self, other: &Pauli) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn weight(&self) -> usize {
        let mut w = 0;
        for (a, b) in self.x.words().iter().zip(self.z.words()) {
            w += (a | b).count_ones() as usize;
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Pauli code on qubit q: 0 = I, 1 = X, 2 = Z, 3 = Y.
    pub fn get(&self, q: usize) -> u8 {
        self.x.get(q) as u8 | (self.z.get(q) as u8) << 1
    }

    pub fn set(&mut self, q: usize, p: u8) {
        self.x.set(q, p & 1 == 1);
        self.z.set(q, p & 2 == 2);
    }

    /// Restriction to qubits offset..offset+len.
    pub fn slice(&self, offset: usize, len: usize) -> Pauli {
        Pauli { x: self.x.slice(offset, len), z: self.z.slice(offset, len) }
    }

    pub fn tensor(parts: &[&Pauli]) -> Pauli {
        let xs: Vec<&BitVec> = parts.iter().map(|p| &p.x).collect();
        let zs: Vec<&BitVec> = parts.iter().map(|p| &p.z).collect();
        Pauli { x: BitVec::concat(&xs), z: BitVec::concat(&zs) }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            f.write_str(match self.get(q) {
                0 => "I",
                1 => "X",
                2 => "Z",
                _ => "Y",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}
