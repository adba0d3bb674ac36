use crate::bits::BitVec;
use crate::error::{Error, Result};

/// GF(2^m) with log/antilog tables, 1 ≤ m ≤ 8.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    m: u32,
    modulus: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl GaloisField {
    /// Builds the field from a primitive polynomial given as a bit mask (bit m set).
    pub fn new(m: u32, modulus: u32) -> Result<Self> {
        if !(1..=8).contains(&m) {
            return Err(Error::Field(format!("extension degree {m} outside 1..=8")));
        }
        if modulus >> m != 1 {
            return Err(Error::Field(format!("modulus {modulus:#x} is not of degree {m}")));
        }
        let q = 1usize << m;
        let order = q - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; q];
        let mut x: u32 = 1;
        for i in 0..order {
            if i > 0 && x == 1 {
                return Err(Error::Field(format!("modulus {modulus:#x} is not primitive")));
            }
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= modulus;
            }
        }
        if x != 1 {
            return Err(Error::Field(format!("modulus {modulus:#x} is not primitive")));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(GaloisField { m, modulus, exp, log })
    }

    /// GF(8) with x³+x+1.
    pub fn gf8() -> Self {
        Self::new(3, 0b1011).expect("x^3+x+1 is primitive")
    }

    /// GF(16) with x⁴+x+1.
    pub fn gf16() -> Self {
        Self::new(4, 0b10011).expect("x^4+x+1 is primitive")
    }

    /// GF(256) with x⁸+x⁴+x³+x²+1.
    pub fn gf256() -> Self {
        Self::new(8, 0x11d).expect("0x11d is primitive")
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn size(&self) -> usize {
        1 << self.m
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.size() - 1
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    pub fn inv(&self, a: u16) -> Result<u16> {
        if a == 0 {
            return Err(Error::Field("inverse of zero".into()));
        }
        Ok(self.exp[(self.order() - self.log[a as usize] as usize) % self.order()])
    }

    pub fn div(&self, a: u16, b: u16) -> Result<u16> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// α^e for the primitive element α = x.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> u16 {
        self.exp[e.rem_euclid(self.order() as i64) as usize]
    }

    pub fn log(&self, a: u16) -> Option<usize> {
        (a != 0).then(|| self.log[a as usize] as usize)
    }

    pub fn antilog(&self, i: usize) -> u16 {
        self.exp[i % self.order()]
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * e % self.order() as u64;
        self.exp[l as usize]
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: u16) -> u16 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.m {
            t ^= x;
            x = self.mul(x, x);
        }
        debug_assert!(t <= 1);
        t
    }

    /// First trace-orthonormal basis in lexicographic order of element values.
    pub fn self_dual_basis(&self) -> Result<Vec<u16>> {
        let m = self.m as usize;
        let candidates: Vec<u16> = (1..self.size() as u16).filter(|&a| self.trace(self.mul(a, a)) == 1).collect();
        let mut chosen = Vec::with_capacity(m);
        if self.search_basis(&candidates, 0, &mut chosen) {
            Ok(chosen)
        } else {
            Err(Error::Field(format!("no self-dual basis for GF(2^{m})")))
        }
    }

    fn search_basis(&self, cand: &[u16], start: usize, chosen: &mut Vec<u16>) -> bool {
        if chosen.len() == self.m as usize {
            return true;
        }
        for i in start..cand.len() {
            let c = cand[i];
            if chosen.iter().all(|&b| self.trace(self.mul(b, c)) == 0) {
                chosen.push(c);
                if self.search_basis(cand, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Coordinates Tr(a·β_j) of each symbol, concatenated.
    pub fn expand(&self, basis: &[u16], word: &[u16]) -> BitVec {
        let m = basis.len();
        let mut out = BitVec::zeros(m * word.len());
        for (i, &a) in word.iter().enumerate() {
            for (j, &b) in basis.iter().enumerate() {
                if self.trace(self.mul(a, b)) == 1 {
                    out.set(i * m + j, true);
                }
            }
        }
        out
    }

    /// Inverse of [`expand`] for a self-dual basis: a = Σ_j c_j β_j.
    pub fn contract(&self, basis: &[u16], bits: &BitVec) -> Vec<u16> {
        let m = basis.len();
        (0..bits.len() / m)
            .map(|i| (0..m).filter(|&j| bits.get(i * m + j)).fold(0u16, |acc, j| acc ^ basis[j]))
            .collect()
    }
}

/// Carry-less multiply modulo a degree-`m` polynomial, for fields too large to tabulate.
pub fn clmul_mod(mut a: u64, mut b: u64, modulus: u64, m: u32) -> u64 {
    let mut r = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

pub fn pow_mod(a: u64, mut e: u64, modulus: u64, m: u32) -> u64 {
    let mut base = a;
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = clmul_mod(r, base, modulus, m);
        }
        base = clmul_mod(base, base, modulus, m);
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_axioms() {
        let f = GaloisField::gf8();
        for a in 0..8u16 {
            assert_eq!(f.add(a, a), 0);
            assert_eq!(f.mul(a, 1), a);
            for b in 0..8u16 {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..8u16 {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn gf16_inverse_by_scan() {
        let f = GaloisField::gf16();
        for a in 1..16u16 {
            let found: Vec<u16> = (1..16u16).filter(|&b| f.mul(a, b) == 1).collect();
            assert_eq!(found, vec![f.inv(a).unwrap()]);
        }
        assert!(f.inv(0).is_err());
    }

    #[test]
    fn log_antilog_roundtrip() {
        for f in [GaloisField::gf8(), GaloisField::gf16(), GaloisField::gf256()] {
            for a in 1..f.size() as u16 {
                assert_eq!(f.antilog(f.log(a).unwrap()), a);
            }
        }
    }

    #[test]
    fn non_primitive_modulus_rejected() {
        // x^4+x^3+x^2+x+1 is irreducible but has order 5
        assert!(GaloisField::new(4, 0b11111).is_err());
    }

    #[test]
    fn clmul_matches_tables() {
        let f = GaloisField::gf16();
        for a in 0..16u16 {
            for b in 0..16u16 {
                assert_eq!(clmul_mod(a as u64, b as u64, 0b10011, 4) as u16, f.mul(a, b));
            }
        }
    }
}
