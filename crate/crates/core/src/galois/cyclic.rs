use super::field::{clmul_mod, pow_mod, GaloisField};
use super::matrix::BinaryMatrix;
use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Binary linear code given by generator and parity-check matrices.
#[derive(Clone, Debug)]
pub struct ClassicalCode {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub generator: BinaryMatrix,
    pub parity_check: BinaryMatrix,
    /// Generator polynomial (bit i = coefficient of x^i) when the code is cyclic.
    pub cyclic_poly: Option<u64>,
}

impl ClassicalCode {
    pub fn from_generator(name: &str, generator: BinaryMatrix) -> Result<Self> {
        let e = generator.echelon();
        let generator = e.matrix;
        let parity_check = generator.kernel();
        Ok(ClassicalCode {
            name: name.to_string(),
            n: generator.ncols(),
            k: generator.nrows(),
            d: None,
            generator,
            parity_check,
            cyclic_poly: None,
        })
    }

    pub fn from_parity_check(name: &str, h: BinaryMatrix) -> Result<Self> {
        let g = h.kernel();
        let mut c = Self::from_generator(name, g)?;
        c.parity_check = h.echelon().matrix;
        Ok(c)
    }

    /// Cyclic code of length n generated by g(x).
    pub fn cyclic(name: &str, n: usize, g: u64) -> Result<Self> {
        let deg = 63 - g.leading_zeros() as usize;
        if n > 64 || deg >= n {
            return Err(Error::Construction(format!("bad cyclic parameters n={n}, deg g={deg}")));
        }
        let xn1 = (1u64 << n.min(63)) | 1;
        if n < 64 && poly_mod(xn1, g) != 0 {
            return Err(Error::Construction("g(x) does not divide x^n - 1".into()));
        }
        let k = n - deg;
        let rows = (0..k).map(|i| BitVec::from_u64(n, g << i)).collect();
        let mut c = Self::from_generator(name, BinaryMatrix::from_rows(n, rows))?;
        c.cyclic_poly = Some(g);
        Ok(c)
    }

    pub fn with_distance(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn dual(&self) -> Result<ClassicalCode> {
        let mut c = Self::from_generator(&format!("{}-dual", self.name), self.parity_check.clone())?;
        c.parity_check = self.generator.clone();
        Ok(c)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.parity_check.mul_vec(v).is_zero()
    }

    /// Whether every row of `other`'s generator lies in this code.
    pub fn contains_code(&self, other: &ClassicalCode) -> bool {
        other.generator.rows().iter().all(|r| self.contains(r))
    }

    /// Minimum nonzero weight by Gray-code enumeration (k ≤ 26).
    pub fn min_distance_bruteforce(&self) -> Option<usize> {
        min_weight_of_span(&self.generator, None)
    }
}

/// Minimum weight over span(g) \ span(exclude) by Gray-code walk.
pub fn min_weight_of_span(g: &BinaryMatrix, exclude: Option<&BinaryMatrix>) -> Option<usize> {
    let k = g.nrows();
    if k > 26 {
        return None;
    }
    let ex = exclude.map(|e| e.echelon());
    let mut cur = BitVec::zeros(g.ncols());
    let mut best: Option<usize> = None;
    for i in 1u64..(1u64 << k) {
        let bit = i.trailing_zeros() as usize;
        cur.xor_assign(g.row(bit));
        let w = cur.weight();
        if w == 0 || best.is_some_and(|b| w >= b) {
            continue;
        }
        if let Some(e) = &ex {
            if super::matrix::reduce_against(e, &cur).is_zero() {
                continue;
            }
        }
        best = Some(w);
    }
    best
}

/// a(x) mod g(x) over GF(2).
pub fn poly_mod(mut a: u64, g: u64) -> u64 {
    let dg = 63 - g.leading_zeros();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < dg {
            break;
        }
        a ^= g << (da - dg);
    }
    a
}

pub fn poly_mul(a: u64, b: u64) -> u64 {
    let mut r = 0u64;
    let mut b = b;
    let mut s = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << s;
        }
        b >>= 1;
        s += 1;
    }
    r
}

/// Multiplicative order of 2 modulo p.
pub fn order_of_two(p: u64) -> u32 {
    let mut x = 2 % p;
    let mut e = 1;
    while x != 1 {
        x = x * 2 % p;
        e += 1;
    }
    e
}

/// Generator of the binary quadratic-residue code of prime length p:
/// g(x) = Π_{r quadratic residue} (x − β^r) with β a primitive p-th root of unity
/// in GF(2^m), m = ord_p(2), built modulo the given irreducible polynomial.
pub fn quadratic_residue_generator(p: u64, modulus: u64) -> Result<u64> {
    let m = order_of_two(p);
    if 63 - modulus.leading_zeros() != m {
        return Err(Error::Construction(format!("modulus degree must equal ord_{p}(2) = {m}")));
    }
    let group = (1u64 << m) - 1;
    if group % p != 0 {
        return Err(Error::Construction(format!("{p} does not divide 2^{m}-1")));
    }
    let beta = pow_mod(2, group / p, modulus, m);
    if beta == 1 || pow_mod(beta, p, modulus, m) != 1 {
        return Err(Error::Construction("no primitive p-th root of unity (modulus not irreducible?)".into()));
    }
    let mut residues: Vec<u64> = (1..p).map(|x| x * x % p).collect();
    residues.sort_unstable();
    residues.dedup();
    // coefficients over GF(2^m), lowest degree first
    let mut poly: Vec<u64> = vec![1];
    for r in residues {
        let root = pow_mod(beta, r, modulus, m);
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= clmul_mod(c, root, modulus, m);
        }
        poly = next;
    }
    let mut g = 0u64;
    for (i, &c) in poly.iter().enumerate() {
        match c {
            0 => {}
            1 => g |= 1 << i,
            _ => return Err(Error::Construction("QR generator has non-binary coefficient".into())),
        }
    }
    Ok(g)
}

/// Narrow-sense Reed-Solomon code over GF(2^m) of length q−1 and dimension k,
/// generated by Π_{i=1}^{n−k} (x − α^i).
#[derive(Clone, Debug)]
pub struct ReedSolomon {
    pub field: GaloisField,
    pub n: usize,
    pub k: usize,
    /// Generator polynomial coefficients, lowest degree first, monic.
    pub generator: Vec<u16>,
}

impl ReedSolomon {
    pub fn narrow_sense(field: GaloisField, k: usize) -> Result<Self> {
        let n = field.order();
        if k == 0 || k >= n {
            return Err(Error::Construction(format!("RS dimension {k} out of range for n={n}")));
        }
        let mut g: Vec<u16> = vec![1];
        for i in 1..=(n - k) {
            let root = field.alpha_pow(i as i64);
            let mut next = vec![0u16; g.len() + 1];
            for (j, &c) in g.iter().enumerate() {
                next[j + 1] ^= c;
                next[j] ^= field.mul(c, root);
            }
            g = next;
        }
        Ok(ReedSolomon { field, n, k, generator: g })
    }

    pub fn distance(&self) -> usize {
        self.n - self.k + 1
    }

    /// Generator rows x^i g(x), i < k.
    pub fn generator_rows(&self) -> Vec<Vec<u16>> {
        (0..self.k)
            .map(|i| {
                let mut row = vec![0u16; self.n];
                for (j, &c) in self.generator.iter().enumerate() {
                    row[i + j] = c;
                }
                row
            })
            .collect()
    }

    /// Remainder of a word (as polynomial, lowest degree first) modulo g.
    pub fn remainder(&self, word: &[u16]) -> Vec<u16> {
        let f = &self.field;
        let dg = self.generator.len() - 1;
        let mut r = word.to_vec();
        for i in (dg..r.len()).rev() {
            let c = r[i];
            if c != 0 {
                for (j, &gj) in self.generator.iter().enumerate() {
                    r[i - dg + j] ^= f.mul(c, gj);
                }
            }
        }
        r.truncate(dg);
        r
    }

    /// Binary image of the code under a trace-self-dual basis.
    pub fn binary_expansion(&self, basis: &[u16], name: &str) -> Result<ClassicalCode> {
        let mut rows = Vec::new();
        for row in self.generator_rows() {
            for &b in basis {
                let scaled: Vec<u16> = row.iter().map(|&c| self.field.mul(c, b)).collect();
                rows.push(self.field.expand(basis, &scaled));
            }
        }
        let g = BinaryMatrix::from_rows(self.n * basis.len(), rows);
        ClassicalCode::from_generator(name, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_codes_have_expected_parameters() {
        let g7 = quadratic_residue_generator(7, 0b1011).unwrap();
        let h = ClassicalCode::cyclic("h7", 7, g7).unwrap();
        assert_eq!((h.k, h.min_distance_bruteforce()), (4, Some(3)));

        let g23 = quadratic_residue_generator(23, (1 << 11) | 0b101).unwrap();
        let golay = ClassicalCode::cyclic("golay", 23, g23).unwrap();
        assert_eq!((golay.k, golay.min_distance_bruteforce()), (12, Some(7)));
        assert!(golay.contains_code(&golay.dual().unwrap()));
    }

    #[test]
    fn rs_remainder_vanishes_on_codewords() {
        let rs = ReedSolomon::narrow_sense(GaloisField::gf8(), 4).unwrap();
        for row in rs.generator_rows() {
            assert!(rs.remainder(&row).iter().all(|&c| c == 0));
        }
        assert_eq!(rs.distance(), 4);
    }

    #[test]
    fn poly_helpers() {
        assert_eq!(poly_mod(0b1000, 0b1011), 0b011);
        assert_eq!(poly_mul(0b11, 0b11), 0b101);
        assert_eq!(order_of_two(47), 23);
    }
}
