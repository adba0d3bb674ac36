use super::code::{css_from_checks, css_from_classical, css_with_logicals, DecoderId, StabilizerCode};
use super::pauli::Pauli;
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::galois::cyclic::quadratic_residue_generator;
use crate::galois::{BinaryMatrix, ClassicalCode, GaloisField, ReedSolomon};
use std::fmt;

/// Irreducible moduli for the quadratic-residue root-of-unity fields.
pub const GOLAY_FIELD_MODULUS: u64 = (1 << 11) | 0b101;
pub const QR47_FIELD_MODULUS: u64 = (1 << 23) | 0b100001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeSpec {
    FiveQubit,
    Steane,
    BaconShor(usize),
    ReedMuller15,
    Surface(usize),
    Golay,
    Qr47,
    Concat49,
    Polynomial21,
    Polynomial60,
}

impl CodeSpec {
    /// All catalog entries, in the order of the code table.
    pub fn all() -> Vec<CodeSpec> {
        vec![
            CodeSpec::FiveQubit,
            CodeSpec::Steane,
            CodeSpec::BaconShor(3),
            CodeSpec::BaconShor(5),
            CodeSpec::BaconShor(7),
            CodeSpec::BaconShor(9),
            CodeSpec::ReedMuller15,
            CodeSpec::Surface(3),
            CodeSpec::Surface(5),
            CodeSpec::Surface(7),
            CodeSpec::Polynomial21,
            CodeSpec::Golay,
            CodeSpec::Qr47,
            CodeSpec::Concat49,
            CodeSpec::Polynomial60,
        ]
    }

    pub fn id(&self) -> String {
        match self {
            CodeSpec::FiveQubit => "five".into(),
            CodeSpec::Steane => "steane".into(),
            CodeSpec::BaconShor(s) => format!("bs{s}"),
            CodeSpec::ReedMuller15 => "rm15".into(),
            CodeSpec::Surface(l) => format!("surface{l}"),
            CodeSpec::Golay => "golay".into(),
            CodeSpec::Qr47 => "qr47".into(),
            CodeSpec::Concat49 => "concat49".into(),
            CodeSpec::Polynomial21 => "poly21".into(),
            CodeSpec::Polynomial60 => "poly60".into(),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            CodeSpec::FiveQubit => "five-qubit",
            CodeSpec::Steane => "steane",
            CodeSpec::BaconShor(_) => "bacon-shor",
            CodeSpec::ReedMuller15 => "reed-muller",
            CodeSpec::Surface(_) => "surface",
            CodeSpec::Golay => "golay",
            CodeSpec::Qr47 => "quadratic-residue",
            CodeSpec::Concat49 => "concatenated-steane",
            CodeSpec::Polynomial21 | CodeSpec::Polynomial60 => "polynomial",
        }
    }

    /// (n, k, d).
    pub fn params(&self) -> (usize, usize, usize) {
        match *self {
            CodeSpec::FiveQubit => (5, 1, 3),
            CodeSpec::Steane => (7, 1, 3),
            CodeSpec::BaconShor(s) => (s * s, 1, s),
            CodeSpec::ReedMuller15 => (15, 1, 3),
            CodeSpec::Surface(l) => (l * l + (l - 1) * (l - 1), 1, l),
            CodeSpec::Golay => (23, 1, 7),
            CodeSpec::Qr47 => (47, 1, 11),
            CodeSpec::Concat49 => (49, 1, 9),
            CodeSpec::Polynomial21 => (21, 3, 5),
            CodeSpec::Polynomial60 => (60, 4, 10),
        }
    }

    /// Correctable weights (X errors, Z errors) for decoder verification.
    /// Polynomial codes count GF(2^m) symbols.
    pub fn correctable(&self) -> (usize, usize) {
        match self {
            CodeSpec::ReedMuller15 => (3, 1),
            CodeSpec::Polynomial21 => (1, 1),
            CodeSpec::Polynomial60 => (3, 3),
            _ => {
                let t = (self.params().2 - 1) / 2;
                (t, t)
            }
        }
    }

    pub fn decoder(&self) -> DecoderId {
        match self {
            CodeSpec::FiveQubit => DecoderId::PauliLookup,
            CodeSpec::Steane | CodeSpec::ReedMuller15 => DecoderId::Lookup,
            CodeSpec::BaconShor(_) => DecoderId::BaconShorMajority,
            CodeSpec::Surface(_) => DecoderId::SurfaceMatching,
            CodeSpec::Golay => DecoderId::Meggitt,
            CodeSpec::Qr47 => DecoderId::QrTable,
            CodeSpec::Concat49 => DecoderId::Concat49,
            CodeSpec::Polynomial21 | CodeSpec::Polynomial60 => DecoderId::NonbinaryMeggitt,
        }
    }

    pub fn is_css(&self) -> bool {
        !matches!(self, CodeSpec::FiveQubit)
    }

    /// Accepts catalog ids and [[n,k,d]] notation.
    pub fn parse(s: &str) -> Result<CodeSpec> {
        let t = s.trim().to_ascii_lowercase();
        for c in Self::all() {
            let (n, k, d) = c.params();
            if t == c.id() || t == format!("[[{n},{k},{d}]]") || t == format!("{n},{k},{d}") {
                return Ok(c);
            }
        }
        if let Some(rest) = t.strip_prefix("bs") {
            if let Ok(s) = rest.parse::<usize>() {
                if s >= 2 && s % 2 == 1 {
                    return Ok(CodeSpec::BaconShor(s));
                }
            }
        }
        if let Some(rest) = t.strip_prefix("surface") {
            if let Ok(l) = rest.parse::<usize>() {
                if l >= 2 {
                    return Ok(CodeSpec::Surface(l));
                }
            }
        }
        Err(Error::Catalog(s.to_string()))
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, k, d) = self.params();
        write!(f, "[[{n},{k},{d}]]")
    }
}

pub fn build_code(spec: CodeSpec) -> Result<StabilizerCode> {
    let id = spec.id();
    let (_, _, d) = spec.params();
    let dec = spec.decoder();
    let code = match spec {
        CodeSpec::FiveQubit => five_qubit()?,
        CodeSpec::Steane => css_from_checks(&id, hamming7_checks(), hamming7_checks(), d, dec)?,
        CodeSpec::BaconShor(s) => bacon_shor(s)?,
        CodeSpec::ReedMuller15 => reed_muller15()?,
        CodeSpec::Surface(l) => surface(l)?,
        CodeSpec::Golay => {
            let g = quadratic_residue_generator(23, GOLAY_FIELD_MODULUS)?;
            let c = ClassicalCode::cyclic("golay", 23, g)?.with_distance(7);
            css_from_classical(&id, &c, &c, d, dec)?
        }
        CodeSpec::Qr47 => {
            let c = qr47_classical()?;
            css_from_classical(&id, &c, &c, d, dec)?
        }
        CodeSpec::Concat49 => concat49()?,
        CodeSpec::Polynomial21 | CodeSpec::Polynomial60 => {
            let p = PolynomialCode::new(spec)?;
            css_from_classical(&id, &p.binary, &p.binary, d, dec)?
        }
    };
    let (n, k, _) = spec.params();
    if code.n != n || code.k != k {
        return Err(Error::Invariant(format!("{id} built as [[{},{}]]", code.n, code.k)));
    }
    Ok(code)
}

/// Parity check of the [7,4,3] Hamming code; column j is the binary expansion of j+1.
pub fn hamming7_checks() -> BinaryMatrix {
    BinaryMatrix::from_strs(&["1010101", "0110011", "0001111"]).expect("static matrix")
}

pub fn qr47_classical() -> Result<ClassicalCode> {
    let g = quadratic_residue_generator(47, QR47_FIELD_MODULUS)?;
    Ok(ClassicalCode::cyclic("qr47", 47, g)?.with_distance(11))
}

fn five_qubit() -> Result<StabilizerCode> {
    let gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];
    let stabilizers = gens.iter().map(|g| Pauli::parse(g)).collect::<Result<Vec<_>>>()?;
    let code = StabilizerCode {
        id: "five".into(),
        n: 5,
        k: 1,
        d: 3,
        stabilizers,
        gauge: Vec::new(),
        logical_x: vec![Pauli::parse("XXXXX")?],
        logical_z: vec![Pauli::parse("ZZZZZ")?],
        css: None,
        decoder: DecoderId::PauliLookup,
    };
    code.check_invariants()?;
    Ok(code)
}

/// Qubit (r, c) of the s×s lattice has index r·s + c.
fn bacon_shor(s: usize) -> Result<StabilizerCode> {
    if s < 2 {
        return Err(Error::Catalog(format!("bs{s}")));
    }
    let n = s * s;
    let q = |r: usize, c: usize| r * s + c;
    let mut hx = BinaryMatrix::zeros(0, n);
    let mut hz = BinaryMatrix::zeros(0, n);
    for i in 0..s - 1 {
        let rows: Vec<usize> = (0..s).flat_map(|c| [q(i, c), q(i + 1, c)]).collect();
        hx.push_row(BitVec::from_indices(n, &rows));
        let cols: Vec<usize> = (0..s).flat_map(|r| [q(r, i), q(r, i + 1)]).collect();
        hz.push_row(BitVec::from_indices(n, &cols));
    }
    let mut gauge = Vec::new();
    for c in 0..s {
        for r in 0..s - 1 {
            gauge.push(Pauli::x_type(BitVec::from_indices(n, &[q(r, c), q(r + 1, c)])));
        }
    }
    for r in 0..s {
        for c in 0..s - 1 {
            gauge.push(Pauli::z_type(BitVec::from_indices(n, &[q(r, c), q(r, c + 1)])));
        }
    }
    let lx = BinaryMatrix::from_rows(n, vec![BitVec::from_indices(n, &(0..s).map(|c| q(0, c)).collect::<Vec<_>>())]);
    let lz = BinaryMatrix::from_rows(n, vec![BitVec::from_indices(n, &(0..s).map(|r| q(r, 0)).collect::<Vec<_>>())]);
    css_with_logicals(&format!("bs{s}"), hx, hz, lx, lz, gauge, s, DecoderId::BaconShorMajority)
}

fn reed_muller15() -> Result<StabilizerCode> {
    let n = 15;
    let simplex_rows: Vec<BitVec> = (0..4)
        .map(|b| BitVec::from_indices(n, &(0..n).filter(|j| (j + 1) >> b & 1 == 1).collect::<Vec<_>>()))
        .collect();
    let hx = BinaryMatrix::from_rows(n, simplex_rows.clone());
    let mut c1 = BinaryMatrix::from_rows(n, simplex_rows);
    c1.push_row(BitVec::ones(n));
    let hz = c1.kernel().echelon().matrix;
    css_from_checks("rm15", hx, hz, 3, DecoderId::Lookup)
}

/// Layout of the distance-ℓ surface code on a (2ℓ−1)×(2ℓ−1) grid.
///
/// Data qubits sit at (i, j) with i+j even; X-stabilizers (stars) at
/// (even, odd), Z-stabilizers (plaquettes) at (odd, even).
#[derive(Clone, Debug)]
pub struct SurfaceLayout {
    pub l: usize,
    pub size: usize,
    index: Vec<Option<usize>>,
    pub coords: Vec<(usize, usize)>,
    pub stars: Vec<(usize, usize)>,
    pub plaquettes: Vec<(usize, usize)>,
}

impl SurfaceLayout {
    pub fn new(l: usize) -> Self {
        let size = 2 * l - 1;
        let mut index = vec![None; size * size];
        let mut coords = Vec::new();
        let mut stars = Vec::new();
        let mut plaquettes = Vec::new();
        for i in 0..size {
            for j in 0..size {
                if (i + j) % 2 == 0 {
                    index[i * size + j] = Some(coords.len());
                    coords.push((i, j));
                } else if i % 2 == 0 {
                    stars.push((i, j));
                } else {
                    plaquettes.push((i, j));
                }
            }
        }
        SurfaceLayout { l, size, index, coords, stars, plaquettes }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn qubit(&self, i: isize, j: isize) -> Option<usize> {
        let s = self.size as isize;
        if i < 0 || j < 0 || i >= s || j >= s {
            return None;
        }
        self.index[(i * s + j) as usize]
    }

    /// Data neighbours of a check site in the order up, down, left, right.
    pub fn neighbours(&self, (i, j): (usize, usize)) -> [Option<usize>; 4] {
        let (i, j) = (i as isize, j as isize);
        [self.qubit(i - 1, j), self.qubit(i + 1, j), self.qubit(i, j - 1), self.qubit(i, j + 1)]
    }

    fn support(&self, site: (usize, usize)) -> BitVec {
        let idx: Vec<usize> = self.neighbours(site).iter().flatten().copied().collect();
        BitVec::from_indices(self.n(), &idx)
    }
}

fn surface(l: usize) -> Result<StabilizerCode> {
    if l < 2 {
        return Err(Error::Catalog(format!("surface{l}")));
    }
    let lay = SurfaceLayout::new(l);
    let n = lay.n();
    let hx = BinaryMatrix::from_rows(n, lay.stars.iter().map(|&s| lay.support(s)).collect());
    let hz = BinaryMatrix::from_rows(n, lay.plaquettes.iter().map(|&p| lay.support(p)).collect());
    let top: Vec<usize> = (0..lay.size).step_by(2).filter_map(|j| lay.qubit(0, j as isize)).collect();
    let left: Vec<usize> = (0..lay.size).step_by(2).filter_map(|i| lay.qubit(i as isize, 0)).collect();
    let lx = BinaryMatrix::from_rows(n, vec![BitVec::from_indices(n, &left)]);
    let lz = BinaryMatrix::from_rows(n, vec![BitVec::from_indices(n, &top)]);
    css_with_logicals(&format!("surface{l}"), hx, hz, lx, lz, Vec::new(), l, DecoderId::SurfaceMatching)
}

/// Two-level concatenation of the 7-qubit code; register b holds qubits 7b..7b+6.
fn concat49() -> Result<StabilizerCode> {
    let h = hamming7_checks();
    let n = 49;
    let mut rows = Vec::new();
    for b in 0..7 {
        for r in h.rows() {
            rows.push(BitVec::from_indices(n, &r.ones_iter().map(|i| 7 * b + i).collect::<Vec<_>>()));
        }
    }
    for r in h.rows() {
        let idx: Vec<usize> = r.ones_iter().flat_map(|b| (0..7).map(move |i| 7 * b + i)).collect();
        rows.push(BitVec::from_indices(n, &idx));
    }
    let m = BinaryMatrix::from_rows(n, rows);
    let ones = BinaryMatrix::from_rows(n, vec![BitVec::ones(n)]);
    css_with_logicals("concat49", m.clone(), m, ones.clone(), ones, Vec::new(), 9, DecoderId::Concat49)
}

/// Reed-Solomon code over GF(2^m) and its binary image under a self-dual basis.
#[derive(Clone, Debug)]
pub struct PolynomialCode {
    pub rs: ReedSolomon,
    pub basis: Vec<u16>,
    pub binary: ClassicalCode,
}

impl PolynomialCode {
    pub fn new(spec: CodeSpec) -> Result<Self> {
        let (field, k) = match spec {
            CodeSpec::Polynomial21 => (GaloisField::gf8(), 4),
            CodeSpec::Polynomial60 => (GaloisField::gf16(), 8),
            other => return Err(Error::Catalog(format!("{} is not a polynomial code", other.id()))),
        };
        let basis = field.self_dual_basis()?;
        let rs = ReedSolomon::narrow_sense(field, k)?;
        let binary = rs.binary_expansion(&basis, &spec.id())?;
        Ok(PolynomialCode { rs, basis, binary })
    }

    pub fn m(&self) -> usize {
        self.basis.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_code_builds_and_commutes() {
        for spec in CodeSpec::all() {
            let c = build_code(spec).unwrap_or_else(|e| panic!("{spec}: {e}"));
            c.check_invariants().unwrap();
            let (n, k, _) = spec.params();
            assert_eq!((c.n, c.k), (n, k), "{}", spec.id());
        }
    }

    #[test]
    fn parse_ids() {
        assert_eq!(CodeSpec::parse("[[9,1,3]]").unwrap(), CodeSpec::BaconShor(3));
        assert_eq!(CodeSpec::parse("steane").unwrap(), CodeSpec::Steane);
        assert_eq!(CodeSpec::parse("surface3").unwrap(), CodeSpec::Surface(3));
        assert!(CodeSpec::parse("nonsense").is_err());
    }
}

#[cfg(test)]
mod distance_tests {
    use super::*;
    use crate::galois::cyclic::min_weight_of_span;

    #[test]
    fn polynomial21_binary_distance_is_five() {
        let p = PolynomialCode::new(CodeSpec::Polynomial21).unwrap();
        let dual = p.binary.parity_check.clone();
        assert_eq!(min_weight_of_span(&p.binary.generator, Some(&dual)), Some(5));
        for (i, a) in p.basis.iter().enumerate() {
            for (j, b) in p.basis.iter().enumerate() {
                assert_eq!(p.rs.field.trace(p.rs.field.mul(*a, *b)), (i == j) as u16);
            }
        }
    }

    #[test]
    fn steane_and_golay_quantum_distance() {
        for spec in [CodeSpec::Steane, CodeSpec::Golay, CodeSpec::ReedMuller15] {
            let c = build_code(spec).unwrap();
            let css = c.css.unwrap();
            let c1 = css.hz.kernel();
            let dx = min_weight_of_span(&c1, Some(&css.hx)).unwrap();
            let c2 = css.hx.kernel();
            let dz = min_weight_of_span(&c2, Some(&css.hz)).unwrap();
            let expected = match spec {
                CodeSpec::ReedMuller15 => (7, 3),
                _ => (spec.params().2, spec.params().2),
            };
            assert_eq!((dx, dz), expected, "{}", spec.id());
        }
    }
}
