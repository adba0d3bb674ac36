use super::pauli::Pauli;
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::galois::matrix::{reduce_against, Echelon};
use crate::galois::{BinaryMatrix, ClassicalCode};

/// Which decoding algorithm a code is bound to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderId {
    PauliLookup,
    Lookup,
    BaconShorMajority,
    SurfaceMatching,
    Meggitt,
    QrTable,
    Concat49,
    NonbinaryMeggitt,
}

impl DecoderId {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecoderId::PauliLookup => "pauli-lookup",
            DecoderId::Lookup => "lookup",
            DecoderId::BaconShorMajority => "bacon-shor-majority",
            DecoderId::SurfaceMatching => "surface-mwpm",
            DecoderId::Meggitt => "meggitt",
            DecoderId::QrTable => "qr-cyclic-table",
            DecoderId::Concat49 => "concat49-message-passing",
            DecoderId::NonbinaryMeggitt => "nonbinary-meggitt",
        }
    }
}

/// X/Z split of a CSS (or CSS-like subsystem) code.
///
/// Rows of `hx` are supports of X-type stabilizers and span C2⊥; rows of `hz`
/// are supports of Z-type stabilizers and span C1⊥.
#[derive(Clone, Debug)]
pub struct CssParts {
    pub hx: BinaryMatrix,
    pub hz: BinaryMatrix,
    pub lx: BinaryMatrix,
    pub lz: BinaryMatrix,
}

#[derive(Clone, Debug)]
pub struct StabilizerCode {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub stabilizers: Vec<Pauli>,
    pub gauge: Vec<Pauli>,
    pub logical_x: Vec<Pauli>,
    pub logical_z: Vec<Pauli>,
    pub css: Option<CssParts>,
    pub decoder: DecoderId,
}

impl StabilizerCode {
    /// bit i = 1 iff `e` anticommutes with stabilizer i.
    pub fn syndrome(&self, e: &Pauli) -> Result<BitVec> {
        if e.n() != self.n {
            return Err(Error::Size { expected: self.n, got: e.n() });
        }
        let mut s = BitVec::zeros(self.stabilizers.len());
        for (i, g) in self.stabilizers.iter().enumerate() {
            if g.anticommutes(e) {
                s.set(i, true);
            }
        }
        Ok(s)
    }

    /// Whether a residual with trivial syndrome acts as a nontrivial logical.
    pub fn is_logical_fault(&self, residual: &Pauli) -> Result<bool> {
        if !self.syndrome(residual)?.is_zero() {
            return Err(Error::Contract("is_logical_fault called with nonzero syndrome".into()));
        }
        Ok(self.anticommutes_with_logical(residual))
    }

    /// Logical test without the syndrome precondition check.
    #[inline]
    pub fn anticommutes_with_logical(&self, p: &Pauli) -> bool {
        self.logical_x.iter().chain(self.logical_z.iter()).any(|l| l.anticommutes(p))
    }

    pub fn css(&self) -> Result<&CssParts> {
        self.css.as_ref().ok_or_else(|| Error::Construction(format!("{} is not CSS", self.id)))
    }

    pub fn is_subsystem(&self) -> bool {
        !self.gauge.is_empty()
    }

    /// Checks commutation relations of generators, gauge and logicals.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Invariant(format!("{}: {m}", self.id)));
        for (i, a) in self.stabilizers.iter().enumerate() {
            if a.n() != self.n {
                return fail(format!("stabilizer {i} has wrong length"));
            }
            for (j, b) in self.stabilizers.iter().enumerate().skip(i + 1) {
                if a.anticommutes(b) {
                    return fail(format!("stabilizers {i} and {j} anticommute"));
                }
            }
            for (j, g) in self.gauge.iter().enumerate() {
                if a.anticommutes(g) {
                    return fail(format!("stabilizer {i} anticommutes with gauge {j}"));
                }
            }
        }
        if self.logical_x.len() != self.k || self.logical_z.len() != self.k {
            return fail("wrong number of logical operators".into());
        }
        for (i, lx) in self.logical_x.iter().enumerate() {
            for (j, lz) in self.logical_z.iter().enumerate() {
                if lx.anticommutes(lz) != (i == j) {
                    return fail(format!("logical pairing broken at ({i},{j})"));
                }
            }
        }
        for (i, a) in self.logical_x.iter().enumerate() {
            for b in self.logical_x.iter().skip(i + 1) {
                if a.anticommutes(b) {
                    return fail("logical X operators anticommute".into());
                }
            }
        }
        for (i, a) in self.logical_z.iter().enumerate() {
            for b in self.logical_z.iter().skip(i + 1) {
                if a.anticommutes(b) {
                    return fail("logical Z operators anticommute".into());
                }
            }
        }
        for l in self.logical_x.iter().chain(&self.logical_z) {
            if self.stabilizers.iter().chain(&self.gauge).any(|g| g.anticommutes(l)) {
                return fail("logical operator anticommutes with a generator".into());
            }
        }
        if let Some(c) = &self.css {
            let nx = c.hx.nrows();
            for (i, s) in self.stabilizers.iter().enumerate() {
                let ok = if i < nx { s.z.is_zero() } else { s.x.is_zero() };
                if !ok {
                    return fail(format!("CSS generator {i} is not pure"));
                }
            }
        }
        Ok(())
    }

    /// Stabilizer generators as text, one per line.
    pub fn stabilizers_text(&self) -> String {
        let mut s = String::new();
        for g in &self.stabilizers {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

/// CSS code from C1 ⊇ C2⊥: X-stabilizers from C2's parity check, Z-stabilizers
/// from C1's parity check, logicals paired symplectically.
pub fn css_from_classical(id: &str, c1: &ClassicalCode, c2: &ClassicalCode, d: usize, decoder: DecoderId) -> Result<StabilizerCode> {
    if c1.n != c2.n {
        return Err(Error::Construction("C1 and C2 have different lengths".into()));
    }
    let c2_dual = c2.dual()?;
    if !c1.contains_code(&c2_dual) {
        return Err(Error::Construction(format!("{id}: C2⊥ is not contained in C1")));
    }
    let hx = c2.parity_check.echelon().matrix;
    let hz = c1.parity_check.echelon().matrix;
    css_from_checks(id, hx, hz, d, decoder)
}

/// CSS code from explicit X- and Z-check matrices; logicals are computed.
pub fn css_from_checks(id: &str, hx: BinaryMatrix, hz: BinaryMatrix, d: usize, decoder: DecoderId) -> Result<StabilizerCode> {
    if !hx.mul(&hz.transpose()).is_zero() {
        return Err(Error::Construction(format!("{id}: X and Z checks do not commute")));
    }
    let (lx, lz) = css_logicals(&hx, &hz)?;
    css_with_logicals(id, hx, hz, lx, lz, Vec::new(), d, decoder)
}

#[allow(clippy::too_many_arguments)]
pub fn css_with_logicals(
    id: &str,
    hx: BinaryMatrix,
    hz: BinaryMatrix,
    lx: BinaryMatrix,
    lz: BinaryMatrix,
    gauge: Vec<Pauli>,
    d: usize,
    decoder: DecoderId,
) -> Result<StabilizerCode> {
    let n = hx.ncols();
    let mut stabilizers: Vec<Pauli> = hx.rows().iter().map(|r| Pauli::x_type(r.clone())).collect();
    stabilizers.extend(hz.rows().iter().map(|r| Pauli::z_type(r.clone())));
    let code = StabilizerCode {
        id: id.to_string(),
        n,
        k: lx.nrows(),
        d,
        stabilizers,
        gauge,
        logical_x: lx.rows().iter().map(|r| Pauli::x_type(r.clone())).collect(),
        logical_z: lz.rows().iter().map(|r| Pauli::z_type(r.clone())).collect(),
        css: Some(CssParts { hx, hz, lx, lz }),
        decoder,
    };
    code.check_invariants()?;
    Ok(code)
}

/// Representatives of C1/C2⊥ and C2/C1⊥, paired so that ⟨lx_i, lz_j⟩ = δ_ij.
pub fn css_logicals(hx: &BinaryMatrix, hz: &BinaryMatrix) -> Result<(BinaryMatrix, BinaryMatrix)> {
    let n = hx.ncols();
    let mut lx = coset_basis(&hz.kernel(), hx);
    let mut lz = coset_basis(&hx.kernel(), hz);
    if lx.len() != lz.len() {
        return Err(Error::Construction("logical coset dimensions differ".into()));
    }
    let k = lx.len();
    for i in 0..k {
        let Some(j) = (i..k).find(|&j| lx[i].dot(&lz[j])) else {
            return Err(Error::Construction("logical operators cannot be paired".into()));
        };
        lz.swap(i, j);
        for r in 0..k {
            if r == i {
                continue;
            }
            if lx[i].dot(&lz[r]) {
                let t = lz[i].clone();
                lz[r].xor_assign(&t);
            }
            if lx[r].dot(&lz[i]) {
                let t = lx[i].clone();
                lx[r].xor_assign(&t);
            }
        }
    }
    Ok((BinaryMatrix::from_rows(n, lx), BinaryMatrix::from_rows(n, lz)))
}

/// Rows of `space` independent modulo row space of `sub`, greedily.
fn coset_basis(space: &BinaryMatrix, sub: &BinaryMatrix) -> Vec<BitVec> {
    let mut acc = sub.clone();
    let mut ech: Echelon = acc.echelon();
    let mut out = Vec::new();
    for r in space.rows() {
        if !reduce_against(&ech, r).is_zero() {
            out.push(r.clone());
            acc.push_row(r.clone());
            ech = acc.echelon();
        }
    }
    out
}
