//! Syndrome decoders for the catalog codes.
//!
//! CSS decoders map the syndrome of one check matrix to a correction of the
//! matching error type. Every decoder returns to the code space: when no
//! bounded-weight explanation is found the fixed preimage of the syndrome is
//! used.

pub mod bacon_shor;
pub mod concat;
pub mod cyclic;
pub mod lookup;
pub mod nonbinary;
pub mod surface;
pub mod verify;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::galois::BinaryMatrix;
use crate::stabilizer::{CodeSpec, DecoderId, Pauli, StabilizerCode};
use std::path::PathBuf;
use std::sync::Arc;

pub use verify::{verify_decoder, VerifyMode, VerifyReport};

/// Full-syndrome decoder; bit i of the syndrome belongs to stabilizer i.
pub trait Decoder: Send + Sync {
    fn name(&self) -> &'static str;
    fn decode(&self, syndrome: &BitVec) -> Pauli;
}

pub trait CssDecoder: Send + Sync {
    fn name(&self) -> &'static str;
    /// X-error correction from the syndrome of the Z checks.
    fn correct_x(&self, syndrome: &BitVec) -> BitVec;
    /// Z-error correction from the syndrome of the X checks.
    fn correct_z(&self, syndrome: &BitVec) -> BitVec;
}

/// Adapts a CSS decoder to the full stabilizer syndrome (X checks first).
pub struct CssPair {
    n: usize,
    nx: usize,
    nz: usize,
    pub inner: Arc<dyn CssDecoder>,
}

impl CssPair {
    pub fn new(code: &StabilizerCode, inner: Arc<dyn CssDecoder>) -> Result<Self> {
        let css = code.css()?;
        Ok(CssPair { n: code.n, nx: css.hx.nrows(), nz: css.hz.nrows(), inner })
    }
}

impl Decoder for CssPair {
    fn name(&self) -> &'static str {
        self.inner.name()
    }

    fn decode(&self, syndrome: &BitVec) -> Pauli {
        let sx = syndrome.slice(0, self.nx);
        let sz = syndrome.slice(self.nx, self.nz);
        let p = Pauli::from_parts(self.inner.correct_x(&sz), self.inner.correct_z(&sx));
        debug_assert_eq!(p.n(), self.n);
        p
    }
}

/// Fixed solution of H·e = s supported on pivot columns of H.
#[derive(Clone, Debug)]
pub struct Preimage {
    n: usize,
    pivots: Vec<usize>,
    inverse: BinaryMatrix,
}

impl Preimage {
    pub fn new(h: &BinaryMatrix) -> Result<Self> {
        let e = h.echelon();
        if e.pivots.len() != h.nrows() {
            return Err(Error::Rank { rows: h.nrows(), rank: e.pivots.len() });
        }
        let r = h.nrows();
        let mut sub = BinaryMatrix::zeros(r, r);
        for (j, &p) in e.pivots.iter().enumerate() {
            for i in 0..r {
                sub.set(i, j, h.get(i, p));
            }
        }
        Ok(Preimage { n: h.ncols(), pivots: e.pivots, inverse: sub.inverse()? })
    }

    pub fn solve(&self, s: &BitVec) -> BitVec {
        let y = self.inverse.mul_vec(s);
        let mut e = BitVec::zeros(self.n);
        for j in y.ones_iter() {
            e.set(self.pivots[j], true);
        }
        e
    }
}

/// Where persisted decoder tables live; `None` builds them in memory.
#[derive(Clone, Debug, Default)]
pub struct DecoderOptions {
    pub table_dir: Option<PathBuf>,
}

/// CSS decoder for a catalog code.
pub fn css_decoder(spec: CodeSpec, code: &StabilizerCode, opts: &DecoderOptions) -> Result<Arc<dyn CssDecoder>> {
    let css = code.css()?;
    Ok(match code.decoder {
        DecoderId::Lookup => Arc::new(lookup::CssLookup::new(&css.hx, &css.hz)?),
        DecoderId::BaconShorMajority => match spec {
            CodeSpec::BaconShor(s) => Arc::new(bacon_shor::BaconShorDecoder::new(s)),
            _ => return Err(Error::Contract("majority decoder needs a Bacon-Shor code".into())),
        },
        DecoderId::SurfaceMatching => match spec {
            CodeSpec::Surface(l) => Arc::new(surface::SurfaceDecoder::new(l)),
            _ => return Err(Error::Contract("matching decoder needs a surface code".into())),
        },
        DecoderId::Meggitt => Arc::new(cyclic::CyclicDecoder::build(code, (code.d - 1) / 2)?),
        DecoderId::QrTable => match &opts.table_dir {
            Some(dir) => Arc::new(cyclic::CyclicDecoder::load(code, &dir.join(cyclic::table_file(&code.id)))?),
            None => Arc::new(cyclic::CyclicDecoder::build(code, (code.d - 1) / 2)?),
        },
        DecoderId::NonbinaryMeggitt => Arc::new(nonbinary::NonbinaryDecoder::new(spec, code)?),
        DecoderId::Concat49 => Arc::new(concat::Concat49Decoder::new(code)?),
        DecoderId::PauliLookup => return Err(Error::Contract(format!("{} is not CSS", code.id))),
    })
}

/// Full-syndrome decoder for a catalog code.
pub fn decoder(spec: CodeSpec, code: &StabilizerCode, opts: &DecoderOptions) -> Result<Arc<dyn Decoder>> {
    if code.decoder == DecoderId::PauliLookup {
        return Ok(Arc::new(lookup::PauliLookup::new(code)?));
    }
    Ok(Arc::new(CssPair::new(code, css_decoder(spec, code, opts)?)?))
}

/// E · D(syndrome(E)).
pub fn residual(code: &StabilizerCode, dec: &dyn Decoder, e: &Pauli) -> Result<Pauli> {
    let c = dec.decode(&code.syndrome(e)?);
    Ok(e.mul(&c))
}
