//! Extended rectangles: leading EC, logical gate, trailing EC.

use super::ec::{knill_coupling, shor_surface, steane_coupling, t3_gate, transversal_cnot, EcGadget, GateKind};
use super::factory::{css_factory, perfect_factory};
use super::encoder::Basis;
use super::reichardt::concat49_factory;
use crate::circuit::{Census, Segment};
use crate::error::{Error, Result};
use crate::stabilizer::catalog::SurfaceLayout;
use crate::stabilizer::{build_code, CodeSpec, StabilizerCode};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EcStyle {
    Steane,
    Shor,
    Knill,
}

impl EcStyle {
    pub fn parse(s: &str) -> Result<EcStyle> {
        match s {
            "steane" => Ok(EcStyle::Steane),
            "shor" => Ok(EcStyle::Shor),
            "knill" => Ok(EcStyle::Knill),
            _ => Err(Error::Parse(format!("unknown EC style {s:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EcStyle::Steane => "steane",
            EcStyle::Shor => "shor",
            EcStyle::Knill => "knill",
        }
    }

    /// Style used when none is requested.
    pub fn default_for(spec: CodeSpec) -> EcStyle {
        match spec {
            CodeSpec::FiveQubit => EcStyle::Knill,
            _ => EcStyle::Steane,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExRecConfig {
    pub spec: CodeSpec,
    pub style: EcStyle,
    pub l: usize,
    pub r: usize,
    /// Noiseless ancillas (coupling stays noisy).
    pub perfect_ancilla: bool,
}

impl ExRecConfig {
    pub fn new(spec: CodeSpec, l: usize, r: usize) -> Self {
        ExRecConfig { spec, style: EcStyle::default_for(spec), l, r, perfect_ancilla: false }
    }
}

impl fmt::Display for ExRecConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} L={} R={}", self.spec.id(), self.style.name(), self.l, self.r)?;
        if self.perfect_ancilla {
            write!(f, " perfect-ancilla")?;
        }
        Ok(())
    }
}

/// A synthesized extended rectangle. Leading and trailing ECs share one
/// gadget description; they are distinct instances at run time.
#[derive(Clone, Debug)]
pub struct ExRec {
    pub config: ExRecConfig,
    pub code: Arc<StabilizerCode>,
    pub gate: GateKind,
    pub ga: Segment,
    pub ec: Arc<EcGadget>,
    /// Exhausted leading-EC ancillas are replaced by perfect ones.
    pub reichardt: bool,
}

impl ExRec {
    pub fn blocks(&self) -> usize {
        self.gate.blocks()
    }
}

pub fn build_exrec(cfg: ExRecConfig) -> Result<ExRec> {
    let code = Arc::new(build_code(cfg.spec)?);
    let n = code.n;
    if cfg.l == 0 {
        return Err(Error::Parameter("L must be at least 1".into()));
    }
    let (gate, ga) = match cfg.spec {
        CodeSpec::FiveQubit => (GateKind::T3, t3_gate(n)?),
        _ => (GateKind::Cnot, transversal_cnot(n)?),
    };
    let ec = match (cfg.style, cfg.spec) {
        (EcStyle::Knill, CodeSpec::FiveQubit) => EcGadget::Knill { segment: knill_coupling(n)? },
        (EcStyle::Knill, _) | (_, CodeSpec::FiveQubit) => {
            return Err(Error::Synthesis("teleported EC is implemented for the five-qubit code only".into()))
        }
        (EcStyle::Shor, CodeSpec::Surface(l)) => {
            let layout = SurfaceLayout::new(l);
            let segment = shor_surface(&layout, l)?;
            EcGadget::Shor { segment, layout: Arc::new(layout), rounds: l }
        }
        (EcStyle::Shor, _) => return Err(Error::Synthesis("Shor EC is implemented for surface codes only".into())),
        (EcStyle::Steane, spec) => {
            let (zero, plus) = if cfg.perfect_ancilla {
                (perfect_factory(n, "perfect-zero")?, perfect_factory(n, "perfect-plus")?)
            } else if spec == CodeSpec::Concat49 {
                (concat49_factory(&code, Basis::Zero, cfg.l, cfg.r)?, concat49_factory(&code, Basis::Plus, cfg.l, cfg.r)?)
            } else {
                (css_factory(spec, &code, Basis::Zero, cfg.l, cfg.r)?, css_factory(spec, &code, Basis::Plus, cfg.l, cfg.r)?)
            };
            EcGadget::Steane { coupling: steane_coupling(n)?, zero: Arc::new(zero), plus: Arc::new(plus) }
        }
    };
    Ok(ExRec { config: cfg, code, gate, ga, ec: Arc::new(ec), reichardt: cfg.spec == CodeSpec::Concat49 })
}

/// CNOT counts for one rectangle (gate plus trailing ECs).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CxCount {
    /// Coupling charged once per ancilla attempt; the convention that
    /// reproduces the published table.
    pub table: usize,
    /// Coupling charged once per EC.
    pub physical: usize,
}

impl CxCount {
    pub fn delta(&self) -> isize {
        self.table as isize - self.physical as isize
    }
}

pub fn count_cx_per_rec(x: &ExRec) -> CxCount {
    let n = x.code.n;
    let ga = x.ga.circuit.census().cnot;
    let b = x.blocks();
    CxCount { table: ga + b * x.ec.cnot_count(n, true), physical: ga + b * x.ec.cnot_count(n, false) }
}

/// Location census of one rectangle with every ancilla attempt counted.
pub fn rectangle_census(x: &ExRec) -> Census {
    let mut c = x.ga.circuit.census();
    let mut ec = Census::default();
    match &*x.ec {
        EcGadget::Steane { coupling, zero, plus } => {
            ec.add(&coupling.circuit.census(), 1);
            for f in [zero, plus] {
                if !f.perfect {
                    ec.add(&factory_census(f), f.attempts);
                }
            }
        }
        EcGadget::Shor { segment, .. } | EcGadget::Knill { segment } => ec.add(&segment.circuit.census(), 1),
    }
    c.add(&ec, x.blocks());
    c
}

fn factory_census(f: &super::factory::Factory) -> Census {
    let mut c = f.attempt.circuit.census();
    for ch in &f.children {
        c.add(&factory_census(ch), ch.attempts);
    }
    c
}
