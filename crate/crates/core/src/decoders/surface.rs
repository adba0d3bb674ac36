//! Minimum-weight perfect matching for the planar surface code.
//!
//! Stars sit at (even, odd) sites and see Z errors; their open boundaries
//! are the left and right edges. Plaquettes at (odd, even) are the
//! transpose and match to the top and bottom edges. Each defect owns a
//! boundary copy and boundary copies pair among themselves at no cost.

use super::CssDecoder;
use crate::bits::BitVec;
use crate::stabilizer::catalog::SurfaceLayout;
use mwmatching::{Matching, SENTINEL};

/// Keeps matching weights positive.
const BIG: i32 = 1 << 20;

#[derive(Clone, Debug)]
pub struct SurfaceDecoder {
    pub layout: SurfaceLayout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckType {
    /// X checks, correcting Z errors.
    Star,
    /// Z checks, correcting X errors.
    Plaquette,
}

/// Node of the matching graph: a syndrome change at a round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Defect {
    pub round: usize,
    pub check: usize,
}

impl SurfaceDecoder {
    pub fn new(l: usize) -> Self {
        SurfaceDecoder { layout: SurfaceLayout::new(l) }
    }

    /// Star-frame coordinates of a check.
    fn site(&self, ty: CheckType, check: usize) -> (usize, usize) {
        match ty {
            CheckType::Star => self.layout.stars[check],
            CheckType::Plaquette => {
                let (i, j) = self.layout.plaquettes[check];
                (j, i)
            }
        }
    }

    fn data(&self, ty: CheckType, (i, j): (usize, usize)) -> usize {
        let (i, j) = match ty {
            CheckType::Star => (i, j),
            CheckType::Plaquette => (j, i),
        };
        self.layout.qubit(i as isize, j as isize).expect("data site")
    }

    pub fn distance(&self, ty: CheckType, a: usize, b: usize) -> usize {
        let (i1, j1) = self.site(ty, a);
        let (i2, j2) = self.site(ty, b);
        i1.abs_diff(i2) / 2 + j1.abs_diff(j2) / 2
    }

    pub fn boundary_distance(&self, ty: CheckType, a: usize) -> usize {
        let (_, j) = self.site(ty, a);
        ((j + 1) / 2).min((self.layout.size - j) / 2)
    }

    /// Flips the data qubits on a shortest path between two checks.
    fn path(&self, ty: CheckType, a: usize, b: usize, out: &mut BitVec) {
        let (i1, j1) = self.site(ty, a);
        let (i2, j2) = self.site(ty, b);
        for i in (i1.min(i2) + 1..i1.max(i2)).step_by(2) {
            out.flip(self.data(ty, (i, j1)));
        }
        for j in (j1.min(j2) + 1..j1.max(j2)).step_by(2) {
            out.flip(self.data(ty, (i2, j)));
        }
    }

    fn path_to_boundary(&self, ty: CheckType, a: usize, out: &mut BitVec) {
        let (i, j) = self.site(ty, a);
        let size = self.layout.size;
        if (j + 1) / 2 <= (size - j) / 2 {
            for jj in (0..j).step_by(2) {
                out.flip(self.data(ty, (i, jj)));
            }
        } else {
            for jj in (j + 1..size).step_by(2) {
                out.flip(self.data(ty, (i, jj)));
            }
        }
    }

    /// Cost of closing a defect on a boundary, and whether that boundary is
    /// the spatial one. With `rounds` set, defects may also close on the
    /// time boundary after the last round.
    fn boundary(&self, ty: CheckType, d: Defect, rounds: Option<usize>) -> (usize, bool) {
        let space = self.boundary_distance(ty, d.check);
        match rounds {
            Some(r) if r - 1 - d.round <= space => (r - 1 - d.round, false),
            _ => (space, true),
        }
    }

    /// Matches defects in space-time. Edge weights are spatial distance plus
    /// round difference. `None` marks a defect closed on a boundary.
    pub fn match_defects(&self, ty: CheckType, defects: &[Defect], rounds: Option<usize>) -> Vec<(usize, Option<usize>)> {
        let k = defects.len();
        if k == 0 {
            return Vec::new();
        }
        let mut edges = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in a + 1..k {
                let w = self.distance(ty, defects[a].check, defects[b].check) + defects[a].round.abs_diff(defects[b].round);
                edges.push((a, b, BIG - w as i32));
                edges.push((k + a, k + b, BIG));
            }
            edges.push((a, k + a, BIG - self.boundary(ty, defects[a], rounds).0 as i32));
        }
        let mate = Matching::new(edges).max_cardinality().solve();
        let mut pairs = Vec::new();
        for a in 0..k {
            let m = mate[a];
            debug_assert_ne!(m, SENTINEL);
            if m == k + a {
                pairs.push((a, None));
            } else if m < k && a < m {
                pairs.push((a, Some(m)));
            }
        }
        pairs
    }

    /// Correction for a history of `rounds` rounds of detectors; only
    /// spatial paths act on data. Defects left open after the last round are
    /// left to the next correction.
    pub fn correct_history(&self, ty: CheckType, defects: &[Defect], rounds: Option<usize>) -> BitVec {
        let mut out = BitVec::zeros(self.layout.n());
        for (a, b) in self.match_defects(ty, defects, rounds) {
            match b {
                Some(b) => self.path(ty, defects[a].check, defects[b].check, &mut out),
                None if self.boundary(ty, defects[a], rounds).1 => self.path_to_boundary(ty, defects[a].check, &mut out),
                None => {}
            }
        }
        out
    }

    fn correct(&self, ty: CheckType, s: &BitVec) -> BitVec {
        let defects: Vec<Defect> = s.ones_iter().map(|check| Defect { round: 0, check }).collect();
        self.correct_history(ty, &defects, None)
    }
}

impl CssDecoder for SurfaceDecoder {
    fn name(&self) -> &'static str {
        "matching"
    }

    fn correct_x(&self, syndrome: &BitVec) -> BitVec {
        self.correct(CheckType::Plaquette, syndrome)
    }

    fn correct_z(&self, syndrome: &BitVec) -> BitVec {
        self.correct(CheckType::Star, syndrome)
    }
}
