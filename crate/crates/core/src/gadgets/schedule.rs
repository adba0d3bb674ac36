//! Timestep assignment for encoder CNOTs by bipartite edge colouring.

use crate::galois::BinaryMatrix;
use std::fmt::Write as _;

/// Colour (0-based timestep) of every nonzero entry of A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSchedule {
    pub depth: usize,
    /// (row, column, colour) in row-major order of A.
    pub entries: Vec<(usize, usize, usize)>,
}

impl LatinSchedule {
    pub fn colour(&self, r: usize, c: usize) -> Option<usize> {
        self.entries.iter().find(|e| e.0 == r && e.1 == c).map(|e| e.2)
    }

    /// Checks that no row or column uses a colour twice and that every
    /// colour is below `depth`.
    pub fn is_valid(&self, a: &BinaryMatrix) -> bool {
        let mut row_used = vec![vec![false; self.depth]; a.nrows()];
        let mut col_used = vec![vec![false; self.depth]; a.ncols()];
        let mut count = 0;
        for &(r, c, k) in &self.entries {
            if !a.get(r, c) || k >= self.depth || row_used[r][k] || col_used[c][k] {
                return false;
            }
            row_used[r][k] = true;
            col_used[c][k] = true;
            count += 1;
        }
        count == a.weight()
    }
}

/// Maximum row or column weight of A.
pub fn max_degree(a: &BinaryMatrix) -> usize {
    let rows = a.rows().iter().map(|r| r.weight()).max().unwrap_or(0);
    let cols = (0..a.ncols()).map(|c| a.column(c).weight()).max().unwrap_or(0);
    rows.max(cols)
}

/// Colours the CNOTs of A with exactly `max_degree(A)` timesteps.
///
/// The cyclic assignment (k-th entry of row i gets colour (k + i) mod w) is
/// tried first; it reproduces the textbook completion for the [7,3,4]
/// example. Otherwise alternating-path edge colouring is used.
pub fn latin_schedule(a: &BinaryMatrix) -> LatinSchedule {
    let w = max_degree(a);
    let mut entries = Vec::new();
    for (i, row) in a.rows().iter().enumerate() {
        for (k, c) in row.ones_iter().enumerate() {
            entries.push((i, c, (k + i) % w.max(1)));
        }
    }
    let cyclic = LatinSchedule { depth: w, entries };
    if cyclic.is_valid(a) {
        return cyclic;
    }
    edge_colouring(a, w)
}

fn edge_colouring(a: &BinaryMatrix, w: usize) -> LatinSchedule {
    let (nr, nc) = (a.nrows(), a.ncols());
    // at[v][k] = neighbour joined by colour k; vertices 0..nr are rows, nr.. are columns
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; w]; nr + nc];
    for r in 0..nr {
        for c in a.row(r).ones_iter() {
            let (u, v) = (r, nr + c);
            let free = |x: usize, at: &Vec<Vec<Option<usize>>>| (0..w).find(|&k| at[x][k].is_none()).expect("degree bound");
            let alpha = free(u, &at);
            let beta = free(v, &at);
            if at[v][alpha].is_some() {
                // flip the alpha/beta path starting at v
                let mut path = vec![v];
                let mut x = v;
                let mut k = alpha;
                while let Some(y) = at[x][k] {
                    path.push(y);
                    x = y;
                    k = if k == alpha { beta } else { alpha };
                }
                let mut edges = Vec::new();
                let mut k = alpha;
                for pair in path.windows(2) {
                    edges.push((pair[0], pair[1], k));
                    k = if k == alpha { beta } else { alpha };
                }
                for &(x, y, k) in &edges {
                    at[x][k] = None;
                    at[y][k] = None;
                }
                for &(x, y, k) in &edges {
                    let nk = if k == alpha { beta } else { alpha };
                    at[x][nk] = Some(y);
                    at[y][nk] = Some(x);
                }
            }
            at[u][alpha] = Some(v);
            at[v][alpha] = Some(u);
        }
    }
    let mut entries = Vec::new();
    for r in 0..nr {
        for c in a.row(r).ones_iter() {
            let k = (0..w).find(|&k| at[r][k] == Some(nr + c)).expect("coloured edge");
            entries.push((r, c, k));
        }
    }
    LatinSchedule { depth: w, entries }
}

/// CNOT-only listing in standardized labels: control r is qubit r, target
/// column c of A is qubit rows + c. Times and qubits are 1-based.
pub fn latin_listing(a: &BinaryMatrix, s: &LatinSchedule) -> String {
    let mut out = String::new();
    for k in 0..s.depth {
        let _ = writeln!(out, "# time {}", k + 1);
        let mut layer: Vec<(usize, usize)> = s.entries.iter().filter(|e| e.2 == k).map(|e| (e.0, e.1)).collect();
        layer.sort();
        for (r, c) in layer {
            let _ = writeln!(out, "cnot {},{}", r + 1, a.nrows() + c + 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row_is_sequential() {
        let a = BinaryMatrix::from_strs(&["11111"]).unwrap();
        let s = latin_schedule(&a);
        assert_eq!(s.depth, 5);
        assert!(s.is_valid(&a));
    }

    #[test]
    fn fallback_colouring_is_valid() {
        let a = BinaryMatrix::from_strs(&["110", "011", "101", "100"]).unwrap();
        let s = latin_schedule(&a);
        assert!(s.is_valid(&a));
        assert_eq!(s.depth, 3);
    }
}
