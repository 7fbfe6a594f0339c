//! Canonical labeling of small graphs.
//!
//! The key is the sorted degree sequence followed by the lexicographically
//! least non-adjacency encoding over all orderings with non-increasing
//! degrees. Vertices that are twins of an earlier unplaced candidate are
//! skipped, which makes complete and near-complete graphs cheap.

use super::{bits, Graph};

/// Graphs above this size get an identity-labeled key and should not be
/// cached.
pub const CANON_MAX_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonKey {
    pub bytes: Vec<u8>,
    /// False when the graph was too large and `bytes` encodes the identity
    /// labeling, which is not an isomorphism invariant.
    pub canonical: bool,
}

pub fn canonical_key(g: &Graph) -> CanonKey {
    let n = g.n_vertices();
    if n > CANON_MAX_VERTICES {
        let order: Vec<usize> = (0..n).collect();
        let mut bytes = vec![0xff, n as u8];
        bytes.extend(encode_rows(&rows_for(g, &order), 8));
        return CanonKey { bytes, canonical: false };
    }
    let mut degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let mut search = Search { g, degs: &degs, order: Vec::with_capacity(n), rows: Vec::with_capacity(n), best: None };
    search.run(g.full_mask());
    let best = search.best.unwrap_or_default();
    let mut bytes = vec![n as u8];
    bytes.extend(degs.iter().map(|&d| d as u8));
    bytes.extend(encode_rows(&best, 2));
    CanonKey { bytes, canonical: true }
}

fn rows_for(g: &Graph, order: &[usize]) -> Vec<u64> {
    (0..order.len()).map(|k| row(g, order, k, order[k])).collect()
}

/// Bit `k-1-j` is set when `v` is not adjacent to `order[j]`.
fn row(g: &Graph, order: &[usize], k: usize, v: usize) -> u64 {
    let mut r = 0u64;
    for (j, &w) in order[..k].iter().enumerate() {
        if !g.has_edge(v, w) {
            r |= 1 << (k - 1 - j);
        }
    }
    r
}

fn encode_rows(rows: &[u64], width: usize) -> Vec<u8> {
    rows.iter().flat_map(|r| r.to_le_bytes()[..width].to_vec()).collect()
}

struct Search<'a> {
    g: &'a Graph,
    degs: &'a [usize],
    order: Vec<usize>,
    rows: Vec<u64>,
    best: Option<Vec<u64>>,
}

impl Search<'_> {
    fn run(&mut self, unplaced: u64) {
        let k = self.order.len();
        if unplaced == 0 {
            if self.best.as_ref().is_none_or(|b| self.rows < *b) {
                self.best = Some(self.rows.clone());
            }
            return;
        }
        let want = self.degs[k];
        let mut tried: u64 = 0;
        for v in bits(unplaced) {
            if self.g.degree(v) != want {
                continue;
            }
            let is_twin = bits(tried).any(|u| twins(self.g, u, v));
            if is_twin {
                continue;
            }
            tried |= 1 << v;
            let r = row(self.g, &self.order, k, v);
            if let Some(best) = &self.best {
                // prefix rows[..k] is <= best[..k]; prune if this row makes it worse
                if self.rows[..] == best[..k] && r > best[k] {
                    continue;
                }
            }
            self.order.push(v);
            self.rows.push(r);
            self.run(unplaced & !(1 << v));
            self.rows.pop();
            self.order.pop();
        }
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let mask = !((1u64 << u) | (1u64 << v));
    g.neighbors(u) & mask == g.neighbors(v) & mask
}
