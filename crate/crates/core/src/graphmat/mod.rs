//! Simple graphs and their graphic matroids.
//!
//! Flats of a graphic matroid are handled as vertex partitions whose blocks
//! induce connected subgraphs. Vertex sets are `u64` bitmasks, so graphs are
//! limited to 64 vertices.

mod canon;

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyseries::{IntPoly, Poly};

pub use canon::{canonical_key, CanonKey, CANON_MAX_VERTICES};

pub const MAX_VERTICES: usize = 64;

/// Finite simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterates over the set bits of a mask, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.adj[u] = g.full_mask() & !bit(u);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1).expect("cycle edge is valid");
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!("graph has {n} vertices, at most {MAX_VERTICES} supported")));
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidInput(format!("edge ({u},{v}) out of range for {} vertices", self.n)));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("loop at vertex {u}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| bits(self.adj[u] & !(bit(u + 1).wrapping_sub(1))).map(move |v| (u, v)))
            .filter(|(u, v)| u < v)
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Whether the subgraph induced on `mask` is connected (true for the
    /// empty mask).
    pub fn is_connected_on(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let start = mask & mask.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen == mask
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(self.full_mask())
    }

    /// Connected components as vertex masks, ordered by least vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.full_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut seen = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= !seen;
                seen |= next;
                frontier = next;
            }
            out.push(seen);
            left &= !seen;
        }
        out
    }

    /// Rank of the graphic matroid: vertices minus components.
    pub fn rank(&self) -> usize {
        self.n - self.components().len()
    }

    /// Induced subgraph on `mask`, relabeled in increasing vertex order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = bits(mask).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for w in bits(self.adj[v] & mask) {
                g.adj[i] |= bit(pos[w]);
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("relabel keeps edges valid");
        }
        g
    }

    /// Reads the JSON form `{"n": 3, "edges": [[0,1],[1,2]]}` or plain text
    /// with one `u v` pair per line. Text input may start with an `n N` line
    /// to declare isolated trailing vertices; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let file: GraphFile =
                serde_json::from_str(trimmed).map_err(|e| Error::InvalidInput(format!("graph JSON: {e}")))?;
            return Graph::from_edges(file.n, file.edges.into_iter().map(|[u, v]| (u, v)));
        }
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("line {}: expected a vertex, got {s:?}", lineno + 1)))
            };
            match fields.as_slice() {
                ["n", count] => declared = Some(parse(count)?),
                [u, v] => edges.push((parse(u)?, parse(v)?)),
                _ => return Err(Error::InvalidInput(format!("line {}: expected \"u v\" or \"n N\"", lineno + 1))),
            }
        }
        let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = declared.unwrap_or(implied);
        if n < implied {
            return Err(Error::InvalidInput(format!("declared n = {n} but an edge uses vertex {}", implied - 1)));
        }
        Graph::from_edges(n, edges)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile { n: self.n, edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// On-disk graph format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// A set partition of the vertices, blocks sorted by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = 0u64;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            b.sort_unstable();
            for &v in b.iter() {
                if v >= MAX_VERTICES || seen & bit(v) != 0 {
                    return Err(Error::InvalidInput(format!("vertex {v} repeated or out of range")));
                }
                seen |= bit(v);
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { blocks })
    }

    /// Every vertex in its own block.
    pub fn finest(n: usize) -> Self {
        SetPartition { blocks: (0..n).map(|v| vec![v]).collect() }
    }

    pub(crate) fn from_masks(mut masks: Vec<u64>) -> Self {
        masks.sort_unstable_by_key(|m| m.trailing_zeros());
        SetPartition { blocks: masks.into_iter().map(|m| bits(m).collect()).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn masks(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.iter().fold(0, |m, &v| m | bit(v))).collect()
    }

    fn covers(&self, g: &Graph) -> bool {
        self.masks().iter().fold(0, |a, m| a | m) == g.full_mask()
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{{")?;
            for (i, v) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Adds `n` new vertices adjacent to everything, each other included.
pub fn cone_extend(gamma: &Graph, n: usize) -> Graph {
    let total = gamma.n + n;
    assert!(total <= MAX_VERTICES, "cone graph exceeds {MAX_VERTICES} vertices");
    let mut g = Graph::empty(total);
    for (u, v) in gamma.edges() {
        g.add_edge(u, v).expect("original edge");
    }
    let all = g.full_mask();
    for e in gamma.n..total {
        g.adj[e] = all & !bit(e);
        for u in 0..total {
            if u != e {
                g.adj[u] |= bit(e);
            }
        }
    }
    g
}

/// Partitions of the vertex set into blocks inducing connected subgraphs
/// (the flats of the graphic matroid), as block masks.
///
/// Blocks are generated by fixing the least unassigned vertex and choosing
/// the rest of its block among the remaining vertices, so the output order
/// is deterministic.
pub fn connected_partition_masks(gamma: &Graph, num_blocks: Option<usize>) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(g: &Graph, left: u64, want: Option<usize>, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            if want.is_none_or(|k| k == cur.len()) {
                out.push(cur.clone());
            }
            return;
        }
        if let Some(k) = want {
            if cur.len() >= k || (left.count_ones() as usize) < k - cur.len() {
                return;
            }
        }
        let low = left & left.wrapping_neg();
        let others = left & !low;
        // Enumerate subsets of `others` in increasing order.
        let mut sub: u64 = 0;
        loop {
            let block = low | sub;
            if g.is_connected_on(block) {
                cur.push(block);
                rec(g, left & !block, want, cur, out);
                cur.pop();
            }
            if sub == others {
                break;
            }
            sub = (sub.wrapping_sub(others)) & others;
        }
    }
    rec(gamma, gamma.full_mask(), num_blocks, &mut cur, &mut out);
    out
}

pub fn connected_partitions(gamma: &Graph, num_blocks: Option<usize>) -> Vec<SetPartition> {
    connected_partition_masks(gamma, num_blocks).into_iter().map(SetPartition::from_masks).collect()
}

fn check_flat(gamma: &Graph, pi: &SetPartition) -> Result<()> {
    if !pi.covers(gamma) {
        return Err(Error::InvalidInput(format!("{pi:?} is not a partition of the {} vertices", gamma.n)));
    }
    for (b, m) in pi.blocks.iter().zip(pi.masks()) {
        if !gamma.is_connected_on(m) {
            return Err(Error::NotAFlat(b.clone()));
        }
    }
    Ok(())
}

/// The induced subgraphs on the blocks of `pi`.
pub fn localize(gamma: &Graph, pi: &SetPartition) -> Result<Vec<Graph>> {
    check_flat(gamma, pi)?;
    Ok(pi.masks().into_iter().map(|m| gamma.induced(m)).collect())
}

/// The simple quotient graph on the blocks of `pi`.
pub fn contract(gamma: &Graph, pi: &SetPartition) -> Result<Graph> {
    check_flat(gamma, pi)?;
    Ok(quotient(gamma, &pi.masks()))
}

/// Quotient by block masks, blocks numbered in the given order.
pub(crate) fn quotient(gamma: &Graph, blocks: &[u64]) -> Graph {
    let mut q = Graph::empty(blocks.len());
    for (i, &a) in blocks.iter().enumerate() {
        let mut reach = 0u64;
        for v in bits(a) {
            reach |= gamma.adj[v];
        }
        for (j, &b) in blocks.iter().enumerate() {
            if i != j && reach & b != 0 {
                q.adj[i] |= bit(j);
            }
        }
    }
    q
}

/// Reduced characteristic polynomial of the graphic matroid: the chromatic
/// polynomial divided by `t^{#components}`. Its degree is the rank.
pub fn char_poly(gamma: &Graph) -> Poly {
    char_poly_int(gamma).to_rational()
}

pub(crate) fn char_poly_int(gamma: &Graph) -> IntPoly {
    let mut acc = IntPoly::one();
    for comp in gamma.components() {
        acc = &acc * &connected_char_poly(&gamma.induced(comp));
    }
    acc
}

fn connected_char_poly(g: &Graph) -> IntPoly {
    if g.edge_count() == g.n * g.n.saturating_sub(1) / 2 {
        return IntPoly::braid_char_poly(g.n);
    }
    let key = canonical_key(g);
    static MEMO: OnceLock<RwLock<HashMap<Vec<u8>, IntPoly>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| RwLock::new(HashMap::new()));
    if key.canonical {
        if let Some(p) = memo.read().expect("char poly memo poisoned").get(&key.bytes) {
            return p.clone();
        }
    }
    let p = chromatic_over_t(g);
    if key.canonical {
        memo.write().expect("char poly memo poisoned").insert(key.bytes, p.clone());
    }
    p
}

/// Chromatic polynomial of a connected graph divided by `t`, from the
/// counts `a_k` of partitions into `k` independent sets:
/// `P(t) = Σ_k a_k t(t-1)…(t-k+1)`.
fn chromatic_over_t(g: &Graph) -> IntPoly {
    let n = g.n;
    if n == 0 {
        return IntPoly::one();
    }
    assert!(n <= 24, "independent-set partition count is exponential; {n} vertices is too many");
    let size = 1usize << n;
    let independent: Vec<bool> = (0..size as u64).map(|s| bits(s).all(|v| g.adj[v] & s == 0)).collect();
    // ways[k][S]: partitions of S into k independent sets.
    let mut ways = vec![vec![BigUint::zero(); size]; n + 1];
    ways[0][0] = BigUint::from(1u32);
    for s in 1..size as u64 {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if independent[block as usize] {
                let remaining = (s & !block) as usize;
                for k in 1..=n {
                    if !ways[k - 1][remaining].is_zero() {
                        let v = ways[k - 1][remaining].clone();
                        ways[k][s as usize] += v;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let full = size - 1;
    let mut p = IntPoly::zero();
    let mut falling = IntPoly::one();
    for (k, row) in ways.iter().enumerate() {
        if k > 0 {
            falling = &falling * &IntPoly::linear_root(BigInt::from(k - 1));
        }
        if !row[full].is_zero() {
            p += &falling.scale(&BigInt::from(row[full].clone()));
        }
    }
    // divide by t: the constant term vanishes for n >= 1
    IntPoly::new(p.coeffs()[1..].to_vec())
}

/// `dim H^i(Conf(Γ))`: the absolute value of the coefficient of
/// `t^{rank - i}` in the reduced characteristic polynomial.
pub fn conf_betti(gamma: &Graph, i: usize) -> BigUint {
    let p = char_poly_int(gamma);
    let r = gamma.rank();
    if i > r {
        return BigUint::zero();
    }
    p.coeff(r - i).abs().to_biguint().expect("absolute value is nonnegative")
}

/// Poincaré polynomial `Σ_i dim H^i(Conf(Γ)) t^i`.
pub fn conf_poincare(gamma: &Graph) -> IntPoly {
    let p = char_poly_int(gamma);
    let r = gamma.rank();
    IntPoly::new((0..=r).map(|i| p.coeff(r - i).abs()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{bell, stirling1_unsigned};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    /// Deletion-contraction for the full chromatic polynomial.
    fn chromatic_dc(g: &Graph) -> IntPoly {
        match g.edges().first() {
            None => IntPoly::monomial(BigInt::from(1), g.n),
            Some(&(u, v)) => {
                let mut del = g.clone();
                del.adj[u] &= !bit(v);
                del.adj[v] &= !bit(u);
                let blocks: Vec<u64> =
                    (0..g.n).filter(|&w| w != v).map(|w| if w == u { bit(u) | bit(v) } else { bit(w) }).collect();
                let con = quotient(g, &blocks);
                &chromatic_dc(&del) - &chromatic_dc(&con)
            }
        }
    }

    fn rat_ints(v: &[i64]) -> Poly {
        Poly::from_ints(v.iter().copied())
    }

    #[test]
    fn cone_examples() {
        assert_eq!(cone_extend(&Graph::empty(0), 5), Graph::complete(5));
        assert_eq!(cone_extend(&Graph::empty(1), 3), Graph::complete(4));
        assert_eq!(cone_extend(&Graph::path(2), 2), Graph::complete(4));
        let g = cone_extend(&Graph::empty(2), 1);
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn connected_partition_examples() {
        assert_eq!(connected_partitions(&Graph::complete(3), None).len(), 5);
        let path = connected_partitions(&Graph::path(3), None);
        assert_eq!(path.len(), 4);
        assert!(!path.contains(&SetPartition::new(vec![vec![0, 2], vec![1]]).unwrap()));
        assert_eq!(connected_partitions(&Graph::empty(1), None).len(), 1);
        for n in 1..=8 {
            assert_eq!(BigUint::from(connected_partitions(&Graph::complete(n), None).len()), bell(n));
        }
        assert_eq!(connected_partitions(&Graph::complete(4), Some(2)).len(), 7);
    }

    #[test]
    fn char_poly_examples() {
        for n in 1..=7 {
            let g = Graph::complete(n);
            let expected = IntPoly::braid_char_poly(n);
            assert_eq!(char_poly_int(&g), expected);
            // generic path and deletion-contraction agree too
            let dc = chromatic_dc(&g);
            assert_eq!(IntPoly::new(dc.coeffs()[1..].to_vec()), expected);
            assert_eq!(chromatic_over_t(&g), expected);
            for q in 0..=10i64 {
                let count: i64 = (0..n as i64).map(|k| q - k).product();
                assert_eq!(dc.eval(&BigInt::from(q)), BigInt::from(count));
            }
        }
        assert_eq!(char_poly(&Graph::empty(1)), Poly::one());
        // C4: ((t-1)^4 + (t-1)) / t = (t-1)(t^2 - 3t + 3)
        assert_eq!(char_poly(&Graph::cycle(4)), &rat_ints(&[-1, 1]) * &rat_ints(&[3, -3, 1]));
    }

    #[test]
    fn char_poly_matches_deletion_contraction_on_random_graphs() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rand::Rng::gen_range(&mut rng, 1..=7);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rand::Rng::gen_bool(&mut rng, 0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let dc = chromatic_dc(&g);
            let c = g.components().len();
            let expected = IntPoly::new(dc.coeffs()[c..].to_vec());
            assert_eq!(char_poly_int(&g), expected, "{g:?}");
            assert_eq!(char_poly_int(&g).degree(), Some(g.rank()));
        }
    }

    #[test]
    fn localize_and_contract() {
        let k4 = Graph::complete(4);
        let pi = SetPartition::new(vec![vec![0, 1], vec![2], vec![3]]).unwrap();
        assert_eq!(contract(&k4, &pi).unwrap(), Graph::complete(3));
        let g = Graph::cycle(5);
        assert_eq!(contract(&g, &SetPartition::finest(5)).unwrap(), g);
        let k5 = Graph::complete(5);
        let pi = SetPartition::new(vec![vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(localize(&k5, &pi).unwrap(), vec![Graph::complete(3), Graph::complete(2)]);
        let bad = SetPartition::new(vec![vec![0, 2], vec![1]]).unwrap();
        assert_eq!(localize(&Graph::path(3), &bad), Err(Error::NotAFlat(vec![0, 2])));
        assert!(contract(&Graph::path(3), &bad).is_err());
    }

    #[test]
    fn rank_additivity_over_flats() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..25 {
            let n = rand::Rng::gen_range(&mut rng, 1..=6);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rand::Rng::gen_bool(&mut rng, 0.6) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            for pi in connected_partitions(&g, None) {
                let blocks: usize = localize(&g, &pi).unwrap().iter().map(Graph::rank).sum();
                assert_eq!(g.rank(), contract(&g, &pi).unwrap().rank() + blocks);
            }
        }
    }

    #[test]
    fn conf_betti_values() {
        let k4 = Graph::complete(4);
        assert_eq!(conf_betti(&k4, 2), BigUint::from(11u32));
        assert_eq!(conf_betti(&k4, 3), BigUint::from(6u32));
        assert_eq!(conf_betti(&Graph::cycle(5), 0), BigUint::from(1u32));
        for n in 1..=8 {
            let g = Graph::complete(n);
            // Π_{k=1}^{n-1} (1 + k t)
            let mut expected = IntPoly::one();
            for k in 1..n {
                expected = &expected * &IntPoly::new(vec![BigInt::from(1), BigInt::from(k)]);
            }
            assert_eq!(conf_poincare(&g), expected);
            for i in 0..n {
                assert_eq!(conf_betti(&g, i), stirling1_unsigned(n, n - i));
            }
        }
    }

    #[test]
    fn graph_file_formats() {
        let g = Graph::parse(r#"{"n": 3, "edges": [[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g, Graph::path(3));
        let g = Graph::parse("0 1\n1 2\n# comment\n\n").unwrap();
        assert_eq!(g, Graph::path(3));
        let g = Graph::parse("n 1\n").unwrap();
        assert_eq!(g, Graph::empty(1));
        assert!(Graph::parse("0 0\n").is_err());
        assert!(Graph::parse(r#"{"n": 2, "edges": [[0,5]]}"#).is_err());
        assert!(Graph::parse("0 x\n").is_err());
        let json = serde_json::to_string(&Graph::cycle(4).to_file()).unwrap();
        assert_eq!(Graph::parse(&json).unwrap(), Graph::cycle(4));
    }

    #[test]
    fn canonical_key_invariance() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let mut graphs = vec![Graph::cycle(4), Graph::cycle(7), Graph::star(5), Graph::complete(6), Graph::path(8)];
        for _ in 0..6 {
            let n = rand::Rng::gen_range(&mut rng, 2..=8);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rand::Rng::gen_bool(&mut rng, 0.45) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            graphs.push(g);
        }
        for g in graphs {
            let key = canonical_key(&g);
            assert!(key.canonical);
            let mut perm: Vec<usize> = (0..g.n_vertices()).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                assert_eq!(canonical_key(&g.relabel(&perm)), key, "{g:?}");
            }
        }
    }

    #[test]
    fn canonical_key_separates() {
        let k4_minus = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_ne!(canonical_key(&Graph::complete(4)), canonical_key(&k4_minus));
        assert_ne!(canonical_key(&Graph::path(4)), canonical_key(&Graph::star(3)));
        // same degree sequence, not isomorphic: C6 vs two triangles
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_key(&Graph::cycle(6)), canonical_key(&two_triangles));
    }

    /// Exhaustive: on 5 vertices, keys agree exactly when graphs are
    /// isomorphic (checked by trying all 120 relabelings).
    #[test]
    fn canonical_key_is_complete_invariant_on_five_vertices() {
        let n = 5;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let graphs: Vec<Graph> = (0..1u32 << pairs.len())
            .step_by(7)
            .map(|m| {
                Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e))
                    .unwrap()
            })
            .collect();
        let perms = {
            let mut out = Vec::new();
            fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
                if cur.len() == used.len() {
                    out.push(cur.clone());
                    return;
                }
                for v in 0..used.len() {
                    if !used[v] {
                        used[v] = true;
                        cur.push(v);
                        rec(cur, used, out);
                        cur.pop();
                        used[v] = false;
                    }
                }
            }
            rec(&mut Vec::new(), &mut [false; 5], &mut out);
            out
        };
        for (i, a) in graphs.iter().enumerate() {
            for b in graphs.iter().skip(i + 1) {
                let iso = perms.iter().any(|p| &a.relabel(p) == b);
                assert_eq!(iso, canonical_key(a) == canonical_key(b), "{a:?} {b:?}");
            }
        }
    }
}
