//! Kazhdan-Lusztig polynomials of braid and graphic matroids.
//!
//! Both paths solve `t^r P(1/t) - P(t) = R(t)`, where `R` sums
//! `χ_{M_F}(t) P_{M^F}(t)` over the flats `F` other than the bottom one.
//! Since `deg P < r/2`, the low coefficients of `P` are read off `R`
//! directly and the rest of `R` is checked against them.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinat::{double_factorial_odd, set_partition_count_by_type, Partition};
use crate::error::{Error, Result};
use crate::graphmat::{
    bits, canonical_key, char_poly_int, cone_extend, connected_partition_masks, quotient, Graph, CANON_MAX_VERTICES,
};
use crate::polyseries::{IntPoly, Poly};

/// Largest vertex count for which `c1_count` enumerates 2-block partitions.
pub const C1_MAX_VERTICES: usize = 26;

/// Memo store of KL polynomials keyed by `braid:n` or `graph:<canonical key>`.
///
/// With a cache directory each record is also written to a JSON file named
/// by the SHA-256 of its key, and misses consult that directory first.
pub struct KlTable {
    mem: RwLock<HashMap<String, IntPoly>>,
    dir: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct Record {
    key: String,
    coeffs: Vec<String>,
}

impl Default for KlTable {
    fn default() -> Self {
        KlTable::new()
    }
}

impl KlTable {
    /// In-memory table.
    pub fn new() -> Self {
        KlTable { mem: RwLock::new(HashMap::new()), dir: None }
    }

    /// Table persisted under `dir`, which is created if missing.
    pub fn with_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        Ok(KlTable { mem: RwLock::new(HashMap::new()), dir: Some(dir) })
    }

    /// Process-wide table; persisted when `KL_CACHE_DIR` is set.
    pub fn global() -> &'static KlTable {
        static GLOBAL: OnceLock<KlTable> = OnceLock::new();
        GLOBAL.get_or_init(|| match std::env::var_os("KL_CACHE_DIR") {
            Some(dir) => KlTable::with_dir(dir).unwrap_or_else(|_| KlTable::new()),
            None => KlTable::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.mem.read().expect("KL table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Stored polynomial for a key, if any.
    pub fn get(&self, key: &str) -> Option<Poly> {
        self.lookup(key).map(|p| p.to_rational())
    }

    fn record_path(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        Some(dir.join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes())))))
    }

    fn lookup(&self, key: &str) -> Option<IntPoly> {
        if let Some(p) = self.mem.read().expect("KL table poisoned").get(key) {
            return Some(p.clone());
        }
        let text = std::fs::read_to_string(self.record_path(key)?).ok()?;
        let rec: Record = serde_json::from_str(&text).ok()?;
        if rec.key != key {
            return None;
        }
        let coeffs: Option<Vec<BigInt>> = rec.coeffs.iter().map(|c| c.parse().ok()).collect();
        let p = IntPoly::new(coeffs?);
        self.mem.write().expect("KL table poisoned").insert(key.to_string(), p.clone());
        Some(p)
    }

    fn store(&self, key: &str, p: &IntPoly) {
        self.mem.write().expect("KL table poisoned").insert(key.to_string(), p.clone());
        if let Some(path) = self.record_path(key) {
            let rec = Record { key: key.to_string(), coeffs: p.coeffs().iter().map(|c| c.to_string()).collect() };
            let json = serde_json::to_string(&rec).expect("record serializes");
            // A failed write only costs a recomputation later.
            let _ = std::fs::write(path, json);
        }
    }

    /// KL polynomial of the braid matroid `M_n`.
    pub fn kl_braid(&self, n: usize) -> Result<Poly> {
        if n == 0 {
            return Err(Error::InvalidInput("braid matroid needs n >= 1".into()));
        }
        Ok(self.braid_int(n).to_rational())
    }

    pub(crate) fn braid_int(&self, n: usize) -> IntPoly {
        let key = format!("braid:{n}");
        if let Some(p) = self.lookup(&key) {
            return p;
        }
        let p = if n <= 3 {
            IntPoly::one()
        } else {
            // all smaller braid polynomials are needed; fill bottom-up to keep recursion shallow
            let lower: Vec<IntPoly> = (0..n).map(|m| if m == 0 { IntPoly::one() } else { self.braid_int(m) }).collect();
            solve(n - 1, &braid_rhs(n, &lower))
        };
        self.store(&key, &p);
        p
    }

    /// KL polynomial of the graphic matroid of a connected graph.
    ///
    /// Complete graphs go through the braid path. Other graphs need at most
    /// `CANON_MAX_VERTICES` vertices.
    pub fn kl_graphic(&self, gamma: &Graph) -> Result<Poly> {
        self.graphic_checked(gamma, true).map(|p| p.to_rational())
    }

    /// Same as `kl_graphic` but never hands complete graphs to the braid
    /// path, so the two can be compared.
    pub fn kl_graphic_generic(&self, gamma: &Graph) -> Result<Poly> {
        self.graphic_checked(gamma, false).map(|p| p.to_rational())
    }

    fn graphic_checked(&self, gamma: &Graph, braid_shortcut: bool) -> Result<IntPoly> {
        if !gamma.is_connected() {
            return Err(Error::Disconnected);
        }
        if !(braid_shortcut && is_complete(gamma)) && gamma.n_vertices() > CANON_MAX_VERTICES {
            return Err(Error::Infeasible(format!(
                "general KL recursion is limited to {CANON_MAX_VERTICES} vertices, got {}",
                gamma.n_vertices()
            )));
        }
        Ok(self.graphic_int(gamma, braid_shortcut))
    }

    pub(crate) fn graphic_int(&self, g: &Graph, braid_shortcut: bool) -> IntPoly {
        let n = g.n_vertices();
        if braid_shortcut && is_complete(g) {
            return self.braid_int(n.max(1));
        }
        if g.rank() <= 2 {
            return IntPoly::one();
        }
        let key = canonical_key(g);
        let cache_key = key.canonical.then(|| {
            let tag = if braid_shortcut { "graph" } else { "graph-generic" };
            format!("{tag}:{}", hex::encode(&key.bytes))
        });
        if let Some(k) = &cache_key {
            if let Some(p) = self.lookup(k) {
                return p;
            }
        }
        let p = solve(g.rank(), &self.graphic_rhs(g, braid_shortcut, false));
        if let Some(k) = &cache_key {
            self.store(k, &p);
        }
        p
    }

    /// `Σ_F χ_{M_F} P_{M^F}` over the flats of a connected graph, with or
    /// without the bottom flat.
    fn graphic_rhs(&self, g: &Graph, braid_shortcut: bool, include_bottom: bool) -> IntPoly {
        let n = g.n_vertices();
        // group flats by quotient isomorphism class to share KL lookups
        let mut groups: HashMap<Vec<u8>, (Graph, IntPoly)> = HashMap::new();
        let mut ungrouped: Vec<(Graph, IntPoly)> = Vec::new();
        for blocks in connected_partition_masks(g, None) {
            if blocks.len() == n && !include_bottom {
                continue;
            }
            let mut chi = IntPoly::one();
            for &b in &blocks {
                if b.count_ones() > 1 {
                    chi = &chi * &char_poly_int(&g.induced(b));
                }
            }
            let q = quotient(g, &blocks);
            let key = canonical_key(&q);
            if key.canonical {
                let entry = groups.entry(key.bytes).or_insert_with(|| (q, IntPoly::zero()));
                entry.1 += &chi;
            } else {
                ungrouped.push((q, chi));
            }
        }
        let mut entries: Vec<(Vec<u8>, (Graph, IntPoly))> = groups.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut rhs = IntPoly::zero();
        for (q, chi) in entries.into_iter().map(|(_, v)| v).chain(ungrouped) {
            let p = if q.n_vertices() == n {
                // bottom flat: only reached for residual checks
                self.graphic_int(g, braid_shortcut)
            } else {
                self.graphic_int(&q, braid_shortcut)
            };
            rhs += &(&chi * &p);
        }
        rhs
    }
}

fn is_complete(g: &Graph) -> bool {
    let n = g.n_vertices();
    g.edge_count() == n * n.saturating_sub(1) / 2
}

/// Solves `t^r P(1/t) - P = rhs` with `deg P < r/2`.
fn solve(r: usize, rhs: &IntPoly) -> IntPoly {
    let p = IntPoly::new((0..r.div_ceil(2)).map(|i| -rhs.coeff(i)).collect());
    let check = &p.reverse(r) - &p;
    assert_eq!(&check, rhs, "KL functional equation has no solution of degree < {r}/2");
    p
}

/// Non-bottom part of the braid right-hand side, summed over partition types.
fn braid_rhs(n: usize, lower: &[IntPoly]) -> IntPoly {
    // by_len[l] = Σ_{λ ⊢ n, ℓ(λ) = l} #flats of type λ · Π_j χ_{λ_j}
    let mut by_len = vec![IntPoly::zero(); n + 1];
    let mut parts = Vec::with_capacity(n);
    let chis: Vec<IntPoly> = (0..=n).map(IntPoly::braid_char_poly).collect();
    fn rec(left: usize, max: usize, parts: &mut Vec<usize>, prod: &IntPoly, chis: &[IntPoly], by_len: &mut [IntPoly]) {
        if left == 0 {
            let lambda = Partition::new(parts.clone()).expect("parts are positive");
            let count = BigInt::from(set_partition_count_by_type(&lambda));
            by_len[parts.len()] += &prod.scale(&count);
            return;
        }
        for k in (1..=max.min(left)).rev() {
            parts.push(k);
            let next = if k == 1 { prod.clone() } else { prod * &chis[k] };
            rec(left - k, k, parts, &next, chis, by_len);
            parts.pop();
        }
    }
    rec(n, n, &mut parts, &IntPoly::one(), &chis, &mut by_len);
    let mut rhs = IntPoly::zero();
    for (l, a) in by_len.iter().enumerate().take(n) {
        if l > 0 && !a.is_zero() {
            rhs += &(a * &lower[l]);
        }
    }
    rhs
}

/// KL polynomial of `M_n` from the global table.
pub fn kl_braid(n: usize) -> Result<Poly> {
    KlTable::global().kl_braid(n)
}

/// KL polynomial of a connected graph from the global table.
pub fn kl_graphic(gamma: &Graph) -> Result<Poly> {
    KlTable::global().kl_graphic(gamma)
}

/// Coefficient of `t^i` in the KL polynomial of `M_n`.
pub fn d_coeff(i: usize, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    if i == 0 {
        return BigUint::one();
    }
    if 2 * i >= n - 1 {
        return BigUint::zero();
    }
    to_nat(KlTable::global().braid_int(n).coeff(i))
}

fn to_nat(c: BigInt) -> BigUint {
    c.to_biguint().expect("KL coefficients are nonnegative")
}

/// Coefficient of `t^i` in the KL polynomial of the cone graph `Γ(n)`.
///
/// For `i = 1` on graphs beyond the canonicalization bound this uses
/// `c1_count`. A disconnected cone (only possible for `n = 0`) is the
/// product over its components.
pub fn d_coeff_graph(gamma: &Graph, i: usize, n: usize) -> Result<BigUint> {
    let g = cone_extend(gamma, n);
    let comps = g.components();
    if comps.len() > 1 {
        let mut prod = IntPoly::one();
        for c in comps {
            prod = &prod * &graph_kl_int(&g.induced(c), i)?;
        }
        return Ok(to_nat(prod.coeff(i)));
    }
    if i == 0 {
        return Ok(BigUint::one());
    }
    if 2 * i >= g.rank() {
        return Ok(BigUint::zero());
    }
    if is_complete(&g) {
        return Ok(d_coeff(i, g.n_vertices()));
    }
    if i == 1 && g.n_vertices() > CANON_MAX_VERTICES {
        return c1_count(&g).map(to_nat);
    }
    Ok(to_nat(graph_kl_int(&g, i)?.coeff(i)))
}

/// KL polynomial of a connected graph, or enough of it to read `t^i`.
fn graph_kl_int(g: &Graph, i: usize) -> Result<IntPoly> {
    if 2 * i >= g.rank() {
        return Ok(IntPoly::one());
    }
    KlTable::global().graphic_checked(g, true)
}

/// Linear KL coefficient of a connected graph: connected 2-block
/// partitions minus edges.
pub fn c1_count(gamma: &Graph) -> Result<BigInt> {
    let n = gamma.n_vertices();
    if !gamma.is_connected() {
        return Err(Error::Disconnected);
    }
    if n > C1_MAX_VERTICES {
        return Err(Error::Infeasible(format!(
            "c1_count enumerates 2^{n} subsets; limit is {C1_MAX_VERTICES} vertices"
        )));
    }
    if n <= 1 {
        return Ok(BigInt::zero());
    }
    let full = gamma.full_mask();
    let rest = full & !1;
    let mut blocks2: u64 = 0;
    let mut sub = rest;
    // S = {0} ∪ sub ranges over proper subsets containing vertex 0
    loop {
        sub = sub.wrapping_sub(1) & rest;
        let s = sub | 1;
        if gamma.is_connected_on(s) && gamma.is_connected_on(full & !s) {
            blocks2 += 1;
        }
        if sub == 0 {
            break;
        }
    }
    Ok(BigInt::from(blocks2) - BigInt::from(gamma.edge_count()))
}

/// Outcome of comparing a top KL coefficient with the cactus count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopReport {
    pub i: usize,
    pub computed: BigUint,
    pub predicted: BigUint,
    pub equal: bool,
}

/// Compares `d_coeff(i-1, 2i)` with `(2i-3)!! (2i-1)^{i-2}`.
pub fn conjecture_top_check(i: usize) -> Result<TopReport> {
    if i == 0 {
        return Err(Error::InvalidInput("conjecture check needs i >= 1".into()));
    }
    let computed = d_coeff(i - 1, 2 * i);
    let power = if i >= 2 {
        BigUint::from(2 * i - 1).pow((i - 2) as u32)
    } else {
        // (2i-1)^{i-2} = 1^{-1}
        BigUint::one()
    };
    let predicted = double_factorial_odd(2 * i as i64 - 3)? * power;
    Ok(TopReport { i, equal: computed == predicted, computed, predicted })
}

/// `t^r P(1/t) - Σ_F χ_{M_F} P_{M^F}` summed over all flats, recomputed from
/// stored polynomials. Zero for every correctly solved instance.
pub fn functional_equation_residual(gamma: &Graph) -> Result<Poly> {
    let table = KlTable::global();
    let p = table.graphic_checked(gamma, false)?;
    let rhs = table.graphic_rhs(gamma, false, true);
    Ok((&p.reverse(gamma.rank()) - &rhs).to_rational())
}

/// The same residual for `M_n`, summing over every set partition.
pub fn braid_residual(n: usize) -> Result<Poly> {
    if n == 0 || n > 10 {
        return Err(Error::InvalidInput(format!(
            "braid residual enumerates all set partitions; need 1 <= n <= 10, got {n}"
        )));
    }
    let table = KlTable::global();
    let g = Graph::complete(n);
    let mut rhs = IntPoly::zero();
    for blocks in connected_partition_masks(&g, None) {
        let mut chi = IntPoly::one();
        for &b in &blocks {
            chi = &chi * &IntPoly::braid_char_poly(bits(b).count());
        }
        rhs += &(&chi * &table.braid_int(blocks.len()));
    }
    Ok((&table.braid_int(n).reverse(n - 1) - &rhs).to_rational())
}
