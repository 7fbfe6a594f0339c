//! Dimensions on the first page of the spectral sequence computing the
//! intersection cohomology of the braid (and cone-graph) reciprocal planes,
//! and the Euler-characteristic identity tying them to KL coefficients.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::{binomial, factorial};
use crate::error::{Error, Result};
use crate::graphmat::{cone_extend, conf_poincare, connected_partition_masks, quotient, Graph};
use crate::klcore::{d_coeff, KlTable};
use crate::polyseries::IntPoly;

/// Vertex bound for `euler_identity_graph`.
pub const GRAPH_EULER_MAX_VERTICES: usize = 10;

/// One nonzero cell `B_i^{p,q}(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Cell {
    pub i: usize,
    pub p: usize,
    pub q: usize,
    pub dim: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub i: usize,
    pub n: usize,
    pub cells: Vec<E1Cell>,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub equal: bool,
}

/// Poincaré polynomial of the configuration space of `b` points.
fn block_poly(b: usize) -> IntPoly {
    (1..b).fold(IntPoly::one(), |acc, k| &acc * &IntPoly::new(vec![BigInt::one(), BigInt::from(k)]))
}

/// `Σ_f Π_k P_{|f^{-1}(k)|}(t)` over ordered surjections `[n] → [blocks]`.
fn comp_poly(blocks: usize, n: usize) -> IntPoly {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize), IntPoly>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = memo.lock().expect("comp memo poisoned").get(&(blocks, n)) {
        return p.clone();
    }
    let p = if blocks == 0 {
        if n == 0 {
            IntPoly::one()
        } else {
            IntPoly::zero()
        }
    } else if n < blocks {
        IntPoly::zero()
    } else {
        // the first block takes b of the n labeled points
        let mut acc = IntPoly::zero();
        for b in 1..=n - (blocks - 1) {
            let rest = comp_poly(blocks - 1, n - b);
            if !rest.is_zero() {
                acc += &(&block_poly(b) * &rest).scale(&BigInt::from(binomial(n, b)));
            }
        }
        acc
    };
    memo.lock().expect("comp memo poisoned").insert((blocks, n), p.clone());
    p
}

/// Dimension of the degree-`j` part of `⊕_{f:[n]↠[p+1]} ⊗_k H(Conf(f^{-1}(k)))`.
pub fn comp_dim(p: usize, j: usize, n: usize) -> BigUint {
    comp_poly(p + 1, n).coeff(j).to_biguint().expect("dimensions are nonnegative")
}

/// `dim B_i^{p,q}(n) = comp_dim(p, 2i-p-q, n) / (p+1)! · d_coeff(i-q, p+1)`.
pub fn b_dim(i: usize, p: usize, q: usize, n: usize) -> BigUint {
    if p + q > 2 * i || q > i {
        return BigUint::zero();
    }
    let comp = comp_dim(p, 2 * i - p - q, n);
    let (orbits, rem) = comp.div_rem(&factorial(p + 1));
    assert!(rem.is_zero(), "relabeling action is free, so (p+1)! divides comp_dim");
    orbits * d_coeff(i - q, p + 1)
}

fn signed(p: usize, q: usize, d: &BigUint) -> BigInt {
    let d = BigInt::from(d.clone());
    if (p + q).is_multiple_of(2) {
        d
    } else {
        -d
    }
}

/// `Σ (-1)^{p+q} dim B_i^{p,q}(n)` against `d_coeff(i, n)`.
pub fn euler_identity(i: usize, n: usize) -> Result<EulerReport> {
    if i == 0 || n == 0 {
        return Err(Error::InvalidInput("euler_identity needs i >= 1 and n >= 1".into()));
    }
    let mut cells = Vec::new();
    let mut lhs = BigInt::zero();
    for p in 0..n.min(2 * i + 1) {
        for q in 0..=i.min(2 * i - p) {
            let dim = b_dim(i, p, q, n);
            if !dim.is_zero() {
                lhs += signed(p, q, &dim);
                cells.push(E1Cell { i, p, q, dim });
            }
        }
    }
    let rhs = BigInt::from(d_coeff(i, n));
    Ok(EulerReport { i, n, equal: lhs == rhs, cells, lhs, rhs })
}

/// The same identity for the cone graph `Γ(n)`, summing over its connected
/// partitions directly.
pub fn euler_identity_graph(gamma: &Graph, i: usize, n: usize) -> Result<EulerReport> {
    if i == 0 || n == 0 {
        return Err(Error::InvalidInput("euler_identity_graph needs i >= 1 and n >= 1".into()));
    }
    let total = gamma.n_vertices() + n;
    if total > GRAPH_EULER_MAX_VERTICES {
        return Err(Error::Infeasible(format!(
            "euler_identity_graph enumerates connected partitions of {total} vertices; limit is {GRAPH_EULER_MAX_VERTICES}"
        )));
    }
    let g = cone_extend(gamma, n);
    let table = KlTable::global();
    // (p, q) -> dim, accumulated over partitions
    let mut dims: HashMap<(usize, usize), BigUint> = HashMap::new();
    for blocks in connected_partition_masks(&g, None) {
        let p = blocks.len() - 1;
        if p > 2 * i {
            continue;
        }
        let poly = blocks.iter().fold(IntPoly::one(), |acc, &b| &acc * &conf_poincare(&g.induced(b)));
        let kl = table.kl_graphic(&quotient(&g, &blocks))?.to_integer().expect("KL polynomials are integral");
        for q in 0..=i.min(2 * i - p) {
            let c = poly.coeff(2 * i - p - q) * kl.coeff(i - q);
            if !c.is_zero() {
                *dims.entry((p, q)).or_insert_with(BigUint::zero) += c.to_biguint().expect("nonnegative");
            }
        }
    }
    let mut keys: Vec<(usize, usize)> = dims.keys().copied().collect();
    keys.sort_unstable();
    let mut cells = Vec::new();
    let mut lhs = BigInt::zero();
    for (p, q) in keys {
        let dim = dims.remove(&(p, q)).expect("key present");
        lhs += signed(p, q, &dim);
        cells.push(E1Cell { i, p, q, dim });
    }
    let rhs = table.kl_graphic(&g)?.to_integer().expect("KL polynomials are integral").coeff(i);
    Ok(EulerReport { i, n, equal: lhs == rhs, cells, lhs, rhs })
}

/// Ratios `b_dim(i, 2i-1, 1, n) / (2i)^n` and `d_coeff(i, n) / (2i)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRow {
    pub n: usize,
    pub b_ratio: BigRational,
    pub d_ratio: BigRational,
}

pub fn ratio_diagnostic(i: usize, ns: impl IntoIterator<Item = usize>) -> Vec<RatioRow> {
    ns.into_iter()
        .map(|n| {
            let scale = BigInt::from(2 * i).pow(n as u32);
            let ratio = |x: BigUint| BigRational::new(BigInt::from(x), scale.clone());
            RatioRow { n, b_ratio: ratio(b_dim(i, 2 * i - 1, 1, n)), d_ratio: ratio(d_coeff(i, n)) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{stirling1_unsigned, stirling2};
    use crate::polyseries::rat;

    /// Enumerates ordered surjections explicitly.
    fn comp_dim_brute(p: usize, j: usize, n: usize) -> BigUint {
        let k = p + 1;
        let mut total = BigUint::zero();
        let mut f = vec![0usize; n];
        loop {
            let mut sizes = vec![0usize; k];
            for &v in &f {
                sizes[v] += 1;
            }
            if sizes.iter().all(|&s| s > 0) {
                let poly = sizes.iter().fold(IntPoly::one(), |acc, &s| &acc * &block_poly(s));
                total += poly.coeff(j).to_biguint().unwrap();
            }
            let mut idx = 0;
            loop {
                if idx == n {
                    return total;
                }
                f[idx] += 1;
                if f[idx] < k {
                    break;
                }
                f[idx] = 0;
                idx += 1;
            }
        }
    }

    #[test]
    fn comp_dim_examples() {
        for n in 1..=8 {
            for j in 0..n {
                assert_eq!(comp_dim(0, j, n), stirling1_unsigned(n, n - j));
            }
            for p in 0..n {
                assert_eq!(comp_dim(p, 0, n), factorial(p + 1) * stirling2(n, p + 1));
            }
        }
        assert_eq!(comp_dim(1, 1, 3), BigUint::from(6u32));
        for n in 1..=6 {
            for p in 0..n {
                for j in 0..n {
                    assert_eq!(comp_dim(p, j, n), comp_dim_brute(p, j, n), "p={p} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn b_dim_examples() {
        assert_eq!(b_dim(1, 1, 1, 4), BigUint::from(7u32));
        for i in 1..=3 {
            for n in 1..=12 {
                assert!(b_dim(i, 2 * i, 0, n).is_zero());
                assert_eq!(b_dim(i, 2 * i - 1, 1, n), stirling2(n, 2 * i) * d_coeff(i - 1, 2 * i));
            }
        }
    }

    #[test]
    fn euler_examples() {
        let r = euler_identity(1, 3).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (BigInt::zero(), BigInt::zero()));
        let r = euler_identity(1, 4).unwrap();
        assert_eq!(r.lhs, BigInt::one());
        let dims: Vec<(usize, usize, u32)> =
            r.cells.iter().map(|c| (c.p, c.q, u32::try_from(&c.dim).unwrap())).collect();
        assert!(dims.contains(&(0, 1, 6)) && dims.contains(&(1, 1, 7)));
        assert_eq!(euler_identity(2, 6).unwrap().lhs, BigInt::from(15));
        for i in 1..=3 {
            for n in i + 1..=12 {
                assert!(euler_identity(i, n).unwrap().equal, "i={i} n={n}");
            }
        }
    }

    #[test]
    fn graph_euler_examples() {
        let e = euler_identity_graph(&Graph::empty(0), 1, 4).unwrap();
        assert_eq!(e.lhs, euler_identity(1, 4).unwrap().lhs);
        assert!(e.equal);
        assert_eq!(euler_identity_graph(&Graph::empty(1), 1, 3).unwrap().lhs, BigInt::one());
        assert_eq!(euler_identity_graph(&Graph::path(2), 1, 2).unwrap().lhs, BigInt::one());
        for n in 2..=7 {
            let a = euler_identity_graph(&Graph::empty(0), 2, n).unwrap();
            let b = euler_identity(2, n).unwrap();
            assert_eq!(a.cells, b.cells);
            assert!(a.equal);
        }
        for gamma in [Graph::path(3), Graph::empty(2), Graph::cycle(3)] {
            for n in 1..=4 {
                for i in 1..=2 {
                    assert!(euler_identity_graph(&gamma, i, n).unwrap().equal);
                }
            }
        }
        assert!(euler_identity_graph(&Graph::empty(5), 1, 6).is_err());
    }

    #[test]
    fn ratio_examples() {
        let rows = ratio_diagnostic(1, 2..=20);
        for w in rows.windows(2) {
            assert!(w[0].b_ratio < w[1].b_ratio && w[1].b_ratio < rat(1, 2));
        }
        let last = rows.last().unwrap();
        assert!((last.d_ratio.clone() - rat(1, 2)) * BigRational::from_integer(50.into()) < BigRational::one());
        assert!(ratio_diagnostic(3, 1..=6).iter().all(|r| r.d_ratio.is_zero()));
    }
}
