//! Surjections, the contravariant action of surjections on the first
//! homology of configuration spaces, and finite-window growth checks.
//!
//! Points are labeled `0..n`; displays elsewhere add one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::{binomial, factorial, stirling2};
use crate::error::{Error, Result};
use crate::polyseries::{fit_rational, r_extract, SeqTable, DEFAULT_MULT_CAP};

/// A surjection `[n] → [m]` given by its values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surjection {
    m: usize,
    values: Vec<usize>,
}

impl Surjection {
    pub fn new(m: usize, values: Vec<usize>) -> Result<Self> {
        let mut hit = vec![false; m];
        for &v in &values {
            if v >= m {
                return Err(Error::InvalidInput(format!("value {v} outside target of size {m}")));
            }
            hit[v] = true;
        }
        if !hit.iter().all(|&h| h) {
            return Err(Error::InvalidInput(format!("{values:?} is not onto a set of size {m}")));
        }
        Ok(Surjection { m, values })
    }

    pub fn identity(n: usize) -> Self {
        Surjection { m: n, values: (0..n).collect() }
    }

    pub fn source(&self) -> usize {
        self.values.len()
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}] {:?}", self.source(), self.m, self.values)
    }
}

/// `f ∘ g`.
pub fn compose(f: &Surjection, g: &Surjection) -> Result<Surjection> {
    if g.target() != f.source() {
        return Err(Error::InvalidInput(format!(
            "cannot compose: inner target {} but outer source {}",
            g.target(),
            f.source()
        )));
    }
    Ok(Surjection { m: f.m, values: g.values.iter().map(|&v| f.values[v]).collect() })
}

/// All surjections `[n] → [m]`, value vectors in lexicographic order.
pub fn enumerate_surjections(n: usize, m: usize) -> Vec<Surjection> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, m: usize, cur: &mut Vec<usize>, counts: &mut [usize], missing: usize, out: &mut Vec<Surjection>) {
        if cur.len() == n {
            if missing == 0 {
                out.push(Surjection { m, values: cur.clone() });
            }
            return;
        }
        if n - cur.len() < missing {
            return;
        }
        for v in 0..m {
            let newly = usize::from(counts[v] == 0);
            counts[v] += 1;
            cur.push(v);
            rec(n, m, cur, counts, missing - newly, out);
            cur.pop();
            counts[v] -= 1;
        }
    }
    if m <= n {
        rec(n, m, &mut cur, &mut vec![0; m], m, &mut out);
    }
    out
}

/// `|Hom([n], [m])|` in the surjection category: `m! S(n, m)`.
pub fn hom_fs_count(n: usize, m: usize) -> BigUint {
    let c = factorial(m) * stirling2(n, m);
    assert!(c <= BigUint::from(m).pow(n as u32), "surjections are among all maps");
    c
}

/// An element of `H_1` of the configuration space of `n` points in the
/// basis `e_{ij}`, `i < j`.
#[derive(Clone, PartialEq, Eq)]
pub struct H1Vector {
    n: usize,
    coords: BTreeMap<(usize, usize), BigRational>,
}

fn pair(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl H1Vector {
    pub fn zero(n: usize) -> Self {
        H1Vector { n, coords: BTreeMap::new() }
    }

    /// Basis vector `e_{ij}`.
    pub fn basis(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidInput(format!("e_({i},{j}) is not a basis vector for {n} points")));
        }
        let mut v = H1Vector::zero(n);
        v.coords.insert(pair(i, j), BigRational::one());
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coord(&self, i: usize, j: usize) -> BigRational {
        self.coords.get(&pair(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero coordinates with `i < j`.
    pub fn coords(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.coords.iter()
    }

    fn bump(&mut self, key: (usize, usize), c: &BigRational) {
        let e = self.coords.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&key);
        }
    }

    pub fn add(&self, other: &H1Vector) -> H1Vector {
        assert_eq!(self.n, other.n, "vectors for different point counts");
        let mut out = self.clone();
        for (k, c) in &other.coords {
            out.bump(*k, c);
        }
        out
    }

    /// Dense coordinates in lexicographic pair order.
    pub fn dense(&self) -> Vec<BigRational> {
        (0..self.n).flat_map(|i| (i + 1..self.n).map(move |j| (i, j))).map(|(i, j)| self.coord(i, j)).collect()
    }
}

impl fmt::Debug for H1Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write!(f, "e{}{}", i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// `f^*(e_{kl}) = Σ_{i ∈ f^{-1}(k), j ∈ f^{-1}(l)} e_{ij}`, extended linearly.
pub fn h1_pullback(f: &Surjection, v: &H1Vector) -> Result<H1Vector> {
    if v.n != f.target() {
        return Err(Error::InvalidInput(format!("vector on {} points, surjection onto {}", v.n, f.target())));
    }
    let n = f.source();
    let mut fibers = vec![Vec::new(); f.target()];
    for (i, &k) in f.values.iter().enumerate() {
        fibers[k].push(i);
    }
    let mut out = H1Vector::zero(n);
    for (&(k, l), c) in &v.coords {
        for &i in &fibers[k] {
            for &j in &fibers[l] {
                out.bump(pair(i, j), c);
            }
        }
    }
    Ok(out)
}

/// The same map obtained by dualizing `x_{ij} ↦ x_{f(i) f(j)}` (zero when
/// `f(i) = f(j)`) on `H^1`.
pub fn h1_pullback_dual(f: &Surjection, v: &H1Vector) -> Result<H1Vector> {
    if v.n != f.target() {
        return Err(Error::InvalidInput(format!("vector on {} points, surjection onto {}", v.n, f.target())));
    }
    let n = f.source();
    let mut out = H1Vector::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (f.apply(i), f.apply(j));
            if a != b {
                out.bump((i, j), &v.coord(a, b));
            }
        }
    }
    Ok(out)
}

/// Rank of a list of vectors by exact elimination, with the indices of the
/// vectors that raised the rank.
fn greedy_rank(vectors: &[Vec<BigRational>]) -> (usize, Vec<usize>) {
    let mut pivots: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut used = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for (col, row) in &pivots {
            if !v[*col].is_zero() {
                let factor = v[*col].clone() / &row[*col];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &factor * y;
                }
            }
        }
        if let Some(col) = v.iter().position(|x| !x.is_zero()) {
            pivots.push((col, v));
            used.push(idx);
        }
    }
    (pivots.len(), used)
}

/// Outcome of testing whether pullbacks of `e_12` span `H_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub n: usize,
    pub rank: usize,
    pub target_dim: usize,
    pub generated: bool,
    /// Surjections whose pullbacks of `e_12` form a basis of the span.
    pub witnesses: Vec<Surjection>,
    pub witness_vectors: Vec<H1Vector>,
}

/// Whether `H_1(n)` is spanned by pullbacks of `e_12` along all
/// surjections `[n] → [2]`.
pub fn h1_generation_check(n: usize) -> Result<GenerationReport> {
    if n < 2 {
        return Err(Error::InvalidInput("generation check needs n >= 2".into()));
    }
    let e12 = H1Vector::basis(2, 0, 1)?;
    let surj = enumerate_surjections(n, 2);
    let images: Vec<H1Vector> = surj.iter().map(|f| h1_pullback(f, &e12)).collect::<Result<_>>()?;
    let dense: Vec<Vec<BigRational>> = images.iter().map(H1Vector::dense).collect();
    let (rank, used) = greedy_rank(&dense);
    let target_dim = usize::try_from(&binomial(n, 2)).expect("small");
    Ok(GenerationReport {
        n,
        rank,
        target_dim,
        generated: rank == target_dim,
        witnesses: used.iter().map(|&k| surj[k].clone()).collect(),
        witness_vectors: used.iter().map(|&k| images[k].clone()).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthVerdict {
    /// Ratios strictly decrease across the tail.
    MonotoneDecreasing {
        limit: Option<BigRational>,
    },
    /// Ratios are constant, or monotone with shrinking steps.
    Stabilizing {
        limit: Option<BigRational>,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub d: u64,
    pub ratios: Vec<(usize, BigRational)>,
    pub verdict: GrowthVerdict,
}

/// Finite-window behavior of `dims(n) / d^n`, judged on the last half of
/// the window (at least six terms).
///
/// When the sequence admits a rational generating function with poles in
/// `1..=d`, the limit is its exact simple-pole coefficient at `1/d`.
pub fn growth_diagnostic(dims: &SeqTable, d: u64) -> Result<GrowthReport> {
    if dims.len() < 6 {
        return Err(Error::InsufficientData { have: dims.len(), need: 6 });
    }
    if d == 0 {
        return Err(Error::InvalidInput("growth rate d must be positive".into()));
    }
    let ratios: Vec<(usize, BigRational)> = dims
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let n = dims.start + k;
            (n, v / BigRational::from_integer(BigInt::from(d).pow(n as u32)))
        })
        .collect();
    let limit = || -> Option<BigRational> {
        let poles: Vec<u64> = (1..=d).collect();
        let fit = fit_rational(dims, &poles, DEFAULT_MULT_CAP).ok()??;
        r_extract(&fit, d).ok()
    };
    let tail = (ratios.len() / 2).max(6);
    let r: Vec<&BigRational> = ratios[ratios.len() - tail..].iter().map(|(_, r)| r).collect();
    let steps: Vec<BigRational> = r.windows(2).map(|w| w[1] - w[0]).collect();
    let verdict = if steps.iter().all(Zero::is_zero) {
        GrowthVerdict::Stabilizing { limit: Some(r[0].clone()) }
    } else if steps.iter().all(Signed::is_negative) {
        GrowthVerdict::MonotoneDecreasing { limit: limit() }
    } else if steps.iter().all(Signed::is_positive) && steps.windows(2).all(|w| w[1] <= w[0]) {
        GrowthVerdict::Stabilizing { limit: limit() }
    } else {
        GrowthVerdict::Inconclusive
    };
    Ok(GrowthReport { d, ratios, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klcore::d_coeff;
    use crate::polyseries::rat;

    #[test]
    fn surjection_counts() {
        assert_eq!(enumerate_surjections(3, 2).len(), 6);
        assert_eq!(enumerate_surjections(4, 2).len(), 14);
        assert!(enumerate_surjections(2, 3).is_empty());
        for n in 1..=6 {
            for m in 1..=n {
                assert_eq!(BigUint::from(enumerate_surjections(n, m).len()), hom_fs_count(n, m));
            }
        }
        assert_eq!(hom_fs_count(4, 4), BigUint::from(24u32));
        assert_eq!(hom_fs_count(5, 2), BigUint::from(30u32));
        for n in 1..=20 {
            for m in 1..=6 {
                assert!(hom_fs_count(n, m) <= BigUint::from(m).pow(n as u32));
            }
        }
    }

    #[test]
    fn composition() {
        let f = Surjection::new(2, vec![0, 1, 0]).unwrap();
        assert_eq!(compose(&Surjection::identity(2), &f).unwrap(), f);
        assert_eq!(compose(&f, &Surjection::identity(3)).unwrap(), f);
        assert!(compose(&f, &f).is_err());
        assert!(Surjection::new(3, vec![0, 1, 0]).is_err());
    }

    #[test]
    fn pullback_examples() {
        let e12 = H1Vector::basis(2, 0, 1).unwrap();
        let parity = Surjection::new(2, vec![0, 1, 0]).unwrap();
        let expected = H1Vector::basis(3, 0, 1).unwrap().add(&H1Vector::basis(3, 1, 2).unwrap());
        assert_eq!(h1_pullback(&parity, &e12).unwrap(), expected);
        assert_eq!(format!("{:?}", h1_pullback(&parity, &e12).unwrap()), "e12 + e23");
        // singleton fibers over both points: e_12 goes to e_ij
        let f = Surjection::new(3, vec![2, 0, 2, 1]).unwrap();
        let v = H1Vector::basis(3, 0, 1).unwrap();
        assert_eq!(h1_pullback(&f, &v).unwrap(), H1Vector::basis(4, 1, 3).unwrap());
        let id = Surjection::identity(4);
        let w = H1Vector::basis(4, 0, 3).unwrap().add(&H1Vector::basis(4, 1, 2).unwrap());
        assert_eq!(h1_pullback(&id, &w).unwrap(), w);
    }

    fn all_vectors(m: usize) -> Vec<H1Vector> {
        (0..m).flat_map(|i| (i + 1..m).map(move |j| H1Vector::basis(m, i, j).unwrap())).collect()
    }

    #[test]
    fn two_constructions_agree_and_compose() {
        for n in 1..=5 {
            for m in 1..=n {
                for f in enumerate_surjections(n, m) {
                    for v in all_vectors(m) {
                        assert_eq!(h1_pullback(&f, &v).unwrap(), h1_pullback_dual(&f, &v).unwrap());
                    }
                    for k in 1..=m {
                        for g in enumerate_surjections(m, k) {
                            let gf = compose(&g, &f).unwrap();
                            for v in all_vectors(k) {
                                let direct = h1_pullback(&gf, &v).unwrap();
                                let stepwise = h1_pullback(&f, &h1_pullback(&g, &v).unwrap()).unwrap();
                                assert_eq!(direct, stepwise);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generation() {
        for n in 2..=8 {
            let r = h1_generation_check(n).unwrap();
            assert!(r.generated, "n={n}");
            assert_eq!(r.witnesses.len(), r.target_dim);
        }
        let r = h1_generation_check(3).unwrap();
        let shown: Vec<String> = r.witness_vectors.iter().map(|v| format!("{v:?}")).collect();
        let mut sorted = shown.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["e12 + e13", "e12 + e23", "e13 + e23"]);
    }

    #[test]
    fn growth_examples() {
        let h1 = SeqTable::from_ints(4, (4..=20usize).map(|n| BigInt::from(binomial(n, 2))));
        let r = growth_diagnostic(&h1, 2).unwrap();
        assert!(matches!(r.verdict, GrowthVerdict::MonotoneDecreasing { .. }));
        let longer = SeqTable::from_ints(4, (4..=30usize).map(|n| BigInt::from(binomial(n, 2))));
        assert_eq!(
            growth_diagnostic(&longer, 2).unwrap().verdict,
            GrowthVerdict::MonotoneDecreasing { limit: Some(rat(0, 1)) }
        );
        let zeros = SeqTable::from_ints(1, vec![0i64; 8]);
        assert_eq!(
            growth_diagnostic(&zeros, 3).unwrap().verdict,
            GrowthVerdict::Stabilizing { limit: Some(rat(0, 1)) }
        );
        let d1 = SeqTable::from_ints(4, (4..=25usize).map(|n| BigInt::from(d_coeff(1, n))));
        assert_eq!(growth_diagnostic(&d1, 2).unwrap().verdict, GrowthVerdict::Stabilizing { limit: Some(rat(1, 2)) });
        assert!(growth_diagnostic(&SeqTable::from_ints(0, vec![1i64; 5]), 2).is_err());
    }
}
