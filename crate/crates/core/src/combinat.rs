//! Integer partitions, Stirling numbers, set-partition counts and
//! irreducible characters of the symmetric group.
//!
//! Everything here is exact. Triangular tables are grown on demand and
//! shared process-wide behind locks, so concurrent callers observe the same
//! values a sequential caller would.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition stored as weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition from arbitrary positive parts (sorted here).
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// The partition `(1, 1, ..., 1)` of `n`.
    pub fn ones(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition(Vec::new())
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity of each part size, as `(size, count)` pairs in
    /// decreasing size order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Union of two partitions (concatenate and re-sort).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Every part multiplied by `k` (cycle type of the `k`-fold blow-up).
    pub fn scale(&self, k: usize) -> Partition {
        Partition(self.0.iter().map(|p| p * k).collect())
    }

    /// `z_λ = Π_r r^{m_r} m_r!`, the centralizer order of a permutation of
    /// cycle type λ.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        for (r, m) in self.multiplicities() {
            z *= BigUint::from(r).pow(m as u32) * factorial(m);
        }
        z
    }

    /// Sign of a permutation of this cycle type.
    pub fn sign(&self) -> i32 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in graded reverse-lexicographic order:
/// `(n)` first, `(1^n)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

struct Table {
    rows: Vec<Vec<BigUint>>,
}

impl Table {
    fn ensure(&mut self, n: usize, next: impl Fn(&[BigUint], usize) -> Vec<BigUint>) {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let row = next(&self.rows[m - 1], m);
            self.rows.push(row);
        }
    }
}

fn lookup(
    cell: &'static OnceLock<RwLock<Table>>,
    n: usize,
    k: usize,
    next: impl Fn(&[BigUint], usize) -> Vec<BigUint>,
) -> BigUint {
    let lock = cell.get_or_init(|| RwLock::new(Table { rows: vec![vec![BigUint::one()]] }));
    {
        let t = lock.read().expect("stirling table poisoned");
        if n < t.rows.len() {
            return t.rows[n].get(k).cloned().unwrap_or_default();
        }
    }
    let mut t = lock.write().expect("stirling table poisoned");
    t.ensure(n, next);
    t.rows[n].get(k).cloned().unwrap_or_default()
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    static CELL: OnceLock<RwLock<Table>> = OnceLock::new();
    if k > n {
        return BigUint::zero();
    }
    lookup(&CELL, n, k, |prev, m| {
        // S(m, j) = j S(m-1, j) + S(m-1, j-1)
        (0..=m)
            .map(|j| {
                let a = prev.get(j).map(|x| x * j).unwrap_or_default();
                let b = if j > 0 { prev.get(j - 1).cloned().unwrap_or_default() } else { BigUint::zero() };
                a + b
            })
            .collect()
    })
}

/// Unsigned Stirling number of the first kind `c(n, k)`: permutations of
/// `[n]` with exactly `k` cycles.
pub fn stirling1_unsigned(n: usize, k: usize) -> BigUint {
    static CELL: OnceLock<RwLock<Table>> = OnceLock::new();
    if k > n {
        return BigUint::zero();
    }
    lookup(&CELL, n, k, |prev, m| {
        // c(m, j) = (m-1) c(m-1, j) + c(m-1, j-1)
        (0..=m)
            .map(|j| {
                let a = prev.get(j).map(|x| x * (m - 1)).unwrap_or_default();
                let b = if j > 0 { prev.get(j - 1).cloned().unwrap_or_default() } else { BigUint::zero() };
                a + b
            })
            .collect()
    })
}

pub fn factorial(n: usize) -> BigUint {
    static CELL: OnceLock<RwLock<Vec<BigUint>>> = OnceLock::new();
    let lock = CELL.get_or_init(|| RwLock::new(vec![BigUint::one()]));
    {
        let t = lock.read().expect("factorial table poisoned");
        if n < t.len() {
            return t[n].clone();
        }
    }
    let mut t = lock.write().expect("factorial table poisoned");
    while t.len() <= n {
        let m = t.len();
        let next = &t[m - 1] * m;
        t.push(next);
    }
    t[n].clone()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Bell number: total number of set partitions of `[n]`.
pub fn bell(n: usize) -> BigUint {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

/// Odd double factorial with the convention `(-1)!! = 1`.
pub fn double_factorial_odd(m: i64) -> Result<BigUint> {
    if m < -1 || m % 2 == 0 {
        return Err(Error::InvalidInput(format!("double factorial needs an odd argument >= -1, got {m}")));
    }
    let mut acc = BigUint::one();
    let mut k = m;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(acc)
}

/// Number of set partitions of `[n]` whose block sizes form `lambda`:
/// `n! / (Π λ_j! · Π m_r!)`.
pub fn set_partition_count_by_type(lambda: &Partition) -> BigUint {
    let mut den = BigUint::one();
    for &p in lambda.parts() {
        den *= factorial(p);
    }
    for (_, m) in lambda.multiplicities() {
        den *= factorial(m);
    }
    factorial(lambda.size()) / den
}

/// Size of the conjugacy class of cycle type `mu` in `S_n`.
pub fn class_size(mu: &Partition) -> BigUint {
    factorial(mu.size()) / mu.z()
}

type MnKey = (Partition, Partition);

/// Irreducible character value `χ^λ(μ)` via the Murnaghan-Nakayama rule.
///
/// Border strips are removed on the beta-set (abacus) of λ: removing a strip
/// of length `r` moves one bead from `b` to `b - r`, and the sign is the
/// parity of the beads jumped over.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::InvalidInput(format!("character of {lambda} evaluated on class {mu} of a different size")));
    }
    Ok(mn_rec(lambda, mu.parts()))
}

fn mn_rec(lambda: &Partition, mu: &[usize]) -> BigInt {
    if mu.is_empty() {
        return if lambda.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    static MEMO: OnceLock<Mutex<HashMap<MnKey, BigInt>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (lambda.clone(), Partition(mu.to_vec()));
    if let Some(v) = memo.lock().expect("mn memo poisoned").get(&key) {
        return v.clone();
    }

    let r = mu[0];
    let rest = &mu[1..];
    let len = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + (len - 1 - i)).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let k = nb.len();
        let parts: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (k - 1 - i)).filter(|&p| p > 0).collect();
        let v = mn_rec(&Partition(parts), rest);
        if jumped % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.lock().expect("mn memo poisoned").insert(key, total.clone());
    total
}

/// Dimension of the Specht module `V_λ`, `χ^λ(1^n)`.
pub fn specht_dim(lambda: &Partition) -> BigInt {
    mn_rec(lambda, &vec![1; lambda.size()])
}
