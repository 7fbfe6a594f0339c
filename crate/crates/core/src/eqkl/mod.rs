//! Equivariant KL polynomials of braid matroids as graded class functions.
//!
//! The main path works with Frobenius characteristics. With
//! `C = Σ_r C_r` the equivariant characteristic polynomials and `Q_k` the
//! equivariant KL polynomials, the degree-`n` part of `Σ_k Q_k[C]` is the
//! characteristic of `t^{n-1} Q_n(1/t)`. The characteristic polynomials
//! themselves come from `Σ_ℓ C_ℓ[h_1 + h_2 + …] = t^{n-1} h_n` in degree `n`.

mod brute;
mod os;
mod symfn;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::{class_size, factorial, mn_character, partitions, Partition};
use crate::error::{Error, Result};
use crate::polyseries::Poly;

pub use brute::{eqkl_braid_brute, BRUTE_MAX_N};
pub use os::{eq_char_poly_os, os_character, OS_MAX_N};
pub use symfn::{plethysm, SymFn};

/// Largest `n` accepted by `eq_char_poly` and `eqkl_braid`.
pub const EQ_MAX_N: usize = 12;

/// A class function of `S_n`, defined on every cycle type.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFn {
    n: usize,
    values: BTreeMap<Partition, BigRational>,
}

impl ClassFn {
    /// Builds a class function; missing classes are zero.
    pub fn new<I: IntoIterator<Item = (Partition, BigRational)>>(n: usize, values: I) -> Result<Self> {
        let mut f = ClassFn::zero(n);
        for (mu, v) in values {
            if mu.size() != n {
                return Err(Error::InvalidInput(format!("class {mu} is not a partition of {n}")));
            }
            f.values.insert(mu, v);
        }
        Ok(f)
    }

    pub fn zero(n: usize) -> Self {
        ClassFn { n, values: partitions(n).into_iter().map(|mu| (mu, BigRational::zero())).collect() }
    }

    fn from_fn(n: usize, f: impl Fn(&Partition) -> BigRational) -> Self {
        ClassFn {
            n,
            values: partitions(n)
                .into_iter()
                .map(|mu| {
                    let v = f(&mu);
                    (mu, v)
                })
                .collect(),
        }
    }

    pub fn trivial(n: usize) -> Self {
        ClassFn::from_fn(n, |_| BigRational::one())
    }

    pub fn sign(n: usize) -> Self {
        ClassFn::from_fn(n, |mu| BigRational::from_integer(mu.sign().into()))
    }

    /// Character of the regular representation.
    pub fn regular(n: usize) -> Self {
        let ident = Partition::ones(n);
        ClassFn::from_fn(n, |mu| {
            if *mu == ident {
                BigRational::from_integer(factorial(n).into())
            } else {
                BigRational::zero()
            }
        })
    }

    /// Irreducible character `χ^λ`.
    pub fn irreducible(lambda: &Partition) -> Self {
        ClassFn::from_fn(lambda.size(), |mu| BigRational::from_integer(mn_character(lambda, mu).expect("same size")))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, mu: &Partition) -> BigRational {
        self.values.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Values in partition order.
    pub fn values(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.values.iter()
    }

    /// Value at the identity.
    pub fn dim(&self) -> BigRational {
        self.value(&Partition::ones(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    pub fn neg(&self) -> ClassFn {
        ClassFn { n: self.n, values: self.values.iter().map(|(m, v)| (m.clone(), -v)).collect() }
    }

    pub fn add(&self, other: &ClassFn) -> ClassFn {
        assert_eq!(self.n, other.n, "class functions of different groups");
        ClassFn::from_fn(self.n, |mu| self.value(mu) + other.value(mu))
    }
}

impl fmt::Debug for ClassFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassFn[")?;
        for (k, (mu, v)) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{mu}: {v}")?;
        }
        write!(f, "]")
    }
}

/// A polynomial in `t` with class-function coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedClassFn {
    n: usize,
    coeffs: Vec<ClassFn>,
}

impl GradedClassFn {
    pub fn new(n: usize, mut coeffs: Vec<ClassFn>) -> Self {
        assert!(coeffs.iter().all(|c| c.n == n), "all coefficients must share n");
        while coeffs.last().is_some_and(ClassFn::is_zero) {
            coeffs.pop();
        }
        GradedClassFn { n, coeffs }
    }

    /// From class values given as polynomials in `t`.
    pub(crate) fn from_table(n: usize, table: &BTreeMap<Partition, Poly>) -> Result<Self> {
        let deg = table.values().filter_map(Poly::degree).max().map_or(0, |d| d + 1);
        let mut coeffs = Vec::with_capacity(deg);
        for j in 0..deg {
            coeffs.push(ClassFn::new(n, table.iter().map(|(mu, p)| (mu.clone(), p.coeff(j))))?);
        }
        Ok(GradedClassFn::new(n, coeffs))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[ClassFn] {
        &self.coeffs
    }

    /// Coefficient of `t^i`.
    pub fn coeff(&self, i: usize) -> ClassFn {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ClassFn::zero(self.n))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The polynomial of values at class `mu`.
    pub fn at(&self, mu: &Partition) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.value(mu)).collect())
    }

    /// Graded dimension.
    pub fn at_identity(&self) -> Poly {
        self.at(&Partition::ones(self.n))
    }

    /// Class function obtained by substituting a value for `t`.
    pub fn eval_t(&self, t: &BigRational) -> ClassFn {
        ClassFn::from_fn(self.n, |mu| self.at(mu).eval(t))
    }
}

/// Frobenius characteristic.
pub fn ch(f: &ClassFn) -> SymFn {
    SymFn::from_class_values(f.n, |mu| Poly::constant(f.value(mu)))
}

/// Graded Frobenius characteristic.
pub fn ch_graded(g: &GradedClassFn) -> SymFn {
    SymFn::from_class_values(g.n, |mu| g.at(mu))
}

/// Inverse of `ch` on homogeneous degree-`n` input with constant
/// coefficients.
pub fn ch_inv(s: &SymFn, n: usize) -> Result<ClassFn> {
    let g = ch_inv_graded(s, n)?;
    if g.coeffs.len() > 1 {
        return Err(Error::InvalidInput("symmetric function has t-dependent coefficients".into()));
    }
    Ok(g.coeff(0))
}

/// Inverse of `ch_graded` on homogeneous degree-`n` input.
pub fn ch_inv_graded(s: &SymFn, n: usize) -> Result<GradedClassFn> {
    if let Some((mu, _)) = s.terms().find(|(mu, _)| mu.size() != n) {
        return Err(Error::InvalidInput(format!("symmetric function has a term p{mu} outside degree {n}")));
    }
    let table: BTreeMap<Partition, Poly> = s.terms().map(|(m, v)| (m.clone(), v.clone())).collect();
    GradedClassFn::from_table(n, &table)
}

/// Multiplicities `⟨f, χ^λ⟩` of the irreducible characters; zero entries
/// are omitted.
pub fn specht_decompose(f: &ClassFn) -> BTreeMap<Partition, BigRational> {
    let n = f.n;
    let order = BigRational::from_integer(factorial(n).into());
    let mut out = BTreeMap::new();
    for lambda in partitions(n) {
        let mut acc = BigRational::zero();
        for (mu, v) in f.values() {
            if v.is_zero() {
                continue;
            }
            let chi = mn_character(&lambda, mu).expect("same size");
            acc += v * BigRational::from_integer(BigInt::from(class_size(mu)) * chi);
        }
        let m = acc / &order;
        if !m.is_zero() {
            out.insert(lambda, m);
        }
    }
    out
}

/// True when every multiplicity is a nonnegative integer.
pub fn is_honest(decomposition: &BTreeMap<Partition, BigRational>) -> bool {
    decomposition.values().all(|m| m.is_integer() && !m.is_negative())
}

/// Solves `t^r Q(1/t) - Q = rhs` classwise with `deg Q < r/2`.
pub(crate) fn solve_graded(r: usize, rhs: &BTreeMap<Partition, Poly>) -> BTreeMap<Partition, Poly> {
    rhs.iter()
        .map(|(mu, rh)| {
            let q = Poly::new((0..r.div_ceil(2)).map(|i| -rh.coeff(i)).collect());
            assert_eq!(&(&q.reverse(r) - &q), rh, "equivariant functional equation unsolvable at class {mu}");
            (mu.clone(), q)
        })
        .collect()
}

fn check_n(n: usize, what: &str) -> Result<()> {
    if n == 0 || n > EQ_MAX_N {
        return Err(Error::Infeasible(format!("{what} supports 1 <= n <= {EQ_MAX_N}, got {n}")));
    }
    Ok(())
}

fn complete_sum(cap: usize) -> SymFn {
    (1..=cap).fold(SymFn::zero(), |acc, b| acc.add(&SymFn::h(b)))
}

fn char_polys(n: usize) -> Vec<SymFn> {
    static CACHE: OnceLock<Mutex<Vec<SymFn>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(|| Mutex::new(vec![SymFn::zero()])).lock().expect("cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        let hp = complete_sum(m);
        let mut lower = SymFn::zero();
        for c in cache.iter().take(m).skip(1) {
            lower = lower.add(&plethysm(c, &hp, m).expect("no constant term").degree_part(m));
        }
        let top = SymFn::h(m).scale(&Poly::monomial(BigRational::one(), m - 1));
        cache.push(top.sub(&lower));
    }
    cache[..=n].to_vec()
}

fn kl_symfns(n: usize) -> Vec<SymFn> {
    static CACHE: OnceLock<Mutex<Vec<SymFn>>> = OnceLock::new();
    let chis = char_polys(n);
    let mut cache = CACHE.get_or_init(|| Mutex::new(vec![SymFn::zero()])).lock().expect("cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        let next = if m == 1 {
            SymFn::h(1)
        } else {
            let c = chis[1..=m].iter().fold(SymFn::zero(), |acc, x| acc.add(x));
            let mut rhs = SymFn::zero();
            for q in cache.iter().take(m).skip(1) {
                rhs = rhs.add(&plethysm(q, &c, m).expect("no constant term").degree_part(m));
            }
            let table: BTreeMap<Partition, Poly> = partitions(m)
                .into_iter()
                .map(|mu| {
                    let v = rhs.value(&mu);
                    (mu, v)
                })
                .collect();
            let solved = solve_graded(m - 1, &table);
            SymFn::from_class_values(m, |mu| solved[mu].clone())
        };
        cache.push(next);
    }
    cache[..=n].to_vec()
}

/// Equivariant characteristic polynomial `Σ_i (-1)^i [H^i] t^{n-1-i}` of
/// `M_n`, computed plethystically.
pub fn eq_char_poly(n: usize) -> Result<GradedClassFn> {
    check_n(n, "eq_char_poly")?;
    ch_inv_graded(&char_polys(n)[n], n)
}

/// Equivariant KL polynomial of `M_n`.
pub fn eqkl_braid(n: usize) -> Result<GradedClassFn> {
    check_n(n, "eqkl_braid")?;
    ch_inv_graded(&kl_symfns(n)[n], n)
}

/// Specht multiplicities of every coefficient of `eqkl_braid(n)`.
pub fn specht_table(n: usize) -> Result<Vec<BTreeMap<Partition, BigRational>>> {
    Ok(eqkl_braid(n)?.coeffs().iter().map(specht_decompose).collect())
}

/// Whether every irreducible in the `t^i` coefficient of `eqkl_braid(n)`
/// has at most `2i` rows.
pub fn row_bound_check(i: usize, n: usize) -> Result<bool> {
    if i == 0 {
        return Err(Error::InvalidInput("row bound is stated for i >= 1".into()));
    }
    let coeff = eqkl_braid(n)?.coeff(i);
    Ok(specht_decompose(&coeff).keys().all(|lambda| lambda.len() <= 2 * i))
}
