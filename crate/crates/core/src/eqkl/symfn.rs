//! Symmetric functions in the power-sum basis with coefficients in `Q[t]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::combinat::{partitions, Partition};
use crate::error::{Error, Result};
use crate::polyseries::Poly;

/// A symmetric function `Σ_μ a_μ(t) p_μ / z_μ`, stored as `μ ↦ a_μ(t)`.
///
/// In this normalization a homogeneous degree-`n` element is literally the
/// graded class function of `S_n` whose Frobenius characteristic it is.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymFn {
    terms: BTreeMap<Partition, Poly>,
}

fn pair_factor(a: &Partition, b: &Partition) -> BigInt {
    // z_{a ∪ b} / (z_a z_b) = Π_r C(m_r(a) + m_r(b), m_r(a))
    let ma: BTreeMap<usize, usize> = a.multiplicities().into_iter().collect();
    let mut f = BigInt::one();
    for (r, mb) in b.multiplicities() {
        if let Some(&m) = ma.get(&r) {
            f *= BigInt::from(crate::combinat::binomial(m + mb, m));
        }
    }
    f
}

impl SymFn {
    pub fn zero() -> Self {
        SymFn::default()
    }

    pub fn one() -> Self {
        let mut s = SymFn::zero();
        s.terms.insert(Partition::row(0), Poly::one());
        s
    }

    /// The power sum `p_μ`.
    pub fn power_sum(mu: &Partition) -> Self {
        let mut s = SymFn::zero();
        s.terms.insert(mu.clone(), Poly::constant(BigRational::from_integer(mu.z().into())));
        s
    }

    /// Complete homogeneous `h_n`: the trivial character.
    pub fn h(n: usize) -> Self {
        SymFn::from_class_values(n, |_| Poly::one())
    }

    /// Elementary `e_n`: the sign character.
    pub fn e(n: usize) -> Self {
        SymFn::from_class_values(n, |mu| Poly::constant(BigRational::from_integer(mu.sign().into())))
    }

    /// Homogeneous degree-`n` element with the given class values.
    pub fn from_class_values(n: usize, f: impl Fn(&Partition) -> Poly) -> Self {
        let mut s = SymFn::zero();
        for mu in partitions(n) {
            let v = f(&mu);
            s.insert(mu, v);
        }
        s
    }

    fn insert(&mut self, mu: Partition, v: Poly) {
        if !v.is_zero() {
            self.terms.insert(mu, v);
        }
    }

    fn accumulate(&mut self, mu: Partition, v: &Poly) {
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry(mu);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + v;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Nonzero terms `(μ, a_μ(t))` in partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Poly)> {
        self.terms.iter()
    }

    /// The class value `a_μ(t)`.
    pub fn value(&self, mu: &Partition) -> Poly {
        self.terms.get(mu).cloned().unwrap_or_else(Poly::zero)
    }

    /// Coefficient of `p_μ`, i.e. `a_μ(t) / z_μ`.
    pub fn p_coeff(&self, mu: &Partition) -> Poly {
        let z = BigRational::from_integer(mu.z().into());
        self.value(mu).scale(&(BigRational::one() / z))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).min()
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_part(&self, d: usize) -> SymFn {
        SymFn {
            terms: self.terms.iter().filter(|(mu, _)| mu.size() == d).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    /// Drops components of degree above `cap`.
    pub fn truncate(&self, cap: usize) -> SymFn {
        SymFn {
            terms: self.terms.iter().filter(|(mu, _)| mu.size() <= cap).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    pub fn add(&self, other: &SymFn) -> SymFn {
        let mut out = self.clone();
        for (mu, v) in &other.terms {
            out.accumulate(mu.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &SymFn) -> SymFn {
        self.add(&other.scale(&Poly::constant(-BigRational::one())))
    }

    /// Multiplies every coefficient by a polynomial in `t`.
    pub fn scale(&self, c: &Poly) -> SymFn {
        let mut out = SymFn::zero();
        for (mu, v) in &self.terms {
            out.insert(mu.clone(), v * c);
        }
        out
    }

    /// Product, dropping components of degree above `cap`.
    pub fn mul(&self, other: &SymFn, cap: usize) -> SymFn {
        let mut out = SymFn::zero();
        for (a, va) in &self.terms {
            for (b, vb) in &other.terms {
                if a.size() + b.size() > cap {
                    continue;
                }
                let f = BigRational::from_integer(pair_factor(a, b));
                out.accumulate(a.union(b), &(va * vb).scale(&f));
            }
        }
        out
    }

    /// The Adams operation `p_k[self]`: `p_j ↦ p_{jk}` and `t ↦ t^k`.
    pub fn adams(&self, k: usize, cap: usize) -> SymFn {
        assert!(k >= 1, "Adams operation needs k >= 1");
        let mut out = SymFn::zero();
        for (mu, v) in &self.terms {
            if mu.size() * k > cap {
                continue;
            }
            // z_{kμ} / z_μ = k^{ℓ(μ)}
            let f = BigRational::from_integer(BigInt::from(k).pow(mu.len() as u32));
            out.insert(mu.scale(k), v.substitute_power(k).scale(&f));
        }
        out
    }

    /// Evaluates the `t` coefficients at a number.
    pub fn eval_t(&self, t: &BigRational) -> SymFn {
        let mut out = SymFn::zero();
        for (mu, v) in &self.terms {
            out.insert(mu.clone(), Poly::constant(v.eval(t)));
        }
        out
    }
}

/// Plethysm `f[g]` truncated at degree `cap`. Coefficients of `f` stay
/// outside; inside `p_k[g]` the variable `t` becomes `t^k`.
pub fn plethysm(f: &SymFn, g: &SymFn, cap: usize) -> Result<SymFn> {
    if g.terms.contains_key(&Partition::row(0)) {
        return Err(Error::InvalidInput("plethysm needs an inner function without constant term".into()));
    }
    let gmin = match g.min_degree() {
        None => {
            // f[0] is the constant term of f
            return Ok(f.degree_part(0));
        }
        Some(d) => d,
    };
    let mut adams: BTreeMap<usize, Vec<SymFn>> = BTreeMap::new();
    let mut out = SymFn::zero();
    for (mu, c) in &f.terms {
        if mu.size() * gmin > cap {
            continue;
        }
        let mut term = SymFn::one();
        for (r, m) in mu.multiplicities() {
            let powers = adams.entry(r).or_insert_with(|| vec![SymFn::one(), g.adams(r, cap)]);
            while powers.len() <= m {
                let next = powers.last().expect("nonempty").mul(&powers[1], cap);
                powers.push(next);
            }
            term = term.mul(&powers[m], cap);
        }
        let z = BigRational::from_integer(mu.z().into());
        out = out.add(&term.scale(&c.scale(&(BigRational::one() / z))));
    }
    Ok(out)
}

impl fmt::Debug for SymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mu, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{v}]p{mu}/z")?;
        }
        Ok(())
    }
}
