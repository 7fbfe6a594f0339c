//! Characters of `S_n` on the cohomology of the configuration space of `n`
//! points, from an explicit basis of the Arnold ring.
//!
//! Generators are `x_{ab}` with `a < b`. Basis monomials have distinct
//! maxima and are kept sorted by `(max, min)`. A product with a repeated
//! maximum is rewritten with `x_{ab} x_{cb} = x_{ac} x_{cb} + x_{ab} x_{ac}`
//! for `a < c < b`, which lowers the multiset of maxima.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ClassFn, GradedClassFn};
use crate::combinat::{partitions, stirling1_unsigned, Partition};
use crate::error::{Error, Result};

pub const OS_MAX_N: usize = 8;

type Gen = (u8, u8);
type Word = Vec<Gen>;
type Combo = Rc<Vec<(Word, i64)>>;

/// Basis of the degree-`i` part for `n` points.
pub(crate) fn os_basis(n: usize, i: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(i);
    fn rec(n: usize, i: usize, next_max: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for b in next_max..n {
            for a in 0..b {
                cur.push((a as u8, b as u8));
                rec(n, i, b + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, i, 1, &mut cur, &mut out);
    out
}

fn key(g: &Gen) -> (u8, u8) {
    (g.1, g.0)
}

/// Sorts a word of anticommuting generators; `None` if a generator repeats.
fn sort_signed(mut w: Word) -> Option<(Word, i64)> {
    let mut sign = 1;
    for k in 1..w.len() {
        let mut j = k;
        while j > 0 && key(&w[j - 1]) >= key(&w[j]) {
            if w[j - 1] == w[j] {
                return None;
            }
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    Some((w, sign))
}

struct Straightener {
    memo: HashMap<Word, Combo>,
}

impl Straightener {
    /// Expands a sorted word in the basis.
    fn reduce(&mut self, w: &Word) -> Combo {
        if let Some(c) = self.memo.get(w) {
            return c.clone();
        }
        let clash = (1..w.len()).find(|&p| w[p - 1].1 == w[p].1);
        let combo = match clash {
            None => Rc::new(vec![(w.clone(), 1)]),
            Some(p) => {
                let (a, b) = w[p - 1];
                let c = w[p].0;
                let mut acc: HashMap<Word, i64> = HashMap::new();
                for (first, second) in [((a, c), (c, b)), ((a, b), (a, c))] {
                    let mut v = w.clone();
                    v[p - 1] = first;
                    v[p] = second;
                    if let Some((sorted, sign)) = sort_signed(v) {
                        for (basis, coeff) in self.reduce(&sorted).iter() {
                            *acc.entry(basis.clone()).or_insert(0) += sign * coeff;
                        }
                    }
                }
                let mut v: Vec<(Word, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
                v.sort();
                Rc::new(v)
            }
        };
        self.memo.insert(w.clone(), combo.clone());
        combo
    }
}

/// A permutation of `0..n` with cycle type `mu`, cycles on consecutive
/// points.
pub(crate) fn representative(mu: &Partition) -> Vec<usize> {
    let mut perm = Vec::with_capacity(mu.size());
    let mut start = 0;
    for &len in mu.parts() {
        for k in 0..len {
            perm.push(start + (k + 1) % len);
        }
        start += len;
    }
    perm
}

fn trace(st: &mut Straightener, basis: &[Word], sigma: &[usize]) -> i64 {
    let mut tr = 0;
    for m in basis {
        let image: Word = m
            .iter()
            .map(|&(a, b)| {
                let (u, v) = (sigma[a as usize] as u8, sigma[b as usize] as u8);
                (u.min(v), u.max(v))
            })
            .collect();
        if let Some((sorted, sign)) = sort_signed(image) {
            if let Some((_, c)) = st.reduce(&sorted).iter().find(|(w, _)| w == m) {
                tr += sign * c;
            }
        }
    }
    tr
}

/// Character of `S_n` on `H^i` of the configuration space of `n` points.
pub fn os_character(n: usize, i: usize) -> Result<ClassFn> {
    if n == 0 || n > OS_MAX_N {
        return Err(Error::InvalidInput(format!("os_character supports 1 <= n <= {OS_MAX_N}, got {n}")));
    }
    let basis = os_basis(n, i);
    let expected = if i < n { stirling1_unsigned(n, n - i) } else { 0u32.into() };
    assert_eq!(basis.len(), usize::try_from(&expected).expect("dimension fits"), "Arnold basis size");
    let mut st = Straightener { memo: HashMap::new() };
    let mut values = Vec::new();
    for mu in partitions(n) {
        let tr = trace(&mut st, &basis, &representative(&mu));
        values.push((mu, BigRational::from_integer(BigInt::from(tr))));
    }
    ClassFn::new(n, values)
}

/// `Σ_i (-1)^i [H^i] t^{n-1-i}` from the Arnold basis.
pub fn eq_char_poly_os(n: usize) -> Result<GradedClassFn> {
    if n == 0 || n > OS_MAX_N {
        return Err(Error::InvalidInput(format!("eq_char_poly_os supports 1 <= n <= {OS_MAX_N}, got {n}")));
    }
    let mut coeffs = vec![ClassFn::zero(n); n];
    for i in 0..n {
        let mut c = os_character(n, i)?;
        if i % 2 == 1 {
            c = c.neg();
        }
        coeffs[n - 1 - i] = c;
    }
    Ok(GradedClassFn::new(n, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyseries::IntPoly;
    use crate::polyseries::Poly;

    #[test]
    fn dimensions() {
        for n in 1..=7 {
            for i in 0..n {
                assert_eq!(os_basis(n, i).len(), usize::try_from(&stirling1_unsigned(n, n - i)).unwrap());
            }
            assert_eq!(os_dimension_poly(n), IntPoly::braid_char_poly(n).to_rational());
        }
    }

    #[test]
    fn examples() {
        let triv = os_character(5, 0).unwrap();
        assert_eq!(triv, ClassFn::trivial(5));
        let c = os_character(3, 1).unwrap();
        assert_eq!(c.value(&Partition::new(vec![2, 1]).unwrap()), BigRational::from_integer(1.into()));
        assert_eq!(c.value(&Partition::ones(3)), BigRational::from_integer(3.into()));
        assert_eq!(os_character(4, 2).unwrap().dim(), BigRational::from_integer(11.into()));
        assert!(os_character(9, 1).is_err());
    }

    #[test]
    fn arnold_relation_holds() {
        let mut st = Straightener { memo: HashMap::new() };
        // x01 x12 + x12 x20 + x20 x01 = 0, each product sorted and straightened
        let words: [Word; 3] = [vec![(0, 1), (1, 2)], vec![(1, 2), (0, 2)], vec![(0, 2), (0, 1)]];
        let mut acc: HashMap<Word, i64> = HashMap::new();
        for w in words {
            let (s, sign) = sort_signed(w).unwrap();
            for (b, c) in st.reduce(&s).iter() {
                *acc.entry(b.clone()).or_insert(0) += sign * c;
            }
        }
        assert!(acc.values().all(|&c| c == 0));
    }

    /// The identity-class values `Σ_i (-1)^i dim H^i t^{n-1-i}` as a check.
    fn os_dimension_poly(n: usize) -> Poly {
        Poly::new(
            (0..n)
                .map(|j| {
                    let i = n - 1 - j;
                    let d = BigRational::from_integer(BigInt::from(os_basis(n, i).len()));
                    if i % 2 == 1 {
                        -d
                    } else {
                        d
                    }
                })
                .collect(),
        )
    }
}
