//! Equivariant KL polynomials by explicit induction inside `S_n`.
//!
//! For each flat type the stabilizer of a representative set partition is
//! found by filtering all of `S_n`, its character on the strata data is
//! evaluated permutation by permutation, and the result is induced by class
//! fusion. Only used as an independent check on small `n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::os::eq_char_poly_os;
use super::{solve_graded, GradedClassFn};
use crate::combinat::{partitions, Partition};
use crate::error::{Error, Result};
use crate::polyseries::Poly;

pub const BRUTE_MAX_N: usize = 6;

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in k..cur.len() {
            cur.swap(k, j);
            rec(k + 1, cur, out);
            cur.swap(k, j);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

pub(crate) fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts).expect("cycle lengths are positive")
}

type Table = BTreeMap<Partition, Poly>;

fn to_table(g: &GradedClassFn) -> Table {
    partitions(g.n()).into_iter().map(|mu| (mu.clone(), g.at(&mu))).collect()
}

/// Equivariant KL polynomial of `M_n` via explicit induction, `n <= 6`.
pub fn eqkl_braid_brute(n: usize) -> Result<GradedClassFn> {
    if n == 0 || n > BRUTE_MAX_N {
        return Err(Error::Infeasible(format!("brute-force induction supports 1 <= n <= {BRUTE_MAX_N}, got {n}")));
    }
    let chis: Vec<Table> = (0..=n)
        .map(|b| if b == 0 { Table::new() } else { to_table(&eq_char_poly_os(b).expect("within OS bound")) })
        .collect();
    let mut kls: Vec<Table> = vec![Table::new()];
    for m in 1..=n {
        kls.push(brute_step(m, &chis, &kls));
    }
    GradedClassFn::from_table(n, &kls[n])
}

fn brute_step(n: usize, chis: &[Table], kls: &[Table]) -> Table {
    if n == 1 {
        return partitions(1).into_iter().map(|mu| (mu, Poly::one())).collect();
    }
    let perms = all_perms(n);
    let mut rhs: Table = partitions(n).into_iter().map(|mu| (mu, Poly::zero())).collect();
    for lambda in partitions(n) {
        if lambda.len() == n {
            continue;
        }
        let k = lambda.len();
        let mut block_of = vec![0usize; n];
        let mut firsts = Vec::with_capacity(k);
        let mut start = 0;
        for (j, &len) in lambda.parts().iter().enumerate() {
            firsts.push(start);
            block_of[start..start + len].fill(j);
            start += len;
        }
        let sizes = lambda.parts();
        let stab: Vec<&Vec<usize>> =
            perms.iter().filter(|h| (0..n).all(|v| block_of[h[v]] == block_of[h[firsts[block_of[v]]]])).collect();
        let mut sums: Table = Table::new();
        for h in &stab {
            let bar: Vec<usize> = firsts.iter().map(|&f| block_of[h[f]]).collect();
            let mut value = kls[k][&cycle_type(&bar)].clone();
            let mut seen = vec![false; k];
            for j in 0..k {
                if seen[j] {
                    continue;
                }
                let mut c = 0;
                let mut jj = j;
                while !seen[jj] {
                    seen[jj] = true;
                    jj = bar[jj];
                    c += 1;
                }
                // h^c maps block j to itself; read off its cycle type there
                let lo = firsts[j];
                let local: Vec<usize> = (lo..lo + sizes[j])
                    .map(|v| {
                        let mut w = v;
                        for _ in 0..c {
                            w = h[w];
                        }
                        w - lo
                    })
                    .collect();
                let chi = &chis[sizes[j]][&cycle_type(&local)];
                value = &value * &chi.substitute_power(c);
            }
            let entry = sums.entry(cycle_type(h)).or_insert_with(Poly::zero);
            *entry = &*entry + &value;
        }
        let order = BigRational::from_integer(BigInt::from(stab.len()));
        for (mu, s) in sums {
            let factor = BigRational::from_integer(mu.z().into()) / &order;
            let e = rhs.get_mut(&mu).expect("all classes present");
            *e = &*e + &s.scale(&factor);
        }
    }
    solve_graded(n - 1, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type(&[1, 0, 2]), Partition::new(vec![2, 1]).unwrap());
        assert_eq!(cycle_type(&[1, 2, 0, 4, 3]), Partition::new(vec![3, 2]).unwrap());
        assert_eq!(all_perms(4).len(), 24);
    }

    #[test]
    fn small_cases_are_trivial() {
        for n in 1..=3 {
            let q = eqkl_braid_brute(n).unwrap();
            assert_eq!(q.degree(), Some(0));
            assert_eq!(q.coeff(0), super::super::ClassFn::trivial(n));
        }
    }
}
