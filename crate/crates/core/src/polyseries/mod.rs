//! Exact polynomials, rational generating functions and their asymptotics.
//!
//! Rational functions are normalized so the denominator has constant term 1;
//! every denominator that arises from a dimension sequence of the kind
//! studied here is a product of factors `(1 - j u)`, so poles read off as
//! the integers `j`.

mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinat::{factorial, stirling2};
use crate::error::{Error, Result};

pub use poly::{rat, IntPoly, Poly, Ring, UPoly};

/// Held-out terms every fit must reproduce beyond the ones that determine it.
pub const VALIDATION_MARGIN: usize = 5;
/// Numerator degree allowed on top of the candidate denominator degree.
pub const NUMERATOR_SLACK: usize = 10;
/// Default cap on the multiplicity of each pole when fitting.
pub const DEFAULT_MULT_CAP: usize = 8;

/// Exact values of a sequence at the contiguous indices `start, start+1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqTable {
    pub start: usize,
    pub values: Vec<BigRational>,
}

impl SeqTable {
    pub fn new(start: usize, values: Vec<BigRational>) -> Self {
        SeqTable { start, values }
    }

    pub fn from_ints<I, T>(start: usize, values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        SeqTable { start, values: values.into_iter().map(|v| BigRational::from_integer(v.into())).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at index `n`, if inside the table.
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        n.checked_sub(self.start).and_then(|k| self.values.get(k))
    }

    /// Last index held by the table.
    pub fn end(&self) -> usize {
        self.start + self.values.len().saturating_sub(1)
    }
}

/// A reduced rational function `num / den` with `den(0) = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Reduces by the gcd and normalizes `den(0) = 1`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFn { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let inv = BigRational::one() / c0;
        Ok(RatFn { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Π_j (1 - j u)^{m_j}`.
    pub fn pole_denominator(poles: &[(u64, usize)]) -> Poly {
        let mut d = Poly::one();
        for &(j, m) in poles {
            let f = Poly::new(vec![BigRational::one(), -BigRational::from_integer(j.into())]);
            d = &d * &f.pow(m as u32);
        }
        d
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFn::new(num, &self.den * &other.den).expect("sum of normalized rational functions")
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        RatFn::new(num, &self.den * &other.den).expect("difference of normalized rational functions")
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: usize) -> RatFn {
        RatFn { num: &self.num * &Poly::monomial(BigRational::one(), k), den: self.den.clone() }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        format!("({}) / ({})", self.num.fmt_var(var), self.den.fmt_var(var))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("u"))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

/// Maclaurin coefficients of `r` through `u^n`.
pub fn series(r: &RatFn, n: usize) -> SeqTable {
    SeqTable::new(0, series_coeffs(&r.num, &r.den, n + 1))
}

fn series_coeffs(num: &Poly, den: &Poly, len: usize) -> Vec<BigRational> {
    let d0 = den.coeff(0);
    assert!(!d0.is_zero(), "series needs den(0) != 0");
    let inv = BigRational::one() / &d0;
    let mut out: Vec<BigRational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num.coeff(k);
        for (i, c) in den.coeffs().iter().enumerate().skip(1) {
            if i > k {
                break;
            }
            acc -= c.clone() * &out[k - i];
        }
        out.push(acc * &inv);
    }
    out
}

/// Fits a rational function whose denominator is `Π_{j ∈ poles} (1 - j u)^{m_j}`
/// with `m_j <= mult_cap`, of minimal total denominator degree, reproducing
/// every supplied term.
///
/// Candidates are tried in increasing total degree, multiplicity vectors in
/// lexicographic order. The numerator of a candidate is read off the product
/// `den · series`; the candidate is accepted when that product vanishes on at
/// least [`VALIDATION_MARGIN`] further terms. Returns `Ok(None)` when no
/// candidate within the caps (and within reach of the data) fits.
pub fn fit_rational(seq: &SeqTable, poles: &[u64], mult_cap: usize) -> Result<Option<RatFn>> {
    let mut poles: Vec<u64> = poles.to_vec();
    poles.sort_unstable();
    poles.dedup();
    if poles.contains(&0) {
        return Err(Error::InvalidInput("poles are positive integers j for 1/j".into()));
    }
    let len = seq.len();
    let need0 = NUMERATOR_SLACK + 1 + VALIDATION_MARGIN;
    if len < need0 {
        return Err(Error::InsufficientData { have: len, need: need0 });
    }
    let max_total = mult_cap * poles.len();
    for total in 0..=max_total {
        let budget = total + NUMERATOR_SLACK;
        if len < budget + 1 + VALIDATION_MARGIN {
            break;
        }
        for mults in compositions_capped(total, poles.len(), mult_cap) {
            let spec: Vec<(u64, usize)> = poles.iter().copied().zip(mults).collect();
            let den = RatFn::pole_denominator(&spec);
            let prod = Poly::new(seq.values.clone()).mul_trunc(&den, len - 1);
            if (budget + 1..len).all(|k| prod.coeff(k).is_zero()) {
                let num = prod.truncate(budget);
                let r = RatFn::new(num, den)?;
                return Ok(Some(r.shift(seq.start)));
            }
        }
    }
    Ok(None)
}

/// All vectors of `parts` nonnegative integers `<= cap` summing to `total`,
/// in lexicographic order.
fn compositions_capped(total: usize, parts: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(rem: usize, left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=rem.min(cap) {
            if rem - m > cap * (left - 1) {
                continue;
            }
            cur.push(m);
            rec(rem - m, left - 1, cap, cur, out);
            cur.pop();
        }
    }
    rec(total, parts, cap, &mut Vec::new(), &mut out);
    out
}

/// One term `c / (1 - j u)^m` of a partial-fraction decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    pub pole: u64,
    pub mult: usize,
    pub coeff: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly_part: Poly,
    /// Sorted by pole, then by multiplicity; zero coefficients omitted.
    pub terms: Vec<PoleTerm>,
    /// Multiplicity of each pole in the reduced denominator.
    pub poles: Vec<(u64, usize)>,
}

impl PartialFractions {
    pub fn coeff(&self, pole: u64, mult: usize) -> BigRational {
        self.terms
            .iter()
            .find(|t| t.pole == pole && t.mult == mult)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Sums the decomposition back into a single rational function.
    pub fn recombine(&self) -> RatFn {
        let mut acc = RatFn::from_poly(self.poly_part.clone());
        for t in &self.terms {
            let den = RatFn::pole_denominator(&[(t.pole, t.mult)]);
            let term = RatFn::new(Poly::constant(t.coeff.clone()), den).expect("pole term");
            acc = acc.add(&term);
        }
        acc
    }
}

/// Factors a normalized denominator into `Π (1 - j u)^{m_j}`.
fn factor_pole_denominator(den: &Poly) -> Result<Vec<(u64, usize)>> {
    let deg = match den.degree() {
        None => return Err(Error::InvalidInput("zero denominator".into())),
        Some(d) => d,
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    // Roots j of the reversed polynomial are bounded by the Cauchy bound.
    let lead = den.coeff(0);
    let bound = den.coeffs().iter().skip(1).map(|c| (c.clone() / &lead).abs()).fold(BigRational::zero(), |a, b| {
        if b > a {
            b
        } else {
            a
        }
    });
    let bound = (bound + BigRational::one()).ceil().to_integer().to_u64().unwrap_or(u64::MAX);
    let mut rest = den.clone();
    let mut out = Vec::new();
    let mut j = 1u64;
    while rest.degree().unwrap_or(0) > 0 && j <= bound {
        let root = BigRational::new(BigInt::one(), BigInt::from(j));
        let factor = Poly::new(vec![BigRational::one(), -BigRational::from_integer(j.into())]);
        let mut m = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&root).is_zero() {
            rest = rest.div_rem(&factor).0;
            m += 1;
        }
        if m > 0 {
            out.push((j, m));
        }
        j += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::NonLinearFactor);
    }
    Ok(out)
}

/// Decomposes `r = poly_part + Σ c_{j,m} / (1 - j u)^m`.
pub fn partial_fractions(r: &RatFn) -> Result<PartialFractions> {
    let poles = factor_pole_denominator(&r.den)?;
    let (poly_part, _) = r.num.div_rem(&r.den);
    let mut terms = Vec::new();
    for &(j, m) in &poles {
        let jr = BigRational::from_integer(j.into());
        let others: Vec<(u64, usize)> = poles.iter().copied().filter(|&(k, _)| k != j).collect();
        let rest = RatFn::pole_denominator(&others);
        // Expand in w = 1 - j u, i.e. u = (1 - w)/j.
        let u_of_w = Poly::new(vec![BigRational::one() / &jr, -BigRational::one() / &jr]);
        // den(0) = 1 forces den = (1 - j u)^m · rest exactly.
        let a = r.num.compose(&u_of_w);
        let b = rest.compose(&u_of_w);
        let local = series_coeffs(&a, &b, m);
        for (s, c) in local.into_iter().enumerate() {
            if !c.is_zero() {
                terms.push(PoleTerm { pole: j, mult: m - s, coeff: c });
            }
        }
    }
    terms.sort_by_key(|x| (x.pole, x.mult));
    Ok(PartialFractions { poly_part, terms, poles })
}

/// The limit of `a_n / d^n`: the coefficient of `1/(1 - d u)` in the
/// partial-fraction decomposition, or zero when there is no pole at `1/d`.
pub fn r_extract(r: &RatFn, d: u64) -> Result<BigRational> {
    let pf = partial_fractions(r)?;
    if let Some(&(j, _)) = pf.poles.iter().find(|&&(j, _)| j > d) {
        return Err(Error::InvalidInput(format!("pole at 1/{j} lies beyond 1/{d}")));
    }
    if let Some(&(_, m)) = pf.poles.iter().find(|&&(j, _)| j == d) {
        if m >= 2 {
            return Err(Error::LimitDoesNotExist { d, order: m });
        }
    }
    Ok(pf.coeff(d, 1))
}

/// Polynomials `p_0, …, p_d` with `Σ_n a_n u^n / n! = Σ_j p_j(u) e^{j u}`
/// where `a_n` are the Maclaurin coefficients of `r`.
///
/// Each pole contributes `a_n ⊇ q_j(n) j^n` with `q_j` a polynomial in `n`;
/// rewriting `q_j` in the falling-factorial basis `(n)_k` turns each term
/// into `b_k (j u)^k e^{j u}`.
pub fn egf_form(r: &RatFn) -> Result<Vec<Poly>> {
    let pf = partial_fractions(r)?;
    let dmax = pf.poles.iter().map(|&(j, _)| j).max().unwrap_or(0) as usize;
    let mut out = vec![Poly::zero(); dmax + 1];
    out[0] = Poly::new(
        pf.poly_part
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| c.clone() / BigRational::from_integer(factorial(n).into()))
            .collect(),
    );
    for &(j, _) in &pf.poles {
        // q_j(n) = Σ_m c_{j,m} C(n + m - 1, m - 1)
        let mut q = Poly::zero();
        for t in pf.terms.iter().filter(|t| t.pole == j) {
            q = &q + &binomial_poly(t.mult - 1).scale(&t.coeff);
        }
        let jr = BigRational::from_integer(j.into());
        let mut p = vec![BigRational::zero(); q.coeffs().len()];
        for (e, qe) in q.coeffs().iter().enumerate() {
            for (l, pl) in p.iter_mut().enumerate().take(e + 1) {
                let s = stirling2(e, l);
                if !s.is_zero() {
                    *pl += &(qe.clone() * BigRational::from_integer(s.into()));
                }
            }
        }
        let mut jpow = BigRational::one();
        for pl in p.iter_mut() {
            *pl = pl.clone() * &jpow;
            jpow *= &jr;
        }
        out[j as usize] = Poly::new(p);
    }
    Ok(out)
}

/// `C(n + k, k)` as a polynomial in `n`.
fn binomial_poly(k: usize) -> Poly {
    let mut p = Poly::one();
    for s in 1..=k {
        // (n + s) / s
        let f = Poly::new(vec![BigRational::one(), BigRational::new(BigInt::one(), BigInt::from(s))]);
        p = &p * &f;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h1() -> RatFn {
        let num = Poly::monomial(BigRational::one(), 4);
        RatFn::new(num, RatFn::pole_denominator(&[(1, 3), (2, 1)])).unwrap()
    }

    fn h2() -> RatFn {
        let num = Poly::from_ints([0, 0, 0, 0, 0, 0, 15, -50, 40, 4]);
        RatFn::new(num, RatFn::pole_denominator(&[(1, 5), (2, 3), (4, 1)])).unwrap()
    }

    /// Long division of the numerator by the expanded denominator, done
    /// independently with i128 arithmetic.
    fn long_division_i128(num: &[i128], den: &[i128], n: usize) -> Vec<i128> {
        let mut out = vec![0i128; n + 1];
        for k in 0..=n {
            let mut acc = num.get(k).copied().unwrap_or(0);
            for i in 1..den.len().min(k + 1) {
                acc -= den[i] * out[k - i];
            }
            out[k] = acc / den[0];
        }
        out
    }

    fn expand_den(poles: &[(i128, usize)]) -> Vec<i128> {
        let mut d = vec![1i128];
        for &(j, m) in poles {
            for _ in 0..m {
                let mut nd = vec![0i128; d.len() + 1];
                for (k, c) in d.iter().enumerate() {
                    nd[k] += c;
                    nd[k + 1] -= j * c;
                }
                d = nd;
            }
        }
        d
    }

    #[test]
    fn series_examples() {
        let s = series(&h1(), 7);
        let want: Vec<BigRational> = [0, 0, 0, 0, 1, 5, 16, 42].iter().map(|&v| rat(v, 1)).collect();
        assert_eq!(s.values, want);
        let geo = RatFn::new(Poly::one(), Poly::from_ints([1, -1])).unwrap();
        assert_eq!(series(&geo, 3).values, vec![rat(1, 1); 4]);

        let oracle = long_division_i128(&[0, 0, 0, 0, 0, 0, 15, -50, 40, 4], &expand_den(&[(1, 5), (2, 3), (4, 1)]), 7);
        assert_eq!(oracle[7], 175);
        assert_eq!(series(&h2(), 7).values[7], rat(175, 1));
    }

    #[test]
    fn pole_at_zero_rejected() {
        assert_eq!(RatFn::new(Poly::one(), Poly::from_ints([0, 1])), Err(Error::PoleAtZero));
    }

    #[test]
    fn fit_examples() {
        let d1: Vec<i64> = (1..=20).map(|n| (1i64 << (n - 1)) - 1 - n * (n - 1) / 2).collect();
        let fit = fit_rational(&SeqTable::from_ints(1, d1), &[1, 2], 8).unwrap().unwrap();
        assert_eq!(fit, h1());

        let zero = fit_rational(&SeqTable::from_ints(0, vec![0; 20]), &[1, 2], 8).unwrap().unwrap();
        assert!(zero.is_zero());

        let short = fit_rational(&SeqTable::from_ints(0, vec![1; 5]), &[1], 8);
        assert!(matches!(short, Err(Error::InsufficientData { .. })));

        // 1/(1-3u) is not reachable with poles {1,2}.
        let threes: Vec<i64> = (0..30).map(|n| 3i64.pow(n)).collect();
        assert_eq!(fit_rational(&SeqTable::from_ints(0, threes), &[1, 2], 3).unwrap(), None);
    }

    #[test]
    fn fit_h2_from_its_series() {
        let s = series(&h2(), 30);
        let seq = SeqTable::new(1, s.values[1..].to_vec());
        let fit = fit_rational(&seq, &[1, 2, 3, 4], 8).unwrap().unwrap();
        assert_eq!(fit, h2());
    }

    #[test]
    fn partial_fraction_examples() {
        let pf = partial_fractions(&h1()).unwrap();
        assert_eq!(pf.coeff(2, 1), rat(1, 2));
        assert_eq!(pf.recombine(), h1());

        let geo = RatFn::new(Poly::one(), Poly::from_ints([1, -1])).unwrap();
        let pf = partial_fractions(&geo).unwrap();
        assert_eq!(pf.terms, vec![PoleTerm { pole: 1, mult: 1, coeff: rat(1, 1) }]);

        let pf = partial_fractions(&h2()).unwrap();
        assert_eq!(pf.coeff(4, 1), rat(1, 24));
        assert_eq!(pf.recombine(), h2());

        // Residue oracle: lim_{u -> 1/4} (1 - 4u) H2(u) evaluated directly.
        let quarter = rat(1, 4);
        let rest = RatFn::pole_denominator(&[(1, 5), (2, 3)]);
        assert_eq!(h2().num().eval(&quarter) / rest.eval(&quarter), rat(1, 24));

        let irreducible = RatFn::new(Poly::one(), Poly::from_ints([1, 0, 1])).unwrap();
        assert_eq!(partial_fractions(&irreducible), Err(Error::NonLinearFactor));
    }

    #[test]
    fn r_extract_examples() {
        assert_eq!(r_extract(&h1(), 2).unwrap(), rat(1, 2));
        assert_eq!(r_extract(&h2(), 4).unwrap(), rat(1, 24));
        let geo = RatFn::new(Poly::one(), Poly::from_ints([1, -1])).unwrap();
        assert_eq!(r_extract(&geo, 2).unwrap(), BigRational::zero());
        let double = RatFn::new(Poly::one(), RatFn::pole_denominator(&[(2, 2)])).unwrap();
        assert!(matches!(r_extract(&double, 2), Err(Error::LimitDoesNotExist { .. })));
    }

    #[test]
    fn r_extract_ratio_window_approaches_limit() {
        let s = series(&h1(), 40);
        let r = r_extract(&h1(), 2).unwrap();
        let gaps: Vec<BigRational> = (36..=40)
            .map(|n| (s.values[n].clone() / BigRational::from_integer(BigInt::from(2).pow(n as u32)) - &r).abs())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    }

    fn egf_series_check(r: &RatFn, upto: usize) {
        let ps = egf_form(r).unwrap();
        let s = series(r, upto);
        for n in 0..=upto {
            // n! [u^n] Σ_j p_j(u) e^{ju} = Σ_j Σ_k p_{j,k} n!/(n-k)! j^{n-k}
            let mut total = BigRational::zero();
            for (j, p) in ps.iter().enumerate() {
                for (k, c) in p.coeffs().iter().enumerate() {
                    if k > n {
                        break;
                    }
                    let ff = factorial(n) / factorial(n - k);
                    let jp = BigInt::from(j).pow((n - k) as u32);
                    total += &(c.clone() * BigRational::from_integer(BigInt::from(ff) * jp));
                }
            }
            assert_eq!(total, s.values[n], "n={n}");
        }
    }

    #[test]
    fn egf_examples() {
        let ps = egf_form(&h1()).unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(ps[0], Poly::constant(rat(1, 2)));
        // 2^{n-1} - 1 - C(n,2) forces p_1 = -1 - u^2/2 (n = 2 gives 0)
        assert_eq!(ps[1], Poly::new(vec![rat(-1, 1), rat(0, 1), rat(-1, 2)]));
        assert_eq!(ps[2], Poly::constant(rat(1, 2)));
        egf_series_check(&h1(), 25);

        let zero = egf_form(&RatFn::from_poly(Poly::zero())).unwrap();
        assert!(zero.iter().all(|p| p.is_zero()));

        let ps = egf_form(&h2()).unwrap();
        assert_eq!(ps[4], Poly::constant(rat(1, 24)));
        assert_eq!(ps[4].coeff(0), r_extract(&h2(), 4).unwrap());
        egf_series_check(&h2(), 25);
    }

    fn arb_ansatz() -> impl Strategy<Value = RatFn> {
        (prop::collection::vec(-20i64..20, 1..6), prop::collection::vec(0usize..3, 3)).prop_map(|(num, mults)| {
            let poles: Vec<(u64, usize)> = mults.iter().enumerate().map(|(k, &m)| (k as u64 + 1, m)).collect();
            RatFn::new(Poly::from_ints(num), RatFn::pole_denominator(&poles)).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn fit_round_trip(r in arb_ansatz()) {
            let deg = r.den().degree().unwrap() + NUMERATOR_SLACK + 1 + VALIDATION_MARGIN;
            let s = series(&r, deg + 4);
            let fit = fit_rational(&s, &[1, 2, 3], 3).unwrap().unwrap();
            prop_assert_eq!(series(&fit, deg + 4), s);
            prop_assert_eq!(fit, r);
        }

        #[test]
        fn partial_fractions_recombine(r in arb_ansatz()) {
            let pf = partial_fractions(&r).unwrap();
            prop_assert_eq!(pf.recombine(), r);
        }

        #[test]
        fn egf_matches_series(r in arb_ansatz()) {
            egf_series_check(&r, 12);
        }
    }
}
