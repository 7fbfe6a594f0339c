//! Verification suites behind `braidkl verify`.

use braidkl::combinat::{binomial, factorial, stirling1_unsigned, stirling2};
use braidkl::eqkl::{
    eq_char_poly, eqkl_braid, eqkl_braid_brute, is_honest, os_character, row_bound_check, specht_table, ClassFn,
};
use braidkl::fsmod::{h1_generation_check, h1_pullback, hom_fs_count, H1Vector, Surjection};
use braidkl::graphmat::{cone_extend, Graph};
use braidkl::klcore::{c1_count, conjecture_top_check, d_coeff, d_coeff_graph, kl_braid, kl_graphic};
use braidkl::polyseries::{egf_form, fit_rational, r_extract, Poly, RatFn, SeqTable, DEFAULT_MULT_CAP};
use braidkl::specseq::{euler_identity, euler_identity_graph, ratio_diagnostic};
use braidkl::Result;
use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "paper-i1")]
    PaperI1,
    #[value(name = "paper-i2")]
    PaperI2,
    Euler,
    Fs,
    Conjecture,
    Relative,
    Equivariant,
    Oracles,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::PaperI1,
        Suite::PaperI2,
        Suite::Euler,
        Suite::Fs,
        Suite::Conjecture,
        Suite::Relative,
        Suite::Equivariant,
        Suite::Oracles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PaperI1 => "paper-i1",
            Suite::PaperI2 => "paper-i2",
            Suite::Euler => "euler",
            Suite::Fs => "fs",
            Suite::Conjecture => "conjecture",
            Suite::Relative => "relative",
            Suite::Equivariant => "equivariant",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        }
    }

    pub fn run(self) -> Result<Vec<Check>> {
        match self {
            Suite::PaperI1 => paper_i1(),
            Suite::PaperI2 => paper_i2(),
            Suite::Euler => euler(),
            Suite::Fs => fs(),
            Suite::Conjecture => conjecture(),
            Suite::Relative => relative(),
            Suite::Equivariant => equivariant(),
            Suite::Oracles => oracles(),
            Suite::All => unreachable!("expanded by the caller"),
        }
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn big(x: BigUint) -> BigInt {
    BigInt::from(x)
}

fn d_seq(i: usize, hi: usize) -> SeqTable {
    SeqTable::from_ints(0, (0..=hi).map(|n| big(d_coeff(i, n))))
}

fn fit(i: usize, hi: usize) -> Result<Option<RatFn>> {
    let poles: Vec<u64> = (1..=2 * i as u64).collect();
    fit_rational(&d_seq(i, hi), &poles, DEFAULT_MULT_CAP)
}

fn fit_checks(i: usize, expected: &RatFn, r: BigRational, out: &mut Vec<Check>) -> Result<()> {
    let found = fit(i, 30)?;
    out.push(Check::eq(
        format!("fitted generating function, i={i}"),
        expected,
        found.as_ref().map_or("no fit".to_string(), |f| f.to_string()),
    ));
    let got = match &found {
        Some(f) => r_extract(f, 2 * i as u64)?.to_string(),
        None => "no fit".into(),
    };
    out.push(Check::eq(format!("r_{} of fitted function", 2 * i), &r, got));
    let constant = BigRational::new(big(d_coeff(i - 1, 2 * i)), big(factorial(2 * i)));
    out.push(Check::eq(format!("r_{} = d_coeff({},{})/{}!", 2 * i, i - 1, 2 * i, 2 * i), r, constant));
    Ok(())
}

fn paper_i1() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=25usize {
        let expected: BigInt = BigInt::from(2).pow(n as u32 - 1) - 1 - big(binomial(n, 2));
        out.push(Check::eq(format!("t coefficient of KL(M_{n})"), expected, kl_braid(n)?.coeff(1)));
    }
    let den = &Poly::from_ints([1, -1]).pow(3) * &Poly::from_ints([1, -2]);
    let expected = RatFn::new(Poly::monomial(BigRational::one(), 4), den)?;
    fit_checks(1, &expected, q(1, 2), &mut out)?;
    let ps = egf_form(&expected)?;
    let shown: Vec<String> = ps.iter().map(|p| p.fmt_var("u")).collect();
    let half = Poly::constant(q(1, 2));
    let p1 = Poly::new(vec![q(-1, 1), q(0, 1), q(-1, 2)]);
    let wanted: Vec<String> = [half.clone(), p1, half].iter().map(|p| p.fmt_var("u")).collect();
    out.push(Check::eq("exponential form p_0, p_1, p_2", wanted.join("; "), shown.join("; ")));
    Ok(out)
}

fn stirling_d2(n: usize) -> BigInt {
    let s1 = if n >= 2 { big(stirling1_unsigned(n, n - 2)) } else { BigInt::from(0) };
    s1 - big(stirling2(n, n - 1) * stirling2(n - 1, 2)) + big(stirling2(n, 3)) + big(stirling2(n, 4))
}

fn paper_i2() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=25 {
        out.push(Check::eq(format!("Stirling expression for d_coeff(2,{n})"), stirling_d2(n), d_coeff(2, n)));
    }
    let num = Poly::from_ints([0, 0, 0, 0, 0, 0, 15, -50, 40, 4]);
    let den = &(&Poly::from_ints([1, -1]).pow(5) * &Poly::from_ints([1, -2]).pow(3)) * &Poly::from_ints([1, -4]);
    fit_checks(2, &RatFn::new(num, den)?, q(1, 24), &mut out)?;
    let target = BigRational::new(big(d_coeff(2, 6)), big(factorial(6)));
    let row = ratio_diagnostic(3, [30]).pop().expect("one row");
    out.push(Check::lt("|d_coeff(3,30)/6^30 - d_coeff(2,6)/6!|", &(row.d_ratio - &target).abs(), &q(1, 100)));
    out.push(Check::lt("|b_dim(3,5,1,30)/6^30 - d_coeff(2,6)/6!|", &(row.b_ratio - &target).abs(), &q(1, 100)));
    Ok(out)
}

fn euler() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for i in 1..=3 {
        for n in i + 1..=12 {
            let r = euler_identity(i, n)?;
            out.push(Check::eq(format!("Euler identity i={i} n={n}"), r.rhs, r.lhs));
        }
    }
    Ok(out)
}

fn fs() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let r = h1_generation_check(n)?;
        out.push(Check::eq(format!("rank of pullbacks of e12 into H_1({n})"), r.target_dim, r.rank));
    }
    let parity = Surjection::new(2, vec![0, 1, 0])?;
    let image = h1_pullback(&parity, &H1Vector::basis(2, 0, 1)?)?;
    out.push(Check::eq("parity map pulls back e12", "e12 + e23", format!("{image:?}")));
    let mut triple: Vec<String> = h1_generation_check(3)?.witness_vectors.iter().map(|v| format!("{v:?}")).collect();
    triple.sort();
    out.push(Check::eq("spanning triple at n=3", "e12 + e13, e12 + e23, e13 + e23", triple.join(", ")));
    for n in 1..=12 {
        for m in 1..=n {
            out.push(Check::le(
                format!("hom count [{n}]->[{m}] <= {m}^{n}"),
                hom_fs_count(n, m),
                BigUint::from(m).pow(n as u32),
            ));
        }
    }
    Ok(out)
}

fn conjecture() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for i in 2..=4 {
        let r = conjecture_top_check(i)?;
        let c = Check::eq(format!("d_coeff({},{}) against the cactus count", i - 1, 2 * i), r.predicted, r.computed);
        out.push(if i >= 4 { c.informational() } else { c });
    }
    Ok(out)
}

fn relative() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let named = [("empty", Graph::empty(0)), ("K1", Graph::empty(1)), ("edge", Graph::path(2))];
    for (name, gamma) in &named {
        for n in 1..=8 - gamma.n_vertices() {
            let r = euler_identity_graph(gamma, 1, n)?;
            out.push(Check::eq(format!("Euler identity for {name}({n}), i=1"), r.rhs, r.lhs));
        }
    }
    let n = 22;
    for (name, gamma) in [("K1", Graph::empty(1)), ("edge", Graph::path(2)), ("path3", Graph::path(3))] {
        let ratio = BigRational::new(big(d_coeff_graph(&gamma, 1, n)?), BigInt::from(2).pow(n as u32));
        let target = BigRational::from_integer(BigInt::from(2).pow(gamma.n_vertices() as u32)) * q(1, 2);
        out.push(Check::lt(
            format!("|d_coeff_graph({name},1,{n})/2^{n} - 2^|V|/2|"),
            &(ratio - target).abs(),
            &q(1, 50),
        ));
    }
    let mut graphs = vec![Graph::path(5), Graph::cycle(6), Graph::star(7), Graph::complete(8)];
    for base in [Graph::empty(2), Graph::path(3), Graph::cycle(4)] {
        for k in 1..=4 {
            graphs.push(cone_extend(&base, k));
        }
    }
    for g in graphs {
        out.push(Check::eq(format!("c1_count of {g:?}"), kl_graphic(&g)?.coeff(1), c1_count(&g)?));
    }
    Ok(out)
}

fn equivariant() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=7 {
        let g = eqkl_braid(n)?;
        out.push(Check::eq(
            format!("identity values of eqkl({n})"),
            kl_braid(n)?.fmt_var("t"),
            g.at_identity().fmt_var("t"),
        ));
        out.push(Check::truth(format!("degree 0 of eqkl({n}) is trivial"), g.coeff(0) == ClassFn::trivial(n)));
        let honest = specht_table(n)?.iter().all(is_honest);
        out.push(Check::truth(format!("Specht multiplicities of eqkl({n}) are nonnegative integers"), honest));
    }
    for n in 3..=9usize {
        for i in 1..=(n - 2) / 2 {
            out.push(Check::truth(format!("row bound i={i} n={n}"), row_bound_check(i, n)?));
        }
    }
    for n in 1..=6 {
        out.push(Check::truth(format!("plethystic = brute force, n={n}"), eqkl_braid(n)? == eqkl_braid_brute(n)?));
    }
    Ok(out)
}

fn oracles() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=8 {
        let via_graph = kl_graphic(&Graph::complete(n))?;
        out.push(Check::eq(format!("KL(M_{n}) = KL(K_{n})"), kl_braid(n)?.fmt_var("t"), via_graph.fmt_var("t")));
    }
    for n in 1..=7 {
        for i in 0..n {
            out.push(Check::eq(
                format!("OS dimension n={n} i={i}"),
                stirling1_unsigned(n, n - i),
                os_character(n, i)?.dim(),
            ));
        }
    }
    for n in 2..=6 {
        let vanishes = eq_char_poly(n)?.eval_t(&BigRational::one()).is_zero();
        out.push(Check::truth(format!("equivariant char poly vanishes at t=1, n={n}"), vanishes));
    }
    Ok(out)
}
