//! The acceptance checks, shared by `selftest` and the acceptance test target.

use std::time::Instant;

use anyhow::{ensure, Result};
use mcount_core::assembly::{closed_count, equivariant_closed_and_open, open_polynomial, MAX_MARKED};
use mcount_core::exactalg::{int, partitions};
use mcount_core::hyperelliptic::{census, hyperelliptic_equivariant, moments_of, twisted_of};
use mcount_core::local_systems::{derive_decompositions, trace_from, PowerSumFrame};
use mcount_core::quadrics::QuadricKind;
use mcount_core::sieve::{general_position_closed_form, signed_quadruple_counts, sieve_term_symbolic};
use mcount_core::zeta::{
    inverse_zeta_coeffs, named_space, remove_rational_point, zeta_product, NamedSpace, ZetaCoeffs,
};
use mcount_core::{FamilySpec, Partition, SieveTermKey, TruncatedQPoly};
use serde_json::Value;

use crate::args::{Space, TablesArgs};
use crate::commands::{check_sieve_term, sieve_regression_constants, tables};
use crate::report::{Cell, Format, Report};

pub const GOLDEN_CLOSED: &str = include_str!("../golden/v1/closed.txt");
pub const GOLDEN_OPEN: &str = include_str!("../golden/v1/open.txt");
pub const GOLDEN_EQUIVARIANT_CLOSED: &str = include_str!("../golden/v1/equivariant_closed.txt");
pub const GOLDEN_EQUIVARIANT_OPEN: &str = include_str!("../golden/v1/equivariant_open.txt");
pub const GOLDEN_LOCAL_SYSTEMS: &str = include_str!("../golden/v1/local_systems.txt");
pub const GOLDEN_BETTI: &str = include_str!("../golden/v1/betti.txt");

/// Wall-clock budgets in seconds, by criterion.
pub const BUDGET_SECONDS: [f64; 10] = [1.0, 1.0, 300.0, 600.0, 300.0, 1260.0, 960.0, 1.0, 10.0, 1.0];

/// Result of one acceptance check.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const TITLES: [&str; 10] = [
    "theorem reproduction",
    "equivariant theorem reproduction",
    "sieve oracle at q = 2",
    "sieve oracle at q = 3",
    "truncated sieve rows",
    "general-position quadruples",
    "hyperelliptic census",
    "zeta coefficients",
    "local systems",
    "Betti numbers",
];

fn table(space: Space, n: Option<u32>) -> TablesArgs {
    TablesArgs { space, n, twist: None, genus: 4, name: None, d: 6 }
}

fn golden(space: Space, n: Option<u32>, expected: &str) -> Result<()> {
    let got = tables(&table(space, n))?.render(Format::Pretty)?;
    ensure!(got == expected, "output differs from golden file:\n{got}");
    Ok(())
}

fn theorem_reproduction() -> Result<String> {
    golden(Space::Closed, None, GOLDEN_CLOSED)?;
    golden(Space::Open, None, GOLDEN_OPEN)?;
    let b3 = closed_count(3, &Partition::ones(3))?.coeff(6).unwrap_or_default();
    ensure!(b3 == int(10605), "q^6 coefficient of the n = 3 count is {b3}");
    Ok("closed and open tables match golden files; q^6 coefficient for n = 3 is 10605".into())
}

fn equivariant_reproduction() -> Result<String> {
    golden(Space::EquivariantClosed, None, GOLDEN_EQUIVARIANT_CLOSED)?;
    golden(Space::EquivariantOpen, None, GOLDEN_EQUIVARIANT_OPEN)?;
    for n in 2..=3 {
        let (closed, open) = equivariant_closed_and_open(n)?;
        ensure!(closed.dimension_specialize() == closed_count(n, &Partition::ones(n))?, "closed n = {n}");
        ensure!(open.dimension_specialize() == open_polynomial(n, &Partition::ones(n))?, "open n = {n}");
    }
    Ok("Schur vectors for n = 2, 3 match golden files and specialize to the plain counts".into())
}

fn sieve_rows(q: u32, families: &[FamilySpec], exact: bool) -> Result<(usize, Vec<String>)> {
    let regression = sieve_regression_constants()?;
    let mut checked = 0;
    let mut bad = Vec::new();
    for fam in families {
        for d in 0..=3 {
            let key = SieveTermKey::new(fam.clone(), d);
            if sieve_term_symbolic(&key)?.is_exact() != exact {
                continue;
            }
            let c = check_sieve_term(&key, q, &regression)?;
            checked += 1;
            if !c.matches {
                bad.push(format!("{key}: numeric {} vs {}", c.numeric, c.symbolic_eval));
            }
        }
    }
    Ok((checked, bad))
}

fn sieve_q2() -> Result<String> {
    let (n, bad) = sieve_rows(2, &FamilySpec::all(), true)?;
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    Ok(format!("{n} exact rows agree exactly"))
}

fn sieve_q3() -> Result<String> {
    let fams: Vec<FamilySpec> = [QuadricKind::Cone, QuadricKind::Nonsplit]
        .into_iter()
        .flat_map(|k| (0..=2).map(move |n| FamilySpec::untwisted(k, n).expect("valid family")))
        .collect();
    let (n, bad) = sieve_rows(3, &fams, true)?;
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    ensure!(n == 24, "expected 24 exact rows, found {n}");
    Ok(format!("{n} exact rows agree exactly"))
}

fn truncated_rows() -> Result<String> {
    let (n, bad) = sieve_rows(2, &FamilySpec::all(), false)?;
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    let pinned = sieve_regression_constants()?.len();
    ensure!(n == pinned, "{n} truncated rows but {pinned} regression constants");
    Ok(format!("{n} truncated rows equal their regression constants with residue below {} q^6", crate::commands::RESIDUE_BOUND))
}

fn quadruples() -> Result<String> {
    let mut parts = Vec::new();
    for q in [2u32, 3] {
        let c = signed_quadruple_counts(q)?;
        let expected = general_position_closed_form(q as i128);
        ensure!(c.general_position == expected, "q = {q}: {} vs {expected}", c.general_position);
        ensure!(c.all == (q as i128).pow(4), "q = {q}: all 4-sets {} vs q^4", c.all);
        parts.push(format!("q = {q}: {expected} and q^4 = {}", c.all));
    }
    Ok(format!("(q+1)^2 q^2 (q-1)^2 matched, {}", parts.join(", ")))
}

fn census_checks(q: u32, m: u32, k_max: usize) -> Result<()> {
    let acc = census(4, q, m)?;
    let qi = q as i128;
    ensure!(acc.count as i128 == (qi - 1) * (qi.pow(10) - qi.pow(8)), "q = {q}: #P_4 = {}", acc.count);
    let moments = moments_of(&acc, 3);
    let expected = [qi.pow(7), 0, qi.pow(8) - 1, 0];
    for k in 1..=k_max {
        ensure!(moments[k] == int(expected[k] as i64), "q = {q}: moment {k} = {}", moments[k]);
    }
    let x = int(q as i64);
    for (twist, v) in twisted_of(&acc) {
        let closed = hyperelliptic_equivariant(4, &twist)?.eval(&x);
        ensure!(v == closed, "q = {q}: twist {twist}: census {v} vs {closed}");
    }
    Ok(())
}

fn hyperelliptic_census() -> Result<String> {
    census_checks(3, 3, 3)?;
    census_checks(5, 2, 2)?;
    Ok("q = 3 counts, moments and all twists match; q = 5 spot check (k <= 2) matches".into())
}

fn zeta_checks() -> Result<String> {
    let spaces = [NamedSpace::Point, NamedSpace::P1, NamedSpace::Pn(3), NamedSpace::Qnsp, NamedSpace::Qspl];
    for s in spaces {
        let desc = named_space(s);
        ensure!(desc.proper, "{s} is not proper");
        let z = inverse_zeta_coeffs(&desc, 12);
        let total: TruncatedQPoly = z.coeffs.iter().cloned().sum();
        ensure!(total.is_zero(), "{s}: sum of s_d is {total}");
        for d in desc.even_eigenvalues.len() + 1..=12 {
            ensure!(z.s(d).is_zero(), "{s}: s_{d} = {}", z.s(d));
        }
    }
    let t = |terms: &[(i32, i64)]| TruncatedQPoly::from_terms(terms.iter().copied());
    let z = |s| inverse_zeta_coeffs(&named_space(s), 6);
    let expect = |got: TruncatedQPoly, want: TruncatedQPoly, what: &str| -> Result<()> {
        ensure!(got == want, "{what}: {got} vs {want}");
        Ok(())
    };
    let p1 = z(NamedSpace::P1);
    expect(p1.s(1), t(&[(1, -1), (0, -1)]), "s_1(P1)")?;
    expect(p1.s(2), t(&[(1, 1)]), "s_2(P1)")?;
    let nsp = z(NamedSpace::Qnsp);
    expect(nsp.s(1), t(&[(2, -1), (0, -1)]), "s_1(Qnsp)")?;
    expect(nsp.s(2), TruncatedQPoly::zero(), "s_2(Qnsp)")?;
    expect(nsp.s(3), t(&[(4, 1), (2, 1)]), "s_3(Qnsp)")?;
    expect(nsp.s(4), t(&[(4, -1)]), "s_4(Qnsp)")?;
    let spl = z(NamedSpace::Qspl);
    expect(spl.s(2), t(&[(3, 2), (2, 2), (1, 2)]), "s_2(Qspl)")?;
    expect(spl.s(4), t(&[(4, 1)]), "s_4(Qspl)")?;
    let cone = zeta_product(&z(NamedSpace::A2), &z(NamedSpace::A1), 6);
    ensure!(cone == z(NamedSpace::QconeSmooth), "A2 + A1 differs from the smooth cone");
    expect(cone.s(1), t(&[(2, -1), (1, -1)]), "s_1(cone)")?;
    expect(cone.s(2), t(&[(3, 1)]), "s_2(cone)")?;
    let punctured = remove_rational_point(&cone, 6);
    expect(punctured.s(2), t(&[(3, 1), (2, -1), (1, -1), (0, 1)]), "s_2(cone minus a point)")?;
    ensure!(remove_rational_point(&p1, 6) == z(NamedSpace::A1), "P1 minus a point differs from A1");
    ensure!(zeta_product(&ZetaCoeffs::one(6), &p1, 6) == p1, "unit of the product");
    Ok("vanishing for proper spaces and all tabulated coefficients match".into())
}

fn local_systems_check() -> Result<String> {
    let decomp = derive_decompositions()?;
    let frame = PowerSumFrame::from_assembly()?;
    let mut report = Report::new(&["lambda", "trace"], Value::Null);
    for n in 1..=3 {
        let mut ls = partitions(n);
        ls.sort_by_key(|l| l.len());
        for l in ls {
            report.push(vec![l.to_string().into(), Cell::poly(&trace_from(&decomp, &frame, &l)?)]);
        }
    }
    let got = report.render(Format::Pretty)?;
    ensure!(got == GOLDEN_LOCAL_SYSTEMS, "traces differ from golden file:\n{got}");
    let m4 = open_polynomial(0, &Partition::ones(0))?;
    let m41 = open_polynomial(1, &Partition::ones(1))?;
    let q_plus_one = TruncatedQPoly::from_terms([(1, 1), (0, 1)]);
    let identity = &(&q_plus_one * &m4) - &m41;
    ensure!(trace_from(&decomp, &frame, &"1".parse()?)? == identity, "V1 identity fails");
    Ok(format!(
        "six traces match; (q+1)#M4 - #M4,1 = {identity}; {} decompositions validated on {} Weyl frames each",
        decomp.traces.len(),
        mcount_core::local_systems::ORACLE_FRAMES
    ))
}

fn betti() -> Result<String> {
    golden(Space::Betti, Some(0), GOLDEN_BETTI)?;
    for n in 1..=MAX_MARKED {
        let b = mcount_core::assembly::betti_poincare_poly(n)?;
        ensure!(b.terms().all(|(_, c)| *c > int(0)), "n = {n} has a nonpositive Betti number");
    }
    Ok("h(t) of the compactification of M_4 matches".into())
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize) -> Outcome {
    let start = Instant::now();
    let result = match id {
        1 => theorem_reproduction(),
        2 => equivariant_reproduction(),
        3 => sieve_q2(),
        4 => sieve_q3(),
        5 => truncated_rows(),
        6 => quadruples(),
        7 => hyperelliptic_census(),
        8 => zeta_checks(),
        9 => local_systems_check(),
        10 => betti(),
        _ => Err(anyhow::anyhow!("no criterion {id}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    let budget = BUDGET_SECONDS.get(id.wrapping_sub(1)).copied().unwrap_or(0.0);
    let (mut pass, mut detail) = match result {
        Ok(d) => (true, d),
        Err(e) => (false, format!("{e:#}")),
    };
    if pass && seconds > budget {
        pass = false;
        detail = format!("{detail}; took {seconds:.1} s, budget {budget} s");
    }
    Outcome { id, title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), pass, detail, seconds }
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<Outcome> {
    (1..=TITLES.len()).map(run_criterion).collect()
}

impl Outcome {
    /// One-line summary, e.g. `criterion 3 PASS sieve oracle at q = 2 (1.2 s): ...`.
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        format!("criterion {} {status} {} ({:.2} s): {}", self.id, self.title, self.seconds, self.detail)
    }
}
