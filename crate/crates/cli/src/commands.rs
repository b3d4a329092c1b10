//! The subcommands, each producing a [`Report`].

use std::collections::BTreeMap;

use anyhow::{Context, Result};
use mcount_core::assembly::{
    betti_poincare_poly, boundary_poly, closed_count, dimension, equivariant_closed_and_open, open_count,
    open_polynomial, MAX_MARKED,
};
use mcount_core::exactalg::{eval_i128, partitions};
use mcount_core::hyperelliptic::{census, hyperelliptic_equivariant, moments_of, twisted_of, HyperellipticError};
use mcount_core::local_systems::{derive_decompositions, format_trace, trace_from, PowerSumFrame};
use mcount_core::quadrics::QuadricKind;
use mcount_core::sieve::{
    general_position_closed_form, sieve_term_numeric, sieve_term_symbolic, signed_quadruple_counts, SUPPORTED_Q,
};
use mcount_core::zeta::{inverse_zeta_coeffs, named_space, NamedSpace};
use mcount_core::{FamilySpec, Partition, Rational, SieveTermKey, TruncatedQPoly};
use serde_json::{json, Value};

use crate::args::{HyperellipticArgs, QuadrupleArgs, SieveArgs, Space, TablesArgs};
use crate::report::{Cell, Report};
use crate::UsageError;

/// Largest allowed `|numeric - trusted part| / q^floor` for truncated sieve rows.
pub const RESIDUE_BOUND: i128 = 64;

const SIEVE_REGRESSION: &str = include_str!("../golden/v1/sieve_truncated_q2.csv");

fn poly_json(p: &TruncatedQPoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn twists(n: Option<u32>, twist: &Option<Partition>) -> Result<Vec<Partition>> {
    match (n, twist) {
        (Some(n), Some(t)) if t.size() != n => {
            Err(UsageError(format!("twist {t} is not a partition of n = {n}")).into())
        }
        (_, Some(t)) => Ok(vec![t.clone()]),
        (Some(n), None) => Ok(vec![Partition::ones(n)]),
        (None, None) => Ok((0..=MAX_MARKED).map(Partition::ones).collect()),
    }
}

fn space_name(space: Space) -> &'static str {
    match space {
        Space::Closed => "closed",
        Space::Open => "open",
        Space::Approx => "approx",
        Space::Boundary => "boundary",
        Space::Hyperelliptic => "hyperelliptic",
        Space::EquivariantClosed => "equivariant-closed",
        Space::EquivariantOpen => "equivariant-open",
        Space::Betti => "betti",
        Space::Zeta => "zeta",
    }
}

pub fn tables(args: &TablesArgs) -> Result<Report> {
    let name = space_name(args.space);
    match args.space {
        Space::Closed | Space::Open | Space::Approx | Space::Boundary => {
            if args.twist.as_ref().is_some_and(|t| t.size() > MAX_MARKED) {
                return Err(UsageError("twists of size at most 3 are supported".into()).into());
            }
            let mut rows = Vec::new();
            let mut report = Report::new(&["space", "n", "twist", "polynomial"], Value::Null);
            for twist in twists(args.n, &args.twist)? {
                let n = twist.size();
                let p = match args.space {
                    Space::Closed => closed_count(n, &twist)?,
                    Space::Open => open_polynomial(n, &twist)?,
                    Space::Approx => open_count(n, &twist)?,
                    _ => boundary_poly(n, &twist)?,
                };
                report.push(vec![name.into(), n.into(), twist.to_string().into(), Cell::poly(&p)]);
                rows.push(json!({"n": n, "twist": twist.key(), "dimension": dimension(n), "polynomial": poly_json(&p), "text": p.to_string()}));
            }
            report.json = json!({"space": name, "rows": rows});
            Ok(report)
        }
        Space::Hyperelliptic => {
            let mut rows = Vec::new();
            let mut report = Report::new(&["space", "g", "twist", "polynomial"], Value::Null);
            let list = match (&args.twist, args.n) {
                (None, None) => (0..=MAX_MARKED).flat_map(partitions).collect(),
                _ => twists(args.n, &args.twist)?,
            };
            for twist in list {
                let p = match hyperelliptic_equivariant(args.genus, &twist) {
                    Ok(p) => p,
                    Err(HyperellipticError::UnsupportedTwist(_)) if args.twist.is_none() => continue,
                    Err(e) => return Err(e.into()),
                };
                report.push(vec![name.into(), args.genus.into(), twist.to_string().into(), Cell::poly(&p)]);
                rows.push(json!({"g": args.genus, "twist": twist.key(), "polynomial": poly_json(&p), "text": p.to_string()}));
            }
            report.json = json!({"space": name, "rows": rows});
            Ok(report)
        }
        Space::EquivariantClosed | Space::EquivariantOpen => {
            if args.twist.is_some() {
                return Err(UsageError("--twist does not apply to equivariant tables".into()).into());
            }
            let ns: Vec<u32> = match args.n {
                Some(n @ 2..=3) => vec![n],
                Some(n) => return Err(UsageError(format!("equivariant tables need n = 2 or 3, got {n}")).into()),
                None => vec![2, 3],
            };
            let mut rows = Vec::new();
            let mut report = Report::new(&["space", "n", "schur", "polynomial"], Value::Null);
            for n in ns {
                let (closed, open) = equivariant_closed_and_open(n)?;
                let v = if args.space == Space::EquivariantClosed { closed } else { open };
                for (mu, p) in v.terms() {
                    report.push(vec![name.into(), n.into(), format!("s{mu}").into(), Cell::poly(p)]);
                    rows.push(json!({"n": n, "schur": mu.key(), "polynomial": poly_json(p), "text": p.to_string()}));
                }
            }
            report.json = json!({"space": name, "rows": rows});
            Ok(report)
        }
        Space::Betti => {
            let ns: Vec<u32> = args.n.map_or((0..=MAX_MARKED).collect(), |n| vec![n]);
            let mut rows = Vec::new();
            let mut report = Report::new(&["space", "n", "poincare"], Value::Null);
            for n in ns {
                let b = betti_poincare_poly(n)?;
                report.push(vec![name.into(), n.into(), Cell::poly(&b)]);
                rows.push(json!({"n": n, "polynomial": poly_json(&b), "text": b.to_string()}));
            }
            report.json = json!({"space": name, "rows": rows});
            Ok(report)
        }
        Space::Zeta => {
            let spaces = match args.name {
                Some(s) => vec![s],
                None => vec![
                    NamedSpace::Point,
                    NamedSpace::A1,
                    NamedSpace::A2,
                    NamedSpace::Gm,
                    NamedSpace::P1,
                    NamedSpace::QconeSmooth,
                    NamedSpace::Qnsp,
                    NamedSpace::Qspl,
                ],
            };
            let mut rows = Vec::new();
            let mut report = Report::new(&["space", "d", "s_d"], Value::Null);
            for s in spaces {
                let z = inverse_zeta_coeffs(&named_space(s), args.d as usize);
                for (d, c) in z.coeffs.iter().enumerate() {
                    report.push(vec![s.to_string().into(), d.into(), Cell::poly(c)]);
                }
                let coeffs: Vec<String> = z.coeffs.iter().map(|c| c.to_string()).collect();
                rows.push(json!({"space": s.to_string(), "coefficients": coeffs}));
            }
            report.json = json!({"space": name, "rows": rows});
            Ok(report)
        }
    }
}

/// Regression constants for the truncated sieve rows at `q = 2`, keyed by `(family, d)`.
pub fn sieve_regression_constants() -> Result<BTreeMap<(String, u32), i128>> {
    let mut out = BTreeMap::new();
    let mut reader = csv::Reader::from_reader(SIEVE_REGRESSION.as_bytes());
    for rec in reader.records() {
        let rec = rec?;
        let d: u32 = rec[1].parse()?;
        let v: i128 = rec[2].parse()?;
        out.insert((rec[0].to_string(), d), v);
    }
    Ok(out)
}

/// Outcome of comparing one numeric sieve term with its table entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveCheck {
    pub key: SieveTermKey,
    pub q: u32,
    pub numeric: i128,
    pub symbolic: TruncatedQPoly,
    /// Value of the exact row, or of the trusted part of a truncated row.
    pub symbolic_eval: i128,
    pub regression: Option<i128>,
    pub matches: bool,
}

/// Compares `S_d` of `key` computed by enumeration at `q` with the table.
pub fn check_sieve_term(key: &SieveTermKey, q: u32, regression: &BTreeMap<(String, u32), i128>) -> Result<SieveCheck> {
    let numeric = sieve_term_numeric(key, q)?;
    let symbolic = sieve_term_symbolic(key)?;
    let qi = q as i128;
    let (symbolic_eval, regression, matches) = if symbolic.is_exact() {
        let v = eval_i128(&symbolic, q as i64).context("symbolic value overflows")?;
        (v, None, v == numeric)
    } else {
        let mut trusted = 0i128;
        for (e, c) in symbolic.terms() {
            trusted += i128::try_from(c.to_integer()).context("coefficient overflows")? * qi.pow(e as u32);
        }
        let floor = symbolic.floor().unwrap_or(0).max(0) as u32;
        let within = (numeric - trusted).abs() < RESIDUE_BOUND * qi.pow(floor);
        let reg = if q == 2 { regression.get(&(key.family.to_string(), key.d)).copied() } else { None };
        let pinned = q != 2 || reg == Some(numeric);
        (trusted, reg, within && pinned)
    };
    Ok(SieveCheck { key: key.clone(), q, numeric, symbolic, symbolic_eval, regression, matches })
}

fn sieve_keys(args: &SieveArgs) -> Result<Vec<SieveTermKey>> {
    if !SUPPORTED_Q.contains(&args.q) {
        return Err(UsageError(format!("q = {} is not supported (use one of {:?})", args.q, SUPPORTED_Q)).into());
    }
    let kinds: Vec<QuadricKind> = args.surface.map_or(QuadricKind::ALL.to_vec(), |k| vec![k]);
    let tw: Vec<Partition> = match (args.marked, &args.twist) {
        (None, None) => (0..=MAX_MARKED).flat_map(partitions).collect(),
        _ => twists(args.marked, &args.twist)?,
    };
    let ds: Vec<u32> = args.d.map_or((0..=3).collect(), |d| vec![d]);
    let mut keys = Vec::new();
    for kind in kinds {
        for t in &tw {
            let fam = FamilySpec::new(kind, t.clone()).map_err(|e| UsageError(e.to_string()))?;
            for &d in &ds {
                keys.push(SieveTermKey::new(fam.clone(), d));
            }
        }
    }
    Ok(keys)
}

pub fn verify_sieve(args: &SieveArgs) -> Result<Report> {
    let keys = sieve_keys(args)?;
    let regression = sieve_regression_constants()?;
    let mut report = Report::new(
        &["family", "d", "q", "numeric", "symbolic_eval", "exact", "regression", "match"],
        Value::Null,
    );
    let mut records = Vec::new();
    for key in keys {
        let c = check_sieve_term(&key, args.q, &regression)?;
        log::info!("{} at q = {}: numeric {} symbolic {}", key, args.q, c.numeric, c.symbolic_eval);
        report.ok &= c.matches;
        let reg = c.regression.map_or(String::new(), |r| r.to_string());
        report.push(vec![
            key.family.to_string().into(),
            key.d.into(),
            args.q.into(),
            c.numeric.into(),
            c.symbolic_eval.into(),
            c.symbolic.is_exact().into(),
            reg.into(),
            c.matches.into(),
        ]);
        records.push(json!({
            "family": key.family.to_string(),
            "d": key.d,
            "q": args.q,
            "numeric": c.numeric.to_string(),
            "symbolic": c.symbolic.to_string(),
            "symbolic_eval": c.symbolic_eval.to_string(),
            "exact": c.symbolic.is_exact(),
            "regression": c.regression.map(|r| r.to_string()),
            "match": c.matches,
        }));
    }
    report.json = json!({"q": args.q, "all_match": report.ok, "records": records});
    Ok(report)
}

pub fn verify_hyperelliptic(args: &HyperellipticArgs) -> Result<Report> {
    let (q, g) = (args.q, args.genus);
    if q % 2 == 0 {
        return Err(UsageError(format!("the census needs odd q, got {q}")).into());
    }
    let acc = census(g, q, args.extension)?;
    let qi = q as i128;
    let mut report = Report::new(&["quantity", "census", "expected", "match"], Value::Null);
    let mut checks = Vec::new();
    let mut check = |report: &mut Report, label: String, got: String, want: String| {
        let ok = got == want;
        report.ok &= ok;
        report.push(vec![label.clone().into(), got.clone().into(), want.clone().into(), ok.into()]);
        checks.push(json!({"quantity": label, "census": got, "expected": want, "match": ok}));
    };
    let count_expected = (qi - 1) * (qi.pow(2 * g + 2) - qi.pow(2 * g));
    check(&mut report, "#P_g".into(), acc.count.to_string(), count_expected.to_string());
    let moments = moments_of(&acc, 3);
    let expected_moments = [qi.pow(2 * g - 1), 0, qi.pow(2 * g) - 1, 0];
    for (k, (m, e)) in moments.iter().zip(expected_moments).enumerate() {
        check(&mut report, format!("moment {k}"), m.to_string(), e.to_string());
    }
    let x = Rational::from_integer(qi.into());
    for (twist, v) in twisted_of(&acc) {
        match hyperelliptic_equivariant(g, &twist) {
            Ok(p) => check(&mut report, format!("H twist {twist}"), v.to_string(), p.eval(&x).to_string()),
            Err(HyperellipticError::UnsupportedTwist(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    report.json = json!({"q": q, "g": g, "extension": args.extension, "all_match": report.ok, "checks": checks});
    Ok(report)
}

pub fn verify_quadruples(args: &QuadrupleArgs) -> Result<Report> {
    let q = args.q;
    if !SUPPORTED_Q.contains(&q) {
        return Err(UsageError(format!("q = {q} is not supported")).into());
    }
    let c = signed_quadruple_counts(q)?;
    let expected = general_position_closed_form(q as i128);
    let expected_all = (q as i128).pow(4);
    let ok = c.general_position == expected && c.all == expected_all;
    let mut report = Report::new(&["q", "signed_general_position", "expected", "signed_all", "expected_all", "match"], Value::Null);
    report.push(vec![q.into(), c.general_position.into(), expected.into(), c.all.into(), expected_all.into(), ok.into()]);
    report.ok = ok;
    report.json = json!({
        "q": q,
        "signed_general_position": c.general_position,
        "expected": expected,
        "signed_all": c.all,
        "expected_all": expected_all,
        "match": ok,
    });
    Ok(report)
}

/// The six traces `Tr(F_q | H_c(M_4, V_lambda))`, `1 <= |lambda| <= 3`.
pub fn local_systems() -> Result<Report> {
    let decomp = derive_decompositions()?;
    let frame = PowerSumFrame::from_assembly()?;
    let mut report = Report::new(&["lambda", "trace", "decomposition"], Value::Null);
    let mut rows = Vec::new();
    for n in 1..=3 {
        let mut ls = partitions(n);
        ls.sort_by_key(|l| l.len());
        for l in ls {
            let tr = trace_from(&decomp, &frame, &l)?;
            let expr = format_trace(&decomp.traces[&l]);
            report.push(vec![l.to_string().into(), Cell::poly(&tr), expr.clone().into()]);
            rows.push(json!({"lambda": l.key(), "trace": poly_json(&tr), "text": tr.to_string(), "decomposition": expr}));
        }
    }
    let averages: BTreeMap<String, Value> =
        frame.averages.iter().map(|(m, p)| (m.to_string(), Value::String(p.to_string()))).collect();
    report.json = json!({"rows": rows, "averages": averages});
    Ok(report)
}
