//! Closed-form counts of hyperelliptic curves with marked points, their
//! symmetric-group equivariant versions, and a brute-force census over
//! squarefree polynomials at small odd `q`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{big, partitions, ExactAlgError, Partition, Rational, SchurVector, TruncatedQPoly};
use crate::finitefield::{prime_power, FieldError, FieldTables};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperellipticError {
    #[error("genus {0} is not supported (need g >= 2)")]
    BadGenus(u32),
    #[error("at most 3 marked points are supported, got {0}")]
    TooManyPoints(u32),
    #[error("twist {0} is not supported")]
    UnsupportedTwist(String),
    #[error("the census requires odd q, got {0}")]
    EvenQ(u32),
    #[error("census too large: q = {q}, degree {degree}")]
    TooLarge { q: u32, degree: u32 },
    #[error("extension degree {0} is not supported (1..=3)")]
    BadExtension(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Alg(#[from] ExactAlgError),
}

fn t(terms: &[(i32, i64)]) -> TruncatedQPoly {
    TruncatedQPoly::from_terms(terms.iter().copied())
}

/// `#H_{g,n}(F_q)` for `n <= 3`.
pub fn hyperelliptic_count(g: u32, n: u32) -> Result<TruncatedQPoly, HyperellipticError> {
    if g < 2 {
        return Err(HyperellipticError::BadGenus(g));
    }
    let e = 2 * g as i32;
    Ok(match n {
        0 => t(&[(e - 1, 1)]),
        1 => t(&[(e, 1), (e - 1, 1)]),
        2 => t(&[(e + 1, 1), (e, 2), (0, -1)]),
        3 => t(&[(e + 2, 1), (e + 1, 3), (e, -1), (1, -3)]),
        _ => return Err(HyperellipticError::TooManyPoints(n)),
    })
}

/// The `S_n`-equivariant count of `H_{4,n}` for `n = 2, 3` in the Schur basis.
pub fn hyperelliptic_equivariant_vector(n: u32) -> Result<SchurVector, HyperellipticError> {
    let p = |s: &str| s.parse::<Partition>().expect("static partition");
    Ok(match n {
        2 => SchurVector::new(2, [(p("2"), t(&[(9, 1), (8, 1), (0, -1)])), (p("1,1"), t(&[(8, 1)]))])?,
        3 => SchurVector::new(
            3,
            [(p("3"), t(&[(10, 1), (9, 1), (8, -1), (1, -1)])), (p("2,1"), t(&[(9, 1), (1, -1)]))],
        )?,
        _ => return Err(HyperellipticError::UnsupportedTwist(format!("n = {n}"))),
    })
}

/// `#H_{4,twist}(F_q)`: the count of curves with marked points permuted by
/// Frobenius with cycle type `twist`.
pub fn hyperelliptic_equivariant(g: u32, twist: &Partition) -> Result<TruncatedQPoly, HyperellipticError> {
    let n = twist.size();
    if twist.is_all_ones() {
        return hyperelliptic_count(g, n);
    }
    if g != 4 || !(2..=3).contains(&n) {
        return Err(HyperellipticError::UnsupportedTwist(twist.to_string()));
    }
    Ok(hyperelliptic_equivariant_vector(n)?.character_specialize(twist)?)
}

/// Closed forms for one genus, keyed by twist.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperellipticTable {
    pub g: u32,
    pub entries: BTreeMap<Partition, TruncatedQPoly>,
}

impl HyperellipticTable {
    /// All twists of size at most 3 (twisted entries only for `g = 4`).
    pub fn new(g: u32) -> Result<Self, HyperellipticError> {
        let mut entries = BTreeMap::new();
        for n in 0..=3 {
            for twist in partitions(n) {
                match hyperelliptic_equivariant(g, &twist) {
                    Ok(p) => {
                        entries.insert(twist, p);
                    }
                    Err(HyperellipticError::UnsupportedTwist(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(HyperellipticTable { g, entries })
    }
}

/// Number of polynomials of degree `2g+1` or `2g+2` that the census enumerates
/// before the squarefree test, above which it refuses to run.
pub const MAX_CENSUS_POLYNOMIALS: u64 = 50_000_000;

/// Sums over all squarefree `f` of degree `2g+1` or `2g+2` of statistics of
/// `C_f : y^2 = f(x)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusAccumulator {
    pub q: u32,
    pub g: u32,
    /// Largest extension degree `m` for which `#C_f(F_{q^m})` was computed.
    pub m_max: u32,
    /// `#P_g`.
    pub count: u64,
    /// `sum_f T(f)^k` for `k = 0..=3`, `T(f) = q + 1 - #C_f(F_q)` up to sign.
    pub moments: [i128; 4],
    /// `sum_f N_lambda(C_f)`: ordered tuples of distinct points permuted by
    /// Frobenius with cycle type `lambda`.
    pub twisted: BTreeMap<Partition, i128>,
}

impl CensusAccumulator {
    fn empty(q: u32, g: u32, m_max: u32) -> Self {
        CensusAccumulator { q, g, m_max, ..Default::default() }
    }

    fn merge(mut self, other: CensusAccumulator) -> Self {
        self.count += other.count;
        for k in 0..4 {
            self.moments[k] += other.moments[k];
        }
        for (l, v) in other.twisted {
            *self.twisted.entry(l).or_insert(0) += v;
        }
        self
    }

    /// `#G(F_q) = (q^2 - 1)(q^2 - q)`.
    pub fn group_order(&self) -> i128 {
        let q = self.q as i128;
        (q * q - 1) * (q * q - q)
    }

    fn record(&mut self, mult: u64, trace: i64, counts: &[i64]) {
        let m = mult as i128;
        self.count += mult;
        let tr = trace as i128;
        for k in 0..4 {
            self.moments[k] += m * tr.pow(k as u32);
        }
        let c = |i: usize| counts.get(i).copied().unwrap_or(0) as i128;
        let (c1, c2, c3) = (c(0), c(1), c(2));
        for lambda in twist_labels(self.m_max) {
            let v = match lambda.key().as_str() {
                "" => 1,
                "1" => c1,
                "1,1" => c1 * (c1 - 1),
                "2" => c2 - c1,
                "1,1,1" => c1 * (c1 - 1) * (c1 - 2),
                "2,1" => (c2 - c1) * c1,
                "3" => c3 - c1,
                _ => unreachable!(),
            };
            *self.twisted.entry(lambda).or_insert(0) += m * v;
        }
    }
}

fn twist_labels(m_max: u32) -> Vec<Partition> {
    (0..=3).flat_map(partitions).filter(|l| l.max_part() <= m_max).collect()
}

/// Polynomial helpers over `F_q` with table codes, constant term first.
mod fq_poly {
    use crate::finitefield::FieldTables;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn derivative(t: &FieldTables, a: &[u32]) -> Vec<u32> {
        let mut d: Vec<u32> = a.iter().enumerate().skip(1).map(|(i, &c)| t.mul(t.from_int(i as i64), c)).collect();
        trim(&mut d);
        d
    }

    pub fn rem(t: &FieldTables, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = t.inv(m[dm]);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = t.mul(r[dr], lead_inv);
            let shift = dr - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = t.sub(r[shift + i], t.mul(c, mi));
            }
            trim(&mut r);
        }
        r
    }

    /// Whether `gcd(a, b)` is a nonzero constant.
    pub fn coprime(t: &FieldTables, a: &[u32], b: &[u32]) -> bool {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(t, &x, &y);
            x = y;
            y = r;
        }
        x.len() == 1
    }

    pub fn is_squarefree(t: &FieldTables, a: &[u32]) -> bool {
        let d = derivative(t, a);
        !d.is_empty() && coprime(t, a, &d)
    }

    pub fn eval(t: &FieldTables, a: &[u32], x: u32) -> u32 {
        a.iter().rev().fold(0, |acc, &c| t.add(t.mul(acc, x), c))
    }
}

struct CensusFields {
    base: Arc<FieldTables>,
    ext: Vec<Arc<FieldTables>>,
}

impl CensusFields {
    fn new(q: u32, m_max: u32) -> Result<Self, HyperellipticError> {
        let (p, e) = prime_power(q)?;
        let base = FieldTables::get(p, e)?;
        let ext = (1..=m_max).map(|m| FieldTables::get(p, e * m)).collect::<Result<_, _>>()?;
        Ok(CensusFields { base, ext })
    }

    /// `A_m = sum_{x in F_{q^m}} chi_m(g(x))` for `m = 1..=m_max`.
    fn character_sums(&self, poly: &[u32]) -> Vec<i64> {
        self.ext
            .iter()
            .map(|tm| {
                let lifted: Vec<u32> = poly.iter().map(|&c| tm.embed_code_from(&self.base, c)).collect();
                (0..tm.size()).map(|x| tm.quadratic_character(fq_poly::eval(tm, &lifted, x)) as i64).sum()
            })
            .collect()
    }
}

/// Runs the census for genus `g` over odd `q`, computing `#C_f(F_{q^m})` for `m <= m_max`.
///
/// Polynomials are enumerated as `c * h` with `h` monic squarefree; the
/// character sums of `c * h` over `F_{q^m}` are `chi(c)^m` times those of `h`.
pub fn census(g: u32, q: u32, m_max: u32) -> Result<CensusAccumulator, HyperellipticError> {
    if g < 1 {
        return Err(HyperellipticError::BadGenus(g));
    }
    if q.is_multiple_of(2) {
        return Err(HyperellipticError::EvenQ(q));
    }
    if !(1..=3).contains(&m_max) {
        return Err(HyperellipticError::BadExtension(m_max));
    }
    let top = 2 * g + 2;
    let total = (q as u64).checked_pow(top).filter(|&n| n <= MAX_CENSUS_POLYNOMIALS);
    if total.is_none() {
        return Err(HyperellipticError::TooLarge { q, degree: top });
    }
    let fields = CensusFields::new(q, m_max)?;
    let half = (q as u64 - 1) / 2;
    let mut acc = CensusAccumulator::empty(q, g, m_max);
    for degree in [2 * g + 1, 2 * g + 2] {
        let even = degree % 2 == 0;
        let n = (q as u64).pow(degree);
        let part = (0..n)
            .into_par_iter()
            .fold(
                || CensusAccumulator::empty(q, g, m_max),
                |mut a, idx| {
                    let mut poly = Vec::with_capacity(degree as usize + 1);
                    let mut r = idx;
                    for _ in 0..degree {
                        poly.push((r % q as u64) as u32);
                        r /= q as u64;
                    }
                    poly.push(1);
                    if !fq_poly::is_squarefree(&fields.base, &poly) {
                        return a;
                    }
                    let sums = fields.character_sums(&poly);
                    for eps in [1i64, -1] {
                        let counts: Vec<i64> = sums
                            .iter()
                            .enumerate()
                            .map(|(i, &am)| {
                                let m = i as u32 + 1;
                                let em = eps.pow(m);
                                let inf = if even { 1 + em } else { 1 };
                                (q as i64).pow(m) + em * am + inf
                            })
                            .collect();
                        let trace = q as i64 + 1 - counts[0];
                        a.record(half, trace, &counts);
                    }
                    a
                },
            )
            .reduce(|| CensusAccumulator::empty(q, g, m_max), CensusAccumulator::merge);
        acc = acc.merge(part);
    }
    Ok(acc)
}

/// `sum_f T(f)^k / #G(F_q)` for `k = 0..=k_max`, where `T(f) = q + 1 - #C_f(F_q)`.
pub fn census_moments(g: u32, q: u32, k_max: u32) -> Result<Vec<Rational>, HyperellipticError> {
    let acc = census(g, q, 1)?;
    Ok(moments_of(&acc, k_max))
}

/// Normalised moments of a finished census.
pub fn moments_of(acc: &CensusAccumulator, k_max: u32) -> Vec<Rational> {
    let g = big(acc.group_order().into());
    (0..=k_max.min(3) as usize).map(|k| big(acc.moments[k].into()) / &g).collect()
}

/// Groupoid counts `#H_{g,lambda}(F_q) = sum_f N_lambda(C_f) / #G(F_q)` for all twists of size at most 3.
pub fn census_twisted_counts(g: u32, q: u32) -> Result<BTreeMap<Partition, Rational>, HyperellipticError> {
    Ok(twisted_of(&census(g, q, 3)?))
}

/// Normalised twisted counts of a finished census.
pub fn twisted_of(acc: &CensusAccumulator) -> BTreeMap<Partition, Rational> {
    let g = big(acc.group_order().into());
    acc.twisted.iter().map(|(l, v)| (l.clone(), big((*v).into()) / &g)).collect()
}

/// `#C_f(F_{q^m})` by direct solution counting on both charts of the weighted
/// model, for `f` with coefficients in `F_q` (codes of the standard field,
/// constant term first, degree `2g+1` or `2g+2`).
pub fn count_points_direct(f: &[u32], q: u32, m: u32) -> Result<i64, HyperellipticError> {
    let (p, e) = prime_power(q)?;
    let base = FieldTables::get(p, e)?;
    let tm = FieldTables::get(p, e * m)?;
    let lifted: Vec<u32> = f.iter().map(|&c| tm.embed_code_from(&base, c)).collect();
    let deg = lifted.iter().rposition(|&c| c != 0).unwrap_or(0);
    let genus_top = if deg % 2 == 0 { deg } else { deg + 1 };
    let mut squares = vec![0i64; tm.size() as usize];
    for y in 0..tm.size() {
        squares[tm.mul(y, y) as usize] += 1;
    }
    let mut n: i64 = (0..tm.size()).map(|x| squares[fq_poly::eval(&tm, &lifted, x) as usize]).sum();
    // chart at infinity: x = 1/u, y = v / u^(g+1); points with u = 0 satisfy v^2 = f_top
    let lead = if deg == genus_top { lifted[deg] } else { 0 };
    n += squares[lead as usize];
    Ok(n)
}
