//! Frobenius traces on the compactly supported Euler characteristics of the
//! symplectic local systems `V_lambda` on `M_4`, `|lambda| <= 3`, obtained
//! from the twisted point counts of `M_{4,n}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::{open_polynomial, AssemblyError};
use crate::exactalg::{int, partitions, Partition, Rational, TruncatedQPoly};

/// Number of random frames each decomposition is validated on.
pub const ORACLE_FRAMES: usize = 24;

const RANK: usize = 4;
const ORACLE_SEED: u64 = 0x5eed_0004;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalSystemError {
    #[error("|lambda| = {0} is not supported (need <= 3)")]
    Unsupported(u32),
    #[error("lambda {0} has more than four parts")]
    TooManyParts(String),
    #[error("Weyl oracle disagrees with the decomposition of V{0}")]
    OracleMismatch(String),
    #[error("the random frames do not determine the decomposition of V{0}")]
    Underdetermined(String),
    #[error("twisted counts do not determine the average of {0}")]
    FrameInversion(String),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

/// `q^e p_1^a p_2^b p_3^c`, with `p_m` the `m`-th power sum of Frobenius
/// eigenvalues on `H^1` of the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub q: u32,
    pub p: [u32; 3],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, p: [0, 0, 0] };

    pub fn new(q: u32, p1: u32, p2: u32, p3: u32) -> Self {
        Monomial { q, p: [p1, p2, p3] }
    }

    /// Degree in the eigenvalues, `q` counting twice.
    pub fn weight(&self) -> u32 {
        2 * self.q + self.p[0] + 2 * self.p[1] + 3 * self.p[2]
    }

    /// The monomial with `q` removed.
    pub fn power_part(&self) -> Monomial {
        Monomial { q: 0, p: self.p }
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial { q: self.q + o.q, p: [self.p[0] + o.p[0], self.p[1] + o.p[1], self.p[2] + o.p[2]] }
    }

    fn eval(&self, q: &Rational, p: &[Rational; 3]) -> Rational {
        let mut v = pow(q, self.q);
        for (x, &e) in p.iter().zip(&self.p) {
            v *= pow(x, e);
        }
        v
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |s: &str, e: u32| match e {
            0 => {}
            1 => parts.push(s.to_string()),
            _ => parts.push(format!("{s}^{e}")),
        };
        push("q", self.q);
        push("p1", self.p[0]);
        push("p2", self.p[1]);
        push("p3", self.p[2]);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    let mut v = Rational::one();
    for _ in 0..e {
        v *= x;
    }
    v
}

/// Polynomial in `p_1, p_2, p_3` with coefficients in `Q[q]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct PowerPoly(BTreeMap<Monomial, TruncatedQPoly>);

impl PowerPoly {
    fn constant(c: TruncatedQPoly) -> Self {
        let mut m = BTreeMap::new();
        m.insert(Monomial::ONE, c);
        PowerPoly(m)
    }

    /// `N_m = q^m + 1 - p_m`.
    fn points(m: usize) -> Self {
        let mut out = PowerPoly::constant(&TruncatedQPoly::q_pow(m as i32) + &TruncatedQPoly::one());
        let mut mono = Monomial::ONE;
        mono.p[m - 1] = 1;
        out.0.insert(mono, TruncatedQPoly::constant(-1));
        out
    }

    fn add(&self, o: &PowerPoly, sign: i64) -> PowerPoly {
        let mut out = self.0.clone();
        for (m, c) in &o.0 {
            let e = out.entry(*m).or_default();
            *e = &*e + &c.scale(&int(sign));
        }
        out.retain(|_, c| !c.is_zero());
        PowerPoly(out)
    }

    fn mul(&self, o: &PowerPoly) -> PowerPoly {
        let mut out: BTreeMap<Monomial, TruncatedQPoly> = BTreeMap::new();
        for (a, ca) in &self.0 {
            for (b, cb) in &o.0 {
                let e = out.entry(a.mul(b)).or_default();
                *e = &*e + &(ca * cb);
            }
        }
        out.retain(|_, c| !c.is_zero());
        PowerPoly(out)
    }
}

/// Number of points of `C(F_{q^j})` of exact degree `j`, for `j <= 3`.
fn exact_degree_points(j: u32) -> PowerPoly {
    match j {
        1 => PowerPoly::points(1),
        _ => PowerPoly::points(j as usize).add(&PowerPoly::points(1), -1),
    }
}

/// Ordered `n`-tuples of distinct points on which Frobenius acts with cycle
/// type `sigma`, as a polynomial in the power sums.
pub fn configuration_polynomial(sigma: &Partition) -> BTreeMap<Monomial, TruncatedQPoly> {
    let mut acc = PowerPoly::constant(TruncatedQPoly::one());
    for j in 1..=sigma.max_part() {
        let a = exact_degree_points(j);
        for i in 0..sigma.multiplicity(j) as i64 {
            let shift = PowerPoly::constant(TruncatedQPoly::constant(i * j as i64));
            acc = acc.mul(&a.add(&shift, -1));
        }
    }
    acc.0
}

/// Twisted counts of `M_{4,n}` and the stack averages of power-sum monomials
/// they determine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumFrame {
    pub counts: BTreeMap<Partition, TruncatedQPoly>,
    pub averages: BTreeMap<Monomial, TruncatedQPoly>,
}

impl PowerSumFrame {
    /// Inverts the relations `#M_{4,sigma} = avg(config_sigma(p))` for all `|sigma| <= 3`.
    pub fn from_counts(counts: BTreeMap<Partition, TruncatedQPoly>) -> Result<Self, LocalSystemError> {
        let mut averages: BTreeMap<Monomial, TruncatedQPoly> = BTreeMap::new();
        let mut order: Vec<&Partition> = counts.keys().collect();
        order.sort_by_key(|s| (s.size(), std::cmp::Reverse(s.len())));
        for sigma in order {
            let rel = configuration_polynomial(sigma);
            let mut rest = counts[sigma].clone();
            let mut unknown = None;
            for (m, c) in &rel {
                match averages.get(m) {
                    Some(a) => rest = &rest - &(c * a),
                    None if unknown.is_none() => unknown = Some((*m, c.clone())),
                    None => return Err(LocalSystemError::FrameInversion(m.to_string())),
                }
            }
            let (m, c) = unknown.ok_or_else(|| LocalSystemError::FrameInversion(sigma.to_string()))?;
            let lead = match (c.degree(), c.coeff(0)) {
                (Some(0), Some(l)) if !l.is_zero() => l,
                _ => return Err(LocalSystemError::FrameInversion(m.to_string())),
            };
            averages.insert(m, rest.scale(&(Rational::one() / lead)));
        }
        Ok(PowerSumFrame { counts, averages })
    }

    /// The frame built from the exact open counts of the twisted forms of `M_{4,n}`, `n <= 3`.
    pub fn from_assembly() -> Result<Self, LocalSystemError> {
        let mut counts = BTreeMap::new();
        for n in 0..=3 {
            for sigma in partitions(n) {
                let c = open_polynomial(n, &sigma)?;
                counts.insert(sigma, c);
            }
        }
        PowerSumFrame::from_counts(counts)
    }

    /// Stack average of `q^e p^a`.
    pub fn average(&self, m: &Monomial) -> Result<TruncatedQPoly, LocalSystemError> {
        let base = self
            .averages
            .get(&m.power_part())
            .ok_or_else(|| LocalSystemError::FrameInversion(m.to_string()))?;
        Ok(base.shift(m.q as i32))
    }
}

/// Trace of `V_lambda` as a combination of monomials.
pub type TraceExpression = BTreeMap<Monomial, Rational>;

/// Trace expressions of `V_lambda` for all `|lambda| <= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticDecomposition {
    pub traces: BTreeMap<Partition, TraceExpression>,
}

/// Power-sum monomials of eigenvalue degree `w`.
pub fn monomials_of_weight(w: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for q in 0..=w / 2 {
        for c in 0..=w / 3 {
            for b in 0..=w / 2 {
                let used = 2 * q + 3 * c + 2 * b;
                if used <= w {
                    out.push(Monomial::new(q, w - used, b, c));
                }
            }
        }
    }
    out.sort();
    out
}

/// A point of `GSp(8)`: eigenvalues `s y_i` and `s / y_i` with multiplier `q = s^2`.
#[derive(Clone, Debug)]
pub struct SymplecticFrame {
    pub s: Rational,
    pub y: [Rational; RANK],
}

impl SymplecticFrame {
    pub fn multiplier(&self) -> Rational {
        &self.s * &self.s
    }

    /// `p_m = sum_i (s y_i)^m + (s / y_i)^m`.
    pub fn power_sum(&self, m: u32) -> Rational {
        let sm = pow(&self.s, m);
        self.y
            .iter()
            .map(|y| {
                let ym = pow(y, m);
                &sm * (&ym + Rational::one() / &ym)
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    fn power_sums(&self) -> [Rational; 3] {
        [self.power_sum(1), self.power_sum(2), self.power_sum(3)]
    }

    /// Evaluates a trace expression at this frame.
    pub fn evaluate(&self, expr: &TraceExpression) -> Rational {
        let q = self.multiplier();
        let p = self.power_sums();
        expr.iter().map(|(m, c)| c * m.eval(&q, &p)).fold(Rational::zero(), |a, b| a + b)
    }

    /// Weyl character of the irreducible `GSp(8)` representation of highest weight `lambda`.
    pub fn weyl_character(&self, lambda: &Partition) -> Result<Rational, LocalSystemError> {
        let parts = lambda.parts();
        if parts.len() > RANK {
            return Err(LocalSystemError::TooManyParts(lambda.to_string()));
        }
        let alt = |exps: &[u32]| {
            let mut m = vec![vec![Rational::zero(); RANK]; RANK];
            for (i, &e) in exps.iter().enumerate() {
                for (j, y) in self.y.iter().enumerate() {
                    let ye = pow(y, e);
                    m[i][j] = &ye - Rational::one() / &ye;
                }
            }
            determinant(m)
        };
        let shifted: Vec<u32> = (0..RANK)
            .map(|i| parts.get(i).copied().unwrap_or(0) + (RANK - i) as u32)
            .collect();
        let rho: Vec<u32> = (0..RANK).map(|i| (RANK - i) as u32).collect();
        let den = alt(&rho);
        Ok(pow(&self.s, lambda.size()) * alt(&shifted) / den)
    }

    /// A random frame with nondegenerate Weyl denominator.
    pub fn random(rng: &mut StdRng) -> Self {
        loop {
            let mut r = || Rational::new(rng.gen_range(2i64..40).into(), rng.gen_range(1i64..9).into());
            let s = r();
            let y = [r(), r(), r(), r()];
            let mut ok = true;
            for i in 0..RANK {
                if y[i].is_one() {
                    ok = false;
                }
                for j in 0..i {
                    if y[i] == y[j] || &y[i] * &y[j] == Rational::one() {
                        ok = false;
                    }
                }
            }
            if ok {
                return SymplecticFrame { s, y };
            }
        }
    }
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        let p = m[c][c].clone();
        det *= &p;
        for r in c + 1..n {
            let f = &m[r][c] / &p;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    det
}

/// Solves `A x = b` for a square system; `None` if singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(piv, c);
        b.swap(piv, c);
        let p = a[c][c].clone();
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &p;
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
            let v = &f * &b[c];
            b[r] -= v;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Fits the trace of `V_lambda` in the monomials of weight `|lambda|` from
/// Weyl characters at random frames, then checks the fit on fresh frames.
pub fn derive_trace(lambda: &Partition, rng: &mut StdRng) -> Result<TraceExpression, LocalSystemError> {
    let w = lambda.size();
    if w > 3 {
        return Err(LocalSystemError::Unsupported(w));
    }
    let basis = monomials_of_weight(w);
    let mut attempts = 0;
    let coeffs = loop {
        attempts += 1;
        if attempts > 16 {
            return Err(LocalSystemError::Underdetermined(lambda.to_string()));
        }
        let frames: Vec<SymplecticFrame> = (0..basis.len()).map(|_| SymplecticFrame::random(rng)).collect();
        let a = frames
            .iter()
            .map(|f| {
                let (q, p) = (f.multiplier(), f.power_sums());
                basis.iter().map(|m| m.eval(&q, &p)).collect()
            })
            .collect();
        let b = frames.iter().map(|f| f.weyl_character(lambda)).collect::<Result<_, _>>()?;
        if let Some(x) = solve(a, b) {
            break x;
        }
    };
    let expr: TraceExpression =
        basis.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect();
    validate_trace(lambda, &expr, rng)?;
    Ok(expr)
}

/// Checks `expr` against the Weyl character on [`ORACLE_FRAMES`] random frames.
pub fn validate_trace(lambda: &Partition, expr: &TraceExpression, rng: &mut StdRng) -> Result<(), LocalSystemError> {
    for _ in 0..ORACLE_FRAMES {
        let f = SymplecticFrame::random(rng);
        if f.evaluate(expr) != f.weyl_character(lambda)? {
            return Err(LocalSystemError::OracleMismatch(lambda.to_string()));
        }
    }
    Ok(())
}

/// Trace expressions for every `|lambda| <= 3`, each derived and validated by the Weyl oracle.
pub fn derive_decompositions() -> Result<SymplecticDecomposition, LocalSystemError> {
    let mut rng = StdRng::seed_from_u64(ORACLE_SEED);
    let mut traces = BTreeMap::new();
    for n in 0..=3 {
        for lambda in partitions(n) {
            let expr = derive_trace(&lambda, &mut rng)?;
            traces.insert(lambda, expr);
        }
    }
    Ok(SymplecticDecomposition { traces })
}

/// Renders a trace expression, e.g. `1/2*p1^2 + 1/2*p2 - q`.
pub fn format_trace(expr: &TraceExpression) -> String {
    let mut terms: Vec<(&Monomial, &Rational)> = expr.iter().collect();
    terms.sort_by_key(|(m, _)| (m.q, std::cmp::Reverse(m.p)));
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let neg = c < &Rational::zero();
        let a = c.abs();
        let body = if a.is_one() { m.to_string() } else { format!("{a}*{m}") };
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("-{body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
            (_, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `Tr(F_q | H_c(M_4, V_lambda))`.
pub fn trace_on_euler(lambda: &Partition) -> Result<TruncatedQPoly, LocalSystemError> {
    let decomp = derive_decompositions()?;
    let frame = PowerSumFrame::from_assembly()?;
    trace_from(&decomp, &frame, lambda)
}

/// `Tr(F_q | H_c(M_4, V_lambda))` from precomputed decompositions and frame.
pub fn trace_from(
    decomp: &SymplecticDecomposition,
    frame: &PowerSumFrame,
    lambda: &Partition,
) -> Result<TruncatedQPoly, LocalSystemError> {
    if lambda.size() > 3 {
        return Err(LocalSystemError::Unsupported(lambda.size()));
    }
    let expr = decomp.traces.get(lambda).ok_or_else(|| LocalSystemError::Unsupported(lambda.size()))?;
    let mut acc = TruncatedQPoly::zero();
    for (m, c) in expr {
        acc = &acc + &frame.average(m)?.scale(c);
    }
    Ok(acc)
}

/// The six nontrivial traces with `1 <= |lambda| <= 3`, in the order `1; 2, 11; 3, 21, 111`.
pub fn trace_table() -> Result<Vec<(Partition, TruncatedQPoly)>, LocalSystemError> {
    let decomp = derive_decompositions()?;
    let frame = PowerSumFrame::from_assembly()?;
    let mut out = Vec::new();
    for n in 1..=3 {
        let mut ls = partitions(n);
        ls.sort_by_key(|l| l.len());
        for l in ls {
            let tr = trace_from(&decomp, &frame, &l)?;
            out.push((l, tr));
        }
    }
    Ok(out)
}
