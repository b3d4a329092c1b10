use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, parse_rational, Rational};
use super::ExactAlgError;

/// Formal variable of a polynomial: `q` for point counts, `t` for Betti polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Q,
    T,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::T => "t",
        }
    }
}

/// Polynomial in one formal variable with exact rational coefficients and an
/// optional trusted floor.
///
/// With `floor = Some(f)` the value is known only up to `o(q^f)`: every
/// coefficient of degree `>= f` is exact (absent means zero) and nothing is
/// stored below `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedQPoly {
    var: Var,
    coeffs: BTreeMap<i32, Rational>,
    floor: Option<i32>,
}

impl Default for TruncatedQPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl TruncatedQPoly {
    pub fn zero() -> Self {
        TruncatedQPoly { var: Var::Q, coeffs: BTreeMap::new(), floor: None }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, int(c))
    }

    /// `c * q^deg`.
    pub fn monomial(deg: i32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.set(deg, c);
        p
    }

    /// `q^deg`.
    pub fn q_pow(deg: i32) -> Self {
        Self::monomial(deg, Rational::one())
    }

    /// Exact polynomial from `(degree, coefficient)` pairs; repeated degrees add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            let cur = p.coeffs.get(&d).cloned().unwrap_or_else(Rational::zero);
            p.set(d, cur + int(c));
        }
        p
    }

    /// Exact polynomial from rational `(degree, coefficient)` pairs.
    pub fn from_rational_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            let cur = p.coeffs.get(&d).cloned().unwrap_or_else(Rational::zero);
            p.set(d, cur + c);
        }
        p
    }

    /// Exact polynomial from a dense coefficient list, index = degree.
    pub fn from_dense(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(d, &c)| (d as i32, c)))
    }

    /// `1 + q + ... + q^n`, the number of points of projective n-space.
    pub fn projective(n: i32) -> Self {
        Self::from_terms((0..=n).map(|d| (d, 1)))
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn floor(&self) -> Option<i32> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest stored degree.
    pub fn degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest stored degree.
    pub fn low_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficient of `q^d`, or `None` when `d` lies below the floor.
    pub fn coeff(&self, d: i32) -> Option<Rational> {
        if self.floor.is_some_and(|f| d < f) {
            return None;
        }
        Some(self.coeffs.get(&d).cloned().unwrap_or_else(Rational::zero))
    }

    /// Stored nonzero terms in increasing degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    fn set(&mut self, d: i32, c: Rational) {
        if c.is_zero() || self.floor.is_some_and(|f| d < f) {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, c);
        }
    }

    /// Raises the floor to at least `floor`, discarding lower coefficients.
    pub fn truncate(mut self, floor: i32) -> Self {
        let f = self.floor.map_or(floor, |g| g.max(floor));
        self.floor = Some(f);
        self.coeffs = self.coeffs.split_off(&f);
        self
    }

    /// Forgets the floor, treating all unknown coefficients as zero.
    pub fn assume_exact(mut self) -> Self {
        self.floor = None;
        self
    }

    /// Evaluates the stored terms at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&d, c) in &self.coeffs {
            acc += c * pow_rational(x, d);
        }
        acc
    }

    /// Evaluates the stored terms at an integer; fails if the value is not an integer.
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let v = self.eval(&int(x));
        v.is_integer().then(|| v.to_integer())
    }

    /// Whether every stored coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TruncatedQPoly { var: self.var, coeffs: BTreeMap::new(), floor: self.floor };
        }
        TruncatedQPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&d, v)| (d, v * c)).collect(),
            floor: self.floor,
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        TruncatedQPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&d, v)| (d + k, v.clone())).collect(),
            floor: self.floor.map(|f| f + k),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one().with_var(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Degree bound used when propagating floors through products.
    fn effective_degree(&self) -> Option<i32> {
        match (self.degree(), self.floor) {
            (Some(d), Some(f)) => Some(d.max(f - 1)),
            (Some(d), None) => Some(d),
            (None, Some(f)) => Some(f - 1),
            (None, None) => None,
        }
    }

    /// Expands `self / b` in descending powers of q down to degree `depth`.
    ///
    /// The quotient is exact when `self` is exact and the division terminates
    /// before reaching `depth`; otherwise its floor is the larger of `depth`
    /// and the floor implied by `self`.
    pub fn div_series(&self, b: &TruncatedQPoly, depth: i32) -> Result<TruncatedQPoly, ExactAlgError> {
        if !b.is_exact() {
            return Err(ExactAlgError::InexactDivisor);
        }
        let (db, lead) = match b.coeffs.iter().next_back() {
            Some((&d, c)) => (d, c.clone()),
            None => return Err(ExactAlgError::DivisionByZero),
        };
        let target = match self.floor {
            Some(fa) => depth.max(fa - db),
            None => depth,
        };
        let mut rem = self.coeffs.clone();
        let mut quot = BTreeMap::new();
        loop {
            let (dr, cr) = match rem.iter().next_back() {
                Some((&d, c)) => (d, c.clone()),
                None => break,
            };
            let dq = dr - db;
            if dq < target {
                break;
            }
            let c = &cr / &lead;
            for (&d, bc) in &b.coeffs {
                let e = rem.entry(d + dq).or_insert_with(Rational::zero);
                *e -= &c * bc;
                if e.is_zero() {
                    rem.remove(&(d + dq));
                }
            }
            quot.insert(dq, c);
        }
        let exact = self.floor.is_none() && rem.is_empty();
        let out = TruncatedQPoly { var: self.var, coeffs: quot, floor: None };
        Ok(if exact { out } else { out.truncate(target) })
    }

    /// Whether the stored terms satisfy `c_i = c_{dim-i}` and lie in `[0, dim]`.
    pub fn is_palindromic(&self, dim: i32) -> bool {
        self.coeffs.keys().all(|&d| (0..=dim).contains(&d))
            && self.coeffs.iter().all(|(&d, c)| self.coeffs.get(&(dim - d)) == Some(c))
    }

    /// Completes a polynomial known above `dim/2` to the palindromic polynomial of degree `dim`.
    ///
    /// If the middle coefficient of an even `dim` is below the floor it is
    /// left as a hole (set to zero in the returned polynomial).
    pub fn palindrome_complete(&self, dim: i32) -> Result<DualityCompletion, ExactAlgError> {
        let needed = dim / 2 + 1;
        let floor = self.floor.unwrap_or(i32::MIN);
        if floor > needed {
            return Err(ExactAlgError::DualityInsufficient { needed, floor });
        }
        if let Some((&d, _)) = self.coeffs.iter().find(|(&d, _)| d < 0 || d > dim) {
            return Err(ExactAlgError::DualityConflict { degree: d, mirror: dim - d });
        }
        let mut out = TruncatedQPoly::zero().with_var(self.var);
        let mut hole = None;
        for i in 0..=dim {
            let j = dim - i;
            let ci = (i >= floor).then(|| self.coeff(i).unwrap_or_default());
            let cj = (j >= floor).then(|| self.coeff(j).unwrap_or_default());
            let v = match (ci, cj) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return Err(ExactAlgError::DualityConflict { degree: i, mirror: j });
                    }
                    a
                }
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => {
                    hole = Some(i);
                    Rational::zero()
                }
            };
            out.set(i, v);
        }
        Ok(DualityCompletion { poly: out, hole })
    }

    /// Substitutes `q -> t^2`, producing the Betti (Poincaré) polynomial.
    pub fn betti_poincare(&self) -> Result<TruncatedQPoly, ExactAlgError> {
        if !self.is_exact() {
            return Err(ExactAlgError::NotExact);
        }
        for (&d, c) in &self.coeffs {
            if !c.is_integer() || c.is_negative() || d < 0 {
                return Err(ExactAlgError::NotBettiCompatible { degree: d, coeff: format_rational(c) });
            }
        }
        Ok(TruncatedQPoly {
            var: Var::T,
            coeffs: self.coeffs.iter().map(|(&d, c)| (2 * d, c.clone())).collect(),
            floor: None,
        })
    }

    /// Dense integer coefficients from degree 0 to the top degree.
    pub fn to_dense_integers(&self) -> Option<Vec<BigInt>> {
        if self.coeffs.keys().any(|&d| d < 0) || !self.has_integer_coefficients() {
            return None;
        }
        let top = self.degree().unwrap_or(0);
        Some((0..=top).map(|d| self.coeff(d).unwrap_or_default().to_integer()).collect())
    }

    /// LaTeX rendering, e.g. `q^{9}+4q^{8}-q^{6}+o(q^{5})`.
    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        let v = self.var.symbol();
        let mut s = String::new();
        for (&d, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff_str = if a.is_integer() {
                a.to_integer().to_string()
            } else if latex {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            } else {
                format!("({}/{})", a.numer(), a.denom())
            };
            let unit = a.is_one();
            match d {
                0 => s.push_str(&coeff_str),
                _ => {
                    if !unit {
                        s.push_str(&coeff_str);
                    }
                    s.push_str(v);
                    if d != 1 {
                        if latex {
                            s.push_str(&format!("^{{{d}}}"));
                        } else {
                            s.push_str(&format!("^{d}"));
                        }
                    }
                }
            }
        }
        if latex {
            s = s.replace(" + ", "+").replace(" - ", "-");
        }
        if let Some(f) = self.floor {
            if s.is_empty() {
                s = if latex { format!("o({v}^{{{f}}})") } else { format!("o({v}^{f})") };
            } else if latex {
                s.push_str(&format!("+o({v}^{{{f}}})"));
            } else {
                s.push_str(&format!(" + o({v}^{f})"));
            }
        } else if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for TruncatedQPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

fn pow_rational(x: &Rational, d: i32) -> Rational {
    let mut acc = Rational::one();
    let base = if d >= 0 { x.clone() } else { x.recip() };
    for _ in 0..d.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Output of [`TruncatedQPoly::palindrome_complete`]: an exact palindromic
/// polynomial plus at most one middle coefficient left undetermined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCompletion {
    pub poly: TruncatedQPoly,
    pub hole: Option<i32>,
}

impl DualityCompletion {
    /// Returns the polynomial, failing if a hole remains.
    pub fn into_exact(self) -> Result<TruncatedQPoly, ExactAlgError> {
        match self.hole {
            None => Ok(self.poly),
            Some(d) => Err(ExactAlgError::UnfilledHole(d)),
        }
    }

    /// Fills the hole so that `(poly - offset)(1) = target`.
    pub fn pin_at_one(&self, offset: &TruncatedQPoly, target: &Rational) -> Result<TruncatedQPoly, ExactAlgError> {
        let hole = self.hole.ok_or(ExactAlgError::NoHole)?;
        let current = (&self.poly - offset).eval(&Rational::one());
        let c = target - current;
        let mut out = self.poly.clone();
        out.set(hole, c);
        Ok(out)
    }
}

fn combine(a: &TruncatedQPoly, b: &TruncatedQPoly, sign: i64) -> TruncatedQPoly {
    let floor = match (a.floor, b.floor) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    };
    let mut out = TruncatedQPoly { var: a.var, coeffs: a.coeffs.clone(), floor };
    let s = int(sign);
    for (&d, c) in &b.coeffs {
        let cur = out.coeffs.get(&d).cloned().unwrap_or_else(Rational::zero);
        out.set(d, cur + c * &s);
    }
    if let Some(f) = floor {
        out.coeffs = out.coeffs.split_off(&f);
    }
    out
}

impl Add for &TruncatedQPoly {
    type Output = TruncatedQPoly;
    fn add(self, rhs: &TruncatedQPoly) -> TruncatedQPoly {
        combine(self, rhs, 1)
    }
}

impl Sub for &TruncatedQPoly {
    type Output = TruncatedQPoly;
    fn sub(self, rhs: &TruncatedQPoly) -> TruncatedQPoly {
        combine(self, rhs, -1)
    }
}

impl Neg for &TruncatedQPoly {
    type Output = TruncatedQPoly;
    fn neg(self) -> TruncatedQPoly {
        self.scale(&int(-1))
    }
}

impl Mul for &TruncatedQPoly {
    type Output = TruncatedQPoly;
    fn mul(self, rhs: &TruncatedQPoly) -> TruncatedQPoly {
        let a_zero_exact = self.is_exact() && self.is_zero();
        let b_zero_exact = rhs.is_exact() && rhs.is_zero();
        if a_zero_exact || b_zero_exact {
            return TruncatedQPoly::zero().with_var(self.var);
        }
        let mut floor: Option<i32> = None;
        if let (Some(fa), Some(db)) = (self.floor, rhs.effective_degree()) {
            floor = Some(fa + db);
        }
        if let (Some(fb), Some(da)) = (rhs.floor, self.effective_degree()) {
            floor = Some(floor.map_or(fb + da, |f| f.max(fb + da)));
        }
        let mut coeffs: BTreeMap<i32, Rational> = BTreeMap::new();
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &rhs.coeffs {
                *coeffs.entry(da + db).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        let out = TruncatedQPoly { var: self.var, coeffs, floor: None };
        match floor {
            Some(f) => out.truncate(f),
            None => out,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedQPoly {
            type Output = TruncatedQPoly;
            fn $m(self, rhs: TruncatedQPoly) -> TruncatedQPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TruncatedQPoly> for TruncatedQPoly {
            type Output = TruncatedQPoly;
            fn $m(self, rhs: &TruncatedQPoly) -> TruncatedQPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<TruncatedQPoly> for &TruncatedQPoly {
            type Output = TruncatedQPoly;
            fn $m(self, rhs: TruncatedQPoly) -> TruncatedQPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TruncatedQPoly {
    type Output = TruncatedQPoly;
    fn neg(self) -> TruncatedQPoly {
        -&self
    }
}

impl std::iter::Sum for TruncatedQPoly {
    fn sum<I: Iterator<Item = TruncatedQPoly>>(iter: I) -> Self {
        iter.fold(TruncatedQPoly::zero(), |a, b| &a + &b)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    variable: String,
    coefficients: Vec<(i32, String)>,
    trusted_min_degree: Option<i32>,
}

impl Serialize for TruncatedQPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            variable: self.var.symbol().to_string(),
            coefficients: self.coeffs.iter().rev().map(|(&d, c)| (d, format_rational(c))).collect(),
            trusted_min_degree: self.floor,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedQPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        let var = match r.variable.as_str() {
            "q" => Var::Q,
            "t" => Var::T,
            other => return Err(D::Error::custom(format!("unknown variable {other}"))),
        };
        let mut terms = Vec::new();
        for (deg, c) in r.coefficients {
            terms.push((deg, parse_rational(&c).map_err(D::Error::custom)?));
        }
        let p = TruncatedQPoly::from_rational_terms(terms).with_var(var);
        if let Some(f) = r.trusted_min_degree {
            if p.low_degree().is_some_and(|d| d < f) {
                return Err(D::Error::custom("coefficient stored below trusted_min_degree"));
            }
            return Ok(p.truncate(f));
        }
        Ok(p)
    }
}

/// Integer value of a polynomial at an integer point, for exact inputs with integer values.
pub fn eval_i128(p: &TruncatedQPoly, x: i64) -> Option<i128> {
    p.eval_integer(x)?.to_i128()
}
