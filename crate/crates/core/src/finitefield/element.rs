use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::spec::{eval_fp_poly_at, fp_poly, FieldSpec};
use super::FieldError;

/// Element of `F_{p^k}` in the polynomial basis of its spec's modulus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coords: Vec<u32>,
}

/// Binary field operation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    /// Element with the given coordinates (constant term first, reduced mod `p`).
    pub fn new(spec: &Arc<FieldSpec>, coords: &[u32]) -> Result<Self, FieldError> {
        if coords.len() > spec.k() as usize {
            return Err(FieldError::BadCoords { expected: spec.k() as usize, got: coords.len() });
        }
        let mut c: Vec<u32> = coords.iter().map(|&x| x % spec.p()).collect();
        c.resize(spec.k() as usize, 0);
        Ok(FieldElement { spec: spec.clone(), coords: c })
    }

    fn from_poly(spec: &Arc<FieldSpec>, mut poly: Vec<u32>) -> Self {
        poly.resize(spec.k() as usize, 0);
        FieldElement { spec: spec.clone(), coords: poly }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        Self::from_poly(spec, Vec::new())
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::from_poly(spec, vec![1])
    }

    /// Image of an integer under `Z -> F_p -> F_{p^k}`.
    pub fn from_int(spec: &Arc<FieldSpec>, n: i64) -> Self {
        let p = spec.p() as i64;
        Self::from_poly(spec, vec![n.rem_euclid(p) as u32])
    }

    /// The class of `x`, a generator of the field over `F_p`.
    pub fn generator(spec: &Arc<FieldSpec>) -> Self {
        let m = spec.modulus();
        Self::from_poly(spec, fp_poly::rem(&[0, 1], m, spec.p()))
    }

    /// Element whose coordinates are the base-`p` digits of `code`.
    pub fn from_code(spec: &Arc<FieldSpec>, code: u64) -> Self {
        let p = spec.p() as u64;
        let mut c = Vec::with_capacity(spec.k() as usize);
        let mut t = code;
        for _ in 0..spec.k() {
            c.push((t % p) as u32);
            t /= p;
        }
        FieldElement { spec: spec.clone(), coords: c }
    }

    /// `sum c_i p^i`; prime-field elements have code equal to their value.
    pub fn code(&self) -> u64 {
        let p = self.spec.p() as u64;
        self.coords.iter().rev().fold(0, |acc, &c| acc * p + c as u64)
    }

    /// All elements in code order.
    pub fn all(spec: &Arc<FieldSpec>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..spec.size()).map(move |c| FieldElement::from_code(spec, c))
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn poly(&self) -> Vec<u32> {
        let mut v = self.coords.clone();
        fp_poly::trim(&mut v);
        v
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.spec != other.spec {
            return Err(FieldError::MixedSpecs);
        }
        Ok(())
    }

    pub fn arith(&self, other: &FieldElement, op: FieldOp) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let p = self.spec.p();
        let m = self.spec.modulus();
        let r = match op {
            FieldOp::Add => fp_poly::add(&self.poly(), &other.poly(), p),
            FieldOp::Sub => fp_poly::sub(&self.poly(), &other.poly(), p),
            FieldOp::Mul => fp_poly::mul_mod(&self.poly(), &other.poly(), m, p),
            FieldOp::Div => {
                let inv = other.inv()?;
                fp_poly::mul_mod(&self.poly(), &inv.poly(), m, p)
            }
        };
        Ok(Self::from_poly(&self.spec, r))
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(other, FieldOp::Add)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(other, FieldOp::Sub)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(other, FieldOp::Mul)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.arith(other, FieldOp::Div)
    }

    pub fn neg(&self) -> FieldElement {
        Self::from_poly(&self.spec, fp_poly::sub(&[], &self.poly(), self.spec.p()))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.spec.size() as u128 - 2))
    }

    pub fn pow(&self, e: u128) -> FieldElement {
        let r = fp_poly::pow_mod_poly(&self.poly(), e, self.spec.modulus(), self.spec.p());
        Self::from_poly(&self.spec, r)
    }

    /// `a^(p^base_power)`: the Frobenius relative to `F_{p^base_power}`.
    pub fn frobenius(&self, base_power: u32) -> FieldElement {
        let mut a = self.clone();
        for _ in 0..base_power % self.spec.k() {
            a = a.pow(self.spec.p() as u128);
        }
        a
    }

    /// Degree of the element over `F_p`.
    pub fn element_degree(&self) -> u32 {
        self.element_degree_over(1)
    }

    /// Smallest `d >= 1` with `a^(p^(base_power d)) = a`.
    pub fn element_degree_over(&self, base_power: u32) -> u32 {
        let mut d = 1;
        let mut a = self.frobenius(base_power);
        while a != *self {
            a = a.frobenius(base_power);
            d += 1;
        }
        d
    }

    /// Minimal polynomial over `F_p`, monic, constant term first.
    pub fn minimal_polynomial(&self) -> Vec<u32> {
        let p = self.spec.p();
        let d = self.element_degree();
        // Coefficients are elements of the big field that turn out to lie in F_p.
        let mut poly: Vec<FieldElement> = vec![FieldElement::one(&self.spec)];
        let mut conj = self.clone();
        for _ in 0..d {
            let mut next = vec![FieldElement::zero(&self.spec); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c).expect("same spec");
                next[i] = next[i].sub(&c.mul(&conj).expect("same spec")).expect("same spec");
            }
            poly = next;
            conj = conj.frobenius(1);
        }
        poly.iter().map(|c| c.coords[0] % p).collect()
    }

    /// Image under the canonical embedding into `target`.
    ///
    /// Between standard fields `x` maps to `x^((p^n - 1)/(p^m - 1))`; otherwise
    /// to the root of the source modulus in `target` with the smallest code.
    pub fn embed(&self, target: &Arc<FieldSpec>) -> Result<FieldElement, FieldError> {
        let (p, m, n) = (self.spec.p(), self.spec.k(), target.k());
        if target.p() != p || n % m != 0 {
            return Err(FieldError::NotEmbeddable { from: (p, m), to: (target.p(), n) });
        }
        let gamma = embedding_image_of_generator(&self.spec, target)?;
        let t = target.modulus();
        let img = eval_fp_poly_at(&self.poly(), &gamma.poly(), t, p);
        Ok(Self::from_poly(target, img))
    }
}

fn embedding_image_of_generator(source: &Arc<FieldSpec>, target: &Arc<FieldSpec>) -> Result<FieldElement, FieldError> {
    let (p, m, n) = (source.p(), source.k(), target.k());
    if source.is_standard() && target.is_standard() {
        let e = ((p as u128).pow(n) - 1) / ((p as u128).pow(m) - 1);
        return Ok(FieldElement::generator(target).pow(e));
    }
    for cand in FieldElement::all(target) {
        let v = eval_fp_poly_at(source.modulus(), &cand.poly(), target.modulus(), p);
        if v.is_empty() {
            return Ok(cand);
        }
    }
    Err(FieldError::NotEmbeddable { from: (p, m), to: (p, n) })
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "{}^{}:[{}]", self.spec.p(), self.spec.k(), c.join(","))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FieldElement {
    type Err = FieldError;

    /// Parses `p^k:[c0,...]` in the standard field.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::Parse(s.to_string());
        let (head, body) = s.split_once(':').ok_or_else(bad)?;
        let (p, k) = head.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let body = body.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let coords = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(|c| c.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?
        };
        if coords.len() != k as usize || coords.iter().any(|&c| c >= p) {
            return Err(bad());
        }
        let spec = FieldSpec::standard(p, k)?;
        FieldElement::new(&spec, &coords)
    }
}
