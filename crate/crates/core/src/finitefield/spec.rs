use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::FieldError;

/// Polynomials over `F_p` as coefficient vectors, constant term first.
pub(crate) mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut out);
        out
    }

    pub fn inv_mod_p(a: u32, p: u32) -> u32 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = (a % p) as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod_p(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = dr - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (c as u64 * mi as u64 % p as u64) as u32) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn pow_mod_poly(a: &[u32], mut e: u128, m: &[u32], p: u32) -> Vec<u32> {
        let mut r = vec![1u32];
        let mut b = rem(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }
}

/// A finite field `F_{p^k}` given by a monic irreducible modulus over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    standard: bool,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest field size supported by the element encoding.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

fn standard_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<FieldSpec>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FieldSpec>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldSpec {
    /// The standard field `F_{p^k}` from the deterministic modulus table.
    ///
    /// Moduli are the first candidates, ordered by the integer whose base-`p`
    /// digits are the low coefficients, that are primitive and whose norm
    /// elements are roots of the standard moduli of every proper subfield.
    pub fn standard(p: u32, k: u32) -> Result<Arc<FieldSpec>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 || (p as u64).checked_pow(k).is_none_or(|s| s > MAX_FIELD_SIZE) {
            return Err(FieldError::Unsupported { p, k });
        }
        if let Some(s) = standard_cache().lock().unwrap().get(&(p, k)) {
            return Ok(s.clone());
        }
        let subs: Vec<Arc<FieldSpec>> = (1..k)
            .filter(|m| k.is_multiple_of(*m))
            .map(|m| FieldSpec::standard(p, m))
            .collect::<Result<_, _>>()?;
        let modulus = search_modulus(p, k, &subs).ok_or(FieldError::Unsupported { p, k })?;
        let spec = Arc::new(FieldSpec { p, k, modulus, standard: true });
        standard_cache().lock().unwrap().insert((p, k), spec.clone());
        Ok(spec)
    }

    /// A field with a caller-chosen monic modulus (coefficients constant term first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Arc<FieldSpec>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let mut m: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        fp_poly::trim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(FieldError::Reducible(m));
        }
        let k = (m.len() - 1) as u32;
        if (p as u64).checked_pow(k).is_none_or(|s| s > MAX_FIELD_SIZE) {
            return Err(FieldError::Unsupported { p, k });
        }
        if !is_irreducible(&m, p) {
            return Err(FieldError::Reducible(m));
        }
        let standard = FieldSpec::standard(p, k).map(|s| s.modulus == m).unwrap_or(false);
        Ok(Arc::new(FieldSpec { p, k, modulus: m, standard }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Monic modulus, constant term first, length `k + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

/// Rabin irreducibility test over `F_p`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    let x = vec![0u32, 1];
    let frob_pow = |e: usize| -> Vec<u32> { fp_poly::pow_mod_poly(&x, (p as u128).pow(e as u32), m, p) };
    let xk = frob_pow(k);
    if fp_poly::sub(&xk, &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for r in prime_factors(k as u128) {
        let e = k / r as usize;
        let h = fp_poly::sub(&frob_pow(e), &x, p);
        let g = fp_poly::gcd(m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn search_modulus(p: u32, k: u32, subs: &[Arc<FieldSpec>]) -> Option<Vec<u32>> {
    let order = (p as u128).pow(k) - 1;
    let factors = prime_factors(order);
    let x = vec![0u32, 1];
    let total = (p as u64).pow(k);
    'cand: for n in 0..total {
        let mut m: Vec<u32> = Vec::with_capacity(k as usize + 1);
        let mut t = n;
        for _ in 0..k {
            m.push((t % p as u64) as u32);
            t /= p as u64;
        }
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if fp_poly::pow_mod_poly(&x, order, &m, p) != [1] {
            continue;
        }
        for &r in &factors {
            if fp_poly::pow_mod_poly(&x, order / r, &m, p) == [1] {
                continue 'cand;
            }
        }
        for sub in subs {
            let e = order / ((p as u128).pow(sub.k) - 1);
            let g = fp_poly::pow_mod_poly(&x, e, &m, p);
            if !eval_fp_poly_at(sub.modulus(), &g, &m, p).is_empty() {
                continue 'cand;
            }
        }
        return Some(m);
    }
    None
}

/// Evaluates a polynomial with `F_p` coefficients at the element `g` of `F_p[x]/(m)`.
pub(crate) fn eval_fp_poly_at(f: &[u32], g: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut acc: Vec<u32> = Vec::new();
    for &c in f.iter().rev() {
        acc = fp_poly::mul_mod(&acc, g, m, p);
        acc = fp_poly::add(&acc, &[c % p], p);
    }
    acc
}
