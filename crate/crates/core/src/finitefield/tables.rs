use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::element::FieldElement;
use super::spec::FieldSpec;
use super::FieldError;

const FULL_ADD_LIMIT: u32 = 1024;

/// Lookup tables for a standard field, with elements encoded as `u32` codes
/// (`sum c_i p^i` over the polynomial-basis coordinates).
///
/// The standard modulus is primitive, so `x` generates the multiplicative
/// group and exp/log tables give multiplication.
pub struct FieldTables {
    spec: Arc<FieldSpec>,
    p: u32,
    k: u32,
    size: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

fn tables_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<FieldTables>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FieldTables>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldTables {
    /// Shared tables for the standard field `F_{p^k}`.
    pub fn get(p: u32, k: u32) -> Result<Arc<FieldTables>, FieldError> {
        if let Some(t) = tables_cache().lock().unwrap().get(&(p, k)) {
            return Ok(t.clone());
        }
        let spec = FieldSpec::standard(p, k)?;
        let t = Arc::new(FieldTables::build(spec));
        tables_cache().lock().unwrap().insert((p, k), t.clone());
        Ok(t)
    }

    fn build(spec: Arc<FieldSpec>) -> FieldTables {
        let (p, k) = (spec.p(), spec.k());
        let size = spec.size() as u32;
        let n = size - 1;
        let m = spec.modulus();
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; size as usize];
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        for i in 0..n {
            let code = encode(&cur);
            exp[i as usize] = code;
            exp[(i + n) as usize] = code;
            log[code as usize] = i;
            // multiply by x: shift up and reduce by the monic modulus
            let top = cur[k as usize - 1];
            for j in (1..k as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..k as usize {
                    cur[j] = (cur[j] + p * p - top * m[j] % p) % p;
                }
            }
        }
        let mut t = FieldTables { spec, p, k, size, exp, log, neg: Vec::new(), add: None };
        t.neg = (0..size).map(|a| t.digit_combine(0, a, true)).collect();
        if size <= FULL_ADD_LIMIT {
            let mut add = vec![0u16; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    add[(a * size + b) as usize] = t.digit_combine(a, b, false) as u16;
                }
            }
            t.add = Some(add);
        }
        t
    }

    fn digit_combine(&self, mut a: u32, mut b: u32, subtract: bool) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let (x, y) = (a % p, b % p);
            let d = if subtract { (x + p - y) % p } else { (x + y) % p };
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        match &self.add {
            Some(t) => t[(a * self.size + b) as usize] as u32,
            None => self.digit_combine(a, b, false),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let n = self.size - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// `a^e` for a non-negative exponent (with `0^0 = 1`).
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `a^(p^e)`.
    pub fn frob(&self, a: u32, e: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as u64;
        let pe = (self.p as u64).pow(e % self.k) % n;
        self.exp[((self.log[a as usize] as u64 * pe) % n) as usize]
    }

    /// `x^i` for the primitive generator `x`.
    #[inline]
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.size as u64 - 1)) as usize]
    }

    /// Discrete logarithm of a nonzero element to base `x`.
    #[inline]
    pub fn log(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    /// Quadratic character (odd characteristic): 0, 1 or -1.
    #[inline]
    pub fn quadratic_character(&self, a: u32) -> i32 {
        if a == 0 {
            0
        } else if self.log[a as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Image of an element of the standard field `F_{p^d}` (given by its code
    /// there) under the standard embedding.
    pub fn embed_code_from(&self, sub: &FieldTables, c: u32) -> u32 {
        if c == 0 {
            return 0;
        }
        let step = (self.size as u64 - 1) / (sub.size as u64 - 1);
        self.exp(sub.log(c) as u64 * step)
    }

    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Elements of the subfield `F_{p^d}` (requires `d | k`), in code order.
    pub fn subfield(&self, d: u32) -> Vec<u32> {
        assert!(self.k.is_multiple_of(d), "subfield degree must divide the field degree");
        let n = self.size - 1;
        let step = n / ((self.p as u64).pow(d) as u32 - 1);
        let mut v: Vec<u32> = std::iter::once(0).chain((0..n).step_by(step as usize).map(|i| self.exp[i as usize])).collect();
        v.sort_unstable();
        v
    }

    /// Whether `a` lies in `F_{p^d}`.
    pub fn in_subfield(&self, a: u32, d: u32) -> bool {
        self.frob(a, d) == a
    }

    pub fn to_element(&self, a: u32) -> FieldElement {
        FieldElement::from_code(&self.spec, a as u64)
    }

    pub fn from_element(&self, e: &FieldElement) -> Result<u32, FieldError> {
        if e.spec() != &self.spec {
            return Err(FieldError::MixedSpecs);
        }
        Ok(e.code() as u32)
    }
}
