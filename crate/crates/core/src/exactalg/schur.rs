use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::TruncatedQPoly;
use super::rational::{int, Rational};
use super::ExactAlgError;

/// Partition of a small integer, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, ExactAlgError> {
        if parts.contains(&0) {
            return Err(ExactAlgError::BadPartition(format!("{parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// `[1, 1, ..., 1]` with `n` parts.
    pub fn ones(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }

    /// Largest part, 0 for the empty partition.
    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Least common multiple of the parts (1 for the empty partition).
    pub fn lcm(&self) -> u32 {
        self.0.iter().fold(1, |a, &b| num_integer::lcm(a, b))
    }

    /// Comma-joined key, e.g. `"2,1"`; the empty partition is `""`.
    pub fn key(&self) -> String {
        self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let m = self.max_part();
        Partition((1..=m).map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32).collect())
    }

    /// Dimension of the irreducible representation of `S_n` (hook length formula).
    pub fn dimension(&self) -> u64 {
        let conj = self.conjugate();
        let mut hooks = 1u64;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.0[j] as usize - i - 1;
                hooks *= (arm + leg + 1) as u64;
            }
        }
        factorial(self.size()) / hooks
    }
}

impl Ord for Partition {
    /// Sizes ascending, then reverse lexicographic, so `[3] < [2,1] < [1,1,1]`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.key())
    }
}

impl FromStr for Partition {
    type Err = ExactAlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        if t.trim().is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ExactAlgError::BadPartition(s.to_string()))?;
        Partition::new(parts)
    }
}

pub fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// All partitions of `n` in the canonical order `[n], ..., [1,...,1]`.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Size of the conjugacy class of `S_n` with cycle type `sigma`.
pub fn class_size(sigma: &Partition) -> u64 {
    let mut z = 1u64;
    for k in 1..=sigma.max_part() {
        let m = sigma.multiplicity(k) as u32;
        z *= (k as u64).pow(m) * factorial(m);
    }
    factorial(sigma.size()) / z
}

/// Character value `chi_lambda(sigma)` of `S_n` for `n <= 3`.
pub fn character(lambda: &Partition, sigma: &Partition) -> Result<i64, ExactAlgError> {
    let n = lambda.size();
    if sigma.size() != n {
        return Err(ExactAlgError::SizeMismatch { expected: n, got: sigma.size() });
    }
    let v = match (lambda.parts(), sigma.parts()) {
        (_, _) if n <= 1 => 1,
        ([2], _) => 1,
        ([1, 1], [1, 1]) => 1,
        ([1, 1], [2]) => -1,
        ([3], _) => 1,
        ([2, 1], [1, 1, 1]) => 2,
        ([2, 1], [2, 1]) => 0,
        ([2, 1], [3]) => -1,
        ([1, 1, 1], [1, 1, 1]) => 1,
        ([1, 1, 1], [2, 1]) => -1,
        ([1, 1, 1], [3]) => 1,
        _ => return Err(ExactAlgError::UnsupportedDegree(n)),
    };
    Ok(v)
}

/// Element of the representation ring of `S_n` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurVector {
    n: u32,
    terms: BTreeMap<Partition, TruncatedQPoly>,
}

impl SchurVector {
    pub fn zero(n: u32) -> Self {
        SchurVector { n, terms: BTreeMap::new() }
    }

    pub fn new<I: IntoIterator<Item = (Partition, TruncatedQPoly)>>(n: u32, terms: I) -> Result<Self, ExactAlgError> {
        let mut v = Self::zero(n);
        for (lambda, p) in terms {
            v.insert(lambda, p)?;
        }
        Ok(v)
    }

    pub fn insert(&mut self, lambda: Partition, p: TruncatedQPoly) -> Result<(), ExactAlgError> {
        if lambda.size() != self.n {
            return Err(ExactAlgError::SizeMismatch { expected: self.n, got: lambda.size() });
        }
        self.terms.insert(lambda, p);
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Coefficient of `s_lambda`; a missing key is zero.
    pub fn get(&self, lambda: &Partition) -> TruncatedQPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &TruncatedQPoly)> {
        self.terms.iter()
    }

    /// Applies `f` to every coefficient, keeping all partitions of `n` as keys.
    pub fn try_map<F>(&self, mut f: F) -> Result<SchurVector, ExactAlgError>
    where
        F: FnMut(&Partition, &TruncatedQPoly) -> Result<TruncatedQPoly, ExactAlgError>,
    {
        let mut out = SchurVector::zero(self.n);
        for lambda in partitions(self.n) {
            let p = f(&lambda, &self.get(&lambda))?;
            out.terms.insert(lambda, p);
        }
        Ok(out)
    }

    pub fn add(&self, other: &SchurVector) -> Result<SchurVector, ExactAlgError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SchurVector) -> Result<SchurVector, ExactAlgError> {
        self.zip(other, |a, b| a - b)
    }

    fn zip<F: Fn(&TruncatedQPoly, &TruncatedQPoly) -> TruncatedQPoly>(
        &self,
        other: &SchurVector,
        f: F,
    ) -> Result<SchurVector, ExactAlgError> {
        if self.n != other.n {
            return Err(ExactAlgError::SizeMismatch { expected: self.n, got: other.n });
        }
        self.try_map(|l, p| Ok(f(p, &other.get(l))))
    }

    /// `sum_lambda dim(V_lambda) P_lambda`.
    pub fn dimension_specialize(&self) -> TruncatedQPoly {
        self.terms
            .iter()
            .map(|(l, p)| p.scale(&int(l.dimension() as i64)))
            .sum()
    }

    /// `sum_lambda chi_lambda(sigma) P_lambda`.
    pub fn character_specialize(&self, sigma: &Partition) -> Result<TruncatedQPoly, ExactAlgError> {
        if sigma.size() != self.n {
            return Err(ExactAlgError::SizeMismatch { expected: self.n, got: sigma.size() });
        }
        let mut acc = TruncatedQPoly::zero();
        for (l, p) in &self.terms {
            acc = &acc + &p.scale(&int(character(l, sigma)?));
        }
        Ok(acc)
    }

    /// Multiplicity of the trivial representation: `(1/n!) sum_sigma |C_sigma| value(sigma)`.
    pub fn trivial_multiplicity(&self) -> Result<TruncatedQPoly, ExactAlgError> {
        let mut acc = TruncatedQPoly::zero();
        for sigma in partitions(self.n) {
            let v = self.character_specialize(&sigma)?;
            acc = &acc + &v.scale(&int(class_size(&sigma) as i64));
        }
        Ok(acc.scale(&Rational::new(1.into(), (factorial(self.n) as i64).into())))
    }
}

/// Converts a class function `sigma -> value` into Schur coordinates.
pub fn schur_from_class_values(
    n: u32,
    values: &BTreeMap<Partition, TruncatedQPoly>,
) -> Result<SchurVector, ExactAlgError> {
    let nf = Rational::new(1.into(), (factorial(n) as i64).into());
    let mut out = SchurVector::zero(n);
    for mu in partitions(n) {
        let mut acc = TruncatedQPoly::zero();
        for sigma in partitions(n) {
            let v = values.get(&sigma).ok_or_else(|| ExactAlgError::BadPartition(sigma.key()))?;
            let w = int(class_size(&sigma) as i64 * character(&mu, &sigma)?);
            acc = &acc + &v.scale(&w);
        }
        out.terms.insert(mu, acc.scale(&nf));
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct SchurRepr {
    n: u32,
    terms: BTreeMap<String, TruncatedQPoly>,
}

impl Serialize for SchurVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Terms<'a>(&'a BTreeMap<Partition, TruncatedQPoly>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(&k.key(), v)?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("SchurVector", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &Terms(&self.terms))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SchurVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SchurRepr::deserialize(d)?;
        let mut v = SchurVector::zero(r.n);
        for (k, p) in r.terms {
            let lambda: Partition = k.parse().map_err(D::Error::custom)?;
            v.insert(lambda, p).map_err(D::Error::custom)?;
        }
        Ok(v)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
