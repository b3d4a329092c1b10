use num_bigint::BigInt;
use num_traits::Zero;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Big integer as a rational.
pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `num/den`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}
