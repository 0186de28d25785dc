use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn floor_rat(x: &Rat) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil_rat(x: &Rat) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Narrow an integer that is known to be small.
///
/// Panics if the value does not fit; all exponents and hyperplane indices in
/// this crate are tiny compared to `i64`.
pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer exceeds i64 range")
}

/// Parse `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Serialize as `"p/q"`, or `"p"` for integers.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[allow(dead_code)]
pub(crate) fn is_integral(x: &Rat) -> bool {
    x.denom().is_one()
}

#[allow(dead_code)]
pub(crate) fn sign_of(x: &Rat) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors_of_negative_fractions() {
        assert_eq!(floor_rat(&rat_frac(-1, 2)), BigInt::from(-1));
        assert_eq!(floor_rat(&rat_frac(1, 2)), BigInt::from(0));
        assert_eq!(floor_rat(&rat(-3)), BigInt::from(-3));
        assert_eq!(ceil_rat(&rat_frac(-1, 2)), BigInt::from(0));
        assert_eq!(ceil_rat(&rat_frac(7, 3)), BigInt::from(3));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("1/10"), Some(rat_frac(1, 10)));
        assert_eq!(parse_rat(" -2/4 "), Some(rat_frac(-1, 2)));
        assert_eq!(parse_rat("3"), Some(rat(3)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("abc"), None);
        assert_eq!(rat_to_string(&rat_frac(2, -4)), "-1/2");
        assert_eq!(rat_to_string(&rat(5)), "5");
    }
}
