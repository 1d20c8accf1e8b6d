//! Exact-rational scalar helpers shared by the constructive builders.
//!
//! Networks come in two numeric backends: `f64` and arbitrary-precision
//! rationals. Every `f64` is itself a dyadic rational, so lifting a float
//! into the rational backend is exact; the helpers here centralize that
//! conversion plus the handful of exact bounds (integer/rational square
//! roots, decimal parsing) the builders rely on.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Exact conversion; every finite `f64` is a dyadic rational.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    BigRational::from_float(x)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q`, plain integers, and plain decimals (e.g. `-0.45`) exactly.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty scalar".into());
    }
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.parse().map_err(|_| format!("bad numerator {p:?}"))?;
        let den: BigInt = q.parse().map_err(|_| format!("bad denominator {q:?}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rat::new(num, den));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("bad scalar {s:?}"));
    }
    let digits: String = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("bad scalar {s:?}"));
    }
    let num: BigInt = digits.parse().map_err(|_| format!("bad scalar {s:?}"))?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rat::new(BigInt::from(sign) * num, den))
}

/// Writes a rational as `p/q` in base 10 (always with denominator).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn floor_rat(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Number of decimal digits of a positive integer.
pub fn decimal_digits(n: &BigInt) -> usize {
    assert!(n.sign() != Sign::Minus);
    n.to_string().trim_start_matches('-').len()
}

pub fn pow10(k: usize) -> BigInt {
    BigInt::from(10u32).pow(k as u32)
}

/// Smallest integer `m` with `m*m >= n`.
pub fn ceil_sqrt_usize(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut m = (n as f64).sqrt() as usize;
    while m * m < n {
        m += 1;
    }
    while m > 1 && (m - 1) * (m - 1) >= n {
        m -= 1;
    }
    m
}

/// Exact rational bounds `(lo, hi)` with `lo <= sqrt(r) <= hi` for `r >= 0`.
///
/// Uses the identity sqrt(p/q) = sqrt(p*q)/q with an integer floor sqrt.
pub fn rat_sqrt_bounds(r: &Rat) -> (Rat, Rat) {
    assert!(!r.is_negative(), "sqrt of negative rational");
    if r.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let p = r.numer().clone();
    let q = r.denom().clone();
    let s = (&p * &q).sqrt();
    let lo = Rat::new(s.clone(), q.clone());
    let hi = Rat::new(s + BigInt::one(), q);
    debug_assert!(&lo * &lo <= *r && *r <= &hi * &hi);
    (lo, hi)
}

/// ln of the volume of the unit ball in R^n, computed from exact
/// log-factorial sums so it stays accurate for n in the thousands.
pub fn ln_unit_ball_volume(n: usize) -> f64 {
    // V_n = pi^(n/2) / Gamma(n/2 + 1)
    let half_ln_pi = std::f64::consts::PI.ln() * 0.5;
    let ln_gamma = if n % 2 == 0 {
        // Gamma(k + 1) = k!
        let k = n / 2;
        (1..=k).map(|i| (i as f64).ln()).sum::<f64>()
    } else {
        // Gamma(k + 3/2) = (2k+2)! sqrt(pi) / (4^(k+1) (k+1)!)
        let k = (n - 1) / 2;
        let m = k + 1;
        let ln_fact = |j: usize| (1..=j).map(|i| (i as f64).ln()).sum::<f64>();
        ln_fact(2 * m) + half_ln_pi - (m as f64) * 4f64.ln() - ln_fact(m)
    };
    (n as f64) * half_ln_pi - ln_gamma
}

/// Deterministic sub-seed derivation (splitmix64 finalizer).
pub fn sub_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9e3779b97f4a7c15);
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimal_is_exact() {
        assert_eq!(parse_rat("0.45").unwrap(), rat_ratio(45, 100));
        assert_eq!(parse_rat("-1.1").unwrap(), rat_ratio(-11, 10));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("3/4").unwrap(), rat_ratio(3, 4));
        assert!(parse_rat("1.2.3").is_err());
        assert!(parse_rat("a").is_err());
    }

    #[test]
    fn f64_roundtrip_is_exact() {
        for x in [0.1, 0.7, 1.0 / 3.0, 255.0, 1e-30] {
            let r = rat_from_f64(x).unwrap();
            assert_eq!(rat_to_f64(&r), x);
        }
    }

    #[test]
    fn sqrt_bounds_bracket() {
        for (p, q) in [(2i64, 1i64), (1, 3), (49, 4), (10, 7)] {
            let r = rat_ratio(p, q);
            let (lo, hi) = rat_sqrt_bounds(&r);
            assert!(&lo * &lo <= r && r <= &hi * &hi);
        }
    }

    #[test]
    fn ceil_sqrt_small() {
        assert_eq!(ceil_sqrt_usize(0), 0);
        assert_eq!(ceil_sqrt_usize(1), 1);
        assert_eq!(ceil_sqrt_usize(2), 2);
        assert_eq!(ceil_sqrt_usize(4), 2);
        assert_eq!(ceil_sqrt_usize(5), 3);
        assert_eq!(ceil_sqrt_usize(1024), 32);
    }

    #[test]
    fn ball_volume_matches_known_values() {
        assert!((ln_unit_ball_volume(1) - 2f64.ln()).abs() < 1e-12);
        assert!((ln_unit_ball_volume(2) - std::f64::consts::PI.ln()).abs() < 1e-12);
        let v3 = 4.0 / 3.0 * std::f64::consts::PI;
        assert!((ln_unit_ball_volume(3) - v3.ln()).abs() < 1e-12);
    }
}
