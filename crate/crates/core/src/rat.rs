//! Exact scalar arithmetic.
//!
//! Every coefficient, pairing value and threshold in this crate is a [`Rat`]:
//! an arbitrary-precision rational kept in lowest terms with a positive
//! denominator. There is no floating point anywhere in the library.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as a rational number")]
pub struct ParseRatError(pub String);

/// Parses `p`, `-p` or `p/q` (with `q != 0`) into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
        None => BigInt::from_str(t).map(Rat::from_integer).map_err(|_| err()),
    }
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Scales a pair of rationals to the primitive integer vector on the same ray.
///
/// Returns `(0, 0)` for the zero vector.
pub fn primitive_pair(x: &Rat, y: &Rat) -> (BigInt, BigInt) {
    let l = x.denom().lcm(y.denom());
    let xi = x.numer() * (&l / x.denom());
    let yi = y.numer() * (&l / y.denom());
    let g = xi.gcd(&yi);
    if g.is_zero() {
        (BigInt::zero(), BigInt::zero())
    } else {
        (xi / &g, yi / &g)
    }
}

/// Scales a rational vector by the positive factor that makes it a primitive
/// integer vector.
pub fn primitive_vector(v: &[Rat]) -> Vec<Rat> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &g))
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Memoized `n!` table. Grows on demand; values never change once computed.
#[derive(Debug, Default)]
pub struct Factorials {
    table: RefCell<Vec<BigInt>>,
}

impl Factorials {
    pub fn new() -> Self {
        Self { table: RefCell::new(vec![BigInt::one()]) }
    }

    pub fn get(&self, n: u64) -> BigInt {
        let n = n as usize;
        let mut t = self.table.borrow_mut();
        if t.is_empty() {
            t.push(BigInt::one());
        }
        while t.len() <= n {
            let next = &t[t.len() - 1] * BigInt::from(t.len());
            t.push(next);
        }
        t[n].clone()
    }

    /// `prod(num!) / prod(den!)` as a reduced rational.
    pub fn ratio(&self, num: &[u64], den: &[u64]) -> Rat {
        let n = num.iter().fold(BigInt::one(), |acc, &k| acc * self.get(k));
        let d = den.iter().fold(BigInt::one(), |acc, &k| acc * self.get(k));
        Rat::new(n, d)
    }
}

/// An exact real number of the form `rational + coeff * sqrt(radicand)`.
///
/// Used for roots of integer quadratics, which are irrational in general.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub rational: Rat,
    pub coeff: Rat,
    pub radicand: BigInt,
}

impl Surd {
    /// Exact comparison of the surd against a rational.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        // sign(rational + coeff*sqrt(r) - x) = sign(coeff*sqrt(r) - (x - rational))
        let rhs = x - &self.rational;
        let lhs_sign = if self.coeff.is_zero() || self.radicand.is_zero() {
            Sign::NoSign
        } else if self.coeff.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let rhs_sign = sign_of(&rhs);
        match (lhs_sign, rhs_sign) {
            (Sign::NoSign, _) => Rat::zero().cmp(&rhs),
            (Sign::Plus, Sign::Minus) | (Sign::Plus, Sign::NoSign) => Ordering::Greater,
            (Sign::Minus, Sign::Plus) | (Sign::Minus, Sign::NoSign) => Ordering::Less,
            (s, _) => {
                // same sign: compare squares, flipping when both are negative
                let lsq = &self.coeff * &self.coeff * Rat::from_integer(self.radicand.clone());
                let rsq = &rhs * &rhs;
                let ord = lsq.cmp(&rsq);
                if s == Sign::Minus {
                    ord.reverse()
                } else {
                    ord
                }
            }
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.coeff.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt({})", self.rational, op, self.coeff.abs(), self.radicand)
    }
}

fn sign_of(x: &Rat) -> Sign {
    if x.is_zero() {
        Sign::NoSign
    } else if x.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rat("17/28").unwrap(), frac(17, 28));
        assert_eq!(parse_rat("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rat(" 11 ").unwrap(), int(11));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn primitive_pairs() {
        assert_eq!(primitive_pair(&int(196), &int(24)), (BigInt::from(49), BigInt::from(6)));
        assert_eq!(primitive_pair(&frac(162, 25), &int(1)), (BigInt::from(162), BigInt::from(25)));
        assert_eq!(primitive_pair(&int(0), &int(-3)), (BigInt::from(0), BigInt::from(-1)));
    }

    #[test]
    fn factorials() {
        let f = Factorials::new();
        assert_eq!(f.get(10), BigInt::from(3_628_800));
        assert_eq!(f.ratio(&[6], &[4, 3]), int(5));
    }

    #[test]
    fn surd_comparison() {
        // 1 + sqrt(2) ~ 2.414
        let s = Surd { rational: int(1), coeff: int(1), radicand: BigInt::from(2) };
        assert_eq!(s.cmp_rat(&frac(12, 5)), Ordering::Greater);
        assert_eq!(s.cmp_rat(&frac(5, 2)), Ordering::Less);
        // 3 - sqrt(4) = 1
        let t = Surd { rational: int(3), coeff: int(-1), radicand: BigInt::from(4) };
        assert_eq!(t.cmp_rat(&int(1)), Ordering::Equal);
        assert_eq!(t.cmp_rat(&int(2)), Ordering::Less);
        assert_eq!(t.cmp_rat(&int(0)), Ordering::Greater);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
