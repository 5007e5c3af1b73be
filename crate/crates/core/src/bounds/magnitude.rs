//! Nonnegative quantities that stay exact while they fit and fall back to
//! an iterated-exponential upper estimate when they do not.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Exact values are kept below `2^EXACT_BITS`.
pub const EXACT_BITS: u64 = 8192;
const TOP_LIMIT: f64 = 1e300;

/// A nonnegative quantity.
///
/// `Tower { height, top }` stands for `2^2^...^top` with `height` twos; it
/// is an estimate of a number too large to store and is always flagged as
/// saturated in reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Magnitude {
    Exact(BigRational),
    Tower { height: u32, top: f64 },
}

impl Magnitude {
    pub fn zero() -> Self {
        Magnitude::Exact(BigRational::zero())
    }

    pub fn int(v: u64) -> Self {
        Magnitude::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn big(v: BigInt) -> Self {
        Magnitude::exact(BigRational::from_integer(v))
    }

    pub fn exact(v: BigRational) -> Self {
        assert!(!v.is_negative(), "magnitudes are nonnegative");
        let m = Magnitude::Exact(v);
        m.normalized()
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Magnitude::exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self, Magnitude::Tower { .. })
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Magnitude::Exact(v) => Some(v),
            Magnitude::Tower { .. } => None,
        }
    }

    /// Exact integer value when it fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        self.as_exact()
            .filter(|v| v.is_integer())
            .and_then(|v| v.to_integer().to_u64())
    }

    fn normalized(self) -> Self {
        match self {
            Magnitude::Exact(v) => {
                if v.numer().bits() > EXACT_BITS + v.denom().bits() {
                    tower(1, approx_log2(&v))
                } else {
                    Magnitude::Exact(v)
                }
            }
            Magnitude::Tower { height, top } => tower(height, top),
        }
    }

    /// Upper estimate of `log2(self)`, for self >= 1.
    fn log2(&self) -> Magnitude {
        match self {
            Magnitude::Exact(v) => {
                let l = approx_log2(v).max(0.0).ceil();
                Magnitude::int(l as u64)
            }
            Magnitude::Tower { height: 1, top } => {
                Magnitude::exact(BigRational::from_float(top.ceil()).expect("finite top"))
            }
            Magnitude::Tower { height, top } => Magnitude::Tower {
                height: height - 1,
                top: *top,
            },
        }
    }

    fn exp2(exponent: &Magnitude) -> Magnitude {
        match exponent {
            Magnitude::Exact(v) => {
                let e = v.ceil().to_integer();
                match e.to_u64() {
                    Some(e) if e <= EXACT_BITS => Magnitude::big(BigInt::one() << e),
                    _ => tower(1, e.to_f64().unwrap_or(f64::INFINITY)).fix_infinite(v),
                }
            }
            Magnitude::Tower { height, top } => tower(height + 1, *top),
        }
    }

    fn fix_infinite(self, exponent: &BigRational) -> Magnitude {
        match self {
            Magnitude::Tower { top, .. } if !top.is_finite() => tower(2, approx_log2(exponent)),
            other => other,
        }
    }

    pub fn add(&self, other: &Magnitude) -> Magnitude {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Magnitude::exact(a + b),
            _ => {
                let m = if self >= other { self } else { other };
                Magnitude::exp2(&m.log2().add(&Magnitude::int(1)))
            }
        }
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Magnitude::exact(a * b),
            _ => {
                if self.is_zero() || other.is_zero() {
                    return Magnitude::zero();
                }
                let one = Magnitude::int(1);
                let a = if *self < one {
                    one.clone()
                } else {
                    self.clone()
                };
                let b = if *other < one { one } else { other.clone() };
                Magnitude::exp2(&a.log2().add(&b.log2()))
            }
        }
    }

    pub fn mul_int(&self, k: u64) -> Magnitude {
        self.mul(&Magnitude::int(k))
    }

    pub fn add_int(&self, k: u64) -> Magnitude {
        self.add(&Magnitude::int(k))
    }

    pub fn half(&self) -> Magnitude {
        match self {
            Magnitude::Exact(v) => Magnitude::Exact(v / BigInt::from(2)),
            other => other.clone(),
        }
    }

    pub fn floor(&self) -> Magnitude {
        match self {
            Magnitude::Exact(v) => Magnitude::Exact(v.floor()),
            other => other.clone(),
        }
    }

    pub fn ceil(&self) -> Magnitude {
        match self {
            Magnitude::Exact(v) => Magnitude::Exact(v.ceil()),
            other => other.clone(),
        }
    }

    pub fn square(&self) -> Magnitude {
        self.mul(self)
    }

    pub fn max(self, other: Magnitude) -> Magnitude {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Magnitude::Exact(v) if v.is_zero())
    }

    /// `base^exponent` for an integer base >= 1, with the exponent floored.
    pub fn pow(base: u64, exponent: &Magnitude) -> Magnitude {
        if base <= 1 {
            return Magnitude::int(1);
        }
        let e = exponent.floor();
        if let Some(n) = e.to_u64() {
            let bits_estimate = (n as f64) * (base as f64).log2();
            if bits_estimate <= EXACT_BITS as f64 {
                return Magnitude::big(num_traits::pow(BigInt::from(base), n as usize));
            }
        }
        let lb = Magnitude::exact(BigRational::from_float((base as f64).log2()).expect("finite"));
        Magnitude::exp2(&e.mul(&lb.ceil_fraction()))
    }

    fn ceil_fraction(&self) -> Magnitude {
        // Round the base-2 logarithm up to a multiple of 1/1024 so that the
        // estimate stays an upper bound.
        match self {
            Magnitude::Exact(v) => {
                let scaled = (v * BigInt::from(1024)).ceil();
                Magnitude::Exact(scaled / BigInt::from(1024))
            }
            other => other.clone(),
        }
    }
}

fn tower(mut height: u32, mut top: f64) -> Magnitude {
    while top.is_finite() && top > TOP_LIMIT {
        top = top.log2();
        height += 1;
    }
    Magnitude::Tower { height, top }
}

fn approx_log2(v: &BigRational) -> f64 {
    let num = v.numer();
    let den = v.denom();
    let shift_n = num.bits().saturating_sub(60);
    let shift_d = den.bits().saturating_sub(60);
    let n = (num >> shift_n).to_f64().unwrap_or(1.0);
    let d = (den >> shift_d).to_f64().unwrap_or(1.0);
    n.log2() - d.log2() + shift_n as f64 - shift_d as f64
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => a.cmp(b),
            (Magnitude::Exact(_), Magnitude::Tower { .. }) => Ordering::Less,
            (Magnitude::Tower { .. }, Magnitude::Exact(_)) => Ordering::Greater,
            (
                Magnitude::Tower {
                    height: h1,
                    top: t1,
                },
                Magnitude::Tower {
                    height: h2,
                    top: t2,
                },
            ) => h1
                .cmp(h2)
                .then(t1.partial_cmp(t2).unwrap_or(Ordering::Equal)),
        })
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(v) if v.is_integer() => write!(f, "{}", v.to_integer()),
            Magnitude::Exact(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Magnitude::Tower { height, top } => {
                for _ in 0..*height {
                    write!(f, "2^")?;
                }
                write!(f, "{top:.6e}")
            }
        }
    }
}

impl Serialize for Magnitude {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic() {
        let a = Magnitude::int(7);
        let b = Magnitude::ratio(1, 2);
        assert_eq!(a.add(&b), Magnitude::ratio(15, 2));
        assert_eq!(a.mul(&b).floor(), Magnitude::int(3));
        assert_eq!(Magnitude::pow(3, &Magnitude::int(4)), Magnitude::int(81));
        assert_eq!(
            Magnitude::pow(3, &Magnitude::ratio(9, 2)),
            Magnitude::int(81)
        );
    }

    #[test]
    fn overflow_saturates_monotonically() {
        let big = Magnitude::pow(3, &Magnitude::int(100_000));
        assert!(big.is_saturated());
        let bigger = Magnitude::pow(3, &big);
        assert!(bigger > big);
        assert!(bigger.add(&big) >= bigger);
        assert!(bigger.mul(&bigger) >= bigger);
        let exact = Magnitude::pow(3, &Magnitude::int(1000));
        assert!(!exact.is_saturated());
        assert!(exact < big);
        let tower = Magnitude::pow(3, &bigger);
        assert!(tower > bigger);
        assert!(tower.to_string().starts_with("2^2^"));
    }
}
