use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Largest exponent a [`Dyadic`] may carry; keeps aligned numerators inside `i128`.
pub const MAX_EXPONENT: u32 = 120;

/// An exact rational `num / 2^exp`, kept in lowest terms (odd numerator or `exp == 0`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };

    pub fn new(mut num: i128, mut exp: u32) -> Dyadic {
        assert!(exp <= MAX_EXPONENT, "dyadic exponent {exp} exceeds {MAX_EXPONENT}");
        if num == 0 {
            return Dyadic::ZERO;
        }
        let tz = num.trailing_zeros().min(exp);
        num >>= tz;
        exp -= tz;
        Dyadic { num, exp }
    }

    pub fn from_int(v: i64) -> Dyadic {
        Dyadic { num: v as i128, exp: 0 }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    /// Power of two in the reduced denominator.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// Divides by `2^e`.
    pub fn shr(&self, e: u32) -> Dyadic {
        Dyadic::new(self.num, self.exp + e)
    }

    pub fn half(&self) -> Dyadic {
        self.shr(1)
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / (self.exp as f64).exp2()
    }

    /// Numerator of `self` over the denominator `2^exp`, for `exp >= self.exponent()`.
    pub fn scaled_numerator(&self, exp: u32) -> i128 {
        assert!(exp >= self.exp && exp <= MAX_EXPONENT);
        self.num << (exp - self.exp)
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (i128, i128, u32) {
        let e = a.exp.max(b.exp);
        (a.scaled_numerator(e), b.scaled_numerator(e), e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(&self, &rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::aligned(self, other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}
