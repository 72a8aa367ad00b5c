use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An exact dyadic rational `num / 2^exp`, kept in lowest terms.
///
/// Arithmetic panics on overflow: any result that does not fit is a bug in
/// the caller, never a value to round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    num: i64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };
    pub const HALF: Dyadic = Dyadic { num: 1, exp: 1 };

    pub fn new(num: i64, exp: u32) -> Self {
        Dyadic { num, exp }.reduced()
    }

    pub fn int(v: i64) -> Self {
        Dyadic { num: v, exp: 0 }
    }

    fn reduced(mut self) -> Self {
        if self.num == 0 {
            return Dyadic::ZERO;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
        self
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn exponent(self) -> u32 {
        self.exp
    }

    /// Integer value, if the number is one.
    pub fn to_int(self) -> Option<i64> {
        (self.exp == 0).then_some(self.num)
    }

    fn aligned(self, other: Dyadic) -> (i64, i64, u32) {
        let exp = self.exp.max(other.exp);
        let scale = |d: Dyadic| {
            d.num
                .checked_mul(1i64 << (exp - d.exp))
                .expect("dyadic overflow")
        };
        (scale(self), scale(other), exp)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::new(a.checked_add(b).expect("dyadic overflow"), exp)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + -rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(
            self.num.checked_mul(rhs.num).expect("dyadic overflow"),
            self.exp.checked_add(rhs.exp).expect("dyadic overflow"),
        )
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::int(v)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        assert_eq!(Dyadic::HALF + Dyadic::HALF, Dyadic::ONE);
        assert_eq!(Dyadic::new(4, 2), Dyadic::ONE);
        assert_eq!(Dyadic::new(6, 2), Dyadic::new(3, 1));
        assert_eq!(Dyadic::HALF * Dyadic::HALF, Dyadic::new(1, 2));
        assert_eq!(Dyadic::new(0, 5), Dyadic::ZERO);
        assert_eq!(Dyadic::new(3, 1).to_string(), "3/2");
        assert!(Dyadic::new(-1, 3) < Dyadic::ZERO);
    }

    proptest! {
        #[test]
        fn field_laws(a in -1000i64..1000, ea in 0u32..8, b in -1000i64..1000, eb in 0u32..8,
                      c in -1000i64..1000, ec in 0u32..8) {
            let (x, y, z) = (Dyadic::new(a, ea), Dyadic::new(b, eb), Dyadic::new(c, ec));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x - x, Dyadic::ZERO);
        }
    }
}
