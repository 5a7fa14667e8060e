//! The four-element chain ring `R = Z2 + uZ2` with `u^2 = 0`.
//!
//! An element `a + u·b` is stored as two bits. Every operation is a
//! branch-free bit formula, so the same formulas lift directly to packed
//! words in [`crate::code`].

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::Error;

/// An element `a + u·b` of `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RingElem(u8);

impl RingElem {
    pub const ZERO: RingElem = RingElem(0b00);
    pub const ONE: RingElem = RingElem(0b01);
    pub const U: RingElem = RingElem(0b10);
    /// `1 + u`, displayed as `v`.
    pub const V: RingElem = RingElem(0b11);

    /// All four elements in canonical order `0, 1, u, 1+u`.
    pub const ALL: [RingElem; 4] = [Self::ZERO, Self::ONE, Self::U, Self::V];

    /// Builds `a + u·b` from the low bit of each argument.
    #[inline]
    pub const fn new(a: u8, b: u8) -> Self {
        RingElem((a & 1) | ((b & 1) << 1))
    }

    /// Coefficient of 1.
    #[inline]
    pub const fn unit_part(self) -> u8 {
        self.0 & 1
    }

    /// Coefficient of `u`.
    #[inline]
    pub const fn nil_part(self) -> u8 {
        (self.0 >> 1) & 1
    }

    /// Index in `0..4` (`a + 2b`), the canonical sort key.
    #[inline]
    pub const fn index(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_unit(self) -> bool {
        self.unit_part() == 1
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn add(self, rhs: RingElem) -> RingElem {
        RingElem(self.0 ^ rhs.0)
    }

    #[inline]
    pub const fn mul(self, rhs: RingElem) -> RingElem {
        let (a1, b1) = (self.unit_part(), self.nil_part());
        let (a2, b2) = (rhs.unit_part(), rhs.nil_part());
        RingElem::new(a1 & a2, (a1 & b2) ^ (b1 & a2))
    }

    /// Lee weight: `0 -> 0`, `1 -> 1`, `u -> 2`, `1+u -> 1`.
    #[inline]
    pub const fn lee_weight(self) -> u32 {
        let (a, b) = (self.unit_part() as u32, self.nil_part() as u32);
        a + 2 * (b & (a ^ 1))
    }

    /// Symbol Gray map `a + u·b -> (b, a + b)`.
    #[inline]
    pub const fn psi(self) -> (u8, u8) {
        let (a, b) = (self.unit_part(), self.nil_part());
        (b, a ^ b)
    }

    /// Inverse of [`RingElem::psi`].
    #[inline]
    pub const fn from_psi(pair: (u8, u8)) -> RingElem {
        let b = pair.0 & 1;
        RingElem::new((pair.1 & 1) ^ b, b)
    }

    /// Multiplicative inverse of a unit (`1` and `1+u` are self-inverse).
    pub fn inverse(self) -> Option<RingElem> {
        self.is_unit().then_some(self)
    }

    pub const fn token(self) -> &'static str {
        match self.0 {
            0 => "0",
            1 => "1",
            2 => "u",
            _ => "v",
        }
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        RingElem::add(self, rhs)
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        RingElem::mul(self, rhs)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for RingElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "0" => Ok(RingElem::ZERO),
            "1" => Ok(RingElem::ONE),
            "u" => Ok(RingElem::U),
            "v" | "1+u" | "u+1" => Ok(RingElem::V),
            other => Err(Error::BadToken(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: RingElem = RingElem::ZERO;
    const O: RingElem = RingElem::ONE;
    const U: RingElem = RingElem::U;
    const V: RingElem = RingElem::V;

    #[test]
    fn addition_examples() {
        assert_eq!(U + U, Z);
        assert_eq!(O + U, V);
        assert_eq!(V + O, U);
        for x in RingElem::ALL {
            assert_eq!(x + x, Z);
        }
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(U * U, Z);
        assert_eq!(V * V, O);
        for x in RingElem::ALL {
            assert_eq!(O * x, x);
            assert_eq!(Z * x, Z);
        }
    }

    #[test]
    fn lee_weights() {
        assert_eq!(Z.lee_weight(), 0);
        assert_eq!(O.lee_weight(), 1);
        assert_eq!(U.lee_weight(), 2);
        assert_eq!(V.lee_weight(), 1);
    }

    #[test]
    fn gray_symbols() {
        assert_eq!(Z.psi(), (0, 0));
        assert_eq!(O.psi(), (0, 1));
        assert_eq!(U.psi(), (1, 1));
        assert_eq!(V.psi(), (1, 0));
        for x in RingElem::ALL {
            assert_eq!(RingElem::from_psi(x.psi()), x);
            let (p, q) = x.psi();
            assert_eq!(x.lee_weight(), (p + q) as u32);
        }
    }

    #[test]
    fn psi_is_additive() {
        for x in RingElem::ALL {
            for y in RingElem::ALL {
                let (a, b) = x.psi();
                let (c, d) = y.psi();
                assert_eq!((x + y).psi(), (a ^ c, b ^ d));
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for x in RingElem::ALL {
            for y in RingElem::ALL {
                assert_eq!(x * y, y * x);
                assert_eq!(x + y, y + x);
                for z in RingElem::ALL {
                    assert_eq!((x * y) * z, x * (y * z));
                    assert_eq!((x + y) + z, x + (y + z));
                    assert_eq!(x * (y + z), x * y + x * z);
                }
            }
        }
    }

    #[test]
    fn units_and_inverses() {
        assert_eq!(O.inverse(), Some(O));
        assert_eq!(V.inverse(), Some(V));
        assert_eq!(U.inverse(), None);
        assert!(!Z.is_unit());
    }

    #[test]
    fn parse_tokens() {
        for (tok, want) in [("0", Z), ("1", O), ("u", U), ("v", V), ("1+u", V), ("u+1", V)] {
            assert_eq!(tok.parse::<RingElem>().unwrap(), want);
        }
        assert!("U".parse::<RingElem>().is_err());
        assert!("2".parse::<RingElem>().is_err());
        for x in RingElem::ALL {
            assert_eq!(x.to_string().parse::<RingElem>().unwrap(), x);
        }
    }
}
