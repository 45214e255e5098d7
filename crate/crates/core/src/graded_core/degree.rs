//! Tri-gradings and the Koszul sign rule.
//!
//! Every homogeneous object carries a cochain degree, a chain degree and a
//! parity flag from `{=, ≠}`. Its parity is the mod 2 sum of all three.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// The extra `Z/2` index: `Equal` adds nothing to the parity, `Unequal` adds one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Flag {
    #[default]
    Equal,
    Unequal,
}

impl Flag {
    pub fn bit(self) -> i64 {
        match self {
            Flag::Equal => 0,
            Flag::Unequal => 1,
        }
    }

    pub fn from_bit(b: i64) -> Self {
        if b.rem_euclid(2) == 0 {
            Flag::Equal
        } else {
            Flag::Unequal
        }
    }

    pub fn flip(self) -> Self {
        Flag::from_bit(self.bit() + 1)
    }
}

impl Add for Flag {
    type Output = Flag;
    fn add(self, rhs: Flag) -> Flag {
        Flag::from_bit(self.bit() + rhs.bit())
    }
}

/// A `(cochain, chain, flag)` degree.
///
/// Generator degrees of a model are non-negative; shifted objects such as
/// polyvectors (which live in negative cochain degrees relative to their
/// coordinates) use the same type with signed components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TriDegree {
    pub cochain: i64,
    pub chain: i64,
    pub flag: Flag,
}

impl TriDegree {
    pub const ZERO: TriDegree = TriDegree { cochain: 0, chain: 0, flag: Flag::Equal };

    pub fn new(cochain: i64, chain: i64, flag: Flag) -> Self {
        TriDegree { cochain, chain, flag }
    }

    pub fn cochain(c: i64) -> Self {
        TriDegree::new(c, 0, Flag::Equal)
    }

    pub fn chain(c: i64) -> Self {
        TriDegree::new(0, c, Flag::Equal)
    }

    /// 0 for even, 1 for odd.
    pub fn parity(&self) -> u8 {
        (self.cochain + self.chain + self.flag.bit()).rem_euclid(2) as u8
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }

    /// Degree in the total cochain complex: chain degrees count negatively.
    pub fn total(&self) -> i64 {
        self.cochain - self.chain
    }

    pub fn is_nonnegative(&self) -> bool {
        self.cochain >= 0 && self.chain >= 0
    }
}

impl Add for TriDegree {
    type Output = TriDegree;
    fn add(self, o: TriDegree) -> TriDegree {
        TriDegree::new(self.cochain + o.cochain, self.chain + o.chain, self.flag + o.flag)
    }
}

impl Neg for TriDegree {
    type Output = TriDegree;
    fn neg(self) -> TriDegree {
        TriDegree::new(-self.cochain, -self.chain, self.flag)
    }
}

impl Sub for TriDegree {
    type Output = TriDegree;
    fn sub(self, o: TriDegree) -> TriDegree {
        self + (-o)
    }
}

impl fmt::Display for TriDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = match self.flag {
            Flag::Equal => "=",
            Flag::Unequal => "!=",
        };
        write!(f, "({},{},{})", self.cochain, self.chain, flag)
    }
}

/// `(-1)^(|a| |b|)` on parities.
pub fn koszul_sign(a: TriDegree, b: TriDegree) -> i32 {
    if a.parity() * b.parity() == 1 {
        -1
    } else {
        1
    }
}
