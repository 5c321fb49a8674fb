//! Weight triples and permutations of three letters.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer exponent triple of a diagonal circle in U(3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight3(pub [i64; 3]);

impl Weight3 {
    pub const ZERO: Weight3 = Weight3([0, 0, 0]);

    pub const fn new(w1: i64, w2: i64, w3: i64) -> Self {
        Weight3([w1, w2, w3])
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min_entry(&self) -> i64 {
        *self.0.iter().min().unwrap()
    }

    pub fn max_entry(&self) -> i64 {
        *self.0.iter().max().unwrap()
    }

    pub fn shifted(&self, c: i64) -> Result<Self> {
        let mut out = [0; 3];
        for (o, w) in out.iter_mut().zip(self.0) {
            *o = w.checked_add(c).ok_or(Error::Overflow)?;
        }
        Ok(Weight3(out))
    }

    /// `lambda * self + mu * other`, checked.
    pub fn combine(lambda: i64, x: &Weight3, mu: i64, y: &Weight3) -> Result<Self> {
        let mut out = [0; 3];
        for i in 0..3 {
            out[i] = lambda
                .checked_mul(x.0[i])
                .and_then(|u| mu.checked_mul(y.0[i]).and_then(|v| u.checked_add(v)))
                .ok_or(Error::Overflow)?;
        }
        Ok(Weight3(out))
    }

    pub fn is_permutation_of(&self, other: &Weight3) -> bool {
        let mut a = self.0;
        let mut b = other.0;
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl Index<usize> for Weight3 {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for Weight3 {
    type Output = Weight3;
    fn add(self, rhs: Weight3) -> Weight3 {
        Weight3([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for Weight3 {
    type Output = Weight3;
    fn sub(self, rhs: Weight3) -> Weight3 {
        Weight3([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for Weight3 {
    type Output = Weight3;
    fn neg(self) -> Weight3 {
        Weight3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl From<[i64; 3]> for Weight3 {
    fn from(w: [i64; 3]) -> Self {
        Weight3(w)
    }
}

impl fmt::Display for Weight3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Weight3 {
    type Err = Error;

    /// Parses `"i,j,k"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidArgument(format!(
                "expected three comma-separated integers, got '{s}'"
            )));
        }
        let mut w = [0i64; 3];
        for (slot, p) in w.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("'{p}' is not an integer")))?;
        }
        Ok(Weight3(w))
    }
}

/// Element of S_3 stored by its images: `sigma(i) = images[i]` (0-based).
///
/// Acting on a weight triple it produces `w_sigma = (w_sigma(1), w_sigma(2),
/// w_sigma(3))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation3([u8; 3]);

impl Permutation3 {
    pub const ID: Permutation3 = Permutation3([0, 1, 2]);
    pub const P12: Permutation3 = Permutation3([1, 0, 2]);
    pub const P13: Permutation3 = Permutation3([2, 1, 0]);
    pub const P23: Permutation3 = Permutation3([0, 2, 1]);
    /// 1 -> 2 -> 3 -> 1
    pub const P123: Permutation3 = Permutation3([1, 2, 0]);
    /// 1 -> 3 -> 2 -> 1
    pub const P132: Permutation3 = Permutation3([2, 0, 1]);

    /// All six, in the order id, (12), (13), (123), (132), (23).
    pub const ALL: [Permutation3; 6] = [
        Self::ID,
        Self::P12,
        Self::P13,
        Self::P123,
        Self::P132,
        Self::P23,
    ];

    pub fn from_images(images: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Permutation3(images))
    }

    /// 1-based image tuple.
    pub fn image_tuple(&self) -> (u8, u8, u8) {
        (self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn apply(&self, w: &Weight3) -> Weight3 {
        Weight3([w.0[self.image(0)], w.0[self.image(1)], w.0[self.image(2)]])
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation3) -> Permutation3 {
        Permutation3([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
        ])
    }

    pub fn inverse(&self) -> Permutation3 {
        let mut inv = [0u8; 3];
        for i in 0..3 {
            inv[self.0[i] as usize] = i as u8;
        }
        Permutation3(inv)
    }

    pub fn is_even(&self) -> bool {
        matches!(*self, Self::ID | Self::P123 | Self::P132)
    }

    pub fn name(&self) -> &'static str {
        match *self {
            Self::ID => "id",
            Self::P12 => "(12)",
            Self::P13 => "(13)",
            Self::P23 => "(23)",
            Self::P123 => "(123)",
            Self::P132 => "(132)",
            _ => unreachable!("Permutation3 always holds a bijection"),
        }
    }

    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|p| p == self).unwrap()
    }
}

impl fmt::Display for Permutation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Permutation3 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown permutation '{s}'")))
    }
}

impl Serialize for Permutation3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}
