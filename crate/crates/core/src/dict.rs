//! The dictionary of circle self-maps `{z, -z, conj z, -conj z}`.
//!
//! As a group this is the Klein four-group. Each element is stored as the bit
//! pair `(p2, p3)` of its two projections to `F2`, so group addition is XOR.

use std::fmt;
use std::ops::{Add, AddAssign};

/// An element `g_i` of the dictionary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DictElem(u8);

const P2: u8 = 0b01;
const P3: u8 = 0b10;

impl DictElem {
    /// `t -> t`
    pub const G0: DictElem = DictElem(0);
    /// `t -> t + 1/2`
    pub const G1: DictElem = DictElem(P2 | P3);
    /// `t -> -t`
    pub const G2: DictElem = DictElem(P2);
    /// `t -> -t + 1/2`
    pub const G3: DictElem = DictElem(P3);

    pub const ALL: [DictElem; 4] = [Self::G0, Self::G1, Self::G2, Self::G3];

    pub fn from_bits(p2: bool, p3: bool) -> Self {
        DictElem(p2 as u8 | (p3 as u8) << 1)
    }

    /// The element acting as `t -> sign * t + shift / 2` on `R/Z`.
    pub fn from_affine(negate: bool, half_shift: bool) -> Self {
        match (negate, half_shift) {
            (false, false) => Self::G0,
            (false, true) => Self::G1,
            (true, false) => Self::G2,
            (true, true) => Self::G3,
        }
    }

    /// Inverse of [`DictElem::from_affine`]: `(negate, half_shift)`.
    pub fn to_affine(self) -> (bool, bool) {
        (self.p2() != self.p3(), self.p3())
    }

    pub fn p2(self) -> bool {
        self.0 & P2 != 0
    }

    pub fn p3(self) -> bool {
        self.0 & P3 != 0
    }

    /// Projection `p^(k)` for `k` in `{2, 3}`.
    pub fn project(self, k: u8) -> bool {
        match k {
            2 => self.p2(),
            3 => self.p3(),
            _ => panic!("no projection p^({k})"),
        }
    }

    /// The index `i` of `g_i`; this is also the JSON encoding.
    pub fn index(self) -> u8 {
        match self.0 {
            0 => 0,
            3 => 1,
            1 => 2,
            _ => 3,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        Self::ALL.get(i as usize).copied()
    }

    /// Swap `g2 <-> g3`, fixing `g0` and `g1`. This is a group automorphism.
    pub fn conj(self) -> Self {
        DictElem((self.0 >> 1) | ((self.0 & 1) << 1))
    }

    /// Embedding of `F2` into the dictionary, `0 -> g0`, `1 -> g1`.
    pub fn embed(bit: bool) -> Self {
        if bit {
            Self::G1
        } else {
            Self::G0
        }
    }
}

impl Add for DictElem {
    type Output = DictElem;
    fn add(self, rhs: DictElem) -> DictElem {
        DictElem(self.0 ^ rhs.0)
    }
}

impl AddAssign for DictElem {
    fn add_assign(&mut self, rhs: DictElem) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for DictElem {
    fn sum<I: Iterator<Item = DictElem>>(iter: I) -> Self {
        iter.fold(DictElem::G0, Add::add)
    }
}

impl fmt::Display for DictElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.index())
    }
}

impl serde::Serialize for DictElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

impl<'de> serde::Deserialize<'de> for DictElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let i = u8::deserialize(d)?;
        DictElem::from_index(i)
            .ok_or_else(|| serde::de::Error::custom(format!("dictionary index {i} not in 0..=3")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition() {
        assert_eq!(DictElem::G0 + DictElem::G2, DictElem::G2);
        assert_eq!(DictElem::G1 + DictElem::G2, DictElem::G3);
        assert_eq!(DictElem::G2 + DictElem::G3, DictElem::G1);
    }

    #[test]
    fn projection_table() {
        let table = [(0, 0), (1, 1), (1, 0), (0, 1)];
        for (i, &(p2, p3)) in table.iter().enumerate() {
            let g = DictElem::from_index(i as u8).unwrap();
            assert_eq!(g.p2(), p2 == 1, "p2(g{i})");
            assert_eq!(g.p3(), p3 == 1, "p3(g{i})");
        }
    }

    #[test]
    fn affine() {
        assert_eq!(DictElem::from_affine(false, false), DictElem::G0);
        assert_eq!(DictElem::from_affine(true, true), DictElem::G3);
        assert_eq!(DictElem::from_affine(false, true), DictElem::G1);
        assert_eq!(DictElem::from_affine(true, false), DictElem::G2);
        for g in DictElem::ALL {
            let (neg, shift) = g.to_affine();
            assert_eq!(DictElem::from_affine(neg, shift), g);
        }
    }

    #[test]
    fn group_laws_exhaustive() {
        for a in DictElem::ALL {
            assert_eq!(a + a, DictElem::G0);
            for b in DictElem::ALL {
                assert_eq!(a + b, b + a);
                assert_eq!((a + b).p2(), a.p2() ^ b.p2());
                assert_eq!((a + b).p3(), a.p3() ^ b.p3());
                assert_eq!((a + b).conj(), a.conj() + b.conj());
                for c in DictElem::ALL {
                    assert_eq!((a + b) + c, a + (b + c));
                }
                if a != b {
                    assert_ne!((a.p2(), a.p3()), (b.p2(), b.p3()));
                }
            }
        }
    }

    #[test]
    fn conj_swaps_reflections() {
        assert_eq!(DictElem::G2.conj(), DictElem::G3);
        assert_eq!(DictElem::G3.conj(), DictElem::G2);
        assert_eq!(DictElem::G0.conj(), DictElem::G0);
        assert_eq!(DictElem::G1.conj(), DictElem::G1);
    }

    #[test]
    fn json_is_index() {
        let s = serde_json::to_string(&[DictElem::G1, DictElem::G3]).unwrap();
        assert_eq!(s, "[1,3]");
        let back: Vec<DictElem> = serde_json::from_str("[0,2]").unwrap();
        assert_eq!(back, vec![DictElem::G0, DictElem::G2]);
        assert!(serde_json::from_str::<DictElem>("4").is_err());
    }
}
