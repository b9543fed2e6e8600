//! R-maps `X^3 -> X^3` over two colours and their action on six slots.

use std::fmt;

use crate::boolfun::{parse_poly, TruthTable3};
use crate::error::{Error, Result};
use crate::kernel;

/// A candidate R-operator `R(x,y,z) = (r1(x,y,z), r2(x,y,z), r3(x,y,z))`.
///
/// The canonical code is `(r1 << 16) | (r2 << 8) | r3` on the truth tables,
/// which is a bijection onto `0..2^24`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RMap {
    pub r: [TruthTable3; 3],
}

pub const CODE_SPACE: u32 = 1 << 24;

impl RMap {
    pub const IDENTITY: RMap = RMap { r: [TruthTable3::X, TruthTable3::Y, TruthTable3::Z] };

    pub const fn new(r1: TruthTable3, r2: TruthTable3, r3: TruthTable3) -> Self {
        RMap { r: [r1, r2, r3] }
    }

    #[inline]
    pub const fn code(self) -> u32 {
        ((self.r[0].0 as u32) << 16) | ((self.r[1].0 as u32) << 8) | self.r[2].0 as u32
    }

    #[inline]
    pub const fn from_code(code: u32) -> Self {
        debug_assert!(code < CODE_SPACE);
        RMap { r: [TruthTable3((code >> 16) as u8), TruthTable3((code >> 8) as u8), TruthTable3(code as u8)] }
    }

    /// Builds the map from three polynomials in the catalogue notation.
    pub fn from_polys<S: AsRef<str>>(polys: &[S; 3]) -> Result<Self> {
        Ok(RMap::new(
            parse_poly(polys[0].as_ref())?.into(),
            parse_poly(polys[1].as_ref())?.into(),
            parse_poly(polys[2].as_ref())?.into(),
        ))
    }

    /// Parses a code given either in decimal or as `0x` plus six hex digits.
    pub fn parse_code(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Code(s.to_string());
        let code = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            if hex.len() != 6 {
                return Err(bad());
            }
            u32::from_str_radix(hex, 16).map_err(|_| bad())?
        } else {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<u32>().map_err(|_| bad())?
        };
        if code >= CODE_SPACE {
            return Err(bad());
        }
        Ok(RMap::from_code(code))
    }

    /// Output triple packed as `4*r1 + 2*r2 + r3`, indexed by packed input.
    #[inline]
    pub fn output_table(self) -> [u8; 8] {
        kernel::output_table(self.code())
    }

    #[inline]
    pub fn apply_index(self, idx: u8) -> u8 {
        let [a, b, c] = self.r;
        ((a.eval_index(idx) as u8) << 2) | ((b.eval_index(idx) as u8) << 1) | c.eval_index(idx) as u8
    }

    pub fn apply(self, t: [bool; 3]) -> [bool; 3] {
        let [x, y, z] = t;
        [self.r[0].eval(x, y, z), self.r[1].eval(x, y, z), self.r[2].eval(x, y, z)]
    }

    /// Applies `R` to slots `legs` of a six-slot state.
    pub fn apply_at(self, s: State6, legs: Legs) -> State6 {
        let input = s.extract(legs);
        s.replace(legs, self.apply_index(input))
    }

    pub fn satisfies_stte(self) -> bool {
        kernel::stte_scalar(&self.output_table())
    }

    pub fn image_cardinality(self) -> u32 {
        let mut seen = 0u8;
        for idx in 0..8 {
            seen |= 1 << self.apply_index(idx);
        }
        seen.count_ones()
    }

    pub fn is_bijective(self) -> bool {
        self.image_cardinality() == 8
    }

    /// Conjugation by the argument reversal `(x,y,z) -> (z,y,x)`.
    pub fn sigma1(self) -> RMap {
        let [a, b, c] = self.r;
        RMap::new(c.swap_xz(), b.swap_xz(), a.swap_xz())
    }

    /// Conjugation by the global complement `(x,y,z) -> (1-x,1-y,1-z)`.
    pub fn sigma2(self) -> RMap {
        let f = |t: TruthTable3| t.complement_inputs().not();
        let [a, b, c] = self.r;
        RMap::new(f(a), f(b), f(c))
    }

    pub fn conjugate(self, s: Symmetry) -> RMap {
        match s {
            Symmetry::Sigma1 => self.sigma1(),
            Symmetry::Sigma2 => self.sigma2(),
        }
    }

    pub fn polys(self) -> [String; 3] {
        self.r.map(|t| t.to_string())
    }
}

impl fmt::Display for RMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r[0], self.r[1], self.r[2])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Symmetry {
    #[serde(rename = "sigma1")]
    Sigma1,
    #[serde(rename = "sigma2")]
    Sigma2,
}

impl Symmetry {
    pub const ALL: [Symmetry; 2] = [Symmetry::Sigma1, Symmetry::Sigma2];
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Sigma1 => "sigma1",
            Symmetry::Sigma2 => "sigma2",
        })
    }
}

/// Six colour bits `(x1, ..., x6)` packed with `x1` as the most significant bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State6(pub u8);

impl State6 {
    pub fn from_bits(bits: [bool; 6]) -> Self {
        State6(bits.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8))
    }

    /// Value of slot `i` (1-based).
    #[inline]
    pub fn get(self, i: usize) -> bool {
        (self.0 >> (6 - i)) & 1 == 1
    }

    #[inline]
    pub fn extract(self, legs: Legs) -> u8 {
        let [i, j, k] = legs.0;
        ((self.get(i) as u8) << 2) | ((self.get(j) as u8) << 1) | self.get(k) as u8
    }

    #[inline]
    pub fn replace(self, legs: Legs, triple: u8) -> State6 {
        let [i, j, k] = legs.0;
        let mut v = self.0;
        for (slot, bit) in [(i, 2), (j, 1), (k, 0)] {
            let pos = 6 - slot;
            v = (v & !(1 << pos)) | (((triple >> bit) & 1) << pos);
        }
        State6(v)
    }
}

/// Three distinct slots `1 <= i < j < k <= 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Legs([usize; 3]);

impl Legs {
    pub const L123: Legs = Legs([1, 2, 3]);
    pub const L145: Legs = Legs([1, 4, 5]);
    pub const L246: Legs = Legs([2, 4, 6]);
    pub const L356: Legs = Legs([3, 5, 6]);

    /// Factors of `R123 R145 R246 R356`, left to right.
    pub const EQUATION: [Legs; 4] = [Legs::L123, Legs::L145, Legs::L246, Legs::L356];

    pub fn new(i: usize, j: usize, k: usize) -> Result<Self> {
        if 1 <= i && i < j && j < k && k <= 6 {
            Ok(Legs([i, j, k]))
        } else {
            Err(Error::Legs(i, j, k))
        }
    }

    pub fn slots(self) -> [usize; 3] {
        self.0
    }
}
