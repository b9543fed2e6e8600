//! Boolean functions of three variables.
//!
//! A function `f(x, y, z)` is stored as an 8-bit truth table whose bit at
//! index `4x + 2y + z` holds `f(x, y, z)`, so the points are ordered
//! lexicographically: `(0,0,0), (0,0,1), ..., (1,1,1)`.
//!
//! The algebraic normal form (a multilinear polynomial over GF(2)) uses the
//! same indexing for monomials: bit `4a + 2b + c` is the coefficient of
//! `x^a y^b z^c`. Both directions of the conversion are the 3-variable
//! Möbius transform.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Truth table of a Boolean function `{0,1}^3 -> {0,1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct TruthTable3(pub u8);

/// GF(2) polynomial in `x`, `y`, `z` of degree at most one in each variable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct AnfPoly(pub u8);

#[inline]
pub const fn point_index(x: bool, y: bool, z: bool) -> u8 {
    ((x as u8) << 2) | ((y as u8) << 1) | (z as u8)
}

#[inline]
const fn mobius(mut v: u8) -> u8 {
    v ^= (v & 0x55) << 1;
    v ^= (v & 0x33) << 2;
    v ^= (v & 0x0F) << 4;
    v
}

impl TruthTable3 {
    pub const ZERO: TruthTable3 = TruthTable3(0x00);
    pub const ONE: TruthTable3 = TruthTable3(0xFF);
    pub const X: TruthTable3 = TruthTable3(0xF0);
    pub const Y: TruthTable3 = TruthTable3(0xCC);
    pub const Z: TruthTable3 = TruthTable3(0xAA);

    #[inline]
    pub const fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn eval(self, x: bool, y: bool, z: bool) -> bool {
        self.eval_index(point_index(x, y, z))
    }

    /// Value at the point with lexicographic index `idx` (`0..8`).
    #[inline]
    pub const fn eval_index(self, idx: u8) -> bool {
        (self.0 >> idx) & 1 == 1
    }

    #[inline]
    pub const fn to_anf(self) -> AnfPoly {
        AnfPoly(mobius(self.0))
    }

    /// `f(x, y, z) -> f(z, y, x)`.
    pub fn swap_xz(self) -> TruthTable3 {
        let mut out = 0u8;
        for idx in 0..8u8 {
            let swapped = ((idx & 1) << 2) | (idx & 2) | (idx >> 2);
            out |= ((self.0 >> swapped) & 1) << idx;
        }
        TruthTable3(out)
    }

    /// `f(x, y, z) -> f(1-x, 1-y, 1-z)`, i.e. bit reversal of the table.
    #[inline]
    pub const fn complement_inputs(self) -> TruthTable3 {
        TruthTable3(self.0.reverse_bits())
    }

    #[inline]
    pub const fn not(self) -> TruthTable3 {
        TruthTable3(!self.0)
    }
}

impl AnfPoly {
    pub const ZERO: AnfPoly = AnfPoly(0);

    #[inline]
    pub const fn coeffs(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn to_truth_table(self) -> TruthTable3 {
        TruthTable3(mobius(self.0))
    }

    /// Evaluate the polynomial directly, monomial by monomial.
    pub fn eval(self, x: bool, y: bool, z: bool) -> bool {
        let point = point_index(x, y, z);
        (0..8u8).filter(|&m| (self.0 >> m) & 1 == 1).fold(false, |acc, m| acc ^ (m & point == m))
    }
}

impl From<TruthTable3> for AnfPoly {
    fn from(tt: TruthTable3) -> Self {
        tt.to_anf()
    }
}

impl From<AnfPoly> for TruthTable3 {
    fn from(p: AnfPoly) -> Self {
        p.to_truth_table()
    }
}

pub fn anf_from_tt(tt: TruthTable3) -> AnfPoly {
    tt.to_anf()
}

pub fn tt_from_anf(p: AnfPoly) -> TruthTable3 {
    p.to_truth_table()
}

/// Monomial indices in printing order: xyz, xy, xz, yz, x, y, z, 1.
const PRINT_ORDER: [u8; 8] = [7, 6, 5, 3, 4, 2, 1, 0];

fn monomial_name(m: u8) -> &'static str {
    match m {
        0 => "1",
        1 => "z",
        2 => "y",
        3 => "yz",
        4 => "x",
        5 => "xz",
        6 => "xy",
        7 => "xyz",
        _ => unreachable!("monomial index out of range"),
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for m in PRINT_ORDER.iter().copied().filter(|&m| (self.0 >> m) & 1 == 1) {
            if !first {
                f.write_str("+")?;
            }
            f.write_str(monomial_name(m))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for TruthTable3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_anf().fmt(f)
    }
}

pub fn print_poly(p: AnfPoly) -> String {
    p.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("empty polynomial")]
    Empty,
    #[error("empty term at position {0}")]
    EmptyTerm(usize),
    #[error("unexpected character {ch:?} at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("variable {ch:?} repeated within a monomial at position {pos}")]
    RepeatedVariable { ch: char, pos: usize },
    #[error("constant must stand alone as a term at position {0}")]
    MisplacedConstant(usize),
}

impl ParsePolyError {
    /// Byte offset in the input where the problem was detected.
    pub fn position(&self) -> usize {
        match *self {
            ParsePolyError::Empty => 0,
            ParsePolyError::EmptyTerm(p) | ParsePolyError::MisplacedConstant(p) => p,
            ParsePolyError::UnexpectedChar { pos, .. } | ParsePolyError::RepeatedVariable { pos, .. } => pos,
        }
    }
}

/// Parses a `+`-separated sum of monomials such as `xyz+xy+x+1`.
///
/// Letters inside a monomial may appear in any order, whitespace is ignored
/// and repeated monomials cancel.
pub fn parse_poly(s: &str) -> Result<AnfPoly, ParsePolyError> {
    if s.trim().is_empty() {
        return Err(ParsePolyError::Empty);
    }
    let mut coeffs = 0u8;
    // (monomial bits, saw a letter, saw a constant, start position)
    let mut term: Option<(u8, bool, Option<bool>)> = None;
    let mut term_start = 0usize;

    let finish = |term: Option<(u8, bool, Option<bool>)>, pos: usize| -> Result<u8, ParsePolyError> {
        match term {
            None => Err(ParsePolyError::EmptyTerm(pos)),
            Some((_, false, Some(false))) => Ok(0),
            Some((_, false, Some(true))) => Ok(1),
            Some((m, true, None)) => Ok(1 << m),
            Some(_) => Err(ParsePolyError::MisplacedConstant(pos)),
        }
    };

    for (pos, ch) in s.char_indices() {
        if ch.is_whitespace() {
            continue;
        }
        match ch {
            '+' => {
                coeffs ^= finish(term.take(), term_start)?;
                term_start = pos + 1;
            }
            'x' | 'y' | 'z' => {
                let bit = match ch {
                    'x' => 4,
                    'y' => 2,
                    _ => 1,
                };
                let (m, letters, constant) = term.get_or_insert((0, false, None));
                if constant.is_some() {
                    return Err(ParsePolyError::MisplacedConstant(pos));
                }
                if *m & bit != 0 {
                    return Err(ParsePolyError::RepeatedVariable { ch, pos });
                }
                *m |= bit;
                *letters = true;
            }
            '0' | '1' => {
                if term.is_some() {
                    return Err(ParsePolyError::MisplacedConstant(pos));
                }
                term = Some((0, false, Some(ch == '1')));
            }
            _ => return Err(ParsePolyError::UnexpectedChar { ch, pos }),
        }
    }
    coeffs ^= finish(term, term_start)?;
    Ok(AnfPoly(coeffs))
}

impl FromStr for AnfPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl FromStr for TruthTable3 {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s).map(AnfPoly::to_truth_table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Pointwise construction, independent of the Möbius butterfly.
    fn table_of(f: impl Fn(bool, bool, bool) -> bool) -> TruthTable3 {
        let mut bits = 0u8;
        for idx in 0..8u8 {
            if f(idx & 4 != 0, idx & 2 != 0, idx & 1 != 0) {
                bits |= 1 << idx;
            }
        }
        TruthTable3(bits)
    }

    #[test]
    fn eval_examples() {
        assert!(!TruthTable3(0x00).eval(true, false, true));
        assert_eq!(table_of(|_, y, _| y), TruthTable3(0xCC));
        assert!(TruthTable3(0xCC).eval(true, true, false));
        assert_eq!(table_of(|x, _, z| x ^ z), TruthTable3(0x5A));
        assert!(!TruthTable3(0x5A).eval(true, false, true));
    }

    #[test]
    fn anf_examples() {
        assert_eq!(anf_from_tt(TruthTable3(0x00)), AnfPoly(0));
        assert_eq!(table_of(|x, y, _| (x && y) ^ x ^ y), TruthTable3(0xFC));
        assert_eq!(anf_from_tt(TruthTable3(0xFC)).to_string(), "xy+x+y");
        assert_eq!(anf_from_tt(TruthTable3(0x80)).to_string(), "xyz");
        assert_eq!(tt_from_anf("xy+x+y".parse().unwrap()), TruthTable3(0xFC));
        assert_eq!(tt_from_anf("xyz".parse().unwrap()), TruthTable3(0x80));
        assert_eq!(tt_from_anf(AnfPoly(0)), TruthTable3(0));
    }

    #[test]
    fn named_constants_match_pointwise_tables() {
        assert_eq!(TruthTable3::X, table_of(|x, _, _| x));
        assert_eq!(TruthTable3::Y, table_of(|_, y, _| y));
        assert_eq!(TruthTable3::Z, table_of(|_, _, z| z));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_poly("0").unwrap(), AnfPoly(0));
        assert_eq!(parse_poly("x+z").unwrap(), AnfPoly((1 << 4) | (1 << 1)));
        assert_eq!(parse_poly("xyz+xy+xz+yz+x+y+z").unwrap(), AnfPoly(0xFE));
        assert_eq!(parse_poly("y+y").unwrap(), AnfPoly(0));
        assert_eq!(parse_poly(" z y + 1 ").unwrap(), AnfPoly(0b1001));
        assert_eq!(parse_poly("yx").unwrap(), parse_poly("xy").unwrap());
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse_poly(""), Err(ParsePolyError::Empty));
        assert_eq!(parse_poly("x++y"), Err(ParsePolyError::EmptyTerm(2)));
        assert_eq!(parse_poly("x+"), Err(ParsePolyError::EmptyTerm(2)));
        assert_eq!(parse_poly("x*y"), Err(ParsePolyError::UnexpectedChar { ch: '*', pos: 1 }));
        assert_eq!(parse_poly("xx"), Err(ParsePolyError::RepeatedVariable { ch: 'x', pos: 1 }));
        assert_eq!(parse_poly("1x").unwrap_err().position(), 1);
        assert!(parse_poly("x1").is_err());
        assert!(parse_poly("w").is_err());
    }

    #[test]
    fn print_examples() {
        assert_eq!(print_poly(AnfPoly(0)), "0");
        assert_eq!(print_poly(parse_poly("z+x").unwrap()), "x+z");
        assert_eq!(print_poly(AnfPoly(0xFF)), "xyz+xy+xz+yz+x+y+z+1");
    }

    #[test]
    fn exhaustive_round_trips() {
        for v in 0..=255u8 {
            let tt = TruthTable3(v);
            assert_eq!(tt_from_anf(anf_from_tt(tt)), tt);
            let p = AnfPoly(v);
            assert_eq!(parse_poly(&print_poly(p)).unwrap(), p);
            for idx in 0..8u8 {
                let (x, y, z) = (idx & 4 != 0, idx & 2 != 0, idx & 1 != 0);
                assert_eq!(p.to_truth_table().eval(x, y, z), p.eval(x, y, z));
            }
        }
    }

    #[test]
    fn input_transforms() {
        let f = table_of(|x, y, z| x && !y || z);
        let g = f.swap_xz();
        let h = f.complement_inputs();
        for idx in 0..8u8 {
            let (x, y, z) = (idx & 4 != 0, idx & 2 != 0, idx & 1 != 0);
            assert_eq!(g.eval(x, y, z), f.eval(z, y, x));
            assert_eq!(h.eval(x, y, z), f.eval(!x, !y, !z));
        }
    }
}
