//! The linear tetrahedron equation for the operator induced by an R-map,
//! optionally twisted by a multiplicative 3-cocycle `t^w`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cube::boundary4_matrix;
use crate::error::{Error, Result};
use crate::rmap::{Legs, RMap, State6};

/// Dense square matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix { n, data: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    /// Product skipping zero entries of both factors.
    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = RatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Number of nonzero entries in column `j`.
    pub fn column_nonzeros(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| !self.get(i, j).is_zero()).count()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The 8x8 operator on `e_x (x) e_y (x) e_z`, index `4x + 2y + z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QOperator(pub RatMatrix);

/// `c(x1, x2, x3) = t^{w[4 x1 + 2 x2 + x3]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    w: [i64; 8],
    t: BigRational,
}

impl Cocycle {
    /// Checks that `w` lies in `ker delta^3` of `r` and that `t` is not 0 or +-1.
    pub fn new(r: RMap, w: [i64; 8], t: BigRational) -> Result<Self> {
        check_parameter(&t)?;
        let (m4, _) = boundary4_matrix(r)?;
        if m4.mul_vec(&w)?.iter().any(|&x| x != 0) {
            return Err(Error::NotACocycle { code: r.code(), w });
        }
        Ok(Cocycle { w, t })
    }

    /// Skips the cocycle check; used to show the check is not vacuous.
    pub fn new_unchecked(w: [i64; 8], t: BigRational) -> Result<Self> {
        check_parameter(&t)?;
        Ok(Cocycle { w, t })
    }

    pub fn w(&self) -> &[i64; 8] {
        &self.w
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn value(&self, idx: u8) -> BigRational {
        let e = self.w[idx as usize];
        let e = i32::try_from(e).expect("cocycle exponent fits in i32");
        self.t.pow(e)
    }
}

fn check_parameter(t: &BigRational) -> Result<()> {
    if t.is_zero() || t.is_one() || *t == -BigRational::one() {
        return Err(Error::Parameter(format!("twist parameter t = {t} must not be 0, 1 or -1")));
    }
    Ok(())
}

/// Entry `c(t)` at `(index(R(t)), index(t))`, zero elsewhere.
pub fn build_qoperator(r: RMap, c: Option<&Cocycle>) -> QOperator {
    let mut m = RatMatrix::zeros(8);
    for t in 0..8u8 {
        let v = c.map_or_else(BigRational::one, |c| c.value(t));
        m.set(r.apply_index(t) as usize, t as usize, v);
    }
    QOperator(m)
}

/// `q` acting on tensor legs `legs` of the six-fold product, identity elsewhere.
pub fn embed_on_legs(q: &QOperator, legs: Legs) -> RatMatrix {
    let mut out = RatMatrix::zeros(64);
    for s in 0..64u8 {
        let state = State6(s);
        let t = state.extract(legs) as usize;
        for o in 0..8 {
            let v = q.0.get(o, t);
            if !v.is_zero() {
                out.set(state.replace(legs, o as u8).0 as usize, s as usize, v.clone());
            }
        }
    }
    out
}

/// `R123 R145 R246 R356 = R356 R246 R145 R123` as exact 64x64 matrices.
pub fn check_qte(r: RMap, c: Option<&Cocycle>) -> bool {
    let q = build_qoperator(r, c);
    let [e123, e145, e246, e356] = Legs::EQUATION.map(|l| embed_on_legs(&q, l));
    let lhs = e123.mul(&e145).mul(&e246).mul(&e356);
    let rhs = e356.mul(&e246).mul(&e145).mul(&e123);
    lhs == rhs
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parameter(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}
