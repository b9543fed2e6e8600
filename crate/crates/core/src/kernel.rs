//! Hot loops for the tetrahedron-equation check over two colours.
//!
//! Two interchangeable kernels:
//! - [`stte_scalar`] walks the 64 six-slot states one at a time on a packed
//!   `u8`, applying the output table, and stops at the first mismatch;
//! - [`stte_bitsliced`] evaluates all 64 states at once, one `u64` bit-plane
//!   per slot (lane `s` is state `s`), with `R` applied as a multiplexer tree.

/// Output of `R` as `4*r1 + 2*r2 + r3`, indexed by the packed input.
#[inline]
pub fn output_table(code: u32) -> [u8; 8] {
    let (a, b, c) = ((code >> 16) as u8, (code >> 8) as u8, code as u8);
    let mut t = [0u8; 8];
    for (i, out) in t.iter_mut().enumerate() {
        *out = (((a >> i) & 1) << 2) | (((b >> i) & 1) << 1) | ((c >> i) & 1);
    }
    t
}

// Bit positions of slots (i, j, k) in a state packed with x1 as bit 5.
const P123: (u32, u32, u32) = (5, 4, 3);
const P145: (u32, u32, u32) = (5, 2, 1);
const P246: (u32, u32, u32) = (4, 2, 0);
const P356: (u32, u32, u32) = (3, 1, 0);

#[inline(always)]
fn act(table: &[u8; 8], s: u8, (pi, pj, pk): (u32, u32, u32)) -> u8 {
    let idx = (((s >> pi) & 1) << 2) | (((s >> pj) & 1) << 1) | ((s >> pk) & 1);
    let o = table[idx as usize];
    let cleared = s & !((1 << pi) | (1 << pj) | (1 << pk));
    cleared | (((o >> 2) & 1) << pi) | (((o >> 1) & 1) << pj) | ((o & 1) << pk)
}

/// `R123 R145 R246 R356 == R356 R246 R145 R123` on every state, rightmost
/// factor acting first.
#[inline]
pub fn stte_scalar(table: &[u8; 8]) -> bool {
    (0u8..64).all(|s| {
        let lhs = act(table, act(table, act(table, act(table, s, P356), P246), P145), P123);
        let rhs = act(table, act(table, act(table, act(table, s, P123), P145), P246), P356);
        lhs == rhs
    })
}

/// Lane masks: plane `i` (0-based slot) has lane `s` set iff slot `i+1` of `s` is 1.
const PLANES: [u64; 6] = {
    let mut planes = [0u64; 6];
    let mut slot = 0;
    while slot < 6 {
        let mut s = 0;
        while s < 64 {
            if (s >> (5 - slot)) & 1 == 1 {
                planes[slot] |= 1 << s;
            }
            s += 1;
        }
        slot += 1;
    }
    planes
};

#[inline(always)]
fn mux(sel: u64, one: u64, zero: u64) -> u64 {
    zero ^ (sel & (one ^ zero))
}

#[inline(always)]
fn spread(tt: u8, idx: u32) -> u64 {
    0u64.wrapping_sub(((tt >> idx) & 1) as u64)
}

#[inline(always)]
pub(crate) fn eval_sliced(tt: u8, a: u64, b: u64, c: u64) -> u64 {
    let g00 = mux(c, spread(tt, 1), spread(tt, 0));
    let g01 = mux(c, spread(tt, 3), spread(tt, 2));
    let g10 = mux(c, spread(tt, 5), spread(tt, 4));
    let g11 = mux(c, spread(tt, 7), spread(tt, 6));
    mux(a, mux(b, g11, g10), mux(b, g01, g00))
}

#[inline(always)]
fn act_sliced(tts: [u8; 3], p: &mut [u64; 6], (i, j, k): (usize, usize, usize)) {
    let (a, b, c) = (p[i], p[j], p[k]);
    p[i] = eval_sliced(tts[0], a, b, c);
    p[j] = eval_sliced(tts[1], a, b, c);
    p[k] = eval_sliced(tts[2], a, b, c);
}

/// Same predicate as [`stte_scalar`], all 64 states per word.
#[inline]
pub fn stte_bitsliced(code: u32) -> bool {
    let tts = [(code >> 16) as u8, (code >> 8) as u8, code as u8];
    let (l123, l145, l246, l356) = ((0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5));

    let mut lhs = PLANES;
    act_sliced(tts, &mut lhs, l356);
    act_sliced(tts, &mut lhs, l246);
    act_sliced(tts, &mut lhs, l145);
    act_sliced(tts, &mut lhs, l123);

    let mut rhs = PLANES;
    act_sliced(tts, &mut rhs, l123);
    act_sliced(tts, &mut rhs, l145);
    act_sliced(tts, &mut rhs, l246);
    act_sliced(tts, &mut rhs, l356);

    lhs == rhs
}

/// Which kernel the enumerator runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Kernel {
    #[default]
    Scalar,
    Bitsliced,
}

impl Kernel {
    #[inline]
    pub fn check(self, code: u32) -> bool {
        match self {
            Kernel::Scalar => stte_scalar(&output_table(code)),
            Kernel::Bitsliced => stte_bitsliced(code),
        }
    }
}
