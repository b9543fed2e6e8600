//! Permitted colourings of the 3- and 4-cube and the boundary matrices.
//!
//! Faces of the 4-cube `I^4` (axes 1..4):
//!
//! * A 2-face has two free axes `(a, b)` and fixes the other two. Its class
//!   is the position of `(a, b)` in `(1,2), (1,3), (2,3), (1,4), (2,4), (3,4)`;
//!   with this ordering the four 3-face directions `{1,2,3}, {1,2,4},
//!   {1,3,4}, {2,3,4}` carry the class triples `{1,2,3}, {1,4,5}, {2,4,6},
//!   {3,5,6}` of the tetrahedron equation.
//! * Face bit index in a [`Coloring4`] is `4*(class-1) + 2*u + v`, where `u`
//!   and `v` are the fixed values of the smaller and larger remaining axis.
//! * A 3-face fixes one axis `d` at a value and leaves `a < b < c` free. Its
//!   incoming 2-faces are `x_c = 0` (argument 1 of `R`), `x_b = 1` (argument
//!   2) and `x_a = 0` (argument 3); the outgoing faces are the opposite ones,
//!   carrying the outputs in the same order. A coloring is permitted on the
//!   3-face iff outgoing = `R(incoming)`.
//! * The incoming 3-faces of `I^4` are `x1 = 0, x2 = 1, x3 = 0, x4 = 1`.
//!
//! Chains of the 3-cube are indexed by the input triple of the permitted
//! coloring, in lexicographic order; chains of the 4-cube by permitted
//! colorings in ascending [`Coloring4`] order.

use std::io::{self, Write};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;
use crate::kernel::eval_sliced;
use crate::par::Exec;
use crate::rmap::RMap;

pub const FACE_COUNT: usize = 24;
pub const SUBCUBE_COUNT: usize = 8;
/// `#X^6`: permitted 4-cube colourings of a solution are parameterised by six sources.
pub const PERMITTED4_COUNT: usize = 64;

const PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)];

/// A 2-face of the 4-cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face2 {
    /// 1..=6, see the module docs.
    pub class: u8,
    /// `(axis, value)` for the two fixed axes, smaller axis first.
    pub fixed: [(usize, bool); 2],
}

impl Face2 {
    pub fn from_index(idx: usize) -> Face2 {
        assert!(idx < FACE_COUNT);
        let class = idx / 4;
        let (a, b) = PAIRS[class];
        let mut others = (1..=4).filter(|&x| x != a && x != b);
        let (c, d) = (others.next().unwrap(), others.next().unwrap());
        Face2 { class: class as u8 + 1, fixed: [(c, idx & 2 != 0), (d, idx & 1 != 0)] }
    }

    pub fn index(self) -> usize {
        4 * (self.class as usize - 1) + 2 * self.fixed[0].1 as usize + self.fixed[1].1 as usize
    }

    pub fn free_axes(self) -> (usize, usize) {
        PAIRS[self.class as usize - 1]
    }

    /// Face with free axes `{a, b}` (any order) and the given fixed values.
    fn locate(a: usize, b: usize, fixed: [(usize, bool); 2]) -> usize {
        let pair = (a.min(b), a.max(b));
        let class = PAIRS.iter().position(|&p| p == pair).expect("valid pair");
        let mut fixed = fixed;
        fixed.sort_by_key(|&(axis, _)| axis);
        4 * class + 2 * fixed[0].1 as usize + fixed[1].1 as usize
    }
}

/// A colour bit for each of the 24 two-faces, bit `i` for face index `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring4(pub u32);

impl Coloring4 {
    #[inline]
    pub fn face(self, idx: usize) -> bool {
        (self.0 >> idx) & 1 == 1
    }

    #[inline]
    fn triple(self, faces: [usize; 3]) -> u8 {
        ((self.face(faces[0]) as u8) << 2) | ((self.face(faces[1]) as u8) << 1) | self.face(faces[2]) as u8
    }
}

/// A 3-face of the 4-cube with its incoming/outgoing 2-faces in argument order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubCube {
    pub fixed_axis: usize,
    pub fixed_value: bool,
    pub incoming: [usize; 3],
    pub outgoing: [usize; 3],
}

impl SubCube {
    fn new(d: usize, value: bool) -> SubCube {
        let mut free = (1..=4).filter(|&x| x != d);
        let (a, b, c) = (free.next().unwrap(), free.next().unwrap(), free.next().unwrap());
        let face = |p: usize, q: usize, normal: usize, v: bool| Face2::locate(p, q, [(normal, v), (d, value)]);
        SubCube {
            fixed_axis: d,
            fixed_value: value,
            incoming: [face(a, b, c, false), face(a, c, b, true), face(b, c, a, false)],
            outgoing: [face(a, b, c, true), face(a, c, b, false), face(b, c, a, true)],
        }
    }

    /// Index in [`subcubes`]: `2*(axis-1) + value`.
    pub fn index(self) -> usize {
        2 * (self.fixed_axis - 1) + self.fixed_value as usize
    }

    #[inline]
    pub fn input_triple(&self, col: Coloring4) -> u8 {
        col.triple(self.incoming)
    }

    #[inline]
    pub fn output_triple(&self, col: Coloring4) -> u8 {
        col.triple(self.outgoing)
    }

    #[inline]
    pub fn is_permitted(&self, r: RMap, col: Coloring4) -> bool {
        r.apply_index(self.input_triple(col)) == self.output_triple(col)
    }
}

pub fn subcubes() -> &'static [SubCube; SUBCUBE_COUNT] {
    static CUBES: OnceLock<[SubCube; SUBCUBE_COUNT]> = OnceLock::new();
    CUBES.get_or_init(|| std::array::from_fn(|i| SubCube::new(i / 2 + 1, i % 2 == 1)))
}

/// The `k`-th (1-based) incoming and outgoing 3-faces of the 4-cube.
pub fn boundary_subcubes(k: usize) -> (&'static SubCube, &'static SubCube) {
    let incoming_value = k.is_multiple_of(2);
    let cubes = subcubes();
    (&cubes[2 * (k - 1) + incoming_value as usize], &cubes[2 * (k - 1) + !incoming_value as usize])
}

/// Role of a 2-face with respect to the two 3-faces containing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceRole {
    /// Incoming in both.
    Source,
    /// Outgoing in both.
    Sink,
    Through,
}

pub fn face_role(idx: usize) -> FaceRole {
    let mut incoming = 0;
    let mut outgoing = 0;
    for cube in subcubes() {
        incoming += cube.incoming.contains(&idx) as usize;
        outgoing += cube.outgoing.contains(&idx) as usize;
    }
    debug_assert_eq!(incoming + outgoing, 2);
    match (incoming, outgoing) {
        (2, 0) => FaceRole::Source,
        (0, 2) => FaceRole::Sink,
        _ => FaceRole::Through,
    }
}

struct Propagation {
    /// Source faces ordered by class.
    sources: [usize; 6],
    /// Subcubes in an order where every incoming face is known beforehand.
    order: [usize; SUBCUBE_COUNT],
}

fn propagation() -> &'static Propagation {
    static PLAN: OnceLock<Propagation> = OnceLock::new();
    PLAN.get_or_init(|| {
        let sources: Vec<usize> = (0..FACE_COUNT).filter(|&f| face_role(f) == FaceRole::Source).collect();
        let sources: [usize; 6] = sources.try_into().expect("six source faces");
        let mut known: u32 = sources.iter().fold(0, |m, &f| m | 1 << f);
        let mut order = Vec::with_capacity(SUBCUBE_COUNT);
        while order.len() < SUBCUBE_COUNT {
            let next = subcubes()
                .iter()
                .enumerate()
                .find(|(i, c)| !order.contains(i) && c.incoming.iter().all(|&f| known & (1 << f) != 0))
                .map(|(i, _)| i)
                .expect("face determination relation is acyclic");
            order.push(next);
            for &f in &subcubes()[next].outgoing {
                known |= 1 << f;
            }
        }
        Propagation { sources, order: order.try_into().unwrap() }
    })
}

/// Source faces (incoming in both containing 3-faces), one per class.
pub fn source_faces() -> [usize; 6] {
    propagation().sources
}

/// Subcube indices in propagation order.
pub fn propagation_order() -> [usize; SUBCUBE_COUNT] {
    propagation().order
}

/// The permitted colouring of a standalone 3-cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coloring3 {
    /// Argument `j` sits on the incoming face normal to axis `4 - j`.
    pub incoming: [bool; 3],
    /// Output `j` sits on the outgoing face normal to axis `4 - j`.
    pub outgoing: [bool; 3],
}

impl Coloring3 {
    /// Colour of the face normal to `axis` (1..=3) on the given side.
    pub fn face(&self, axis: usize, outgoing: bool) -> bool {
        let j = 3 - axis;
        if outgoing {
            self.outgoing[j]
        } else {
            self.incoming[j]
        }
    }

    /// Position in the lexicographic chain basis.
    pub fn index(&self) -> usize {
        let [a, b, c] = self.incoming;
        4 * a as usize + 2 * b as usize + c as usize
    }
}

pub fn permitted3(r: RMap, triple: [bool; 3]) -> Coloring3 {
    Coloring3 { incoming: triple, outgoing: r.apply(triple) }
}

/// `d^3` as an 8x2 matrix: entry `(t, c)` is `#{j : t_j = c} - #{j : r_j(t) = c}`.
pub fn boundary3_matrix(r: RMap) -> IntMatrix {
    let mut m = IntMatrix::zeros(8, 2);
    for t in 0..8u8 {
        let out = r.apply_index(t);
        for j in 0..3 {
            m[(t as usize, ((t >> j) & 1) as usize)] += 1;
            m[(t as usize, ((out >> j) & 1) as usize)] -= 1;
        }
    }
    m
}

pub fn is_permitted4(r: RMap, col: Coloring4) -> bool {
    subcubes().iter().all(|c| c.is_permitted(r, col))
}

/// Every one of the 2^24 colourings filtered through all eight 3-faces.
///
/// The low six face bits vary across the 64 lanes of a word, so each 3-face
/// check runs on 64 colourings at once.
pub fn enumerate_permitted4_bruteforce(r: RMap) -> Vec<Coloring4> {
    enumerate_permitted4_bruteforce_with(r, Exec::default())
}

pub fn enumerate_permitted4_bruteforce_with(r: RMap, exec: Exec) -> Vec<Coloring4> {
    const LANE_BITS: usize = 6;
    const WORDS: usize = 1 << (FACE_COUNT - LANE_BITS);
    const BLOCK: usize = 1 << 12;
    let lane_planes: [u64; LANE_BITS] =
        std::array::from_fn(|bit| (0..64u64).filter(|l| (l >> bit) & 1 == 1).fold(0, |m, l| m | 1 << l));
    let tts = r.r.map(|t| t.bits());
    let cubes = subcubes();

    let blocks = exec.map_indices(WORDS / BLOCK, |block| {
        let mut found = Vec::new();
        for word in block * BLOCK..(block + 1) * BLOCK {
            let plane = |f: usize| -> u64 {
                if f < LANE_BITS {
                    lane_planes[f]
                } else {
                    0u64.wrapping_sub(((word >> (f - LANE_BITS)) & 1) as u64)
                }
            };
            let mut ok = !0u64;
            for cube in cubes {
                let [a, b, c] = cube.incoming.map(plane);
                let outs = cube.outgoing.map(plane);
                for (j, &out) in outs.iter().enumerate() {
                    ok &= !(eval_sliced(tts[j], a, b, c) ^ out);
                }
                if ok == 0 {
                    break;
                }
            }
            while ok != 0 {
                let lane = ok.trailing_zeros();
                ok &= ok - 1;
                found.push(Coloring4(((word as u32) << LANE_BITS) | lane));
            }
        }
        found
    });
    blocks.into_iter().flatten().collect()
}

/// Permitted colourings obtained by choosing the six source colours freely
/// and pushing them through the 3-faces in dependency order.
///
/// Fails if some face receives two different colours, which happens only
/// when `r` is not a solution.
pub fn enumerate_permitted4_propagate(r: RMap) -> Result<Vec<Coloring4>> {
    let mut out: Vec<Coloring4> = (0..64u8).map(|sources| propagate_from(r, sources)).collect::<Result<_>>()?;
    out.sort();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Consistency(format!("duplicate colourings while propagating {:#08x}", r.code())));
    }
    Ok(out)
}

/// Propagates the source colours `sources` (bit `5 - k` is class `k + 1`).
pub fn propagate_from(r: RMap, sources: u8) -> Result<Coloring4> {
    let plan = propagation();
    let mut col = 0u32;
    let mut known = 0u32;
    for (k, &f) in plan.sources.iter().enumerate() {
        col |= (((sources >> (5 - k)) & 1) as u32) << f;
        known |= 1 << f;
    }
    for &ci in &plan.order {
        let cube = &subcubes()[ci];
        let out = r.apply_index(Coloring4(col).triple(cube.incoming));
        for (j, &f) in cube.outgoing.iter().enumerate() {
            let bit = ((out >> (2 - j)) & 1) as u32;
            if known & (1 << f) != 0 {
                if (col >> f) & 1 != bit {
                    return Err(Error::Consistency(format!(
                        "conflicting colours on face {f} while propagating {:#08x} from sources {sources:06b}",
                        r.code()
                    )));
                }
            } else {
                col |= bit << f;
                known |= 1 << f;
            }
        }
    }
    debug_assert_eq!(known, (1 << FACE_COUNT) - 1);
    Ok(Coloring4(col))
}

/// `d^3` and `d^4` for a solution, together with the 4-cube chain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrices {
    /// 8 x 2
    pub m3: IntMatrix,
    /// |P4| x 8
    pub m4: IntMatrix,
    /// Row labels of `m4`, ascending.
    pub colorings: Vec<Coloring4>,
}

/// `d^4` with rows `sum_k (e[t_in(k)] - e[t_out(k)])` over the permitted colourings.
pub fn boundary4_matrix(r: RMap) -> Result<(IntMatrix, Vec<Coloring4>)> {
    if !r.satisfies_stte() {
        return Err(Error::NotASolution(r.code()));
    }
    let colorings = enumerate_permitted4_propagate(r)?;
    let mut m = IntMatrix::zeros(colorings.len(), 8);
    for (row, &col) in colorings.iter().enumerate() {
        for k in 1..=4 {
            let (inc, out) = boundary_subcubes(k);
            for (cube, sign) in [(inc, 1), (out, -1)] {
                if !cube.is_permitted(r, col) {
                    return Err(Error::Consistency(format!(
                        "restriction of colouring {:#08x} to 3-face {} is not permitted",
                        col.0,
                        cube.index()
                    )));
                }
                m[(row, cube.input_triple(col) as usize)] += sign;
            }
        }
    }
    Ok((m, colorings))
}

pub fn boundary_matrices(r: RMap) -> Result<BoundaryMatrices> {
    let (m4, colorings) = boundary4_matrix(r)?;
    Ok(BoundaryMatrices { m3: boundary3_matrix(r), m4, colorings })
}

/// Plain-text matrix dump: `#` header lines, then one row per line.
pub fn write_matrix<W: Write>(w: &mut W, header: &[String], m: &IntMatrix) -> io::Result<()> {
    for line in header {
        writeln!(w, "# {line}")?;
    }
    write!(w, "{m}")
}

impl BoundaryMatrices {
    pub fn write_text<W: Write>(&self, w: &mut W, r: RMap) -> io::Result<()> {
        write_matrix(
            w,
            &[
                format!("R = {r}  code {:#08x}", r.code()),
                "M3 = d^3 = delta^2 (8 x 2)".into(),
                "rows: input triples (x,y,z) in lexicographic order 000..111".into(),
                "cols: colours 0, 1".into(),
            ],
            &self.m3,
        )?;
        let labels: Vec<String> = self.colorings.iter().map(|c| format!("{:#08x}", c.0)).collect();
        write_matrix(
            w,
            &[
                format!("M4 = d^4 = delta^3 ({} x 8)", self.m4.rows()),
                "rows: permitted 4-cube colourings, ascending 24-bit face mask".into(),
                format!("row labels: {}", labels.join(" ")),
                "cols: input triples in lexicographic order".into(),
            ],
            &self.m4,
        )
    }
}
