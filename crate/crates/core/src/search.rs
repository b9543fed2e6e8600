//! Exhaustive enumeration of two-colour solutions and their symmetry orbits.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::par::Exec;
use crate::rmap::{RMap, Symmetry, CODE_SPACE};

const CHUNK_BITS: u32 = 16;
const CHUNKS: usize = (CODE_SPACE >> CHUNK_BITS) as usize;

/// Sort key: image cardinality first, then the 24-bit code.
pub fn canonical_key(r: RMap) -> (u32, u32) {
    (r.image_cardinality(), r.code())
}

/// Solutions in canonical order, with per-cardinality slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    solutions: Vec<RMap>,
    // start offset of each image cardinality 1..=8 (index 0 unused), plus end
    offsets: [usize; 10],
}

impl SolutionSet {
    /// Builds a set from maps that each satisfy the equation; sorts and dedups.
    pub fn from_maps(maps: impl IntoIterator<Item = RMap>) -> Result<Self> {
        let mut solutions: Vec<RMap> = maps.into_iter().collect();
        if let Some(bad) = solutions.iter().find(|r| !r.satisfies_stte()) {
            return Err(Error::NotASolution(bad.code()));
        }
        solutions.sort_by_key(|&r| canonical_key(r));
        solutions.dedup();
        Ok(Self::from_sorted(solutions))
    }

    fn from_sorted(solutions: Vec<RMap>) -> Self {
        let mut offsets = [0usize; 10];
        for card in 1..=9u32 {
            offsets[card as usize] = solutions.partition_point(|r| r.image_cardinality() < card);
        }
        SolutionSet { solutions, offsets }
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn as_slice(&self) -> &[RMap] {
        &self.solutions
    }

    pub fn iter(&self) -> impl Iterator<Item = RMap> + '_ {
        self.solutions.iter().copied()
    }

    pub fn codes(&self) -> impl Iterator<Item = u32> + '_ {
        self.iter().map(RMap::code)
    }

    pub fn contains(&self, r: RMap) -> bool {
        self.solutions.binary_search_by_key(&canonical_key(r), |&s| canonical_key(s)).is_ok()
    }

    /// Solutions whose image has `card` elements.
    pub fn with_cardinality(&self, card: u32) -> &[RMap] {
        if !(1..=8).contains(&card) {
            return &[];
        }
        &self.solutions[self.offsets[card as usize]..self.offsets[card as usize + 1]]
    }
}

/// All solutions over two colours, using every core when available.
pub fn enumerate_solutions() -> SolutionSet {
    enumerate_solutions_with(Exec::default(), Kernel::default())
}

/// Scans the whole code space in contiguous chunks; chunk results are
/// concatenated in chunk order and then put in canonical order.
pub fn enumerate_solutions_with(exec: Exec, kernel: Kernel) -> SolutionSet {
    let chunks = exec.map_indices(CHUNKS, |chunk| scan_range(chunk as u32, kernel));
    let mut solutions: Vec<RMap> = chunks.into_iter().flatten().map(RMap::from_code).collect();
    solutions.sort_by_key(|&r| canonical_key(r));
    SolutionSet::from_sorted(solutions)
}

fn scan_range(chunk: u32, kernel: Kernel) -> Vec<u32> {
    let start = chunk << CHUNK_BITS;
    (start..start + (1 << CHUNK_BITS)).filter(|&code| kernel.check(code)).collect()
}

pub fn histogram_by_image_cardinality(set: &SolutionSet) -> BTreeMap<u32, usize> {
    (1..=8).map(|card| (card, set.with_cardinality(card).len())).collect()
}

/// Equivalence class under the group generated by the two conjugations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Canonical order.
    pub members: Vec<RMap>,
    /// `(a, b, s)` with `s(a) = b`, `a` before `b` canonically.
    pub edges: Vec<(RMap, RMap, Symmetry)>,
    /// Conjugations fixing every member.
    pub self_symmetries: Vec<Symmetry>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn orbit_decomposition(set: &SolutionSet) -> Result<Vec<Orbit>> {
    let mut seen: HashSet<RMap> = HashSet::with_capacity(set.len());
    let mut orbits = Vec::new();
    for root in set.iter() {
        if seen.contains(&root) {
            continue;
        }
        let mut members = vec![root, root.sigma1(), root.sigma2(), root.sigma1().sigma2()];
        members.sort_by_key(|&r| canonical_key(r));
        members.dedup();
        if let Some(stray) = members.iter().find(|&&m| !set.contains(m)) {
            return Err(Error::Consistency(format!(
                "solution set is not closed under conjugation: {:#08x} ({}) missing, reached from {:#08x}",
                stray.code(),
                stray,
                root.code()
            )));
        }
        let mut edges = Vec::new();
        for &m in &members {
            for s in Symmetry::ALL {
                let p = m.conjugate(s);
                if canonical_key(m) < canonical_key(p) {
                    edges.push((m, p, s));
                }
            }
        }
        let self_symmetries =
            Symmetry::ALL.into_iter().filter(|&s| members.iter().all(|&m| m.conjugate(s) == m)).collect();
        seen.extend(members.iter().copied());
        orbits.push(Orbit { members, edges, self_symmetries });
    }
    Ok(orbits)
}
