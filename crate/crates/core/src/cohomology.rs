//! Degree-3 cohomology of the tetrahedral complex over Z.

use crate::cube::{boundary3_matrix, boundary4_matrix};
use crate::error::{Error, Result};
use crate::intlinalg::{image_lattice, kernel_lattice, quotient, AbelianGroup, Lattice};
use crate::par::Exec;
use crate::rmap::RMap;

/// The all-ones 3-cochain.
pub const V1: [i64; 8] = [1; 8];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub code: u32,
    /// `ker delta^3` in Z^8.
    pub ker: Lattice,
    /// `im delta^2` in Z^8.
    pub im: Lattice,
    pub ker_rank: usize,
    /// Generator of `im delta^2` with positive leading entry, or zero.
    pub im_generator: [i64; 8],
    /// `ker delta^3 / im delta^2`
    pub h3: AbelianGroup,
    /// `ker delta^3 / (im delta^2 + Z v1)`
    pub h3_reduced: AbelianGroup,
    /// The kernel is larger than its trivial part `im delta^2 + Z v1`.
    pub nontrivial: bool,
}

pub fn cohomology3(r: RMap) -> Result<CohomologyReport> {
    let m3 = boundary3_matrix(r);
    let (m4, _) = boundary4_matrix(r)?;
    let ker = kernel_lattice(&m4)?;
    let im = image_lattice(&m3)?;
    if im.rank() > 1 {
        return Err(Error::Consistency(format!("im delta^2 of {:#08x} has rank {}", r.code(), im.rank())));
    }
    let mut im_generator = [0i64; 8];
    if let Some(g) = im.basis_vectors().first() {
        im_generator.copy_from_slice(g);
    }
    let trivial = im.sum(&Lattice::from_vectors(8, &[V1])?)?;
    let h3 = quotient(&ker, &im)?;
    let h3_reduced = quotient(&ker, &trivial)?;
    Ok(CohomologyReport {
        code: r.code(),
        ker_rank: ker.rank(),
        nontrivial: ker != trivial,
        ker,
        im,
        im_generator,
        h3,
        h3_reduced,
    })
}

/// Reports for every map, in input order.
pub fn cohomology_all(maps: &[RMap], exec: Exec) -> Result<Vec<CohomologyReport>> {
    exec.map_slice(maps, |&r| cohomology3(r)).into_iter().collect()
}

/// `rank im delta^2 <= 1`, i.e. strictly below the number of colours.
pub fn verify_statement(r: RMap) -> bool {
    image_lattice(&boundary3_matrix(r)).is_ok_and(|im| im.rank() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: &str, b: &str, c: &str) -> RMap {
        RMap::from_polys(&[a, b, c]).unwrap()
    }

    #[test]
    fn identity_has_full_kernel() {
        let rep = cohomology3(RMap::IDENTITY).unwrap();
        assert_eq!(rep.ker_rank, 8);
        assert_eq!(rep.im_generator, [0; 8]);
        assert_eq!(rep.h3, AbelianGroup { free_rank: 8, torsion: vec![] });
        assert_eq!(rep.h3_reduced.free_rank, 7);
        assert!(rep.nontrivial);
    }

    #[test]
    fn constant_zero_is_trivial() {
        let rep = cohomology3(r("0", "0", "0")).unwrap();
        assert!(!rep.nontrivial);
        assert!(rep.h3_reduced.is_trivial());
    }

    #[test]
    fn v1_and_image_lie_in_kernel() {
        for rr in [RMap::IDENTITY, r("0", "x+z", "0"), r("x+1", "y+1", "z+1")] {
            let rep = cohomology3(rr).unwrap();
            assert!(rep.ker.contains(&V1).unwrap());
            assert!(rep.ker.contains_lattice(&rep.im).unwrap());
        }
    }

    #[test]
    fn statement_holds_for_examples() {
        assert!(verify_statement(r("0", "x+z", "0")));
        assert!(verify_statement(RMap::IDENTITY));
        assert!(verify_statement(r("z", "y", "x")));
    }

    #[test]
    fn non_solution_refused() {
        assert!(matches!(cohomology3(r("z", "y", "x")), Err(Error::NotASolution(_))));
    }
}
