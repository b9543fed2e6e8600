//! Two-colour solutions of the set-theoretic tetrahedron equation.
//!
//! * [`boolfun`]: three-variable Boolean functions, truth tables and polynomials.
//! * [`rmap`]: R-maps `X^3 -> X^3`, their codes, symmetries and action on six slots.
//! * [`kernel`]: the scalar and bitsliced equation checks used by the search.
//! * [`search`]: exhaustive enumeration and symmetry orbits.
//! * [`cube`]: permitted colourings of the 3- and 4-cube and the boundary matrices.
//! * [`intlinalg`]: exact integer linear algebra (Hermite and Smith forms, lattices).
//! * [`cohomology`]: the degree-3 cohomology report.
//! * [`quantum`]: the linear equation for the induced operator, with cocycle twists.
//! * [`catalogue`]: the bundled reference catalogue and comparison against it.
//!
//! Sweeps take an [`Exec`]; with the `parallel` feature (default) they can
//! run on rayon, otherwise everything runs on the calling thread.

pub mod boolfun;
pub mod catalogue;
pub mod cohomology;
pub mod cube;
pub mod error;
pub mod intlinalg;
pub mod kernel;
pub mod par;
pub mod quantum;
pub mod rmap;
pub mod search;

pub use boolfun::{AnfPoly, TruthTable3};
pub use catalogue::{bundled_reference, compare, load_reference, CatalogueEntry, DiffReport, Reference};
pub use cohomology::{cohomology3, cohomology_all, CohomologyReport};
pub use error::{Error, Result};
pub use intlinalg::{AbelianGroup, IntMatrix, Lattice};
pub use kernel::Kernel;
pub use par::Exec;
pub use rmap::{Legs, RMap, State6, Symmetry};
pub use search::{enumerate_solutions, enumerate_solutions_with, SolutionSet};
