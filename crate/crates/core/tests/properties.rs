//! Library properties checked against independent, deliberately naive oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tetra_core::boolfun::{parse_poly, AnfPoly, TruthTable3};
use tetra_core::intlinalg::{image_lattice, kernel_lattice, quotient, snf, IntMatrix, Lattice};
use tetra_core::kernel::{output_table, stte_bitsliced, stte_scalar};
use tetra_core::quantum::check_qte;
use tetra_core::{enumerate_solutions, RMap};

const SEED: u64 = 20_240_611;

/// `R` evaluated from its polynomials, acting on an explicit six-slot array.
fn naive_stte(r: RMap) -> bool {
    let polys = r.r.map(|t| t.to_anf());
    let act = |s: &mut [bool; 6], legs: [usize; 3]| {
        let (x, y, z) = (s[legs[0]], s[legs[1]], s[legs[2]]);
        for (slot, p) in legs.iter().zip(polys) {
            s[*slot] = p.eval(x, y, z);
        }
    };
    let (l123, l145, l246, l356) = ([0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]);
    (0..64u32).all(|bits| {
        let start: [bool; 6] = std::array::from_fn(|i| (bits >> (5 - i)) & 1 == 1);
        let mut lhs = start;
        for legs in [l356, l246, l145, l123] {
            act(&mut lhs, legs);
        }
        let mut rhs = start;
        for legs in [l123, l145, l246, l356] {
            act(&mut rhs, legs);
        }
        lhs == rhs
    })
}

#[test]
fn equation_kernels_match_naive_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..100_000 {
        let code = rng.random_range(0..1u32 << 24);
        let expect = naive_stte(RMap::from_code(code));
        assert_eq!(stte_scalar(&output_table(code)), expect, "scalar, code {code:#08x}");
        assert_eq!(stte_bitsliced(code), expect, "bitsliced, code {code:#08x}");
    }
    for r in enumerate_solutions().iter() {
        assert!(naive_stte(r), "{r}");
    }
}

#[test]
fn sigma_involutions_commute_and_preserve_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..100_000 {
        let r = RMap::from_code(rng.random_range(0..1u32 << 24));
        assert_eq!(r.sigma1().sigma1(), r);
        assert_eq!(r.sigma2().sigma2(), r);
        assert_eq!(r.sigma1().sigma2(), r.sigma2().sigma1());
        assert_eq!(r.sigma2().satisfies_stte(), r.satisfies_stte());
        assert_eq!(r.sigma1().image_cardinality(), r.image_cardinality());
    }
}

#[test]
fn sigma_is_conjugation() {
    // sigma1: conjugation by (x,y,z) -> (z,y,x); sigma2: by the global complement.
    let rev = |t: [bool; 3]| [t[2], t[1], t[0]];
    let not = |t: [bool; 3]| t.map(|b| !b);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for _ in 0..10_000 {
        let r = RMap::from_code(rng.random_range(0..1u32 << 24));
        for i in 0..8u8 {
            let t = [i & 4 != 0, i & 2 != 0, i & 1 != 0];
            assert_eq!(r.sigma1().apply(t), rev(r.apply(rev(t))));
            assert_eq!(r.sigma2().apply(t), not(r.apply(not(t))));
        }
    }
}

#[test]
fn quantum_check_agrees_with_set_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let solutions = enumerate_solutions();
    let mut maps: Vec<RMap> = (0..10_000).map(|_| RMap::from_code(rng.random_range(0..1u32 << 24))).collect();
    maps.extend(solutions.iter());
    for r in maps {
        assert_eq!(check_qte(r, None), r.satisfies_stte(), "{r}");
    }
}

#[test]
fn truth_tables_and_polynomials_round_trip() {
    for v in 0..=255u8 {
        let tt = TruthTable3(v);
        assert_eq!(TruthTable3::from(tt.to_anf()), tt);
        assert_eq!(AnfPoly(v).to_truth_table().to_anf(), AnfPoly(v));
        let printed = AnfPoly(v).to_string();
        assert_eq!(parse_poly(&printed), Ok(AnfPoly(v)), "{printed}");
        assert_eq!(printed.parse::<TruthTable3>().unwrap(), AnfPoly(v).to_truth_table());
    }
}

// ---------------------------------------------------------------------------
// Integer linear algebra oracles

fn big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum()).collect())
        .collect()
}

/// Rank over Q by fraction-exact Gaussian elimination.
fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        big(m).into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                let pivot_row = a[rank].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by Bareiss fraction-free elimination.
fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k x k` minors of the `k` vectors `rows` (each of length `n`).
fn maximal_minor_gcd(rows: &[Vec<i64>], n: usize) -> BigInt {
    let k = rows.len();
    let mut g = BigInt::zero();
    for cols in combinations(n, k) {
        let sub: Vec<Vec<BigInt>> = rows.iter().map(|r| cols.iter().map(|&c| BigInt::from(r[c])).collect()).collect();
        g = num_integer::Integer::gcd(&g, &bareiss_det(&sub));
    }
    g
}

fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.random_range(1..=max_dim);
    let cols = rng.random_range(1..=max_dim);
    let data: Vec<Vec<i64>> =
        (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(cols, &data).unwrap()
}

#[test]
fn snf_recomposes_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for _ in 0..1_000 {
        let m = random_matrix(&mut rng, 6, 9);
        let f = snf(&m).unwrap();
        assert_eq!(big_mul(&big_mul(&big(&f.u), &big(&m)), &big(&f.v)), big(&f.s), "\n{m}");
        let d = f.invariant_factors();
        assert_eq!(d.len(), rational_rank(&m));
        assert!(d.windows(2).all(|w| w[1] % w[0] == 0));
        // |det U| = |det V| = 1
        assert!(bareiss_det(&big(&f.u)).abs().is_one());
        assert!(bareiss_det(&big(&f.v)).abs().is_one());
        // d1 * ... * dk equals the gcd of the k x k minors of M.
        let product: BigInt = d.iter().map(|&x| BigInt::from(x)).product();
        let rows: Vec<Vec<i64>> = if m.rows() >= m.cols() { m.transpose().row_vecs() } else { m.row_vecs() };
        if d.len() == m.rows().min(m.cols()) {
            assert_eq!(product, maximal_minor_gcd(&rows, m.rows().max(m.cols())), "\n{m}");
        }
    }
}

#[test]
fn kernel_lattice_is_the_saturated_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for _ in 0..500 {
        let m = random_matrix(&mut rng, 5, 4);
        let ker = kernel_lattice(&m).unwrap();
        assert_eq!(ker.rank(), m.cols() - rational_rank(&m), "\n{m}");
        for v in ker.basis_vectors() {
            assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
        }
        // Saturated: the basis extends to a basis of Z^n iff its maximal minors are coprime.
        if ker.rank() > 0 {
            assert!(maximal_minor_gcd(&ker.basis_vectors(), m.cols()).is_one(), "\n{m}");
        }
    }
}

#[test]
fn image_lattice_is_the_column_span() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    for _ in 0..500 {
        let m = random_matrix(&mut rng, 5, 6);
        let im = image_lattice(&m).unwrap();
        let r = rational_rank(&m);
        assert_eq!(im.rank(), r);
        let columns = m.transpose().row_vecs();
        for c in &columns {
            assert!(im.contains(c).unwrap());
        }
        // Columns lie in the lattice and have the same rank-r determinantal divisor,
        // so the two lattices coincide.
        if r > 0 {
            let gens: BigInt = combinations(columns.len(), r)
                .into_iter()
                .map(|pick| maximal_minor_gcd(&pick.iter().map(|&i| columns[i].clone()).collect::<Vec<_>>(), m.rows()))
                .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, &x));
            assert_eq!(gens, maximal_minor_gcd(&im.basis_vectors(), m.rows()), "\n{m}");
        }
    }
}

#[test]
fn quotient_order_is_the_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut checked = 0;
    while checked < 300 {
        let n = rng.random_range(1..=5);
        let data: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-5..=5)).collect()).collect();
        let det = bareiss_det(&data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>());
        if det.is_zero() {
            continue;
        }
        let sub = Lattice::from_vectors(n, &data).unwrap();
        let q = quotient(&Lattice::full(n), &sub).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(BigInt::from(q.order().unwrap()), det.abs());
        checked += 1;
    }
}

#[test]
fn lattice_equality_is_structural() {
    let a = Lattice::from_vectors(3, &[[2, 0, 0], [0, 3, 0]]).unwrap();
    let b = Lattice::from_vectors(3, &[[2, 3, 0], [-2, 0, 0], [4, 6, 0]]).unwrap();
    assert_eq!(a, b);
    let flipped = Lattice::from_vectors(3, &[[-2, 0, 0], [0, -3, 0]]).unwrap();
    assert_eq!(a, flipped);
}

proptest! {
    #[test]
    fn printer_parser_round_trip(v in any::<u8>()) {
        let p = AnfPoly(v);
        prop_assert_eq!(parse_poly(&p.to_string()), Ok(p));
    }

    #[test]
    fn polynomial_evaluation_matches_table(v in any::<u8>(), x: bool, y: bool, z: bool) {
        prop_assert_eq!(AnfPoly(v).eval(x, y, z), AnfPoly(v).to_truth_table().eval(x, y, z));
    }

    #[test]
    fn code_round_trip(code in 0u32..1 << 24) {
        let r = RMap::from_code(code);
        prop_assert_eq!(r.code(), code);
        prop_assert_eq!(RMap::parse_code(&code.to_string()).unwrap(), r);
        prop_assert_eq!(RMap::parse_code(&format!("{code:#08x}")).unwrap(), r);
        prop_assert_eq!(RMap::from_polys(&r.polys()).unwrap(), r);
    }

    #[test]
    fn lattice_sum_contains_both(a in prop::collection::vec(prop::array::uniform4(-6i64..=6), 0..4),
                                 b in prop::collection::vec(prop::array::uniform4(-6i64..=6), 0..4)) {
        let la = Lattice::from_vectors(4, &a).unwrap();
        let lb = Lattice::from_vectors(4, &b).unwrap();
        let sum = la.sum(&lb).unwrap();
        prop_assert!(sum.contains_lattice(&la).unwrap());
        prop_assert!(sum.contains_lattice(&lb).unwrap());
        let mut all = a.clone();
        all.extend(b.iter().copied());
        prop_assert_eq!(sum, Lattice::from_vectors(4, &all).unwrap());
    }
}
