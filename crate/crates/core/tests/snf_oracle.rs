mod common;

use common::{int_matrix, BruteQuotient};
use easyqg::ktheory::{cokernel, kernel_rank, smith_normal_form, FGAbelianGroup, Presentation};
use easyqg::linear::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn diagonal(d: &IntMatrix) -> Vec<BigInt> {
    (0..d.rows().min(d.cols())).map(|i| d.get(i, i)).collect()
}

fn assert_smith(m: &IntMatrix) -> Vec<BigInt> {
    let (u, d, v) = smith_normal_form(m);
    assert_eq!(u.mul(m).mul(&v), d, "UMV ≠ D for {m:?}");
    assert!(u.is_unimodular() && v.is_unimodular());
    assert!(d.entries().all(|(r, c, x)| r == c && x.is_positive()));
    let ds = diagonal(&d);
    for w in ds.windows(2) {
        assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]), "chain broken: {ds:?}");
    }
    ds
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

#[test]
fn random_matrices_against_coset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut compared = 0;
    for trial in 0..200 {
        let rows = rng.gen_range(1..=6);
        let cols = if trial % 2 == 0 { rows } else { rng.gen_range(1..=6) };
        let bound = [1, 2, 3, 5, 9][trial % 5];
        let raw = random_matrix(&mut rng, rows, cols, bound);
        let m = int_matrix(&raw);
        let ds = assert_smith(&m);
        let group = cokernel(&m);
        let rank = ds.iter().filter(|d| !d.is_zero()).count();
        assert_eq!(group.free_rank, rows - rank);
        assert_eq!(kernel_rank(&m), cols - rank);
        if rows == cols {
            if let Some(q) = BruteQuotient::new(&raw, 1000) {
                compared += 1;
                assert_eq!(BigInt::from(q.order()), m.determinant().abs());
                assert_eq!(group.order(), Some(BigInt::from(q.order())));
                for k in 1..=12u64 {
                    assert_eq!(group.killed_by(k), Some(BigInt::from(q.killed_by(k))), "k={k} {raw:?}");
                }
            }
        }
    }
    assert!(compared >= 40, "only {compared} quotients enumerated");
}

#[test]
fn permutations_leave_the_diagonal_alone() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let raw = random_matrix(&mut rng, 6, 6, 20);
        let base = assert_smith(&int_matrix(&raw));
        let mut rows: Vec<usize> = (0..6).collect();
        let mut cols: Vec<usize> = (0..6).collect();
        for i in (1..6).rev() {
            rows.swap(i, rng.gen_range(0..=i));
            cols.swap(i, rng.gen_range(0..=i));
        }
        let permuted: Vec<Vec<i64>> = rows.iter().map(|&r| cols.iter().map(|&c| raw[r][c]).collect()).collect();
        assert_eq!(assert_smith(&int_matrix(&permuted)), base);
    }
}

#[test]
fn sparse_presentation_agrees_with_dense_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let rows = rng.gen_range(1..=7);
        let cols = rng.gen_range(0..=7);
        // mostly zeros and units, so both elimination paths are exercised
        let raw: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| [0, 0, 0, 1, -1, 2, 3, -4][rng.gen_range(0..8)]).collect())
            .collect();
        let m = if cols == 0 { IntMatrix::zeros(rows, 0) } else { int_matrix(&raw) };
        let ds = diagonal(&smith_normal_form(&m).1);
        let rank = ds.iter().filter(|d| !d.is_zero()).count();
        let expected = FGAbelianGroup {
            free_rank: rows - rank,
            torsion: ds.into_iter().filter(|d| !d.is_zero() && d != &BigInt::from(1)).collect(),
        };
        let p = Presentation::new(&m);
        assert_eq!(p.group(), &expected);
        assert_eq!(p.kernel_rank(), cols - rank);
    }
}

proptest! {
    #[test]
    fn determinant_is_preserved(raw in prop::collection::vec(prop::collection::vec(-20i64..=20, 4), 4)) {
        let m = int_matrix(&raw);
        let ds = assert_smith(&m);
        let prod: BigInt = ds.iter().product();
        prop_assert_eq!(prod, m.determinant().abs());
    }
}
