//! Random unimodular transformations for invariance checks.

use rand::seq::SliceRandom;
use rand::Rng;

/// Largest entry allowed to appear in a generated matrix.
const ENTRY_CAP: i64 = 60;

/// A random matrix in `GL_n(ℤ)` built from elementary row operations with
/// multipliers in `[-2, 2]`, a row permutation and sign changes.
pub fn random_unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n > 1 {
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
            let row: Vec<i64> = m[i].iter().zip(&m[j]).map(|(a, b)| a + c * b).collect();
            if row.iter().all(|x| x.abs() <= ENTRY_CAP) {
                m[i] = row;
            }
        }
    }
    m.shuffle(rng);
    for row in &mut m {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    m
}

/// A random translation with entries in `[-bound, bound]`.
pub fn random_shift<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}
