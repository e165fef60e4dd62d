//! Deterministic instance builders shared by the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rankforge_core::{Matrix, Modulus, Pencil};

pub fn gf(p: u64) -> Modulus {
    Modulus::new(p).expect("benchmark modulus is prime")
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, modulus: Modulus) -> Matrix {
    let p = modulus.get();
    let values: Vec<u64> = (0..rows * cols).map(|_| rng.random_range(0..p)).collect();
    Matrix::from_values(rows, cols, &values, modulus)
}

pub fn random_rank_one(rng: &mut ChaCha8Rng, rows: usize, cols: usize, modulus: Modulus) -> Matrix {
    let p = modulus.get();
    loop {
        let u: Vec<u64> = (0..rows).map(|_| rng.random_range(0..p)).collect();
        let v: Vec<u64> = (0..cols).map(|_| rng.random_range(0..p)).collect();
        if u.iter().all(|&x| x == 0) || v.iter().all(|&x| x == 0) {
            continue;
        }
        let mut m = Matrix::zero(rows, cols, modulus);
        for (r, &ur) in u.iter().enumerate() {
            for (c, &vc) in v.iter().enumerate() {
                m.set(r, c, modulus.scalar(ur * vc));
            }
        }
        return m;
    }
}

/// A square rank-one pencil with a low-rank constant term, so the driver
/// has genuine augmentation work to do.
pub fn rank_one_pencil(seed: u64, size: usize, vars: usize, p: u64) -> Pencil {
    let modulus = gf(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inner = size / 2;
    let b0 = random_matrix(&mut rng, size, inner, modulus)
        .mul(&random_matrix(&mut rng, inner, size, modulus));
    let mut coefficients = vec![b0];
    for _ in 0..vars {
        coefficients.push(random_rank_one(&mut rng, size, size, modulus));
    }
    Pencil::new(coefficients)
}

/// A deterministic dense square matrix for the elimination benchmarks.
pub fn dense_square(seed: u64, size: usize, p: u64) -> Matrix {
    let modulus = gf(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix(&mut rng, size, size, modulus)
}
