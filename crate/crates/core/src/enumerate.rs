//! Enumeration of coefficient vectors with exhaustiveness bookkeeping.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fflinalg::{all_vectors, Field};

/// Largest number of elements of a hom-space that is enumerated in full.
pub const DEFAULT_CAP: usize = 4096;

/// Coefficient vectors of length `dim`.
///
/// Returns every vector when `p^dim <= cap` (second component `true`).
/// Otherwise returns zero, the unit vectors and seeded random vectors up to
/// `cap` in total, with the second component `false`.
pub fn elements(field: Field, dim: usize, cap: usize, seed: u64) -> (Vec<Vec<u8>>, bool) {
    let p = field.characteristic() as usize;
    let exhaustive = p
        .checked_pow(dim as u32)
        .is_some_and(|count| count <= cap);
    if exhaustive {
        return (all_vectors(field, dim).collect(), true);
    }
    let mut out = vec![vec![0u8; dim]];
    for i in 0..dim {
        let mut e = vec![0u8; dim];
        e[i] = 1;
        out.push(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < cap.max(dim + 1) {
        out.push((0..dim).map(|_| rng.gen_range(0..p as u8)).collect());
    }
    (out, false)
}

/// Mixes a base seed with an index into a per-task seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spaces_are_exhaustive() {
        let f = Field::new(2).unwrap();
        let (v, ex) = elements(f, 3, 4096, 1);
        assert!(ex);
        assert_eq!(v.len(), 8);
        assert_eq!(v[0], vec![0, 0, 0]);
    }

    #[test]
    fn large_spaces_are_sampled_deterministically() {
        let f = Field::new(2).unwrap();
        let (a, ex) = elements(f, 20, 100, 7);
        let (b, _) = elements(f, 20, 100, 7);
        assert!(!ex);
        assert_eq!(a.len(), 100);
        assert_eq!(a, b);
    }
}
