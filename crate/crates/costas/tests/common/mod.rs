//! Shared test oracles, kept independent of the implementation paths they
//! check.

use rand::seq::SliceRandom;
use rand::Rng;

/// Literal transcription of the defining condition: no two of the segments
/// joining dot pairs share length and slope. Compares every pair of
/// segments directly (O(n^4)); used only at test scale.
pub fn naive_is_costas(pi: &[usize]) -> bool {
    let n = pi.len();
    let dots: Vec<(i64, i64)> = pi.iter().enumerate().map(|(i, &j)| (i as i64 + 1, j as i64)).collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                for d in c + 1..n {
                    if (a, b) == (c, d) {
                        continue;
                    }
                    let v1 = (dots[b].0 - dots[a].0, dots[b].1 - dots[a].1);
                    let v2 = (dots[d].0 - dots[c].0, dots[d].1 - dots[c].1);
                    if v1 == v2 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut pi: Vec<usize> = (1..=n).collect();
    pi.shuffle(rng);
    pi
}
