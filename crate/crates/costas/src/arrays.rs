//! Permutation arrays, the Costas-property verifier, parity censuses,
//! and the dihedral transformations used by the symmetry checks.
//!
//! Coordinates are 1-based throughout: the dot set of an array is
//! `{(i, pi(i)) : 1 <= i <= n}`, and dot parities are taken on those
//! 1-based indices. 0-based indexing would silently swap parity classes.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// An order-n permutation; `pi(i)` is the column of the dot in row i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PermutationArray {
    n: usize,
    pi: Vec<usize>,
}

/// Counts of dots by (row parity, column parity): even/even, odd/odd,
/// even/odd and odd/even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParityCensus {
    pub ee: usize,
    pub oo: usize,
    pub eo: usize,
    pub oe: usize,
}

impl ParityCensus {
    pub fn total(&self) -> usize {
        self.ee + self.oo + self.eo + self.oe
    }

    /// The three census identities that hold for every permutation array:
    /// the counts sum to n, #(e,o) = #(o,e), and #(o,o) - #(e,e) is 1 for
    /// odd n and 0 for even n.
    pub fn satisfies_identities(&self, n: usize) -> bool {
        self.total() == n && self.eo == self.oe && self.oo == self.ee + n % 2
    }
}

impl fmt::Display for ParityCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ee={} oo={} eo={} oe={}", self.ee, self.oo, self.eo, self.oe)
    }
}

/// The lexicographically first violation of the distinct-difference
/// condition: rows i < j and displacement k with
/// `pi(i+k) - pi(i) = pi(j+k) - pi(j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostasWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub diff: i64,
}

/// Outcome of the Costas check; `witness` is present iff the check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CostasVerdict {
    pub is_costas: bool,
    pub witness: Option<CostasWitness>,
}

impl PermutationArray {
    /// Validates that `pi` is a permutation of 1..=n (n = pi.len()).
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let n = pi.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("order must be at least 1".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &pi {
            if v < 1 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeats")));
            }
            seen[v] = true;
        }
        Ok(PermutationArray { n, pi })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The permutation values; entry `i` holds `pi(i + 1)`.
    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    /// `pi(i)` with 1-based i.
    pub fn at(&self, i: usize) -> usize {
        self.pi[i - 1]
    }

    /// Dots `(i, pi(i))`, 1-based, in row order.
    pub fn dots(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pi.iter().enumerate().map(|(i, &j)| (i + 1, j))
    }

    /// Checks the distinct-difference condition: for every displacement k,
    /// the differences `pi(i+k) - pi(i)` are pairwise distinct. Runs in
    /// O(n^2) with a per-k occupancy table over [-(n-1), n-1]. Orders 1
    /// and 2 are vacuously Costas.
    pub fn is_costas(&self) -> CostasVerdict {
        let n = self.n;
        let mut first_row = vec![0usize; 2 * n];
        for k in 1..n {
            for slot in first_row.iter_mut() {
                *slot = 0;
            }
            let mut best: Option<(usize, usize)> = None;
            for i in 1..=n - k {
                let d = self.pi[i + k - 1] as i64 - self.pi[i - 1] as i64;
                let slot = (d + n as i64 - 1) as usize;
                let prev = first_row[slot];
                if prev == 0 {
                    first_row[slot] = i;
                } else if best.is_none_or(|(bi, bj)| (prev, i) < (bi, bj)) {
                    best = Some((prev, i));
                }
            }
            if let Some((i, j)) = best {
                let diff = self.pi[i + k - 1] as i64 - self.pi[i - 1] as i64;
                return CostasVerdict { is_costas: false, witness: Some(CostasWitness { i, j, k, diff }) };
            }
        }
        CostasVerdict { is_costas: true, witness: None }
    }

    /// Counts dots by the parity of their 1-based coordinates.
    pub fn parity_census(&self) -> ParityCensus {
        let mut census = ParityCensus { ee: 0, oo: 0, eo: 0, oe: 0 };
        for (i, j) in self.dots() {
            match (i % 2, j % 2) {
                (0, 0) => census.ee += 1,
                (1, 1) => census.oo += 1,
                (0, 1) => census.eo += 1,
                _ => census.oe += 1,
            }
        }
        census
    }

    /// Clockwise quarter turn: dot (i, j) moves to (j, n+1-i).
    pub fn rotate90(&self) -> PermutationArray {
        let n = self.n;
        let mut pi = vec![0usize; n];
        for (i, j) in self.dots() {
            pi[j - 1] = n + 1 - i;
        }
        PermutationArray { n, pi }
    }

    /// Transpose across the main diagonal: dot (i, j) moves to (j, i).
    pub fn reflect_transpose(&self) -> PermutationArray {
        let n = self.n;
        let mut pi = vec![0usize; n];
        for (i, j) in self.dots() {
            pi[j - 1] = i;
        }
        PermutationArray { n, pi }
    }

    /// The dihedral orbit under rotations and the transpose: up to 8
    /// distinct arrays, returned in ascending permutation order.
    pub fn d4_orbit(&self) -> Vec<PermutationArray> {
        let mut orbit = BTreeSet::new();
        let mut r = self.clone();
        for _ in 0..4 {
            orbit.insert(r.reflect_transpose());
            let next = r.rotate90();
            orbit.insert(r);
            r = next;
        }
        orbit.into_iter().collect()
    }

    /// Text format: one line with n, one line with the n values of pi.
    pub fn to_text(&self) -> String {
        let vals: Vec<String> = self.pi.iter().map(|v| v.to_string()).collect();
        format!("{}\n{}\n", self.n, vals.join(" "))
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing order line".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad order: {e}")))?;
        let values = lines.next().ok_or_else(|| Error::Parse("missing permutation line".into()))?;
        let pi: Vec<usize> = values
            .split_whitespace()
            .map(|tok| tok.parse().map_err(|e| Error::Parse(format!("bad value {tok:?}: {e}"))))
            .collect::<Result<_>>()?;
        if pi.len() != n {
            return Err(Error::Parse(format!("expected {n} values, found {}", pi.len())));
        }
        Self::new(pi)
    }

    /// Grid rendering with `X` for dots, row 1 at the top.
    pub fn render_grid(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for (_, j) in self.dots() {
            for col in 1..=self.n {
                out.push(if col == j { 'X' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

impl<'de> Deserialize<'de> for PermutationArray {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            pi: Vec<usize>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.pi.len() != raw.n {
            return Err(serde::de::Error::custom(format!(
                "pi has {} entries but n = {}",
                raw.pi.len(),
                raw.n
            )));
        }
        PermutationArray::new(raw.pi).map_err(serde::de::Error::custom)
    }
}
