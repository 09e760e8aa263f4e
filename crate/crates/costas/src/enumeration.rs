//! Exhaustive enumeration of Costas arrays by pruned backtracking.
//!
//! The search keeps, for every displacement k, an occupancy bitset of the
//! differences already realized by the partial permutation; a candidate
//! column survives only if it creates no repeated difference at any k.
//! No symmetry reduction is applied: the histogram counts raw arrays, so
//! canonical-form dedup would require an error-prone x8 correction.
//!
//! Work is sharded by the first-row value pi(1): the n subtrees are
//! independent, and merging shard results in first-value order reproduces
//! the single-threaded lexicographic output exactly.

use crate::arrays::{ParityCensus, PermutationArray};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Hard cap on the enumeration order; beyond desk scale the runtime grows
/// super-exponentially and the cap prevents accidental multi-day runs.
pub const ORDER_CAP: usize = 18;

/// Orders above this are intended to sit behind an explicit long-run flag.
pub const LONG_RUN_THRESHOLD: usize = 14;

struct Search {
    n: usize,
    prefix: Vec<usize>,
    used: u32,
    /// diffs[k-1] is a bitset over [-(n-1), n-1] (offset by n-1) of the
    /// differences pi(i+k) - pi(i) realized by the prefix.
    diffs: Vec<u64>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search { n, prefix: Vec::with_capacity(n), used: 0, diffs: vec![0; n.saturating_sub(1)] }
    }

    fn run<F: FnMut(&[usize])>(&mut self, visitor: &mut F) -> u64 {
        let t = self.prefix.len();
        if t == self.n {
            visitor(&self.prefix);
            return 1;
        }
        let mut count = 0;
        let offset = self.n as i64 - 1;
        for col in 1..=self.n {
            if self.used >> col & 1 == 1 {
                continue;
            }
            let mut ok = true;
            for k in 1..=t {
                let d = (col as i64 - self.prefix[t - k] as i64 + offset) as u64;
                if self.diffs[k - 1] >> d & 1 == 1 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for k in 1..=t {
                let d = (col as i64 - self.prefix[t - k] as i64 + offset) as u64;
                self.diffs[k - 1] |= 1 << d;
            }
            self.prefix.push(col);
            self.used |= 1 << col;
            count += self.run(visitor);
            self.prefix.pop();
            self.used &= !(1 << col);
            for k in 1..=t {
                let d = (col as i64 - self.prefix[t - k] as i64 + offset) as u64;
                self.diffs[k - 1] &= !(1 << d);
            }
        }
        count
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    if n > ORDER_CAP {
        return Err(Error::OrderTooLarge(n));
    }
    Ok(())
}

/// Visits every Costas permutation of order n exactly once, in
/// lexicographic order of pi, and returns the count.
pub fn enumerate_costas<F: FnMut(&PermutationArray)>(n: usize, mut visitor: F) -> Result<u64> {
    check_order(n)?;
    let mut search = Search::new(n);
    let mut count = 0;
    let mut raw = |pi: &[usize]| {
        count += 1;
        let arr = PermutationArray::new(pi.to_vec()).expect("search emits permutations");
        visitor(&arr);
    };
    search.run(&mut raw);
    Ok(count)
}

/// Visits the subtree with pi(1) = first, in lexicographic order.
pub fn enumerate_costas_shard<F: FnMut(&PermutationArray)>(
    n: usize,
    first: usize,
    mut visitor: F,
) -> Result<u64> {
    check_order(n)?;
    if first < 1 || first > n {
        return Err(Error::InvalidArgument(format!("shard value {first} out of range 1..={n}")));
    }
    let mut search = Search::new(n);
    search.prefix.push(first);
    search.used |= 1 << first;
    let mut count = 0;
    let mut raw = |pi: &[usize]| {
        count += 1;
        let arr = PermutationArray::new(pi.to_vec()).expect("search emits permutations");
        visitor(&arr);
    };
    search.run(&mut raw);
    Ok(count)
}

/// Histogram of parity censuses over all Costas arrays of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityHistogram {
    n: usize,
    counts: BTreeMap<ParityCensus, u64>,
    total: u64,
}

impl ParityHistogram {
    pub fn empty(n: usize) -> Self {
        ParityHistogram { n, counts: BTreeMap::new(), total: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn record(&mut self, census: ParityCensus) {
        *self.counts.entry(census).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn record_many(&mut self, census: ParityCensus, count: u64) {
        *self.counts.entry(census).or_insert(0) += count;
        self.total += count;
    }

    /// Rows in ascending census order (ee ascending, matching the
    /// reference table layout).
    pub fn rows(&self) -> impl Iterator<Item = (ParityCensus, u64)> + '_ {
        self.counts.iter().map(|(&c, &k)| (c, k))
    }

    pub fn count_of(&self, census: &ParityCensus) -> u64 {
        self.counts.get(census).copied().unwrap_or(0)
    }

    pub fn merge(&mut self, other: &ParityHistogram) {
        debug_assert_eq!(self.n, other.n);
        for (c, k) in other.rows() {
            self.record_many(c, k);
        }
    }

    /// Smallest odd/even count over all rows; None when empty.
    pub fn min_oe(&self) -> Option<usize> {
        self.rows().map(|(c, _)| c.oe).min()
    }

    /// CSV lines `n,ee,oo,eo,oe,count`, one per row.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for (c, k) in self.rows() {
            out.push_str(&format!("{},{},{},{},{},{}\n", self.n, c.ee, c.oo, c.eo, c.oe, k));
        }
        out
    }
}

impl Serialize for ParityHistogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            ee: usize,
            oo: usize,
            eo: usize,
            oe: usize,
            count: u64,
        }
        let rows: Vec<Row> = self
            .rows()
            .map(|(c, k)| Row { ee: c.ee, oo: c.oo, eo: c.eo, oe: c.oe, count: k })
            .collect();
        let mut s = serializer.serialize_struct("ParityHistogram", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("total", &self.total)?;
        s.serialize_field("rows", &rows)?;
        s.end()
    }
}

/// Parity histogram of all Costas arrays of order n, sharded by first-row
/// value across the rayon pool.
pub fn parity_histogram(n: usize) -> Result<ParityHistogram> {
    check_order(n)?;
    let shards: Vec<ParityHistogram> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut hist = ParityHistogram::empty(n);
            enumerate_costas_shard(n, first, |arr| hist.record(arr.parity_census()))
                .expect("order and shard validated");
            hist
        })
        .collect();
    let mut out = ParityHistogram::empty(n);
    for shard in &shards {
        out.merge(shard);
    }
    Ok(out)
}

/// True iff every Costas array of order n has at least one odd/even dot.
pub fn odd_even_dot_sweep(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidArgument("the odd/even dot check concerns n >= 3".into()));
    }
    let hist = parity_histogram(n)?;
    let all_have_oe = hist.rows().all(|(c, _)| c.oe >= 1);
    Ok(all_have_oe)
}

/// Minimum odd/even count over all Costas arrays of order n.
pub fn min_oe_survey(n: usize) -> Result<usize> {
    let hist = parity_histogram(n)?;
    hist.min_oe()
        .ok_or_else(|| Error::InvalidArgument(format!("no Costas arrays of order {n}")))
}

/// The reference parity-population table for orders 2..=15, keyed by order.
pub fn table1_reference() -> &'static BTreeMap<usize, ParityHistogram> {
    static TABLE: OnceLock<BTreeMap<usize, ParityHistogram>> = OnceLock::new();
    TABLE.get_or_init(|| {
        parse_table1_csv(include_str!("../data/table1.csv"))
            .expect("embedded reference table parses")
    })
}

/// Parses `n,ee,oo,eo,oe,count` rows (header optional) into per-order
/// histograms.
pub fn parse_table1_csv(text: &str) -> Result<BTreeMap<usize, ParityHistogram>> {
    let mut out: BTreeMap<usize, ParityHistogram> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('n') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(Error::Parse(format!("line {}: expected 6 fields", lineno + 1)));
        }
        let nums: Vec<u64> = fields
            .iter()
            .map(|f| f.parse().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1))))
            .collect::<Result<_>>()?;
        let n = nums[0] as usize;
        let census = ParityCensus {
            ee: nums[1] as usize,
            oo: nums[2] as usize,
            eo: nums[3] as usize,
            oe: nums[4] as usize,
        };
        out.entry(n).or_insert_with(|| ParityHistogram::empty(n)).record_many(census, nums[5]);
    }
    Ok(out)
}

/// Human-readable differences between a computed histogram and a golden
/// one; empty means exact agreement.
pub fn diff_histograms(computed: &ParityHistogram, golden: &ParityHistogram) -> Vec<String> {
    let mut diffs = Vec::new();
    for (c, k) in computed.rows() {
        let g = golden.count_of(&c);
        if g != k {
            diffs.push(format!(
                "n={} census ({},{},{},{}): computed {k}, golden {g}",
                computed.n(),
                c.ee,
                c.oo,
                c.eo,
                c.oe
            ));
        }
    }
    for (c, k) in golden.rows() {
        if computed.count_of(&c) == 0 && k != 0 {
            diffs.push(format!(
                "n={} census ({},{},{},{}): computed 0, golden {k}",
                golden.n(),
                c.ee,
                c.oo,
                c.eo,
                c.oe
            ));
        }
    }
    diffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_small_orders() {
        for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 12), (5, 40), (6, 116)] {
            let count = enumerate_costas(n, |_| {}).unwrap();
            assert_eq!(count, expected, "n = {n}");
        }
    }

    #[test]
    fn lexicographic_order() {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        enumerate_costas(4, |arr| seen.push(arr.pi().to_vec())).unwrap();
        assert_eq!(seen.first().unwrap(), &vec![1, 2, 4, 3]);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        sorted.dedup();
        assert_eq!(sorted.len(), seen.len());
    }

    #[test]
    fn every_visit_is_costas() {
        enumerate_costas(7, |arr| assert!(arr.is_costas().is_costas)).unwrap();
    }

    #[test]
    fn order_one_histogram() {
        let hist = parity_histogram(1).unwrap();
        assert_eq!(hist.total(), 1);
        assert_eq!(hist.count_of(&ParityCensus { ee: 0, oo: 1, eo: 0, oe: 0 }), 1);
    }

    #[test]
    fn order_two_histogram() {
        let hist = parity_histogram(2).unwrap();
        assert_eq!(hist.count_of(&ParityCensus { ee: 0, oo: 0, eo: 1, oe: 1 }), 1);
        assert_eq!(hist.count_of(&ParityCensus { ee: 1, oo: 1, eo: 0, oe: 0 }), 1);
    }

    #[test]
    fn order_seven_histogram() {
        let hist = parity_histogram(7).unwrap();
        let rows: Vec<(ParityCensus, u64)> = hist.rows().collect();
        assert_eq!(
            rows,
            vec![
                (ParityCensus { ee: 0, oo: 1, eo: 3, oe: 3 }, 20),
                (ParityCensus { ee: 1, oo: 2, eo: 2, oe: 2 }, 68),
                (ParityCensus { ee: 2, oo: 3, eo: 1, oe: 1 }, 112),
            ]
        );
    }

    #[test]
    fn shard_merge_equals_full() {
        let n = 7;
        let full = parity_histogram(n).unwrap();
        // Merge shards in an arbitrary grouping.
        let mut merged = ParityHistogram::empty(n);
        for group in [(1..=3).collect::<Vec<_>>(), (4..=n).collect()] {
            let mut part = ParityHistogram::empty(n);
            for first in group {
                enumerate_costas_shard(n, first, |arr| part.record(arr.parity_census())).unwrap();
            }
            merged.merge(&part);
        }
        assert_eq!(merged, full);
    }

    #[test]
    fn shard_sequences_concatenate_to_full() {
        let n = 6;
        let mut full = Vec::new();
        enumerate_costas(n, |arr| full.push(arr.pi().to_vec())).unwrap();
        let mut stitched = Vec::new();
        for first in 1..=n {
            enumerate_costas_shard(n, first, |arr| stitched.push(arr.pi().to_vec())).unwrap();
        }
        assert_eq!(full, stitched);
    }

    #[test]
    fn order_cap_enforced() {
        assert_eq!(enumerate_costas(19, |_| {}).unwrap_err(), Error::OrderTooLarge(19));
        assert!(enumerate_costas(0, |_| {}).is_err());
    }

    #[test]
    fn odd_even_dot_small_orders() {
        for n in 3..=8 {
            assert!(odd_even_dot_sweep(n).unwrap(), "n = {n}");
        }
        assert!(odd_even_dot_sweep(2).is_err());
    }

    #[test]
    fn even_order_histogram_symmetry() {
        // Rotation maps the census (ee,oo,eo,oe) to (oe,eo,ee,oo) when n
        // is even, so the histogram is symmetric under that swap.
        for n in [2, 4, 6, 8] {
            let hist = parity_histogram(n).unwrap();
            for (c, count) in hist.rows() {
                let swapped = ParityCensus { ee: c.oe, oo: c.eo, eo: c.ee, oe: c.oo };
                assert_eq!(hist.count_of(&swapped), count, "n = {n}, census {c}");
            }
        }
    }

    #[test]
    fn min_oe_values() {
        assert_eq!(min_oe_survey(3).unwrap(), 1);
        assert_eq!(min_oe_survey(4).unwrap(), 1);
        assert_eq!(min_oe_survey(9).unwrap(), 1);
        assert_eq!(min_oe_survey(1).unwrap(), 0);
    }

    #[test]
    fn reference_table_shape() {
        let table = table1_reference();
        assert_eq!(table.len(), 14); // orders 2..=15
        let totals: Vec<u64> = (2..=13).map(|n| table[&n].total()).collect();
        assert_eq!(
            totals,
            vec![2, 4, 12, 40, 116, 200, 444, 760, 2160, 4368, 7852, 12828]
        );
        assert_eq!(table[&14].total(), 17252);
        assert_eq!(table[&15].total(), 19612);
        assert_eq!(
            table[&15].count_of(&ParityCensus { ee: 6, oo: 7, eo: 1, oe: 1 }),
            8
        );
    }

    #[test]
    fn histogram_matches_reference_small() {
        for n in 2..=8 {
            assert_eq!(parity_histogram(n).unwrap(), table1_reference()[&n], "n = {n}");
        }
    }

    #[test]
    fn diff_reports_mismatches() {
        let mut a = ParityHistogram::empty(5);
        a.record_many(ParityCensus { ee: 0, oo: 1, eo: 2, oe: 2 }, 16);
        let mut b = a.clone();
        assert!(diff_histograms(&a, &b).is_empty());
        b.record_many(ParityCensus { ee: 1, oo: 2, eo: 1, oe: 1 }, 24);
        assert_eq!(diff_histograms(&a, &b).len(), 1);
    }

    #[test]
    fn histogram_json_layout() {
        let hist = parity_histogram(2).unwrap();
        let json = serde_json::to_string(&hist).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"total":2,"rows":[{"ee":0,"oo":0,"eo":1,"oe":1,"count":1},{"ee":1,"oo":1,"eo":0,"oe":0,"count":1}]}"#
        );
    }

    #[test]
    fn csv_rows_layout() {
        let hist = parity_histogram(3).unwrap();
        assert_eq!(hist.csv_rows(), "3,0,1,1,1,4\n");
    }
}
