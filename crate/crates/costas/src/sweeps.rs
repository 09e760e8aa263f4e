//! Named invariant sweeps behind a common trait.
//!
//! Every verification suite in the crate (census predictions, class-number
//! cross-checks, projection chains, enumeration symmetries, ...) is a
//! strategy implementing [`Sweep`]: it names itself, describes its default
//! instance range, and checks one instance at a time. Strategies are
//! registered in [`registry`] and selected by name at runtime, which is
//! what the CLI `sweep --kind <name>` dispatches on.
//!
//! Instances are checked in parallel; each produces one machine-readable
//! pass/fail record, and record order is independent of the worker count.

use crate::arrays::{ParityCensus, PermutationArray};
use crate::constructions::{
    all_welch, detect_divisors, golomb, golomb_census, golomb_specs, golomb_gap_spectrum,
    predict_golomb_census, predict_welch_census, project, welch, welch_census, welch_specs,
};
use crate::enumeration::{enumerate_costas, odd_even_dot_sweep, ORDER_CAP};
use crate::error::Result;
use crate::field::{euler_phi, is_prime, prime_power, FieldContext};
use crate::residues::{
    check_group_action, class_number_forms, class_number_residues, oesterle_check,
    partition_abcd, welch_gap_check, ResiduePartition,
};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

/// Pseudorandom permutations checked per order by the parity-census sweep.
const PERMS_PER_ORDER: u64 = 2000;

/// One checked instance: pass/fail plus a short detail string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub instance: u64,
    pub pass: bool,
    pub detail: String,
}

/// All records of one sweep run, in ascending instance order.
#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub kind: &'static str,
    pub records: Vec<SweepRecord>,
}

impl SweepOutcome {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }
}

/// A named family of per-instance checks, selectable at runtime.
pub trait Sweep: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Inclusive instance range checked when the caller gives none.
    fn default_range(&self) -> (u64, u64);

    /// The instances of this sweep inside [lo, hi], ascending.
    fn instances(&self, lo: u64, hi: u64) -> Vec<u64>;

    fn check(&self, instance: u64) -> SweepRecord;

    /// Checks all instances in [lo, hi] across the rayon pool.
    fn run(&self, lo: u64, hi: u64) -> SweepOutcome
    where
        Self: Sized,
    {
        let records = self.instances(lo, hi).into_par_iter().map(|i| self.check(i)).collect();
        SweepOutcome { kind: self.name(), records }
    }
}

/// Runs a sweep through a trait object (object-safe variant of [`Sweep::run`]).
pub fn run_sweep(sweep: &dyn Sweep, lo: u64, hi: u64) -> SweepOutcome {
    let records = sweep
        .instances(lo, hi)
        .into_par_iter()
        .map(|i| sweep.check(i))
        .collect();
    SweepOutcome { kind: sweep.name(), records }
}

/// All registered sweeps, in presentation order.
pub fn registry() -> &'static [&'static dyn Sweep] {
    static REGISTRY: &[&dyn Sweep] = &[
        &GolombCensus,
        &WelchCensus,
        &WelchGap,
        &ClassNumberCross,
        &NoH2,
        &Oesterle,
        &GolombCostas,
        &WelchCostas,
        &WelchDistinct,
        &GroupAction,
        &PartitionSizes,
        &Projection,
        &OddEvenDot,
        &D4Closure,
        &EvenQGap,
        &WelchDivisors,
        &ParityIdentities,
    ];
    REGISTRY
}

/// Looks a sweep up by its registered name.
pub fn find(name: &str) -> Option<&'static dyn Sweep> {
    registry().iter().copied().find(|s| s.name() == name)
}

fn run_check(instance: u64, body: impl FnOnce() -> Result<(bool, String)>) -> SweepRecord {
    match body() {
        Ok((pass, detail)) => SweepRecord { instance, pass, detail },
        Err(e) => SweepRecord { instance, pass: false, detail: format!("error: {e}") },
    }
}

fn primes_in(lo: u64, hi: u64, class: impl Fn(u64) -> bool) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&p| is_prime(p) && class(p)).collect()
}

fn odd_prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi)
        .filter(|&q| matches!(prime_power(q), Some((p, _)) if p != 2))
        .collect()
}

fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

fn field_for(q: u64) -> Result<FieldContext> {
    let (p, f) = prime_power(q).ok_or(crate::error::Error::NotPrimePower(q))?;
    FieldContext::new(p, f)
}

/// Golomb arrays over odd GF(q) all share the predicted parity census.
struct GolombCensus;

impl Sweep for GolombCensus {
    fn name(&self) -> &'static str {
        "golomb-census"
    }

    fn description(&self) -> &'static str {
        "every Golomb array over odd GF(q) has the predicted parity census"
    }

    fn default_range(&self) -> (u64, u64) {
        (5, 243)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        odd_prime_powers(lo.max(5), hi)
    }

    fn check(&self, q: u64) -> SweepRecord {
        run_check(q, || {
            let ctx = field_for(q)?;
            let expected = predict_golomb_census(q)?;
            let specs = golomb_specs(&ctx)?;
            for spec in &specs {
                let census = golomb_census(spec);
                if census != expected {
                    return Ok((
                        false,
                        format!(
                            "alpha={} beta={} census {census} != predicted {expected}",
                            spec.alpha().code(),
                            spec.beta().code()
                        ),
                    ));
                }
            }
            Ok((true, format!("pairs={} census {expected}", specs.len())))
        })
    }
}

/// Welch arrays for p = 1 mod 4 have the uniform census (p-1)/4.
struct WelchCensus;

impl Sweep for WelchCensus {
    fn name(&self) -> &'static str {
        "welch-census"
    }

    fn description(&self) -> &'static str {
        "every Welch array for p = 1 mod 4 has the uniform census (p-1)/4"
    }

    fn default_range(&self) -> (u64, u64) {
        (5, 1009)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        primes_in(lo.max(5), hi, |p| p % 4 == 1)
    }

    fn check(&self, p: u64) -> SweepRecord {
        run_check(p, || {
            let expected = predict_welch_census(p)?;
            let specs = welch_specs(p)?;
            for spec in &specs {
                let census = welch_census(spec);
                if census != expected {
                    return Ok((
                        false,
                        format!(
                            "alpha={} c={} census {census} != predicted {expected}",
                            spec.alpha(),
                            spec.c()
                        ),
                    ));
                }
            }
            Ok((true, format!("arrays={} census {expected}", specs.len())))
        })
    }
}

/// For p = 3 mod 4 every Welch gap |ee - oe| equals h(-p) or 3h(-p), with
/// both signs realized across the square/non-square c classes.
struct WelchGap;

impl Sweep for WelchGap {
    fn name(&self) -> &'static str {
        "welch-gap"
    }

    fn description(&self) -> &'static str {
        "|ee - oe| of every Welch array equals h(-p) (p = 7 mod 8) or 3h(-p) (p = 3 mod 8)"
    }

    fn default_range(&self) -> (u64, u64) {
        (7, 499)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        primes_in(lo.max(7), hi, |p| p % 4 == 3)
    }

    fn check(&self, p: u64) -> SweepRecord {
        run_check(p, || {
            let report = welch_gap_check(p)?;
            if !report.pass {
                return Ok((false, format!("two-class check failed: {report:?}")));
            }
            let expected = report.expected_gap;
            let mut signs = [false, false];
            for spec in welch_specs(p)? {
                let census = welch_census(&spec);
                let gap = census.ee as i64 - census.oe as i64;
                if gap.unsigned_abs() != expected {
                    return Ok((
                        false,
                        format!("alpha={} c={} gap {gap} != +-{expected}", spec.alpha(), spec.c()),
                    ));
                }
                signs[usize::from(gap > 0)] = true;
            }
            Ok((
                signs[0] && signs[1],
                format!("h={} expected_gap={expected} both_signs={}", report.h_forms, signs[0] && signs[1]),
            ))
        })
    }
}

/// The reduced-forms count and the residue formula agree on h(-p).
struct ClassNumberCross;

impl Sweep for ClassNumberCross {
    fn name(&self) -> &'static str {
        "classnumber"
    }

    fn description(&self) -> &'static str {
        "class number by reduced forms equals the residue-count formula"
    }

    fn default_range(&self) -> (u64, u64) {
        (7, 2000)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        primes_in(lo.max(7), hi, |p| p % 4 == 3)
    }

    fn check(&self, p: u64) -> SweepRecord {
        run_check(p, || {
            let forms = class_number_forms(p)?;
            let residues = class_number_residues(p)?;
            Ok((forms == residues, format!("h_forms={forms} h_residues={residues}")))
        })
    }
}

/// No prime p = 3 mod 4 has h(-p) = 2.
struct NoH2;

impl Sweep for NoH2 {
    fn name(&self) -> &'static str {
        "no-h2"
    }

    fn description(&self) -> &'static str {
        "h(-p) != 2 for every prime p = 3 mod 4 in range"
    }

    fn default_range(&self) -> (u64, u64) {
        (7, 2000)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        primes_in(lo.max(7), hi, |p| p % 4 == 3)
    }

    fn check(&self, p: u64) -> SweepRecord {
        run_check(p, || {
            let h = class_number_forms(p)?;
            Ok((h != 2, format!("h={h}")))
        })
    }
}

/// Oesterle's lower bound h(-p) >= (1/55) ln p.
struct Oesterle;

impl Sweep for Oesterle {
    fn name(&self) -> &'static str {
        "oesterle"
    }

    fn description(&self) -> &'static str {
        "h(-p) >= (1/55) ln p"
    }

    fn default_range(&self) -> (u64, u64) {
        (7, 2000)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        primes_in(lo.max(7), hi, |p| p % 4 == 3)
    }

    fn check(&self, p: u64) -> SweepRecord {
        run_check(p, || {
            let ok = oesterle_check(p)?;
            Ok((ok, format!("h={} bound={:.4}", class_number_forms(p)?, (p as f64).ln() / 55.0)))
        })
    }
}

/// Every Golomb array passes the Costas verifier.
struct GolombCostas;

impl Sweep for GolombCostas {
    fn name(&self) -> &'static str {
        "golomb-costas"
    }

    fn description(&self) -> &'static str {
        "every Golomb array over GF(q) passes the Costas check"
    }

    fn default_range(&self) -> (u64, u64) {
        (4, 128)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        prime_powers(lo.max(4), hi)
    }

    fn check(&self, q: u64) -> SweepRecord {
        run_check(q, || {
            let ctx = field_for(q)?;
            let specs = golomb_specs(&ctx)?;
            for spec in &specs {
                let verdict = golomb(spec).is_costas();
                if !verdict.is_costas {
                    return Ok((
                        false,
                        format!(
                            "alpha={} beta={} witness {:?}",
                            spec.alpha().code(),
                            spec.beta().code(),
                            verdict.witness
                        ),
                    ));
                }
            }
            Ok((true, format!("pairs={}", specs.len())))
        })
    }
}

/// Every Welch array passes the Costas verifier.
struct WelchCostas;

impl Sweep for WelchCostas {
    fn name(&self) -> &'static str {
        "welch-costas"
    }

    fn description(&self) -> &'static str {
        "every Welch array mod p passes the Costas check"
    }

    fn default_range(&self) -> (u64, u64) {
        (3, 200)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        primes_in(lo.max(3), hi, |p| p % 2 == 1)
    }

    fn check(&self, p: u64) -> SweepRecord {
        run_check(p, || {
            let specs = welch_specs(p)?;
            for spec in &specs {
                let verdict = welch(spec).is_costas();
                if !verdict.is_costas {
                    return Ok((
                        false,
                        format!("alpha={} c={} witness {:?}", spec.alpha(), spec.c(), verdict.witness),
                    ));
                }
            }
            Ok((true, format!("arrays={}", specs.len())))
        })
    }
}

/// all_welch yields exactly (p-1) phi(p-1) pairwise-distinct permutations.
struct WelchDistinct;

impl Sweep for WelchDistinct {
    fn name(&self) -> &'static str {
        "welch-distinct"
    }

    fn description(&self) -> &'static str {
        "the (p-1) phi(p-1) Welch arrays are pairwise distinct"
    }

    fn default_range(&self) -> (u64, u64) {
        (3, 200)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        primes_in(lo.max(3), hi, |p| p % 2 == 1)
    }

    fn check(&self, p: u64) -> SweepRecord {
        run_check(p, || {
            let arrays = all_welch(p)?;
            let expected = ((p - 1) * euler_phi(p - 1)) as usize;
            let distinct: HashSet<&[usize]> = arrays.iter().map(|(_, a)| a.pi()).collect();
            Ok((
                arrays.len() == expected && distinct.len() == expected,
                format!("count={} distinct={} expected={expected}", arrays.len(), distinct.len()),
            ))
        })
    }
}

/// The maps z -> 1-z and z -> 1/z act on A/B/C/D exactly as predicted.
struct GroupAction;

impl Sweep for GroupAction {
    fn name(&self) -> &'static str {
        "group-action"
    }

    fn description(&self) -> &'static str {
        "the S3 action of 1-z and 1/z permutes the A/B/C/D partition as predicted"
    }

    fn default_range(&self) -> (u64, u64) {
        (5, 243)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        odd_prime_powers(lo.max(5), hi)
    }

    fn check(&self, q: u64) -> SweepRecord {
        run_check(q, || {
            let ctx = field_for(q)?;
            let report = check_group_action(&ctx)?;
            let detail = match report.counterexample {
                Some(z) => format!("counterexample z={z}"),
                None => "holds".into(),
            };
            Ok((report.holds, detail))
        })
    }
}

/// The A/B/C/D sizes match their closed forms.
struct PartitionSizes;

impl Sweep for PartitionSizes {
    fn name(&self) -> &'static str {
        "partition-sizes"
    }

    fn description(&self) -> &'static str {
        "the A/B/C/D subset sizes match the closed forms for odd q"
    }

    fn default_range(&self) -> (u64, u64) {
        (5, 243)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        odd_prime_powers(lo.max(5), hi)
    }

    fn check(&self, q: u64) -> SweepRecord {
        run_check(q, || {
            let ctx = field_for(q)?;
            let parts = partition_abcd(&ctx)?;
            let got = parts.sizes();
            let want = ResiduePartition::expected_sizes(q);
            let (a, b, c, d) = got;
            let halves_ok = a + c == (q as usize - 3) / 2 && b + d == (q as usize - 1) / 2;
            Ok((
                got == want && halves_ok,
                format!("sizes=({a},{b},{c},{d}) expected={want:?}"),
            ))
        })
    }
}

/// Subfield projection: for q = Q^e the divisor r = (q-1)/(Q-1) holds on
/// every Golomb array, projection yields an order Q-2 Costas array, and
/// for Q >= 5 the projection is itself a Golomb array over GF(Q).
struct Projection;

impl Sweep for Projection {
    fn name(&self) -> &'static str {
        "projection"
    }

    fn description(&self) -> &'static str {
        "Golomb arrays over GF(Q^e) project through r = (Q^e-1)/(Q-1) onto Golomb arrays over GF(Q)"
    }

    fn default_range(&self) -> (u64, u64) {
        (9, 81)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        (lo.max(4)..=hi)
            .filter(|&q| matches!(prime_power(q), Some((_, f)) if f >= 2))
            .collect()
    }

    fn check(&self, q: u64) -> SweepRecord {
        run_check(q, || {
            let (p, f) = prime_power(q).expect("instances are prime powers");
            let ctx = field_for(q)?;
            let specs = golomb_specs(&ctx)?;
            let mut chains = 0;
            for d in (1..f).filter(|d| f % d == 0) {
                let big_q = p.pow(d);
                if big_q < 4 {
                    continue; // Q = 2 or 3: the substructure is vacuous or order 1
                }
                let r = ((q - 1) / (big_q - 1)) as usize;
                let sub_order = (big_q - 2) as usize;
                let members: Option<HashSet<Vec<usize>>> = if big_q >= 5 {
                    let sub_ctx = field_for(big_q)?;
                    Some(
                        golomb_specs(&sub_ctx)?
                            .iter()
                            .map(|s| golomb(s).pi().to_vec())
                            .collect(),
                    )
                } else {
                    None
                };
                for spec in &specs {
                    let arr = golomb(spec);
                    if !detect_divisors(&arr).contains(&r) {
                        return Ok((false, format!("Q={big_q} r={r} not detected")));
                    }
                    let sub = project(&arr, r)?;
                    if sub.n() != sub_order || !sub.is_costas().is_costas {
                        return Ok((
                            false,
                            format!("Q={big_q} r={r} projection order {} not Costas", sub.n()),
                        ));
                    }
                    if let Some(members) = &members {
                        if !members.contains(sub.pi()) {
                            return Ok((
                                false,
                                format!("Q={big_q} projection is not a Golomb array over GF({big_q})"),
                            ));
                        }
                    }
                }
                chains += 1;
            }
            Ok((true, format!("pairs={} subfield_chains={chains}", specs.len())))
        })
    }
}

/// Every Costas array of order n >= 3 has an odd/even dot.
struct OddEvenDot;

impl Sweep for OddEvenDot {
    fn name(&self) -> &'static str {
        "odd-even-dot"
    }

    fn description(&self) -> &'static str {
        "every enumerated Costas array of order n has at least one odd/even dot"
    }

    fn default_range(&self) -> (u64, u64) {
        (3, 10)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        (lo.max(3)..=hi.min(ORDER_CAP as u64)).collect()
    }

    fn check(&self, n: u64) -> SweepRecord {
        run_check(n, || {
            let ok = odd_even_dot_sweep(n as usize)?;
            Ok((ok, String::from(if ok { "all oe >= 1" } else { "found oe = 0" })))
        })
    }
}

/// The enumerated set of one order is closed under the dihedral orbit and
/// the orbit preserves the Costas property.
struct D4Closure;

impl Sweep for D4Closure {
    fn name(&self) -> &'static str {
        "d4-closure"
    }

    fn description(&self) -> &'static str {
        "the set of Costas arrays of order n is closed under rotation and transposition"
    }

    fn default_range(&self) -> (u64, u64) {
        (3, 8)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        (lo.max(1)..=hi.min(ORDER_CAP as u64)).collect()
    }

    fn check(&self, n: u64) -> SweepRecord {
        run_check(n, || {
            let mut all: Vec<PermutationArray> = Vec::new();
            enumerate_costas(n as usize, |arr| all.push(arr.clone()))?;
            let set: HashSet<&[usize]> = all.iter().map(|a| a.pi()).collect();
            for arr in &all {
                for member in arr.d4_orbit() {
                    if !member.is_costas().is_costas {
                        return Ok((false, format!("orbit of {:?} leaves the Costas set", arr.pi())));
                    }
                    if !set.contains(member.pi()) {
                        return Ok((false, format!("orbit of {:?} not in enumeration", arr.pi())));
                    }
                }
            }
            Ok((true, format!("arrays={}", all.len())))
        })
    }
}

/// Even-characteristic gap spectra contain odd values only.
struct EvenQGap;

impl Sweep for EvenQGap {
    fn name(&self) -> &'static str {
        "evenq-gap"
    }

    fn description(&self) -> &'static str {
        "every ee - oe gap over GF(2^f) Golomb arrays is odd (instance = f)"
    }

    fn default_range(&self) -> (u64, u64) {
        (3, 8)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        (lo.max(3)..=hi).collect()
    }

    fn check(&self, f: u64) -> SweepRecord {
        run_check(f, || {
            let ctx = FieldContext::new(2, f as u32)?;
            let spectrum = golomb_gap_spectrum(&ctx)?;
            let all_odd = spectrum.iter().all(|g| g.rem_euclid(2) == 1);
            let min = spectrum.iter().next().copied().unwrap_or(0);
            let max = spectrum.iter().next_back().copied().unwrap_or(0);
            Ok((all_odd, format!("members={} min={min} max={max}", spectrum.len())))
        })
    }
}

/// Exploratory: report which divisors satisfy the projection hypothesis
/// on Welch arrays. No expected outcome is asserted.
struct WelchDivisors;

impl Sweep for WelchDivisors {
    fn name(&self) -> &'static str {
        "welch-divisors"
    }

    fn description(&self) -> &'static str {
        "report detected projection divisors on Welch arrays (exploratory, never fails)"
    }

    fn default_range(&self) -> (u64, u64) {
        (5, 100)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        primes_in(lo.max(3), hi, |p| p % 2 == 1)
    }

    fn check(&self, p: u64) -> SweepRecord {
        run_check(p, || {
            let mut found: Vec<(u64, u64, Vec<usize>)> = Vec::new();
            for spec in welch_specs(p)? {
                let rs = detect_divisors(&welch(&spec));
                if !rs.is_empty() {
                    found.push((spec.alpha(), spec.c(), rs));
                }
            }
            let detail = if found.is_empty() {
                "no divisors detected".to_string()
            } else {
                format!("divisors detected: {found:?}")
            };
            Ok((true, detail))
        })
    }
}

/// The parity-census identities hold on pseudorandom permutations.
struct ParityIdentities;

impl Sweep for ParityIdentities {
    fn name(&self) -> &'static str {
        "parity-census"
    }

    fn description(&self) -> &'static str {
        "census identities (sum, eo = oe, oo - ee) on seeded random permutations"
    }

    fn default_range(&self) -> (u64, u64) {
        (1, 50)
    }

    fn instances(&self, lo: u64, hi: u64) -> Vec<u64> {
        (lo.max(1)..=hi).collect()
    }

    fn check(&self, n: u64) -> SweepRecord {
        run_check(n, || {
            for trial in 0..PERMS_PER_ORDER {
                let perm = seeded_permutation(n as usize, n * 1_000_003 + trial);
                let arr = PermutationArray::new(perm)?;
                let census = arr.parity_census();
                if !census.satisfies_identities(n as usize) {
                    return Ok((false, format!("census {census} violates identities")));
                }
                let rot = arr.rotate90().parity_census();
                if n % 2 == 0 {
                    let expected =
                        ParityCensus { ee: census.oe, oo: census.eo, eo: census.ee, oe: census.oo };
                    if rot != expected {
                        return Ok((false, format!("rotation census {rot} != {expected}")));
                    }
                }
            }
            Ok((true, format!("perms={PERMS_PER_ORDER}")))
        })
    }
}

/// Deterministic Fisher-Yates shuffle of 1..=n driven by an xorshift state.
fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).max(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut perm: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    perm
}
