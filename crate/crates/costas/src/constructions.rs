//! The two field-theoretic Costas constructions and their consequences:
//! Golomb arrays of order q-2 (dots where alpha^i + beta^j = 1), Welch
//! arrays of order p-1 (pi(i) = c * alpha^i mod p), predicted parity
//! censuses for odd characteristic, subfield projection, and the
//! even-characteristic gap spectrum experiment.

use crate::arrays::{ParityCensus, PermutationArray};
use crate::error::{Error, Result};
use crate::field::{
    self, factorize, mod_inverse, mod_pow, prime_power, FieldContext, FieldElement,
};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// Work guard for `all_golomb`: pair count times order must stay below this.
const ALL_GOLOMB_BUDGET: u64 = 1 << 25;

/// Cap on the extension degree accepted by `golomb_gap_spectrum`.
const GAP_SPECTRUM_MAX_F: u32 = 12;

/// Parameters of one Golomb array: a field and two generators of its
/// multiplicative group (alpha = beta is allowed; that is the Lempel case).
#[derive(Debug, Clone, Copy)]
pub struct GolombSpec<'a> {
    ctx: &'a FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
}

impl<'a> GolombSpec<'a> {
    pub fn new(ctx: &'a FieldContext, alpha: FieldElement, beta: FieldElement) -> Result<Self> {
        if ctx.q() < 4 {
            return Err(Error::InvalidArgument(format!(
                "Golomb construction needs q >= 4, got q = {}",
                ctx.q()
            )));
        }
        for g in [alpha, beta] {
            if ctx.element_order(g)? != ctx.group_order() {
                return Err(Error::NotGenerator(g.code()));
            }
        }
        Ok(GolombSpec { ctx, alpha, beta })
    }

    pub fn ctx(&self) -> &'a FieldContext {
        self.ctx
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }
}

/// Parameters of one Welch array: an odd prime, a primitive root alpha,
/// and a unit c.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WelchSpec {
    p: u64,
    alpha: u64,
    c: u64,
}

impl WelchSpec {
    pub fn new(p: u64, alpha: u64, c: u64) -> Result<Self> {
        if !field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::InvalidArgument("Welch construction needs an odd prime".into()));
        }
        if !is_primitive_root(p, alpha) {
            return Err(Error::NotGenerator(alpha));
        }
        if c == 0 || c >= p {
            return Err(Error::InvalidArgument(format!("c = {c} is not a unit mod {p}")));
        }
        Ok(WelchSpec { p, alpha, c })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn c(&self) -> u64 {
        self.c
    }
}

/// True iff a generates the multiplicative group mod the odd prime p.
pub fn is_primitive_root(p: u64, a: u64) -> bool {
    if a == 0 || a >= p {
        return false;
    }
    factorize(p - 1)
        .into_iter()
        .all(|(r, _)| mod_pow(a, (p - 1) / r, p) != 1)
}

/// All primitive roots mod p, ascending.
pub fn primitive_roots(p: u64) -> Vec<u64> {
    (1..p).filter(|&a| is_primitive_root(p, a)).collect()
}

/// Order q-2 array with pi(i) = log_beta(1 - alpha^i). The subtraction can
/// never hit 0 or 1 for i in [1, q-2], so the log lands in [1, q-2].
pub fn golomb(spec: &GolombSpec) -> PermutationArray {
    let ctx = spec.ctx;
    let q = ctx.q();
    let m = q - 1;
    let step = ctx.log_code(spec.alpha.code());
    let scale = ctx.log_scale(spec.beta).expect("beta validated as a generator");
    let mut pi = Vec::with_capacity((q - 2) as usize);
    let mut e = 0u64;
    for _ in 1..=q - 2 {
        e += step;
        if e >= m {
            e -= m;
        }
        let x = ctx.exp_code(e);
        let y = ctx.sub_code(1, x);
        debug_assert!(y != 0, "1 - alpha^i cannot vanish for i in [1, q-2]");
        let j = ctx.log_code(y) * scale % m;
        debug_assert!((1..=q - 2).contains(&j));
        pi.push(j as usize);
    }
    PermutationArray::new(pi).expect("Golomb construction yields a permutation")
}

/// Parity census of the Golomb array without materializing it.
pub fn golomb_census(spec: &GolombSpec) -> ParityCensus {
    let ctx = spec.ctx;
    let q = ctx.q();
    let m = q - 1;
    let step = ctx.log_code(spec.alpha.code());
    let scale = ctx.log_scale(spec.beta).expect("beta validated as a generator");
    let mut census = ParityCensus { ee: 0, oo: 0, eo: 0, oe: 0 };
    let mut e = 0u64;
    for i in 1..=q - 2 {
        e += step;
        if e >= m {
            e -= m;
        }
        let y = ctx.sub_code(1, ctx.exp_code(e));
        let j = ctx.log_code(y) * scale % m;
        match (i & 1, j & 1) {
            (0, 0) => census.ee += 1,
            (1, 1) => census.oo += 1,
            (0, 1) => census.eo += 1,
            _ => census.oe += 1,
        }
    }
    census
}

/// All phi(q-1)^2 Golomb specs over one field, ascending by (alpha, beta).
pub fn golomb_specs(ctx: &FieldContext) -> Result<Vec<GolombSpec<'_>>> {
    if ctx.q() < 4 {
        return Err(Error::InvalidArgument(format!(
            "Golomb construction needs q >= 4, got q = {}",
            ctx.q()
        )));
    }
    let gens = ctx.generators();
    let mut specs = Vec::with_capacity(gens.len() * gens.len());
    for &alpha in &gens {
        for &beta in &gens {
            specs.push(GolombSpec { ctx, alpha, beta });
        }
    }
    Ok(specs)
}

/// All Golomb arrays over one field, ascending by (alpha code, beta code).
pub fn all_golomb(ctx: &FieldContext) -> Result<Vec<(GolombSpec<'_>, PermutationArray)>> {
    let specs = golomb_specs(ctx)?;
    let work = specs.len() as u64 * (ctx.q() - 2);
    if work > ALL_GOLOMB_BUDGET {
        return Err(Error::SizeExceeded { requested: work, ceiling: ALL_GOLOMB_BUDGET });
    }
    Ok(specs.into_iter().map(|s| (s, golomb(&s))).collect())
}

/// Order p-1 array with pi(i) = c * alpha^i mod p; pi(p-1) = c.
pub fn welch(spec: &WelchSpec) -> PermutationArray {
    let WelchSpec { p, alpha, c } = *spec;
    let mut pi = Vec::with_capacity((p - 1) as usize);
    let mut j = c;
    for _ in 1..=p - 1 {
        j = j * alpha % p;
        pi.push(j as usize);
    }
    PermutationArray::new(pi).expect("Welch construction yields a permutation")
}

/// Parity census of the Welch array without materializing it.
pub fn welch_census(spec: &WelchSpec) -> ParityCensus {
    let WelchSpec { p, alpha, c } = *spec;
    let mut census = ParityCensus { ee: 0, oo: 0, eo: 0, oe: 0 };
    let mut j = c;
    for i in 1..=p - 1 {
        j = j * alpha % p;
        match (i & 1, j & 1) {
            (0, 0) => census.ee += 1,
            (1, 1) => census.oo += 1,
            (0, 1) => census.eo += 1,
            _ => census.oe += 1,
        }
    }
    census
}

/// All (p-1) * phi(p-1) Welch specs, ascending by (alpha, c).
pub fn welch_specs(p: u64) -> Result<Vec<WelchSpec>> {
    if !field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("Welch construction needs an odd prime".into()));
    }
    let mut specs = Vec::new();
    for alpha in primitive_roots(p) {
        for c in 1..p {
            specs.push(WelchSpec { p, alpha, c });
        }
    }
    Ok(specs)
}

/// All Welch arrays for p; exactly (p-1) * phi(p-1) pairwise-distinct arrays.
pub fn all_welch(p: u64) -> Result<Vec<(WelchSpec, PermutationArray)>> {
    Ok(welch_specs(p)?.into_iter().map(|s| (s, welch(&s))).collect())
}

/// Predicted census shared by every Golomb array over odd GF(q), q >= 5:
/// ee = (q-5)/4 and the rest (q-1)/4 when q = 1 mod 4; oo = (q+1)/4 and
/// the rest (q-3)/4 when q = 3 mod 4.
pub fn predict_golomb_census(q: u64) -> Result<ParityCensus> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if p == 2 {
        return Err(Error::EvenCharacteristic(q));
    }
    if q < 5 {
        return Err(Error::InvalidArgument(format!("prediction needs q >= 5, got {q}")));
    }
    let q = q as usize;
    Ok(if q % 4 == 1 {
        ParityCensus { ee: (q - 5) / 4, oo: (q - 1) / 4, eo: (q - 1) / 4, oe: (q - 1) / 4 }
    } else {
        ParityCensus { ee: (q - 3) / 4, oo: (q + 1) / 4, eo: (q - 3) / 4, oe: (q - 3) / 4 }
    })
}

/// Predicted census of every Welch array for p = 1 mod 4: all four counts
/// equal (p-1)/4. For p = 3 mod 4 the gap is governed by the class number;
/// see the residues module.
pub fn predict_welch_census(p: u64) -> Result<ParityCensus> {
    if !field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 1 {
        return Err(Error::WrongResidueClass(p));
    }
    let quarter = ((p - 1) / 4) as usize;
    Ok(ParityCensus { ee: quarter, oo: quarter, eo: quarter, oe: quarter })
}

/// r = (Q^e - 1)/(Q - 1), the row/column divisor linking GF(Q^e) Golomb
/// arrays to their GF(Q) subarrays; satisfies r*(Q-2) + (r-1) = Q^e - 2.
pub fn subfield_divisor(big_q: u64, e: u32) -> Result<u64> {
    if prime_power(big_q).is_none() {
        return Err(Error::NotPrimePower(big_q));
    }
    if e < 2 {
        return Err(Error::InvalidArgument("subfield divisor needs e >= 2".into()));
    }
    let qe = big_q
        .checked_pow(e)
        .ok_or(Error::SizeExceeded { requested: u64::MAX, ceiling: u64::MAX })?;
    Ok((qe - 1) / (big_q - 1))
}

/// All r in [2, n] such that every dot (i, j) with r | i also has r | j.
pub fn detect_divisors(p: &PermutationArray) -> Vec<usize> {
    (2..=p.n())
        .filter(|&r| p.dots().all(|(i, j)| i % r != 0 || j % r == 0))
        .collect()
}

/// Projects onto the order-m subarray (m = floor(n/r)) by mapping the dot
/// (ru, rv) to (u, v). Fails loudly when the divisibility hypothesis does
/// not hold for r; a silent partial projection would corrupt downstream
/// census statistics.
pub fn project(p: &PermutationArray, r: usize) -> Result<PermutationArray> {
    let n = p.n();
    if r < 2 || r > n {
        return Err(Error::DivisorHypothesisViolated(r));
    }
    if p.dots().any(|(i, j)| i % r == 0 && j % r != 0) {
        return Err(Error::DivisorHypothesisViolated(r));
    }
    let m = n / r;
    let pi: Vec<usize> = (1..=m).map(|u| p.at(r * u) / r).collect();
    PermutationArray::new(pi)
}

/// The set { ee - oe } over all phi(q-1)^2 Golomb arrays of even q = 2^f.
/// Every member is odd because ee + oe = (q-2)/2 is odd. The pair space is
/// sharded across workers; set union makes the merge order-independent.
pub fn golomb_gap_spectrum(ctx: &FieldContext) -> Result<BTreeSet<i64>> {
    if ctx.p() != 2 {
        return Err(Error::InvalidArgument(format!(
            "gap spectrum is defined for characteristic 2, got p = {}",
            ctx.p()
        )));
    }
    if ctx.f() < 3 {
        return Err(Error::InvalidArgument("gap spectrum needs q = 2^f with f >= 3".into()));
    }
    if ctx.f() > GAP_SPECTRUM_MAX_F {
        return Err(Error::SizeExceeded {
            requested: ctx.f() as u64,
            ceiling: GAP_SPECTRUM_MAX_F as u64,
        });
    }
    let q = ctx.q();
    let m = q - 1;
    let logs: Vec<u64> = ctx.generators().iter().map(|g| ctx.log_code(g.code())).collect();
    let pairs: Vec<(u64, u64)> = logs
        .iter()
        .flat_map(|&a| logs.iter().map(move |&b| (a, b)))
        .collect();
    Ok(pairs
        .par_iter()
        .map(|&(step, lb)| {
            let scale = mod_inverse(lb, m).expect("generator log is a unit mod q-1");
            let mut e = 0u64;
            let mut gap = 0i64;
            for i in 1..=q - 2 {
                e += step;
                if e >= m {
                    e -= m;
                }
                // Characteristic 2: 1 - x is the XOR of codes.
                let j = ctx.log_code(ctx.exp_code(e) ^ 1) * scale % m;
                if j & 1 == 0 {
                    if i & 1 == 0 {
                        gap += 1; // even/even dot
                    } else {
                        gap -= 1; // odd/even dot
                    }
                }
            }
            gap
        })
        .collect())
}

/// CLI-facing JSON record for one constructed array.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConstructionRecord {
    Golomb { q: u64, alpha: u64, beta: u64, pi: Vec<usize>, census: ParityCensus },
    Welch { p: u64, alpha: u64, c: u64, pi: Vec<usize>, census: ParityCensus },
}

impl ConstructionRecord {
    pub fn golomb(spec: &GolombSpec, array: &PermutationArray) -> Self {
        ConstructionRecord::Golomb {
            q: spec.ctx().q(),
            alpha: spec.alpha().code(),
            beta: spec.beta().code(),
            pi: array.pi().to_vec(),
            census: array.parity_census(),
        }
    }

    pub fn welch(spec: &WelchSpec, array: &PermutationArray) -> Self {
        ConstructionRecord::Welch {
            p: spec.p(),
            alpha: spec.alpha(),
            c: spec.c(),
            pi: array.pi().to_vec(),
            census: array.parity_census(),
        }
    }
}
