//! Quadratic-residue machinery: the A/B/C/D partition of the field minus
//! {0, 1}, the S3 action generated by z -> 1-z and z -> 1/z, residue
//! counts over half-intervals, the class number h(-p) computed by two
//! independent routes, and the Welch-array gap check that ties the parity
//! census to h(-p) for p = 3 mod 4.
//!
//! The reduced-forms count is the ground truth: it is independent of every
//! residue computation it validates, so the two class-number routes cannot
//! fail in lockstep.

use crate::arrays::ParityCensus;
use crate::constructions::{primitive_roots, welch_census, WelchSpec};
use crate::error::{Error, Result};
use crate::field::{is_prime, mod_pow, FieldContext};
use serde::Serialize;

/// Upper bound accepted by `no_h2_check`.
pub const NO_H2_MAX_BOUND: u64 = 100_000;

/// True iff z is a nonzero square. In odd characteristic this is the
/// parity of the discrete log; in characteristic 2 squaring is a bijection
/// so every element qualifies.
pub fn is_square(ctx: &FieldContext, z: crate::field::FieldElement) -> Result<bool> {
    if z.is_zero() {
        return Err(Error::ZeroElement);
    }
    if ctx.p() == 2 {
        return Ok(true);
    }
    Ok(ctx.discrete_log(z)? % 2 == 0)
}

/// Euler criterion: z^((p-1)/2) = 1 mod p.
pub fn is_square_mod(p: u64, z: u64) -> Result<bool> {
    if z % p == 0 {
        return Err(Error::ZeroElement);
    }
    Ok(mod_pow(z, (p - 1) / 2, p) == 1)
}

/// Legendre symbol (a|p) in {-1, 0, 1} for an odd prime p.
pub fn legendre_symbol(a: u64, p: u64) -> i32 {
    if a % p == 0 {
        0
    } else if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// The partition of the field minus {0, 1} by squareness of z and 1 - z:
/// A has both square, B neither, C only z, D only 1 - z.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResiduePartition {
    pub q: u64,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub d: Vec<u64>,
}

impl ResiduePartition {
    pub fn sizes(&self) -> (usize, usize, usize, usize) {
        (self.a.len(), self.b.len(), self.c.len(), self.d.len())
    }

    /// Closed-form sizes: (|A|, |B|, |C|, |D|).
    pub fn expected_sizes(q: u64) -> (usize, usize, usize, usize) {
        let q = q as usize;
        if q % 4 == 1 {
            ((q - 5) / 4, (q - 1) / 4, (q - 1) / 4, (q - 1) / 4)
        } else {
            ((q - 3) / 4, (q + 1) / 4, (q - 3) / 4, (q - 3) / 4)
        }
    }
}

/// Splits the field minus {0, 1} into A, B, C, D with members in
/// ascending code order.
pub fn partition_abcd(ctx: &FieldContext) -> Result<ResiduePartition> {
    if ctx.p() == 2 {
        return Err(Error::EvenCharacteristic(ctx.q()));
    }
    if ctx.q() < 5 {
        return Err(Error::InvalidArgument(format!(
            "partition needs q >= 5, got q = {}",
            ctx.q()
        )));
    }
    let one = ctx.one();
    let mut parts = ResiduePartition {
        q: ctx.q(),
        a: Vec::new(),
        b: Vec::new(),
        c: Vec::new(),
        d: Vec::new(),
    };
    for z in ctx.elements().filter(|z| z.code() >= 2) {
        let zs = is_square(ctx, z)?;
        let ws = is_square(ctx, ctx.sub(one, z))?;
        match (zs, ws) {
            (true, true) => parts.a.push(z.code()),
            (false, false) => parts.b.push(z.code()),
            (true, false) => parts.c.push(z.code()),
            (false, true) => parts.d.push(z.code()),
        }
    }
    Ok(parts)
}

/// Result of verifying the S3 action on the A/B/C/D partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupActionReport {
    pub holds: bool,
    /// Code of the first element violating a relation, when one exists.
    pub counterexample: Option<u64>,
}

/// Verifies that sigma(z) = 1 - z and tau(z) = 1/z generate an S3 action
/// on the field minus {0, 1} (sigma^2 = tau^2 = (sigma tau)^3 = id) and
/// permute A, B, C, D exactly as predicted: for q = 1 mod 4, sigma and
/// tau fix A, sigma(C) = D and tau(B) = D; for q = 3 mod 4, tau(A) = C,
/// sigma(C) = D and sigma, tau fix B.
pub fn check_group_action(ctx: &FieldContext) -> Result<GroupActionReport> {
    let parts = partition_abcd(ctx)?;
    let one = ctx.one();
    let sigma = |z| ctx.sub(one, z);
    let tau = |z| ctx.inv(z).expect("nonzero by construction");

    #[derive(PartialEq, Clone, Copy)]
    enum Class {
        A,
        B,
        C,
        D,
    }
    let mut class = vec![Class::A; ctx.q() as usize];
    for &z in &parts.b {
        class[z as usize] = Class::B;
    }
    for &z in &parts.c {
        class[z as usize] = Class::C;
    }
    for &z in &parts.d {
        class[z as usize] = Class::D;
    }
    let class_of = |z: crate::field::FieldElement| class[z.code() as usize];

    for z in ctx.elements().filter(|z| z.code() >= 2) {
        // Involutions and the order-3 composite.
        let st = sigma(tau(z));
        if sigma(sigma(z)) != z || tau(tau(z)) != z || sigma(tau(sigma(tau(st)))) != z {
            return Ok(GroupActionReport { holds: false, counterexample: Some(z.code()) });
        }
        let ok = if ctx.q() % 4 == 1 {
            match class_of(z) {
                Class::A => class_of(sigma(z)) == Class::A && class_of(tau(z)) == Class::A,
                Class::C => class_of(sigma(z)) == Class::D,
                Class::B => class_of(tau(z)) == Class::D,
                Class::D => true,
            }
        } else {
            match class_of(z) {
                Class::A => class_of(tau(z)) == Class::C,
                Class::C => class_of(sigma(z)) == Class::D,
                Class::B => class_of(sigma(z)) == Class::B && class_of(tau(z)) == Class::B,
                Class::D => true,
            }
        };
        if !ok {
            return Ok(GroupActionReport { holds: false, counterexample: Some(z.code()) });
        }
    }
    Ok(GroupActionReport { holds: true, counterexample: None })
}

/// Counts of squares (V) and non-squares (N) among integers in the open
/// interval (0, p/2); V + N = (p-1)/2.
pub fn count_vn(p: u64) -> Result<(usize, usize)> {
    require_odd_prime(p)?;
    let mut v = 0;
    let mut n = 0;
    for x in 1..=(p - 1) / 2 {
        if is_square_mod(p, x)? {
            v += 1;
        } else {
            n += 1;
        }
    }
    Ok((v, n))
}

/// Counts of even quadratic residues (E) and even non-residues (F) in
/// [1, p-1].
pub fn count_ef(p: u64) -> Result<(usize, usize)> {
    require_odd_prime(p)?;
    let mut e = 0;
    let mut f = 0;
    let mut x = 2;
    while x < p {
        if is_square_mod(p, x)? {
            e += 1;
        } else {
            f += 1;
        }
        x += 2;
    }
    Ok((e, f))
}

/// Class number of Q(sqrt(-p)) for p = 3 mod 4, p >= 7, by counting
/// reduced primitive binary quadratic forms (a, b, c) of discriminant
/// b^2 - 4ac = -p: |b| <= a <= c with b > 0 at the boundary ties. The
/// discriminant -p = 1 mod 4 forces b odd, and a prime discriminant makes
/// every form primitive.
pub fn class_number_forms(p: u64) -> Result<u64> {
    require_class_number_prime(p)?;
    let mut count = 0u64;
    let mut a = 1u64;
    while 3 * a * a <= p {
        let mut b = 1u64;
        while b <= a {
            let num = b * b + p;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a {
                    // (a, b, c) is reduced; (a, -b, c) is a distinct reduced
                    // form unless |b| = a or a = c.
                    count += 1;
                    if b != a && a != c {
                        count += 1;
                    }
                }
            }
            b += 2;
        }
        a += 1;
    }
    Ok(count)
}

/// Class number via the residue-count route: h = (V - N)/(2 - (2|p)),
/// i.e. V - N for p = 7 mod 8 and (V - N)/3 for p = 3 mod 8.
pub fn class_number_residues(p: u64) -> Result<u64> {
    require_class_number_prime(p)?;
    let (v, n) = count_vn(p)?;
    let denom = (2 - legendre_symbol(2, p)) as usize;
    if v <= n || (v - n) % denom != 0 {
        return Err(Error::NonIntegral { p, v, n });
    }
    Ok(((v - n) / denom) as u64)
}

/// h(-p) by both routes plus the residue counts feeding the gap theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassNumberReport {
    pub p: u64,
    pub h_forms: u64,
    pub h_residues: Option<u64>,
    pub v: usize,
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub legendre2: i32,
}

/// Computes the full report. If the residue route ever disagreed with the
/// forms oracle the forms value prevails; the report carries both so the
/// discrepancy is visible rather than silently patched.
pub fn class_number_report(p: u64) -> Result<ClassNumberReport> {
    let h_forms = class_number_forms(p)?;
    let (v, n) = count_vn(p)?;
    let (e, f) = count_ef(p)?;
    Ok(ClassNumberReport {
        p,
        h_forms,
        h_residues: class_number_residues(p).ok(),
        v,
        n,
        e,
        f,
        legendre2: legendre_symbol(2, p),
    })
}

/// Outcome of measuring the Welch census gap for one prime p = 3 mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WelchGapReport {
    pub p: u64,
    pub h_forms: u64,
    /// h(-p) for p = 7 mod 8, otherwise 3 h(-p).
    pub expected_gap: u64,
    pub gap_square_c: i64,
    pub gap_nonsquare_c: i64,
    pub census_square_c: ParityCensus,
    pub census_nonsquare_c: ParityCensus,
    pub pass: bool,
}

/// Builds one Welch array per c-class (c = 1 square, smallest non-residue
/// otherwise) with the smallest primitive root and checks that |ee - oe|
/// equals the class-number prediction with opposite signs across the two
/// classes. Only |gap| is asserted; the theorem states a plus-minus.
pub fn welch_gap_check(p: u64) -> Result<WelchGapReport> {
    let h_forms = class_number_forms(p)?;
    let expected_gap = if p % 8 == 7 { h_forms } else { 3 * h_forms };
    let alpha = *primitive_roots(p).first().expect("odd prime has a primitive root");
    let c_nonsquare = (2..p)
        .find(|&c| !is_square_mod(p, c).unwrap_or(false))
        .expect("half the units are non-residues");

    let census_square_c = welch_census(&WelchSpec::new(p, alpha, 1)?);
    let census_nonsquare_c = welch_census(&WelchSpec::new(p, alpha, c_nonsquare)?);
    let gap_square_c = census_square_c.ee as i64 - census_square_c.oe as i64;
    let gap_nonsquare_c = census_nonsquare_c.ee as i64 - census_nonsquare_c.oe as i64;
    let pass = gap_square_c.unsigned_abs() == expected_gap
        && gap_nonsquare_c.unsigned_abs() == expected_gap
        && gap_square_c == -gap_nonsquare_c;
    Ok(WelchGapReport {
        p,
        h_forms,
        expected_gap,
        gap_square_c,
        gap_nonsquare_c,
        census_square_c,
        census_nonsquare_c,
        pass,
    })
}

/// Oesterle bound: h(-p) >= (1/55) ln p.
pub fn oesterle_check(p: u64) -> Result<bool> {
    let h = class_number_forms(p)?;
    Ok(h as f64 >= (p as f64).ln() / 55.0)
}

/// Confirms h(-p) != 2 for every prime p = 3 mod 4 with 7 <= p <= bound.
pub fn no_h2_check(bound: u64) -> Result<bool> {
    if bound > NO_H2_MAX_BOUND {
        return Err(Error::SizeExceeded { requested: bound, ceiling: NO_H2_MAX_BOUND });
    }
    for p in (7..=bound).filter(|&p| p % 4 == 3 && is_prime(p)) {
        if class_number_forms(p)? == 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic(2));
    }
    Ok(())
}

/// Class-number operations need p prime, p = 3 mod 4 and p >= 7; p = 3 is
/// excluded because Q(sqrt(-3)) has six units and the residue formula
/// breaks down there.
fn require_class_number_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 3 {
        return Err(Error::WrongResidueClass(p));
    }
    if p < 7 {
        return Err(Error::PTooSmall(p));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    #[test]
    fn squares_in_gf7() {
        let ctx = FieldContext::new(7, 1).unwrap();
        assert!(is_square(&ctx, ctx.element(2).unwrap()).unwrap()); // 3^2 = 2
        assert!(!is_square(&ctx, ctx.element(3).unwrap()).unwrap());
        assert!(is_square(&ctx, ctx.one()).unwrap());
        assert!(is_square(&ctx, ctx.zero()).is_err());
        assert!(is_square_mod(7, 2).unwrap());
        assert!(!is_square_mod(7, 3).unwrap());
    }

    #[test]
    fn partition_sizes_small() {
        let ctx = FieldContext::new(5, 1).unwrap();
        let parts = partition_abcd(&ctx).unwrap();
        assert_eq!(parts.sizes(), (0, 1, 1, 1));
        assert_eq!(parts.sizes(), ResiduePartition::expected_sizes(5));

        let ctx = FieldContext::new(11, 1).unwrap();
        let parts = partition_abcd(&ctx).unwrap();
        assert_eq!(parts.sizes(), (2, 3, 2, 2));

        let ctx = FieldContext::new(13, 1).unwrap();
        let parts = partition_abcd(&ctx).unwrap();
        assert_eq!(parts.a.len(), 2);
        assert_eq!(parts.a, vec![4, 10]); // 4 and 10: both z and 1-z square mod 13

        assert!(partition_abcd(&FieldContext::new(2, 3).unwrap()).is_err());
        assert!(partition_abcd(&FieldContext::new(3, 1).unwrap()).is_err());
    }

    #[test]
    fn partition_extension_field() {
        let ctx = FieldContext::new(3, 2).unwrap();
        let parts = partition_abcd(&ctx).unwrap();
        assert_eq!(parts.sizes(), ResiduePartition::expected_sizes(9));
        let total: usize = [&parts.a, &parts.b, &parts.c, &parts.d].iter().map(|v| v.len()).sum();
        assert_eq!(total as u64, ctx.q() - 2);
    }

    #[test]
    fn group_action_holds() {
        for (p, f) in [(5, 1), (11, 1), (13, 1), (3, 2), (5, 2), (3, 3)] {
            let ctx = FieldContext::new(p, f).unwrap();
            let report = check_group_action(&ctx).unwrap();
            assert!(report.holds, "S3 action failed for q = {}", ctx.q());
        }
    }

    #[test]
    fn vn_counts() {
        assert_eq!(count_vn(7).unwrap(), (2, 1));
        assert_eq!(count_vn(11).unwrap(), (4, 1));
        assert_eq!(count_vn(5).unwrap(), (1, 1));
    }

    #[test]
    fn ef_counts_and_cross_law() {
        assert_eq!(count_ef(7).unwrap(), (2, 1));
        assert_eq!(count_ef(11).unwrap(), (1, 4));
        assert_eq!(count_ef(13).unwrap(), (3, 3));
        // p = 7 mod 8: (V, N) = (E, F); p = 3 mod 8: (V, N) = (F, E);
        // p = 1 mod 4: E = F.
        for p in (3..500).filter(|&p| is_prime(p)) {
            let (v, n) = count_vn(p).unwrap();
            let (e, f) = count_ef(p).unwrap();
            match p % 8 {
                7 => assert_eq!((v, n), (e, f), "p = {p}"),
                3 => assert_eq!((v, n), (f, e), "p = {p}"),
                _ => assert_eq!(e, f, "p = {p}"),
            }
        }
    }

    #[test]
    fn forms_oracle_small_values() {
        assert_eq!(class_number_forms(7).unwrap(), 1); // only (1,1,2)
        assert_eq!(class_number_forms(23).unwrap(), 3); // (1,1,6), (2,+-1,3)
        assert_eq!(class_number_forms(163).unwrap(), 1);
        assert_eq!(class_number_forms(907).unwrap(), 3);
    }

    #[test]
    fn forms_oracle_preconditions() {
        assert_eq!(class_number_forms(3).unwrap_err(), Error::PTooSmall(3));
        assert_eq!(class_number_forms(13).unwrap_err(), Error::WrongResidueClass(13));
        assert_eq!(class_number_forms(15).unwrap_err(), Error::NotPrime(15));
    }

    #[test]
    fn residue_route_matches_forms() {
        assert_eq!(class_number_residues(7).unwrap(), 1);
        assert_eq!(class_number_residues(11).unwrap(), 1);
        assert_eq!(class_number_residues(907).unwrap(), 3);
        for p in (7..1000).filter(|&p| p % 4 == 3 && is_prime(p)) {
            assert_eq!(
                class_number_forms(p).unwrap(),
                class_number_residues(p).unwrap(),
                "p = {p}"
            );
        }
    }

    #[test]
    fn gap_check_small_primes() {
        let r = welch_gap_check(7).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected_gap, 1);
        let censuses = [r.census_square_c, r.census_nonsquare_c];
        assert!(censuses.contains(&ParityCensus { ee: 1, oo: 1, eo: 2, oe: 2 }));
        assert!(censuses.contains(&ParityCensus { ee: 2, oo: 2, eo: 1, oe: 1 }));

        let r = welch_gap_check(11).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected_gap, 3);
        let censuses = [r.census_square_c, r.census_nonsquare_c];
        assert!(censuses.contains(&ParityCensus { ee: 1, oo: 1, eo: 4, oe: 4 }));
        assert!(censuses.contains(&ParityCensus { ee: 4, oo: 4, eo: 1, oe: 1 }));

        let r = welch_gap_check(19).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected_gap, 3); // 3 * h(-19) = 3
    }

    #[test]
    fn gap_independent_of_primitive_root() {
        let p = 23;
        let expected = welch_gap_check(p).unwrap().expected_gap;
        for alpha in primitive_roots(p) {
            for c in [1, 5] {
                // 5 is a non-residue mod 23
                let census = welch_census(&WelchSpec::new(p, alpha, c).unwrap());
                let gap = (census.ee as i64 - census.oe as i64).unsigned_abs();
                assert_eq!(gap, expected);
            }
        }
    }

    #[test]
    fn report_fields() {
        let r = class_number_report(7).unwrap();
        assert_eq!(r.h_forms, 1);
        assert_eq!(r.h_residues, Some(1));
        assert_eq!((r.v, r.n, r.e, r.f), (2, 1, 2, 1));
        assert_eq!(r.legendre2, 1);
        let r = class_number_report(11).unwrap();
        assert_eq!(r.legendre2, -1);
        assert_eq!(r.h_residues, Some(1));
    }

    #[test]
    fn oesterle_small() {
        assert!(oesterle_check(7).unwrap());
        assert!(oesterle_check(43).unwrap());
        assert!(oesterle_check(163).unwrap());
    }

    #[test]
    fn no_h2_small_bounds() {
        assert!(no_h2_check(7).unwrap());
        assert!(no_h2_check(500).unwrap());
        assert!(no_h2_check(NO_H2_MAX_BOUND + 1).is_err());
    }
}
