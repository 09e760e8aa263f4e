//! Exact arithmetic in GF(p^f) with full exponential/logarithm tables.
//!
//! A [`FieldContext`] materializes one finite field: it fixes a canonical
//! irreducible modulus (lexicographically smallest, constant term first),
//! a reference generator (smallest primitive element by code), and the
//! exp/log tables that make multiplication, inversion and discrete logs
//! table lookups. Elements are encoded as integers in `[0, q)`: the code
//! of the coefficient tuple `(a_0, ..., a_{f-1})` is `sum a_i * p^i`.
//!
//! Contexts are immutable after construction and safe to share across
//! threads; every operation is a pure function of `(ctx, inputs)`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default ceiling on the field size q = p^f.
pub const DEFAULT_FIELD_CEILING: u64 = 1 << 20;

/// Largest extension degree supported by the fixed-size polynomial buffers.
const MAX_DEGREE: u32 = 24;

/// An element of a finite field, encoded as an integer in `[0, q)`.
///
/// Code 0 is the additive identity and code 1 the multiplicative identity.
/// Elements carry no reference to their field; mixing elements from
/// different contexts is a caller error (caught by debug assertions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serializable description of a field: `{"p":..., "f":..., "modulus":[...]}`.
///
/// The modulus is listed constant term first and is absent for prime fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub f: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u64>>,
}

impl FieldDescriptor {
    /// Rebuilds the canonical field and checks the recorded modulus against it.
    pub fn build(&self) -> Result<FieldContext> {
        let ctx = FieldContext::new(self.p, self.f)?;
        if let Some(m) = &self.modulus {
            if ctx.modulus() != Some(m.as_slice()) {
                return Err(Error::Parse(format!(
                    "modulus {:?} is not the canonical modulus for GF({}^{})",
                    m, self.p, self.f
                )));
            }
        }
        Ok(ctx)
    }
}

/// A fully materialized finite field GF(p^f).
#[derive(Debug, Clone)]
pub struct FieldContext {
    p: u64,
    f: u32,
    q: u64,
    /// Monic irreducible of degree f, constant term first; None when f = 1.
    modulus: Option<Vec<u64>>,
    /// Code of the reference generator (smallest primitive element by code).
    generator: u64,
    /// exp_table[k] = code of g^k, for k in [0, q-2].
    exp_table: Vec<u64>,
    /// log_table[code] = k with exp_table[k] = code; entry 0 is unused.
    log_table: Vec<u64>,
}

impl FieldContext {
    /// Builds GF(p^f) under the default size ceiling.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        Self::with_ceiling(p, f, DEFAULT_FIELD_CEILING)
    }

    /// Builds GF(p^f) with an explicit ceiling on q.
    pub fn with_ceiling(p: u64, f: u32, ceiling: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidArgument("extension degree f must be >= 1".into()));
        }
        if f > MAX_DEGREE {
            return Err(Error::SizeExceeded { requested: f as u64, ceiling: MAX_DEGREE as u64 });
        }
        let q = p
            .checked_pow(f)
            .ok_or(Error::SizeExceeded { requested: u64::MAX, ceiling })?;
        let hard_cap = 1u64 << MAX_DEGREE;
        if q > ceiling || q > hard_cap {
            return Err(Error::SizeExceeded { requested: q, ceiling: ceiling.min(hard_cap) });
        }

        let modulus = if f == 1 { None } else { Some(smallest_irreducible(p, f)) };
        let mut ctx = FieldContext {
            p,
            f,
            q,
            modulus,
            generator: 0,
            exp_table: Vec::new(),
            log_table: Vec::new(),
        };
        ctx.generator = ctx.find_generator();
        ctx.build_tables();
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Order of the multiplicative group, q - 1.
    pub fn group_order(&self) -> u64 {
        self.q - 1
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, f: self.f, modulus: self.modulus.clone() }
    }

    /// The reference generator used to build the tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.generator)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Wraps a code after range-checking it against this field.
    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::InvalidArgument(format!("code {code} out of range for q = {}", self.q)))
        }
    }

    /// All codes of this field in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_code(a.0, b.0))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.sub_code(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_code(a.0))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let k = (self.log_table[a.0 as usize] + self.log_table[b.0 as usize]) % self.group_order();
        FieldElement(self.exp_table[k as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let m = self.group_order();
        let k = (m - self.log_table[a.0 as usize]) % m;
        Ok(FieldElement(self.exp_table[k as usize]))
    }

    /// a^k for any integer exponent, reducing k mod (q - 1) for nonzero a.
    pub fn pow(&self, a: FieldElement, k: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match k {
                0 => Ok(self.one()),
                _ if k > 0 => Ok(self.zero()),
                _ => Err(Error::ZeroInverse),
            };
        }
        let m = self.group_order();
        let e = k.rem_euclid(m as i64) as u64;
        let idx = (self.log_table[a.0 as usize] * e) % m;
        Ok(FieldElement(self.exp_table[idx as usize]))
    }

    /// Smallest k >= 1 with a^k = 1; always divides q - 1.
    pub fn element_order(&self, a: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let m = self.group_order();
        Ok(m / gcd(m, self.log_table[a.0 as usize]))
    }

    /// All generators of the multiplicative group, ascending by code.
    pub fn generators(&self) -> Vec<FieldElement> {
        let m = self.group_order();
        (1..self.q)
            .filter(|&c| m / gcd(m, self.log_table[c as usize]) == m)
            .map(FieldElement)
            .collect()
    }

    /// Index k in [0, q-2] with g^k = a, for the reference generator g.
    pub fn discrete_log(&self, a: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.log_table[a.0 as usize])
    }

    /// Discrete log of `a` to an arbitrary generator `gamma`, derived by
    /// modular scaling of the reference log.
    pub fn discrete_log_base(&self, a: FieldElement, gamma: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let m = self.group_order();
        let scale = self.log_scale(gamma)?;
        Ok(self.log_table[a.0 as usize] * scale % m)
    }

    /// Inverse of log(gamma) mod (q - 1); errors unless gamma generates.
    pub(crate) fn log_scale(&self, gamma: FieldElement) -> Result<u64> {
        if gamma.0 == 0 {
            return Err(Error::ZeroElement);
        }
        mod_inverse(self.log_table[gamma.0 as usize], self.group_order())
            .ok_or(Error::NotGenerator(gamma.0))
    }

    #[inline]
    pub(crate) fn exp_code(&self, idx: u64) -> u64 {
        self.exp_table[idx as usize]
    }

    #[inline]
    pub(crate) fn log_code(&self, code: u64) -> u64 {
        debug_assert!(code != 0);
        self.log_table[code as usize]
    }

    #[inline]
    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.f == 1 {
            return (a + self.p - b) % self.p;
        }
        self.zip_code(a, b, |x, y, p| (x + p - y) % p)
    }

    #[inline]
    fn add_code(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.f == 1 {
            return (a + b) % self.p;
        }
        self.zip_code(a, b, |x, y, p| (x + y) % p)
    }

    #[inline]
    fn neg_code(&self, a: u64) -> u64 {
        self.sub_code(0, a)
    }

    /// Digit-wise combination of two codes in base p.
    fn zip_code(&self, mut a: u64, mut b: u64, op: impl Fn(u64, u64, u64) -> u64) -> u64 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += op(a % self.p, b % self.p, self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    /// Table-free multiplication, used only while the tables are built.
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.f == 1 {
            return a * b % self.p;
        }
        let f = self.f as usize;
        let modulus = self.modulus.as_ref().expect("extension field has a modulus");
        let mut pa = [0u64; MAX_DEGREE as usize];
        let mut pb = [0u64; MAX_DEGREE as usize];
        decompose(a, self.p, &mut pa[..f]);
        decompose(b, self.p, &mut pb[..f]);
        let mut prod = [0u64; 2 * MAX_DEGREE as usize];
        for (i, &x) in pa[..f].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in pb[..f].iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce degree by degree using x^f = -(m_0 + m_1 x + ... + m_{f-1} x^{f-1}).
        for d in (f..2 * f - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in modulus[..f].iter().enumerate() {
                prod[d - f + i] = (prod[d - f + i] + c * (self.p - m) % self.p) % self.p;
            }
        }
        compose(&prod[..f], self.p)
    }

    fn pow_raw(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Smallest primitive element by code order.
    fn find_generator(&self) -> u64 {
        let m = self.group_order();
        if m == 1 {
            return 1;
        }
        let prime_divs: Vec<u64> = factorize(m).into_iter().map(|(p, _)| p).collect();
        for c in 2..self.q {
            if prime_divs.iter().all(|&r| self.pow_raw(c, m / r) != 1) {
                return c;
            }
        }
        unreachable!("every finite field has a primitive element");
    }

    fn build_tables(&mut self) {
        let m = self.group_order() as usize;
        let mut exp = vec![0u64; m];
        let mut log = vec![0u64; self.q as usize];
        let mut cur = 1u64;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = k as u64;
            cur = self.mul_raw(cur, self.generator);
        }
        debug_assert_eq!(cur, 1, "generator order must be q - 1");
        self.exp_table = exp;
        self.log_table = log;
    }
}

fn decompose(mut code: u64, p: u64, out: &mut [u64]) {
    for slot in out.iter_mut() {
        *slot = code % p;
        code /= p;
    }
}

fn compose(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Lexicographically smallest monic irreducible of degree f over GF(p),
/// comparing coefficient tuples constant term first. Returned constant
/// term first with the leading 1 included (length f + 1).
fn smallest_irreducible(p: u64, f: u32) -> Vec<u64> {
    let f = f as usize;
    let total = p.pow(f as u32);
    for idx in 0..total {
        // idx encodes (a_0, ..., a_{f-1}) with a_0 the most significant digit,
        // so ascending idx is ascending lexicographic order, constant first.
        let mut coeffs = vec![0u64; f + 1];
        coeffs[f] = 1;
        let mut t = idx;
        for j in (0..f).rev() {
            coeffs[j] = t % p;
            t /= p;
        }
        if poly_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)");
}

/// Irreducibility over GF(p) for a monic polynomial of degree f >= 2:
/// g is irreducible iff gcd(g, x^(p^k) - x) = 1 for all 1 <= k <= f/2,
/// since x^(p^k) - x is the product of all irreducibles of degree dividing k.
fn poly_irreducible(g: &[u64], p: u64) -> bool {
    let f = g.len() - 1;
    if g[0] == 0 {
        return false; // divisible by x
    }
    let mut xp = vec![0u64; f]; // running value of x^(p^k) mod g
    if f > 1 {
        xp[1] = 1;
    } else {
        return true;
    }
    for _ in 1..=f / 2 {
        xp = poly_powmod(&xp, p, g, p);
        // gcd(g, xp - x)
        let mut h = xp.clone();
        h[1] = (h[1] + p - 1) % p;
        if poly_gcd_degree(g, &h, p) != 0 {
            return false;
        }
    }
    true
}

fn poly_mulmod(a: &[u64], b: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let f = g.len() - 1;
    let mut prod = vec![0u64; 2 * f];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (f..2 * f - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..f {
            prod[d - f + i] = (prod[d - f + i] + c * (p - g[i]) % p) % p;
        }
    }
    prod.truncate(f);
    prod
}

fn poly_powmod(base: &[u64], mut e: u64, g: &[u64], p: u64) -> Vec<u64> {
    let f = g.len() - 1;
    let mut acc = vec![0u64; f];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, g, p);
        }
        b = poly_mulmod(&b, &b, g, p);
        e >>= 1;
    }
    acc
}

/// Degree of gcd(a, b) over GF(p); -1 is mapped to 0 only for the zero
/// polynomial, which cannot arise here (a is the monic modulus).
fn poly_gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        poly_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let lead_inv = mod_inverse(b[db], p).expect("leading coefficient is a unit");
    while a.len() > db {
        let da = a.len() - 1;
        let factor = a[da] * lead_inv % p;
        if factor != 0 {
            for i in 0..=db {
                a[da - db + i] = (a[da - db + i] + p - factor * b[i] % p) % p;
            }
        }
        a.pop();
        trim(a);
        if a.is_empty() {
            return;
        }
    }
}

/// Deterministic primality test by trial division; intended for the small
/// moduli used here (q <= 2^24 and sweep bounds <= 10^5).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division: (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Decomposes q as p^f for prime p, or None when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = factorize(q);
    if factors.len() == 1 {
        Some(factors[0])
    } else {
        None
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of a mod m, when gcd(a, m) = 1.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Modular exponentiation for plain integers (used by the Euler criterion).
pub fn mod_pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    base %= m;
    let mut acc = 1u128;
    let mut b = base as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}
