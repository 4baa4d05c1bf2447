//! Exact arithmetic in GF(p) and GF(p^m).
//!
//! Elements are plain values ([`Fe`]) and every operation goes through the
//! owning [`Field`]. An element of GF(p^m) is stored as its coefficient
//! vector in the modulus root, packed little-endian as the base-p integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`, so the integer order of `Fe`
//! values is the order used by every deterministic search in this crate.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest cardinality supported (p^m must fit in a `u32` element index).
pub const MAX_CARDINALITY: u64 = 1 << 32;

/// Fields at or below this size get full addition/multiplication tables.
const TABLE_LIMIT: u64 = 1024;

/// Default bound for [`germain_search`].
pub const GERMAIN_SEARCH_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u64> },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field cardinality {p}^{m} exceeds 2^32")]
    TooLarge { p: u64, m: u32 },
    #[error("no element of order {n}: {n} does not divide {order}")]
    NoSuchRoot { n: u64, order: u64 },
    #[error("no Fourier field of length {length} in characteristic {q:?}")]
    NoValidField { length: u64, q: Option<u64> },
    #[error("{0} must be prime")]
    NotPrime(u64),
    #[error("search passed its bound {0}")]
    SearchLimitExceeded(u64),
    #[error("coefficient vector {0:?} does not describe an element")]
    BadElement(Vec<u64>),
    #[error("bad field description {0:?}; expected p[,m[,c0:c1:...]]")]
    BadSpec(String),
}

/// A field element. Meaningful only together with the [`Field`] that made it.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Packed index in `[0, q)`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
enum Arith {
    Prime,
    Binary,
    Table { add: Vec<u32>, mul: Vec<u32>, inv: Vec<u32> },
    Generic,
}

#[derive(Debug)]
struct Inner {
    p: u64,
    m: u32,
    /// Little-endian, length m + 1, leading coefficient 1. `[0, 1]` for m = 1.
    modulus: Vec<u64>,
    q: u64,
    arith: Arith,
}

/// A validated finite field GF(p^m). Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Serialized form of a field: `{"p": .., "m": .., "modulus": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
    #[serde(default)]
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field, FieldError> {
        let modulus = if self.m > 1 { Some(self.modulus.clone()) } else { None };
        make_field(self.p, self.m, modulus)
    }
}

/// `p`, or `p,m,c0:c1:...:cm` with the modulus listed from the constant term up.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m <= 1 {
            return write!(f, "{}", self.p);
        }
        let c: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{},{},{}", self.p, self.m, c.join(":"))
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::BadSpec(s.to_string());
        let parts: Vec<&str> = s.trim().split(',').map(str::trim).collect();
        let p = parts[0].parse::<u64>().map_err(|_| bad())?;
        let m = match parts.get(1) {
            Some(m) => m.parse::<u32>().map_err(|_| bad())?,
            None => 1,
        };
        let modulus = match parts.get(2) {
            Some(c) => c.split(':').map(|x| x.trim().parse::<u64>()).collect::<Result<Vec<_>, _>>().map_err(|_| bad())?,
            None => Vec::new(),
        };
        if parts.len() > 3 {
            return Err(bad());
        }
        Ok(FieldSpec { p, m, modulus })
    }
}

impl FieldSpec {
    /// Parse and build in one step; an omitted modulus picks the default one.
    pub fn parse_field(s: &str) -> Result<Field, FieldError> {
        let spec: FieldSpec = s.parse()?;
        let modulus = (!spec.modulus.is_empty()).then_some(spec.modulus);
        make_field(spec.p, spec.m, modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
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

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `n` (`a` coprime to `n`, `n > 1`).
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n < 2 || gcd(a % n, n) != 1 {
        return None;
    }
    let mut k = 1;
    let mut x = a % n;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    Some(k)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Dense polynomials over GF(p) on `Vec<u64>`, little-endian, trimmed.
/// Only what modulus validation needs.
mod gfp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        super::pow_mod(a, p - 2, p)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = (r[dr] * lead_inv) % p;
            let shift = dr - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (c * bi) % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, f, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// x^(p^k) mod f, computed by k successive p-th powers.
    pub fn frobenius_power(k: u32, f: &[u64], p: u64) -> Vec<u64> {
        let mut x = rem(&[0, 1], f, p);
        for _ in 0..k {
            let mut acc = vec![1u64];
            let mut base = x.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(&acc, &base, f, p);
                }
                base = mul_mod(&base, &base, f, p);
                e >>= 1;
            }
            x = acc;
        }
        x
    }

    /// Ben-Or: f (monic, degree m) is irreducible iff gcd(x^(p^k) - x, f) = 1 for k <= m/2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let m = f.len() - 1;
        if m <= 1 {
            return m == 1;
        }
        for k in 1..=(m / 2) as u32 {
            let xk = frobenius_power(k, f, p);
            let g = gcd(&sub(&xk, &[0, 1], p), f, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

/// Coefficients of the cyclotomic polynomial x^{n-1} + ... + x + 1 for prime n.
pub fn cyclotomic_prime(n: u64) -> Vec<u64> {
    vec![1; n as usize]
}

/// Irreducibility of a monic polynomial over GF(p) (little-endian coefficients).
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let mut f = modulus.to_vec();
    gfp::trim(&mut f);
    !f.is_empty() && gfp::is_irreducible(&f, p)
}

/// Validate or choose a field.
///
/// With `m > 1` and no modulus, the modulus is the monic irreducible of
/// degree m with the smallest packed value `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
pub fn make_field(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Field, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrimeCharacteristic(p));
    }
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if q > MAX_CARDINALITY as u128 {
        return Err(FieldError::TooLarge { p, m });
    }
    let q = q as u64;
    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        match modulus {
            Some(mut f) => {
                // accept the implicit-leading-one form
                if f.len() == m as usize {
                    f.push(1);
                }
                if f.len() != m as usize + 1 || f[m as usize] != 1 || f.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus { expected: m, got: f });
                }
                if !gfp::is_irreducible(&f, p) {
                    return Err(FieldError::ReducibleModulus { p });
                }
                f
            }
            None => least_irreducible(p, m),
        }
    };
    Ok(Field::assemble(p, m, modulus, q))
}

fn least_irreducible(p: u64, m: u32) -> Vec<u64> {
    let count = p.pow(m);
    for code in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if f[0] != 0 && gfp::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    fn assemble(p: u64, m: u32, modulus: Vec<u64>, q: u64) -> Field {
        let arith = match (m, p) {
            (1, _) => Arith::Prime,
            (_, 2) if q > TABLE_LIMIT => Arith::Binary,
            _ => Arith::Generic,
        };
        let mut field = Field(Arc::new(Inner { p, m, modulus, q, arith }));
        if m > 1 && q <= TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0u32; qs * qs];
            let mut mul = vec![0u32; qs * qs];
            for a in 0..qs {
                for b in 0..qs {
                    add[a * qs + b] = field.add_generic(a as u32, b as u32);
                    mul[a * qs + b] = field.mul_generic(a as u32, b as u32);
                }
            }
            let mut inv = vec![0u32; qs];
            for a in 1..qs {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("field") as u32;
            }
            field = Field(Arc::new(Inner {
                p,
                m,
                modulus: field.0.modulus.clone(),
                q,
                arith: Arith::Table { add, mul, inv },
            }));
        }
        field
    }

    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        make_field(p, 1, None)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn cardinality(&self) -> u64 {
        self.0.q
    }

    /// Full little-endian modulus (empty for prime fields).
    pub fn modulus(&self) -> &[u64] {
        if self.0.m == 1 {
            &[]
        } else {
            &self.0.modulus
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, m: self.0.m, modulus: self.modulus().to_vec() }
    }

    pub fn is_gf2(&self) -> bool {
        self.0.p == 2 && self.0.m == 1
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Element from its packed index; `None` when out of range.
    pub fn element(&self, index: u64) -> Option<Fe> {
        (index < self.0.q).then_some(Fe(index as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Fe {
        let p = self.0.p as i64;
        Fe(v.rem_euclid(p) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe, FieldError> {
        if coeffs.len() > self.0.m as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(FieldError::BadElement(coeffs.to_vec()));
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.0.p + c;
        }
        Ok(Fe(v as u32))
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.m as usize);
        let mut v = a.0 as u64;
        for _ in 0..self.0.m {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(|i| Fe(i as u32))
    }

    #[inline]
    fn digits(&self, a: u32, out: &mut [u64; 32]) {
        let p = self.0.p;
        let mut v = a as u64;
        for d in out.iter_mut().take(self.0.m as usize) {
            *d = v % p;
            v /= p;
        }
    }

    #[inline]
    fn pack(&self, d: &[u64]) -> u32 {
        let mut v = 0u64;
        for &c in d.iter().rev() {
            v = v * self.0.p + c;
        }
        v as u32
    }

    fn add_generic(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        let m = self.0.m as usize;
        let (mut x, mut y) = ([0u64; 32], [0u64; 32]);
        self.digits(a, &mut x);
        self.digits(b, &mut y);
        for i in 0..m {
            x[i] = (x[i] + y[i]) % p;
        }
        self.pack(&x[..m])
    }

    fn mul_generic(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        let m = self.0.m as usize;
        let (mut x, mut y) = ([0u64; 32], [0u64; 32]);
        self.digits(a, &mut x);
        self.digits(b, &mut y);
        let mut prod = [0u64; 64];
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        let f = &self.0.modulus;
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // x^k = x^{k-m} * x^m and x^m = -(f_0 + ... + f_{m-1} x^{m-1})
            for i in 0..m {
                prod[k - m + i] = (prod[k - m + i] + (p - f[i]) * c) % p;
            }
        }
        self.pack(&prod[..m])
    }

    fn mul_binary(&self, a: u32, b: u32) -> u32 {
        let m = self.0.m;
        let mut prod: u64 = 0;
        let (a, mut b) = (a as u64, b as u64);
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        let mut poly = 0u64;
        for (i, &c) in self.0.modulus.iter().enumerate() {
            poly |= c << i;
        }
        for k in (m as u64..64).rev() {
            if prod >> k & 1 == 1 {
                prod ^= poly << (k - m as u64);
            }
        }
        prod as u32
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.0.arith {
            Arith::Prime => {
                let s = a.0 as u64 + b.0 as u64;
                Fe(if s >= self.0.p { s - self.0.p } else { s } as u32)
            }
            Arith::Binary => Fe(a.0 ^ b.0),
            Arith::Table { add, .. } => Fe(add[a.0 as usize * self.0.q as usize + b.0 as usize]),
            Arith::Generic => Fe(self.add_generic(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            return a;
        }
        match &self.0.arith {
            Arith::Prime => Fe((self.0.p - a.0 as u64) as u32),
            Arith::Binary => a,
            _ => {
                let p = self.0.p;
                let m = self.0.m as usize;
                let mut x = [0u64; 32];
                self.digits(a.0, &mut x);
                for d in x.iter_mut().take(m) {
                    *d = (p - *d) % p;
                }
                Fe(self.pack(&x[..m]))
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        match &self.0.arith {
            Arith::Prime => {
                let (x, y) = (a.0 as u64, b.0 as u64);
                Fe(if x >= y { x - y } else { x + self.0.p - y } as u32)
            }
            Arith::Binary => Fe(a.0 ^ b.0),
            _ => self.add(a, self.neg(b)),
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.0.arith {
            Arith::Prime => Fe(((a.0 as u64 * b.0 as u64) % self.0.p) as u32),
            Arith::Binary => Fe(self.mul_binary(a.0, b.0)),
            Arith::Table { mul, .. } => Fe(mul[a.0 as usize * self.0.q as usize + b.0 as usize]),
            Arith::Generic => Fe(self.mul_generic(a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        Some(match &self.0.arith {
            Arith::Prime => Fe(pow_mod(a.0 as u64, self.0.p - 2, self.0.p) as u32),
            Arith::Table { inv, .. } => Fe(inv[a.0 as usize]),
            _ => self.pow(a, self.0.q - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a * b + c`
    #[inline]
    pub fn mul_add(&self, a: Fe, b: Fe, c: Fe) -> Fe {
        self.add(self.mul(a, b), c)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut n = self.0.q - 1;
        for l in prime_factors(self.0.q - 1) {
            while n % l == 0 && self.pow(a, n / l) == Fe::ONE {
                n /= l;
            }
        }
        Some(n)
    }

    pub fn is_primitive(&self, a: Fe) -> bool {
        self.order(a) == Some(self.0.q - 1)
    }

    /// Least primitive element in index order.
    pub fn primitive_element(&self) -> Fe {
        self.elements()
            .skip(1)
            .find(|&g| self.is_primitive(g))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Image of the integer `n` in the field (n mod p).
    pub fn integer(&self, n: u64) -> Fe {
        Fe((n % self.0.p) as u32)
    }

    /// Short human form: an integer for prime fields, colon-joined coefficients otherwise.
    pub fn format(&self, a: Fe) -> String {
        if self.0.m == 1 {
            a.0.to_string()
        } else {
            self.coeffs(a).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":")
        }
    }

    pub fn parse(&self, s: &str) -> Result<Fe, FieldError> {
        let parts: Result<Vec<u64>, _> = s.trim().split(':').map(|t| t.trim().parse::<u64>()).collect();
        let parts = parts.map_err(|_| FieldError::BadElement(vec![]))?;
        if self.0.m == 1 {
            if parts.len() != 1 || parts[0] >= self.0.p {
                return Err(FieldError::BadElement(parts));
            }
            return Ok(Fe(parts[0] as u32));
        }
        self.from_coeffs(&parts)
    }
}

/// Primitive n-th root of unity: g^((q-1)/n) for the least primitive element g.
pub fn root_of_unity(field: &Field, n: u64) -> Result<Fe, FieldError> {
    let order = field.cardinality() - 1;
    if n == 0 || order % n != 0 {
        return Err(FieldError::NoSuchRoot { n, order });
    }
    let g = field.primitive_element();
    Ok(field.pow(g, order / n))
}

/// Which theorem-backed construction produced a Fourier field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FourierRoute {
    /// p and 2p+1 both prime: F_p over Z_{2p+1}.
    Germain,
    /// ord_p(q) = p - 1: F_p over GF(q^{p-1}) with cyclotomic modulus.
    FullOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierField {
    pub field: Field,
    pub route: FourierRoute,
    pub rationale: String,
}

/// Field in which the length-`length` Fourier matrix has the Chebotarev property.
pub fn fourier_field_for_length(length: u64, q: Option<u64>) -> Result<FourierField, FieldError> {
    if !is_prime(length) {
        return Err(FieldError::NotPrime(length));
    }
    if let Some(q) = q {
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
    }
    let safe = 2 * length + 1;
    if is_prime(safe) && q.map_or(true, |q| q == safe) {
        return Ok(FourierField {
            field: Field::prime(safe)?,
            route: FourierRoute::Germain,
            rationale: format!("{length} is a Germain prime with safe prime {safe}"),
        });
    }
    match q {
        Some(q) if q != length && multiplicative_order(q, length) == Some(length - 1) => {
            let field = make_field(q, (length - 1) as u32, Some(cyclotomic_prime(length)))?;
            Ok(FourierField {
                field,
                route: FourierRoute::FullOrder,
                rationale: format!("the order of {q} mod {length} is {}", length - 1),
            })
        }
        _ => Err(FieldError::NoValidField { length, q }),
    }
}

/// Smallest prime p >= n with 2p + 1 prime.
pub fn germain_search(n: u64, bound: u64) -> Result<u64, FieldError> {
    let mut p = n.max(2);
    while p <= bound {
        if is_prime(p) && is_prime(2 * p + 1) {
            return Ok(p);
        }
        p += 1;
    }
    Err(FieldError::SearchLimitExceeded(bound))
}

/// Smallest prime p >= n, p != q, with ord_p(q) = p - 1.
pub fn full_order_prime_search(n: u64, q: u64, bound: u64) -> Result<u64, FieldError> {
    let mut p = n.max(2);
    while p <= bound {
        if p != q && is_prime(p) && multiplicative_order(q, p) == Some(p - 1) {
            return Ok(p);
        }
        p += 1;
    }
    Err(FieldError::SearchLimitExceeded(bound))
}
