//! Finite fields GF(p^k) with table arithmetic.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
//! `c_0 + c_1 w + ...` is the residue modulo the fixed irreducible polynomial.

use std::fmt;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("no irreducible polynomial on record for GF({p}^{k})")]
    UnsupportedExtension { p: u32, k: u32 },
    #[error("field order {0} is not a prime power supported here")]
    BadOrder(usize),
    #[error("element index {index} out of range for GF({order})")]
    OutOfRange { index: usize, order: usize },
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// Coefficients (constant term first) of the monic irreducible polynomials used for extensions.
fn modulus_for(p: u32, k: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, k) {
        (_, 1) => &[0, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 0, 0, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 1, 0, 1, 1, 0, 0, 0, 1],
        (3, 2) => &[1, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 1, 0, 0, 1],
        (3, 5) => &[1, 2, 0, 0, 0, 1],
        (5, 2) => &[2, 0, 1],
        (5, 3) => &[1, 1, 0, 1],
        (7, 2) => &[1, 0, 1],
        (11, 2) => &[1, 0, 1],
        (13, 2) => &[11, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// A field element; only meaningful together with its [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fe(u8);

impl Fe {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Field {}

fn digits(mut x: usize, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (x % p as usize) as u32;
            x /= p as usize;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

impl Field {
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let modulus = modulus_for(p, k).ok_or(FieldError::UnsupportedExtension { p, k })?;
        let q = (p as usize).pow(k);
        if q > 256 {
            return Err(FieldError::UnsupportedExtension { p, k });
        }
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a, p, k);
            neg[a] = undigits(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p) as u8;
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u8;
                // schoolbook product then reduction by the monic modulus
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, m) in modulus.iter().enumerate().take(k as usize) {
                        let idx = deg - k as usize + i;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
                mul[a * q + b] = undigits(&prod[..k as usize], p) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            match (1..q).find(|&b| mul[a * q + b] == 1) {
                Some(b) => inv[a] = b as u8,
                // a zero divisor means the recorded polynomial is reducible
                None => return Err(FieldError::UnsupportedExtension { p, k }),
            }
        }
        Ok(Field(Arc::new(Tables { p, k, q, modulus, add, mul, neg, inv })))
    }

    /// GF(q) for a prime power q.
    pub fn with_order(q: usize) -> Result<Self, FieldError> {
        for p in 2..=q as u32 {
            if q % p as usize == 0 {
                let mut k = 0;
                let mut r = q;
                while r % p as usize == 0 {
                    r /= p as usize;
                    k += 1;
                }
                if r != 1 {
                    return Err(FieldError::BadOrder(q));
                }
                return Field::new(p, k).map_err(|_| FieldError::BadOrder(q));
            }
        }
        Err(FieldError::BadOrder(q))
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Field::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe(1)
    }

    pub fn elem(&self, index: usize) -> Result<Fe, FieldError> {
        if index < self.0.q {
            Ok(Fe(index as u8))
        } else {
            Err(FieldError::OutOfRange { index, order: self.0.q })
        }
    }

    /// The class of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u8)
    }

    /// The generator `w` of the extension (for k = 1 this is just 0).
    pub fn generator(&self) -> Fe {
        if self.0.k == 1 {
            Fe(0)
        } else {
            Fe(self.0.p as u8)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(|i| Fe(i as u8))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.q).map(|i| Fe(i as u8))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.0.add[a.index() * self.0.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.0.mul[a.index() * self.0.q + b.index()])
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a.0 != 0).then(|| Fe(self.0.inv[a.index()]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.0.p as u64)
    }

    /// The unique r with r^p = c, computed as c^(p^(k-1)).
    pub fn pth_root(&self, c: Fe) -> Fe {
        self.pow(c, (self.0.p as u64).pow(self.0.k - 1))
    }

    pub fn in_prime_field(&self, a: Fe) -> bool {
        (a.0 as u32) < self.0.p
    }

    /// Maps a prime-subfield element of `other` into this field.
    pub fn embed_prime(&self, other: &Field, a: Fe) -> Option<Fe> {
        (other.p() == self.p() && other.in_prime_field(a)).then_some(a)
    }

    /// binom(m, n) reduced into the prime subfield.
    pub fn binom(&self, m: u64, n: u64) -> Fe {
        Fe(lucas_binom(m, n, self.0.p) as u8)
    }

    pub fn coefficients(&self, a: Fe) -> Vec<u32> {
        digits(a.index(), self.0.p, self.0.k)
    }

    pub fn to_json(&self, a: Fe) -> Value {
        if self.0.k == 1 {
            Value::from(a.0)
        } else {
            Value::from(self.coefficients(a))
        }
    }

    pub fn from_json(&self, v: &Value) -> Result<Fe, FieldError> {
        let bad = || FieldError::Parse(v.to_string());
        match v {
            Value::Number(n) => {
                let n = n.as_i64().ok_or_else(bad)?;
                Ok(self.from_int(n))
            }
            Value::Array(cs) => {
                if cs.len() != self.0.k as usize {
                    return Err(bad());
                }
                let d = cs
                    .iter()
                    .map(|c| c.as_i64().map(|c| c.rem_euclid(self.0.p as i64) as u32))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(bad)?;
                Ok(Fe(undigits(&d, self.0.p) as u8))
            }
            _ => Err(bad()),
        }
    }

    /// Parses "2", "w", "2w", "1+2w", "w^2" style input (w is the extension generator).
    pub fn parse(&self, s: &str) -> Result<Fe, FieldError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(FieldError::Parse(s));
        }
        let mut acc = self.zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let mut value = self.parse_term(term).ok_or_else(|| FieldError::Parse(s.clone()))?;
            if sign {
                value = self.neg(value);
            }
            acc = self.add(acc, value);
        }
        Ok(acc)
    }

    fn parse_term(&self, t: &str) -> Option<Fe> {
        if t.is_empty() {
            return None;
        }
        match t.find('w') {
            None => t.parse::<i64>().ok().map(|n| self.from_int(n)),
            Some(pos) => {
                let coeff = if pos == 0 { 1 } else { t[..pos].parse::<i64>().ok()? };
                let tail = &t[pos + 1..];
                let e = if tail.is_empty() { 1 } else { tail.strip_prefix('^')?.parse::<u64>().ok()? };
                if self.0.k == 1 {
                    return None;
                }
                Some(self.mul(self.from_int(coeff), self.pow(self.generator(), e)))
            }
        }
    }

    pub fn format(&self, a: Fe) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        let parts: Vec<String> = self
            .coefficients(a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".into(),
                (1, c) => format!("{c}w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}w^{i}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl Ring for Field {
    type Elem = Fe;

    fn zero(&self) -> Fe {
        Fe(0)
    }
    fn one(&self) -> Fe {
        Fe(1)
    }
    fn from_int(&self, n: i64) -> Fe {
        Field::from_int(self, n)
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        Field::add(self, *a, *b)
    }
    fn neg(&self, a: &Fe) -> Fe {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        Field::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &Fe) -> bool {
        a.0 == 0
    }
    fn characteristic(&self) -> u32 {
        self.0.p
    }
    fn format(&self, a: &Fe) -> String {
        Field::format(self, *a)
    }
}

/// binom(m, n) mod p by Lucas' theorem; 0 when n > m.
pub fn lucas_binom(mut m: u64, mut n: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while m > 0 || n > 0 {
        let (a, b) = (m % p64, n % p64);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) % p64 * mod_pow(i + 1, p64 - 2, p64) % p64;
        }
        acc = acc * c % p64;
        m /= p64;
        n /= p64;
    }
    acc as u32
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}
