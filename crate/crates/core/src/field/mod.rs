//! Finite fields GF(p^m) and their k-th power structure.
//!
//! Elements are stored as their index in the canonical enumeration: the
//! coefficient vector `[c0, c1, .., c_{m-1}]` in the power basis of the
//! modulus maps to `c0 + c1 p + .. + c_{m-1} p^{m-1}`. Enumeration order is
//! therefore lexicographic on the coefficient vector read from the highest
//! coordinate down, and the prime subfield comes first.

mod waring;

pub use waring::{represent, waring_field_criterion, WaringProfile};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Shared handle to a field context.
pub type Field = Arc<FiniteField>;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Position in the canonical enumeration.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field GF(p^m), represented as F_p[t]/(modulus) when m > 1.
#[derive(Debug)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    // Monic, constant term first, length m + 1. Present iff m > 1.
    modulus: Option<Vec<u32>>,
    // Discrete log tables (m > 1 only). exp has length 2(q-1).
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Construct GF(p^m). For m > 1 and no modulus given, the lexicographically
/// least irreducible monic polynomial of degree m is used.
pub fn make_field(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
    FiniteField::new(p, m, modulus).map(Arc::new)
}

impl FiniteField {
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u32;
        if m == 1 {
            if let Some(md) = modulus {
                if md.len() != 2 || md[1] % p != 1 {
                    return Err(Error::InvalidModulus(
                        "a prime field takes no modulus (or a monic linear one)".into(),
                    ));
                }
            }
            return Ok(FiniteField {
                p,
                m,
                q,
                modulus: None,
                exp: Vec::new(),
                log: Vec::new(),
            });
        }
        let modulus = match modulus {
            Some(md) => {
                let md: Vec<u32> = md.into_iter().map(|c| c % p).collect();
                if md.len() != m as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients for a degree-{} modulus, got {}",
                        m + 1,
                        m,
                        md.len()
                    )));
                }
                if md[m as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !fp_poly::is_irreducible(&md, p) {
                    return Err(Error::InvalidModulus(format!(
                        "{} is reducible over F_{}",
                        fp_poly::display(&md),
                        p
                    )));
                }
                md
            }
            None => fp_poly::least_irreducible(m, p),
        };
        let mut field = FiniteField {
            p,
            m,
            q,
            modulus: Some(modulus),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_log_tables();
        Ok(field)
    }

    fn build_log_tables(&mut self) {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        let gen = (1..self.q)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.slow_pow(g, order / r) != FieldElement::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let n = order as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            *slot = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.slow_mul(cur, gen);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        self.exp = exp;
        self.log = log;
    }

    fn slow_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let md = self.modulus.as_ref().expect("extension field");
        let prod = fp_poly::mul(&self.coeffs(a), &self.coeffs(b), self.p);
        let r = fp_poly::rem(&prod, md, self.p);
        self.from_coeffs(&r)
    }

    fn slow_pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::ElementSyntax(format!(
                "index {} out of range for a field of order {}",
                index, self.q
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut v = a.0;
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let v = coeffs
            .iter()
            .take(self.m as usize)
            .rev()
            .fold(0u32, |v, &c| v * self.p + c % self.p);
        FieldElement(v)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        for _ in 0..self.m {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        for _ in 0..self.m {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[i as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        if self.m == 1 {
            return Some(self.pow(a, (self.p - 2) as u64));
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        if self.m > 1 {
            let n = (self.q - 1) as u64;
            let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
            return FieldElement(self.exp[l as usize]);
        }
        let p = self.p as u64;
        let (mut base, mut acc, mut e) = (a.0 as u64, 1u64, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        FieldElement(acc as u32)
    }

    /// The unique p-th root, `a^(p^(m-1))`.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (self.p as u64).pow(self.m - 1))
    }

    /// Parse a field spec: `p`, `p^m` or `p^m:c0,c1,..,cm`.
    pub fn parse_spec(spec: &str) -> Result<Field> {
        let bad = || Error::FieldSpec(spec.to_string());
        let spec_t = spec.trim();
        let (base, modulus) = match spec_t.split_once(':') {
            Some((b, md)) => {
                let coeffs = md
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                (b, Some(coeffs))
            }
            None => (spec_t, None),
        };
        let (p, m) = match base.split_once('^') {
            Some((p, m)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                m.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (base.trim().parse::<u32>().map_err(|_| bad())?, 1),
        };
        make_field(p, m, modulus)
    }

    /// Canonical spec string, accepted by [`FiniteField::parse_spec`].
    pub fn spec(&self) -> String {
        match &self.modulus {
            None => self.p.to_string(),
            Some(md) => {
                let cs: Vec<String> = md.iter().map(|c| c.to_string()).collect();
                format!("{}^{}:{}", self.p, self.m, cs.join(","))
            }
        }
    }

    pub fn format_element(&self, a: FieldElement) -> String {
        if self.m == 1 {
            a.0.to_string()
        } else {
            let cs: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", cs.join(","))
        }
    }

    /// Parse an integer (reduced into the prime subfield, sign allowed) or a
    /// bracketed coefficient list `[c0,c1,..]`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        let bad = || Error::ElementSyntax(text.to_string());
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let cs = inner
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            if cs.len() > self.m as usize {
                return Err(bad());
            }
            let reduced: Vec<u32> = cs
                .iter()
                .map(|c| c.rem_euclid(self.p as i64) as u32)
                .collect();
            Ok(self.from_coeffs(&reduced))
        } else {
            t.parse::<i64>()
                .map(|v| self.from_int(v))
                .map_err(|_| bad())
        }
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// Dense polynomials over F_p, constant term first. Used only to build and
/// validate extension moduli.
pub(crate) mod fp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|v| v as u32).collect())
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap() as u64;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = lead * c as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    /// Monic polynomial of degree `deg` with lower coefficients given by the
    /// base-p digits of `index`.
    pub fn monic_from_index(mut index: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            out.push((index % p as u64) as u32);
            index /= p as u64;
        }
        out.push(1);
        out
    }

    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        for dd in 1..=deg / 2 {
            let count = (p as u64).pow(dd);
            for idx in 0..count {
                let g = monic_from_index(idx, dd, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn least_irreducible(deg: u32, p: u32) -> Vec<u32> {
        (0..(p as u64).pow(deg))
            .map(|idx| monic_from_index(idx, deg, p))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    }

    pub fn display(f: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &c) in f.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", i),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{}*{}", c, mono),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
