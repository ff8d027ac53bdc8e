use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Degree, UniPoly};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Support-size product above which multiplication uses the dense kernel.
pub const DENSE_THRESHOLD: u64 = 1 << 20;

// Bounding boxes larger than this never go dense.
const MAX_DENSE_CELLS: u64 = 1 << 26;

/// Exponent pair `x^x y^y`. Ordered lexicographically, x first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn total(self) -> u32 {
        self.x + self.y
    }

    fn shifted(self, other: Monomial) -> Monomial {
        Monomial {
            x: self.x + other.x,
            y: self.y + other.y,
        }
    }
}

/// Sparse bivariate polynomial. Terms are kept sorted by monomial with no
/// zero coefficients.
#[derive(Clone)]
pub struct BiPoly {
    field: Field,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.field == *other.field
    }
}

impl Eq for BiPoly {}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{}]({})", self.field, self)
    }
}

impl BiPoly {
    pub fn zero(field: &Field) -> Self {
        BiPoly {
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &Field, c: FieldElement) -> Self {
        Self::monomial(field, c, 0, 0)
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, FieldElement::ONE)
    }

    pub fn monomial(field: &Field, c: FieldElement, x: u32, y: u32) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::new(x, y), c)]
        };
        BiPoly {
            field: field.clone(),
            terms,
        }
    }

    pub fn x(field: &Field) -> Self {
        Self::monomial(field, FieldElement::ONE, 1, 0)
    }

    pub fn y(field: &Field) -> Self {
        Self::monomial(field, FieldElement::ONE, 0, 1)
    }

    /// Build from arbitrary terms; duplicates are summed and zeros dropped.
    pub fn from_terms(
        field: &Field,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by_key(|&(m, _)| m);
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        BiPoly {
            field: field.clone(),
            terms: out,
        }
    }

    // Caller guarantees sorted, unique, nonzero.
    pub(crate) fn from_sorted_terms(field: &Field, terms: Vec<(Monomial, FieldElement)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        BiPoly {
            field: field.clone(),
            terms,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, FieldElement)> + '_ {
        self.terms.iter().copied()
    }

    pub fn coeff(&self, x: u32, y: u32) -> FieldElement {
        let key = Monomial::new(x, y);
        self.terms
            .binary_search_by_key(&key, |&(m, _)| m)
            .map(|i| self.terms[i].1)
            .unwrap_or(FieldElement::ZERO)
    }

    pub fn deg(&self) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| m.total())
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    pub fn deg_x(&self) -> Degree {
        self.terms
            .last()
            .map_or(Degree::NegInf, |(m, _)| Degree::Finite(m.x))
    }

    pub fn deg_y(&self) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| m.y)
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    fn check_field(&self, other: &BiPoly) -> Result<()> {
        if std::sync::Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn merge(&self, other: &BiPoly, negate_other: bool) -> BiPoly {
        let f = &self.field;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: FieldElement| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, conv(b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(a[i].1, conv(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, conv(c))));
        BiPoly {
            field: f.clone(),
            terms: out,
        }
    }

    pub fn try_add(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_field(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_field(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(BiPoly::zero(&self.field));
        }
        let work = self.len() as u64 * other.len() as u64;
        if work > DENSE_THRESHOLD && self.dense_box(other) <= MAX_DENSE_CELLS {
            Ok(self.mul_dense(other))
        } else {
            Ok(self.mul_sparse(other))
        }
    }

    fn dense_box(&self, other: &BiPoly) -> u64 {
        let dx = self.deg_x().finite().unwrap_or(0) as u64
            + other.deg_x().finite().unwrap_or(0) as u64
            + 1;
        let dy = self.deg_y().finite().unwrap_or(0) as u64
            + other.deg_y().finite().unwrap_or(0) as u64
            + 1;
        dx * dy
    }

    /// Schoolbook product over the sparse supports.
    pub fn mul_sparse(&self, other: &BiPoly) -> BiPoly {
        assert!(self.check_field(other).is_ok(), "field mismatch");
        let f = &self.field;
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                prods.push((ma.shifted(mb), f.mul(ca, cb)));
            }
        }
        prods.sort_unstable_by_key(|&(m, _)| m);
        let mut out: Vec<(Monomial, FieldElement)> = Vec::new();
        for (m, c) in prods {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        BiPoly {
            field: f.clone(),
            terms: out,
        }
    }

    /// Product accumulated in a dense coefficient grid over the bounding box.
    pub fn mul_dense(&self, other: &BiPoly) -> BiPoly {
        assert!(self.check_field(other).is_ok(), "field mismatch");
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(f);
        }
        let dy = (self.deg_y().finite().unwrap() + other.deg_y().finite().unwrap() + 1) as usize;
        let dx = (self.deg_x().finite().unwrap() + other.deg_x().finite().unwrap() + 1) as usize;
        let mut out = Vec::new();
        if f.is_prime_field() {
            let p = f.characteristic() as u64;
            let mut acc = vec![0u64; dx * dy];
            // Each product is below p^2 < 2^32; reduce before a cell can overflow.
            let flush_every = (u64::MAX / ((p - 1) * (p - 1)).max(1)).min(u32::MAX as u64) as usize;
            for (n, &(ma, ca)) in self.terms.iter().enumerate() {
                if n > 0 && n % flush_every == 0 {
                    acc.iter_mut().for_each(|v| *v %= p);
                }
                let base = ma.x as usize * dy + ma.y as usize;
                let ca = ca.index() as u64;
                for &(mb, cb) in &other.terms {
                    acc[base + mb.x as usize * dy + mb.y as usize] += ca * cb.index() as u64;
                }
            }
            for (idx, v) in acc.into_iter().enumerate() {
                let v = v % p;
                if v != 0 {
                    let c = f.from_int(v as i64);
                    out.push((Monomial::new((idx / dy) as u32, (idx % dy) as u32), c));
                }
            }
        } else {
            let mut acc = vec![FieldElement::ZERO; dx * dy];
            for &(ma, ca) in &self.terms {
                let base = ma.x as usize * dy + ma.y as usize;
                for &(mb, cb) in &other.terms {
                    let cell = &mut acc[base + mb.x as usize * dy + mb.y as usize];
                    *cell = f.add(*cell, f.mul(ca, cb));
                }
            }
            for (idx, c) in acc.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((Monomial::new((idx / dy) as u32, (idx % dy) as u32), c));
                }
            }
        }
        BiPoly {
            field: f.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: FieldElement) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let f = &self.field;
        BiPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|&(m, v)| (m, f.mul(v, c))).collect(),
        }
    }

    /// Multiply by `x^dx y^dy`.
    pub fn shift(&self, dx: u32, dy: u32) -> BiPoly {
        let s = Monomial::new(dx, dy);
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m.shifted(s), c)).collect(),
        }
    }

    /// Divide by `x^dx y^dy`; every term must be divisible.
    pub fn unshift(&self, dx: u32, dy: u32) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| {
                    assert!(m.x >= dx && m.y >= dy, "term not divisible by the shift");
                    (Monomial::new(m.x - dx, m.y - dy), c)
                })
                .collect(),
        }
    }

    /// `self^e` by square-and-multiply. The factor `p^nu` of the exponent is
    /// applied through the Frobenius map on exponents and coefficients.
    pub fn pow(&self, e: u64) -> BiPoly {
        let f = &self.field;
        if e == 0 {
            return BiPoly::one(f);
        }
        let p = f.characteristic() as u64;
        let (mut rest, mut frob) = (e, 1u64);
        while rest % p == 0 {
            rest /= p;
            frob *= p;
        }
        let mut result = if rest == 1 {
            self.clone()
        } else {
            self.pow_plain(rest)
        };
        if frob > 1 {
            let fe = u32::try_from(frob).expect("exponent too large");
            result = BiPoly {
                field: f.clone(),
                terms: result
                    .terms
                    .iter()
                    .map(|&(m, c)| (Monomial::new(m.x * fe, m.y * fe), f.pow(c, frob)))
                    .collect(),
            };
        }
        result
    }

    fn pow_plain(&self, mut e: u64) -> BiPoly {
        let mut base = self.clone();
        let mut acc: Option<BiPoly> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        acc.unwrap_or_else(|| BiPoly::one(&self.field))
    }

    /// Split into (terms satisfying `pred`, the rest).
    pub fn partition(&self, mut pred: impl FnMut(Monomial) -> bool) -> (BiPoly, BiPoly) {
        let (a, b): (Vec<_>, Vec<_>) = self.terms.iter().partition(|(m, _)| pred(*m));
        (
            BiPoly {
                field: self.field.clone(),
                terms: a,
            },
            BiPoly {
                field: self.field.clone(),
                terms: b,
            },
        )
    }

    /// Coefficient of `x^i`, as a polynomial in y.
    pub fn coeff_of_x(&self, i: u32) -> UniPoly {
        let start = self.terms.partition_point(|(m, _)| m.x < i);
        let mut coeffs = Vec::new();
        for &(m, c) in self.terms[start..].iter().take_while(|(m, _)| m.x == i) {
            coeffs.resize(m.y as usize + 1, FieldElement::ZERO);
            coeffs[m.y as usize] = c;
        }
        UniPoly::new(&self.field, coeffs)
    }

    /// `sum_i x^i c_i(y)`.
    pub fn from_x_coeffs(field: &Field, coeffs: &[(u32, UniPoly)]) -> BiPoly {
        let terms = coeffs.iter().flat_map(|(i, u)| {
            u.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, &c)| (Monomial::new(*i, j as u32), c))
                .collect::<Vec<_>>()
        });
        BiPoly::from_terms(field, terms)
    }

    pub fn eval(&self, x0: FieldElement, y0: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms.iter().fold(FieldElement::ZERO, |acc, &(m, c)| {
            let v = f.mul(c, f.mul(f.pow(x0, m.x as u64), f.pow(y0, m.y as u64)));
            f.add(acc, v)
        })
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        let f = &self.field;
        BiPoly {
            field: f.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }
}

/// Running sum of many polynomials.
pub struct Accumulator {
    field: Field,
    sums: HashMap<Monomial, FieldElement>,
}

impl Accumulator {
    pub fn new(field: &Field) -> Self {
        Accumulator {
            field: field.clone(),
            sums: HashMap::new(),
        }
    }

    pub fn add_scaled(&mut self, p: &BiPoly, c: FieldElement) {
        assert!(*p.field == *self.field, "field mismatch");
        let f = &self.field;
        for &(m, v) in &p.terms {
            let slot = self.sums.entry(m).or_insert(FieldElement::ZERO);
            *slot = f.add(*slot, f.mul(v, c));
        }
    }

    pub fn finish(self) -> BiPoly {
        BiPoly::from_terms(&self.field, self.sums)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::serialize(self))
    }
}
