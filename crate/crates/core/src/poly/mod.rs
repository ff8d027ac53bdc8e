//! Exact polynomials in one and two variables over a finite field.

mod bipoly;
mod parse;
mod region;
mod unipoly;

pub use bipoly::{Accumulator, BiPoly, Monomial, DENSE_THRESHOLD};
pub use parse::parse_poly;
pub use region::{support_outside, Region};
pub use unipoly::UniPoly;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `NegInf`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInf, Degree::NegInf) => Ordering::Equal,
            (Degree::NegInf, _) => Ordering::Less,
            (_, Degree::NegInf) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{}", d),
        }
    }
}

/// `k * ceil(x / k)`: the least multiple of k that is at least x.
pub fn ceil_k(x: u64, k: u64) -> u64 {
    assert!(k >= 1, "ceil_k needs k >= 1");
    x.div_ceil(k) * k
}

/// Evaluate `u` at `t = p`.
pub fn substitute(u: &UniPoly, p: &BiPoly) -> Result<BiPoly> {
    if u.field() != p.field() {
        return Err(Error::FieldMismatch);
    }
    let mut acc = BiPoly::zero(p.field());
    for &c in u.coeffs().iter().rev() {
        acc = &(&acc * p) + &BiPoly::constant(p.field(), c);
    }
    Ok(acc)
}

/// The `p^nu`-th root of `p`: exponents are divided by `p^nu` and each
/// coefficient replaced by its `p^nu`-th root.
pub fn frobenius_root(poly: &BiPoly, nu: u32) -> Result<BiPoly> {
    let field = poly.field();
    let ch = field.characteristic() as u64;
    let step = ch
        .checked_pow(nu)
        .filter(|&s| s <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidArgument("p^nu overflows".into()))? as u32;
    let mut terms = Vec::with_capacity(poly.len());
    for (mono, c) in poly.terms() {
        if mono.x % step != 0 || mono.y % step != 0 {
            return Err(Error::NotAPower(step as u64));
        }
        let mut root = c;
        for _ in 0..nu {
            root = field.pth_root(root);
        }
        terms.push((Monomial::new(mono.x / step, mono.y / step), root));
    }
    Ok(BiPoly::from_terms(field, terms))
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::{BiPoly, Monomial};
    use crate::field::Field;
    use proptest::prelude::*;

    /// Raw `(i, j, c)` triples; `max_deg` bounds each exponent separately.
    pub(crate) fn arb_poly(
        p: u32,
        max_deg: u32,
        max_terms: usize,
    ) -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
        prop::collection::vec((0..=max_deg, 0..=max_deg, 0..p), 0..max_terms)
    }

    pub(crate) fn build(f: &Field, raw: &[(u32, u32, u32)]) -> BiPoly {
        BiPoly::from_terms(
            f,
            raw.iter()
                .map(|&(i, j, c)| (Monomial::new(i, j), f.from_int(c as i64))),
        )
    }
}
