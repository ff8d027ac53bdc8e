use std::fmt;

use super::{BiPoly, Degree, Monomial};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Dense univariate polynomial, constant term first, trailing zeros trimmed.
/// When mixed with bivariate polynomials the variable is y.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.to_bipoly_y())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bipoly_y())
    }
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(field: &Field, c: FieldElement, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![FieldElement::ZERO; e + 1];
        coeffs[e] = c;
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n as u32 - 1),
        }
    }

    /// y-adic valuation: the least exponent with a nonzero coefficient.
    pub fn val(&self) -> Result<u32> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| i as u32)
            .ok_or(Error::ZeroValuation)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if f.is_prime_field() {
            let p = f.characteristic() as u64;
            let mut acc = vec![0u64; n];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a = a.index() as u64;
                for (j, b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += a * b.index() as u64;
                }
                // Keep cells far from overflow: every row adds at most (p-1)^2.
                if i % 4096 == 4095 {
                    acc.iter_mut().for_each(|v| *v %= p);
                }
            }
            return UniPoly::new(
                f,
                acc.into_iter()
                    .map(|v| f.from_int((v % p) as i64))
                    .collect(),
            );
        }
        let mut acc = vec![FieldElement::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = f.add(acc[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, acc)
    }

    pub fn scale(&self, c: FieldElement) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiply by `y^s`.
    pub fn shift_up(&self, s: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::ZERO; s];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Drop the coefficients of `y^0 .. y^(s-1)` and divide by `y^s`.
    pub fn truncate_shift_down(&self, s: usize) -> UniPoly {
        let coeffs = self.coeffs.iter().skip(s).copied().collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::monomial(&self.field, FieldElement::ONE, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, t: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, t), c))
    }

    pub fn to_bipoly_y(&self) -> BiPoly {
        BiPoly::from_sorted_terms(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, &c)| (Monomial::new(0, j as u32), c))
                .collect(),
        )
    }

    /// Inverse of [`UniPoly::to_bipoly_y`]; errors if `p` involves x.
    pub fn from_bipoly_y(p: &BiPoly) -> Result<UniPoly> {
        if p.deg_x() > Degree::Finite(0) {
            return Err(Error::InvalidArgument("polynomial involves x".into()));
        }
        Ok(p.coeff_of_x(0))
    }
}
