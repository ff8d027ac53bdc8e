use std::fmt;

use crate::field::FieldElement;
use crate::poly::{Accumulator, BiPoly, Degree};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// How the terms of a decomposition combine.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Form {
    /// `sum delta_i Q_i^k`.
    Scaled,
    /// `sum +-Q_i^k`; intermediate only.
    Signed,
    /// `sum Q_i^k`.
    Pure,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum StrategyKind {
    Vandermonde,
    Monomial,
    Cover,
    Strict,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 4] = [
        StrategyKind::Vandermonde,
        StrategyKind::Monomial,
        StrategyKind::Cover,
        StrategyKind::Strict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Vandermonde => "vandermonde",
            StrategyKind::Monomial => "monomial",
            StrategyKind::Cover => "cover",
            StrategyKind::Strict => "strict",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub delta: FieldElement,
    pub sign: Sign,
    pub q: BiPoly,
}

impl Term {
    pub fn pure(q: BiPoly) -> Self {
        Term {
            delta: FieldElement::ONE,
            sign: Sign::Plus,
            q,
        }
    }

    pub fn signed(sign: Sign, q: BiPoly) -> Self {
        Term {
            delta: FieldElement::ONE,
            sign,
            q,
        }
    }

    pub fn scaled(delta: FieldElement, q: BiPoly) -> Self {
        Term {
            delta,
            sign: Sign::Plus,
            q,
        }
    }
}

/// `target = sum sign_i delta_i Q_i^k`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub k: u32,
    pub target: BiPoly,
    pub form: Form,
    pub terms: Vec<Term>,
    pub strategy: StrategyKind,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub ok: bool,
    pub s: usize,
    pub maxdeg: Degree,
    /// `sum sign delta Q^k - target`.
    pub residual: BiPoly,
}

impl Decomposition {
    /// Number of terms.
    pub fn s(&self) -> usize {
        self.terms.len()
    }

    /// Largest `deg Q_i^k`; zero terms do not count.
    pub fn max_deg(&self) -> Degree {
        self.terms
            .iter()
            .filter_map(|t| t.q.deg().finite())
            .map(|d| Degree::Finite(d * self.k))
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Exact check of the identity.
    pub fn verify(&self) -> VerifyReport {
        let field = self.target.field();
        let mut acc = Accumulator::new(field);
        for t in &self.terms {
            let c = match t.sign {
                Sign::Plus => t.delta,
                Sign::Minus => field.neg(t.delta),
            };
            if c.is_zero() {
                continue;
            }
            acc.add_scaled(&t.q.pow(self.k as u64), c);
        }
        acc.add_scaled(&self.target, field.neg(FieldElement::ONE));
        let residual = acc.finish();
        VerifyReport {
            ok: residual.is_zero(),
            s: self.s(),
            maxdeg: self.max_deg(),
            residual,
        }
    }

    pub fn is_pure(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.delta == FieldElement::ONE && t.sign == Sign::Plus)
    }
}
