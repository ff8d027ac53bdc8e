//! End-to-end decomposition strategies.

mod bounds;
mod cover;
mod monomial;
mod strict;

pub use bounds::{bound_table, strict_term_bound, BoundTable};
pub use cover::decompose_cover;
pub use monomial::decompose_monomial;
pub use strict::{decompose_strict, decompose_uni_strict, strict_trace, StrictTrace};

use std::fmt;
use std::str::FromStr;

use crate::decomposition::{Decomposition, Form, StrategyKind, Term};
use crate::error::{Error, Result};
use crate::field::{Field, WaringProfile};
use crate::poly::{frobenius_root, BiPoly};
use crate::vandermonde::{build_identity, decompose_pure, LinearPowerIdentity};

/// Everything the strategies need for one exponent over one field.
#[derive(Clone, Debug)]
pub struct WaringSetup {
    pub identity: LinearPowerIdentity,
    pub profile: WaringProfile,
}

impl WaringSetup {
    pub fn new(field: &Field, k: u32) -> Result<Self> {
        let identity = build_identity(field, k)?;
        let profile = WaringProfile::compute(field, k)?;
        Ok(WaringSetup { identity, profile })
    }

    pub fn field(&self) -> &Field {
        &self.identity.field
    }

    pub fn k(&self) -> u32 {
        self.identity.k
    }

    pub fn w(&self) -> Result<u32> {
        self.profile.require_w()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StrategyChoice {
    Vandermonde,
    Monomial,
    Cover,
    Strict,
    /// Strict when `deg P >= 2k^4`, cover otherwise.
    Auto,
}

impl FromStr for StrategyChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vandermonde" => Ok(StrategyChoice::Vandermonde),
            "monomial" => Ok(StrategyChoice::Monomial),
            "cover" => Ok(StrategyChoice::Cover),
            "strict" => Ok(StrategyChoice::Strict),
            "auto" => Ok(StrategyChoice::Auto),
            _ => Err(Error::InvalidArgument(format!("unknown strategy `{}`", s))),
        }
    }
}

impl fmt::Display for StrategyChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyChoice::Vandermonde => "vandermonde",
            StrategyChoice::Monomial => "monomial",
            StrategyChoice::Cover => "cover",
            StrategyChoice::Strict => "strict",
            StrategyChoice::Auto => "auto",
        })
    }
}

/// Minimum degree accepted by the strict strategy.
pub fn strict_min_degree(k: u32) -> u64 {
    2 * (k as u64).pow(4)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Send strict requests below the degree gate to the cover strategy.
    pub fallback: bool,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub decomposition: Decomposition,
    pub trace: Option<StrictTrace>,
    /// Set when the strict request was rerouted to the cover strategy.
    pub fell_back: bool,
}

/// Run one strategy in pure form.
pub fn decompose(
    p: &BiPoly,
    choice: StrategyChoice,
    setup: &WaringSetup,
    opts: Options,
) -> Result<Outcome> {
    if p.field() != setup.field() {
        return Err(Error::FieldMismatch);
    }
    let k = setup.k();
    let plain = |decomposition| {
        Ok(Outcome {
            decomposition,
            trace: None,
            fell_back: false,
        })
    };
    let meets_gate = p
        .deg()
        .finite()
        .is_some_and(|d| d as u64 >= strict_min_degree(k));
    match choice {
        StrategyChoice::Vandermonde => plain(decompose_pure(p, &setup.identity, &setup.profile)?),
        StrategyChoice::Monomial => plain(decompose_monomial(p, setup)?),
        StrategyChoice::Cover => plain(decompose_cover(p, setup)?),
        StrategyChoice::Auto if !meets_gate => plain(decompose_cover(p, setup)?),
        StrategyChoice::Strict if !meets_gate && opts.fallback => Ok(Outcome {
            decomposition: decompose_cover(p, setup)?,
            trace: None,
            fell_back: true,
        }),
        StrategyChoice::Strict | StrategyChoice::Auto => {
            let (decomposition, trace) = decompose_strict(p, setup)?;
            Ok(Outcome {
                decomposition,
                trace: Some(trace),
                fell_back: false,
            })
        }
    }
}

/// Split `K = k p^nu` with `p` not dividing `k`.
pub fn split_exponent(big_k: u32, p: u32) -> (u32, u32) {
    let (mut k, mut nu) = (big_k, 0);
    while k % p == 0 && k > 0 {
        k /= p;
        nu += 1;
    }
    (k, nu)
}

/// Decompose at an exponent divisible by the characteristic: take the
/// `p^nu`-th root of P, decompose it for the exponent `k`, and reuse the
/// terms, since `(sum T_i^k)^(p^nu) = sum T_i^(k p^nu)`.
pub fn reduce_exponent(
    p: &BiPoly,
    big_k: u32,
    choice: StrategyChoice,
    opts: Options,
) -> Result<Outcome> {
    let field = p.field();
    if big_k < 2 {
        return Err(Error::InvalidArgument(
            "exponent k must be at least 2".into(),
        ));
    }
    let (k, nu) = split_exponent(big_k, field.characteristic());
    if nu == 0 {
        return decompose(p, choice, &WaringSetup::new(field, k)?, opts);
    }
    let root = frobenius_root(p, nu)?;
    let inner = if k == 1 {
        Outcome {
            decomposition: Decomposition {
                k: 1,
                target: root.clone(),
                form: Form::Pure,
                terms: vec![Term::pure(root)],
                strategy: StrategyKind::Vandermonde,
            },
            trace: None,
            fell_back: false,
        }
    } else {
        decompose(&root, choice, &WaringSetup::new(field, k)?, opts)?
    };
    Ok(Outcome {
        decomposition: Decomposition {
            k: big_k,
            target: p.clone(),
            ..inner.decomposition
        },
        ..inner
    })
}
