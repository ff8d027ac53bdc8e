use std::collections::BTreeMap;

use super::WaringSetup;
use crate::decomposition::{Decomposition, Form, StrategyKind};
use crate::error::{Error, Result};
use crate::poly::{BiPoly, Monomial};
use crate::vandermonde::decompose_pure;

/// Cut the triangle `i + j <= D` into `k(2k-1)` cells of side `h = D/(2k)`
/// and decompose each piece with the Vandermonde identity.
pub fn decompose_cover(p: &BiPoly, setup: &WaringSetup) -> Result<Decomposition> {
    setup.w()?;
    let f = setup.field();
    let k = setup.k();
    let unit = 2 * k * k;
    let deg = p.deg().finite().unwrap_or(0);
    let big_d = deg.div_ceil(unit).max(1) * unit;
    let h = big_d / (2 * k);

    let mut cells: BTreeMap<(u32, u32), Vec<(Monomial, crate::field::FieldElement)>> =
        BTreeMap::new();
    for (mono, c) in p.terms() {
        let (mut i, mut j) = (mono.x / h, mono.y / h);
        while i + j > 2 * k - 2 {
            if i >= j {
                i -= 1;
            } else {
                j -= 1;
            }
        }
        let rest = Monomial::new(mono.x - i * h, mono.y - j * h);
        if rest.total() > big_d / k {
            return Err(Error::Internal(format!(
                "cover cell ({}, {}) exceeds degree {}",
                i,
                j,
                big_d / k
            )));
        }
        cells.entry((i, j)).or_default().push((rest, c));
    }

    let mut terms = Vec::new();
    for ((i, j), piece) in cells {
        let piece = BiPoly::from_terms(f, piece);
        let dec = decompose_pure(&piece, &setup.identity, &setup.profile)?;
        for mut t in dec.terms {
            t.q = t.q.shift(i * h / k, j * h / k);
            terms.push(t);
        }
    }
    Ok(Decomposition {
        k,
        target: p.clone(),
        form: Form::Pure,
        terms,
        strategy: StrategyKind::Cover,
    })
}
