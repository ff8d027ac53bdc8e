use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::WaringSetup;
use crate::decomposition::{Decomposition, Form, StrategyKind, Term};
use crate::error::Result;
use crate::field::represent;
use crate::poly::BiPoly;
use crate::vandermonde::decompose_scaled;

/// Monomial by monomial: `x^i y^j = (x^a y^b)^k x^r y^s` with `r, s < k`,
/// and `x^r y^s` goes through the Vandermonde identity.
pub fn decompose_monomial(p: &BiPoly, setup: &WaringSetup) -> Result<Decomposition> {
    setup.w()?;
    let f = setup.field();
    let k = setup.k();
    let mut cache: HashMap<(u32, u32), Decomposition> = HashMap::new();
    let mut terms = Vec::new();
    for (mono, c) in p.terms() {
        let (a, r) = (mono.x / k, mono.x % k);
        let (b, s) = (mono.y / k, mono.y % k);
        if let Entry::Vacant(slot) = cache.entry((r, s)) {
            let base = BiPoly::monomial(f, crate::field::FieldElement::ONE, r, s);
            slot.insert(decompose_scaled(&base, &setup.identity)?);
        }
        for t in &cache[&(r, s)].terms {
            let q = t.q.shift(a, b);
            for e in represent(f.mul(c, t.delta), &setup.profile)? {
                terms.push(Term::pure(q.scale(e)));
            }
        }
    }
    Ok(Decomposition {
        k,
        target: p.clone(),
        form: Form::Pure,
        terms,
        strategy: StrategyKind::Monomial,
    })
}
