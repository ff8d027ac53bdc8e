//! Strict decompositions: `deg Q_i^k <= d + k^3` with a term count growing
//! only logarithmically in d.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::{strict_min_degree, strict_term_bound, WaringSetup};
use crate::approxroot::{approximate_root, approximate_root_uni, TrapeziumParams};
use crate::decomposition::{Decomposition, Form, Sign, StrategyKind, Term};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::{ceil_k, support_outside, BiPoly, Degree, UniPoly};
use crate::vandermonde::{decompose_pure, purify};

/// What the sweeps did, for auditing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictTrace {
    pub d: u32,
    pub k: u32,
    /// `m_0, m_1, ..` per sweep, ending with the first value `<= k^2`.
    pub m_seq: Vec<Vec<u32>>,
    /// The degree bound D each sweep started from.
    pub sweep_bounds: Vec<u32>,
    /// Largest total degree of the part with `deg_x >= k^2` at the start of
    /// each sweep.
    pub d_seq: Vec<u32>,
    pub trapezia: Vec<TrapeziumParams>,
    /// Top monomials `c x^D` split off before each sweep.
    pub peeled: usize,
    /// Pure terms from the sweeps, the low-degree tail and the low-x part.
    pub s0: usize,
    pub s1: usize,
    pub s2: usize,
}

struct Sweeps {
    residual: BiPoly,
    signed: Vec<Term>,
    trace: StrictTrace,
}

fn high_x_degree(h: &BiPoly, k2: u32) -> Option<u32> {
    h.terms()
        .filter(|(m, _)| m.x >= k2)
        .map(|(m, _)| m.total())
        .max()
}

/// Lower the degree of the part of P with `deg_x >= k^2` to at most d/k.
fn run_sweeps(p: &BiPoly, k: u32, max_sweeps: Option<usize>) -> Result<Sweeps> {
    let f = p.field();
    let d = p.deg().finite().unwrap_or(0);
    let k2 = k * k;
    let mut trace = StrictTrace {
        d,
        k,
        m_seq: Vec::new(),
        sweep_bounds: Vec::new(),
        d_seq: Vec::new(),
        trapezia: Vec::new(),
        peeled: 0,
        s0: 0,
        s1: 0,
        s2: 0,
    };
    let mut signed = Vec::new();
    let mut h = p.clone();

    while let Some(e) = high_x_degree(&h, k2) {
        if e as u64 * k as u64 <= d as u64 || max_sweeps.is_some_and(|cap| trace.d_seq.len() >= cap)
        {
            break;
        }
        let big_d = ceil_k(e as u64, k as u64) as u32;
        if trace.sweep_bounds.last().is_some_and(|&prev| big_d >= prev) {
            if max_sweeps.is_some() {
                break;
            }
            return Err(Error::Internal(format!(
                "strict sweep stalled at degree bound {}",
                big_d
            )));
        }
        trace.d_seq.push(e);
        trace.sweep_bounds.push(big_d);

        // Monomials above D have low x-degree and wait for the finishing step.
        let (mut active, reserve) = h.partition(|m| m.total() <= big_d);
        let top = active.coeff(big_d, 0);
        if !top.is_zero() {
            active = &active - &BiPoly::monomial(f, top, big_d, 0);
            signed.push(Term::scaled(
                top,
                BiPoly::monomial(f, FieldElement::ONE, big_d / k, 0),
            ));
            trace.peeled += 1;
        }

        let mut ms = vec![big_d];
        let mut done: Vec<TrapeziumParams> = Vec::new();
        let mut mi = big_d;
        while mi > k2 {
            let m = ceil_k(mi as u64, k as u64) as u32;
            let params = TrapeziumParams::new(m, big_d - m, big_d, k)?;
            let (mid, slab) = active.partition(|mono| mono.x < m);
            let root = approximate_root(&mid, params)?;
            let resid = root.residual(&mid, &params);
            signed.push(Term::signed(Sign::Plus, root.q));
            signed.push(Term::signed(
                Sign::Minus,
                BiPoly::monomial(f, FieldElement::ONE, m / k, params.n / k),
            ));
            active = &resid + &slab;
            done.push(params);
            for t in &done {
                if !support_outside(&active, &t.region())? {
                    return Err(Error::Internal(format!(
                        "residual meets trapezium (m={}, n={}) after step m={}",
                        t.m, t.n, m
                    )));
                }
            }
            mi = m - m / k;
            ms.push(mi);
        }
        trace.m_seq.push(ms);
        trace.trapezia.extend(done);
        h = &active + &reserve;
    }
    Ok(Sweeps {
        residual: h,
        signed,
        trace,
    })
}

/// Sweeps only, without the degree gate or the finishing steps. At most
/// `max_sweeps` sweeps are run.
pub fn strict_trace(p: &BiPoly, k: u32, max_sweeps: usize) -> Result<StrictTrace> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "exponent k must be at least 2".into(),
        ));
    }
    let ch = p.field().characteristic();
    if k % ch == 0 {
        return Err(Error::CharacteristicDividesK { p: ch, k });
    }
    Ok(run_sweeps(p, k, Some(max_sweeps))?.trace)
}

/// Pure terms `A_i(x)` with `sum A_i^k = x^j`.
fn power_of_x(j: u32, setup: &WaringSetup) -> Result<Vec<BiPoly>> {
    let f = setup.field();
    let k = setup.k();
    let (a, r) = (j / k, j % k);
    if r == 0 {
        return Ok(vec![BiPoly::monomial(f, FieldElement::ONE, a, 0)]);
    }
    let base = BiPoly::monomial(f, FieldElement::ONE, r, 0);
    let dec = decompose_pure(&base, &setup.identity, &setup.profile)?;
    Ok(dec.terms.into_iter().map(|t| t.q.shift(a, 0)).collect())
}

/// Pure decomposition of P with `deg Q_i^k <= deg P + k^3`.
///
/// Requires `deg P >= 2k^4`. The trace records the sweeps.
pub fn decompose_strict(p: &BiPoly, setup: &WaringSetup) -> Result<(Decomposition, StrictTrace)> {
    if p.field() != setup.field() {
        return Err(Error::FieldMismatch);
    }
    let w = setup.w()?;
    let k = setup.k();
    let d = p.deg().finite().unwrap_or(0);
    let min = strict_min_degree(k);
    if (d as u64) < min || p.is_zero() {
        return Err(Error::DegreeTooSmall { d, min });
    }
    let k2 = k * k;

    let Sweeps {
        residual,
        signed,
        mut trace,
    } = run_sweeps(p, k, None)?;
    let sweep_dec = Decomposition {
        k,
        target: p.clone(),
        form: Form::Signed,
        terms: signed,
        strategy: StrategyKind::Strict,
    };
    let mut terms = purify(sweep_dec, &setup.profile)?.terms;
    trace.s0 = terms.len();

    let (p2, p1) = residual.partition(|m| m.total() as u64 * k as u64 <= d as u64);
    if !p2.is_zero() {
        terms.extend(decompose_pure(&p2, &setup.identity, &setup.profile)?.terms);
    }
    trace.s1 = terms.len() - trace.s0;

    if let Some((bad, _)) = p1.terms().find(|(m, _)| m.x >= k2) {
        return Err(Error::Internal(format!(
            "monomial x^{} y^{} survived the sweeps",
            bad.x, bad.y
        )));
    }
    let mut x_powers: HashMap<u32, Vec<BiPoly>> = HashMap::new();
    for j in 0..k2 {
        let rj = p1.coeff_of_x(j);
        if rj.is_zero() {
            continue;
        }
        let uni = decompose_uni_strict(&rj, setup)?;
        if let Entry::Vacant(slot) = x_powers.entry(j) {
            slot.insert(power_of_x(j, setup)?);
        }
        for a in &x_powers[&j] {
            for s in &uni.terms {
                terms.push(Term::pure(a * &s.q));
            }
        }
    }
    trace.s2 = terms.len() - trace.s0 - trace.s1;

    let dec = Decomposition {
        k,
        target: p.clone(),
        form: Form::Pure,
        terms,
        strategy: StrategyKind::Strict,
    };
    check_strict(&dec, &trace, w, setup)?;
    Ok((dec, trace))
}

fn check_strict(
    dec: &Decomposition,
    trace: &StrictTrace,
    w: u32,
    setup: &WaringSetup,
) -> Result<()> {
    let (k, d) = (trace.k, trace.d);
    let rep = dec.verify();
    if !rep.ok {
        return Err(Error::Internal(
            "strict decomposition does not sum to the target".into(),
        ));
    }
    if rep.maxdeg > Degree::Finite(d + k * k * k) {
        return Err(Error::Internal(format!(
            "strict term degree {} exceeds {}",
            rep.maxdeg,
            d + k * k * k
        )));
    }
    for ms in &trace.m_seq {
        for pair in ms.windows(2) {
            let m = ceil_k(pair[0] as u64, k as u64) as u32;
            if pair[1] != m - m / k {
                return Err(Error::Internal("m-sequence breaks its recursion".into()));
            }
        }
    }
    for (i, &di) in trace.d_seq.iter().enumerate() {
        let cap = d as f64 * (-(i as f64) / (k * k) as f64).exp() + (k * k * k) as f64;
        if di as f64 > cap {
            return Err(Error::Internal(format!(
                "sweep {} starts at degree {} above {:.2}",
                i, di, cap
            )));
        }
    }
    let max_sweeps = ((k * k) as f64 * (2.0 * k as f64).ln()).ceil() as usize + 1;
    if trace.d_seq.len() > max_sweeps {
        return Err(Error::Internal(format!(
            "{} sweeps exceed {}",
            trace.d_seq.len(),
            max_sweeps
        )));
    }
    let bound = strict_term_bound(k, d, w, trace.trapezia.len(), trace.peeled, neg_cost(setup));
    if rep.s as u64 > bound {
        return Err(Error::Internal(format!(
            "strict term count {} exceeds {}",
            rep.s, bound
        )));
    }
    Ok(())
}

/// Terms needed for one subtracted k-th power.
pub(crate) fn neg_cost(setup: &WaringSetup) -> u32 {
    if setup.k() % 2 == 1 {
        1
    } else {
        setup.profile.neg_one_terms().map_or(1, |t| t.len() as u32)
    }
}

/// Pure one-variable decomposition of `R(y)`: descent by approximate roots
/// down to degree below `k^2`, then the Vandermonde identity.
pub fn decompose_uni_strict(r: &UniPoly, setup: &WaringSetup) -> Result<Decomposition> {
    if r.field() != setup.field() {
        return Err(Error::FieldMismatch);
    }
    setup.w()?;
    let f = setup.field();
    let k = setup.k();
    let k2 = k * k;
    let mut signed = Vec::new();
    let mut rest = r.clone();
    while let Some(deg) = rest.deg().finite().filter(|&e| e >= k2) {
        let m = ceil_k(deg as u64 + 1, k as u64) as u32;
        let q = approximate_root_uni(&rest, m, k)?;
        let top = UniPoly::monomial(f, FieldElement::ONE, m as usize);
        let next = top.add(&rest).sub(&q.pow(k as u64));
        if next.deg() >= Degree::Finite(m - m / k) {
            return Err(Error::Internal(format!(
                "one-variable descent stuck at degree {}",
                deg
            )));
        }
        signed.push(Term::signed(Sign::Plus, q.to_bipoly_y()));
        signed.push(Term::signed(
            Sign::Minus,
            BiPoly::monomial(f, FieldElement::ONE, 0, m / k),
        ));
        rest = next;
    }
    match rest.deg() {
        Degree::NegInf => {}
        Degree::Finite(0) => signed.push(Term::scaled(rest.coeff(0), BiPoly::one(f))),
        Degree::Finite(_) => {
            signed.extend(
                decompose_pure(&rest.to_bipoly_y(), &setup.identity, &setup.profile)?.terms,
            );
        }
    }
    let dec = Decomposition {
        k,
        target: r.to_bipoly_y(),
        form: Form::Signed,
        terms: signed,
        strategy: StrategyKind::Strict,
    };
    purify(dec, &setup.profile)
}
