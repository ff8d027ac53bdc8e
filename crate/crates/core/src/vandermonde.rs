//! The differentiated Vandermonde identity and the decompositions it yields.

use crate::decomposition::{Decomposition, Form, StrategyKind, Term};
use crate::error::{Error, Result};
use crate::field::{represent, Field, FieldElement, WaringProfile};
use crate::poly::{BiPoly, UniPoly};

/// Determinant of the matrix `(alpha_i^j)`, i.e. `prod_{i<j} (alpha_j - alpha_i)`.
pub fn vandermonde_det(field: &Field, alphas: &[FieldElement]) -> FieldElement {
    let mut det = FieldElement::ONE;
    for (i, &ai) in alphas.iter().enumerate() {
        for &aj in &alphas[i + 1..] {
            det = field.mul(det, field.sub(aj, ai));
        }
    }
    det
}

/// `sum_i (t + alpha_i)^k / beta_i = gamma k t + delta`.
#[derive(Clone, Debug)]
pub struct LinearPowerIdentity {
    pub field: Field,
    pub k: u32,
    pub alphas: Vec<FieldElement>,
    pub betas: Vec<FieldElement>,
    pub gamma: FieldElement,
    pub delta: FieldElement,
}

pub(crate) fn check_exponent(field: &Field, k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "exponent k must be at least 2".into(),
        ));
    }
    let p = field.characteristic();
    if k % p == 0 {
        return Err(Error::CharacteristicDividesK { p, k });
    }
    Ok(())
}

/// Uses the first k elements of the field as the `alpha_i`.
pub fn build_identity(field: &Field, k: u32) -> Result<LinearPowerIdentity> {
    check_exponent(field, k)?;
    if field.order() <= k {
        return Err(Error::FieldTooSmall {
            q: field.order(),
            k,
        });
    }
    let alphas: Vec<FieldElement> = field.elements().take(k as usize).collect();
    let det = vandermonde_det(field, &alphas);
    let betas: Vec<FieldElement> = alphas
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = alphas
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(FieldElement::ONE, |acc, (_, &aj)| {
                    field.mul(acc, field.sub(ai, aj))
                });
            field.div(prod, det).expect("distinct alphas")
        })
        .collect();

    let expansion = expand(field, k, &alphas, &betas);
    let kk = field.from_int(k as i64);
    let gamma = field.div(expansion.coeff(1), kk).expect("k invertible");
    let delta = expansion.coeff(0);
    let id = LinearPowerIdentity {
        field: field.clone(),
        k,
        alphas,
        betas,
        gamma,
        delta,
    };
    if gamma.is_zero() || !id.residual().is_zero() {
        return Err(Error::Internal(
            "linear power identity failed to verify".into(),
        ));
    }
    Ok(id)
}

fn expand(field: &Field, k: u32, alphas: &[FieldElement], betas: &[FieldElement]) -> UniPoly {
    let mut acc = UniPoly::zero(field);
    for (&a, &b) in alphas.iter().zip(betas) {
        let lin = UniPoly::new(field, vec![a, FieldElement::ONE]);
        let inv = field.inv(b).expect("nonzero beta");
        acc = acc.add(&lin.pow(k as u64).scale(inv));
    }
    acc
}

impl LinearPowerIdentity {
    /// `sum_i (t + alpha_i)^k / beta_i - gamma k t - delta`, as a polynomial in t.
    pub fn residual(&self) -> UniPoly {
        let f = &self.field;
        let lhs = expand(f, self.k, &self.alphas, &self.betas);
        let gk = f.mul(self.gamma, f.from_int(self.k as i64));
        lhs.sub(&UniPoly::new(f, vec![self.delta, gk]))
    }

    /// Scalars `delta_i = 1 / (beta_i (gamma k)^k)`.
    pub fn scalars(&self) -> Vec<FieldElement> {
        let f = &self.field;
        let gk = f.mul(self.gamma, f.from_int(self.k as i64));
        let gkk = f.pow(gk, self.k as u64);
        self.betas
            .iter()
            .map(|&b| f.inv(f.mul(b, gkk)).expect("nonzero"))
            .collect()
    }

    /// Constants `alpha_i gamma k - delta` added to the target in each term.
    pub fn offsets(&self) -> Vec<FieldElement> {
        let f = &self.field;
        let gk = f.mul(self.gamma, f.from_int(self.k as i64));
        self.alphas
            .iter()
            .map(|&a| f.sub(f.mul(a, gk), self.delta))
            .collect()
    }
}

/// `P = sum delta_i Q_i^k` with `Q_i = P - delta + alpha_i gamma k`.
pub fn decompose_scaled(p: &BiPoly, id: &LinearPowerIdentity) -> Result<Decomposition> {
    if p.field() != &id.field {
        return Err(Error::FieldMismatch);
    }
    let f = p.field();
    let terms = id
        .scalars()
        .into_iter()
        .zip(id.offsets())
        .map(|(d, off)| Term::scaled(d, p + &BiPoly::constant(f, off)))
        .collect();
    Ok(Decomposition {
        k: id.k,
        target: p.clone(),
        form: Form::Scaled,
        terms,
        strategy: StrategyKind::Vandermonde,
    })
}

/// Rewrite every scaled term `delta Q^k` as `sum_j (e_j Q)^k` where
/// `delta = sum_j e_j^k`.
pub fn purify(dec: Decomposition, profile: &WaringProfile) -> Result<Decomposition> {
    profile.require_w()?;
    let f = dec.target.field().clone();
    let mut terms = Vec::with_capacity(dec.terms.len());
    for t in dec.terms {
        let mut c = t.delta;
        if t.sign == crate::decomposition::Sign::Minus {
            c = f.neg(c);
        }
        if c == FieldElement::ONE {
            terms.push(Term::pure(t.q));
            continue;
        }
        for e in represent(c, profile)? {
            terms.push(Term::pure(t.q.scale(e)));
        }
    }
    Ok(Decomposition {
        terms,
        form: Form::Pure,
        ..dec
    })
}

/// Pure form of [`decompose_scaled`]: at most `k w` terms.
pub fn decompose_pure(
    p: &BiPoly,
    id: &LinearPowerIdentity,
    profile: &WaringProfile,
) -> Result<Decomposition> {
    if profile.k() != id.k {
        return Err(Error::InvalidArgument(
            "profile and identity use different exponents".into(),
        ));
    }
    profile.require_w()?;
    purify(decompose_scaled(p, id)?, profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::tests_support::{arb_poly, build};
    use crate::poly::{parse_poly, substitute, Degree};
    use proptest::prelude::*;

    fn cofactor_det(f: &Field, m: &[Vec<FieldElement>]) -> FieldElement {
        let n = m.len();
        if n == 0 {
            return FieldElement::ONE;
        }
        let mut acc = FieldElement::ZERO;
        for col in 0..n {
            let minor: Vec<Vec<FieldElement>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != col)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = f.mul(m[0][col], cofactor_det(f, &minor));
            acc = if col % 2 == 0 {
                f.add(acc, term)
            } else {
                f.sub(acc, term)
            };
        }
        acc
    }

    fn vandermonde_matrix(f: &Field, alphas: &[FieldElement]) -> Vec<Vec<FieldElement>> {
        alphas
            .iter()
            .map(|&a| (0..alphas.len()).map(|j| f.pow(a, j as u64)).collect())
            .collect()
    }

    #[test]
    fn det_examples() {
        let f = make_field(5, 1, None).unwrap();
        assert_eq!(vandermonde_det(&f, &[f.from_int(3)]), FieldElement::ONE);
        assert_eq!(
            vandermonde_det(&f, &[FieldElement::ZERO, FieldElement::ZERO]),
            FieldElement::ZERO
        );
        let a = [f.from_int(0), f.from_int(1), f.from_int(2)];
        let det = vandermonde_det(&f, &a);
        assert_eq!(det, cofactor_det(&f, &vandermonde_matrix(&f, &a)));
        assert_eq!(det, f.from_int(2));
        // The product written the other way round, prod_{i<j}(a_i - a_j), is -2 = 3.
        assert_eq!(f.neg(det), f.from_int(3));
    }

    #[test]
    fn identity_f5_k2() {
        let f = make_field(5, 1, None).unwrap();
        let id = build_identity(&f, 2).unwrap();
        assert_eq!(id.alphas, vec![f.from_int(0), f.from_int(1)]);
        assert_eq!(id.betas, vec![f.from_int(-1), f.from_int(1)]);
        assert_eq!(id.gamma, f.from_int(1));
        assert_eq!(id.delta, f.from_int(1));
    }

    #[test]
    fn identity_errors() {
        let gf4 = make_field(2, 2, None).unwrap();
        assert_eq!(
            build_identity(&gf4, 5).unwrap_err(),
            Error::FieldTooSmall { q: 4, k: 5 }
        );
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(
            build_identity(&f5, 5).unwrap_err(),
            Error::CharacteristicDividesK { p: 5, k: 5 }
        );
    }

    #[test]
    fn identity_residual_vanishes_on_small_fields() {
        for (p, m) in [(7, 1), (2, 3), (3, 2), (11, 1), (2, 4), (5, 2)] {
            let f = make_field(p, m, None).unwrap();
            for k in 2..=6 {
                if k % p == 0 || f.order() <= k {
                    continue;
                }
                let id = build_identity(&f, k).unwrap();
                assert!(id.residual().is_zero(), "p={} m={} k={}", p, m, k);
            }
        }
    }

    #[test]
    fn scaled_examples() {
        let f5 = make_field(5, 1, None).unwrap();
        let id = build_identity(&f5, 2).unwrap();
        let zero = decompose_scaled(&BiPoly::zero(&f5), &id).unwrap();
        assert_eq!(zero.s(), 2);
        assert!(zero.verify().ok);
        let xy = parse_poly("x*y", &f5).unwrap();
        let dec = decompose_scaled(&xy, &id).unwrap();
        let rep = dec.verify();
        assert!(rep.ok);
        assert_eq!(rep.s, 2);
        assert!(rep.maxdeg <= Degree::Finite(4));

        let f7 = make_field(7, 1, None).unwrap();
        let id = build_identity(&f7, 3).unwrap();
        let p = parse_poly("x^3 + 2*x*y + 5*y^2 + 1", &f7).unwrap();
        let rep = decompose_scaled(&p, &id).unwrap().verify();
        assert!(rep.ok);
        assert_eq!(rep.s, 3);
        assert!(rep.maxdeg <= Degree::Finite(9));
    }

    #[test]
    fn pure_examples() {
        let f5 = make_field(5, 1, None).unwrap();
        let id = build_identity(&f5, 3).unwrap();
        let prof = WaringProfile::compute(&f5, 3).unwrap();
        let dec = decompose_pure(&parse_poly("x*y", &f5).unwrap(), &id, &prof).unwrap();
        let rep = dec.verify();
        assert!(rep.ok && dec.is_pure());
        assert!(rep.s <= 3);
        assert!(rep.maxdeg <= Degree::Finite(6));

        let gf4 = make_field(2, 2, None).unwrap();
        let id = build_identity(&gf4, 3).unwrap();
        let prof = WaringProfile::compute(&gf4, 3).unwrap();
        let err = decompose_pure(&BiPoly::x(&gf4), &id, &prof).unwrap_err();
        assert_eq!(err, Error::NotWaringField { q: 4, k: 3 });
    }

    #[test]
    fn scaled_to_pure_preserves_sum() {
        let f7 = make_field(7, 1, None).unwrap();
        let id = build_identity(&f7, 2).unwrap();
        let prof = WaringProfile::compute(&f7, 2).unwrap();
        let p = parse_poly("3*x^2*y + 6*y + 2", &f7).unwrap();
        let scaled = decompose_scaled(&p, &id).unwrap();
        assert!(scaled.verify().ok);
        let pure = purify(scaled, &prof).unwrap();
        assert!(pure.verify().ok);
        assert!(pure.s() <= 2 * prof.w().unwrap() as usize);
    }

    proptest! {
        #[test]
        fn det_matches_cofactor(raw in proptest::collection::vec(0u32..13, 0..6)) {
            let f = make_field(13, 1, None).unwrap();
            let a: Vec<FieldElement> = raw.iter().map(|&v| f.from_int(v as i64)).collect();
            prop_assert_eq!(vandermonde_det(&f, &a), cofactor_det(&f, &vandermonde_matrix(&f, &a)));
        }

        #[test]
        fn substitution_closure(raw in arb_poly(11, 6, 8), k in 2u32..6) {
            let f = make_field(11, 1, None).unwrap();
            let p = build(&f, &raw);
            let id = build_identity(&f, k).unwrap();
            let dec_t = decompose_scaled(&BiPoly::x(&f), &id).unwrap();
            let dec_p = decompose_scaled(&p, &id).unwrap();
            for (tt, tp) in dec_t.terms.iter().zip(&dec_p.terms) {
                prop_assert_eq!(tt.delta, tp.delta);
                let u = UniPoly::new(&f, (0..=1).map(|i| tt.q.coeff(i, 0)).collect());
                prop_assert_eq!(substitute(&u, &p).unwrap(), tp.q.clone());
            }
        }

        #[test]
        fn specialization(raw in arb_poly(7, 6, 8), x0 in 0i64..7, y0 in 0i64..7) {
            let f = make_field(7, 1, None).unwrap();
            let p = build(&f, &raw);
            let id = build_identity(&f, 3).unwrap();
            let prof = WaringProfile::compute(&f, 3).unwrap();
            let dec = decompose_pure(&p, &id, &prof).unwrap();
            let (x0, y0) = (f.from_int(x0), f.from_int(y0));
            let sum = dec.terms.iter().fold(FieldElement::ZERO, |acc, t| f.add(acc, f.pow(t.q.eval(x0, y0), 3)));
            prop_assert_eq!(sum, p.eval(x0, y0));
        }

        #[test]
        fn bounds_hold(raw in arb_poly(13, 8, 10), k in 2u32..6) {
            let f = make_field(13, 1, None).unwrap();
            let p = build(&f, &raw);
            let id = build_identity(&f, k).unwrap();
            let prof = WaringProfile::compute(&f, k).unwrap();
            let w = prof.w().unwrap() as usize;
            let dec = decompose_pure(&p, &id, &prof).unwrap();
            let rep = dec.verify();
            prop_assert!(rep.ok);
            prop_assert!(rep.s <= k as usize * w);
            if let Some(d) = p.deg().finite() {
                prop_assert!(rep.maxdeg <= Degree::Finite(k * d));
            }
        }
    }
}
