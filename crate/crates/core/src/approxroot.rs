//! Approximate k-th roots: the unique Q, monic in x, such that
//! `P + x^m y^n - Q^k` has no monomial in the trapezium
//! `m - m/k <= i <= m, j >= n - n/k`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{BiPoly, Degree, Monomial, Region, UniPoly};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TrapeziumParams {
    pub m: u32,
    pub n: u32,
    pub d: u32,
    pub k: u32,
}

impl TrapeziumParams {
    pub fn new(m: u32, n: u32, d: u32, k: u32) -> Result<Self> {
        if k == 0 || m == 0 || m % k != 0 || n % k != 0 || m.checked_add(n) != Some(d) {
            return Err(Error::InvalidArgument(format!(
                "trapezium needs m > 0, k | m, k | n and d = m + n (m={}, n={}, d={}, k={})",
                m, n, d, k
            )));
        }
        Ok(TrapeziumParams { m, n, d, k })
    }

    pub fn region(&self) -> Region {
        Region::Trapezium {
            m: self.m,
            n: self.n,
            k: self.k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxRootWitness {
    pub q: BiPoly,
    /// `b[l]` is the coefficient of `x^(m/k - l)` in Q.
    pub b: Vec<UniPoly>,
}

impl ApproxRootWitness {
    /// `P + x^m y^n - Q^k`.
    pub fn residual(&self, p: &BiPoly, params: &TrapeziumParams) -> BiPoly {
        let f = p.field();
        let top = BiPoly::monomial(f, FieldElement::ONE, params.m, params.n);
        &(p + &top) - &self.q.pow(params.k as u64)
    }
}

fn check_char(field: &Field, k: u32) -> Result<()> {
    let p = field.characteristic();
    if k % p == 0 {
        return Err(Error::CharacteristicDividesK { p, k });
    }
    Ok(())
}

/// Solve the triangular system by forward substitution. `[z^l] B^r` for
/// `B = sum b_j z^j` is kept for every `r < k`, so each step costs O(k l)
/// univariate products.
pub fn approximate_root(p: &BiPoly, params: TrapeziumParams) -> Result<ApproxRootWitness> {
    let f = p.field();
    let TrapeziumParams { m, n, d, k } =
        TrapeziumParams::new(params.m, params.n, params.d, params.k)?;
    check_char(f, k)?;
    if p.deg() > Degree::Finite(d) {
        return Err(Error::InvalidArgument(format!(
            "deg P = {} exceeds d = {}",
            p.deg(),
            d
        )));
    }
    if p.deg_x() >= Degree::Finite(m) {
        return Err(Error::InvalidArgument(format!(
            "deg_x P = {} is not below m = {}",
            p.deg_x(),
            m
        )));
    }

    let len = (m / k) as usize;
    let nk = (n / k) as usize;
    let thresh = (n - n / k) as usize;
    let inv_k = f.inv(f.from_int(k as i64)).expect("k invertible");

    let b0 = UniPoly::monomial(f, FieldElement::ONE, nk);
    let mut b = vec![b0];
    // pw[r][l] = [z^l] B^(r+1), r + 1 < k.
    let mut pw: Vec<Vec<UniPoly>> = (1..k)
        .map(|r| vec![UniPoly::monomial(f, FieldElement::ONE, nk * r as usize)])
        .collect();

    for l in 1..=len {
        let mut s = UniPoly::zero(f);
        for r in 2..=k as usize {
            let mut next = s.shift_up(nk);
            for j in 1..l {
                next = next.add(&b[j].mul(&pw[r - 2][l - j]));
            }
            s = next;
            if r < k as usize {
                pw[r - 1].push(s.clone());
            }
        }
        let a = p.coeff_of_x(m - l as u32);
        let bl = a.sub(&s).truncate_shift_down(thresh).scale(inv_k);
        if bl.deg() > Degree::Finite((nk + l) as u32) {
            return Err(Error::Internal(format!(
                "approximate root coefficient b_{} exceeds its degree bound",
                l
            )));
        }
        // Add the b_l contribution r b_0^(r-1) b_l to every stored power.
        pw[0].push(bl.clone());
        for r in 2..k as usize {
            let extra = bl.shift_up(nk * (r - 1)).scale(f.from_int(r as i64));
            pw[r - 1][l] = pw[r - 1][l].add(&extra);
        }
        b.push(bl);
    }

    let coeffs: Vec<(u32, UniPoly)> = b
        .iter()
        .enumerate()
        .map(|(l, bl)| ((len - l) as u32, bl.clone()))
        .collect();
    Ok(ApproxRootWitness {
        q: BiPoly::from_x_coeffs(f, &coeffs),
        b,
    })
}

/// One-variable analogue: the monic `q` of degree `m/k` with
/// `deg(y^m + r - q^k) < m - m/k`.
pub fn approximate_root_uni(r: &UniPoly, m: u32, k: u32) -> Result<UniPoly> {
    let f = r.field();
    check_char(f, k)?;
    if r.deg() >= Degree::Finite(m) {
        return Err(Error::InvalidArgument(format!(
            "deg R = {} is not below m = {}",
            r.deg(),
            m
        )));
    }
    // Same system with the variable renamed to x and n = 0.
    let as_x = BiPoly::from_terms(
        f,
        r.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::new(i as u32, 0), c)),
    );
    let w = approximate_root(&as_x, TrapeziumParams::new(m, 0, m, k)?)?;
    let coeffs = (0..=m / k).map(|i| w.q.coeff(i, 0)).collect();
    Ok(UniPoly::new(f, coeffs))
}

/// `k! / (i_0! ... i_r!)` with `sum i_j = k`.
pub fn multinomial(parts: &[u32]) -> BigUint {
    let fact = |n: u32| (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i);
    let k: u32 = parts.iter().sum();
    parts.iter().fold(fact(k), |acc, &i| acc / fact(i))
}

/// `[z^l] (b_0 + b_1 z + ... + b_(l-1) z^(l-1))^k`, written out as the
/// multinomial sum over `i_0 + ... + i_(l-1) = k`, `sum j i_j = l`.
pub fn system_rhs(b: &[UniPoly], k: u32) -> UniPoly {
    let f = b[0].field().clone();
    let l = b.len() as u32;
    let p = BigUint::from(f.characteristic());
    let mut acc = UniPoly::zero(&f);
    let mut parts = vec![0u32; b.len()];

    fn rec(
        j: u32,
        left_weight: u32,
        left_count: u32,
        parts: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if j == 0 {
            if left_weight == 0 {
                parts[0] = left_count;
                visit(parts);
            }
            return;
        }
        let mut i = 0;
        while i * j <= left_weight && i <= left_count {
            parts[j as usize] = i;
            rec(j - 1, left_weight - i * j, left_count - i, parts, visit);
            i += 1;
        }
        parts[j as usize] = 0;
    }

    let mut visit = |parts: &[u32]| {
        let c = multinomial(parts) % &p;
        let c = f.from_int(c.to_u64_digits().first().copied().unwrap_or(0) as i64);
        if c.is_zero() {
            return;
        }
        let mut term = UniPoly::monomial(&f, c, 0);
        for (j, &e) in parts.iter().enumerate() {
            if e > 0 {
                term = term.mul(&b[j].pow(e as u64));
            }
        }
        acc = acc.add(&term);
    };
    rec(l - 1, l, k, &mut parts, &mut visit);
    acc
}
