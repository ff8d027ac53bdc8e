/// Degree and term-count guarantees of the four strategies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundTable {
    /// `(deg bound, s bound)` pairs.
    pub vandermonde: (u64, u64),
    pub monomial: (u64, u64),
    pub cover: (u64, u64),
    pub strict_deg: u64,
    /// `2k^3 ln(d/k+1) ln(2k) + 7k^4 ln(k) w^2`.
    pub strict_loose_s: f64,
    /// `2k^3 ln(d/k+1) ln(2k) + kw + k^3 w (k(w + 3 ln k) + 2)`.
    pub strict_sharp_s: f64,
}

pub fn bound_table(k: u32, d: u32, w: u32) -> BoundTable {
    let (k, d, w) = (k as u64, d as u64, w as u64);
    let (kf, df, wf) = (k as f64, d as f64, w as f64);
    let sweeps = 2.0 * kf.powi(3) * (df / kf + 1.0).ln() * (2.0 * kf).ln();
    BoundTable {
        vandermonde: (k * d, k * w),
        monomial: (d + 2 * (k - 1) * (k - 1), k * w * (d + 1) * (d + 2) / 2),
        cover: (2 * d + 4 * k * k, k * k * (2 * k - 1) * w),
        strict_deg: d + k * k * k,
        strict_loose_s: sweeps + 7.0 * kf.powi(4) * kf.ln() * wf * wf,
        strict_sharp_s: sweeps + kf * wf + kf.powi(3) * wf * (kf * (wf + 3.0 * kf.ln()) + 2.0),
    }
}

/// Term-count bound that the strict implementation guarantees.
///
/// `n_trap` trapezia each cost one positive term and `c_neg` terms for the
/// subtracted power, every peeled top monomial costs at most `w`, the
/// low-degree tail at most `kw`, and each of the `k^2` low-x columns at most
/// `kw` times the terms of its one-variable decomposition.
pub fn strict_term_bound(k: u32, d: u32, w: u32, n_trap: usize, n_peel: usize, c_neg: u32) -> u64 {
    let (k, w, c_neg) = (k as u64, w as u64, c_neg as u64);
    let descents = (k as f64 * (d as f64 / (k * k) as f64 + 1.0).ln() + 1.0).ceil() as u64;
    let column = k * w * (c_neg + 1) * descents + k * w * k * w;
    n_trap as u64 * (1 + c_neg) + n_peel as u64 * w + k * w + k * k * column
}
