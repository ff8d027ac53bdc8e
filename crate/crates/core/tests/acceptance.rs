//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use waring::approxroot::{approximate_root, TrapeziumParams};
use waring::cli::{bench_rows, golden_trace, random_dense, BenchRow, DEFAULT_SEED, GOLDEN_M_SEQ};
use waring::field::{
    is_prime, make_field, waring_field_criterion, Field, FieldElement, WaringProfile,
};
use waring::poly::{parse_poly, support_outside, BiPoly, Monomial};
use waring::strategies::{
    decompose, reduce_exponent, strict_min_degree, Options, StrategyChoice, StrictTrace,
    WaringSetup,
};
use waring::vandermonde::build_identity;
use waring::Error;

type Check = Result<String, String>;

fn prime_powers(max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in 2..=max {
        if !is_prime(p as u64) {
            continue;
        }
        let mut q = p;
        let mut m = 1;
        while q <= max {
            out.push((p, m));
            q *= p;
            m += 1;
        }
    }
    out
}

fn degree_bounds(rows: &[BenchRow]) -> Check {
    let summary: Vec<String> = rows
        .iter()
        .map(|r| format!("{} {}<={}", r.strategy, r.maxdeg, r.deg_bound))
        .collect();
    let expected = [600, 208, 436, 227];
    let bounds_match = rows.iter().zip(expected).all(|(r, e)| r.deg_bound == e);
    if bounds_match && rows.iter().all(|r| r.deg_ok() && r.verified) {
        Ok(summary.join(", "))
    } else {
        Err(summary.join(", "))
    }
}

fn term_bounds(rows: &[BenchRow]) -> Check {
    let summary: Vec<String> = rows
        .iter()
        .map(|r| match r.reference_s {
            Some(sharp) => format!(
                "{} {}<={} (reference {})",
                r.strategy, r.s, r.s_bound, sharp
            ),
            None => format!("{} {}<={}", r.strategy, r.s, r.s_bound),
        })
        .collect();
    // Strict is held to the implementation bound, with the sharp bound
    // printed for reference.
    let expected = [3, 60903, 45];
    let bounds_match = rows.iter().zip(expected).all(|(r, e)| r.s_bound == e);
    if bounds_match && rows.iter().all(BenchRow::s_ok) {
        Ok(summary.join(", "))
    } else {
        Err(summary.join(", "))
    }
}

fn random_poly(f: &Field, rng: &mut ChaCha8Rng, max_deg: u32, max_terms: usize) -> BiPoly {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(Monomial, FieldElement)> = (0..n)
        .map(|_| {
            let i = rng.gen_range(0..=max_deg);
            let j = rng.gen_range(0..=max_deg - i);
            (
                Monomial::new(i, j),
                f.element(rng.gen_range(0..f.order())).unwrap(),
            )
        })
        .collect();
    BiPoly::from_terms(f, terms)
}

fn exactness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut cases = 0;
    let mut strict_cases = 0;
    for p in [5, 7, 11, 13] {
        let f = make_field(p, 1, None).unwrap();
        for k in 2..=5 {
            if k % p == 0 || f.order() <= k {
                continue;
            }
            let setup = WaringSetup::new(&f, k).unwrap();
            for _ in 0..12 {
                let poly = random_poly(&f, &mut rng, 12, 25);
                for choice in [
                    StrategyChoice::Vandermonde,
                    StrategyChoice::Monomial,
                    StrategyChoice::Cover,
                ] {
                    let dec = decompose(&poly, choice, &setup, Options::default())
                        .map_err(|e| format!("{} over F_{} k={}: {}", choice, p, k, e))?
                        .decomposition;
                    let rep = dec.verify();
                    if !rep.ok || !rep.residual.is_zero() {
                        return Err(format!("{} over F_{} k={} left a residual", choice, p, k));
                    }
                    cases += 1;
                }
            }
            // The strict gate 2k^4 makes k >= 4 too costly for a sampled run.
            if k <= 3 {
                let d = strict_min_degree(k) as u32;
                let runs = if k == 2 { 6 } else { 1 };
                for _ in 0..runs {
                    let poly = random_dense(&f, d + rng.gen_range(0..4), rng.gen());
                    let dec = decompose(&poly, StrategyChoice::Strict, &setup, Options::default())
                        .map_err(|e| format!("strict over F_{} k={}: {}", p, k, e))?
                        .decomposition;
                    if !dec.verify().ok {
                        return Err(format!("strict over F_{} k={} left a residual", p, k));
                    }
                    cases += 1;
                    strict_cases += 1;
                }
            }
        }
    }
    let msg = format!(
        "{} randomized decompositions ({} strict), all residuals zero",
        cases, strict_cases
    );
    if cases >= 500 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn golden() -> Check {
    let seq = golden_trace(DEFAULT_SEED).map_err(|e| e.to_string())?;
    let shown = format!("{:?}", seq);
    if seq == GOLDEN_M_SEQ {
        Ok(shown)
    } else {
        Err(shown)
    }
}

/// Enumerate every `Q = x^(m/k) y^(n/k) + sum_l x^(m/k-l) b_l(y)` with
/// `deg b_l <= n/k + l` and count those cancelling the trapezium.
fn brute_force_roots(p: &BiPoly, params: TrapeziumParams) -> Vec<BiPoly> {
    let f = p.field();
    let q = f.order();
    let len = params.m / params.k;
    let nk = params.n / params.k;
    let mut slots = Vec::new();
    for l in 1..=len {
        for j in 0..=nk + l {
            slots.push(Monomial::new(len - l, j));
        }
    }
    let top = BiPoly::monomial(f, FieldElement::ONE, params.m, params.n);
    let lead = BiPoly::monomial(f, FieldElement::ONE, len, nk);
    let total = (q as u64).pow(slots.len() as u32);
    let mut found = Vec::new();
    for mut code in 0..total {
        let mut terms = Vec::with_capacity(slots.len());
        for &mono in &slots {
            terms.push((mono, f.element((code % q as u64) as u32).unwrap()));
            code /= q as u64;
        }
        let cand = &lead + &BiPoly::from_terms(f, terms);
        let resid = &(p + &top) - &cand.pow(params.k as u64);
        if support_outside(&resid, &params.region()).unwrap() {
            found.push(cand);
        }
    }
    found
}

fn uniqueness() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    let mut check = |p: &BiPoly, params: TrapeziumParams| -> Result<(), String> {
        let solver = approximate_root(p, params).map_err(|e| e.to_string())?.q;
        let found = brute_force_roots(p, params);
        if found.len() != 1 || found[0] != solver {
            return Err(format!(
                "P = {}: {} valid roots, solver gave {}",
                p,
                found.len(),
                solver
            ));
        }
        checked += 1;
        Ok(())
    };

    // F_3, (m, n, d) = (2, 0, 2): every P with deg <= 2 and deg_x < 2.
    let f3 = make_field(3, 1, None).unwrap();
    let params = TrapeziumParams::new(2, 0, 2, 2).unwrap();
    let monos = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)];
    for code in 0..3u32.pow(monos.len() as u32) {
        let mut c = code;
        let terms = monos.iter().map(|&(i, j)| {
            let e = f3.element(c % 3).unwrap();
            c /= 3;
            (Monomial::new(i, j), e)
        });
        check(&BiPoly::from_terms(&f3, terms.collect::<Vec<_>>()), params)?;
    }

    // F_5, (m, n, d) = (2, 2, 4): sampled P with deg <= 4 and deg_x < 2.
    let f5 = make_field(5, 1, None).unwrap();
    let params = TrapeziumParams::new(2, 2, 4, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..60 {
        let monos = (0..=4).map(|j| (0, j)).chain((0..=3).map(|j| (1, j)));
        let terms: Vec<_> = monos
            .map(|(i, j)| {
                (
                    Monomial::new(i, j),
                    f5.element(rng.gen_range(0..5)).unwrap(),
                )
            })
            .collect();
        check(&BiPoly::from_terms(&f5, terms), params)?;
    }
    let secs = start.elapsed().as_secs_f64();
    let msg = format!("{} inputs, one root each, {:.2}s", checked, secs);
    if secs < 10.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn waring_cross_check() -> Check {
    let start = Instant::now();
    let mut pairs = 0;
    for (p, m) in prime_powers(49) {
        let f = make_field(p, m, None).unwrap();
        for k in 2..=8 {
            if k % p == 0 {
                continue;
            }
            let by_rule = waring_field_criterion(p, m, k).map_err(|e| e.to_string())?;
            let by_search = WaringProfile::compute(&f, k)
                .map_err(|e| e.to_string())?
                .is_waring();
            if by_rule != by_search {
                return Err(format!(
                    "q={}^{} k={}: criterion {} search {}",
                    p, m, k, by_rule, by_search
                ));
            }
            pairs += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let msg = format!("{} (q, k) pairs agree, {:.2}s", pairs, secs);
    if secs < 30.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn identity_residual() -> Check {
    let mut count = 0;
    for (p, m) in prime_powers(49) {
        let f = make_field(p, m, None).unwrap();
        for k in 2..=6 {
            if k % p == 0 || f.order() <= k {
                continue;
            }
            let id = build_identity(&f, k).map_err(|e| e.to_string())?;
            if !id.residual().is_zero() {
                return Err(format!("nonzero residual for q={}^{} k={}", p, m, k));
            }
            count += 1;
        }
    }
    Ok(format!("{} identities with zero residual", count))
}

fn frobenius_pipeline() -> Check {
    let f = make_field(5, 1, None).unwrap();
    let p = parse_poly("x + 2*y", &f).unwrap().pow(5);
    let out = reduce_exponent(&p, 15, StrategyChoice::Cover, Options::default())
        .map_err(|e| e.to_string())?;
    let dec = out.decomposition;
    if dec.k != 15 || !dec.verify().ok {
        return Err("decomposition at exponent 15 does not verify".into());
    }
    match reduce_exponent(
        &BiPoly::x(&f),
        15,
        StrategyChoice::Cover,
        Options::default(),
    ) {
        Err(Error::NotAPower(5)) => Ok(format!(
            "(x+2y)^5 verifies at K=15 with s={}; x rejected",
            dec.s()
        )),
        other => Err(format!(
            "x at K=15 gave {:?}",
            other.map(|o| o.decomposition.s())
        )),
    }
}

fn degree_fall(trace: &StrictTrace) -> Check {
    let shown = format!("d_i = {:?}", trace.d_seq);
    for (i, &di) in trace.d_seq.iter().enumerate() {
        let cap = 200.0 * (-(i as f64) / 9.0).exp() + 27.0;
        if di as f64 > cap {
            return Err(format!("{}: d_{} = {} > {:.3}", shown, i, di, cap));
        }
    }
    if trace.d_seq.is_empty() {
        return Err("no sweeps recorded".into());
    }
    Ok(shown)
}

fn main() -> ExitCode {
    let bench = bench_rows(DEFAULT_SEED);
    let (rows, trace) = match bench {
        Ok((rows, trace)) => (Some(rows), Some(trace)),
        Err(e) => {
            eprintln!("benchmark run failed: {}", e);
            (None, None)
        }
    };
    let missing = || Err::<String, String>("benchmark run failed".into());

    let results: Vec<(u32, &str, Check)> = vec![
        (
            1,
            "table degree bounds",
            rows.as_deref().map_or_else(missing, degree_bounds),
        ),
        (
            2,
            "table term bounds",
            rows.as_deref().map_or_else(missing, term_bounds),
        ),
        (3, "exactness on randomized inputs", exactness()),
        (4, "golden m-sequence at d=45, k=3", golden()),
        (5, "approximate-root uniqueness", uniqueness()),
        (6, "Waring criterion cross-check", waring_cross_check()),
        (7, "identity residual", identity_residual()),
        (8, "exponent reduction pipeline", frobenius_pipeline()),
        (
            9,
            "degree-fall invariant",
            trace.as_ref().map_or_else(missing, degree_fall),
        ),
    ];

    let mut failed = 0;
    for (n, name, res) in &results {
        match res {
            Ok(msg) => println!("criterion {}: PASS {}: {}", n, name, msg),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {}: {}", n, name, msg);
            }
        }
    }
    println!(
        "acceptance: {} passed, {} failed",
        results.len() - failed,
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
