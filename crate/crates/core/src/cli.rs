//! Command-line front end. [`run`] is the whole program minus process exit.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approxroot::{approximate_root, TrapeziumParams};
use crate::decomposition::{Decomposition, Form, StrategyKind, Term};
use crate::error::{Error, ErrorClass, Result};
use crate::field::{Field, FieldElement, FiniteField, WaringProfile};
use crate::poly::{parse_poly, support_outside, BiPoly, Degree, Monomial};
use crate::strategies::{
    bound_table, decompose, reduce_exponent, split_exponent, strict_term_bound, strict_trace,
    Options, StrategyChoice, StrictTrace, WaringSetup,
};
use crate::vandermonde::{build_identity, decompose_scaled};

/// Seed used by `bench` unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(
    name = "waring",
    version,
    about = "Sums of k-th powers of polynomials over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a polynomial as a sum of k-th powers.
    Decompose(DecomposeArgs),
    /// Show the k-th powers of a field and its Waring number.
    Profile {
        #[arg(long)]
        field: String,
        #[arg(long)]
        k: u32,
    },
    /// Run all strategies on a seeded degree-200 polynomial over F_5 with k = 3.
    Bench {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compute the approximate k-th root cancelling one trapezium.
    ApproxRoot {
        #[arg(long)]
        field: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        input: Input,
    },
    /// Re-check a decomposition printed by `decompose` against its target.
    Verify {
        /// File holding the output of `decompose`.
        #[arg(long)]
        dump: PathBuf,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Polynomial in x and y.
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
    /// File containing the polynomial.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Input {
    fn read(&self) -> Result<String> {
        match (&self.expr, &self.file) {
            (Some(e), _) => Ok(e.clone()),
            (None, Some(path)) => fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {}", path.display(), e))
            }),
            (None, None) => Err(Error::InvalidArgument("no input polynomial".into())),
        }
    }
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    k: u32,
    /// vandermonde, monomial, cover, strict or auto.
    #[arg(long, default_value = "auto")]
    strategy: String,
    #[command(flatten)]
    input: Input,
    /// Keep field scalars `delta_i` instead of expanding to unit coefficients
    /// (vandermonde only).
    #[arg(long)]
    scaled: bool,
    /// Send strict requests below degree 2k^4 to the cover strategy.
    #[arg(long)]
    fallback: bool,
    /// Print the strict sweep trace as `#` lines.
    #[arg(long)]
    trace: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Invalid => 2,
        ErrorClass::Unsupported => 3,
        ErrorClass::Internal => 1,
    }
}

/// Parse `args` (including the program name), run the command, and return
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Decompose(args) => cmd_decompose(&args, out, err),
        Command::Profile { field, k } => cmd_profile(&field, k, out),
        Command::Bench { seed } => cmd_bench(seed, out),
        Command::ApproxRoot {
            field,
            k,
            m,
            n,
            d,
            input,
        } => cmd_approx_root(&field, k, m, n, d, &input, out),
        Command::Verify { dump, input } => cmd_verify(&dump, &input, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {}", e))
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(
            "exponent k must be at least 2".into(),
        ));
    }
    Ok(())
}

fn cmd_decompose(args: &DecomposeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let field = FiniteField::parse_spec(&args.field)?;
    check_k(args.k)?;
    let choice: StrategyChoice = args.strategy.parse()?;
    let p = parse_poly(&args.input.read()?, &field)?;
    let opts = Options {
        fallback: args.fallback,
    };

    let (dec, trace) = if args.scaled {
        if choice != StrategyChoice::Vandermonde {
            return Err(Error::InvalidArgument(
                "--scaled is only available with the vandermonde strategy".into(),
            ));
        }
        let (k, nu) = split_exponent(args.k, field.characteristic());
        if nu > 0 {
            return Err(Error::CharacteristicDividesK {
                p: field.characteristic(),
                k: args.k,
            });
        }
        (decompose_scaled(&p, &build_identity(&field, k)?)?, None)
    } else {
        let outcome = reduce_exponent(&p, args.k, choice, opts)?;
        if outcome.fell_back {
            writeln!(err, "warning: degree below 2k^4, using the cover strategy").map_err(io)?;
        }
        (outcome.decomposition, outcome.trace)
    };

    let report = dec.verify();
    if !report.ok {
        writeln!(err, "error: decomposition failed verification").map_err(io)?;
        return Ok(1);
    }
    write_decomposition(&dec, report.ok, out).map_err(io)?;
    if args.trace {
        if let Some(t) = &trace {
            write_trace(t, out).map_err(io)?;
        }
    }
    Ok(0)
}

fn write_decomposition(dec: &Decomposition, ok: bool, out: &mut dyn Write) -> std::io::Result<()> {
    let f = dec.target.field();
    writeln!(
        out,
        "k={} field={} strategy={} s={} maxdeg={} verified={}",
        dec.k,
        f.spec(),
        dec.strategy,
        dec.s(),
        dec.max_deg(),
        ok
    )?;
    for t in &dec.terms {
        let delta = match t.sign {
            crate::decomposition::Sign::Plus => t.delta,
            crate::decomposition::Sign::Minus => f.neg(t.delta),
        };
        writeln!(out, "delta={} Q={}", f.format_element(delta), t.q)?;
    }
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn write_trace(t: &StrictTrace, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "# d={} k={} sweeps={} trapezia={} peeled={}",
        t.d,
        t.k,
        t.d_seq.len(),
        t.trapezia.len(),
        t.peeled
    )?;
    for (i, ms) in t.m_seq.iter().enumerate() {
        writeln!(
            out,
            "# sweep {} D={} d_i={} m={}",
            i,
            t.sweep_bounds[i],
            t.d_seq[i],
            join(ms)
        )?;
    }
    writeln!(out, "# terms sweeps={} tail={} low_x={}", t.s0, t.s1, t.s2)
}

fn cmd_profile(spec: &str, k: u32, out: &mut dyn Write) -> Result<i32> {
    let field = FiniteField::parse_spec(spec)?;
    check_k(k)?;
    let profile = WaringProfile::compute(&field, k)?;
    let w = profile.w().map_or("none".to_string(), |w| w.to_string());
    let fmt_list = |xs: &[FieldElement]| {
        xs.iter()
            .map(|&e| field.format_element(e))
            .collect::<Vec<_>>()
            .join(",")
    };
    let neg = profile.neg_one_terms().map_or("none".to_string(), fmt_list);
    let write = |out: &mut dyn Write| -> std::io::Result<()> {
        writeln!(
            out,
            "q={} k={} waring={} w={}",
            field.order(),
            k,
            profile.is_waring(),
            w
        )?;
        writeln!(out, "powers={}", fmt_list(profile.powers()))?;
        writeln!(out, "neg_one={}", neg)
    };
    write(out).map_err(io)?;
    Ok(0)
}

fn cmd_approx_root(
    spec: &str,
    k: u32,
    m: u32,
    n: u32,
    d: u32,
    input: &Input,
    out: &mut dyn Write,
) -> Result<i32> {
    let field = FiniteField::parse_spec(spec)?;
    check_k(k)?;
    let p = parse_poly(&input.read()?, &field)?;
    let params = TrapeziumParams::new(m, n, d, k)?;
    let wit = approximate_root(&p, params)?;
    let residual = wit.residual(&p, &params);
    let clear = support_outside(&residual, &params.region())?;
    let write = |out: &mut dyn Write| -> std::io::Result<()> {
        writeln!(out, "Q={}", wit.q)?;
        for (l, b) in wit.b.iter().enumerate() {
            writeln!(
                out,
                "b[{}]={} deg<={}",
                l,
                b.to_bipoly_y(),
                n / k + l as u32
            )?;
        }
        writeln!(out, "residual={}", residual)?;
        writeln!(out, "trapezium_clear={}", clear)
    };
    write(out).map_err(io)?;
    Ok(if clear { 0 } else { 1 })
}

/// Read back the output of `decompose`.
pub fn parse_dump(text: &str) -> Result<(Field, u32, Vec<Term>)> {
    let bad = |msg: &str| Error::InvalidArgument(format!("malformed dump: {}", msg));
    let mut lines = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| bad("empty"))?;
    let mut field = None;
    let mut k = None;
    for kv in header.split_whitespace() {
        match kv.split_once('=') {
            Some(("k", v)) => k = Some(v.parse::<u32>().map_err(|_| bad("k"))?),
            Some(("field", v)) => field = Some(FiniteField::parse_spec(v)?),
            _ => {}
        }
    }
    let (field, k) = (
        field.ok_or_else(|| bad("no field"))?,
        k.ok_or_else(|| bad("no k"))?,
    );
    let mut terms = Vec::new();
    for line in lines {
        let rest = line.strip_prefix("delta=").ok_or_else(|| bad(line))?;
        let (delta, q) = rest.split_once(" Q=").ok_or_else(|| bad(line))?;
        terms.push(Term::scaled(
            field.parse_element(delta)?,
            parse_poly(q, &field)?,
        ));
    }
    Ok((field, k, terms))
}

fn cmd_verify(dump: &PathBuf, input: &Input, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(dump)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {}", dump.display(), e)))?;
    let (field, k, terms) = parse_dump(&text)?;
    let target = parse_poly(&input.read()?, &field)?;
    let form = if terms.iter().all(|t| t.delta == FieldElement::ONE) {
        Form::Pure
    } else {
        Form::Scaled
    };
    let dec = Decomposition {
        k,
        target,
        form,
        terms,
        strategy: StrategyKind::Vandermonde,
    };
    let rep = dec.verify();
    writeln!(out, "verified={} s={} maxdeg={}", rep.ok, rep.s, rep.maxdeg).map_err(io)?;
    Ok(if rep.ok { 0 } else { 1 })
}

/// Dense polynomial of total degree `d` with i.i.d. uniform coefficients and
/// a nonzero `x^d` coefficient.
pub fn random_dense(field: &Field, d: u32, seed: u64) -> BiPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order();
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            let c = if i == d {
                rng.gen_range(1..q)
            } else {
                rng.gen_range(0..q)
            };
            terms.push((
                Monomial::new(i, j),
                field.element(c).expect("index below q"),
            ));
        }
    }
    BiPoly::from_terms(field, terms)
}

/// One row of the benchmark table.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub strategy: StrategyKind,
    pub maxdeg: Degree,
    pub s: usize,
    pub verified: bool,
    pub deg_bound: u64,
    pub s_bound: u64,
    /// Reference term bound shown next to `s_bound` (strict only).
    pub reference_s: Option<u64>,
}

impl BenchRow {
    pub fn deg_ok(&self) -> bool {
        self.maxdeg <= Degree::Finite(self.deg_bound as u32)
    }

    pub fn s_ok(&self) -> bool {
        self.s as u64 <= self.s_bound
    }
}

/// Run every strategy on `random_dense(F_5, 200, seed)` with k = 3.
pub fn bench_rows(seed: u64) -> Result<(Vec<BenchRow>, StrictTrace)> {
    let field = FiniteField::parse_spec("5")?;
    let (k, d) = (3, 200);
    let p = random_dense(&field, d, seed);
    let setup = WaringSetup::new(&field, k)?;
    let w = setup.w()?;
    let table = bound_table(k, d, w);
    let mut rows = Vec::new();
    let mut strict = None;
    for (choice, kind) in [
        (StrategyChoice::Vandermonde, StrategyKind::Vandermonde),
        (StrategyChoice::Monomial, StrategyKind::Monomial),
        (StrategyChoice::Cover, StrategyKind::Cover),
        (StrategyChoice::Strict, StrategyKind::Strict),
    ] {
        let outcome = decompose(&p, choice, &setup, Options::default())?;
        let dec = outcome.decomposition;
        let rep = dec.verify();
        let (deg_bound, s_bound, reference_s) = match kind {
            StrategyKind::Vandermonde => (table.vandermonde.0, table.vandermonde.1, None),
            StrategyKind::Monomial => (table.monomial.0, table.monomial.1, None),
            StrategyKind::Cover => (table.cover.0, table.cover.1, None),
            StrategyKind::Strict => {
                let t = outcome.trace.clone().expect("strict run records a trace");
                let bound = strict_term_bound(k, d, w, t.trapezia.len(), t.peeled, 1);
                strict = Some(t);
                (
                    table.strict_deg,
                    bound,
                    Some(table.strict_sharp_s.floor() as u64),
                )
            }
        };
        rows.push(BenchRow {
            strategy: kind,
            maxdeg: rep.maxdeg,
            s: rep.s,
            verified: rep.ok,
            deg_bound,
            s_bound,
            reference_s,
        });
    }
    Ok((rows, strict.expect("strict row present")))
}

/// m-sequence of the first sweep for a dense degree-45 input with k = 3.
pub fn golden_trace(seed: u64) -> Result<Vec<u32>> {
    let field = FiniteField::parse_spec("5")?;
    let p = random_dense(&field, 45, seed);
    let t = strict_trace(&p, 3, 1)?;
    Ok(t.m_seq.first().cloned().unwrap_or_default())
}

pub const GOLDEN_M_SEQ: [u32; 6] = [45, 30, 20, 14, 10, 8];

fn cmd_bench(seed: u64, out: &mut dyn Write) -> Result<i32> {
    let (rows, trace) = bench_rows(seed)?;
    let golden = golden_trace(seed)?;
    let pass = |b: bool| if b { "pass" } else { "FAIL" };
    let mut all = true;
    let mut text = format!("seed={} field=5 k=3 d=200\n", seed);
    text += "strategy     maxdeg  deg_bound  deg   s       s_bound  s_check  verified\n";
    for r in &rows {
        all &= r.deg_ok() && r.s_ok() && r.verified;
        let reference = r
            .reference_s
            .map_or(String::new(), |s| format!("  (sharp bound {})", s));
        text += &format!(
            "{:<12} {:<7} {:<10} {:<5} {:<7} {:<8} {:<8} {}{}\n",
            r.strategy.name(),
            r.maxdeg.to_string(),
            r.deg_bound,
            pass(r.deg_ok()),
            r.s,
            r.s_bound,
            pass(r.s_ok()),
            r.verified,
            reference
        );
    }
    text += &format!(
        "strict d_seq={} sweeps={}\n",
        join(&trace.d_seq),
        trace.d_seq.len()
    );
    let golden_ok = golden == GOLDEN_M_SEQ;
    all &= golden_ok;
    text += &format!("golden d=45 m_seq={} {}\n", join(&golden), pass(golden_ok));
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(if all { 0 } else { 1 })
}
