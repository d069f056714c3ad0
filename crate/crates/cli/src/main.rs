//! `gstruct`: exact and limiting block statistics of gamma-structures as
//! delimited tables.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use gstruct::laws::{
    block_type_exact_prob, block_type_limit_prob, longest_arc_bound, longest_block_exact_dist, longest_block_limit_law,
    rational_to_decimal, short_block_exact_dist, short_block_limit_law, tail_probability, KlConvention,
    DEFAULT_EXACT_BOUND,
};
use gstruct::oracle::{enumerate_structures, DEFAULT_ORACLE_BOUND};
use gstruct::sampler::{Sampler, SamplerTables};
use gstruct::series::SeriesBundle;
use gstruct::singularity::{singularity_data, Real, SingularityConfig, SingularityData};
use gstruct::verify::{run_all, VerifyConfig};
use gstruct::{BlockType, Error, StructureParams};

use output::{Format, Table};

const EXIT_CONFIG: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;
const EXIT_VERIFY: u8 = 4;
/// Singularity search runs at no fewer digits than this; output is still
/// rounded to `--digits`.
const MIN_WORKING_DIGITS: usize = 30;

#[derive(Debug, Parser)]
#[command(name = "gstruct", version, about = "Block spectrum of RNA pseudoknot gamma-structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Maximal genus of a component
    #[arg(long, default_value_t = 1)]
    gamma: u32,
    /// Minimal stack length r
    #[arg(long, default_value_t = 1)]
    stack: u32,
    /// Minimal arc length lambda
    #[arg(long, default_value_t = 2)]
    arclen: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<StructureParams, Failure> {
        Ok(StructureParams::new(self.gamma, self.stack, self.arclen)?)
    }
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl OutArgs {
    fn table(&self) -> Result<Table, Failure> {
        Table::open(self.out.as_deref(), self.format).map_err(|e| Failure::config(format!("cannot open output: {e}")))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counting coefficients n = 0..order-1: g, f, b0, bgamma and the typed block series
    Series {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Singularity rho, tau and the derived constants, one row
    Constants {
        #[command(flatten)]
        params: ParamArgs,
        /// Working precision in decimal digits
        #[arg(long, default_value_t = 60)]
        digits: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Law of the longest block: exact at length n (index = block length),
    /// or the limit law of n - B_n (index = k) on 0..=tail
    Longest {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, conflicts_with = "limit", required_unless_present = "limit")]
        n: Option<usize>,
        /// Tabulate the limit law instead of an exact law
        #[arg(long)]
        limit: bool,
        /// With --n: columns k, exact, limit for k = n - B_n
        #[arg(long, requires = "n")]
        compare: bool,
        /// Last index of the limit law
        #[arg(long, default_value_t = 40)]
        tail: usize,
        #[arg(long, default_value_t = 60)]
        digits: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Limit probability that the longest block has length at least n - t
    Tail {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        tail: usize,
        #[arg(long, default_value_t = 60)]
        digits: usize,
    },
    /// Law of the number of blocks of length k, optionally of one type
    Short {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        k: usize,
        /// Block type: T, H, K, L, M or other
        #[arg(long = "type")]
        block_type: Option<BlockType>,
        #[arg(long, conflicts_with = "limit", required_unless_present = "limit")]
        n: Option<usize>,
        /// Tabulate the negative binomial limit instead of an exact law
        #[arg(long)]
        limit: bool,
        /// Last count tabulated in limit mode
        #[arg(long, default_value_t = 20)]
        bmax: usize,
        #[arg(long, default_value_t = 60)]
        digits: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Limit block-type probabilities, with exact frequencies at length n
    Types {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 60)]
        digits: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compares the series with brute-force enumeration for n = 0..=n
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Uniform block sequences of structures of length n
    Sample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Runs every acceptance criterion; exit status 4 if any fails
    Verify {
        #[arg(long, default_value_t = 60)]
        digits: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: String) -> Self {
        Self { code: EXIT_CONFIG, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Consistency(_) | Error::Singularity(_) | Error::Schema(_) => EXIT_CONSISTENCY,
            _ => EXIT_CONFIG,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self::config(format!("write failed: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::config(format!("write failed: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gstruct: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Series { params, order, out } => series(params.params()?, order, &out),
        Command::Constants { params, digits, out } => constants(params.params()?, digits, &out),
        Command::Longest { params, n, limit: _, compare, tail, digits, out } => {
            longest(params.params()?, n, compare, tail, digits, &out)
        }
        Command::Tail { params, tail, digits } => {
            let p = params.params()?;
            let data = constants_for(p, digits)?;
            let bundle = SeriesBundle::solve(p, tail + 1)?;
            println!("{}", tail_probability(&bundle, &data, tail)?.to_decimal(digits));
            Ok(())
        }
        Command::Short { params, k, block_type, n, limit: _, bmax, digits, out } => {
            short(params.params()?, k, block_type, n, bmax, digits, &out)
        }
        Command::Types { params, n, digits, out } => types(params.params()?, n, digits, &out),
        Command::Oracle { params, n, out } => oracle(params.params()?, n, &out),
        Command::Sample { params, n, samples, seed, out } => sample(params.params()?, n, samples, seed, &out),
        Command::Verify { digits, samples, seed } => verify(digits, samples, seed),
    }
}

fn constants_for(p: StructureParams, digits: usize) -> Result<std::sync::Arc<SingularityData>, Failure> {
    if digits == 0 {
        return Err(Failure::config("--digits must be at least 1".into()));
    }
    Ok(singularity_data(p, &SingularityConfig::with_digits(digits.max(MIN_WORKING_DIGITS)))?)
}

fn rat(r: &BigRational, digits: usize) -> String {
    rational_to_decimal(r, digits)
}

fn series(p: StructureParams, order: usize, out: &OutArgs) -> CmdResult {
    let bundle = SeriesBundle::solve(p, order)?;
    let typed = [BlockType::T, BlockType::H, BlockType::K, BlockType::L, BlockType::M]
        .into_iter()
        .map(|t| bundle.block_type_series(t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut w = out.table()?;
    w.row(["n", "g", "f", "b0", "bgamma", "bT", "bH", "bK", "bL", "bM"])?;
    for n in 0..order {
        let mut row = vec![n.to_string()];
        for s in [bundle.g(), bundle.f(), bundle.b0(), bundle.bgamma()].into_iter().chain(&typed) {
            row.push(s.coeff(n).to_string());
        }
        w.row(row)?;
    }
    Ok(w.finish()?)
}

fn constants(p: StructureParams, digits: usize, out: &OutArgs) -> CmdResult {
    let d = constants_for(p, digits)?;
    let one = Real::one(d.bits());
    let tau_check = (&one - &d.tau_prime).recip();
    let mut w = out.table()?;
    w.row([
        "gamma", "r", "lambda", "rho", "tau", "tau_prime", "delta", "c", "eta", "alpha", "beta", "residual_q",
        "residual_qx", "tau_check",
    ])?;
    let mut row = vec![p.gamma().to_string(), p.stack().to_string(), p.arc_len().to_string()];
    for x in [&d.rho, &d.tau, &d.tau_prime, &d.delta, &d.c, &d.eta, &d.alpha, &d.beta] {
        row.push(x.to_decimal(digits));
    }
    row.push(d.residual_q.abs().to_decimal(6));
    row.push(d.residual_qx.abs().to_decimal(6));
    row.push(tau_check.to_decimal(digits));
    w.row(row)?;
    Ok(w.finish()?)
}

fn longest(p: StructureParams, n: Option<usize>, compare: bool, tail: usize, digits: usize, out: &OutArgs) -> CmdResult {
    let mut w = out.table()?;
    match n {
        Some(n) if !compare => {
            let bundle = SeriesBundle::solve(p, n + 1)?;
            let pmf = longest_block_exact_dist(&bundle, n, DEFAULT_EXACT_BOUND)?;
            w.row(["index", "probability"])?;
            for (b, q) in pmf.entries() {
                w.row([b.to_string(), rat(q, digits)])?;
            }
        }
        Some(n) => {
            let bundle = SeriesBundle::solve(p, n + 1)?;
            let data = constants_for(p, digits)?;
            let pmf = longest_block_exact_dist(&bundle, n, DEFAULT_EXACT_BOUND)?;
            let law = longest_block_limit_law(&bundle, &data, n)?;
            w.row(["k", "exact", "limit"])?;
            for (k, lim) in law.pmf.entries() {
                let exact = match pmf.get(n - k) {
                    Some(q) => rat(q, digits),
                    None => rat(&BigRational::from_integer(BigInt::from(0)), digits),
                };
                w.row([k.to_string(), exact, lim.to_decimal(digits)])?;
            }
        }
        None => {
            let bundle = SeriesBundle::solve(p, tail + 1)?;
            let data = constants_for(p, digits)?;
            let law = longest_block_limit_law(&bundle, &data, tail)?;
            let err = law.truncation_error.to_decimal(digits);
            w.row(["index", "probability", "truncation_error"])?;
            for (k, q) in law.pmf.entries() {
                w.row([k.to_string(), q.to_decimal(digits), err.clone()])?;
            }
        }
    }
    Ok(w.finish()?)
}

fn short(
    p: StructureParams,
    k: usize,
    t: Option<BlockType>,
    n: Option<usize>,
    bmax: usize,
    digits: usize,
    out: &OutArgs,
) -> CmdResult {
    if k == 0 {
        return Err(Failure::config("--k must be at least 1".into()));
    }
    let mut w = out.table()?;
    match n {
        Some(n) => {
            let bundle = SeriesBundle::solve(p, n.max(k) + 1)?;
            let pmf = short_block_exact_dist(&bundle, k, t, n, DEFAULT_EXACT_BOUND)?;
            w.row(["index", "probability"])?;
            for (b, q) in pmf.entries() {
                w.row([b.to_string(), rat(q, digits)])?;
            }
        }
        None => {
            let bundle = SeriesBundle::solve(p, k + 1)?;
            let data = constants_for(p, digits)?;
            let lim = short_block_limit_law(&bundle, &data, k, t)?;
            eprintln!(
                "NB(2, t): t = {}, a_k = {}, expectation = {}",
                lim.law.t.to_decimal(digits),
                lim.a_k,
                lim.expectation.to_decimal(digits)
            );
            w.row(["index", "probability"])?;
            for b in 0..=bmax {
                w.row([b.to_string(), lim.law.pmf(b).to_decimal(digits)])?;
            }
        }
    }
    Ok(w.finish()?)
}

fn types(p: StructureParams, n: Option<usize>, digits: usize, out: &OutArgs) -> CmdResult {
    let data = constants_for(p, digits)?;
    let probs = block_type_limit_prob(&data)?;
    let exact = match n {
        Some(n) => Some(block_type_exact_prob(&SeriesBundle::solve(p, n + 1)?, n)?),
        None => None,
    };
    let mut w = out.table()?;
    let mut header = vec!["type", "probability", "rho_tau_form", "conditional"];
    if exact.is_some() {
        header.push("exact");
    }
    w.row(header)?;
    for t in BlockType::NAMED {
        let mut row =
            vec![t.to_string(), probs.eta_form[&t].to_decimal(digits), probs.rho_tau_form[&t].to_decimal(digits)];
        row.push(probs.conditional[&t].to_decimal(digits));
        if let Some(e) = &exact {
            row.push(e.get(&t).map_or_else(|| "0".into(), |q| rat(q, digits)));
        }
        w.row(row)?;
    }
    for conv in [KlConvention::Combined, KlConvention::Separate] {
        eprintln!("longest-arc constant ({conv}): {}", longest_arc_bound(&probs, conv).to_decimal(12));
    }
    Ok(w.finish()?)
}

fn oracle(p: StructureParams, nmax: usize, out: &OutArgs) -> CmdResult {
    if nmax > DEFAULT_ORACLE_BOUND {
        return Err(Failure::config(format!("--n {nmax} exceeds the enumeration bound {DEFAULT_ORACLE_BOUND}")));
    }
    let bundle = SeriesBundle::solve(p, nmax + 1)?;
    let mut w = out.table()?;
    w.row(["n", "enumerated", "series", "longest_block", "status"])?;
    let mut failed = Vec::new();
    for n in 0..=nmax {
        let stats = enumerate_structures(n, p)?;
        let series = bundle.g().coeff(n);
        let count_ok = BigInt::from(stats.count) == series;
        let longest_ok = if n == 0 {
            true
        } else {
            let pmf = longest_block_exact_dist(&bundle, n, DEFAULT_EXACT_BOUND)?;
            let total = BigInt::from(stats.count);
            stats
                .longest_block
                .iter()
                .all(|(b, c)| pmf.get(*b) == Some(&BigRational::new(BigInt::from(*c), total.clone())))
                && pmf.len() == stats.longest_block.len()
        };
        let ok = count_ok && longest_ok;
        if !ok {
            failed.push(n);
        }
        w.row([
            n.to_string(),
            stats.count.to_string(),
            series.to_string(),
            if longest_ok { "match" } else { "mismatch" }.to_string(),
            if ok { "ok" } else { "FAIL" }.to_string(),
        ])?;
    }
    w.finish()?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: format!("oracle disagrees at n = {failed:?}") })
    }
}

fn sample(p: StructureParams, n: usize, samples: usize, seed: u64, out: &OutArgs) -> CmdResult {
    let bundle = SeriesBundle::solve(p, n + 1)?;
    let mut sampler = Sampler::new(SamplerTables::new(&bundle, n)?, seed);
    let mut w = out.table()?;
    w.row(["sample", "longest_block", "blocks"])?;
    for i in 0..samples {
        let s = sampler.sample(n)?;
        w.row([i.to_string(), s.longest_block().to_string(), s.to_string()])?;
    }
    Ok(w.finish()?)
}

fn verify(digits: usize, samples: usize, seed: u64) -> CmdResult {
    let cfg = VerifyConfig { digits, samples, seed, ..VerifyConfig::default() };
    let results = run_all(&cfg);
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria passed", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: format!("failed criteria: {failed:?}") })
    }
}
