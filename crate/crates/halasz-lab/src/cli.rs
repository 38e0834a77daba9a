//! Command-line surface: argument grammar, dispatch, and report assembly.

use crate::cache;
use crate::config::RunConfig;
use crate::funcfile::{self, FunctionRequest};
use crate::parallel;
use crate::report::{self, csv_num};
use crate::verify::{self, SuiteConfig, SuiteName};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use halasz_core::functionals::functional_report;
use halasz_core::math;
use halasz_core::multfun::FunctionSpec;
use halasz_core::random::{
    exact_negative_probability, mc_shifted_mean_floor, tail_distribution, TailFunctional,
};
use halasz_core::search::{
    brute_force_delta_pm, coordinate_refine_real, greedy_delta_pm, GreedySeed, SearchResult,
};
use halasz_core::series::{evaluate_series, evaluate_series_with_shift};
use halasz_core::zeta::ZetaContext;
use halasz_core::PrimeTable;
use halasz_core::Complex64;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "halasz-lab",
    version,
    about = "Numerical laboratory for logarithmic means of 1-bounded multiplicative functions"
)]
pub struct Cli {
    /// Path to an SPF1 sieve cache (read when present; `sieve` writes it).
    #[arg(long, global = true)]
    pub sieve_cache: Option<PathBuf>,
    /// Worker threads for parallel sections (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Suppress the timestamp header so identical runs are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Report format where applicable.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the smallest-prime-factor table and print a summary.
    Sieve {
        #[arg(long)]
        limit: u64,
    },
    /// Checkpointed series of L_f, M_g(w0 x), delta over a geometric grid.
    Sum {
        #[arg(long)]
        function: String,
        #[arg(long)]
        xmax: u64,
        /// Checkpoints per decade of the geometric grid.
        #[arg(long, default_value_t = 8)]
        checkpoints: u32,
        #[arg(long, default_value_t = 10)]
        xmin: u64,
        /// Override the shift constant (default w0 = e^{1-gamma}).
        #[arg(long)]
        shift: Option<f64>,
    },
    /// Single-point delta evaluation.
    Delta {
        #[arg(long)]
        function: String,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        shift: Option<f64>,
    },
    /// Pretentious-distance functionals at one (x, T).
    Functionals {
        #[arg(long)]
        function: String,
        #[arg(long)]
        x: f64,
        #[arg(long = "T")]
        t_max: f64,
    },
    /// Run the zeta invariant checks and print a pass/fail table.
    ZetaCheck,
    /// Monte Carlo experiments on random ±1 multiplicative functions.
    Mc {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Tail functional: neg_euler:t=..,k=.. | split_sum:theta=.. |
        /// shifted_mean. Absent = negative-probability run.
        #[arg(long)]
        functional: Option<String>,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        thresholds: Vec<f64>,
        /// Also run the exact enumeration oracle (small x only).
        #[arg(long)]
        exact: bool,
    },
    /// Minimize L_f(x) over sign patterns or [-1,1] prime values.
    Search {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        method: SearchMethodArg,
        #[arg(long, value_enum, default_value = "all-minus")]
        seed_pattern: SeedPatternArg,
        /// Start spec for `refine` (function grammar).
        #[arg(long, default_value = "liouville")]
        start: String,
        #[arg(long, default_value_t = 4)]
        sweeps: u32,
        #[arg(long, default_value_t = 41)]
        grid: u32,
    },
    /// Materialize a function spec's prime values in the custom file format.
    Construct {
        #[arg(long)]
        function: String,
        #[arg(long)]
        limit: u64,
    },
    /// Run a named verification suite; exit 0 iff every row passes.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        xmax: u64,
        /// `builtin` or a path to a file with one function string per line.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        /// Rademacher seeds included in the builtin corpus.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
    },
    /// Print the analytic constants used throughout.
    Constants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchMethodArg {
    Brute,
    Greedy,
    Refine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeedPatternArg {
    AllMinus,
    Liouville,
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Sieve { limit } => cmd_sieve(&cli, limit),
        Command::Sum {
            ref function,
            xmax,
            checkpoints,
            xmin,
            shift,
        } => cmd_sum(&cli, function, xmax, checkpoints, xmin, shift),
        Command::Delta {
            ref function,
            x,
            shift,
        } => cmd_delta(&cli, function, x, shift),
        Command::Functionals {
            ref function,
            x,
            t_max,
        } => cmd_functionals(&cli, function, x, t_max),
        Command::ZetaCheck => cmd_zeta_check(),
        Command::Mc {
            x,
            trials,
            seed,
            ref functional,
            ref thresholds,
            exact,
        } => cmd_mc(&cli, x, trials, seed, functional.as_deref(), thresholds, exact),
        Command::Search {
            x,
            method,
            seed_pattern,
            ref start,
            sweeps,
            grid,
        } => cmd_search(&cli, x, method, seed_pattern, start, sweeps, grid),
        Command::Construct { ref function, limit } => cmd_construct(&cli, function, limit),
        Command::Verify {
            ref suite,
            xmax,
            ref corpus,
            seeds,
        } => cmd_verify(&cli, suite, xmax, corpus, seeds),
        Command::Constants => cmd_constants(&cli),
    }
}

fn base_config(cli: &Cli, command: &str) -> RunConfig {
    let mut c = RunConfig::new(command);
    c.deterministic = cli.deterministic;
    if cli.threads != 0 {
        c.threads = Some(cli.threads);
    }
    c
}

fn build_table(cli: &Cli, limit: u64) -> Result<PrimeTable> {
    cache::load_or_sieve(limit, cli.sieve_cache.as_deref())
}

fn resolve_function(
    cli: &Cli,
    function: &str,
    base_limit: u64,
) -> Result<(FunctionSpec, Option<PrimeTable>, u64)> {
    let req = funcfile::parse_function(function)?;
    if let FunctionRequest::Section6 { theta, theta_clamped, .. } = &req {
        if *theta_clamped || *theta >= 0.5 {
            eprintln!(
                "warning: section6 theta = {theta:.4} >= 1/2; the band condition is vacuous \
                 (clamped to 1/2)"
            );
        }
    }
    let needed = req.required_table_limit().unwrap_or(0).max(base_limit);
    if needed >= 2 {
        let table = build_table(cli, needed)?;
        let spec = req.resolve(Some(&table))?;
        Ok((spec, Some(table), needed))
    } else {
        let spec = req.resolve(None)?;
        Ok((spec, None, 0))
    }
}

// ---------------------------------------------------------------- sieve --

#[derive(Serialize)]
struct SieveSummary {
    limit: u64,
    prime_count: usize,
    largest_prime: u32,
    theta_at_limit: f64,
    cache_written: Option<String>,
}

fn cmd_sieve(cli: &Cli, limit: u64) -> Result<i32> {
    let table = PrimeTable::sieve(limit)?;
    let cache_path = cli
        .sieve_cache
        .clone()
        .or_else(|| cache::env_cache_path(limit));
    if let Some(p) = &cache_path {
        if let Some(dir) = p.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        cache::save(&table, p)?;
    }
    let mut config = base_config(cli, "sieve");
    config.sieve_limit = Some(limit);
    let summary = SieveSummary {
        limit,
        prime_count: table.prime_count(),
        largest_prime: *table.primes().last().unwrap(),
        theta_at_limit: table.chebyshev_theta(limit as f64)?,
        cache_written: cache_path.map(|p| p.display().to_string()),
    };
    report::emit(cli.output.as_deref(), &report::json_report(&config, &summary))?;
    Ok(0)
}

// ------------------------------------------------------------ sum/delta --

#[derive(Serialize)]
struct SeriesRowOut {
    x: u64,
    l_f: f64,
    m_f: f64,
    mg_w0: f64,
    mg_tilde: f64,
    delta: f64,
    delta_scaled: f64,
    tie_flagged: bool,
}

#[derive(Serialize)]
struct SeriesOut {
    family: String,
    w0: f64,
    rows: Vec<SeriesRowOut>,
}

fn series_out(series: &halasz_core::sums::SumSeries) -> SeriesOut {
    SeriesOut {
        family: series.label.clone(),
        w0: series.w0,
        rows: series
            .rows
            .iter()
            .map(|r| SeriesRowOut {
                x: r.x,
                l_f: r.l_f,
                m_f: r.m_f,
                mg_w0: r.mg_w0,
                mg_tilde: r.mg_tilde_w0,
                delta: r.delta,
                delta_scaled: r.delta_scaled(),
                tie_flagged: r.tie_flagged,
            })
            .collect(),
    }
}

fn cmd_sum(
    cli: &Cli,
    function: &str,
    xmax: u64,
    per_decade: u32,
    xmin: u64,
    shift: Option<f64>,
) -> Result<i32> {
    let (spec, _, _) = resolve_function(cli, function, 0)?;
    let xs = math::geometric_checkpoints(xmax, xmin.max(2), per_decade.max(1));
    if xs.is_empty() {
        bail!("empty checkpoint grid for xmax = {xmax}, xmin = {xmin}");
    }
    let series = match shift {
        Some(w) => evaluate_series_with_shift(&spec, &xs, w)?,
        None => evaluate_series(&spec, &xs)?,
    };
    let mut config = base_config(cli, "sum");
    config.function = Some(function.to_string());
    config = config
        .arg("xmax", xmax)
        .arg("checkpoints", per_decade)
        .arg("xmin", xmin);
    if let Some(w) = shift {
        config = config.arg("shift", w);
    }
    let out = series_out(&series);
    let text = match cli.format {
        Format::Json => report::json_report(&config, &out),
        Format::Csv => {
            let mut s = report::csv_preamble(&config);
            s.push_str("family,x,L_f,M_g_w0,Mg_tilde,delta,delta_scaled\n");
            for r in &out.rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    out.family,
                    r.x,
                    csv_num(r.l_f),
                    csv_num(r.mg_w0),
                    csv_num(r.mg_tilde),
                    csv_num(r.delta),
                    csv_num(r.delta_scaled)
                ));
            }
            s
        }
    };
    report::emit(cli.output.as_deref(), &text)?;
    Ok(0)
}

fn cmd_delta(cli: &Cli, function: &str, x: u64, shift: Option<f64>) -> Result<i32> {
    let (spec, _, _) = resolve_function(cli, function, 0)?;
    let series = match shift {
        Some(w) => evaluate_series_with_shift(&spec, &[x], w)?,
        None => evaluate_series(&spec, &[x])?,
    };
    let mut config = base_config(cli, "delta");
    config.function = Some(function.to_string());
    config = config.arg("x", x);
    if let Some(w) = shift {
        config = config.arg("shift", w);
    }
    let out = series_out(&series);
    report::emit(cli.output.as_deref(), &report::json_report(&config, &out))?;
    Ok(0)
}

// ---------------------------------------------------------- functionals --

#[derive(Serialize)]
struct DistMinOut {
    t_star: f64,
    value: f64,
}

#[derive(Serialize)]
struct FunctionalOut {
    family: String,
    x: f64,
    #[serde(rename = "T")]
    t_max: f64,
    t_capped: bool,
    dist_min: DistMinOut,
    #[serde(rename = "M_xT", skip_serializing_if = "Option::is_none")]
    m_xt: Option<f64>,
    #[serde(rename = "H1")]
    h1: f64,
    #[serde(rename = "H2")]
    h2: f64,
    #[serde(rename = "H2prime")]
    h2prime: f64,
    hal_gs_bound: f64,
    dist_liouville: f64,
    grid_spacing: f64,
}

fn cmd_functionals(cli: &Cli, function: &str, x: f64, t_max: f64) -> Result<i32> {
    if !(x >= 2.0) {
        bail!("need x >= 2");
    }
    let (spec, table, limit) = resolve_function(cli, function, x.ceil() as u64)?;
    let table = table.ok_or_else(|| anyhow!("internal: table missing (limit {limit})"))?;
    let rep = functional_report(&table, &spec, x, t_max)?;
    let mut config = base_config(cli, "functionals");
    config.function = Some(function.to_string());
    config.sieve_limit = Some(limit);
    config = config.arg("x", x).arg("T", t_max);
    let out = FunctionalOut {
        family: rep.family,
        x: rep.x,
        t_max: rep.t_max,
        t_capped: rep.t_capped,
        dist_min: DistMinOut {
            t_star: rep.dist_min.t_star,
            value: rep.dist_min.value,
        },
        m_xt: rep.m_xt,
        h1: rep.h1,
        h2: rep.h2,
        h2prime: rep.h2prime,
        hal_gs_bound: rep.hal_gs_bound,
        dist_liouville: rep.dist_liouville,
        grid_spacing: rep.grid_spacing,
    };
    report::emit(cli.output.as_deref(), &report::json_report(&config, &out))?;
    Ok(0)
}

// ------------------------------------------------------------ zeta-check --

fn cmd_zeta_check() -> Result<i32> {
    let ctx = ZetaContext::new();
    let mut all = true;
    let mut check = |name: &str, pass: bool, detail: String| {
        all &= pass;
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    };

    let z2 = ctx.zeta(Complex64::new(2.0, 0.0))?;
    let target = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    check(
        "zeta(2)",
        (z2.re - target).abs() < 1e-10 && z2.im.abs() < 1e-12,
        format!("{} vs pi^2/6 = {target}", z2.re),
    );

    let mut worst = 0.0f64;
    let mut ok = true;
    for k in 0..50 {
        let r = 0.002 + 0.098 * (k as f64 / 49.0);
        let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.3) / 7.0;
        let s = Complex64::new(1.0 + r * phi.cos(), r * phi.sin());
        if s.re <= 0.0 {
            continue;
        }
        let z = ctx.zeta(s)?;
        let sm1 = s - 1.0;
        let laurent = 1.0 / sm1 + ctx.gamma_euler() - ctx.gamma1_stieltjes() * sm1;
        let err = (z - laurent).norm() / sm1.norm_sqr();
        worst = worst.max(err);
        ok &= err <= 5.0;
    }
    check("laurent_window", ok, format!("max |zeta - L3|/|s-1|^2 = {worst:.3}"));

    let coef = ctx.w0_bracket_limit_coefficient();
    let ratio = ctx.w0_bracket_ratio(Complex64::new(1.0 + 1e-5, 1e-5))?;
    check(
        "w0_bracket_limit",
        (ratio - coef).abs() < 1e-3 && (coef - 0.40623).abs() < 1e-3,
        format!("ratio {ratio:.6} vs coefficient {coef:.6}"),
    );

    let mut ok = true;
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for k in 0..100 {
        let r = 1.0 / (1e6f64).ln() + (0.5 - 1.0 / (1e6f64).ln()) * (k as f64 / 99.0);
        let phi = 2.0 * std::f64::consts::PI * k as f64 / 100.0 + 0.1;
        let s = Complex64::new(1.0 + r * phi.cos(), r * phi.sin());
        if s.re <= 0.05 {
            continue;
        }
        let ratio = ctx.w0_bracket_ratio(s)?;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        ok &= (0.1..=10.0).contains(&ratio);
    }
    check("w0_bracket_annulus", ok, format!("ratio range [{lo:.3}, {hi:.3}]"));

    let mut ok = true;
    let mut worst = 0.0f64;
    for k in 0..8 {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / 8.0 + 0.05;
        let s = Complex64::new(1.0 + 0.5 * phi.cos(), 0.5 * phi.sin());
        if s.re <= 0.1 {
            continue;
        }
        let v = ctx.zetaprime_bracket(s)?.norm();
        worst = worst.max(v);
        ok &= v <= 10.0;
    }
    check("zetaprime_bracket", ok, format!("max |value| on rays = {worst:.3}"));

    let a = ZetaContext::with_cutoff_scale(1);
    let b = ZetaContext::with_cutoff_scale(2);
    let mut worst = 0.0f64;
    for s in [
        Complex64::new(2.0, 0.0),
        Complex64::new(1.1, 0.5),
        Complex64::new(0.8, 3.0),
        Complex64::new(1.001, -0.7),
    ] {
        worst = worst.max((a.zeta(s)? - b.zeta(s)?).norm());
    }
    check(
        "cutoff_plateau",
        worst <= 1e-12,
        format!("max drift under cutoff doubling = {worst:.2e}"),
    );

    let g_half = ctx.gamma_fn(0.5)?;
    let g_one = ctx.gamma_fn(1.0)?;
    check(
        "gamma_special_values",
        (g_half - std::f64::consts::PI.sqrt()).abs() < 1e-12 && (g_one - 1.0).abs() < 1e-12,
        format!("gamma(1/2) = {g_half}, gamma(1) = {g_one}"),
    );

    let s = Complex64::new(1.0, 1.0);
    let sym = (ctx.zeta(s)?.conj() - ctx.zeta(s.conj())?).norm();
    check("conjugate_symmetry", sym < 1e-12, format!("|conj drift| = {sym:.2e}"));

    Ok(if all { 0 } else { 1 })
}

// -------------------------------------------------------------------- mc --

#[derive(Serialize)]
struct McOut {
    x: u64,
    trials: u64,
    seed: u64,
    negatives: u64,
    estimate: f64,
    wilson_low: f64,
    wilson_high: f64,
    min_lf: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_probability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_patterns: Option<u64>,
}

#[derive(Serialize)]
struct TailOut {
    functional: String,
    x: u64,
    trials: u64,
    seed: u64,
    thresholds: Vec<f64>,
    exceedance: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hoeffding_bound: Option<Vec<f64>>,
    quantiles: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct ShiftedMeanOut {
    x: u64,
    trials: u64,
    seed: u64,
    min_ratio: f64,
    median_ratio: f64,
    max_ratio: f64,
}

fn parse_tail_functional(s: &str) -> Result<TailFunctional> {
    let (name, rest) = s.split_once(':').unwrap_or((s, ""));
    let params: std::collections::BTreeMap<&str, &str> = rest
        .split(',')
        .filter(|p| !p.is_empty())
        .filter_map(|p| p.split_once('='))
        .collect();
    match name {
        "neg_euler" => Ok(TailFunctional::NegEuler {
            t: params
                .get("t")
                .ok_or_else(|| anyhow!("neg_euler needs t="))?
                .parse()?,
            k: params
                .get("k")
                .ok_or_else(|| anyhow!("neg_euler needs k="))?
                .parse()?,
        }),
        "split_sum" => Ok(TailFunctional::SplitSum {
            theta: params
                .get("theta")
                .ok_or_else(|| anyhow!("split_sum needs theta="))?
                .parse()?,
        }),
        other => bail!("unknown tail functional `{other}`"),
    }
}

fn cmd_mc(
    cli: &Cli,
    x: u64,
    trials: u64,
    seed: u64,
    functional: Option<&str>,
    thresholds: &[f64],
    exact: bool,
) -> Result<i32> {
    let mut config = base_config(cli, "mc");
    config.seed = Some(seed);
    config = config.arg("x", x).arg("trials", trials);

    match functional {
        None => {
            let table = build_table(cli, x.max(2))?;
            let mc = parallel::mc_negative_probability_parallel(&table, x, trials, seed, cli.threads)?;
            let (exact_probability, exact_patterns) = if exact {
                let e = exact_negative_probability(&table, x)?;
                (Some(e.probability), Some(e.patterns))
            } else {
                (None, None)
            };
            let out = McOut {
                x: mc.x,
                trials: mc.trials,
                seed: mc.seed,
                negatives: mc.negatives,
                estimate: mc.estimate,
                wilson_low: mc.wilson_low,
                wilson_high: mc.wilson_high,
                min_lf: mc.min_lf,
                exact_probability,
                exact_patterns,
            };
            report::emit(cli.output.as_deref(), &report::json_report(&config, &out))?;
        }
        Some("shifted_mean") => {
            let (y, _, _) = math::shifted_floor(halasz_core::consts::w0(), x as f64);
            let table = build_table(cli, y + 1)?;
            let r = mc_shifted_mean_floor(&table, x, trials, seed)?;
            let out = ShiftedMeanOut {
                x: r.x,
                trials: r.trials,
                seed: r.seed,
                min_ratio: r.min_ratio,
                median_ratio: r.median_ratio,
                max_ratio: r.max_ratio,
            };
            config = config.arg("functional", "shifted_mean");
            report::emit(cli.output.as_deref(), &report::json_report(&config, &out))?;
        }
        Some(fspec) => {
            let tf = parse_tail_functional(fspec)?;
            let table = build_table(cli, x.max(2))?;
            let ths: Vec<f64> = if thresholds.is_empty() {
                vec![1.0, 2.0, 3.0]
            } else {
                thresholds.to_vec()
            };
            let r = tail_distribution(&table, tf, x, trials, seed, &ths)?;
            let quantiles = [0.5, 0.9, 0.99]
                .iter()
                .map(|&q| (q, r.quantile(q)))
                .collect();
            let out = TailOut {
                functional: r.functional.clone(),
                x: r.x,
                trials: r.trials,
                seed: r.seed,
                thresholds: r.thresholds.clone(),
                exceedance: r.exceedance.clone(),
                sigma: r.sigma,
                hoeffding_bound: r.hoeffding_bound.clone(),
                quantiles,
            };
            config = config.arg("functional", fspec);
            report::emit(cli.output.as_deref(), &report::json_report(&config, &out))?;
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------- search --

#[derive(Serialize)]
struct SearchOut {
    x: u64,
    method: String,
    value: f64,
    value_scaled: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_patterns: Option<u64>,
    minimizer_custom_format: String,
}

fn cmd_search(
    cli: &Cli,
    x: u64,
    method: SearchMethodArg,
    _seed_pattern: SeedPatternArg,
    start: &str,
    sweeps: u32,
    grid: u32,
) -> Result<i32> {
    let table = build_table(cli, x.max(2))?;
    let result: SearchResult = match method {
        SearchMethodArg::Brute => brute_force_delta_pm(&table, x)?,
        SearchMethodArg::Greedy => greedy_delta_pm(&table, x, GreedySeed::AllMinus)?,
        SearchMethodArg::Refine => {
            let req = funcfile::parse_function(start)?;
            let spec = req.resolve(Some(&table))?;
            coordinate_refine_real(&table, x, &spec, sweeps, grid)?
        }
    };
    let mut config = base_config(cli, "search");
    config.sieve_limit = Some(table.limit());
    config = config
        .arg("x", x)
        .arg("method", result.method.label())
        .arg("sweeps", sweeps)
        .arg("grid", grid);
    let out = SearchOut {
        x: result.x,
        method: result.method.label().to_string(),
        value: result.value,
        value_scaled: halasz_core::search::scaled_value(result.x, result.value),
        certificate_patterns: result.certificate,
        minimizer_custom_format: funcfile::write_custom(&result.minimizer, &table, x)?,
    };
    report::emit(cli.output.as_deref(), &report::json_report(&config, &out))?;
    Ok(0)
}

fn cmd_construct(cli: &Cli, function: &str, limit: u64) -> Result<i32> {
    let (spec, table, _) = resolve_function(cli, function, limit)?;
    let table = match table {
        Some(t) => t,
        None => build_table(cli, limit)?,
    };
    let text = funcfile::write_custom(&spec, &table, limit)?;
    report::emit(cli.output.as_deref(), &text)?;
    Ok(0)
}

// ---------------------------------------------------------------- verify --

fn table_limit_for_suite(name: SuiteName, xmax: u64, cfg: &SuiteConfig) -> u64 {
    match name {
        SuiteName::MainFormula | SuiteName::ImproveNeg | SuiteName::Gold => xmax,
        SuiteName::Section6Converse => cfg
            .s6_xs
            .iter()
            .copied()
            .filter(|&x| x <= xmax)
            .max()
            .unwrap_or(2)
            .max(2),
        SuiteName::NegTrunc => cfg
            .greedy_xs
            .iter()
            .copied()
            .filter(|&x| x <= xmax)
            .max()
            .unwrap_or(2)
            .max(2),
        SuiteName::LipError | SuiteName::Section7Oscillation => 2,
    }
}

fn cmd_verify(cli: &Cli, suite: &str, xmax: u64, corpus_arg: &str, seeds: u64) -> Result<i32> {
    let name: SuiteName = suite.parse()?;
    let cfg = SuiteConfig::default();
    let corpus: Vec<FunctionSpec> = if corpus_arg == "builtin" {
        verify::builtin_corpus(seeds)
    } else {
        let text = std::fs::read_to_string(corpus_arg)
            .with_context(|| format!("reading corpus file {corpus_arg}"))?;
        let mut specs = Vec::new();
        let mut table_cache: Option<PrimeTable> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let req = funcfile::parse_function(line)?;
            if let Some(need) = req.required_table_limit() {
                let rebuild = table_cache.as_ref().map(|t| t.limit() < need).unwrap_or(true);
                if rebuild {
                    table_cache = Some(build_table(cli, need)?);
                }
                specs.push(req.resolve(table_cache.as_ref())?);
            } else {
                specs.push(req.resolve(None)?);
            }
        }
        specs
    };
    let table = build_table(cli, table_limit_for_suite(name, xmax, &cfg))?;
    let rep = verify::run_suite(name, &corpus, xmax, &cfg, &table)?;

    let mut config = base_config(cli, "verify");
    config.seed = None;
    config = config
        .arg("suite", suite)
        .arg("xmax", xmax)
        .arg("corpus", corpus_arg);
    let text = match cli.format {
        Format::Json => report::json_report(&config, &rep),
        Format::Csv => {
            let mut s = report::csv_preamble(&config);
            s.push_str(&rep.to_csv());
            s
        }
    };
    report::emit(cli.output.as_deref(), &text)?;
    Ok(if rep.all_pass { 0 } else { 1 })
}

// ------------------------------------------------------------- constants --

#[derive(Serialize)]
struct ConstantsOut {
    w0: f64,
    gamma: f64,
    gamma1: f64,
    two_over_pi: f64,
    /// Exponent of the delta scaling `(ln x)^{1-2/pi}`.
    one_minus_two_over_pi: f64,
    /// Hall–Montgomery constant `1 − 2 ln(1+√e) + 4∫₁^{√e} ln t/(t+1) dt`.
    delta1: f64,
    w0_bracket_limit_coefficient: f64,
}

pub fn hall_montgomery_delta1() -> f64 {
    let sqrt_e = std::f64::consts::E.sqrt();
    let integral = math::adaptive_simpson(1.0, sqrt_e, 1e-12, &|t| t.ln() / (t + 1.0));
    1.0 - 2.0 * (1.0 + sqrt_e).ln() + 4.0 * integral
}

fn cmd_constants(cli: &Cli) -> Result<i32> {
    let ctx = ZetaContext::new();
    let out = ConstantsOut {
        w0: ctx.w0(),
        gamma: ctx.gamma_euler(),
        gamma1: ctx.gamma1_stieltjes(),
        two_over_pi: 2.0 / std::f64::consts::PI,
        one_minus_two_over_pi: 1.0 - 2.0 / std::f64::consts::PI,
        delta1: hall_montgomery_delta1(),
        w0_bracket_limit_coefficient: ctx.w0_bracket_limit_coefficient(),
    };
    let config = base_config(cli, "constants");
    match cli.format {
        Format::Json => {
            report::emit(cli.output.as_deref(), &report::json_report(&config, &out))?;
        }
        Format::Csv => {
            let mut s = report::csv_preamble(&config);
            s.push_str("name,value\n");
            s.push_str(&format!("w0,{}\n", csv_num(out.w0)));
            s.push_str(&format!("gamma,{}\n", csv_num(out.gamma)));
            s.push_str(&format!("gamma1,{}\n", csv_num(out.gamma1)));
            s.push_str(&format!("two_over_pi,{}\n", csv_num(out.two_over_pi)));
            s.push_str(&format!(
                "one_minus_two_over_pi,{}\n",
                csv_num(out.one_minus_two_over_pi)
            ));
            s.push_str(&format!("delta1,{}\n", csv_num(out.delta1)));
            s.push_str(&format!(
                "w0_bracket_limit_coefficient,{}\n",
                csv_num(out.w0_bracket_limit_coefficient)
            ));
            report::emit(cli.output.as_deref(), &s)?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta1_matches_printed_value() {
        let d1 = hall_montgomery_delta1();
        assert!((d1 - (-0.656999)).abs() < 1e-5, "delta1 = {d1}");
    }

    #[test]
    fn tail_functional_grammar() {
        assert!(matches!(
            parse_tail_functional("neg_euler:t=1,k=2").unwrap(),
            TailFunctional::NegEuler { .. }
        ));
        assert!(matches!(
            parse_tail_functional("split_sum:theta=0.5").unwrap(),
            TailFunctional::SplitSum { .. }
        ));
        assert!(parse_tail_functional("bogus").is_err());
    }

    #[test]
    fn cli_parses_spec_examples() {
        let cli = Cli::try_parse_from([
            "halasz-lab",
            "sum",
            "--function",
            "liouville",
            "--xmax",
            "1000",
            "--format",
            "csv",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Sum { .. }));
        assert_eq!(cli.format, Format::Csv);

        let cli = Cli::try_parse_from([
            "halasz-lab",
            "functionals",
            "--function",
            "section7:t0=0.1,eps=0.05",
            "--x",
            "10000",
            "--T",
            "2",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Functionals { .. }));

        assert!(Cli::try_parse_from(["halasz-lab", "bogus-subcommand"]).is_err());
    }
}
