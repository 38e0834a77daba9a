//! Named verification suites: each one turns a bound into measured rows of
//! `(family, x, measured, bound, pass)` over a corpus and checkpoint grid.
//!
//! Suite constants are configuration with shipped defaults calibrated once
//! and frozen; a row's pass flag is recorded when the row is built and never
//! recomputed, so reports cannot drift from their own data.

use anyhow::{anyhow, bail, Result};
use halasz_core::consts;
use halasz_core::functionals::{
    self, distance_to_liouville, m_functional, pretentious_distance, Reference,
};
use halasz_core::multfun::{self, materialize, FunctionSpec};
use halasz_core::search::{greedy_delta_pm, GreedySeed};
use halasz_core::series::{evaluate_series, evaluate_series_with_shift};
use halasz_core::sums::SumSeries;
use halasz_core::zeta::ZetaContext;
use halasz_core::PrimeTable;
use serde::Serialize;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    MainFormula,
    LipError,
    NegTrunc,
    ImproveNeg,
    Gold,
    Section6Converse,
    Section7Oscillation,
}

impl SuiteName {
    pub fn all() -> &'static [SuiteName] {
        &[
            SuiteName::MainFormula,
            SuiteName::LipError,
            SuiteName::NegTrunc,
            SuiteName::ImproveNeg,
            SuiteName::Gold,
            SuiteName::Section6Converse,
            SuiteName::Section7Oscillation,
        ]
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::MainFormula => "main_formula",
            SuiteName::LipError => "lip_error",
            SuiteName::NegTrunc => "neg_trunc",
            SuiteName::ImproveNeg => "improve_neg",
            SuiteName::Gold => "gold",
            SuiteName::Section6Converse => "section6_converse",
            SuiteName::Section7Oscillation => "section7_oscillation",
        }
    }
}

impl FromStr for SuiteName {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteName::all()
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| anyhow!("unknown suite `{s}`"))
    }
}

/// Suite constants. The defaults are the shipped calibration, pinned by the
/// acceptance tests.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub checkpoint_lo: u64,
    pub per_decade: u32,
    pub main_formula_a: f64,
    pub main_formula_b: f64,
    pub lip_error_c: f64,
    pub neg_trunc_c: f64,
    pub greedy_xs: Vec<u64>,
    /// x at which the greedy run must come out strictly negative (absent =
    /// skip the negativity row).
    pub greedy_negativity_x: Option<u64>,
    pub improve_neg_c1: f64,
    pub improve_neg_c2: f64,
    pub improve_neg_v: f64,
    pub improve_neg_eps: f64,
    pub gold_c: f64,
    pub s6_band_low: f64,
    pub s6_band_high: f64,
    pub s6_exp_c: f64,
    pub s6_xs: Vec<u64>,
    pub s7_t0: f64,
    pub s7_eps: f64,
    pub s7_samples: u32,
    pub s7_factor: f64,
    pub s7_n_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            checkpoint_lo: 1000,
            per_decade: 8,
            main_formula_a: 2.0,
            main_formula_b: 2.0,
            lip_error_c: 10.0,
            neg_trunc_c: 10.0,
            greedy_xs: vec![10_000, 100_000, 1_000_000],
            greedy_negativity_x: Some(1_000_000),
            improve_neg_c1: 1.0,
            improve_neg_c2: 2.0,
            improve_neg_v: 12.0,
            improve_neg_eps: 0.1,
            gold_c: 10.0,
            s6_band_low: 1.0,
            s6_band_high: 8.0,
            s6_exp_c: 5.0,
            s6_xs: vec![100_000, 1_000_000, 10_000_000],
            s7_t0: 0.8,
            s7_eps: 0.05,
            s7_samples: 64,
            s7_factor: 0.5,
            s7_n_max: 8,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRow {
    pub family: String,
    pub x: u64,
    pub quantity: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl SuiteRow {
    fn upper(family: &str, x: u64, quantity: &str, measured: f64, bound: f64) -> Self {
        SuiteRow {
            family: family.to_string(),
            x,
            quantity: quantity.to_string(),
            measured,
            bound,
            pass: measured <= bound,
        }
    }

    fn strictly_below(family: &str, x: u64, quantity: &str, measured: f64, bound: f64) -> Self {
        SuiteRow {
            family: family.to_string(),
            x,
            quantity: quantity.to_string(),
            measured,
            bound,
            pass: measured < bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub xmax: u64,
    pub rows: Vec<SuiteRow>,
    pub max_measured: f64,
    pub all_pass: bool,
    pub notes: Vec<String>,
    pub config: SuiteConfig,
}

impl SuiteReport {
    fn new(name: SuiteName, xmax: u64, rows: Vec<SuiteRow>, notes: Vec<String>, cfg: &SuiteConfig) -> Self {
        let max_measured = rows.iter().map(|r| r.measured).fold(f64::NEG_INFINITY, f64::max);
        let all_pass = rows.iter().all(|r| r.pass);
        SuiteReport {
            suite: name.as_str().to_string(),
            xmax,
            rows,
            max_measured,
            all_pass,
            notes,
            config: cfg.clone(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,x,quantity,measured,bound,pass\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.family,
                r.x,
                r.quantity,
                crate::report::csv_num(r.measured),
                crate::report::csv_num(r.bound),
                r.pass
            ));
        }
        out
    }
}

/// The shipped corpus: the deterministic families plus `seeds` Rademacher
/// samples.
pub fn builtin_corpus(seeds: u64) -> Vec<FunctionSpec> {
    let mut out = vec![
        FunctionSpec::one(),
        FunctionSpec::liouville(),
        FunctionSpec::character4(),
        FunctionSpec::cos_sign(0.25),
        FunctionSpec::cos_sign(0.5),
        FunctionSpec::cos_sign(1.0),
    ];
    for s in 1..=seeds {
        out.push(FunctionSpec::rademacher(s));
    }
    out
}

fn scaling_exponent() -> f64 {
    consts::delta_scaling_exponent()
}

fn series_for(spec: &FunctionSpec, xs: &[u64]) -> Result<SumSeries> {
    Ok(evaluate_series(spec, xs)?)
}

pub fn run_suite(
    name: SuiteName,
    corpus: &[FunctionSpec],
    xmax: u64,
    cfg: &SuiteConfig,
    table: &PrimeTable,
) -> Result<SuiteReport> {
    match name {
        SuiteName::MainFormula => main_formula(corpus, xmax, cfg, table),
        SuiteName::LipError => lip_error(corpus, xmax, cfg),
        SuiteName::NegTrunc => neg_trunc(corpus, xmax, cfg, table),
        SuiteName::ImproveNeg => improve_neg(corpus, xmax, cfg, table),
        SuiteName::Gold => gold(corpus, xmax, cfg, table),
        SuiteName::Section6Converse => section6_converse(xmax, cfg, table),
        SuiteName::Section7Oscillation => section7_oscillation(xmax, cfg),
    }
}

fn main_formula(
    corpus: &[FunctionSpec],
    xmax: u64,
    cfg: &SuiteConfig,
    table: &PrimeTable,
) -> Result<SuiteReport> {
    if xmax > table.limit() {
        bail!("main_formula needs a sieve up to xmax = {xmax}");
    }
    let xs = halasz_core::math::geometric_checkpoints(xmax, cfg.checkpoint_lo.max(10_000), cfg.per_decade);
    let mut rows = Vec::new();
    for spec in corpus {
        let series = series_for(spec, &xs)?;
        for row in &series.rows {
            let x = row.x as f64;
            let lx = x.ln();
            let t_window = lx * lx;
            let m = m_functional(table, spec, x, t_window)?.value;
            let bound = cfg.main_formula_a
                * ((lx.ln() / lx) * (-m).exp() + (2.0 * t_window).ln() / t_window)
                + cfg.main_formula_b / lx;
            rows.push(SuiteRow::upper(
                &series.label,
                row.x,
                "abs_delta",
                row.delta.abs(),
                bound,
            ));
        }
    }
    Ok(SuiteReport::new(SuiteName::MainFormula, xmax, rows, vec![], cfg))
}

fn lip_error(corpus: &[FunctionSpec], xmax: u64, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let xs = halasz_core::math::geometric_checkpoints(xmax, cfg.checkpoint_lo, cfg.per_decade);
    let mut rows = Vec::new();
    for spec in corpus {
        let series = series_for(spec, &xs)?;
        for row in &series.rows {
            rows.push(SuiteRow::upper(
                &series.label,
                row.x,
                "abs_delta_scaled",
                row.delta_scaled().abs(),
                cfg.lip_error_c,
            ));
        }
    }
    Ok(SuiteReport::new(SuiteName::LipError, xmax, rows, vec![], cfg))
}

fn neg_trunc(
    corpus: &[FunctionSpec],
    xmax: u64,
    cfg: &SuiteConfig,
    table: &PrimeTable,
) -> Result<SuiteReport> {
    let xs = halasz_core::math::geometric_checkpoints(xmax, cfg.checkpoint_lo, cfg.per_decade);
    let mut rows = Vec::new();
    for spec in corpus {
        let series = series_for(spec, &xs)?;
        for row in &series.rows {
            let scaled = row.l_f * (row.x as f64).ln().powf(scaling_exponent());
            rows.push(SuiteRow::upper(
                &series.label,
                row.x,
                "neg_l_scaled",
                -scaled,
                cfg.neg_trunc_c,
            ));
        }
    }
    let mut notes = Vec::new();
    for &gx in &cfg.greedy_xs {
        if gx > xmax || gx > table.limit() {
            continue;
        }
        let g = greedy_delta_pm(table, gx, GreedySeed::AllMinus)?;
        let scaled = g.value * (gx as f64).ln().powf(scaling_exponent());
        rows.push(SuiteRow::upper("greedy_pm", gx, "neg_l_scaled", -scaled, cfg.neg_trunc_c));
        notes.push(format!("greedy at {gx}: L = {}, scaled {scaled}", g.value));
        if cfg.greedy_negativity_x == Some(gx) {
            rows.push(SuiteRow::strictly_below(
                "greedy_pm",
                gx,
                "greedy_value",
                g.value,
                0.0,
            ));
        }
    }
    Ok(SuiteReport::new(SuiteName::NegTrunc, xmax, rows, notes, cfg))
}

fn improve_neg(
    corpus: &[FunctionSpec],
    xmax: u64,
    cfg: &SuiteConfig,
    table: &PrimeTable,
) -> Result<SuiteReport> {
    if xmax > table.limit() {
        bail!("improve_neg needs a sieve up to xmax = {xmax}");
    }
    let xs = halasz_core::math::geometric_checkpoints(xmax, cfg.checkpoint_lo.max(10_000), cfg.per_decade);
    let mut rows = Vec::new();
    let mut skipped = 0usize;
    for spec in corpus.iter().filter(|s| s.is_pm_one()) {
        let series = series_for(spec, &xs)?;
        for row in &series.rows {
            let x = row.x as f64;
            // hypothesis: Σ_{x^{1/v} < p ≤ x, f(p) = +1} 1/p ≥ 1 + ε
            let d = functionals::section6_diagnostics(
                table,
                spec,
                x,
                0.5,
                cfg.improve_neg_v,
                cfg.improve_neg_eps,
            )?;
            if !d.condition_fplus1 {
                skipped += 1;
                continue;
            }
            let lx = x.ln();
            let llx = lx.ln();
            let v = cfg.improve_neg_v;
            let bound = cfg.improve_neg_c1 / lx
                * (cfg.improve_neg_c2 * llx.powf(2.0 / 3.0) * (v * (v * llx).ln()).powf(1.0 / 3.0))
                    .exp();
            rows.push(SuiteRow::upper(&series.label, row.x, "neg_l", -row.l_f, bound));
        }
    }
    let notes = vec![format!("rows skipped (hypothesis not met): {skipped}")];
    Ok(SuiteReport::new(SuiteName::ImproveNeg, xmax, rows, notes, cfg))
}

fn gold(
    corpus: &[FunctionSpec],
    xmax: u64,
    cfg: &SuiteConfig,
    table: &PrimeTable,
) -> Result<SuiteReport> {
    if xmax > table.limit() {
        bail!("gold needs a sieve up to xmax = {xmax}");
    }
    let ys = halasz_core::math::geometric_checkpoints(xmax, cfg.checkpoint_lo, cfg.per_decade);
    let lx_term = (xmax as f64).ln().powf(-scaling_exponent());
    let mut rows = Vec::new();
    for spec in corpus {
        if spec.is_complex() {
            continue;
        }
        let vt = materialize(spec, table, xmax)?;
        // one pass: bucket f(n)/n by largest prime factor, then prefix over y
        let mut by_lpf = vec![0.0f64; table.primes().len()];
        for n in 2..=xmax {
            let lpf = table.largest_prime_factor(n) as f64;
            let idx = table.first_prime_above(lpf - 0.5);
            by_lpf[idx] += vt.value(n) / n as f64;
        }
        let mut y_idx = 0usize;
        let mut acc = 1.0f64; // n = 1
        let mut prefix_at_y = Vec::with_capacity(ys.len());
        for (i, &p) in table.primes().iter().enumerate() {
            while y_idx < ys.len() && (ys[y_idx] as f64) < p as f64 {
                prefix_at_y.push(acc);
                y_idx += 1;
            }
            acc += by_lpf[i];
        }
        while y_idx < ys.len() {
            prefix_at_y.push(acc);
            y_idx += 1;
        }
        for (j, &y) in ys.iter().enumerate() {
            if y < 2 {
                continue;
            }
            let dist = pretentious_distance(table, spec, 0.0, y as f64, Reference::NIt)?;
            let bound = cfg.gold_c * ((y as f64).ln() * (-dist).exp() + lx_term);
            rows.push(SuiteRow::upper(
                &spec.label(),
                y,
                "abs_friable_log_sum",
                prefix_at_y[j].abs(),
                bound,
            ));
        }
    }
    Ok(SuiteReport::new(SuiteName::Gold, xmax, rows, vec![], cfg))
}

fn section6_converse(xmax: u64, cfg: &SuiteConfig, table: &PrimeTable) -> Result<SuiteReport> {
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for &x in &cfg.s6_xs {
        if x > xmax || x > table.limit() {
            continue;
        }
        let (v, t0, theta) = multfun::section6_defaults(x);
        if theta >= 0.5 {
            notes.push(format!("x = {x}: theta = {theta:.4} clamped to 0.5"));
        }
        let spec = multfun::construct_section6(table, x, v, t0, theta)?;
        let d2 = distance_to_liouville(table, &spec, x as f64)?;
        let llx23 = (x as f64).ln().ln().powf(2.0 / 3.0);
        let scaled = d2 / llx23;
        rows.push(SuiteRow::upper("section6", x, "dist_scaled_upper", scaled, cfg.s6_band_high));
        rows.push(SuiteRow::upper(
            "section6",
            x,
            "dist_scaled_lower",
            -scaled,
            -cfg.s6_band_low,
        ));
        let series = evaluate_series_with_shift(&spec, &[x], 1.0)?;
        let l = series.rows[0].l_f;
        rows.push(SuiteRow::upper(
            "section6",
            x,
            "abs_l_times_logx",
            l.abs() * (x as f64).ln(),
            (cfg.s6_exp_c * llx23).exp(),
        ));
    }
    Ok(SuiteReport::new(SuiteName::Section6Converse, xmax, rows, notes, cfg))
}

fn section7_oscillation(xmax: u64, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let x0 = (xmax as f64).sqrt().floor() as u64;
    if x0 < 100 {
        bail!("section7_oscillation needs xmax >= 10^4");
    }
    let spec = multfun::construct_section7(cfg.s7_t0, cfg.s7_eps)?;
    let ctx = ZetaContext::new();
    let n_max = cfg.s7_n_max.max((2.0 / cfg.s7_t0.abs()).ceil() as usize);
    let term = ctx.oscillation_main_term(cfg.s7_t0, cfg.s7_eps, n_max, x0 as f64)?;

    let samples = cfg.s7_samples.max(2);
    let ratio = (xmax as f64 / x0 as f64).ln();
    let xs: Vec<u64> = (0..samples)
        .map(|k| {
            let t = (k as f64 + 1.0) / samples as f64;
            (x0 as f64 * (ratio * t).exp()).round() as u64
        })
        .collect();
    let series = evaluate_series(&spec, &xs)?;
    let max_delta = series
        .rows
        .iter()
        .map(|r| r.delta.abs())
        .fold(0.0f64, f64::max);
    let predicted = series
        .rows
        .iter()
        .map(|r| term.predicted_delta(r.x as f64).abs())
        .fold(0.0f64, f64::max);

    let mut rows = Vec::new();
    // pass ⇔ max |Δ| ≥ factor × predicted
    rows.push(SuiteRow::upper(
        "section7",
        xmax,
        "half_predicted_minus_max_delta",
        cfg.s7_factor * predicted - max_delta,
        0.0,
    ));
    let notes = vec![
        format!("sampled max |delta| = {max_delta}"),
        format!("max predicted main term = {predicted}"),
        format!("|mu1| = {}", term.mu1.norm()),
        format!("hhat(1) = {}", term.hhat1),
    ];
    Ok(SuiteReport::new(SuiteName::Section7Oscillation, xmax, rows, notes, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lip_error_small_scale() {
        let corpus = vec![FunctionSpec::one(), FunctionSpec::liouville()];
        let cfg = SuiteConfig::default();
        let table = PrimeTable::sieve(100).unwrap();
        let rep = run_suite(SuiteName::LipError, &corpus, 100_000, &cfg, &table).unwrap();
        assert!(rep.all_pass, "max measured = {}", rep.max_measured);
        assert_eq!(rep.rows.len(), 2 * 17);
        let csv = rep.to_csv();
        assert!(csv.starts_with("family,x,quantity,measured,bound,pass\n"));
    }

    #[test]
    fn main_formula_one_family() {
        let corpus = vec![FunctionSpec::one()];
        let cfg = SuiteConfig::default();
        let table = PrimeTable::sieve(100_000).unwrap();
        let rep = run_suite(SuiteName::MainFormula, &corpus, 100_000, &cfg, &table).unwrap();
        assert!(rep.all_pass);
        for r in &rep.rows {
            assert!(r.measured <= 0.05, "delta too large at {}", r.x);
        }
    }

    #[test]
    fn neg_trunc_small_scale() {
        let corpus = builtin_corpus(3);
        let mut cfg = SuiteConfig::default();
        cfg.greedy_xs = vec![10_000];
        cfg.greedy_negativity_x = None;
        let table = PrimeTable::sieve(10_000).unwrap();
        let rep = run_suite(SuiteName::NegTrunc, &corpus, 10_000, &cfg, &table).unwrap();
        assert!(rep.all_pass, "{:#?}", rep.rows.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }

    #[test]
    fn suites_are_deterministic_and_reproducible() {
        let corpus = builtin_corpus(2);
        let cfg = SuiteConfig::default();
        let table = PrimeTable::sieve(100).unwrap();
        let a = run_suite(SuiteName::LipError, &corpus, 100_000, &cfg, &table).unwrap();
        let b = run_suite(SuiteName::LipError, &corpus, 100_000, &cfg, &table).unwrap();
        assert_eq!(a.rows.len(), b.rows.len());
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert_eq!(ra.measured, rb.measured);
            assert_eq!(ra.pass, rb.pass);
        }
        // re-running the underlying operation reproduces a recorded row
        let spot = &a.rows[7];
        let spec = corpus
            .iter()
            .find(|s| s.label() == spot.family)
            .unwrap();
        let series = evaluate_series(spec, &[spot.x]).unwrap();
        assert!((series.rows[0].delta_scaled().abs() - spot.measured).abs() < 1e-9);
    }

    #[test]
    fn suite_names_round_trip() {
        for n in SuiteName::all() {
            let back: SuiteName = n.as_str().parse().unwrap();
            assert_eq!(back, *n);
        }
        assert!("bogus".parse::<SuiteName>().is_err());
    }

    #[test]
    fn hall_tenenbaum_spot_suite() {
        use halasz_core::functionals::{hall_tenenbaum_residual, PeriodicWeight};
        let table = PrimeTable::sieve(10_000_000).unwrap();
        for phi in [
            PeriodicWeight::Cos,
            PeriodicWeight::NegativeCosPart,
            PeriodicWeight::Band { theta: 0.1 },
        ] {
            for t in [0.25, 0.5, 1.0, 2.0] {
                let r = hall_tenenbaum_residual(&table, phi, t, 1000.0, 10_000_000.0).unwrap();
                assert!(r.abs() < 1.0, "phi {phi:?}, t = {t}: residual {r}");
            }
        }
        let r = hall_tenenbaum_residual(
            &table,
            PeriodicWeight::NegativeCosPart,
            0.5,
            100.0,
            10_000_000.0,
        )
        .unwrap();
        assert!(r.abs() < 0.5, "residual = {r}");
    }

    #[test]
    fn section6_defaults_meet_the_plus_condition() {
        // the +1 middle range alone contributes ≥ ln(3e/2) ≥ 1 + ln(3/2)
        let table = PrimeTable::sieve(1_000_000).unwrap();
        let x = 1_000_000u64;
        let (v, t0, theta) = halasz_core::multfun::section6_defaults(x);
        let spec = halasz_core::multfun::construct_section6(&table, x, v, t0, theta).unwrap();
        let d = halasz_core::functionals::section6_diagnostics(
            &table,
            &spec,
            x as f64,
            0.5,
            v,
            (1.5f64).ln(),
        )
        .unwrap();
        assert!(d.condition_fplus1, "restricted sum = {}", d.restricted_recip_sum);
        assert!(d.restricted_recip_sum >= (3.0 * std::f64::consts::E / 2.0).ln() - 0.05);
        assert!(d.w_bound.is_finite() && d.w_bound > 0.0);
    }
}
