//! Function specification parsing: the `--function <family>[:<params>]`
//! grammar and the custom file format (UTF-8 text, one `p value` pair per
//! line, `#` comments; complex files carry `p re im` triples).

use anyhow::{anyhow, bail, Context, Result};
use halasz_core::multfun::{self, FunctionSpec};
use halasz_core::PrimeTable;
use halasz_core::Complex64;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// A parsed `--function` string. Construction-anchored families resolve
/// against a sieve table.
#[derive(Clone, Debug)]
pub enum FunctionRequest {
    Ready(FunctionSpec),
    Section6 {
        x: u64,
        v: f64,
        t0: f64,
        theta: f64,
        /// True when θ came from the default rule and/or exceeded 1/2; the
        /// CLI prints a clamp warning.
        theta_clamped: bool,
    },
    CustomFile(PathBuf),
    CustomComplexFile(PathBuf),
}

impl FunctionRequest {
    /// Sieve limit this request needs before it can be resolved.
    pub fn required_table_limit(&self) -> Option<u64> {
        match self {
            FunctionRequest::Section6 { x, .. } => Some(*x),
            _ => None,
        }
    }

    pub fn resolve(&self, table: Option<&PrimeTable>) -> Result<FunctionSpec> {
        match self {
            FunctionRequest::Ready(s) => Ok(s.clone()),
            FunctionRequest::Section6 { x, v, t0, theta, .. } => {
                let table =
                    table.ok_or_else(|| anyhow!("section6 construction needs a sieve table"))?;
                Ok(multfun::construct_section6(table, *x, *v, *t0, *theta)?)
            }
            FunctionRequest::CustomFile(p) => read_custom(p),
            FunctionRequest::CustomComplexFile(p) => read_custom_complex(p),
        }
    }
}

fn parse_params(s: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in s.split(',') {
        if part.is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("malformed parameter `{part}` (expected key=value)"))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn take_f64(params: &BTreeMap<String, String>, key: &str) -> Result<Option<f64>> {
    params
        .get(key)
        .map(|v| {
            v.parse::<f64>()
                .with_context(|| format!("parameter {key}={v} is not a number"))
        })
        .transpose()
}

fn take_u64(params: &BTreeMap<String, String>, key: &str) -> Result<Option<u64>> {
    params
        .get(key)
        .map(|v| {
            v.parse::<u64>()
                .with_context(|| format!("parameter {key}={v} is not an integer"))
        })
        .transpose()
}

/// Parse `--function` strings: `one`, `liouville`, `character4`,
/// `cos_sign:t0=0.5`, `section6:x=...[,v=...][,t0=...][,theta=...]`,
/// `section7:t0=0.1,eps=0.05`, `rademacher:seed=7`, `custom:<path>`,
/// `custom_complex:<path>`.
pub fn parse_function(input: &str) -> Result<FunctionRequest> {
    let (family, rest) = match input.split_once(':') {
        Some((f, r)) => (f, r),
        None => (input, ""),
    };
    match family {
        "one" => Ok(FunctionRequest::Ready(FunctionSpec::one())),
        "liouville" | "lambda" => Ok(FunctionRequest::Ready(FunctionSpec::liouville())),
        "character4" | "chi4" => Ok(FunctionRequest::Ready(FunctionSpec::character4())),
        "cos_sign" => {
            let p = parse_params(rest)?;
            let t0 = take_f64(&p, "t0")?.ok_or_else(|| anyhow!("cos_sign needs t0=<real>"))?;
            Ok(FunctionRequest::Ready(FunctionSpec::cos_sign(t0)))
        }
        "rademacher" => {
            let p = parse_params(rest)?;
            let seed =
                take_u64(&p, "seed")?.ok_or_else(|| anyhow!("rademacher needs seed=<int>"))?;
            Ok(FunctionRequest::Ready(FunctionSpec::rademacher(seed)))
        }
        "section7" => {
            let p = parse_params(rest)?;
            let t0 = take_f64(&p, "t0")?.ok_or_else(|| anyhow!("section7 needs t0=<real>"))?;
            let eps = take_f64(&p, "eps")?.ok_or_else(|| anyhow!("section7 needs eps=<real>"))?;
            Ok(FunctionRequest::Ready(multfun::construct_section7(
                t0, eps,
            )?))
        }
        "section6" => {
            let p = parse_params(rest)?;
            let x = take_u64(&p, "x")?.ok_or_else(|| anyhow!("section6 needs x=<int anchor>"))?;
            let (dv, dt0, dtheta) = multfun::section6_defaults(x);
            let v = take_f64(&p, "v")?.unwrap_or(dv);
            let t0 = take_f64(&p, "t0")?.unwrap_or(dt0);
            let theta = take_f64(&p, "theta")?.unwrap_or(dtheta);
            Ok(FunctionRequest::Section6 {
                x,
                v,
                t0,
                theta,
                theta_clamped: theta >= 0.5,
            })
        }
        "custom" => Ok(FunctionRequest::CustomFile(PathBuf::from(rest))),
        "custom_complex" => Ok(FunctionRequest::CustomComplexFile(PathBuf::from(rest))),
        other => bail!("unknown function family `{other}`"),
    }
}

/// Read a real custom spec: `p value` pairs.
pub fn read_custom(path: &Path) -> Result<FunctionSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading function file {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let p: u64 = it
            .next()
            .unwrap()
            .parse()
            .with_context(|| format!("{}:{}: bad prime", path.display(), lineno + 1))?;
        let v: f64 = it
            .next()
            .ok_or_else(|| anyhow!("{}:{}: missing value", path.display(), lineno + 1))?
            .parse()
            .with_context(|| format!("{}:{}: bad value", path.display(), lineno + 1))?;
        if it.next().is_some() {
            bail!("{}:{}: trailing tokens", path.display(), lineno + 1);
        }
        map.insert(p, v);
    }
    Ok(FunctionSpec::custom(map)?)
}

/// Read a complex custom spec: `p re im` triples.
pub fn read_custom_complex(path: &Path) -> Result<FunctionSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading function file {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            bail!(
                "{}:{}: expected `p re im`",
                path.display(),
                lineno + 1
            );
        }
        let p: u64 = toks[0].parse()?;
        let re: f64 = toks[1].parse()?;
        let im: f64 = toks[2].parse()?;
        map.insert(p, Complex64::new(re, im));
    }
    Ok(FunctionSpec::custom_complex(map)?)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

/// Write a spec's prime values up to `limit` in the custom file format.
pub fn write_custom(spec: &FunctionSpec, table: &PrimeTable, limit: u64) -> Result<String> {
    let mut out = String::new();
    out.push_str("# custom completely multiplicative function: `p value` per line\n");
    for &p in table.primes() {
        let p = p as u64;
        if p > limit {
            break;
        }
        let v = spec.prime_value(p)?;
        out.push_str(&format!("{p} {}\n", crate::report::csv_num(v)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert!(matches!(
            parse_function("liouville").unwrap(),
            FunctionRequest::Ready(_)
        ));
        assert!(parse_function("section7:t0=0.1,eps=0.05").is_ok());
        assert!(parse_function("cos_sign:t0=0.5").is_ok());
        assert!(parse_function("rademacher:seed=9").is_ok());
        assert!(parse_function("nonsense").is_err());
        assert!(parse_function("section7:t0=0.1").is_err());
        let r = parse_function("section6:x=1000000").unwrap();
        assert_eq!(r.required_table_limit(), Some(1_000_000));
        match r {
            FunctionRequest::Section6 { theta_clamped, .. } => assert!(theta_clamped),
            _ => panic!(),
        }
    }

    #[test]
    fn custom_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.txt");
        std::fs::write(&path, "# test\n2 -1\n3 0.5 # inline comment\n5 1\n7 -1\n").unwrap();
        let spec = read_custom(&path).unwrap();
        assert_eq!(spec.prime_value(2).unwrap(), -1.0);
        assert_eq!(spec.prime_value(3).unwrap(), 0.5);

        let table = PrimeTable::sieve(10).unwrap();
        let text = write_custom(&spec, &table, 7).unwrap();
        let path2 = dir.path().join("g.txt");
        std::fs::write(&path2, &text).unwrap();
        let again = read_custom(&path2).unwrap();
        for p in [2u64, 3, 5, 7] {
            assert_eq!(
                spec.prime_value(p).unwrap(),
                again.prime_value(p).unwrap()
            );
        }
    }

    #[test]
    fn complex_file_parses() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        std::fs::write(&path, "2 0 1\n3 -0.6 0.8\n").unwrap();
        let spec = read_custom_complex(&path).unwrap();
        assert!(spec.is_complex());
        let v = spec.prime_value_c(2).unwrap();
        assert_eq!((v.re, v.im), (0.0, 1.0));
    }
}
