//! Report emission.
//!
//! JSON numbers go through serde_json (shortest round-trip form, i.e. full
//! precision); CSV numbers are printed with 12 significant digits. Identical
//! invocations produce byte-identical output; a timestamp appears only when
//! the run is not `--deterministic`, confined to one header line / field.

use crate::config::RunConfig;
use serde::Serialize;
use std::time::{SystemTime, UNIX_EPOCH};

/// A float formatted to 12 significant digits for CSV cells.
pub fn csv_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.11e}");
    // rewrite "1.23400000000e4" → fixed when the exponent is small
    if let Some(epos) = s.find('e') {
        let exp: i32 = s[epos + 1..].parse().unwrap_or(0);
        if (-4..=14).contains(&exp) {
            let digits = 11 - exp;
            if digits >= 0 {
                return trim_zeros(&format!("{x:.*}", digits as usize));
            }
        }
    }
    s
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

/// CSV header block: optional timestamp comment plus the config echo.
pub fn csv_preamble(config: &RunConfig) -> String {
    let mut out = String::new();
    if !config.deterministic {
        out.push_str(&format!("# generated_at_unix: {}\n", unix_now()));
    }
    out.push_str(&format!(
        "# config: {}\n",
        serde_json::to_string(config).expect("config serializes")
    ));
    out
}

/// Wrap a serializable payload with the config echo (and a timestamp unless
/// deterministic) and pretty-print.
pub fn json_report<T: Serialize>(config: &RunConfig, payload: &T) -> String {
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        #[serde(skip_serializing_if = "Option::is_none")]
        generated_at_unix: Option<u64>,
        config: &'a RunConfig,
        #[serde(flatten)]
        payload: &'a T,
    }
    let env = Envelope {
        generated_at_unix: if config.deterministic {
            None
        } else {
            Some(unix_now())
        },
        config,
        payload,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Write to the path or stdout when `path` is `-`/absent.
pub fn emit(path: Option<&std::path::Path>, content: &str) -> anyhow::Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::write(p, content)?;
        }
        _ => {
            print!("{content}");
        }
    }
    Ok(())
}
