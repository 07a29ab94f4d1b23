use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "burgess", version, about = "Explicit Burgess bounds: evaluation, verification sweeps and certificates")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Global {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub workers: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// JSON file whose keys supply default flag values.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Record wall-clock milliseconds per row (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate the explicit bound for one modulus.
    Bound(BoundArgs),
    /// Sweep the Weil-type moment inequality over small moduli.
    VerifyWeil(WeilArgs),
    /// Check the s_q bounds, the complete-sum bound and the v_A and sum lemmas.
    VerifyLemmas(LemmaArgs),
    /// Recompute the C(r), D(r) table next to the printed values.
    Table1,
    /// Interval certificates: delta and the numerical claims.
    Certify,
    /// One character sum over (M, M+N].
    Charsum(CharsumArgs),
    /// |S_chi| / bound at small q; exploratory, no pass/fail semantics.
    Explore(ExploreArgs),
    /// Every verification at acceptance settings.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BoundArgs {
    #[arg(long, group = "modulus")]
    pub q: Option<u64>,
    /// log10 of q, as a decimal string (evaluated at full precision).
    #[arg(long = "log10-q", group = "modulus")]
    pub log10_q: Option<String>,
    /// Natural log of q, as a decimal string.
    #[arg(long = "log-q", group = "modulus")]
    pub log_q: Option<String>,
    #[arg(long)]
    pub r: u32,
    #[arg(long = "N", group = "length")]
    pub n: Option<u128>,
    /// N = q^theta, as a decimal string (default 0.5).
    #[arg(long, group = "length")]
    pub theta: Option<String>,
    #[arg(long, default_value = "thm2", value_parser = parse_variant)]
    pub variant: String,
    /// Use the Nicolas-Robin and Rosser-Schoenfeld surrogates instead of the factorization.
    #[arg(long)]
    pub surrogate: bool,
    /// Override the constant C (decimal string).
    #[arg(long = "C")]
    pub c: Option<String>,
}

fn parse_variant(s: &str) -> Result<String, String> {
    burgess_core::burgess::Variant::parse(s)
        .map(|v| v.as_str().to_string())
        .ok_or_else(|| format!("unknown variant `{s}` (expected thm1 or thm2)"))
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WeilArgs {
    #[arg(long = "q-min", default_value_t = 1)]
    pub q_min: u64,
    #[arg(long = "q-max", default_value_t = 300)]
    pub q_max: u64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3])]
    pub r: Vec<usize>,
    #[arg(long = "B", value_delimiter = ',', default_values_t = vec![2.0, 2.5, 3.0, 5.0, 10.0])]
    pub b: Vec<f64>,
    /// One row per character instead of the worst character per (q, r, B).
    #[arg(long)]
    pub per_character: bool,
    /// Use floor(B) on the right side.
    #[arg(long)]
    pub floor_form: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LemmaArgs {
    /// Largest q for the s_q bounds with r = 2.
    #[arg(long = "sq-q-max", default_value_t = 200)]
    pub sq_q_max: u64,
    /// Largest cubefree q for the s_q bounds with r = 3.
    #[arg(long = "sq-q-max-r3", default_value_t = 100)]
    pub sq_q_max_r3: u64,
    #[arg(long = "sq-B", value_delimiter = ',', default_values_t = vec![2.0, 3.0, 4.0, 5.0, 6.0])]
    pub sq_b: Vec<f64>,
    /// Random complete-sum instances.
    #[arg(long = "complete-trials", default_value_t = 500)]
    pub complete_trials: usize,
    #[arg(long = "complete-q-max", default_value_t = 150)]
    pub complete_q_max: u64,
    /// Largest N for the Moebius and totient envelopes.
    #[arg(long = "n-max", default_value_t = 10_000)]
    pub n_max: u32,
    /// Random v_A instances.
    #[arg(long = "va-trials", default_value_t = 200)]
    pub va_trials: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CharsumArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long = "char-index")]
    pub char_index: u64,
    #[arg(long = "M", default_value_t = 0, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long = "N")]
    pub n: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExploreArgs {
    #[arg(long = "q-min", default_value_t = 3)]
    pub q_min: u64,
    #[arg(long = "q-max", default_value_t = 60)]
    pub q_max: u64,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// N = round(q^theta).
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
    #[arg(long, default_value = "thm2", value_parser = parse_variant)]
    pub variant: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SuiteArgs {
    #[arg(long = "q-max", default_value_t = 300)]
    pub q_max: u64,
}

/// Inserts config-file defaults right after the subcommand name so that
/// later command-line flags override them.
pub fn with_config_defaults(raw: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&raw) else {
        return Ok(raw);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
    let obj = value.as_object().ok_or_else(|| CliError::Usage("config must be a JSON object".into()))?;
    let mut defaults = Vec::new();
    for (key, v) in obj {
        let flag = OsString::from(format!("--{key}"));
        let given = raw.iter().any(|a| a == &flag || a.to_string_lossy().starts_with(&format!("--{key}=")));
        if given {
            continue;
        }
        match v {
            serde_json::Value::Bool(true) => defaults.push(flag),
            serde_json::Value::Bool(false) | serde_json::Value::Null => {}
            serde_json::Value::Array(items) => {
                defaults.push(flag);
                defaults.push(items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?.join(",").into());
            }
            other => {
                defaults.push(flag);
                defaults.push(scalar(other)?.into());
            }
        }
    }
    let Some(sub) = raw.iter().skip(1).position(is_subcommand).map(|i| i + 1) else {
        return Ok(raw);
    };
    let mut out: Vec<OsString> = raw[..=sub].to_vec();
    out.extend(defaults);
    out.extend_from_slice(&raw[sub + 1..]);
    Ok(out)
}

fn scalar(v: &serde_json::Value) -> Result<String, CliError> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        serde_json::Value::Bool(b) => Ok(b.to_string()),
        _ => Err(CliError::Usage(format!("unsupported config value {v}"))),
    }
}

const SUBCOMMANDS: [&str; 8] = ["bound", "verify-weil", "verify-lemmas", "table1", "certify", "charsum", "explore", "suite"];

fn is_subcommand(a: &OsString) -> bool {
    a.to_str().is_some_and(|s| SUBCOMMANDS.contains(&s))
}

fn config_path(raw: &[OsString]) -> Option<PathBuf> {
    let mut it = raw.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}
